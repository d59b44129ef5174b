use clap::ValueEnum;
use qmarkoff::identities::IdentityCheck;
use qmarkoff::search::{CollisionReport, PairClass, PairClassification};
use qmarkoff::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub fn csv_string<R, I>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = I>,
    I: IntoIterator,
    I::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Approximate float column: 15 significant digits.
pub fn approx(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

fn coeff_list(p: &LaurentPoly) -> String {
    p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn poly_row(name: &str, p: &LaurentPoly, at_one: &str) -> Vec<String> {
    vec![
        name.to_string(),
        p.min_degree().to_string(),
        coeff_list(p),
        at_one.to_string(),
    ]
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|x| x.to_string()).unwrap_or_default()
}

pub const PAIR_HEADER: [&str; 11] = [
    "x",
    "y",
    "class",
    "w1",
    "w2",
    "v2",
    "k",
    "m",
    "n",
    "chain",
    "max_w_tried",
];

pub fn pair_row(p: &PairClassification) -> Vec<String> {
    let (k, m, n) = p
        .identity1
        .as_ref()
        .map(|w| (w.k, w.m, w.n))
        .or_else(|| p.identity2.as_ref().map(|w| (w.k, w.m, w.n)))
        .map_or((String::new(), String::new(), String::new()), |(k, m, n)| {
            (k.to_string(), m.to_string(), n.to_string())
        });
    vec![
        p.x.to_string(),
        p.y.to_string(),
        format!("{:?}", p.class),
        opt(p.identity1.as_ref().map(|w| &w.w)),
        opt(p.identity2.as_ref().map(|w| &w.w)),
        opt(p.identity2.as_ref().map(|w| &w.v)),
        k,
        m,
        n,
        p.chain
            .as_ref()
            .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
        p.max_w_tried.to_string(),
    ]
}

pub fn collision_csv(r: &CollisionReport) -> String {
    csv_string(&PAIR_HEADER, r.pairs.iter().map(pair_row))
}

pub fn collision_human(r: &CollisionReport) -> String {
    let s = &r.summary;
    let mut out = format!(
        "{} map, words of length <= {}: {} words, {} groups (largest {}), {} pairs\n",
        r.map_kind.name(),
        r.max_len,
        s.words_searched,
        s.groups,
        s.largest_group,
        s.pairs
    );
    out += &format!(
        "  identity1 {}  identity2 {}  both {}  transitive {}  unexplained {}\n",
        s.identity1, s.identity2, s.both, s.transitive, s.unexplained
    );
    for g in &r.groups {
        let words: Vec<String> = g.words.iter().map(ToString::to_string).collect();
        out += &format!("{{{}}}\n", words.join(", "));
    }
    let unexplained: Vec<_> = r.pairs.iter().filter(|p| p.class == PairClass::Unexplained).collect();
    if !unexplained.is_empty() {
        out += "unexplained pairs:\n";
        for p in unexplained {
            out += &format!("  {} {}\n", p.x, p.y);
        }
    }
    out
}

pub const CHECK_HEADER: [&str; 10] = [
    "family", "w", "v", "k", "m", "n", "lhs_word", "rhs_word", "equal", "lhs",
];

pub fn check_row(c: &IdentityCheck) -> Vec<String> {
    vec![
        format!("{:?}", c.family),
        c.w.to_string(),
        opt(c.v.as_ref()),
        c.k.to_string(),
        c.m.to_string(),
        c.n.to_string(),
        c.lhs_word.to_string(),
        c.rhs_word.to_string(),
        c.equal.to_string(),
        c.lhs.to_string(),
    ]
}
