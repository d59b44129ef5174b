//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use qmarkoff::cyclotomic::{self, generators, ClosureResult};
use qmarkoff::identities::{self, paired_words, Family, SuiteBounds};
use qmarkoff::qmatrix::{char_poly_scaled_a, scaled_a};
use qmarkoff::search::{CollisionReport, PairClass};
use qmarkoff::{
    christoffel_injectivity, christoffel_words, m_q, markoff_numbers_up_to, mu_q, CycMatrix, LaurentPoly, Order, Word,
    DEFAULT_CLOSURE_CAP,
};

const SEED: u64 = 20_240_601;
const SUITE_CASES: usize = 1000;
const MEMORY_LIMIT_MIB: u64 = 2048;

type Outcome = Result<String, String>;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn o(k: u32) -> Order {
    Order::new(k).unwrap()
}

fn nonempty_words(max_len: usize) -> impl Iterator<Item = Word> {
    Word::all_binary_up_to(max_len).filter(|w| !w.is_empty())
}

fn c1_aabab() -> Outcome {
    let m = mu_q(&w("aabab")).unwrap();
    let expected = LaurentPoly::from_i64s(0, &[1, 4, 10, 18, 27, 33, 33, 29, 21, 12, 5, 1]);
    ensure(m.m12 == expected, || format!("m12 = {}", m.m12))?;
    ensure(m.m12.eval_at_one() == BigInt::from(194), || "m12(1) != 194".into())?;
    let at_one = m.eval_at_one();
    let want = [[463, 194], [284, 119]].map(|r| r.map(BigInt::from));
    ensure(at_one == want, || format!("mu(aabab) at 1 = {at_one:?}"))?;
    Ok("m12 coefficients and ((463,194),(284,119)) exact".into())
}

fn c2_displayed_collisions() -> Outcome {
    let mu_expected = LaurentPoly::from_i64s(0, &[1, 4, 10, 19, 27, 33, 34, 29, 21, 12, 5, 1]);
    let x = mu_q(&w("aaabb")).unwrap().m12;
    let y = mu_q(&w("abaab")).unwrap().m12;
    ensure(x == mu_expected && y == mu_expected, || format!("{x} / {y}"))?;
    let m_expected = LaurentPoly::from_i64s(0, &[1, 2, 3, 4, 4, 4, 3, 2, 1]);
    let x = m_q(&w("bbaaaaabb")).unwrap().m12;
    let y = m_q(&w("baaabaaab")).unwrap().m12;
    ensure(x == m_expected && y == m_expected, || format!("{x} / {y}"))?;
    Ok("mu and M collisions with displayed coefficients".into())
}

fn c3_closed_form() -> Outcome {
    let mut n = 0;
    for word in nonempty_words(10) {
        let direct = mu_q(&word).unwrap().eval_cyclotomic(o(6));
        let closed = cyclotomic::closed_form_mu_zeta6(word.len() as u64, word.count_b() as u64).unwrap();
        ensure(direct == closed, || format!("mismatch at {word}"))?;
        n += 1;
    }
    ensure(n == 2046, || format!("{n} words"))?;
    Ok(format!("{n} words, all four entries equal"))
}

fn c4_cones() -> Outcome {
    let mut n = 0;
    for word in nonempty_words(10) {
        let z = mu_q(&word).unwrap().m12.eval_cyclotomic(o(6));
        let cone = cyclotomic::cone_of(&z).unwrap();
        let want = ((word.len() + word.count_b()) % 6) as u8;
        ensure(cone.map(|c| c.residue) == Some(want), || {
            format!("{word}: {cone:?}, expected {want}")
        })?;
        n += 1;
    }
    let empty = mu_q(&Word::empty()).unwrap().m12.eval_cyclotomic(o(6));
    ensure(cyclotomic::cone_of(&empty).unwrap().is_none(), || {
        "empty word has a cone".into()
    })?;
    Ok(format!("{n} nonempty words; only the empty word maps to zero"))
}

fn c5_recover() -> Outcome {
    let mut n = 0;
    for len in 0..=50u64 {
        for b in 0..=len {
            let z = cyclotomic::entry12_zeta6(len, b).unwrap();
            let got = cyclotomic::recover_counts(&z).unwrap();
            ensure(got == Some((len - b, b)), || format!("({len},{b}) -> {got:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (len, count_b) pairs inverted exactly"))
}

fn c6_christoffel() -> Outcome {
    let v = christoffel_injectivity(40);
    ensure(v.injective, || format!("duplicates {:?}", v.duplicates))?;
    ensure(v.counts_injective, || "letter counts collide".into())?;
    ensure(v.zeta6_injective, || "zeta6 values collide".into())?;
    ensure(v.words >= 300, || format!("only {} words", v.words))?;
    Ok(format!(
        "{} Christoffel words, entries and counts pairwise distinct",
        v.words
    ))
}

fn c7_closures() -> Outcome {
    let mut sizes = Vec::new();
    for (k, want) in [(2, 3), (3, 8), (4, 24), (5, 120)] {
        let got = cyclotomic::monoid_closure(o(k), true, DEFAULT_CLOSURE_CAP);
        ensure(got == ClosureResult::Finite(want), || format!("k={k} scaled: {got:?}"))?;
        let unscaled = cyclotomic::monoid_closure(o(k), false, DEFAULT_CLOSURE_CAP);
        let ClosureResult::Finite(u) = unscaled else {
            return Err(format!("k={k} unscaled: {unscaled:?}"));
        };
        sizes.push(format!("k={k}: {want}/{u}"));
    }
    let gens = generators(o(6), true);
    let mut by_counts: BTreeMap<(usize, usize), CycMatrix> = BTreeMap::new();
    for word in Word::all_binary_up_to(8) {
        let m = word.letters().iter().fold(CycMatrix::identity(o(6)), |acc, l| {
            &acc * &gens[(*l == qmarkoff::Letter::B) as usize]
        });
        let key = (word.len(), word.count_b());
        if let Some(prev) = by_counts.insert(key, m.clone()) {
            ensure(prev == m, || {
                format!("k=6 scaled image of {word} differs within counts {key:?}")
            })?;
        }
    }
    Ok(format!(
        "scaled/unscaled sizes {}; k=6 factors through counts",
        sizes.join(", ")
    ))
}

fn c8_residues() -> Outcome {
    for k in [2, 3, 4] {
        let r = cyclotomic::residue_relation_check(k, 10).unwrap();
        ensure(r.violations.is_empty(), || {
            format!("k={k}: {} violations", r.violations.len())
        })?;
        ensure(r.cases_disjoint, || format!("k={k}: value does not determine the case"))?;
        ensure(r.words_checked == 2047, || format!("k={k}: {} words", r.words_checked))?;
    }
    let r = cyclotomic::residue_relation_check(5, 10).unwrap();
    let mut sizes: Vec<usize> = r.classes.iter().map(|c| c.values.len()).collect();
    let by_residue = sizes.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(r.distinct_values == 31, || format!("{} values", r.distinct_values))?;
    ensure(r.classes_disjoint, || "mod-5 classes overlap".into())?;
    ensure(sizes == [11, 5, 5, 5, 5], || format!("class sizes {by_residue:?}"))?;
    Ok(format!(
        "k=2,3,4 zero violations; k=5: 31 values, sizes by residue {by_residue:?}"
    ))
}

fn c9_identities() -> Outcome {
    let mut parts = Vec::new();
    for family in [Family::M1, Family::Mu1, Family::M2, Family::Mu2] {
        let r = identities::run_random_suite(family, SuiteBounds::default_for(family), SUITE_CASES, SEED).unwrap();
        ensure(r.cases >= 1000 && r.all_equal(), || {
            let bad = r.checks.iter().find(|c| !c.equal).unwrap();
            format!(
                "{family:?}: {} failures, first {} / {}",
                r.failures, bad.lhs_word, bad.rhs_word
            )
        })?;
        parts.push(format!("{family:?} {}", r.cases));
    }
    let vs = paired_words(6);
    let mut n = 0;
    for u in Word::all_binary_up_to(3) {
        for v in &vs {
            let d = identities::delta(&u, v).unwrap();
            ensure(d.is_zero(), || format!("Delta_{u}({v}) = {d}"))?;
            n += 1;
        }
    }
    Ok(format!(
        "{} cases all equal; Delta zero on {n} (w, v)",
        parts.join(", ")
    ))
}

fn peak_rss_mib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kib: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib / 1024)
}

fn c10_census() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qmarkoff");
    let out = Command::new(bin)
        .args(["collide", "--map", "mu", "--max-len", "12"])
        .output()
        .map_err(|e| e.to_string())?;
    let report: CollisionReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let code = out.status.code();
    let group = report.group_containing(&w("aaabb")).ok_or("no group with aaabb")?;
    ensure(group.words.contains(&w("abaab")), || format!("group {:?}", group.words))?;
    let s = &report.summary;
    ensure(
        s.identity1 + s.identity2 + s.both + s.transitive + s.unexplained == s.pairs,
        || "pair counts do not add up".into(),
    )?;
    let expected_code = if s.unexplained > 0 { 3 } else { 0 };
    ensure(code == Some(expected_code), || {
        format!("exit code {code:?}, expected {expected_code}")
    })?;
    let unexplained: Vec<String> = report
        .pairs
        .iter()
        .filter(|p| p.class == PairClass::Unexplained)
        .map(|p| format!("({}, {})", p.x, p.y))
        .collect();
    if !unexplained.is_empty() {
        println!("  evidence: unexplained pairs {}", unexplained.join(" "));
    }
    qmarkoff::collide(qmarkoff::MapKind::Mu, 12, 16, None).map_err(|e| e.to_string())?;
    let memory = match peak_rss_mib() {
        Some(mib) => {
            ensure(mib < MEMORY_LIMIT_MIB, || format!("peak RSS {mib} MiB"))?;
            format!("peak RSS {mib} MiB")
        }
        None => "peak RSS not measurable on this platform".into(),
    };
    Ok(format!(
        "{} groups, {} pairs: identity1 {}, identity2 {}, both {}, transitive {}, unexplained {}; exit {}; {memory}",
        s.groups, s.pairs, s.identity1, s.identity2, s.both, s.transitive, s.unexplained, expected_code
    ))
}

fn c11_char_poly() -> Outcome {
    let a = scaled_a();
    let trace = LaurentPoly::from_i64s(-1, &[1, 1, 1]);
    ensure(a.trace() == trace, || format!("trace = {}", a.trace()))?;
    ensure(a.det() == LaurentPoly::one(), || format!("det = {}", a.det()))?;
    let cp = char_poly_scaled_a();
    ensure(cp.evaluate_at(&a).is_zero(), || {
        "Cayley-Hamilton residue nonzero".into()
    })?;
    Ok("trace q + 1 + q^-1, det 1, Cayley-Hamilton vanishes".into())
}

fn c12_markoff() -> Outcome {
    let bound = BigUint::from(1_000_000u32);
    let tree = markoff_numbers_up_to(&bound);
    let words = christoffel_words(30);
    let values: BTreeSet<BigUint> = words
        .iter()
        .map(|x| mu_q(x).unwrap().m12.eval_at_one())
        .map(|v| v.to_biguint().expect("positive"))
        .filter(|v| v <= &bound)
        .collect();
    let missing: Vec<_> = tree.difference(&values).collect();
    ensure(missing.is_empty(), || format!("tree numbers not attained: {missing:?}"))?;
    let extra: Vec<_> = values.difference(&tree).collect();
    ensure(extra.is_empty(), || format!("values outside the tree: {extra:?}"))?;
    Ok(format!(
        "{} Markoff numbers <= 10^6 match {} Christoffel words",
        tree.len(),
        words.len()
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("mu_q(aabab) displayed values", ms(10), c1_aabab),
        ("displayed collisions", ms(10), c2_displayed_collisions),
        ("closed form at zeta6, |w| <= 10", s(5), c3_closed_form),
        ("cone residues, |w| <= 10", s(5), c4_cones),
        ("count recovery, len <= 50", s(1), c5_recover),
        ("Christoffel injectivity, |w| <= 40", s(30), c6_christoffel),
        ("monoid closures", s(30), c7_closures),
        ("residue relations", s(60), c8_residues),
        ("identity suites and Delta", s(120), c9_identities),
        ("mu collision census, |w| <= 12", s(600), c10_census),
        ("characteristic polynomial", Duration::ZERO, c11_char_poly),
        ("Markoff correspondence", s(60), c12_markoff),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if budget.is_zero() || elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; over budget {budget:?}")),
            Err(e) => Err(e),
        };
        let budget_text = if budget.is_zero() {
            "exact".to_string()
        } else {
            format!("budget {budget:?}")
        };
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}, {budget_text}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}, {budget_text}]",
                    i + 1
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
