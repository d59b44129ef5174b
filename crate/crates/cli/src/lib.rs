//! Command-line front end for the `qmarkoff` library.

use clap::{Parser, Subcommand, ValueEnum};
use qmarkoff::cyclotomic::{self, ClosureResult, ConeIndex};
use qmarkoff::identities::{self, Family, SuiteBounds, SuiteReport};
use qmarkoff::{
    christoffel_words, markoff_numbers, markoff_numbers_up_to, stern_brocot_fraction, CycInt, CycMatrix, Error,
    LaurentPoly, MapKind, Order, QMatrix, ResidueReport, Word, DEFAULT_CLOSURE_CAP, DEFAULT_SAFETY_BOUND,
};
use serde::{Deserialize, Serialize};

mod output;

use output::csv_string;
pub use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "qmarkoff",
    version,
    about = "Exact q-deformed Markoff matrices over binary words"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for the parallel commands (defaults to all cores).
    #[arg(long, env = "QMARKOFF_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Largest word length the collision search accepts.
    #[arg(long, default_value_t = DEFAULT_SAFETY_BOUND, global = true)]
    pub bound: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MapArg {
    #[value(name = "M")]
    M,
    #[value(name = "mu")]
    Mu,
}

impl From<MapArg> for MapKind {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::M => MapKind::M,
            MapArg::Mu => MapKind::Mu,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    M1,
    Mu1,
    M2,
    Mu2,
    Delta,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// M_q or mu_q of a word.
    Compute {
        #[arg(long, value_enum, default_value_t = MapArg::Mu)]
        map: MapArg,
        #[arg(long)]
        word: String,
    },
    /// Christoffel words up to a length, with slopes and mu at q = 1.
    Christoffel {
        #[arg(long)]
        max_len: usize,
    },
    /// Evaluation at a primitive k-th root of unity; cone and counts for k = 6.
    Eval {
        #[arg(long, value_enum, default_value_t = MapArg::Mu)]
        map: MapArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: u32,
    },
    /// Exhaustive search for words sharing a 12-entry.
    Collide {
        #[arg(long, value_enum, default_value_t = MapArg::Mu)]
        map: MapArg,
        #[arg(long)]
        max_len: usize,
    },
    /// Classify a single colliding pair.
    Classify {
        #[arg(long, value_enum, default_value_t = MapArg::Mu)]
        map: MapArg,
        x: String,
        y: String,
    },
    /// Randomized checks of the identity families.
    VerifyIdentities {
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Size of the matrix monoid generated at a root of unity.
    Closure {
        #[arg(long)]
        k: u32,
        /// Scale the generators by zeta^-1 and zeta^-2.
        #[arg(long)]
        scaled: bool,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Residue relations between mu at q = 1 and at a root of unity.
    Residues {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Markoff numbers from the triple tree.
    Markoff {
        #[arg(long, conflicts_with = "up_to")]
        depth: Option<usize>,
        #[arg(long)]
        up_to: Option<String>,
    },
    /// The value cloud of mu at a fifth root of unity, by residue mod 5.
    #[command(name = "figure2-data")]
    CloudData {
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => 4,
            Error::OrderOutOfRange(..) => 5,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Result of one invocation: the text to print and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn parse_binary(s: &str) -> Result<Word, Failure> {
    Ok(Word::binary(s)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ComputeOutput {
    pub map: MapKind,
    pub word: Word,
    pub matrix: QMatrix,
    pub m12: LaurentPoly,
    pub at_one: [[String; 2]; 2],
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ChristoffelRow {
    pub word: Word,
    pub count_a: usize,
    pub count_b: usize,
    pub slope: String,
    pub markoff: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct EvalOutput {
    pub map: MapKind,
    pub word: Word,
    pub k: u32,
    pub matrix: CycMatrix,
    pub m12: CycInt,
    /// Real and imaginary parts, approximate.
    pub approx: (String, String),
    pub cone: Option<ConeIndex>,
    pub counts: Option<(u64, u64)>,
    pub closed_form_agrees: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ClosureOutput {
    pub k: u32,
    pub scaled: bool,
    pub cap: usize,
    pub result: ClosureResult,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct VerifyOutput {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CloudPoint {
    pub residue: u32,
    pub value: CycInt,
    pub re_approx: String,
    pub im_approx: String,
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let format = cli.format;
    match &cli.command {
        Command::Compute { map, word } => {
            let kind = MapKind::from(*map);
            let word = parse_binary(word)?;
            let matrix = kind.matrix(&word)?;
            let at_one = matrix.eval_at_one().map(|row| row.map(|x| x.to_string()));
            let out = ComputeOutput {
                map: kind,
                m12: matrix.m12.clone(),
                word,
                matrix,
                at_one,
            };
            Ok(Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let rows = [
                        ("m11", &out.matrix.m11),
                        ("m12", &out.matrix.m12),
                        ("m21", &out.matrix.m21),
                        ("m22", &out.matrix.m22),
                    ]
                    .into_iter()
                    .zip(out.at_one.iter().flatten())
                    .map(|((name, p), one)| output::poly_row(name, p, one))
                    .collect::<Vec<_>>();
                    csv_string(&["entry", "min_degree", "coeffs", "at_one"], rows)
                }
                Format::Human => format!(
                    "{}_q({})\n  m11 = {}\n  m12 = {}\n  m21 = {}\n  m22 = {}\nat q = 1: [[{}, {}], [{}, {}]]\n",
                    kind.name(),
                    out.word,
                    out.matrix.m11,
                    out.matrix.m12,
                    out.matrix.m21,
                    out.matrix.m22,
                    out.at_one[0][0],
                    out.at_one[0][1],
                    out.at_one[1][0],
                    out.at_one[1][1]
                ),
            }))
        }
        Command::Christoffel { max_len } => {
            let rows: Vec<ChristoffelRow> = christoffel_words(*max_len)
                .into_iter()
                .map(|w| {
                    let slope = stern_brocot_fraction(&w)
                        .expect("christoffel words are nonempty")
                        .to_string();
                    let markoff = qmarkoff::mu_q(&w).expect("binary").m12.eval_at_one().to_string();
                    ChristoffelRow {
                        count_a: w.count_a(),
                        count_b: w.count_b(),
                        word: w,
                        slope,
                        markoff,
                    }
                })
                .collect();
            Ok(Outcome::ok(match format {
                Format::Json => json(&rows),
                Format::Csv => csv_string(
                    &["word", "count_a", "count_b", "slope", "markoff"],
                    rows.iter().map(|r| {
                        vec![
                            r.word.to_string(),
                            r.count_a.to_string(),
                            r.count_b.to_string(),
                            r.slope.clone(),
                            r.markoff.clone(),
                        ]
                    }),
                ),
                Format::Human => rows
                    .iter()
                    .map(|r| format!("{:<24} {:>7} {}\n", r.word.to_string(), r.slope, r.markoff))
                    .collect(),
            }))
        }
        Command::Eval { map, word, k } => {
            let kind = MapKind::from(*map);
            let order = Order::new(*k)?;
            let word = parse_binary(word)?;
            let matrix = kind.matrix(&word)?.eval_cyclotomic(order);
            let m12 = matrix.m12.clone();
            let (cone, counts, closed_form_agrees) = if *k == 6 && kind == MapKind::Mu {
                let closed = cyclotomic::closed_form_mu_zeta6(word.len() as u64, word.count_b() as u64)?;
                (
                    cyclotomic::cone_of(&m12)?,
                    cyclotomic::recover_counts(&m12)?,
                    Some(closed == matrix),
                )
            } else {
                (None, None, None)
            };
            let (re, im) = m12.to_complex();
            let out = EvalOutput {
                map: kind,
                k: *k,
                approx: (output::approx(re), output::approx(im)),
                word,
                matrix,
                m12,
                cone,
                counts,
                closed_form_agrees,
            };
            Ok(Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let mut header = vec!["word".to_string(), "k".to_string()];
                    header.extend((0..out.m12.coords().len()).map(|i| format!("c{i}")));
                    header.extend(["re_approx", "im_approx", "cone_residue", "count_a", "count_b"].map(String::from));
                    let mut row = vec![out.word.to_string(), k.to_string()];
                    row.extend(out.m12.coords().iter().map(|c| c.to_string()));
                    row.push(out.approx.0.clone());
                    row.push(out.approx.1.clone());
                    row.push(out.cone.map(|c| c.residue.to_string()).unwrap_or_default());
                    row.push(out.counts.map(|c| c.0.to_string()).unwrap_or_default());
                    row.push(out.counts.map(|c| c.1.to_string()).unwrap_or_default());
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    csv_string(&header, [row])
                }
                Format::Human => {
                    let mut s = format!("{}_zeta{}({})_12 = {}\n", kind.name(), k, out.word, out.m12);
                    if let Some(c) = out.cone {
                        let (lo, hi) = c.spanning_powers();
                        s += &format!("cone {} (between zeta^{} and zeta^{})\n", c.residue, lo, hi);
                    }
                    if let Some((a, b)) = out.counts {
                        s += &format!("counts |w|_a = {a}, |w|_b = {b}\n");
                    }
                    s
                }
            }))
        }
        Command::Collide { map, max_len } => {
            let report = qmarkoff::collide(MapKind::from(*map), *max_len, cli.bound, cli.threads)?;
            let code = if report.has_unexplained() { 3 } else { 0 };
            if code == 3 {
                eprintln!(
                    "note: {} unexplained collision pair(s) found; see the report",
                    report.summary.unexplained
                );
            }
            Ok(Outcome {
                text: match format {
                    Format::Json => json(&report),
                    Format::Csv => output::collision_csv(&report),
                    Format::Human => output::collision_human(&report),
                },
                code,
            })
        }
        Command::Classify { map, x, y } => {
            let c = qmarkoff::classify_pair(MapKind::from(*map), &parse_binary(x)?, &parse_binary(y)?)?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&c),
                Format::Csv => csv_string(&output::PAIR_HEADER, [output::pair_row(&c)]),
                Format::Human => format!("{} {} {:?}\n", c.x, c.y, c.class),
            }))
        }
        Command::VerifyIdentities { family, cases } => {
            let families: Vec<Family> = match family {
                FamilyArg::M1 => vec![Family::M1],
                FamilyArg::Mu1 => vec![Family::Mu1],
                FamilyArg::M2 => vec![Family::M2],
                FamilyArg::Mu2 => vec![Family::Mu2],
                FamilyArg::Delta => vec![Family::Delta],
                FamilyArg::All => Family::ALL.to_vec(),
            };
            let suites = families
                .into_iter()
                .map(|f| identities::run_random_suite(f, SuiteBounds::default_for(f), *cases, cli.seed))
                .collect::<Result<Vec<_>, _>>()?;
            let failures: usize = suites.iter().map(|s| s.failures).sum();
            let out = VerifyOutput { seed: cli.seed, suites };
            Ok(Outcome {
                text: match format {
                    Format::Json => json(&out),
                    Format::Csv => csv_string(
                        &output::CHECK_HEADER,
                        out.suites.iter().flat_map(|s| s.checks.iter().map(output::check_row)),
                    ),
                    Format::Human => out
                        .suites
                        .iter()
                        .map(|s| format!("{:?}: {} cases, {} failures\n", s.family, s.cases, s.failures))
                        .collect(),
                },
                code: if failures == 0 { 0 } else { 1 },
            })
        }
        Command::Closure { k, scaled, cap } => {
            let order = Order::new(*k)?;
            let out = ClosureOutput {
                k: *k,
                scaled: *scaled,
                cap: *cap,
                result: cyclotomic::monoid_closure(order, *scaled, *cap),
            };
            Ok(Outcome::ok(match format {
                Format::Json => json(&out),
                Format::Csv => {
                    let (status, size) = match out.result {
                        ClosureResult::Finite(n) => ("finite", n),
                        ClosureResult::ExceededCap(n) => ("exceeded_cap", n),
                    };
                    csv_string(
                        &["k", "scaled", "cap", "status", "size"],
                        [vec![
                            k.to_string(),
                            scaled.to_string(),
                            cap.to_string(),
                            status.into(),
                            size.to_string(),
                        ]],
                    )
                }
                Format::Human => format!("k = {k}, scaled = {scaled}: {:?}\n", out.result),
            }))
        }
        Command::Residues { k, max_len } => {
            let report = with_threads(cli.threads, || cyclotomic::residue_relation_check(*k, *max_len))?;
            let code = if report.violations.is_empty() { 0 } else { 1 };
            Ok(Outcome {
                text: match format {
                    Format::Json => json(&report),
                    Format::Csv => residue_csv(&report),
                    Format::Human => {
                        let mut s = format!(
                            "k = {}, words = {}, violations = {}, distinct values = {}, disjoint = {}\n",
                            report.k,
                            report.words_checked,
                            report.violations.len(),
                            report.distinct_values,
                            report.classes_disjoint
                        );
                        for c in &report.classes {
                            s += &format!("  residue {}: {} values\n", c.residue, c.values.len());
                        }
                        s
                    }
                },
                code,
            })
        }
        Command::Markoff { depth, up_to } => {
            let numbers = match (depth, up_to) {
                (Some(d), None) => markoff_numbers(*d),
                (None, Some(b)) => {
                    markoff_numbers_up_to(&b.parse().map_err(|_| usage(format!("invalid bound {b:?}")))?)
                }
                (None, None) => markoff_numbers(6),
                (Some(_), Some(_)) => unreachable!("rejected by the argument parser"),
            };
            let numbers: Vec<String> = numbers.iter().map(ToString::to_string).collect();
            Ok(Outcome::ok(match format {
                Format::Json => json(&numbers),
                Format::Csv => csv_string(&["markoff"], numbers.iter().map(|n| vec![n.clone()])),
                Format::Human => numbers.join(", ") + "\n",
            }))
        }
        Command::CloudData { max_len } => {
            let report = with_threads(cli.threads, || cyclotomic::residue_relation_check(5, *max_len))?;
            let points: Vec<CloudPoint> = report
                .classes
                .iter()
                .flat_map(|c| {
                    c.values.iter().map(|v| {
                        let (re, im) = v.to_complex();
                        CloudPoint {
                            residue: c.residue,
                            value: v.clone(),
                            re_approx: output::approx(re),
                            im_approx: output::approx(im),
                        }
                    })
                })
                .collect();
            Ok(Outcome::ok(match format {
                Format::Json => json(&points),
                Format::Csv | Format::Human => csv_string(
                    &["residue_mod5", "c0", "c1", "c2", "c3", "re_approx", "im_approx"],
                    points.iter().map(|p| {
                        let mut row = vec![p.residue.to_string()];
                        row.extend(p.value.coords().iter().map(|c| c.to_string()));
                        row.push(p.re_approx.clone());
                        row.push(p.im_approx.clone());
                        row
                    }),
                ),
            }))
        }
    }
}

fn residue_csv(report: &ResidueReport) -> String {
    let width = report
        .classes
        .iter()
        .flat_map(|c| c.values.first())
        .map(|v| v.coords().len())
        .max()
        .unwrap_or(1);
    let mut header = vec!["residue".to_string()];
    header.extend((0..width).map(|i| format!("c{i}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_string(
        &header,
        report.classes.iter().flat_map(|c| {
            c.values.iter().map(move |v| {
                let mut row = vec![c.residue.to_string()];
                row.extend(v.coords().iter().map(|x| x.to_string()));
                row
            })
        }),
    )
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
