//! Word morphisms and the two families of words with equal 12-entries.
//!
//! First family, for binary `w` and `k, m, n >= 0`:
//!
//! ```text
//! M_q(a^k b w b a^m)_12 = M_q(a^k b bar(w) b a^n)_12
//! mu_q(a w b)_12        = mu_q(a mirror(w) b)_12
//! ```
//!
//! Second family, for binary `w` and `v` over `{a, b, c, d}`:
//!
//! ```text
//! M_q(a^k b phi_w(v) w b a^m)_12 = M_q(a^k b phi_w(v') w b a^n)_12
//! mu_q(a psi_w(v) w b)_12        = mu_q(a psi_w(v') w b)_12
//! ```
//!
//! where `v' = v.bar_ab()` reverses `v` and exchanges `a` and `b` but
//! leaves `c` and `d` in place. With the full involution (which also swaps
//! `c` and `d`) the second family is false: `aabbab` and `abaabb` already
//! differ. The full involution is the right one for `Delta_w`, which
//! vanishes on `({a,b}{c,d})*`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qmatrix::{m_q, mu_q};
use crate::words::{Alphabet, Letter, Word};

fn word(s: &str) -> Word {
    s.parse().expect("literal words are valid")
}

/// The morphisms used to build the collision families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", content = "parameter", rename_all = "snake_case")]
pub enum Morphism {
    /// `a -> ba`, `b -> bbaa`.
    Sigma,
    /// `a -> ac`, `b -> bd`, `c -> bc`, `d -> ad`.
    Tau,
    /// `c <-> d`, fixing `a` and `b`.
    SwapCd,
    Phi(Word),
    Psi(Word),
    Eta(Word),
    EtaPrime(Word),
}

/// A morphism with its letter images written out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismTable {
    pub name: String,
    pub parameter: Option<Word>,
    pub images: Vec<(char, Word)>,
}

impl Morphism {
    fn parameterized(w: &Word, make: fn(Word) -> Morphism) -> Result<Self> {
        w.require_binary()?;
        Ok(make(w.clone()))
    }

    /// `a -> w abba bar(w) abba`, `b -> w baab bar(w) baab`,
    /// `c -> w abba bar(w) baab`, `d -> w baab bar(w) abba`.
    pub fn phi(w: &Word) -> Result<Self> {
        Self::parameterized(w, Morphism::Phi)
    }

    /// `a -> w ab mirror(w) ab`, `b -> w ba mirror(w) ba`,
    /// `c -> w ab mirror(w) ba`, `d -> w ba mirror(w) ab`.
    pub fn psi(w: &Word) -> Result<Self> {
        Self::parameterized(w, Morphism::Psi)
    }

    /// `a -> w abba`, `b -> w baab`, `c -> bar(w) abba`, `d -> bar(w) baab`.
    pub fn eta(w: &Word) -> Result<Self> {
        Self::parameterized(w, Morphism::Eta)
    }

    /// `a -> abba w`, `b -> baab w`, `c -> abba bar(w)`, `d -> baab bar(w)`.
    pub fn eta_prime(w: &Word) -> Result<Self> {
        Self::parameterized(w, Morphism::EtaPrime)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Morphism::Sigma => "sigma",
            Morphism::Tau => "tau",
            Morphism::SwapCd => "swap_cd",
            Morphism::Phi(_) => "phi",
            Morphism::Psi(_) => "psi",
            Morphism::Eta(_) => "eta",
            Morphism::EtaPrime(_) => "eta_prime",
        }
    }

    pub fn parameter(&self) -> Option<&Word> {
        match self {
            Morphism::Phi(w) | Morphism::Psi(w) | Morphism::Eta(w) | Morphism::EtaPrime(w) => Some(w),
            _ => None,
        }
    }

    pub fn source(&self) -> Alphabet {
        match self {
            Morphism::Sigma => Alphabet::Binary,
            _ => Alphabet::Extended,
        }
    }

    /// Image of a single letter, `None` outside the source alphabet.
    pub fn image(&self, letter: Letter) -> Option<Word> {
        use Letter::*;
        let join = |parts: &[&Word]| parts.iter().fold(Word::empty(), |acc, p| acc.concat(p));
        let (abba, baab, ab, ba) = (word("abba"), word("baab"), word("ab"), word("ba"));
        Some(match self {
            Morphism::Sigma => match letter {
                A => word("ba"),
                B => word("bbaa"),
                _ => return None,
            },
            Morphism::Tau => match letter {
                A => word("ac"),
                B => word("bd"),
                C => word("bc"),
                D => word("ad"),
            },
            Morphism::SwapCd => Word::power(
                match letter {
                    C => D,
                    D => C,
                    x => x,
                },
                1,
            ),
            Morphism::Phi(w) => {
                let wb = w.bar();
                match letter {
                    A => join(&[w, &abba, &wb, &abba]),
                    B => join(&[w, &baab, &wb, &baab]),
                    C => join(&[w, &abba, &wb, &baab]),
                    D => join(&[w, &baab, &wb, &abba]),
                }
            }
            Morphism::Psi(w) => {
                let wm = w.mirror();
                match letter {
                    A => join(&[w, &ab, &wm, &ab]),
                    B => join(&[w, &ba, &wm, &ba]),
                    C => join(&[w, &ab, &wm, &ba]),
                    D => join(&[w, &ba, &wm, &ab]),
                }
            }
            Morphism::Eta(w) => match letter {
                A => join(&[w, &abba]),
                B => join(&[w, &baab]),
                C => join(&[&w.bar(), &abba]),
                D => join(&[&w.bar(), &baab]),
            },
            Morphism::EtaPrime(w) => match letter {
                A => join(&[&abba, w]),
                B => join(&[&baab, w]),
                C => join(&[&abba, &w.bar()]),
                D => join(&[&baab, &w.bar()]),
            },
        })
    }

    /// Letterwise image of `v`.
    pub fn apply(&self, v: &Word) -> Result<Word> {
        let mut out = Word::empty();
        for &l in v.letters() {
            let img = self.image(l).ok_or_else(|| Error::AlphabetMismatch {
                word: v.to_string(),
                expected: self.source().name(),
            })?;
            out = out.concat(&img);
        }
        Ok(out)
    }

    pub fn table(&self) -> MorphismTable {
        let letters: &[Letter] = match self.source() {
            Alphabet::Binary => &Letter::BINARY,
            Alphabet::Extended => &Letter::EXTENDED,
        };
        MorphismTable {
            name: self.name().to_string(),
            parameter: self.parameter().cloned(),
            images: letters
                .iter()
                .map(|&l| (l.as_char(), self.image(l).expect("letter in source alphabet")))
                .collect(),
        }
    }
}

/// Which identity an [`IdentityCheck`] instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `M_q(a^k b w b a^m)_12 = M_q(a^k b bar(w) b a^n)_12`
    M1,
    /// `mu_q(a w b)_12 = mu_q(a mirror(w) b)_12`
    Mu1,
    /// `M_q(a^k b phi_w(v) w b a^m)_12 = M_q(a^k b phi_w(v') w b a^n)_12`
    M2,
    /// `mu_q(a psi_w(v) w b)_12 = mu_q(a psi_w(v') w b)_12`
    Mu2,
    /// `Delta_w(v) = 0` for `v` in `({a,b}{c,d})*`
    Delta,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::M1, Family::Mu1, Family::M2, Family::Mu2, Family::Delta];
}

/// One instance of an identity: both sides and the words producing them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub family: Family,
    pub w: Word,
    pub v: Option<Word>,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub lhs_word: Word,
    pub rhs_word: Word,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
}

fn a_pow(k: usize) -> Word {
    Word::power(Letter::A, k)
}

fn b1() -> Word {
    Word::power(Letter::B, 1)
}

fn a1() -> Word {
    Word::power(Letter::A, 1)
}

/// `(a^k b w b a^m, a^k b bar(w) b a^n)`.
pub fn identity1_m_pair(w: &Word, k: usize, m: usize, n: usize) -> Result<(Word, Word)> {
    w.require_binary()?;
    let wrap = |inner: &Word, tail| a_pow(k).concat(&b1()).concat(inner).concat(&b1()).concat(&a_pow(tail));
    Ok((wrap(w, m), wrap(&w.bar(), n)))
}

/// `(a w b, a mirror(w) b)`.
pub fn identity1_mu_pair(w: &Word) -> Result<(Word, Word)> {
    w.require_binary()?;
    let wrap = |inner: &Word| a1().concat(inner).concat(&b1());
    Ok((wrap(w), wrap(&w.mirror())))
}

/// `(a^k b phi_w(v) w b a^m, a^k b phi_w(v') w b a^n)` with `v' = v.bar_ab()`.
pub fn identity2_m_pair(w: &Word, v: &Word, k: usize, m: usize, n: usize) -> Result<(Word, Word)> {
    let phi = Morphism::phi(w)?;
    let x = phi.apply(v)?.concat(w);
    let y = phi.apply(&v.bar_ab())?.concat(w);
    let wrap = |inner: &Word, tail| a_pow(k).concat(&b1()).concat(inner).concat(&b1()).concat(&a_pow(tail));
    Ok((wrap(&x, m), wrap(&y, n)))
}

/// `(a psi_w(v) w b, a psi_w(v') w b)` with `v' = v.bar_ab()`.
pub fn identity2_mu_pair(w: &Word, v: &Word) -> Result<(Word, Word)> {
    let psi = Morphism::psi(w)?;
    let wrap = |inner: Word| a1().concat(&inner).concat(w).concat(&b1());
    Ok((wrap(psi.apply(v)?), wrap(psi.apply(&v.bar_ab())?)))
}

fn check(
    family: Family,
    (w, v, k, m, n): (&Word, Option<&Word>, usize, usize, usize),
    (lhs_word, rhs_word): (Word, Word),
    entry: fn(&Word) -> Result<crate::qmatrix::QMatrix>,
) -> Result<IdentityCheck> {
    let lhs = entry(&lhs_word)?.m12;
    let rhs = entry(&rhs_word)?.m12;
    Ok(IdentityCheck {
        family,
        w: w.clone(),
        v: v.cloned(),
        k,
        m,
        n,
        equal: lhs == rhs,
        lhs_word,
        rhs_word,
        lhs,
        rhs,
    })
}

pub fn verify_identity1_m(w: &Word, k: usize, m: usize, n: usize) -> Result<IdentityCheck> {
    check(Family::M1, (w, None, k, m, n), identity1_m_pair(w, k, m, n)?, m_q)
}

pub fn verify_identity1_mu(w: &Word) -> Result<IdentityCheck> {
    check(Family::Mu1, (w, None, 0, 0, 0), identity1_mu_pair(w)?, mu_q)
}

pub fn verify_identity2_m(w: &Word, v: &Word, k: usize, m: usize, n: usize) -> Result<IdentityCheck> {
    check(Family::M2, (w, Some(v), k, m, n), identity2_m_pair(w, v, k, m, n)?, m_q)
}

pub fn verify_identity2_mu(w: &Word, v: &Word) -> Result<IdentityCheck> {
    check(Family::Mu2, (w, Some(v), 0, 0, 0), identity2_mu_pair(w, v)?, mu_q)
}

/// The two words compared by `Delta_w(v)`:
/// `b eta_w(v) w b` and `b w eta'_w(bar(v)) b`.
pub fn delta_words(w: &Word, v: &Word) -> Result<(Word, Word)> {
    let left = b1().concat(&Morphism::eta(w)?.apply(v)?).concat(w).concat(&b1());
    let right = b1()
        .concat(w)
        .concat(&Morphism::eta_prime(w)?.apply(&v.bar())?)
        .concat(&b1());
    Ok((left, right))
}

/// `Delta_w(v) = M_q(b eta_w(v) w b)_12 - M_q(b w eta'_w(bar(v)) b)_12`.
pub fn delta(w: &Word, v: &Word) -> Result<LaurentPoly> {
    let (x, y) = delta_words(w, v)?;
    Ok(m_q(&x)?.m12 - m_q(&y)?.m12)
}

pub fn verify_delta(w: &Word, v: &Word) -> Result<IdentityCheck> {
    let (lhs_word, rhs_word) = delta_words(w, v)?;
    check(Family::Delta, (w, Some(v), 0, 0, 0), (lhs_word, rhs_word), m_q)
}

/// Words `v` in `({a,b}{c,d})^j` for all `j` with `2j <= max_len`.
pub fn paired_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len / 2 {
        let mut next = Vec::with_capacity(frontier.len() * 4);
        for v in &frontier {
            for x in [Letter::A, Letter::B] {
                for y in [Letter::C, Letter::D] {
                    let mut u = v.clone();
                    u.push(x);
                    u.push(y);
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Parameter bounds for the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub max_w: usize,
    pub max_v: usize,
    pub max_exponent: usize,
}

impl SuiteBounds {
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::M1 => SuiteBounds {
                max_w: 8,
                max_v: 0,
                max_exponent: 3,
            },
            Family::Mu1 => SuiteBounds {
                max_w: 8,
                max_v: 0,
                max_exponent: 0,
            },
            Family::M2 => SuiteBounds {
                max_w: 4,
                max_v: 3,
                max_exponent: 2,
            },
            Family::Mu2 => SuiteBounds {
                max_w: 4,
                max_v: 3,
                max_exponent: 0,
            },
            Family::Delta => SuiteBounds {
                max_w: 3,
                max_v: 6,
                max_exponent: 0,
            },
        }
    }
}

fn random_word(rng: &mut impl Rng, max_len: usize, alphabet: &[Letter]) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect())
}

/// One randomized case; the RNG is seeded from `(seed, index)` so any case
/// can be replayed on its own.
pub fn random_case(family: Family, bounds: SuiteBounds, seed: u64, index: u64) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let w = random_word(&mut rng, bounds.max_w, &Letter::BINARY);
    let mut exp = || rng.gen_range(0..=bounds.max_exponent);
    let (k, m, n) = (exp(), exp(), exp());
    match family {
        Family::M1 => verify_identity1_m(&w, k, m, n),
        Family::Mu1 => verify_identity1_mu(&w),
        Family::M2 => {
            let v = random_word(&mut rng, bounds.max_v, &Letter::EXTENDED);
            verify_identity2_m(&w, &v, k, m, n)
        }
        Family::Mu2 => {
            let v = random_word(&mut rng, bounds.max_v, &Letter::EXTENDED);
            verify_identity2_mu(&w, &v)
        }
        Family::Delta => {
            let pairs = rng.gen_range(0..=bounds.max_v / 2);
            let v = Word::from_letters(
                (0..pairs)
                    .flat_map(|_| {
                        [
                            [Letter::A, Letter::B][rng.gen_range(0..2)],
                            [Letter::C, Letter::D][rng.gen_range(0..2)],
                        ]
                    })
                    .collect(),
            );
            verify_delta(&w, &v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub family: Family,
    pub seed: u64,
    pub bounds: SuiteBounds,
    pub cases: usize,
    pub failures: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SuiteReport {
    pub fn all_equal(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `cases` random instances of `family` in parallel. Output order is
/// the case index order regardless of scheduling.
pub fn run_random_suite(family: Family, bounds: SuiteBounds, cases: usize, seed: u64) -> Result<SuiteReport> {
    let checks = (0..cases as u64)
        .into_par_iter()
        .map(|i| random_case(family, bounds, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        family,
        seed,
        bounds,
        cases,
        failures: checks.iter().filter(|c| !c.equal).count(),
        checks,
    })
}
