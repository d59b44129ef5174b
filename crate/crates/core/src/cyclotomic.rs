//! Exact arithmetic in `Z[zeta_k]` for `k <= 6`, the closed form of the
//! matrices at `zeta_6`, the six-cone classifier and the finite-group data
//! at `k = 2..5`.
//!
//! Elements are stored by their coordinates in the power basis
//! `1, zeta, ..., zeta^(d-1)` with `d = deg Phi_k`, after reduction modulo
//! the cyclotomic polynomial. Everything is integer arithmetic; the only
//! floating-point code is [`CycInt::to_complex`], used for plot data.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qmatrix::QMatrix;
use crate::words::{Letter, Word};

/// Order `k` of a primitive root of unity, restricted to `1..=6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(u8);

impl Order {
    pub const SUPPORTED: &'static str = "1..=6";

    pub fn new(k: u32) -> Result<Self> {
        if (1..=6).contains(&k) {
            Ok(Order(k as u8))
        } else {
            Err(Error::OrderOutOfRange(k, Self::SUPPORTED))
        }
    }

    pub fn k(self) -> u32 {
        self.0 as u32
    }

    /// `Phi_k` coefficients, constant term first. All are monic.
    fn cyclotomic_poly(self) -> &'static [i64] {
        match self.0 {
            1 => &[-1, 1],
            2 => &[1, 1],
            3 => &[1, 1, 1],
            4 => &[1, 0, 1],
            5 => &[1, 1, 1, 1, 1],
            6 => &[1, -1, 1],
            _ => unreachable!("Order is validated on construction"),
        }
    }

    /// `deg Phi_k = phi(k)`.
    pub fn degree(self) -> usize {
        self.cyclotomic_poly().len() - 1
    }
}

/// An element of `Z[zeta_k]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    order: Order,
    coords: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(order: Order) -> Self {
        CycInt {
            order,
            coords: vec![BigInt::zero(); order.degree()],
        }
    }

    pub fn one(order: Order) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: Order, n: i64) -> Self {
        let mut z = Self::zero(order);
        z.coords[0] = BigInt::from(n);
        z
    }

    /// Builds an element from coordinates in the reduced basis.
    pub fn from_coords(order: Order, coords: &[i64]) -> Result<Self> {
        if coords.len() != order.degree() {
            return Err(Error::CoordinateLength {
                k: order.k(),
                expected: order.degree(),
                got: coords.len(),
            });
        }
        Ok(CycInt {
            order,
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        })
    }

    /// Reduces `sum_i powers[i] * zeta^i` (any length) modulo `Phi_k`.
    pub fn from_power_coeffs(order: Order, mut powers: Vec<BigInt>) -> Self {
        let phi = order.cyclotomic_poly();
        let d = order.degree();
        for top in (d..powers.len()).rev() {
            let c = std::mem::take(&mut powers[top]);
            if c.is_zero() {
                continue;
            }
            // zeta^top = -sum_{j<d} phi[j] zeta^(top-d+j)
            for (j, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    powers[top - d + j] -= &c * p;
                }
            }
        }
        powers.resize(d, BigInt::zero());
        CycInt { order, coords: powers }
    }

    /// `zeta_k^e` for any integer exponent.
    pub fn zeta_pow(order: Order, e: i64) -> Self {
        let k = order.k() as i64;
        let mut powers = vec![BigInt::zero(); k as usize];
        powers[e.rem_euclid(k) as usize] = BigInt::one();
        Self::from_power_coeffs(order, powers)
    }

    /// `zeta_k` itself.
    pub fn zeta(order: Order) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Image of a Laurent polynomial under `q -> zeta_k` (so `q^-1 -> zeta_k^(k-1)`).
    pub fn from_laurent(p: &LaurentPoly, order: Order) -> Self {
        let k = order.k() as i64;
        let mut powers = vec![BigInt::zero(); k as usize];
        for (i, c) in p.coeffs().iter().enumerate() {
            let e = (p.min_degree() + i as i64).rem_euclid(k) as usize;
            powers[e] += c;
        }
        Self::from_power_coeffs(order, powers)
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::MismatchedOrder(self.order.k(), other.order.k()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CycInt {
            order: self.order,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CycInt {
            order: self.order,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.order.degree();
        let mut powers = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                powers[i + j] += a * b;
            }
        }
        Ok(Self::from_power_coeffs(self.order, powers))
    }

    /// Approximate complex value `(re, im)` with `zeta_k = exp(2 pi i / k)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let k = self.order.k() as f64;
        self.coords.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / k;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * theta.cos(), im + c * theta.sin())
        })
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = format!("ζ{}", self.order.k());
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{z}")?,
                (1, false) => write!(f, "{mag}{z}")?,
                (_, true) => write!(f, "{z}^{j}")?,
                (_, false) => write!(f, "{mag}{z}^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[k={}]({self})", self.order.k())
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    k: u32,
    coords: Vec<String>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            k: self.order.k(),
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycJson::deserialize(deserializer)?;
        let order = Order::new(raw.k).map_err(D::Error::custom)?;
        if raw.coords.len() != order.degree() {
            return Err(D::Error::custom("coordinate vector length must equal deg Phi_k"));
        }
        let coords = raw
            .coords
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycInt { order, coords })
    }
}

// Operators panic on mismatched orders; use the `checked_*` methods when the
// orders come from untrusted input.
macro_rules! cyc_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("cyclotomic orders must match")
            }
        }
        impl $trait<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

cyc_binop!(Add, add, checked_add);
cyc_binop!(Sub, sub, checked_sub);
cyc_binop!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A 2x2 matrix over `Z[zeta_k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycMatrix {
    pub m11: CycInt,
    pub m12: CycInt,
    pub m21: CycInt,
    pub m22: CycInt,
}

impl CycMatrix {
    pub fn identity(order: Order) -> Self {
        CycMatrix {
            m11: CycInt::one(order),
            m12: CycInt::zero(order),
            m21: CycInt::zero(order),
            m22: CycInt::one(order),
        }
    }

    pub fn scale(&self, c: &CycInt) -> Self {
        CycMatrix {
            m11: c * &self.m11,
            m12: c * &self.m12,
            m21: c * &self.m21,
            m22: c * &self.m22,
        }
    }
}

impl Mul<&CycMatrix> for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, b: &CycMatrix) -> CycMatrix {
        let a = self;
        CycMatrix {
            m11: &a.m11 * &b.m11 + &a.m12 * &b.m21,
            m12: &a.m11 * &b.m12 + &a.m12 * &b.m22,
            m21: &a.m21 * &b.m11 + &a.m22 * &b.m21,
            m22: &a.m21 * &b.m12 + &a.m22 * &b.m22,
        }
    }
}

fn order6() -> Order {
    Order(6)
}

fn check_counts(len: u64, count_b: u64) -> Result<()> {
    if count_b > len {
        Err(Error::CountsOutOfRange { len, count_b })
    } else {
        Ok(())
    }
}

/// `mu_q(w)` at `q = zeta_6`, which depends only on `|w|` and `|w|_b`:
///
/// `zeta^(n+b) * [ [n, -n-b], [-b, -n] ] zeta + [ [b, n], [n+b, -b] ] + I`
/// with `n = |w|`, `b = |w|_b`.
pub fn closed_form_mu_zeta6(len: u64, count_b: u64) -> Result<CycMatrix> {
    check_counts(len, count_b)?;
    let o = order6();
    let (n, b) = (len as i64, count_b as i64);
    // a + c*zeta
    let lin = |a: i64, c: i64| CycInt::from_coords(o, &[a, c]).expect("degree 2");
    let s = CycInt::zeta_pow(o, n + b);
    Ok(CycMatrix {
        m11: &s * &lin(b + 1, n),
        m12: &s * &lin(n, -(n + b)),
        m21: &s * &lin(n + b, -b),
        m22: &s * &lin(1 - b, -n),
    })
}

/// `mu_{zeta_6}(w)_12 = zeta^(n+b) (n - (n+b) zeta)`.
pub fn entry12_zeta6(len: u64, count_b: u64) -> Result<CycInt> {
    check_counts(len, count_b)?;
    let o = order6();
    let (n, b) = (len as i64, count_b as i64);
    let base = CycInt::from_coords(o, &[n, -(n + b)]).expect("degree 2");
    Ok(&CycInt::zeta_pow(o, n + b) * &base)
}

/// One of the six half-open cones partitioning `C \ {0}`.
///
/// Residue `r` labels the cone strictly counterclockwise of the ray through
/// `zeta_6^(r+4)`, up to and including the ray through `zeta_6^(r+5)`; for
/// a nonempty word this is the cone holding `mu_{zeta_6}(w)_12` when
/// `|w| + |w|_b = r (mod 6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConeIndex {
    pub residue: u8,
}

impl ConeIndex {
    /// Exponents `(j, j+1)` of the two rays bounding the cone; the first
    /// ray is excluded, the second included.
    pub fn spanning_powers(self) -> (u8, u8) {
        ((self.residue + 4) % 6, (self.residue + 5) % 6)
    }
}

fn require_order6(z: &CycInt) -> Result<()> {
    if z.order.k() == 6 {
        Ok(())
    } else {
        Err(Error::MismatchedOrder(z.order.k(), 6))
    }
}

fn int_coords(z: &CycInt) -> (&BigInt, &BigInt) {
    (&z.coords[0], &z.coords[1])
}

/// Cone containing `z`, or `None` for zero. Exact: `z` is in the cone with
/// lower ray `zeta^j` iff `zeta^-j z = alpha + beta zeta` with `alpha >= 0`
/// and `beta > 0`.
pub fn cone_of(z: &CycInt) -> Result<Option<ConeIndex>> {
    require_order6(z)?;
    if z.is_zero() {
        return Ok(None);
    }
    let o = order6();
    let mut found = None;
    for j in 0..6i64 {
        let rotated = &CycInt::zeta_pow(o, -j) * z;
        let (alpha, beta) = int_coords(&rotated);
        if !alpha.is_negative() && beta.is_positive() {
            debug_assert!(found.is_none(), "cones overlap at {z}");
            found = Some(ConeIndex {
                residue: (j + 2).rem_euclid(6) as u8,
            });
        }
    }
    Ok(Some(found.expect("the six cones cover every nonzero element")))
}

/// Recovers `(|w|_a, |w|_b)` from `mu_{zeta_6}(w)_12`, or `None` when `z`
/// is not attained by any word.
pub fn recover_counts(z: &CycInt) -> Result<Option<(u64, u64)>> {
    let Some(cone) = cone_of(z)? else {
        return Ok(Some((0, 0)));
    };
    let r = cone.residue as i64;
    let base = &CycInt::zeta_pow(order6(), -r) * z;
    // base = n - (n + b) zeta
    let (c0, c1) = int_coords(&base);
    let (Some(n), Some(nb)) = (c0.to_i64(), (-c1).to_i64()) else {
        return Ok(None);
    };
    let b = nb - n;
    if n <= 0 || b < 0 || b > n || nb.rem_euclid(6) != r {
        return Ok(None);
    }
    Ok(Some(((n - b) as u64, b as u64)))
}

/// Outcome of a monoid closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureResult {
    Finite(usize),
    ExceededCap(usize),
}

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// `mu_q(a)` and `mu_q(b)` evaluated at `zeta_k`, optionally rescaled to
/// `zeta^-1 mu(a)` and `zeta^-2 mu(b)`.
pub fn generators(order: Order, scaled: bool) -> [CycMatrix; 2] {
    let ga = QMatrix::mu_a().eval_cyclotomic(order);
    let gb = QMatrix::mu_b().eval_cyclotomic(order);
    if scaled {
        [
            ga.scale(&CycInt::zeta_pow(order, -1)),
            gb.scale(&CycInt::zeta_pow(order, -2)),
        ]
    } else {
        [ga, gb]
    }
}

/// Size of the monoid generated by [`generators`], by breadth-first closure
/// with exact equality. Gives up once more than `cap` elements are found.
pub fn monoid_closure(order: Order, scaled: bool, cap: usize) -> ClosureResult {
    let gens = generators(order, scaled);
    let identity = CycMatrix::identity(order);
    let mut seen: HashSet<CycMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = &x * g;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return ClosureResult::ExceededCap(cap);
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    ClosureResult::Finite(seen.len())
}

/// A word whose `mu_{zeta_k}` value contradicts the residue relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueViolation {
    pub word: Word,
    pub residue: u32,
    pub value: CycInt,
}

/// The values `mu_{zeta_k}(w)_12` seen for words with `mu_1(w)_12 = residue (mod k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub residue: u32,
    pub values: Vec<CycInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub k: u32,
    pub max_len: usize,
    pub words_checked: u64,
    pub violations: Vec<ResidueViolation>,
    pub classes: Vec<ResidueClass>,
    pub distinct_values: usize,
    /// Whether the value determines the residue (the classes are disjoint).
    pub classes_disjoint: bool,
    /// Whether the value determines which case of the relation holds. For
    /// `k = 4` residues 1 and 3 form one case; otherwise each residue is its own.
    pub cases_disjoint: bool,
    /// Smallest length after which no new value appears.
    pub stable_since_len: usize,
}

/// The admissible values for a residue class, when a relation is known.
fn admissible(order: Order, residue: u32) -> Option<Vec<CycInt>> {
    let int = |n| CycInt::from_int(order, n);
    let z = |e| CycInt::zeta_pow(order, e);
    let set = match (order.k(), residue) {
        (_, 0) => vec![int(0)],
        (2, 1) => vec![int(1), int(-1)],
        (3, 1) => vec![z(0), z(1), z(2)],
        (3, 2) => vec![-&z(0), -&z(1), -&z(2)],
        (4, 1) | (4, 3) => vec![int(1), int(-1), z(1), -&z(1)],
        (4, 2) => {
            let i = z(1);
            vec![&int(1) + &i, &int(1) - &i, &int(-1) + &i, &int(-1) - &i]
        }
        _ => return None,
    };
    Some(set)
}

/// Checks the residue relations between `mu_1(w)_12 mod k` and
/// `mu_{zeta_k}(w)_12` over all binary words of length `<= max_len`, and
/// collects the value set of each residue class.
pub fn residue_relation_check(k: u32, max_len: usize) -> Result<ResidueReport> {
    if !(2..=5).contains(&k) {
        return Err(Error::OrderOutOfRange(k, "2..=5"));
    }
    let order = Order::new(k)?;
    let gens = generators(order, false);
    let int_gens = [QMatrix::mu_a().eval_at_one(), QMatrix::mu_b().eval_at_one()];
    let modulus = BigInt::from(k);

    // (word, residue, value), one vector per length, merged in length order.
    let per_length: Vec<Vec<(Word, u32, CycInt)>> = (0..=max_len)
        .into_par_iter()
        .map(|len| {
            Word::all_binary(len)
                .map(|w| {
                    let mut m = CycMatrix::identity(order);
                    let mut top = [BigInt::one(), BigInt::zero()];
                    for &l in w.letters() {
                        let i = (l == Letter::B) as usize;
                        m = &m * &gens[i];
                        let g = &int_gens[i];
                        top = [
                            (&top[0] * &g[0][0] + &top[1] * &g[1][0]) % &modulus,
                            (&top[0] * &g[0][1] + &top[1] * &g[1][1]) % &modulus,
                        ];
                    }
                    let residue = top[1].to_u32().expect("reduced modulo k");
                    (w, residue, m.m12)
                })
                .collect()
        })
        .collect();

    let mut violations = Vec::new();
    let mut classes: Vec<BTreeSet<CycInt>> = vec![BTreeSet::new(); k as usize];
    let admissible: Vec<Option<Vec<CycInt>>> = (0..k).map(|r| admissible(order, r)).collect();
    let mut words_checked = 0u64;
    let mut stable_since_len = 0;
    let mut seen = BTreeSet::new();
    for (len, rows) in per_length.into_iter().enumerate() {
        let before = seen.len();
        for (word, residue, value) in rows {
            words_checked += 1;
            if let Some(set) = &admissible[residue as usize] {
                if !set.contains(&value) {
                    violations.push(ResidueViolation {
                        word: word.clone(),
                        residue,
                        value: value.clone(),
                    });
                }
            }
            seen.insert(value.clone());
            classes[residue as usize].insert(value);
        }
        if seen.len() > before {
            stable_since_len = len;
        }
    }
    let total: usize = classes.iter().map(BTreeSet::len).sum();
    let case_of = |r: usize| if k == 4 && r == 3 { 1 } else { r };
    let mut cases: BTreeMap<usize, BTreeSet<&CycInt>> = BTreeMap::new();
    for (r, values) in classes.iter().enumerate() {
        cases.entry(case_of(r)).or_default().extend(values);
    }
    let cases_disjoint = cases.values().map(BTreeSet::len).sum::<usize>() == seen.len();
    Ok(ResidueReport {
        k,
        max_len,
        words_checked,
        violations,
        distinct_values: seen.len(),
        classes_disjoint: total == seen.len(),
        cases_disjoint,
        stable_since_len,
        classes: classes
            .into_iter()
            .enumerate()
            .map(|(r, values)| ResidueClass {
                residue: r as u32,
                values: values.into_iter().collect(),
            })
            .collect(),
    })
}
