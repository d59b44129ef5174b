//! 2x2 matrices over `Z[q, q^-1]` and the monoid morphisms `M_q` and `mu_q`.
//!
//! `M_q` sends `a` to `L_q = [[q, 0], [q, 1]]` and `b` to
//! `R_q = [[q, 1], [0, 1]]`. `mu_q` sends `a` to `R_q L_q` and `b` to
//! `R_q R_q L_q L_q`; equivalently `mu_q(w) = M_q(sigma(w))` with
//! `sigma(a) = ba`, `sigma(b) = bbaa`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycMatrix, Order};
use crate::error::{Error, Result};
use crate::identities::Morphism;
use crate::laurent::LaurentPoly;
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QMatrix {
    pub m11: LaurentPoly,
    pub m12: LaurentPoly,
    pub m21: LaurentPoly,
    pub m22: LaurentPoly,
}

fn c(n: i64) -> LaurentPoly {
    LaurentPoly::constant(n)
}

impl QMatrix {
    pub fn new(m11: LaurentPoly, m12: LaurentPoly, m21: LaurentPoly, m22: LaurentPoly) -> Self {
        QMatrix { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::new(c(1), c(0), c(0), c(1))
    }

    pub fn zero() -> Self {
        Self::new(c(0), c(0), c(0), c(0))
    }

    pub fn l_q() -> Self {
        Self::new(LaurentPoly::q(), c(0), LaurentPoly::q(), c(1))
    }

    pub fn r_q() -> Self {
        Self::new(LaurentPoly::q(), c(1), c(0), c(1))
    }

    pub fn q_q() -> Self {
        Self::new(LaurentPoly::q(), c(0), c(0), c(1))
    }

    /// Inverse of `Q_q`; the only inverse this module provides.
    pub fn q_q_inv() -> Self {
        Self::new(LaurentPoly::q_inv(), c(0), c(0), c(1))
    }

    /// `S = [[0, -1], [1, 0]]`.
    pub fn s() -> Self {
        Self::new(c(0), c(-1), c(1), c(0))
    }

    /// `mu_q(a) = R_q L_q`.
    pub fn mu_a() -> Self {
        &Self::r_q() * &Self::l_q()
    }

    /// `mu_q(b) = R_q R_q L_q L_q`.
    pub fn mu_b() -> Self {
        &(&(&Self::r_q() * &Self::r_q()) * &Self::l_q()) * &Self::l_q()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11.clone(), self.m21.clone(), self.m12.clone(), self.m22.clone())
    }

    pub fn det(&self) -> LaurentPoly {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.m11 + &self.m22
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        Self::new(p * &self.m11, p * &self.m12, p * &self.m21, p * &self.m22)
    }

    pub fn is_zero(&self) -> bool {
        self.m11.is_zero() && self.m12.is_zero() && self.m21.is_zero() && self.m22.is_zero()
    }

    pub fn eval_cyclotomic(&self, order: Order) -> CycMatrix {
        CycMatrix {
            m11: self.m11.eval_cyclotomic(order),
            m12: self.m12.eval_cyclotomic(order),
            m21: self.m21.eval_cyclotomic(order),
            m22: self.m22.eval_cyclotomic(order),
        }
    }

    /// Entries at `q = 1`, row-major.
    pub fn eval_at_one(&self) -> [[BigInt; 2]; 2] {
        [
            [self.m11.eval_at_one(), self.m12.eval_at_one()],
            [self.m21.eval_at_one(), self.m22.eval_at_one()],
        ]
    }
}

impl Mul<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, b: &QMatrix) -> QMatrix {
        let a = self;
        QMatrix::new(
            &a.m11 * &b.m11 + &a.m12 * &b.m21,
            &a.m11 * &b.m12 + &a.m12 * &b.m22,
            &a.m21 * &b.m11 + &a.m22 * &b.m21,
            &a.m21 * &b.m12 + &a.m22 * &b.m22,
        )
    }
}

impl Add<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn add(self, b: &QMatrix) -> QMatrix {
        QMatrix::new(
            &self.m11 + &b.m11,
            &self.m12 + &b.m12,
            &self.m21 + &b.m21,
            &self.m22 + &b.m22,
        )
    }
}

impl Sub<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn sub(self, b: &QMatrix) -> QMatrix {
        QMatrix::new(
            &self.m11 - &b.m11,
            &self.m12 - &b.m12,
            &self.m21 - &b.m21,
            &self.m22 - &b.m22,
        )
    }
}

fn binary_only(w: &Word) -> Result<()> {
    if w.alphabet() == Alphabet::Binary {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            word: w.to_string(),
            expected: Alphabet::Binary.name(),
        })
    }
}

/// `M_q(w)`, the product of `L_q` / `R_q` over the letters of `w`.
pub fn m_q(w: &Word) -> Result<QMatrix> {
    binary_only(w)?;
    let (l, r) = (QMatrix::l_q(), QMatrix::r_q());
    Ok(w.letters().iter().fold(QMatrix::identity(), |acc, &x| {
        &acc * if x == Letter::A { &l } else { &r }
    }))
}

/// `mu_q(w)` as a product of the letter matrices `mu_q(a)`, `mu_q(b)`.
/// Debug builds cross-check it against `M_q(sigma(w))`.
pub fn mu_q(w: &Word) -> Result<QMatrix> {
    binary_only(w)?;
    let (a, b) = (QMatrix::mu_a(), QMatrix::mu_b());
    let direct = w.letters().iter().fold(QMatrix::identity(), |acc, &x| {
        &acc * if x == Letter::A { &a } else { &b }
    });
    debug_assert_eq!(Some(&direct), mu_q_via_sigma(w).ok().as_ref(), "mu_q({w:?})");
    Ok(direct)
}

/// `mu_q(w)` computed as `M_q(sigma(w))`.
pub fn mu_q_via_sigma(w: &Word) -> Result<QMatrix> {
    m_q(&Morphism::Sigma.apply(w)?)
}

/// The characteristic polynomial `x^2 + linear x + constant` of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub leading: LaurentPoly,
    pub linear: LaurentPoly,
    pub constant: LaurentPoly,
}

impl CharPoly {
    pub fn of(m: &QMatrix) -> Self {
        CharPoly {
            leading: LaurentPoly::one(),
            linear: -m.trace(),
            constant: m.det(),
        }
    }

    /// `m^2 + linear m + constant I`; zero by Cayley-Hamilton.
    pub fn evaluate_at(&self, m: &QMatrix) -> QMatrix {
        let sq = m * m;
        let lin = m.scale(&self.linear);
        let cst = QMatrix::identity().scale(&self.constant);
        &(&sq.scale(&self.leading) + &lin) + &cst
    }
}

/// `q^-1 mu_q(a)`.
pub fn scaled_a() -> QMatrix {
    QMatrix::mu_a().scale(&LaurentPoly::q_inv())
}

/// Characteristic polynomial of `q^-1 mu_q(a)`, from its trace and determinant.
pub fn char_poly_scaled_a() -> CharPoly {
    CharPoly::of(&scaled_a())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn w(s: &str) -> Word {
        Word::binary(s).unwrap()
    }

    #[test]
    fn letter_matrices() {
        let a = &QMatrix::r_q() * &QMatrix::l_q();
        assert_eq!(a, QMatrix::new(p(1, &[1, 1]), c(1), LaurentPoly::q(), c(1)));
        let b = QMatrix::mu_b();
        assert_eq!(b.m11, p(1, &[1, 2, 1, 1]));
        assert_eq!(b.m12, p(0, &[1, 1]));
        assert_eq!(b.m21, p(1, &[1, 1]));
        assert_eq!(b.m22, c(1));
        let m = QMatrix::new(p(-1, &[2, 3]), c(7), c(0), p(2, &[1]));
        assert_eq!(&QMatrix::identity() * &m, m);
    }

    #[test]
    fn m_q_examples() {
        assert_eq!(m_q(&Word::empty()).unwrap(), QMatrix::identity());
        assert_eq!(m_q(&w("bab")).unwrap().m12, p(0, &[1, 1, 1]));
        assert_eq!(m_q(&w("bbaaaaabb")).unwrap().m12, p(0, &[1, 2, 3, 4, 4, 4, 3, 2, 1]));
        let ext: Word = "abc".parse().unwrap();
        assert!(m_q(&ext).is_err());
        assert!(mu_q(&ext).is_err());
    }

    #[test]
    fn mu_q_examples() {
        let m = mu_q(&w("aabab")).unwrap();
        assert_eq!(m.m12, p(0, &[1, 4, 10, 18, 27, 33, 33, 29, 21, 12, 5, 1]));
        let at_one = m.eval_at_one();
        let expect = [[463, 194], [284, 119]].map(|r| r.map(BigInt::from));
        assert_eq!(at_one, expect);
        let x = mu_q(&w("aaabb")).unwrap().m12;
        assert_eq!(x, p(0, &[1, 4, 10, 19, 27, 33, 34, 29, 21, 12, 5, 1]));
        assert_eq!(x, mu_q(&w("abaab")).unwrap().m12);
        assert_eq!(mu_q(&w("abb")).unwrap().m12.eval_at_one(), BigInt::from(29));
        assert_eq!(mu_q(&w("aab")).unwrap().m12.eval_at_one(), BigInt::from(13));
    }

    #[test]
    fn both_mu_routes_agree() {
        for len in 0..=7 {
            for x in Word::all_binary(len) {
                assert_eq!(mu_q(&x).unwrap(), mu_q_via_sigma(&x).unwrap());
            }
        }
    }

    #[test]
    fn characteristic_polynomial() {
        let a = scaled_a();
        assert_eq!(a.trace(), p(-1, &[1, 1, 1]));
        assert_eq!(a.det(), LaurentPoly::one());
        let cp = char_poly_scaled_a();
        assert_eq!(cp.linear, -p(-1, &[1, 1, 1]));
        assert_eq!(cp.constant, LaurentPoly::one());
        assert!(cp.evaluate_at(&a).is_zero());
    }

    #[test]
    fn key_matrix_identity() {
        // M_q(abba) = M_q(baab) + (q^3 + 1) S Q_q
        let lhs = m_q(&w("abba")).unwrap();
        let sq = &QMatrix::s() * &QMatrix::q_q();
        let rhs = &m_q(&w("baab")).unwrap() + &sq.scale(&p(0, &[1, 0, 0, 1]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_inverse() {
        assert_eq!(&QMatrix::q_q() * &QMatrix::q_q_inv(), QMatrix::identity());
    }

    #[test]
    fn mu_q12_has_nonnegative_coefficients() {
        for x in Word::all_binary_up_to(10) {
            let m12 = mu_q(&x).unwrap().m12;
            assert!(m12.has_nonnegative_coeffs(), "{x:?}");
            assert_eq!(m12.is_zero(), x.is_empty());
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::ANY, 0..=max).prop_map(|bits| {
            Word::from_letters(
                bits.into_iter()
                    .map(|b| if b { Letter::B } else { Letter::A })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn homomorphisms(u in arb_word(8), v in arb_word(8)) {
            let uv = u.concat(&v);
            prop_assert_eq!(m_q(&uv).unwrap(), &m_q(&u).unwrap() * &m_q(&v).unwrap());
            prop_assert_eq!(mu_q(&uv).unwrap(), &mu_q(&u).unwrap() * &mu_q(&v).unwrap());
        }

        #[test]
        fn determinants(x in arb_word(10)) {
            let n = x.len() as i64;
            prop_assert_eq!(m_q(&x).unwrap().det(), LaurentPoly::monomial(1.into(), n));
            let e = 2 * x.count_a() as i64 + 4 * x.count_b() as i64;
            prop_assert_eq!(mu_q(&x).unwrap().det(), LaurentPoly::monomial(1.into(), e));
        }

        #[test]
        fn conjugation_by_q(x in arb_word(8)) {
            let lhs = &(&QMatrix::q_q() * &m_q(&x).unwrap()) * &QMatrix::q_q_inv();
            prop_assert_eq!(lhs, m_q(&x.bar()).unwrap().transpose());
        }

        #[test]
        fn a_prefix_and_suffix(x in arb_word(8), k in 0usize..4, m in 0usize..4) {
            let padded = Word::power(Letter::A, k).concat(&x).concat(&Word::power(Letter::A, m));
            prop_assert_eq!(m_q(&padded).unwrap().m12, m_q(&x).unwrap().m12.shift(k as i64));
        }

        #[test]
        fn json_round_trip(x in arb_word(6)) {
            let m = mu_q(&x).unwrap();
            let s = serde_json::to_string(&m).unwrap();
            prop_assert_eq!(serde_json::from_str::<QMatrix>(&s).unwrap(), m);
        }
    }
}
