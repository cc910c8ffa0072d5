//! Truncated formal power series with exact integer coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `a_0 .. a_N` and represents the
//! series modulo `x^{N+1}`. Binary operations on series of different orders
//! work at the smaller order. Nothing here divides: `1/(1-x)^j` is built from
//! binomials and functional equations are checked with denominators cleared.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{
    binomial, forest_catalan, identity_side, Count, IdentityError, IdentityId, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series of a composition must have zero constant term, got {0}")]
    NonzeroConstant(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from leading coefficients; missing
    /// ones are zero and extra ones are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = BigInt>, order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new([], order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * x^power`, which is zero when `power > order`.
    pub fn monomial(c: BigInt, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[x^i]`, zero beyond the stored order.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().cloned(), order)
    }

    /// Multiplies by `x^j`.
    pub fn shift(&self, j: usize) -> Self {
        let order = self.order();
        let shifted = std::iter::repeat_n(BigInt::zero(), j).chain(self.coeffs.iter().cloned());
        Self::new(shifted, order)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(x))` by Horner's rule over `self`'s coefficients.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(inner.coeffs[0].clone()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for a in self.coeffs.iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new((0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]), order)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new((0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]), order)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

fn count_to_int(c: Count) -> BigInt {
    c.to_bigint()
}

/// `1/(1-x)^j`: coefficient of `x^i` is `binom(i+j-1, j-1)`.
///
/// Panics if `j == 0`.
pub fn geometric_inverse_pow(j: u64, order: usize) -> TruncatedSeries {
    assert!(j >= 1, "geometric_inverse_pow needs j >= 1");
    TruncatedSeries::new(
        (0..=order as u64).map(|i| count_to_int(binomial(i + j - 1, j as i64 - 1))),
        order,
    )
}

/// The series `C_k(x)` with `C_k = 1 + x C_k^k`, by `order + 1` rounds of
/// fixed-point iteration from `1`; round `r` fixes coefficient `r`.
///
/// Panics if `k < 2`.
pub fn solve_k_catalan_series(k: u64, order: usize) -> TruncatedSeries {
    assert!(k >= 2, "k-Catalan series needs k >= 2");
    let one = TruncatedSeries::one(order);
    let mut s = one.clone();
    for _ in 0..=order {
        s = &one + &s.pow(k).shift(1);
    }
    s
}

/// `F(x) = 1/(1-x) * C_k(x^{k-1} / (1-x)^k)`.
pub fn build_f(k: u64, order: usize) -> TruncatedSeries {
    let ck = solve_k_catalan_series(k, order);
    let inner = geometric_inverse_pow(k, order).shift(k as usize - 1);
    let composed = ck
        .compose(&inner)
        .expect("x^{k-1}/(1-x)^k has no constant term");
    let f = &geometric_inverse_pow(1, order) * &composed;
    debug_assert!(f_equation_holds(k, &f));
    f
}

/// `G(x) = 1/(1-x) * C_3(x^2 / (1-x)^3)`, the `k = 3` case of [`build_f`].
pub fn build_g(order: usize) -> TruncatedSeries {
    build_f(3, order)
}

/// `(1 - x) G = 1 + x^2 G^3`.
pub fn g_equation_holds(g: &TruncatedSeries) -> bool {
    let order = g.order();
    let one = TruncatedSeries::one(order);
    let lhs = &g.clone() - &g.shift(1);
    let rhs = &one + &g.pow(3).shift(2);
    lhs == rhs
}

/// `F (1 - x^{k-1} F^{k-1}) = 1 + x F`.
pub fn f_equation_holds(k: u64, f: &TruncatedSeries) -> bool {
    let order = f.order();
    let one = TruncatedSeries::one(order);
    let lhs = f * &(&one - &f.pow(k - 1).shift(k as usize - 1));
    let rhs = &one + &f.shift(1);
    lhs == rhs
}

/// `[x^p] C_k(x)^m` for `p <= order`.
pub fn lagrange_power_coefficients(k: u64, m: u64, order: usize) -> Vec<BigInt> {
    solve_k_catalan_series(k, order).pow(m).coeffs
}

/// `sum_p m/(3p+m) binom(3p+m, p) x^{2p} / (1-x)^{3p+m}`, which expands
/// `G(x)^m` term by term in powers of `C_3`.
pub fn g_power_expansion(m: u64, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for p in 0..=(order / 2) as u64 {
        let c = count_to_int(forest_catalan(p, 3, m));
        let term = geometric_inverse_pow(3 * p + m, order)
            .shift(2 * p as usize)
            .scale(&c);
        acc = &acc + &term;
    }
    acc
}

/// A coefficient where `[x^n] F_5^m` and the two sides of the 5-ary forest
/// identity disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq31Mismatch {
    pub n: u64,
    pub m: u64,
    pub series: BigInt,
    pub lhs: Count,
    pub rhs: Count,
}

/// Three-way check of `[x^n] F(x)^m` (with `k = 5`) against both closed
/// forms, for `n <= n_max`.
pub fn verify_eq31_series(n_max: u64, m: u64) -> Result<Vec<Eq31Mismatch>, IdentityError> {
    let fm = build_f(5, n_max as usize).pow(m);
    let mut mismatches = Vec::new();
    for n in 0..=n_max {
        let lhs = identity_side(IdentityId::Eq31, Side::Lhs, n, m)?;
        let rhs = identity_side(IdentityId::Eq31, Side::Rhs, n, m)?;
        let series = fm.coeff(n as usize);
        if series != lhs.to_bigint() || lhs != rhs {
            mismatches.push(Eq31Mismatch {
                n,
                m,
                series,
                lhs,
                rhs,
            });
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::k_catalan;

    fn s(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_i64(c, order)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&s(&[1, 1], 4) * &s(&[1, -1], 4), s(&[1, 0, -1], 4));
        assert_eq!(s(&[3, 1, 4], 4).pow(0), TruncatedSeries::one(4));
        assert_eq!(s(&[1, 1], 5).pow(3), s(&[1, 3, 3, 1], 5));
        assert_eq!(&s(&[1, 2], 3) + &s(&[0, 0, 5], 1), s(&[1, 2], 1));
        assert_eq!(s(&[1, 2, 3], 3).shift(2), s(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_inverse_pow(1, 3), s(&[1, 1, 1, 1], 3));
        assert_eq!(geometric_inverse_pow(3, 2), s(&[1, 3, 6], 2));
        for j in 1..6 {
            assert_eq!(
                geometric_inverse_pow(j, 12),
                geometric_inverse_pow(1, 12).pow(j)
            );
            // (1 - x)^j * (1 - x)^{-j} = 1
            let one_minus_x = s(&[1, -1], 12);
            assert_eq!(
                &one_minus_x.pow(j) * &geometric_inverse_pow(j, 12),
                TruncatedSeries::one(12)
            );
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            s(&[1, 1], 4).compose(&s(&[0, 0, 1], 4)).unwrap(),
            s(&[1, 0, 1], 4)
        );
        assert_eq!(
            s(&[7, 2, 9], 4).compose(&TruncatedSeries::zero(4)).unwrap(),
            s(&[7], 4)
        );
        let c3 = solve_k_catalan_series(3, 3);
        let inner = geometric_inverse_pow(3, 3).shift(2);
        assert_eq!(c3.compose(&inner).unwrap(), s(&[1, 0, 1, 3], 3));
        assert_eq!(
            s(&[1, 1], 3).compose(&s(&[1, 1], 3)),
            Err(SeriesError::NonzeroConstant(BigInt::one()))
        );
    }

    #[test]
    fn compose_is_associative() {
        let a = s(&[1, -2, 3, 0, 5, 1, -1], 10);
        let b = s(&[0, 1, 1, -3, 2], 10);
        let c = s(&[0, 2, 0, 1, 0, 0, 7], 10);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn k_catalan_series_examples() {
        assert_eq!(
            solve_k_catalan_series(2, 5).coeffs(),
            ints(&[1, 1, 2, 5, 14, 42])
        );
        assert_eq!(
            solve_k_catalan_series(3, 4).coeffs(),
            ints(&[1, 1, 3, 12, 55])
        );
        for k in [2, 3, 5, 7] {
            assert_eq!(solve_k_catalan_series(k, 0).coeffs(), ints(&[1]));
        }
    }

    #[test]
    fn k_catalan_series_matches_closed_form() {
        for k in [2, 3, 5] {
            let series = solve_k_catalan_series(k, 64);
            for i in 0..=64 {
                assert_eq!(
                    series.coeff(i),
                    k_catalan(i as u64, k).to_bigint(),
                    "k={k} i={i}"
                );
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(build_g(3).coeffs(), ints(&[1, 1, 2, 5]));
        assert_eq!(build_g(0).coeffs(), ints(&[1]));
        let g = build_g(40);
        assert_eq!(g, solve_k_catalan_series(2, 40));
        assert!(g_equation_holds(&g));
    }

    #[test]
    fn f_examples() {
        assert_eq!(build_f(3, 20), build_g(20));
        // computed independently from the 5-ary forest sum at m = 1
        assert_eq!(
            build_f(5, 8).coeffs(),
            ints(&[1, 1, 1, 1, 2, 7, 22, 57, 132])
        );
        for k in [2, 3, 5] {
            let f = build_f(k, 32);
            assert_eq!(f.coeff(0), BigInt::one());
            assert!(f_equation_holds(k, &f), "k={k}");
        }
        // a perturbed series fails the check
        let mut bad = build_f(5, 10);
        bad.coeffs[7] += 1;
        assert!(!f_equation_holds(5, &bad));
    }

    #[test]
    fn lagrange_examples() {
        let catalan: Vec<_> = (0..=10).map(|n| k_catalan(n, 2).to_bigint()).collect();
        assert_eq!(lagrange_power_coefficients(2, 1, 10), catalan);
        assert_eq!(lagrange_power_coefficients(3, 2, 4)[1], BigInt::from(2));
        let coeffs = lagrange_power_coefficients(5, 3, 20);
        for (p, c) in coeffs.iter().enumerate() {
            assert_eq!(c, &forest_catalan(p as u64, 5, 3).to_bigint());
        }
    }

    #[test]
    fn g_power_expansion_matches_power_of_g() {
        for m in 1..=4 {
            assert_eq!(g_power_expansion(m, 24), build_g(24).pow(m), "m={m}");
        }
    }

    #[test]
    fn eq31_three_way_examples() {
        assert!(verify_eq31_series(12, 1).unwrap().is_empty());
        let f = build_f(5, 4);
        assert_eq!(f.coeff(4), BigInt::from(2));
        for m in 1..=6 {
            let fm = build_f(5, 0).pow(m);
            assert_eq!(fm.coeff(0), BigInt::one());
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            s(&[1, 0, -2, 3], 3).to_string(),
            "1 + -2x^2 + 3x^3 + O(x^4)"
        );
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
    }
}
