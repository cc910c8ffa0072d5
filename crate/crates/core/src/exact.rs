//! Arbitrary-precision kernel for binomials and the k-Catalan family.
//!
//! Every value lives in [`Count`], a nonnegative big integer. Divisions that
//! appear in Catalan-type formulas are always performed as quotient plus
//! remainder, and a nonzero remainder is treated as an arithmetic bug.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Nonnegative arbitrary-precision integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.0.clone())
    }

    /// Converts to `u64` when the value fits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    /// Exact division by a small positive integer. Panics on a nonzero
    /// remainder: every caller divides a quantity that is known to be a
    /// multiple of `divisor`.
    fn exact_div(self, divisor: u64, context: &str) -> Count {
        assert!(divisor != 0, "{context}: division by zero");
        let (q, r) = self.0.div_rem(&BigUint::from(divisor));
        assert!(
            r.is_zero(),
            "{context}: inexact division by {divisor} (remainder {r})"
        );
        Count(q)
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl TryFrom<BigInt> for Count {
    type Error = BigInt;

    fn try_from(v: BigInt) -> Result<Self, BigInt> {
        match v.to_biguint() {
            Some(u) => Ok(Count(u)),
            None => Err(v),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl Add for Count {
    type Output = Count;
    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Count> for Count {
    type Output = Count;
    fn add(self, rhs: &'a Count) -> Count {
        Count(self.0 + &rhs.0)
    }
}

impl Mul for Count {
    type Output = Count;
    fn mul(self, rhs: Count) -> Count {
        Count(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Count> for &'a Count {
    type Output = Count;
    fn mul(self, rhs: &'a Count) -> Count {
        Count(&self.0 * &rhs.0)
    }
}

impl Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::zero(), Add::add)
    }
}

/// `n` choose `k`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Count {
    if k < 0 || k as u64 > n {
        return Count::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc = binom(n - k + i, i) after step i, so every division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        let (q, r) = acc.div_rem(&BigUint::from(i));
        debug_assert!(r.is_zero());
        acc = q;
    }
    Count(acc)
}

/// Binomial with a signed upper argument, as it appears inside summation
/// identities; a negative `n` contributes zero.
fn binomial_i(n: i64, k: i64) -> Count {
    if n < 0 {
        Count::zero()
    } else {
        binomial(n as u64, k)
    }
}

/// `C_{n,k} = binom(kn+1, n) / (kn+1)`: complete k-ary trees with `n`
/// internal vertices.
///
/// Panics if `k < 2`.
pub fn k_catalan(n: u64, k: u64) -> Count {
    assert!(k >= 2, "k-Catalan numbers need k >= 2, got {k}");
    let top = k * n + 1;
    binomial(top, n as i64).exact_div(top, "k_catalan")
}

/// `m/(kp+m) * binom(kp+m, p)`: plane forests of `m` complete k-ary trees
/// with `p` internal vertices in total.
///
/// Panics if `k < 2` or `m == 0`.
pub fn forest_catalan(p: u64, k: u64, m: u64) -> Count {
    assert!(k >= 2, "forest_catalan needs k >= 2, got {k}");
    assert!(m >= 1, "forest_catalan needs m >= 1");
    let top = k * p + m;
    (binomial(top, p as i64) * Count::from(m)).exact_div(top, "forest_catalan")
}

/// Number of colored ternary trees with `p` internal vertices and color sum
/// `n - 2p`; zero when `2p > n`.
pub fn colored_ternary_count(n: u64, p: u64) -> Count {
    if 2 * p > n {
        return Count::zero();
    }
    k_catalan(p, 3) * binomial(n + p, (n - 2 * p) as i64)
}

/// Number of `m`-component plane forests of colored ternary trees with `p`
/// internal vertices and color sum `n - 2p`.
pub fn colored_ternary_forest_count(n: u64, p: u64, m: u64) -> Count {
    if 2 * p > n {
        return Count::zero();
    }
    forest_catalan(p, 3, m) * binomial(m + n + p - 1, (n - 2 * p) as i64)
}

/// The four summation identities relating ternary (or 5-ary) forests to
/// binary ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    /// Ternary Catalan sum equals the ordinary Catalan number (`m = 1`).
    Eq1,
    /// Forest version of `Eq1` for any `m >= 1`.
    Eq2,
    /// 5-ary forest sum equals an alternating binomial sum.
    Eq31,
    /// `Eq31` at `m = 1`, in simplified form.
    Eq32,
}

impl IdentityId {
    pub const ALL: [IdentityId; 4] = [
        IdentityId::Eq1,
        IdentityId::Eq2,
        IdentityId::Eq31,
        IdentityId::Eq32,
    ];

    /// Whether the identity is stated only for a single tree.
    pub fn fixed_m(self) -> bool {
        matches!(self, IdentityId::Eq1 | IdentityId::Eq32)
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq1 => "eq1",
            IdentityId::Eq2 => "eq2",
            IdentityId::Eq31 => "eq3.1",
            IdentityId::Eq32 => "eq3.2",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("{id} is stated for m = 1 only, got m = {m}")]
    FixedM { id: IdentityId, m: u64 },
    #[error("m must be at least 1")]
    ZeroM,
    #[error("{id} {side:?} at n = {n}, m = {m}: alternating sum evaluated to {value} (< 0)")]
    NegativeAlternatingSum {
        id: IdentityId,
        side: Side,
        n: u64,
        m: u64,
        value: BigInt,
    },
}

/// Exact value of one side of a summation identity.
///
/// `m` must be 1 for [`IdentityId::Eq1`] and [`IdentityId::Eq32`].
pub fn identity_side(id: IdentityId, side: Side, n: u64, m: u64) -> Result<Count, IdentityError> {
    if m == 0 {
        return Err(IdentityError::ZeroM);
    }
    if id.fixed_m() && m != 1 {
        return Err(IdentityError::FixedM { id, m });
    }
    let (ni, mi) = (n as i64, m as i64);
    let value = match (id, side) {
        (IdentityId::Eq1, Side::Lhs) => (0..=n / 2)
            .map(|p| k_catalan(p, 3) * binomial(n + p, 3 * p as i64))
            .sum(),
        (IdentityId::Eq1, Side::Rhs) => binomial(2 * n, ni).exact_div(n + 1, "eq1 rhs"),
        (IdentityId::Eq2, Side::Lhs) => (0..=n / 2)
            .map(|p| forest_catalan(p, 3, m) * binomial(n + p + m - 1, ni - 2 * p as i64))
            .sum(),
        (IdentityId::Eq2, Side::Rhs) => {
            (binomial(2 * n + m, ni) * Count::from(m)).exact_div(2 * n + m, "eq2 rhs")
        }
        (IdentityId::Eq31, Side::Lhs) => (0..=n / 4)
            .map(|p| forest_catalan(p, 5, m) * binomial(n + p + m - 1, ni - 4 * p as i64))
            .sum(),
        (IdentityId::Eq31, Side::Rhs) => {
            let alt = alternating_sum(n, |p| {
                let p = p as i64;
                &binomial_i(mi + ni + p - 1, p) * &binomial_i(mi + 2 * ni - 2 * p - 1, ni - 2 * p)
            });
            let scaled = alt * BigInt::from(m);
            signed_exact_div(scaled, m + n, id, side, n, m)?
        }
        (IdentityId::Eq32, Side::Lhs) => (0..=n / 4)
            .map(|p| {
                binomial(5 * p, p as i64).exact_div(4 * p + 1, "eq3.2 lhs")
                    * binomial(n + p, 5 * p as i64)
            })
            .sum(),
        (IdentityId::Eq32, Side::Rhs) => {
            let alt = alternating_sum(n, |p| {
                let p = p as i64;
                &binomial_i(ni + p, ni) * &binomial_i(2 * ni - 2 * p, ni)
            });
            signed_exact_div(alt, n + 1, id, side, n, m)?
        }
    };
    Ok(value)
}

/// `sum_{p=0}^{floor(n/2)} (-1)^p term(p)` in signed arithmetic.
fn alternating_sum(n: u64, term: impl Fn(u64) -> Count) -> BigInt {
    (0..=n / 2).fold(BigInt::zero(), |acc, p| {
        let t = term(p).to_bigint();
        if p % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

fn signed_exact_div(
    value: BigInt,
    divisor: u64,
    id: IdentityId,
    side: Side,
    n: u64,
    m: u64,
) -> Result<Count, IdentityError> {
    let count = Count::try_from(value).map_err(|value| IdentityError::NegativeAlternatingSum {
        id,
        side,
        n,
        m,
        value,
    })?;
    Ok(count.exact_div(divisor, "alternating sum"))
}
