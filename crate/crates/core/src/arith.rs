//! Exact rationals and the multiplicative functions behind every degree,
//! cusp and genus formula.
//!
//! Levels in scope are desk-sized (a few thousand at most), so factoring is
//! plain trial division.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::group::{CongruenceGroup, GroupKind};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Integer value, if this rational is integral and fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rat(self.0.recip())
    }

    /// 2-integral means the reduced denominator is odd.
    pub fn is_two_integral(&self) -> bool {
        self.0.denom().is_odd()
    }

    /// The 2-adic valuation `v2(numer) - v2(denom)`; `None` for zero.
    pub fn v2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(two_adic(self.0.numer()) as i64 - two_adic(self.0.denom()) as i64)
    }

    /// Image in `F_2` of a 2-integral rational `a/b` (b odd), i.e. `a mod 2`.
    pub fn mod2(&self) -> Option<u8> {
        if !self.is_two_integral() {
            return None;
        }
        Some(if self.0.numer().is_odd() { 1 } else { 0 })
    }
}

fn two_adic(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(format!("bad rational {s:?}: zero denominator"));
                }
                Ok(Rat(BigRational::new(parse(n)?, d)))
            }
            None => Ok(Rat::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rat {
            fn from(n: $t) -> Self {
                Rat::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                Rat($tr::$f(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $f(self, rhs: &'a Rat) -> Rat {
                Rat($tr::$f(&self.0, &rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $f(self, rhs: &'a Rat) -> Rat {
                Rat($tr::$f(self.0, &rhs.0))
            }
        }
        impl $atr for Rat {
            fn $af(&mut self, rhs: Rat) {
                $atr::$af(&mut self.0, rhs.0);
            }
        }
        impl<'a> $atr<&'a Rat> for Rat {
            fn $af(&mut self, rhs: &'a Rat) {
                $atr::$af(&mut self.0, &rhs.0);
            }
        }
    };
}
binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Self {
        assert!(n >= 1, "factorization of zero");
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                let mut e = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && Factorization::of(n).factors == [(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    Factorization::of(n).is_squarefree()
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "phi(0) is undefined");
    Factorization::of(n)
        .factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// `Σ_{d|n} d·φ(d)·φ(n/d)`: the degree of `M_1(n) → M_ell` as a stack map.
fn gamma1_degree_divisor_sum(n: u64) -> u64 {
    divisors(n)
        .into_iter()
        .map(|d| d * euler_phi(d) * euler_phi(n / d))
        .sum()
}

/// `n²·Π_{p|n}(1 − 1/p²)`, evaluated prime by prime as `p^{2e−2}(p²−1)`.
pub fn gamma1_degree_product(n: u64) -> u64 {
    Factorization::of(n)
        .factors()
        .iter()
        .map(|&(p, e)| p.pow(2 * e - 2) * (p * p - 1))
        .product()
}

/// Degree `d_n` of the forgetful map from `Γ₁(n)`-structures.
///
/// Both closed forms are evaluated and must agree.
pub fn gamma1_degree(n: u64) -> u64 {
    let d = gamma1_degree_divisor_sum(n);
    assert_eq!(d, gamma1_degree_product(n), "degree formulas disagree at n={n}");
    d
}

/// `Σ_{d|n} φ(d)·φ(n/d)`, twice the cusp count of `Γ₁(n)` for `n ≥ 5`.
pub fn cusp_divisor_sum(n: u64) -> u64 {
    divisors(n)
        .into_iter()
        .map(|d| euler_phi(d) * euler_phi(n / d))
        .sum()
}

/// `|SL₂(Z/n)| = n³·Π_{p|n}(1 − 1/p²)`.
pub fn sl2_order(n: u64) -> u64 {
    n * gamma1_degree_product(n)
}

/// `ψ(n) = n·Π_{p|n}(1 + 1/p)`, the index of `Γ₀(n)`; equals `d_n/φ(n)`.
pub fn dedekind_psi(n: u64) -> u64 {
    Factorization::of(n)
        .factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p + 1))
        .product()
}

/// Stack-map degree of the modular curve of `group` over `M_ell`.
///
/// `Γ(n)` is measured on one geometrically connected component.
pub fn group_degree(group: CongruenceGroup) -> Result<u64> {
    let n = group.level();
    if n == 0 {
        return Err(domain("level must be positive"));
    }
    match group.kind() {
        GroupKind::Gamma1 => Ok(gamma1_degree(n)),
        GroupKind::Gamma0 => {
            if !is_squarefree(n) {
                return Err(domain(format!("Γ₀({n}) needs a squarefree level")));
            }
            let d = gamma1_degree(n);
            let phi = euler_phi(n);
            assert_eq!(d % phi, 0, "φ({n}) does not divide d_{n}");
            Ok(d / phi)
        }
        GroupKind::GammaFull => {
            if n < 3 {
                return Err(domain(format!("Γ({n}) is not representable; need n ≥ 3")));
            }
            Ok(sl2_order(n))
        }
    }
}

/// `((−1|p), (−3|p))` with the ramified value 0 at `p = 2` resp. `p = 3`.
pub fn legendre_symbols(p: u64) -> Result<(i8, i8)> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    let minus_one = match p {
        2 => 0,
        _ if p % 4 == 1 => 1,
        _ => -1,
    };
    let minus_three = match p {
        3 => 0,
        _ if p % 3 == 1 => 1,
        _ => -1,
    };
    Ok((minus_one, minus_three))
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    let order_primes: Vec<u64> = Factorization::of(p - 1).primes().collect();
    (2..p)
        .find(|&g| order_primes.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| domain(format!("no primitive root mod {p}")))
}
