//! Exact arithmetic in `Q(ζ)` for `ζ` a primitive `2^m`-th root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// An element `Σ c_i ζ^i` of `Q(ζ_{2^m})`, `0 ≤ i < 2^{m−1}`, reduced
/// modulo `ζ^{2^{m−1}} = −1`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNumber {
    m: u32,
    coords: Vec<Rat>,
}

/// Length of the power basis, `[Q(ζ_{2^m}) : Q]`.
pub fn basis_len(m: u32) -> usize {
    assert!(m >= 1, "cyclotomic exponent must be ≥ 1");
    1usize << (m - 1)
}

impl CycNumber {
    pub fn zero(m: u32) -> Self {
        CycNumber {
            m,
            coords: vec![Rat::zero(); basis_len(m)],
        }
    }

    pub fn from_rat(m: u32, r: Rat) -> Self {
        let mut x = CycNumber::zero(m);
        x.coords[0] = r;
        x
    }

    pub fn one(m: u32) -> Self {
        CycNumber::from_rat(m, Rat::one())
    }

    pub fn from_coords(m: u32, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), basis_len(m), "wrong number of coordinates");
        CycNumber { m, coords }
    }

    /// `ζ^t`; exponents are read modulo `2^m`.
    pub fn zeta_pow(m: u32, t: u64) -> Self {
        let n = basis_len(m) as u64;
        let t = t % (2 * n);
        let mut x = CycNumber::zero(m);
        if t < n {
            x.coords[t as usize] = Rat::one();
        } else {
            x.coords[(t - n) as usize] = -Rat::one();
        }
        x
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rat::is_zero)
    }

    /// Every coordinate has odd denominator, i.e. the element lies in `Z_(2)[ζ]`.
    pub fn is_two_integral(&self) -> bool {
        self.coords.iter().all(Rat::is_two_integral)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNumber {
            m: self.m,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Sum of the power-basis coordinates.
    pub fn coordinate_sum(&self) -> Rat {
        self.coords.iter().cloned().sum()
    }

    /// `N_{K/Q}(x) = Res(x^{2^{m−1}} + 1, x(T))`.
    pub fn norm(&self) -> Rat {
        let n = basis_len(self.m);
        let mut modulus = vec![Rat::zero(); n + 1];
        modulus[0] = Rat::one();
        modulus[n] = Rat::one();
        resultant(modulus, self.coords.clone())
    }

    /// `v₂(x) = v₂(N(x)) / [K : Q]`.
    pub fn v2(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let v = self.norm().v2().expect("nonzero element has nonzero norm");
        Ok(Rat::new(v, basis_len(self.m) as u64))
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.m, other.m, "mixing cyclotomic fields");
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
}

fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of `a` modulo `b`, `b ≠ 0`.
fn poly_rem(mut a: Vec<Rat>, b: &[Rat]) -> Vec<Rat> {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        let factor = &a[da] / &lead;
        for (i, c) in b[..=db].iter().enumerate() {
            let delta = &factor * c;
            a[da - db + i] -= delta;
        }
    }
    trim(&mut a);
    a
}

/// `Res(a, b)` over `Q` by the Euclidean remainder sequence.
fn resultant(a: Vec<Rat>, b: Vec<Rat>) -> Rat {
    let (Some(da), Some(db)) = (degree(&a), degree(&b)) else {
        return Rat::zero();
    };
    if db == 0 {
        return pow(&b[0], da);
    }
    if da == 0 {
        return pow(&a[0], db);
    }
    if da < db {
        let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
        return sign * resultant(b, a);
    }
    let r = poly_rem(a, &b);
    let Some(dr) = degree(&r) else {
        return Rat::zero();
    };
    // Res(a, b) = (−1)^{da·db} lc(b)^{da−dr} Res(b, r)
    let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
    sign * pow(&b[db], da - dr) * resultant(b, r)
}

fn pow(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.check_same_field(rhs);
        CycNumber {
            m: self.m,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.check_same_field(rhs);
        CycNumber {
            m: self.m,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.check_same_field(rhs);
        let n = self.coords.len();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a * b;
                if i + j < n {
                    out[i + j] += prod;
                } else {
                    out[i + j - n] -= prod;
                }
            }
        }
        CycNumber {
            m: self.m,
            coords: out,
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            m: self.m,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber(m={}, {})", self.m, self)
    }
}

/// Serialized as the coordinate vector of string-encoded rationals.
impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}
