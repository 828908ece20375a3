//! The odd Dirichlet character of 2-power order modulo an odd prime.

use serde::Serialize;

use crate::arith::{is_prime, primitive_root, Rat};
use crate::error::{domain, Result};

use super::cyclotomic::CycNumber;

/// `χ` of order `2^m` modulo `p`, with `p − 1 = 2^m · l` and `l` odd.
///
/// `χ(g^t) = ζ^{t mod 2^m}` for the smallest primitive root `g`, so `χ` is
/// odd and surjective onto the `2^m`-th roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddChar {
    p: u64,
    m: u32,
    odd_part: u64,
    generator: u64,
    /// `exponents[n mod p] = t` with `χ(n) = ζ^t`; `None` at `0`.
    #[serde(skip)]
    exponents: Vec<Option<u64>>,
}

pub fn build_character(p: u64) -> Result<OddChar> {
    if p == 2 || !is_prime(p) {
        return Err(domain(format!("character needs an odd prime, got {p}")));
    }
    let m = (p - 1).trailing_zeros();
    let order = 1u64 << m;
    let g = primitive_root(p)?;
    let mut exponents = vec![None; p as usize];
    let mut x = 1u64;
    for t in 0..p - 1 {
        exponents[x as usize] = Some(t % order);
        x = x * g % p;
    }
    let chi = OddChar {
        p,
        m,
        odd_part: (p - 1) >> m,
        generator: g,
        exponents,
    };
    assert_eq!(chi.exponent(p - 1), Some(order / 2), "χ(−1) ≠ −1 mod {p}");
    Ok(chi)
}

impl OddChar {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        1 << self.m
    }

    pub fn odd_part(&self) -> u64 {
        self.odd_part
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `t` with `χ(n) = ζ^t`, or `None` when `p | n`.
    pub fn exponent(&self, n: u64) -> Option<u64> {
        self.exponents[(n % self.p) as usize]
    }

    pub fn value(&self, n: u64) -> CycNumber {
        match self.exponent(n) {
            Some(t) => CycNumber::zeta_pow(self.m, t),
            None => CycNumber::zero(self.m),
        }
    }
}

/// `L(0, χ) = −(1/p) Σ_{n=1}^{p−1} n χ(n)`.
pub fn l_value(chi: &OddChar) -> CycNumber {
    let len = super::cyclotomic::basis_len(chi.m);
    let mut acc = vec![0i64; len];
    for n in 1..chi.p {
        let t = chi.exponent(n).expect("unit mod p") as usize;
        if t < len {
            acc[t] += n as i64;
        } else {
            acc[t - len] -= n as i64;
        }
    }
    let coords = acc.into_iter().map(|c| Rat::new(-c, chi.p as i64)).collect();
    CycNumber::from_coords(chi.m, coords)
}
