//! Cohomology of line bundles on weighted projective lines `P(a, b)` and
//! recovery of splitting types from dimensions of graded sections.
//!
//! `H⁰(P(a,b), O(m))` is spanned by the monomials `x^α y^β` of weight
//! `aα + bβ = m`; `H¹(P(a,b), O(m))` by the pairs of negative exponents of
//! weight `m`. Duality `h⁰(m) = h¹(−a−b−m)` is the bijection
//! `(α, β) ↦ (−1−α, −1−β)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Rat;
use crate::error::{Error, Result};

/// The weighted projective line with generator weights `a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedProjLine {
    a: u64,
    b: u64,
}

impl WeightedProjLine {
    pub fn new(a: u64, b: u64) -> Self {
        assert!(a > 0 && b > 0, "weights must be positive");
        WeightedProjLine {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn weights(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// Twist of the dualizing sheaf, `−(a + b)`.
    pub fn dualizing_twist(&self) -> i64 {
        -((self.a + self.b) as i64)
    }

    /// Degree of `O(1)`, namely `1/(ab)`.
    pub fn omega_degree(&self) -> Rat {
        Rat::new(1u64, self.a * self.b)
    }

    /// Degree over `P(4, 6)` of a model on which `ω` pulls back to `O(1)`:
    /// `deg O(1) / deg ω = 24/(ab)`.
    pub fn map_degree(&self) -> u64 {
        let ab = self.a * self.b;
        assert_eq!(24 % ab, 0, "P({}, {}) is not a cover of P(4, 6)", self.a, self.b);
        24 / ab
    }

    /// Number of solutions of `aα + bβ = m` in nonnegative integers.
    pub fn h0(&self, m: i64) -> u64 {
        if m < 0 {
            return 0;
        }
        let (a, b, m) = (self.a as i64, self.b as i64, m);
        (0..=m / b).filter(|beta| (m - b * beta) % a == 0).count() as u64
    }

    /// Number of solutions of `aλ + bμ = m` in negative integers.
    pub fn h1(&self, m: i64) -> u64 {
        let (a, b) = (self.a as i64, self.b as i64);
        if m > -(a + b) {
            return 0;
        }
        // λ, μ ≤ −1  ⇔  (−1−λ)a + (−1−μ)b = −a−b−m with both ≥ 0.
        let target = -m - a - b;
        (0..=target / b)
            .filter(|mu| (target - b * mu) % a == 0)
            .count() as u64
    }

    pub fn serre_dual_check(&self, m: i64) -> bool {
        self.h0(m) == self.h1(self.dualizing_twist() - m)
    }

    /// `[h⁰(0), …, h⁰(k)]`, the coefficients of `1/((1 − tᵃ)(1 − tᵇ))`.
    pub fn hilbert_sequence(&self, k: usize) -> Vec<u64> {
        let mut series = vec![0u64; k + 1];
        series[0] = 1;
        for w in [self.a as usize, self.b as usize] {
            for i in w..=k {
                series[i] += series[i - w];
            }
        }
        series
    }
}

/// A finite sum `⊕ⱼ O(−j)^{mult(j)}` with `j ≥ 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwistMultiset {
    mult: BTreeMap<u64, u64>,
}

impl TwistMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads `coeffs[j]` as the multiplicity of `O(−j)`.
    pub fn from_coeffs(coeffs: &[u64]) -> Self {
        let mut m = Self::new();
        for (j, &c) in coeffs.iter().enumerate() {
            m.insert(j as u64, c);
        }
        m
    }

    pub fn insert(&mut self, twist: u64, count: u64) {
        if count > 0 {
            *self.mult.entry(twist).or_default() += count;
        }
    }

    pub fn get(&self, twist: u64) -> u64 {
        self.mult.get(&twist).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.mult.iter().map(|(&j, &c)| (j, c))
    }

    pub fn max_twist(&self) -> Option<u64> {
        self.mult.keys().next_back().copied()
    }

    /// Dense coefficient vector of length `len`.
    pub fn to_coeffs(&self, len: usize) -> Vec<u64> {
        let mut out = vec![0; len];
        for (j, c) in self.iter() {
            if (j as usize) < len {
                out[j as usize] = c;
            }
        }
        out
    }

    /// Dimensions `[h⁰(E(m))]_{m=0..=k}` of the graded sections of this sum.
    pub fn sections(&self, line: &WeightedProjLine, k: usize) -> Vec<u64> {
        convolve(&self.to_coeffs(k + 1), &line.hilbert_sequence(k), k)
    }
}

/// Truncated product of two sequences, indices `0..=k`.
pub(crate) fn convolve(lhs: &[u64], rhs: &[u64], k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k + 1];
    for (i, &x) in lhs.iter().enumerate().take(k + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in rhs.iter().enumerate().take(k + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Greedy peel of `h` against a basis sequence with `basis[0] = 1`.
///
/// Returns the multiplicities, or the first index where the residual goes
/// negative.
pub(crate) fn deconvolve(h: &[i64], basis: &[u64]) -> Result<Vec<u64>> {
    assert_eq!(basis.first(), Some(&1), "basis must start with 1");
    let mut residual = h.to_vec();
    let mut out = vec![0u64; h.len()];
    for m in 0..residual.len() {
        let r = residual[m];
        if r < 0 {
            return Err(Error::NegativeResidual { index: m, value: r });
        }
        if r == 0 {
            continue;
        }
        out[m] = r as u64;
        for (slot, &c) in residual[m..].iter_mut().zip(basis) {
            *slot -= r * c as i64;
        }
    }
    Ok(out)
}

/// Recovers the unique `{l_j}` with `h[m] = Σⱼ l_j·h⁰(m − j)` and
/// `Σ l_j = rank`.
///
/// Twists are only determined up to `h.len() − 1`; callers should pass
/// enough of `h` to leave a margin of `a + b` past the largest twist.
pub fn splitting_from_sections(
    line: &WeightedProjLine,
    h: &[u64],
    rank: u64,
) -> Result<TwistMultiset> {
    if h.is_empty() {
        return Err(Error::RankMismatch { expected: rank, found: 0 });
    }
    let basis = line.hilbert_sequence(h.len() - 1);
    let h: Vec<i64> = h.iter().map(|&x| x as i64).collect();
    let coeffs = deconvolve(&h, &basis)?;
    let split = TwistMultiset::from_coeffs(&coeffs);
    if split.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: split.rank(),
        });
    }
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODELS: [(u64, u64); 5] = [(4, 6), (2, 4), (1, 3), (2, 2), (1, 2)];

    fn brute_h0(a: i64, b: i64, m: i64) -> u64 {
        let mut n = 0;
        for alpha in 0..=m.max(0) {
            for beta in 0..=m.max(0) {
                if a * alpha + b * beta == m {
                    n += 1;
                }
            }
        }
        n
    }

    fn brute_h1(a: i64, b: i64, m: i64) -> u64 {
        let bound = m.abs() + 1;
        let mut n = 0;
        for lambda in -bound..0 {
            for mu in -bound..0 {
                if a * lambda + b * mu == m {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn h0_examples() {
        let p46 = WeightedProjLine::new(4, 6);
        assert_eq!(p46.h0(0), 1);
        assert_eq!(p46.h0(12), 2);
        assert_eq!(WeightedProjLine::new(3, 1).h0(5), 2);
    }

    #[test]
    fn h1_examples() {
        let p46 = WeightedProjLine::new(4, 6);
        assert_eq!(p46.h1(-10), 1);
        assert_eq!(p46.h1(3), 0);
        // brute force: 2λ + 4μ = −4 has no solution with λ, μ < 0
        assert_eq!(brute_h1(2, 4, -4), 0);
        assert_eq!(WeightedProjLine::new(2, 4).h1(-4), 0);
    }

    #[test]
    fn cohomology_matches_enumeration() {
        for (a, b) in MODELS {
            let x = WeightedProjLine::new(a, b);
            for m in -60..=60 {
                assert_eq!(x.h0(m), brute_h0(a as i64, b as i64, m), "h0 P({a},{b}) m={m}");
                assert_eq!(x.h1(m), brute_h1(a as i64, b as i64, m), "h1 P({a},{b}) m={m}");
            }
        }
    }

    #[test]
    fn duality_examples() {
        assert!(WeightedProjLine::new(4, 6).serre_dual_check(0));
        assert!(WeightedProjLine::new(2, 4).serre_dual_check(2));
        assert!(WeightedProjLine::new(1, 2).serre_dual_check(7));
    }

    #[test]
    fn vanishing_ranges_and_duality() {
        for (a, b) in MODELS {
            let x = WeightedProjLine::new(a, b);
            for m in -500..=500 {
                if m > x.dualizing_twist() {
                    assert_eq!(x.h1(m), 0);
                }
                if m < 0 {
                    assert_eq!(x.h0(m), 0);
                }
                assert!(x.serre_dual_check(m), "P({a},{b}) m={m}");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(
            WeightedProjLine::new(4, 6).hilbert_sequence(11),
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0]
        );
        assert_eq!(WeightedProjLine::new(1, 3).hilbert_sequence(5), vec![1, 1, 1, 2, 2, 2]);
        assert_eq!(WeightedProjLine::new(2, 4).hilbert_sequence(6), vec![1, 0, 1, 0, 2, 0, 2]);
    }

    #[test]
    fn hilbert_agrees_with_h0() {
        for (a, b) in MODELS {
            let x = WeightedProjLine::new(a, b);
            let seq = x.hilbert_sequence(100);
            for (m, &v) in seq.iter().enumerate() {
                assert_eq!(v, x.h0(m as i64));
            }
        }
    }

    #[test]
    fn weights_are_canonical() {
        assert_eq!(WeightedProjLine::new(6, 4), WeightedProjLine::new(4, 6));
        assert_eq!(WeightedProjLine::new(6, 4).weights(), (4, 6));
    }

    #[test]
    fn splitting_examples() {
        let p46 = WeightedProjLine::new(4, 6);
        let h2 = [1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3, 0];
        let s = splitting_from_sections(&p46, &h2, 3).unwrap();
        assert_eq!(s, TwistMultiset::from_coeffs(&[1, 0, 1, 0, 1]));

        let h3 = WeightedProjLine::new(1, 3).hilbert_sequence(21);
        let s = splitting_from_sections(&p46, &h3, 8).unwrap();
        assert_eq!(s, TwistMultiset::from_coeffs(&[1, 1, 1, 2, 1, 1, 1]));

        for (a, b) in MODELS {
            let x = WeightedProjLine::new(a, b);
            let s = splitting_from_sections(&x, &x.hilbert_sequence(20), 1).unwrap();
            assert_eq!(s, TwistMultiset::from_coeffs(&[1]));
        }
    }

    #[test]
    fn splitting_errors() {
        let p46 = WeightedProjLine::new(4, 6);
        // h⁰(4) of O ⊕ O(−2) is 1, so 0 at index 4 forces a negative residual
        let err = splitting_from_sections(&p46, &[1, 0, 1, 0, 0, 0], 2).unwrap_err();
        assert_eq!(err, Error::NegativeResidual { index: 4, value: -1 });
        let err = splitting_from_sections(&p46, &[1, 0, 1, 0, 2, 0], 4).unwrap_err();
        assert_eq!(err, Error::RankMismatch { expected: 4, found: 3 });
    }

    #[test]
    fn convolve_and_deconvolve_invert() {
        let basis = [1, 1, 2, 2, 3, 3];
        let k = [2, 0, 1, 4, 0, 0];
        let h = convolve(&k, &basis, 5);
        let h: Vec<i64> = h.into_iter().map(|x| x as i64).collect();
        assert_eq!(deconvolve(&h, &basis).unwrap(), k.to_vec());
    }
}
