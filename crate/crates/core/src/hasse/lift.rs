//! Characteristic-zero lift of the mod-2 Hasse invariant.
//!
//! `E = (1 − ζ) E₁^χ` has `q`-expansion in `Z_(2)[ζ]` and reduces to a
//! constant mod `(1 − ζ)`. Summing the rational coordinate forms `f_i` of
//! `E = Σ f_i ζ^i` gives a rational form `F` with `F ≡ 1 mod 2`.

use serde::Serialize;

use crate::arith::Rat;
use crate::error::{domain, Error, Result};

use super::character::{build_character, l_value, OddChar};
use super::cyclotomic::{basis_len, CycNumber};

/// Truncated `q`-expansion `c₀ + c₁q + … + c_N q^N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct QSeries<C> {
    coeffs: Vec<C>,
}

impl<C> QSeries<C> {
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }
}

/// `E = (1 − ζ)E₁^χ` through `q^N`, checked to be 2-integral.
pub fn eisenstein_e(chi: &OddChar, precision: usize) -> Result<QSeries<CycNumber>> {
    if precision < 1 {
        return Err(domain("precision must be ≥ 1"));
    }
    let m = chi.m();
    let len = basis_len(m);
    // divisor sums Σ_{d|n} χ(d) in integer coordinates
    let mut sums = vec![vec![0i64; len]; precision + 1];
    for d in 1..=precision {
        let Some(t) = chi.exponent(d as u64) else {
            continue;
        };
        let (idx, sign) = if (t as usize) < len {
            (t as usize, 1)
        } else {
            (t as usize - len, -1)
        };
        for n in (d..=precision).step_by(d) {
            sums[n][idx] += sign;
        }
    }
    let factor = &CycNumber::one(m) - &CycNumber::zeta_pow(m, 1);
    let constant = (&factor * &l_value(chi)).scale(&Rat::new(1, 2));
    let coeffs: Vec<CycNumber> = std::iter::once(constant)
        .chain(sums.into_iter().skip(1).map(|s| {
            let c = CycNumber::from_coords(m, s.into_iter().map(Rat::from).collect());
            &factor * &c
        }))
        .collect();
    if let Some(index) = coeffs.iter().position(|c| !c.is_two_integral()) {
        return Err(Error::IntegralityFailure {
            series: "E",
            index,
            value: coeffs[index].to_string(),
        });
    }
    Ok(QSeries { coeffs })
}

/// `F = Σ_i f_i` where `E = Σ_i f_i ζ^i` coordinatewise.
pub fn lift_f(e: &QSeries<CycNumber>) -> QSeries<Rat> {
    QSeries {
        coeffs: e.coeffs.iter().map(CycNumber::coordinate_sum).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseReport {
    pub p: u64,
    pub m: u32,
    pub odd_part: u64,
    pub generator: u64,
    pub precision: usize,
    pub passed: bool,
    pub constant_term: Rat,
    pub l_value: CycNumber,
    pub v2_l_value: Rat,
    /// `1 − 1/2^{m−1}` for `m ≥ 2`, `0` for `m = 1`.
    pub expected_v2: Rat,
    pub v2_matches: bool,
    /// `1 − 1/2^{m−2}`, the competing exponent; disagrees with the norm
    /// computation whenever `m ≥ 2`.
    pub alternative_v2: Option<Rat>,
}

pub fn expected_v2_l_value(m: u32) -> Rat {
    if m == 1 {
        Rat::zero()
    } else {
        Rat::one() - Rat::new(1, basis_len(m) as u64)
    }
}

/// Runs the whole pipeline for `p` through `q^N` and checks `F ≡ 1 mod 2`.
pub fn verify_hasse_lift(p: u64, precision: usize) -> Result<HasseReport> {
    let chi = build_character(p)?;
    let e = eisenstein_e(&chi, precision)?;
    let f = lift_f(&e);
    for (i, c) in f.coeffs().iter().enumerate() {
        let want = if i == 0 { 1 } else { 0 };
        if c.mod2() != Some(want) {
            return Err(Error::VerificationFailure { index: i });
        }
    }
    let l = l_value(&chi);
    let v2_l = l.v2()?;
    let expected = expected_v2_l_value(chi.m());
    Ok(HasseReport {
        p,
        m: chi.m(),
        odd_part: chi.odd_part(),
        generator: chi.generator(),
        precision,
        passed: true,
        constant_term: f.coeff(0).clone(),
        v2_matches: v2_l == expected,
        v2_l_value: v2_l,
        expected_v2: expected,
        alternative_v2: (chi.m() >= 2).then(|| Rat::one() - Rat::new(1, 1u64 << (chi.m() - 2))),
        l_value: l,
    })
}
