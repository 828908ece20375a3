//! Degree, cusps, elliptic points and genus of compactified modular curves.

use serde::Serialize;

use crate::arith::{
    cusp_divisor_sum, dedekind_psi, divisors, euler_phi, gamma1_degree, gcd, legendre_symbols,
    sl2_order, Factorization, Rat,
};
use crate::decomp::l_sequence;
use crate::dims::WeightOneTable;
use crate::error::{domain, Error, Result};
use crate::group::{CongruenceGroup, GroupKind};
use crate::wproj::WeightedProjLine;

/// Numeric invariants of the compactified curve attached to a congruence group.
///
/// All degrees are stack-map degrees over `M_ell`, never coarse degrees.
/// For `Γ(n)` the invariants describe one geometrically connected component;
/// `components` records how many there are over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveProfile {
    pub group: CongruenceGroup,
    pub degree: u64,
    pub cusps: u64,
    pub regular_cusps: u64,
    pub elliptic2: u64,
    pub elliptic3: u64,
    pub genus: u64,
    pub omega_degree: Rat,
    /// Small-level weighted projective model; only `degree` and
    /// `omega_degree` are authoritative, the rest are the classical values.
    pub stacky: bool,
    pub components: u64,
}

fn integral_genus(group: CongruenceGroup, value: Rat) -> Result<u64> {
    match value.to_i64() {
        Some(g) if g >= 0 => Ok(g as u64),
        _ => Err(Error::NonIntegralGenus {
            group: group.to_string(),
            value: value.to_string(),
        }),
    }
}

pub fn profile(group: CongruenceGroup) -> Result<CurveProfile> {
    let n = group.level();
    if n == 0 {
        return Err(domain("level must be positive"));
    }
    if let Some((a, b)) = group.weighted_model() {
        return Ok(stacky_profile(group, WeightedProjLine::new(a, b)));
    }
    match group.kind() {
        GroupKind::Gamma1 => gamma1_profile(group),
        GroupKind::Gamma0 => gamma0_profile(group),
        GroupKind::GammaFull => full_profile(group),
    }
}

fn stacky_profile(group: CongruenceGroup, model: WeightedProjLine) -> CurveProfile {
    let degree = model.map_degree();
    let expected = match group.kind() {
        GroupKind::GammaFull => sl2_order(group.level()),
        _ => gamma1_degree(group.level()),
    };
    assert_eq!(degree, expected, "weighted model of {group} has wrong degree");
    let omega_degree = Rat::new(degree, 24u64);
    debug_assert_eq!(omega_degree, model.omega_degree());
    // (cusps, regular cusps, ε₂, ε₃)
    let (cusps, regular, e2, e3) = match (group.kind(), group.level()) {
        (_, 1) => (1, 1, 1, 1),
        (GroupKind::Gamma1, 2) => (2, 2, 1, 0),
        (GroupKind::Gamma1, 3) => (2, 2, 0, 1),
        (GroupKind::Gamma1, 4) => (3, 2, 0, 0),
        _ => (3, 3, 0, 0),
    };
    CurveProfile {
        group,
        degree,
        cusps,
        regular_cusps: regular,
        elliptic2: e2,
        elliptic3: e3,
        genus: 0,
        omega_degree,
        stacky: true,
        components: 1,
    }
}

fn gamma1_profile(group: CongruenceGroup) -> Result<CurveProfile> {
    let n = group.level();
    let degree = gamma1_degree(n);
    let twice_cusps = cusp_divisor_sum(n);
    assert!(twice_cusps.is_multiple_of(2), "odd cusp sum for Γ₁({n})");
    let cusps = twice_cusps / 2;
    let genus = Rat::one() + Rat::new(degree, 24u64) - Rat::new(cusps, 2u64);
    Ok(CurveProfile {
        group,
        degree,
        cusps,
        regular_cusps: cusps,
        elliptic2: 0,
        elliptic3: 0,
        genus: integral_genus(group, genus)?,
        omega_degree: Rat::new(degree, 24u64),
        stacky: false,
        components: 1,
    })
}

fn gamma0_profile(group: CongruenceGroup) -> Result<CurveProfile> {
    let n = group.level();
    let index = dedekind_psi(n);
    debug_assert_eq!(index * euler_phi(n), gamma1_degree(n));
    let primes: Vec<u64> = Factorization::of(n).primes().collect();
    let symbols = primes
        .iter()
        .map(|&p| legendre_symbols(p))
        .collect::<Result<Vec<_>>>()?;
    let elliptic2 = if n.is_multiple_of(4) {
        0
    } else {
        symbols.iter().map(|&(s, _)| (1 + s) as u64).product()
    };
    let elliptic3 = if n.is_multiple_of(9) {
        0
    } else {
        symbols.iter().map(|&(_, s)| (1 + s) as u64).product()
    };
    let cusps: u64 = divisors(n)
        .into_iter()
        .map(|d| euler_phi(gcd(d, n / d)))
        .sum();
    let genus = Rat::one() + Rat::new(index, 12u64)
        - Rat::new(elliptic2, 4u64)
        - Rat::new(elliptic3, 3u64)
        - Rat::new(cusps, 2u64);
    Ok(CurveProfile {
        group,
        degree: index,
        cusps,
        regular_cusps: cusps,
        elliptic2,
        elliptic3,
        genus: integral_genus(group, genus)?,
        omega_degree: Rat::new(index, 24u64),
        stacky: false,
        components: 1,
    })
}

fn full_profile(group: CongruenceGroup) -> Result<CurveProfile> {
    let n = group.level();
    let degree = sl2_order(n);
    assert_eq!(degree % (2 * n), 0);
    let cusps = degree / (2 * n);
    let genus = Rat::one()
        + Rat::new(degree, 2u64) * Rat::new(n as i64 - 6, 12 * n as i64);
    Ok(CurveProfile {
        group,
        degree,
        cusps,
        regular_cusps: cusps,
        elliptic2: 0,
        elliptic3: 0,
        genus: integral_genus(group, genus)?,
        omega_degree: Rat::new(degree, 24u64),
        stacky: false,
        components: euler_phi(n),
    })
}

/// The genus read off as `l₁₀` of the `ω`-decomposition of `Γ₁(n)`.
pub fn genus_via_table_crosscheck(n: u64, table: &WeightOneTable) -> Result<u64> {
    if !(2..=42).contains(&n) {
        return Err(domain(format!("cross-check covers 2 ≤ n ≤ 42, got {n}")));
    }
    let seq = l_sequence(CongruenceGroup::gamma1(n), table)?;
    Ok(seq.coeffs()[10])
}
