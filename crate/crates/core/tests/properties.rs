use moddecomp_core::arith::{euler_phi, gcd, is_prime, is_squarefree};
use moddecomp_core::hasse::{build_character, eisenstein_e, lift_f, CycNumber};
use moddecomp_core::{
    duality_verdict, gamma1_degree, l_sequence, profile, splitting_from_sections, CongruenceGroup,
    FormDimensions, Rat, TwistMultiset, WeightOneTable, WeightedProjLine,
};
use proptest::prelude::*;

const MODELS: [(u64, u64); 5] = [(4, 6), (2, 4), (1, 3), (2, 2), (1, 2)];

fn model() -> impl Strategy<Value = WeightedProjLine> {
    (0..MODELS.len()).prop_map(|i| WeightedProjLine::new(MODELS[i].0, MODELS[i].1))
}

proptest! {
    #[test]
    fn degree_multiplicative(a in 1u64..3000, b in 1u64..3000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(gamma1_degree(a * b), gamma1_degree(a) * gamma1_degree(b));
    }

    #[test]
    fn degree_on_prime_powers(p in 2u64..200, k in 1u32..4) {
        prop_assume!(is_prime(p));
        prop_assert_eq!(gamma1_degree(p.pow(k)), p.pow(2 * k - 2) * (p * p - 1));
    }

    #[test]
    fn phi_divides_degree(n in 1u64..100_000) {
        prop_assert_eq!(gamma1_degree(n) % euler_phi(n), 0);
    }

    #[test]
    fn cohomology_vanishing_and_duality(line in model(), m in -2000i64..2000) {
        let (a, b) = line.weights();
        prop_assert!(line.serre_dual_check(m));
        if m < 0 {
            prop_assert_eq!(line.h0(m), 0);
        }
        if m > -((a + b) as i64) {
            prop_assert_eq!(line.h1(m), 0);
        }
    }

    #[test]
    fn splitting_round_trip(
        line in model(),
        twists in prop::collection::vec((0u64..12, 1u64..8), 1..7),
    ) {
        let mut bundle = TwistMultiset::new();
        for (t, c) in twists {
            bundle.insert(t, c);
        }
        prop_assume!(bundle.rank() <= 50);
        let (a, b) = line.weights();
        let h = bundle.sections(&line, (11 + a * b) as usize);
        prop_assert_eq!(splitting_from_sections(&line, &h, bundle.rank()).unwrap(), bundle);
    }

    #[test]
    fn affine_dimensions(n in 5u64..600, k in 3i64..80) {
        let t = WeightOneTable::default();
        let dims = FormDimensions::new(CongruenceGroup::gamma1(n), &t).unwrap();
        let step = dims.m(k).known().unwrap() - dims.m(k - 1).known().unwrap();
        prop_assert_eq!(24 * step, gamma1_degree(n));
    }

    #[test]
    fn full_level_sequences_conserve_rank(n in 3u64..40) {
        let t = WeightOneTable::default();
        let g = CongruenceGroup::gamma(n);
        let p = profile(g).unwrap();
        if p.genus <= 1 {
            let seq = l_sequence(g, &t).unwrap();
            prop_assert_eq!(seq.total(), p.degree);
            prop_assert_eq!(seq.coeffs()[10], p.genus);
        }
    }

    #[test]
    fn gamma0_rank(n in 1u64..2000) {
        prop_assume!(is_squarefree(n));
        let t = WeightOneTable::default();
        let seq = l_sequence(CongruenceGroup::gamma0(n), &t).unwrap();
        prop_assert_eq!(seq.total() * euler_phi(n), gamma1_degree(n));
    }

    #[test]
    fn norm_multiplicative(
        m in 1u32..5,
        xs in prop::collection::vec(-6i64..6, 8),
        ys in prop::collection::vec(-6i64..6, 8),
    ) {
        let len = 1usize << (m - 1);
        let mk = |v: &[i64]| CycNumber::from_coords(m, v[..len].iter().map(|&c| Rat::from(c)).collect());
        let (x, y) = (mk(&xs), mk(&ys));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }
}

#[test]
fn monotone_dimensions() {
    let t = WeightOneTable::default();
    for n in 2..=42 {
        let dims = FormDimensions::new(CongruenceGroup::gamma1(n), &t).unwrap();
        for k in 2..=24 {
            let (m, m2) = (dims.m(k).known().unwrap(), dims.m(k - 2).known().unwrap());
            let (s, s2) = (dims.s(k).known().unwrap(), dims.s(k - 2).known().unwrap());
            assert!(m >= m2 && s >= s2, "n={n} k={k}");
        }
        let (m1, m2) = (dims.m(1).known().unwrap(), dims.m(2).known().unwrap());
        assert!(m2 + 1 >= 2 * m1, "n={n}");
        if CongruenceGroup::gamma1(n).is_representable() {
            assert!(dims.s(2).known().unwrap() >= 2 * dims.s(1).known().unwrap());
        }
    }
}

#[test]
fn symmetric_levels() {
    let t = WeightOneTable::default();
    let symmetric: Vec<u64> = (2..=42)
        .filter(|&n| duality_verdict(CongruenceGroup::gamma1(n), &t).unwrap().symmetric)
        .collect();
    assert_eq!(symmetric, vec![2, 3, 4, 5, 6, 7, 8, 11, 14, 15, 23]);
}

#[test]
fn hasse_series_are_two_integral() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        let chi = build_character(p).unwrap();
        assert_eq!(chi.value(p - 1), -&CycNumber::one(chi.m()));
        let e = eisenstein_e(&chi, 200).unwrap();
        assert!(e.coeffs().iter().all(CycNumber::is_two_integral));
        assert!(lift_f(&e).coeffs().iter().all(Rat::is_two_integral));
    }
}
