use conway_core::corpus;
use conway_core::finite_type::{
    colored_vanishing_probe, extend, leibniz_check, Invariant, SingularSampler, Verdict,
};
use conway_core::sampler::{BraidSampler, Ctype2Sampler, DoublePoints, FixedSampler, SingularBraidSampler};
use conway_core::{CrossingKind, Error};
use num_bigint::BigInt;
use num_traits::Zero;

#[test]
fn c1_is_killed_by_four_double_points_on_two_components() {
    let braids = BraidSampler::new(21).components(2..=2).length(4..=9);
    let mut s = SingularBraidSampler::new(braids, 4, DoublePoints::Any);
    for _ in 0..10 {
        let d = s.sample().unwrap();
        assert!(extend(&Invariant::c(1), &d).unwrap().is_zero());
    }
}

#[test]
fn conway_coefficients_have_colored_type() {
    for n in 0..=2u32 {
        let braids = BraidSampler::new(30 + n as u64)
            .strands(2..=3)
            .length(n as usize + 1..=8);
        let mut s = SingularBraidSampler::new(braids, n as usize + 1, DoublePoints::SelfOnly);
        let report = colored_vanishing_probe(&Invariant::conway_relative(n), n, &mut s, 20).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Consistent,
            "n = {n}: {:?}",
            report.failures
        );
        assert_eq!(report.trials, 20);
    }
}

#[test]
fn alpha_k_has_colored_type_2k_minus_1() {
    for k in 1..=2usize {
        let braids = BraidSampler::new(40 + k as u64)
            .strands(3..=4)
            .components(2..=2)
            .length(2 * k..=10);
        let mut s = SingularBraidSampler::new(braids, 2 * k, DoublePoints::SelfOnly);
        let report = colored_vanishing_probe(&Invariant::alpha(k), 2 * k as u32 - 1, &mut s, 15).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
    }
}

#[test]
fn alpha2_is_not_of_colored_type_2() {
    let d = corpus::ctype2_family(1, 2, -3, 0).unwrap();
    let mut fixed = FixedSampler::new(vec![d]);
    let report = colored_vanishing_probe(&Invariant::alpha(2), 2, &mut fixed, 1).unwrap();
    assert_eq!(report.verdict, Verdict::Refuted);
    assert_eq!(report.failures[0].value, BigInt::from(14));
    let witness = conway_core::parse_pd(&report.failures[0].pd).unwrap();
    assert_eq!(extend(&Invariant::alpha(2), &witness).unwrap(), BigInt::from(14));

    let mut family = Ctype2Sampler::new(3, 2);
    let report = colored_vanishing_probe(&Invariant::alpha(2), 2, &mut family, 10).unwrap();
    assert_eq!(report.verdict, Verdict::Refuted);
}

#[test]
fn probe_rejects_wrong_samples() {
    let mut fixed = FixedSampler::new(vec![corpus::trefoil()]);
    let r = colored_vanishing_probe(&Invariant::c(0), 0, &mut fixed, 1);
    assert!(matches!(r, Err(Error::SamplerExhausted(_))));
    let mut empty = FixedSampler::new(vec![]);
    assert!(matches!(empty.sample(), Err(Error::SamplerExhausted(_))));
}

#[test]
fn leibniz_on_sampled_diagrams() {
    let invariants = [Invariant::linking_number(0, 1), Invariant::c(0), Invariant::c(1)];
    for k in 0..=3usize {
        let braids = BraidSampler::new(50 + k as u64)
            .components(2..=2)
            .length(k.max(2)..=8);
        let mut s = SingularBraidSampler::new(braids, k, DoublePoints::Any);
        for _ in 0..4 {
            let d = s.sample().unwrap();
            for u in &invariants {
                for v in &invariants {
                    assert!(leibniz_check(u, v, &d).unwrap(), "{} {} {d}", u.name, v.name);
                }
            }
        }
    }
}

#[test]
fn one_term_relation_on_kinks() {
    let base = corpus::whitehead(1).unwrap();
    for a in [1, 3, 5] {
        let d = base.insert_kink(a, CrossingKind::Singular).unwrap();
        for v in [
            Invariant::c(1),
            Invariant::alpha(1),
            Invariant::linking_number(0, 1),
        ] {
            assert!(extend(&v, &d).unwrap().is_zero(), "{} at arc {a}", v.name);
        }
    }
}

#[test]
fn product_claims_add() {
    let p = Invariant::product(&Invariant::linking_number(0, 1), &Invariant::c_for(1, 2));
    assert_eq!(p.claimed_type, Some(4));
    assert_eq!(Invariant::component_c(1, 1).claimed_multitype, Some(vec![0, 2]));
}
