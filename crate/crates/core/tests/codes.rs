use std::collections::BTreeMap;

use hermcodes_core::bounds::ConjecturePolicy;
use hermcodes_core::codes::{
    build_code, code_dimension, min_distance, theoretical_parameters, weight, weight_distribution, DminStatus,
    MinDistanceMode, DEFAULT_CLASS_BUDGET,
};
use hermcodes_core::extremal::construct_extremal;
use hermcodes_core::forms::{binomial, enumerate_forms_projective, monomial_basis};
use hermcodes_core::{make_field, make_standard_cone, Shard};

fn theory(n: u32, d: u32, q: u64) -> (u128, u128, u128) {
    let t = theoretical_parameters(n, d, q, ConjecturePolicy::Strict).unwrap();
    (t.m, t.k, t.dmin.unwrap())
}

#[test]
fn exhaustive_parameters_match_closed_forms() {
    let cases = [
        (2u32, 2u32, 1u32, (13, 3, 8)),
        (2, 2, 2, (13, 6, 4)),
        (2, 3, 1, (37, 4, 24)),
        (2, 3, 2, (37, 10, 12)),
        (2, 4, 1, (181, 5, 128)),
        (3, 2, 1, (37, 3, 27)),
        (3, 2, 2, (37, 6, 18)),
    ];
    for (p, n, d, expected) in cases {
        let f = make_field(p, 1).unwrap();
        let code = build_code(&f, &make_standard_cone(&f, n as usize), d).unwrap();
        let a = min_distance(&f, &code, &MinDistanceMode::ExhaustiveMessages, DEFAULT_CLASS_BUDGET).unwrap();
        assert_eq!(a.dmin_status, DminStatus::Exact);
        assert_eq!((a.m, a.k, a.dmin), expected, "p={p} n={n} d={d}");
        let t = theory(n, d, p as u64);
        assert_eq!((a.m as u128, a.k as u128, a.dmin as u128), t);
        if a.examined < 100_000 {
            let b = min_distance(&f, &code, &MinDistanceMode::ExhaustiveForms, DEFAULT_CLASS_BUDGET).unwrap();
            assert_eq!(b.dmin, a.dmin);
        }
        assert!(a.dmin <= a.m - a.k + 1);
    }
}

#[test]
fn message_and_form_scans_agree_on_the_largest_case() {
    let f = make_field(2, 1).unwrap();
    let code = build_code(&f, &make_standard_cone(&f, 3), 2).unwrap();
    let a = min_distance(&f, &code, &MinDistanceMode::ExhaustiveMessages, DEFAULT_CLASS_BUDGET).unwrap();
    let b = min_distance(&f, &code, &MinDistanceMode::ExhaustiveForms, DEFAULT_CLASS_BUDGET).unwrap();
    assert_eq!(a.examined, 349525);
    assert_eq!((a.dmin, b.dmin), (12, 12));
}

#[test]
fn witness_weights_equal_theoretical_minimum() {
    for (p, n, d) in [(2u32, 4usize, 2u32), (3, 2, 3), (3, 3, 1), (3, 3, 2), (3, 3, 3)] {
        let f = make_field(p, 1).unwrap();
        let code = build_code(&f, &make_standard_cone(&f, n), d).unwrap();
        let w = construct_extremal(&f, n, d).unwrap();
        let r = min_distance(&f, &code, &MinDistanceMode::WitnessOnly(vec![w.form]), 0).unwrap();
        assert_eq!(r.dmin_status, DminStatus::WitnessUpperBoundOnly);
        assert_eq!(r.dmin as u128, theory(n as u32, d, p as u64).2, "p={p} n={n} d={d}");
    }
    let f = make_field(3, 1).unwrap();
    let code = build_code(&f, &make_standard_cone(&f, 3), 3).unwrap();
    assert_eq!(code.length(), 253);
    let w = construct_extremal(&f, 3, 3).unwrap();
    assert_eq!(w.predicted_count, 109);
    assert_eq!(weight(&code.codeword(&f, &w.form).unwrap()), 144);
}

#[test]
fn evaluation_is_injective() {
    let mut cases = vec![(3u32, 2usize, 3u32)];
    for p in [2u32, 3] {
        for n in 2..=4 {
            for d in 1..=p.min(2) {
                cases.push((p, n, d));
            }
        }
    }
    for (p, n, d) in cases {
        let f = make_field(p, 1).unwrap();
        let code = build_code(&f, &make_standard_cone(&f, n), d).unwrap();
        assert_eq!(
            code_dimension(&f, &code) as u128,
            binomial((n + d as usize) as u64, d as u64),
            "p={p} n={n} d={d}"
        );
    }
}

#[test]
fn plane_cone_weight_distribution() {
    // through the vertex: 3 generator lines (5 points) and 2 other lines (vertex only);
    // the 16 lines missing the vertex cut the cone in a Hermitian set of 3 points
    let f = make_field(2, 1).unwrap();
    let cone = make_standard_cone(&f, 2);
    let code = build_code(&f, &cone, 1).unwrap();
    let dist = weight_distribution(&f, &code, DEFAULT_CLASS_BUDGET).unwrap();
    assert_eq!(dist, BTreeMap::from([(8, 3), (10, 16), (12, 2)]));

    let mut brute = BTreeMap::new();
    for g in enumerate_forms_projective(&f, &monomial_basis(2, 1), Shard::FULL, u64::MAX).unwrap() {
        *brute.entry(weight(&code.codeword(&f, &g).unwrap())).or_insert(0u128) += 1;
    }
    assert_eq!(dist, brute);

    let mut shuffled = code.clone();
    let m = shuffled.generator.cols();
    shuffled.generator = {
        let mut g = shuffled.generator.clone();
        for j in 0..m / 2 {
            g.swap_cols(j, m - 1 - j);
        }
        g
    };
    assert_eq!(weight_distribution(&f, &shuffled, DEFAULT_CLASS_BUDGET).unwrap(), dist);
}
