use std::collections::BTreeSet;

use hermcodes_core::bounds::unital;
use hermcodes_core::hermitian::{
    canonical_congruence, classify_line, count_points_formula, hermitian_rank, hyperplane_section, rank_count,
    RankCase, SectionKind,
};
use hermcodes_core::proj::{enumerate_hyperplanes, enumerate_lines, enumerate_points};
use hermcodes_core::{make_field, make_standard_cone, FieldCtx, HermitianMatrix, HermitianVariety, Matrix};
use proptest::prelude::*;

fn random_hermitian(ctx: &FieldCtx, n: usize, seeds: &[u32]) -> Option<HermitianMatrix> {
    let base = ctx.base_field_codes();
    let mut m = Matrix::zeros(n + 1, n + 1);
    let mut it = seeds.iter().cycle();
    for i in 0..=n {
        m[(i, i)] = ctx.element(base[*it.next()? as usize % base.len()]).ok()?;
        for j in i + 1..=n {
            let x = ctx.element(*it.next()? % ctx.q2()).ok()?;
            m[(i, j)] = x;
            m[(j, i)] = ctx.frob(x);
        }
    }
    HermitianMatrix::new(ctx, m).ok()
}

#[test]
fn point_counts_match_closed_forms() {
    for p in [2u32, 3] {
        let f = make_field(p, 1).unwrap();
        let q = p as u64;
        for n in 1..=4usize {
            let nd = HermitianVariety::nondegenerate(&f, n);
            assert_eq!(
                nd.points(&f).unwrap().len() as u64,
                count_points_formula(n as u32, RankCase::Nondegenerate, q)
            );
            assert_eq!(nd.points(&f).unwrap().len() as u128, unital(n as u32, q).unwrap());
            let cone = make_standard_cone(&f, n);
            assert_eq!(
                cone.points(&f).unwrap().len() as u64,
                count_points_formula(n as u32, RankCase::RankNCone, q)
            );
        }
    }
    let f3 = make_field(3, 1).unwrap();
    assert_eq!(make_standard_cone(&f3, 4).points(&f3).unwrap().len(), 2521);
}

#[test]
fn every_rank_count_matches_enumeration() {
    for p in [2u32, 3] {
        let f = make_field(p, 1).unwrap();
        for m in 1..=3usize {
            for r in 1..=m + 1 {
                let v = HermitianVariety::new(&f, HermitianMatrix::diagonal(m, r)).unwrap();
                assert_eq!(
                    v.points(&f).unwrap().len() as u64,
                    rank_count(m as u32, r as u32, p as u64)
                );
            }
        }
    }
}

#[test]
fn line_trichotomy_nondegenerate() {
    for p in [2u32, 3] {
        let f = make_field(p, 1).unwrap();
        let q = p as usize;
        for n in 2..=3usize {
            let u = HermitianVariety::nondegenerate(&f, n);
            let sizes: BTreeSet<usize> = enumerate_lines(&f, n)
                .unwrap()
                .iter()
                .map(|l| classify_line(&f, &u, &l[0], &l[1]).unwrap().count)
                .collect();
            let allowed: BTreeSet<usize> = if n == 2 {
                [1, q + 1].into()
            } else {
                [1, q + 1, q * q + 1].into()
            };
            assert_eq!(sizes, allowed, "n={n} q={q}");
        }
    }
}

#[test]
fn hyperplane_dichotomy_nondegenerate() {
    for p in [2u32, 3] {
        let f = make_field(p, 1).unwrap();
        let q = p as u64;
        for n in 2..=3usize {
            let u = HermitianVariety::nondegenerate(&f, n);
            let tangent = 1 + q * q * count_points_formula(n as u32 - 2, RankCase::Nondegenerate, q);
            let secant = count_points_formula(n as u32 - 1, RankCase::Nondegenerate, q);
            for h in enumerate_hyperplanes(&f, n).unwrap() {
                let s = hyperplane_section(&f, &u, &h).unwrap();
                match s.kind {
                    SectionKind::Tangent => assert_eq!((s.rank, s.count as u64), (n - 1, tangent)),
                    SectionKind::NonTangent => assert_eq!((s.rank, s.count as u64), (n, secant)),
                    k => panic!("{k:?}"),
                }
            }
        }
    }
}

#[test]
fn vertex_avoiding_sections_are_nondegenerate() {
    let f = make_field(2, 1).unwrap();
    for n in 2..=4usize {
        let cone = make_standard_cone(&f, n);
        let expected = unital(n as u32 - 1, 2).unwrap() as usize;
        let mut avoiding = 0;
        for h in enumerate_hyperplanes(&f, n).unwrap() {
            let s = hyperplane_section(&f, &cone, &h).unwrap();
            if s.kind == SectionKind::VertexAvoiding {
                avoiding += 1;
                assert_eq!((s.rank, s.count), (n, expected));
            }
        }
        assert_eq!(avoiding, 4usize.pow(n as u32));
    }
}

#[test]
fn sections_through_the_vertex_of_the_four_dim_cone() {
    let f = make_field(2, 1).unwrap();
    let q = 2usize;
    let cone = make_standard_cone(&f, 4);
    let mut counts = BTreeSet::new();
    for h in enumerate_hyperplanes(&f, 4).unwrap() {
        let s = hyperplane_section(&f, &cone, &h).unwrap();
        if s.kind == SectionKind::VertexIncident {
            counts.insert(s.count);
        }
    }
    let over_curve = 1 + q * q * (q.pow(3) + 1);
    let over_lines = 1 + q * q * (q.pow(3) + q * q + 1);
    assert_eq!(counts, BTreeSet::from([over_curve, over_lines]));
    assert_eq!(counts, BTreeSet::from([37, 53]));
    assert!(!counts.contains(&(1 + q * q * (q * q + q + 1))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_is_exact_and_preserves_counts(
        field in prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2)]),
        n in 1usize..=3,
        seeds in prop::collection::vec(0u32..1000, 12),
    ) {
        let f = make_field(field.0, field.1).unwrap();
        let Some(h) = random_hermitian(&f, n, &seeds) else { return Ok(()) };
        let c = canonical_congruence(&f, &h).unwrap();
        prop_assert_eq!(c.rank, hermitian_rank(&f, &h));
        prop_assert_eq!(c.s.rank(&f), n + 1);
        let reduced = HermitianMatrix::diagonal(n, c.rank);
        prop_assert_eq!(&h.congruent(&f, &c.s).unwrap(), reduced.matrix());
        if f.q2() <= 9 {
            let v = HermitianVariety::new(&f, h).unwrap();
            let w = HermitianVariety::new(&f, reduced).unwrap();
            prop_assert_eq!(v.points(&f).unwrap().len(), w.points(&f).unwrap().len());
            prop_assert_eq!(v.points(&f).unwrap().len() as u64, rank_count(n as u32, c.rank as u32, f.q() as u64));
        }
    }

    #[test]
    fn hermitian_values_lie_in_the_base_field(
        n in 1usize..=3,
        seeds in prop::collection::vec(0u32..1000, 12),
    ) {
        let f = make_field(3, 1).unwrap();
        let Some(h) = random_hermitian(&f, n, &seeds) else { return Ok(()) };
        for x in enumerate_points(&f, n).unwrap().iter().step_by(7) {
            let v = hermcodes_core::hermitian::evaluate_hermitian_form(&f, &h, x).unwrap();
            prop_assert!(f.is_in_base_field(v));
        }
    }
}
