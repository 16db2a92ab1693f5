use hermcodes_core::forms::{
    enumerate_forms_projective, evaluate_form, intersection_count, monomial_basis, product_of_hyperplanes,
    projective_form_count, HomogeneousForm,
};
use hermcodes_core::proj::enumerate_points;
use hermcodes_core::{make_field, FieldCtx, FieldElement, Hyperplane, ProjPoint, Shard};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
}

fn el(ctx: &FieldCtx, raw: u32) -> FieldElement {
    ctx.element(raw % ctx.q2()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((p, e) in fields(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = make_field(p, e).unwrap();
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn conjugation_maps((p, e) in fields(), a in any::<u32>(), b in any::<u32>()) {
        let f = make_field(p, e).unwrap();
        let (a, b) = (el(&f, a), el(&f, b));
        prop_assert_eq!(f.frob(f.frob(a)), a);
        prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        prop_assert!(f.is_in_base_field(f.norm(a)));
        prop_assert!(f.is_in_base_field(f.trace(a)));
        prop_assert_eq!(f.norm(a), f.pow(a, f.q() as u64 + 1));
    }

    #[test]
    fn preimages_solve_their_equations((p, e) in fields(), i in any::<u32>()) {
        let f = make_field(p, e).unwrap();
        let base = f.base_field_codes();
        let b = f.element(base[i as usize % base.len()]).unwrap();
        prop_assert_eq!(f.trace(f.trace_preimage(b).unwrap()), b);
        if !b.is_zero() {
            prop_assert_eq!(f.norm(f.norm_preimage(b).unwrap()), b);
        }
    }

    #[test]
    fn zero_counts_are_scalar_invariant(coeffs in prop::collection::vec(0u32..4, 6), s in 1u32..4) {
        let f = make_field(2, 1).unwrap();
        let g = HomogeneousForm::from_codes(&f, monomial_basis(2, 2), &coeffs).unwrap();
        let pts = enumerate_points(&f, 2).unwrap();
        let scaled = g.scale(&f, f.element(s).unwrap());
        prop_assert_eq!(intersection_count(&f, &g, &pts), intersection_count(&f, &scaled, &pts));
    }

    #[test]
    fn evaluation_ignores_representatives(coeffs in prop::collection::vec(0u32..9, 6), x in prop::collection::vec(0u32..9, 3), s in 1u32..9) {
        let f = make_field(3, 1).unwrap();
        let g = HomogeneousForm::from_codes(&f, monomial_basis(2, 2), &coeffs).unwrap();
        let Ok(pt) = ProjPoint::from_codes(&f, &x) else { return Ok(()) };
        let lam = f.element(s).unwrap();
        let scaled: Vec<FieldElement> = pt.coords().iter().map(|&c| f.mul(c, lam)).collect();
        let pt2 = ProjPoint::new(&f, scaled).unwrap();
        prop_assert_eq!(&pt, &pt2);
        let v = evaluate_form(&f, &g, &pt).unwrap();
        prop_assert_eq!(v.is_zero(), evaluate_form(&f, &g, &pt2).unwrap().is_zero());
    }

    #[test]
    fn products_vanish_on_the_union(duals in prop::collection::vec(prop::collection::vec(0u32..4, 4), 1..=3)) {
        let f = make_field(2, 1).unwrap();
        let planes: Vec<Hyperplane> = duals
            .iter()
            .filter_map(|u| Hyperplane::new(&f, u.iter().map(|&c| f.element(c).unwrap()).collect()).ok())
            .collect();
        if planes.is_empty() {
            return Ok(());
        }
        let g = product_of_hyperplanes(&f, &planes).unwrap();
        for x in enumerate_points(&f, 3).unwrap() {
            let on = planes.iter().any(|h| h.eval(&f, x.coords()).is_zero());
            prop_assert_eq!(evaluate_form(&f, &g, &x).unwrap().is_zero(), on);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shards_visit_each_form_once(t in 1u64..40) {
        let f = make_field(2, 1).unwrap();
        let b = monomial_basis(2, 2);
        let mut seen = std::collections::HashSet::new();
        let mut total = 0u128;
        for i in 0..t {
            for g in enumerate_forms_projective(&f, &b, Shard::new(i, t).unwrap(), u64::MAX).unwrap() {
                prop_assert!(seen.insert(g.codes()));
                total += 1;
            }
        }
        prop_assert_eq!(total, projective_form_count(4, 6));
        prop_assert_eq!(total, 1365);
    }
}

proptest! {
    #[test]
    fn shard_ranges_tile_large_spaces(len in any::<u128>(), total in 1u64..64) {
        let mut next = 0u128;
        for i in 0..total {
            let (a, b) = Shard::new(i, total).unwrap().range(len);
            prop_assert_eq!(a, next);
            prop_assert!(b >= a);
            next = b;
        }
        prop_assert_eq!(next, len);
    }
}

#[test]
fn form_count_saturates() {
    assert_eq!(projective_form_count(9, 56), u128::MAX);
    assert_eq!(projective_form_count(4, 3), 21);
}
