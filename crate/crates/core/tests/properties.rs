use std::cmp::Ordering;
use std::sync::OnceLock;

use proptest::prelude::*;

use residua::classes::GroupClass;
use residua::constants::Root;
use residua::exact::{big, certify, LogRatio};
use residua::resrad::{generic_radical, generic_residual, poly_residual, radical, residual};
use residua::{Caps, Context, Execution, GroupHandle, Permutation};

fn ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::new(Caps::default(), Execution::Sequential).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    proptest::collection::vec(any::<u32>(), n).prop_map(|keys| {
        let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
        idx.sort_by_key(|&i| (keys[i as usize], i));
        Permutation::from_images(idx).unwrap()
    })
}

fn group() -> impl Strategy<Value = GroupHandle> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(perm(n), 1..=3)))
        .prop_map(|(n, gens)| GroupHandle::new(n, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_with_inverses(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        for x in 0..7 {
            prop_assert_eq!(a.compose(&b).apply(x), b.apply(a.apply(x)));
        }
    }

    #[test]
    fn element_order_kills(a in perm(8)) {
        let o = a.order();
        prop_assert!(a.pow(o).is_identity());
        for k in 1..o {
            prop_assert!(!a.pow(k).is_identity());
        }
    }

    #[test]
    fn cycle_strings_round_trip(a in perm(9)) {
        let s = a.to_cycle_string(true);
        prop_assert_eq!(Permutation::parse_cycles(&s, 9, true).unwrap(), a);
    }

    #[test]
    fn order_matches_enumeration(g in group()) {
        let elems = g.elements(1000).unwrap();
        prop_assert_eq!(big(elems.len() as u64), g.order().clone());
        for e in &elems {
            prop_assert!(g.has(e));
        }
        let n = g.degree() as u64;
        prop_assert_eq!(residua::exact::factorial(n) % g.order(), big(0));
    }

    #[test]
    fn derived_subgroup_is_the_abelian_residual(g in group()) {
        let d = g.derived_subgroup();
        prop_assert!(d.is_normal_in(&g));
        let r = residual(ctx(), &g, &GroupClass::Abelian).unwrap().subgroup;
        prop_assert!(r.same_group(&d));
    }

    #[test]
    fn residuals_and_radicals_agree_with_generic_constructions(g in group()) {
        for x in [GroupClass::Nilpotent, GroupClass::Soluble] {
            let fast = residual(ctx(), &g, &x).unwrap().subgroup;
            let slow = generic_residual(ctx(), &g, &x).unwrap().subgroup;
            prop_assert!(fast.same_group(&slow));
            let fast = radical(ctx(), &g, &x).unwrap().subgroup;
            let slow = generic_radical(ctx(), &g, &x).unwrap().subgroup;
            prop_assert!(fast.same_group(&slow));
        }
    }

    #[test]
    fn radical_is_normal_member(g in group()) {
        let f = radical(ctx(), &g, &GroupClass::Nilpotent).unwrap().subgroup;
        prop_assert!(f.is_normal_in(&g) && f.is_nilpotent());
        let s = radical(ctx(), &g, &GroupClass::Soluble).unwrap().subgroup;
        prop_assert!(s.is_normal_in(&g) && s.is_soluble());
        prop_assert!(f.is_subgroup_of(&s));
    }

    #[test]
    fn soluble_residual_is_perfect_and_matches_poly_nilpotent(g in group()) {
        let r = residual(ctx(), &g, &GroupClass::Soluble).unwrap().subgroup;
        prop_assert!(r.is_normal_in(&g) && r.is_perfect());
        prop_assert_eq!(r.is_trivial(), g.is_soluble());
        let p = poly_residual(ctx(), &g, &GroupClass::Nilpotent).unwrap().subgroup;
        prop_assert!(p.same_group(&r));
    }

    #[test]
    fn certificates_bracket_log_ratios(p in 2u64..100_000, q in 2u64..100_000) {
        let x = LogRatio::new(big(p), big(q)).unwrap();
        let c = certify(&x, 1e-9).unwrap();
        prop_assert!(x.is_at_least(c.lower));
        prop_assert!(x.is_at_most(c.upper));
        prop_assert!(c.width().to_f64() < 1e-9);
    }

    #[test]
    fn rational_log_ratios_are_certified_exactly(r in 2u64..50, a in 1u32..6, b in 1u32..6) {
        let x = LogRatio::new(big(r).pow(a), big(r).pow(b)).unwrap();
        let c = certify(&x, 1e-9).unwrap();
        prop_assert_eq!(c.lower, c.upper);
        prop_assert_eq!(c.lower.num * b as u64, c.lower.den * a as u64);
    }

    #[test]
    fn root_comparison_is_exact(a in 2u64..5000, r in 1u64..6, b in 2u64..5000, s in 1u64..6) {
        let (x, y) = (Root { base: a, root: r }, Root { base: b, root: s });
        prop_assert_eq!(x.cmp_exact(&y), y.cmp_exact(&x).reverse());
        let (fx, fy) = ((a as f64).powf(1.0 / r as f64), (b as f64).powf(1.0 / s as f64));
        if (fx - fy).abs() > 1e-9 * fx.max(fy) {
            prop_assert_eq!(x.cmp_exact(&y), fx.partial_cmp(&fy).unwrap());
        }
        prop_assert_eq!(x.cmp_exact(&x), Ordering::Equal);
    }
}
