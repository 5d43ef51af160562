use super::*;
use crate::algebra::{find_algebra_isomorphism, AlgebraIso};
use crate::desk;
use crate::exactla::Fp;
use crate::homological::{ext_dim, syzygy};
use crate::invariants::saturate_catalog;
use crate::repmod::{hom_dim, is_isomorphic, simple};
use proptest::prelude::*;

type F = Fp<101>;

fn nak2_pair() -> CorrespondencePair<F> {
    let t = desk::nak2::<F>();
    let q = sum_modules(&t, &[regular_module(&t), simple(&t, 0).unwrap()]).unwrap();
    check_class_b(&t, &q, 2, 1).unwrap()
}

#[test]
fn class_u_examples() {
    assert!(check_class_u(&desk::aus2::<F>(), 2, 6).unwrap().member);
    let nak = check_class_u(&desk::nak2::<F>(), 2, 6).unwrap();
    assert!(!nak.member);
    assert_eq!(nak.inj_report.value, DimValue::Exact(0));
    let a2 = check_class_u(&desk::a2::<F>(), 2, 6).unwrap();
    assert!(!a2.member);
    assert_eq!((a2.dom_report.value, a2.inj_report.value), (DimValue::Exact(1), DimValue::Exact(1)));
    let kr = check_class_u(&desk::kronecker::<F>(), 2, 6).unwrap();
    assert!(!kr.member && kr.minimal_faithful.is_none());
    assert!(matches!(check_class_u(&desk::aus2::<F>(), 1, 6), Err(Error::Contract(_))));
}

#[test]
fn nak2_with_simple_is_a_member() {
    let p = nak2_pair();
    assert!(p.certificate.member());
    // over a self-injective local algebra with trivial Nakayama permutation, τ = Ω²
    let s = simple(&desk::nak2::<F>(), 0).unwrap();
    assert!(is_isomorphic(&syzygy(&syzygy(&s, 1).unwrap(), 1).unwrap(), &s, 1).unwrap());
    assert!(is_isomorphic(&p.certificate.up, &s, 1).unwrap());
    assert!(is_isomorphic(&p.certificate.down, &s, 1).unwrap());
    let t = desk::nak2::<F>();
    assert!(check_class_b(&t, &regular_module(&t), 2, 1).unwrap().certificate.member());
}

#[test]
fn a2_with_its_dual_is_a_member() {
    let t = desk::a2::<F>();
    let q = sum_modules(&t, &[regular_module(&t), dual_module(&regular_module(&t.op()))]).unwrap();
    let p = check_class_b(&t, &q, 2, 1).unwrap();
    // the basic part has all three indecomposables
    assert_eq!(p.q.dim(), 4);
    // hereditary oracle: dim Ext¹(X, Y) = dim Hom(Y, τX) on the whole catalog
    let cat = saturate_catalog(&t, 10, 1).unwrap();
    for x in &cat.modules {
        let tx = higher_translate(x, 1).unwrap().output;
        for y in &cat.modules {
            assert_eq!(ext_dim(x, y, 1).unwrap(), hom_dim(y, &tx).unwrap());
        }
    }
    assert!(p.certificate.member());
}

#[test]
fn f_of_aus2() {
    let a = desk::aus2::<F>();
    let p = f_map(&a, 2, 6, 1).unwrap();
    assert_eq!(p.base.dim(), 2);
    let i = minimal_faithful(&a).unwrap().module;
    assert_eq!(hom_dim(&i, &i).unwrap(), 2);
    assert!(find_algebra_isomorphism(&p.base, &desk::nak2::<F>(), 1, 64).unwrap().is_found());
    assert_eq!(p.q.dim(), 3);
    assert_eq!(decompose(&p.q, 1).unwrap().indecomposable_count(), 2);
    assert!(p.certificate.member());
    assert!(class_b_report(&p).passed());
    assert!(matches!(f_map(&desk::a2::<F>(), 2, 6, 1), Err(Error::Hypothesis(_))));
}

#[test]
fn g_of_nak2_pair() {
    let g = g_map(&nak2_pair(), 6).unwrap();
    assert_eq!(g.end.algebra.dim(), 5);
    assert!(g.u.member);
    assert!(class_u_report(&g.u).passed());
    let iso = find_algebra_isomorphism(&g.end.algebra, &desk::aus2::<F>(), 1, 64).unwrap();
    assert!(matches!(iso, AlgebraIso::Found(_)));
    let t = desk::a2::<F>();
    let bad = check_class_b(&t, &regular_module(&t), 2, 1).unwrap();
    assert!(!bad.certificate.member());
    assert!(matches!(g_map(&bad, 6), Err(Error::Hypothesis(_))));
}

#[test]
fn roundtrips_pass() {
    let a = desk::aus2::<F>();
    let r = roundtrip(RoundtripInput::Algebra(&a), 2, 6, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.witness("dimension precheck").unwrap().detail["source"], 5);
    let p = nak2_pair();
    let r = roundtrip(RoundtripInput::Pair(&p), 2, 6, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    let fp = f_map(&a, 2, 6, 1).unwrap();
    assert!(roundtrip(RoundtripInput::Pair(&fp), 2, 6, 1).unwrap().passed());
}

#[test]
fn structure_props_of_aus2() {
    let r = verify_structure_props(&desk::aus2::<F>(), 2, 6, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    let pairs = &r.witness("assignment is a bijection onto non-projective injectives").unwrap().detail["pairs"];
    assert_eq!(pairs.as_array().unwrap().len(), 1);
}

#[test]
fn functor_lemmas_on_nak2() {
    let t = desk::nak2::<F>();
    let cat = saturate_catalog(&t, 10, 1).unwrap();
    let p = nak2_pair();
    let r = verify_functor_lemmas(&t, &p.q, &cat, 2).unwrap();
    assert!(r.passed(), "{r:?}");
    let w = r.witness("hom dimensions preserved (generator)").unwrap();
    assert_eq!(w.detail["pairs"].as_array().unwrap().len(), 4);
    assert!(r.witness("hom dimensions preserved (cogenerator (dual))").is_some());
    assert_eq!(r.witness("ext symmetry").unwrap().detail["vacuous"], true);
}

#[test]
fn higher_ext_symmetry_with_nonempty_range() {
    for t in [desk::aus2::<F>(), desk::a3()] {
        let cat = saturate_catalog(&t, 20, 1).unwrap();
        let m = sum_modules(&t, &cat.modules).unwrap();
        for n in [3, 4] {
            let r = verify_functor_lemmas(&t, &m, &cat, n).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.witness("ext symmetry instances").unwrap().detail.as_u64().unwrap() > 0);
        }
    }
}

#[test]
fn gproj_equivalence_for_nak2_pair() {
    let p = nak2_pair();
    let cat_t = saturate_catalog(&p.base, 10, 1).unwrap();
    let g = g_map(&p, 6).unwrap();
    let cat_s = saturate_catalog(&g.end.algebra, 20, 1).unwrap();
    let r = verify_gproj_equivalence(&p, &cat_t, &g.end, &cat_s).unwrap();
    assert!(r.passed(), "{r:?}");
    let hom = &r.witness("hom dimensions preserved").unwrap().detail["pairs"];
    assert_eq!(hom.as_array().unwrap().len(), 4);
    assert_eq!(r.witness("dense").unwrap().detail["positives"], 2);
}

#[test]
fn opposite_closure() {
    assert!(verify_opposite_closure(&nak2_pair(), 1).unwrap().passed());
    let fp = f_map(&desk::aus2::<F>(), 2, 6, 1).unwrap();
    assert!(verify_opposite_closure(&fp, 1).unwrap().passed());
}

#[test]
fn characterization_nak2() {
    let t = desk::nak2::<F>();
    let cat = saturate_catalog(&t, 10, 1).unwrap();
    let c = verify_homological_characterization(&t, 2, &cat, 6, 1).unwrap();
    assert!(c.report.passed(), "{:?}", c.report);
    assert_eq!(c.candidates.len(), 1);
    assert_eq!(c.infima, [Some(DimValue::Exact(2)); 3]);
    assert!(c.dtr_selfinjective);
}

#[test]
fn characterization_a2_and_aus2() {
    // representation-finite: the sum of all indecomposables is closed under both translates
    for t in [desk::a2::<F>(), desk::aus2()] {
        let cat = saturate_catalog(&t, 20, 1).unwrap();
        let c = verify_homological_characterization(&t, 2, &cat, 6, 1).unwrap();
        assert!(c.report.passed(), "{:?}", c.report);
        assert!(c.dtr_selfinjective);
        assert_eq!(c.infima[2], Some(DimValue::Exact(2)));
    }
    let kr = saturate_catalog(&desk::kronecker::<F>(), 6, 1).unwrap();
    let c = verify_homological_characterization(&desk::kronecker::<F>(), 2, &kr, 6, 1).unwrap();
    assert!(matches!(c.report.verdict, crate::report::Verdict::Skipped { .. }));
}

#[test]
fn abelian_gproj_battery() {
    let a = desk::aus2::<F>();
    let cat = saturate_catalog(&a, 20, 1).unwrap();
    let r = verify_abelian_gproj_n2(&a, &cat, 6, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    let rows = &r.witness("reject decomposition").unwrap().detail["modules"];
    assert_eq!(rows.as_array().unwrap().len(), 5);
    let n = desk::nak2::<F>();
    let ncat = saturate_catalog(&n, 10, 1).unwrap();
    let r = verify_abelian_gproj_n2(&n, &ncat, 6, 1).unwrap();
    assert!(matches!(r.verdict, crate::report::Verdict::Skipped { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_do_not_depend_on_the_seed(seed in 0u64..1000) {
        let a = desk::aus2::<F>();
        let r1 = verify_structure_props(&a, 2, 6, seed).unwrap();
        let r2 = verify_structure_props(&a, 2, 6, seed + 1).unwrap();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(&r1, &verify_structure_props(&a, 2, 6, seed).unwrap());
        prop_assert!(r1.passed());
        let p = f_map(&a, 2, 6, seed).unwrap();
        prop_assert!(p.certificate.member());
        let g = g_map(&p, 6).unwrap();
        prop_assert!(g.u.member);
    }

    #[test]
    fn f_after_g_stays_in_class(seed in 0u64..1000) {
        let g = g_map(&nak2_pair(), 6).unwrap();
        let p = f_map(&g.end.algebra, 2, 6, seed).unwrap();
        prop_assert!(p.certificate.member());
        prop_assert!(find_algebra_isomorphism(&p.base, &desk::nak2::<F>(), seed, 64).unwrap().is_found());
    }
}
