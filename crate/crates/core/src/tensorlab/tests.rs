use super::*;
use crate::desk;
use crate::exactla::Fp;
use num_traits::One;
use proptest::prelude::*;

type F = Fp<101>;

fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::new(n, arrows)
}

/// Tits form `q(x) = Σ x_i² − Σ_{arrows} x_s x_t` is positive definite, by leading minors of its
/// symmetric Gram matrix (fraction-free elimination over the integers).
fn tits_form_positive_definite(q: &Quiver) -> bool {
    let n = q.vertex_count;
    let mut g = vec![vec![0i128; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in &q.arrows {
        g[a.source][a.target] -= 1;
        g[a.target][a.source] -= 1;
    }
    let mut prev = 1i128;
    for k in 0..n {
        if g[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                g[i][j] = (g[i][j] * g[k][k] - g[i][k] * g[k][j]) / prev;
            }
        }
        prev = g[k][k];
    }
    true
}

fn dynkin_quivers() -> Vec<(Quiver, DynkinType)> {
    vec![
        (quiver(1, &[]), DynkinType::A(1)),
        (quiver(2, &[(0, 1)]), DynkinType::A(2)),
        (quiver(4, &[(1, 0), (1, 2), (3, 2)]), DynkinType::A(4)),
        (quiver(4, &[(1, 0), (2, 0), (3, 0)]), DynkinType::D(4)),
        (quiver(5, &[(0, 1), (1, 2), (3, 2), (4, 2)]), DynkinType::D(5)),
        (quiver(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)]), DynkinType::E(6)),
        (quiver(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 3)]), DynkinType::E(7)),
        (quiver(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (7, 2)]), DynkinType::E(8)),
    ]
}

fn non_dynkin_quivers() -> Vec<Quiver> {
    vec![
        quiver(2, &[(0, 1), (0, 1)]),
        quiver(2, &[(0, 1), (0, 1), (0, 1)]),
        quiver(5, &[(1, 0), (2, 0), (3, 0), (4, 0)]),
        quiver(4, &[(0, 1), (1, 2), (0, 3), (3, 2)]),
        quiver(7, &[(0, 1), (1, 2), (3, 2), (3, 4), (5, 2), (5, 6)]),
        quiver(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (8, 2)]),
    ]
}

#[test]
fn dynkin_types() {
    for (q, t) in dynkin_quivers() {
        assert_eq!(is_dynkin(&q).unwrap(), Some(t));
        assert!(tits_form_positive_definite(&q), "{t}");
    }
    for q in non_dynkin_quivers() {
        assert_eq!(is_dynkin(&q).unwrap(), None);
        assert!(!tits_form_positive_definite(&q));
    }
    assert_eq!(DynkinType::E(6).to_string(), "E6");
}

#[test]
fn dynkin_requires_connected_acyclic() {
    assert!(matches!(is_dynkin(&quiver(3, &[(0, 1)])), Err(Error::Hypothesis(_))));
    assert!(matches!(is_dynkin(&quiver(2, &[(0, 1), (1, 0)])), Err(Error::Hypothesis(_))));
    assert!(matches!(is_dynkin(&quiver(1, &[(0, 0)])), Err(Error::Hypothesis(_))));
}

/// Coxeter transformation `Φ = −Cᵀ C⁻¹` from the dimension vectors of the projectives (columns of
/// `C`); `dim τM = Φ dim M` for non-projective indecomposable `M` over a hereditary algebra.
fn coxeter(a: &Arc<Algebra<F>>) -> Matrix<F> {
    let n = a.skeleton().unwrap().vertex_count();
    let cols: Vec<Vec<F>> = (0..n)
        .map(|v| projective(a, v).unwrap().dimension_vector().unwrap().into_iter().map(|d| F::from_i64(d as i64)).collect())
        .collect();
    let c = Matrix::from_columns(n, &cols);
    (&c.transpose() * &c.inverse().unwrap()).scale(-F::one())
}

fn as_field(v: &[usize]) -> Vec<F> {
    v.iter().map(|&d| F::from_i64(d as i64)).collect()
}

#[test]
fn a2_orbits_close() {
    let a = desk::a2::<F>();
    let mut lengths = Vec::new();
    for i in 0..2 {
        let o = dtr_orbit(&injective(&a, i).unwrap(), 25).unwrap();
        assert!(o.is_closed());
        lengths.push(o.steps.len() - 1);
    }
    lengths.sort_unstable();
    // one injective is projective, the other is the simple at the source
    assert_eq!(lengths, vec![0, 2]);
    let o = dtr_orbit(&projective(&a, 0).unwrap(), 25).unwrap();
    assert_eq!(o.outcome, OrbitOutcome::Closed { steps: 0 });
    assert_eq!(o.steps[0].stripped, vec![(0, 1)]);
}

#[test]
fn orbit_dimension_vectors_follow_the_coxeter_matrix() {
    for a in [desk::a3::<F>(), desk::d4(), desk::kronecker()] {
        let phi = coxeter(&a);
        let n = a.skeleton().unwrap().vertex_count();
        for i in 0..n {
            let o = dtr_orbit(&injective(&a, i).unwrap(), 6).unwrap();
            for w in o.steps.windows(2) {
                // τ kills exactly the projectives
                if w[1].module.is_zero() {
                    continue;
                }
                assert_eq!(phi.mul_vec(&as_field(&w[0].dimension_vector)), as_field(&w[1].dimension_vector));
            }
        }
    }
}

#[test]
fn kronecker_preinjective_orbit_grows() {
    let a = desk::kronecker::<F>();
    let o = dtr_orbit(&injective(&a, 0).unwrap(), 5).unwrap();
    assert_eq!(o.outcome, OrbitOutcome::BoundExceeded { bound: 5 });
    assert_eq!(o.steps.len(), 6);
    let dims: Vec<usize> = o.steps.iter().map(|s| s.module.dim()).collect();
    assert!(dims.windows(2).all(|w| w[1] > w[0]), "{dims:?}");
    let capped = dtr_orbit_capped(&injective(&a, 0).unwrap(), 25, 8).unwrap();
    assert!(matches!(capped.outcome, OrbitOutcome::DimensionExceeded { dim, .. } if dim > 8));
}

#[test]
fn nakayama_permutations() {
    assert_eq!(nakayama_permutation(&desk::nak2::<F>()).unwrap(), vec![0]);
    assert_eq!(nakayama_permutation(&desk::split_pair::<F>()).unwrap(), vec![0, 1]);
    assert!(matches!(nakayama_permutation(&desk::a2::<F>()), Err(Error::Hypothesis(_))));
}

#[test]
fn translate_of_a_tensor_module() {
    for kq in [desk::a2::<F>(), desk::a3()] {
        let gamma = tensor_algebra(&kq, &desk::nak2());
        let n = kq.skeleton().unwrap().vertex_count();
        for i in 0..n {
            let r = verify_dtr_tensor_formula(&gamma, &injective(&kq, i).unwrap(), 0, 3, 25, 1).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
    let gamma = tensor_algebra(&desk::kronecker::<F>(), &desk::nak2());
    let r = verify_dtr_tensor_formula(&gamma, &injective(&gamma.factors().unwrap().0, 0).unwrap(), 0, 2, 4, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    let plain = desk::a2::<F>();
    assert!(matches!(
        verify_dtr_tensor_formula(&plain, &injective(&plain, 0).unwrap(), 0, 1, 2, 1),
        Err(Error::Contract(_))
    ));
}

#[test]
fn dynkin_criterion_family() {
    let nak = desk::nak2::<F>();
    for (q, dynkin) in [
        (quiver(2, &[(0, 1)]), true),
        (quiver(3, &[(0, 1), (1, 2)]), true),
        (quiver(2, &[(0, 1), (0, 1)]), false),
    ] {
        let c = verify_dynkin_criterion(&q, &nak, 25, 1).unwrap();
        assert!(c.report.passed(), "{:?}", c.report);
        assert_eq!(c.dynkin.is_some(), dynkin);
        assert_eq!(c.class_b, if dynkin { Some(true) } else { None });
    }
}

#[test]
fn dynkin_criterion_d4_and_wild() {
    let nak = desk::nak2::<F>();
    let d4 = verify_dynkin_criterion(&quiver(4, &[(1, 0), (2, 0), (3, 0)]), &nak, 25, 1).unwrap();
    assert!(d4.report.passed(), "{:?}", d4.report);
    assert_eq!(d4.class_b, Some(true));
    let wild = verify_dynkin_criterion(&quiver(2, &[(0, 1), (0, 1), (0, 1)]), &nak, 25, 1).unwrap();
    assert!(wild.report.passed(), "{:?}", wild.report);
    assert!(wild.orbits.iter().any(|o| !o.is_closed()));
}

#[test]
fn duality_commutes_with_tensor() {
    let r = verify_duality_tensor(&regular_module(&desk::a2::<F>()), &simple(&desk::nak2(), 0).unwrap()).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn injective_cogenerators() {
    for a in [desk::a2::<F>(), desk::nak2(), desk::kronecker()] {
        let r = verify_injective_cogenerator(&a, &desk::nak2()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    assert!(matches!(verify_injective_cogenerator(&desk::nak2::<F>(), &desk::a2()), Err(Error::Hypothesis(_))));
}

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (2usize..8).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..2),
        )
            .prop_map(|(n, parents, extra)| {
                let mut arrows: Vec<(usize, usize)> = parents.iter().enumerate().map(|(j, p)| (p.index(j + 1), j + 1)).collect();
                arrows.extend(extra.into_iter().filter(|(s, t)| s < t));
                Quiver::new(n, &arrows)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dynkin_matches_tits_form(q in arb_quiver()) {
        prop_assert_eq!(is_dynkin(&q).unwrap().is_some(), tits_form_positive_definite(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn orbits_do_not_depend_on_the_basis(seed in any::<u64>(), i in 0usize..3) {
        let a = desk::a3::<F>();
        let m = injective(&a, i).unwrap();
        let mut rng = crate::seeded_rng(seed);
        let g = loop {
            let g = Matrix::<F>::random(m.dim(), m.dim(), &mut rng);
            if g.inverse().is_some() { break g; }
        };
        let o1 = dtr_orbit(&m, 10).unwrap();
        let o2 = dtr_orbit(&m.change_basis(&g).unwrap(), 10).unwrap();
        prop_assert_eq!(o1.summary(), o2.summary());
        for (s1, s2) in o1.steps.iter().zip(&o2.steps) {
            prop_assert!(is_isomorphic(&s1.module, &s2.module, seed).unwrap());
        }
    }

    #[test]
    fn duality_on_random_pairs(s1 in 0u64..500, s2 in 0u64..500) {
        let m = desk::random_module(&desk::a2::<F>(), s1).unwrap();
        let n = desk::random_module(&desk::nak2::<F>(), s2).unwrap();
        let r = verify_duality_tensor(&m, &n).unwrap();
        prop_assert!(r.passed());
    }
}
