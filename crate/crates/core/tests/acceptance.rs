//! Prints one line per acceptance criterion and exits non-zero if any fails.

use std::sync::Arc;

use domdim::algebra::{find_algebra_isomorphism, tensor_algebra, Algebra, Quiver};
use domdim::correspondence::{
    check_class_b, f_map, g_map, roundtrip, verify_abelian_gproj_n2, verify_functor_lemmas, verify_gproj_equivalence,
    verify_homological_characterization, verify_structure_props, RoundtripInput,
};
use domdim::desk;
use domdim::exactla::{Fp, Matrix};
use domdim::homological::{ar_translate, ext_dim, higher_translate, is_projective, transpose, Sign};
use domdim::invariants::{
    dominant_dimension, ext_vanishing_against_regular, gproj_test, injective_dimension_regular, saturate_catalog,
    Catalog, DimValue,
};
use domdim::repmod::{
    decompose, dual_module, injective, is_isomorphic, regular_module, simple, sum_modules,
};
use domdim::tensorlab::{verify_dtr_tensor_formula, verify_duality_tensor, verify_dynkin_criterion, OrbitOutcome};

type F = Fp<101>;
type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: domdim::error::Error) -> String {
    e.to_string()
}

fn catalog(a: &Arc<Algebra<F>>) -> Result<Catalog<F>, String> {
    saturate_catalog(a, 20, 1).map_err(err)
}

fn nak2_pair() -> Result<domdim::correspondence::CorrespondencePair<F>, String> {
    let t = desk::nak2::<F>();
    let q = sum_modules(&t, &[regular_module(&t), simple(&t, 0).map_err(err)?]).map_err(err)?;
    check_class_b(&t, &q, 2, 1).map_err(err)
}

fn criterion_1() -> Outcome {
    let a = desk::aus2::<F>();
    ensure(a.dim() == 5, "AUS2 has dimension 5")?;
    let dd = dominant_dimension(&a, 6).map_err(err)?;
    let id = injective_dimension_regular(&a, 6).map_err(err)?;
    ensure(dd.value == DimValue::Exact(2), format!("dominant dimension {}", dd.value))?;
    ensure(id.value == DimValue::Exact(2), format!("injective dimension {}", id.value))?;
    dd.witness.verify().map_err(err)?;
    id.witness.verify().map_err(err)?;
    ensure(dd.witness.minimal && id.witness.minimal, "witness resolutions are minimal")?;
    Ok(format!("dom.dim = 2, inj.dim = 2, witness terms {:?}", id.witness.term_vertices))
}

fn criterion_2() -> Outcome {
    let a = desk::aus2::<F>();
    let p = f_map(&a, 2, 6, 1).map_err(err)?;
    ensure(p.base.dim() == 2, "T has dimension 2")?;
    ensure(find_algebra_isomorphism(&p.base, &desk::nak2::<F>(), 1, 64).map_err(err)?.is_found(), "T ≅ NAK2")?;
    ensure(p.q.dim() == 3, "Q has dimension 3")?;
    let k = decompose(&p.q, 1).map_err(err)?.indecomposable_count();
    ensure(k == 2, format!("Q has {k} indecomposable summands"))?;
    let c = &p.certificate;
    ensure(c.gen_cogen(), "generator-cogenerator")?;
    ensure(c.orthogonal(), "self-orthogonal")?;
    ensure(c.translate_closed, "closed under the higher translates")?;
    Ok("T ≅ NAK2 (dim 2), Q dim 3 with 2 summands, all three class conditions".into())
}

fn criterion_3() -> Outcome {
    let a = desk::aus2::<F>();
    let r = roundtrip(RoundtripInput::Algebra(&a), 2, 6, 1).map_err(err)?;
    ensure(r.passed(), format!("algebra roundtrip: {:?}", r.counterexample))?;
    let p = nak2_pair()?;
    let r2 = roundtrip(RoundtripInput::Pair(&p), 2, 6, 1).map_err(err)?;
    ensure(r2.passed(), format!("pair roundtrip: {:?}", r2.counterexample))?;
    Ok(format!("algebra side {} checks, pair side {} checks", r.witnesses.len(), r2.witnesses.len()))
}

fn criterion_4() -> Outcome {
    let r = verify_structure_props(&desk::aus2::<F>(), 2, 6, 1).map_err(err)?;
    ensure(r.passed(), format!("{:?}", r.counterexample))?;
    let pairs = r
        .witness("assignment is a bijection onto non-projective injectives")
        .and_then(|w| w.detail["pairs"].as_array())
        .map_or(0, Vec::len);
    ensure(pairs == 1, format!("{pairs} projective/injective pairs"))?;
    Ok("1 ↔ 1 bijection, both decompositions realised by explicit isomorphisms".into())
}

fn criterion_5() -> Outcome {
    let a = desk::aus2::<F>();
    let cat = catalog(&a)?;
    ensure(cat.complete, "AUS2 catalog is complete")?;
    let mut positives = 0;
    for m in &cat.modules {
        let g = gproj_test(m, 2).map_err(err)?.value;
        let e = ext_vanishing_against_regular(m, 4).map_err(err)?;
        ensure(g == e, "Gproj test agrees with Ext vanishing")?;
        ensure(g == is_projective(m).map_err(err)?, "positives are the projectives")?;
        positives += usize::from(g);
    }
    ensure(positives == 2, format!("{positives} positives"))?;
    let p = nak2_pair()?;
    let cat_t = saturate_catalog(&p.base, 10, 1).map_err(err)?;
    ensure(cat_t.len() == 2, "NAK2 catalog has 2 modules")?;
    let g = g_map(&p, 6).map_err(err)?;
    let cat_s = catalog(&g.end.algebra)?;
    let r = verify_gproj_equivalence(&p, &cat_t, &g.end, &cat_s).map_err(err)?;
    ensure(r.passed(), format!("{:?}", r.counterexample))?;
    Ok(format!("{} catalog modules, 2 positives, equivalence onto them", cat.len()))
}

fn criterion_6() -> Outcome {
    let t = desk::nak2::<F>();
    let cat = saturate_catalog(&t, 10, 1).map_err(err)?;
    ensure(cat.complete && cat.len() == 2, "complete catalog of 2")?;
    let c = verify_homological_characterization(&t, 2, &cat, 6, 1).map_err(err)?;
    ensure(c.candidates.len() == 1, format!("{} candidates", c.candidates.len()))?;
    ensure(c.infima == [Some(DimValue::Exact(2)); 3], format!("infima {:?}", c.infima))?;
    ensure(c.dtr_selfinjective, "condition (1)")?;
    ensure(c.report.passed(), format!("{:?}", c.report.counterexample))?;
    Ok("one candidate, infima 2/2/2, all four conditions agree".into())
}

fn criterion_7() -> Outcome {
    let nak = desk::nak2::<F>();
    let mut lines = Vec::new();
    for (name, q, dynkin) in [
        ("A2", Quiver::new(2, &[(0, 1)]), true),
        ("A3", Quiver::new(3, &[(0, 1), (1, 2)]), true),
        ("Kronecker", Quiver::new(2, &[(0, 1), (0, 1)]), false),
    ] {
        let c = verify_dynkin_criterion(&q, &nak, 25, 1).map_err(err)?;
        ensure(c.report.passed(), format!("{name}: {:?}", c.report.counterexample))?;
        if dynkin {
            ensure(c.orbits.iter().all(|o| o.is_closed()), format!("{name}: all orbits close"))?;
            ensure(c.class_b == Some(true), format!("{name}: saturated module is in the class"))?;
        } else {
            let over = c.orbits.iter().any(|o| matches!(o.outcome, OrbitOutcome::BoundExceeded { bound: 25 }));
            ensure(over, format!("{name}: an orbit exceeds the bound"))?;
        }
        lines.push(format!("{name}: {:?}", c.orbits.iter().map(|o| o.outcome).collect::<Vec<_>>()));
    }
    let a2 = desk::a2::<F>();
    let gamma = tensor_algebra(&a2, &nak);
    for i in 0..2 {
        let r = verify_dtr_tensor_formula(&gamma, &injective(&a2, i).map_err(err)?, 0, 3, 25, 1).map_err(err)?;
        ensure(r.passed(), format!("translate formula on injective {i}"))?;
    }
    Ok(lines.join("; "))
}

fn random_invertible(n: usize, seed: u64) -> Matrix<F> {
    let mut rng = domdim::seeded_rng(seed);
    loop {
        let g = Matrix::<F>::random(n, n, &mut rng);
        if g.inverse().is_some() {
            return g;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut counts = [0usize; 6];
    for seed in 0..20u64 {
        let mut rng = domdim::seeded_rng(seed);
        let m = Matrix::<F>::random(3 + (seed as usize % 4), 5, &mut rng);
        let m = &m * &Matrix::<F>::random(5, 6, &mut rng);
        ensure(m.rank() + m.kernel().cols() == m.cols(), "rank-nullity")?;
        counts[0] += 1;
    }
    for a in [desk::a2::<F>(), desk::a3(), desk::nak2(), desk::aus2(), desk::d4()] {
        let cat = catalog(&a)?;
        for m in &cat.modules {
            let dd = dual_module(&dual_module(m));
            ensure(is_isomorphic(&dd, m, 1).map_err(err)?, "D D M ≅ M")?;
            counts[1] += 1;
            if is_projective(m).map_err(err)? {
                continue;
            }
            let tt = transpose(&transpose(m).map_err(err)?).map_err(err)?;
            ensure(is_isomorphic(&tt, m, 1).map_err(err)?, "Tr Tr M ≅ M")?;
            let back = ar_translate(&ar_translate(m, Sign::Plus).map_err(err)?.output, Sign::Minus).map_err(err)?.output;
            ensure(is_isomorphic(&back, m, 1).map_err(err)?, "τ⁻ τ M ≅ M")?;
            counts[2] += 1;
        }
        let total = sum_modules(&a, &cat.modules).map_err(err)?;
        let r = verify_functor_lemmas(&a, &total, &cat, 2).map_err(err)?;
        ensure(r.passed(), format!("fully faithful: {:?}", r.counterexample))?;
        counts[3] += cat.len() * cat.len();
    }
    for seed in 0..10u64 {
        let m = desk::random_module(&desk::a2::<F>(), seed).map_err(err)?;
        let n = desk::random_module(&desk::nak2::<F>(), seed + 100).map_err(err)?;
        let n = n.change_basis(&random_invertible(n.dim(), seed)).map_err(err)?;
        ensure(verify_duality_tensor(&m, &n).map_err(err)?.passed(), "σ is an isomorphism")?;
        counts[4] += 1;
    }
    let aus = desk::aus2::<F>();
    let cat = catalog(&aus)?;
    let r = verify_abelian_gproj_n2(&aus, &cat, 6, 1).map_err(err)?;
    ensure(r.passed(), format!("torsion battery: {:?}", r.counterexample))?;
    let rows = r.witness("reject decomposition").and_then(|w| w.detail["modules"].as_array()).map_or(0, Vec::len);
    ensure(rows == cat.len(), "torsion decomposition of every catalog module")?;
    counts[5] = rows;
    Ok(format!(
        "rank-nullity {}, D D {}, Tr Tr and τ⁻τ {}, hom pairs {}, σ pairs {}, torsion rows {}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn criterion_9() -> Outcome {
    let mut instances = 0;
    for a in [desk::aus2::<F>(), desk::a3()] {
        let cat = catalog(&a)?;
        let total = sum_modules(&a, &cat.modules).map_err(err)?;
        let r2 = verify_functor_lemmas(&a, &total, &cat, 2).map_err(err)?;
        ensure(r2.witness("ext symmetry").is_some_and(|w| w.detail["vacuous"] == true), "vacuous range at n = 2")?;
        for n in [3, 4] {
            let r = verify_functor_lemmas(&a, &total, &cat, n).map_err(err)?;
            ensure(r.passed(), format!("ext symmetry at n = {n}"))?;
            instances += r.witness("ext symmetry instances").and_then(|w| w.detail.as_u64()).unwrap_or(0);
        }
        let lam = regular_module(&a);
        for x in &cat.modules {
            if ext_dim(x, &lam, 1).map_err(err)? != 0 {
                continue;
            }
            let box2 = higher_translate(x, 2).map_err(err)?.output;
            for y in &cat.modules {
                ensure(ext_dim(x, y, 1).map_err(err)? == ext_dim(y, &box2, 1).map_err(err)?, "Ext¹(X, Y) = Ext¹(Y, □²X)")?;
            }
        }
    }
    ensure(instances > 0, "non-vacuous symmetry range")?;
    Ok(format!("{instances} higher ext symmetry instances, □² identity on catalogs"))
}

fn report(n: usize, out: &Outcome) -> bool {
    match out {
        Ok(detail) => {
            println!("criterion {n}: PASS  {detail}");
            true
        }
        Err(why) => {
            println!("criterion {n}: FAIL  {why}");
            false
        }
    }
}

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        if !report(i + 1, &c()) {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
