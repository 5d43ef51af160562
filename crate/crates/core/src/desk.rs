//! Named small algebras used as fixtures throughout.

use std::sync::Arc;

use crate::algebra::{build_path_algebra_quotient, Algebra, Quiver, QuiverArrow, QuiverPresentation, Relation};
use rand::Rng;

use crate::error::Result;
use crate::exactla::{Field, Matrix};
use crate::repmod::{direct_sum, injective, projective, radical_subspace, Module};
use crate::seeded_rng;

/// Path algebra with monomial zero relations; arrows are `(source, target, label)`.
pub fn presentation<F: Field>(
    vertex_count: usize,
    arrows: &[(usize, usize, &str)],
    zero_paths: &[&[usize]],
    bound: usize,
) -> QuiverPresentation<F> {
    let quiver = Quiver {
        vertex_count,
        arrows: arrows
            .iter()
            .map(|&(source, target, label)| QuiverArrow { source, target, label: label.to_string() })
            .collect(),
    };
    let relations = zero_paths.iter().map(|p| Relation { terms: vec![(F::one(), p.to_vec())] }).collect();
    QuiverPresentation { quiver, relations, nilpotency_bound: bound }
}

/// Path algebra of a quiver given by `(source, target)` pairs, arrows labelled `a0, a1, ...`.
pub fn path_algebra<F: Field>(
    vertex_count: usize,
    arrows: &[(usize, usize)],
    zero_paths: &[&[usize]],
    bound: usize,
) -> Result<Arc<Algebra<F>>> {
    let labels: Vec<String> = (0..arrows.len()).map(|k| format!("a{k}")).collect();
    let arrows: Vec<(usize, usize, &str)> =
        arrows.iter().zip(&labels).map(|(&(s, t), l)| (s, t, l.as_str())).collect();
    build_path_algebra_quotient(&presentation(vertex_count, &arrows, zero_paths, bound))
}

fn build<F: Field>(p: QuiverPresentation<F>) -> Arc<Algebra<F>> {
    build_path_algebra_quotient(&p).expect("fixture presentation is admissible")
}

/// `k[x]/(x^2)`: one loop `a` with `a.a = 0`.
pub fn nak2<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(1, &[(0, 0, "a")], &[&[0, 0]], 2))
}

/// Path algebra of `0 -> 1`.
pub fn a2<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(2, &[(0, 1, "a")], &[], 2))
}

/// Linear `0 -> 1 -> 2`.
pub fn a3<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(3, &[(0, 1, "a"), (1, 2, "b")], &[], 3))
}

/// `D4` with the three outer vertices as sources.
pub fn d4<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(4, &[(1, 0, "a"), (2, 0, "b"), (3, 0, "c")], &[], 2))
}

/// Kronecker quiver: two arrows `0 -> 1`.
pub fn kronecker<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(2, &[(0, 1, "a"), (0, 1, "b")], &[], 2))
}

/// Three arrows `0 -> 1`.
pub fn three_kronecker<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(2, &[(0, 1, "a"), (0, 1, "b"), (0, 1, "c")], &[], 2))
}

/// Auslander algebra of `k[x]/(x^2)`: `a: 0 -> 1`, `b: 1 -> 0`, with `a` then `b` zero.
pub fn aus2<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(2, &[(0, 1, "a"), (1, 0, "b")], &[&[0, 1]], 3))
}

/// Semisimple `F x F`.
pub fn split_pair<F: Field>() -> Arc<Algebra<F>> {
    build(presentation(2, &[], &[], 2))
}

/// A nonzero module built from a seed: a submodule of a small sum of indecomposable projectives
/// and injectives, possibly divided by a cyclic submodule.
pub fn random_module<F: Field>(a: &Arc<Algebra<F>>, seed: u64) -> Result<Module<F>> {
    let mut rng = seeded_rng(seed);
    let n = a.skeleton()?.vertex_count();
    loop {
        let count = rng.gen_range(1..=2);
        let mut parts = Vec::with_capacity(count);
        for _ in 0..count {
            let v = rng.gen_range(0..n);
            parts.push(if rng.gen_bool(0.5) { projective(a, v)? } else { injective(a, v)? });
        }
        let total = direct_sum(a, &parts)?.module;
        let gens = Matrix::random(total.dim(), rng.gen_range(1..=2), &mut rng);
        let (mut m, _) = total.generated_submodule(&gens)?;
        if rng.gen_bool(0.5) {
            let rad = radical_subspace(&m)?;
            if rad.cols() > 0 {
                let (_, sub) = m.generated_submodule(&(&rad * &Matrix::random(rad.cols(), 1, &mut rng)))?;
                m = m.quotient(&sub)?.0;
            }
        }
        if !m.is_zero() {
            return Ok(m);
        }
    }
}
