//! Independent oracles shared by unit tests.

use crate::exactla::{Field, Matrix};
use crate::homological::{strip, SummandKind};
use crate::repmod::{direct_sum, dual_module, hom_basis, regular_module, socle_subspace, Module};

/// Socle multiplicities per vertex.
pub fn socle_vector<F: Field>(m: &Module<F>) -> Vec<usize> {
    let soc = socle_subspace(m).unwrap();
    let (s, _) = m.submodule(&soc).unwrap();
    s.dimension_vector().unwrap()
}

/// Cokernel of the (non-minimal) embedding of `m` into copies of `D(A_A)` given by a hom basis,
/// split into its part without injective summands and the removed injective multiplicities,
/// together with the number of copies used.
pub fn big_cokernel<F: Field>(m: &Module<F>) -> (Module<F>, Vec<usize>, usize) {
    let a = m.algebra().clone();
    let n = a.skeleton().unwrap().vertex_count();
    let dl = dual_module(&regular_module(&a.op()));
    let homs = hom_basis(m, &dl).unwrap();
    let copies = vec![dl.clone(); homs.len()];
    let e = direct_sum(&a, &copies).unwrap().module;
    let refs: Vec<&Matrix<F>> = homs.iter().collect();
    let emb = Matrix::vstack_cols(m.dim(), &refs);
    assert_eq!(emb.rank(), m.dim());
    let (c, _) = e.quotient(&emb).unwrap();
    let r = strip(&c, SummandKind::Injective).unwrap();
    let mut removed = vec![0; n];
    for (v, k) in r.removed {
        removed[v] += k;
    }
    (r.module, removed, homs.len())
}

/// Socle vectors of the terms of the minimal injective resolution of `m`, computed from
/// non-minimal embeddings: `E(X)` has the socle of `X`, and the big cokernel differs from the
/// minimal cosyzygy by the injectives `D(A)^h / E(X)`.
pub fn injective_resolution_socles<F: Field>(m: &Module<F>, terms: usize) -> Vec<Vec<usize>> {
    let n = m.algebra().skeleton().unwrap().vertex_count();
    let mut x = m.clone();
    let mut extra = vec![0usize; n];
    let mut out = Vec::new();
    for _ in 0..terms {
        let soc = if x.is_zero() { vec![0; n] } else { socle_vector(&x) };
        out.push(soc.iter().zip(&extra).map(|(a, b)| a + b).collect());
        if x.is_zero() {
            extra = vec![0; n];
            continue;
        }
        let (next, removed, h) = big_cokernel(&x);
        extra = (0..n).map(|v| removed[v] + soc[v] - h).collect();
        x = next;
    }
    out
}
