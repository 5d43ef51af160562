//! Spaces of module homomorphisms.

use super::{Module, ModuleMap};
use crate::error::Result;
use crate::exactla::{Field, Matrix};

/// Adds the coefficients of `X_t a - b X_s` (with `X_t`, `X_s` stored row-major at the given
/// column offsets) to the equation rows starting at `row0`.
#[allow(clippy::too_many_arguments)]
fn intertwine_rows<F: Field>(
    eq: &mut Matrix<F>,
    row0: usize,
    a: &Matrix<F>,
    b: &Matrix<F>,
    t_off: usize,
    t_cols: usize,
    s_off: usize,
    s_cols: usize,
) {
    // X_t: rows(b) x a.rows(), X_s: b.cols() x a.cols()
    let (nr, nc) = (b.rows(), a.cols());
    for r in 0..nr {
        for c in 0..nc {
            let row = row0 + r * nc + c;
            for s in 0..a.rows() {
                let v = a[(s, c)];
                if !v.is_zero() {
                    eq[(row, t_off + r * t_cols + s)] += v;
                }
            }
            for s in 0..b.cols() {
                let v = b[(r, s)];
                if !v.is_zero() {
                    eq[(row, s_off + s * s_cols + c)] -= v;
                }
            }
        }
    }
}

/// Basis of `Hom(m, n)` from the stacked system `X act_m(b) = act_n(b) X` over all basis elements.
pub fn hom_space_naive<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    m.require_same_algebra(n, "hom space")?;
    let (dm, dn) = (m.dim(), n.dim());
    let k = m.algebra().dim();
    let block = dm * dn;
    let mut eq = Matrix::zeros(k * block, block);
    for b in 0..k {
        intertwine_rows(&mut eq, b * block, m.action(b), n.action(b), 0, dm, 0, dm);
    }
    Ok(unpack(&eq.kernel(), dn, dm))
}

fn unpack<F: Field>(kernel: &Matrix<F>, rows: usize, cols: usize) -> Vec<Matrix<F>> {
    (0..kernel.cols()).map(|c| Matrix::new(rows, cols, kernel.column(c))).collect()
}

/// Basis of `Hom(m, n)` as families of vertex maps `e_i m -> e_i n` commuting with the arrows.
pub fn hom_space_vertex<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    m.require_same_algebra(n, "hom space")?;
    let s = m.skeleton()?;
    let (vm, vn) = match (m.view(), n.view()) {
        (Some(a), Some(b)) => (a, b),
        _ => return hom_space_naive(m, n),
    };
    let nv = s.vertex_count();
    let mut offs = vec![0];
    for v in 0..nv {
        offs.push(offs[v] + vm.dim_at(v) * vn.dim_at(v));
    }
    let unknowns = offs[nv];
    let rows: usize = s.arrows.iter().map(|a| vn.dim_at(a.target) * vm.dim_at(a.source)).sum();
    let mut eq = Matrix::zeros(rows, unknowns);
    let mut row0 = 0;
    for (k, arr) in s.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        intertwine_rows(
            &mut eq,
            row0,
            &vm.arrow_blocks[k],
            &vn.arrow_blocks[k],
            offs[j],
            vm.dim_at(j),
            offs[i],
            vm.dim_at(i),
        );
        row0 += vn.dim_at(j) * vm.dim_at(i);
    }
    let kernel = eq.kernel();
    let mut out = Vec::with_capacity(kernel.cols());
    for c in 0..kernel.cols() {
        let x = kernel.column(c);
        let mut diag = Matrix::zeros(n.dim(), m.dim());
        for v in 0..nv {
            let (r, cc) = (vn.dim_at(v), vm.dim_at(v));
            let blk = Matrix::new(r, cc, x[offs[v]..offs[v + 1]].to_vec());
            diag.set_block(vn.offsets[v], vm.offsets[v], &blk);
        }
        out.push(&(&vn.u * &diag) * &vm.u_inv);
    }
    Ok(out)
}

/// Basis of `Hom(m, n)` as matrices; uses the vertex decomposition when available.
pub fn hom_basis<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    m.require_same_algebra(n, "hom space")?;
    if m.view().is_some() && n.view().is_some() {
        hom_space_vertex(m, n)
    } else {
        hom_space_naive(m, n)
    }
}

/// Basis of `Hom(m, n)` as module maps.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<ModuleMap<F>>> {
    Ok(hom_basis(m, n)?
        .into_iter()
        .map(|matrix| ModuleMap { source: m.clone(), target: n.clone(), matrix })
        .collect())
}

pub fn hom_dim<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}
