//! `Ext` dimensions from minimal projective resolutions.

use super::{proj_resolution, ProjMap};
use crate::error::Result;
use crate::exactla::{Field, Matrix};
use crate::repmod::Module;

/// The cochain map `Hom(P_k, n) -> Hom(P_{k+1}, n)` for `d : P_{k+1} -> P_k`, with
/// `Hom(⊕ P_t, n)` identified with `⊕ e_t n`.
fn cochain<F: Field>(d: &ProjMap<F>, n: &Module<F>, spaces: &[Matrix<F>], coords: &[Matrix<F>]) -> Matrix<F> {
    let rows: Vec<usize> = d.src.iter().map(|&s| spaces[s].cols()).collect();
    let cols: Vec<usize> = d.dst.iter().map(|&t| spaces[t].cols()).collect();
    let mut m = Matrix::zeros(rows.iter().sum(), cols.iter().sum());
    let mut r0 = 0;
    for (l, &s) in d.src.iter().enumerate() {
        let mut c0 = 0;
        for (k, &t) in d.dst.iter().enumerate() {
            let blk = &(&coords[s] * &n.act(&d.comps[l][k])) * &spaces[t];
            m.set_block(r0, c0, &blk);
            c0 += cols[k];
        }
        r0 += rows[l];
    }
    m
}

/// `dim Ext^i(m, n)` for `i = 0..=upto`.
pub fn ext_dims<F: Field>(m: &Module<F>, n: &Module<F>, upto: usize) -> Result<Vec<usize>> {
    m.require_same_algebra(n, "ext")?;
    let s = m.algebra().skeleton()?;
    let spaces: Vec<Matrix<F>> = s.idempotents.iter().map(|e| n.act(e).column_space()).collect();
    let coords: Vec<Matrix<F>> =
        spaces.iter().map(|b| b.left_inverse().unwrap_or_else(|| Matrix::zeros(0, n.dim()))).collect();
    let r = proj_resolution(m, upto + 1)?;
    let dim_c: Vec<usize> = r.terms.iter().map(|t| t.iter().map(|&v| spaces[v].cols()).sum()).collect();
    let ranks: Vec<usize> = r.differentials.iter().map(|d| cochain(d, n, &spaces, &coords).rank()).collect();
    Ok((0..=upto)
        .map(|i| {
            let kernel = dim_c[i] - ranks[i];
            let image = if i == 0 { 0 } else { ranks[i - 1] };
            kernel - image
        })
        .collect())
}

pub fn ext_dim<F: Field>(m: &Module<F>, n: &Module<F>, i: usize) -> Result<usize> {
    Ok(ext_dims(m, n, i)?[i])
}
