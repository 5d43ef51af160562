//! Krull-Schmidt decomposition and isomorphism testing.

use std::sync::Arc;

use rand::Rng;

use super::hom::hom_basis;
use super::{direct_sum, Module};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::seeded_rng;

const SPLIT_TRIES: usize = 64;
const RANDOM_ISO_TRIES: usize = 8;

/// One isomorphism class of indecomposable summands.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Module<F>,
    pub multiplicity: usize,
    /// One injection `module -> m` per copy.
    pub injections: Vec<Matrix<F>>,
    /// One projection `m -> module` per copy.
    pub projections: Vec<Matrix<F>>,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<Summand<F>>,
}

impl<F: Field> Decomposition<F> {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.module.dim() * s.multiplicity).sum()
    }

    pub fn indecomposable_count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn is_basic(&self) -> bool {
        self.summands.iter().all(|s| s.multiplicity == 1)
    }

    /// Representatives of the isomorphism classes.
    pub fn indecomposables(&self) -> Vec<Module<F>> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }

    /// `sum inj . proj`, which is the identity for a valid decomposition.
    pub fn idempotent_sum(&self, dim: usize) -> Matrix<F> {
        let mut acc = Matrix::zeros(dim, dim);
        for s in &self.summands {
            for (i, p) in s.injections.iter().zip(&s.projections) {
                acc = &acc + &(i * p);
            }
        }
        acc
    }
}

fn random_combination<F: Field, R: Rng + ?Sized>(basis: &[Matrix<F>], rng: &mut R) -> Matrix<F> {
    let coeffs = Matrix::<F>::random(1, basis.len(), rng);
    let mut acc = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (c, b) in coeffs.row(0).iter().zip(basis) {
        acc.add_scaled(b, *c);
    }
    acc
}

fn flatten<F: Field>(ms: &[Matrix<F>], len: usize) -> Matrix<F> {
    let cols: Vec<Vec<F>> = ms.iter().map(|m| m.data().to_vec()).collect();
    Matrix::from_columns(len, &cols)
}

/// Certifies that the endomorphism ring spanned by `end` is local: each basis element is a
/// scalar plus a nilpotent, and those nilpotent parts span a nilpotent subspace under products.
fn is_local_ring<F: Field>(end: &[Matrix<F>], d: usize) -> bool {
    let mut nil = Vec::with_capacity(end.len());
    for f in end {
        let roots = f.eigenvalues();
        if roots.len() != 1 {
            return false;
        }
        let n = f - &Matrix::scalar(d, roots[0]);
        if !n.is_nilpotent() {
            return false;
        }
        nil.push(n);
    }
    let len = d * d;
    let base = flatten(&nil, len).column_space();
    let gens: Vec<Matrix<F>> = base.columns().into_iter().map(|c| Matrix::new(d, d, c)).collect();
    let mut power = gens.clone();
    let mut prev = usize::MAX;
    while !power.is_empty() {
        if power.len() >= prev {
            return false;
        }
        prev = power.len();
        let products: Vec<Matrix<F>> =
            gens.iter().flat_map(|g| power.iter().map(move |p| g * p)).collect();
        let span = flatten(&products, len).column_space();
        power = span.columns().into_iter().map(|c| Matrix::new(d, d, c)).collect();
    }
    true
}

pub fn is_indecomposable<F: Field>(m: &Module<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(is_local_ring(&hom_basis(m, m)?, m.dim()))
}

type Piece<F> = (Module<F>, Matrix<F>, Matrix<F>);

fn split_pieces<F: Field, R: Rng + ?Sized>(m: &Module<F>, rng: &mut R) -> Result<Vec<Piece<F>>> {
    let d = m.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let end = hom_basis(m, m)?;
    if end.len() == 1 || is_local_ring(&end, d) {
        return Ok(vec![(m.clone(), Matrix::identity(d), Matrix::identity(d))]);
    }
    for _ in 0..SPLIT_TRIES {
        let phi = random_combination(&end, rng);
        let Some(&lambda) = phi.eigenvalues().first() else { continue };
        let psi = (&phi - &Matrix::scalar(d, lambda)).pow(d as u64);
        let k = psi.kernel();
        if k.cols() == d {
            continue;
        }
        let im = psi.column_space();
        let change = Matrix::hstack(&[&k, &im]);
        let inv = change.inverse().ok_or_else(|| Error::internal("Fitting decomposition is not direct"))?;
        let pk = inv.block(0, 0, k.cols(), d);
        let pi = inv.block(k.cols(), 0, im.cols(), d);
        let mut out = Vec::new();
        for (basis, proj) in [(k, pk), (im, pi)] {
            let (sub, incl) = m.submodule(&basis)?;
            for (piece, i, p) in split_pieces(&sub, rng)? {
                out.push((piece, &incl * &i, &p * &proj));
            }
        }
        return Ok(out);
    }
    Err(Error::internal(format!(
        "no splitting endomorphism found for a module of dimension {d} with endomorphism ring of dimension {}",
        end.len()
    )))
}

/// An isomorphism between indecomposables, found by the pairing test on hom bases.
fn indecomposable_iso<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<Option<Matrix<F>>> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let fs = hom_basis(x, y)?;
    if fs.is_empty() {
        return Ok(None);
    }
    let gs = hom_basis(y, x)?;
    for f in &fs {
        for g in &gs {
            if !(g * f).is_nilpotent() {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

/// Decomposes `m` into indecomposables, grouping isomorphic summands.
pub fn decompose<F: Field>(m: &Module<F>, seed: u64) -> Result<Decomposition<F>> {
    let mut rng = seeded_rng(seed);
    let pieces = split_pieces(m, &mut rng)?;
    let mut summands: Vec<Summand<F>> = Vec::new();
    'pieces: for (piece, inj, proj) in pieces {
        for s in summands.iter_mut() {
            if let Some(f) = indecomposable_iso(&s.module, &piece)? {
                let finv = f.inverse().ok_or_else(|| Error::internal("pairing test produced a singular map"))?;
                s.injections.push(&inj * &f);
                s.projections.push(&finv * &proj);
                s.multiplicity += 1;
                continue 'pieces;
            }
        }
        summands.push(Summand { module: piece, multiplicity: 1, injections: vec![inj], projections: vec![proj] });
    }
    Ok(Decomposition { summands })
}

/// An explicit isomorphism `m -> n` if one exists.
pub fn find_isomorphism<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<Option<Matrix<F>>> {
    m.require_same_algebra(n, "isomorphism test")?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    if let (Ok(a), Ok(b)) = (m.dimension_vector(), n.dimension_vector()) {
        if a != b {
            return Ok(None);
        }
    }
    let homs = hom_basis(m, n)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded_rng(seed);
    for _ in 0..RANDOM_ISO_TRIES {
        let f = random_combination(&homs, &mut rng);
        if f.rank() == m.dim() {
            return Ok(Some(f));
        }
    }
    let (dm, dn) = (decompose(m, seed)?, decompose(n, seed)?);
    if dm.indecomposable_count() != dn.indecomposable_count() || dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut iso = Matrix::zeros(n.dim(), m.dim());
    let mut used = vec![false; dn.summands.len()];
    for s in &dm.summands {
        let mut matched = false;
        for (k, t) in dn.summands.iter().enumerate() {
            if used[k] || t.multiplicity != s.multiplicity {
                continue;
            }
            if let Some(f) = indecomposable_iso(&s.module, &t.module)? {
                for (p, i) in s.projections.iter().zip(&t.injections) {
                    iso = &iso + &(&(i * &f) * p);
                }
                used[k] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    Ok(Some(iso))
}

pub fn is_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<bool> {
    Ok(find_isomorphism(m, n, seed)?.is_some())
}

/// The basic module with the same indecomposable summands as the given modules, together with
/// those summands (one per isomorphism class).
pub fn basic_sum<F: Field>(
    algebra: &Arc<Algebra<F>>,
    ms: &[Module<F>],
    seed: u64,
) -> Result<(Module<F>, Vec<Module<F>>)> {
    let mut classes: Vec<Module<F>> = Vec::new();
    for m in ms {
        for x in decompose(m, seed)?.indecomposables() {
            let mut seen = false;
            for c in &classes {
                if indecomposable_iso(c, &x)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                classes.push(x);
            }
        }
    }
    Ok((direct_sum(algebra, &classes)?.module, classes))
}

/// Whether two indecomposable modules are isomorphic (no decomposition step).
pub fn indecomposables_isomorphic<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<bool> {
    Ok(indecomposable_iso(x, y)?.is_some())
}
