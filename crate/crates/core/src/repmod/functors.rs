//! Endomorphism algebras, the Hom and tensor functors, and rejects.

use std::sync::Arc;

use super::hom::hom_basis;
use super::{regular_module, Module};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

/// `End(m)^op` with its basis of endomorphisms; basis element `k` is `maps[k]`.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub module: Module<F>,
    pub maps: Vec<Matrix<F>>,
}

fn flatten<F: Field>(ms: &[Matrix<F>], len: usize) -> Matrix<F> {
    let cols: Vec<Vec<F>> = ms.iter().map(|m| m.data().to_vec()).collect();
    Matrix::from_columns(len, &cols)
}

/// Coordinates of matrices in a fixed basis of matrices.
struct Coords<F: Field> {
    left: Matrix<F>,
    basis: Matrix<F>,
}

impl<F: Field> Coords<F> {
    fn new(maps: &[Matrix<F>], len: usize) -> Result<Self> {
        let basis = flatten(maps, len);
        let left = basis.left_inverse().ok_or_else(|| Error::internal("hom basis is not independent"))?;
        Ok(Coords { left, basis })
    }

    fn of(&self, m: &Matrix<F>) -> Result<Vec<F>> {
        let c = self.left.mul_vec(m.data());
        if self.basis.mul_vec(&c) != m.data() {
            return Err(Error::internal("map lies outside the hom space"));
        }
        Ok(c)
    }
}

/// Structure constants of `End(m)^op`: `f_i * f_j = f_j . f_i`.
pub fn end_algebra_op<F: Field>(m: &Module<F>) -> Result<EndAlgebra<F>> {
    let maps = hom_basis(m, m)?;
    let d = m.dim();
    let e = maps.len();
    let coords = Coords::new(&maps, d * d)?;
    let mut c = Vec::with_capacity(e);
    for fi in &maps {
        let mut row = Vec::with_capacity(e);
        for fj in &maps {
            row.push(coords.of(&(fj * fi))?);
        }
        c.push(row);
    }
    let unit = coords.of(&Matrix::identity(d))?;
    let labels = (0..e).map(|k| format!("f{k}")).collect();
    let algebra = Algebra::from_structure_constants(labels, &c, unit)?;
    Ok(EndAlgebra { algebra, module: m.clone(), maps })
}

/// `Hom(m, x)` as a left `End(m)^op`-module under precomposition.
#[derive(Clone, Debug)]
pub struct HomModule<F: Field> {
    pub module: Module<F>,
    pub target: Module<F>,
    pub basis: Vec<Matrix<F>>,
}

impl<F: Field> HomModule<F> {
    /// The map `m -> x` with the given coordinates.
    pub fn map_of(&self, coords: &[F]) -> Matrix<F> {
        let src = self.basis.first().map_or(0, Matrix::cols);
        let mut acc = Matrix::zeros(self.target.dim(), src);
        for (c, h) in coords.iter().zip(&self.basis) {
            acc.add_scaled(h, *c);
        }
        acc
    }
}

pub fn hom_functor_module<F: Field>(end: &EndAlgebra<F>, x: &Module<F>) -> Result<HomModule<F>> {
    let m = &end.module;
    let basis = hom_basis(m, x)?;
    let r = basis.len();
    let action = if r == 0 {
        vec![Matrix::zeros(0, 0); end.maps.len()]
    } else {
        let coords = Coords::new(&basis, x.dim() * m.dim())?;
        let mut action = Vec::with_capacity(end.maps.len());
        for f in &end.maps {
            let cols = basis.iter().map(|h| coords.of(&(h * f))).collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_columns(r, &cols));
        }
        action
    };
    let module = Module::from_parts(end.algebra.clone(), r, action);
    Ok(HomModule { module, target: x.clone(), basis })
}

/// The induced map `Hom(m, x) -> Hom(m, y)`, `h -> f . h`, in the two hom bases.
pub fn hom_functor_map<F: Field>(src: &HomModule<F>, dst: &HomModule<F>, f: &Matrix<F>) -> Result<Matrix<F>> {
    let (r, s) = (src.basis.len(), dst.basis.len());
    if r == 0 || s == 0 {
        return Ok(Matrix::zeros(s, r));
    }
    let len = dst.basis[0].rows() * dst.basis[0].cols();
    let coords = Coords::new(&dst.basis, len)?;
    let cols = src.basis.iter().map(|h| coords.of(&(f * h))).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(s, &cols))
}

/// A left module with a commuting right action of `right_algebra`; `q . b = right[b] q`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub left: Module<F>,
    pub right_algebra: Arc<Algebra<F>>,
    pub right: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(left: Module<F>, right_algebra: Arc<Algebra<F>>, right: Vec<Matrix<F>>) -> Result<Self> {
        let b = Bimodule { left, right_algebra, right };
        b.validate()?;
        Ok(b)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(a: &Arc<Algebra<F>>) -> Self {
        Bimodule { left: regular_module(a), right_algebra: a.clone(), right: (0..a.dim()).map(|k| a.rmul(k).clone()).collect() }
    }

    pub fn right_act(&self, x: &[F]) -> Matrix<F> {
        let d = self.left.dim();
        let mut m = Matrix::zeros(d, d);
        for (c, r) in x.iter().zip(&self.right) {
            m.add_scaled(r, *c);
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.right_algebra;
        let d = self.left.dim();
        if self.right.len() != a.dim() || self.right.iter().any(|r| r.rows() != d || r.cols() != d) {
            return Err(Error::contract("right action has the wrong shape"));
        }
        if !self.right_act(a.unit()).is_identity() {
            return Err(Error::contract("unit does not act as the identity on the right"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.right_act(&a.product_of_basis(i, j)) != &self.right[j] * &self.right[i] {
                    return Err(Error::contract("right action does not respect the product"));
                }
            }
            for l in self.left.actions() {
                if l * &self.right[i] != &self.right[i] * l {
                    return Err(Error::contract("left and right actions do not commute"));
                }
            }
        }
        Ok(())
    }
}

/// `q ⊗ m` over the right algebra of `q`, with the left action of `q`, and the projection from
/// `q ⊗_F m` (index `i * dim m + j`).
pub fn tensor_over<F: Field>(q: &Bimodule<F>, m: &Module<F>) -> Result<(Module<F>, Matrix<F>)> {
    if !Algebra::same(&q.right_algebra, m.algebra()) {
        return Err(Error::contract("tensor product: module is over a different algebra"));
    }
    let (dq, dm) = (q.left.dim(), m.dim());
    let id_q = Matrix::identity(dq);
    let id_m = Matrix::identity(dm);
    let rels: Vec<Matrix<F>> =
        (0..m.algebra().dim()).map(|b| &q.right[b].kron(&id_m) - &id_q.kron(m.action(b))).collect();
    let refs: Vec<&Matrix<F>> = rels.iter().collect();
    let relations = Matrix::hstack_rows(dq * dm, &refs);
    let action = q.left.actions().iter().map(|a| a.kron(&id_m)).collect();
    let big = Module::from_parts(q.left.algebra().clone(), dq * dm, action);
    big.quotient(&relations)
}

/// Intersection of the kernels of all maps `x -> y`.
#[derive(Clone, Debug)]
pub struct Reject<F: Field> {
    pub module: Module<F>,
    pub inclusion: Matrix<F>,
    pub embeds: bool,
}

pub fn reject_embed<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<Reject<F>> {
    let homs = hom_basis(x, y)?;
    let refs: Vec<&Matrix<F>> = homs.iter().collect();
    let k = Matrix::vstack_cols(x.dim(), &refs).kernel();
    let (module, inclusion) = x.submodule(&k)?;
    let embeds = module.is_zero();
    Ok(Reject { module, inclusion, embeds })
}
