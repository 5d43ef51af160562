//! Finite-dimensional left modules given by action matrices.

mod decompose;
mod functors;
mod hom;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, Skeleton};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

pub use decompose::{basic_sum, decompose, find_isomorphism, is_indecomposable, is_isomorphic, Decomposition, Summand};
pub use functors::{
    end_algebra_op, hom_functor_map, hom_functor_module, reject_embed, tensor_over, Bimodule, EndAlgebra, HomModule,
    Reject,
};
pub use hom::{hom_basis, hom_dim, hom_space, hom_space_naive, hom_space_vertex};
pub use decompose::indecomposables_isomorphic;

/// Basis adapted to `M = ⊕ e_i M`, with the arrow actions cut into vertex blocks.
#[derive(Clone, Debug)]
pub(crate) struct VertexView<F: Field> {
    pub u: Matrix<F>,
    pub u_inv: Matrix<F>,
    pub offsets: Vec<usize>,
    /// For each skeleton arrow `i -> j`, the block `e_j M <- e_i M`.
    pub arrow_blocks: Vec<Matrix<F>>,
}

impl<F: Field> VertexView<F> {
    pub fn dim_at(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

struct Inner<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
    view: OnceLock<Option<Arc<VertexView<F>>>>,
}

/// A left module; cheap to clone.
#[derive(Clone)]
pub struct Module<F: Field>(Arc<Inner<F>>);

impl<F: Field> fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {})", self.dim())
    }
}

impl<F: Field> Module<F> {
    /// Validated constructor: one `dim x dim` matrix per algebra basis element.
    pub fn new(algebra: Arc<Algebra<F>>, action: Vec<Matrix<F>>) -> Result<Self> {
        let dim = action.first().map_or(0, Matrix::rows);
        if action.len() != algebra.dim() {
            return Err(Error::Validation(format!(
                "module needs {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Validation("action matrices must all be square of the same size".into()));
        }
        let m = Self::from_parts(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Self {
        Module(Arc::new(Inner { algebra, dim, action, view: OnceLock::new() }))
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        Self::from_parts(algebra.clone(), 0, vec![Matrix::zeros(0, 0); algebra.dim()])
    }

    /// Checks the module axioms against the structure constants.
    pub fn validate(&self) -> Result<()> {
        let a = &self.0.algebra;
        if !self.act(a.unit()).is_identity() {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = &self.0.action[i] * &self.0.action[j];
                let rhs = self.act(&a.product_of_basis(i, j));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "action does not respect the product {} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.0.action
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, x: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (c, a) in x.iter().zip(&self.0.action) {
            m.add_scaled(a, *c);
        }
        m
    }

    pub fn same_algebra(&self, other: &Module<F>) -> bool {
        Algebra::same(self.algebra(), other.algebra())
    }

    pub(crate) fn require_same_algebra(&self, other: &Module<F>, what: &str) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::contract(format!("{what}: modules live over different algebras")))
        }
    }

    pub(crate) fn skeleton(&self) -> Result<Arc<Skeleton<F>>> {
        self.0.algebra.skeleton()
    }

    pub(crate) fn view(&self) -> Option<Arc<VertexView<F>>> {
        self.0
            .view
            .get_or_init(|| {
                let s = self.0.algebra.skeleton().ok()?;
                let d = self.dim();
                let mut blocks = Vec::new();
                let mut offsets = vec![0];
                for e in &s.idempotents {
                    let b = self.act(e).column_space();
                    offsets.push(offsets.last().unwrap() + b.cols());
                    blocks.push(b);
                }
                let refs: Vec<&Matrix<F>> = blocks.iter().collect();
                let u = Matrix::hstack_rows(d, &refs);
                let u_inv = u.inverse()?;
                let arrow_blocks = s
                    .arrows
                    .iter()
                    .map(|arr| {
                        let full = &(&u_inv * &self.act(&arr.element)) * &u;
                        let (r0, c0) = (offsets[arr.target], offsets[arr.source]);
                        full.block(r0, c0, offsets[arr.target + 1] - r0, offsets[arr.source + 1] - c0)
                    })
                    .collect();
                Some(Arc::new(VertexView { u, u_inv, offsets, arrow_blocks }))
            })
            .clone()
    }

    /// `dim e_i M` for every vertex.
    pub fn dimension_vector(&self) -> Result<Vec<usize>> {
        let s = self.skeleton()?;
        Ok(s.idempotents.iter().map(|e| self.act(e).rank()).collect())
    }

    /// Submodule spanned by the (independent, invariant) columns of `basis`, with its inclusion.
    pub fn submodule(&self, basis: &Matrix<F>) -> Result<(Module<F>, Matrix<F>)> {
        let k = basis.cols();
        if k == 0 {
            return Ok((Module::zero(self.algebra()), Matrix::zeros(self.dim(), 0)));
        }
        let left = basis
            .left_inverse()
            .ok_or_else(|| Error::contract("submodule basis is not linearly independent"))?;
        let mut action = Vec::with_capacity(self.0.action.len());
        for a in &self.0.action {
            let img = a * basis;
            let restricted = &left * &img;
            if basis * &restricted != img {
                return Err(Error::contract("subspace is not invariant under the action"));
            }
            action.push(restricted);
        }
        Ok((Module::from_parts(self.algebra().clone(), k, action), basis.clone()))
    }

    /// Quotient by the invariant subspace spanned by `basis`, with the projection.
    pub fn quotient(&self, basis: &Matrix<F>) -> Result<(Module<F>, Matrix<F>)> {
        let d = self.dim();
        let sub = basis.column_space();
        if !(0..self.0.action.len()).all(|i| sub.spans(&(&self.0.action[i] * &sub))) {
            return Err(Error::contract("subspace is not invariant under the action"));
        }
        let comp = sub.complement();
        let change = Matrix::hstack(&[&sub, &comp]);
        let inv = change.inverse().expect("complement completes a basis");
        let proj = inv.block(sub.cols(), 0, comp.cols(), d);
        let action = self.0.action.iter().map(|a| &(&proj * a) * &comp).collect();
        Ok((Module::from_parts(self.algebra().clone(), comp.cols(), action), proj))
    }

    /// Submodule generated by the columns of `gens`.
    pub fn generated_submodule(&self, gens: &Matrix<F>) -> Result<(Module<F>, Matrix<F>)> {
        let parts: Vec<Matrix<F>> = self.0.action.iter().map(|a| a * gens).collect();
        let refs: Vec<&Matrix<F>> = parts.iter().collect();
        self.submodule(&Matrix::hstack_rows(self.dim(), &refs).column_space())
    }

    /// Same module in a new basis: `new_action = p^{-1} a p`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Module<F>> {
        let inv = p.inverse().ok_or_else(|| Error::contract("basis change is not invertible"))?;
        let action = self.0.action.iter().map(|a| &(&inv * a) * p).collect();
        Ok(Module::from_parts(self.algebra().clone(), self.dim(), action))
    }

    /// Annihilator of the module, as a column basis in algebra coordinates.
    pub fn annihilator(&self) -> Matrix<F> {
        let d = self.dim();
        let n = self.0.action.len();
        let mut data = Vec::with_capacity(d * d * n);
        for a in &self.0.action {
            data.extend_from_slice(a.data());
        }
        // columns are vec(act(b_i))
        Matrix::new(n, d * d, data).transpose().kernel()
    }
}

/// A module homomorphism; `matrix` is `dim target x dim source`.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    pub source: Module<F>,
    pub target: Module<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: Module<F>, target: Module<F>, matrix: Matrix<F>) -> Result<Self> {
        source.require_same_algebra(&target, "module map")?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::contract("module map matrix has the wrong shape"));
        }
        let f = ModuleMap { source, target, matrix };
        if !f.is_homomorphism() {
            return Err(Error::contract("matrix does not intertwine the actions"));
        }
        Ok(f)
    }

    pub fn is_homomorphism(&self) -> bool {
        (0..self.source.algebra().dim())
            .all(|i| &self.matrix * self.source.action(i) == self.target.action(i) * &self.matrix)
    }

    pub fn identity(m: &Module<F>) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.dim()) }
    }

    pub fn zero(source: &Module<F>, target: &Module<F>) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), matrix: Matrix::zeros(target.dim(), source.dim()) }
    }

    pub fn compose(&self, after: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap { source: self.source.clone(), target: after.target.clone(), matrix: &after.matrix * &self.matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Kernel, image and cokernel of a map with their structure maps.
#[derive(Clone, Debug)]
pub struct FactorMaps<F: Field> {
    pub kernel: (Module<F>, Matrix<F>),
    pub image: (Module<F>, Matrix<F>),
    pub cokernel: (Module<F>, Matrix<F>),
}

pub fn factor_maps<F: Field>(f: &ModuleMap<F>) -> Result<FactorMaps<F>> {
    let kernel = f.source.submodule(&f.matrix.kernel())?;
    let img = f.matrix.column_space();
    let image = f.target.submodule(&img)?;
    let cokernel = f.target.quotient(&img)?;
    Ok(FactorMaps { kernel, image, cokernel })
}

/// Direct sum with canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum<F: Field> {
    pub module: Module<F>,
    pub injections: Vec<Matrix<F>>,
    pub projections: Vec<Matrix<F>>,
}

pub fn direct_sum<F: Field>(algebra: &Arc<Algebra<F>>, ms: &[Module<F>]) -> Result<DirectSum<F>> {
    for m in ms {
        if !Algebra::same(algebra, m.algebra()) {
            return Err(Error::contract("direct sum: summand over a different algebra"));
        }
    }
    let total: usize = ms.iter().map(Module::dim).sum();
    let action = (0..algebra.dim())
        .map(|i| {
            let parts: Vec<&Matrix<F>> = ms.iter().map(|m| m.action(i)).collect();
            Matrix::block_diag(&parts)
        })
        .collect();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        let mut inj = Matrix::zeros(total, m.dim());
        inj.set_block(off, 0, &Matrix::identity(m.dim()));
        projections.push(inj.transpose());
        injections.push(inj);
        off += m.dim();
    }
    Ok(DirectSum { module: Module::from_parts(algebra.clone(), total, action), injections, projections })
}

/// Convenience wrapper returning only the sum module.
pub fn sum_modules<F: Field>(algebra: &Arc<Algebra<F>>, ms: &[Module<F>]) -> Result<Module<F>> {
    Ok(direct_sum(algebra, ms)?.module)
}

pub fn regular_module<F: Field>(a: &Arc<Algebra<F>>) -> Module<F> {
    Module::from_parts(a.clone(), a.dim(), (0..a.dim()).map(|i| a.lmul(i).clone()).collect())
}

/// `D M = Hom_F(M, F)`, a module over the opposite algebra with transposed actions.
pub fn dual_module<F: Field>(m: &Module<F>) -> Module<F> {
    let op = m.algebra().op();
    Module::from_parts(op, m.dim(), m.actions().iter().map(Matrix::transpose).collect())
}

/// Simple module at vertex `i`.
pub fn simple<F: Field>(a: &Arc<Algebra<F>>, i: usize) -> Result<Module<F>> {
    let s = a.skeleton()?;
    check_vertex(&s, i)?;
    let action = (0..a.dim()).map(|k| Matrix::new(1, 1, vec![s.theta[(i, k)]])).collect();
    Ok(Module::from_parts(a.clone(), 1, action))
}

/// Indecomposable projective `A e_i`.
pub fn projective<F: Field>(a: &Arc<Algebra<F>>, i: usize) -> Result<Module<F>> {
    let s = a.skeleton()?;
    check_vertex(&s, i)?;
    Ok(Module::from_parts(a.clone(), s.proj_dim(i), s.proj_actions[i].clone()))
}

/// Indecomposable injective `D(e_i A)`.
pub fn injective<F: Field>(a: &Arc<Algebra<F>>, i: usize) -> Result<Module<F>> {
    Ok(dual_module(&projective(&a.op(), i)?))
}

fn check_vertex<F: Field>(s: &Skeleton<F>, i: usize) -> Result<()> {
    if i >= s.vertex_count() {
        return Err(Error::contract(format!("vertex {i} out of range (algebra has {})", s.vertex_count())));
    }
    Ok(())
}

/// `M ⊗_F N` over `A ⊗ B`, for `gamma` built by `tensor_algebra(A, B)`.
pub fn tensor_modules<F: Field>(gamma: &Arc<Algebra<F>>, m: &Module<F>, n: &Module<F>) -> Result<Module<F>> {
    let (fa, fb) = gamma.factors().ok_or_else(|| Error::contract("algebra is not a tensor product"))?;
    if !Algebra::same(fa, m.algebra()) || !Algebra::same(fb, n.algebra()) {
        return Err(Error::contract("tensor factors do not match the module algebras"));
    }
    let mut action = Vec::with_capacity(gamma.dim());
    for i in 0..fa.dim() {
        for j in 0..fb.dim() {
            action.push(m.action(i).kron(n.action(j)));
        }
    }
    Ok(Module::from_parts(gamma.clone(), m.dim() * n.dim(), action))
}

/// Radical, socle and top of a module.
#[derive(Clone, Debug)]
pub struct Filtration<F: Field> {
    pub radical: (Module<F>, Matrix<F>),
    pub socle: (Module<F>, Matrix<F>),
    pub top: (Module<F>, Matrix<F>),
}

/// Column basis of `rad M`.
pub fn radical_subspace<F: Field>(m: &Module<F>) -> Result<Matrix<F>> {
    let s = m.skeleton()?;
    let parts: Vec<Matrix<F>> = s.arrows.iter().map(|a| m.act(&a.element)).collect();
    let refs: Vec<&Matrix<F>> = parts.iter().collect();
    Ok(Matrix::hstack_rows(m.dim(), &refs).column_space())
}

/// Column basis of `soc M`.
pub fn socle_subspace<F: Field>(m: &Module<F>) -> Result<Matrix<F>> {
    let s = m.skeleton()?;
    let parts: Vec<Matrix<F>> = s.arrows.iter().map(|a| m.act(&a.element)).collect();
    let refs: Vec<&Matrix<F>> = parts.iter().collect();
    Ok(Matrix::vstack_cols(m.dim(), &refs).kernel())
}

pub fn filtration<F: Field>(m: &Module<F>) -> Result<Filtration<F>> {
    let rad = radical_subspace(m)?;
    let soc = socle_subspace(m)?;
    Ok(Filtration { radical: m.submodule(&rad)?, socle: m.submodule(&soc)?, top: m.quotient(&rad)? })
}
