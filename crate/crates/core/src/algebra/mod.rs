//! Finite-dimensional associative unital algebras given by structure constants.

mod iso;
mod quiver;
mod radical;
mod skeleton;

use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

pub use iso::{find_algebra_isomorphism, AlgebraIso};
pub use quiver::{build_path_algebra_quotient, Quiver, QuiverArrow, QuiverPresentation, Relation};
pub use radical::{is_split_basic, primitive_idempotents, radical_basis, AlgebraIdeal, SplitBasic};
pub use skeleton::{Skeleton, SkeletonArrow};

/// Structural hints carried by constructions that know their idempotents or radical.
#[derive(Clone, Debug)]
pub(crate) struct Hints<F> {
    pub idempotents: Option<Vec<Vec<F>>>,
    pub radical: Option<Matrix<F>>,
}

impl<F> Default for Hints<F> {
    fn default() -> Self {
        Hints { idempotents: None, radical: None }
    }
}

pub struct Algebra<F: Field> {
    labels: Vec<String>,
    /// `lmul[i]` has column `j` equal to `b_i * b_j`.
    lmul: Vec<Matrix<F>>,
    /// `rmul[j]` has column `i` equal to `b_i * b_j`.
    rmul: Vec<Matrix<F>>,
    unit: Vec<F>,
    hints: Hints<F>,
    quiver: Option<Quiver>,
    factors: Option<(Arc<Algebra<F>>, Arc<Algebra<F>>)>,
    op: OnceLock<Arc<Algebra<F>>>,
    op_of: Option<Weak<Algebra<F>>>,
    skeleton: OnceLock<Result<Arc<Skeleton<F>>>>,
}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("dim", &self.dim()).field("labels", &self.labels).finish()
    }
}

impl<F: Field> Algebra<F> {
    fn assemble(labels: Vec<String>, lmul: Vec<Matrix<F>>, unit: Vec<F>) -> Self {
        let d = lmul.len();
        let mut rmul = vec![Matrix::zeros(d, d); d];
        for (i, l) in lmul.iter().enumerate() {
            for j in 0..d {
                for k in 0..d {
                    rmul[j][(k, i)] = l[(k, j)];
                }
            }
        }
        Algebra {
            labels,
            lmul,
            rmul,
            unit,
            hints: Hints::default(),
            quiver: None,
            factors: None,
            op: OnceLock::new(),
            op_of: None,
            skeleton: OnceLock::new(),
        }
    }

    /// Builds an algebra from `constants[i][j]` = coordinates of `b_i * b_j`, validating
    /// associativity and the unit law.
    pub fn from_structure_constants(
        labels: Vec<String>,
        constants: &[Vec<Vec<F>>],
        unit: Vec<F>,
    ) -> Result<Arc<Self>> {
        let d = constants.len();
        if labels.len() != d || unit.len() != d {
            return Err(Error::Validation(format!(
                "algebra of dimension {d} needs {d} labels and a unit of length {d}"
            )));
        }
        let mut lmul = Vec::with_capacity(d);
        for (i, row) in constants.iter().enumerate() {
            if row.len() != d || row.iter().any(|c| c.len() != d) {
                return Err(Error::Validation(format!("structure constants for b_{i} have the wrong shape")));
            }
            lmul.push(Matrix::from_columns(d, row));
        }
        let a = Self::assemble(labels, lmul, unit);
        a.validate()?;
        Ok(Arc::new(a))
    }

    pub(crate) fn from_parts(
        labels: Vec<String>,
        lmul: Vec<Matrix<F>>,
        unit: Vec<F>,
        hints: Hints<F>,
    ) -> Self {
        let mut a = Self::assemble(labels, lmul, unit);
        a.hints = hints;
        a
    }

    pub(crate) fn with_quiver(mut self, q: Quiver) -> Self {
        self.quiver = Some(q);
        self
    }

    /// The ground field `F_p` as a one-dimensional algebra.
    pub fn ground_field() -> Arc<Self> {
        let hints = Hints { idempotents: Some(vec![vec![F::one()]]), radical: Some(Matrix::zeros(1, 0)) };
        Arc::new(Self::from_parts(vec!["1".into()], vec![Matrix::identity(1)], vec![F::one()], hints))
    }

    /// Checks associativity on all basis triples and the two-sided unit law.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let u = self.left_mult(&self.unit);
        if !u.is_identity() || !self.right_mult(&self.unit).is_identity() {
            return Err(Error::Validation("unit is not a two-sided identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let prod = self.lmul[i].column(j);
                let lhs = self.left_mult(&prod);
                let rhs = &self.lmul[i] * &self.lmul[j];
                if lhs != rhs {
                    let k = (0..d).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
                    return Err(Error::Validation(format!(
                        "associativity fails on basis triple ({}, {}, {})",
                        self.labels[i], self.labels[j], self.labels[k]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lmul.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn quiver(&self) -> Option<&Quiver> {
        self.quiver.as_ref()
    }

    /// Tensor factors when the algebra was built by [`tensor_algebra`].
    pub fn factors(&self) -> Option<&(Arc<Algebra<F>>, Arc<Algebra<F>>)> {
        self.factors.as_ref()
    }

    pub(crate) fn hints(&self) -> &Hints<F> {
        &self.hints
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// Left multiplication by basis element `i`.
    pub fn lmul(&self, i: usize) -> &Matrix<F> {
        &self.lmul[i]
    }

    /// Right multiplication by basis element `i`.
    pub fn rmul(&self, i: usize) -> &Matrix<F> {
        &self.rmul[i]
    }

    /// Matrix of `y -> x * y`.
    pub fn left_mult(&self, x: &[F]) -> Matrix<F> {
        combine(&self.lmul, x, self.dim())
    }

    /// Matrix of `y -> y * x`.
    pub fn right_mult(&self, x: &[F]) -> Matrix<F> {
        combine(&self.rmul, x, self.dim())
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.left_mult(x).mul_vec(y)
    }

    /// Structure constant column `b_i * b_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<F> {
        self.lmul[i].column(j)
    }

    /// Whether two handles denote the same algebra (pointer or structure-constant equality).
    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || (a.dim() == b.dim() && a.unit == b.unit && a.lmul == b.lmul)
    }

    /// The opposite algebra, cached so that `op(op(a))` returns `a` itself.
    pub fn op(self: &Arc<Self>) -> Arc<Self> {
        if let Some(orig) = self.op_of.as_ref().and_then(Weak::upgrade) {
            return orig;
        }
        self.op
            .get_or_init(|| {
                let mut o = Self::assemble(self.labels.clone(), self.rmul.clone(), self.unit.clone());
                o.hints = self.hints.clone();
                o.quiver = self.quiver.as_ref().map(Quiver::reversed);
                o.op_of = Some(Arc::downgrade(self));
                Arc::new(o)
            })
            .clone()
    }

    /// The algebra this one is the opposite of, if still alive.
    pub(crate) fn op_source(&self) -> Option<Arc<Self>> {
        self.op_of.as_ref().and_then(Weak::upgrade)
    }

    /// Lazily computed idempotent/radical/arrow data; requires a split basic algebra.
    pub fn skeleton(self: &Arc<Self>) -> Result<Arc<Skeleton<F>>> {
        self.skeleton.get_or_init(|| Skeleton::build(self).map(Arc::new)).clone()
    }

    /// Quotient by a two-sided ideal given by a column basis; returns the quotient and the
    /// projection matrix onto it.
    pub fn quotient(&self, ideal: &Matrix<F>) -> (Arc<Self>, Matrix<F>) {
        let d = self.dim();
        let comp = ideal.complement();
        let change = Matrix::hstack(&[ideal, &comp]);
        let inv = change.inverse().expect("ideal basis extended to a basis");
        let proj = inv.block(ideal.cols(), 0, comp.cols(), d);
        let q = comp.cols();
        let lmul = (0..q)
            .map(|i| &(&proj * &self.left_mult(&comp.column(i))) * &comp)
            .collect();
        let unit = proj.mul_vec(&self.unit);
        let labels = (0..q).map(|i| format!("q{i}")).collect();
        (Arc::new(Self::assemble(labels, lmul, unit)), proj)
    }

    /// Column basis of the centre.
    pub fn center(&self) -> Matrix<F> {
        let d = self.dim();
        // z * b_i - b_i * z = (R_i - L_i) z
        let blocks: Vec<Matrix<F>> = (0..d).map(|i| &self.rmul[i] - &self.lmul[i]).collect();
        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
        Matrix::vstack_cols(d, &refs).kernel()
    }
}

fn combine<F: Field>(mats: &[Matrix<F>], x: &[F], d: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(d, d);
    for (c, mat) in x.iter().zip(mats) {
        m.add_scaled(mat, *c);
    }
    m
}

/// The opposite algebra: same basis, `b_i ∘ b_j = b_j * b_i`.
pub fn opposite_algebra<F: Field>(a: &Arc<Algebra<F>>) -> Arc<Algebra<F>> {
    a.op()
}

/// Tensor product over the ground field; basis pair `(i, j)` has index `i * dim(b) + j`.
pub fn tensor_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> Arc<Algebra<F>> {
    let (da, db) = (a.dim(), b.dim());
    let mut lmul = Vec::with_capacity(da * db);
    let mut labels = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            lmul.push(a.lmul[i].kron(&b.lmul[j]));
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
        }
    }
    let unit = Matrix::column_vector(&a.unit).kron(&Matrix::column_vector(&b.unit)).column(0);
    let mut t = Algebra::assemble(labels, lmul, unit);
    if let (Some(ea), Some(eb)) = (&a.hints.idempotents, &b.hints.idempotents) {
        let mut ids = Vec::new();
        for x in ea {
            for y in eb {
                ids.push(Matrix::column_vector(x).kron(&Matrix::column_vector(y)).column(0));
            }
        }
        t.hints.idempotents = Some(ids);
    }
    if let (Some(ra), Some(rb)) = (&a.hints.radical, &b.hints.radical) {
        let r1 = ra.kron(&Matrix::identity(db));
        let r2 = Matrix::identity(da).kron(rb);
        t.hints.radical = Some(Matrix::hstack(&[&r1, &r2]).column_space());
    }
    t.factors = Some((a.clone(), b.clone()));
    Arc::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::desk;
    use crate::exactla::Fp;

    type F = Fp<101>;

    #[test]
    fn ground_field_is_unit_for_tensor() {
        let a = desk::aus2::<F>();
        let k = Algebra::ground_field();
        let t = tensor_algebra(&a, &k);
        assert_eq!(t.dim(), a.dim());
        for i in 0..a.dim() {
            assert_eq!(t.lmul(i), a.lmul(i));
        }
    }

    #[test]
    fn tensor_dimensions_and_axioms() {
        let t = tensor_algebra(&desk::a2::<F>(), &desk::nak2());
        assert_eq!(t.dim(), 6);
        t.validate().unwrap();
        let k = tensor_algebra(&desk::kronecker::<F>(), &desk::nak2());
        assert_eq!(k.dim(), 8);
        k.validate().unwrap();
    }

    #[test]
    fn tensor_swap_matches_after_reindexing() {
        let (a, b) = (desk::a2::<F>(), desk::nak2::<F>());
        let ab = tensor_algebra(&a, &b);
        let ba = tensor_algebra(&b, &a);
        let (da, db) = (a.dim(), b.dim());
        let swap = |k: usize| (k % db) * da + k / db;
        for x in 0..ab.dim() {
            for y in 0..ab.dim() {
                let p = ab.product_of_basis(x, y);
                let q = ba.product_of_basis(swap(x), swap(y));
                for z in 0..ab.dim() {
                    assert_eq!(p[z], q[swap(z)]);
                }
            }
        }
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = desk::aus2::<F>();
        let o = a.op();
        assert!(Arc::ptr_eq(&o.op(), &a));
        assert!(Arc::ptr_eq(&a.op(), &o));
        o.validate().unwrap();
        let n = desk::nak2::<F>();
        for i in 0..2 {
            assert_eq!(n.op().lmul(i), n.lmul(i));
        }
    }

    #[test]
    fn opposite_of_a2_reverses_the_arrow() {
        let a = desk::a2::<F>();
        let rev = desk::path_algebra::<F>(2, &[(1, 0)], &[], 2).unwrap();
        let iso = find_algebra_isomorphism(&a.op(), &rev, 0xD7, 20).unwrap();
        assert!(matches!(iso, AlgebraIso::Found(_)));
    }

    #[test]
    fn structure_constant_validation_names_the_triple() {
        // two-dimensional, b1*b1 = b0 while b0 is claimed as unit but b1*b0 = 0
        let z = F::zero();
        let o = F::one();
        let c = vec![vec![vec![o, z], vec![z, o]], vec![vec![z, z], vec![o, z]]];
        let err = Algebra::from_structure_constants(vec!["u".into(), "x".into()], &c, vec![o, z]);
        assert!(matches!(err, Err(Error::Validation(_))));
        let bad = vec![vec![vec![o, z], vec![z, o]], vec![vec![z, o], vec![o, o]]];
        // x*x = u + x is associative (commutative two-dim algebra); sanity
        Algebra::from_structure_constants(vec!["u".into(), "x".into()], &bad, vec![o, z]).unwrap();
    }
}
