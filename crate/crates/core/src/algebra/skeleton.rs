//! Vertex data of a split basic algebra: idempotents, projectives, tops and arrows.

use std::sync::Arc;

use super::radical::{primitive_idempotents_with, radical_basis, span_products, verify_complete_orthogonal};
use super::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::seeded_rng;

/// An element of `e_target (rad / rad^2) e_source`.
#[derive(Clone, Debug)]
pub struct SkeletonArrow<F> {
    pub source: usize,
    pub target: usize,
    pub element: Vec<F>,
}

#[derive(Clone, Debug)]
pub struct Skeleton<F: Field> {
    pub idempotents: Vec<Vec<F>>,
    /// Column basis of the Jacobson radical.
    pub radical: Matrix<F>,
    /// Row `i` is the algebra map `A -> A/rad -> F` picking the coefficient of `e_i`.
    pub theta: Matrix<F>,
    /// Columns span `A e_i` (the projective `P_i`).
    pub proj_basis: Vec<Matrix<F>>,
    /// Left inverse of `proj_basis[i]`.
    pub proj_coords: Vec<Matrix<F>>,
    /// Action of every algebra basis element on `P_i`.
    pub proj_actions: Vec<Vec<Matrix<F>>>,
    /// `e_i` in `P_i` coordinates.
    pub generators: Vec<Vec<F>>,
    pub arrows: Vec<SkeletonArrow<F>>,
}

impl<F: Field> Skeleton<F> {
    pub(crate) fn build(a: &Arc<Algebra<F>>) -> Result<Self> {
        let (idempotents, radical) = if let Some(src) = a.op_source() {
            let s = src.skeleton()?;
            (s.idempotents.clone(), s.radical.clone())
        } else {
            let radical = match &a.hints().radical {
                Some(r) => r.clone(),
                None => radical_basis(a)?.basis,
            };
            let ids = match &a.hints().idempotents {
                Some(ids) => ids.clone(),
                None => primitive_idempotents_with(a, &radical, &mut seeded_rng(crate::DEFAULT_SEED))?,
            };
            (ids, radical)
        };
        let d = a.dim();
        let n = idempotents.len();
        if n + radical.cols() != d {
            return Err(Error::contract(format!(
                "module computations need a split basic algebra; semisimple quotient has dimension {} but there are {n} primitive idempotents",
                d - radical.cols()
            )));
        }
        verify_complete_orthogonal(a, &idempotents, &radical)?;

        let ids = Matrix::from_columns(d, &idempotents);
        let change = Matrix::hstack(&[&ids, &radical]);
        let inv = change.inverse().ok_or_else(|| Error::internal("idempotents and radical do not span"))?;
        let theta = inv.block(0, 0, n, d);

        let mut proj_basis = Vec::with_capacity(n);
        let mut proj_coords = Vec::with_capacity(n);
        let mut proj_actions = Vec::with_capacity(n);
        let mut generators = Vec::with_capacity(n);
        for e in &idempotents {
            let b = a.right_mult(e).column_space();
            let l = b.left_inverse().expect("independent columns");
            proj_actions.push((0..d).map(|k| &(&l * a.lmul(k)) * &b).collect());
            generators.push(l.mul_vec(e));
            proj_basis.push(b);
            proj_coords.push(l);
        }

        let rad2 = span_products(a, &radical, &radical);
        let mut arrows = Vec::new();
        for (i, ei) in idempotents.iter().enumerate() {
            for (j, ej) in idempotents.iter().enumerate() {
                let sandwich = &a.left_mult(ej) * &a.right_mult(ei);
                let r1 = (&sandwich * &radical).column_space();
                if r1.cols() == 0 {
                    continue;
                }
                let r2 = (&sandwich * &rad2).column_space();
                let piv = Matrix::hstack(&[&r2, &r1]).pivot_columns();
                for p in piv.into_iter().filter(|&p| p >= r2.cols()) {
                    arrows.push(SkeletonArrow { source: i, target: j, element: r1.column(p - r2.cols()) });
                }
            }
        }
        Ok(Skeleton { idempotents, radical, theta, proj_basis, proj_coords, proj_actions, generators, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn proj_dim(&self, i: usize) -> usize {
        self.proj_basis[i].cols()
    }

    /// `dim e_j A e_i` for all `(i, j)`, indexed `[j][i]`.
    pub fn cartan(&self, a: &Algebra<F>) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (&a.left_mult(&self.idempotents[j]) * &self.proj_basis[i]).rank())
                    .collect()
            })
            .collect()
    }

    /// Whether an element lies in the radical.
    pub fn in_radical(&self, x: &[F]) -> bool {
        self.theta.mul_vec(x).iter().all(|c| c.is_zero())
    }
}
