//! Exact dense linear algebra over prime fields.

mod field;
mod matrix;

pub use field::{is_prime, Field, Fp};
pub use matrix::{eval_poly, Matrix, Reduction};

use crate::error::Result;

/// Reduced row-echelon form, rank and a right null space basis.
pub fn reduce<F: Field>(m: &Matrix<F>) -> Reduction<F> {
    m.reduce()
}

/// Solves `a * x = b`; `None` when inconsistent. Free variables are zero.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = Fp<101>;
    type F5 = Fp<5>;

    #[test]
    fn identity_reduces_to_itself() {
        let r = reduce(&Matrix::<F>::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.kernel_basis.cols(), 0);
        assert!(r.rref.is_identity());
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::<F5>::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let r = reduce(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis.cols(), 1);
        let k = r.kernel_basis.column(0);
        // (3, 1) up to scaling
        assert_eq!(k[0] * F5::new(1), k[1] * F5::new(3));
        assert!((&m * &r.kernel_basis).is_zero());
    }

    #[test]
    fn random_kernel_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = Matrix::<F>::random(6, 4, &mut rng);
            let r = reduce(&m);
            assert_eq!(r.rank + r.kernel_basis.cols(), 4);
            assert!((&m * &r.kernel_basis).is_zero());
        }
    }

    #[test]
    fn empty_shapes() {
        let r = reduce(&Matrix::<F>::zeros(0, 3));
        assert_eq!((r.rank, r.kernel_basis.cols()), (0, 3));
        let r = reduce(&Matrix::<F>::zeros(2, 0));
        assert_eq!((r.rank, r.kernel_basis.cols()), (0, 0));
    }

    #[test]
    fn solve_identity() {
        let b = Matrix::<F>::from_i64_rows(&[&[1, 2], &[3, 4], &[5, 6]]);
        let x = solve(&Matrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_inconsistent() {
        let b = Matrix::<F>::from_i64_rows(&[&[1], &[0]]);
        assert_eq!(solve(&Matrix::zeros(2, 2), &b).unwrap(), None);
    }

    #[test]
    fn solve_shape_mismatch() {
        let err = solve(&Matrix::<F>::zeros(2, 2), &Matrix::zeros(3, 1)).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let a = Matrix::<F>::from_i64_rows(&[&[1, 1]]);
        let b = Matrix::<F>::from_i64_rows(&[&[5]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64_rows(&[&[5], &[0]]));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::<F>::from_i64_rows(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.determinant(), F::from_i64(5));
        let singular = Matrix::<F>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn charpoly_matches_determinant_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..6 {
            let a = Matrix::<F>::random(n, n, &mut rng);
            let cp = a.charpoly();
            assert_eq!(cp.len(), n + 1);
            assert!(cp[n].is_one());
            for x in [0i64, 1, 5, 42, 100] {
                let x = F::from_i64(x);
                let det = (&Matrix::scalar(n, x) - &a).determinant();
                assert_eq!(eval_poly(&cp, x), det);
            }
        }
    }

    #[test]
    fn charpoly_of_sparse_matrices() {
        // Hessenberg reduction must cope with zero subdiagonals
        let a = Matrix::<F>::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(a.charpoly(), vec![F::zero(), F::zero(), F::zero(), F::one()]);
        assert!(a.is_nilpotent());
        let d = Matrix::<F>::from_i64_rows(&[&[3, 0], &[0, 7]]);
        assert_eq!(d.eigenvalues(), vec![F::new(3), F::new(7)]);
    }

    #[test]
    fn kron_and_stacking() {
        let a = Matrix::<F>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let i = Matrix::<F>::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 0)], F::new(3));
        assert_eq!(k[(3, 1)], F::new(3));
        let h = Matrix::hstack(&[&a, &i]);
        assert_eq!(h.block(0, 2, 2, 2), i);
        let v = Matrix::vstack(&[&a, &i]);
        assert_eq!(v.select_rows(&[2, 3]), i);
    }

    #[test]
    fn complement_and_intersection() {
        let s = Matrix::<F>::from_i64_rows(&[&[1], &[1], &[0]]);
        let c = s.complement();
        assert_eq!(c.cols(), 2);
        assert_eq!(Matrix::hstack(&[&s, &c]).rank(), 3);
        let a = Matrix::<F>::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::<F>::from_i64_rows(&[&[0, 1], &[1, 1], &[0, 1]]);
        let meet = a.intersect(&b);
        assert_eq!(meet.cols(), 1);
        assert!(a.spans(&meet) && b.spans(&meet));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix<F>> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..101, r * c)
                .prop_map(move |v| Matrix::new(r, c, v.into_iter().map(F::new).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(7)) {
            let r = reduce(&m);
            prop_assert_eq!(r.rank + r.kernel_basis.cols(), m.cols());
            prop_assert!((&m * &r.kernel_basis).is_zero());
            prop_assert_eq!(r.kernel_basis.rank(), r.kernel_basis.cols());
        }

        #[test]
        fn reduce_is_idempotent(m in arb_matrix(7)) {
            let r = reduce(&m);
            prop_assert_eq!(reduce(&r.rref).rref, r.rref);
        }

        #[test]
        fn solve_recovers_consistent_systems(m in arb_matrix(6), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0 = Matrix::random(m.cols(), 2, &mut rng);
            let b = &m * &x0;
            let x = solve(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(&m * &x, b);
        }

        #[test]
        fn transpose_preserves_rank(m in arb_matrix(6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
