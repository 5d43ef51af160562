//! Jacobson radical, primitive idempotents and the split/basic test.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::seeded_rng;

/// Two-sided ideal given by a column basis in algebra coordinates.
#[derive(Clone, Debug)]
pub struct AlgebraIdeal<F: Field> {
    pub parent: Arc<Algebra<F>>,
    pub basis: Matrix<F>,
}

impl<F: Field> AlgebraIdeal<F> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

pub(crate) fn check_characteristic<F: Field>(dim: usize) -> Result<()> {
    if F::characteristic() <= dim as u64 {
        return Err(Error::UnsupportedCharacteristic { p: F::characteristic(), dim });
    }
    Ok(())
}

/// Column space of all products `x * y` with `x` a column of `xs`, `y` a column of `ys`.
pub(crate) fn span_products<F: Field>(a: &Algebra<F>, xs: &Matrix<F>, ys: &Matrix<F>) -> Matrix<F> {
    let d = a.dim();
    let mut cols = Vec::new();
    for i in 0..xs.cols() {
        let l = a.left_mult(&xs.column(i));
        cols.push(&l * ys);
    }
    let refs: Vec<&Matrix<F>> = cols.iter().collect();
    Matrix::hstack_rows(d, &refs).column_space()
}

/// Whether the subspace is closed under multiplication by basis elements on both sides.
pub(crate) fn is_two_sided_ideal<F: Field>(a: &Algebra<F>, basis: &Matrix<F>) -> bool {
    (0..a.dim()).all(|i| basis.spans(&(a.lmul(i) * basis)) && basis.spans(&(a.rmul(i) * basis)))
}

/// Whether the subspace, as a non-unital algebra, is nilpotent.
pub(crate) fn is_nilpotent_subspace<F: Field>(a: &Algebra<F>, basis: &Matrix<F>) -> bool {
    let mut power = basis.column_space();
    for _ in 0..=a.dim() {
        if power.cols() == 0 {
            return true;
        }
        let next = span_products(a, basis, &power);
        if next.cols() >= power.cols() {
            return false;
        }
        power = next;
    }
    power.cols() == 0
}

/// Jacobson radical as the kernel of the trace form `(x, y) -> tr(L_x L_y)`.
///
/// The kernel equals the radical when `p > dim`; the result is re-checked to be a nilpotent
/// two-sided ideal.
pub fn radical_basis<F: Field>(a: &Arc<Algebra<F>>) -> Result<AlgebraIdeal<F>> {
    let d = a.dim();
    check_characteristic::<F>(d)?;
    // tr(X Y) = vec(X) . vec(Y^T)
    let mut v = Vec::with_capacity(d * d * d);
    let mut w = Vec::with_capacity(d * d * d);
    for i in 0..d {
        v.extend_from_slice(a.lmul(i).data());
        w.extend_from_slice(a.lmul(i).transpose().data());
    }
    let v = Matrix::new(d, d * d, v);
    let w = Matrix::new(d, d * d, w);
    let gram = &v * &w.transpose();
    let basis = gram.kernel();
    if !is_two_sided_ideal(a, &basis) || !is_nilpotent_subspace(a, &basis) {
        return Err(Error::internal("trace-form kernel is not a nilpotent ideal"));
    }
    Ok(AlgebraIdeal { parent: a.clone(), basis })
}

/// Roots with multiplicity of a monic polynomial, or `None` when it does not split.
pub(crate) fn split_roots<F: Field>(poly: &[F]) -> Option<Vec<(F, usize)>> {
    let mut p = poly.to_vec();
    let mut roots = Vec::new();
    let degree = p.len() - 1;
    if degree == 0 {
        return Some(roots);
    }
    let mut found = 0;
    for x in F::elements() {
        let mut mult = 0;
        loop {
            if p.len() <= 1 {
                break;
            }
            // synthetic division by (t - x)
            let n = p.len() - 1;
            let mut q = vec![F::zero(); n];
            let mut carry = F::zero();
            for k in (0..=n).rev() {
                let c = p[k] + carry * x;
                if k == 0 {
                    carry = c;
                } else {
                    q[k - 1] = c;
                    carry = c;
                }
            }
            if !carry.is_zero() {
                break;
            }
            p = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((x, mult));
            found += mult;
            if found == degree {
                return Some(roots);
            }
        }
    }
    (found == degree).then_some(roots)
}

/// Lifts an element that is idempotent modulo a nilpotent ideal of a commutative subalgebra.
pub(crate) fn lift_idempotent<F: Field>(a: &Algebra<F>, e: &[F]) -> Option<Vec<F>> {
    let three = F::from_i64(3);
    let two = F::from_i64(2);
    let mut e = e.to_vec();
    for _ in 0..64 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Some(e);
        }
        let e3 = a.mul(&e2, &e);
        e = e2.iter().zip(&e3).map(|(&x, &y)| three * x - two * y).collect();
    }
    None
}

fn corner_dims<F: Field>(a: &Algebra<F>, e: &[F], rad: &Matrix<F>) -> (Matrix<F>, usize) {
    let sandwich = &a.left_mult(e) * &a.right_mult(e);
    let corner = sandwich.column_space();
    let rad_corner = (&sandwich * rad).rank();
    (corner, rad_corner)
}

pub(crate) fn primitive_idempotents_with<F: Field>(
    a: &Algebra<F>,
    rad: &Matrix<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<F>>> {
    let mut done = Vec::new();
    let mut todo = vec![a.unit().to_vec()];
    while let Some(e) = todo.pop() {
        let (corner, rad_corner) = corner_dims(a, &e, rad);
        let top = corner.cols() - rad_corner;
        if top == 1 {
            done.push(e);
            continue;
        }
        if top == 0 {
            return Err(Error::internal("zero idempotent produced while splitting"));
        }
        let cl = corner.left_inverse().expect("corner basis is independent");
        let mut split = None;
        for _ in 0..64 {
            let coeffs: Vec<F> = (0..corner.cols()).map(|_| F::random(rng)).collect();
            let x = corner.mul_vec(&coeffs);
            let restricted = &(&cl * &a.left_mult(&x)) * &corner;
            let Some(roots) = split_roots(&restricted.charpoly()) else {
                continue;
            };
            if roots.len() < 2 {
                continue;
            }
            let mut parts = Vec::new();
            for &(lambda, _) in &roots {
                let mut f = e.clone();
                for &(mu, _) in &roots {
                    if mu == lambda {
                        continue;
                    }
                    let scale = (lambda - mu).inv().expect("distinct roots");
                    let factor: Vec<F> = x.iter().zip(&e).map(|(&xi, &ei)| (xi - mu * ei) * scale).collect();
                    f = a.mul(&f, &factor);
                }
                match lift_idempotent(a, &f) {
                    Some(g) => parts.push(g),
                    None => return Err(Error::internal("idempotent lifting did not stabilise")),
                }
            }
            split = Some(parts);
            break;
        }
        match split {
            Some(parts) => todo.extend(parts.into_iter().rev()),
            None => {
                return Err(Error::NotSplit(format!(
                    "could not split an idempotent whose corner has semisimple dimension {top}"
                )))
            }
        }
    }
    verify_complete_orthogonal(a, &done, rad)?;
    Ok(done)
}

pub(crate) fn verify_complete_orthogonal<F: Field>(a: &Algebra<F>, es: &[Vec<F>], rad: &Matrix<F>) -> Result<()> {
    let d = a.dim();
    let mut sum = vec![F::zero(); d];
    for (i, e) in es.iter().enumerate() {
        for (s, &x) in sum.iter_mut().zip(e) {
            *s += x;
        }
        for (j, f) in es.iter().enumerate() {
            let p = a.mul(e, f);
            let expect = if i == j { e.clone() } else { vec![F::zero(); d] };
            if p != expect {
                return Err(Error::internal("idempotents are not orthogonal"));
            }
        }
        let (corner, rc) = corner_dims(a, e, rad);
        if corner.cols() != rc + 1 {
            return Err(Error::internal("idempotent is not primitive"));
        }
    }
    if sum != a.unit() {
        return Err(Error::internal("idempotents do not sum to the unit"));
    }
    Ok(())
}

/// Complete set of orthogonal primitive idempotents, by splitting with spectral idempotents of
/// random corner elements and lifting through the radical.
pub fn primitive_idempotents<F: Field>(a: &Arc<Algebra<F>>) -> Result<Vec<Vec<F>>> {
    let rad = radical_basis(a)?;
    let mut rng = seeded_rng(crate::DEFAULT_SEED);
    primitive_idempotents_with(a, &rad.basis, &mut rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitBasic {
    pub split: bool,
    pub basic: bool,
}

/// Split iff Frobenius fixes the centre of `A/rad`; basic iff additionally `A/rad` is commutative.
pub fn is_split_basic<F: Field>(a: &Arc<Algebra<F>>) -> Result<SplitBasic> {
    let rad = radical_basis(a)?;
    let (b, _) = a.quotient(&rad.basis);
    let z = b.center();
    let p = F::characteristic();
    let split = (0..z.cols()).all(|k| {
        let v = z.column(k);
        power(&b, &v, p) == v
    });
    Ok(SplitBasic { split, basic: split && z.cols() == b.dim() })
}

fn power<F: Field>(a: &Algebra<F>, x: &[F], mut e: u64) -> Vec<F> {
    let mut acc = a.unit().to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = a.mul(&base, &base);
        }
    }
    acc
}

/// Random element of the span of the columns.
pub(crate) fn random_in<F: Field, R: Rng + ?Sized>(span: &Matrix<F>, rng: &mut R) -> Vec<F> {
    let coeffs: Vec<F> = (0..span.cols()).map(|_| F::random(rng)).collect();
    span.mul_vec(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::desk;
    use crate::exactla::Fp;

    type F = Fp<101>;

    fn matrix_algebra<F: Field>() -> Arc<Algebra<F>> {
        // basis E00, E01, E10, E11; E_ij E_kl = delta_jk E_il
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut c = vec![vec![vec![F::zero(); 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    c[idx(i, j)][idx(j, l)][idx(i, l)] = F::one();
                }
            }
        }
        let mut unit = vec![F::zero(); 4];
        unit[0] = F::one();
        unit[3] = F::one();
        let labels = ["E00", "E01", "E10", "E11"].iter().map(|s| s.to_string()).collect();
        Algebra::from_structure_constants(labels, &c, unit).unwrap()
    }

    /// `F_p[t]/(t^2 - r1 t - r0)`.
    fn quadratic_extension<F: Field>(r0: i64, r1: i64) -> Arc<Algebra<F>> {
        let (z, o) = (F::zero(), F::one());
        let c = vec![vec![vec![o, z], vec![z, o]], vec![vec![z, o], vec![F::from_i64(r0), F::from_i64(r1)]]];
        Algebra::from_structure_constants(vec!["1".into(), "t".into()], &c, vec![o, z]).unwrap()
    }

    #[test]
    fn radical_dimensions() {
        assert_eq!(radical_basis(&desk::nak2::<F>()).unwrap().dim(), 1);
        assert_eq!(radical_basis(&desk::split_pair::<F>()).unwrap().dim(), 0);
        // oracle: two arrows plus the surviving length-two path
        assert_eq!(radical_basis(&desk::aus2::<F>()).unwrap().dim(), 3);
    }

    #[test]
    fn radical_matches_path_hint() {
        for a in [desk::aus2::<F>(), desk::a3(), desk::kronecker(), desk::d4()] {
            let r = radical_basis(&a).unwrap().basis;
            let hint = a.hints().radical.clone().unwrap();
            assert_eq!(r.rank(), hint.rank());
            assert!(r.spans(&hint));
        }
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let a = desk::aus2::<F>();
        let r = radical_basis(&a).unwrap();
        let (b, _) = a.quotient(&r.basis);
        b.validate().unwrap();
        assert_eq!(radical_basis(&b).unwrap().dim(), 0);
    }

    #[test]
    fn characteristic_guard() {
        let err = radical_basis(&desk::aus2::<Fp<5>>()).unwrap_err();
        assert_eq!(err, Error::UnsupportedCharacteristic { p: 5, dim: 5 });
        assert!(err.to_string().contains("p > dim"));
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(primitive_idempotents(&desk::nak2::<F>()).unwrap().len(), 1);
        assert_eq!(primitive_idempotents(&desk::a2::<F>()).unwrap().len(), 2);
        assert_eq!(primitive_idempotents(&desk::aus2::<F>()).unwrap().len(), 2);
        assert_eq!(primitive_idempotents(&matrix_algebra::<F>()).unwrap().len(), 2);
    }

    #[test]
    fn split_basic_flags() {
        assert_eq!(is_split_basic(&desk::nak2::<F>()).unwrap(), SplitBasic { split: true, basic: true });
        assert_eq!(is_split_basic(&matrix_algebra::<F>()).unwrap(), SplitBasic { split: true, basic: false });
        // 2 is a non-residue mod 101 and -1 a non-residue mod 3
        assert!(!is_split_basic(&quadratic_extension::<F>(2, 0)).unwrap().split);
        assert!(!is_split_basic(&quadratic_extension::<Fp<3>>(-1, 0)).unwrap().split);
        // F_4 over F_2 trips the characteristic guard first
        assert!(matches!(
            is_split_basic(&quadratic_extension::<Fp<2>>(1, 1)),
            Err(Error::UnsupportedCharacteristic { .. })
        ));
    }

    #[test]
    fn non_split_idempotents_error() {
        assert!(matches!(primitive_idempotents(&quadratic_extension::<F>(2, 0)), Err(Error::NotSplit(_))));
    }

    #[test]
    fn roots_with_multiplicity() {
        // (t - 1)^2 (t - 3) = t^3 - 5t^2 + 7t - 3
        let p: Vec<F> = [-3i64, 7, -5, 1].iter().map(|&v| F::from_i64(v)).collect();
        assert_eq!(split_roots(&p), Some(vec![(F::new(1), 2), (F::new(3), 1)]));
        // t^2 - 2 has no roots mod 101
        let q: Vec<F> = [-2i64, 0, 1].iter().map(|&v| F::from_i64(v)).collect();
        assert_eq!(split_roots(&q), None);
    }
}
