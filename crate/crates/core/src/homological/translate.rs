//! Transpose, Auslander-Reiten translates, the Nakayama functor and stable stripping.

use super::{projective_cover, projective_sum, syzygy, ProjMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::repmod::{dual_module, hom_basis, projective, regular_module, Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandKind {
    Projective,
    Injective,
}

#[derive(Clone, Debug)]
pub struct StripResult<F: Field> {
    pub module: Module<F>,
    /// Embedding of the remaining summand into the input.
    pub inclusion: Matrix<F>,
    /// Column basis of a module complement of the remaining summand, made of removed summands.
    pub complement: Matrix<F>,
    /// `(vertex, multiplicity)` of every removed indecomposable summand.
    pub removed: Vec<(usize, usize)>,
}

/// Removes projective summands vertex by vertex: the multiplicity of `P_i` is the rank of the
/// pairing `Hom(m, P_i) x e_i m -> top(P_i)`, and a split epimorphism onto those copies has the
/// complement as its kernel.
fn strip_projective<F: Field>(m: &Module<F>) -> Result<StripResult<F>> {
    let a = m.algebra().clone();
    let s = a.skeleton()?;
    let mut cur = m.clone();
    let mut inclusion = Matrix::identity(m.dim());
    let mut complement: Vec<Vec<F>> = Vec::new();
    let mut removed = Vec::new();
    for i in 0..s.vertex_count() {
        if cur.is_zero() {
            break;
        }
        let ei = cur.act(&s.idempotents[i]).column_space();
        if ei.cols() == 0 {
            continue;
        }
        let p = projective(&a, i)?;
        let homs = hom_basis(&cur, &p)?;
        if homs.is_empty() {
            continue;
        }
        // top coefficient of an element of P_i given in P_i coordinates
        let theta = Matrix::new(1, a.dim(), s.theta.row(i).to_vec());
        let top = &theta * &s.proj_basis[i];
        let rows: Vec<Vec<F>> = homs.iter().map(|h| (&(&top * h) * &ei).row(0).to_vec()).collect();
        let pairing = Matrix::from_rows(rows, ei.cols());
        let chosen = pairing.transpose().pivot_columns();
        if chosen.is_empty() {
            continue;
        }
        let parts: Vec<&Matrix<F>> = chosen.iter().map(|&c| &homs[c]).collect();
        let split = Matrix::vstack_cols(cur.dim(), &parts);
        // a module section of the split map, generated by lifts of the generators
        let restricted = &split * &ei;
        for j in 0..chosen.len() {
            let mut g = vec![F::zero(); split.rows()];
            for (t, c) in s.generators[i].iter().enumerate() {
                g[j * p.dim() + t] = *c;
            }
            let c = restricted
                .solve(&Matrix::column_vector(&g))?
                .ok_or_else(|| Error::internal("split epimorphism onto a projective has no lift"))?;
            let x = ei.mul_vec(&c.column(0));
            for act in cur.actions() {
                complement.push(inclusion.mul_vec(&act.mul_vec(&x)));
            }
        }
        let (rest, incl) = cur.submodule(&split.kernel())?;
        if rest.dim() + chosen.len() * p.dim() != cur.dim() {
            return Err(Error::internal("projective summand split has the wrong dimension"));
        }
        inclusion = &inclusion * &incl;
        removed.push((i, chosen.len()));
        cur = rest;
    }
    let complement = Matrix::from_columns(m.dim(), &complement).column_space();
    if complement.cols() + cur.dim() != m.dim() {
        return Err(Error::internal("removed projective summands do not complement the rest"));
    }
    Ok(StripResult { module: cur, inclusion, complement, removed })
}

pub fn strip<F: Field>(m: &Module<F>, kind: SummandKind) -> Result<StripResult<F>> {
    match kind {
        SummandKind::Projective => strip_projective(m),
        SummandKind::Injective => {
            let d = strip_projective(&dual_module(m))?;
            // D m = K ⊕ C; the retraction onto K along C dualises to an embedding D K -> m
            let k = d.module.dim();
            let change = Matrix::hstack(&[&d.inclusion, &d.complement]);
            let inv = change.inverse().ok_or_else(|| Error::internal("strip complement is not direct"))?;
            let retraction = inv.block(0, 0, k, m.dim());
            let inclusion = retraction.transpose();
            let (module, inclusion) = m.submodule(&inclusion)?;
            let complement = d.inclusion.transpose().kernel();
            Ok(StripResult { module, inclusion, complement, removed: d.removed })
        }
    }
}

pub fn is_projective<F: Field>(m: &Module<F>) -> Result<bool> {
    let c = projective_cover(m)?;
    Ok(c.projective.dim() == m.dim())
}

pub fn is_injective<F: Field>(m: &Module<F>) -> Result<bool> {
    is_projective(&dual_module(m))
}

/// `Tr m`, a module over the opposite algebra, from a minimal presentation.
pub fn transpose<F: Field>(m: &Module<F>) -> Result<Module<F>> {
    let a = m.algebra().clone();
    let c0 = projective_cover(m)?;
    let (k, incl) = c0.projective.submodule(&c0.map.kernel())?;
    let c1 = projective_cover(&k)?;
    let images: Vec<Vec<F>> = c1.generators.iter().map(|g| incl.mul_vec(g)).collect();
    let d1 = ProjMap::from_images(&a, &c1.vertices, &c0.vertices, &images)?;
    let t = d1.transpose();
    let target = projective_sum(&t.algebra, &t.dst)?;
    Ok(target.quotient(&t.matrix()?)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslateKind {
    Tr,
    DTr,
    TrD,
    Syzygy(i64),
    Higher(i64),
}

#[derive(Clone, Debug)]
pub struct TranslateResult<F: Field> {
    pub input: Module<F>,
    pub kind: TranslateKind,
    pub output: Module<F>,
    /// Summands of the input ignored by the stable convention, as `(vertex, multiplicity)`.
    pub stripped: Vec<(usize, usize)>,
}

/// `τ m = D Tr m` for `Plus`, `τ⁻ m = Tr D m` for `Minus`.
pub fn ar_translate<F: Field>(m: &Module<F>, sign: Sign) -> Result<TranslateResult<F>> {
    match sign {
        Sign::Plus => {
            let st = strip(m, SummandKind::Projective)?;
            let output = dual_module(&transpose(&st.module)?);
            Ok(TranslateResult { input: m.clone(), kind: TranslateKind::DTr, output, stripped: st.removed })
        }
        Sign::Minus => {
            let st = strip(&dual_module(m), SummandKind::Projective)?;
            let output = transpose(&st.module)?;
            Ok(TranslateResult { input: m.clone(), kind: TranslateKind::TrD, output, stripped: st.removed })
        }
    }
}

/// `□^k m = τ Ω^{k-1} m` for `k >= 1` and `□^k m = τ⁻ Ω^{k+1} m` for `k <= -1`.
pub fn higher_translate<F: Field>(m: &Module<F>, k: i64) -> Result<TranslateResult<F>> {
    let r = match k {
        0 => return Err(Error::contract("higher translate needs a nonzero degree")),
        1 => ar_translate(m, Sign::Plus)?,
        -1 => ar_translate(m, Sign::Minus)?,
        k if k > 0 => ar_translate(&syzygy(m, k - 1)?, Sign::Plus)?,
        k => ar_translate(&syzygy(m, k + 1)?, Sign::Minus)?,
    };
    Ok(TranslateResult { input: m.clone(), kind: TranslateKind::Higher(k), output: r.output, stripped: r.stripped })
}

/// `D Hom(p, A)` for a projective module `p`.
pub fn nakayama_on_projectives<F: Field>(p: &Module<F>) -> Result<Module<F>> {
    if !is_projective(p)? {
        return Err(Error::contract("Nakayama functor applied to a non-projective module"));
    }
    let a = p.algebra().clone();
    let reg = regular_module(&a);
    let basis = hom_basis(p, &reg)?;
    let r = basis.len();
    let op = a.op();
    let action = if r == 0 {
        vec![Matrix::zeros(0, 0); a.dim()]
    } else {
        let len = a.dim() * p.dim();
        let cols: Vec<Vec<F>> = basis.iter().map(|h| h.data().to_vec()).collect();
        let flat = Matrix::from_columns(len, &cols);
        let left = flat.left_inverse().ok_or_else(|| Error::internal("hom basis is not independent"))?;
        (0..a.dim())
            .map(|b| {
                let imgs: Vec<Vec<F>> = basis.iter().map(|h| left.mul_vec((a.rmul(b) * h).data())).collect();
                Matrix::from_columns(r, &imgs)
            })
            .collect()
    };
    let hom = Module::new(op, action)?;
    Ok(dual_module(&hom))
}
