//! The maps between algebras with `dom.dim = inj.dim = n` and pairs `(T, Q)` of an algebra with an
//! `(n-2)`-self-orthogonal, translate-closed generator-cogenerator.

mod suites;

use std::sync::Arc;

use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::homological::higher_translate;
use crate::invariants::{
    add_membership, dominant_dimension, ext_vanishing_against_regular, injective_dimension_regular, is_cogenerator,
    is_generator, minimal_faithful, DimValue, HomDimReport, MinimalFaithful,
};
use crate::homological::ext_dims;
use crate::report::{ReportBuilder, VerificationReport};
use crate::repmod::{
    basic_sum, decompose, dual_module, end_algebra_op, hom_functor_map, hom_functor_module, regular_module,
    sum_modules, Bimodule, EndAlgebra, Module,
};

pub use suites::{
    verify_abelian_gproj_n2, verify_functor_lemmas, verify_gproj_equivalence, verify_homological_characterization,
    verify_opposite_closure, verify_structure_props, Characterization, GenCogenCandidate,
};

pub(crate) fn require_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::contract(format!("the correspondence needs n >= 2, got {n}")));
    }
    Ok(())
}

/// Dominant and injective dimension of an algebra against a target `n`.
#[derive(Clone, Debug)]
pub struct UReportBundle<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub n: usize,
    pub dom_report: HomDimReport<F>,
    pub inj_report: HomDimReport<F>,
    pub minimal_faithful: Option<MinimalFaithful<F>>,
    pub member: bool,
}

pub fn check_class_u<F: Field>(a: &Arc<Algebra<F>>, n: usize, bound: usize) -> Result<UReportBundle<F>> {
    require_n(n)?;
    let bound = bound.max(n + 1);
    let dom_report = dominant_dimension(a, bound)?;
    let inj_report = injective_dimension_regular(a, bound)?;
    let member = dom_report.value == DimValue::Exact(n) && inj_report.value == DimValue::Exact(n);
    let minimal_faithful = match minimal_faithful(a) {
        Ok(m) => Some(m),
        Err(Error::NoMinimalFaithful(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(UReportBundle { algebra: a.clone(), n, dom_report, inj_report, minimal_faithful, member })
}

/// The three defining conditions of the pair class, each with its evidence.
#[derive(Clone, Debug)]
pub struct ClassBCertificate<F: Field> {
    pub generator: bool,
    pub cogenerator: bool,
    /// `dim Ext^i(Q, Q)` for `i = 1..=n-2`.
    pub self_ext: Vec<usize>,
    pub up: Module<F>,
    pub down: Module<F>,
    pub translate_closed: bool,
}

impl<F: Field> ClassBCertificate<F> {
    pub fn gen_cogen(&self) -> bool {
        self.generator && self.cogenerator
    }

    pub fn orthogonal(&self) -> bool {
        self.self_ext.iter().all(|&d| d == 0)
    }

    pub fn member(&self) -> bool {
        self.gen_cogen() && self.orthogonal() && self.translate_closed
    }
}

#[derive(Clone, Debug)]
pub struct CorrespondencePair<F: Field> {
    pub base: Arc<Algebra<F>>,
    pub q: Module<F>,
    pub n: usize,
    pub certificate: ClassBCertificate<F>,
    /// The commuting right action on `q` when the pair came from an algebra.
    pub bimodule: Option<Bimodule<F>>,
}

/// Certifies `(t, q)`; `q` is replaced by its basic part first unless it is already basic.
pub fn check_class_b<F: Field>(t: &Arc<Algebra<F>>, q: &Module<F>, n: usize, seed: u64) -> Result<CorrespondencePair<F>> {
    require_n(n)?;
    if !Algebra::same(t, q.algebra()) {
        return Err(Error::contract("class check: module is over a different algebra"));
    }
    let q = if decompose(q, seed)?.is_basic() { q.clone() } else { basic_sum(t, std::slice::from_ref(q), seed)?.0 };
    let generator = is_generator(&q)?;
    let cogenerator = is_cogenerator(&q)?;
    let self_ext = if n > 2 { ext_dims(&q, &q, n - 2)?[1..].to_vec() } else { Vec::new() };
    let m = n as i64 - 1;
    let up = higher_translate(&q, m)?.output;
    let down = higher_translate(&q, -m)?.output;
    let translate_closed = add_membership(&sum_modules(t, &[up.clone(), down.clone()])?, &q, seed)?;
    let certificate = ClassBCertificate { generator, cogenerator, self_ext, up, down, translate_closed };
    Ok(CorrespondencePair { base: t.clone(), q, n, certificate, bimodule: None })
}

/// `F(Λ) = (End(I)^op, D I)` for the minimal faithful module `I`, re-certified.
pub fn f_map<F: Field>(a: &Arc<Algebra<F>>, n: usize, bound: usize, seed: u64) -> Result<CorrespondencePair<F>> {
    let u = check_class_u(a, n, bound)?;
    if !u.member {
        return Err(Error::Hypothesis(format!(
            "dominant dimension {} and injective dimension {} are not both {n}",
            u.dom_report.value, u.inj_report.value
        )));
    }
    let i = u.minimal_faithful.ok_or_else(|| Error::internal("member algebra without a minimal faithful module"))?.module;
    let end = end_algebra_op(&i)?;
    let q = Module::new(end.algebra.clone(), end.maps.iter().map(Matrix::transpose).collect())?;
    let right = i.actions().iter().map(Matrix::transpose).collect();
    let bimodule = Bimodule::new(q.clone(), a.clone(), right)?;
    let mut pair = check_class_b(&end.algebra, &q, n, seed)?;
    if pair.q.dim() != q.dim() || !pair.q.actions().iter().zip(q.actions()).all(|(x, y)| x == y) {
        return Err(Error::internal("dual of a basic module was not basic"));
    }
    pair.bimodule = Some(bimodule);
    Ok(pair)
}

/// `G(T, Q) = End(Q)^op` with its class-U bundle.
#[derive(Clone, Debug)]
pub struct GResult<F: Field> {
    pub end: EndAlgebra<F>,
    pub u: UReportBundle<F>,
}

pub fn g_map<F: Field>(pair: &CorrespondencePair<F>, bound: usize) -> Result<GResult<F>> {
    if !pair.certificate.member() {
        return Err(Error::Hypothesis("the pair does not satisfy the defining conditions".into()));
    }
    let end = end_algebra_op(&pair.q)?;
    let u = check_class_u(&end.algebra, pair.n, bound)?;
    Ok(GResult { end, u })
}

fn flatten<F: Field>(ms: &[Matrix<F>], len: usize) -> Matrix<F> {
    let cols: Vec<Vec<F>> = ms.iter().map(|m| m.data().to_vec()).collect();
    Matrix::from_columns(len, &cols)
}

/// Checks that `b_k -> images[k]` (matrices in the span of `end.maps`) defines a ring isomorphism
/// `src -> end.algebra`, recording each step in `report`.
fn check_canonical_ring_map<F: Field>(
    report: &mut ReportBuilder,
    src: &Arc<Algebra<F>>,
    images: &[Matrix<F>],
    end: &EndAlgebra<F>,
) -> Result<bool> {
    let d = src.dim();
    let e = end.algebra.dim();
    if !report.check("dimension precheck", d == e, json!({ "source": d, "endomorphisms": e })) {
        return Ok(false);
    }
    let len = end.module.dim() * end.module.dim();
    let basis = flatten(&end.maps, len);
    let rhs = flatten(images, len);
    let coords = match basis.solve(&rhs)? {
        Some(c) => c,
        None => {
            report.check("images are endomorphisms", false, json!(null));
            return Ok(false);
        }
    };
    report.check("images are endomorphisms", true, json!(d));
    let phi = |x: &[F]| coords.mul_vec(x);
    let mut multiplicative = true;
    let mut first_bad = None;
    for i in 0..d {
        for j in 0..d {
            let lhs = phi(&src.product_of_basis(i, j));
            let rhs = end.algebra.mul(&coords.column(i), &coords.column(j));
            if lhs != rhs {
                multiplicative = false;
                first_bad.get_or_insert((i, j));
            }
        }
    }
    report.check("multiplicative on all basis pairs", multiplicative, json!({ "pairs": d * d, "first_failure": first_bad }));
    let unital = phi(src.unit()) == end.algebra.unit();
    report.check("unital", unital, json!(null));
    let bijective = coords.rank() == d;
    report.check("bijective", bijective, json!({ "rank": coords.rank() }));
    Ok(multiplicative && unital && bijective)
}

/// Which side of the correspondence a roundtrip starts from.
#[derive(Clone, Debug)]
pub enum RoundtripInput<'a, F: Field> {
    Algebra(&'a Arc<Algebra<F>>),
    Pair(&'a CorrespondencePair<F>),
}

pub fn roundtrip<F: Field>(input: RoundtripInput<'_, F>, n: usize, bound: usize, seed: u64) -> Result<VerificationReport> {
    match input {
        RoundtripInput::Algebra(a) => roundtrip_algebra(a, n, bound, seed),
        RoundtripInput::Pair(p) => roundtrip_pair(p),
    }
}

/// `Λ -> End_T(Q)^op` given by the right action of `Λ` on `Q = D I`.
fn roundtrip_algebra<F: Field>(a: &Arc<Algebra<F>>, n: usize, bound: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("roundtrip.algebra", "G after F recovers the algebra");
    let pair = f_map(a, n, bound, seed)?;
    let bi = pair.bimodule.as_ref().ok_or_else(|| Error::internal("F output without its right action"))?;
    let end = end_algebra_op(&pair.q)?;
    check_canonical_ring_map(&mut report, a, &bi.right, &end)?;
    Ok(report.finish())
}

/// For `Σ = End(Q)^op` and `H = Hom_T(Q, D(T_T))`: the right action of `T` on `D(T_T)` gives
/// `T -> End_Σ(H)^op`, and `q -> (h -> h(q)(1))` gives `Q -> D H`.
fn roundtrip_pair<F: Field>(pair: &CorrespondencePair<F>) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("roundtrip.pair", "F after G recovers the pair");
    let t = &pair.base;
    let q = &pair.q;
    let sigma = end_algebra_op(q)?;
    let dt = dual_module(&regular_module(&t.op()));
    let h = hom_functor_module(&sigma, &dt)?;
    report.note("hom module", json!({ "sigma_dim": sigma.algebra.dim(), "hom_dim": h.module.dim() }));
    let theta: Vec<Matrix<F>> =
        (0..t.dim()).map(|k| hom_functor_map(&h, &h, &t.lmul(k).transpose())).collect::<Result<_>>()?;
    let end_h = end_algebra_op(&h.module)?;
    check_canonical_ring_map(&mut report, t, &theta, &end_h)?;
    // psi has one row per hom basis element
    let unit = Matrix::new(1, t.dim(), t.unit().to_vec());
    let rows: Vec<Vec<F>> = h.basis.iter().map(|hk| (&unit * hk).row(0).to_vec()).collect();
    let psi = Matrix::from_rows(rows, q.dim());
    let linear = (0..t.dim()).all(|b| &psi * q.action(b) == &theta[b].transpose() * &psi);
    report.check("evaluation map is T-linear", linear, json!(null));
    let bijective = psi.is_square() && psi.rank() == q.dim();
    report.check("evaluation map is bijective", bijective, json!({ "rank": psi.rank(), "dim": q.dim() }));
    Ok(report.finish())
}

/// Class-U report for an algebra as a verification report.
pub fn class_u_report<F: Field>(u: &UReportBundle<F>) -> VerificationReport {
    let mut r = ReportBuilder::new("class_u", "dominant and injective dimension both equal n");
    r.check(
        "dominant dimension",
        u.dom_report.value == DimValue::Exact(u.n),
        json!({ "value": u.dom_report.value, "terms": u.dom_report.witness.terms.iter().map(Module::dim).collect::<Vec<_>>() }),
    );
    r.check(
        "injective dimension",
        u.inj_report.value == DimValue::Exact(u.n),
        json!({ "value": u.inj_report.value, "terms": u.inj_report.witness.terms.iter().map(Module::dim).collect::<Vec<_>>() }),
    );
    r.finish()
}

/// Class-B certificate as a verification report.
pub fn class_b_report<F: Field>(p: &CorrespondencePair<F>) -> VerificationReport {
    let c = &p.certificate;
    let mut r = ReportBuilder::new("class_b", "self-orthogonal translate-closed generator-cogenerator");
    r.check("generator", c.generator, json!({ "dim": p.q.dim() }));
    r.check("cogenerator", c.cogenerator, json!({ "dim": p.q.dim() }));
    r.check(
        "self-orthogonal",
        c.orthogonal(),
        json!({ "ext_dims": c.self_ext, "vacuous": p.n == 2 }),
    );
    r.check(
        "translate closed",
        c.translate_closed,
        json!({ "up_dim": c.up.dim(), "down_dim": c.down.dim() }),
    );
    r.finish()
}

/// Gorenstein-projective cross-check used by several suites.
pub(crate) fn ext_gproj<F: Field>(m: &Module<F>, n: usize) -> Result<bool> {
    ext_vanishing_against_regular(m, n + 2)
}

#[cfg(test)]
mod tests;
