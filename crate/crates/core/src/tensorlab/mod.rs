//! Tensor products `kQ ⊗ A` with a self-injective `A`, Dynkin types and τ-orbits.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{build_path_algebra_quotient, tensor_algebra, Algebra, Quiver, QuiverPresentation};
use crate::correspondence::check_class_b;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::homological::{ar_translate, is_injective, nakayama_on_projectives, strip, Sign, SummandKind};
use crate::invariants::{injective_dimension_regular, is_cogenerator, DimValue};
use crate::report::{ReportBuilder, VerificationReport};
use crate::repmod::{
    basic_sum, dual_module, hom_dim, indecomposables_isomorphic, injective, is_isomorphic, projective, regular_module,
    simple, tensor_modules, Module,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// The ADE type of the underlying graph, or `None` when it is not a Dynkin diagram.
pub fn is_dynkin(q: &Quiver) -> Result<Option<DynkinType>> {
    q.validate()?;
    if !q.is_connected() {
        return Err(Error::Hypothesis("the quiver is not connected".into()));
    }
    if !q.is_acyclic() {
        return Err(Error::Hypothesis("the quiver has an oriented cycle".into()));
    }
    let n = q.vertex_count;
    // a connected graph is a tree exactly when it has n - 1 edges; this also rules out multi-edges
    if q.arrows.len() != n - 1 {
        return Ok(None);
    }
    let mut adj = vec![Vec::new(); n];
    for a in &q.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Ok(Some(DynkinType::A(n))),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            Ok(match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType::E(n)),
                _ => None,
            })
        }
        _ => Ok(None),
    }
}

/// The path algebra of an acyclic quiver.
pub fn path_algebra<F: Field>(q: &Quiver) -> Result<Arc<Algebra<F>>> {
    if !q.is_acyclic() {
        return Err(Error::Hypothesis("path algebra of a quiver with an oriented cycle is infinite".into()));
    }
    build_path_algebra_quotient(&QuiverPresentation {
        quiver: q.clone(),
        relations: Vec::new(),
        nilpotency_bound: q.vertex_count.max(2),
    })
}

#[derive(Clone, Debug)]
pub struct OrbitStep<F: Field> {
    pub module: Module<F>,
    /// Projective summands dropped before translating, as `(vertex, multiplicity)`.
    pub stripped: Vec<(usize, usize)>,
    pub dimension_vector: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitOutcome {
    /// `τ^steps` of the start is zero.
    Closed { steps: usize },
    BoundExceeded { bound: usize },
    /// The module at `step` outgrew the dimension cap before the bound was reached.
    DimensionExceeded { step: usize, dim: usize },
}

#[derive(Clone, Debug)]
pub struct OrbitTrace<F: Field> {
    pub start: Module<F>,
    /// Step `k` holds `τ^k` of the start, step 0 with projective summands removed.
    pub steps: Vec<OrbitStep<F>>,
    pub outcome: OrbitOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub outcome: OrbitOutcome,
    pub dimension_vectors: Vec<Vec<usize>>,
}

impl<F: Field> OrbitTrace<F> {
    pub fn is_closed(&self) -> bool {
        matches!(self.outcome, OrbitOutcome::Closed { .. })
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary { outcome: self.outcome, dimension_vectors: self.steps.iter().map(|s| s.dimension_vector.clone()).collect() }
    }
}

/// Iterates the stable translate from `m` until it vanishes or `bound` steps have been taken.
pub fn dtr_orbit<F: Field>(m: &Module<F>, bound: usize) -> Result<OrbitTrace<F>> {
    dtr_orbit_capped(m, bound, usize::MAX)
}

/// As [`dtr_orbit`], also stopping once a step has dimension above `max_dim`.
pub fn dtr_orbit_capped<F: Field>(m: &Module<F>, bound: usize, max_dim: usize) -> Result<OrbitTrace<F>> {
    let st = strip(m, SummandKind::Projective)?;
    let mut cur = st.module;
    let mut steps = vec![OrbitStep { dimension_vector: cur.dimension_vector()?, module: cur.clone(), stripped: st.removed }];
    let mut outcome = OrbitOutcome::BoundExceeded { bound };
    if cur.is_zero() {
        outcome = OrbitOutcome::Closed { steps: 0 };
    } else {
        for k in 1..=bound {
            let r = ar_translate(&cur, Sign::Plus)?;
            cur = r.output;
            steps.push(OrbitStep { dimension_vector: cur.dimension_vector()?, module: cur.clone(), stripped: r.stripped });
            if cur.is_zero() {
                outcome = OrbitOutcome::Closed { steps: k };
                break;
            }
            if cur.dim() > max_dim {
                outcome = OrbitOutcome::DimensionExceeded { step: k, dim: cur.dim() };
                break;
            }
        }
    }
    Ok(OrbitTrace { start: m.clone(), steps, outcome })
}

fn require_selfinjective<F: Field>(a: &Arc<Algebra<F>>) -> Result<()> {
    match injective_dimension_regular(a, 1)?.value {
        DimValue::Exact(0) => Ok(()),
        v => Err(Error::Hypothesis(format!("the algebra is not self-injective (injective dimension {v})"))),
    }
}

/// For a self-injective algebra, `π` with `ν P_i ≅ P_{π(i)}`.
pub fn nakayama_permutation<F: Field>(a: &Arc<Algebra<F>>) -> Result<Vec<usize>> {
    require_selfinjective(a)?;
    let n = a.skeleton()?.vertex_count();
    let projectives = (0..n).map(|v| projective(a, v)).collect::<Result<Vec<_>>>()?;
    let mut perm = Vec::with_capacity(n);
    for p in &projectives {
        let nu = nakayama_on_projectives(p)?;
        let mut image = None;
        for (j, q) in projectives.iter().enumerate() {
            if indecomposables_isomorphic(&nu, q)? {
                image = Some(j);
                break;
            }
        }
        perm.push(image.ok_or_else(|| Error::internal("Nakayama image of a projective is not projective"))?);
    }
    Ok(perm)
}

fn factors<F: Field>(gamma: &Arc<Algebra<F>>) -> Result<(Arc<Algebra<F>>, Arc<Algebra<F>>)> {
    gamma.factors().cloned().ok_or_else(|| Error::contract("algebra is not a tensor product"))
}

/// `τ^k (M ⊗ Aε) ≅ τ^k M ⊗ A π^k(ε)` over `Γ = kQ ⊗ A` for `k = 1..=steps`, with the orbit lengths
/// of both sides compared up to `bound`.
pub fn verify_dtr_tensor_formula<F: Field>(
    gamma: &Arc<Algebra<F>>,
    m: &Module<F>,
    eps: usize,
    steps: usize,
    bound: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let (kq, a) = factors(gamma)?;
    if !Algebra::same(&kq, m.algebra()) {
        return Err(Error::contract("module is not over the first tensor factor"));
    }
    let perm = nakayama_permutation(&a)?;
    let mut r = ReportBuilder::new("dtr_tensor_formula", "translate of M ⊗ Aε against translate of M");
    r.note("nakayama permutation", json!(perm));
    let mut lhs = tensor_modules(gamma, m, &projective(&a, eps)?)?;
    let mut base = m.clone();
    let mut e = eps;
    for k in 1..=steps {
        lhs = ar_translate(&lhs, Sign::Plus)?.output;
        base = ar_translate(&base, Sign::Plus)?.output;
        e = perm[e];
        let rhs = tensor_modules(gamma, &base, &projective(&a, e)?)?;
        r.check(format!("step {k}"), is_isomorphic(&lhs, &rhs, seed)?, json!({ "dim": lhs.dim(), "expected_dim": rhs.dim() }));
    }
    let big = dtr_orbit(&tensor_modules(gamma, m, &projective(&a, eps)?)?, bound)?;
    let small = dtr_orbit(m, bound)?;
    r.check(
        "orbit lengths agree",
        big.outcome == small.outcome,
        json!({ "tensor": big.outcome, "quiver": small.outcome }),
    );
    Ok(r.finish())
}

/// Orbit modules over the tensor algebras in the test family stay far below this size when the
/// quiver is Dynkin.
pub const ORBIT_DIM_CAP: usize = 240;

#[derive(Clone, Debug)]
pub struct DynkinCriterion<F: Field> {
    pub report: VerificationReport,
    pub dynkin: Option<DynkinType>,
    pub orbits: Vec<OrbitTrace<F>>,
    /// The class check of the orbit-saturated module, when every orbit closed.
    pub class_b: Option<bool>,
}

/// Builds `Γ = kQ ⊗ A`, follows the τ-orbits of the injectives `I ⊗ Aε`, and compares closure plus
/// the class check of the saturated module with the Dynkin type of `Q`.
pub fn verify_dynkin_criterion<F: Field>(
    q: &Quiver,
    a: &Arc<Algebra<F>>,
    bound: usize,
    seed: u64,
) -> Result<DynkinCriterion<F>> {
    let dynkin = is_dynkin(q)?;
    require_selfinjective(a)?;
    let kq = path_algebra::<F>(q)?;
    let gamma = tensor_algebra(&kq, a);
    let mut r = ReportBuilder::new("dynkin_criterion", "closed translate orbits against Dynkin type");
    r.note("quiver", json!({ "vertices": q.vertex_count, "arrows": q.arrows.len(), "dynkin": dynkin.map(|d| d.to_string()) }));
    let na = a.skeleton()?.vertex_count();
    let mut injectives = Vec::new();
    for i in 0..q.vertex_count {
        for e in 0..na {
            injectives.push(tensor_modules(&gamma, &injective(&kq, i)?, &projective(a, e)?)?);
        }
    }
    let all_injective = injectives.iter().map(is_injective).collect::<Result<Vec<bool>>>()?.into_iter().all(|b| b);
    r.check("I ⊗ Aε are injective", all_injective, json!(injectives.len()));
    let orbits = injectives.iter().map(|x| dtr_orbit_capped(x, bound, ORBIT_DIM_CAP)).collect::<Result<Vec<_>>>()?;
    let summaries: Vec<OrbitSummary> = orbits.iter().map(OrbitTrace::summary).collect();
    let closed = orbits.iter().all(OrbitTrace::is_closed);
    r.note("orbits", json!(summaries.iter().map(|s| s.outcome).collect::<Vec<_>>()));
    let mut class_b = None;
    if closed {
        let n = gamma.skeleton()?.vertex_count();
        let mut parts: Vec<Module<F>> = Vec::new();
        for o in &orbits {
            parts.extend(o.steps.iter().filter(|s| !s.module.is_zero()).map(|s| s.module.clone()));
        }
        for v in 0..n {
            parts.push(projective(&gamma, v)?);
            parts.push(injective(&gamma, v)?);
        }
        let (qp, classes) = basic_sum(&gamma, &parts, seed)?;
        let pair = check_class_b(&gamma, &qp, 2, seed)?;
        let member = pair.certificate.member();
        r.note("saturated module", json!({ "dim": qp.dim(), "indecomposables": classes.len(), "member": member }));
        class_b = Some(member);
    }
    let positive = closed && class_b == Some(true);
    r.check(
        "verdict matches Dynkin type",
        positive == dynkin.is_some(),
        json!({ "closed": closed, "class_b": class_b, "dynkin": dynkin.is_some() }),
    );
    Ok(DynkinCriterion { report: r.finish(), dynkin, orbits, class_b })
}

/// `σ : DM ⊗ DN -> D(M ⊗ N)`, `σ(f ⊗ g)(m ⊗ n) = f(m) g(n)`, checked to be an isomorphism over
/// `A ⊗ B` (identified with `(A^op ⊗ B^op)^op` through equal structure constants).
pub fn verify_duality_tensor<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<VerificationReport> {
    let (a, b) = (m.algebra(), n.algebra());
    let gamma = tensor_algebra(a, b);
    let gamma_dual = tensor_algebra(&a.op(), &b.op());
    let mut r = ReportBuilder::new("duality_tensor", "D(M ⊗ N) against DM ⊗ DN");
    let gop = gamma.op();
    let same = (0..gamma.dim()).all(|k| gop.lmul(k) == gamma_dual.lmul(k));
    r.check("opposite of the tensor is the tensor of opposites", same, json!(gamma.dim()));
    let mn = tensor_modules(&gamma, m, n)?;
    let dmn = dual_module(&mn);
    let dm_dn = tensor_modules(&gamma_dual, &dual_module(m), &dual_module(n))?;
    let (dm, dn) = (m.dim(), n.dim());
    // pairing of the dual basis with the basis
    let eval = |f: usize, x: usize| if f == x { F::one() } else { F::zero() };
    let mut sigma = Matrix::zeros(dm * dn, dm * dn);
    for fa in 0..dm {
        for gb in 0..dn {
            for mc in 0..dm {
                for nd in 0..dn {
                    sigma[(mc * dn + nd, fa * dn + gb)] = eval(fa, mc) * eval(gb, nd);
                }
            }
        }
    }
    let linear = (0..gamma.dim()).all(|k| &sigma * dm_dn.action(k) == dmn.action(k) * &sigma);
    r.check("σ intertwines the actions", linear, json!(null));
    r.check("σ is bijective", sigma.inverse().is_some(), json!({ "dim": dm * dn }));
    Ok(r.finish())
}

/// `D(A_A) ⊗ B` is an injective cogenerator over `A ⊗ B` for self-injective `B`.
pub fn verify_injective_cogenerator<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> Result<VerificationReport> {
    require_selfinjective(b)?;
    let gamma = tensor_algebra(a, b);
    let x = tensor_modules(&gamma, &dual_module(&regular_module(&a.op())), &regular_module(b))?;
    let mut r = ReportBuilder::new("injective_cogenerator", "D(A) ⊗ B over A ⊗ B");
    r.note("algebra", json!({ "dim": gamma.dim(), "module_dim": x.dim() }));
    r.check("injective", is_injective(&x)?, json!(null));
    let n = gamma.skeleton()?.vertex_count();
    let socles = (0..n).map(|v| hom_dim(&simple(&gamma, v)?, &x)).collect::<Result<Vec<_>>>()?;
    r.check("every simple embeds", socles.iter().all(|&d| d > 0), json!(socles));
    r.check("cogenerator", is_cogenerator(&x)?, json!(null));
    Ok(r.finish())
}

#[cfg(test)]
mod tests;
