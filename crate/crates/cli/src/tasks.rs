//! Task execution over a built workspace.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use domdim::algebra::{Algebra, Quiver};
use domdim::correspondence::{
    check_class_b, check_class_u, class_b_report, class_u_report, f_map, g_map, roundtrip, verify_abelian_gproj_n2,
    verify_functor_lemmas, verify_gproj_equivalence, verify_homological_characterization, verify_opposite_closure,
    verify_structure_props, CorrespondencePair, RoundtripInput,
};
use domdim::error::Error;
use domdim::exactla::Field;
use domdim::homological::{higher_translate, min_resolution, Direction};
use domdim::invariants::{dominant_dimension, injective_dimension_regular, minimal_faithful, saturate_catalog};
use domdim::report::{ReportBuilder, VerificationReport};
use domdim::repmod::Module;
use domdim::tensorlab::{
    dtr_orbit, verify_dtr_tensor_formula, verify_duality_tensor, verify_dynkin_criterion, verify_injective_cogenerator,
};

use crate::build::Workspace;
use crate::model::{ResolutionDirection, TaskDecl, TaskKind};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub bound: usize,
    pub seed: u64,
}

/// Why a task did not produce a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// The inputs do not meet the task's requirements.
    Input,
    /// A guard of the exact methods, or an internal consistency failure.
    Guard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TaskResult {
    Verified { report: VerificationReport },
    Computed { output: Value },
    Error { kind: ErrorKind, message: String },
}

impl TaskResult {
    /// Exit status contribution: 0 pass, 1 failed check, 2 input error, 3 guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            TaskResult::Verified { report } if report.failed() => 1,
            TaskResult::Verified { .. } | TaskResult::Computed { .. } => 0,
            TaskResult::Error { kind: ErrorKind::Input, .. } => 2,
            TaskResult::Error { kind: ErrorKind::Guard, .. } => 3,
        }
    }

    pub fn status(&self) -> String {
        match self {
            TaskResult::Verified { report } => match &report.verdict {
                domdim::report::Verdict::Pass => "pass".into(),
                domdim::report::Verdict::Fail => "fail".into(),
                domdim::report::Verdict::Skipped { reason } => format!("skipped ({reason})"),
            },
            TaskResult::Computed { .. } => "computed".into(),
            TaskResult::Error { kind, message } => format!("{kind:?} error: {message}").to_lowercase(),
        }
    }
}

fn from_error(e: Error) -> TaskResult {
    let kind = if e.is_guard() { ErrorKind::Guard } else { ErrorKind::Input };
    TaskResult::Error { kind, message: e.to_string() }
}

pub fn run_task<F: Field>(w: &Workspace<F>, t: &TaskDecl, opts: RunOptions) -> TaskResult {
    let result = match execute(w, &t.kind, opts) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    match (&t.expect, result) {
        (Some(expect), TaskResult::Computed { output }) => {
            let mut r = ReportBuilder::new("expected_values", t.kind.kind_name());
            for (key, want) in expect {
                let got = output.get(key).cloned().unwrap_or(Value::Null);
                r.check(key.clone(), &got == want, json!({ "expected": want, "computed": got }));
            }
            r.note("output", output);
            TaskResult::Verified { report: r.finish() }
        }
        (Some(_), TaskResult::Verified { .. }) => TaskResult::Error {
            kind: ErrorKind::Input,
            message: "\"expect\" applies to computation tasks only".into(),
        },
        (_, r) => r,
    }
}

fn pair<F: Field>(w: &Workspace<F>, algebra: &str, module: &str, n: usize, seed: u64) -> Result<CorrespondencePair<F>, Error> {
    check_class_b(&w.algebras[algebra], &w.modules[module], n, seed)
}

fn verified(report: VerificationReport) -> Result<TaskResult, Error> {
    Ok(TaskResult::Verified { report })
}

fn resolution_json(terms: &[Vec<usize>], minimal: bool) -> Value {
    json!({ "term_vertices": terms, "minimal": minimal })
}

fn dims<F: Field>(m: &Module<F>) -> Result<Value, Error> {
    Ok(json!({ "dim": m.dim(), "dimension_vector": m.dimension_vector()? }))
}

fn execute<F: Field>(w: &Workspace<F>, kind: &TaskKind, opts: RunOptions) -> Result<TaskResult, Error> {
    let RunOptions { bound, seed } = opts;
    let alg = |name: &str| -> Arc<Algebra<F>> { w.algebras[name].clone() };
    let module = |name: &str| -> Module<F> { w.modules[name].clone() };
    match kind {
        TaskKind::Invariants { algebra } => {
            let a = alg(algebra);
            let dd = dominant_dimension(&a, bound)?;
            let id = injective_dimension_regular(&a, bound)?;
            let mf = match minimal_faithful(&a) {
                Ok(m) => json!({ "dim": m.module.dim(), "vertices": m.vertices }),
                Err(Error::NoMinimalFaithful(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            Ok(TaskResult::Computed {
                output: json!({
                    "dimension": a.dim(),
                    "dominant_dimension": dd.value.to_string(),
                    "injective_dimension": id.value.to_string(),
                    "minimal_faithful": mf,
                    "injective_resolution": resolution_json(&id.witness.term_vertices, id.witness.minimal),
                }),
            })
        }
        TaskKind::Resolve { module: m, direction, length } => {
            let dir = match direction {
                ResolutionDirection::Projective => Direction::Projective,
                ResolutionDirection::Injective => Direction::Injective,
            };
            let r = min_resolution(&module(m), dir, length.unwrap_or(bound))?;
            r.verify()?;
            Ok(TaskResult::Computed { output: resolution_json(&r.term_vertices, r.minimal) })
        }
        TaskKind::Translate { module: m, k } => {
            let r = higher_translate(&module(m), *k)?;
            let mut out = dims(&r.output)?;
            out["kind"] = json!(format!("{:?}", r.kind));
            out["stripped"] = json!(r.stripped);
            Ok(TaskResult::Computed { output: out })
        }
        TaskKind::Orbit { module: m } => {
            let o = dtr_orbit(&module(m), bound)?;
            Ok(TaskResult::Computed { output: serde_json::to_value(o.summary()).map_err(|e| Error::internal(e.to_string()))? })
        }
        TaskKind::ClassU { algebra, n } => verified(class_u_report(&check_class_u(&alg(algebra), *n, bound)?)),
        TaskKind::ClassB { algebra, module: m, n } => verified(class_b_report(&pair(w, algebra, m, *n, seed)?)),
        TaskKind::F { algebra, n } => verified(class_b_report(&f_map(&alg(algebra), *n, bound, seed)?)),
        TaskKind::G { algebra, module: m, n } => {
            verified(class_u_report(&g_map(&pair(w, algebra, m, *n, seed)?, bound)?.u))
        }
        TaskKind::Roundtrip { algebra, module: None, n } => {
            verified(roundtrip(RoundtripInput::Algebra(&alg(algebra)), *n, bound, seed)?)
        }
        TaskKind::Roundtrip { algebra, module: Some(m), n } => {
            verified(roundtrip(RoundtripInput::Pair(&pair(w, algebra, m, *n, seed)?), *n, bound, seed)?)
        }
        TaskKind::StructureProps { algebra, n } => verified(verify_structure_props(&alg(algebra), *n, bound, seed)?),
        TaskKind::FunctorLemmas { algebra, module: m, n } => {
            let t = alg(algebra);
            let cat = saturate_catalog(&t, bound, seed)?;
            verified(verify_functor_lemmas(&t, &module(m), &cat, *n)?)
        }
        TaskKind::GprojEquivalence { algebra, module: m, n } => {
            let p = pair(w, algebra, m, *n, seed)?;
            let cat_t = saturate_catalog(&p.base, bound, seed)?;
            let g = g_map(&p, bound)?;
            let cat_s = saturate_catalog(&g.end.algebra, bound, seed)?;
            verified(verify_gproj_equivalence(&p, &cat_t, &g.end, &cat_s)?)
        }
        TaskKind::OppositeClosure { algebra, module: m, n } => {
            verified(verify_opposite_closure(&pair(w, algebra, m, *n, seed)?, seed)?)
        }
        TaskKind::Characterization { algebra, n } => {
            let t = alg(algebra);
            let cat = saturate_catalog(&t, bound, seed)?;
            verified(verify_homological_characterization(&t, *n, &cat, bound, seed)?.report)
        }
        TaskKind::AbelianGproj { algebra } => {
            let g = alg(algebra);
            let cat = saturate_catalog(&g, bound, seed)?;
            verified(verify_abelian_gproj_n2(&g, &cat, bound, seed)?)
        }
        TaskKind::DtrTensorFormula { algebra, module: m, eps, steps } => {
            verified(verify_dtr_tensor_formula(&alg(algebra), &module(m), *eps, *steps, bound, seed)?)
        }
        TaskKind::DynkinCriterion { quiver, selfinjective } => {
            let q = Quiver::new(quiver.vertices, &quiver.arrows);
            let c = verify_dynkin_criterion(&q, &alg(selfinjective), bound, seed)?;
            let mut report = c.report;
            let summaries: Vec<_> = c.orbits.iter().map(|o| o.summary()).collect();
            report.witnesses.push(domdim::report::Witness {
                label: "orbit traces".into(),
                holds: true,
                detail: serde_json::to_value(summaries).map_err(|e| Error::internal(e.to_string()))?,
            });
            verified(report)
        }
        TaskKind::DualityTensor { left, right } => verified(verify_duality_tensor(&module(left), &module(right))?),
        TaskKind::InjectiveCogenerator { algebra, selfinjective } => {
            verified(verify_injective_cogenerator(&alg(algebra), &alg(selfinjective))?)
        }
    }
}
