//! Builds the algebras and modules of a model over a fixed prime field.

use std::collections::BTreeMap;
use std::sync::Arc;

use domdim::algebra::{build_path_algebra_quotient, tensor_algebra, Algebra, Quiver, QuiverArrow, QuiverPresentation, Relation};
use domdim::error::Error;
use domdim::exactla::{Field, Matrix};
use domdim::repmod::{dual_module, injective, projective, regular_module, simple, sum_modules, tensor_modules, Module};

use crate::model::{
    algebra_order, module_order, AlgebraSpec, ConstantsSpec, Construction, Diagnostic, LoadedModel, ModuleSpec, QuiverSpec,
    RelationDecl,
};

/// A model failure: bad input, or a guard of the exact methods.
#[derive(Debug, Clone)]
pub enum BuildError {
    Invalid(Diagnostic),
    Guard(Diagnostic),
}

impl BuildError {
    pub fn diagnostic(&self) -> &Diagnostic {
        match self {
            BuildError::Invalid(d) | BuildError::Guard(d) => d,
        }
    }
}

pub struct Workspace<F: Field> {
    pub algebras: BTreeMap<String, Arc<Algebra<F>>>,
    pub modules: BTreeMap<String, Module<F>>,
}

fn wrap(m: &LoadedModel, entity: &str, e: Error) -> BuildError {
    let d = m.diagnose(entity, e.to_string());
    if e.is_guard() {
        BuildError::Guard(d)
    } else {
        BuildError::Invalid(d)
    }
}

pub fn field_vec<F: Field>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

fn field_matrix<F: Field>(rows: &[Vec<i64>]) -> Option<Matrix<F>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(Matrix::from_rows(rows.iter().map(|r| field_vec(r)).collect(), cols))
}

fn quiver_algebra<F: Field>(q: &QuiverSpec) -> Result<Arc<Algebra<F>>, Error> {
    let arrows: Vec<QuiverArrow> =
        q.arrows.iter().map(|(s, t, l)| QuiverArrow { source: *s, target: *t, label: l.clone() }).collect();
    let quiver = Quiver { vertex_count: q.vertices, arrows };
    let lookup = |label: &String| {
        quiver
            .arrows
            .iter()
            .position(|a| &a.label == label)
            .ok_or_else(|| Error::Validation(format!("relation uses unknown arrow {label:?}")))
    };
    let path = |labels: &[String]| labels.iter().map(lookup).collect::<Result<Vec<usize>, Error>>();
    let mut relations = Vec::new();
    for r in &q.relations {
        let terms = match r {
            RelationDecl::Zero(p) => vec![(F::one(), path(p)?)],
            RelationDecl::Combination { terms } => {
                terms.iter().map(|(c, p)| Ok((F::from_i64(*c), path(p)?))).collect::<Result<Vec<_>, Error>>()?
            }
        };
        relations.push(Relation { terms });
    }
    let nilpotency_bound = q.nilpotency_bound.unwrap_or(q.vertices.max(2));
    build_path_algebra_quotient(&QuiverPresentation { quiver, relations, nilpotency_bound })
}

fn constants_algebra<F: Field>(c: &ConstantsSpec) -> Result<Arc<Algebra<F>>, Error> {
    let d = c.products.len();
    let labels = c.labels.clone().unwrap_or_else(|| (0..d).map(|i| format!("b{i}")).collect());
    let products: Vec<Vec<Vec<F>>> = c.products.iter().map(|row| row.iter().map(|v| field_vec(v)).collect()).collect();
    Algebra::from_structure_constants(labels, &products, field_vec(&c.unit))
}

/// Every declared algebra and module, each checked against its axioms.
pub fn build<F: Field>(m: &LoadedModel) -> Result<Workspace<F>, BuildError> {
    let model = &m.model;
    let mut algebras: BTreeMap<String, Arc<Algebra<F>>> = BTreeMap::new();
    for i in algebra_order(m).map_err(BuildError::Invalid)? {
        let decl = &model.algebras[i];
        let a = match &decl.spec {
            AlgebraSpec::Quiver(q) => quiver_algebra(q),
            AlgebraSpec::StructureConstants(c) => constants_algebra(c),
            AlgebraSpec::Tensor([l, r]) => Ok(tensor_algebra(&algebras[l], &algebras[r])),
            AlgebraSpec::Opposite(b) => Ok(algebras[b].op()),
        }
        .map_err(|e| wrap(m, &decl.name, e))?;
        // one guard for every algebra, whether or not its structure came from a quiver
        if F::characteristic() <= a.dim() as u64 {
            let e = Error::UnsupportedCharacteristic { p: F::characteristic(), dim: a.dim() };
            return Err(wrap(m, &decl.name, e));
        }
        a.skeleton().map_err(|e| wrap(m, &decl.name, e))?;
        algebras.insert(decl.name.clone(), a);
    }
    let mut modules: BTreeMap<String, Module<F>> = BTreeMap::new();
    for i in module_order(m).map_err(BuildError::Invalid)? {
        let decl = &model.modules[i];
        let name = &decl.name;
        let on = decl.algebra.as_ref().map(|a| algebras[a].clone());
        let x = match &decl.spec {
            ModuleSpec::Actions(acts) => {
                let a = on.clone().expect("checked at load");
                let mats = acts
                    .iter()
                    .map(|r| field_matrix::<F>(r))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| m.diagnose(name, "action matrices have ragged rows"))
                    .map_err(BuildError::Invalid)?;
                Module::new(a, mats)
            }
            ModuleSpec::Construct(c) => {
                let a = on.clone().expect("checked at load");
                match Construction::parse(c).expect("checked at load") {
                    Construction::Regular => Ok(regular_module(&a)),
                    Construction::DualRegular => Ok(dual_module(&regular_module(&a.op()))),
                    Construction::Simple(v) => vertex_checked(&a, v).and_then(|_| simple(&a, v)),
                    Construction::Projective(v) => vertex_checked(&a, v).and_then(|_| projective(&a, v)),
                    Construction::Injective(v) => vertex_checked(&a, v).and_then(|_| injective(&a, v)),
                }
            }
            ModuleSpec::Dual(y) => Ok(dual_module(&modules[y])),
            ModuleSpec::Sum(ys) => {
                let parts: Vec<Module<F>> = ys.iter().map(|y| modules[y].clone()).collect();
                let a = parts[0].algebra().clone();
                sum_modules(&a, &parts)
            }
            ModuleSpec::Tensor([l, r]) => tensor_modules(&on.clone().expect("checked at load"), &modules[l], &modules[r]),
        }
        .map_err(|e| wrap(m, name, e))?;
        if let Some(a) = &on {
            if !Algebra::same(a, x.algebra()) {
                return Err(BuildError::Invalid(m.diagnose(name, "module is not over the declared algebra")));
            }
        }
        modules.insert(name.clone(), x);
    }
    Ok(Workspace { algebras, modules })
}

fn vertex_checked<F: Field>(a: &Arc<Algebra<F>>, v: usize) -> Result<(), Error> {
    let n = a.skeleton()?.vertex_count();
    if v >= n {
        return Err(Error::Validation(format!("vertex {v} out of range; the algebra has {n} vertices")));
    }
    Ok(())
}
