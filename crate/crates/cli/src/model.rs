//! Model file schema, parsing and reference resolution.
//!
//! Field elements are plain JSON integers; they are reduced modulo the working prime when the
//! model is built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub prime: Option<u64>,
    #[serde(default)]
    pub algebras: Vec<AlgebraDecl>,
    #[serde(default)]
    pub modules: Vec<ModuleDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AlgebraDecl {
    pub name: String,
    #[serde(flatten)]
    pub spec: AlgebraSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSpec {
    Quiver(QuiverSpec),
    StructureConstants(ConstantsSpec),
    /// Names of the two factors.
    Tensor([String; 2]),
    Opposite(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    /// `[source, target, label]`.
    #[serde(default)]
    pub arrows: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub relations: Vec<RelationDecl>,
    pub nilpotency_bound: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RelationDecl {
    /// A path, as arrow labels in composition order, that is set to zero.
    Zero(Vec<String>),
    /// `Σ c · path = 0`.
    Combination { terms: Vec<(i64, Vec<String>)> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSpec {
    pub labels: Option<Vec<String>>,
    /// `products[i][j]` holds the coordinates of `b_i b_j`.
    pub products: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ModuleDecl {
    pub name: String,
    pub algebra: Option<String>,
    #[serde(flatten)]
    pub spec: ModuleSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSpec {
    /// One square matrix per basis element of the algebra, rows first.
    Actions(Vec<Vec<Vec<i64>>>),
    /// `regular`, `dual_regular`, `simple i`, `projective i` or `injective i`.
    Construct(String),
    Dual(String),
    Sum(Vec<String>),
    /// Outer tensor product of two modules over the tensor algebra named in `algebra`.
    Tensor([String; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Regular,
    DualRegular,
    Simple(usize),
    Projective(usize),
    Injective(usize),
}

impl Construction {
    pub fn parse(s: &str) -> Option<Self> {
        let mut words = s.split_whitespace();
        let head = words.next()?;
        let index = words.next().map(str::parse::<usize>);
        if words.next().is_some() {
            return None;
        }
        match (head, index) {
            ("regular", None) => Some(Construction::Regular),
            ("dual_regular", None) => Some(Construction::DualRegular),
            ("simple", Some(Ok(i))) => Some(Construction::Simple(i)),
            ("projective", Some(Ok(i))) => Some(Construction::Projective(i)),
            ("injective", Some(Ok(i))) => Some(Construction::Injective(i)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct TaskDecl {
    /// Label used in output and by `--task`; defaults to the task kind.
    pub name: Option<String>,
    /// Expected values for fields of a computation output; turns the task into a check.
    pub expect: Option<BTreeMap<String, Value>>,
    #[serde(flatten)]
    pub kind: TaskKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionDirection {
    #[default]
    Projective,
    Injective,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainQuiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum TaskKind {
    Invariants { algebra: String },
    Resolve {
        module: String,
        #[serde(default)]
        direction: ResolutionDirection,
        length: Option<usize>,
    },
    Translate { module: String, k: i64 },
    Orbit { module: String },
    ClassU { algebra: String, n: usize },
    ClassB { algebra: String, module: String, n: usize },
    F { algebra: String, n: usize },
    G { algebra: String, module: String, n: usize },
    Roundtrip { algebra: String, module: Option<String>, n: usize },
    StructureProps { algebra: String, n: usize },
    FunctorLemmas { algebra: String, module: String, n: usize },
    GprojEquivalence { algebra: String, module: String, n: usize },
    OppositeClosure { algebra: String, module: String, n: usize },
    Characterization { algebra: String, n: usize },
    AbelianGproj { algebra: String },
    DtrTensorFormula { algebra: String, module: String, eps: usize, steps: usize },
    DynkinCriterion { quiver: PlainQuiver, selfinjective: String },
    DualityTensor { left: String, right: String },
    InjectiveCogenerator { algebra: String, selfinjective: String },
}

impl TaskKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TaskKind::Invariants { .. } => "invariants",
            TaskKind::Resolve { .. } => "resolve",
            TaskKind::Translate { .. } => "translate",
            TaskKind::Orbit { .. } => "orbit",
            TaskKind::ClassU { .. } => "class_u",
            TaskKind::ClassB { .. } => "class_b",
            TaskKind::F { .. } => "f",
            TaskKind::G { .. } => "g",
            TaskKind::Roundtrip { .. } => "roundtrip",
            TaskKind::StructureProps { .. } => "structure_props",
            TaskKind::FunctorLemmas { .. } => "functor_lemmas",
            TaskKind::GprojEquivalence { .. } => "gproj_equivalence",
            TaskKind::OppositeClosure { .. } => "opposite_closure",
            TaskKind::Characterization { .. } => "characterization",
            TaskKind::AbelianGproj { .. } => "abelian_gproj",
            TaskKind::DtrTensorFormula { .. } => "dtr_tensor_formula",
            TaskKind::DynkinCriterion { .. } => "dynkin_criterion",
            TaskKind::DualityTensor { .. } => "duality_tensor",
            TaskKind::InjectiveCogenerator { .. } => "injective_cogenerator",
        }
    }

    /// Whether the task produces a verification report rather than a plain computation.
    pub fn is_verification(&self) -> bool {
        !matches!(
            self,
            TaskKind::Invariants { .. } | TaskKind::Resolve { .. } | TaskKind::Translate { .. } | TaskKind::Orbit { .. }
        )
    }

    fn algebra_refs(&self) -> Vec<&str> {
        match self {
            TaskKind::Invariants { algebra }
            | TaskKind::ClassU { algebra, .. }
            | TaskKind::ClassB { algebra, .. }
            | TaskKind::F { algebra, .. }
            | TaskKind::G { algebra, .. }
            | TaskKind::Roundtrip { algebra, .. }
            | TaskKind::StructureProps { algebra, .. }
            | TaskKind::FunctorLemmas { algebra, .. }
            | TaskKind::GprojEquivalence { algebra, .. }
            | TaskKind::OppositeClosure { algebra, .. }
            | TaskKind::Characterization { algebra, .. }
            | TaskKind::AbelianGproj { algebra }
            | TaskKind::DtrTensorFormula { algebra, .. } => vec![algebra],
            TaskKind::DynkinCriterion { selfinjective, .. } => vec![selfinjective],
            TaskKind::InjectiveCogenerator { algebra, selfinjective } => vec![algebra, selfinjective],
            TaskKind::Resolve { .. } | TaskKind::Translate { .. } | TaskKind::Orbit { .. } | TaskKind::DualityTensor { .. } => {
                vec![]
            }
        }
    }

    fn module_refs(&self) -> Vec<&str> {
        match self {
            TaskKind::Resolve { module, .. }
            | TaskKind::Translate { module, .. }
            | TaskKind::Orbit { module }
            | TaskKind::ClassB { module, .. }
            | TaskKind::G { module, .. }
            | TaskKind::FunctorLemmas { module, .. }
            | TaskKind::GprojEquivalence { module, .. }
            | TaskKind::OppositeClosure { module, .. }
            | TaskKind::DtrTensorFormula { module, .. } => vec![module],
            TaskKind::Roundtrip { module, .. } => module.iter().map(String::as_str).collect(),
            TaskKind::DualityTensor { left, right } => vec![left, right],
            _ => vec![],
        }
    }
}

/// A load or validation failure, anchored to a line of the model file when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub entity: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: ")?,
            (Some(l), None) => write!(f, "line {l}: ")?,
            _ => {}
        }
        if let Some(e) = &self.entity {
            write!(f, "{e}: ")?;
        }
        f.write_str(&self.message)
    }
}

/// Parsed model with its source text, kept for anchoring later diagnostics.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: ModelFile,
    pub source: String,
}

impl LoadedModel {
    /// Diagnostic naming `entity`, anchored at the line declaring it.
    pub fn diagnose(&self, entity: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic { line: locate(&self.source, entity), column: None, entity: Some(entity.to_string()), message: message.into() }
    }
}

/// Line (1-based) of the declaration `"name": "<entity>"`, or of the first mention of it.
pub fn locate(source: &str, entity: &str) -> Option<usize> {
    let quoted = format!("\"{entity}\"");
    let declaring = source.lines().position(|l| {
        l.find("\"name\"").is_some_and(|k| l[k + 6..].trim_start().trim_start_matches(':').trim_start().starts_with(&quoted))
    });
    declaring.or_else(|| source.lines().position(|l| l.contains(&quoted))).map(|i| i + 1)
}

pub fn load(path: &Path) -> Result<LoadedModel, Diagnostic> {
    let source = std::fs::read_to_string(path).map_err(|e| Diagnostic {
        line: None,
        column: None,
        entity: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse(&source)
}

pub fn parse(source: &str) -> Result<LoadedModel, Diagnostic> {
    let model: ModelFile = serde_json::from_str(source).map_err(|e| Diagnostic {
        line: Some(e.line()),
        column: Some(e.column()),
        entity: None,
        message: e.to_string(),
    })?;
    let loaded = LoadedModel { model, source: source.to_string() };
    resolve(&loaded)?;
    Ok(loaded)
}

/// Unique names and resolvable references, with tensor and opposite declarations acyclic.
fn resolve(m: &LoadedModel) -> Result<(), Diagnostic> {
    let model = &m.model;
    let mut algebras = BTreeSet::new();
    for a in &model.algebras {
        if !algebras.insert(a.name.as_str()) {
            return Err(m.diagnose(&a.name, "duplicate algebra name"));
        }
    }
    let mut modules = BTreeSet::new();
    for x in &model.modules {
        if !modules.insert(x.name.as_str()) {
            return Err(m.diagnose(&x.name, "duplicate module name"));
        }
    }
    let need_algebra = |who: &str, name: &str| {
        if algebras.contains(name) {
            Ok(())
        } else {
            Err(m.diagnose(who, format!("unknown algebra reference {name:?}")))
        }
    };
    let need_module = |who: &str, name: &str| {
        if modules.contains(name) {
            Ok(())
        } else {
            Err(m.diagnose(who, format!("unknown module reference {name:?}")))
        }
    };
    for a in &model.algebras {
        match &a.spec {
            AlgebraSpec::Tensor([l, r]) => {
                need_algebra(&a.name, l)?;
                need_algebra(&a.name, r)?;
            }
            AlgebraSpec::Opposite(b) => need_algebra(&a.name, b)?,
            _ => {}
        }
    }
    algebra_order(m)?;
    for x in &model.modules {
        if let Some(a) = &x.algebra {
            need_algebra(&x.name, a)?;
        }
        match &x.spec {
            ModuleSpec::Actions(_) | ModuleSpec::Tensor(_) if x.algebra.is_none() => {
                return Err(m.diagnose(&x.name, "this module needs an \"algebra\" field"));
            }
            ModuleSpec::Construct(c) => {
                if x.algebra.is_none() {
                    return Err(m.diagnose(&x.name, "this module needs an \"algebra\" field"));
                }
                if Construction::parse(c).is_none() {
                    return Err(m.diagnose(&x.name, format!("unknown construction {c:?}")));
                }
            }
            ModuleSpec::Dual(y) => need_module(&x.name, y)?,
            ModuleSpec::Sum(ys) => {
                if ys.is_empty() {
                    return Err(m.diagnose(&x.name, "empty sum"));
                }
                for y in ys {
                    need_module(&x.name, y)?;
                }
            }
            ModuleSpec::Tensor([l, r]) => {
                need_module(&x.name, l)?;
                need_module(&x.name, r)?;
            }
            _ => {}
        }
    }
    module_order(m)?;
    for (i, t) in model.tasks.iter().enumerate() {
        let who = t.name.clone().unwrap_or_else(|| format!("task {} ({})", i + 1, t.kind.kind_name()));
        for a in t.kind.algebra_refs() {
            need_algebra(&who, a).map_err(|d| Diagnostic { line: d.line.or_else(|| locate(&m.source, a)), ..d })?;
        }
        for x in t.kind.module_refs() {
            need_module(&who, x).map_err(|d| Diagnostic { line: d.line.or_else(|| locate(&m.source, x)), ..d })?;
        }
    }
    Ok(())
}

fn topo_order<'a>(
    m: &LoadedModel,
    names: &[&'a str],
    deps: impl Fn(usize) -> Vec<&'a str>,
    what: &str,
) -> Result<Vec<usize>, Diagnostic> {
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    // 0 = unvisited, 1 = on the stack, 2 = done
    let mut state = vec![0u8; names.len()];
    let mut order = Vec::with_capacity(names.len());
    fn visit<'a>(
        i: usize,
        index: &BTreeMap<&str, usize>,
        deps: &dyn Fn(usize) -> Vec<&'a str>,
        state: &mut [u8],
        order: &mut Vec<usize>,
    ) -> Result<(), usize> {
        match state[i] {
            2 => return Ok(()),
            1 => return Err(i),
            _ => {}
        }
        state[i] = 1;
        for d in deps(i) {
            if let Some(&j) = index.get(d) {
                visit(j, index, deps, state, order)?;
            }
        }
        state[i] = 2;
        order.push(i);
        Ok(())
    }
    for i in 0..names.len() {
        visit(i, &index, &deps, &mut state, &mut order)
            .map_err(|j| m.diagnose(names[j], format!("{what} declarations refer to each other in a cycle")))?;
    }
    Ok(order)
}

/// Algebra declarations in an order where every dependency precedes its user.
pub fn algebra_order(m: &LoadedModel) -> Result<Vec<usize>, Diagnostic> {
    let decls = &m.model.algebras;
    let names: Vec<&str> = decls.iter().map(|a| a.name.as_str()).collect();
    topo_order(
        m,
        &names,
        |i| match &decls[i].spec {
            AlgebraSpec::Tensor([l, r]) => vec![l.as_str(), r.as_str()],
            AlgebraSpec::Opposite(b) => vec![b.as_str()],
            _ => vec![],
        },
        "algebra",
    )
}

/// Module declarations in dependency order.
pub fn module_order(m: &LoadedModel) -> Result<Vec<usize>, Diagnostic> {
    let decls = &m.model.modules;
    let names: Vec<&str> = decls.iter().map(|x| x.name.as_str()).collect();
    topo_order(
        m,
        &names,
        |i| match &decls[i].spec {
            ModuleSpec::Dual(y) => vec![y.as_str()],
            ModuleSpec::Sum(ys) => ys.iter().map(String::as_str).collect(),
            ModuleSpec::Tensor([l, r]) => vec![l.as_str(), r.as_str()],
            _ => vec![],
        },
        "module",
    )
}
