//! Homological invariants of algebras and modules.

mod catalog;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homological::{
    ext_dims, is_injective, is_projective, min_resolution, strip, Direction, ResolutionSegment, SummandKind,
};
use crate::repmod::{decompose, find_isomorphism, projective, regular_module, sum_modules, Module};

pub use catalog::{saturate_catalog, Catalog};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub projective: bool,
    pub injective: bool,
}

pub fn flags<F: crate::Field>(m: &Module<F>) -> Result<Flags> {
    Ok(Flags { projective: is_projective(m)?, injective: is_injective(m)? })
}

/// Outcome of a bounded homological dimension search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DimValue {
    Exact(usize),
    /// The dimension is at least this value; the search was cut off.
    AtLeast(usize),
    Infinite,
}

impl DimValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            DimValue::Exact(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(k) => write!(f, "{k}"),
            DimValue::AtLeast(k) => write!(f, ">= {k}"),
            DimValue::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomDimReport<F: crate::Field> {
    pub value: DimValue,
    /// Minimal injective resolution of the regular module.
    pub witness: ResolutionSegment<F>,
}

/// Number of leading projective-injective terms in the minimal injective resolution of `A`.
pub fn dominant_dimension<F: crate::Field>(a: &Arc<Algebra<F>>, bound: usize) -> Result<HomDimReport<F>> {
    let witness = min_resolution(&regular_module(a), Direction::Injective, bound)?;
    for (k, t) in witness.terms.iter().enumerate() {
        if t.is_zero() {
            return Ok(HomDimReport { value: DimValue::Infinite, witness });
        }
        if !is_projective(t)? {
            return Ok(HomDimReport { value: DimValue::Exact(k), witness });
        }
    }
    Ok(HomDimReport { value: DimValue::AtLeast(bound + 1), witness })
}

/// Injective dimension of the regular module: the last nonzero term of its minimal injective
/// resolution.
pub fn injective_dimension_regular<F: crate::Field>(a: &Arc<Algebra<F>>, bound: usize) -> Result<HomDimReport<F>> {
    let witness = min_resolution(&regular_module(a), Direction::Injective, bound + 1)?;
    let value = match witness.terms.iter().position(Module::is_zero) {
        Some(k) => DimValue::Exact(k.saturating_sub(1)),
        None => DimValue::AtLeast(bound + 1),
    };
    Ok(HomDimReport { value, witness })
}

/// Basic sum of the indecomposable projective-injective modules, with their vertices.
#[derive(Clone, Debug)]
pub struct MinimalFaithful<F: crate::Field> {
    pub module: Module<F>,
    pub vertices: Vec<usize>,
}

pub fn minimal_faithful<F: crate::Field>(a: &Arc<Algebra<F>>) -> Result<MinimalFaithful<F>> {
    let s = a.skeleton()?;
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    for v in 0..s.vertex_count() {
        let p = projective(a, v)?;
        if is_injective(&p)? {
            vertices.push(v);
            parts.push(p);
        }
    }
    let module = sum_modules(a, &parts)?;
    // dom.dim >= 1 exactly when the injective envelope of A is projective
    let env = min_resolution(&regular_module(a), Direction::Injective, 0)?;
    if !is_projective(&env.terms[0])? {
        return Err(Error::NoMinimalFaithful(
            "the injective envelope of the regular module is not projective (dominant dimension 0)".into(),
        ));
    }
    if module.annihilator().cols() != 0 {
        return Err(Error::internal("sum of projective-injectives is not faithful"));
    }
    Ok(MinimalFaithful { module, vertices })
}

/// Every indecomposable summand of `m` is a summand of `n`.
pub fn add_membership<F: crate::Field>(m: &Module<F>, n: &Module<F>, seed: u64) -> Result<bool> {
    m.require_same_algebra(n, "add membership")?;
    let ours = decompose(m, seed)?.indecomposables();
    let theirs = decompose(n, seed)?.indecomposables();
    for x in &ours {
        let mut found = false;
        for y in &theirs {
            if find_isomorphism(x, y, seed)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn covers_all_vertices(removed: &[(usize, usize)], n: usize) -> bool {
    (0..n).all(|v| removed.iter().any(|&(w, k)| w == v && k > 0))
}

/// Whether `m` is a generator.
pub fn is_generator<F: crate::Field>(m: &Module<F>) -> Result<bool> {
    let n = m.algebra().skeleton()?.vertex_count();
    Ok(covers_all_vertices(&strip(m, SummandKind::Projective)?.removed, n))
}

/// Whether `m` is a cogenerator.
pub fn is_cogenerator<F: crate::Field>(m: &Module<F>) -> Result<bool> {
    let n = m.algebra().skeleton()?.vertex_count();
    Ok(covers_all_vertices(&strip(m, SummandKind::Injective)?.removed, n))
}

pub fn gen_cogen<F: crate::Field>(m: &Module<F>) -> Result<bool> {
    Ok(is_generator(m)? && is_cogenerator(m)?)
}

/// `Ext^i(m, n) = 0` for `1 <= i <= k`.
pub fn is_orthogonal<F: crate::Field>(m: &Module<F>, n: &Module<F>, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    Ok(ext_dims(m, n, k)?[1..].iter().all(|&d| d == 0))
}

/// Result of a Gorenstein-projectivity test with its injective resolution.
#[derive(Clone, Debug)]
pub struct GprojTest<F: crate::Field> {
    pub value: bool,
    pub witness: ResolutionSegment<F>,
}

/// Checks `dom.dim A = inj.dim A = n`.
pub fn in_class_u<F: crate::Field>(a: &Arc<Algebra<F>>, n: usize) -> Result<bool> {
    let dd = dominant_dimension(a, n + 1)?.value;
    let id = injective_dimension_regular(a, n + 1)?.value;
    Ok(dd == DimValue::Exact(n) && id == DimValue::Exact(n))
}

/// For an algebra with `dom.dim = inj.dim = n`: the first `n` terms of the minimal injective
/// resolution of `m` are projective-injective.
pub fn gproj_test<F: crate::Field>(m: &Module<F>, n: usize) -> Result<GprojTest<F>> {
    if !in_class_u(m.algebra(), n)? {
        return Err(Error::Hypothesis(format!(
            "Gorenstein projectivity test needs dominant and injective dimension both equal to {n}"
        )));
    }
    gproj_unchecked(m, n)
}

pub(crate) fn gproj_unchecked<F: crate::Field>(m: &Module<F>, n: usize) -> Result<GprojTest<F>> {
    let witness = min_resolution(m, Direction::Injective, n.saturating_sub(1))?;
    let mut value = true;
    for t in witness.terms.iter().take(n) {
        if !is_projective(t)? {
            value = false;
            break;
        }
    }
    Ok(GprojTest { value, witness })
}

/// Cross-check: `Ext^i(m, A) = 0` for `1 <= i <= window`.
pub fn ext_vanishing_against_regular<F: crate::Field>(m: &Module<F>, window: usize) -> Result<bool> {
    is_orthogonal(m, &regular_module(m.algebra()), window)
}
