//! Finite catalogs of indecomposable modules closed under the basic constructions.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::homological::{ar_translate, syzygy, Sign};
use crate::repmod::{
    decompose, filtration, indecomposables_isomorphic, injective, projective, simple, Module,
};
use crate::Field;

/// Pairwise non-isomorphic indecomposables; `complete` means the closure reached a fixpoint.
#[derive(Clone, Debug)]
pub struct Catalog<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub modules: Vec<Module<F>>,
    pub complete: bool,
}

impl<F: Field> Catalog<F> {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Index of the catalog module isomorphic to the indecomposable `m`.
    pub fn position(&self, m: &Module<F>) -> Result<Option<usize>> {
        for (k, x) in self.modules.iter().enumerate() {
            if indecomposables_isomorphic(x, m)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

fn neighbours<F: Field>(m: &Module<F>) -> Result<Vec<Module<F>>> {
    let f = filtration(m)?;
    let (no_socle, _) = m.quotient(&f.socle.1)?;
    Ok(vec![
        ar_translate(m, Sign::Plus)?.output,
        ar_translate(m, Sign::Minus)?.output,
        syzygy(m, 1)?,
        syzygy(m, -1)?,
        f.radical.0,
        no_socle,
    ])
}

/// Closes the projectives, injectives and simples under τ, τ⁻, Ω, Ω⁻¹, radical and quotient by
/// the socle, keeping at most `bound` indecomposables.
pub fn saturate_catalog<F: Field>(a: &Arc<Algebra<F>>, bound: usize, seed: u64) -> Result<Catalog<F>> {
    let n = a.skeleton()?.vertex_count();
    let mut cat = Catalog { algebra: a.clone(), modules: Vec::new(), complete: false };
    let mut queue = VecDeque::new();
    let mut seeds = Vec::new();
    for v in 0..n {
        seeds.push(projective(a, v)?);
        seeds.push(injective(a, v)?);
        seeds.push(simple(a, v)?);
    }
    let mut pending: VecDeque<Module<F>> = seeds.into();
    loop {
        while let Some(m) = pending.pop_front() {
            if m.is_zero() {
                continue;
            }
            for x in decompose(&m, seed)?.indecomposables() {
                if cat.position(&x)?.is_none() {
                    if cat.modules.len() == bound {
                        return Ok(cat);
                    }
                    cat.modules.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        match queue.pop_front() {
            Some(x) => pending.extend(neighbours(&x)?),
            None => break,
        }
    }
    cat.complete = true;
    Ok(cat)
}
