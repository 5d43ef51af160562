//! Randomised search for algebra isomorphisms between split basic algebras.

use std::sync::Arc;

use super::radical::random_in;
use super::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::seeded_rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraIso<F> {
    /// Column `i` is the image of basis element `i`.
    Found(Matrix<F>),
    /// A structural invariant differs.
    Distinct(String),
    /// No isomorphism found within the try budget.
    Undetermined,
}

impl<F> AlgebraIso<F> {
    pub fn is_found(&self) -> bool {
        matches!(self, AlgebraIso::Found(_))
    }
}

/// Products of arrows (applied right to left) starting at idempotents, spanning the algebra.
fn word_basis<F: Field>(a: &Arc<Algebra<F>>) -> Result<Vec<(usize, Vec<usize>)>> {
    let s = a.skeleton()?;
    let d = a.dim();
    let mut words: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut elems: Vec<Vec<F>> = Vec::new();
    let mut frontier: Vec<(usize, Vec<usize>, Vec<F>, usize)> = Vec::new();
    for (i, e) in s.idempotents.iter().enumerate() {
        words.push((i, vec![]));
        elems.push(e.clone());
        frontier.push((i, vec![], e.clone(), i));
    }
    while !frontier.is_empty() && elems.len() < d {
        let mut next = Vec::new();
        for (start, word, elem, end) in frontier {
            for (k, arr) in s.arrows.iter().enumerate() {
                if arr.source != end {
                    continue;
                }
                let x = a.mul(&arr.element, &elem);
                let span = Matrix::from_columns(d, &elems);
                if span.spans(&Matrix::column_vector(&x)) {
                    continue;
                }
                let mut w = word.clone();
                w.push(k);
                words.push((start, w.clone()));
                elems.push(x.clone());
                next.push((start, w, x, arr.target));
            }
        }
        frontier = next;
    }
    if elems.len() < d {
        return Err(Error::internal("arrows and idempotents do not generate the algebra"));
    }
    Ok(words)
}

fn evaluate<F: Field>(a: &Algebra<F>, ids: &[Vec<F>], arrows: &[Vec<F>], start: usize, word: &[usize]) -> Vec<F> {
    let mut x = ids[start].clone();
    for &k in word {
        x = a.mul(&arrows[k], &x);
    }
    x
}

fn permutations(n: usize, ok: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, ok: &dyn Fn(&[usize]) -> bool, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if ok(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, ok, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], ok, &mut out);
    out
}

/// Searches for an isomorphism `a -> b` sending idempotents to idempotents (up to a vertex
/// permutation compatible with the Cartan matrices) and arrows to random radical elements.
pub fn find_algebra_isomorphism<F: Field>(
    a: &Arc<Algebra<F>>,
    b: &Arc<Algebra<F>>,
    seed: u64,
    tries: usize,
) -> Result<AlgebraIso<F>> {
    if a.dim() != b.dim() {
        return Ok(AlgebraIso::Distinct(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    let (sa, sb) = (a.skeleton()?, b.skeleton()?);
    let n = sa.vertex_count();
    if n != sb.vertex_count() {
        return Ok(AlgebraIso::Distinct(format!("{} and {} vertices", n, sb.vertex_count())));
    }
    let (ca, cb) = (sa.cartan(a), sb.cartan(b));
    let perms = permutations(n, &|p| (0..n).all(|i| (0..n).all(|j| ca[j][i] == cb[p[j]][p[i]])));
    if perms.is_empty() {
        return Ok(AlgebraIso::Distinct("Cartan matrices differ".into()));
    }
    let words = word_basis(a)?;
    let d = a.dim();
    let wa: Vec<Vec<F>> = words.iter().map(|(s, w)| {
        let arrows: Vec<Vec<F>> = sa.arrows.iter().map(|x| x.element.clone()).collect();
        evaluate(a, &sa.idempotents, &arrows, *s, w)
    }).collect();
    let wa_inv = Matrix::from_columns(d, &wa).inverse().ok_or_else(|| Error::internal("word basis is singular"))?;
    let mut rng = seeded_rng(seed);
    for perm in &perms {
        let ids_b: Vec<Vec<F>> = perm.iter().map(|&v| sb.idempotents[v].clone()).collect();
        let corners: Vec<Matrix<F>> = sa
            .arrows
            .iter()
            .map(|arr| {
                let sandwich = &b.left_mult(&ids_b[arr.target]) * &b.right_mult(&ids_b[arr.source]);
                (&sandwich * &sb.radical).column_space()
            })
            .collect();
        for _ in 0..tries {
            let arrows_b: Vec<Vec<F>> = corners.iter().map(|c| random_in(c, &mut rng)).collect();
            let img: Vec<Vec<F>> = words.iter().map(|(s, w)| evaluate(b, &ids_b, &arrows_b, *s, w)).collect();
            let phi = &Matrix::from_columns(d, &img) * &wa_inv;
            if phi.inverse().is_none() {
                continue;
            }
            let multiplicative = (0..d).all(|i| &phi * a.lmul(i) == &b.left_mult(&phi.column(i)) * &phi);
            if multiplicative {
                return Ok(AlgebraIso::Found(phi));
            }
        }
    }
    Ok(AlgebraIso::Undetermined)
}
