//! Quivers, presentations by relations, and the truncated path-algebra quotient.
//!
//! A path `(a1, a2, ...)` means `a1` first. In the algebra, `p * q` is the path
//! "`q` then `p`", so left modules are representations with arrows acting forwards.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Algebra, Hints};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<QuiverArrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: &[(usize, usize)]) -> Self {
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(k, &(source, target))| QuiverArrow { source, target, label: format!("a{k}") })
            .collect();
        Quiver { vertex_count, arrows }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for a in &self.arrows {
            if a.source >= self.vertex_count || a.target >= self.vertex_count {
                return Err(Error::Validation(format!("arrow {} has an endpoint out of range", a.label)));
            }
            if !seen.insert(a.label.as_str()) {
                return Err(Error::Validation(format!("arrow label {} is not unique", a.label)));
            }
        }
        if self.vertex_count == 0 {
            return Err(Error::Validation("quiver has no vertices".into()));
        }
        Ok(())
    }

    pub fn reversed(&self) -> Self {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| QuiverArrow { source: a.target, target: a.source, label: a.label.clone() })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Linear combination of paths; each path is a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub terms: Vec<(F, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct QuiverPresentation<F> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<F>>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    fn len(&self) -> usize {
        self.arrows.len()
    }

    /// `self` then `other`.
    fn then(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, arrows })
    }

    fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.start)
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

fn check_path(q: &Quiver, arrows: &[usize]) -> Result<Path> {
    let Some(&first) = arrows.first() else {
        return Err(Error::Validation("relation term with an empty path".into()));
    };
    if arrows.iter().any(|&a| a >= q.arrows.len()) {
        return Err(Error::Validation("relation refers to an unknown arrow".into()));
    }
    for w in arrows.windows(2) {
        if q.arrows[w[0]].target != q.arrows[w[1]].source {
            return Err(Error::Validation(format!(
                "relation path is not composable at {} then {}",
                q.arrows[w[0]].label, q.arrows[w[1]].label
            )));
        }
    }
    Ok(Path { start: q.arrows[first].source, arrows: arrows.to_vec() })
}

/// `kQ / (relations + paths of length >= N)`, after checking that the relations alone already
/// kill every path of length `N`.
pub fn build_path_algebra_quotient<F: Field>(p: &QuiverPresentation<F>) -> Result<Arc<Algebra<F>>> {
    let q = &p.quiver;
    q.validate()?;
    let n_bound = p.nilpotency_bound;
    if n_bound < 2 {
        return Err(Error::Validation("nilpotency bound must be at least 2".into()));
    }

    // all paths of length <= N, grouped by length
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.vertex_count).map(|v| Path { start: v, arrows: vec![] }).collect()];
    for len in 1..=n_bound {
        let mut next = Vec::new();
        for path in &by_len[len - 1] {
            let end = path.end(q);
            for (k, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut arrows = path.arrows.clone();
                    arrows.push(k);
                    next.push(Path { start: path.start, arrows });
                }
            }
        }
        by_len.push(next);
    }
    // columns ordered longest first so that pivots fall on long paths
    let columns: Vec<Path> = by_len.iter().rev().flatten().cloned().collect();
    let index: HashMap<Path, usize> = columns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let ncols = columns.len();

    let mut rel_paths = Vec::new();
    for r in &p.relations {
        let mut terms = Vec::new();
        let mut ends = None;
        for (c, arrows) in &r.terms {
            let path = check_path(q, arrows)?;
            if path.len() < 2 {
                return Err(Error::Validation("relations must involve paths of length at least 2".into()));
            }
            let e = (path.start, path.end(q));
            if *ends.get_or_insert(e) != e {
                return Err(Error::Validation("relation terms do not share source and target".into()));
            }
            terms.push((*c, path));
        }
        if let Some(e) = ends {
            rel_paths.push((e, terms));
        }
    }

    let mut rows: Vec<Vec<F>> = Vec::new();
    for ((s, t), terms) in &rel_paths {
        let min_len = terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for lu in 0..=n_bound.saturating_sub(min_len) {
            for u in by_len[lu].iter().filter(|u| u.end(q) == *s) {
                for lv in 0..=n_bound.saturating_sub(min_len + lu) {
                    for v in by_len[lv].iter().filter(|v| v.start == *t) {
                        let mut row = vec![F::zero(); ncols];
                        let mut any = false;
                        for (c, term) in terms {
                            let full = u.then(term, q).and_then(|x| x.then(v, q)).expect("endpoints match");
                            if full.len() <= n_bound {
                                row[index[&full]] += *c;
                                any = true;
                            }
                        }
                        if any && row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let j = Matrix::from_rows(rows, ncols);
    let red = j.reduce();
    let rank = red.rank;
    let top: Vec<&Path> = by_len[n_bound].iter().collect();
    if !top.is_empty() {
        let mut extra = Vec::new();
        for path in &top {
            let mut row = vec![F::zero(); ncols];
            row[index[*path]] = F::one();
            extra.push(row);
        }
        let aug = Matrix::vstack(&[&red.rref.block(0, 0, rank, ncols), &Matrix::from_rows(extra, ncols)]);
        if aug.rank() != rank {
            return Err(Error::NonAdmissible(format!(
                "relations do not kill all paths of length {n_bound}"
            )));
        }
    }

    let mut pivot_row = HashMap::new();
    for (r, &c) in red.pivots.iter().enumerate() {
        pivot_row.insert(c, r);
    }
    // normal forms: non-pivot paths, listed by increasing length
    let basis: Vec<Path> = by_len
        .iter()
        .take(n_bound)
        .flatten()
        .filter(|p| !pivot_row.contains_key(&index[*p]))
        .cloned()
        .collect();
    let pos: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let d = basis.len();
    let reduce_path = |path: &Path| -> Vec<F> {
        let mut v = vec![F::zero(); d];
        if path.len() > n_bound {
            return v;
        }
        let col = index[path];
        match pivot_row.get(&col) {
            None => v[pos[path]] = F::one(),
            Some(&r) => {
                for (i, b) in basis.iter().enumerate() {
                    v[i] = -red.rref[(r, index[b])];
                }
            }
        }
        v
    };

    let mut lmul = Vec::with_capacity(d);
    for bi in &basis {
        let mut cols = Vec::with_capacity(d);
        for bj in &basis {
            // b_i * b_j = b_j then b_i
            cols.push(match bj.then(bi, q) {
                Some(path) => reduce_path(&path),
                None => vec![F::zero(); d],
            });
        }
        lmul.push(Matrix::from_columns(d, &cols));
    }
    let mut unit = vec![F::zero(); d];
    let mut idempotents = Vec::new();
    for v in 0..q.vertex_count {
        let i = pos[&Path { start: v, arrows: vec![] }];
        unit[i] = F::one();
        let mut e = vec![F::zero(); d];
        e[i] = F::one();
        idempotents.push(e);
    }
    let rad_idx: Vec<usize> = (0..d).filter(|&i| basis[i].len() > 0).collect();
    let radical = Matrix::identity(d).select_columns(&rad_idx);
    let labels = basis.iter().map(|p| p.label(q)).collect();
    let hints = Hints { idempotents: Some(idempotents), radical: Some(radical) };
    Ok(Arc::new(Algebra::from_parts(labels, lmul, unit, hints).with_quiver(q.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::desk;
    use crate::exactla::Fp;

    type F = Fp<101>;

    #[test]
    fn nak2_basis() {
        let a = desk::nak2::<F>();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["e0".to_string(), "a".to_string()]);
        // a * a = 0
        assert!(a.product_of_basis(1, 1).iter().all(|x| x.is_zero()));
        a.validate().unwrap();
    }

    #[test]
    fn a2_basis() {
        let a = desk::a2::<F>();
        assert_eq!(a.dim(), 3);
        a.validate().unwrap();
    }

    #[test]
    fn aus2_basis_by_enumeration() {
        let a = desk::aus2::<F>();
        // oracle: e0, e1, alpha, beta and the survivor beta-then-alpha (2 -> 1 -> 2)
        assert_eq!(a.dim(), 5);
        let mut labels: Vec<&str> = a.labels().iter().map(String::as_str).collect();
        labels.sort();
        assert_eq!(labels, vec!["a", "b", "b.a", "e0", "e1"]);
        a.validate().unwrap();
    }

    #[test]
    fn kronecker_and_a3() {
        assert_eq!(desk::kronecker::<F>().dim(), 4);
        assert_eq!(desk::a3::<F>().dim(), 6);
        assert_eq!(desk::d4::<F>().dim(), 7);
    }

    #[test]
    fn non_admissible_presentation() {
        // a loop with no relations never dies
        let p = QuiverPresentation::<F> { quiver: Quiver::new(1, &[(0, 0)]), relations: vec![], nilpotency_bound: 3 };
        assert!(matches!(build_path_algebra_quotient(&p), Err(Error::NonAdmissible(_))));
    }

    #[test]
    fn commutative_square() {
        // 0 -> 1 -> 3, 0 -> 2 -> 3 with the square commuting
        let one = F::one();
        let rel = Relation { terms: vec![(one, vec![0, 1]), (-one, vec![2, 3])] };
        let p = QuiverPresentation {
            quiver: Quiver::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]),
            relations: vec![rel],
            nilpotency_bound: 3,
        };
        let a = build_path_algebra_quotient(&p).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        a.validate().unwrap();
    }

    #[test]
    fn acyclic_and_connected() {
        assert!(Quiver::new(2, &[(0, 1)]).is_acyclic());
        assert!(!Quiver::new(2, &[(0, 1), (1, 0)]).is_acyclic());
        assert!(!Quiver::new(3, &[(0, 1)]).is_connected());
    }
}
