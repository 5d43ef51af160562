//! Projective covers, minimal resolutions, syzygies, transposes and translates.

mod ext;
mod translate;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::repmod::{direct_sum, dual_module, projective, radical_subspace, Module};

pub use ext::{ext_dim, ext_dims};
pub use translate::{
    ar_translate, higher_translate, is_injective, is_projective, nakayama_on_projectives, strip, transpose,
    Sign, StripResult, SummandKind, TranslateKind, TranslateResult,
};

/// A map `⊕_l P_{src[l]} -> ⊕_k P_{dst[k]}`; component `(l, k)` is right multiplication by
/// `comps[l][k] ∈ e_{src[l]} A e_{dst[k]}`.
#[derive(Clone, Debug)]
pub struct ProjMap<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub comps: Vec<Vec<Vec<F>>>,
}

/// Direct sum of indecomposable projectives at the given vertices.
pub fn projective_sum<F: Field>(a: &Arc<Algebra<F>>, vertices: &[usize]) -> Result<Module<F>> {
    let parts = vertices.iter().map(|&v| projective(a, v)).collect::<Result<Vec<_>>>()?;
    Ok(direct_sum(a, &parts)?.module)
}

fn offsets<F: Field>(a: &Arc<Algebra<F>>, vertices: &[usize]) -> Result<Vec<usize>> {
    let s = a.skeleton()?;
    let mut off = vec![0];
    for &v in vertices {
        off.push(off.last().unwrap() + s.proj_dim(v));
    }
    Ok(off)
}

impl<F: Field> ProjMap<F> {
    /// The map sending the generator `e_{src[l]}` to `images[l]`, given in the coordinates of
    /// `projective_sum(dst)`.
    pub fn from_images(a: &Arc<Algebra<F>>, src: &[usize], dst: &[usize], images: &[Vec<F>]) -> Result<Self> {
        let s = a.skeleton()?;
        let off = offsets(a, dst)?;
        let comps = images
            .iter()
            .map(|img| {
                dst.iter()
                    .enumerate()
                    .map(|(k, &t)| s.proj_basis[t].mul_vec(&img[off[k]..off[k + 1]]))
                    .collect()
            })
            .collect();
        Ok(ProjMap { algebra: a.clone(), src: src.to_vec(), dst: dst.to_vec(), comps })
    }

    /// Matrix from `projective_sum(src)` to `projective_sum(dst)`.
    pub fn matrix(&self) -> Result<Matrix<F>> {
        let a = &self.algebra;
        let s = a.skeleton()?;
        let (so, to) = (offsets(a, &self.src)?, offsets(a, &self.dst)?);
        let mut m = Matrix::zeros(*to.last().unwrap(), *so.last().unwrap());
        for (l, &sv) in self.src.iter().enumerate() {
            for (k, &tv) in self.dst.iter().enumerate() {
                let blk = &(&s.proj_coords[tv] * &a.right_mult(&self.comps[l][k])) * &s.proj_basis[sv];
                m.set_block(to[k], so[l], &blk);
            }
        }
        Ok(m)
    }

    /// `Hom(-, A)` applied to the map: a map between projectives over the opposite algebra.
    pub fn transpose(&self) -> ProjMap<F> {
        let comps = (0..self.dst.len())
            .map(|k| (0..self.src.len()).map(|l| self.comps[l][k].clone()).collect())
            .collect();
        ProjMap { algebra: self.algebra.op(), src: self.dst.clone(), dst: self.src.clone(), comps }
    }

    /// `other . self`.
    pub fn then(&self, other: &ProjMap<F>) -> Result<ProjMap<F>> {
        if self.dst != other.src || !Algebra::same(&self.algebra, &other.algebra) {
            return Err(Error::contract("projective maps are not composable"));
        }
        let a = &self.algebra;
        let d = a.dim();
        let comps = (0..self.src.len())
            .map(|l| {
                (0..other.dst.len())
                    .map(|m| {
                        let mut acc = vec![F::zero(); d];
                        for k in 0..self.dst.len() {
                            let p = a.mul(&self.comps[l][k], &other.comps[k][m]);
                            acc.iter_mut().zip(p).for_each(|(x, y)| *x += y);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(ProjMap { algebra: a.clone(), src: self.src.clone(), dst: other.dst.clone(), comps })
    }
}

/// A projective cover `⊕ P_{vertices} -> m`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub vertices: Vec<usize>,
    /// Images of the generators `e_v`, in the coordinates of `m`.
    pub generators: Vec<Vec<F>>,
    pub projective: Module<F>,
    pub map: Matrix<F>,
}

pub fn projective_cover<F: Field>(m: &Module<F>) -> Result<ProjectiveCover<F>> {
    let a = m.algebra().clone();
    let s = a.skeleton()?;
    let rad = radical_subspace(m)?;
    let vertex_spaces: Vec<Matrix<F>> = s.idempotents.iter().map(|e| m.act(e).column_space()).collect();
    let mut parts = vec![&rad];
    parts.extend(vertex_spaces.iter());
    let stacked = Matrix::hstack_rows(m.dim(), &parts);
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for p in stacked.pivot_columns().into_iter().filter(|&p| p >= rad.cols()) {
        let mut c = p - rad.cols();
        let mut v = 0;
        while c >= vertex_spaces[v].cols() {
            c -= vertex_spaces[v].cols();
            v += 1;
        }
        vertices.push(v);
        generators.push(vertex_spaces[v].column(c));
    }
    let projective = projective_sum(&a, &vertices)?;
    let blocks: Vec<Matrix<F>> = vertices
        .iter()
        .zip(&generators)
        .map(|(&v, g)| {
            let cols: Vec<Vec<F>> = m.actions().iter().map(|act| act.mul_vec(g)).collect();
            &Matrix::from_columns(m.dim(), &cols) * &s.proj_basis[v]
        })
        .collect();
    let refs: Vec<&Matrix<F>> = blocks.iter().collect();
    let map = Matrix::hstack_rows(m.dim(), &refs);
    if map.rank() != m.dim() {
        return Err(Error::internal("projective cover is not surjective"));
    }
    Ok(ProjectiveCover { vertices, generators, projective, map })
}

/// An injective envelope `m -> E`, with `E` a sum of indecomposable injectives.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope<F: Field> {
    pub vertices: Vec<usize>,
    pub injective: Module<F>,
    pub map: Matrix<F>,
}

pub fn injective_envelope<F: Field>(m: &Module<F>) -> Result<InjectiveEnvelope<F>> {
    let c = projective_cover(&dual_module(m))?;
    Ok(InjectiveEnvelope { vertices: c.vertices, injective: dual_module(&c.projective), map: c.map.transpose() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Projective,
    Injective,
}

/// Minimal projective resolution data: `P_0 -> m` and `d_i : P_i -> P_{i-1}` as projective maps.
#[derive(Clone, Debug)]
pub struct ProjResolution<F: Field> {
    pub module: Module<F>,
    pub terms: Vec<Vec<usize>>,
    pub cover: Matrix<F>,
    /// `differentials[i]` is `d_{i+1} : P_{i+1} -> P_i`.
    pub differentials: Vec<ProjMap<F>>,
    /// `syzygies[i]` is `Ω^{i+1} m` as a submodule of `P_i`.
    pub syzygies: Vec<(Module<F>, Matrix<F>)>,
}

/// Minimal projective resolution with terms `P_0, ..., P_length`.
pub fn proj_resolution<F: Field>(m: &Module<F>, length: usize) -> Result<ProjResolution<F>> {
    let a = m.algebra().clone();
    let c0 = projective_cover(m)?;
    let mut terms = vec![c0.vertices.clone()];
    let mut differentials = Vec::new();
    let mut syzygies = Vec::new();
    let mut current = (c0.projective.clone(), c0.map.clone());
    for _ in 0..length {
        let (p, map) = &current;
        let (k, incl) = p.submodule(&map.kernel())?;
        let ck = projective_cover(&k)?;
        let images: Vec<Vec<F>> = ck.generators.iter().map(|g| incl.mul_vec(g)).collect();
        differentials.push(ProjMap::from_images(&a, &ck.vertices, terms.last().unwrap(), &images)?);
        terms.push(ck.vertices.clone());
        syzygies.push((k, incl));
        current = (ck.projective, ck.map);
    }
    Ok(ProjResolution { module: m.clone(), terms, cover: c0.map, differentials, syzygies })
}

/// A resolution segment `0 -> m -> T_0 -> T_1 -> ...` (injective) or `... -> T_1 -> T_0 -> m -> 0`
/// (projective); `maps[0]` connects `m` and `T_0`, `maps[i]` connects `T_{i-1}` and `T_i`.
#[derive(Clone, Debug)]
pub struct ResolutionSegment<F: Field> {
    pub direction: Direction,
    pub module: Module<F>,
    pub terms: Vec<Module<F>>,
    /// Vertex of each indecomposable summand of each term.
    pub term_vertices: Vec<Vec<usize>>,
    pub maps: Vec<Matrix<F>>,
    pub minimal: bool,
}

impl<F: Field> ResolutionSegment<F> {
    /// Composites vanish and the sequence is exact at every interior position.
    pub fn verify(&self) -> Result<()> {
        let dims: Vec<usize> =
            std::iter::once(self.module.dim()).chain(self.terms.iter().map(Module::dim)).collect();
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        for w in self.maps.windows(2) {
            let composite = match self.direction {
                Direction::Projective => &w[0] * &w[1],
                Direction::Injective => &w[1] * &w[0],
            };
            if !composite.is_zero() {
                return Err(Error::internal("consecutive resolution maps do not compose to zero"));
            }
        }
        // the map touching m is surjective (projective) or injective (injective)
        if ranks.first().is_some_and(|&r| r != dims[0]) {
            return Err(Error::internal("resolution does not start with a cover or envelope"));
        }
        for i in 1..self.maps.len() {
            if ranks[i - 1] + ranks[i] != dims[i] {
                return Err(Error::internal(format!("resolution is not exact at term {}", i - 1)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn realize<F: Field>(r: &ProjResolution<F>) -> Result<(Vec<Module<F>>, Vec<Matrix<F>>)> {
    let a = r.module.algebra();
    let terms = r.terms.iter().map(|t| projective_sum(a, t)).collect::<Result<Vec<_>>>()?;
    let mut maps = vec![r.cover.clone()];
    for d in &r.differentials {
        maps.push(d.matrix()?);
    }
    Ok((terms, maps))
}

/// Whether the kernel of every cover in the resolution lies in the radical of its projective.
fn certify_minimal<F: Field>(r: &ProjResolution<F>, terms: &[Module<F>]) -> Result<bool> {
    for (i, (_, incl)) in r.syzygies.iter().enumerate() {
        if !radical_subspace(&terms[i])?.spans(incl) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal projective or injective resolution with `length + 1` terms.
pub fn min_resolution<F: Field>(m: &Module<F>, direction: Direction, length: usize) -> Result<ResolutionSegment<F>> {
    match direction {
        Direction::Projective => {
            let r = proj_resolution(m, length)?;
            let (terms, maps) = realize(&r)?;
            let minimal = certify_minimal(&r, &terms)?;
            Ok(ResolutionSegment { direction, module: m.clone(), terms, term_vertices: r.terms, maps, minimal })
        }
        Direction::Injective => {
            let r = proj_resolution(&dual_module(m), length)?;
            let (terms, maps) = realize(&r)?;
            let minimal = certify_minimal(&r, &terms)?;
            Ok(ResolutionSegment {
                direction,
                module: m.clone(),
                terms: terms.iter().map(dual_module).collect(),
                term_vertices: r.terms,
                maps: maps.iter().map(Matrix::transpose).collect(),
                minimal,
            })
        }
    }
}

/// `Ω^k m` for `k > 0`, `Ω^{-k} m` for `k < 0`; `k = 0` strips projective summands.
pub fn syzygy<F: Field>(m: &Module<F>, k: i64) -> Result<Module<F>> {
    match k {
        0 => Ok(strip(m, SummandKind::Projective)?.module),
        k if k > 0 => {
            let mut cur = m.clone();
            for _ in 0..k {
                let c = projective_cover(&cur)?;
                cur = c.projective.submodule(&c.map.kernel())?.0;
            }
            Ok(cur)
        }
        k => Ok(dual_module(&syzygy(&dual_module(m), -k)?)),
    }
}
