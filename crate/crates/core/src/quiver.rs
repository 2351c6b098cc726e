//! Coloring quivers and their cohomology quiver representations.
//!
//! Vertices are the colorings of a diagram, in lexicographic order. Each
//! endomorphism `σ` in the data vector gives one edge out of every vertex,
//! to the pushed-forward coloring. A vertex `v` carries the set
//! `V_C(v) = {φ(v) : φ ∈ C} ⊂ A` and an edge carries the `|A| × |A|` matrix
//! `f_σ = Σ_φ E[φ(σ v), φ(v)]`, rows and columns indexed by `0, 1, .., m-1`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Biquandle, EndoMap};
use crate::cohomology::{evaluate, is_cocycle, CoeffGroup, Cocycle};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homset::{chain_vector_with, colorings_with, push_forward, ChainVector, Coloring, ReadingConvention};

/// The coefficient ring `k` of the representation. Only `ℤ` is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum CoefficientRing {
    #[default]
    Integers,
}

/// The tuple `(X, A, C, k, S)`.
#[derive(Debug, Clone)]
pub struct DataVector {
    x: Biquandle,
    group: CoeffGroup,
    cocycles: Vec<Cocycle>,
    ring: CoefficientRing,
    endos: Vec<EndoMap>,
}

impl DataVector {
    /// Checks every cocycle and endomorphism.
    pub fn new(x: Biquandle, group: CoeffGroup, cocycles: Vec<Cocycle>, endos: Vec<EndoMap>) -> Result<Self> {
        for phi in &cocycles {
            if phi.group() != group {
                return Err(Error::GroupMismatch);
            }
            if !is_cocycle(phi, &x)? {
                return Err(Error::NotCocycle(phi.to_string()));
            }
        }
        for sigma in &endos {
            if !x.is_endomorphism(sigma) {
                return Err(Error::NotEndomorphism(sigma.to_string()));
            }
        }
        Ok(DataVector { x, group, cocycles, ring: CoefficientRing::Integers, endos })
    }

    /// Like [`DataVector::new`] but accepts arbitrary 2-cochains. The
    /// resulting polynomials then depend on the diagram, not just the link.
    pub fn new_unchecked(x: Biquandle, group: CoeffGroup, cocycles: Vec<Cocycle>, endos: Vec<EndoMap>) -> Result<Self> {
        let p = crate::cohomology::pair_count(x.order());
        for phi in &cocycles {
            if phi.group() != group {
                return Err(Error::GroupMismatch);
            }
            if phi.values().len() != p {
                return Err(Error::BasisMismatch { expected: p, got: phi.values().len() });
            }
        }
        for sigma in &endos {
            if !x.is_endomorphism(sigma) {
                return Err(Error::NotEndomorphism(sigma.to_string()));
            }
        }
        Ok(DataVector { x, group, cocycles, ring: CoefficientRing::Integers, endos })
    }

    pub fn biquandle(&self) -> &Biquandle {
        &self.x
    }

    pub fn group(&self) -> CoeffGroup {
        self.group
    }

    pub fn cocycles(&self) -> &[Cocycle] {
        &self.cocycles
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn endos(&self) -> &[EndoMap] {
        &self.endos
    }
}

/// The coloring quiver without representation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringQuiver {
    pub vertices: Vec<Coloring>,
    /// `(source, target, endomorphism index)`, grouped by source.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn build_coloring_quiver(d: &LinkDiagram, x: &Biquandle, endos: &[EndoMap]) -> Result<ColoringQuiver> {
    build_coloring_quiver_with(d, x, endos, ReadingConvention::STANDARD)
}

pub fn build_coloring_quiver_with(
    d: &LinkDiagram,
    x: &Biquandle,
    endos: &[EndoMap],
    conv: ReadingConvention,
) -> Result<ColoringQuiver> {
    for sigma in endos {
        if !x.is_endomorphism(sigma) {
            return Err(Error::NotEndomorphism(sigma.to_string()));
        }
    }
    let vertices = colorings_with(d, x, conv);
    let index: HashMap<&Coloring, usize> = vertices.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = Vec::with_capacity(vertices.len() * endos.len());
    for (v, c) in vertices.iter().enumerate() {
        for (k, sigma) in endos.iter().enumerate() {
            let image = push_forward(c, sigma);
            edges.push((v, index[&image], k));
        }
    }
    Ok(ColoringQuiver { vertices, edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepVertex {
    /// Semiarc colors, 1-based.
    pub coloring: Vec<usize>,
    pub chain: Vec<i64>,
    /// Generators of `V_C(v)`, ascending and without repeats.
    pub subspace: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEdge {
    pub source: usize,
    pub target: usize,
    pub endo: usize,
    /// Row-major `|A| × |A|` matrix.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepQuiver {
    /// `|A|`; also the exponent modulus of the matrix polynomials.
    pub group_order: usize,
    /// Endomorphisms, 1-based images.
    pub endos: Vec<Vec<usize>>,
    pub vertices: Vec<RepVertex>,
    pub edges: Vec<RepEdge>,
}

impl RepQuiver {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Edges leaving `v`, in endomorphism order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &RepEdge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.source == v)
    }
}

fn edge_matrix(m: usize, weights: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut f = vec![vec![0; m]; m];
    for &(from, to) in weights {
        f[to as usize][from as usize] += 1;
    }
    f
}

pub fn build_representation(d: &LinkDiagram, dv: &DataVector) -> Result<RepQuiver> {
    build_representation_with(d, dv, ReadingConvention::STANDARD)
}

pub fn build_representation_with(d: &LinkDiagram, dv: &DataVector, conv: ReadingConvention) -> Result<RepQuiver> {
    let m = dv.group.order().ok_or(Error::InfiniteGroup)?;
    let quiver = build_coloring_quiver_with(d, &dv.x, &dv.endos, conv)?;
    let chains: Vec<ChainVector> = quiver.vertices.iter().map(|c| chain_vector_with(c, d, &dv.x, conv)).collect();
    let values: Vec<Vec<i64>> = chains
        .iter()
        .map(|v| dv.cocycles.iter().map(|phi| evaluate(phi, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let vertices = quiver
        .vertices
        .iter()
        .zip(&chains)
        .zip(&values)
        .map(|((c, v), w)| RepVertex {
            coloring: c.one_based(),
            chain: v.coords().to_vec(),
            subspace: w.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
        })
        .collect();
    let edges = quiver
        .edges
        .par_iter()
        .map(|&(s, t, k)| {
            let pairs: Vec<(i64, i64)> = values[s].iter().copied().zip(values[t].iter().copied()).collect();
            RepEdge { source: s, target: t, endo: k, matrix: edge_matrix(m, &pairs) }
        })
        .collect();
    Ok(RepQuiver {
        group_order: m,
        endos: dv.endos.iter().map(|e| e.one_based()).collect(),
        vertices,
        edges,
    })
}

/// Whether a vertex bijection carries σ-labelled edges, subspaces and edge
/// matrices of `a` onto those of `b`.
pub fn quiver_isomorphic(a: &RepQuiver, b: &RepQuiver) -> bool {
    if a.group_order != b.group_order
        || a.endos.len() != b.endos.len()
        || a.vertices.len() != b.vertices.len()
        || a.edges.len() != b.edges.len()
    {
        return false;
    }
    let k = a.endos.len();
    let table = |q: &RepQuiver| -> Option<Vec<Vec<usize>>> {
        let mut out = vec![vec![usize::MAX; k]; q.vertices.len()];
        for (i, e) in q.edges.iter().enumerate() {
            if e.endo >= k || out[e.source][e.endo] != usize::MAX {
                return None;
            }
            out[e.source][e.endo] = i;
        }
        out.iter().all(|r| r.iter().all(|&i| i != usize::MAX)).then_some(out)
    };
    let (Some(ta), Some(tb)) = (table(a), table(b)) else { return false };
    let signature = |q: &RepQuiver, t: &[Vec<usize>], v: usize| {
        let mut indeg = vec![0usize; k];
        for e in q.edges.iter().filter(|e| e.target == v) {
            indeg[e.endo] += 1;
        }
        let mats: Vec<Vec<Vec<i64>>> = t[v].iter().map(|&i| q.edges[i].matrix.clone()).collect();
        let loops: Vec<bool> = t[v].iter().map(|&i| q.edges[i].target == v).collect();
        (q.vertices[v].subspace.clone(), mats, loops, indeg)
    };
    let sig_a: Vec<_> = (0..a.vertices.len()).map(|v| signature(a, &ta, v)).collect();
    let sig_b: Vec<_> = (0..b.vertices.len()).map(|v| signature(b, &tb, v)).collect();
    let mut fwd = vec![usize::MAX; a.vertices.len()];
    let mut bwd = vec![usize::MAX; b.vertices.len()];
    Iso { a, b, ta: &ta, tb: &tb, sig_a: &sig_a, sig_b: &sig_b }.search(&mut fwd, &mut bwd)
}

type Signature = (Vec<i64>, Vec<Vec<Vec<i64>>>, Vec<bool>, Vec<usize>);

struct Iso<'q> {
    a: &'q RepQuiver,
    b: &'q RepQuiver,
    ta: &'q [Vec<usize>],
    tb: &'q [Vec<usize>],
    sig_a: &'q [Signature],
    sig_b: &'q [Signature],
}

impl Iso<'_> {
    fn search(&self, fwd: &mut Vec<usize>, bwd: &mut Vec<usize>) -> bool {
        let Some(v) = fwd.iter().position(|&w| w == usize::MAX) else { return true };
        for w in 0..self.b.vertices.len() {
            if bwd[w] != usize::MAX || self.sig_a[v] != self.sig_b[w] {
                continue;
            }
            let (mut f, mut g) = (fwd.clone(), bwd.clone());
            if self.assign(&mut f, &mut g, v, w) && self.search(&mut f, &mut g) {
                *fwd = f;
                *bwd = g;
                return true;
            }
        }
        false
    }

    fn assign(&self, fwd: &mut [usize], bwd: &mut [usize], v: usize, w: usize) -> bool {
        let mut queue = vec![(v, w)];
        while let Some((v, w)) = queue.pop() {
            if fwd[v] == w && bwd[w] == v {
                continue;
            }
            if fwd[v] != usize::MAX || bwd[w] != usize::MAX || self.sig_a[v] != self.sig_b[w] {
                return false;
            }
            fwd[v] = w;
            bwd[w] = v;
            for (ea, eb) in self.ta[v].iter().zip(&self.tb[w]) {
                queue.push((self.a.edges[*ea].target, self.b.edges[*eb].target));
            }
        }
        true
    }
}
