//! Characteristic and matrix polynomials of a quiver representation, over
//! its edges and over its maximal non-repeating paths.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::poly::{GroupExponentPolynomial, Var};
use crate::quiver::RepQuiver;

/// Upper bound on the number of partial paths explored by
/// [`maximal_paths`].
pub const DEFAULT_PATH_LIMIT: usize = 2_000_000;

/// Coefficients of `det(tI - M)`, leading coefficient first, computed with
/// Berkowitz's division-free algorithm.
pub fn char_poly_coefficients(m: &IntMatrix) -> Result<Vec<i128>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut p: Vec<i128> = vec![1];
    for k in 0..n {
        // column of the Toeplitz factor: 1, -a, -R C, -R M C, ..
        let mut toeplitz = vec![1, -m[(k, k)]];
        let mut col: Vec<i128> = (0..k).map(|i| m[(i, k)]).collect();
        for _ in 0..k {
            let rc: i128 = (0..k).map(|j| m[(k, j)] * col[j]).sum();
            toeplitz.push(-rc);
            col = (0..k).map(|i| (0..k).map(|j| m[(i, j)] * col[j]).sum()).collect();
        }
        p = (0..k + 2)
            .map(|i| (0..=i.min(k)).filter(|&j| i - j < toeplitz.len()).map(|j| toeplitz[i - j] * p[j]).sum())
            .collect();
    }
    Ok(p)
}

/// `χ(M) = det(tI - M)` as a polynomial in `t`.
pub fn char_poly(m: &IntMatrix) -> Result<GroupExponentPolynomial> {
    let coeffs = char_poly_coefficients(m)?;
    let n = coeffs.len() as i64 - 1;
    let mut p = GroupExponentPolynomial::zero(None);
    for (i, c) in coeffs.iter().enumerate() {
        p.add_term(&[(Var::T, n - i as i64)], *c as i64);
    }
    Ok(p)
}

/// `p_M(x, y) = Σ M[j][k] x^{label j} y^{label k}`.
pub fn matrix_poly(m: &[Vec<i64>], labels: &[i64], modulus: Option<u64>) -> Result<GroupExponentPolynomial> {
    if m.len() != labels.len() || m.iter().any(|r| r.len() != labels.len()) {
        return Err(Error::LabelMismatch { labels: labels.len(), dim: m.len() });
    }
    let mut p = GroupExponentPolynomial::zero(modulus);
    for (j, row) in m.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            p.add_term(&[(Var::X, labels[j]), (Var::Y, labels[k])], v);
        }
    }
    Ok(p)
}

/// A maximal non-repeating path and the product of its edge matrices,
/// `M = f_k ⋯ f_2 f_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathRecord {
    pub edges: Vec<usize>,
    pub product: Vec<Vec<i64>>,
}

impl PathRecord {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn is_subsequence(short: &[usize], long: &[usize]) -> bool {
    let mut it = long.iter();
    short.iter().all(|e| it.any(|f| f == e))
}

/// All maximal non-repeating paths.
///
/// A path is a sequence of distinct edges, each starting where the previous
/// one ends. A path is kept when no unused edge can be attached at either
/// end and its edge sequence does not occur, in order, inside a longer such
/// path. Paths are listed by starting edge, then lexicographically by edge
/// indices.
pub fn maximal_paths(q: &RepQuiver, limit: usize) -> Result<Vec<PathRecord>> {
    let mut outgoing = vec![Vec::new(); q.vertices.len()];
    let mut incoming = vec![Vec::new(); q.vertices.len()];
    for (i, e) in q.edges.iter().enumerate() {
        outgoing[e.source].push(i);
        incoming[e.target].push(i);
    }
    let steps = AtomicUsize::new(0);
    let walker = Walker { q, outgoing: &outgoing, incoming: &incoming, limit, steps: &steps };
    let per_start: Vec<Result<Vec<Vec<usize>>>> = (0..q.edges.len())
        .into_par_iter()
        .map(|start| {
            let mut used = vec![false; q.edges.len()];
            let mut path = Vec::new();
            let mut found = Vec::new();
            walker.walk(start, &mut used, &mut path, &mut found)?;
            Ok(found)
        })
        .collect();
    let mut candidates = Vec::new();
    for r in per_start {
        candidates.extend(r?);
    }
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|p| !candidates.iter().any(|o| o.len() > p.len() && is_subsequence(p, o)))
        .collect();
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(edges, k)| k.then_some(edges))
        .map(|edges| {
            let mut product = identity(q.group_order);
            for &e in &edges {
                product = mat_mul(&q.edges[e].matrix, &product);
            }
            PathRecord { edges, product }
        })
        .collect())
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

struct Walker<'a> {
    q: &'a RepQuiver,
    outgoing: &'a [Vec<usize>],
    incoming: &'a [Vec<usize>],
    limit: usize,
    steps: &'a AtomicUsize,
}

impl Walker<'_> {
    fn walk(
        &self,
        edge: usize,
        used: &mut Vec<bool>,
        path: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if self.steps.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::PathLimit(self.limit));
        }
        used[edge] = true;
        path.push(edge);
        let end = self.q.edges[edge].target;
        let mut extended = false;
        for &next in &self.outgoing[end] {
            if !used[next] {
                extended = true;
                self.walk(next, used, path, found)?;
            }
        }
        if !extended {
            let start = self.q.edges[path[0]].source;
            if self.incoming[start].iter().all(|&e| used[e]) {
                found.push(path.clone());
            }
        }
        path.pop();
        used[edge] = false;
        Ok(())
    }
}

fn labels(q: &RepQuiver) -> Vec<i64> {
    (0..q.group_order as i64).collect()
}

fn modulus(q: &RepQuiver) -> Option<u64> {
    Some(q.group_order as u64)
}

fn to_int(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(m)
}

/// `Φ_χ^E(t) = Σ_e χ(f_e)`.
pub fn edge_char_polynomial(q: &RepQuiver) -> Result<GroupExponentPolynomial> {
    let mut total = GroupExponentPolynomial::zero(None);
    for e in &q.edges {
        total = total.add(&char_poly(&to_int(&e.matrix))?);
    }
    Ok(total)
}

/// `Φ_pM^E(x, y) = Σ_e p_M(f_e)`.
pub fn edge_matrix_polynomial(q: &RepQuiver) -> Result<GroupExponentPolynomial> {
    let mut total = GroupExponentPolynomial::zero(modulus(q));
    for e in &q.edges {
        total = total.add(&matrix_poly(&e.matrix, &labels(q), modulus(q))?);
    }
    Ok(total)
}

/// `Φ_χ^P = Σ_j χ(M_j) s^|j|`.
pub fn path_char_polynomial(paths: &[PathRecord]) -> Result<GroupExponentPolynomial> {
    let mut total = GroupExponentPolynomial::zero(None);
    for p in paths {
        let mut s = GroupExponentPolynomial::zero(None);
        s.add_term(&[(Var::S, p.len() as i64)], 1);
        total = total.add(&char_poly(&to_int(&p.product))?.mul(&s));
    }
    Ok(total)
}

/// `Φ_pM^P = Σ_j p_M(M_jᵀ) z^|j|`: in the path polynomial `x` carries the
/// column label and `y` the row label, so that a path ending in value `a`
/// and starting from `b` contributes `x^b y^a`.
pub fn path_matrix_polynomial(q: &RepQuiver, paths: &[PathRecord]) -> Result<GroupExponentPolynomial> {
    let mut total = GroupExponentPolynomial::zero(modulus(q));
    for p in paths {
        let mut z = GroupExponentPolynomial::zero(None);
        z.add_term(&[(Var::Z, p.len() as i64)], 1);
        let t: Vec<Vec<i64>> = (0..p.product.len()).map(|j| p.product.iter().map(|r| r[j]).collect()).collect();
        total = total.add(&matrix_poly(&t, &labels(q), modulus(q))?.mul(&z));
    }
    Ok(total)
}

/// The four polynomial invariants of a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourPolynomials {
    pub edge_char: GroupExponentPolynomial,
    pub edge_matrix: GroupExponentPolynomial,
    pub path_char: GroupExponentPolynomial,
    pub path_matrix: GroupExponentPolynomial,
}

pub fn four_polynomials(q: &RepQuiver, limit: usize) -> Result<(FourPolynomials, Vec<PathRecord>)> {
    let paths = maximal_paths(q, limit)?;
    let four = FourPolynomials {
        edge_char: edge_char_polynomial(q)?,
        edge_matrix: edge_matrix_polynomial(q)?,
        path_char: path_char_polynomial(&paths)?,
        path_matrix: path_matrix_polynomial(q, &paths)?,
    };
    Ok((four, paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{RepEdge, RepVertex};

    #[test]
    fn char_poly_examples() {
        let m = IntMatrix::from_rows(&[vec![3i64, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(char_poly(&m).unwrap().to_string(), "t^3 - 3t^2");
        let f = IntMatrix::from_rows(&[vec![0i64, 1, 1], vec![0, 0, 0], vec![1, 0, 0]]);
        assert_eq!(char_poly(&f).unwrap().to_string(), "t^3 - t");
        assert_eq!(char_poly(&IntMatrix::zeros(3, 3)).unwrap().to_string(), "t^3");
        let two = IntMatrix::from_rows(&[vec![1i64, 2], vec![3, 4]]);
        assert_eq!(char_poly(&two).unwrap().to_string(), "t^2 - 5t - 2");
        assert!(matches!(char_poly(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn matrix_poly_example() {
        let m = vec![vec![1, 0, 2], vec![3, 0, 0], vec![0, 0, 2]];
        let p = matrix_poly(&m, &[0, 1, 2], Some(3)).unwrap();
        let expected = GroupExponentPolynomial::parse("1 + 2y^2 + 3x + 2x^2y^2", Some(3)).unwrap();
        assert_eq!(p, expected);
        for (j, row) in m.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(p.coefficient(&[(Var::X, j as i64), (Var::Y, k as i64)]), v);
            }
        }
        assert!(matrix_poly(&vec![vec![0; 3]; 3], &[0, 1, 2], Some(3)).unwrap().is_zero());
        assert!(matrix_poly(&m, &[0, 1], Some(3)).is_err());
    }

    fn quiver(edges: &[(usize, usize)], vertices: usize) -> RepQuiver {
        RepQuiver {
            group_order: 1,
            endos: vec![],
            vertices: (0..vertices).map(|_| RepVertex { coloring: vec![], chain: vec![], subspace: vec![] }).collect(),
            edges: edges
                .iter()
                .map(|&(s, t)| RepEdge { source: s, target: t, endo: 0, matrix: vec![vec![1]] })
                .collect(),
        }
    }

    #[test]
    fn single_loop() {
        let paths = maximal_paths(&quiver(&[(0, 0)], 1), 100).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 1);
    }

    #[test]
    fn two_vertex_full_quiver_has_four_circuits() {
        // loops at both vertices and a pair of opposite edges
        let q = quiver(&[(0, 0), (0, 1), (1, 1), (1, 0)], 2);
        let paths = maximal_paths(&q, 1000).unwrap();
        assert_eq!(paths.len(), 4);
        assert!(paths.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn leaf_into_loop() {
        let q = quiver(&[(0, 1), (1, 2), (2, 2), (3, 1)], 4);
        let paths = maximal_paths(&q, 1000).unwrap();
        let lens: Vec<usize> = paths.iter().map(|p| p.len()).collect();
        assert_eq!(lens, vec![3, 3]);
    }

    #[test]
    fn limit_is_reported() {
        let q = quiver(&[(0, 0), (0, 1), (1, 1), (1, 0)], 2);
        assert!(matches!(maximal_paths(&q, 2), Err(Error::PathLimit(2))));
    }
}
