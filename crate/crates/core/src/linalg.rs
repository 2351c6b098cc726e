//! Exact integer matrices: Smith and Hermite normal forms, kernels and
//! quotients of lattices.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<T: Copy + Into<i128>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&v| v.into()).collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i128>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn reduce_mod(&self, m: i128) -> IntMatrix {
        IntMatrix { data: self.data.iter().map(|v| v.rem_euclid(m)).collect(), ..self.clone() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for j in 0..self.cols {
                let v = self[(src, j)];
                self[(dst, j)] += k * v;
            }
        }
    }

    // col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for i in 0..self.rows {
                let v = self[(i, src)];
                self[(i, dst)] += k * v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn rank(&self) -> usize {
        smith(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `d = u · a · v` with `d` diagonal, `d[i] | d[i+1]`, all unimodular
/// transforms and their inverses recorded.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<i128> {
        (0..self.rank).map(|i| self.d[(i, i)]).collect()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Each elementary operation is mirrored on the transforms.
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let (dst, src, k) = ($dst, $src, $k);
            d.add_row(dst, src, k);
            u.add_row(dst, src, k);
            u_inv.add_col(src, dst, -k);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let (dst, src, k) = ($dst, $src, $k);
            d.add_col(dst, src, k);
            v.add_col(dst, src, k);
            v_inv.add_row(src, dst, -k);
        }};
    }
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            let (a, b) = ($a, $b);
            d.swap_rows(a, b);
            u.swap_rows(a, b);
            u_inv.swap_cols(a, b);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            let (a, b) = ($a, $b);
            d.swap_cols(a, b);
            v.swap_cols(a, b);
            v_inv.swap_rows(a, b);
        }};
    }

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);
        loop {
            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)] / p;
                row_add!(i, t, -q);
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)] / p;
                col_add!(j, t, -q);
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        row_add!(t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                if d[(i, t)] != 0 && d[(i, t)].abs() < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if d[(t, j)] != 0 && d[(t, j)].abs() < d[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                row_swap!(t, best.0);
            } else if best.1 != t {
                col_swap!(t, best.1);
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
            for i in 0..m {
                u_inv[(i, t)] = -u_inv[(i, t)];
            }
        }
        t += 1;
    }
    Smith { d, u, u_inv, v, v_inv, rank: t }
}

/// A basis of the integer kernel `{x : a x = 0}` as columns.
pub fn kernel(a: &IntMatrix) -> Vec<Vec<i128>> {
    let s = smith(a);
    (s.rank..a.cols).map(|j| s.v.column(j)).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `gens`: rows in
/// echelon form, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hermite(gens: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = gens.iter().filter(|g| g.iter().any(|&v| v != 0)).cloned().collect();
    let mut out: Vec<Vec<i128>> = Vec::new();
    for col in 0..dim {
        // gcd-combine all rows having a nonzero entry in this column
        loop {
            let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by_key(|&i| rows[i][col].abs());
            let p = idx[0];
            for &i in &idx[1..] {
                let q = rows[i][col] / rows[p][col];
                let pr = rows[p].clone();
                for (a, b) in rows[i].iter_mut().zip(&pr) {
                    *a -= q * b;
                }
            }
            rows.retain(|r| r.iter().any(|&v| v != 0));
        }
        if let Some(i) = rows.iter().position(|r| r[col] != 0) {
            let mut r = rows.remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|v| *v = -*v);
            }
            out.push(r);
        }
    }
    // reduce above the pivots
    for k in 0..out.len() {
        let col = pivot(&out[k]).expect("nonzero row");
        let p = out[k][col];
        for i in 0..k {
            let q = out[i][col].div_euclid(p);
            if q != 0 {
                let pr = out[k].clone();
                for (a, b) in out[i].iter_mut().zip(&pr) {
                    *a -= q * b;
                }
            }
        }
    }
    out
}

fn pivot(row: &[i128]) -> Option<usize> {
    row.iter().position(|&v| v != 0)
}

/// Reduces `v` modulo a lattice given in Hermite normal form.
pub fn reduce_by_hermite(v: &[i128], hnf: &[Vec<i128>]) -> Vec<i128> {
    let mut v = v.to_vec();
    for row in hnf {
        let col = pivot(row).expect("nonzero row");
        let q = v[col].div_euclid(row[col]);
        if q != 0 {
            for (a, b) in v.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
    }
    v
}

/// The quotient `Z / B` of a full-rank lattice `Z` (given by a basis as
/// columns) by a sublattice `B` (given by generators).
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    /// New basis of `Z`, adapted so that `B` is spanned by `factors[i]`
    /// times column `i`.
    pub basis: Vec<Vec<i128>>,
    /// Elementary divisors, one per basis vector; `0` means a free factor,
    /// `1` a trivial one.
    pub factors: Vec<i128>,
    to_adapted: IntMatrix,
}

impl LatticeQuotient {
    /// `coords` maps an ambient vector of `Z` to its coordinates in the given
    /// basis of `Z`.
    pub fn new(z_basis: &[Vec<i128>], b_coords: &[Vec<i128>]) -> Self {
        let k = z_basis.len();
        let dim = z_basis.first().map_or(0, |v| v.len());
        let c = IntMatrix::from_columns(k, b_coords);
        let s = smith(&c);
        let zb = IntMatrix::from_columns(dim, z_basis);
        let adapted = zb.mul(&s.u_inv);
        let factors = (0..k).map(|i| if i < s.rank { s.d[(i, i)] } else { 0 }).collect();
        LatticeQuotient { basis: (0..k).map(|j| adapted.column(j)).collect(), factors, to_adapted: s.u }
    }

    /// Coordinates of a class in `⊕ ℤ/factors[i]`, given coordinates of a
    /// representative in the original basis of `Z`.
    pub fn class_of(&self, z_coords: &[i128]) -> Vec<i128> {
        let c = self.to_adapted.mul_vec(z_coords);
        c.iter()
            .zip(&self.factors)
            .map(|(&v, &f)| if f == 0 { v } else { v.rem_euclid(f) })
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f == 0).count()
    }

    pub fn torsion(&self) -> Vec<i128> {
        self.factors.iter().copied().filter(|&f| f > 1).collect()
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
