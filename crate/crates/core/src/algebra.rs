//! Finite quandles and biquandles as operation tables.
//!
//! Elements are stored 0-based; element `i` is printed as `i + 1`, matching
//! the row/column numbering of the usual operation tables. For cyclic
//! constructions the class of zero is therefore printed as `m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite biquandle given by its under (`x ⊴ y`) and over (`x ⊳̄ y`)
/// operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biquandle {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
}

/// Which axiom failed, with the offending elements (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `x ⊴ x = x ⊳̄ x`
    Diagonal,
    /// `y ↦ x ⊳̄ y` is not a bijection for the witness column.
    OverInvertible,
    /// `x ↦ x ⊴ y` is not a bijection for the witness column.
    UnderInvertible,
    /// `S(x, y) = (y ⊳̄ x, x ⊴ y)` is not a bijection.
    SwitchInvertible,
    /// One of the three exchange laws, numbered 1..=3.
    Exchange(u8),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self.axiom {
            Axiom::Diagonal => write!(f, "axiom (i) fails at x={w}"),
            Axiom::OverInvertible => write!(f, "axiom (ii): over action of y={w} is not invertible"),
            Axiom::UnderInvertible => write!(f, "axiom (ii): under action of y={w} is not invertible"),
            Axiom::SwitchInvertible => write!(f, "axiom (ii): switch map is not invertible at ({w})"),
            Axiom::Exchange(k) => write!(f, "axiom (iii): exchange law {k} fails at ({w})"),
        }
    }
}

/// JSON form: `{"n": 3, "under": [[...]], "over": [[...]]}` with 1-based
/// entries; a missing `over` table means a quandle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub n: usize,
    pub under: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Vec<Vec<usize>>>,
}

impl Biquandle {
    /// Builds a biquandle from 0-based row-major tables; axioms are not
    /// checked here (see [`Biquandle::check_axioms`]).
    pub fn from_fn(n: usize, under: impl Fn(usize, usize) -> usize, over: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut u = Vec::with_capacity(n * n);
        let mut o = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                u.push(under(x, y));
                o.push(over(x, y));
            }
        }
        if let Some(bad) = u.iter().chain(&o).find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {} out of range 1..{n}", bad + 1)));
        }
        Ok(Biquandle { n, under: u, over: o })
    }

    /// Builds from 1-based tables as printed in operation tables.
    pub fn from_tables(under: &[Vec<usize>], over: Option<&[Vec<usize>]>) -> Result<Self> {
        let n = under.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let check = |t: &[Vec<usize>], name: &str| -> Result<()> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidTable(format!("{name} table is not {n}x{n}")));
            }
            if let Some(bad) = t.iter().flatten().find(|&&v| v == 0 || v > n) {
                return Err(Error::InvalidTable(format!("entry {bad} out of range 1..{n}")));
            }
            Ok(())
        };
        check(under, "under")?;
        if let Some(o) = over {
            check(o, "over")?;
        }
        Biquandle::from_fn(
            n,
            |x, y| under[x][y] - 1,
            |x, y| match over {
                Some(o) => o[x][y] - 1,
                None => x,
            },
        )
    }

    pub fn from_file(file: &TableFile) -> Result<Self> {
        if file.n != file.under.len() {
            return Err(Error::InvalidTable(format!("n = {} but under table has {} rows", file.n, file.under.len())));
        }
        Biquandle::from_tables(&file.under, file.over.as_deref())
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            n: self.n,
            under: self.under_table(),
            over: if self.is_quandle() { None } else { Some(self.over_table()) },
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    /// 1-based under table, rows indexed by `x`.
    pub fn under_table(&self) -> Vec<Vec<usize>> {
        self.under.chunks(self.n).map(|r| r.iter().map(|v| v + 1).collect()).collect()
    }

    pub fn over_table(&self) -> Vec<Vec<usize>> {
        self.over.chunks(self.n).map(|r| r.iter().map(|v| v + 1).collect()).collect()
    }

    /// True when `x ⊳̄ y = x` identically.
    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.over(x, y) == x))
    }

    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.n;
        let mut report = Vec::new();
        for x in 0..n {
            if self.under(x, x) != self.over(x, x) {
                report.push(AxiomViolation { axiom: Axiom::Diagonal, witness: vec![x + 1] });
            }
        }
        for y in 0..n {
            let mut seen_u = vec![false; n];
            let mut seen_o = vec![false; n];
            for x in 0..n {
                seen_u[self.under(x, y)] = true;
                seen_o[self.over(x, y)] = true;
            }
            if seen_u.contains(&false) {
                report.push(AxiomViolation { axiom: Axiom::UnderInvertible, witness: vec![y + 1] });
            }
            if seen_o.contains(&false) {
                report.push(AxiomViolation { axiom: Axiom::OverInvertible, witness: vec![y + 1] });
            }
        }
        let mut hit = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (self.over(y, x), self.under(x, y));
                if std::mem::replace(&mut hit[a * n + b], true) {
                    report.push(AxiomViolation { axiom: Axiom::SwitchInvertible, witness: vec![x + 1, y + 1] });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let laws = [
                        (
                            self.under(self.under(x, y), self.under(z, y)),
                            self.under(self.under(x, z), self.over(y, z)),
                        ),
                        (
                            self.over(self.under(x, y), self.under(z, y)),
                            self.under(self.over(x, z), self.over(y, z)),
                        ),
                        (
                            self.over(self.over(x, y), self.over(z, y)),
                            self.over(self.over(x, z), self.under(y, z)),
                        ),
                    ];
                    for (k, (l, r)) in laws.iter().enumerate() {
                        if l != r {
                            report.push(AxiomViolation {
                                axiom: Axiom::Exchange(k as u8 + 1),
                                witness: vec![x + 1, y + 1, z + 1],
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Whether `f` (0-based images) preserves both operations into `target`.
    pub fn is_homomorphism_to(&self, target: &Biquandle, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&v| v < target.n)
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| {
                    f[self.under(x, y)] == target.under(f[x], f[y]) && f[self.over(x, y)] == target.over(f[x], f[y])
                })
            })
    }

    pub fn is_endomorphism(&self, f: &EndoMap) -> bool {
        self.is_homomorphism_to(self, &f.images)
    }
}

impl fmt::Display for Biquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_table = |f: &mut fmt::Formatter<'_>, sym: &str, table: Vec<Vec<usize>>| -> fmt::Result {
            write!(f, "{sym:>3} |")?;
            for y in 1..=self.n {
                write!(f, " {y:>2}")?;
            }
            writeln!(f)?;
            writeln!(f, "----+{}", "-".repeat(3 * self.n))?;
            for (x, row) in table.iter().enumerate() {
                write!(f, "{:>3} |", x + 1)?;
                for v in row {
                    write!(f, " {v:>2}")?;
                }
                writeln!(f)?;
            }
            Ok(())
        };
        write_table(f, "▷", self.under_table())?;
        if !self.is_quandle() {
            writeln!(f)?;
            write_table(f, "▷̄", self.over_table())?;
        }
        Ok(())
    }
}

/// A quandle: a biquandle whose over operation is trivial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quandle {
    inner: Biquandle,
}

impl Quandle {
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Ok(Quandle { inner: Biquandle::from_fn(n, op, |x, _| x)? })
    }

    /// From a 1-based operation table.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        Ok(Quandle { inner: Biquandle::from_tables(table, None)? })
    }

    pub fn order(&self) -> usize {
        self.inner.n
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.inner.under(x, y)
    }

    /// `x ⊳⁻¹ y`, the unique `z` with `z ⊳ y = x`.
    pub fn op_inv(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.order()).find(|&z| self.op(z, y) == x)
    }

    /// Every right translation is an involution.
    pub fn is_kei(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.op(self.op(x, y), y) == x))
    }

    pub fn as_biquandle(&self) -> &Biquandle {
        &self.inner
    }

    pub fn into_biquandle(self) -> Biquandle {
        self.inner
    }
}

impl AsRef<Biquandle> for Quandle {
    fn as_ref(&self) -> &Biquandle {
        &self.inner
    }
}

impl From<Quandle> for Biquandle {
    fn from(q: Quandle) -> Self {
        q.inner
    }
}

// index i <-> residue (i + 1) mod m
fn residue(i: usize, m: usize) -> i64 {
    ((i + 1) % m) as i64
}

fn index_of(r: i64, m: usize) -> usize {
    let r = r.rem_euclid(m as i64) as usize;
    (r + m - 1) % m
}

/// `Core(ℤ_m)`: `x ▷ y = 2y − x`.
pub fn core_cyclic(m: usize) -> Result<Quandle> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    Quandle::from_fn(m, |x, y| index_of(2 * residue(y, m) - residue(x, m), m))
}

/// Alexander quandle on `ℤ_m`: `x ▷ y = t·x + (1 − t)·y`.
pub fn alexander_cyclic(m: usize, t: i64) -> Result<Quandle> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let tm = t.rem_euclid(m as i64);
    if gcd(tm as u64, m as u64) != 1 {
        return Err(Error::NotUnit { t, m: m as u64 });
    }
    Quandle::from_fn(m, |x, y| index_of(tm * residue(x, m) + (1 - tm) * residue(y, m), m))
}

/// The trivial quandle of order `n`: `x ▷ y = x`.
pub fn trivial(n: usize) -> Result<Quandle> {
    Quandle::from_fn(n, |x, _| x)
}

/// `ℤ_2` with `x ⊴ y = x ⊳̄ y = x + 1`.
pub fn constant_action_biquandle_z2() -> Biquandle {
    Biquandle::from_fn(2, |x, _| 1 - x, |x, _| 1 - x).expect("static table")
}

/// Conjugation quandle `x ▷ y = y⁻¹ x y` of a group given by its 0-based
/// multiplication table.
pub fn conjugation(group: &[Vec<usize>]) -> Result<Quandle> {
    let n = group.len();
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if group.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(Error::InvalidTable("group table is not square or has out-of-range entries".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| group[e][x] == x && group[x][e] == x))
        .ok_or_else(|| Error::InvalidTable("group table has no identity".into()))?;
    let inv: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| group[x][y] == e).ok_or_else(|| Error::InvalidTable(format!("element {x} has no inverse"))))
        .collect::<Result<_>>()?;
    Quandle::from_fn(n, |x, y| group[group[inv[y]][x]][y])
}

/// Multiplication table of `ℤ_m`.
pub fn cyclic_group_table(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

/// Multiplication table of the symmetric group on `k` letters, elements in
/// lexicographic order of their one-line notation; `(p·q)(i) = p(q(i))`.
pub fn symmetric_group_table(k: usize) -> Vec<Vec<usize>> {
    // permutations in lexicographic order
    let mut all = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        all.push(p.clone());
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    let index = |q: &Vec<usize>| all.iter().position(|r| r == q).expect("closed under composition");
    all.iter()
        .map(|a| all.iter().map(|b| index(&b.iter().map(|&i| a[i]).collect())).collect())
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// A map `X → X` written by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoMap {
    images: Vec<usize>,
}

impl EndoMap {
    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Self {
        EndoMap { images }
    }

    /// From 1-based images such as `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("endomorphism images are 1-based".into()));
        }
        Ok(EndoMap { images: images.iter().map(|v| v - 1).collect() })
    }

    pub fn identity(n: usize) -> Self {
        EndoMap { images: (0..n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &EndoMap) -> EndoMap {
        EndoMap { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All homomorphisms `x → y` in lexicographic order of their image vectors.
pub fn homomorphisms(x: &Biquandle, y: &Biquandle) -> Vec<EndoMap> {
    let mut out = Vec::new();
    let images = vec![None; x.n];
    extend_hom(x, y, &images, &mut out);
    out
}

pub fn endomorphisms(x: &Biquandle) -> Vec<EndoMap> {
    homomorphisms(x, x)
}

fn extend_hom(x: &Biquandle, y: &Biquandle, images: &[Option<usize>], out: &mut Vec<EndoMap>) {
    let Some(next) = images.iter().position(Option::is_none) else {
        out.push(EndoMap { images: images.iter().map(|v| v.expect("complete")).collect() });
        return;
    };
    for v in 0..y.n {
        let mut trial = images.to_vec();
        trial[next] = Some(v);
        if propagate(x, y, &mut trial) {
            extend_hom(x, y, &trial, out);
        }
    }
}

// Forces images of products of assigned elements; false on a contradiction.
fn propagate(x: &Biquandle, y: &Biquandle, images: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for a in 0..x.n {
            let Some(fa) = images[a] else { continue };
            for b in 0..x.n {
                let Some(fb) = images[b] else { continue };
                for (src, dst) in [(x.under(a, b), y.under(fa, fb)), (x.over(a, b), y.over(fa, fb))] {
                    match images[src] {
                        Some(v) if v != dst => return false,
                        Some(_) => {}
                        None => {
                            images[src] = Some(dst);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}
