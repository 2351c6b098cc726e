//! The chain complex of a biquandle in degrees 1 to 3, second cohomology
//! with coefficients in `ℤ` or `ℤ_m`, and 2-cocycle invariants.
//!
//! Chains use the non-degenerate bases: all elements in degree 1, pairs
//! `(a, b)` with `a ≠ b` in degree 2 and triples `(a, b, c)` with `a ≠ b`,
//! `b ≠ c` in degree 3, each in lexicographic order. The boundary is
//!
//! ```text
//! ∂(x_1..x_n) = Σ_k (-1)^k [ (x_1..x̂_k..x_n)
//!                          - (x_1 ⊴ x_k, .., x_{k-1} ⊴ x_k, x_{k+1} ⊳̄ x_k, .., x_n ⊳̄ x_k) ]
//! ```
//!
//! with degenerate tuples dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Biquandle;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homset::{chain_vector, colorings, ChainVector};
use crate::linalg::{gcd, hermite, reduce_by_hermite, smith, IntMatrix, LatticeQuotient};
use crate::poly::{GroupExponentPolynomial, Var};

/// Coefficient group `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CoeffGroup {
    Integers,
    Cyclic(u64),
}

impl CoeffGroup {
    pub fn cyclic(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Config(format!("modulus must be at least 2, got {m}")));
        }
        Ok(CoeffGroup::Cyclic(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoeffGroup::Integers => None,
            CoeffGroup::Cyclic(m) => Some(*m),
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.modulus().map(|m| m as usize)
    }

    /// Canonical representative: residue in `0..m` or the integer itself.
    pub fn reduce(&self, v: i128) -> i64 {
        match self {
            CoeffGroup::Integers => v as i64,
            CoeffGroup::Cyclic(m) => v.rem_euclid(*m as i128) as i64,
        }
    }
}

impl fmt::Display for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffGroup::Integers => write!(f, "Z"),
            CoeffGroup::Cyclic(m) => write!(f, "Z{m}"),
        }
    }
}

impl FromStr for CoeffGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let rest = t
            .strip_prefix('Z')
            .or_else(|| t.strip_prefix('z'))
            .or_else(|| t.strip_prefix("ℤ"))
            .ok_or_else(|| Error::Parse(format!("bad coefficient group '{s}'")))?;
        let rest = rest.trim_start_matches('_');
        if rest.is_empty() {
            return Ok(CoeffGroup::Integers);
        }
        let m: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad coefficient group '{s}'")))?;
        CoeffGroup::cyclic(m)
    }
}

impl From<CoeffGroup> for String {
    fn from(g: CoeffGroup) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for CoeffGroup {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1)
}

/// Non-degenerate pairs in lexicographic order (0-based).
pub fn pair_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
}

/// Position of `(a, b)` in [`pair_basis`], or `None` when `a = b`.
pub fn pair_index(n: usize, a: usize, b: usize) -> Option<usize> {
    (a != b).then(|| a * (n - 1) + if b < a { b } else { b - 1 })
}

pub fn triple_basis(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            for c in (0..n).filter(|&c| c != b) {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// `d2 : C_2 → C_1` and `d3 : C_3 → C_2` as integer matrices acting on
/// column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrices {
    pub d2: IntMatrix,
    pub d3: IntMatrix,
}

fn boundary_terms(x: &Biquandle, tuple: &[usize]) -> Vec<(Vec<usize>, i128)> {
    let mut out = Vec::new();
    for k in 0..tuple.len() {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let xk = tuple[k];
        let face: Vec<usize> = tuple.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
        let acted: Vec<usize> = tuple
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(i, &v)| if i < k { x.under(v, xk) } else { x.over(v, xk) })
            .collect();
        out.push((face, sign));
        out.push((acted, -sign));
    }
    out
}

pub fn boundary_matrices(x: &Biquandle) -> BoundaryMatrices {
    let n = x.order();
    let pairs = pair_basis(n);
    let mut d2 = IntMatrix::zeros(n, pairs.len());
    for (j, &(a, b)) in pairs.iter().enumerate() {
        for (t, c) in boundary_terms(x, &[a, b]) {
            d2[(t[0], j)] += c;
        }
    }
    let triples = triple_basis(n);
    let mut d3 = IntMatrix::zeros(pairs.len(), triples.len());
    for (j, &(a, b, c)) in triples.iter().enumerate() {
        for (t, coef) in boundary_terms(x, &[a, b, c]) {
            if let Some(i) = pair_index(n, t[0], t[1]) {
                d3[(i, j)] += coef;
            }
        }
    }
    BoundaryMatrices { d2, d3 }
}

/// An `A`-valued 2-cochain over the pair basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle {
    group: CoeffGroup,
    values: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct CocycleRepr {
    group: CoeffGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<[usize; 2]>>,
    values: Vec<i64>,
}

impl Serialize for Cocycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = order_from_pairs(self.values.len()).unwrap_or(0);
        let basis = pair_basis(n).into_iter().map(|(a, b)| [a + 1, b + 1]).collect();
        CocycleRepr { group: self.group, basis: Some(basis), values: self.values.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cocycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CocycleRepr::deserialize(d)?;
        Ok(Cocycle::new(r.group, r.values))
    }
}

// n with n(n-1) = len
fn order_from_pairs(len: usize) -> Option<usize> {
    (1..=len + 1).find(|&n| pair_count(n) == len)
}

impl Cocycle {
    /// Values are reduced to canonical representatives. The cocycle
    /// condition is not checked (see [`is_cocycle`]).
    pub fn new(group: CoeffGroup, values: Vec<i64>) -> Self {
        let values = values.into_iter().map(|v| group.reduce(v as i128)).collect();
        Cocycle { group, values }
    }

    pub fn zero(group: CoeffGroup, n: usize) -> Self {
        Cocycle { group, values: vec![0; pair_count(n)] }
    }

    pub fn group(&self) -> CoeffGroup {
        self.group
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_len(&self, x: &Biquandle) -> Result<()> {
        let expected = pair_count(x.order());
        if self.values.len() != expected {
            return Err(Error::BasisMismatch { expected, got: self.values.len() });
        }
        Ok(())
    }
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

/// Whether `φ ∘ ∂_3 = 0` in `A`.
pub fn is_cocycle(phi: &Cocycle, x: &Biquandle) -> Result<bool> {
    phi.check_len(x)?;
    let d3 = boundary_matrices(x).d3;
    let v: Vec<i128> = phi.values.iter().map(|&a| a as i128).collect();
    Ok(d3.transpose().mul_vec(&v).iter().all(|&r| phi.group.reduce(r) == 0))
}

/// `⟨φ, v⟩ ∈ A`.
pub fn evaluate(phi: &Cocycle, v: &ChainVector) -> Result<i64> {
    if phi.values.len() != v.len() {
        return Err(Error::BasisMismatch { expected: phi.values.len(), got: v.len() });
    }
    let s: i128 = phi.values.iter().zip(v.coords()).map(|(&a, &b)| a as i128 * b as i128).sum();
    Ok(phi.group.reduce(s))
}

// Z^2 described through the Smith form of δ = d3ᵀ: a basis of the cocycle
// lattice (containing m·ℤ^p in the modular case) and a coordinate map.
#[derive(Debug, Clone)]
struct CocycleLattice {
    basis: Vec<Vec<i128>>,
    v_inv: IntMatrix,
    // per adapted coordinate: None = not in Z, Some(s) = scaled by s
    scale: Vec<Option<i128>>,
}

impl CocycleLattice {
    fn new(x: &Biquandle, group: CoeffGroup) -> Self {
        let p = pair_count(x.order());
        let delta = boundary_matrices(x).d3.transpose();
        let s = smith(&delta);
        let scale: Vec<Option<i128>> = (0..p)
            .map(|i| match (i < s.rank, group.modulus()) {
                (false, _) => Some(1),
                (true, None) => None,
                (true, Some(m)) => {
                    let m = m as i128;
                    Some(m / gcd(s.d[(i, i)], m))
                }
            })
            .collect();
        let basis = (0..p)
            .filter_map(|i| scale[i].map(|k| s.v.column(i).into_iter().map(|v| v * k).collect()))
            .collect();
        CocycleLattice { basis, v_inv: s.v_inv, scale }
    }

    fn coords(&self, w: &[i128]) -> Vec<i128> {
        let c = self.v_inv.mul_vec(w);
        c.iter()
            .zip(&self.scale)
            .filter_map(|(&v, s)| s.map(|k| v / k))
            .collect()
    }
}

fn canonical_generators(gens: &[Vec<i128>], group: CoeffGroup, p: usize) -> Vec<Cocycle> {
    let mut all = gens.to_vec();
    if let Some(m) = group.modulus() {
        for j in 0..p {
            let mut e = vec![0; p];
            e[j] = m as i128;
            all.push(e);
        }
    }
    hermite(&all, p)
        .into_iter()
        .map(|row| row.iter().map(|&v| group.reduce(v)).collect::<Vec<_>>())
        .filter(|row| row.iter().any(|&v| v != 0))
        .map(|values| Cocycle { group, values })
        .collect()
}

/// Generators of the cocycle group `Z^2(X; A)`, in Hermite normal form.
pub fn cocycle_space(x: &Biquandle, group: CoeffGroup) -> Vec<Cocycle> {
    let lattice = CocycleLattice::new(x, group);
    canonical_generators(&lattice.basis, group, pair_count(x.order()))
}

/// Generators of the coboundary group `B^2(X; A)`.
pub fn coboundary_space(x: &Biquandle, group: CoeffGroup) -> Vec<Cocycle> {
    let d2 = boundary_matrices(x).d2;
    canonical_generators(&d2.to_rows(), group, pair_count(x.order()))
}

/// `H^2(X; A)`: its invariant factor decomposition and one representative
/// cocycle per cyclic factor.
#[derive(Debug, Clone)]
pub struct SecondCohomology {
    pub group: CoeffGroup,
    pub free_rank: usize,
    pub torsion: Vec<i128>,
    pub generators: Vec<Cocycle>,
    quotient: LatticeQuotient,
    lattice: CocycleLattice,
}

impl SecondCohomology {
    /// Class of a cocycle as coordinates in `ℤ^free ⊕ ⊕ ℤ/torsion`, listed
    /// torsion first.
    pub fn class_of(&self, phi: &Cocycle) -> Vec<i128> {
        let w: Vec<i128> = phi.values.iter().map(|&v| v as i128).collect();
        let c = self.quotient.class_of(&self.lattice.coords(&w));
        c.into_iter().zip(&self.quotient.factors).filter(|(_, &f)| f != 1).map(|(v, _)| v).collect()
    }

    pub fn is_trivial_class(&self, phi: &Cocycle) -> bool {
        self.class_of(phi).iter().all(|&v| v == 0)
    }

    /// Whether the classes of `phis` are independent: over `ℤ`, linearly
    /// independent in the free part; over `ℤ_m`, generating a subgroup whose
    /// order is the product of their orders.
    pub fn independent(&self, phis: &[Cocycle]) -> bool {
        let classes: Vec<Vec<i128>> = phis.iter().map(|p| self.class_of(p)).collect();
        let factors: Vec<i128> = self.quotient.factors.iter().copied().filter(|&f| f != 1).collect();
        if factors.contains(&0) || self.group == CoeffGroup::Integers {
            let free: Vec<Vec<i128>> = classes
                .iter()
                .map(|c| c.iter().zip(&factors).filter(|(_, &f)| f == 0).map(|(&v, _)| v).collect())
                .collect();
            let dim = free.first().map_or(0, |r| r.len());
            return IntMatrix::from_columns(dim, &free).rank() == phis.len();
        }
        let order_of = |c: &Vec<i128>| {
            let mut k = 1i128;
            for (v, f) in c.iter().zip(&factors) {
                let o = f / gcd(*v, *f);
                k = k / gcd(k, o) * o;
            }
            k
        };
        let mut seen = std::collections::HashSet::new();
        let zero = vec![0i128; factors.len()];
        let mut frontier = vec![zero.clone()];
        seen.insert(zero);
        while let Some(e) = frontier.pop() {
            for c in &classes {
                let s: Vec<i128> = e.iter().zip(c).zip(&factors).map(|((a, b), f)| (a + b).rem_euclid(*f)).collect();
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        let product: i128 = classes.iter().map(order_of).product();
        seen.len() as i128 == product
    }
}

pub fn second_cohomology(x: &Biquandle, group: CoeffGroup) -> SecondCohomology {
    let p = pair_count(x.order());
    let lattice = CocycleLattice::new(x, group);
    let d2 = boundary_matrices(x).d2;
    let mut b_gens = d2.to_rows();
    if let Some(m) = group.modulus() {
        for j in 0..p {
            let mut e = vec![0; p];
            e[j] = m as i128;
            b_gens.push(e);
        }
    }
    let b_coords: Vec<Vec<i128>> = b_gens.iter().map(|g| lattice.coords(g)).collect();
    let quotient = LatticeQuotient::new(&lattice.basis, &b_coords);
    let b_hnf = hermite(&b_gens, p);
    let generators = quotient
        .basis
        .iter()
        .zip(&quotient.factors)
        .filter(|(_, &f)| f != 1)
        .map(|(g, _)| {
            let r = reduce_by_hermite(g, &b_hnf);
            Cocycle { group, values: r.iter().map(|&v| group.reduce(v)).collect() }
        })
        .collect();
    SecondCohomology {
        group,
        free_rank: quotient.free_rank(),
        torsion: quotient.torsion(),
        generators,
        quotient,
        lattice,
    }
}

/// Representatives of `H^2(X; A)`, one per cyclic factor.
pub fn h2_generators(x: &Biquandle, group: CoeffGroup) -> (Vec<Cocycle>, usize, Vec<i128>) {
    let h = second_cohomology(x, group);
    (h.generators, h.free_rank, h.torsion)
}

/// Boltzmann weights of all colorings, in coloring order.
pub fn boltzmann_weights(d: &LinkDiagram, x: &Biquandle, phi: &Cocycle) -> Result<Vec<i64>> {
    phi.check_len(x)?;
    colorings(d, x).iter().map(|c| evaluate(phi, &chain_vector(c, d, x))).collect()
}

/// `Φ_φ(q) = Σ q^⟨φ, v⟩` over all colorings.
pub fn cocycle_invariant(d: &LinkDiagram, x: &Biquandle, phi: &Cocycle) -> Result<GroupExponentPolynomial> {
    let mut p = GroupExponentPolynomial::zero(phi.group.modulus());
    for w in boltzmann_weights(d, x, phi)? {
        p.add_term(&[(Var::Q, w)], 1);
    }
    Ok(p)
}

/// `Φ'_φ(q) = Π (q - m)` over the weight multiset, with weights taken as
/// their canonical integer representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootForm {
    /// Root and multiplicity, roots ascending.
    pub factors: Vec<(i64, usize)>,
}

impl RootForm {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(_, k)| k).sum()
    }

    /// The product multiplied out as an ordinary polynomial in `q`.
    pub fn expand(&self) -> GroupExponentPolynomial {
        let mut p = GroupExponentPolynomial::constant(1);
        for &(root, k) in &self.factors {
            let mut lin = GroupExponentPolynomial::zero(None);
            lin.add_term(&[(Var::Q, 1)], 1);
            lin.add_term(&[], -root);
            for _ in 0..k {
                p = p.mul(&lin);
            }
        }
        p
    }
}

impl fmt::Display for RootForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for &(root, k) in &self.factors {
            let base = match root {
                0 => "q".to_string(),
                r if r > 0 => format!("(q - {r})"),
                r => format!("(q + {})", -r),
            };
            if k == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn cocycle_invariant_root_form(d: &LinkDiagram, x: &Biquandle, phi: &Cocycle) -> Result<RootForm> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for w in boltzmann_weights(d, x, phi)? {
        *counts.entry(w).or_default() += 1;
    }
    Ok(RootForm { factors: counts.into_iter().collect() })
}
