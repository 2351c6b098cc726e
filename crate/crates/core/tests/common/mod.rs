#![allow(dead_code)]

use knotquiver::algebra::{core_cyclic, Biquandle, EndoMap};
use knotquiver::cohomology::{CoeffGroup, Cocycle};
use knotquiver::job::parse_biquandle;
use knotquiver::quiver::DataVector;

pub const BUILTINS: &[&str] = &["core:3", "core:4", "core:5", "alexander:5:2", "alexander:7:3", "trivial:3", "z2bq", "swap3", "s3"];

pub fn builtin(name: &str) -> Biquandle {
    parse_biquandle(name).unwrap()
}

pub fn swap3() -> Biquandle {
    builtin("swap3")
}

pub fn cochains(group: CoeffGroup, rows: &[&[i64]]) -> Vec<Cocycle> {
    rows.iter().map(|r| Cocycle::new(group, r.to_vec())).collect()
}

pub fn endos(rows: &[&[usize]]) -> Vec<EndoMap> {
    rows.iter().map(|r| EndoMap::from_one_based(r).unwrap()).collect()
}

/// The three-element quandle with the printed cochain set, checked only for
/// shape.
pub fn printed_swap3_data() -> DataVector {
    let z3 = CoeffGroup::Cyclic(3);
    let c = cochains(z3, &[&[0, 1, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 1]]);
    DataVector::new_unchecked(swap3(), z3, c, endos(&[&[2, 2, 1]])).unwrap()
}

/// The three-element quandle with genuine ℤ3 cocycles.
pub fn cocycle_swap3_data() -> DataVector {
    let z3 = CoeffGroup::Cyclic(3);
    let c = cochains(z3, &[&[0, 1, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 1]]);
    DataVector::new(swap3(), z3, c, endos(&[&[2, 2, 1]])).unwrap()
}

/// Core(ℤ4) with the two printed cocycles reduced mod 3.
pub fn core4_data(s: &[&[usize]]) -> DataVector {
    let z3 = CoeffGroup::Cyclic(3);
    let c = cochains(z3, &[&[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0]]);
    DataVector::new(core_cyclic(4).unwrap().into_biquandle(), z3, c, endos(s)).unwrap()
}

type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn padd(a: &Poly, b: &Poly, sign: i128) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += sign * v;
    }
    trim(out)
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn det(m: &[Vec<Poly>]) -> Poly {
    if m.is_empty() {
        return vec![1];
    }
    let mut acc = vec![0];
    for j in 0..m.len() {
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = pmul(&m[0][j], &det(&minor));
        acc = padd(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(tI - M)` by cofactor expansion, leading coefficient first.
pub fn cofactor_char_poly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { vec![-(m[i][j] as i128), 1] } else { vec![-(m[i][j] as i128)] }).collect())
        .collect();
    let mut p = det(&entries);
    p.resize(n + 1, 0);
    p.reverse();
    p
}
