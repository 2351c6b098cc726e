//! Sparse integer polynomials in the variables `s, t, x, y, z, q`.
//!
//! The exponents of `x`, `y` and `q` are elements of the coefficient group
//! `A`: residues modulo `m` for `A = ℤ_m` and arbitrary integers for
//! `A = ℤ`. The exponents of `s`, `t` and `z` are natural numbers.
//!
//! Terms are printed in lexicographic order of their exponent vectors with
//! the variable order `s > t > x > y > z > q`, highest first, so
//! `xy^2 + xy + 2x + 2y^2 + 7y + 14`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S,
    T,
    X,
    Y,
    Z,
    Q,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::S, Var::T, Var::X, Var::Y, Var::Z, Var::Q];

    fn index(self) -> usize {
        self as usize
    }

    /// Whether exponents of this variable live in `A`.
    pub fn is_group_valued(self) -> bool {
        matches!(self, Var::X | Var::Y | Var::Q)
    }

    pub fn name(self) -> char {
        match self {
            Var::S => 's',
            Var::T => 't',
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::Q => 'q',
        }
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s" => Ok(Var::S),
            "t" => Ok(Var::T),
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "z" => Ok(Var::Z),
            "q" => Ok(Var::Q),
            other => Err(Error::UnknownVariable(other.to_string())),
        }
    }
}

type Exponents = [i64; 6];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupExponentPolynomial {
    modulus: Option<u64>,
    terms: BTreeMap<Exponents, i64>,
}

/// A substitution accepted by [`GroupExponentPolynomial::specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    /// Evaluate a variable at 1.
    One(Var),
    /// Replace `x^a y^a` by `q^a`.
    XyToQ,
}

impl FromStr for Binding {
    type Err = Error;
    /// `z=1`, `s=1`, `xy=q`.
    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::Specialize(format!("binding '{s}' is not of the form var=value")))?;
        match (lhs.trim(), rhs.trim()) {
            ("xy", "q") => Ok(Binding::XyToQ),
            (v, "1") => Ok(Binding::One(v.parse()?)),
            _ => Err(Error::Specialize(format!("unsupported binding '{s}'"))),
        }
    }
}

impl GroupExponentPolynomial {
    /// The zero polynomial; `modulus` is the order of `A` (`None` for `ℤ`).
    pub fn zero(modulus: Option<u64>) -> Self {
        GroupExponentPolynomial { modulus, terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        let mut p = GroupExponentPolynomial::zero(None);
        p.add_term(&[], c);
        p
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn normalize(&self, mut e: Exponents) -> Exponents {
        if let Some(m) = self.modulus {
            for v in Var::ALL.into_iter().filter(|v| v.is_group_valued()) {
                e[v.index()] = e[v.index()].rem_euclid(m as i64);
            }
        }
        e
    }

    fn add_raw(&mut self, e: Exponents, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.normalize(e);
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    /// Adds `c · Π v^k`.
    pub fn add_term(&mut self, powers: &[(Var, i64)], c: i64) {
        let mut e = [0; 6];
        for &(v, k) in powers {
            e[v.index()] += k;
        }
        self.add_raw(e, c);
    }

    /// Coefficient of `Π v^k`.
    pub fn coefficient(&self, powers: &[(Var, i64)]) -> i64 {
        let mut e = [0; 6];
        for &(v, k) in powers {
            e[v.index()] += k;
        }
        self.terms.get(&self.normalize(e)).copied().unwrap_or(0)
    }

    /// Terms as (exponents in `s, t, x, y, z, q` order, coefficient), in
    /// printing order.
    pub fn terms(&self) -> Vec<([i64; 6], i64)> {
        self.terms.iter().rev().map(|(e, c)| (*e, *c)).collect()
    }

    fn merged_modulus(&self, other: &Self) -> Option<u64> {
        self.modulus.or(other.modulus)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = GroupExponentPolynomial { modulus: self.merged_modulus(other), terms: BTreeMap::new() };
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_raw(*e, *c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = GroupExponentPolynomial::zero(self.modulus);
        for (e, c) in &self.terms {
            out.add_raw(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupExponentPolynomial::zero(self.merged_modulus(other));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0; 6];
                for i in 0..6 {
                    e[i] = e1[i] + e2[i];
                }
                out.add_raw(e, c1 * c2);
            }
        }
        out
    }

    /// Sum of all coefficients, the value at every variable equal to 1.
    pub fn eval_all_ones(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Evaluates `t` (the only variable present) at an integer.
    pub fn eval_univariate(&self, var: Var, at: i64) -> Result<i64> {
        let mut total = 0i64;
        for (e, c) in &self.terms {
            if let Some(v) = Var::ALL.into_iter().find(|&v| v != var && e[v.index()] != 0) {
                return Err(Error::Specialize(format!("polynomial also involves {}", v.name())));
            }
            total += c * at.pow(e[var.index()] as u32);
        }
        Ok(total)
    }

    pub fn specialize(&self, bindings: &[Binding]) -> Result<Self> {
        let mut out = self.clone();
        for b in bindings {
            let mut next = GroupExponentPolynomial::zero(out.modulus);
            for (e, c) in &out.terms {
                let mut e = *e;
                match b {
                    Binding::One(v) => e[v.index()] = 0,
                    Binding::XyToQ => {
                        let (a, b) = (e[Var::X.index()], e[Var::Y.index()]);
                        if a != b {
                            return Err(Error::Specialize(format!(
                                "term with x^{a}y^{b} has no image under xy = q"
                            )));
                        }
                        e[Var::X.index()] = 0;
                        e[Var::Y.index()] = 0;
                        e[Var::Q.index()] += a;
                    }
                }
                next.add_raw(e, *c);
            }
            out = next;
        }
        Ok(out)
    }

    /// Parses the printed form, e.g. `5s^3t^3 - 39s^3t^2` or `8 + 8q`.
    pub fn parse(text: &str, modulus: Option<u64>) -> Result<Self> {
        let mut out = GroupExponentPolynomial::zero(modulus);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(out);
        }
        let bad = || Error::Parse(format!("bad polynomial '{text}'"));
        let mut chars = compact.chars().peekable();
        let mut first = true;
        while chars.peek().is_some() {
            let mut sign = 1;
            match chars.peek() {
                Some('+') => {
                    chars.next();
                }
                Some('-') => {
                    sign = -1;
                    chars.next();
                }
                _ if !first => return Err(bad()),
                _ => {}
            }
            first = false;
            let mut digits = String::new();
            while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(*c);
                chars.next();
            }
            let coef: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let mut e = [0i64; 6];
            let mut any = !digits.is_empty();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphabetic()) {
                chars.next();
                let v: Var = c.to_string().parse()?;
                let mut k = 1;
                if chars.peek() == Some(&'^') {
                    chars.next();
                    let mut ds = String::new();
                    if chars.peek() == Some(&'-') {
                        ds.push('-');
                        chars.next();
                    }
                    while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                        ds.push(*c);
                        chars.next();
                    }
                    k = ds.parse().map_err(|_| bad())?;
                }
                e[v.index()] += k;
                any = true;
            }
            if !any {
                return Err(bad());
            }
            out.add_raw(e, sign * coef);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupExponentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let monomial: String = Var::ALL
                .iter()
                .filter(|v| e[v.index()] != 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    p => format!("{}^{p}", v.name()),
                })
                .collect();
            let magnitude = c.unsigned_abs();
            let body = if monomial.is_empty() {
                magnitude.to_string()
            } else if magnitude == 1 {
                monomial
            } else {
                format!("{magnitude}{monomial}")
            };
            match (k, *c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for GroupExponentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
