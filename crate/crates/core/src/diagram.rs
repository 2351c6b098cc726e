//! Oriented classical and virtual link diagrams in crossing/semiarc form.
//!
//! A diagram is a list of classical crossings. Each crossing names the four
//! semiarcs meeting there: the incoming and outgoing halves of the
//! under-strand and of the over-strand. Virtual crossings are never stored;
//! semiarcs simply run through them.
//!
//! # PD grammar
//!
//! ```text
//! pd      := item*                       (separated by whitespace or commas)
//! item    := "Xp[" int "," int "," int "," int "]"    positive crossing
//!          | "Xm[" int "," int "," int "," int "]"    negative crossing
//!          | "X["  int "," int "," int "," int "]"    sign inferred
//!          | ("[" | "{") int "," int "," int "," int ("]" | "}")   same as X[..]
//! ```
//!
//! In `X[a,b,c,d]` the labels are listed counterclockwise starting from the
//! incoming under-strand, so the under-strand runs `a -> c`. For `Xp` the
//! over-strand runs `d -> b`, for `Xm` it runs `b -> d`. For unsigned items
//! the over-strand direction is recovered from the other crossings; an
//! optional `PD[ ... ]` wrapper and `#` line comments are ignored.
//!
//! # Gauss grammar
//!
//! A single-component signed Gauss code such as `O1-O2-U1-U2-`: each token is
//! `O` or `U`, a crossing label and the crossing sign. Whitespace is ignored.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: Sign,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

impl Crossing {
    pub fn slots(&self) -> [usize; 4] {
        [self.under_in, self.under_out, self.over_in, self.over_out]
    }

    fn relabel(&self, map: impl Fn(usize) -> usize) -> Crossing {
        Crossing {
            sign: self.sign,
            under_in: map(self.under_in),
            under_out: map(self.under_out),
            over_in: map(self.over_in),
            over_out: map(self.over_out),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotRole {
    Incoming,
    Outgoing,
}

impl fmt::Display for SlotRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotRole::Incoming => write!(f, "incoming"),
            SlotRole::Outgoing => write!(f, "outgoing"),
        }
    }
}

/// A violated diagram invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LabelOutOfRange { label: usize, semiarc_count: usize },
    RepeatedSlot { label: usize, role: SlotRole, count: usize },
    MissingSlot { label: usize, role: SlotRole },
    NotPermutation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelOutOfRange { label, semiarc_count } => {
                write!(f, "semiarc label {label} out of range 0..{semiarc_count}")
            }
            Violation::RepeatedSlot { label, role, count } => {
                write!(f, "semiarc {label} occupies {count} {role} slots")
            }
            Violation::MissingSlot { label, role } => {
                write!(f, "semiarc {label} has no {role} slot")
            }
            Violation::NotPermutation => write!(f, "orientation successor not a permutation"),
        }
    }
}

/// Checks the slot invariants of a raw crossing list with `2 * crossings.len()`
/// semiarcs. An empty result means the crossings form a valid diagram.
pub fn validate(crossings: &[Crossing]) -> Vec<Violation> {
    let n = 2 * crossings.len();
    let mut report = Vec::new();
    let mut incoming = vec![0usize; n];
    let mut outgoing = vec![0usize; n];
    for c in crossings {
        for (label, role) in [
            (c.under_in, SlotRole::Incoming),
            (c.over_in, SlotRole::Incoming),
            (c.under_out, SlotRole::Outgoing),
            (c.over_out, SlotRole::Outgoing),
        ] {
            if label >= n {
                report.push(Violation::LabelOutOfRange { label, semiarc_count: n });
                continue;
            }
            match role {
                SlotRole::Incoming => incoming[label] += 1,
                SlotRole::Outgoing => outgoing[label] += 1,
            }
        }
    }
    let mut broken = !report.is_empty();
    for label in 0..n {
        for (role, count) in [(SlotRole::Incoming, incoming[label]), (SlotRole::Outgoing, outgoing[label])] {
            match count {
                1 => {}
                0 => {
                    broken = true;
                    report.push(Violation::MissingSlot { label, role });
                }
                count => {
                    broken = true;
                    report.push(Violation::RepeatedSlot { label, role, count });
                }
            }
        }
    }
    if broken {
        report.push(Violation::NotPermutation);
    }
    report
}

/// An oriented link diagram. Always valid once constructed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    semiarc_count: usize,
    component_count: usize,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::NoCrossings);
        }
        let report = validate(&crossings);
        if !report.is_empty() {
            return Err(Error::InvalidDiagram(report.iter().map(|v| v.to_string()).collect()));
        }
        let semiarc_count = 2 * crossings.len();
        let mut diagram = LinkDiagram { crossings, semiarc_count, component_count: 0 };
        diagram.component_count = diagram.components().len();
        Ok(diagram)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn semiarc_count(&self) -> usize {
        self.semiarc_count
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.crossings)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    /// The semiarc that follows `semiarc` along its strand.
    pub fn successor(&self) -> Vec<usize> {
        let mut next = vec![0; self.semiarc_count];
        for c in &self.crossings {
            next[c.under_in] = c.under_out;
            next[c.over_in] = c.over_out;
        }
        next
    }

    /// Components as cyclic sequences of semiarcs, ordered by smallest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let next = self.successor();
        let mut seen = vec![false; self.semiarc_count];
        let mut out = Vec::new();
        for start in 0..self.semiarc_count {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s);
                s = next[s];
            }
            out.push(cycle);
        }
        out
    }

    /// Relabels semiarcs to `0..n` in order of first appearance, scanning the
    /// crossings in order and each crossing's slots as
    /// under-in, under-out, over-in, over-out.
    pub fn canonical(&self) -> LinkDiagram {
        let mut map = vec![usize::MAX; self.semiarc_count];
        let mut next = 0;
        for c in &self.crossings {
            for s in c.slots() {
                if map[s] == usize::MAX {
                    map[s] = next;
                    next += 1;
                }
            }
        }
        let crossings = self.crossings.iter().map(|c| c.relabel(|s| map[s])).collect();
        LinkDiagram { crossings, ..self.clone() }
    }

    /// Mirror image: every crossing is switched, exchanging the over- and
    /// under-strands, which also flips its sign.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign.flip(),
                under_in: c.over_in,
                under_out: c.over_out,
                over_in: c.under_in,
                over_out: c.under_out,
            })
            .collect();
        LinkDiagram { crossings, ..self.clone() }
    }

    /// Reverses the orientation of the listed components (indices into
    /// [`LinkDiagram::components`]).
    pub fn reverse_components(&self, which: &[usize]) -> Result<LinkDiagram> {
        let comps = self.components();
        let mut flipped = vec![false; self.semiarc_count];
        for &k in which {
            let comp = comps
                .get(k)
                .ok_or_else(|| Error::Config(format!("component {k} out of range")))?;
            for &s in comp {
                flipped[s] = true;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let under = flipped[c.under_in];
                let over = flipped[c.over_in];
                let (under_in, under_out) =
                    if under { (c.under_out, c.under_in) } else { (c.under_in, c.under_out) };
                let (over_in, over_out) =
                    if over { (c.over_out, c.over_in) } else { (c.over_in, c.over_out) };
                let sign = if under != over { c.sign.flip() } else { c.sign };
                Crossing { sign, under_in, under_out, over_in, over_out }
            })
            .collect();
        LinkDiagram::new(crossings).map(|d| d.canonical())
    }

    /// Inserts a Reidemeister I kink on `semiarc`. With `over_first` the
    /// strand passes over the new crossing before it passes under it.
    pub fn with_kink(&self, semiarc: usize, sign: Sign, over_first: bool) -> Result<LinkDiagram> {
        if semiarc >= self.semiarc_count {
            return Err(Error::Config(format!("semiarc {semiarc} out of range")));
        }
        let n = self.semiarc_count;
        let (tail, loop_arc) = (n, n + 1);
        let mut crossings = self.redirect_incoming(semiarc, tail);
        let kink = if over_first {
            Crossing { sign, over_in: semiarc, over_out: loop_arc, under_in: loop_arc, under_out: tail }
        } else {
            Crossing { sign, under_in: semiarc, under_out: loop_arc, over_in: loop_arc, over_out: tail }
        };
        crossings.push(kink);
        LinkDiagram::new(crossings).map(|d| d.canonical())
    }

    /// Reidemeister II move pushing semiarc `over` across semiarc `under`.
    /// The first new crossing along `over` gets `first_sign`. With `parallel`
    /// both strands meet the new crossings in the same order; otherwise the
    /// under-strand meets them in reverse order. When the two semiarcs do not
    /// share a face the move is realized with virtual crossings.
    pub fn with_r2(&self, over: usize, under: usize, first_sign: Sign, parallel: bool) -> Result<LinkDiagram> {
        if over >= self.semiarc_count || under >= self.semiarc_count || over == under {
            return Err(Error::Config(format!("bad semiarc pair ({over}, {under})")));
        }
        let n = self.semiarc_count;
        let (o2, o3, u2, u3) = (n, n + 1, n + 2, n + 3);
        let mut crossings = self.redirect_incoming(over, o3);
        for c in crossings.iter_mut() {
            if c.under_in == under {
                c.under_in = u3;
            }
            if c.over_in == under {
                c.over_in = u3;
            }
        }
        let (first_under, second_under) = if parallel {
            ((under, u2), (u2, u3))
        } else {
            ((u2, u3), (under, u2))
        };
        crossings.push(Crossing {
            sign: first_sign,
            over_in: over,
            over_out: o2,
            under_in: first_under.0,
            under_out: first_under.1,
        });
        crossings.push(Crossing {
            sign: first_sign.flip(),
            over_in: o2,
            over_out: o3,
            under_in: second_under.0,
            under_out: second_under.1,
        });
        LinkDiagram::new(crossings).map(|d| d.canonical())
    }

    // Copies the crossings with the incoming end of `semiarc` renamed.
    fn redirect_incoming(&self, semiarc: usize, to: usize) -> Vec<Crossing> {
        self.crossings
            .iter()
            .map(|c| {
                let mut c = *c;
                if c.under_in == semiarc {
                    c.under_in = to;
                } else if c.over_in == semiarc {
                    c.over_in = to;
                }
                c
            })
            .collect()
    }

    /// PD text with explicit signs and 1-based labels; parses back to `self`.
    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|c| match c.sign {
                Sign::Positive => {
                    format!("Xp[{},{},{},{}]", c.under_in + 1, c.over_out + 1, c.under_out + 1, c.over_in + 1)
                }
                Sign::Negative => {
                    format!("Xm[{},{},{},{}]", c.under_in + 1, c.over_in + 1, c.under_out + 1, c.over_out + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PdKind {
    Positive,
    Negative,
    Unsigned,
}

fn parse_int_list(body: &str) -> Result<Vec<i64>> {
    body.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>().map_err(|_| Error::Parse(format!("bad label '{t}'")))
        })
        .collect()
}

fn scan_pd(text: &str) -> Result<Vec<(PdKind, [i64; 4])>> {
    let chars: Vec<char> = text.chars().collect();
    let mut items = Vec::new();
    let mut i = 0;
    let read_group = |start: usize, close: &[char]| -> Result<(String, usize)> {
        let mut j = start;
        while j < chars.len() && !close.contains(&chars[j]) {
            j += 1;
        }
        if j == chars.len() {
            return Err(Error::Parse("unterminated tuple".into()));
        }
        Ok((chars[start..j].iter().collect(), j + 1))
    };
    let to_tuple = |body: &str| -> Result<[i64; 4]> {
        let v = parse_int_list(body)?;
        <[i64; 4]>::try_from(v.as_slice())
            .map_err(|_| Error::Parse(format!("malformed tuple arity: expected 4 labels, got {}", v.len())))
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || matches!(c, ',' | ']' | '}' | ';') {
            i += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if chars[i..].starts_with(&['P', 'D', '[']) {
            i += 3;
        } else if c == 'X' {
            let (kind, open) = match chars.get(i + 1) {
                Some('p') => (PdKind::Positive, i + 2),
                Some('m') => (PdKind::Negative, i + 2),
                _ => (PdKind::Unsigned, i + 1),
            };
            if chars.get(open) != Some(&'[') {
                return Err(Error::Parse(format!("expected '[' at offset {open}")));
            }
            let (body, next) = read_group(open + 1, &[']'])?;
            items.push((kind, to_tuple(&body)?));
            i = next;
        } else if c == '[' || c == '{' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if matches!(chars.get(j), Some('[') | Some('{')) {
                i += 1;
                continue;
            }
            let (body, next) = read_group(i + 1, &[']', '}'])?;
            items.push((PdKind::Unsigned, to_tuple(&body)?));
            i = next;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(items)
}

/// Parses planar diagram notation (see the module docs for the grammar).
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let items = scan_pd(text)?;
    if items.is_empty() {
        return Err(Error::NoCrossings);
    }

    let mut index: HashMap<i64, usize> = HashMap::new();
    let mut occurrences: Vec<Vec<(usize, usize)>> = Vec::new();
    for (k, (_, tuple)) in items.iter().enumerate() {
        for (slot, raw) in tuple.iter().enumerate() {
            let next = index.len();
            let id = *index.entry(*raw).or_insert(next);
            if id == occurrences.len() {
                occurrences.push(Vec::new());
            }
            occurrences[id].push((k, slot));
        }
    }
    let mut raw_of = vec![0i64; index.len()];
    for (raw, id) in &index {
        raw_of[*id] = *raw;
    }
    for (id, occ) in occurrences.iter().enumerate() {
        if occ.len() != 2 {
            return Err(Error::Parse(format!("label {} appears {} times, expected 2", raw_of[id], occ.len())));
        }
    }

    // Slot roles: true = incoming. Slots 0 and 2 are the under-strand.
    let mut role: Vec<[Option<bool>; 4]> = items
        .iter()
        .map(|(kind, _)| match kind {
            PdKind::Positive => [Some(true), Some(false), Some(false), Some(true)],
            PdKind::Negative => [Some(true), Some(true), Some(false), Some(false)],
            PdKind::Unsigned => [Some(true), None, Some(false), None],
        })
        .collect();
    let partner = |k: usize, slot: usize, occurrences: &Vec<Vec<(usize, usize)>>| -> (usize, usize) {
        let id = index[&items[k].1[slot]];
        let occ = &occurrences[id];
        if occ[0] == (k, slot) { occ[1] } else { occ[0] }
    };
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for (k, roles) in role.iter().enumerate() {
        for (slot, r) in roles.iter().enumerate() {
            if r.is_some() {
                queue.push_back((k, slot));
            }
        }
    }
    loop {
        while let Some((k, slot)) = queue.pop_front() {
            let r = role[k][slot].expect("queued slots are assigned");
            let mut implied = vec![partner(k, slot, &occurrences)];
            if slot % 2 == 1 {
                implied.push((k, 4 - slot));
            }
            for (k2, s2) in implied {
                match role[k2][s2] {
                    None => {
                        role[k2][s2] = Some(!r);
                        queue.push_back((k2, s2));
                    }
                    Some(existing) if existing == r => {
                        return Err(Error::Parse(format!(
                            "inconsistent orientation at label {}",
                            items[k2].1[s2]
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        // Over-only loops carry no under-crossing to orient them; follow the
        // increasing-label convention of the standard tables.
        let free = (0..items.len()).find(|&k| role[k][1].is_none());
        match free {
            None => break,
            Some(k) => {
                let [_, b, _, d] = items[k].1;
                let d_in = b == d + 1 || d > b + 1;
                role[k][3] = Some(d_in);
                queue.push_back((k, 3));
            }
        }
    }

    let crossings = items
        .iter()
        .zip(&role)
        .map(|((_, t), r)| {
            let id = |slot: usize| index[&t[slot]];
            let d_in = r[3] == Some(true);
            Crossing {
                sign: if d_in { Sign::Positive } else { Sign::Negative },
                under_in: id(0),
                under_out: id(2),
                over_in: if d_in { id(3) } else { id(1) },
                over_out: if d_in { id(1) } else { id(3) },
            }
        })
        .collect();
    LinkDiagram::new(crossings).map(|d| d.canonical())
}

/// Parses a signed oriented Gauss code of a one-component diagram.
pub fn parse_gauss(text: &str) -> Result<LinkDiagram> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    if chars.is_empty() {
        return Err(Error::NoCrossings);
    }
    // (is_over, label, sign)
    let mut passages: Vec<(bool, String, Sign)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let is_over = match chars[i] {
            'O' | 'o' => true,
            'U' | 'u' => false,
            c => return Err(Error::Parse(format!("expected O or U, found '{c}'"))),
        };
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_alphanumeric() && !matches!(chars[i], 'O' | 'U' | 'o' | 'u') {
            i += 1;
        }
        let label: String = chars[start..i].iter().collect();
        if label.is_empty() {
            return Err(Error::Parse("missing crossing label".into()));
        }
        let sign = match chars.get(i) {
            Some('+') => Sign::Positive,
            Some('-') => Sign::Negative,
            _ => return Err(Error::Parse(format!("missing sign for crossing {label}"))),
        };
        i += 1;
        passages.push((is_over, label, sign));
    }

    let mut order: Vec<String> = Vec::new();
    let mut seen: HashMap<String, Vec<usize>> = HashMap::new();
    for (p, (_, label, _)) in passages.iter().enumerate() {
        let entry = seen.entry(label.clone()).or_default();
        if entry.is_empty() {
            order.push(label.clone());
        }
        entry.push(p);
    }
    let len = passages.len();
    let mut crossings = Vec::with_capacity(order.len());
    for label in &order {
        let at = &seen[label];
        if at.len() != 2 {
            return Err(Error::Parse(format!("crossing {label} appears {} times, expected 2", at.len())));
        }
        let (a, b) = (&passages[at[0]], &passages[at[1]]);
        if a.0 == b.0 {
            return Err(Error::Parse(format!("crossing {label} has inconsistent over/under flags")));
        }
        if a.2 != b.2 {
            return Err(Error::Parse(format!("crossing {label} has inconsistent signs")));
        }
        let (over_at, under_at) = if a.0 { (at[0], at[1]) } else { (at[1], at[0]) };
        // semiarc p runs from passage p to passage p + 1
        crossings.push(Crossing {
            sign: a.2,
            under_in: (under_at + len - 1) % len,
            under_out: under_at,
            over_in: (over_at + len - 1) % len,
            over_out: over_at,
        });
    }
    LinkDiagram::new(crossings).map(|d| d.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    const HOPF: &str = "{{4, 1, 3, 2}, {2, 3, 1, 4}}";

    #[test]
    fn hopf_link_has_two_components() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.semiarc_count(), 4);
        assert_eq!(d.component_count(), 2);
        // both components pass over once and under once
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Negative));
    }

    #[test]
    fn trefoil_has_uniform_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.component_count(), 1);
        let s = d.crossings()[0].sign;
        assert!(d.crossings().iter().all(|c| c.sign == s));
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(parse_pd(""), Err(Error::NoCrossings)));
        assert!(matches!(parse_pd("PD[]"), Err(Error::NoCrossings)));
        assert!(matches!(parse_gauss("  "), Err(Error::NoCrossings)));
    }

    #[test]
    fn pd_errors() {
        let err = parse_pd("X[1,2,3] X[3,1,2,4]").unwrap_err();
        assert!(err.to_string().contains("arity"), "{err}");
        let err = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,7]").unwrap_err();
        assert!(err.to_string().contains("appears 1 times"), "{err}");
        // both under-strands start at label 1
        let err = parse_pd("Xp[1,2,3,4] Xp[1,4,3,2]").unwrap_err();
        assert!(err.to_string().contains("orientation"), "{err}");
    }

    #[test]
    fn signed_and_unsigned_pd_agree() {
        let d = parse_pd(TREFOIL).unwrap();
        let again = parse_pd(&d.to_pd()).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn gauss_virtual_trefoil() {
        let d = parse_gauss("O1-O2-U1-U2-").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.semiarc_count(), 4);
        assert_eq!(d.component_count(), 1);
        assert!(d.validate().is_empty());
    }

    #[test]
    fn gauss_errors() {
        assert!(parse_gauss("O1-O2-U1-").unwrap_err().to_string().contains("appears 1 times"));
        assert!(parse_gauss("O1-O1-U2-U2-").unwrap_err().to_string().contains("over/under"));
        assert!(parse_gauss("O1O2-U1-U2-").unwrap_err().to_string().contains("missing sign"));
        assert!(parse_gauss("O1+U1-").unwrap_err().to_string().contains("signs"));
    }

    #[test]
    fn gauss_and_pd_trefoils_have_same_shape() {
        let g = parse_gauss("O1-U2-O3-U1-O2-U3-").unwrap();
        let p = parse_pd(TREFOIL).unwrap();
        assert_eq!(g.crossing_count(), p.crossing_count());
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.writhe().abs(), 3);
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!(m.writhe(), -d.writhe());
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn validate_reports() {
        let d = parse_pd(TREFOIL).unwrap();
        assert!(d.validate().is_empty());

        let mut bad = d.crossings().to_vec();
        let dup = bad[0].under_out;
        bad[1].over_out = dup;
        let report = validate(&bad);
        let repeated: Vec<_> = report
            .iter()
            .filter(|v| matches!(v, Violation::RepeatedSlot { .. }))
            .collect();
        assert_eq!(repeated.len(), 1);
        assert_eq!(
            *repeated[0],
            Violation::RepeatedSlot { label: dup, role: SlotRole::Outgoing, count: 2 }
        );

        let mut broken = d.crossings().to_vec();
        let c0 = &mut broken[0];
        std::mem::swap(&mut c0.under_in, &mut c0.under_out);
        let report = validate(&broken);
        assert!(report.iter().any(|v| v.to_string() == "orientation successor not a permutation"));
    }

    #[test]
    fn kink_and_r2_stay_valid() {
        let d = parse_pd(HOPF).unwrap();
        for s in 0..d.semiarc_count() {
            for sign in [Sign::Positive, Sign::Negative] {
                for over_first in [true, false] {
                    let k = d.with_kink(s, sign, over_first).unwrap();
                    assert_eq!(k.crossing_count(), 3);
                    assert_eq!(k.component_count(), 2);
                }
            }
        }
        let r = d.with_r2(0, 1, Sign::Positive, true).unwrap();
        assert_eq!(r.crossing_count(), 4);
        assert_eq!(r.component_count(), 2);
        assert_eq!(r.writhe(), d.writhe());
    }

    #[test]
    fn reversing_one_hopf_component_flips_signs() {
        let d = parse_pd(HOPF).unwrap();
        let r = d.reverse_components(&[0]).unwrap();
        assert_eq!(r.writhe(), -d.writhe());
        let both = d.reverse_components(&[0, 1]).unwrap();
        assert_eq!(both.writhe(), d.writhe());
    }
}
