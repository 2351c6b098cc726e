//! Colorings of diagrams by biquandles and the 2-chains they determine.
//!
//! At each crossing two of the four semiarcs lie on the same side of the
//! crossing, one on each strand. Call their colors `x` (under-strand) and
//! `y` (over-strand). The semiarcs on the other side are then colored
//! `x ⊴ y` (under-strand) and `y ⊳̄ x` (over-strand). For a quandle this is
//! the usual rule: the over-strand keeps its color and the under-strand
//! color is acted on by it. The crossing contributes `±(x, y)` to the
//! 2-chain.

use serde::Serialize;

use crate::algebra::{Biquandle, EndoMap};
use crate::cohomology::{pair_count, pair_index};
use crate::diagram::{Crossing, LinkDiagram, Sign};

/// Which side of a crossing carries the generating pair, and the sign the
/// pair is recorded with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadingConvention {
    /// At a positive crossing the generating pair is (under-in, over-out);
    /// otherwise it is (under-out, over-in). Negative crossings use the
    /// other choice.
    pub positive_reads_under_in: bool,
    /// Whether a crossing contributes its pair with coefficient equal to its
    /// sign (`true`) or the opposite sign.
    pub weight_is_sign: bool,
}

impl ReadingConvention {
    pub const STANDARD: ReadingConvention =
        ReadingConvention { positive_reads_under_in: false, weight_is_sign: false };

    // (x slot, y slot, x ⊴ y slot, y ⊳̄ x slot)
    fn slots(&self, c: &Crossing) -> [usize; 4] {
        let reads_under_in = (c.sign == Sign::Positive) == self.positive_reads_under_in;
        if reads_under_in {
            [c.under_in, c.over_out, c.under_out, c.over_in]
        } else {
            [c.under_out, c.over_in, c.under_in, c.over_out]
        }
    }

    fn weight(&self, c: &Crossing) -> i64 {
        if self.weight_is_sign { c.sign.as_i64() } else { -c.sign.as_i64() }
    }
}

impl Default for ReadingConvention {
    fn default() -> Self {
        ReadingConvention::STANDARD
    }
}

/// Colors of the semiarcs, indexed by semiarc label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.colors.iter().map(|c| c + 1).collect()
    }

    pub fn is_valid(&self, d: &LinkDiagram, x: &Biquandle) -> bool {
        is_coloring_with(&self.colors, d, x, ReadingConvention::STANDARD)
    }
}

/// Integer coordinates over the basis of non-degenerate pairs `(a, b)`,
/// `a ≠ b`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainVector {
    coords: Vec<i64>,
}

impl ChainVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ChainVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        ChainVector { coords: vec![0; pair_count(n)] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The chain `Σ α (σ(a), σ(b))` for `self = Σ α (a, b)`; pairs collapsing
    /// onto the diagonal are dropped.
    pub fn push_forward(&self, sigma: &EndoMap) -> ChainVector {
        let n = sigma.images().len();
        let mut out = vec![0; pair_count(n)];
        for (k, (a, b)) in crate::cohomology::pair_basis(n).into_iter().enumerate() {
            if self.coords[k] != 0 {
                if let Some(j) = pair_index(n, sigma.apply(a), sigma.apply(b)) {
                    out[j] += self.coords[k];
                }
            }
        }
        ChainVector { coords: out }
    }
}

fn is_coloring_with(colors: &[usize], d: &LinkDiagram, x: &Biquandle, conv: ReadingConvention) -> bool {
    colors.len() == d.semiarc_count()
        && colors.iter().all(|&c| c < x.order())
        && d.crossings().iter().all(|c| {
            let [sx, sy, su, so] = conv.slots(c);
            let (a, b) = (colors[sx], colors[sy]);
            colors[su] == x.under(a, b) && colors[so] == x.over(b, a)
        })
}

/// All colorings of `d` by `x`, sorted lexicographically.
pub fn colorings(d: &LinkDiagram, x: &Biquandle) -> Vec<Coloring> {
    colorings_with(d, x, ReadingConvention::STANDARD)
}

pub fn colorings_with(d: &LinkDiagram, x: &Biquandle, conv: ReadingConvention) -> Vec<Coloring> {
    let n = x.order();
    // inverse of (a, b) -> (a ⊴ b, b ⊳̄ a)
    let mut inverse = vec![usize::MAX; n * n];
    for a in 0..n {
        for b in 0..n {
            inverse[x.under(a, b) * n + x.over(b, a)] = a * n + b;
        }
    }
    let rules: Vec<[usize; 4]> = d.crossings().iter().map(|c| conv.slots(c)).collect();
    let mut touching = vec![Vec::new(); d.semiarc_count()];
    for (k, r) in rules.iter().enumerate() {
        for &s in r {
            touching[s].push(k);
        }
    }
    let search = Search { x, inverse, rules, touching };
    let mut out = Vec::new();
    search.extend(&vec![None; d.semiarc_count()], &mut out);
    out.sort();
    out
}

struct Search<'a> {
    x: &'a Biquandle,
    inverse: Vec<usize>,
    rules: Vec<[usize; 4]>,
    touching: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&self, colors: &[Option<usize>], out: &mut Vec<Coloring>) {
        let Some(next) = colors.iter().position(Option::is_none) else {
            out.push(Coloring { colors: colors.iter().map(|c| c.expect("complete")).collect() });
            return;
        };
        for v in 0..self.x.order() {
            let mut trial = colors.to_vec();
            if self.assign(&mut trial, next, v) {
                self.extend(&trial, out);
            }
        }
    }

    fn assign(&self, colors: &mut [Option<usize>], semiarc: usize, value: usize) -> bool {
        let mut queue = vec![(semiarc, value)];
        while let Some((s, v)) = queue.pop() {
            match colors[s] {
                Some(old) if old != v => return false,
                Some(_) => continue,
                None => colors[s] = Some(v),
            }
            for &k in &self.touching[s] {
                let [sx, sy, su, so] = self.rules[k];
                let n = self.x.order();
                match (colors[sx], colors[sy], colors[su], colors[so]) {
                    (Some(a), Some(b), _, _) => {
                        queue.push((su, self.x.under(a, b)));
                        queue.push((so, self.x.over(b, a)));
                    }
                    (_, _, Some(u), Some(o)) => {
                        let ab = self.inverse[u * n + o];
                        queue.push((sx, ab / n));
                        queue.push((sy, ab % n));
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

pub fn counting_invariant(d: &LinkDiagram, x: &Biquandle) -> usize {
    colorings(d, x).len()
}

/// The 2-chain of a coloring: each crossing contributes its signed pair,
/// degenerate pairs are dropped.
pub fn chain_vector(c: &Coloring, d: &LinkDiagram, x: &Biquandle) -> ChainVector {
    chain_vector_with(c, d, x, ReadingConvention::STANDARD)
}

pub fn chain_vector_with(c: &Coloring, d: &LinkDiagram, x: &Biquandle, conv: ReadingConvention) -> ChainVector {
    let n = x.order();
    let mut coords = vec![0; pair_count(n)];
    for cr in d.crossings() {
        let [sx, sy, _, _] = conv.slots(cr);
        if let Some(k) = pair_index(n, c.colors[sx], c.colors[sy]) {
            coords[k] += conv.weight(cr);
        }
    }
    ChainVector { coords }
}

/// Applies `sigma` to every color.
pub fn push_forward(c: &Coloring, sigma: &EndoMap) -> Coloring {
    Coloring { colors: c.colors.iter().map(|&v| sigma.apply(v)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{constant_action_biquandle_z2, core_cyclic, endomorphisms, trivial};
    use crate::diagram::{parse_gauss, parse_pd};

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    const L4A1: &str = "{6,1,7,2},{8,3,5,4},{2,5,3,6},{4,7,1,8}";

    // counts by brute force over all assignments
    fn brute_count(d: &LinkDiagram, x: &Biquandle) -> usize {
        let n = x.order();
        let m = d.semiarc_count();
        (0..n.pow(m as u32))
            .filter(|&k| {
                let colors: Vec<usize> = (0..m).map(|i| (k / n.pow(i as u32)) % n).collect();
                is_coloring_with(&colors, d, x, ReadingConvention::STANDARD)
            })
            .count()
    }

    #[test]
    fn trefoil_core3_has_nine_colorings() {
        let d = parse_pd(TREFOIL).unwrap();
        let q = core_cyclic(3).unwrap();
        assert_eq!(counting_invariant(&d, q.as_biquandle()), 9);
        assert_eq!(brute_count(&d, q.as_biquandle()), 9);
    }

    #[test]
    fn l4a1_core4_has_sixteen_colorings() {
        let d = parse_pd(L4A1).unwrap();
        let q = core_cyclic(4).unwrap();
        let cs = colorings(&d, q.as_biquandle());
        assert_eq!(cs.len(), 16);
        assert!(cs.windows(2).all(|w| w[0] < w[1]));
        assert!(cs.iter().all(|c| c.is_valid(&d, q.as_biquandle())));
    }

    #[test]
    fn trivial_quandles_give_constant_colorings() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(counting_invariant(&d, trivial(1).unwrap().as_biquandle()), 1);
        assert_eq!(counting_invariant(&d, trivial(4).unwrap().as_biquandle()), 4);
    }

    #[test]
    fn virtual_two_one_has_two_z2_colorings() {
        let d = parse_gauss("O1-O2-U1-U2-").unwrap();
        let b = constant_action_biquandle_z2();
        assert_eq!(counting_invariant(&d, &b), 2);
        assert_eq!(brute_count(&d, &b), 2);
    }

    #[test]
    fn monochromatic_colorings_have_zero_chains() {
        let d = parse_pd(L4A1).unwrap();
        let q = core_cyclic(4).unwrap();
        for c in colorings(&d, q.as_biquandle()) {
            if c.colors().iter().all(|&v| v == c.colors()[0]) {
                assert!(chain_vector(&c, &d, q.as_biquandle()).is_zero());
            }
        }
    }

    #[test]
    fn push_forward_commutes_with_chains() {
        let d = parse_pd(L4A1).unwrap();
        let q = core_cyclic(4).unwrap();
        let x = q.as_biquandle();
        for sigma in endomorphisms(x) {
            for c in colorings(&d, x) {
                let image = push_forward(&c, &sigma);
                assert!(image.is_valid(&d, x));
                assert_eq!(chain_vector(&image, &d, x), chain_vector(&c, &d, x).push_forward(&sigma));
            }
        }
    }

    #[test]
    fn chain_weight_bounded_by_crossings() {
        let d = parse_pd(TREFOIL).unwrap();
        let q = core_cyclic(3).unwrap();
        for c in colorings(&d, q.as_biquandle()) {
            let v = chain_vector(&c, &d, q.as_biquandle());
            assert!(v.coords().iter().map(|a| a.abs()).sum::<i64>() <= 3);
        }
    }
}
