//! Freely reduced words over a symmetric alphabet and the geometry of their
//! action on the Cayley tree, computed lazily through word algebra: distances,
//! displacements, axes and pairwise axis geometry never materialize the tree.
//!
//! Text format: lowercase letters are generators, uppercase their inverses.

use crate::error::{Error, Result};
use crate::length::Length;
use crate::space::FiniteLengthSpace;

/// Letter encoding: generator i ∈ 1..=26 is +i, its inverse is −i.
type Letter = i8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if let Some(&last) = out.last() {
        if last == -l {
            out.pop();
            return;
        }
    }
    out.push(l);
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let l: Letter = match ch {
                'a'..='z' => (ch as u8 - b'a' + 1) as i8,
                'A'..='Z' => -(((ch as u8 - b'A') + 1) as i8),
                _ => return Err(Error::LetterOutsideAlphabet(ch)),
            };
            push_reduced(&mut letters, l);
        }
        Ok(Word { letters })
    }

    pub fn from_letters(raw: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(raw.len());
        for &l in raw {
            debug_assert!(l != 0 && l.abs() <= 26);
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> u8 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &rhs.letters {
            push_reduced(&mut letters, l);
        }
        Word { letters }
    }

    pub fn pow(&self, n: u32) -> Word {
        let mut acc = Word::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    /// Split w = c · ĉw · c⁻¹ with ĉw cyclically reduced.
    /// Returns (core, conjugator).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == -self.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        (
            Word { letters: self.letters[lo..hi].to_vec() },
            Word { letters: self.letters[..lo].to_vec() },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => a != -b,
            _ => true,
        }
    }

    /// The unique shortest u with this word conjugate to a power of u,
    /// returned as an actual group element (conjugated back, so that
    /// w = root^k literally when w is a proper power).
    pub fn primitive_root(&self) -> Word {
        let (core, conj) = self.cyclic_reduce();
        if core.is_empty() {
            return Word::identity();
        }
        let n = core.len();
        for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            if (0..n).all(|i| core.letters[i] == core.letters[i % p]) {
                let root = Word { letters: core.letters[..p].to_vec() };
                return conj.mul(&root).mul(&conj.inverse());
            }
        }
        unreachable!("period n always matches");
    }

    pub fn is_proper_power(&self) -> bool {
        let (core, _) = self.cyclic_reduce();
        let root = self.primitive_root();
        let (root_core, _) = root.cyclic_reduce();
        !core.is_empty() && root_core.len() < core.len()
    }

    /// Cyclic shift by j of a cyclically reduced word.
    pub fn rotate(&self, j: usize) -> Word {
        debug_assert!(self.is_cyclically_reduced());
        if self.is_empty() {
            return self.clone();
        }
        let n = self.letters.len();
        let j = j % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[j..]);
        letters.extend_from_slice(&self.letters[..j]);
        Word { letters }
    }

    /// Prefix of w^∞ of the given length (w cyclically reduced, nonempty).
    pub fn periodic_prefix(&self, len: usize) -> Word {
        debug_assert!(!self.is_empty());
        let mut letters = Vec::with_capacity(len);
        for i in 0..len {
            letters.push(self.letters[i % self.letters.len()]);
        }
        Word { letters }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &l in &self.letters {
            let ch = if l > 0 {
                (b'a' + l as u8 - 1) as char
            } else {
                (b'A' + (-l) as u8 - 1) as char
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// Longest common prefix length of u^∞ and w^∞ (u, w cyclically reduced and
/// nonempty), capped at |u| + |w|. Hitting the cap means the two periodic
/// words agree forever (Fine and Wilf), i.e. the rays coincide.
pub fn lcp_periodic(u: &Word, w: &Word) -> usize {
    let cap = u.len() + w.len();
    for i in 0..cap {
        if u.letters[i % u.len()] != w.letters[i % w.len()] {
            return i;
        }
    }
    cap
}

/// Geometry of the action of one word on the Cayley tree: everything is in
/// edge units; multiply by the edge weight for rescaled models.
pub mod tree {
    use super::*;

    /// d(u, v) = |u⁻¹ v| in edge units.
    pub fn dist(u: &Word, v: &Word) -> usize {
        u.inverse().mul(v).len()
    }

    /// d(w·x, x) = |x⁻¹ w x| in edge units.
    pub fn displacement(w: &Word, x: &Word) -> usize {
        w.conjugate_by(&x.inverse()).len()
    }

    /// ℓ(w) = cyclically reduced length.
    pub fn translation_length(w: &Word) -> usize {
        w.cyclic_reduce().0.len()
    }

    /// Exact on trees: d(w·x, x) = ℓ(w) + 2·d(x, axis(w)).
    pub fn dist_to_axis(w: &Word, x: &Word) -> usize {
        let disp = displacement(w, x);
        let ell = translation_length(w);
        debug_assert!(disp >= ell && (disp - ell) % 2 == 0);
        (disp - ell) / 2
    }

    /// The vertex of the axis of w at signed position t. Position 0 is the
    /// conjugator's endpoint; positive t walks toward w^{+∞}.
    pub fn axis_point(w: &Word, t: i64) -> Word {
        let (core, conj) = w.cyclic_reduce();
        assert!(!core.is_empty(), "elliptic words have no axis");
        let seg = if t >= 0 {
            core.periodic_prefix(t as usize)
        } else {
            core.inverse().periodic_prefix((-t) as usize)
        };
        conj.mul(&seg)
    }

    /// Relation between the axes of two hyperbolic words:
    /// either they share a segment (gap = 0, overlap = its edge length) or
    /// they are disjoint with a unique bridge of positive length.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub struct LinePair {
        pub gap: usize,
        pub overlap: usize,
        /// Axis-of-w1 positions spanning the overlap (gap = 0) or the
        /// bridge foot (gap > 0).
        pub span: (i64, i64),
    }

    /// Walks the convex function t ↦ d(axis₁(t), axis₂) to its minimum.
    /// Returns None when the axes coincide (commensurable words).
    pub fn line_pair(w1: &Word, w2: &Word) -> Option<LinePair> {
        let r1 = w1.primitive_root();
        let r2 = w2.primitive_root();
        if r1 == r2 || r1 == r2.inverse() {
            return None;
        }
        let h = |t: i64| dist_to_axis(w2, &axis_point(w1, t));
        let period = translation_length(w1) as i64;
        let cap = 4 * (w1.len() + w2.len()) as i64 + 8;
        // descend from 0 in the decreasing direction
        let mut t = 0i64;
        let mut cur = h(0);
        loop {
            let left = h(t - 1);
            let right = h(t + 1);
            if left < cur {
                t -= 1;
                cur = left;
            } else if right < cur {
                t += 1;
                cur = right;
            } else {
                break;
            }
            assert!(t.abs() < cap + period, "axis descent failed to terminate");
        }
        if cur > 0 {
            return Some(LinePair { gap: cur, overlap: 0, span: (t, t) });
        }
        // expand the zero plateau in both directions
        let mut lo = t;
        let mut hi = t;
        while h(lo - 1) == 0 {
            lo -= 1;
            assert!(lo > -cap, "overlap expansion failed to terminate (same axis?)");
        }
        while h(hi + 1) == 0 {
            hi += 1;
            assert!(hi < cap, "overlap expansion failed to terminate (same axis?)");
        }
        Some(LinePair { gap: 0, overlap: (hi - lo) as usize, span: (lo, hi) })
    }

    /// Exact diameter of axis₁^{+a} ∩ axis₂^{+b} in a tree, in edge units.
    /// `None` means empty, `Some(None)` would be nonsensical; infinite
    /// overlap (same axis) must be handled by the caller via `line_pair`.
    pub fn thickened_axes_diam(pair: &LinePair, a: f64, b: f64) -> Option<f64> {
        if pair.gap == 0 {
            Some(pair.overlap as f64 + 2.0 * a.max(b))
        } else {
            let g = pair.gap as f64;
            if g > a + b {
                return None;
            }
            let mut d: f64 = a + b - g;
            if a >= g {
                d = d.max(2.0 * (a - g));
            }
            if b >= g {
                d = d.max(2.0 * (b - g));
            }
            Some(d)
        }
    }
}

/// Materialized ball of the Cayley tree of the free group of the given rank:
/// all reduced words of length ≤ radius, with one edge per generator
/// application. Exact when the edge weight is.
pub fn cayley_ball(rank: u8, radius: usize, edge: Length) -> Result<FiniteLengthSpace> {
    if rank == 0 || rank > 26 {
        return Err(Error::EmptyAlphabet);
    }
    let mut words: Vec<Word> = vec![Word::identity()];
    let mut frontier: Vec<Word> = vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=(rank as i8) {
                for l in [g, -g] {
                    if w.letters().last() != Some(&-l) {
                        let mut ext = w.letters().to_vec();
                        ext.push(l);
                        next.push(Word { letters: ext });
                    }
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let ids: Vec<String> = words.iter().map(word_vertex_id).collect();
    let mut edges = Vec::new();
    for w in &words {
        if !w.is_empty() {
            let parent = Word { letters: w.letters()[..w.len() - 1].to_vec() };
            edges.push((word_vertex_id(&parent), word_vertex_id(w), edge));
        }
    }
    FiniteLengthSpace::new(ids, edges)
}

/// Vertex id of a word in a materialized ball ("1" for the identity).
pub fn word_vertex_id(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}
