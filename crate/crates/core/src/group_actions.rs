//! Isometries of finite models and words acting on Cayley trees:
//! translation lengths, axes, cylinders, characteristic sets of finite
//! subgroups, the overlap invariant A and the injectivity radius.
//!
//! Finite models carry no genuinely hyperbolic isometries (every permutation
//! is elliptic, so the true stable length is 0). The word/tree route is the
//! exact one; model-side stable lengths are budgeted estimates.

use serde::Serialize;

use crate::convexity::Diameter;
use crate::error::{Error, Result};
use crate::length::{Dist, Length};
use crate::space::{FiniteLengthSpace, SubsetHandle};
use crate::words::{lcp_periodic, tree, Word};

/// A distance-preserving vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteIsometry {
    perm: Vec<usize>,
}

impl FiniteIsometry {
    pub fn new(space: &FiniteLengthSpace, perm: Vec<usize>) -> Result<Self> {
        crate::cone::validate_base_isometry(space, &perm)?;
        Ok(FiniteIsometry { perm })
    }

    pub fn identity(space: &FiniteLengthSpace) -> Self {
        FiniteIsometry { perm: (0..space.len()).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn compose(&self, other: &FiniteIsometry) -> FiniteIsometry {
        FiniteIsometry { perm: (0..self.perm.len()).map(|i| self.perm[other.perm[i]]).collect() }
    }

    pub fn power(&self, n: usize) -> FiniteIsometry {
        let mut acc = FiniteIsometry { perm: (0..self.perm.len()).collect() };
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut order: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.perm[v];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

/// ℓ(g) = min over vertices of d(gx, x).
pub fn translation_length_model(space: &FiniteLengthSpace, g: &FiniteIsometry) -> Length {
    (0..space.len())
        .map(|x| space.dist(g.apply(x), x))
        .reduce(|a, b| a.min(b))
        .expect("nonempty space")
}

/// ℓ(w) on the Cayley tree: the cyclically reduced length (exact).
pub fn translation_length_word(w: &Word, edge_weight: Length) -> Length {
    edge_weight.scale_int(tree::translation_length(w) as i64)
}

#[derive(Clone, Debug, Serialize)]
pub struct StableLengthReport {
    /// ℓ(g^budget)/budget.
    pub estimate: Length,
    /// The true limit when it is known exactly. Finite-order permutations
    /// always have stable length 0.
    pub exact: Option<Length>,
    pub permutation_order: u64,
    /// Whether ℓ(g^m)/m was non-increasing along doubling budgets.
    pub monotone: bool,
    pub budget: usize,
}

pub fn stable_length_model(
    space: &FiniteLengthSpace,
    g: &FiniteIsometry,
    budget: usize,
) -> StableLengthReport {
    let budget = budget.max(1);
    let mut prev: Option<f64> = None;
    let mut monotone = true;
    let mut m = 1usize;
    while m < budget {
        let v = translation_length_model(space, &g.power(m)).to_f64() / m as f64;
        if let Some(p) = prev {
            if v > p + 1e-9 {
                monotone = false;
            }
        }
        prev = Some(v);
        m *= 2;
    }
    let est = translation_length_model(space, &g.power(budget));
    let estimate = est * Length::from_ratio(1, budget as i128);
    let order = g.order();
    StableLengthReport {
        estimate,
        exact: Some(est.zero_like()),
        permutation_order: order,
        monotone,
        budget,
    }
}

/// Stable length of a word: exact, equal to the cyclically reduced length.
pub fn stable_length_word(w: &Word, edge_weight: Length) -> Length {
    translation_length_word(w, edge_weight)
}

/// A_g = {x : d(gx, x) ≤ max(ℓ(g), 8δ)}.
pub fn axis_model(
    space: &FiniteLengthSpace,
    g: &FiniteIsometry,
    delta: Length,
) -> SubsetHandle {
    let bound = translation_length_model(space, g).max(delta.scale_int(8));
    let verts: Vec<usize> = (0..space.len())
        .filter(|&x| space.dist(g.apply(x), x).le_tol(&bound))
        .collect();
    SubsetHandle::new(space, verts).expect("axes of finite models are nonempty")
}

/// Axis of a word inside a materialized Cayley ball, via the exact tree
/// formula d(gx, x) = ℓ(g) + 2 d(x, axis).
pub fn axis_on_ball(
    ball: &FiniteLengthSpace,
    w: &Word,
    delta: Length,
    edge_weight: Length,
) -> Result<SubsetHandle> {
    let ell = translation_length_word(w, edge_weight);
    let bound = ell.max(delta.scale_int(8));
    let verts: Vec<usize> = (0..ball.len())
        .filter(|&i| {
            let x = ball_word(ball, i);
            let disp = edge_weight.scale_int(tree::displacement(w, &x) as i64);
            disp.le_tol(&bound)
        })
        .collect();
    SubsetHandle::new(ball, verts).map_err(|_| Error::UnknownPoint("empty axis window".into()))
}

fn ball_word(ball: &FiniteLengthSpace, i: usize) -> Word {
    let id = ball.id(i);
    if id == "1" {
        Word::identity()
    } else {
        Word::parse(id).expect("ball vertex ids are words")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderReport {
    pub vertices: Vec<usize>,
    /// Distance from the surrogate line's extremes to the window boundary;
    /// small values mean the window may truncate the ideal object.
    pub boundary_margin: Option<Length>,
}

/// Cylinder on a materialized Cayley ball: the 10δ-neighborhood of the axis
/// line (the bi-infinite geodesic of the tree). Errors on elliptic words.
pub fn cylinder_on_ball(
    ball: &FiniteLengthSpace,
    w: &Word,
    delta: Length,
    edge_weight: Length,
) -> Result<CylinderReport> {
    let core = tree::translation_length(w);
    if core == 0 {
        return Err(Error::NotHyperbolic);
    }
    let ell = translation_length_word(w, edge_weight);
    let bound = delta.scale_int(10);
    let mut verts = Vec::new();
    let mut max_line_reach = Length::from_int(0);
    for i in 0..ball.len() {
        let x = ball_word(ball, i);
        let disp = edge_weight.scale_int(tree::displacement(w, &x) as i64);
        let to_axis = (disp - ell).half();
        if to_axis.le_tol(&bound) {
            verts.push(i);
        }
        if to_axis.eq_tol(&to_axis.zero_like()) {
            max_line_reach = max_line_reach.max(edge_weight.scale_int(x.len() as i64));
        }
    }
    let radius = ball
        .ids()
        .iter()
        .map(|id| if id == "1" { 0 } else { id.len() })
        .max()
        .unwrap_or(0);
    let boundary_margin = Some(edge_weight.scale_int(radius as i64) - max_line_reach);
    Ok(CylinderReport { vertices: verts, boundary_margin })
}

/// Cylinder surrogate on a general finite model: the 10δ-neighborhood of a
/// closed orbit line through a minimal-displacement vertex. Errors when the
/// isometry has a fixed vertex (no sensible line).
pub fn cylinder_model(
    space: &FiniteLengthSpace,
    g: &FiniteIsometry,
    delta: Length,
) -> Result<SubsetHandle> {
    let ell = translation_length_model(space, g);
    if ell.eq_tol(&ell.zero_like()) {
        return Err(Error::NotHyperbolic);
    }
    let m = (0..space.len())
        .min_by(|&a, &b| {
            space
                .dist(g.apply(a), a)
                .partial_cmp(&space.dist(g.apply(b), b))
                .unwrap()
                .then(a.cmp(&b))
        })
        .expect("nonempty");
    // closed orbit of m under g, joined by geodesic intervals
    let mut line = Vec::new();
    let mut v = m;
    loop {
        let next = g.apply(v);
        line.extend(space.interval(v, next));
        v = next;
        if v == m {
            break;
        }
    }
    let handle = SubsetHandle::new(space, line)?;
    let thick = space.neighborhood_of(handle.indices(), delta.scale_int(10));
    SubsetHandle::new(space, thick)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicSetReport {
    pub vertices: Vec<usize>,
    /// Worst slack of the near-midpoint construction: the least s such that
    /// every point has a near-midpoint (within ⌈d/2⌉ + s of both ends)
    /// lying in the s-neighborhood of the set.
    pub worst_midpoint_slack: Length,
}

/// C_F = {x : d(gx, x) ≤ 10δ for every g in F}, plus the near-midpoint
/// diagnostic: exact midpoints need not exist on graphs, so the slack
/// reports how far the discrete model is from the continuum construction.
pub fn characteristic_set(
    space: &FiniteLengthSpace,
    subgroup: &[FiniteIsometry],
    delta: Length,
) -> CharacteristicSetReport {
    let bound = delta.scale_int(10);
    let verts: Vec<usize> = (0..space.len())
        .filter(|&x| {
            subgroup
                .iter()
                .all(|g| space.dist(g.apply(x), x).le_tol(&bound))
        })
        .collect();
    let mut worst = delta.zero_like();
    for x in 0..space.len() {
        let g = subgroup
            .iter()
            .max_by(|a, b| {
                space
                    .dist(a.apply(x), x)
                    .partial_cmp(&space.dist(b.apply(x), x))
                    .unwrap()
            });
        let g = match g {
            Some(g) => g,
            None => continue,
        };
        let gx = g.apply(x);
        let half = (space.dist(x, gx).half()).ceil();
        // least slack over candidate near-midpoints
        let mut best: Option<Length> = None;
        for m in 0..space.len() {
            let reach = space.dist(x, m).max(space.dist(gx, m)) - half;
            let reach = reach.floor_zero();
            let landing = if verts.is_empty() {
                continue;
            } else {
                space.d_point_subset(m, &verts)
            };
            let s = reach.max(landing);
            best = Some(match best {
                None => s,
                Some(b) => b.min(s),
            });
        }
        if let Some(b) = best {
            worst = worst.max(b);
        }
    }
    CharacteristicSetReport { vertices: verts, worst_midpoint_slack: worst }
}

/// g and h lie in a common cyclic subgroup of the free group iff their
/// primitive roots agree up to inversion. Trivial words are elementary with
/// everything.
pub fn elementary_test_free(g: &Word, h: &Word) -> bool {
    if g.is_empty() || h.is_empty() {
        return true;
    }
    let rg = g.primitive_root();
    let rh = h.primitive_root();
    rg == rh || rg == rh.inverse()
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantAReport {
    pub value: Length,
    pub admissible_pairs: usize,
    /// True when the pair set was empty and the value is the 0 convention.
    pub empty_pair_set: bool,
}

/// A(G, X) on a finite model: sup over pairs of supplied isometries with
/// ℓ ≤ 1000δ generating a non-elementary subgroup (per the caller's test)
/// of diam(A_g^{+17δ} ∩ A_h^{+17δ}).
pub fn invariant_a_model(
    space: &FiniteLengthSpace,
    isometries: &[FiniteIsometry],
    delta: Length,
    elementary: &dyn Fn(&FiniteIsometry, &FiniteIsometry) -> bool,
) -> InvariantAReport {
    let cap = delta.scale_int(1000);
    let thick = delta.scale_int(17);
    let mut value = delta.zero_like();
    let mut pairs = 0usize;
    for (i, g) in isometries.iter().enumerate() {
        if !translation_length_model(space, g).le_tol(&cap) {
            continue;
        }
        for h in &isometries[i + 1..] {
            if !translation_length_model(space, h).le_tol(&cap) {
                continue;
            }
            if elementary(g, h) {
                continue;
            }
            pairs += 1;
            let ag = axis_model(space, g, delta);
            let ah = axis_model(space, h, delta);
            if let Diameter::Of(d) =
                crate::convexity::diam_intersection(space, &ag, thick, &ah, thick)
            {
                value = value.max(d);
            }
        }
    }
    InvariantAReport { value, admissible_pairs: pairs, empty_pair_set: pairs == 0 }
}

/// Exact diameter of axis₁^{+a} ∩ axis₂^{+b} for tree lines, in the same
/// units as a and b (edge units times the edge weight).
fn thickened_axes_diam_exact(
    pair: &tree::LinePair,
    edge_weight: Length,
    a: Length,
    b: Length,
) -> Option<Length> {
    let scale = |units: usize| edge_weight.scale_int(units as i64);
    if pair.gap == 0 {
        Some(scale(pair.overlap) + a.max(b).scale_int(2))
    } else {
        let g = scale(pair.gap);
        if !g.le_tol(&(a + b)) {
            return None;
        }
        let mut d = (a + b) - g;
        if g.le_tol(&a) {
            d = d.max((a - g).scale_int(2));
        }
        if g.le_tol(&b) {
            d = d.max((b - g).scale_int(2));
        }
        Some(d)
    }
}

/// Largest overlap realized over all relative translates of the axes of two
/// cyclic words: max over cyclic shifts and orientations of the common
/// prefix length of the periodic label lines. Alignments where the two
/// lines coincide are skipped: in a free group they are conjugate pairs
/// lying in a common cyclic subgroup, hence elementary.
pub fn max_line_overlap(u: &Word, w: &Word) -> usize {
    let (cu, _) = u.cyclic_reduce();
    let (cw, _) = w.cyclic_reduce();
    debug_assert!(!cu.is_empty() && !cw.is_empty());
    let mut best = 0usize;
    for i in 0..cu.len() {
        let su = cu.rotate(i);
        for j in 0..cw.len() {
            for sw in [cw.rotate(j), cw.rotate(j).inverse()] {
                let l = lcp_periodic(&su, &sw);
                if su == sw || l >= su.len() + sw.len() {
                    // identical lines: the elementary alignment
                    continue;
                }
                best = best.max(l);
            }
        }
    }
    // forward prefixes cover one direction; the backward direction is
    // subsumed because every shift and orientation is already enumerated
    best
}

/// A(G, X) for the free group acting on its (λ-rescaled) Cayley tree,
/// exact: the admissible set is every group element with ℓ ≤ 1000δ, i.e.
/// all conjugates of the supplied cyclic pool, so relative translates of
/// axes are part of the supremum.
pub fn invariant_a_free(
    pool: &[Word],
    delta: Length,
    edge_weight: Length,
) -> Result<InvariantAReport> {
    let cap = delta.scale_int(1000);
    let mut value = delta.zero_like();
    let mut pairs = 0usize;
    let admissible: Vec<&Word> = pool
        .iter()
        .filter(|w| translation_length_word(w, edge_weight).le_tol(&cap))
        .filter(|w| !w.cyclic_reduce().0.is_empty())
        .collect();
    for (i, g) in admissible.iter().enumerate() {
        for h in &admissible[i..] {
            // Every pair of conjugates with distinct axes is non-elementary
            // in a free group, including distinct conjugates of one element;
            // coinciding-axis alignments are skipped inside the overlap scan.
            pairs += 1;
            let ell_g = translation_length_word(g, edge_weight);
            let ell_h = translation_length_word(h, edge_weight);
            let extra = |ell: Length| (delta.scale_int(8).max(ell) - ell).half();
            let a = delta.scale_int(17) + extra(ell_g);
            let b = delta.scale_int(17) + extra(ell_h);
            let overlap = max_line_overlap(g, h);
            let diam = edge_weight.scale_int(overlap as i64) + a.max(b).scale_int(2);
            value = value.max(diam);
        }
    }
    Ok(InvariantAReport { value, admissible_pairs: pairs, empty_pair_set: pairs == 0 })
}

/// Axis overlap of two specific anchored words with the 17δ thickening.
pub fn anchored_axes_overlap(
    g: &Word,
    h: &Word,
    delta: Length,
    edge_weight: Length,
) -> Option<Length> {
    let pair = tree::line_pair(g, h)?;
    let extra = |w: &Word| {
        let ell = translation_length_word(w, edge_weight);
        (delta.scale_int(8).max(ell) - ell).half()
    };
    let a = delta.scale_int(17) + extra(g);
    let b = delta.scale_int(17) + extra(h);
    thickened_axes_diam_exact(&pair, edge_weight, a, b)
}

/// Injectivity radius of a set of conjugacy representatives: the minimal
/// stable length of its hyperbolic members (∞ when none are hyperbolic).
pub fn rinj_words(pool: &[Word], edge_weight: Length) -> Dist {
    let mut best = Dist::Infinite;
    for w in pool {
        let l = tree::translation_length(w);
        if l > 0 {
            best = best.min(Dist::Finite(edge_weight.scale_int(l as i64)));
        }
    }
    best
}

/// Every distance-preserving vertex permutation of the space, by
/// backtracking on distance profiles. Intended for small models.
pub fn all_isometries(space: &FiniteLengthSpace) -> Vec<FiniteIsometry> {
    let n = space.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        space: &FiniteLengthSpace,
        depth: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<FiniteIsometry>,
    ) {
        let n = space.len();
        if depth == n {
            out.push(FiniteIsometry { perm: perm.clone() });
            return;
        }
        'cand: for img in 0..n {
            if used[img] {
                continue;
            }
            for prev in 0..depth {
                if !space
                    .dist(depth, prev)
                    .eq_tol(&space.dist(img, perm[prev]))
                {
                    continue 'cand;
                }
            }
            perm[depth] = img;
            used[img] = true;
            go(space, depth + 1, perm, used, out);
            used[img] = false;
            perm[depth] = usize::MAX;
        }
    }
    go(space, 0, &mut perm, &mut used, &mut out);
    out
}
