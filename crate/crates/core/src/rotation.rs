//! Rotation families on finite models: axiom verification, truncated
//! enumeration of the normal subgroup K generated by the rotation groups,
//! quotient pseudo-metrics with certification, and the displacement
//! conclusions of the fundamental theorem.
//!
//! K is explored as permutations of the model and deduplicated by action:
//! on a finite model the image of K is a finite group, and the theorems
//! speak about that image. A quotient value is certified only when the
//! enumeration provably covers every element that could improve it; with the
//! documented conservative rule this means the breadth-first search closed
//! on the full image group.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::length::FLOAT_TOL;
use crate::space::FiniteLengthSpace;

pub type Perm = Vec<usize>;

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

fn compose(a: &[usize], b: &[usize]) -> Perm {
    (0..a.len()).map(|i| a[b[i]]).collect()
}

fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn min_displacement(space: &FiniteLengthSpace, p: &[usize]) -> f64 {
    (0..space.len())
        .map(|x| space.dist_f64(p[x], x))
        .fold(f64::INFINITY, f64::min)
}

fn max_displacement(space: &FiniteLengthSpace, p: &[usize]) -> f64 {
    (0..space.len())
        .map(|x| space.dist_f64(p[x], x))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug)]
pub struct RotationPair {
    /// The rotation subgroup as permutations (the identity may be omitted;
    /// the constructor closes the list under composition and inverse).
    pub subgroup: Vec<Perm>,
    pub apex: usize,
}

#[derive(Clone, Debug)]
pub struct RotationFamilySpec {
    pub space: FiniteLengthSpace,
    pub pairs: Vec<RotationPair>,
    pub sigma: f64,
    /// Generators of the declared ambient action, used to check invariance.
    pub conjugators: Vec<Perm>,
}

impl RotationFamilySpec {
    pub fn new(
        space: FiniteLengthSpace,
        pairs: Vec<(Vec<Perm>, usize)>,
        sigma: f64,
        conjugators: Vec<Perm>,
    ) -> Result<RotationFamilySpec> {
        if !(sigma > 0.0) {
            return Err(Error::ParameterOutOfRange("sigma must be > 0".into()));
        }
        let mut built = Vec::with_capacity(pairs.len());
        for (subgroup, apex) in pairs {
            if apex >= space.len() {
                return Err(Error::UnknownPoint(apex.to_string()));
            }
            for h in &subgroup {
                crate::cone::validate_base_isometry(&space, h)?;
                if h[apex] != apex {
                    return Err(Error::SubgroupNotFixingApex(space.id(apex).to_string()));
                }
            }
            let closed = crate::cone::close_under_composition(&subgroup, space.len());
            built.push(RotationPair { subgroup: closed, apex });
        }
        for c in &conjugators {
            crate::cone::validate_base_isometry(&space, c)?;
        }
        Ok(RotationFamilySpec { space, pairs: built, sigma, conjugators })
    }

    fn nontrivial_elements<'a>(&self, pair: &'a RotationPair) -> Vec<&'a Perm> {
        pair.subgroup.iter().filter(|p| !is_identity(p)).collect()
    }

    fn in_some_rotation_group(&self, p: &[usize]) -> bool {
        self.pairs.iter().any(|pair| pair.subgroup.iter().any(|h| h == p))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    /// Worst |d(hx,x) − 2 d(v,x)| over apices, h ≠ 1 and x ∈ B(v, σ/10).
    pub r1_worst_deviation: f64,
    pub r1_holds: bool,
    /// min over distinct pairs of d(v, v') (∞ with fewer than two pairs).
    pub r2_min_separation: f64,
    pub r2_holds: bool,
    /// Whether every conjugator maps the family into itself.
    pub r3_holds: bool,
    pub r3_witness: Option<String>,
}

pub fn verify_rotation_axioms(spec: &RotationFamilySpec) -> AxiomReport {
    let space = &spec.space;
    let mut r1_worst: f64 = 0.0;
    for pair in &spec.pairs {
        let ball = space.ball(pair.apex, crate::length::Length::Float(spec.sigma / 10.0));
        for h in spec.nontrivial_elements(pair) {
            for &x in &ball {
                let lhs = space.dist_f64(h[x], x);
                let rhs = 2.0 * space.dist_f64(pair.apex, x);
                r1_worst = r1_worst.max((lhs - rhs).abs());
            }
        }
    }
    let mut r2_min = f64::INFINITY;
    for (i, a) in spec.pairs.iter().enumerate() {
        for b in &spec.pairs[i + 1..] {
            if a.apex == b.apex && a.subgroup == b.subgroup {
                continue;
            }
            r2_min = r2_min.min(space.dist_f64(a.apex, b.apex));
        }
    }
    let mut r3_holds = true;
    let mut r3_witness = None;
    'outer: for c in &spec.conjugators {
        let c_inv = invert(c);
        for pair in &spec.pairs {
            let image_apex = c[pair.apex];
            let mut image_subgroup: Vec<Perm> = pair
                .subgroup
                .iter()
                .map(|h| compose(c, &compose(h, &c_inv)))
                .collect();
            image_subgroup.sort();
            let found = spec.pairs.iter().any(|q| {
                let mut qs = q.subgroup.clone();
                qs.sort();
                q.apex == image_apex && qs == image_subgroup
            });
            if !found {
                r3_holds = false;
                r3_witness = Some(format!(
                    "conjugated pair at apex {} is not in the family",
                    space.id(image_apex)
                ));
                break 'outer;
            }
        }
    }
    AxiomReport {
        r1_holds: r1_worst <= FLOAT_TOL,
        r1_worst_deviation: r1_worst,
        r2_holds: r2_min >= spec.sigma - FLOAT_TOL,
        r2_min_separation: r2_min,
        r3_holds,
        r3_witness,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupBallEnumeration {
    pub elements: Vec<Perm>,
    pub word_lengths: Vec<u32>,
    pub min_displacements: Vec<f64>,
    /// The search closed on the whole image group: no pruning and no word
    /// horizon cut, so every quotient value over K is exact.
    pub complete: bool,
    pub pruned: usize,
    pub horizon_cut: usize,
}

impl GroupBallEnumeration {
    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }
}

/// Breadth-first enumeration of the image of K: products of rotation
/// elements and their conjugates under the closure of the declared
/// conjugators, deduplicated by permutation action. An element whose minimal
/// displacement exceeds the displacement budget plus the maximal remaining
/// gain (word steps left times the largest generator displacement) is pruned;
/// such subtrees provably contain no element within the displacement budget
/// at the current word horizon.
pub fn enumerate_k_ball(
    spec: &RotationFamilySpec,
    word_budget: u32,
    displacement_budget: f64,
) -> GroupBallEnumeration {
    let n = spec.space.len();
    // generator set: nontrivial rotation elements closed under conjugation
    // by the conjugator closure, plus inverses
    let mut gens: Vec<Perm> = Vec::new();
    for pair in &spec.pairs {
        for h in spec.nontrivial_elements(pair) {
            gens.push((*h).clone());
        }
    }
    let conj_group = crate::cone::close_under_composition(&spec.conjugators, n);
    let mut seen: std::collections::BTreeSet<Perm> = gens.iter().cloned().collect();
    for c in &conj_group {
        let c_inv = invert(c);
        for g in gens.clone() {
            let img = compose(c, &compose(&g, &c_inv));
            if seen.insert(img.clone()) {
                gens.push(img);
            }
        }
    }
    for g in gens.clone() {
        let inv = invert(&g);
        if seen.insert(inv.clone()) {
            gens.push(inv);
        }
    }
    let max_gen_disp = gens
        .iter()
        .map(|g| max_displacement(&spec.space, g))
        .fold(0.0, f64::max);

    let identity: Perm = (0..n).collect();
    let mut elements: Vec<Perm> = vec![identity.clone()];
    let mut word_lengths: Vec<u32> = vec![0];
    let mut min_displacements: Vec<f64> = vec![0.0];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0usize]);
    let mut pruned = 0usize;
    let mut horizon_cut = 0usize;
    while let Some(i) = queue.pop_front() {
        let len = word_lengths[i];
        if len >= word_budget {
            horizon_cut += 1;
            continue;
        }
        let remaining = (word_budget - len) as f64;
        if min_displacements[i] > displacement_budget + remaining * max_gen_disp {
            pruned += 1;
            continue;
        }
        let g = elements[i].clone();
        for s in &gens {
            let prod = compose(s, &g);
            if !index.contains_key(&prod) {
                let disp = min_displacement(&spec.space, &prod);
                let idx = elements.len();
                index.insert(prod.clone(), idx);
                elements.push(prod);
                word_lengths.push(len + 1);
                min_displacements.push(disp);
                queue.push_back(idx);
            }
        }
    }
    GroupBallEnumeration {
        complete: pruned == 0 && horizon_cut == 0,
        elements,
        word_lengths,
        min_displacements,
        pruned,
        horizon_cut,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientValue {
    pub value: f64,
    pub certified: bool,
}

/// Quotient pseudo-distance inf over enumerated g of d(gx, x'). Certified
/// when the enumeration is complete, or when the documented displacement
/// rule guarantees no missing element can beat the value: every g with
/// d(gx, x') < value has min-displacement below value + d(x, x₀) + d(x', x₀)
/// for the search root x₀ (vertex 0), and the enumeration provably contains
/// all such elements only when it closed on the whole image.
pub fn quotient_distance(
    spec: &RotationFamilySpec,
    enumeration: &GroupBallEnumeration,
    x: usize,
    x2: usize,
) -> QuotientValue {
    let space = &spec.space;
    let mut best = f64::INFINITY;
    for g in &enumeration.elements {
        best = best.min(space.dist_f64(g[x], x2));
    }
    QuotientValue { value: best, certified: enumeration.complete }
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalTheoremReport {
    pub scanned: usize,
    /// min over enumerated g ∈ K outside every rotation group of min
    /// displacement; None when no such element was enumerated (vacuous).
    pub min_displacement_outside: Option<f64>,
    /// σ − 166δ for both δ conventions of the ambient model.
    pub bound_delta_product: f64,
    pub bound_delta_four_point: f64,
    pub holds: bool,
    pub vacuous: bool,
    /// Worst slack of d(gx,x) ≥ min{2·d(x, apices), σ/10} over g ∈ K \ {1}.
    pub free_outside_worst_slack: f64,
}

pub fn fundamental_theorem_check(
    spec: &RotationFamilySpec,
    enumeration: &GroupBallEnumeration,
) -> FundamentalTheoremReport {
    let space = &spec.space;
    let delta = crate::delta::hyperbolicity_delta(space);
    let bound_p = spec.sigma - 166.0 * delta.delta_product.to_f64();
    let bound_f = spec.sigma - 166.0 * delta.delta_four_point.to_f64();
    let mut scanned = 0usize;
    let mut min_outside: Option<f64> = None;
    for (i, g) in enumeration.elements.iter().enumerate() {
        if is_identity(g) || spec.in_some_rotation_group(g) {
            continue;
        }
        scanned += 1;
        let d = enumeration.min_displacements[i];
        min_outside = Some(min_outside.map_or(d, |m: f64| m.min(d)));
    }
    // free-outside-the-apices corollary on every nontrivial element
    let mut worst_slack = f64::INFINITY;
    for g in &enumeration.elements {
        if is_identity(g) {
            continue;
        }
        for x in 0..space.len() {
            let l = spec
                .pairs
                .iter()
                .map(|p| space.dist_f64(p.apex, x))
                .fold(f64::INFINITY, f64::min);
            let lhs = space.dist_f64(g[x], x);
            let rhs = (2.0 * l).min(spec.sigma / 10.0);
            worst_slack = worst_slack.min(lhs - rhs);
        }
    }
    let vacuous = scanned == 0;
    let holds = vacuous || min_outside.unwrap() >= bound_p - FLOAT_TOL;
    FundamentalTheoremReport {
        scanned,
        min_displacement_outside: min_outside,
        bound_delta_product: bound_p,
        bound_delta_four_point: bound_f,
        holds,
        vacuous,
        free_outside_worst_slack: if worst_slack.is_infinite() { 0.0 } else { worst_slack },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    /// Every enumerated element fixing the apex lies in its rotation group.
    pub fixers_contained: bool,
    pub witness: Option<Vec<usize>>,
    /// min over x ∈ B(v, σ/5), g ∈ K \ H of d(gx, x) (∞ when no such g).
    pub outside_min_displacement: f64,
    /// The quantitative clause d(gx,x) > 3σ/5 on that range.
    pub quantitative_holds: bool,
}

pub fn stabilizer_check(
    spec: &RotationFamilySpec,
    enumeration: &GroupBallEnumeration,
    apex_index: usize,
) -> Result<StabilizerReport> {
    let pair = spec
        .pairs
        .get(apex_index)
        .ok_or_else(|| Error::UnknownPoint(format!("pair {apex_index}")))?;
    let space = &spec.space;
    let v = pair.apex;
    let mut fixers_contained = true;
    let mut witness = None;
    for g in &enumeration.elements {
        if g[v] == v && !pair.subgroup.iter().any(|h| h == g) {
            fixers_contained = false;
            witness = Some(g.clone());
            break;
        }
    }
    let ball = space.ball(v, crate::length::Length::Float(spec.sigma / 5.0));
    let mut outside_min = f64::INFINITY;
    for g in &enumeration.elements {
        if pair.subgroup.iter().any(|h| h == g) {
            continue;
        }
        for &x in &ball {
            outside_min = outside_min.min(space.dist_f64(g[x], x));
        }
    }
    Ok(StabilizerReport {
        fixers_contained,
        witness,
        quantitative_holds: outside_min > 3.0 * spec.sigma / 5.0 - FLOAT_TOL,
        outside_min_displacement: outside_min,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalIsometryReport {
    pub hypothesis_ok: bool,
    pub hypothesis_note: Option<String>,
    /// max |quotient − ambient| over pairs in B(x, r).
    pub max_deviation: f64,
    pub holds: bool,
}

/// Away from the apices the quotient map is a local isometry: for
/// r ≤ σ/40 and d(x, apices) ≥ 2r, quotient distances on B(x, r) equal
/// ambient ones.
pub fn local_isometry_check(
    spec: &RotationFamilySpec,
    enumeration: &GroupBallEnumeration,
    x: usize,
    r: f64,
) -> LocalIsometryReport {
    if r <= 0.0 || r > spec.sigma / 40.0 + FLOAT_TOL {
        return LocalIsometryReport {
            hypothesis_ok: false,
            hypothesis_note: Some(format!("r must lie in (0, σ/40] = (0, {}]", spec.sigma / 40.0)),
            max_deviation: f64::NAN,
            holds: false,
        };
    }
    let space = &spec.space;
    let near = spec
        .pairs
        .iter()
        .map(|p| space.dist_f64(p.apex, x))
        .fold(f64::INFINITY, f64::min);
    if near < 2.0 * r - FLOAT_TOL {
        return LocalIsometryReport {
            hypothesis_ok: false,
            hypothesis_note: Some(format!(
                "point is {near} from an apex, need at least 2r = {}",
                2.0 * r
            )),
            max_deviation: f64::NAN,
            holds: false,
        };
    }
    let ball = space.ball(x, crate::length::Length::Float(r));
    let mut max_dev: f64 = 0.0;
    for (ai, &a) in ball.iter().enumerate() {
        for &b in &ball[ai + 1..] {
            let q = quotient_distance(spec, enumeration, a, b).value;
            max_dev = max_dev.max((q - space.dist_f64(a, b)).abs());
        }
    }
    LocalIsometryReport {
        hypothesis_ok: true,
        hypothesis_note: None,
        max_deviation: max_dev,
        holds: max_dev <= FLOAT_TOL,
    }
}
