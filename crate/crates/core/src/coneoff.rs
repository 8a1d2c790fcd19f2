//! The cone-off space: a base graph with hyperbolic cones attached along
//! quasi-convex subsets. Distances on base vertices come out of a single
//! shortest-path pass justified by the chain normal form (interior chain
//! points can be pushed to the base, and in-cone detours between boundary
//! points are dominated by the direct in-cone distance); interior cone points
//! are handled by exit-through-boundary minimization.

use std::collections::HashMap;

use serde::Serialize;

use crate::cone::{comparison_coefficient, mu_unchecked, ConePoint, ConeSpec};
use crate::convexity::{diam_intersection, Diameter};
use crate::error::{Error, Result};
use crate::length::{Dist, Length, FLOAT_TOL};
use crate::space::{FiniteLengthSpace, SubsetHandle};
use crate::words::{tree, Word};

/// One cone attachment: the subset, its induced path metric, and the cone
/// over it. The cone base metric is the induced-subgraph path metric, which
/// is what strong quasi-convexity controls.
#[derive(Clone, Debug)]
pub struct Attachment {
    handle: SubsetHandle,
    pos: HashMap<usize, usize>,
    cone: ConeSpec,
}

impl Attachment {
    fn build(base: &FiniteLengthSpace, handle: SubsetHandle, rho: f64) -> Result<Attachment> {
        let ys = handle.indices();
        let m = ys.len();
        let induced = base.induced_path_metric(ys);
        let mut matrix = vec![0.0f64; m * m];
        for i in 0..m {
            for j in 0..m {
                match induced[i * m + j] {
                    Some(d) => matrix[i * m + j] = d.to_f64(),
                    None => {
                        return Err(Error::InvalidAttachment(format!(
                            "subset is not path-connected in the induced subgraph ({} unreachable from {})",
                            base.id(ys[j]),
                            base.id(ys[i])
                        )))
                    }
                }
            }
        }
        let ids = ys.iter().map(|&v| base.id(v).to_string()).collect();
        let cone_base = if m == 1 {
            FiniteLengthSpace::new(ids, vec![])?
        } else {
            FiniteLengthSpace::from_metric(ids, matrix)?
        };
        let cone = ConeSpec::new(cone_base, rho)?;
        // (μ, X)-family inequality: μ(d_X) must not exceed the glued metric.
        for i in 0..m {
            for j in 0..m {
                let lhs = mu_unchecked(rho, base.dist_f64(ys[i], ys[j]));
                let rhs = mu_unchecked(rho, cone.base().dist_f64(i, j));
                if lhs > rhs + FLOAT_TOL {
                    return Err(Error::InvalidAttachment(
                        "mu(d_X) exceeds the cone boundary metric".into(),
                    ));
                }
            }
        }
        let pos = ys.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ok(Attachment { handle, pos, cone })
    }

    pub fn subset(&self) -> &SubsetHandle {
        &self.handle
    }

    pub fn rho(&self) -> f64 {
        self.cone.rho()
    }

    fn contains(&self, v: usize) -> bool {
        self.pos.contains_key(&v)
    }

    /// In-cone distance between two points given by base-vertex ids.
    fn cone_dist(&self, y1: usize, r1: f64, y2: usize, r2: f64) -> f64 {
        let p = self.point(y1, r1);
        let q = self.point(y2, r2);
        self.cone.distance_unchecked(&p, &q)
    }

    fn point(&self, y: usize, r: f64) -> ConePoint {
        if r == 0.0 {
            ConePoint::Apex
        } else {
            ConePoint::At { base: self.pos[&y], r }
        }
    }

    /// Boundary-to-boundary distance μ(d_Y).
    fn boundary_dist(&self, y1: usize, y2: usize) -> f64 {
        self.cone_dist(y1, self.rho(), y2, self.rho())
    }
}

/// A point of the cone-off: a base vertex or an interior cone point
/// (attachment index, base vertex of its subset, radial coordinate).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CPoint {
    Base(usize),
    Cone { att: usize, y: usize, r: f64 },
}

#[derive(Clone, Debug)]
pub struct ConeOffSpace {
    base: FiniteLengthSpace,
    attachments: Vec<Attachment>,
    /// Cone-off metric restricted to base vertices.
    dot: Vec<f64>,
}

impl ConeOffSpace {
    pub fn build(
        base: FiniteLengthSpace,
        rho: f64,
        subsets: Vec<SubsetHandle>,
    ) -> Result<ConeOffSpace> {
        let mut attachments = Vec::with_capacity(subsets.len());
        for handle in subsets {
            attachments.push(Attachment::build(&base, handle, rho)?);
        }
        let n = base.len();
        let mut dot = vec![f64::INFINITY; n * n];
        for u in 0..n {
            dot[u * n + u] = 0.0;
            for v in (u + 1)..n {
                let mut w = base.dist_f64(u, v);
                for att in &attachments {
                    if att.contains(u) && att.contains(v) {
                        w = w.min(att.boundary_dist(u, v));
                    }
                }
                dot[u * n + v] = w;
                dot[v * n + u] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dot[i * n + k];
                for j in 0..n {
                    let cand = dik + dot[k * n + j];
                    if cand < dot[i * n + j] {
                        dot[i * n + j] = cand;
                    }
                }
            }
        }
        let space = ConeOffSpace { base, attachments, dot };
        space.validate_sandwich()?;
        Ok(space)
    }

    /// μ(d_X) ≤ dot ≤ d_X on every pair of base vertices.
    pub fn validate_sandwich(&self) -> Result<()> {
        let n = self.base.len();
        let rho = self
            .attachments
            .first()
            .map(|a| a.rho())
            .unwrap_or(1.0);
        for u in 0..n {
            for v in 0..n {
                let dx = self.base.dist_f64(u, v);
                let dd = self.dot[u * n + v];
                if dd > dx + FLOAT_TOL {
                    return Err(Error::InvalidAttachment(format!(
                        "dot metric exceeds the base metric at ({}, {})",
                        self.base.id(u),
                        self.base.id(v)
                    )));
                }
                if !self.attachments.is_empty() && mu_unchecked(rho, dx) > dd + FLOAT_TOL {
                    return Err(Error::InvalidAttachment(format!(
                        "dot metric undercuts mu(d_X) at ({}, {})",
                        self.base.id(u),
                        self.base.id(v)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FiniteLengthSpace {
        &self.base
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn dot_dist(&self, u: usize, v: usize) -> f64 {
        self.dot[u * self.base.len() + v]
    }

    fn check_point(&self, p: &CPoint) -> Result<()> {
        match p {
            CPoint::Base(u) => {
                if *u >= self.base.len() {
                    return Err(Error::UnknownPoint(u.to_string()));
                }
            }
            CPoint::Cone { att, y, r } => {
                let a = self
                    .attachments
                    .get(*att)
                    .ok_or_else(|| Error::UnknownPoint(format!("attachment {att}")))?;
                if !a.contains(*y) {
                    return Err(Error::UnknownPoint(format!(
                        "{} is not in attachment {att}",
                        self.base.id(*y)
                    )));
                }
                if !(0.0..=a.rho() + FLOAT_TOL).contains(r) {
                    return Err(Error::ParameterOutOfRange(format!(
                        "radial coordinate {r} outside [0, {}]",
                        a.rho()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Identify boundary points with their base vertex and all (y, 0) with
    /// a canonical apex representative.
    fn normalize(&self, p: &CPoint) -> CPoint {
        match *p {
            CPoint::Base(u) => CPoint::Base(u),
            CPoint::Cone { att, y, r } => {
                let a = &self.attachments[att];
                if (r - a.rho()).abs() <= FLOAT_TOL {
                    CPoint::Base(y)
                } else if r.abs() <= FLOAT_TOL {
                    CPoint::Cone { att, y: a.handle.indices()[0], r: 0.0 }
                } else {
                    CPoint::Cone { att, y, r }
                }
            }
        }
    }

    /// Distance in the disjoint union before chaining: finite only when some
    /// component contains both points; identified pairs take the min over
    /// representatives.
    pub fn d_sc(&self, p: &CPoint, q: &CPoint) -> Result<Dist> {
        self.check_point(p)?;
        self.check_point(q)?;
        let p = self.normalize(p);
        let q = self.normalize(q);
        Ok(match (p, q) {
            (CPoint::Base(u), CPoint::Base(v)) => {
                let mut best = self.base.dist_f64(u, v);
                for a in &self.attachments {
                    if a.contains(u) && a.contains(v) {
                        best = best.min(a.boundary_dist(u, v));
                    }
                }
                Dist::Finite(Length::Float(best))
            }
            (CPoint::Base(u), CPoint::Cone { att, y, r })
            | (CPoint::Cone { att, y, r }, CPoint::Base(u)) => {
                let a = &self.attachments[att];
                if a.contains(u) {
                    Dist::Finite(Length::Float(a.cone_dist(u, a.rho(), y, r)))
                } else {
                    Dist::Infinite
                }
            }
            (CPoint::Cone { att: i, y: y1, r: r1 }, CPoint::Cone { att: j, y: y2, r: r2 }) => {
                if i == j {
                    Dist::Finite(Length::Float(self.attachments[i].cone_dist(y1, r1, y2, r2)))
                } else {
                    Dist::Infinite
                }
            }
        })
    }

    /// l(C) = Σ d_sc over consecutive points; infinite if any hop is.
    pub fn chain_length(&self, chain: &[CPoint]) -> Result<Dist> {
        let mut acc = Dist::Finite(Length::Float(0.0));
        for w in chain.windows(2) {
            acc = acc.add(self.d_sc(&w[0], &w[1])?);
        }
        Ok(acc)
    }

    /// Full cone-off distance, extending the dot metric to interior points
    /// by exit-through-boundary minimization.
    pub fn distance(&self, p: &CPoint, q: &CPoint) -> Result<f64> {
        self.check_point(p)?;
        self.check_point(q)?;
        let p = self.normalize(p);
        let q = self.normalize(q);
        Ok(match (p, q) {
            (CPoint::Base(u), CPoint::Base(v)) => self.dot_dist(u, v),
            (CPoint::Base(u), CPoint::Cone { att, y, r })
            | (CPoint::Cone { att, y, r }, CPoint::Base(u)) => {
                self.exit_min(att, y, r, |y_exit| self.dot_dist(y_exit, u))
            }
            (CPoint::Cone { att: i, y: y1, r: r1 }, CPoint::Cone { att: j, y: y2, r: r2 }) => {
                if i == j {
                    let direct = self.attachments[i].cone_dist(y1, r1, y2, r2);
                    let via_base = self.exit_min(i, y1, r1, |e1| {
                        self.exit_min(j, y2, r2, |e2| self.dot_dist(e1, e2))
                    });
                    direct.min(via_base)
                } else {
                    self.exit_min(i, y1, r1, |e1| {
                        self.exit_min(j, y2, r2, |e2| self.dot_dist(e1, e2))
                    })
                }
            }
        })
    }

    /// min over boundary exits y' of in-cone distance to (y', ρ) plus `rest`.
    fn exit_min<F: Fn(usize) -> f64>(&self, att: usize, y: usize, r: f64, rest: F) -> f64 {
        let a = &self.attachments[att];
        let mut best = f64::INFINITY;
        for &y_exit in a.handle.indices() {
            let cost = a.cone_dist(y, r, y_exit, a.rho()) + rest(y_exit);
            best = best.min(cost);
        }
        best
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubchainReport {
    /// Indices into the input chain that were kept.
    pub kept: Vec<usize>,
    pub input_points: usize,
    pub output_points: usize,
    pub input_length: f64,
    pub output_length: f64,
    /// l(C_η) ≤ l(C) + 8·a·n·η³ with n the output point count.
    pub length_bound: f64,
    pub length_bound_holds: bool,
    /// n ≤ 4(l(C)/η + 1).
    pub count_bound: f64,
    pub count_bound_holds: bool,
}

/// Greedy subchain selection from the uniform-approximation argument:
/// starting from the first point, either step to the next point (when the
/// next hop is long) or jump to the furthest point within 2η of the current
/// one. Chain points must all be base vertices; η must satisfy η² < 1/(10a).
pub fn greedy_subchain(
    space: &ConeOffSpace,
    chain: &[usize],
    eta: f64,
    a: f64,
) -> Result<SubchainReport> {
    if chain.is_empty() {
        return Err(Error::InvalidPath("empty chain".into()));
    }
    for &z in chain {
        if z >= space.base().len() {
            return Err(Error::UnknownPoint(z.to_string()));
        }
    }
    if !(eta > 0.0) || eta * eta >= 1.0 / (10.0 * a) {
        return Err(Error::ParameterOutOfRange(format!(
            "eta must satisfy 0 < eta < sqrt(1/(10 a)) = {}",
            (1.0 / (10.0 * a)).sqrt()
        )));
    }
    let m = chain.len();
    let dx = |i: usize, j: usize| space.base().dist_f64(chain[i], chain[j]);
    let mut kept = vec![0usize];
    let mut jk = 0usize;
    while jk < m - 1 {
        let next = if dx(jk, jk + 1) > 2.0 * eta {
            jk + 1
        } else {
            let mut far = jk + 1;
            for j in (jk + 1)..m {
                if dx(jk, j) <= 2.0 * eta {
                    far = j;
                }
            }
            far
        };
        kept.push(next);
        jk = next;
    }
    let sc = |i: usize, j: usize| -> f64 {
        space
            .d_sc(&CPoint::Base(chain[i]), &CPoint::Base(chain[j]))
            .expect("base points are valid")
            .to_f64()
    };
    let input_length: f64 = (0..m - 1).map(|i| sc(i, i + 1)).sum();
    let output_length: f64 = kept.windows(2).map(|w| sc(w[0], w[1])).sum();
    let n = kept.len();
    let length_bound = input_length + 8.0 * a * n as f64 * eta * eta * eta;
    let count_bound = 4.0 * (input_length / eta + 1.0);
    Ok(SubchainReport {
        input_points: m,
        output_points: n,
        input_length,
        output_length,
        length_bound_holds: output_length <= length_bound + FLOAT_TOL,
        length_bound,
        count_bound_holds: (n as f64) <= count_bound + FLOAT_TOL,
        count_bound,
        kept,
    })
}

/// Description of the subgroup attached to a family member, enough to
/// compute its contribution to T(Q).
#[derive(Clone, Debug)]
pub enum SubgroupDesc {
    /// H = ⟨root^exponent⟩ acting on a tree with the given edge weight;
    /// min translation length is exponent · |cyclic reduction| · weight.
    CyclicWordPower { root: Word, exponent: u32, edge_weight: Length },
    /// Explicit translation lengths of the nontrivial elements considered.
    Lengths(Vec<Length>),
    /// Isometries of the ambient space, as vertex permutations.
    Elements(Vec<Vec<usize>>),
    /// No nontrivial elements.
    Trivial,
}

#[derive(Clone, Debug)]
pub struct QMember {
    pub subgroup: SubgroupDesc,
    pub subset: SubsetHandle,
}

/// A finite family of (subgroup, subset) pairs. Subsets paired with distinct
/// subgroup data must be distinct as sets.
#[derive(Clone, Debug, Default)]
pub struct QFamily {
    pub members: Vec<QMember>,
}

impl QFamily {
    pub fn push(&mut self, subgroup: SubgroupDesc, subset: SubsetHandle) {
        self.members.push(QMember { subgroup, subset });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaVariant {
    /// diam(Y₁^{+5δ} ∩ Y₂^{+5δ}) over unordered distinct pairs.
    Standard,
    /// The 12δ-thickened variant with the wider quantifier used for
    /// graphical small cancellation. On a finite family the quantifier
    /// degenerates to pair distinctness; only the thickening differs.
    GmPrime,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyDelta {
    pub value: Length,
    pub pairs_total: usize,
    pub pairs_overlapping: usize,
}

/// Δ(Q): sup over distinct pairs of thickened intersection diameters.
/// Empty intersections are skipped; no pairs at all gives 0.
pub fn delta_of_family(
    space: &FiniteLengthSpace,
    family: &QFamily,
    delta: Length,
    variant: DeltaVariant,
) -> FamilyDelta {
    let thickening = match variant {
        DeltaVariant::Standard => delta.scale_int(5),
        DeltaVariant::GmPrime => delta.scale_int(12),
    };
    let mut value = delta.zero_like();
    let mut pairs_total = 0;
    let mut pairs_overlapping = 0;
    let ms = &family.members;
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            pairs_total += 1;
            match diam_intersection(space, &ms[i].subset, thickening, &ms[j].subset, thickening) {
                Diameter::Empty => {}
                Diameter::Of(d) => {
                    pairs_overlapping += 1;
                    value = value.max(d);
                }
            }
        }
    }
    FamilyDelta { value, pairs_total, pairs_overlapping }
}

/// T(Q): smallest translation length of a nontrivial element of an attached
/// subgroup. Empty families (or all-trivial subgroups) give the infinite
/// marker, so the hypothesis T(Q) ≥ π sinh ρ holds vacuously.
pub fn t_of_family(space: &FiniteLengthSpace, family: &QFamily) -> Dist {
    let mut best = Dist::Infinite;
    for m in &family.members {
        let contribution = match &m.subgroup {
            SubgroupDesc::Trivial => Dist::Infinite,
            SubgroupDesc::CyclicWordPower { root, exponent, edge_weight } => {
                let core = tree::translation_length(root);
                if core == 0 || *exponent == 0 {
                    Dist::Infinite
                } else {
                    Dist::Finite(
                        edge_weight.scale_int(core as i64).scale_int(*exponent as i64),
                    )
                }
            }
            SubgroupDesc::Lengths(ls) => ls
                .iter()
                .fold(Dist::Infinite, |acc, l| acc.min(Dist::Finite(*l))),
            SubgroupDesc::Elements(perms) => {
                let mut acc = Dist::Infinite;
                for p in perms {
                    if p.iter().enumerate().all(|(i, &v)| i == v) {
                        continue;
                    }
                    let t = (0..space.len())
                        .map(|x| space.dist(p[x], x))
                        .reduce(|a, b| a.min(b));
                    if let Some(t) = t {
                        acc = acc.min(Dist::Finite(t));
                    }
                }
                acc
            }
        };
        best = best.min(contribution);
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct ScHypothesisReport {
    pub delta: Length,
    pub delta_bound: Length,
    pub delta_ok: bool,
    pub family_delta: Length,
    pub family_delta_bound: Length,
    pub family_delta_ok: bool,
    pub t: Dist,
    pub t_bound: f64,
    pub t_ok: bool,
    pub all_pass: bool,
}

/// Evaluate the three hypotheses of the small-cancellation theorem:
/// δ ≤ δ₀, Δ(Q) ≤ Δ₀ and T(Q) ≥ π sinh ρ.
pub fn sc_hypothesis_report(
    space: &FiniteLengthSpace,
    family: &QFamily,
    rho: f64,
    delta0: Length,
    family_delta0: Length,
) -> ScHypothesisReport {
    let delta = crate::delta::hyperbolicity_delta(space).delta_product;
    let fam = delta_of_family(space, family, delta, DeltaVariant::Standard);
    let t = t_of_family(space, family);
    let t_bound = std::f64::consts::PI * rho.sinh();
    let delta_ok = delta.le_tol(&delta0);
    let family_delta_ok = fam.value.le_tol(&family_delta0);
    let t_ok = match t {
        Dist::Infinite => true,
        Dist::Finite(l) => l.to_f64() >= t_bound - FLOAT_TOL,
    };
    ScHypothesisReport {
        delta,
        delta_bound: delta0,
        delta_ok,
        family_delta: fam.value,
        family_delta_bound: family_delta0,
        family_delta_ok,
        t,
        t_bound,
        t_ok,
        all_pass: delta_ok && family_delta_ok && t_ok,
    }
}

/// Materialized cone-off model: base vertices, one apex per attachment, and
/// optional interior rings, with exact pairwise cone-off distances. The
/// result is validated as a metric space.
pub struct MaterializedConeOff {
    pub space: FiniteLengthSpace,
    pub points: Vec<CPoint>,
    /// Vertex index of each attachment's apex.
    pub apexes: Vec<usize>,
}

pub fn materialize(coneoff: &ConeOffSpace, interior_rings: usize) -> Result<MaterializedConeOff> {
    let nb = coneoff.base.len();
    let mut ids: Vec<String> = coneoff.base.ids().to_vec();
    let mut points: Vec<CPoint> = (0..nb).map(CPoint::Base).collect();
    let mut apexes = Vec::new();
    for (ai, att) in coneoff.attachments.iter().enumerate() {
        let y0 = att.handle.indices()[0];
        apexes.push(ids.len());
        ids.push(format!("apex{ai}"));
        points.push(CPoint::Cone { att: ai, y: y0, r: 0.0 });
        for ring in 1..=interior_rings {
            let r = att.rho() * ring as f64 / (interior_rings + 1) as f64;
            for &y in att.handle.indices() {
                ids.push(format!("{}@{ai}r{ring}", coneoff.base.id(y)));
                points.push(CPoint::Cone { att: ai, y, r });
            }
        }
    }
    let m = points.len();
    // exit[i] = per-boundary-vertex cost vector for cone points, so that
    // cross-cone pairs reduce to two table lookups instead of a nested scan
    let exit: Vec<Option<Vec<f64>>> = points
        .iter()
        .map(|p| match p {
            CPoint::Base(_) => None,
            CPoint::Cone { att, y, r } => {
                let a = &coneoff.attachments[*att];
                Some(
                    a.handle
                        .indices()
                        .iter()
                        .map(|&y_exit| a.cone_dist(*y, *r, y_exit, a.rho()))
                        .collect(),
                )
            }
        })
        .collect();
    // reach[i][u] = cone-off distance from point i to base vertex u
    let reach: Vec<Vec<f64>> = points
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            CPoint::Base(b) => (0..nb).map(|u| coneoff.dot_dist(*b, u)).collect(),
            CPoint::Cone { att, .. } => {
                let a = &coneoff.attachments[*att];
                let costs = exit[i].as_ref().unwrap();
                (0..nb)
                    .map(|u| {
                        a.handle
                            .indices()
                            .iter()
                            .zip(costs)
                            .map(|(&y_exit, c)| c + coneoff.dot_dist(y_exit, u))
                            .fold(f64::INFINITY, f64::min)
                    })
                    .collect()
            }
        })
        .collect();
    let mut matrix = vec![0.0f64; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = match (&points[i], &points[j]) {
                (CPoint::Base(u), CPoint::Base(v)) => coneoff.dot_dist(*u, *v),
                (CPoint::Base(u), CPoint::Cone { .. }) => reach[j][*u],
                (CPoint::Cone { .. }, CPoint::Base(v)) => reach[i][*v],
                (
                    CPoint::Cone { att: ai, y: y1, r: r1 },
                    CPoint::Cone { att: aj, y: y2, r: r2 },
                ) => {
                    let a = &coneoff.attachments[*ai];
                    let through_base = a
                        .handle
                        .indices()
                        .iter()
                        .zip(exit[i].as_ref().unwrap())
                        .map(|(&y_exit, c)| c + reach[j][y_exit])
                        .fold(f64::INFINITY, f64::min);
                    if ai == aj {
                        a.cone_dist(*y1, *r1, *y2, *r2).min(through_base)
                    } else {
                        through_base
                    }
                }
            };
            matrix[i * m + j] = d;
            matrix[j * m + i] = d;
        }
    }
    let space = FiniteLengthSpace::from_metric(ids, matrix)?;
    Ok(MaterializedConeOff { space, points, apexes })
}

/// Extend a base isometry that stabilizes every attachment subset setwise to
/// the materialized cone-off, fixing each apex.
pub fn extend_base_isometry(
    model: &MaterializedConeOff,
    coneoff: &ConeOffSpace,
    base_perm: &[usize],
) -> Result<Vec<usize>> {
    for att in &coneoff.attachments {
        for &y in att.handle.indices() {
            if !att.contains(base_perm[y]) {
                return Err(Error::InvalidAttachment(
                    "base isometry does not stabilize an attachment subset".into(),
                ));
            }
        }
    }
    let pos: HashMap<String, usize> = model
        .space
        .ids()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut perm = Vec::with_capacity(model.points.len());
    for p in &model.points {
        let image_id = match p {
            CPoint::Base(u) => coneoff.base.id(base_perm[*u]).to_string(),
            CPoint::Cone { att, y, r } => {
                if *r == 0.0 {
                    format!("apex{att}")
                } else {
                    // interior ring labels carry the ring number
                    let rings: f64 = *r;
                    let att_obj = &coneoff.attachments[*att];
                    let total = att_obj.rho();
                    // recover ring index from the radial coordinate
                    let mut label = None;
                    for ring in 1..=64 {
                        let cand = total * ring as f64 / {
                            // interior_rings reconstructed from stored ids
                            let mut k = 1usize;
                            while pos.contains_key(&format!(
                                "{}@{}r{}",
                                coneoff.base.id(*y),
                                att,
                                k + 1
                            )) {
                                k += 1;
                            }
                            (k + 1) as f64
                        };
                        if (cand - rings).abs() <= FLOAT_TOL {
                            label = Some(ring);
                            break;
                        }
                    }
                    let ring = label.ok_or_else(|| {
                        Error::Malformed("interior point not on a sampled ring".into())
                    })?;
                    format!("{}@{}r{}", coneoff.base.id(base_perm[*y]), att, ring)
                }
            }
        };
        perm.push(
            *pos.get(&image_id)
                .ok_or_else(|| Error::Malformed(format!("missing image vertex {image_id}")))?,
        );
    }
    Ok(perm)
}

/// The comparison coefficient of the attached cones, a = (1+1/sinh²ρ)/24.
pub fn chain_coefficient(rho: f64) -> f64 {
    comparison_coefficient(rho)
}
