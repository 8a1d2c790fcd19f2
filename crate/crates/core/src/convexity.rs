//! Quasi-geodesics, quasi-convexity constants, projections, neighborhoods,
//! hulls and intersection diameters on finite spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::length::Length;
use crate::space::{FiniteLengthSpace, SubsetHandle};

/// A vertex path parametrized by arclength. Consecutive points must be
/// adjacent in the space or equal (a zero-length dwell step).
#[derive(Clone, Debug)]
pub struct DiscretePath {
    points: Vec<usize>,
    cumlen: Vec<Length>,
}

impl DiscretePath {
    pub fn new(space: &FiniteLengthSpace, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        for &p in &points {
            if p >= space.len() {
                return Err(Error::UnknownPoint(p.to_string()));
            }
        }
        let mut cumlen = Vec::with_capacity(points.len());
        let mut acc = space.dist(points[0], points[0]).zero_like();
        cumlen.push(acc);
        for w in points.windows(2) {
            let (u, v) = (w[0], w[1]);
            if u != v {
                let step = space.edge_weight(u, v).ok_or_else(|| {
                    Error::InvalidPath(format!(
                        "consecutive points {} and {} are not adjacent",
                        space.id(u),
                        space.id(v)
                    ))
                })?;
                acc = acc + step;
            }
            cumlen.push(acc);
        }
        Ok(DiscretePath { points, cumlen })
    }

    pub fn from_ids(space: &FiniteLengthSpace, ids: &[String]) -> Result<Self> {
        let mut points = Vec::with_capacity(ids.len());
        for id in ids {
            points.push(space.index_of(id)?);
        }
        Self::new(space, points)
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn cumlen(&self) -> &[Length] {
        &self.cumlen
    }

    pub fn arclength(&self) -> Length {
        *self.cumlen.last().unwrap()
    }

    pub fn vertex_set(&self, space: &FiniteLengthSpace) -> SubsetHandle {
        SubsetHandle::new(space, self.points.clone()).expect("path is nonempty")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiGeodesicReport {
    pub holds: bool,
    /// max over index pairs of |t−t'| − (k·d(γ(t), γ(t')) + l).
    pub worst_excess: Length,
    pub witness: (usize, usize),
}

/// Is the path a (k,l)-quasi-geodesic? The lower bound d ≤ |t−t'| holds
/// automatically for arclength parametrizations.
pub fn is_quasi_geodesic(
    space: &FiniteLengthSpace,
    path: &DiscretePath,
    k: Length,
    l: Length,
) -> Result<QuasiGeodesicReport> {
    if k < Length::from_int(1) {
        return Err(Error::ParameterOutOfRange("k must be >= 1".into()));
    }
    if l.is_negative() {
        return Err(Error::ParameterOutOfRange("l must be >= 0".into()));
    }
    let pts = path.points();
    let mut worst = -l;
    let mut witness = (0, 0);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let t = path.cumlen()[j] - path.cumlen()[i];
            let excess = t - (k * space.dist(pts[i], pts[j]) + l);
            if excess > worst {
                worst = excess;
                witness = (i, j);
            }
        }
    }
    Ok(QuasiGeodesicReport {
        holds: worst.le_tol(&worst.zero_like()),
        worst_excess: worst,
        witness,
    })
}

/// L-local version: every window of arclength ≤ L must be a (k,l)-quasi-
/// geodesic. Windows smaller than any step are vacuously fine.
pub fn is_local_quasi_geodesic(
    space: &FiniteLengthSpace,
    path: &DiscretePath,
    window: Length,
    k: Length,
    l: Length,
) -> Result<bool> {
    let pts = path.points();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let t = path.cumlen()[j] - path.cumlen()[i];
            if !t.le_tol(&window) {
                continue;
            }
            let bound = k * space.dist(pts[i], pts[j]) + l;
            if !t.le_tol(&bound) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// α = max over x ∈ S, y, y' ∈ Y of d(x,Y) − ⟨y,y'⟩_x, floored at 0.
pub fn quasi_convexity_constant(space: &FiniteLengthSpace, subset: &SubsetHandle) -> Length {
    let ys = subset.indices();
    let mut alpha = space.dist(ys[0], ys[0]).zero_like();
    for x in 0..space.len() {
        let dxy = space.d_point_subset(x, ys);
        for (a, &y) in ys.iter().enumerate() {
            for &y2 in &ys[a..] {
                let v = dxy - space.gromov_product(y, y2, x);
                alpha = alpha.max(v);
            }
        }
    }
    alpha.floor_zero()
}

/// All η-projections of x on Y: points p ∈ Y with d(x,p) ≤ d(x,Y) + η.
pub fn projection(
    space: &FiniteLengthSpace,
    x: usize,
    subset: &SubsetHandle,
    eta: Length,
) -> Vec<usize> {
    let dxy = space.d_point_subset(x, subset.indices());
    let bound = dxy + eta;
    subset
        .indices()
        .iter()
        .copied()
        .filter(|&p| space.dist(x, p).le_tol(&bound))
        .collect()
}

/// The A-neighborhood Y^{+A} as a subset handle.
pub fn neighborhood(
    space: &FiniteLengthSpace,
    subset: &SubsetHandle,
    a: Length,
) -> SubsetHandle {
    let verts = space.neighborhood_of(subset.indices(), a);
    SubsetHandle::new(space, verts).expect("neighborhood contains the subset")
}

/// Discrete hull: vertices v that are within `slack` of lying between some
/// pair of Y-points, i.e. d(y,v) + d(v,y') ≤ d(y,y') + slack.
pub fn hull(space: &FiniteLengthSpace, subset: &SubsetHandle, slack: Length) -> SubsetHandle {
    let ys = subset.indices();
    let verts: Vec<usize> = (0..space.len())
        .filter(|&v| {
            ys.iter().any(|&y| {
                ys.iter().any(|&y2| {
                    (space.dist(y, v) + space.dist(v, y2)).le_tol(&(space.dist(y, y2) + slack))
                })
            })
        })
        .collect();
    SubsetHandle::new(space, verts).expect("hull contains the subset")
}

/// Diameter of Y1^{+A1} ∩ Y2^{+A2}. Empty intersections are a distinct
/// outcome, never conflated with diameter 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Diameter {
    Empty,
    Of(Length),
}

impl Diameter {
    pub fn unwrap_or_zero(&self, like: Length) -> Length {
        match self {
            Diameter::Empty => like.zero_like(),
            Diameter::Of(l) => *l,
        }
    }
}

pub fn diam_intersection(
    space: &FiniteLengthSpace,
    y1: &SubsetHandle,
    a1: Length,
    y2: &SubsetHandle,
    a2: Length,
) -> Diameter {
    let inter: Vec<usize> = (0..space.len())
        .filter(|&x| {
            space.d_point_subset(x, y1.indices()).le_tol(&a1)
                && space.d_point_subset(x, y2.indices()).le_tol(&a2)
        })
        .collect();
    match space.diam_of(&inter) {
        None => Diameter::Empty,
        Some(d) => Diameter::Of(d),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongQcReport {
    pub path_connected: bool,
    /// max over pairs of d_Y − d_X (None when not path-connected).
    pub excess: Option<Length>,
    pub alpha: Length,
    pub verdict: bool,
}

/// Strong quasi-convexity: the induced path metric may exceed the ambient
/// one by at most 8δ, and the set must be 2δ-quasi-convex.
pub fn strong_quasi_convexity_check(
    space: &FiniteLengthSpace,
    subset: &SubsetHandle,
    delta: Length,
) -> StrongQcReport {
    let ys = subset.indices();
    let m = ys.len();
    let induced = space.induced_path_metric(ys);
    let mut excess = Some(delta.zero_like());
    'outer: for i in 0..m {
        for j in 0..m {
            match induced[i * m + j] {
                None => {
                    excess = None;
                    break 'outer;
                }
                Some(dy) => {
                    let e = dy - space.dist(ys[i], ys[j]);
                    excess = excess.map(|cur| cur.max(e));
                }
            }
        }
    }
    let alpha = quasi_convexity_constant(space, subset);
    let verdict = match excess {
        None => false,
        Some(e) => e.le_tol(&delta.scale_int(8)) && alpha.le_tol(&delta.scale_int(2)),
    };
    StrongQcReport {
        path_connected: excess.is_some(),
        excess,
        alpha,
        verdict,
    }
}
