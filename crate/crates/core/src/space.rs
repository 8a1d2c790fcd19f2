//! Finite length spaces: weighted graphs carrying their exact all-pairs
//! shortest-path metric, the discrete stand-in for the ambient space.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Signed;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::length::{Length, Rational, FLOAT_TOL};

const INF_I: i128 = i128::MAX / 4;

#[derive(Clone, Debug)]
enum DistTable {
    /// Integer distances over one space-wide denominator. Keeps every
    /// downstream δ and α computation exact.
    Exact { num: Vec<i128>, den: i128 },
    Float(Vec<f64>),
}

/// A connected weighted graph together with its path metric.
#[derive(Clone, Debug)]
pub struct FiniteLengthSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize, Length)>,
    adj: Vec<Vec<(usize, Length)>>,
    table: DistTable,
}

#[derive(Deserialize)]
pub struct SpaceDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, WeightDoc)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum WeightDoc {
    Num(f64),
    Str(String),
}

impl WeightDoc {
    fn to_length(&self) -> Result<Length> {
        match self {
            // Integer-valued JSON numbers are taken exactly; anything with a
            // fractional part is float data. Exact rationals go in as "p/q".
            WeightDoc::Num(x) => {
                if x.fract() == 0.0 && x.abs() < (1u64 << 53) as f64 {
                    Ok(Length::from_int(*x as i64))
                } else {
                    Ok(Length::Float(*x))
                }
            }
            WeightDoc::Str(s) => Length::parse(s),
        }
    }
}

impl FiniteLengthSpace {
    /// Parse and validate a space document (JSON text).
    pub fn load(json: &str) -> Result<FiniteLengthSpace> {
        let doc: SpaceDoc =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &SpaceDoc) -> Result<FiniteLengthSpace> {
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (u, v, w) in &doc.edges {
            edges.push((u.clone(), v.clone(), w.to_length()?));
        }
        Self::new(doc.vertices.clone(), edges)
    }

    /// Build a space from named vertices and weighted edges.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, Length)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, id) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        let mut seen = HashMap::new();
        for (u, v, w) in &edges {
            let ui = *index.get(u).ok_or_else(|| Error::UnknownPoint(u.clone()))?;
            let vi = *index.get(v).ok_or_else(|| Error::UnknownPoint(v.clone()))?;
            if ui == vi {
                return Err(Error::SelfLoop(u.clone()));
            }
            let key = (ui.min(vi), ui.max(vi));
            if seen.insert(key, ()).is_some() {
                return Err(Error::DuplicateEdge(u.clone(), v.clone()));
            }
            if !(*w > w.zero_like()) {
                return Err(Error::NonpositiveWeight(u.clone(), v.clone()));
            }
            idx_edges.push((ui, vi, *w));
        }
        Self::from_indexed(vertices, idx_edges)
    }

    fn from_indexed(ids: Vec<String>, edges: Vec<(usize, usize, Length)>) -> Result<Self> {
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v, w) in &edges {
            adj[*u].push((*v, *w));
            adj[*v].push((*u, *w));
        }
        let all_exact = edges.iter().all(|(_, _, w)| w.is_exact());
        let table = if all_exact {
            // Common denominator keeps distances integral.
            let mut den: i128 = 1;
            for (_, _, w) in &edges {
                let r = w.as_exact().unwrap();
                den = den.lcm(r.denom());
            }
            let mut num = vec![INF_I; n * n];
            for i in 0..n {
                num[i * n + i] = 0;
            }
            for (u, v, w) in &edges {
                let r = w.as_exact().unwrap();
                let scaled = r.numer() * (den / r.denom());
                let e = &mut num[u * n + v];
                *e = (*e).min(scaled);
                num[v * n + u] = *e;
            }
            floyd_warshall_i(&mut num, n);
            DistTable::Exact { num, den }
        } else {
            let mut val = vec![f64::INFINITY; n * n];
            for i in 0..n {
                val[i * n + i] = 0.0;
            }
            for (u, v, w) in &edges {
                let x = w.to_f64();
                let e = &mut val[u * n + v];
                *e = e.min(x);
                val[v * n + u] = *e;
            }
            floyd_warshall_f(&mut val, n);
            DistTable::Float(val)
        };
        let space = FiniteLengthSpace {
            index: ids
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect(),
            ids,
            edges,
            adj,
            table,
        };
        space.check_connected()?;
        Ok(space)
    }

    /// Build a space directly from a finite metric (complete graph on the
    /// given distance matrix). Used for sampled cones and cone-offs.
    pub fn from_metric(ids: Vec<String>, matrix: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if matrix.len() != n * n {
            return Err(Error::Malformed("metric matrix has wrong size".into()));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            if matrix[i * n + i].abs() > FLOAT_TOL {
                return Err(Error::Malformed("nonzero diagonal in metric".into()));
            }
            for j in (i + 1)..n {
                let d = matrix[i * n + j];
                if (d - matrix[j * n + i]).abs() > FLOAT_TOL {
                    return Err(Error::Malformed("asymmetric metric".into()));
                }
                if d <= 0.0 {
                    return Err(Error::NonpositiveWeight(ids[i].clone(), ids[j].clone()));
                }
                edges.push((i, j, Length::Float(d)));
            }
        }
        let space = Self::from_indexed(ids, edges)?;
        space.validate_triangle()?;
        Ok(space)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.len();
        for j in 1..n {
            let inf = match &self.table {
                DistTable::Exact { num, .. } => num[j] >= INF_I,
                DistTable::Float(val) => val[j].is_infinite(),
            };
            if inf {
                return Err(Error::Disconnected(self.ids[0].clone(), self.ids[j].clone()));
            }
        }
        Ok(())
    }

    /// Exhaustive triangle-inequality check of the stored metric.
    pub fn validate_triangle(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.dist_f64(i, j);
                    let rhs = self.dist_f64(i, k) + self.dist_f64(k, j);
                    if lhs > rhs + FLOAT_TOL {
                        return Err(Error::Malformed(format!(
                            "triangle inequality fails at ({}, {}, {})",
                            self.ids[i], self.ids[j], self.ids[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn edges(&self) -> &[(usize, usize, Length)] {
        &self.edges
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.table, DistTable::Exact { .. })
    }

    /// Integer distance table and its denominator, in exact mode.
    pub fn exact_view(&self) -> Option<(&[i128], i128)> {
        match &self.table {
            DistTable::Exact { num, den } => Some((num, *den)),
            DistTable::Float(_) => None,
        }
    }

    pub fn dist(&self, i: usize, j: usize) -> Length {
        let n = self.len();
        match &self.table {
            DistTable::Exact { num, den } => Length::Exact(Rational::new(num[i * n + j], *den)),
            DistTable::Float(val) => Length::Float(val[i * n + j]),
        }
    }

    pub fn dist_f64(&self, i: usize, j: usize) -> f64 {
        let n = self.len();
        match &self.table {
            DistTable::Exact { num, den } => num[i * n + j] as f64 / *den as f64,
            DistTable::Float(val) => val[i * n + j],
        }
    }

    /// Gromov product ⟨x,y⟩_z = ½(d(x,z) + d(y,z) − d(x,y)).
    pub fn gromov_product(&self, x: usize, y: usize, z: usize) -> Length {
        ((self.dist(x, z) + self.dist(y, z)) - self.dist(x, y)).half()
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<Length> {
        self.adj[u]
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, len)| *len)
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, Length)] {
        &self.adj[u]
    }

    pub fn diameter(&self) -> Length {
        let n = self.len();
        let mut best = self.dist(0, 0);
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Closed ball B(c, r) as a vertex list.
    pub fn ball(&self, center: usize, r: Length) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.dist(center, v).le_tol(&r))
            .collect()
    }

    /// Uniformly rescaled copy (λ·d). Exact when both the space and λ are.
    pub fn rescale(&self, factor: Length) -> Result<FiniteLengthSpace> {
        if !(factor > factor.zero_like()) {
            return Err(Error::ParameterOutOfRange("rescale factor must be > 0".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|(u, v, w)| (self.ids[*u].clone(), self.ids[*v].clone(), *w * factor))
            .collect();
        FiniteLengthSpace::new(self.ids.clone(), edges)
    }

    pub fn d_point_subset(&self, x: usize, subset: &[usize]) -> Length {
        let mut best: Option<Length> = None;
        for &y in subset {
            let d = self.dist(x, y);
            best = Some(match best {
                None => d,
                Some(b) => b.min(d),
            });
        }
        best.expect("nonempty subset")
    }

    /// Vertices x with d(x, Y) ≤ a.
    pub fn neighborhood_of(&self, subset: &[usize], a: Length) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.d_point_subset(x, subset).le_tol(&a))
            .collect()
    }

    pub fn diam_of(&self, subset: &[usize]) -> Option<Length> {
        if subset.is_empty() {
            return None;
        }
        let mut best = self.dist(subset[0], subset[0]);
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                best = best.max(self.dist(i, j));
            }
        }
        Some(best)
    }

    /// Path metric of the subgraph induced by `subset`. Entries are `None`
    /// when the induced subgraph does not connect the pair.
    pub fn induced_path_metric(&self, subset: &[usize]) -> Vec<Option<Length>> {
        let m = subset.len();
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut d: Vec<Option<Length>> = vec![None; m * m];
        for i in 0..m {
            d[i * m + i] = Some(self.dist(subset[i], subset[i]).zero_like());
        }
        for (u, v, w) in &self.edges {
            if let (Some(&i), Some(&j)) = (pos.get(u), pos.get(v)) {
                let better = match d[i * m + j] {
                    None => true,
                    Some(cur) => *w < cur,
                };
                if better {
                    d[i * m + j] = Some(*w);
                    d[j * m + i] = Some(*w);
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                if let Some(dik) = d[i * m + k] {
                    for j in 0..m {
                        if let Some(dkj) = d[k * m + j] {
                            let cand = dik + dkj;
                            let better = match d[i * m + j] {
                                None => true,
                                Some(cur) => cand < cur,
                            };
                            if better {
                                d[i * m + j] = Some(cand);
                            }
                        }
                    }
                }
            }
        }
        d
    }

    /// Vertices on some shortest path between u and v (exact betweenness).
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        let duv = self.dist(u, v);
        (0..self.len())
            .filter(|&x| (self.dist(u, x) + self.dist(x, v)).eq_tol(&duv))
            .collect()
    }
}

fn floyd_warshall_i(d: &mut [i128], n: usize) {
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik >= INF_I {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k * n + j];
                if cand < d[i * n + j] {
                    d[i * n + j] = cand;
                }
            }
        }
    }
}

fn floyd_warshall_f(d: &mut [f64], n: usize) {
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k * n + j];
                if cand < d[i * n + j] {
                    d[i * n + j] = cand;
                }
            }
        }
    }
}

/// A nonempty subset of a space's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetHandle {
    indices: Vec<usize>,
}

impl SubsetHandle {
    pub fn new(space: &FiniteLengthSpace, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= space.len()) {
            return Err(Error::SubsetOutsideSpace(bad.to_string()));
        }
        Ok(SubsetHandle { indices })
    }

    pub fn from_ids(space: &FiniteLengthSpace, ids: &[String]) -> Result<Self> {
        let mut indices = Vec::with_capacity(ids.len());
        for id in ids {
            indices.push(
                space
                    .index_of(id)
                    .map_err(|_| Error::SubsetOutsideSpace(id.clone()))?,
            );
        }
        Self::new(space, indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Convenience builders for the standard test menagerie.
pub mod shapes {
    use super::*;

    pub fn path(n: usize) -> FiniteLengthSpace {
        let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let edges = (0..n.saturating_sub(1))
            .map(|i| (ids[i].clone(), ids[i + 1].clone(), Length::from_int(1)))
            .collect();
        FiniteLengthSpace::new(ids, edges).unwrap()
    }

    pub fn cycle(n: usize) -> FiniteLengthSpace {
        cycle_weighted(n, Length::from_int(1))
    }

    pub fn cycle_weighted(n: usize, w: Length) -> FiniteLengthSpace {
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges = (0..n)
            .map(|i| (ids[i].clone(), ids[(i + 1) % n].clone(), w))
            .collect();
        FiniteLengthSpace::new(ids, edges).unwrap()
    }

    pub fn single_point() -> FiniteLengthSpace {
        FiniteLengthSpace::new(vec!["o".into()], vec![]).unwrap()
    }
}
