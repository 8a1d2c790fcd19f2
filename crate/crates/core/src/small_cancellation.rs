//! Presentation and labelled-graph small-cancellation analyzers: pieces,
//! C′(λ)/C″(λ), the piece/axis-overlap equivalence on the Cayley tree,
//! graphical girth and pieces, power families, and the numeric parameter
//! arithmetic of the iterated quotient construction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_actions::max_line_overlap;
use crate::length::{Dist, Length};
use crate::words::{lcp_periodic, tree, Word};

/// A finite presentation: generators and nontrivial, cyclically reduced
/// relators (relators are normalized on construction).
#[derive(Clone, Debug)]
pub struct Presentation {
    generators: Vec<u8>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: &str, relators: Vec<Word>) -> Result<Presentation> {
        let mut gens = Vec::new();
        for ch in generators.chars() {
            match ch {
                'a'..='z' => {
                    let g = ch as u8 - b'a' + 1;
                    if !gens.contains(&g) {
                        gens.push(g);
                    }
                }
                _ => return Err(Error::LetterOutsideAlphabet(ch)),
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut normalized = Vec::with_capacity(relators.len());
        for r in relators {
            let (core, _) = r.cyclic_reduce();
            if core.is_empty() {
                return Err(Error::TrivialRelator);
            }
            if core.max_generator() > *gens.iter().max().unwrap()
                || core
                    .letters()
                    .iter()
                    .any(|l| !gens.contains(&l.unsigned_abs()))
            {
                let bad = core
                    .letters()
                    .iter()
                    .find(|l| !gens.contains(&l.unsigned_abs()))
                    .unwrap();
                let ch = (b'a' + bad.unsigned_abs() - 1) as char;
                return Err(Error::LetterOutsideAlphabet(ch));
            }
            normalized.push(core);
        }
        Ok(Presentation { generators: gens, relators: normalized })
    }

    /// Text format: first line the generators, one relator per line.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let gens = lines
            .next()
            .ok_or_else(|| Error::Malformed("missing generator line".into()))?;
        let mut relators = Vec::new();
        for line in lines {
            relators.push(Word::parse(line.trim())?);
        }
        Presentation::new(gens.trim(), relators)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generators(&self) -> &[u8] {
        &self.generators
    }
}

/// R*: the set of all cyclic conjugates of the relators and their inverses.
pub fn cyclic_conjugates(p: &Presentation) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for r in &p.relators {
        for w in [r.clone(), r.inverse()] {
            for j in 0..w.len() {
                out.insert(w.rotate(j));
            }
        }
    }
    out
}

fn lcp_words(a: &Word, b: &Word) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub max_piece: usize,
    /// A pair of distinct R* elements realizing it.
    pub witness: Option<(String, String)>,
}

/// Longest common prefix over unordered pairs of distinct elements of R*.
/// A relator and its own distinct cyclic conjugate count as a pair.
pub fn max_piece(p: &Presentation) -> PieceReport {
    let star: Vec<Word> = cyclic_conjugates(p).into_iter().collect();
    let mut best = 0usize;
    let mut witness = None;
    for (i, a) in star.iter().enumerate() {
        for b in &star[i + 1..] {
            let l = lcp_words(a, b);
            if l > best {
                best = l;
                witness = Some((a.to_string(), b.to_string()));
            }
        }
    }
    PieceReport { max_piece: best, witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScVariant {
    CPrime,
    CDoublePrime,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScCheckReport {
    pub variant: ScVariant,
    pub lambda: Length,
    pub holds: bool,
    pub max_piece: usize,
    pub min_relator: usize,
    /// Violations as (piece, first word, second word, relator, allowed).
    pub violations: Vec<(String, String, String, String, String)>,
}

/// C′(λ): every piece occurring in a relator r has |u| ≤ λ|r|.
/// C″(λ): every piece is at most λ times the length of every relator.
pub fn check_small_cancellation(
    p: &Presentation,
    lambda: Length,
    variant: ScVariant,
) -> ScCheckReport {
    let star: Vec<Word> = cyclic_conjugates(p).into_iter().collect();
    // which relators own each R* element (several when relators are conjugate)
    let mut family: HashMap<&Word, Vec<usize>> = HashMap::new();
    for (ri, r) in p.relators.iter().enumerate() {
        for w in [r.clone(), r.inverse()] {
            for j in 0..w.len() {
                let rot = w.rotate(j);
                if let Some((key, _)) = star.iter().enumerate().find(|(_, s)| **s == rot) {
                    family.entry(&star[key]).or_default().push(ri);
                }
            }
        }
    }
    let pieces = max_piece(p);
    let min_relator = p.relators.iter().map(Word::len).min().unwrap_or(0);
    let mut violations = Vec::new();
    let allowed = |r_len: usize| lambda * Length::from_int(r_len as i64);
    match variant {
        ScVariant::CDoublePrime => {
            if min_relator > 0 {
                let bound = allowed(min_relator);
                if !Length::from_int(pieces.max_piece as i64).le_tol(&bound) {
                    if let Some((a, b)) = &pieces.witness {
                        let piece: String = a.chars().take(pieces.max_piece).collect();
                        violations.push((
                            piece,
                            a.clone(),
                            b.clone(),
                            format!("min relator length {min_relator}"),
                            bound.to_string(),
                        ));
                    }
                }
            }
        }
        ScVariant::CPrime => {
            for (i, a) in star.iter().enumerate() {
                for b in &star[i + 1..] {
                    let l = lcp_words(a, b);
                    if l == 0 {
                        continue;
                    }
                    let mut owners: Vec<usize> = Vec::new();
                    owners.extend(family.get(a).into_iter().flatten());
                    owners.extend(family.get(b).into_iter().flatten());
                    owners.sort_unstable();
                    owners.dedup();
                    for ri in owners {
                        let bound = allowed(p.relators[ri].len());
                        if !Length::from_int(l as i64).le_tol(&bound) {
                            let piece: String = a.to_string().chars().take(l).collect();
                            violations.push((
                                piece,
                                a.to_string(),
                                b.to_string(),
                                p.relators[ri].to_string(),
                                bound.to_string(),
                            ));
                        }
                    }
                }
            }
            violations.sort();
            violations.dedup();
        }
    }
    ScCheckReport {
        variant,
        lambda,
        holds: violations.is_empty(),
        max_piece: pieces.max_piece,
        min_relator,
        violations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceAxisReport {
    pub pairs_checked: usize,
    pub pairs_same_axis_skipped: usize,
    pub max_discrepancy: usize,
    /// (p, q, string piece, geometric diameter) for every checked pair.
    pub discrepancies: Vec<(String, String, usize, usize)>,
}

/// For every pair of distinct R* elements with distinct axes in the Cayley
/// tree, the string piece length (forward plus backward periodic overlap)
/// must equal the diameter of the intersection of the two axes, computed
/// geometrically from displacements. Expected discrepancy: zero.
pub fn piece_axis_equivalence(p: &Presentation) -> PieceAxisReport {
    let star: Vec<Word> = cyclic_conjugates(p).into_iter().collect();
    let mut pairs_checked = 0;
    let mut skipped = 0;
    let mut max_e = 0usize;
    let mut discrepancies = Vec::new();
    for (i, a) in star.iter().enumerate() {
        for b in &star[i + 1..] {
            let ra = a.primitive_root();
            let rb = b.primitive_root();
            if ra == rb || ra == rb.inverse() {
                skipped += 1;
                continue;
            }
            pairs_checked += 1;
            // string side: periodic forward overlap in each direction
            let fwd = lcp_periodic(a, b).max(lcp_periodic(a, &b.inverse()));
            let bwd =
                lcp_periodic(&a.inverse(), &b.inverse()).max(lcp_periodic(&a.inverse(), b));
            let string_side = fwd + bwd;
            // geometric side: walk the axis of a, membership by displacement
            let pair = tree::line_pair(a, b).expect("distinct roots give distinct axes");
            let geom_side = if pair.gap == 0 { pair.overlap } else { 0 };
            if string_side != geom_side {
                discrepancies.push((a.to_string(), b.to_string(), string_side, geom_side));
                max_e = max_e.max(string_side.abs_diff(geom_side));
            }
        }
    }
    PieceAxisReport {
        pairs_checked,
        pairs_same_axis_skipped: skipped,
        max_discrepancy: max_e,
        discrepancies,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QFamilyReport {
    /// Geometric Δ(Q): sup over distinct family pairs of the diameter of the
    /// axis intersection; infinite when two distinct pairs share an axis.
    pub delta_q: Dist,
    /// T(Q) = min relator length (tree translation length of the cyclic
    /// subgroup generators).
    pub t_q: Dist,
    pub max_piece: usize,
    /// Whether Δ(Q) equals the max piece (the generic small-cancellation
    /// situation; wrapped or commensurable configurations may differ).
    pub delta_equals_piece: bool,
}

impl QFamilyReport {
    /// C″(λ)'s string verdict and the geometric Δ(Q) ≤ λ·T(Q) verdict.
    pub fn verdicts(&self, lambda: Length) -> (bool, bool) {
        let string = match self.t_q {
            Dist::Infinite => true,
            Dist::Finite(t) => Length::from_int(self.max_piece as i64).le_tol(&(lambda * t)),
        };
        let geometric = match (self.delta_q, self.t_q) {
            (Dist::Infinite, _) => false,
            (Dist::Finite(d), Dist::Finite(t)) => d.le_tol(&(lambda * t)),
            (Dist::Finite(_), Dist::Infinite) => true,
        };
        (string, geometric)
    }
}

/// The family {(⟨u r u⁻¹⟩, u·Y_r)} of Example-1 type, analyzed on the Cayley
/// tree (δ = 0). Δ(Q) is computed geometrically: the first member is anchored
/// and the second ranges over translated axes through a period window of
/// positions and all cyclic shifts, with identical pairs excluded.
pub fn q_family_from_relators(p: &Presentation) -> QFamilyReport {
    let mut delta = Dist::Finite(Length::from_int(0));
    let mut infinite = false;
    'outer: for r in &p.relators {
        for s in &p.relators {
            for t in 0..r.len() {
                let x = tree::axis_point(r, t as i64);
                for j in 0..s.len() {
                    for se in [s.rotate(j), s.rotate(j).inverse()] {
                        let c = se.conjugate_by(&x);
                        if c == *r || c == r.inverse() {
                            continue; // same (subgroup, axis) pair
                        }
                        match tree::line_pair(r, &c) {
                            None => {
                                // distinct pair, same axis: unbounded overlap
                                infinite = true;
                                break 'outer;
                            }
                            Some(lp) if lp.gap == 0 => {
                                let d = Length::from_int(lp.overlap as i64);
                                delta = delta.max_len(d);
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    let pieces = max_piece(p);
    let t_q = p
        .relators
        .iter()
        .map(|r| Dist::Finite(Length::from_int(r.len() as i64)))
        .fold(Dist::Infinite, Dist::min);
    let delta_q = if infinite { Dist::Infinite } else { delta };
    let delta_equals_piece = match delta_q {
        Dist::Infinite => false,
        Dist::Finite(d) => d == Length::from_int(pieces.max_piece as i64),
    };
    QFamilyReport { delta_q, t_q, max_piece: pieces.max_piece, delta_equals_piece }
}

impl Dist {
    fn max_len(self, other: Length) -> Dist {
        match self {
            Dist::Infinite => Dist::Infinite,
            Dist::Finite(l) => Dist::Finite(l.max(other)),
        }
    }
}

/// A finite connected multigraph with directed letter labels and no vertex
/// of degree 1. Loops and parallel edges are allowed.
#[derive(Clone, Debug)]
pub struct LabelledGraph {
    ids: Vec<String>,
    /// (from, to, letter 1..=26)
    edges: Vec<(usize, usize, u8)>,
}

#[derive(serde::Deserialize)]
pub struct LabelledGraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl LabelledGraph {
    pub fn load(json: &str) -> Result<LabelledGraph> {
        let doc: LabelledGraphDoc =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut index = HashMap::new();
        for (i, id) in doc.vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        let mut edges = Vec::new();
        for (u, v, lab) in &doc.edges {
            let ui = *index.get(u).ok_or_else(|| Error::UnknownPoint(u.clone()))?;
            let vi = *index.get(v).ok_or_else(|| Error::UnknownPoint(v.clone()))?;
            let mut chars = lab.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(ch @ 'a'..='z'), None) => ch as u8 - b'a' + 1,
                (Some(ch), _) => return Err(Error::LetterOutsideAlphabet(ch)),
                (None, _) => return Err(Error::Malformed("empty edge label".into())),
            };
            edges.push((ui, vi, letter));
        }
        LabelledGraph::new(doc.vertices, edges)
    }

    pub fn new(ids: Vec<String>, edges: Vec<(usize, usize, u8)>) -> Result<LabelledGraph> {
        let n = ids.len();
        let mut degree = vec![0usize; n];
        for (u, v, _) in &edges {
            if *u >= n || *v >= n {
                return Err(Error::UnknownPoint(format!("{u}-{v}")));
            }
            degree[*u] += 1;
            degree[*v] += 1;
        }
        if let Some(i) = degree.iter().position(|&d| d == 1) {
            return Err(Error::DegreeOneVertex(ids[i].clone()));
        }
        // connectivity of the underlying graph
        if n > 0 {
            let mut adj = vec![Vec::new(); n];
            for (u, v, _) in &edges {
                adj[*u].push(*v);
                adj[*v].push(*u);
            }
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::Disconnected(ids[0].clone(), ids[i].clone()));
            }
        }
        Ok(LabelledGraph { ids, edges })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize, u8)] {
        &self.edges
    }
}

/// Length of the shortest embedded cycle: 1 for a loop, 2 for parallel
/// edges, otherwise BFS per vertex. Infinite for forests.
pub fn graph_girth(g: &LabelledGraph) -> Dist {
    let n = g.len();
    let mut pair_seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut best: Option<usize> = None;
    for (u, v, _) in &g.edges {
        if u == v {
            return Dist::Finite(Length::from_int(1));
        }
        let key = (*u.min(v), *u.max(v));
        *pair_seen.entry(key).or_insert(0) += 1;
        if pair_seen[&key] >= 2 {
            best = Some(best.map_or(2, |b: usize| b.min(2)));
        }
    }
    // BFS from each vertex, tracking the parent edge id
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, (u, v, _)) in g.edges.iter().enumerate() {
        adj[*u].push((*v, ei));
        adj[*v].push((*u, ei));
    }
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut queue = VecDeque::from([start]);
        dist[start] = 0;
        while let Some(u) = queue.pop_front() {
            for &(v, ei) in &adj[u] {
                if ei == parent_edge[u] {
                    continue;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent_edge[v] = ei;
                    queue.push_back(v);
                } else {
                    let cycle = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
    }
    match best {
        None => Dist::Infinite,
        Some(b) => Dist::Finite(Length::from_int(b as i64)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GraphPieceResult {
    /// Longest word labelling two distinct reduced paths, with a witness.
    Exact { length: usize, witness: String },
    /// The search saw pieces of at least `cap` letters (cycles in the
    /// two-path automaton, or a longest path beyond the cap).
    IndeterminateAtCap { cap: usize },
}

/// Graphical pieces: a word labels two distinct paths when the pairs
/// (start vertex, edge sequence) differ. Paths are reduced edge paths (no
/// immediate back-track over the same edge). Exact up to the cap via the
/// synchronized two-path automaton.
pub fn graph_max_piece(g: &LabelledGraph, cap: usize) -> GraphPieceResult {
    // position: (vertex, incoming edge id + direction or none)
    type Pos = (usize, Option<(usize, bool)>);
    let mut positions: Vec<Pos> = Vec::new();
    for v in 0..g.len() {
        positions.push((v, None));
    }
    for (ei, (u, v, _)) in g.edges.iter().enumerate() {
        positions.push((*v, Some((ei, true))));
        positions.push((*u, Some((ei, false))));
    }
    let pos_index: HashMap<Pos, usize> =
        positions.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    // moves[p][letter] = positions reachable by reading the letter (1..=26
    // forward labels, 27..=52 their inverses)
    let read = |p: &Pos, letter: u8| -> Vec<Pos> {
        let mut out = Vec::new();
        for (ei, (u, v, lab)) in g.edges.iter().enumerate() {
            if let Some((last, dir)) = p.1 {
                // no immediate reversal of the same edge
                if last == ei && dir != (letter <= 26 && *u == p.0 || letter > 26 && *v == p.0) {
                    // handled below per-direction; the check is refined there
                }
            }
            // forward traversal reads lab, backward reads lab + 26
            if *u == p.0 && letter == *lab {
                if p.1 != Some((ei, false)) {
                    out.push((*v, Some((ei, true))));
                }
            }
            if *v == p.0 && letter == lab + 26 {
                if p.1 != Some((ei, true)) {
                    out.push((*u, Some((ei, false))));
                }
            }
        }
        out
    };
    // product states: (pos1, pos2, diverged)
    type State = (usize, usize, bool);
    let mut start_states: Vec<State> = Vec::new();
    for v1 in 0..g.len() {
        for v2 in 0..g.len() {
            start_states.push((v1, v2, v1 != v2));
        }
    }
    let letters: Vec<u8> = (1..=26).chain(27..=52).collect();
    let succ = |s: &State| -> Vec<(State, u8)> {
        let mut out = Vec::new();
        let p1 = positions[s.0];
        let p2 = positions[s.1];
        for &letter in &letters {
            for n1 in read(&p1, letter) {
                for n2 in read(&p2, letter) {
                    let moved_div = s.2 || n1.1 != n2.1;
                    out.push(((pos_index[&n1], pos_index[&n2], moved_div), letter));
                }
            }
        }
        out
    };
    // forward reachability
    let mut reach: BTreeSet<State> = BTreeSet::new();
    let mut queue: VecDeque<State> = start_states.iter().copied().collect();
    for s in &start_states {
        reach.insert(*s);
    }
    while let Some(s) = queue.pop_front() {
        for (t, _) in succ(&s) {
            if reach.insert(t) {
                queue.push_back(t);
            }
        }
    }
    // states that can reach divergence (reverse closure)
    let mut edges_rev: HashMap<State, Vec<State>> = HashMap::new();
    for s in &reach {
        for (t, _) in succ(s) {
            if reach.contains(&t) {
                edges_rev.entry(t).or_default().push(*s);
            }
        }
    }
    let mut useful: BTreeSet<State> = reach.iter().filter(|s| s.2).copied().collect();
    let mut queue: VecDeque<State> = useful.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        if let Some(preds) = edges_rev.get(&s) {
            for p in preds.clone() {
                if useful.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    let live: BTreeSet<State> = reach.intersection(&useful).copied().collect();
    if live.is_empty() {
        return GraphPieceResult::Exact { length: 0, witness: String::new() };
    }
    // cycle detection within the live subgraph: unbounded pieces
    let order: Vec<State> = live.iter().copied().collect();
    let index: HashMap<State, usize> = order.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut color = vec![0u8; order.len()];
    let mut has_cycle = false;
    fn dfs(
        i: usize,
        order: &[State],
        index: &HashMap<State, usize>,
        live: &BTreeSet<State>,
        succ: &dyn Fn(&State) -> Vec<(State, u8)>,
        color: &mut Vec<u8>,
        has_cycle: &mut bool,
    ) {
        color[i] = 1;
        for (t, _) in succ(&order[i]) {
            if !live.contains(&t) {
                continue;
            }
            let j = index[&t];
            if color[j] == 1 {
                *has_cycle = true;
            } else if color[j] == 0 {
                dfs(j, order, index, live, succ, color, has_cycle);
            }
            if *has_cycle {
                return;
            }
        }
        color[i] = 2;
    }
    for i in 0..order.len() {
        if color[i] == 0 && start_states.iter().any(|s| index.get(s) == Some(&i)) {
            dfs(i, &order, &index, &live, &succ, &mut color, &mut has_cycle);
        }
        if has_cycle {
            return GraphPieceResult::IndeterminateAtCap { cap };
        }
    }
    // DAG longest path from the start states, with witness reconstruction
    let mut best_len: HashMap<State, usize> = HashMap::new();
    let mut best_word: HashMap<State, Vec<u8>> = HashMap::new();
    let mut frontier: Vec<State> = start_states
        .iter()
        .filter(|s| live.contains(s))
        .copied()
        .collect();
    for s in &frontier {
        best_len.insert(*s, 0);
        best_word.insert(*s, Vec::new());
    }
    let mut answer = 0usize;
    let mut answer_word = Vec::new();
    let mut steps = 0usize;
    while !frontier.is_empty() {
        steps += 1;
        if steps > cap {
            return GraphPieceResult::IndeterminateAtCap { cap };
        }
        let mut next: Vec<State> = Vec::new();
        for s in &frontier {
            let len = best_len[s];
            let word = best_word[s].clone();
            for (t, letter) in succ(s) {
                if !live.contains(&t) {
                    continue;
                }
                let cand = len + 1;
                if best_len.get(&t).map_or(true, |&cur| cand > cur) {
                    best_len.insert(t, cand);
                    let mut w2 = word.clone();
                    w2.push(letter);
                    if t.2 && cand > answer {
                        answer = cand;
                        answer_word = w2.clone();
                    }
                    best_word.insert(t, w2);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let witness: String = answer_word
        .iter()
        .map(|&l| {
            if l <= 26 {
                (b'a' + l - 1) as char
            } else {
                (b'A' + l - 27) as char
            }
        })
        .collect();
    GraphPieceResult::Exact { length: answer, witness }
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerFamilyReport {
    /// Primitive hyperbolic pool members with ℓ ≤ 1000δ, as text.
    pub members: Vec<String>,
    /// T(Q_n) = n · min stable length over the pool.
    pub t_q: Dist,
    /// Δ(Q_n): axis overlaps with Y_r the 10δ-cylinder, thickened by 5δ.
    pub delta_q: Length,
}

/// Example-3 family Q_n = {(⟨rⁿ⟩, Y_r)} on the (rescaled) Cayley tree.
pub fn power_family(
    pool: &[Word],
    n: u32,
    delta: Length,
    edge_weight: Length,
) -> Result<PowerFamilyReport> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("exponent must be positive".into()));
    }
    let cap = delta.scale_int(1000);
    let members: Vec<&Word> = pool
        .iter()
        .filter(|r| {
            let l = tree::translation_length(r);
            l > 0
                && !r.is_proper_power()
                && edge_weight.scale_int(l as i64).le_tol(&cap)
        })
        .collect();
    let t_q = members
        .iter()
        .map(|r| {
            Dist::Finite(
                edge_weight
                    .scale_int(tree::translation_length(r) as i64)
                    .scale_int(n as i64),
            )
        })
        .fold(Dist::Infinite, Dist::min);
    // Y_r is the 10δ-neighborhood of the axis; Δ thickens by another 5δ.
    let mut delta_q = delta.zero_like();
    for (i, r) in members.iter().enumerate() {
        for s in &members[i..] {
            let overlap = max_line_overlap(r, s);
            let d = edge_weight.scale_int(overlap as i64) + delta.scale_int(30);
            delta_q = delta_q.max(d);
        }
    }
    if members.is_empty() {
        delta_q = delta.zero_like();
    }
    Ok(PowerFamilyReport {
        members: members.iter().map(|w| w.to_string()).collect(),
        t_q,
        delta_q,
    })
}

/// ln sinh x, stable for large x.
pub fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[derive(Clone, Debug, Serialize)]
pub enum CriticalExponent {
    /// Small enough to state and re-check directly.
    Exact(u64),
    /// Beyond integer range: reported on the log scale.
    LogScale { ln_n0: f64, log10_n0: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideReport {
    pub rho0: f64,
    pub delta0: f64,
    pub big_delta0: f64,
    pub bold_delta: f64,
    /// δ₁ = 64·10⁴ · 𝛅.
    pub delta1: f64,
    /// ln of C = π sinh ρ₀ / (5 √(ρ₀ δ₁)); λ_n = C/√n.
    pub ln_c: f64,
    /// ln of the four thresholds τ with λ_n ≤ τ_i ⇔ inequality i holds.
    pub ln_thresholds: [f64; 4],
    pub n0: CriticalExponent,
    /// (n, ln λ_n) at a few sample points.
    pub lambda_table: Vec<(String, f64)>,
    /// c(n₁) < 1 exactly when n₁ > C²; ln C² is always finite.
    pub ln_c_squared: f64,
}

impl BurnsideReport {
    /// ln λ_n for a given real n ≥ 1 (log scale; exact in the algebra).
    pub fn ln_lambda(&self, n: f64) -> f64 {
        self.ln_c - 0.5 * n.ln()
    }

    /// Whether all four inequalities hold at n (evaluated in log form).
    pub fn all_hold(&self, n: f64) -> bool {
        let l = self.ln_lambda(n);
        self.ln_thresholds.iter().all(|&t| l <= t + 1e-12)
    }

    /// c(n₁) = λ_{n₁}; c < 1 ⇔ ln λ < 0 ⇔ n₁ > C².
    pub fn c_at(&self, n1: f64) -> f64 {
        self.ln_lambda(n1).exp()
    }
}

/// The rescaling-parameter arithmetic of the iterated construction: the
/// smallest exponent n₀ making all four inequalities hold (λ_n decreases in
/// n, so a threshold scan suffices), the λ_n table and the contraction
/// constant threshold.
pub fn critical_exponent_search(
    rho0: f64,
    delta0: f64,
    big_delta0: f64,
    bold_delta: f64,
) -> Result<BurnsideReport> {
    for (name, v) in [
        ("rho0", rho0),
        ("delta0", delta0),
        ("Delta0", big_delta0),
        ("bold delta", bold_delta),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InconsistentInput(format!("{name} must be positive")));
        }
    }
    let delta1 = 64.0e4 * bold_delta;
    let ln_pi = std::f64::consts::PI.ln();
    let ln_c = ln_pi + ln_sinh(rho0) - 5.0f64.ln() - 0.5 * (rho0 * delta1).ln();
    // τ₁: λ δ₁ ≤ δ₀
    let t1 = delta0.ln() - delta1.ln();
    // τ₂: λ (2π sinh(10⁴δ₁) + 86 δ₁) ≤ min{Δ₀, π sinh(10⁴δ₁)}
    let ln_sh = ln_pi + ln_sinh(1.0e4 * delta1);
    let t2 = big_delta0.ln().min(ln_sh) - ln_add_exp(std::f64::consts::LN_2 + ln_sh, (86.0 * delta1).ln());
    // τ₃: 100 λ ρ₀ δ₁ / (π sinh ρ₀) ≤ δ₁  ⇔  λ ≤ π sinh ρ₀ / (100 ρ₀)
    let t3 = ln_pi + ln_sinh(rho0) - (100.0 * rho0).ln();
    // τ₄: λ ρ₀ ≤ ρ₀  ⇔  λ ≤ 1
    let t4 = 0.0;
    let ln_thresholds = [t1, t2, t3, t4];
    let worst = ln_thresholds.iter().cloned().fold(f64::INFINITY, f64::min);
    // λ_n ≤ τ ⇔ n ≥ (C/τ)²
    let ln_n_star = 2.0 * (ln_c - worst);
    let report_base = |n0| BurnsideReport {
        rho0,
        delta0,
        big_delta0,
        bold_delta,
        delta1,
        ln_c,
        ln_thresholds,
        n0,
        lambda_table: Vec::new(),
        ln_c_squared: 2.0 * ln_c,
    };
    let mut report = if ln_n_star <= (53.0 * std::f64::consts::LN_2) {
        let mut n0 = ln_n_star.exp().ceil().max(1.0) as u64;
        let probe = report_base(CriticalExponent::Exact(0));
        while !probe.all_hold(n0 as f64) {
            n0 += 1;
        }
        while n0 > 1 && probe.all_hold((n0 - 1) as f64) {
            n0 -= 1;
        }
        report_base(CriticalExponent::Exact(n0))
    } else {
        report_base(CriticalExponent::LogScale {
            ln_n0: ln_n_star,
            log10_n0: ln_n_star / std::f64::consts::LN_10,
        })
    };
    let sample_points: Vec<(String, f64)> = match &report.n0 {
        CriticalExponent::Exact(n0) => [1.0, *n0 as f64, 2.0 * *n0 as f64]
            .iter()
            .map(|&n| (format!("{n}"), report.ln_lambda(n)))
            .collect(),
        CriticalExponent::LogScale { ln_n0, .. } => [0.5 * ln_n0, *ln_n0, 2.0 * ln_n0]
            .iter()
            .map(|&ln_n| (format!("e^{ln_n:.3}"), report.ln_c - 0.5 * ln_n))
            .collect(),
    };
    report.lambda_table = sample_points;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct GmBounds {
    /// Embedding radius R = (1/20) · ρ/(π sinh ρ) · T.
    pub r_embed: f64,
    pub ln_r_embed: f64,
    /// Coefficient of the distortion lower bound
    /// (1/500) · T/diam Θ · ρ/(π sinh ρ).
    pub distortion_coefficient: f64,
    pub ln_distortion_coefficient: f64,
    pub k: f64,
    pub l: f64,
}

impl GmBounds {
    /// Lower bound for the image distance of a pair at graph distance d.
    pub fn distortion(&self, d: f64) -> f64 {
        self.distortion_coefficient * (d / (2.0 * self.k) - self.l)
    }
}

/// Numeric bounds of the graphical small-cancellation theorem. Log-scale
/// twins stay finite when π sinh ρ overflows.
pub fn gm_embedding_bounds(rho: f64, t_q: f64, k: f64, l: f64, diam_theta: f64) -> Result<GmBounds> {
    if !(rho > 0.0) || !(diam_theta > 0.0) || !(k >= 1.0) || t_q < 0.0 || l < 0.0 {
        return Err(Error::InconsistentInput(
            "need rho > 0, diam > 0, k >= 1, T >= 0, l >= 0".into(),
        ));
    }
    let ln_pi_sh = std::f64::consts::PI.ln() + ln_sinh(rho);
    let (ln_r, ln_coeff) = if t_q == 0.0 {
        (f64::NEG_INFINITY, f64::NEG_INFINITY)
    } else {
        (
            rho.ln() + t_q.ln() - 20.0f64.ln() - ln_pi_sh,
            t_q.ln() + rho.ln() - 500.0f64.ln() - diam_theta.ln() - ln_pi_sh,
        )
    };
    Ok(GmBounds {
        r_embed: ln_r.exp(),
        ln_r_embed: ln_r,
        distortion_coefficient: ln_coeff.exp(),
        ln_distortion_coefficient: ln_coeff,
        k,
        l,
    })
}
