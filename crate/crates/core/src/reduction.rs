//! Reduction of a metric graph to a pumpkin chain.
//!
//! The pipeline:
//!
//! 1. pick endpoints `v₀`, `v_D` at distance `D` (the diameter, inserting
//!    degree-two vertices at interior witnesses, or the combinatorial
//!    diameter);
//! 2. enumerate simple `v₀`–`v_D` paths in nondecreasing length (Yen), keeping
//!    each one that brings a new edge, until every edge lying on some simple
//!    `v₀`–`v_D` path is covered;
//! 3. drop everything outside the union of kept paths (only pendants);
//! 4. shorten the edges new to each path so that every path has length `D`
//!    and arclength from `v₀` defines a consistent level on every vertex
//!    (when the paths cross each other in incompatible directions this is
//!    impossible, and the levels `min(dist(v₀, v), D)` are used instead);
//! 5. glue vertices of equal level; between consecutive levels the number of
//!    edges crossing the gap is the pumpkin multiplicity.
//!
//! Every step is a cut, a shortening or an identification, so the spectral
//! gap can only grow.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigUint;

use crate::chain::{PumpkinChain, Segment};
use crate::graph::{EdgeId, GraphError, MetricGraph, PointLocation, UnionFind, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Preserve the continuous diameter.
    #[default]
    Metric,
    /// Preserve the combinatorial diameter.
    Combinatorial,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReductionError {
    Graph(GraphError),
    /// A path runs backwards through already assigned levels.
    NonMonotone { path: usize },
    /// The new edges of a path are too short to span their level gap.
    LengthDeficit { path: usize },
    /// A reused edge disagrees with the levels of its endpoints.
    InconsistentLevels { path: usize },
    PathLimit(usize),
    /// Something outside the kept paths touches them at more than one vertex.
    PruneViolation,
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::Graph(e) => write!(f, "{e}"),
            ReductionError::NonMonotone { path } => {
                write!(f, "path {path} runs backwards through assigned levels")
            }
            ReductionError::LengthDeficit { path } => {
                write!(f, "path {path} is too short to span its level gap")
            }
            ReductionError::InconsistentLevels { path } => {
                write!(f, "path {path} reuses an edge inconsistently with its levels")
            }
            ReductionError::PathLimit(n) => write!(f, "gave up after {n} candidate paths"),
            ReductionError::PruneViolation => {
                write!(f, "a discarded part meets the kept paths at more than one vertex")
            }
        }
    }
}

impl core::error::Error for ReductionError {}

impl From<GraphError> for ReductionError {
    fn from(e: GraphError) -> Self {
        ReductionError::Graph(e)
    }
}

/// Upper limit on paths produced by the enumeration.
pub const MAX_PATHS: usize = 100_000;

/// A walk from `v₀` given by its edges and visited vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPath {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    pub length: f64,
}

/// Edge of an intermediate graph with zero lengths allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct LeveledEdge {
    pub name: String,
    pub from: VertexId,
    pub to: VertexId,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace {
    pub mode: Mode,
    /// Names of `v₀` and `v_D` in `prepared`.
    pub endpoints: (String, String),
    /// Vertices inserted at interior diameter witnesses.
    pub inserted: Vec<String>,
    pub distance: f64,
    /// The input with endpoint vertices inserted.
    pub prepared: MetricGraph,
    /// Kept paths in `prepared`, with their original lengths.
    pub paths: Vec<GraphPath>,
    /// Union of the kept paths.
    pub pruned: MetricGraph,
    /// `pruned` after shortening; indices refer to `pruned.vertices()`.
    pub equalized: Vec<LeveledEdge>,
    /// Why per-path equalization was abandoned for distance levels, if it was.
    pub fallback: Option<ReductionError>,
    /// Level of every vertex of `pruned`.
    pub vertex_levels: Vec<f64>,
    /// Distinct levels, from 0 to `distance`.
    pub levels: Vec<f64>,
    pub input_vertex_count: usize,
    pub chain: PumpkinChain,
}

pub fn reduce(g: &MetricGraph, mode: Mode) -> Result<(PumpkinChain, ReductionTrace), ReductionError> {
    let (prepared, v0, vd, distance, inserted) = choose_endpoints(g, mode)?;
    let paths = enumerate_paths(&prepared, v0, vd)?;
    let (pruned, paths) = prune_to_union(&prepared, &paths)?;
    let v0p = pruned
        .vertex_id(&prepared.vertices()[v0])
        .expect("endpoints lie on every path");
    let vdp = pruned
        .vertex_id(&prepared.vertices()[vd])
        .expect("endpoints lie on every path");
    let (equalized, vertex_levels, fallback) = match equalize_path_lengths(&pruned, &paths, distance) {
        Ok((e, l)) => (e, l, None),
        Err(
            reason @ (ReductionError::NonMonotone { .. }
            | ReductionError::LengthDeficit { .. }
            | ReductionError::InconsistentLevels { .. }),
        ) => {
            let (e, l) = equalize_by_distance(&pruned, v0p, distance);
            (e, l, Some(reason))
        }
        Err(e) => return Err(e),
    };
    let levels = synchronize_levels(&vertex_levels, distance);
    let chain = collapse_levels(&equalized, &vertex_levels, &levels);
    let trace = ReductionTrace {
        mode,
        endpoints: (
            pruned.vertices()[v0p].clone(),
            pruned.vertices()[vdp].clone(),
        ),
        inserted,
        distance,
        prepared,
        paths: paths.clone(),
        pruned,
        equalized,
        fallback,
        vertex_levels,
        levels,
        input_vertex_count: g.vertex_count(),
        chain: chain.clone(),
    };
    Ok((chain, trace))
}

fn fresh_name(g: &MetricGraph, base: &str) -> String {
    let mut name = String::from(base);
    let mut i = 0usize;
    while g.vertex_id(&name).is_some() {
        i += 1;
        name = alloc::format!("{base}#{i}");
    }
    name
}

/// Returns the prepared graph, `v₀`, `v_D`, their distance and the names of
/// inserted vertices.
pub fn choose_endpoints(
    g: &MetricGraph,
    mode: Mode,
) -> Result<(MetricGraph, VertexId, VertexId, f64, Vec<String>), ReductionError> {
    match mode {
        Mode::Combinatorial => {
            let (d, a, b) = g.combinatorial_diameter()?;
            if !(d > 0.0) {
                return Err(GraphError::Degenerate.into());
            }
            Ok((g.clone(), a, b, d, Vec::new()))
        }
        Mode::Metric => {
            let diam = g.diameter();
            let (p, q) = diam.endpoints;
            let mut graph = g.clone();
            let mut inserted = Vec::new();
            let first = match p.canonical(g)? {
                PointLocation::Vertex(v) => v,
                PointLocation::Interior { edge, offset } => {
                    let name = fresh_name(&graph, "x");
                    let (ng, v) = graph.split_edge(edge, offset, &name)?;
                    graph = ng;
                    inserted.push(name);
                    v
                }
            };
            // q's edge index and offset shift if p's edge was split before it
            let second = match q.canonical(g)? {
                PointLocation::Vertex(v) => v,
                PointLocation::Interior { edge, offset } => {
                    let (edge, offset) = match p.canonical(g)? {
                        PointLocation::Interior { edge: pe, offset: po } if pe == edge => {
                            if offset > po {
                                (edge + 1, offset - po)
                            } else {
                                (edge, offset)
                            }
                        }
                        PointLocation::Interior { edge: pe, .. } if pe < edge => (edge + 1, offset),
                        _ => (edge, offset),
                    };
                    let name = fresh_name(&graph, "y");
                    let (ng, v) = graph.split_edge(edge, offset, &name)?;
                    graph = ng;
                    inserted.push(name);
                    v
                }
            };
            if first == second {
                return Err(GraphError::Degenerate.into());
            }
            let (a, b) = if first < second {
                (first, second)
            } else {
                (second, first)
            };
            Ok((graph, a, b, diam.value, inserted))
        }
    }
}

fn adjacency(g: &MetricGraph) -> Vec<Vec<(EdgeId, VertexId)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (id, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        adj[e.from].push((id, e.to));
        adj[e.to].push((id, e.from));
    }
    adj
}

/// Edges lying on at least one simple path from `s` to `t`: those in the
/// biconnected block of `g + st`.
pub fn useful_edges(g: &MetricGraph, s: VertexId, t: VertexId) -> Vec<bool> {
    let m = g.edge_count();
    let virtual_edge = m;
    let mut adj = adjacency(g);
    adj[s].push((virtual_edge, t));
    adj[t].push((virtual_edge, s));
    let n = g.vertex_count();
    const UNSET: usize = usize::MAX;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    // (vertex, edge used to enter it, next adjacency index)
    let mut stack: Vec<(VertexId, usize, usize)> = vec![(s, UNSET, 0)];
    disc[s] = timer;
    low[s] = timer;
    timer += 1;
    let mut useful = vec![false; m];
    while let Some(&mut (v, parent_edge, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let (e, w) = adj[v][*idx];
            *idx += 1;
            if e == parent_edge {
                continue;
            }
            if disc[w] == UNSET {
                edge_stack.push(e);
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, e, 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == parent_edge {
                            break;
                        }
                    }
                    if block.contains(&virtual_edge) {
                        for e in block {
                            if e != virtual_edge {
                                useful[e] = true;
                            }
                        }
                    }
                }
            }
        }
    }
    useful
}

struct PathSearch<'a> {
    g: &'a MetricGraph,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
    tol: f64,
}

impl PathSearch<'_> {
    /// Lexicographically smallest (by edge ids) shortest path avoiding the
    /// given vertices and edges.
    fn shortest(
        &self,
        s: VertexId,
        t: VertexId,
        banned_vertices: &[bool],
        banned_edges: &[bool],
    ) -> Option<GraphPath> {
        let n = self.g.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        let mut rank = vec![usize::MAX; n];
        let mut settled = 0;
        dist[t] = 0.0;
        // dense Dijkstra from the target
        loop {
            let mut u = usize::MAX;
            for v in 0..n {
                if !done[v] && !banned_vertices[v] && dist[v].is_finite() && (u == usize::MAX || dist[v] < dist[u]) {
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            rank[u] = settled;
            settled += 1;
            for &(e, w) in &self.adj[u] {
                if banned_edges[e] || banned_vertices[w] {
                    continue;
                }
                let nd = dist[u] + self.g.edges()[e].length;
                if nd < dist[w] {
                    dist[w] = nd;
                }
            }
        }
        if !dist[s].is_finite() {
            return None;
        }
        let mut path = GraphPath {
            edges: Vec::new(),
            vertices: vec![s],
            length: 0.0,
        };
        let mut visited = vec![false; n];
        visited[s] = true;
        let mut u = s;
        while u != t {
            let mut choice: Option<(EdgeId, VertexId)> = None;
            for &(e, w) in &self.adj[u] {
                if banned_edges[e] || banned_vertices[w] || visited[w] {
                    continue;
                }
                let len = self.g.edges()[e].length;
                // stepping only to vertices settled earlier keeps very short
                // edges from being tight in both directions
                if rank[w] < rank[u] && (len + dist[w] - dist[u]).abs() <= self.tol && choice.is_none_or(|(ce, _)| e < ce) {
                    choice = Some((e, w));
                }
            }
            let (e, w) = choice?;
            path.edges.push(e);
            path.vertices.push(w);
            path.length += self.g.edges()[e].length;
            visited[w] = true;
            u = w;
        }
        Some(path)
    }
}

fn pick_next(candidates: &mut Vec<GraphPath>, tol: f64) -> Option<GraphPath> {
    let min = candidates.iter().map(|p| p.length).fold(f64::INFINITY, f64::min);
    let best = candidates
        .iter()
        .enumerate()
        .filter(|(_, p)| p.length <= min + tol)
        .min_by(|(_, a), (_, b)| a.edges.cmp(&b.edges))
        .map(|(i, _)| i)?;
    Some(candidates.swap_remove(best))
}

/// Simple `v₀`–`v_D` paths in nondecreasing length order (ties broken by the
/// lexicographic order of edge ids), keeping those that add an edge, until
/// every useful edge is covered.
pub fn enumerate_paths(g: &MetricGraph, v0: VertexId, vd: VertexId) -> Result<Vec<GraphPath>, ReductionError> {
    if v0 == vd {
        return Err(GraphError::SameVertex.into());
    }
    let tol = 1e-12 * g.total_length();
    let search = PathSearch {
        g,
        adj: adjacency(g),
        tol,
    };
    let n = g.vertex_count();
    let m = g.edge_count();
    let useful = useful_edges(g, v0, vd);
    let mut covered = vec![false; m];
    let mut uncovered = useful.iter().filter(|&&u| u).count();
    let first = search
        .shortest(v0, vd, &vec![false; n], &vec![false; m])
        .ok_or(GraphError::Disconnected)?;
    let mut produced: Vec<GraphPath> = Vec::new();
    let mut seen: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    let mut candidates: Vec<GraphPath> = Vec::new();
    let mut kept = Vec::new();
    let mut next = Some(first);
    while let Some(path) = next.take() {
        seen.insert(path.edges.clone());
        if path.edges.iter().any(|&e| !covered[e]) {
            for &e in &path.edges {
                if !covered[e] {
                    covered[e] = true;
                    if useful[e] {
                        uncovered -= 1;
                    }
                }
            }
            kept.push(path.clone());
        }
        if uncovered == 0 {
            break;
        }
        produced.push(path);
        if produced.len() >= MAX_PATHS {
            return Err(ReductionError::PathLimit(produced.len()));
        }
        let last = produced.last().expect("just pushed");
        for i in 0..last.edges.len() {
            let spur = last.vertices[i];
            let root = &last.edges[..i];
            let mut banned_edges = vec![false; m];
            for p in &produced {
                if p.edges.len() > i && p.edges[..i] == *root {
                    banned_edges[p.edges[i]] = true;
                }
            }
            let mut banned_vertices = vec![false; n];
            for &v in &last.vertices[..i] {
                banned_vertices[v] = true;
            }
            if let Some(tail) = search.shortest(spur, vd, &banned_vertices, &banned_edges) {
                let mut edges = root.to_vec();
                edges.extend_from_slice(&tail.edges);
                if seen.contains(&edges) {
                    continue;
                }
                let mut vertices = last.vertices[..i].to_vec();
                vertices.extend_from_slice(&tail.vertices);
                let length = edges.iter().map(|&e| g.edges()[e].length).sum();
                seen.insert(edges.clone());
                candidates.push(GraphPath {
                    edges,
                    vertices,
                    length,
                });
            }
        }
        next = pick_next(&mut candidates, tol);
    }
    Ok(kept)
}

/// Union of the kept paths, with paths re-indexed into it. Fails if some
/// discarded component touches the union at more than one vertex.
pub fn prune_to_union(
    g: &MetricGraph,
    paths: &[GraphPath],
) -> Result<(MetricGraph, Vec<GraphPath>), ReductionError> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut in_union = vec![false; m];
    let mut on_union = vec![false; n];
    for p in paths {
        for &e in &p.edges {
            in_union[e] = true;
        }
        for &v in &p.vertices {
            on_union[v] = true;
        }
    }
    // components of what is left, joined only through vertices off the union
    let mut uf = UnionFind::new(n + m);
    for (id, e) in g.edges().iter().enumerate() {
        if in_union[id] {
            continue;
        }
        for v in [e.from, e.to] {
            if !on_union[v] {
                uf.union(n + id, v);
            }
        }
    }
    let mut contacts: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n + m];
    for (id, e) in g.edges().iter().enumerate() {
        if in_union[id] {
            continue;
        }
        let root = uf.find(n + id);
        for v in [e.from, e.to] {
            if on_union[v] {
                contacts[root].insert(v);
            }
        }
    }
    if contacts.iter().any(|c| c.len() > 1) {
        return Err(ReductionError::PruneViolation);
    }
    let mut remap = vec![usize::MAX; n];
    let mut names = Vec::new();
    for v in 0..n {
        if on_union[v] {
            remap[v] = names.len();
            names.push(g.vertices()[v].clone());
        }
    }
    let mut edge_remap = vec![usize::MAX; m];
    let mut edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if in_union[id] {
            edge_remap[id] = edges.len();
            let mut e = e.clone();
            e.from = remap[e.from];
            e.to = remap[e.to];
            edges.push(e);
        }
    }
    let pruned = MetricGraph::new(names, edges)?;
    let paths = paths
        .iter()
        .map(|p| GraphPath {
            edges: p.edges.iter().map(|&e| edge_remap[e]).collect(),
            vertices: p.vertices.iter().map(|&v| remap[v]).collect(),
            length: p.length,
        })
        .collect();
    Ok((pruned, paths))
}

/// Shortens edges first used by each path so that every path has length `D`
/// and arclength from `v₀` is the same along every path through a vertex.
///
/// Along path `i`, the stretches of new edges between vertices whose level is
/// already known are each scaled to span exactly their level difference.
/// Returns the shortened edges and the level of every vertex.
pub fn equalize_path_lengths(
    g: &MetricGraph,
    paths: &[GraphPath],
    distance: f64,
) -> Result<(Vec<LeveledEdge>, Vec<f64>), ReductionError> {
    let tol = 1e-9 * distance;
    let mut level: Vec<Option<f64>> = vec![None; g.vertex_count()];
    let mut lengths: Vec<f64> = g.edges().iter().map(|e| e.length).collect();
    let mut known = vec![false; g.edge_count()];
    for (index, p) in paths.iter().enumerate() {
        let path_no = index + 1;
        if index == 0 {
            let mut x = 0.0;
            level[p.vertices[0]] = Some(0.0);
            for (k, &e) in p.edges.iter().enumerate() {
                x += lengths[e];
                let v = p.vertices[k + 1];
                level[v] = Some(if k + 1 == p.edges.len() { distance } else { x });
                known[e] = true;
            }
            continue;
        }
        let mut a = 0;
        while a < p.edges.len() {
            let mut b = a + 1;
            while level[p.vertices[b]].is_none() {
                b += 1;
            }
            let from = level[p.vertices[a]].expect("anchor level is known");
            let to = level[p.vertices[b]].expect("anchor level is known");
            let run = &p.edges[a..b];
            if b == a + 1 && known[run[0]] {
                if ((to - from) - lengths[run[0]]).abs() > tol {
                    return Err(ReductionError::InconsistentLevels { path: path_no });
                }
            } else {
                let target = to - from;
                if target < -tol {
                    return Err(ReductionError::NonMonotone { path: path_no });
                }
                let target = target.max(0.0);
                let total: f64 = run.iter().map(|&e| lengths[e]).sum();
                if target > total + tol {
                    return Err(ReductionError::LengthDeficit { path: path_no });
                }
                let scale = if total > 0.0 { (target / total).min(1.0) } else { 0.0 };
                let mut x = from;
                for (k, &e) in run.iter().enumerate() {
                    lengths[e] *= scale;
                    known[e] = true;
                    x += lengths[e];
                    if a + k + 1 < b {
                        level[p.vertices[a + k + 1]] = Some(x);
                    }
                }
            }
            a = b;
        }
    }
    let levels = level
        .into_iter()
        .map(|l| l.expect("every vertex of the union lies on a path"))
        .collect();
    let edges = g
        .edges()
        .iter()
        .zip(lengths)
        .map(|(e, length)| LeveledEdge {
            name: e.name.clone(),
            from: e.from,
            to: e.to,
            length,
        })
        .collect();
    Ok((edges, levels))
}

/// Levels `f(v) = min(dist(v₀, v), D)` with every edge shortened to
/// `|f(u) − f(v)|`. Since `f` is 1-Lipschitz this only shortens edges, the
/// shortest path keeps its length, and the levels are consistent by
/// construction.
pub fn equalize_by_distance(g: &MetricGraph, v0: VertexId, distance: f64) -> (Vec<LeveledEdge>, Vec<f64>) {
    let table = g.vertex_distances();
    let levels: Vec<f64> = (0..g.vertex_count())
        .map(|v| table.get(v0, v).min(distance))
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| LeveledEdge {
            name: e.name.clone(),
            from: e.from,
            to: e.to,
            length: (levels[e.to] - levels[e.from]).abs().min(e.length),
        })
        .collect();
    (edges, levels)
}

/// Distinct levels, merging values closer than `1e−9·D` and snapping the
/// ends to exactly 0 and `D`. Every path gets a vertex at each of them when
/// the pumpkins are formed.
pub fn synchronize_levels(vertex_levels: &[f64], distance: f64) -> Vec<f64> {
    let tol = 1e-9 * distance;
    let mut sorted: Vec<f64> = vertex_levels.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut levels: Vec<f64> = Vec::new();
    for x in sorted {
        match levels.last() {
            Some(&last) if x - last <= tol => {}
            _ => levels.push(x),
        }
    }
    if let Some(first) = levels.first_mut() {
        *first = 0.0;
    }
    while levels.len() > 1 && distance - levels[levels.len() - 1] <= tol {
        levels.pop();
    }
    levels.push(distance);
    levels
}

fn level_index(levels: &[f64], x: f64) -> usize {
    let i = levels.partition_point(|&l| l < x);
    match (i.checked_sub(1), levels.get(i)) {
        (Some(j), Some(&hi)) => {
            if (x - levels[j]).partial_cmp(&(hi - x)) == Some(Ordering::Less) {
                j
            } else {
                i
            }
        }
        (Some(j), None) => j,
        (None, _) => 0,
    }
}

/// Glues vertices of equal level; each gap between consecutive levels becomes
/// a pumpkin whose multiplicity is the number of edges crossing it.
pub fn collapse_levels(edges: &[LeveledEdge], vertex_levels: &[f64], levels: &[f64]) -> PumpkinChain {
    let gaps = levels.len() - 1;
    let mut counts = vec![0u64; gaps];
    for e in edges {
        let a = level_index(levels, vertex_levels[e.from]);
        let b = level_index(levels, vertex_levels[e.to]);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for c in &mut counts[lo..hi] {
            *c += 1;
        }
    }
    let segments = (0..gaps)
        .map(|i| Segment::new(levels[i + 1] - levels[i], BigUint::from(counts[i])))
        .collect();
    PumpkinChain::new(segments).expect("every gap is crossed by the first path")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn useful_edges_skip_pendants_and_loops() {
        // a - b - c with a pendant b - d and a loop at c
        let g = MetricGraph::from_named(
            &["a", "b", "c", "d"],
            &[
                ("e0", "a", "b", 1.0),
                ("e1", "b", "c", 1.0),
                ("e2", "b", "d", 1.0),
                ("e3", "c", "c", 1.0),
            ],
        )
        .unwrap();
        assert_eq!(useful_edges(&g, 0, 2), vec![true, true, false, false]);
    }

    #[test]
    fn useful_edges_in_a_cycle_with_tail() {
        // square a-b-c-d-a with a tail d-e; s = a, t = e
        let g = MetricGraph::from_named(
            &["a", "b", "c", "d", "e"],
            &[
                ("e0", "a", "b", 1.0),
                ("e1", "b", "c", 1.0),
                ("e2", "c", "d", 1.0),
                ("e3", "d", "a", 1.0),
                ("e4", "d", "e", 1.0),
            ],
        )
        .unwrap();
        assert_eq!(useful_edges(&g, 0, 4), vec![true, true, true, true, true]);
    }

    #[test]
    fn level_clustering() {
        let l = synchronize_levels(&[0.0, 1.0, 0.5, 0.5 + 1e-12, 2.0 - 1e-13], 2.0);
        assert_eq!(l, vec![0.0, 0.5, 1.0, 2.0]);
    }

    #[test]
    fn lex_tie_break_between_equal_paths() {
        let g = MetricGraph::pumpkin(3, 1.0).unwrap();
        let paths = enumerate_paths(&g, 0, 1).unwrap();
        let ids: Vec<_> = paths.iter().map(|p| p.edges.clone()).collect();
        assert_eq!(ids, vec![vec![0], vec![1], vec![2]]);
    }
}
