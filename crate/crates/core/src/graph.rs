//! Metric graphs: combinatorial multigraphs whose edges carry positive
//! lengths. Loops and parallel edges are allowed.
//!
//! Points of the graph are addressed by an edge and an offset measured from
//! the edge's `from` endpoint. Distances are path lengths in the length
//! space, so two points on the same edge may be joined directly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    NoEdges,
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex(String),
    UnknownEdge(String),
    InvalidLength { edge: String, length: f64 },
    OffsetOutOfRange { edge: String, offset: f64 },
    Disconnected,
    TooFewVertices,
    NotAPendant,
    SameVertex,
    /// The operation would leave a graph without edges.
    Degenerate,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NoEdges => write!(f, "graph has no edges"),
            GraphError::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            GraphError::DuplicateEdge(e) => write!(f, "duplicate edge id `{e}`"),
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            GraphError::UnknownEdge(e) => write!(f, "unknown edge `{e}`"),
            GraphError::InvalidLength { edge, length } => {
                write!(f, "edge `{edge}` has invalid length {length}")
            }
            GraphError::OffsetOutOfRange { edge, offset } => {
                write!(f, "offset {offset} lies outside edge `{edge}`")
            }
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::TooFewVertices => write!(f, "at least two vertices are required"),
            GraphError::NotAPendant => {
                write!(f, "edge set does not meet the rest of the graph at exactly one vertex")
            }
            GraphError::SameVertex => write!(f, "vertices to identify must be distinct"),
            GraphError::Degenerate => write!(f, "operation would leave a graph without edges"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub name: String,
    pub from: VertexId,
    pub to: VertexId,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// A compact connected metric graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A point of a metric graph: an edge and an offset from its `from` end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphPoint {
    pub edge: EdgeId,
    pub offset: f64,
}

/// Canonical form of a [`GraphPoint`]: endpoints of an edge collapse onto
/// the corresponding vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointLocation {
    Vertex(VertexId),
    Interior { edge: EdgeId, offset: f64 },
}

impl GraphPoint {
    pub fn new(edge: EdgeId, offset: f64) -> Self {
        GraphPoint { edge, offset }
    }

    /// A point sitting on vertex `v`, expressed through its first incident edge.
    pub fn at_vertex(g: &MetricGraph, v: VertexId) -> Result<Self, GraphError> {
        let (id, e) = g
            .edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.from == v || e.to == v)
            .ok_or_else(|| GraphError::UnknownVertex(format!("#{v}")))?;
        let offset = if e.from == v { 0.0 } else { e.length };
        Ok(GraphPoint { edge: id, offset })
    }

    pub fn canonical(&self, g: &MetricGraph) -> Result<PointLocation, GraphError> {
        let e = g.check_point(self)?;
        Ok(if self.offset <= 0.0 {
            PointLocation::Vertex(e.from)
        } else if self.offset >= e.length {
            PointLocation::Vertex(e.to)
        } else {
            PointLocation::Interior {
                edge: self.edge,
                offset: self.offset,
            }
        })
    }
}

/// All-pairs shortest path lengths between vertices.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    d: Vec<f64>,
}

impl DistanceTable {
    pub fn get(&self, a: VertexId, b: VertexId) -> f64 {
        self.d[a * self.n + b]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// The continuous diameter together with one pair of points realizing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diameter {
    pub value: f64,
    pub endpoints: (GraphPoint, GraphPoint),
}

/// Clamps an offset to `[0, len]`, rounding to an end when within rounding
/// error of it.
fn snap(t: f64, len: f64) -> f64 {
    let eps = 1e-12 * len;
    if t <= eps {
        0.0
    } else if t >= len - eps {
        len
    } else {
        t
    }
}

impl MetricGraph {
    /// Validates and builds a graph. Edge endpoints are indices into
    /// `vertices`.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|o| o.name == e.name) {
                return Err(GraphError::DuplicateEdge(e.name.clone()));
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(GraphError::InvalidLength {
                    edge: e.name.clone(),
                    length: e.length,
                });
            }
            for end in [e.from, e.to] {
                if end >= vertices.len() {
                    return Err(GraphError::UnknownVertex(format!("#{end}")));
                }
            }
        }
        let g = MetricGraph { vertices, edges };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from vertex names and `(edge, from, to, length)` tuples
    /// that refer to vertices by name.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str, &str, f64)]) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup = |n: &str| {
            names
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| GraphError::UnknownVertex(n.to_string()))
        };
        let mut es = Vec::with_capacity(edges.len());
        for &(name, a, b, length) in edges {
            es.push(Edge {
                name: name.to_string(),
                from: lookup(a)?,
                to: lookup(b)?,
                length,
            });
        }
        MetricGraph::new(names, es)
    }

    pub fn interval(length: f64) -> Result<Self, GraphError> {
        Self::from_named(&["v0", "v1"], &[("e0", "v0", "v1", length)])
    }

    /// A single loop at one vertex, i.e. a circle of the given circumference.
    pub fn circle(length: f64) -> Result<Self, GraphError> {
        Self::from_named(&["v0"], &[("e0", "v0", "v0", length)])
    }

    /// Path graph with the given consecutive edge lengths.
    pub fn path(lengths: &[f64]) -> Result<Self, GraphError> {
        let vertices = (0..=lengths.len()).map(|i| format!("v{i}")).collect();
        let edges = lengths
            .iter()
            .enumerate()
            .map(|(i, &length)| Edge {
                name: format!("e{i}"),
                from: i,
                to: i + 1,
                length,
            })
            .collect();
        MetricGraph::new(vertices, edges)
    }

    /// Equilateral pumpkin (dipole): `k` parallel edges of length `length`.
    pub fn pumpkin(k: usize, length: f64) -> Result<Self, GraphError> {
        let edges = (0..k)
            .map(|i| Edge {
                name: format!("e{i}"),
                from: 0,
                to: 1,
                length,
            })
            .collect();
        MetricGraph::new(vec!["v0".into(), "v1".into()], edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, GraphError> {
        self.edges
            .get(id)
            .ok_or_else(|| GraphError::UnknownEdge(format!("#{id}")))
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Total edge length ℓ(G).
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).fold(f64::INFINITY, f64::min)
    }

    /// Degree of a vertex; loops count twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.from == v) as usize + (e.to == v) as usize)
            .sum()
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        let root = uf.find(0);
        (1..n).all(|v| uf.find(v) == root)
    }

    fn check_point(&self, p: &GraphPoint) -> Result<&Edge, GraphError> {
        let e = self
            .edges
            .get(p.edge)
            .ok_or_else(|| GraphError::UnknownEdge(format!("#{}", p.edge)))?;
        if !(p.offset >= 0.0 && p.offset <= e.length) {
            return Err(GraphError::OffsetOutOfRange {
                edge: e.name.clone(),
                offset: p.offset,
            });
        }
        Ok(e)
    }

    /// Floyd–Warshall over the vertex set; parallel edges contribute their
    /// minimum, loops never shorten anything.
    pub fn vertex_distances(&self) -> DistanceTable {
        let n = self.vertices.len();
        let mut d = vec![f64::INFINITY; n * n];
        for v in 0..n {
            d[v * n + v] = 0.0;
        }
        for e in &self.edges {
            let (a, b) = (e.from, e.to);
            if e.length < d[a * n + b] {
                d[a * n + b] = e.length;
                d[b * n + a] = e.length;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if dik == f64::INFINITY {
                    continue;
                }
                for j in 0..n {
                    let via = dik + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        DistanceTable { n, d }
    }

    /// Length of the shortest path between two points of the graph.
    pub fn distance(&self, p: &GraphPoint, q: &GraphPoint) -> Result<f64, GraphError> {
        let table = self.vertex_distances();
        self.distance_with(&table, p, q)
    }

    /// [`distance`](Self::distance) reusing a precomputed vertex table.
    pub fn distance_with(
        &self,
        table: &DistanceTable,
        p: &GraphPoint,
        q: &GraphPoint,
    ) -> Result<f64, GraphError> {
        let ep = self.check_point(p)?;
        let eq = self.check_point(q)?;
        let rp = [(ep.from, p.offset), (ep.to, ep.length - p.offset)];
        let rq = [(eq.from, q.offset), (eq.to, eq.length - q.offset)];
        let mut best = f64::INFINITY;
        for &(a, da) in &rp {
            for &(b, db) in &rq {
                best = best.min(da + table.get(a, b) + db);
            }
        }
        if p.edge == q.edge {
            best = best.min((p.offset - q.offset).abs());
        }
        Ok(best)
    }

    /// Continuous diameter: the supremum of distances over all pairs of
    /// points, including edge interiors.
    ///
    /// On each pair of edges the distance is the minimum of a handful of
    /// affine functions of the two offsets, so the maximum sits at a vertex
    /// of their arrangement. All such vertices are enumerated exactly.
    pub fn diameter(&self) -> Diameter {
        let table = self.vertex_distances();
        let mut best = Diameter {
            value: -1.0,
            endpoints: (GraphPoint::new(0, 0.0), GraphPoint::new(0, 0.0)),
        };
        let m = self.edges.len();
        for i in 0..m {
            for j in i..m {
                let (value, t, s) = self.edge_pair_max(&table, i, j);
                if value > best.value {
                    best = Diameter {
                        value,
                        endpoints: (GraphPoint::new(i, t), GraphPoint::new(j, s)),
                    };
                }
            }
        }
        best
    }

    fn edge_pair_max(&self, table: &DistanceTable, i: EdgeId, j: EdgeId) -> (f64, f64, f64) {
        let ei = &self.edges[i];
        let ej = &self.edges[j];
        let (li, lj) = (ei.length, ej.length);
        // distance from the point at offset t to each endpoint, as affine maps
        let to_i = [(ei.from, 1.0, 0.0), (ei.to, -1.0, li)];
        let to_j = [(ej.from, 1.0, 0.0), (ej.to, -1.0, lj)];
        let mut funcs: Vec<Affine> = Vec::with_capacity(5);
        for &(a, at, ac) in &to_i {
            for &(b, bs, bc) in &to_j {
                funcs.push(Affine::new(at, bs, ac + bc + table.get(a, b)));
            }
        }
        let region = if i == j {
            // by symmetry only t <= s is needed; there the direct segment is s - t
            funcs.push(Affine::new(-1.0, 1.0, 0.0));
            vec![
                Affine::new(1.0, 0.0, 0.0),
                Affine::new(-1.0, 1.0, 0.0),
                Affine::new(0.0, -1.0, li),
            ]
        } else {
            vec![
                Affine::new(1.0, 0.0, 0.0),
                Affine::new(-1.0, 0.0, li),
                Affine::new(0.0, 1.0, 0.0),
                Affine::new(0.0, -1.0, lj),
            ]
        };
        let scale = li.max(lj);
        let (v, t, s) = max_of_min(&funcs, &region, scale);
        (v, snap(t, li), snap(s, lj))
    }

    /// Largest shortest-path distance between two vertices, with the
    /// (lexicographically first) pair realizing it.
    pub fn combinatorial_diameter(&self) -> Result<(f64, VertexId, VertexId), GraphError> {
        let n = self.vertices.len();
        if n < 2 {
            return Err(GraphError::TooFewVertices);
        }
        let table = self.vertex_distances();
        let mut best = (-1.0, 0, 1);
        for a in 0..n {
            for b in a + 1..n {
                let d = table.get(a, b);
                if d > best.0 {
                    best = (d, a, b);
                }
            }
        }
        Ok(best)
    }

    /// Removes a pendant: the given edges must meet the remaining edges in
    /// exactly one vertex. Vertices left without edges disappear.
    pub fn cut_pendant(&self, pendant: &[EdgeId]) -> Result<MetricGraph, GraphError> {
        let mut in_pendant = vec![false; self.edges.len()];
        for &e in pendant {
            self.edge(e)?;
            in_pendant[e] = true;
        }
        let n = self.vertices.len();
        let mut touches_pendant = vec![false; n];
        let mut touches_rest = vec![false; n];
        for (id, e) in self.edges.iter().enumerate() {
            let mark = if in_pendant[id] {
                &mut touches_pendant
            } else {
                &mut touches_rest
            };
            mark[e.from] = true;
            mark[e.to] = true;
        }
        if !touches_rest.iter().any(|&t| t) {
            return Err(GraphError::Degenerate);
        }
        let shared = (0..n).filter(|&v| touches_pendant[v] && touches_rest[v]).count();
        if shared != 1 {
            return Err(GraphError::NotAPendant);
        }
        let keep_edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, _)| !in_pendant[*id])
            .map(|(_, e)| e.clone())
            .collect();
        rebuild(&self.vertices, &touches_rest, keep_edges)
    }

    /// Sets an edge's length to `new_length <= length`. Length zero contracts
    /// the edge, merging its endpoints.
    pub fn shorten_edge(&self, edge: EdgeId, new_length: f64) -> Result<MetricGraph, GraphError> {
        let e = self.edge(edge)?;
        if !(new_length >= 0.0 && new_length <= e.length) {
            return Err(GraphError::InvalidLength {
                edge: e.name.clone(),
                length: new_length,
            });
        }
        if new_length > 0.0 {
            let mut g = self.clone();
            g.edges[edge].length = new_length;
            return Ok(g);
        }
        let (a, b) = (e.from, e.to);
        let mut edges = self.edges.clone();
        edges.remove(edge);
        if edges.is_empty() {
            return Err(GraphError::Degenerate);
        }
        if a == b {
            let keep = vec![true; self.vertices.len()];
            return rebuild(&self.vertices, &keep, edges);
        }
        merge_vertices(&self.vertices, edges, a, b)
    }

    /// Glues vertex `b` onto vertex `a`; the merged vertex keeps `a`'s name.
    pub fn identify_vertices(&self, a: VertexId, b: VertexId) -> Result<MetricGraph, GraphError> {
        let n = self.vertices.len();
        for v in [a, b] {
            if v >= n {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
        }
        if a == b {
            return Err(GraphError::SameVertex);
        }
        merge_vertices(&self.vertices, self.edges.clone(), a, b)
    }

    /// Inserts a degree-two vertex named `name` at an interior point of an
    /// edge. The edge is replaced by `<edge>/0` (kept at the same index)
    /// followed by `<edge>/1`. Returns the new graph and the new vertex.
    pub fn split_edge(
        &self,
        edge: EdgeId,
        offset: f64,
        name: &str,
    ) -> Result<(MetricGraph, VertexId), GraphError> {
        let e = self.edge(edge)?.clone();
        if !(offset > 0.0 && offset < e.length) {
            return Err(GraphError::OffsetOutOfRange {
                edge: e.name,
                offset,
            });
        }
        if self.vertex_id(name).is_some() {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(name.to_string());
        let mid = vertices.len() - 1;
        let mut edges = self.edges.clone();
        edges[edge] = Edge {
            name: format!("{}/0", e.name),
            from: e.from,
            to: mid,
            length: offset,
        };
        edges.insert(
            edge + 1,
            Edge {
                name: format!("{}/1", e.name),
                from: mid,
                to: e.to,
                length: e.length - offset,
            },
        );
        Ok((MetricGraph::new(vertices, edges)?, mid))
    }
}

fn merge_vertices(
    vertices: &[String],
    mut edges: Vec<Edge>,
    keep: VertexId,
    gone: VertexId,
) -> Result<MetricGraph, GraphError> {
    for e in edges.iter_mut() {
        if e.from == gone {
            e.from = keep;
        }
        if e.to == gone {
            e.to = keep;
        }
    }
    let mut mask = vec![true; vertices.len()];
    mask[gone] = false;
    rebuild(vertices, &mask, edges)
}

/// Drops vertices outside `keep` and renumbers edge endpoints.
fn rebuild(vertices: &[String], keep: &[bool], mut edges: Vec<Edge>) -> Result<MetricGraph, GraphError> {
    let mut remap = vec![usize::MAX; vertices.len()];
    let mut names = Vec::new();
    for (v, name) in vertices.iter().enumerate() {
        if keep[v] {
            remap[v] = names.len();
            names.push(name.clone());
        }
    }
    for e in edges.iter_mut() {
        e.from = remap[e.from];
        e.to = remap[e.to];
    }
    MetricGraph::new(names, edges)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// `t·x + s·y + c`
#[derive(Debug, Clone, Copy)]
struct Affine {
    t: f64,
    s: f64,
    c: f64,
}

impl Affine {
    fn new(t: f64, s: f64, c: f64) -> Self {
        Affine { t, s, c }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.t * x + self.s * y + self.c
    }

    fn minus(&self, o: &Affine) -> Affine {
        Affine::new(self.t - o.t, self.s - o.s, self.c - o.c)
    }
}

/// Maximum over the polygon `{region_k >= 0}` of `min_i funcs_i`.
///
/// The objective is concave and piecewise affine, so its maximum is attained
/// at an intersection of two lines drawn from the pairwise equalities
/// `funcs_i = funcs_j` and the polygon's sides.
fn max_of_min(funcs: &[Affine], region: &[Affine], scale: f64) -> (f64, f64, f64) {
    let mut lines: Vec<Affine> = region.to_vec();
    for i in 0..funcs.len() {
        for j in i + 1..funcs.len() {
            let l = funcs[i].minus(&funcs[j]);
            if l.t != 0.0 || l.s != 0.0 {
                lines.push(l);
            }
        }
    }
    let eps = 1e-12 * scale.max(1.0);
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let (p, q) = (&lines[a], &lines[b]);
            let det = p.t * q.s - q.t * p.s;
            if det.abs() <= 1e-14 {
                continue;
            }
            let x = (-p.c * q.s + q.c * p.s) / det;
            let y = (-p.t * q.c + q.t * p.c) / det;
            if region.iter().any(|r| r.eval(x, y) < -eps) {
                continue;
            }
            let v = funcs
                .iter()
                .map(|f| f.eval(x, y))
                .fold(f64::INFINITY, f64::min);
            if v > best.0 {
                best = (v, x, y);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MetricGraph {
        MetricGraph::from_named(
            &["A", "B", "C"],
            &[("ab", "A", "B", 5.0), ("bc", "B", "C", 3.0), ("ca", "C", "A", 4.0)],
        )
        .unwrap()
    }

    #[test]
    fn direct_edge_beats_detour() {
        let g = triangle();
        let a = GraphPoint::new(0, 0.0);
        let b = GraphPoint::new(0, 5.0);
        assert_eq!(g.distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn circle_metric_on_loop() {
        let g = MetricGraph::circle(3.0).unwrap();
        let p = GraphPoint::new(0, 0.5);
        let q = GraphPoint::new(0, 2.7);
        let d = g.distance(&p, &q).unwrap();
        assert!((d - 0.8).abs() < 1e-12);
    }

    #[test]
    fn diameter_of_interval_and_circle() {
        let d = MetricGraph::interval(2.5).unwrap().diameter();
        assert_eq!(d.value, 2.5);
        let d = MetricGraph::circle(3.0).unwrap().diameter();
        assert!((d.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn combinatorial_diameters() {
        assert_eq!(triangle().combinatorial_diameter().unwrap(), (5.0, 0, 1));
        assert_eq!(MetricGraph::path(&[1.0, 1.0]).unwrap().combinatorial_diameter().unwrap().0, 2.0);
        assert_eq!(MetricGraph::pumpkin(4, 1.5).unwrap().combinatorial_diameter().unwrap().0, 1.5);
        assert_eq!(
            MetricGraph::circle(1.0).unwrap().combinatorial_diameter(),
            Err(GraphError::TooFewVertices)
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            MetricGraph::from_named(&["a", "b", "c"], &[("e", "a", "b", 1.0)]),
            Err(GraphError::Disconnected)
        );
        assert!(matches!(
            MetricGraph::from_named(&["a", "b"], &[("e", "a", "b", 0.0)]),
            Err(GraphError::InvalidLength { .. })
        ));
        assert!(matches!(
            MetricGraph::from_named(&["a", "b"], &[("e", "a", "x", 1.0)]),
            Err(GraphError::UnknownVertex(_))
        ));
        let g = MetricGraph::interval(1.0).unwrap();
        assert!(matches!(
            g.distance(&GraphPoint::new(3, 0.0), &GraphPoint::new(0, 0.0)),
            Err(GraphError::UnknownEdge(_))
        ));
    }

    #[test]
    fn canonical_points() {
        let g = MetricGraph::interval(1.0).unwrap();
        assert_eq!(GraphPoint::new(0, 0.0).canonical(&g).unwrap(), PointLocation::Vertex(0));
        assert_eq!(GraphPoint::new(0, 1.0).canonical(&g).unwrap(), PointLocation::Vertex(1));
        assert!(matches!(
            GraphPoint::new(0, 0.3).canonical(&g).unwrap(),
            PointLocation::Interior { .. }
        ));
    }

    #[test]
    fn surgeries() {
        let g = MetricGraph::interval(2.0).unwrap();
        let loop_g = g.identify_vertices(0, 1).unwrap();
        assert_eq!(loop_g.vertex_count(), 1);
        assert!(loop_g.edges()[0].is_loop());

        let p = MetricGraph::path(&[1.0, 2.0]).unwrap();
        let cut = p.cut_pendant(&[1]).unwrap();
        assert_eq!(cut.vertex_count(), 2);
        assert_eq!(cut.total_length(), 1.0);
        assert_eq!(p.cut_pendant(&[0, 1]), Err(GraphError::Degenerate));

        let t = triangle();
        assert_eq!(t.cut_pendant(&[0]), Err(GraphError::NotAPendant));
        let s = t.shorten_edge(0, 2.0).unwrap();
        assert_eq!(s.edges()[0].length, 2.0);
        assert!(t.shorten_edge(0, 6.0).is_err());
        let c = t.shorten_edge(0, 0.0).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (2, 2));
        assert_eq!(t.identify_vertices(1, 1), Err(GraphError::SameVertex));
    }

    #[test]
    fn split_keeps_lengths() {
        let t = triangle();
        let (g, v) = t.split_edge(0, 2.0, "m").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(v), 2);
        assert_eq!(g.edges()[0].length, 2.0);
        assert_eq!(g.edges()[1].length, 3.0);
        assert_eq!(g.total_length(), t.total_length());
    }
}
