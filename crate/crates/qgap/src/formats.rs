//! JSON file formats for graphs, chains and reduction traces.
//!
//! Graph files list vertex ids and edges by endpoint ids; chain files list
//! segments with multiplicities as decimal strings, since they routinely
//! exceed 64 bits.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use qgap_core::graph::Edge;
use qgap_core::reduction::{Mode, ReductionTrace};
use qgap_core::{BigUint, MetricGraph, PumpkinChain, Segment};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub from: String,
    pub to: String,
    pub length: f64,
}

impl GraphFile {
    pub fn from_graph(g: &MetricGraph) -> Self {
        let names = g.vertices();
        GraphFile {
            vertices: names.to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.name.clone(),
                    from: names[e.from].clone(),
                    to: names[e.to].clone(),
                    length: e.length,
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<MetricGraph> {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |edge: &str, v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::Validation(format!("edge `{edge}`: unknown vertex `{v}`")))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push(Edge {
                name: e.id.clone(),
                from: lookup(&e.id, &e.from)?,
                to: lookup(&e.id, &e.to)?,
                length: e.length,
            });
        }
        Ok(MetricGraph::new(self.vertices.clone(), edges)?)
    }
}

/// Serde adapter for multiplicities: a string of ASCII digits, never a JSON
/// number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal(pub BigUint);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Decimal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a multiplicity as a string of decimal digits")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Decimal, E> {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::invalid_value(de::Unexpected::Str(s), &self));
                }
                BigUint::from_str(s)
                    .map(Decimal)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(s), &self))
            }
        }
        d.deserialize_str(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub segments: Vec<SegmentRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentRecord {
    pub length: f64,
    pub multiplicity: Decimal,
}

impl ChainFile {
    pub fn from_chain(c: &PumpkinChain) -> Self {
        ChainFile {
            segments: c
                .segments()
                .iter()
                .map(|s| SegmentRecord {
                    length: s.length,
                    multiplicity: Decimal(s.multiplicity.clone()),
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<PumpkinChain> {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment::new(s.length, s.multiplicity.0.clone()))
            .collect();
        Ok(PumpkinChain::new(segments)?)
    }
}

/// A parsed input file of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Graph(MetricGraph),
    Chain(PumpkinChain),
}

fn parse_as<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::json(origin, &e))
}

pub fn parse_graph(text: &str, origin: &str) -> Result<MetricGraph> {
    parse_as::<GraphFile>(text, origin)?.to_graph()
}

pub fn parse_chain(text: &str, origin: &str) -> Result<PumpkinChain> {
    parse_as::<ChainFile>(text, origin)?.to_chain()
}

/// Chain files are recognized by a top-level `segments` key.
pub fn parse_input(text: &str, origin: &str) -> Result<Input> {
    let value: serde_json::Value = parse_as(text, origin)?;
    if value.get("segments").is_some() {
        parse_chain(text, origin).map(Input::Chain)
    } else {
        parse_graph(text, origin).map(Input::Graph)
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&read_text(path)?, &path.display().to_string())
}

pub fn read_graph(path: &Path) -> Result<MetricGraph> {
    parse_graph(&read_text(path)?, &path.display().to_string())
}

pub fn read_chain(path: &Path) -> Result<PumpkinChain> {
    parse_chain(&read_text(path)?, &path.display().to_string())
}

/// Pretty JSON with a trailing newline. Field order follows the struct
/// definitions, so equal values give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct PathRecord {
    pub edges: Vec<String>,
    pub vertices: Vec<String>,
    pub length: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRecord {
    pub vertex: String,
    pub level: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualizedRecord {
    pub id: String,
    pub from: String,
    pub to: String,
    pub original_length: f64,
    pub length: f64,
}

/// Everything needed to redraw the reduction: endpoints, kept paths, the
/// shortened edges with vertex levels, and the resulting chain.
#[derive(Debug, Clone, Serialize)]
pub struct TraceFile {
    pub mode: &'static str,
    pub endpoints: [String; 2],
    pub inserted: Vec<String>,
    pub distance: f64,
    pub prepared: GraphFile,
    pub paths: Vec<PathRecord>,
    pub equalized: Vec<EqualizedRecord>,
    /// Set when per-path shortening was infeasible and distance levels were
    /// used instead.
    pub fallback: Option<String>,
    pub vertex_levels: Vec<LevelRecord>,
    pub levels: Vec<f64>,
    pub chain: ChainFile,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Metric => "metric",
        Mode::Combinatorial => "combinatorial",
    }
}

impl TraceFile {
    pub fn from_trace(t: &ReductionTrace) -> Self {
        let prepared = t.prepared.vertices();
        let pruned = t.pruned.vertices();
        let edge_names = t.prepared.edges();
        TraceFile {
            mode: mode_name(t.mode),
            endpoints: [t.endpoints.0.clone(), t.endpoints.1.clone()],
            inserted: t.inserted.clone(),
            distance: t.distance,
            prepared: GraphFile::from_graph(&t.prepared),
            paths: t
                .paths
                .iter()
                .map(|p| PathRecord {
                    edges: p.edges.iter().map(|&e| edge_names[e].name.clone()).collect(),
                    vertices: p.vertices.iter().map(|&v| prepared[v].clone()).collect(),
                    length: p.length,
                })
                .collect(),
            equalized: t
                .equalized
                .iter()
                .zip(t.pruned.edges())
                .map(|(e, orig)| EqualizedRecord {
                    id: e.name.clone(),
                    from: pruned[e.from].clone(),
                    to: pruned[e.to].clone(),
                    original_length: orig.length,
                    length: e.length,
                })
                .collect(),
            fallback: t.fallback.as_ref().map(|e| e.to_string()),
            vertex_levels: t
                .vertex_levels
                .iter()
                .enumerate()
                .map(|(v, &level)| LevelRecord {
                    vertex: pruned[v].clone(),
                    level,
                })
                .collect(),
            levels: t.levels.clone(),
            chain: ChainFile::from_chain(&t.chain),
        }
    }
}
