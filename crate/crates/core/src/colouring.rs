//! Vertex and edge colourings, the suitability predicates and normalisation.
//!
//! A colouring is *suitable* for a [`Mode`] when it is distinguishing and,
//! in the proper modes, also proper. Colours are non-negative integers and
//! their natural order is the well-order the reduction engine scans in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aut::{self, AutQuery, Constraint};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColourId(pub u32);

impl From<u32> for ColourId {
    fn from(v: u32) -> Self {
        ColourId(v)
    }
}

impl fmt::Display for ColourId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What a colouring assigns colours to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Vertex,
    Edge,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Vertex => "vertex",
            Target::Edge => "edge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Properness {
    Plain,
    Proper,
}

/// One of the four suitability notions: (proper) distinguishing vertex (edge) colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mode {
    pub target: Target,
    pub properness: Properness,
}

impl Mode {
    pub const VERTEX: Mode = Mode::new(Target::Vertex, Properness::Plain);
    pub const VERTEX_PROPER: Mode = Mode::new(Target::Vertex, Properness::Proper);
    pub const EDGE: Mode = Mode::new(Target::Edge, Properness::Plain);
    pub const EDGE_PROPER: Mode = Mode::new(Target::Edge, Properness::Proper);
    pub const ALL: [Mode; 4] = [
        Mode::VERTEX,
        Mode::EDGE,
        Mode::VERTEX_PROPER,
        Mode::EDGE_PROPER,
    ];

    pub const fn new(target: Target, properness: Properness) -> Self {
        Mode { target, properness }
    }

    pub fn is_proper(self) -> bool {
        self.properness == Properness::Proper
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.properness {
            Properness::Plain => "plain",
            Properness::Proper => "proper",
        };
        write!(f, "{}/{}", self.target.name(), p)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (t, p) = s.split_once('/').unwrap_or((s, "plain"));
        let target = match t {
            "vertex" => Target::Vertex,
            "edge" => Target::Edge,
            _ => return Err(Error::Parse(format!("unknown mode {s:?}"))),
        };
        let properness = match p {
            "plain" => Properness::Plain,
            "proper" => Properness::Proper,
            _ => return Err(Error::Parse(format!("unknown mode {s:?}"))),
        };
        Ok(Mode::new(target, properness))
    }
}

/// Why a colouring fails to be suitable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Obstruction {
    /// A non-identity automorphism preserving the colouring.
    Automorphism { permutation: Permutation },
    /// Two adjacent vertices with the same colour.
    AdjacentVertices { u: usize, v: usize },
    /// Two edges sharing an endpoint with the same colour.
    IncidentEdges { first: Edge, second: Edge },
}

/// Colour of each vertex; position `v` holds `c(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexColouring(Vec<ColourId>);

impl VertexColouring {
    pub fn new(colours: Vec<ColourId>) -> Self {
        VertexColouring(colours)
    }

    pub fn from_values(values: &[u32]) -> Self {
        VertexColouring(values.iter().map(|&v| ColourId(v)).collect())
    }

    /// Every vertex gets its own id as colour.
    pub fn all_distinct(n: usize) -> Self {
        VertexColouring((0..n as u32).map(ColourId).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> ColourId {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, c: ColourId) {
        self.0[v] = c;
    }

    pub fn as_slice(&self) -> &[ColourId] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.0).collect()
    }
}

/// Colour of each edge, total on the edge set of the associated graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeColouring(BTreeMap<Edge, ColourId>);

impl EdgeColouring {
    pub fn new() -> Self {
        EdgeColouring(BTreeMap::new())
    }

    /// Colours the edges of `g` in their sorted order.
    pub fn from_values(g: &Graph, values: &[u32]) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::SizeMismatch {
                expected: g.edge_count(),
                found: values.len(),
            });
        }
        Ok(EdgeColouring(
            g.edges()
                .iter()
                .zip(values)
                .map(|(&e, &c)| (e, ColourId(c)))
                .collect(),
        ))
    }

    pub fn all_distinct(g: &Graph) -> Self {
        EdgeColouring(
            g.edges()
                .iter()
                .enumerate()
                .map(|(i, &e)| (e, ColourId(i as u32)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, e: Edge) -> Option<ColourId> {
        self.0.get(&e).copied()
    }

    pub fn set(&mut self, e: Edge, c: ColourId) {
        self.0.insert(e, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, ColourId)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    /// Colours in ascending edge order.
    pub fn values(&self) -> Vec<u32> {
        self.0.values().map(|c| c.0).collect()
    }
}

impl FromIterator<(Edge, ColourId)> for EdgeColouring {
    fn from_iter<I: IntoIterator<Item = (Edge, ColourId)>>(iter: I) -> Self {
        EdgeColouring(iter.into_iter().collect())
    }
}

impl Serialize for EdgeColouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (e, c) in &self.0 {
            seq.serialize_element(&(e.lo(), e.hi(), c.0))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EdgeColouring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let triples = Vec::<(usize, usize, u32)>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (u, v, c) in triples {
            let e = Edge::new(u, v).map_err(D::Error::custom)?;
            if map.insert(e, ColourId(c)).is_some() {
                return Err(D::Error::custom(format!("edge {e} coloured twice")));
            }
        }
        Ok(EdgeColouring(map))
    }
}

/// Operations shared by vertex and edge colourings.
pub trait Colouring: Clone + PartialEq + fmt::Debug + Serialize {
    const TARGET: Target;

    /// Colours in canonical element order (vertex order, or sorted edge order).
    fn colour_sequence(&self) -> Vec<ColourId>;

    fn map_colours(&self, f: impl Fn(ColourId) -> ColourId) -> Self;

    /// Checks that the colouring covers exactly the vertices (edges) of `g`.
    fn check_graph(&self, g: &Graph) -> Result<()>;

    fn constraint(&self) -> Constraint<'_>;

    /// Whether `p`, an automorphism of `g`, maps every element to one of the same colour.
    fn is_preserved_by(&self, g: &Graph, p: &Permutation) -> Result<bool>;

    fn properness_violation(&self, g: &Graph) -> Option<Obstruction>;

    fn into_any(self) -> AnyColouring;
}

impl Colouring for VertexColouring {
    const TARGET: Target = Target::Vertex;

    fn colour_sequence(&self) -> Vec<ColourId> {
        self.0.clone()
    }

    fn map_colours(&self, f: impl Fn(ColourId) -> ColourId) -> Self {
        VertexColouring(self.0.iter().map(|&c| f(c)).collect())
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::SizeMismatch {
                expected: g.vertex_count(),
                found: self.len(),
            });
        }
        Ok(())
    }

    fn constraint(&self) -> Constraint<'_> {
        Constraint::Vertex(self)
    }

    fn is_preserved_by(&self, _g: &Graph, p: &Permutation) -> Result<bool> {
        aut::preserves_vertex_colouring(p, self)
    }

    fn properness_violation(&self, g: &Graph) -> Option<Obstruction> {
        g.edges()
            .iter()
            .find(|e| self.0[e.lo()] == self.0[e.hi()])
            .map(|e| Obstruction::AdjacentVertices {
                u: e.lo(),
                v: e.hi(),
            })
    }

    fn into_any(self) -> AnyColouring {
        AnyColouring::Vertex(self)
    }
}

impl Colouring for EdgeColouring {
    const TARGET: Target = Target::Edge;

    fn colour_sequence(&self) -> Vec<ColourId> {
        self.0.values().copied().collect()
    }

    fn map_colours(&self, f: impl Fn(ColourId) -> ColourId) -> Self {
        EdgeColouring(self.0.iter().map(|(&e, &c)| (e, f(c))).collect())
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() != g.edge_count() {
            return Err(Error::SizeMismatch {
                expected: g.edge_count(),
                found: self.len(),
            });
        }
        if !self.0.keys().eq(g.edges().iter()) {
            // same size but some keys are not edges of g
            let covered = self
                .0
                .keys()
                .filter(|&&e| g.edge_index(e).is_some())
                .count();
            return Err(Error::SizeMismatch {
                expected: g.edge_count(),
                found: covered,
            });
        }
        Ok(())
    }

    fn constraint(&self) -> Constraint<'_> {
        Constraint::Edge(self)
    }

    fn is_preserved_by(&self, g: &Graph, p: &Permutation) -> Result<bool> {
        aut::preserves_edge_colouring(p, g, self)
    }

    fn properness_violation(&self, g: &Graph) -> Option<Obstruction> {
        for v in 0..g.vertex_count() {
            let mut seen: BTreeMap<ColourId, Edge> = BTreeMap::new();
            for &w in g.neighbours(v) {
                let e = Edge::new(v, w).expect("simple graph");
                let c = self.0[&e];
                if let Some(&first) = seen.get(&c) {
                    return Some(Obstruction::IncidentEdges { first, second: e });
                }
                seen.insert(c, e);
            }
        }
        None
    }

    fn into_any(self) -> AnyColouring {
        AnyColouring::Edge(self)
    }
}

/// A colouring of either kind, for interfaces that pick the target at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum AnyColouring {
    Vertex(VertexColouring),
    Edge(EdgeColouring),
}

impl AnyColouring {
    pub fn target(&self) -> Target {
        match self {
            AnyColouring::Vertex(_) => Target::Vertex,
            AnyColouring::Edge(_) => Target::Edge,
        }
    }

    /// Parses the JSON colouring schema for the given target: an integer
    /// array for vertices, `[u, v, colour]` triples for edges.
    pub fn from_json(text: &str, target: Target) -> Result<Self> {
        let parsed = match target {
            Target::Vertex => serde_json::from_str(text).map(AnyColouring::Vertex),
            Target::Edge => serde_json::from_str(text).map(AnyColouring::Edge),
        };
        parsed.map_err(|e| Error::Parse(format!("{} colouring: {e}", target.name())))
    }

    pub fn from_value(value: serde_json::Value, target: Target) -> Result<Self> {
        Self::from_json(&value.to_string(), target)
    }

    pub fn as_vertex(&self) -> Option<&VertexColouring> {
        match self {
            AnyColouring::Vertex(c) => Some(c),
            AnyColouring::Edge(_) => None,
        }
    }

    pub fn as_edge(&self) -> Option<&EdgeColouring> {
        match self {
            AnyColouring::Edge(c) => Some(c),
            AnyColouring::Vertex(_) => None,
        }
    }

    pub fn used_colours(&self) -> BTreeSet<ColourId> {
        match self {
            AnyColouring::Vertex(c) => used_colours(c),
            AnyColouring::Edge(c) => used_colours(c),
        }
    }
}

fn check_mode<C: Colouring>(mode: Mode) -> Result<()> {
    if mode.target != C::TARGET {
        return Err(Error::ModeMismatch {
            expected: mode.target.name(),
            found: C::TARGET.name(),
        });
    }
    Ok(())
}

pub fn is_proper_vertex(g: &Graph, c: &VertexColouring) -> Result<bool> {
    c.check_graph(g)?;
    Ok(c.properness_violation(g).is_none())
}

pub fn is_proper_edge(g: &Graph, c: &EdgeColouring) -> Result<bool> {
    c.check_graph(g)?;
    Ok(c.properness_violation(g).is_none())
}

/// A non-identity automorphism of `g` preserving `c`, if one exists.
pub fn preserving_witness<C: Colouring>(g: &Graph, c: &C) -> Result<Option<Permutation>> {
    c.check_graph(g)?;
    Ok(aut::find_nontrivial_preserving(&AutQuery::new(
        g,
        c.constraint(),
    )?))
}

pub fn is_distinguishing<C: Colouring>(g: &Graph, c: &C) -> Result<bool> {
    Ok(preserving_witness(g, c)?.is_none())
}

/// The first reason `c` fails `mode`, checking properness before symmetry.
pub fn suitability_obstruction<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
) -> Result<Option<Obstruction>> {
    check_mode::<C>(mode)?;
    c.check_graph(g)?;
    if mode.is_proper() {
        if let Some(o) = c.properness_violation(g) {
            return Ok(Some(o));
        }
    }
    Ok(preserving_witness(g, c)?.map(|permutation| Obstruction::Automorphism { permutation }))
}

pub fn is_suitable<C: Colouring>(g: &Graph, c: &C, mode: Mode) -> Result<bool> {
    Ok(suitability_obstruction(g, c, mode)?.is_none())
}

/// Suitability decided against an explicit list of automorphisms of `g`, as
/// produced by [`aut::all_automorphisms_bruteforce`].
pub fn is_suitable_among<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
    automorphisms: &[Permutation],
) -> Result<bool> {
    check_mode::<C>(mode)?;
    c.check_graph(g)?;
    if mode.is_proper() && c.properness_violation(g).is_some() {
        return Ok(false);
    }
    for p in automorphisms.iter().filter(|p| !p.is_identity()) {
        if c.is_preserved_by(g, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Colours with a non-empty class, ascending.
pub fn used_colours<C: Colouring>(c: &C) -> BTreeSet<ColourId> {
    c.colour_sequence().into_iter().collect()
}

/// Relabels colours to `0..k` in order of first occurrence, returning the
/// normalised colouring and the `old -> new` relabelling.
pub fn normalize<C: Colouring>(c: &C) -> (C, BTreeMap<ColourId, ColourId>) {
    let mut relabel = BTreeMap::new();
    for colour in c.colour_sequence() {
        let next = ColourId(relabel.len() as u32);
        relabel.entry(colour).or_insert(next);
    }
    let normalized = c.map_colours(|col| relabel[&col]);
    (normalized, relabel)
}

/// Whether two colourings induce the same partition of their elements.
pub fn same_partition<C: Colouring>(a: &C, b: &C) -> bool {
    normalize(a).0 == normalize(b).0
}
