//! Finite simple undirected graphs and the generators used throughout the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge, stored with the smaller endpoint first so that
/// `{u, v}` and `{v, u}` compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge(u, v)),
            std::cmp::Ordering::Greater => Ok(Edge(v, u)),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(u)),
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self != other && (other.contains(self.0) || other.contains(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A finite simple undirected graph on vertices `0..vertex_count`.
///
/// Immutable after construction. Edges are kept sorted, so two graphs with the
/// same edge set compare equal regardless of how they were built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from a list of vertex pairs, dropping duplicate edges.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::OutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            edges.push(Edge::new(u, v)?);
        }
        Ok(Self::from_edges_unchecked(vertex_count, edges))
    }

    fn from_edges_unchecked(vertex_count: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &edges {
            adjacency[e.0].push(e.1);
            adjacency[e.1].push(e.0);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            vertex_count,
            edges,
            adjacency,
        }
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_edges_unchecked(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count
            && v < self.vertex_count
            && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of `e` in [`Graph::edges`], if it is an edge.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.adjacency[v].is_empty())
            .collect()
    }

    /// Edges whose endpoints both have degree one.
    pub fn isolated_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| self.degree(e.0) == 1 && self.degree(e.1) == 1)
            .collect()
    }

    /// Renders the graph in the plain edge-list format, with a vertex-count
    /// header so isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices: {}\n", self.vertex_count);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }
}

/// Parses the plain edge-list format: one `u v` pair per line, 0-based.
///
/// Blank lines and lines starting with `#` are skipped. The vertex count is
/// one more than the largest endpoint unless a `# vertices: N` line is given,
/// which lets the format describe isolated trailing vertices.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut declared: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(count) = comment.trim().strip_prefix("vertices:") {
                let n = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad vertex count", lineno + 1)))?;
                declared = Some(n);
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = || -> Result<usize> {
            fields
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: expected two vertices", lineno + 1)))?
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex id", lineno + 1)))
        };
        let (u, v) = (next()?, next()?);
        if fields.next().is_some() {
            return Err(Error::Parse(format!(
                "line {}: trailing fields",
                lineno + 1
            )));
        }
        pairs.push((u, v));
    }
    let inferred = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::new(declared.unwrap_or(inferred), &pairs)
}

/// The standard families produced by [`gen_standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "star" => Ok(Family::Star),
            other => Err(Error::Parse(format!("unknown graph family {other:?}"))),
        }
    }
}

/// Path, cycle, complete graph or star on `n` vertices.
///
/// Paths are `0-1-...-(n-1)`, cycles close the path with `(n-1)-0`, and the
/// star has centre `0`.
pub fn gen_standard(family: Family, n: usize) -> Result<Graph> {
    let min = if family == Family::Cycle { 3 } else { 1 };
    if n < min {
        return Err(Error::BadSize {
            family: format!("{family:?}").to_lowercase(),
            size: n,
        });
    }
    let pairs: Vec<(usize, usize)> = match family {
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::Star => (1..n).map(|v| (0, v)).collect(),
    };
    Graph::new(n, &pairs)
}

/// Sizes of the two leaf sets of a double star.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubleStarSpec {
    x_size: usize,
    y_size: usize,
}

impl DoubleStarSpec {
    pub fn new(x_size: usize, y_size: usize) -> Result<Self> {
        if x_size == 0 || y_size == 0 {
            return Err(Error::BadSize {
                family: "double star".into(),
                size: x_size.min(y_size),
            });
        }
        Ok(DoubleStarSpec { x_size, y_size })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn vertex_count(&self) -> usize {
        self.x_size + self.y_size + 2
    }

    pub fn layout(&self) -> Layout {
        Layout {
            m: self.x_size,
            n: self.y_size,
        }
    }
}

/// Fixed vertex numbering of `DS(X, Y)` and `DC(X, Y)`:
/// `X = 0..m`, `x' = m`, `y' = m + 1`, `Y = m + 2..m + n + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub m: usize,
    pub n: usize,
}

impl Layout {
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        i
    }

    pub fn y(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        self.m + 2 + j
    }

    pub fn x_hub(&self) -> usize {
        self.m
    }

    pub fn y_hub(&self) -> usize {
        self.m + 1
    }

    pub fn xs(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    pub fn ys(&self) -> std::ops::Range<usize> {
        self.m + 2..self.m + 2 + self.n
    }

    /// The pendant edge `x x'` for the `i`-th vertex of `X`.
    pub fn x_edge(&self, i: usize) -> Edge {
        Edge(self.x(i), self.x_hub())
    }

    /// The pendant edge `y y'` for the `j`-th vertex of `Y`.
    pub fn y_edge(&self, j: usize) -> Edge {
        Edge(self.y_hub(), self.y(j))
    }

    pub fn hub_edge(&self) -> Edge {
        Edge(self.x_hub(), self.y_hub())
    }
}

/// The double star: centres `x'`, `y'` joined by an edge, with `X` pendant
/// at `x'` and `Y` pendant at `y'`.
pub fn gen_double_star(spec: DoubleStarSpec) -> Graph {
    let l = spec.layout();
    let mut edges = vec![l.hub_edge()];
    edges.extend((0..l.m).map(|i| l.x_edge(i)));
    edges.extend((0..l.n).map(|j| l.y_edge(j)));
    Graph::from_edges_unchecked(spec.vertex_count(), edges)
}

/// The double clique: the double star with `X` and `Y` each completed to a clique.
pub fn gen_double_clique(spec: DoubleStarSpec) -> Graph {
    let l = spec.layout();
    let mut edges = gen_double_star(spec).edges;
    for block in [l.xs(), l.ys()] {
        for u in block.clone() {
            for v in u + 1..block.end {
                edges.push(Edge(u, v));
            }
        }
    }
    Graph::from_edges_unchecked(spec.vertex_count(), edges)
}
