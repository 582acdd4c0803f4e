//! Exact distinguishing number / index and their chromatic variants.
//!
//! The searches enumerate colourings in normalised form (restricted growth
//! strings: colour `k` only appears after colours `0..k`) for `k = 1, 2, ...`
//! and stop at the first `k` with a suitable colouring. Within a `k` the
//! enumeration is lexicographic, so the witness is the lexicographically
//! least suitable normalised colouring with exactly `k` colours.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aut::{self, AutQuery, Constraint};
use crate::colouring::{AnyColouring, EdgeColouring, Mode, Target, VertexColouring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const DEFAULT_CUTOFF: usize = 10;

/// The four parameters: `d` number, `dc` chromatic number, `di` index,
/// `dci` chromatic index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    D,
    Dc,
    Di,
    Dci,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::D, Variant::Dc, Variant::Di, Variant::Dci];

    pub fn mode(self) -> Mode {
        match self {
            Variant::D => Mode::VERTEX,
            Variant::Dc => Mode::VERTEX_PROPER,
            Variant::Di => Mode::EDGE,
            Variant::Dci => Mode::EDGE_PROPER,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::D => "d",
            Variant::Dc => "dc",
            Variant::Di => "di",
            Variant::Dci => "dci",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(Variant::D),
            "dc" | "d-chromatic" => Ok(Variant::Dc),
            "di" | "d-index" => Ok(Variant::Di),
            "dci" | "d-chromatic-index" => Ok(Variant::Dci),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Structural reason a graph has no distinguishing edge colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum StructuralObstruction {
    IsolatedEdge { edge: Edge },
    IsolatedVertices { first: usize, second: usize },
}

impl StructuralObstruction {
    /// Whether the obstruction is really present in `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        match *self {
            StructuralObstruction::IsolatedEdge { edge } => {
                g.edge_index(edge).is_some() && g.degree(edge.lo()) == 1 && g.degree(edge.hi()) == 1
            }
            StructuralObstruction::IsolatedVertices { first, second } => {
                first != second
                    && first.max(second) < g.vertex_count()
                    && g.degree(first) == 0
                    && g.degree(second) == 0
            }
        }
    }
}

/// An isolated edge or a pair of isolated vertices, if `g` has one.
pub fn edge_obstruction(g: &Graph) -> Option<StructuralObstruction> {
    if let Some(&edge) = g.isolated_edges().first() {
        return Some(StructuralObstruction::IsolatedEdge { edge });
    }
    match g.isolated_vertices()[..] {
        [first, second, ..] => Some(StructuralObstruction::IsolatedVertices { first, second }),
        _ => None,
    }
}

/// How candidate colourings are tested for being distinguishing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Checker {
    /// The refinement backtracker.
    #[default]
    Kernel,
    /// Comparison against the brute-force automorphism list (`n ≤ 8`).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub cutoff: usize,
    pub checker: Checker,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cutoff: DEFAULT_CUTOFF,
            checker: Checker::Kernel,
        }
    }
}

/// The least number of colours and the witness found at that number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalColouring {
    pub colours: usize,
    pub witness: AnyColouring,
    /// Candidates with fewer colours that were examined and rejected.
    pub rejected_below: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Minimal {
    Found(MinimalColouring),
    Impossible(StructuralObstruction),
}

impl Minimal {
    pub fn value(&self) -> Option<usize> {
        match self {
            Minimal::Found(m) => Some(m.colours),
            Minimal::Impossible(_) => None,
        }
    }
}

/// A parameter that may not exist for the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attainable {
    Value(usize),
    Impossible,
}

impl From<&Minimal> for Attainable {
    fn from(m: &Minimal) -> Self {
        m.value().map_or(Attainable::Impossible, Attainable::Value)
    }
}

impl fmt::Display for Attainable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attainable::Value(v) => write!(f, "{v}"),
            Attainable::Impossible => f.write_str("impossible"),
        }
    }
}

pub fn distinguishing_number(g: &Graph) -> Result<usize> {
    minimal(g, Variant::D, &SearchConfig::default()).map(|m| m.value().expect("always exists"))
}

pub fn distinguishing_chromatic_number(g: &Graph) -> Result<usize> {
    minimal(g, Variant::Dc, &SearchConfig::default()).map(|m| m.value().expect("always exists"))
}

pub fn distinguishing_index(g: &Graph) -> Result<Attainable> {
    minimal(g, Variant::Di, &SearchConfig::default()).map(|m| Attainable::from(&m))
}

pub fn distinguishing_chromatic_index(g: &Graph) -> Result<Attainable> {
    minimal(g, Variant::Dci, &SearchConfig::default()).map(|m| Attainable::from(&m))
}

/// Exhaustive search for the least number of colours in a suitable colouring
/// for `variant`'s mode.
pub fn minimal(g: &Graph, variant: Variant, config: &SearchConfig) -> Result<Minimal> {
    let n = g.vertex_count();
    if n > config.cutoff {
        return Err(Error::TooLargeForSearch {
            vertices: n,
            cutoff: config.cutoff,
        });
    }
    let mode = variant.mode();
    if mode.target == Target::Edge {
        if let Some(o) = edge_obstruction(g) {
            return Ok(Minimal::Impossible(o));
        }
    }
    let problem = Problem::new(g, mode, config.checker)?;
    let mut rejected = 0u64;
    let len = problem.len();
    if len == 0 {
        // no elements to colour; with no obstruction the graph has at most one vertex
        return Ok(Minimal::Found(MinimalColouring {
            colours: 0,
            witness: problem.colouring(&[]),
            rejected_below: 0,
        }));
    }
    for k in 1..=len {
        let mut assignment = Vec::with_capacity(len);
        let mut examined = 0u64;
        if let Some(found) = problem.search(k, &mut assignment, 0, &mut examined) {
            return Ok(Minimal::Found(MinimalColouring {
                colours: k,
                witness: problem.colouring(&found),
                rejected_below: rejected,
            }));
        }
        rejected += examined;
    }
    Err(Error::VerificationFailed(format!(
        "no suitable {mode} colouring with at most {len} colours"
    )))
}

/// Pre-computed automorphism, acting on the colourable elements.
struct ElementPermutation(Vec<usize>);

struct Problem<'g> {
    graph: &'g Graph,
    mode: Mode,
    // earlier elements that must differ in colour under properness
    conflicts: Vec<Vec<usize>>,
    oracle: Option<Vec<ElementPermutation>>,
}

impl<'g> Problem<'g> {
    fn new(graph: &'g Graph, mode: Mode, checker: Checker) -> Result<Self> {
        let conflicts = match mode.target {
            Target::Vertex => (0..graph.vertex_count())
                .map(|v| {
                    graph
                        .neighbours(v)
                        .iter()
                        .copied()
                        .filter(|&u| u < v)
                        .collect()
                })
                .collect(),
            Target::Edge => {
                let edges = graph.edges();
                (0..edges.len())
                    .map(|i| {
                        (0..i)
                            .filter(|&j| edges[i].shares_endpoint(edges[j]))
                            .collect()
                    })
                    .collect()
            }
        };
        let oracle = match checker {
            Checker::Kernel => None,
            Checker::Oracle => {
                let auts = aut::all_automorphisms_bruteforce(graph)?;
                Some(
                    auts.into_iter()
                        .filter(|p| !p.is_identity())
                        .map(|p| match mode.target {
                            Target::Vertex => ElementPermutation(p.images().to_vec()),
                            Target::Edge => ElementPermutation(
                                graph
                                    .edges()
                                    .iter()
                                    .map(|e| {
                                        let image = Edge::new(p.apply(e.lo()), p.apply(e.hi()))
                                            .expect("automorphism");
                                        graph.edge_index(image).expect("automorphism")
                                    })
                                    .collect(),
                            ),
                        })
                        .collect(),
                )
            }
        };
        Ok(Problem {
            graph,
            mode,
            conflicts,
            oracle,
        })
    }

    fn len(&self) -> usize {
        self.conflicts.len()
    }

    fn colouring(&self, values: &[u32]) -> AnyColouring {
        match self.mode.target {
            Target::Vertex => AnyColouring::Vertex(VertexColouring::from_values(values)),
            Target::Edge => AnyColouring::Edge(
                EdgeColouring::from_values(self.graph, values).expect("one colour per edge"),
            ),
        }
    }

    fn is_distinguishing(&self, values: &[u32]) -> bool {
        if let Some(auts) = &self.oracle {
            return !auts
                .iter()
                .any(|p| p.0.iter().enumerate().all(|(i, &j)| values[i] == values[j]));
        }
        match self.colouring(values) {
            AnyColouring::Vertex(c) => aut::find_nontrivial_preserving(
                &AutQuery::new(self.graph, Constraint::Vertex(&c)).expect("sizes match"),
            )
            .is_none(),
            AnyColouring::Edge(c) => aut::find_nontrivial_preserving(
                &AutQuery::new(self.graph, Constraint::Edge(&c)).expect("sizes match"),
            )
            .is_none(),
        }
    }

    /// Depth-first over restricted growth strings using exactly `k` colours.
    fn search(
        &self,
        k: usize,
        assignment: &mut Vec<u32>,
        used: usize,
        examined: &mut u64,
    ) -> Option<Vec<u32>> {
        let pos = assignment.len();
        if pos == self.len() {
            if used < k {
                return None;
            }
            *examined += 1;
            return self
                .is_distinguishing(assignment)
                .then(|| assignment.clone());
        }
        // not enough positions left to introduce the missing colours
        if k - used > self.len() - pos {
            return None;
        }
        let limit = (used + 1).min(k);
        for colour in 0..limit as u32 {
            if self.mode.is_proper() && self.conflicts[pos].iter().any(|&j| assignment[j] == colour)
            {
                continue;
            }
            assignment.push(colour);
            let next_used = used.max(colour as usize + 1);
            let found = self.search(k, assignment, next_used, examined);
            assignment.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_standard, Family};

    fn g(f: Family, n: usize) -> Graph {
        gen_standard(f, n).unwrap()
    }

    #[test]
    fn distinguishing_numbers() {
        assert_eq!(distinguishing_number(&g(Family::Complete, 2)).unwrap(), 2);
        assert_eq!(distinguishing_number(&g(Family::Cycle, 4)).unwrap(), 3);
        assert_eq!(distinguishing_number(&g(Family::Cycle, 5)).unwrap(), 3);
        assert_eq!(distinguishing_number(&g(Family::Cycle, 6)).unwrap(), 2);
        for n in 1..=5 {
            assert_eq!(distinguishing_number(&g(Family::Complete, n)).unwrap(), n);
        }
    }

    #[test]
    fn distinguishing_indices() {
        assert_eq!(
            distinguishing_index(&g(Family::Complete, 2)).unwrap(),
            Attainable::Impossible
        );
        assert_eq!(
            distinguishing_index(&g(Family::Path, 3)).unwrap(),
            Attainable::Value(2)
        );
        assert_eq!(
            distinguishing_index(&g(Family::Star, 4)).unwrap(),
            Attainable::Value(3)
        );
    }

    #[test]
    fn chromatic_variants() {
        assert_eq!(
            distinguishing_chromatic_number(&g(Family::Complete, 2)).unwrap(),
            2
        );
        // any proper 3-colouring of C_4 repeats a colour on an opposite pair,
        // and the reflection swapping that pair preserves it
        assert_eq!(
            distinguishing_chromatic_number(&g(Family::Cycle, 4)).unwrap(),
            4
        );
        assert_eq!(
            distinguishing_chromatic_number(&g(Family::Cycle, 6)).unwrap(),
            4
        );
        assert_eq!(
            distinguishing_chromatic_index(&g(Family::Complete, 2)).unwrap(),
            Attainable::Impossible
        );
        assert_eq!(
            distinguishing_chromatic_index(&g(Family::Path, 3)).unwrap(),
            Attainable::Value(2)
        );
        assert_eq!(
            distinguishing_chromatic_index(&g(Family::Complete, 3)).unwrap(),
            Attainable::Value(3)
        );
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let m = minimal(&g(Family::Path, 3), Variant::D, &SearchConfig::default()).unwrap();
        let Minimal::Found(found) = m else { panic!() };
        assert_eq!(found.colours, 2);
        assert_eq!(
            found.witness,
            AnyColouring::Vertex(VertexColouring::from_values(&[0, 0, 1]))
        );
        assert_eq!(found.rejected_below, 1);
    }

    #[test]
    fn degenerate_graphs() {
        let single = Graph::empty(1);
        assert_eq!(distinguishing_number(&single).unwrap(), 1);
        assert_eq!(distinguishing_index(&single).unwrap(), Attainable::Value(0));
        assert_eq!(
            distinguishing_index(&Graph::empty(2)).unwrap(),
            Attainable::Impossible
        );
        assert_eq!(distinguishing_number(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn cutoff_is_enforced() {
        let cfg = SearchConfig {
            cutoff: 3,
            ..SearchConfig::default()
        };
        assert!(matches!(
            minimal(&g(Family::Path, 4), Variant::D, &cfg),
            Err(Error::TooLargeForSearch { .. })
        ));
    }

    #[test]
    fn obstruction_detection() {
        let k2 = g(Family::Complete, 2);
        let o = edge_obstruction(&k2).unwrap();
        assert!(o.holds_in(&k2));
        assert!(!o.holds_in(&g(Family::Path, 3)));
        let two = Graph::new(3, &[]).unwrap();
        assert_eq!(
            edge_obstruction(&two),
            Some(StructuralObstruction::IsolatedVertices {
                first: 0,
                second: 1
            })
        );
        assert_eq!(edge_obstruction(&g(Family::Star, 4)), None);
    }
}
