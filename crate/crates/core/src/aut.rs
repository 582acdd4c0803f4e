//! Automorphism predicates and the search for colour-preserving automorphisms.
//!
//! [`find_nontrivial_preserving`] is an individualisation-refinement
//! backtracker. Both sides of a candidate mapping carry a vertex colouring;
//! they start from the same equitable partition and after each
//! individualisation (`v` on the left, `w` on the right) are refined jointly.
//! A branch dies as soon as the two sides disagree on a cell size. When the
//! left side becomes discrete, the cells spell out a bijection which is then
//! checked directly against the graph and the constraint.
//!
//! [`all_automorphisms_bruteforce`] filters all `n!` permutations and serves
//! as the independent oracle for the backtracker.

use itertools::Itertools;

use crate::colouring::{EdgeColouring, VertexColouring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::perm::Permutation;

/// Largest vertex count accepted by the brute-force oracle.
pub const ORACLE_LIMIT: usize = 8;

/// What a searched automorphism must preserve besides adjacency.
#[derive(Debug, Clone, Copy)]
pub enum Constraint<'a> {
    None,
    Vertex(&'a VertexColouring),
    Edge(&'a EdgeColouring),
}

#[derive(Debug, Clone, Copy)]
pub struct AutQuery<'a> {
    graph: &'a Graph,
    constraint: Constraint<'a>,
}

impl<'a> AutQuery<'a> {
    pub fn new(graph: &'a Graph, constraint: Constraint<'a>) -> Result<Self> {
        use crate::colouring::Colouring;
        match constraint {
            Constraint::None => {}
            Constraint::Vertex(c) => c.check_graph(graph)?,
            Constraint::Edge(c) => c.check_graph(graph)?,
        }
        Ok(AutQuery { graph, constraint })
    }

    pub fn unconstrained(graph: &'a Graph) -> Self {
        AutQuery {
            graph,
            constraint: Constraint::None,
        }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn constraint(&self) -> Constraint<'a> {
        self.constraint
    }

    /// Whether `p` is an automorphism of the graph preserving the constraint.
    pub fn accepts(&self, p: &Permutation) -> bool {
        match is_automorphism(self.graph, p) {
            Ok(true) => {}
            _ => return false,
        }
        match self.constraint {
            Constraint::None => true,
            Constraint::Vertex(c) => preserves_vertex_colouring(p, c).unwrap_or(false),
            Constraint::Edge(c) => preserves_edge_colouring(p, self.graph, c).unwrap_or(false),
        }
    }
}

pub fn is_automorphism(g: &Graph, p: &Permutation) -> Result<bool> {
    if p.len() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: g.vertex_count(),
            found: p.len(),
        });
    }
    // p is a bijection, so mapping edges into edges is enough
    Ok(g.edges()
        .iter()
        .all(|e| g.has_edge(p.apply(e.lo()), p.apply(e.hi()))))
}

pub fn preserves_vertex_colouring(p: &Permutation, c: &VertexColouring) -> Result<bool> {
    if p.len() != c.len() {
        return Err(Error::SizeMismatch {
            expected: c.len(),
            found: p.len(),
        });
    }
    Ok((0..p.len()).all(|v| c.get(p.apply(v)) == c.get(v)))
}

/// `p` must be an automorphism of `g`; edges are mapped as `{u,v} ↦ {p(u),p(v)}`.
pub fn preserves_edge_colouring(p: &Permutation, g: &Graph, c: &EdgeColouring) -> Result<bool> {
    use crate::colouring::Colouring;
    c.check_graph(g)?;
    if !is_automorphism(g, p)? {
        return Err(Error::NotAutomorphism);
    }
    Ok(g.edges().iter().all(|&e| {
        let image = Edge::new(p.apply(e.lo()), p.apply(e.hi())).expect("automorphism");
        c.get(image) == c.get(e)
    }))
}

/// Every automorphism of `g` (identity included), by filtering all `n!`
/// permutations in lexicographic order.
pub fn all_automorphisms_bruteforce(g: &Graph) -> Result<Vec<Permutation>> {
    let n = g.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLargeForOracle {
            vertices: n,
            limit: ORACLE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for images in (0..n).permutations(n) {
        let p = Permutation::new(images).expect("permutation");
        if is_automorphism(g, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Oracle version of the preserving-automorphism search: the first
/// non-identity element of the brute-force automorphism list that satisfies
/// the constraint.
pub fn find_nontrivial_preserving_bruteforce(q: &AutQuery<'_>) -> Result<Option<Permutation>> {
    Ok(all_automorphisms_bruteforce(q.graph)?
        .into_iter()
        .find(|p| !p.is_identity() && q.accepts(p)))
}

/// Some non-identity automorphism satisfying the query, if one exists.
///
/// The search order is fixed, so the returned witness is reproducible.
pub fn find_nontrivial_preserving(q: &AutQuery<'_>) -> Option<Permutation> {
    let n = q.graph.vertex_count();
    if n < 2 {
        return None;
    }
    let refiner = Refiner::new(q);
    let mut left = refiner.initial_colours();
    let mut right = left.clone();
    let ok = refiner.refine(&mut left, &mut right);
    debug_assert!(ok);
    refiner.search(q, left, right)
}

/// The coarsest equitable partition refining the constraint colouring, as a
/// cell index per vertex. Cell indices depend only on the isomorphism type of
/// the coloured graph, not on vertex labels.
pub fn equitable_refinement(q: &AutQuery<'_>) -> Vec<u32> {
    let refiner = Refiner::new(q);
    let mut left = refiner.initial_colours();
    let mut right = left.clone();
    refiner.refine(&mut left, &mut right);
    left
}

type Signature = (u32, Vec<(u32, u32)>);

struct Refiner {
    n: usize,
    // (neighbour, edge label) pairs; label is the edge colour + 1 under an
    // edge constraint and 1 otherwise
    labelled: Vec<Vec<(usize, u32)>>,
    vertex_keys: Vec<u32>,
}

impl Refiner {
    fn new(q: &AutQuery<'_>) -> Self {
        let g = q.graph;
        let n = g.vertex_count();
        let labelled = (0..n)
            .map(|v| {
                g.neighbours(v)
                    .iter()
                    .map(|&w| {
                        let label = match q.constraint {
                            Constraint::Edge(c) => {
                                c.get(Edge::new(v, w).expect("simple graph"))
                                    .expect("total edge colouring")
                                    .0
                                    + 1
                            }
                            _ => 1,
                        };
                        (w, label)
                    })
                    .collect()
            })
            .collect();
        let vertex_keys = (0..n)
            .map(|v| match q.constraint {
                Constraint::Vertex(c) => c.get(v).0,
                _ => 0,
            })
            .collect();
        Refiner {
            n,
            labelled,
            vertex_keys,
        }
    }

    fn initial_colours(&self) -> Vec<u32> {
        let keys: Vec<(u32, usize, Vec<u32>)> = (0..self.n)
            .map(|v| {
                let mut labels: Vec<u32> = self.labelled[v].iter().map(|&(_, l)| l).collect();
                labels.sort_unstable();
                (self.vertex_keys[v], labels.len(), labels)
            })
            .collect();
        let mut distinct: Vec<&(u32, usize, Vec<u32>)> = keys.iter().collect();
        distinct.sort();
        distinct.dedup();
        keys.iter()
            .map(|k| distinct.binary_search(&k).expect("present") as u32)
            .collect()
    }

    fn signature(&self, colours: &[u32], v: usize) -> Signature {
        let mut around: Vec<(u32, u32)> = self.labelled[v]
            .iter()
            .map(|&(w, label)| (colours[w], label))
            .collect();
        around.sort_unstable();
        (colours[v], around)
    }

    /// Refines both colourings in lockstep until stable. Returns `false` if
    /// at some round the two sides have different cell sizes, in which case
    /// no bijection can carry one onto the other.
    fn refine(&self, left: &mut [u32], right: &mut [u32]) -> bool {
        let mut cells = distinct_count(left);
        loop {
            let sl: Vec<Signature> = (0..self.n).map(|v| self.signature(left, v)).collect();
            let sr: Vec<Signature> = (0..self.n).map(|v| self.signature(right, v)).collect();
            let mut all: Vec<&Signature> = sl.iter().chain(sr.iter()).collect();
            all.sort();
            all.dedup();
            let rank = |s: &Signature| all.binary_search(&s).expect("present") as u32;
            let mut count_l = vec![0usize; all.len()];
            let mut count_r = vec![0usize; all.len()];
            for v in 0..self.n {
                left[v] = rank(&sl[v]);
                right[v] = rank(&sr[v]);
                count_l[left[v] as usize] += 1;
                count_r[right[v] as usize] += 1;
            }
            if count_l != count_r {
                return false;
            }
            let now = all.len();
            if now == cells {
                return true;
            }
            cells = now;
        }
    }

    fn search(&self, q: &AutQuery<'_>, left: Vec<u32>, right: Vec<u32>) -> Option<Permutation> {
        let cells = distinct_count(&left);
        if cells == self.n {
            if left == right {
                return None; // identity
            }
            let mut images = vec![0; self.n];
            for (w, cell) in right.iter().enumerate() {
                let v = left.iter().position(|c| c == cell).expect("matching cell");
                images[v] = w;
            }
            let p = Permutation::new(images).expect("bijection");
            return q.accepts(&p).then_some(p);
        }
        let mut sizes = vec![0usize; cells];
        for &c in &left {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
        let v = left
            .iter()
            .position(|&c| c == target)
            .expect("non-empty cell");
        let mut candidates: Vec<usize> = (0..self.n).filter(|&w| right[w] == target).collect();
        if left == right {
            // while both sides agree, try moving v before fixing it
            candidates.sort_by_key(|&w| (w == v, w));
        }
        let fresh = cells as u32;
        for w in candidates {
            let mut l = left.clone();
            let mut r = right.clone();
            l[v] = fresh;
            r[w] = fresh;
            if self.refine(&mut l, &mut r) {
                if let Some(p) = self.search(q, l, r) {
                    return Some(p);
                }
            }
        }
        None
    }
}

fn distinct_count(colours: &[u32]) -> usize {
    let mut seen: Vec<u32> = colours.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
