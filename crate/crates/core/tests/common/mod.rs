//! Test support: the graph catalog, random inputs, and a brute-force oracle
//! written against adjacency matrices, sharing no code with the library's
//! automorphism search.

#![allow(dead_code)]

use std::collections::BTreeMap;

use distcolour::colouring::{ColourId, EdgeColouring, Mode, Target, VertexColouring};
use distcolour::graph::{Edge, Graph};
use distcolour::graph6::parse_graph6;
use rand::Rng;

pub const CATALOG: &str = include_str!("../data/catalog_n6.g6");

/// All 208 graphs with 1 to 6 vertices, up to isomorphism.
pub fn catalog() -> Vec<Graph> {
    CATALOG
        .lines()
        .map(|l| parse_graph6(l).expect("catalog entry"))
        .collect()
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

pub struct Oracle {
    pub n: usize,
    adj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
    /// All automorphisms, identity included.
    pub automorphisms: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        let mut edges = Vec::new();
        for e in g.edges() {
            let (u, v) = e.endpoints();
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((u, v));
        }
        let automorphisms = permutations(n)
            .into_iter()
            .filter(|p| (0..n).all(|u| (0..n).all(|v| adj[u][v] == adj[p[u]][p[v]])))
            .collect();
        Oracle {
            n,
            adj,
            edges,
            automorphisms,
        }
    }

    fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.automorphisms
            .iter()
            .filter(|p| p.iter().enumerate().any(|(i, &x)| i != x))
    }

    pub fn vertex_preserved(&self, colours: &[u32]) -> bool {
        self.nontrivial()
            .any(|p| (0..self.n).all(|v| colours[p[v]] == colours[v]))
    }

    /// `colours` is indexed like the sorted edge list.
    pub fn edge_preserved(&self, colours: &[u32]) -> bool {
        let index: BTreeMap<(usize, usize), u32> = self
            .edges
            .iter()
            .copied()
            .zip(colours.iter().copied())
            .collect();
        self.nontrivial().any(|p| {
            self.edges.iter().all(|&(u, v)| {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                index[&(a, b)] == index[&(u, v)]
            })
        })
    }

    pub fn vertex_proper(&self, colours: &[u32]) -> bool {
        self.edges.iter().all(|&(u, v)| colours[u] != colours[v])
    }

    pub fn edge_proper(&self, colours: &[u32]) -> bool {
        self.edges.iter().enumerate().all(|(i, &(a, b))| {
            self.edges[i + 1..]
                .iter()
                .zip(&colours[i + 1..])
                .all(|(&(c, d), &k)| k != colours[i] || !(a == c || a == d || b == c || b == d))
        })
    }

    pub fn suitable(&self, colours: &[u32], mode: Mode) -> bool {
        match mode.target {
            Target::Vertex => {
                (!mode.is_proper() || self.vertex_proper(colours))
                    && !self.vertex_preserved(colours)
            }
            Target::Edge => {
                (!mode.is_proper() || self.edge_proper(colours)) && !self.edge_preserved(colours)
            }
        }
    }

    pub fn irreducible(&self, colours: &[u32], mode: Mode) -> bool {
        let mut used: Vec<u32> = colours.to_vec();
        used.sort_unstable();
        used.dedup();
        for (i, &a) in used.iter().enumerate() {
            for &b in &used[i + 1..] {
                let merged: Vec<u32> = colours
                    .iter()
                    .map(|&x| if x == b { a } else { x })
                    .collect();
                if self.suitable(&merged, mode) {
                    return false;
                }
            }
        }
        true
    }

    fn elements(&self, target: Target) -> usize {
        match target {
            Target::Vertex => self.n,
            Target::Edge => self.edges.len(),
        }
    }

    /// Least `k` such that some colouring with colours `0..k` is suitable, by
    /// trying every assignment. `None` when no number of colours works.
    pub fn min_colours(&self, mode: Mode) -> Option<usize> {
        let len = self.elements(mode.target);
        if len == 0 {
            return if self.suitable(&[], mode) {
                Some(0)
            } else {
                None
            };
        }
        for k in 1..=len {
            let mut colours = vec![0u32; len];
            loop {
                if self.suitable(&colours, mode) {
                    return Some(k);
                }
                // odometer over k^len assignments
                let mut i = 0;
                while i < len && colours[i] + 1 == k as u32 {
                    colours[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
                colours[i] += 1;
            }
        }
        None
    }
}

pub fn vertex_values(c: &VertexColouring) -> Vec<u32> {
    c.values()
}

/// Colours in sorted edge order, matching [`Oracle`]'s edge indexing.
pub fn edge_values(g: &Graph, c: &EdgeColouring) -> Vec<u32> {
    g.edges()
        .iter()
        .map(|&e| c.get(e).expect("total").0)
        .collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.15..0.85);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, &pairs).unwrap()
}

pub fn random_vertex_colouring(rng: &mut impl Rng, n: usize, k: u32) -> VertexColouring {
    VertexColouring::new((0..n).map(|_| ColourId(rng.gen_range(0..k))).collect())
}

pub fn random_edge_colouring(rng: &mut impl Rng, g: &Graph, k: u32) -> EdgeColouring {
    g.edges()
        .iter()
        .map(|&e| (e, ColourId(rng.gen_range(0..k))))
        .collect()
}

/// Independent check for the two edge-mode obstructions.
pub fn has_edge_obstruction(g: &Graph) -> bool {
    let n = g.vertex_count();
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
    let isolated_edge = g
        .edges()
        .iter()
        .any(|e: &Edge| g.degree(e.lo()) == 1 && g.degree(e.hi()) == 1);
    isolated >= 2 || isolated_edge
}

/// Canonical form: the smallest upper-triangle bit mask over all relabellings.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.vertex_count();
    permutations(n)
        .iter()
        .map(|p| {
            let mut mask = 0u64;
            let mut bit = 0;
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(p[i], p[j]) {
                        mask |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            mask
        })
        .min()
        .unwrap()
}

pub mod strategies {
    use distcolour::colouring::{EdgeColouring, VertexColouring};
    use distcolour::graph::Graph;
    use proptest::prelude::*;

    /// Graphs with `min_n..=max_n` vertices and independent edges.
    pub fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
        (min_n..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let pairs: Vec<(usize, usize)> = (1..n)
                        .flat_map(|j| (0..j).map(move |i| (i, j)))
                        .zip(bits)
                        .filter_map(|(p, b)| b.then_some(p))
                        .collect();
                    Graph::new(n, &pairs).unwrap()
                },
            )
        })
    }

    pub fn vertex_colouring(g: &Graph, max_colours: u32) -> impl Strategy<Value = VertexColouring> {
        proptest::collection::vec(0..max_colours, g.vertex_count())
            .prop_map(|v| VertexColouring::from_values(&v))
    }

    pub fn edge_colouring(g: &Graph, max_colours: u32) -> impl Strategy<Value = EdgeColouring> {
        let g = g.clone();
        proptest::collection::vec(0..max_colours, g.edge_count())
            .prop_map(move |v| EdgeColouring::from_values(&g, &v).unwrap())
    }

    pub fn graph_with_vertex_colouring(
        min_n: usize,
        max_n: usize,
        max_colours: u32,
    ) -> impl Strategy<Value = (Graph, VertexColouring)> {
        graph(min_n, max_n).prop_flat_map(move |g| {
            let c = vertex_colouring(&g, max_colours);
            (Just(g), c)
        })
    }

    pub fn graph_with_edge_colouring(
        min_n: usize,
        max_n: usize,
        max_colours: u32,
    ) -> impl Strategy<Value = (Graph, EdgeColouring)> {
        graph(min_n, max_n).prop_flat_map(move |g| {
            let c = edge_colouring(&g, max_colours);
            (Just(g), c)
        })
    }
}
