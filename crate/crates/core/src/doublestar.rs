//! Irreducible colourings of double stars `DS(X, Y)` and double cliques `DC(X, Y)`.
//!
//! Four kinds of colouring are produced and converted into one another:
//!
//! | condition | graph | mode |
//! |-----------|-------|------|
//! | a | DS | distinguishing vertex colouring |
//! | b | DS | distinguishing edge colouring |
//! | c | DC | proper distinguishing vertex colouring |
//! | d | DS | proper distinguishing edge colouring |
//!
//! every one of them irreducible. [`construct_from_injection`] builds a
//! condition-a colouring from an injection of the smaller leaf set into the
//! larger. The `transform_*` functions carry the leaf colours across and choose
//! colours for the two centres `x'`, `y'` (and for the edge `x'y'`).
//!
//! Each transform first applies its direct rule. When the rule leaves a free
//! choice, candidates are tried in ascending colour order. If the direct
//! rule yields no irreducible suitable colouring, the transform falls back to
//! scanning centre colours, then (for `m = n`) to recolouring one pendant edge
//! `x x'` with a new colour, and finally to merging the first suitable
//! candidate down with [`reduce_to_irreducible`]. Every fallback taken is
//! listed in the output's verification stamp. Every output is checked for
//! suitability and irreducibility before it is returned.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::aut::{self, ORACLE_LIMIT};
use crate::colouring::{
    is_suitable, is_suitable_among, used_colours, AnyColouring, ColourId, Colouring, EdgeColouring,
    Mode, VertexColouring,
};
use crate::error::{Error, Result};
use crate::graph::{gen_double_clique, gen_double_star, DoubleStarSpec, Edge, Graph, Layout};
use crate::reduction::{is_irreducible, merge_table, reduce_to_irreducible, MergeStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    #[serde(rename = "DS")]
    DoubleStar,
    #[serde(rename = "DC")]
    DoubleClique,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::DoubleStar => "DS",
            GraphKind::DoubleClique => "DC",
        }
    }

    pub fn build(self, spec: DoubleStarSpec) -> Graph {
        match self {
            GraphKind::DoubleStar => gen_double_star(spec),
            GraphKind::DoubleClique => gen_double_clique(spec),
        }
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ds" => Ok(GraphKind::DoubleStar),
            "dc" => Ok(GraphKind::DoubleClique),
            _ => Err(Error::Parse(format!("unknown graph kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
    D,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::A, Condition::B, Condition::C, Condition::D];

    pub fn graph_kind(self) -> GraphKind {
        match self {
            Condition::C => GraphKind::DoubleClique,
            _ => GraphKind::DoubleStar,
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Condition::A => Mode::VERTEX,
            Condition::B => Mode::EDGE,
            Condition::C => Mode::VERTEX_PROPER,
            Condition::D => Mode::EDGE_PROPER,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Condition::A => 'a',
            Condition::B => 'b',
            Condition::C => 'c',
            Condition::D => 'd',
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Condition::A),
            "b" => Ok(Condition::B),
            "c" => Ok(Condition::C),
            "d" => Ok(Condition::D),
            _ => Err(Error::Parse(format!("unknown condition {s:?}"))),
        }
    }
}

/// An injection of the smaller leaf set into the larger one.
///
/// For `m ≤ n` position `i` holds the index in `Y` of the image of the `i`-th
/// vertex of `X`; for `m > n` the roles of `X` and `Y` are swapped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InjectionWitness {
    mapping: Vec<usize>,
}

impl InjectionWitness {
    pub fn new(spec: DoubleStarSpec, mapping: Vec<usize>) -> Result<Self> {
        let (small, large) = sides(spec);
        if mapping.len() != small {
            return Err(Error::InvalidInjection(format!(
                "expected {small} images, found {}",
                mapping.len()
            )));
        }
        let mut seen = vec![false; large];
        for &j in &mapping {
            if j >= large {
                return Err(Error::InvalidInjection(format!(
                    "image {j} out of range for a set of size {large}"
                )));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidInjection(format!("image {j} used twice")));
            }
        }
        Ok(InjectionWitness { mapping })
    }

    /// `i ↦ i`.
    pub fn canonical(spec: DoubleStarSpec) -> Self {
        InjectionWitness {
            mapping: (0..sides(spec).0).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }
}

fn sides(spec: DoubleStarSpec) -> (usize, usize) {
    let (m, n) = (spec.x_size(), spec.y_size());
    (m.min(n), m.max(n))
}

/// A departure from the direct construction rule, recorded in the stamp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Adjustment {
    /// The `DS(1, 1)` corner, found by exhaustive search.
    DegenerateSearch,
    /// Centre colours taken from a scan rather than the direct rule.
    HubScan,
    /// A pendant edge recoloured with a new colour.
    PendantRecoloured { edge: Edge, colour: ColourId },
    /// The candidate was merged down to an irreducible colouring.
    Reduced { steps: Vec<MergeStep> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationStamp {
    pub suitable: bool,
    pub irreducible: bool,
    pub colours_used: usize,
    pub adjustments: Vec<Adjustment>,
}

/// A verified irreducible colouring for one of the four conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaColouring {
    graph_kind: GraphKind,
    m: usize,
    n: usize,
    condition: Condition,
    payload: AnyColouring,
    verification: VerificationStamp,
}

#[derive(Deserialize)]
struct RawLemmaColouring {
    m: usize,
    n: usize,
    condition: Condition,
    payload: serde_json::Value,
}

impl LemmaColouring {
    /// Verifies `payload` against `condition` and wraps it.
    pub fn verify(
        spec: DoubleStarSpec,
        condition: Condition,
        payload: AnyColouring,
    ) -> Result<Self> {
        Self::verified(spec, condition, payload, Vec::new())
    }

    fn verified(
        spec: DoubleStarSpec,
        condition: Condition,
        payload: AnyColouring,
        adjustments: Vec<Adjustment>,
    ) -> Result<Self> {
        let g = condition.graph_kind().build(spec);
        let mode = condition.mode();
        let (suitable, irreducible) = match &payload {
            AnyColouring::Vertex(c) => check(&g, c, mode)?,
            AnyColouring::Edge(c) => check(&g, c, mode)?,
        };
        if !(suitable && irreducible) {
            return Err(Error::VerificationFailed(format!(
                "condition {condition} on {spec:?}: suitable={suitable}, irreducible={irreducible}"
            )));
        }
        Ok(LemmaColouring {
            graph_kind: condition.graph_kind(),
            m: spec.x_size(),
            n: spec.y_size(),
            condition,
            verification: VerificationStamp {
                suitable,
                irreducible,
                colours_used: payload.used_colours().len(),
                adjustments,
            },
            payload,
        })
    }

    /// Parses the JSON form and re-verifies it; the stamp is recomputed.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLemmaColouring =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let spec = DoubleStarSpec::new(raw.m, raw.n)?;
        let payload = AnyColouring::from_value(raw.payload, raw.condition.mode().target)?;
        Self::verify(spec, raw.condition, payload)
    }

    pub fn spec(&self) -> DoubleStarSpec {
        DoubleStarSpec::new(self.m, self.n).expect("validated")
    }

    pub fn graph_kind(&self) -> GraphKind {
        self.graph_kind
    }

    pub fn condition(&self) -> Condition {
        self.condition
    }

    pub fn payload(&self) -> &AnyColouring {
        &self.payload
    }

    pub fn graph(&self) -> Graph {
        self.graph_kind.build(self.spec())
    }

    pub fn stamp(&self) -> &VerificationStamp {
        &self.verification
    }

    fn vertex(&self, expected: Condition) -> Result<&VertexColouring> {
        self.expect(expected)?;
        Ok(self
            .payload
            .as_vertex()
            .expect("condition fixes the target"))
    }

    fn edge(&self, expected: Condition) -> Result<&EdgeColouring> {
        self.expect(expected)?;
        Ok(self.payload.as_edge().expect("condition fixes the target"))
    }

    fn expect(&self, expected: Condition) -> Result<()> {
        if self.condition != expected {
            return Err(Error::WrongCondition {
                expected: expected.letter(),
                found: self.condition.letter(),
            });
        }
        Ok(())
    }
}

fn check<C: Colouring>(g: &Graph, c: &C, mode: Mode) -> Result<(bool, bool)> {
    let suitable = is_suitable(g, c, mode)?;
    let irreducible = suitable && is_irreducible(g, c, mode)?;
    Ok((suitable, irreducible))
}

/// Returns the first candidate that is suitable and irreducible. Failing
/// that, reduces the first suitable candidate.
fn settle<C: Colouring>(
    g: &Graph,
    mode: Mode,
    candidates: impl IntoIterator<Item = (C, Vec<Adjustment>)>,
) -> Result<(C, Vec<Adjustment>)> {
    let mut first_suitable = None;
    for (c, adjustments) in candidates {
        if !is_suitable(g, &c, mode)? {
            continue;
        }
        if is_irreducible(g, &c, mode)? {
            return Ok((c, adjustments));
        }
        if first_suitable.is_none() {
            first_suitable = Some((c, adjustments));
        }
    }
    let (c, mut adjustments) = first_suitable
        .ok_or_else(|| Error::VerificationFailed(format!("no suitable {mode} candidate")))?;
    let trace = reduce_to_irreducible(g, &c, mode)?;
    adjustments.push(Adjustment::Reduced { steps: trace.steps });
    Ok((trace.final_colouring, adjustments))
}

fn leaf_sets(c: &VertexColouring, l: Layout) -> (BTreeSet<ColourId>, BTreeSet<ColourId>) {
    (
        l.xs().map(|v| c.get(v)).collect(),
        l.ys().map(|v| c.get(v)).collect(),
    )
}

fn next_colour<'a>(colours: impl IntoIterator<Item = &'a ColourId>) -> ColourId {
    colours
        .into_iter()
        .max()
        .map_or(ColourId(0), |c| ColourId(c.0 + 1))
}

fn with_hubs(
    base: &VertexColouring,
    l: Layout,
    x_hub: ColourId,
    y_hub: ColourId,
) -> VertexColouring {
    let mut c = base.clone();
    c.set(l.x_hub(), x_hub);
    c.set(l.y_hub(), y_hub);
    c
}

/// Every `(x', y')` colour pair over `palette` in lexicographic order,
/// flagged as a scan.
fn hub_scan(
    base: &VertexColouring,
    l: Layout,
    palette: Vec<ColourId>,
) -> impl Iterator<Item = (VertexColouring, Vec<Adjustment>)> + '_ {
    palette
        .clone()
        .into_iter()
        .cartesian_product(palette)
        .map(move |(p, q)| (with_hubs(base, l, p, q), vec![Adjustment::HubScan]))
}

/// Centre colours for a proper colouring of `DC`: `x'` takes a colour of
/// `c[Y] \ c[X]`, `y'` one of `c[X] \ c[Y]`, each falling back to a new colour.
fn proper_hubs(cx: &BTreeSet<ColourId>, cy: &BTreeSet<ColourId>) -> (ColourId, ColourId) {
    let fresh = next_colour(cx.union(cy));
    let x_hub = cy.difference(cx).next().copied().unwrap_or(fresh);
    let y_hub = cx
        .difference(cy)
        .next()
        .copied()
        .unwrap_or(if x_hub == fresh {
            ColourId(fresh.0 + 1)
        } else {
            fresh
        });
    (x_hub, y_hub)
}

fn hub_palette(cx: &BTreeSet<ColourId>, cy: &BTreeSet<ColourId>) -> Vec<ColourId> {
    let fresh = next_colour(cx.union(cy));
    cx.union(cy)
        .copied()
        .chain([fresh, ColourId(fresh.0 + 1)])
        .collect()
}

/// Lexicographically least normalised colouring of `g` that is suitable and
/// irreducible for `mode`.
fn least_irreducible(g: &Graph, mode: Mode) -> Result<VertexColouring> {
    let n = g.vertex_count();
    let mut rgs = vec![0u32; n];
    loop {
        let c = VertexColouring::from_values(&rgs);
        if check(g, &c, mode)? == (true, true) {
            return Ok(c);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return Err(Error::VerificationFailed(format!(
                    "no irreducible {mode} colouring"
                )));
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
                break;
            }
        }
    }
}

/// Condition-a colouring of `DS(X, Y)` from an injection of the smaller leaf
/// set into the larger.
///
/// Each vertex of the smaller set gets its own colour and passes it to its
/// image; the rest of the larger set gets further new colours. If the
/// injection is a bijection the centres get the two smallest colours,
/// otherwise both get the smallest. `DS(1, 1)` is handled by search.
pub fn construct_from_injection(
    spec: DoubleStarSpec,
    f: &InjectionWitness,
) -> Result<LemmaColouring> {
    let f = InjectionWitness::new(spec, f.mapping.clone())?;
    let g = gen_double_star(spec);
    let l = spec.layout();
    if spec.x_size() == 1 && spec.y_size() == 1 {
        let c = least_irreducible(&g, Mode::VERTEX)?;
        return LemmaColouring::verified(
            spec,
            Condition::A,
            AnyColouring::Vertex(c),
            vec![Adjustment::DegenerateSearch],
        );
    }
    let swapped = spec.x_size() > spec.y_size();
    let small_vertex = |i| if swapped { l.y(i) } else { l.x(i) };
    let large_vertex = |j| if swapped { l.x(j) } else { l.y(j) };
    let (small, large) = sides(spec);
    let mut c = VertexColouring::from_values(&vec![0; spec.vertex_count()]);
    let mut hit = vec![false; large];
    for (i, &j) in f.mapping.iter().enumerate() {
        c.set(small_vertex(i), ColourId(i as u32));
        c.set(large_vertex(j), ColourId(i as u32));
        hit[j] = true;
    }
    for (next, j) in (small as u32..).zip((0..large).filter(|&j| !hit[j])) {
        c.set(large_vertex(j), ColourId(next));
    }
    let (x_hub, y_hub) = if small == large {
        (ColourId(0), ColourId(1))
    } else {
        (ColourId(0), ColourId(0))
    };
    let c = with_hubs(&c, l, x_hub, y_hub);
    LemmaColouring::verified(spec, Condition::A, AnyColouring::Vertex(c), Vec::new())
}

/// Condition a to b: pendant edges inherit the colour of their leaf, `x'y'`
/// takes the smallest used colour that works.
pub fn transform_a_to_b(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let c = lc.vertex(Condition::A)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_star(spec);
    let used: Vec<ColourId> = used_colours(c).into_iter().collect();

    let mut base = EdgeColouring::new();
    for i in 0..l.m {
        base.set(l.x_edge(i), c.get(l.x(i)));
    }
    for j in 0..l.n {
        base.set(l.y_edge(j), c.get(l.y(j)));
    }
    let with_hub = |base: &EdgeColouring, colour: ColourId| {
        let mut e = base.clone();
        e.set(l.hub_edge(), colour);
        e
    };
    let mut candidates: Vec<(EdgeColouring, Vec<Adjustment>)> = used
        .iter()
        .map(|&k| (with_hub(&base, k), Vec::new()))
        .collect();
    if l.m == l.n {
        // equal leaf colour sets leave the swap of the two stars intact
        let fresh = next_colour(&used);
        let mut recoloured = base.clone();
        recoloured.set(l.x_edge(0), fresh);
        let adjustment = Adjustment::PendantRecoloured {
            edge: l.x_edge(0),
            colour: fresh,
        };
        candidates.extend(
            used.iter()
                .chain([&fresh])
                .map(|&k| (with_hub(&recoloured, k), vec![adjustment.clone()])),
        );
    }
    let (e, adjustments) = settle(&g, Mode::EDGE, candidates)?;
    LemmaColouring::verified(spec, Condition::B, AnyColouring::Edge(e), adjustments)
}

/// Condition b to a: each leaf takes the colour of its pendant edge; the
/// centres take two different used colours, or one shared colour when
/// `|X| = |Y| = 1`.
pub fn transform_b_to_a(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let e = lc.edge(Condition::B)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_star(spec);
    let used: Vec<ColourId> = used_colours(e).into_iter().collect();

    let mut base = VertexColouring::from_values(&vec![0; spec.vertex_count()]);
    for i in 0..l.m {
        base.set(l.x(i), e.get(l.x_edge(i)).expect("total"));
    }
    for j in 0..l.n {
        base.set(l.y(j), e.get(l.y_edge(j)).expect("total"));
    }
    let distinct = l.m > 1 || l.n > 1;
    let literal = used
        .iter()
        .cartesian_product(used.iter())
        .filter(|(p, q)| (p != q) == distinct)
        .map(|(&p, &q)| (with_hubs(&base, l, p, q), Vec::new()));
    let (cx, cy) = leaf_sets(&base, l);
    let scan = hub_scan(&base, l, hub_palette(&cx, &cy));
    let (c, adjustments) = settle(&g, Mode::VERTEX, literal.chain(scan))?;
    LemmaColouring::verified(spec, Condition::A, AnyColouring::Vertex(c), adjustments)
}

/// Condition a to c: leaf colours are kept on `DC(X, Y)`. If `c[X] = c[Y]`
/// both centres get new distinct colours; otherwise `x'` takes a colour
/// of `c[Y] \ c[X]` and `y'` a colour of `c[X] \ c[Y]`, with new colours
/// standing in for empty differences.
pub fn transform_a_to_c(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let c = lc.vertex(Condition::A)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_clique(spec);
    let (cx, cy) = leaf_sets(c, l);
    let (x_hub, y_hub) = proper_hubs(&cx, &cy);
    let literal = std::iter::once((with_hubs(c, l, x_hub, y_hub), Vec::new()));
    let scan = hub_scan(c, l, hub_palette(&cx, &cy));
    let (out, adjustments) = settle(&g, Mode::VERTEX_PROPER, literal.chain(scan))?;
    LemmaColouring::verified(spec, Condition::C, AnyColouring::Vertex(out), adjustments)
}

/// Condition c to a: the colouring is read on `DS(X, Y)`. If `c[X] = c[Y]`,
/// `x'` takes the smallest colour of `c[X]` and `y'` a new colour.
pub fn transform_c_to_a(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let c = lc.vertex(Condition::C)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_star(spec);
    let (cx, cy) = leaf_sets(c, l);
    let literal = if cx == cy {
        let first = *cx.iter().next().expect("X is non-empty");
        with_hubs(c, l, first, next_colour(cx.union(&cy)))
    } else {
        c.clone()
    };
    let scan = hub_scan(c, l, hub_palette(&cx, &cy));
    let (out, adjustments) = settle(
        &g,
        Mode::VERTEX,
        std::iter::once((literal, Vec::new())).chain(scan),
    )?;
    LemmaColouring::verified(spec, Condition::A, AnyColouring::Vertex(out), adjustments)
}

/// Condition c to d: pendant edges inherit the colour of their leaf and
/// `x'y'` gets a new colour. When `|X| = |Y|` and that is not enough, one edge
/// `x x'` is recoloured with another new colour.
pub fn transform_c_to_d(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let c = lc.vertex(Condition::C)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_star(spec);
    let (cx, cy) = leaf_sets(c, l);
    let fresh = next_colour(cx.union(&cy));

    let mut e = EdgeColouring::new();
    for i in 0..l.m {
        e.set(l.x_edge(i), c.get(l.x(i)));
    }
    for j in 0..l.n {
        e.set(l.y_edge(j), c.get(l.y(j)));
    }
    e.set(l.hub_edge(), fresh);
    let mut candidates = vec![(e.clone(), Vec::new())];
    if l.m == l.n {
        let colour = ColourId(fresh.0 + 1);
        let mut recoloured = e;
        recoloured.set(l.x_edge(0), colour);
        candidates.push((
            recoloured,
            vec![Adjustment::PendantRecoloured {
                edge: l.x_edge(0),
                colour,
            }],
        ));
    }
    let (out, adjustments) = settle(&g, Mode::EDGE_PROPER, candidates)?;
    LemmaColouring::verified(spec, Condition::D, AnyColouring::Edge(out), adjustments)
}

/// Condition d to c: each leaf takes the colour of its pendant edge; `x'`
/// takes a colour of `c[Y] \ c[X]` and `y'` a colour of `c[X] \ c[Y]`, with
/// new (mutually distinct) colours standing in for empty differences.
pub fn transform_d_to_c(lc: &LemmaColouring) -> Result<LemmaColouring> {
    let e = lc.edge(Condition::D)?;
    let spec = lc.spec();
    let l = spec.layout();
    let g = gen_double_clique(spec);
    let mut base = VertexColouring::from_values(&vec![0; spec.vertex_count()]);
    for i in 0..l.m {
        base.set(l.x(i), e.get(l.x_edge(i)).expect("total"));
    }
    for j in 0..l.n {
        base.set(l.y(j), e.get(l.y_edge(j)).expect("total"));
    }
    let (cx, cy) = leaf_sets(&base, l);
    let (x_hub, y_hub) = proper_hubs(&cx, &cy);
    let literal = std::iter::once((with_hubs(&base, l, x_hub, y_hub), Vec::new()));
    let scan = hub_scan(&base, l, hub_palette(&cx, &cy));
    let (out, adjustments) = settle(&g, Mode::VERTEX_PROPER, literal.chain(scan))?;
    LemmaColouring::verified(spec, Condition::C, AnyColouring::Vertex(out), adjustments)
}

/// One produced colouring in a [`LemmaReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub step: &'static str,
    pub colouring: LemmaColouring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witnessed {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl Witnessed {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub m: usize,
    pub n: usize,
    pub injection: InjectionWitness,
    pub entries: Vec<ReportEntry>,
    pub witnessed: Witnessed,
    pub oracle_checked: bool,
}

/// Runs the construction and all six transforms for `spec`, and reports
/// which conditions were witnessed.
///
/// With `oracle` set, every produced colouring and every merge in its
/// irreducibility check is re-decided against the brute-force automorphism
/// list; this needs `m + n + 2 ≤ 8`.
pub fn verify_lemma_equivalence(spec: DoubleStarSpec, oracle: bool) -> Result<LemmaReport> {
    if oracle && spec.vertex_count() > ORACLE_LIMIT {
        return Err(Error::TooLargeForOracle {
            vertices: spec.vertex_count(),
            limit: ORACLE_LIMIT,
        });
    }
    let injection = InjectionWitness::canonical(spec);
    let a = construct_from_injection(spec, &injection)?;
    let b = transform_a_to_b(&a)?;
    let a_from_b = transform_b_to_a(&b)?;
    let c = transform_a_to_c(&a)?;
    let a_from_c = transform_c_to_a(&c)?;
    let d = transform_c_to_d(&c)?;
    let c_from_d = transform_d_to_c(&d)?;
    let entries = vec![
        ReportEntry {
            step: "construct",
            colouring: a,
        },
        ReportEntry {
            step: "a->b",
            colouring: b,
        },
        ReportEntry {
            step: "b->a",
            colouring: a_from_b,
        },
        ReportEntry {
            step: "a->c",
            colouring: c,
        },
        ReportEntry {
            step: "c->a",
            colouring: a_from_c,
        },
        ReportEntry {
            step: "c->d",
            colouring: d,
        },
        ReportEntry {
            step: "d->c",
            colouring: c_from_d,
        },
    ];
    if oracle {
        for entry in &entries {
            oracle_recheck(&entry.colouring)?;
        }
    }
    let has = |cond: Condition| entries.iter().any(|e| e.colouring.condition == cond);
    Ok(LemmaReport {
        m: spec.x_size(),
        n: spec.y_size(),
        injection,
        witnessed: Witnessed {
            a: has(Condition::A),
            b: has(Condition::B),
            c: has(Condition::C),
            d: has(Condition::D),
        },
        entries,
        oracle_checked: oracle,
    })
}

/// Re-decides suitability of the colouring and of each of its merges with
/// the brute-force oracle, and fails on any disagreement with the kernel.
pub fn oracle_recheck(lc: &LemmaColouring) -> Result<()> {
    let g = lc.graph();
    let mode = lc.condition.mode();
    let auts = aut::all_automorphisms_bruteforce(&g)?;
    match &lc.payload {
        AnyColouring::Vertex(c) => oracle_recheck_colouring(&g, c, mode, &auts),
        AnyColouring::Edge(c) => oracle_recheck_colouring(&g, c, mode, &auts),
    }
}

fn oracle_recheck_colouring<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
    auts: &[crate::perm::Permutation],
) -> Result<()> {
    if !is_suitable_among(g, c, mode, auts)? {
        return Err(Error::VerificationFailed(
            "oracle finds the colouring unsuitable".into(),
        ));
    }
    for check in merge_table(g, c, mode)? {
        let merged = crate::reduction::merge(c, check.into, check.from);
        if is_suitable_among(g, &merged, mode, auts)? != check.witness.is_none() {
            return Err(Error::VerificationFailed(format!(
                "oracle disagrees on merging {} into {}",
                check.from, check.into
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::same_partition;

    fn spec(m: usize, n: usize) -> DoubleStarSpec {
        DoubleStarSpec::new(m, n).unwrap()
    }

    fn vertex(lc: &LemmaColouring) -> &VertexColouring {
        lc.payload().as_vertex().unwrap()
    }

    #[test]
    fn construct_one_two() {
        let s = spec(1, 2);
        let a = construct_from_injection(s, &InjectionWitness::new(s, vec![0]).unwrap()).unwrap();
        // x, x', y', y0, y1
        assert_eq!(vertex(&a).values(), vec![0, 0, 0, 0, 1]);
        assert!(a.stamp().adjustments.is_empty());
    }

    #[test]
    fn construct_bijection_uses_distinct_centre_colours() {
        let s = spec(2, 2);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let c = vertex(&a);
        let l = s.layout();
        assert_ne!(c.get(l.x_hub()), c.get(l.y_hub()));
        assert_eq!(c.values(), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn construct_degenerate() {
        let s = spec(1, 1);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        assert_eq!(a.stamp().adjustments, vec![Adjustment::DegenerateSearch]);
        assert_eq!(vertex(&a).values(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn construct_with_explicit_injection() {
        let s = spec(2, 3);
        let a =
            construct_from_injection(s, &InjectionWitness::new(s, vec![0, 2]).unwrap()).unwrap();
        // x0 x1 x' y' y0 y1 y2
        assert_eq!(vertex(&a).values(), vec![0, 1, 0, 0, 0, 2, 1]);
        assert_eq!(a.stamp().colours_used, 3);
    }

    #[test]
    fn construct_swaps_roles() {
        let s = spec(3, 1);
        let a = construct_from_injection(s, &InjectionWitness::new(s, vec![2]).unwrap()).unwrap();
        assert_eq!(vertex(&a).values(), vec![1, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn bad_injections() {
        let s = spec(2, 3);
        assert!(InjectionWitness::new(s, vec![0]).is_err());
        assert!(InjectionWitness::new(s, vec![1, 1]).is_err());
        assert!(InjectionWitness::new(s, vec![0, 3]).is_err());
    }

    #[test]
    fn wrong_condition_is_rejected() {
        let s = spec(2, 3);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        assert!(matches!(
            transform_b_to_a(&a),
            Err(Error::WrongCondition { .. })
        ));
    }

    #[test]
    fn a_to_b_one_one_uses_two_colours() {
        let s = spec(1, 1);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let b = transform_a_to_b(&a).unwrap();
        assert_eq!(b.payload().as_edge().unwrap().values(), vec![0, 0, 1]);
        assert_eq!(b.stamp().colours_used, 2);
    }

    #[test]
    fn a_to_b_two_three() {
        let s = spec(2, 3);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let b = transform_a_to_b(&a).unwrap();
        assert_eq!(b.payload().as_edge().unwrap().len(), 6);
        assert!(b.stamp().colours_used <= 5);
        assert!(b.stamp().adjustments.is_empty());
    }

    #[test]
    fn b_to_a_centre_rules() {
        let s = spec(1, 1);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let back = transform_b_to_a(&transform_a_to_b(&a).unwrap()).unwrap();
        let l = s.layout();
        assert_eq!(vertex(&back).get(l.x_hub()), vertex(&back).get(l.y_hub()));

        let s = spec(2, 3);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let back = transform_b_to_a(&transform_a_to_b(&a).unwrap()).unwrap();
        let l = s.layout();
        assert_ne!(vertex(&back).get(l.x_hub()), vertex(&back).get(l.y_hub()));
        assert!(back.stamp().adjustments.is_empty());
    }

    #[test]
    fn a_to_c_equal_leaf_sets_get_fresh_centres() {
        let s = spec(2, 2);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let c = transform_a_to_c(&a).unwrap();
        assert_eq!(vertex(&c).values(), vec![0, 1, 2, 3, 0, 1]);
        assert!(c.stamp().adjustments.is_empty());
    }

    #[test]
    fn a_to_c_unequal_leaf_sets() {
        let s = spec(1, 3);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let c = transform_a_to_c(&a).unwrap();
        // x' takes the smallest colour of c[Y] \ c[X], y' a new colour
        assert_eq!(vertex(&c).values(), vec![0, 1, 3, 0, 1, 2]);
    }

    #[test]
    fn c_to_d_recolours_a_pendant_when_sides_match() {
        let s = spec(2, 2);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let d = transform_c_to_d(&transform_a_to_c(&a).unwrap()).unwrap();
        assert!(matches!(
            d.stamp().adjustments[..],
            [Adjustment::PendantRecoloured { .. }]
        ));
    }

    #[test]
    fn proper_centre_colours() {
        let set = |v: &[u32]| v.iter().map(|&k| ColourId(k)).collect::<BTreeSet<_>>();
        assert_eq!(
            proper_hubs(&set(&[0]), &set(&[1, 2])),
            (ColourId(1), ColourId(0))
        );
        assert_eq!(
            proper_hubs(&set(&[0, 1]), &set(&[0, 1])),
            (ColourId(2), ColourId(3))
        );
        assert_eq!(
            proper_hubs(&set(&[0]), &set(&[0, 1])),
            (ColourId(1), ColourId(2))
        );
        assert_eq!(
            proper_hubs(&set(&[0, 2]), &set(&[0])),
            (ColourId(3), ColourId(2))
        );
    }

    #[test]
    fn round_trip_partitions_for_unequal_sides() {
        let s = spec(2, 4);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let l = s.layout();
        let leaves = |lc: &LemmaColouring| {
            VertexColouring::new(l.xs().chain(l.ys()).map(|v| vertex(lc).get(v)).collect())
        };
        let back = transform_b_to_a(&transform_a_to_b(&a).unwrap()).unwrap();
        assert!(same_partition(&leaves(&a), &leaves(&back)));
        let c = transform_a_to_c(&a).unwrap();
        let back = transform_c_to_a(&c).unwrap();
        assert!(same_partition(&leaves(&a), &leaves(&back)));
        let c_again = transform_d_to_c(&transform_c_to_d(&c).unwrap()).unwrap();
        assert!(same_partition(&leaves(&c), &leaves(&c_again)));
    }

    #[test]
    fn lemma_json_round_trip() {
        let s = spec(2, 3);
        let a = construct_from_injection(s, &InjectionWitness::canonical(s)).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.starts_with(r#"{"graph_kind":"DS","m":2,"n":3,"condition":"a","payload":["#));
        let back = LemmaColouring::from_json(&text).unwrap();
        assert_eq!(back.payload(), a.payload());
        let forged = text.replace("\"payload\":[0,1,", "\"payload\":[0,0,");
        assert!(LemmaColouring::from_json(&forged).is_err());
    }

    #[test]
    fn report_small_cases() {
        for (m, n) in [(1, 1), (2, 3), (3, 3)] {
            let report = verify_lemma_equivalence(spec(m, n), true).unwrap();
            assert!(report.witnessed.all());
            assert_eq!(report.entries.len(), 7);
        }
    }
}
