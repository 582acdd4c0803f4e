//! Certificates: verdicts with enough evidence to be re-checked from the JSON
//! alone.
//!
//! A negative verdict carries an [`Obstruction`], which [`recheck`] verifies
//! directly. A positive "distinguishing" verdict carries either the discrete
//! equitable partition of the coloured graph (any preserving automorphism
//! fixes every cell, so a discrete partition leaves only the identity) or,
//! when colour refinement alone does not separate the vertices, a note that
//! the automorphism search was exhausted; rechecking the latter repeats the
//! search. Irreducibility adds the outcome of every merge of two used colours.

use serde::{Deserialize, Serialize};

use crate::aut::{self, AutQuery, ORACLE_LIMIT};
use crate::colouring::{
    suitability_obstruction, used_colours, AnyColouring, Colouring, Mode, Obstruction, Target,
};
use crate::doublestar::{Condition, GraphKind, LemmaColouring};
use crate::error::{Error, Result};
use crate::graph::{DoubleStarSpec, Graph};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::params::{edge_obstruction, Checker, Minimal, StructuralObstruction, Variant};
use crate::reduction::{merge, merge_table, MergeCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Distinguishing,
    Irreducible,
    Impossible,
    MinimalNumber,
    LemmaWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subject {
    pub graph6: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring: Option<AnyColouring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    /// Why the colouring is not suitable.
    Obstruction { obstruction: Obstruction },
    /// Discrete equitable partition of the coloured graph, one cell per vertex.
    Refinement { cells: Vec<u32> },
    /// No non-identity preserving automorphism exists; found by exhaustive search.
    Search { checker: Checker },
    /// No suitable colouring exists at all.
    Structural { obstruction: StructuralObstruction },
    /// Suitability of the colouring, then the outcome of every merge `from -> into`.
    MergeTable {
        suitability: Box<Evidence>,
        merges: Vec<MergeCheck>,
    },
    /// The subject colouring is a suitable colouring with `colours` colours.
    /// `rejected_below` counts the smaller candidates the search rejected.
    Minimum {
        variant: Variant,
        colours: usize,
        rejected_below: u64,
        suitability: Box<Evidence>,
    },
    Lemma {
        graph_kind: GraphKind,
        m: usize,
        n: usize,
        condition: Condition,
        suitability: Box<Evidence>,
        merges: Vec<MergeCheck>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub subject: Subject,
    pub verdict: bool,
    pub evidence: Evidence,
}

#[derive(Deserialize)]
struct RawSubject {
    graph6: String,
    mode: Mode,
    colouring: Option<serde_json::Value>,
}

#[derive(Deserialize)]
struct RawCertificate {
    kind: CertificateKind,
    subject: RawSubject,
    verdict: bool,
    evidence: Evidence,
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCertificate =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
        let colouring = raw
            .subject
            .colouring
            .map(|v| AnyColouring::from_value(v, raw.subject.mode.target))
            .transpose()?;
        Ok(Certificate {
            kind: raw.kind,
            subject: Subject {
                graph6: raw.subject.graph6,
                mode: raw.subject.mode,
                colouring,
            },
            verdict: raw.verdict,
            evidence: raw.evidence,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialise")
    }
}

fn subject(g: &Graph, mode: Mode, colouring: Option<AnyColouring>) -> Result<Subject> {
    Ok(Subject {
        graph6: emit_graph6(g)?,
        mode,
        colouring,
    })
}

fn target_matches(c: &AnyColouring, mode: Mode) -> Result<()> {
    if c.target() != mode.target {
        return Err(Error::ModeMismatch {
            expected: mode.target.name(),
            found: c.target().name(),
        });
    }
    Ok(())
}

/// Suitability verdict for `c` together with its evidence.
pub fn suitability_evidence<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
) -> Result<(bool, Evidence)> {
    if let Some(obstruction) = suitability_obstruction(g, c, mode)? {
        return Ok((false, Evidence::Obstruction { obstruction }));
    }
    let cells = aut::equitable_refinement(&AutQuery::new(g, c.constraint())?);
    if is_discrete(&cells) {
        Ok((true, Evidence::Refinement { cells }))
    } else {
        Ok((
            true,
            Evidence::Search {
                checker: Checker::Kernel,
            },
        ))
    }
}

fn is_discrete(cells: &[u32]) -> bool {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

fn any_suitability_evidence(g: &Graph, c: &AnyColouring, mode: Mode) -> Result<(bool, Evidence)> {
    match c {
        AnyColouring::Vertex(c) => suitability_evidence(g, c, mode),
        AnyColouring::Edge(c) => suitability_evidence(g, c, mode),
    }
}

fn any_merge_table(g: &Graph, c: &AnyColouring, mode: Mode) -> Result<Vec<MergeCheck>> {
    match c {
        AnyColouring::Vertex(c) => merge_table(g, c, mode),
        AnyColouring::Edge(c) => merge_table(g, c, mode),
    }
}

/// Whether `c` is suitable for `mode`. In edge modes a graph with an isolated
/// edge or two isolated vertices gets an impossibility certificate instead.
pub fn distinguishing_certificate(g: &Graph, c: &AnyColouring, mode: Mode) -> Result<Certificate> {
    target_matches(c, mode)?;
    if mode.target == Target::Edge {
        if let Some(obstruction) = edge_obstruction(g) {
            // still validate the colouring against the graph
            any_suitability_evidence(g, c, mode)?;
            return Ok(Certificate {
                kind: CertificateKind::Impossible,
                subject: subject(g, mode, Some(c.clone()))?,
                verdict: true,
                evidence: Evidence::Structural { obstruction },
            });
        }
    }
    let (verdict, evidence) = any_suitability_evidence(g, c, mode)?;
    Ok(Certificate {
        kind: CertificateKind::Distinguishing,
        subject: subject(g, mode, Some(c.clone()))?,
        verdict,
        evidence,
    })
}

/// Irreducibility of a suitable colouring, listing every merge with its
/// failing witness.
pub fn irreducible_certificate(g: &Graph, c: &AnyColouring, mode: Mode) -> Result<Certificate> {
    target_matches(c, mode)?;
    let merges = any_merge_table(g, c, mode)?;
    let (_, suitability) = any_suitability_evidence(g, c, mode)?;
    Ok(Certificate {
        kind: CertificateKind::Irreducible,
        subject: subject(g, mode, Some(c.clone()))?,
        verdict: merges.iter().all(|m| m.witness.is_some()),
        evidence: Evidence::MergeTable {
            suitability: Box::new(suitability),
            merges,
        },
    })
}

/// Certificate for the outcome of a minimal-parameter search.
pub fn minimal_certificate(g: &Graph, variant: Variant, outcome: &Minimal) -> Result<Certificate> {
    let mode = variant.mode();
    match outcome {
        Minimal::Impossible(obstruction) => Ok(Certificate {
            kind: CertificateKind::Impossible,
            subject: subject(g, mode, None)?,
            verdict: true,
            evidence: Evidence::Structural {
                obstruction: obstruction.clone(),
            },
        }),
        Minimal::Found(found) => {
            let (ok, suitability) = any_suitability_evidence(g, &found.witness, mode)?;
            if !ok {
                return Err(Error::VerificationFailed(
                    "search returned an unsuitable witness".into(),
                ));
            }
            Ok(Certificate {
                kind: CertificateKind::MinimalNumber,
                subject: subject(g, mode, Some(found.witness.clone()))?,
                verdict: true,
                evidence: Evidence::Minimum {
                    variant,
                    colours: found.colours,
                    rejected_below: found.rejected_below,
                    suitability: Box::new(suitability),
                },
            })
        }
    }
}

pub fn lemma_certificate(lc: &LemmaColouring) -> Result<Certificate> {
    let g = lc.graph();
    let mode = lc.condition().mode();
    let (ok, suitability) = any_suitability_evidence(&g, lc.payload(), mode)?;
    if !ok {
        return Err(Error::VerificationFailed(
            "lemma colouring is not suitable".into(),
        ));
    }
    let merges = any_merge_table(&g, lc.payload(), mode)?;
    let spec = lc.spec();
    Ok(Certificate {
        kind: CertificateKind::LemmaWitness,
        subject: subject(&g, mode, Some(lc.payload().clone()))?,
        verdict: merges.iter().all(|m| m.witness.is_some()),
        evidence: Evidence::Lemma {
            graph_kind: lc.graph_kind(),
            m: spec.x_size(),
            n: spec.y_size(),
            condition: lc.condition(),
            suitability: Box::new(suitability),
            merges,
        },
    })
}

fn mismatch(what: &str) -> Error {
    Error::VerificationFailed(what.to_string())
}

/// Re-derives the verdict of `cert` from its payload and fails if it differs
/// or if any piece of evidence does not hold.
pub fn recheck(cert: &Certificate) -> Result<()> {
    let g = parse_graph6(&cert.subject.graph6)?;
    let mode = cert.subject.mode;
    let colouring = cert.subject.colouring.as_ref();
    if let Some(c) = colouring {
        target_matches(c, mode)?;
    }
    let need_colouring = || colouring.ok_or_else(|| mismatch("certificate has no colouring"));
    let reproduced = match (&cert.kind, &cert.evidence) {
        (CertificateKind::Distinguishing, evidence) => {
            recheck_suitability(&g, need_colouring()?, mode, evidence)?
        }
        (CertificateKind::Impossible, Evidence::Structural { obstruction }) => {
            mode.target == Target::Edge && obstruction.holds_in(&g)
        }
        (
            CertificateKind::Irreducible,
            Evidence::MergeTable {
                suitability,
                merges,
            },
        ) => {
            let c = need_colouring()?;
            if !recheck_suitability(&g, c, mode, suitability)? {
                return Err(mismatch(
                    "irreducibility certificate for an unsuitable colouring",
                ));
            }
            recheck_merges(&g, c, mode, merges)?
        }
        (
            CertificateKind::MinimalNumber,
            Evidence::Minimum {
                variant,
                colours,
                suitability,
                ..
            },
        ) => {
            let c = need_colouring()?;
            variant.mode() == mode
                && c.used_colours().len() == *colours
                && recheck_suitability(&g, c, mode, suitability)?
        }
        (
            CertificateKind::LemmaWitness,
            Evidence::Lemma {
                graph_kind,
                m,
                n,
                condition,
                suitability,
                merges,
            },
        ) => {
            let c = need_colouring()?;
            let spec = DoubleStarSpec::new(*m, *n)?;
            if condition.graph_kind() != *graph_kind
                || condition.mode() != mode
                || graph_kind.build(spec) != g
            {
                return Err(mismatch(
                    "lemma certificate does not match its graph or mode",
                ));
            }
            recheck_suitability(&g, c, mode, suitability)? && recheck_merges(&g, c, mode, merges)?
        }
        _ => return Err(mismatch("evidence does not fit the certificate kind")),
    };
    if reproduced != cert.verdict {
        return Err(mismatch(&format!(
            "recheck gives verdict {reproduced}, certificate states {}",
            cert.verdict
        )));
    }
    Ok(())
}

fn recheck_suitability(
    g: &Graph,
    c: &AnyColouring,
    mode: Mode,
    evidence: &Evidence,
) -> Result<bool> {
    match c {
        AnyColouring::Vertex(c) => recheck_suitability_of(g, c, mode, evidence),
        AnyColouring::Edge(c) => recheck_suitability_of(g, c, mode, evidence),
    }
}

fn recheck_suitability_of<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
    evidence: &Evidence,
) -> Result<bool> {
    c.check_graph(g)?;
    match evidence {
        Evidence::Obstruction { obstruction } => {
            if !obstruction_holds(g, c, mode, obstruction)? {
                return Err(mismatch("stated obstruction does not hold"));
            }
            Ok(false)
        }
        Evidence::Refinement { cells } => {
            if mode.is_proper() && c.properness_violation(g).is_some() {
                return Err(mismatch("colouring is not proper"));
            }
            let recomputed = aut::equitable_refinement(&AutQuery::new(g, c.constraint())?);
            if &recomputed != cells || !is_discrete(cells) {
                return Err(mismatch(
                    "stated partition is not the discrete equitable partition",
                ));
            }
            Ok(true)
        }
        Evidence::Search { checker } => {
            if mode.is_proper() && c.properness_violation(g).is_some() {
                return Err(mismatch("colouring is not proper"));
            }
            let q = AutQuery::new(g, c.constraint())?;
            let found = match checker {
                Checker::Kernel => aut::find_nontrivial_preserving(&q),
                Checker::Oracle => aut::find_nontrivial_preserving_bruteforce(&q)?,
            };
            if found.is_some() {
                return Err(mismatch("a preserving automorphism exists"));
            }
            if g.vertex_count() <= ORACLE_LIMIT
                && aut::find_nontrivial_preserving_bruteforce(&q)?.is_some()
            {
                return Err(mismatch("brute force finds a preserving automorphism"));
            }
            Ok(true)
        }
        _ => Err(mismatch("not suitability evidence")),
    }
}

fn obstruction_holds<C: Colouring>(g: &Graph, c: &C, mode: Mode, o: &Obstruction) -> Result<bool> {
    let colours = c.colour_sequence();
    Ok(match o {
        Obstruction::Automorphism { permutation } => {
            permutation.len() == g.vertex_count()
                && !permutation.is_identity()
                && aut::is_automorphism(g, permutation)?
                && c.is_preserved_by(g, permutation)?
        }
        Obstruction::AdjacentVertices { u, v } => {
            mode == Mode::VERTEX_PROPER && g.has_edge(*u, *v) && colours[*u] == colours[*v]
        }
        Obstruction::IncidentEdges { first, second } => {
            match (g.edge_index(*first), g.edge_index(*second)) {
                (Some(i), Some(j)) => {
                    mode == Mode::EDGE_PROPER
                        && i != j
                        && first.shares_endpoint(*second)
                        && colours[i] == colours[j]
                }
                _ => false,
            }
        }
    })
}

/// Checks that `merges` lists every pair of used colours once in ascending
/// order and that each stated witness holds; returns whether all merges fail.
fn recheck_merges(g: &Graph, c: &AnyColouring, mode: Mode, merges: &[MergeCheck]) -> Result<bool> {
    match c {
        AnyColouring::Vertex(c) => recheck_merges_of(g, c, mode, merges),
        AnyColouring::Edge(c) => recheck_merges_of(g, c, mode, merges),
    }
}

fn recheck_merges_of<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
    merges: &[MergeCheck],
) -> Result<bool> {
    let used: Vec<_> = used_colours(c).into_iter().collect();
    let expected: Vec<_> = used
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| used[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    let listed: Vec<_> = merges.iter().map(|m| (m.into, m.from)).collect();
    if listed != expected {
        return Err(mismatch(
            "merge table does not list every pair of used colours",
        ));
    }
    let mut all_fail = true;
    for m in merges {
        let merged = merge(c, m.into, m.from);
        match &m.witness {
            Some(o) => {
                if !obstruction_holds(g, &merged, mode, o)? {
                    return Err(mismatch(&format!(
                        "witness for merging {} into {} does not hold",
                        m.from, m.into
                    )));
                }
            }
            None => {
                if suitability_obstruction(g, &merged, mode)?.is_some() {
                    return Err(mismatch(&format!(
                        "merging {} into {} is stated suitable but is not",
                        m.from, m.into
                    )));
                }
                all_fail = false;
            }
        }
    }
    Ok(all_fail)
}
