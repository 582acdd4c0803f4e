//! Command implementations behind the `distcol` binary.
//!
//! Every command returns a [`CommandOutput`]: the JSON document, a short
//! human-readable summary and the exit status. Errors map to exit codes
//! through [`Error::exit_code`].

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::aut::{self, ORACLE_LIMIT};
use crate::cert::{
    distinguishing_certificate, irreducible_certificate, lemma_certificate, minimal_certificate,
    recheck, Certificate, CertificateKind,
};
use crate::colouring::{
    is_suitable_among, AnyColouring, Colouring, EdgeColouring, Mode, VertexColouring,
};
use crate::doublestar::{
    construct_from_injection, transform_a_to_b, transform_a_to_c, transform_b_to_a,
    transform_c_to_a, transform_c_to_d, transform_d_to_c, verify_lemma_equivalence, Condition,
    GraphKind, InjectionWitness, LemmaColouring,
};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, DoubleStarSpec, Graph};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::params::{minimal, Attainable, Checker, SearchConfig, Variant, DEFAULT_CUTOFF};
use crate::perm::Permutation;
use crate::reduction::{merge, reduce_to_irreducible, ReductionTrace};

/// Largest graph the `auto` oracle setting cross-checks.
pub const AUTO_ORACLE_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(InputFormat::Graph6),
            "edgelist" | "edges" => Ok(InputFormat::EdgeList),
            _ => Err(Error::Parse(format!("unknown input format {s:?}"))),
        }
    }
}

/// Whether results are cross-checked against the brute-force automorphism list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleFlag {
    On,
    Off,
    #[default]
    Auto,
}

impl OracleFlag {
    pub fn enabled(self, vertices: usize) -> bool {
        match self {
            OracleFlag::On => true,
            OracleFlag::Off => false,
            OracleFlag::Auto => vertices <= AUTO_ORACLE_LIMIT,
        }
    }
}

impl FromStr for OracleFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on" => Ok(OracleFlag::On),
            "off" => Ok(OracleFlag::Off),
            "auto" => Ok(OracleFlag::Auto),
            _ => Err(Error::Parse(format!(
                "oracle flag must be on, off or auto, not {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    /// `None` picks the format from the file extension, defaulting to graph6.
    pub format: Option<InputFormat>,
    /// `None` means vertex/plain, or the variant's mode for `number`.
    pub mode: Option<Mode>,
    /// A JSON colouring, or a path to a file holding one.
    pub colours: Option<String>,
    pub variant: Option<Variant>,
    pub out: Option<PathBuf>,
    pub oracle: OracleFlag,
    pub cutoff: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            format: None,
            mode: None,
            colours: None,
            variant: None,
            out: None,
            oracle: OracleFlag::Auto,
            cutoff: DEFAULT_CUTOFF,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff == 0 {
            return Err(Error::Parse("cutoff must be positive".into()));
        }
        if let (Some(v), Some(mode)) = (self.variant, self.mode) {
            if v.mode() != mode {
                return Err(Error::Parse(format!(
                    "variant {} needs mode {}, not {mode}",
                    v.name(),
                    v.mode()
                )));
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode
            .or(self.variant.map(Variant::mode))
            .unwrap_or(Mode::VERTEX)
    }

    /// The explicit variant, else the one matching the mode.
    pub fn variant(&self) -> Variant {
        self.variant.unwrap_or_else(|| {
            let mode = self.mode();
            Variant::ALL
                .into_iter()
                .find(|v| v.mode() == mode)
                .expect("every mode has a variant")
        })
    }

    fn input(&self) -> Result<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| Error::Parse("--input is required".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
    InputError,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
            Status::InputError => 2,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::Failure
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    /// The machine-readable result; graph6 text for `ds build`.
    pub document: String,
    pub summary: String,
    pub status: Status,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn format_for(path: &Path, configured: Option<InputFormat>) -> InputFormat {
    configured.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("edges" | "edgelist" | "el" | "txt") => InputFormat::EdgeList,
        _ => InputFormat::Graph6,
    })
}

/// Graphs in a file: one per non-empty line for graph6, one per file for
/// edge lists.
pub fn parse_graphs(text: &str, format: InputFormat) -> Vec<Result<Graph>> {
    match format {
        InputFormat::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(parse_graph6)
            .collect(),
        InputFormat::EdgeList => vec![parse_edge_list(text)],
    }
}

pub fn load_graph(path: &Path, format: Option<InputFormat>) -> Result<Graph> {
    let text = read(path)?;
    let mut graphs = parse_graphs(&text, format_for(path, format)).into_iter();
    match (graphs.next(), graphs.next()) {
        (Some(g), None) => g,
        (None, _) => Err(Error::Parse(format!("{} holds no graph", path.display()))),
        (Some(_), Some(_)) => Err(Error::Parse(format!(
            "{} holds more than one graph; use batch",
            path.display()
        ))),
    }
}

/// Text of a `--colours` argument: inline JSON, or the contents of a file.
fn json_argument(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

fn load_colouring(config: &RunConfig, g: &Graph) -> Result<AnyColouring> {
    let arg = config
        .colours
        .as_deref()
        .ok_or_else(|| Error::Parse("--colours is required".into()))?;
    let c = AnyColouring::from_json(&json_argument(arg)?, config.mode().target)?;
    match &c {
        AnyColouring::Vertex(v) => v.check_graph(g)?,
        AnyColouring::Edge(e) => e.check_graph(g)?,
    }
    Ok(c)
}

fn oracle_automorphisms(config: &RunConfig, g: &Graph) -> Result<Option<Vec<Permutation>>> {
    if !config.oracle.enabled(g.vertex_count()) {
        return Ok(None);
    }
    aut::all_automorphisms_bruteforce(g).map(Some)
}

fn oracle_suitable(g: &Graph, c: &AnyColouring, mode: Mode, auts: &[Permutation]) -> Result<bool> {
    match c {
        AnyColouring::Vertex(c) => is_suitable_among(g, c, mode, auts),
        AnyColouring::Edge(c) => is_suitable_among(g, c, mode, auts),
    }
}

fn disagreement(what: &str) -> Error {
    Error::VerificationFailed(format!("brute-force oracle disagrees: {what}"))
}

#[derive(Serialize)]
struct ReduceOutput {
    trace: AnyTrace,
    guard_triggers: usize,
    certificate: Certificate,
}

#[derive(Serialize)]
struct NumberOutput {
    variant: Variant,
    value: Attainable,
    certificate: Certificate,
}

#[derive(Serialize)]
struct LemmaOutput<'a> {
    lemma: &'a LemmaColouring,
    certificate: &'a Certificate,
}

#[derive(Serialize)]
struct RecheckOutput {
    valid: bool,
    kind: CertificateKind,
    verdict: bool,
}

/// Is the colouring suitable for the mode?
pub fn cmd_check(config: &RunConfig) -> Result<CommandOutput> {
    config.validate()?;
    let g = load_graph(config.input()?, config.format)?;
    let c = load_colouring(config, &g)?;
    let cert = distinguishing_certificate(&g, &c, config.mode())?;
    let suitable = cert.kind == CertificateKind::Distinguishing && cert.verdict;
    if let Some(auts) = oracle_automorphisms(config, &g)? {
        if oracle_suitable(&g, &c, config.mode(), &auts)? != suitable {
            return Err(disagreement("suitability"));
        }
    }
    let summary = match cert.kind {
        CertificateKind::Impossible => format!(
            "{}: no suitable colouring exists for this graph\n",
            config.mode()
        ),
        _ => format!("{}: suitable = {suitable}\n", config.mode()),
    };
    Ok(CommandOutput {
        document: pretty(&cert),
        summary,
        status: Status::from_ok(suitable),
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum AnyTrace {
    Vertex(ReductionTrace<VertexColouring>),
    Edge(ReductionTrace<EdgeColouring>),
}

struct Reduced {
    trace: AnyTrace,
    final_colouring: AnyColouring,
    states: Vec<AnyColouring>,
    steps: usize,
    guard_triggers: usize,
}

fn reduce_any(g: &Graph, c: &AnyColouring, mode: Mode) -> Result<Reduced> {
    fn run<C: Colouring>(
        g: &Graph,
        c: &C,
        mode: Mode,
        wrap: fn(ReductionTrace<C>) -> AnyTrace,
    ) -> Result<Reduced> {
        let trace: ReductionTrace<C> = reduce_to_irreducible(g, c, mode)?;
        trace.verify(g)?;
        Ok(Reduced {
            final_colouring: trace.final_colouring.clone().into_any(),
            states: trace
                .replay()
                .into_iter()
                .map(Colouring::into_any)
                .collect(),
            steps: trace.steps.len(),
            guard_triggers: trace.guard_triggers,
            trace: wrap(trace),
        })
    }
    match c {
        AnyColouring::Vertex(c) => run(g, c, mode, AnyTrace::Vertex),
        AnyColouring::Edge(c) => run(g, c, mode, AnyTrace::Edge),
    }
}

/// Merges colour classes of a suitable colouring until it is irreducible.
pub fn cmd_reduce(config: &RunConfig) -> Result<CommandOutput> {
    config.validate()?;
    let g = load_graph(config.input()?, config.format)?;
    let c = load_colouring(config, &g)?;
    let reduced = reduce_any(&g, &c, config.mode())?;
    let cert = irreducible_certificate(&g, &reduced.final_colouring, config.mode())?;
    if let Some(auts) = oracle_automorphisms(config, &g)? {
        for state in &reduced.states {
            if !oracle_suitable(&g, state, config.mode(), &auts)? {
                return Err(disagreement("an intermediate colouring is not suitable"));
            }
        }
        let all_merges_fail = match &reduced.final_colouring {
            AnyColouring::Vertex(f) => merges_fail(&g, f, config.mode(), &auts)?,
            AnyColouring::Edge(f) => merges_fail(&g, f, config.mode(), &auts)?,
        };
        if !all_merges_fail {
            return Err(disagreement("the final colouring is reducible"));
        }
    }
    if !cert.verdict {
        return Err(Error::VerificationFailed(
            "reduction did not reach an irreducible colouring".into(),
        ));
    }
    let summary = format!(
        "{}: {} merge(s), {} colour(s) remain\n",
        config.mode(),
        reduced.steps,
        reduced.final_colouring.used_colours().len()
    );
    let document = pretty(&ReduceOutput {
        trace: reduced.trace,
        guard_triggers: reduced.guard_triggers,
        certificate: cert,
    });
    Ok(CommandOutput {
        document,
        summary,
        status: Status::Success,
    })
}

fn merges_fail<C: Colouring>(g: &Graph, c: &C, mode: Mode, auts: &[Permutation]) -> Result<bool> {
    let used: Vec<_> = crate::colouring::used_colours(c).into_iter().collect();
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            if is_suitable_among(g, &merge(c, a, b), mode, auts)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The least number of colours for the chosen parameter, with a witness.
pub fn cmd_number(config: &RunConfig) -> Result<CommandOutput> {
    config.validate()?;
    let g = load_graph(config.input()?, config.format)?;
    let variant = config.variant();
    let search = SearchConfig {
        cutoff: config.cutoff,
        checker: Checker::Kernel,
    };
    let outcome = minimal(&g, variant, &search)?;
    if config.oracle.enabled(g.vertex_count()) {
        if g.vertex_count() > ORACLE_LIMIT {
            return Err(Error::TooLargeForOracle {
                vertices: g.vertex_count(),
                limit: ORACLE_LIMIT,
            });
        }
        let checked = minimal(
            &g,
            variant,
            &SearchConfig {
                checker: Checker::Oracle,
                ..search
            },
        )?;
        if checked != outcome {
            return Err(disagreement("minimal colouring"));
        }
    }
    let cert = minimal_certificate(&g, variant, &outcome)?;
    let value = Attainable::from(&outcome);
    let document = pretty(&NumberOutput {
        variant,
        value,
        certificate: cert,
    });
    Ok(CommandOutput {
        document,
        summary: format!("{}: {value}\n", variant.name()),
        status: Status::Success,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DsCommand {
    Build {
        m: usize,
        n: usize,
        kind: GraphKind,
    },
    Construct {
        m: usize,
        n: usize,
        injection: Option<Vec<usize>>,
    },
    /// Reads a condition colouring from `--input` (or `--colours`).
    Transform {
        to: Condition,
    },
    VerifyLemma {
        m: usize,
        n: usize,
    },
}

fn lemma_output(lc: &LemmaColouring) -> Result<CommandOutput> {
    let cert = lemma_certificate(lc)?;
    let summary = format!(
        "condition {} on {}({}, {}): {} colour(s), adjustments: {}\n",
        lc.condition(),
        lc.graph_kind().name(),
        lc.spec().x_size(),
        lc.spec().y_size(),
        lc.stamp().colours_used,
        lc.stamp().adjustments.len()
    );
    Ok(CommandOutput {
        document: pretty(&LemmaOutput {
            lemma: lc,
            certificate: &cert,
        }),
        summary,
        status: Status::from_ok(cert.verdict),
    })
}

fn load_lemma(config: &RunConfig) -> Result<LemmaColouring> {
    let text = match (&config.input, &config.colours) {
        (Some(path), _) => read(path)?,
        (None, Some(arg)) => json_argument(arg)?,
        (None, None) => return Err(Error::Parse("--input is required".into())),
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let inner = value.get("lemma").cloned().unwrap_or(value);
    LemmaColouring::from_json(&inner.to_string())
}

/// Double-star tooling: build the graphs, construct and transform colourings,
/// and run the full chain.
pub fn cmd_ds(config: &RunConfig, command: &DsCommand) -> Result<CommandOutput> {
    config.validate()?;
    match command {
        DsCommand::Build { m, n, kind } => {
            let g = kind.build(DoubleStarSpec::new(*m, *n)?);
            let document = match config.format.unwrap_or(InputFormat::Graph6) {
                InputFormat::Graph6 => format!("{}\n", emit_graph6(&g)?),
                InputFormat::EdgeList => g.to_edge_list(),
            };
            Ok(CommandOutput {
                document,
                summary: format!(
                    "{}({m}, {n}): {} vertices, {} edges\n",
                    kind.name(),
                    g.vertex_count(),
                    g.edge_count()
                ),
                status: Status::Success,
            })
        }
        DsCommand::Construct { m, n, injection } => {
            let spec = DoubleStarSpec::new(*m, *n)?;
            let f = match injection {
                Some(mapping) => InjectionWitness::new(spec, mapping.clone())?,
                None => InjectionWitness::canonical(spec),
            };
            lemma_output(&construct_from_injection(spec, &f)?)
        }
        DsCommand::Transform { to } => {
            let lc = load_lemma(config)?;
            let out = match (lc.condition(), to) {
                (Condition::A, Condition::B) => transform_a_to_b(&lc)?,
                (Condition::B, Condition::A) => transform_b_to_a(&lc)?,
                (Condition::A, Condition::C) => transform_a_to_c(&lc)?,
                (Condition::C, Condition::A) => transform_c_to_a(&lc)?,
                (Condition::C, Condition::D) => transform_c_to_d(&lc)?,
                (Condition::D, Condition::C) => transform_d_to_c(&lc)?,
                (from, to) => {
                    return Err(Error::Parse(format!(
                        "no transformation from condition {from} to condition {to}"
                    )))
                }
            };
            lemma_output(&out)
        }
        DsCommand::VerifyLemma { m, n } => {
            let spec = DoubleStarSpec::new(*m, *n)?;
            let oracle = config.oracle.enabled(spec.vertex_count());
            let report = verify_lemma_equivalence(spec, oracle)?;
            let w = report.witnessed;
            Ok(CommandOutput {
                document: pretty(&report),
                summary: format!(
                    "DS({m}, {n}): a={} b={} c={} d={} (oracle {})\n",
                    w.a,
                    w.b,
                    w.c,
                    w.d,
                    if report.oracle_checked { "on" } else { "off" }
                ),
                status: Status::from_ok(w.all()),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchRow {
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    /// `|Aut(G)|` from the brute-force oracle, when it ran.
    pub automorphisms: Option<usize>,
    pub values: Vec<ParameterValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParameterValue {
    pub variant: Variant,
    /// `None` when the graph is above the search cutoff.
    pub value: Option<Attainable>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchError {
    pub source: String,
    pub error: String,
    #[serde(skip)]
    pub code: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    pub errors: Vec<BatchError>,
}

impl BatchReport {
    pub fn table(&self) -> String {
        let mut out = String::from("source\tn\t|E|\t|Aut|");
        let variants: Vec<Variant> = self
            .rows
            .first()
            .map(|r| r.values.iter().map(|p| p.variant).collect())
            .unwrap_or_default();
        for v in &variants {
            out.push('\t');
            out.push_str(v.name());
        }
        out.push('\n');
        for row in &self.rows {
            let aut = row.automorphisms.map_or("-".to_string(), |a| a.to_string());
            out.push_str(&format!(
                "{}\t{}\t{}\t{aut}",
                row.source, row.vertices, row.edges
            ));
            for p in &row.values {
                out.push('\t');
                out.push_str(&p.value.map_or("-".to_string(), |v| v.to_string()));
            }
            out.push('\n');
        }
        for e in &self.errors {
            out.push_str(&format!("{}\terror: {}\n", e.source, e.error));
        }
        out
    }
}

fn batch_row(
    source: String,
    g: &Graph,
    variants: &[Variant],
    config: &RunConfig,
) -> Result<BatchRow> {
    let automorphisms =
        if config.oracle.enabled(g.vertex_count()) && g.vertex_count() <= ORACLE_LIMIT {
            Some(aut::all_automorphisms_bruteforce(g)?.len())
        } else {
            None
        };
    let search = SearchConfig {
        cutoff: config.cutoff,
        checker: Checker::Kernel,
    };
    let values = variants
        .iter()
        .map(|&v| {
            let value = if g.vertex_count() > config.cutoff {
                None
            } else {
                Some(Attainable::from(&minimal(g, v, &search)?))
            };
            Ok(ParameterValue { variant: v, value })
        })
        .collect::<Result<_>>()?;
    Ok(BatchRow {
        source,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        automorphisms,
        values,
    })
}

/// Tabulates every graph in a directory. Files are read in name order; a
/// graph6 file contributes one row per line. Per-file errors are collected.
pub fn cmd_batch(config: &RunConfig) -> Result<CommandOutput> {
    config.validate()?;
    let dir = config.input()?;
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            !p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with('.'))
        })
        .collect();
    paths.sort();
    let variants: Vec<Variant> = match config.variant {
        Some(v) => vec![v],
        None => Variant::ALL.to_vec(),
    };

    let mut jobs: Vec<(String, Result<Graph>)> = Vec::new();
    for path in &paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match read(path) {
            Err(e) => jobs.push((name, Err(e))),
            Ok(text) => {
                let graphs = parse_graphs(&text, format_for(path, config.format));
                let single = graphs.len() == 1;
                if graphs.is_empty() {
                    jobs.push((name.clone(), Err(Error::Parse("no graph in file".into()))));
                }
                for (i, g) in graphs.into_iter().enumerate() {
                    let source = if single {
                        name.clone()
                    } else {
                        format!("{name}:{}", i + 1)
                    };
                    jobs.push((source, g));
                }
            }
        }
    }

    let results: Vec<std::result::Result<BatchRow, BatchError>> = jobs
        .into_par_iter()
        .map(|(source, g)| {
            g.and_then(|g| batch_row(source.clone(), &g, &variants, config))
                .map_err(|e| BatchError {
                    source,
                    error: e.to_string(),
                    code: e.exit_code(),
                })
        })
        .collect();
    let mut report = BatchReport {
        rows: Vec::new(),
        errors: Vec::new(),
    };
    for r in results {
        match r {
            Ok(row) => report.rows.push(row),
            Err(e) => report.errors.push(e),
        }
    }
    let status = match report.errors.iter().map(|e| e.code).max() {
        None => Status::Success,
        Some(2) => Status::InputError,
        Some(_) => Status::Failure,
    };
    Ok(CommandOutput {
        document: pretty(&report),
        summary: report.table(),
        status,
    })
}

/// Re-derives the verdict of a certificate file. Accepts a bare certificate
/// or any command output with a `certificate` field.
pub fn cmd_recheck(config: &RunConfig) -> Result<CommandOutput> {
    let text = read(config.input()?)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let inner = value.get("certificate").cloned().unwrap_or(value);
    let cert = Certificate::from_json(&inner.to_string())?;
    recheck(&cert)?;
    Ok(CommandOutput {
        document: pretty(&RecheckOutput {
            valid: true,
            kind: cert.kind,
            verdict: cert.verdict,
        }),
        summary: format!(
            "certificate valid ({:?}, verdict {})\n",
            cert.kind, cert.verdict
        ),
        status: Status::Success,
    })
}
