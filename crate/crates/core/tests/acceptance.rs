//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{
    catalog, edge_values, has_edge_obstruction, random_edge_colouring, random_graph,
    random_vertex_colouring, Oracle,
};
use distcolour::aut::{
    all_automorphisms_bruteforce, find_nontrivial_preserving,
    find_nontrivial_preserving_bruteforce, AutQuery, Constraint,
};
use distcolour::cli::{cmd_batch, cmd_ds, cmd_number, cmd_reduce, DsCommand, RunConfig};
use distcolour::colouring::{is_suitable, Colouring, EdgeColouring, Mode, Target, VertexColouring};
use distcolour::doublestar::{
    construct_from_injection, transform_a_to_b, transform_a_to_c, transform_b_to_a,
    transform_c_to_a, transform_c_to_d, transform_d_to_c, verify_lemma_equivalence,
    InjectionWitness, LemmaColouring,
};
use distcolour::graph::{
    gen_double_clique, gen_double_star, gen_standard, DoubleStarSpec, Family, Graph,
};
use distcolour::graph6::{emit_graph6, parse_graph6};
use distcolour::params::{minimal, Checker, SearchConfig, Variant};
use distcolour::reduction::{is_irreducible, reduce_to_irreducible};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

const MODES: [Mode; 4] = [
    Mode::VERTEX,
    Mode::VERTEX_PROPER,
    Mode::EDGE,
    Mode::EDGE_PROPER,
];

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn small_double_stars() -> impl Iterator<Item = DoubleStarSpec> {
    (1..=5)
        .flat_map(|m| (1..=5).map(move |n| (m, n)))
        .filter(|&(m, n)| m + n + 2 <= 8)
        .map(|(m, n)| DoubleStarSpec::new(m, n).unwrap())
}

/// Kernel answers under random constraints, against the brute-force filter.
fn oracle_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut graphs = catalog();
    for spec in small_double_stars() {
        graphs.push(gen_double_star(spec));
        graphs.push(gen_double_clique(spec));
    }
    let mut queries = 0;
    for g in &graphs {
        let oracle = Oracle::new(g);
        for k in 0..200 {
            let colours = 1 + k as u32 % 4;
            let (kernel, filter, independent) = if k % 2 == 0 || g.edge_count() == 0 {
                let c = random_vertex_colouring(&mut rng, g.vertex_count(), colours);
                let q = AutQuery::new(g, Constraint::Vertex(&c)).unwrap();
                (
                    find_nontrivial_preserving(&q).is_some(),
                    find_nontrivial_preserving_bruteforce(&q).unwrap().is_some(),
                    oracle.vertex_preserved(&c.values()),
                )
            } else {
                let c = random_edge_colouring(&mut rng, g, colours);
                let q = AutQuery::new(g, Constraint::Edge(&c)).unwrap();
                (
                    find_nontrivial_preserving(&q).is_some(),
                    find_nontrivial_preserving_bruteforce(&q).unwrap().is_some(),
                    oracle.edge_preserved(&edge_values(g, &c)),
                )
            };
            if kernel != filter || kernel != independent {
                return Err(format!("disagreement on {}", emit_graph6(g).unwrap()));
            }
            queries += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} graphs, {queries} queries, {elapsed:.1?}",
        graphs.len()
    ))
}

struct Reduced {
    graph: Graph,
    mode: Mode,
    vertex: Option<VertexColouring>,
    edge: Option<EdgeColouring>,
}

fn suitable_start<C: Colouring>(
    g: &Graph,
    mode: Mode,
    mut draw: impl FnMut() -> C,
    fallback: C,
) -> C {
    (0..20)
        .map(|_| draw())
        .find(|c| is_suitable(g, c, mode).unwrap())
        .unwrap_or(fallback)
}

fn check_trace<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
    guards: &mut usize,
) -> Result<C, String> {
    let trace = reduce_to_irreducible(g, c, mode).map_err(|e| e.to_string())?;
    trace.verify(g).map_err(|e| e.to_string())?;
    if !trace
        .replay()
        .iter()
        .all(|s| is_suitable(g, s, mode).unwrap())
    {
        return Err("unsuitable intermediate colouring".into());
    }
    if !is_irreducible(g, &trace.final_colouring, mode).unwrap() {
        return Err("final colouring is reducible".into());
    }
    *guards += trace.guard_triggers;
    Ok(trace.final_colouring)
}

/// Reduction on random graphs in every mode; returns the final colourings.
fn reduction_terminates(finals: &mut Vec<Reduced>) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut guards = 0;
    let mut skipped = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let g = random_graph(&mut rng, n);
        let oracle = (n <= 8).then(|| Oracle::new(&g));
        for mode in MODES {
            let k = rng.gen_range(2..=n.max(2)) as u32;
            if mode.target == Target::Edge {
                if has_edge_obstruction(&g) {
                    skipped += 1;
                    continue;
                }
                let start = suitable_start(
                    &g,
                    mode,
                    || random_edge_colouring(&mut rng, &g, k),
                    EdgeColouring::all_distinct(&g),
                );
                let end = check_trace(&g, &start, mode, &mut guards)?;
                if let Some(o) = &oracle {
                    let values = edge_values(&g, &end);
                    if !(o.suitable(&values, mode) && o.irreducible(&values, mode)) {
                        return Err(format!(
                            "oracle rejects edge result on {}",
                            emit_graph6(&g).unwrap()
                        ));
                    }
                }
                finals.push(Reduced {
                    graph: g.clone(),
                    mode,
                    vertex: None,
                    edge: Some(end),
                });
            } else {
                let start = suitable_start(
                    &g,
                    mode,
                    || random_vertex_colouring(&mut rng, n, k),
                    VertexColouring::all_distinct(n),
                );
                let end = check_trace(&g, &start, mode, &mut guards)?;
                if let Some(o) = &oracle {
                    let values = end.values();
                    if !(o.suitable(&values, mode) && o.irreducible(&values, mode)) {
                        return Err(format!(
                            "oracle rejects vertex result on {}",
                            emit_graph6(&g).unwrap()
                        ));
                    }
                }
                finals.push(Reduced {
                    graph: g.clone(),
                    mode,
                    vertex: Some(end),
                    edge: None,
                });
            }
        }
    }
    if guards > 0 {
        eprintln!("note: fixpoint guard triggered {guards} times");
    }
    Ok(format!(
        "{} reductions, {skipped} obstructed edge cases skipped, guard triggers {guards}",
        finals.len()
    ))
}

fn idempotence(finals: &[Reduced]) -> Result<String, String> {
    for r in finals {
        let steps = match (&r.vertex, &r.edge) {
            (Some(c), _) => reduce_to_irreducible(&r.graph, c, r.mode)
                .unwrap()
                .steps
                .len(),
            (_, Some(c)) => reduce_to_irreducible(&r.graph, c, r.mode)
                .unwrap()
                .steps
                .len(),
            _ => unreachable!(),
        };
        if steps != 0 {
            return Err(format!(
                "{} further merges on {}",
                steps,
                emit_graph6(&r.graph).unwrap()
            ));
        }
    }
    Ok(format!("{} final colourings re-reduced", finals.len()))
}

fn known_parameters() -> Result<String, String> {
    let start = Instant::now();
    let std = |f, n| gen_standard(f, n).unwrap();
    let mut cases: Vec<(String, Graph, Variant, Option<usize>)> = Vec::new();
    for n in 2..=5 {
        cases.push((
            format!("K{n}"),
            std(Family::Complete, n),
            Variant::D,
            Some(n),
        ));
    }
    for n in 2..=6 {
        cases.push((format!("P{n}"), std(Family::Path, n), Variant::D, Some(2)));
    }
    cases.push(("C4".into(), std(Family::Cycle, 4), Variant::D, Some(3)));
    cases.push(("C5".into(), std(Family::Cycle, 5), Variant::D, Some(3)));
    cases.push(("C6".into(), std(Family::Cycle, 6), Variant::D, Some(2)));
    cases.push(("K2".into(), std(Family::Complete, 2), Variant::Di, None));
    cases.push(("K1,3".into(), std(Family::Star, 4), Variant::Di, Some(3)));
    let oracle_config = SearchConfig {
        checker: Checker::Oracle,
        ..SearchConfig::default()
    };
    for (name, g, variant, expected) in &cases {
        let kernel = minimal(g, *variant, &SearchConfig::default())
            .map_err(|e| e.to_string())?
            .value();
        let checked = minimal(g, *variant, &oracle_config)
            .map_err(|e| e.to_string())?
            .value();
        let independent = Oracle::new(g).min_colours(variant.mode());
        if kernel != *expected || checked != *expected || independent != *expected {
            return Err(format!(
                "{name}: kernel {kernel:?}, oracle {checked:?}, expected {expected:?}"
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} parameters, {elapsed:.1?}", cases.len()))
}

fn edge_impossibility() -> Result<String, String> {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let mut impossible = 0;
    for (i, line) in common::CATALOG.lines().enumerate() {
        let g = parse_graph6(line).unwrap();
        let path = dir.path().join(format!("{i}.g6"));
        std::fs::write(&path, format!("{line}\n")).unwrap();
        let config = RunConfig {
            input: Some(path),
            variant: Some(Variant::Di),
            ..RunConfig::default()
        };
        let out = cmd_number(&config).map_err(|e| format!("{line}: {e}"))?;
        let v: Value = serde_json::from_str(&out.document).unwrap();
        let is_impossible = v["value"] == "impossible";
        if is_impossible != has_edge_obstruction(&g) {
            return Err(format!("{line}: reported {}", v["value"]));
        }
        impossible += usize::from(is_impossible);
    }
    Ok(format!(
        "{impossible} impossible among {} graphs",
        common::CATALOG.lines().count()
    ))
}

fn lemma_suite() -> Result<String, String> {
    let start = Instant::now();
    let mut colourings = 0;
    for m in 1..=4 {
        for n in m..=4 {
            let spec = DoubleStarSpec::new(m, n).unwrap();
            let e = |e: distcolour::Error| format!("({m},{n}): {e}");
            let a =
                construct_from_injection(spec, &InjectionWitness::canonical(spec)).map_err(e)?;
            let b = transform_a_to_b(&a).map_err(e)?;
            let c = transform_a_to_c(&a).map_err(e)?;
            let d = transform_c_to_d(&c).map_err(e)?;
            let all = [
                transform_b_to_a(&b).map_err(e)?,
                transform_c_to_a(&c).map_err(e)?,
                transform_d_to_c(&d).map_err(e)?,
                a,
                b,
                c,
                d,
            ];
            for lc in &all {
                if !independently_valid(lc) {
                    return Err(format!("({m},{n}) condition {}", lc.condition()));
                }
            }
            colourings += all.len();
            let report = verify_lemma_equivalence(spec, spec.vertex_count() <= 8).map_err(e)?;
            if !report.witnessed.all() {
                return Err(format!("({m},{n}): {:?}", report.witnessed));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(180) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{colourings} colourings checked, {elapsed:.1?}"))
}

fn independently_valid(lc: &LemmaColouring) -> bool {
    use distcolour::colouring::AnyColouring;
    let g = lc.graph();
    let mode = lc.condition().mode();
    let (kernel, values) = match lc.payload() {
        AnyColouring::Vertex(c) => (
            is_suitable(&g, c, mode).unwrap() && is_irreducible(&g, c, mode).unwrap(),
            c.values(),
        ),
        AnyColouring::Edge(c) => (
            is_suitable(&g, c, mode).unwrap() && is_irreducible(&g, c, mode).unwrap(),
            edge_values(&g, c),
        ),
    };
    let oracle = g.vertex_count() > 8 || {
        let o = Oracle::new(&g);
        o.suitable(&values, mode) && o.irreducible(&values, mode)
    };
    kernel && oracle
}

fn automorphism_counts() -> Result<String, String> {
    let mut checked = 0;
    for spec in small_double_stars() {
        let (m, n) = (spec.x_size(), spec.y_size());
        let expected = factorial(m) * factorial(n) * if m == n { 2 } else { 1 };
        let got = all_automorphisms_bruteforce(&gen_double_star(spec))
            .map_err(|e| e.to_string())?
            .len();
        if got != expected {
            return Err(format!("DS({m},{n}): {got} != {expected}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} double stars"))
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_distcol"))
        .args(args)
        .output()
        .expect("binary runs");
    out.stdout
}

fn round_trip_and_determinism() -> Result<String, String> {
    for line in common::CATALOG.lines() {
        let g = parse_graph6(line).map_err(|e| e.to_string())?;
        if emit_graph6(&g).unwrap() != line || parse_graph6(&emit_graph6(&g).unwrap()).unwrap() != g
        {
            return Err(format!("{line} does not round-trip"));
        }
    }

    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let file = |name: &str, body: &str| -> PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let c6 = file("c6.g6", "EhEG\n");
    let graphs = dir.path().join("batch");
    std::fs::create_dir(&graphs).unwrap();
    std::fs::write(
        graphs.join("some.g6"),
        common::CATALOG
            .lines()
            .take(40)
            .collect::<Vec<_>>()
            .join("\n"),
    )
    .unwrap();
    let configs = [
        RunConfig {
            input: Some(c6.clone()),
            colours: Some("[0,1,2,3,4,5]".into()),
            ..RunConfig::default()
        },
        RunConfig {
            input: Some(c6.clone()),
            mode: Some(Mode::EDGE_PROPER),
            colours: Some("[[0,1,0],[1,2,1],[2,3,2],[3,4,3],[4,5,4],[0,5,5]]".into()),
            ..RunConfig::default()
        },
    ];
    for config in &configs {
        let (x, y) = (cmd_reduce(config), cmd_reduce(config));
        if x.map(|o| o.document).map_err(|e| e.to_string())
            != y.map(|o| o.document).map_err(|e| e.to_string())
        {
            return Err("reduce output differs between runs".into());
        }
    }
    let ds = DsCommand::VerifyLemma { m: 3, n: 4 };
    if cmd_ds(&RunConfig::default(), &ds).unwrap().document
        != cmd_ds(&RunConfig::default(), &ds).unwrap().document
    {
        return Err("lemma report differs between runs".into());
    }
    let batch = RunConfig {
        input: Some(graphs.clone()),
        ..RunConfig::default()
    };
    if cmd_batch(&batch).unwrap().document != cmd_batch(&batch).unwrap().document {
        return Err("batch report differs between runs".into());
    }

    let c6s = c6.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["check", "--input", c6s, "--colours", "[0,0,1,1,1,1]"],
        vec!["number", "--input", c6s, "--variant", "dci"],
        vec!["ds", "construct", "3", "4"],
        vec![
            "batch",
            "--input",
            graphs.to_str().unwrap(),
            "--variant",
            "di",
        ],
    ];
    for args in &commands {
        let first = run_binary(args);
        if first.is_empty() || first != run_binary(args) {
            return Err(format!("{args:?} is not byte-stable"));
        }
    }
    Ok(format!(
        "{} graphs round-trip, {} commands byte-stable",
        common::CATALOG.lines().count(),
        configs.len() + 2 + commands.len()
    ))
}

fn report(number: usize, name: &str, f: impl FnOnce() -> Result<String, String>) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS {number} {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL {number} {name}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut finals = Vec::new();
    let results = [
        report(
            1,
            "automorphism search agrees with brute force",
            oracle_equivalence,
        ),
        report(2, "reduction reaches an irreducible colouring", || {
            reduction_terminates(&mut finals)
        }),
        report(3, "reduction is idempotent", || idempotence(&finals)),
        report(4, "known distinguishing parameters", known_parameters),
        report(
            5,
            "edge colourings impossible exactly when obstructed",
            edge_impossibility,
        ),
        report(
            6,
            "double star and double clique transformations",
            lemma_suite,
        ),
        report(7, "double star automorphism counts", automorphism_counts),
        report(
            8,
            "graph6 round-trip and deterministic output",
            round_trip_and_determinism,
        ),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
