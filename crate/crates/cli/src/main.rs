//! `edgegame`: generate graphs, solve (m,1)-edge coloring games, play them
//! interactively and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap
//! exceeded.

mod common;
mod play;

use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edgegame::game::{replay_transcript, Transcript};
use edgegame::graph::{
    enumerate_connected_graphs, enumerate_trees, generate, write_graph, Family, MAX_CONNECTED_EDGES,
};
use edgegame::solver::{index_search, scan_monotonicity_counterexamples, turn_multiplier};
use edgegame::strategy::BreakerHeuristic;
use edgegame::verify::{graph_id, run_suite, Suite, SuiteOptions, Verdict, VerificationReport};
use edgegame::{maker_wins_with, win_profile, Graph, Ruleset};
use serde_json::json;

use common::{
    family_name, layout_summary, load_graph, parse_params, read_file, render_state, solver_config,
    usage, write_file, write_json, CliError, EdgeNames,
};
use play::{Engine, Role, Session, SessionConfig};

#[derive(Parser)]
#[command(
    name = "edgegame",
    version,
    about = "Solver and verification harness for the (m,1)-edge coloring game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Raise the solver cap from 12 edges / 8 colors to the encoding limit
    /// of 30 edges / 15 colors.
    #[arg(long)]
    cap_override: bool,
    /// Give up (exit 3) after expanding this many positions.
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Args, Clone)]
struct GameArgs {
    /// Graph file, or `family:params` (e.g. `wheel:4`, `caterpillar:3,3,0,3`).
    #[arg(long)]
    graph: String,
    /// Maker's moves per turn.
    #[arg(long)]
    m: usize,
    /// Palette size.
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph file.
    Gen {
        /// path, cycle, star, wheel or caterpillar.
        family: Family,
        /// Family parameters; caterpillars take the spine length and then
        /// the leg counts, e.g. `3 3,0,3`.
        #[arg(required = true, num_args = 1..)]
        params: Vec<String>,
        /// Output file; the graph is printed to stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute the game chromatic index, optionally with the full win profile.
    Index {
        /// Graph file, or `family:params` (e.g. `wheel:4`, `caterpillar:3,3,0,3`).
        #[arg(long)]
        graph: String,
        /// Maker's moves per turn.
        #[arg(long)]
        m: usize,
        /// Solve every palette size up to the degree-sum bound.
        #[arg(long)]
        profile: bool,
        /// Also write the result as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Decide who wins with perfect play.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        /// Also write the result as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Play interactively against an engine.
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// The side you play.
        #[arg(long, value_enum, default_value_t = Role::Breaker)]
        role: Role,
        /// The engine playing the other side.
        #[arg(long, value_enum, default_value_t = Engine::Solver)]
        engine: Engine,
        /// Breaker heuristic for `--engine heuristic`: random,
        /// fresh-color-attack or lookahead.
        #[arg(long, default_value = "fresh-color-attack")]
        heuristic: BreakerHeuristic,
        /// Seed for the Breaker heuristic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where the transcript is written when the session ends.
        #[arg(long, default_value = "game.transcript")]
        transcript: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run a verification suite (or `all`).
    Verify {
        /// Suite name (prop1, paths_cycles, trees, trees_diam, caterpillars,
        /// wheels_small, wheels_general, prop7, nonmono, oracle) or `all`.
        suite: String,
        /// Largest edge count for suites that enumerate graphs.
        #[arg(long)]
        max_edges: Option<usize>,
        /// Largest family parameter for path, cycle and wheel suites.
        #[arg(long)]
        max_n: Option<usize>,
        /// Smaller move count for the prop7 and nonmono suites.
        #[arg(long)]
        m1: Option<usize>,
        /// Larger move count for the prop7 and nonmono suites.
        #[arg(long)]
        m2: Option<usize>,
        /// Report path; defaults to `edgegame-<suite>.json`.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Give up on an instance (marking it skipped) after this many
        /// expanded positions.
        #[arg(long)]
        node_limit: Option<u64>,
        /// Print every record, not only failures and skips.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Search for graphs whose index grows when Maker gets more moves.
    Scan {
        /// Larger move count; a witness has a larger index here than with `--m2`.
        #[arg(long)]
        m1: usize,
        /// Smaller move count.
        #[arg(long)]
        m2: usize,
        /// wheel, path, cycle, star, tree, caterpillar or connected (default).
        #[arg(long)]
        family: Option<String>,
        /// Largest family parameter n (default 6).
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest edge count (default 6 for connected graphs, 7 for trees).
        #[arg(long)]
        max_edges: Option<usize>,
        /// Also write the witnesses as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Replay a transcript and show the final position.
    Replay {
        #[command(flatten)]
        game: GameArgs,
        /// Transcript file written by `play`.
        transcript: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Gen {
            family,
            params,
            out,
        } => cmd_gen(family, &params, out),
        Command::Index {
            graph,
            m,
            profile,
            json,
            caps,
        } => cmd_index(&graph, m, profile, json, caps),
        Command::Solve { game, json, caps } => cmd_solve(&game, json, caps),
        Command::Play {
            game,
            role,
            engine,
            heuristic,
            seed,
            transcript,
            caps,
        } => {
            let cfg = SessionConfig {
                human: role,
                engine,
                heuristic,
                seed,
                solver: solver_config(caps.cap_override, caps.node_limit),
            };
            cmd_play(&game, &cfg, &transcript)
        }
        Command::Verify {
            suite,
            max_edges,
            max_n,
            m1,
            m2,
            json,
            node_limit,
            verbose,
        } => {
            let mut opts = SuiteOptions {
                max_edges,
                max_n,
                m1,
                m2,
                ..SuiteOptions::default()
            };
            opts.solver.node_limit = node_limit;
            if let Some(limit) = node_limit {
                opts.referee.node_limit = limit;
            }
            cmd_verify(&suite, &opts, json, verbose)
        }
        Command::Scan {
            m1,
            m2,
            family,
            max_n,
            max_edges,
            json,
            caps,
        } => cmd_scan(m1, m2, family.as_deref(), max_n, max_edges, json, caps),
        Command::Replay { game, transcript } => cmd_replay(&game, &transcript),
    }
}

fn rules(m: usize, k: usize) -> Result<Ruleset, CliError> {
    Ruleset::new(m, k).map_err(|e| usage(e.to_string()))
}

fn cmd_gen(family: Family, params: &[String], out: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let params = parse_params(params)?;
    let g = generate(family, &params)?;
    let summary = layout_summary(&family_name(family, &params), &g);
    match out {
        Some(path) => {
            write_file(&path, &write_graph(&g))?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            print!("{}", write_graph(&g));
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_index(
    spec: &str,
    m: usize,
    profile: bool,
    json: Option<PathBuf>,
    caps: Caps,
) -> Result<ExitCode, CliError> {
    let loaded = load_graph(spec)?;
    let g = &loaded.graph;
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    let cfg = solver_config(caps.cap_override, caps.node_limit);
    let (lower, upper) = g.trivial_bounds()?;
    let mut report = json!({
        "graph": loaded.name,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "m": m,
        "lower_bound": lower,
        "upper_bound": upper,
    });
    println!(
        "{}: {} vertices, {} edges, m = {m}",
        loaded.name,
        g.vertex_count(),
        g.edge_count()
    );
    println!("bounds: {lower} <= index <= {upper}");
    if profile {
        let p = win_profile(g, m, &cfg)?;
        let index = p.index();
        println!("index = {}", index.map_or("none".into(), |i| i.to_string()));
        let shown: Vec<String> = p
            .outcomes
            .iter()
            .enumerate()
            .map(|(k, &w)| format!("k={k}:{}", if w { "true" } else { "false" }))
            .collect();
        println!("profile: {}", shown.join(" "));
        println!("monotone in k: {}", p.monotone);
        report["index"] = json!(index);
        report["profile"] = json!(p.outcomes);
        report["monotone"] = json!(p.monotone);
        report["nodes_expanded"] = json!(p.nodes_expanded);
    } else {
        let out = index_search(g, m, &cfg)?;
        println!("index = {}", out.index);
        report["index"] = json!(out.index);
        report["nodes_expanded"] = json!(out.nodes_expanded);
    }
    if let Some(path) = json {
        write_json(&path, &report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(game: &GameArgs, json: Option<PathBuf>, caps: Caps) -> Result<ExitCode, CliError> {
    let loaded = load_graph(&game.graph)?;
    let g = &loaded.graph;
    let rules = rules(game.m, game.k)?;
    let r = maker_wins_with(g, rules, &solver_config(caps.cap_override, caps.node_limit))?;
    let names = EdgeNames::new(g);
    let winner = if r.maker_wins { "maker" } else { "breaker" };
    println!(
        "{} with m = {}, k = {}: {winner} wins",
        loaded.name, game.m, game.k
    );
    if let Some(mv) = r.principal_move {
        println!(
            "winning first move: e {} {}  ({})",
            mv.edge,
            mv.color,
            names.get(mv.edge)
        );
    }
    println!(
        "positions expanded: {}, table hits: {}",
        r.nodes_expanded, r.table_hits
    );
    if let Some(path) = json {
        write_json(
            &path,
            &json!({
                "graph": loaded.name,
                "m": game.m,
                "k": game.k,
                "winner": winner,
                "principal_move": r.principal_move.map(|mv| json!({"edge": mv.edge, "color": mv.color})),
                "nodes_expanded": r.nodes_expanded,
                "table_hits": r.table_hits,
            }),
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_play(game: &GameArgs, cfg: &SessionConfig, transcript: &Path) -> Result<ExitCode, CliError> {
    let loaded = load_graph(&game.graph)?;
    let rules = rules(game.m, game.k)?;
    let mut session = Session::new(&loaded.graph, rules, cfg)?;
    let stdin = io::stdin();
    let mut input = BufReader::new(stdin.lock());
    let mut out = io::stdout();
    let result = session.run(&mut input, &mut out);
    write_file(transcript, &session.transcript.to_string())?;
    println!("transcript written to {}", transcript.display());
    result.map(|()| ExitCode::SUCCESS)
}

fn suites_for(name: &str) -> Result<Vec<Suite>, CliError> {
    if name == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![name.parse().map_err(usage)?])
    }
}

fn print_record_line(r: &edgegame::verify::InstanceRecord) {
    let verdict = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Skipped => "SKIP",
    };
    let authority = serde_json::to_value(r.authority).expect("serializes");
    println!(
        "  {verdict}  {}  expected {} observed {}  [{}]{}",
        r.key,
        r.expected,
        r.observed,
        authority.as_str().unwrap_or_default(),
        if r.detail.is_empty() {
            String::new()
        } else {
            format!("  ({})", r.detail)
        }
    );
}

fn cmd_verify(
    name: &str,
    opts: &SuiteOptions,
    json: Option<PathBuf>,
    verbose: bool,
) -> Result<ExitCode, CliError> {
    let suites = suites_for(name)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for suite in suites {
        let report = run_suite(suite, opts).map_err(usage)?;
        println!("{}: {}", report.suite, report.description);
        for r in &report.records {
            if verbose || r.verdict != Verdict::Pass {
                print_record_line(r);
            }
        }
        let s = report.summary;
        println!(
            "{}: {} records, {} passed, {} failed, {} skipped ({:.1} s)",
            report.suite,
            s.total,
            s.passed,
            s.failed,
            s.skipped,
            report.timing.total_ms / 1e3
        );
        reports.push(report);
    }
    let path = json.unwrap_or_else(|| PathBuf::from(format!("edgegame-{name}.json")));
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("reports serialize")
    } else {
        json!({ "suites": reports })
    };
    write_json(&path, &value)?;
    println!("report written to {}", path.display());
    let failed: usize = reports.iter().map(|r| r.summary.failed).sum();
    let skipped: usize = reports.iter().map(|r| r.summary.skipped).sum();
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else if skipped > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn family_graphs(
    family: &str,
    max_n: usize,
    max_edges: Option<usize>,
) -> Result<Vec<(String, Graph)>, CliError> {
    let named = |fam: Family, from: usize| -> Result<Vec<(String, Graph)>, CliError> {
        (from..=max_n)
            .map(|n| Ok((family_name(fam, &[n]), generate(fam, &[n])?)))
            .collect()
    };
    let with_ids = |gs: Vec<Graph>| {
        gs.into_iter()
            .map(|g| (graph_id(&g), g))
            .collect::<Vec<_>>()
    };
    let mut graphs = match family {
        "wheel" => named(Family::Wheel, 3)?,
        "path" => named(Family::Path, 2)?,
        "cycle" => named(Family::Cycle, 3)?,
        "star" => named(Family::Star, 1)?,
        "tree" | "caterpillar" => {
            let trees: Vec<Graph> = enumerate_trees(max_edges.unwrap_or(7))?
                .filter(|g| family == "tree" || (g.edge_count() >= 2 && g.spine().is_ok()))
                .collect();
            with_ids(trees)
        }
        "connected" => {
            let cap = max_edges.unwrap_or(6);
            if cap > MAX_CONNECTED_EDGES {
                return Err(CliError::Cap(format!(
                    "connected graphs are enumerated up to {MAX_CONNECTED_EDGES} edges, not {cap}"
                )));
            }
            with_ids(enumerate_connected_graphs(cap)?)
        }
        other => {
            return Err(usage(format!(
                "unknown family `{other}` (expected wheel, path, cycle, star, tree, caterpillar or connected)"
            )))
        }
    };
    graphs.retain(|(_, g)| g.edge_count() > 0 && max_edges.is_none_or(|cap| g.edge_count() <= cap));
    Ok(graphs)
}

fn cmd_scan(
    m1: usize,
    m2: usize,
    family: Option<&str>,
    max_n: Option<usize>,
    max_edges: Option<usize>,
    json: Option<PathBuf>,
    caps: Caps,
) -> Result<ExitCode, CliError> {
    if m2 == 0 || m1 <= m2 {
        return Err(usage(format!(
            "need m1 > m2 >= 1, got m1 = {m1}, m2 = {m2}"
        )));
    }
    let family = family.unwrap_or("connected");
    let graphs = family_graphs(family, max_n.unwrap_or(6), max_edges)?;
    let cfg = solver_config(caps.cap_override, caps.node_limit);
    let witnesses =
        scan_monotonicity_counterexamples(m1, m2, graphs.iter().map(|(_, g)| g.clone()), &cfg)?;
    println!(
        "scanned {} graphs ({family}), m1 = {m1}, m2 = {m2}",
        graphs.len()
    );
    if let Some(t) = turn_multiplier(m1, m2) {
        println!("m1 = {t}*m2 + {t} - 1, so no witness is possible");
    }
    let mut found = Vec::new();
    for w in &witnesses {
        let name = graphs
            .iter()
            .find(|(_, g)| *g == w.graph)
            .map_or_else(|| graph_id(&w.graph), |(n, _)| n.clone());
        println!(
            "witness {name}: index(m1 = {m1}) = {}, index(m2 = {m2}) = {}",
            w.index_m1, w.index_m2
        );
        found.push(json!({
            "graph": name,
            "edges": w.graph.edges(),
            "index_m1": w.index_m1,
            "index_m2": w.index_m2,
        }));
    }
    println!("{} witness(es)", found.len());
    if let Some(path) = json {
        write_json(
            &path,
            &json!({
                "m1": m1,
                "m2": m2,
                "family": family,
                "scanned": graphs.len(),
                "witnesses": found,
            }),
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_replay(game: &GameArgs, path: &Path) -> Result<ExitCode, CliError> {
    let loaded = load_graph(&game.graph)?;
    let rules = rules(game.m, game.k)?;
    let transcript = Transcript::parse(&read_file(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    match replay_transcript(&loaded.graph, rules, &transcript) {
        Ok(state) => {
            println!("{}", render_state(&state, &EdgeNames::new(&loaded.graph)));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(CliError::Failure(format!("{}: {e}", path.display()))),
    }
}
