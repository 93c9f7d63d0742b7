//! Verification suites: each one checks a family of claimed values or
//! properties against the solver and the strategy referee, and reports
//! one record per instance.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::game::{GameState, Ruleset};
use crate::graph::{
    enumerate_connected_graphs, enumerate_trees, generate, Family, Graph, GraphError,
};
use crate::solver::{
    index_search, maker_wins_with, naive_maker_wins, scan_monotonicity_counterexamples,
    turn_multiplier, win_profile, SolveError, SolverConfig,
};
use crate::strategy::{
    referee_exhaustive, CaterpillarStrategy, MakerStrategy, RefereeConfig, RefereeError,
    StrategyError, TreeMakerStrategy, TreeMode, WheelStrategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Prop1,
    PathsCycles,
    Trees,
    TreesDiam,
    Caterpillars,
    WheelsSmall,
    WheelsGeneral,
    Prop7,
    Nonmono,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Prop1,
        Suite::PathsCycles,
        Suite::Trees,
        Suite::TreesDiam,
        Suite::Caterpillars,
        Suite::WheelsSmall,
        Suite::WheelsGeneral,
        Suite::Prop7,
        Suite::Nonmono,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::PathsCycles => "paths_cycles",
            Suite::Trees => "trees",
            Suite::TreesDiam => "trees_diam",
            Suite::Caterpillars => "caterpillars",
            Suite::WheelsSmall => "wheels_small",
            Suite::WheelsGeneral => "wheels_general",
            Suite::Prop7 => "prop7",
            Suite::Nonmono => "nonmono",
            Suite::Oracle => "oracle",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Prop1 => "Δ <= index <= max(deg u + deg v - 1) and win-profile envelope on small connected graphs, trees and wheels",
            Suite::PathsCycles => "index of paths and cycles up to 12 vertices, and where it settles at 3",
            Suite::Trees => "trees: index <= Δ+2; tree strategy beats every Breaker with Δ+2 colors",
            Suite::TreesDiam => "trees with m >= diam-2: index <= Δ+1; subcubic caterpillars: index <= 4",
            Suite::Caterpillars => "caterpillars with Δ >= 4, m in {2,3}: index = Δ; caterpillar strategy certified",
            Suite::WheelsSmall => "W3 and W4 indices for m = 2..5 and the W4 profile for m = 3",
            Suite::WheelsGeneral => "W5 index for m in {2,3}; wheel strategy certified on W5 and W6 with m = 2",
            Suite::Prop7 => "index(G, t*m2+t-1) <= index(G, m2) on small trees and wheels",
            Suite::Nonmono => "scan of small wheels for index(G, 3) > index(G, 2)",
            Suite::Oracle => "memoized solver agrees with plain minimax on connected graphs up to 6 edges",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Who vouches for an expected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Authority {
    /// A published result the suite reproduces.
    Published,
    /// Produced by an independent computation (oracle, referee).
    Derived,
    /// Follows directly from the definitions.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A cap stopped the computation; never counted as a pass.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    /// Unique within a report; records are sorted by it.
    pub key: String,
    pub graph: String,
    pub check: String,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub expected: String,
    pub observed: String,
    pub verdict: Verdict,
    pub authority: Authority,
    /// Supporting numbers, e.g. the index behind an inequality check.
    pub detail: String,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Wall-clock times, kept apart so that reports of identical runs compare
/// equal once this field is dropped.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub per_record_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub description: String,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
    pub timing: Timing,
}

impl VerificationReport {
    fn assemble(suite: Suite, timed: Vec<(InstanceRecord, f64)>, total_ms: f64) -> Self {
        let mut timed = timed;
        timed.sort_by(|a, b| a.0.key.cmp(&b.0.key));
        let mut summary = Summary::default();
        let mut per_record_ms = BTreeMap::new();
        let mut records = Vec::with_capacity(timed.len());
        for (rec, ms) in timed {
            summary.total += 1;
            match rec.verdict {
                Verdict::Pass => summary.passed += 1,
                Verdict::Fail => summary.failed += 1,
                Verdict::Skipped => summary.skipped += 1,
            }
            per_record_ms.insert(rec.key.clone(), ms);
            records.push(rec);
        }
        VerificationReport {
            suite: suite.name().to_string(),
            description: suite.description().to_string(),
            records,
            summary,
            timing: Timing {
                total_ms,
                per_record_ms,
            },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.skipped == 0
    }

    /// Full JSON report, timing included.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON without the timing field: identical for identical runs.
    pub fn to_canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string_pretty(&value).expect("reports serialize")
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| r.verdict != Verdict::Pass)
    }
}

/// Size limits for a suite run; `None` picks the suite's default.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max_edges: Option<usize>,
    pub max_n: Option<usize>,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    pub solver: SolverConfig,
    pub referee: RefereeConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_edges: None,
            max_n: None,
            m1: None,
            m2: None,
            solver: SolverConfig::relaxed(),
            referee: RefereeConfig::default(),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport, String> {
    let start = Instant::now();
    let records = match suite {
        Suite::Prop1 => prop1(opts),
        Suite::PathsCycles => paths_cycles(opts),
        Suite::Trees => trees(opts),
        Suite::TreesDiam => trees_diam(opts),
        Suite::Caterpillars => caterpillars(opts),
        Suite::WheelsSmall => wheels_small(opts),
        Suite::WheelsGeneral => wheels_general(opts),
        Suite::Prop7 => prop7(opts),
        Suite::Nonmono => nonmono(opts),
        Suite::Oracle => oracle(opts),
    }?;
    Ok(VerificationReport::assemble(
        suite,
        records,
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

/// Compact, stable name for a graph: family name when known, else the
/// edge list.
pub fn graph_id(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("[{}]", edges.join(" "))
}

fn family_id(family: Family, params: &[usize]) -> String {
    match family {
        Family::Path => format!("P{}", params[0]),
        Family::Cycle => format!("C{}", params[0]),
        Family::Star => format!("K1,{}", params[0]),
        Family::Wheel => format!("W{}", params[0]),
        Family::Caterpillar => {
            let legs: Vec<String> = params[1..].iter().map(|l| l.to_string()).collect();
            format!("cat{}[{}]", params[0], legs.join(","))
        }
    }
}

enum Failure {
    Cap(String),
    Error(String),
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Error(e.to_string())
        }
    }
}

impl From<RefereeError> for Failure {
    fn from(e: RefereeError) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Error(e.to_string())
        }
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Error(e.to_string())
    }
}

/// What a check computed: the observed value, supporting detail and the
/// search effort.
struct Observation {
    observed: String,
    detail: String,
    nodes: u64,
}

impl Observation {
    fn new(observed: impl ToString, detail: impl ToString, nodes: u64) -> Self {
        Observation {
            observed: observed.to_string(),
            detail: detail.to_string(),
            nodes,
        }
    }
}

struct Check {
    graph: String,
    check: &'static str,
    m: Option<usize>,
    k: Option<usize>,
    authority: Authority,
    expected: String,
}

impl Check {
    fn new(
        graph: impl Into<String>,
        check: &'static str,
        authority: Authority,
        expected: impl ToString,
    ) -> Self {
        Check {
            graph: graph.into(),
            check,
            m: None,
            k: None,
            authority,
            expected: expected.to_string(),
        }
    }

    fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn run(self, f: impl FnOnce() -> Result<Observation, Failure>) -> (InstanceRecord, f64) {
        let start = Instant::now();
        let result = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut key = format!("{}|{}", self.check, self.graph);
        if let Some(m) = self.m {
            key.push_str(&format!("|m={m:02}"));
        }
        if let Some(k) = self.k {
            key.push_str(&format!("|k={k:02}"));
        }
        let (observed, detail, nodes, verdict) = match result {
            Ok(o) => {
                let verdict = if o.observed == self.expected {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                (o.observed, o.detail, o.nodes, verdict)
            }
            Err(Failure::Cap(why)) => (
                format!("skipped: {why}"),
                String::new(),
                0,
                Verdict::Skipped,
            ),
            Err(Failure::Error(why)) => (format!("error: {why}"), String::new(), 0, Verdict::Fail),
        };
        let record = InstanceRecord {
            key,
            graph: self.graph,
            check: self.check.to_string(),
            m: self.m,
            k: self.k,
            expected: self.expected,
            observed,
            verdict,
            authority: self.authority,
            detail,
            nodes,
        };
        (record, ms)
    }
}

const HOLDS: &str = "holds";

fn holds(ok: bool) -> &'static str {
    if ok {
        HOLDS
    } else {
        "violated"
    }
}

type Timed = Vec<(InstanceRecord, f64)>;

fn capped(
    requested: Option<usize>,
    default: usize,
    cap: usize,
    what: &str,
) -> Result<usize, String> {
    let v = requested.unwrap_or(default);
    if v > cap {
        return Err(format!("{what} {v} exceeds the enumeration cap {cap}"));
    }
    Ok(v)
}

fn trees_up_to(max_edges: usize) -> Result<Vec<Graph>, String> {
    Ok(enumerate_trees(max_edges)
        .map_err(|e| e.to_string())?
        .filter(|g| g.edge_count() > 0)
        .collect())
}

fn is_caterpillar(g: &Graph) -> bool {
    g.edge_count() >= 2 && g.spine().is_ok()
}

fn index_check(g: &Graph, m: usize, cfg: &SolverConfig) -> Result<(usize, u64), Failure> {
    let out = index_search(g, m, cfg)?;
    Ok((out.index, out.nodes_expanded))
}

fn referee_check<S: MakerStrategy>(
    g: &Graph,
    rules: Ruleset,
    strategy: Result<S, StrategyError>,
    cfg: &RefereeConfig,
    color_cap: usize,
) -> Result<Observation, Failure> {
    let out = referee_exhaustive(g, rules, strategy?, cfg)?;
    let max_color = out.max_maker_color.map_or(0, |c| c as usize + 1);
    let observed = if !out.maker_always_wins {
        let line = out
            .refutation
            .map(|t| t.to_transcript().to_string())
            .unwrap_or_default();
        format!("refuted: {}", line.trim_end().replace('\n', "; "))
    } else if max_color > color_cap {
        format!("needed {max_color} colors")
    } else {
        "maker wins every line".to_string()
    };
    Ok(Observation::new(
        observed,
        format!(
            "{} Breaker positions, {} invariant checks, Maker colors used <= {max_color}",
            out.breaker_nodes, out.invariant_checks
        ),
        out.breaker_nodes,
    ))
}

const WINS_EVERY_LINE: &str = "maker wins every line";

fn prop1(opts: &SuiteOptions) -> Result<Timed, String> {
    let max_edges = capped(
        opts.max_edges,
        6,
        crate::graph::MAX_CONNECTED_EDGES,
        "max edges",
    )?;
    let mut jobs: Vec<(String, Graph, usize)> = Vec::new();
    for g in enumerate_connected_graphs(max_edges).map_err(|e| e.to_string())? {
        if g.edge_count() > 0 {
            jobs.extend((1..=3).map(|m| (graph_id(&g), g.clone(), m)));
        }
    }
    // Larger trees and the small wheels, so the envelope is also checked
    // on the instances the other suites solve.
    for g in trees_up_to(max_edges + 2)?
        .into_iter()
        .filter(|g| g.edge_count() > max_edges)
    {
        jobs.extend((1..=3).map(|m| (graph_id(&g), g.clone(), m)));
    }
    for n in [3, 4] {
        let g = generate(Family::Wheel, &[n]).map_err(|e| e.to_string())?;
        jobs.extend((1..=5).map(|m| (family_id(Family::Wheel, &[n]), g.clone(), m)));
    }
    Ok(jobs
        .par_iter()
        .map(|(name, g, m)| {
            Check::new(name.clone(), "envelope", Authority::Published, HOLDS)
                .m(*m)
                .run(|| {
                    let p = win_profile(g, *m, &opts.solver)?;
                    let index = p.index();
                    let ok = index.is_some_and(|i| p.lower <= i && i <= p.upper)
                        && p.outcomes[p.upper]
                        && p.outcomes[..p.lower].iter().all(|&w| !w);
                    Ok(Observation::new(
                        holds(ok),
                        format!(
                            "Δ = {}, index = {:?}, upper = {}, monotone = {}",
                            p.lower, index, p.upper, p.monotone
                        ),
                        p.nodes_expanded,
                    ))
                })
        })
        .collect())
}

fn paths_cycles(opts: &SuiteOptions) -> Result<Timed, String> {
    // Paths with m = 3 still have index 2 at n = 10 and reach 3 at n = 11,
    // so the default table runs two steps past 10.
    let max_n = opts.max_n.unwrap_or(12);
    if max_n < 3 {
        return Err("paths_cycles needs max n >= 3".into());
    }
    let mut jobs = Vec::new();
    for m in 1..=3 {
        for n in 2..=max_n {
            jobs.push((Family::Path, n, m));
        }
        for n in 3..=max_n {
            jobs.push((Family::Cycle, n, m));
        }
    }
    type Solved = (Family, usize, usize, Result<(usize, u64), String>, f64);
    let solved: Vec<Solved> = jobs
        .par_iter()
        .map(|&(family, n, m)| {
            let start = Instant::now();
            let g = generate(family, &[n]).expect("valid family parameters");
            let r = index_search(&g, m, &opts.solver)
                .map(|o| (o.index, o.nodes_expanded))
                .map_err(|e| e.to_string());
            (family, n, m, r, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();

    let mut records = Vec::new();
    for (family, n, m, r, ms) in &solved {
        let g = generate(*family, &[*n]).expect("valid family parameters");
        let (lower, upper) = g.trivial_bounds().expect("has edges");
        let (mut rec, _) = Check::new(
            family_id(*family, &[*n]),
            "index",
            Authority::Trivial,
            HOLDS,
        )
        .m(*m)
        .run(|| match r {
            Ok((index, nodes)) => Ok(Observation::new(
                holds(lower <= *index && *index <= upper),
                format!("index = {index}"),
                *nodes,
            )),
            Err(e) => Err(Failure::Error(e.clone())),
        });
        rec.detail = match r {
            Ok((index, _)) => format!("index = {index}"),
            Err(e) => e.clone(),
        };
        records.push((rec, *ms));
    }

    for family in [Family::Path, Family::Cycle] {
        for m in 1..=3 {
            let series: Vec<(usize, Option<usize>)> = solved
                .iter()
                .filter(|(f, _, mm, _, _)| *f == family && *mm == m)
                .map(|(_, n, _, r, _)| (*n, r.as_ref().ok().map(|(i, _)| *i)))
                .collect();
            let last = series.last().and_then(|(_, i)| *i);
            let threshold = series
                .iter()
                .rev()
                .take_while(|(_, i)| *i == Some(3))
                .last()
                .map(|(n, _)| *n);
            let name = match family {
                Family::Path => format!("P2..P{max_n}"),
                _ => format!("C3..C{max_n}"),
            };
            let values: Vec<String> = series
                .iter()
                .map(|(n, i)| format!("{n}:{}", i.map_or("?".into(), |v| v.to_string())))
                .collect();
            let (rec, _) = Check::new(name, "settles at 3", Authority::Published, 3)
                .m(m)
                .run(|| {
                    Ok(Observation::new(
                        last.map_or("?".into(), |v| v.to_string()),
                        format!(
                            "index = 3 from n = {} on; by n: {}",
                            threshold.map_or("-".into(), |t| t.to_string()),
                            values.join(" ")
                        ),
                        0,
                    ))
                });
            records.push((rec, 0.0));
        }
    }
    if max_n >= 10 {
        let p10 = generate(Family::Path, &[10]).expect("valid family parameters");
        let naive_index = (1..)
            .find(|&k| {
                naive_maker_wins(&GameState::new(
                    &p10,
                    Ruleset::new(3, k).expect("valid rules"),
                ))
            })
            .expect("Maker wins with enough colors");
        records.push(
            Check::new(
                "P10",
                "index = minimax index",
                Authority::Derived,
                naive_index,
            )
            .m(3)
            .run(|| {
                let (index, nodes) = index_check(&p10, 3, &opts.solver)?;
                Ok(Observation::new(index, "plain minimax, no memo", nodes))
            }),
        );
    }
    Ok(records)
}

fn trees(opts: &SuiteOptions) -> Result<Timed, String> {
    let solve_max = capped(opts.max_edges, 8, crate::graph::MAX_TREE_EDGES, "max edges")?;
    let referee_max = capped(
        Some(solve_max + 1),
        9,
        crate::graph::MAX_TREE_EDGES,
        "referee max edges",
    )?;
    let jobs: Vec<(Graph, usize)> = trees_up_to(referee_max)?
        .into_iter()
        .flat_map(|g| (1..=3).map(move |m| (g.clone(), m)))
        .collect();
    let mut records: Timed = jobs
        .par_iter()
        .filter(|(g, _)| g.edge_count() <= solve_max)
        .map(|(g, m)| {
            let bound = g.max_degree() + 2;
            Check::new(graph_id(g), "index <= Δ+2", Authority::Published, HOLDS)
                .m(*m)
                .run(|| {
                    let (index, nodes) = index_check(g, *m, &opts.solver)?;
                    Ok(Observation::new(
                        holds(index <= bound),
                        format!("index = {index}, Δ+2 = {bound}"),
                        nodes,
                    ))
                })
        })
        .collect();
    records.par_extend(jobs.par_iter().map(|(g, m)| {
        let k = g.max_degree() + 2;
        Check::new(
            graph_id(g),
            "tree strategy",
            Authority::Derived,
            WINS_EVERY_LINE,
        )
        .m(*m)
        .k(k)
        .run(|| {
            let rules = Ruleset::new(*m, k).map_err(|e| Failure::Error(e.to_string()))?;
            let s = TreeMakerStrategy::new(g, *m, k, TreeMode::Standard);
            referee_check(g, rules, s, &opts.referee, k)
        })
    }));
    Ok(records)
}

fn trees_diam(opts: &SuiteOptions) -> Result<Timed, String> {
    let max_edges = capped(opts.max_edges, 8, crate::graph::MAX_TREE_EDGES, "max edges")?;
    let cat_max = capped(
        Some(max_edges + 1),
        9,
        crate::graph::MAX_TREE_EDGES,
        "caterpillar max edges",
    )?;
    let all = trees_up_to(cat_max)?;
    let mut jobs = Vec::new();
    for g in all.iter().filter(|g| g.edge_count() <= max_edges) {
        let diam = g.diameter().expect("trees are connected");
        for m in 1..=3usize {
            if m + 2 >= diam {
                jobs.push((g.clone(), m));
            }
        }
    }
    let mut records: Timed = jobs
        .par_iter()
        .map(|(g, m)| {
            let bound = g.max_degree() + 1;
            Check::new(graph_id(g), "index <= Δ+1", Authority::Published, HOLDS)
                .m(*m)
                .run(|| {
                    let (index, nodes) = index_check(g, *m, &opts.solver)?;
                    Ok(Observation::new(
                        holds(index <= bound),
                        format!("index = {index}, Δ+1 = {bound}"),
                        nodes,
                    ))
                })
        })
        .collect();
    records.par_extend(jobs.par_iter().map(|(g, m)| {
        let k = g.max_degree() + 1;
        Check::new(
            graph_id(g),
            "fast-fill strategy",
            Authority::Derived,
            WINS_EVERY_LINE,
        )
        .m(*m)
        .k(k)
        .run(|| {
            let rules = Ruleset::new(*m, k).map_err(|e| Failure::Error(e.to_string()))?;
            let s = TreeMakerStrategy::new(g, *m, k, TreeMode::FastFill);
            referee_check(g, rules, s, &opts.referee, k)
        })
    }));
    let subcubic: Vec<(Graph, usize)> = all
        .into_iter()
        .filter(|g| g.max_degree() == 3 && is_caterpillar(g))
        .flat_map(|g| (2..=3).map(move |m| (g.clone(), m)))
        .collect();
    records.par_extend(subcubic.par_iter().map(|(g, m)| {
        Check::new(
            graph_id(g),
            "subcubic caterpillar index <= 4",
            Authority::Published,
            HOLDS,
        )
        .m(*m)
        .run(|| {
            let (index, nodes) = index_check(g, *m, &opts.solver)?;
            Ok(Observation::new(
                holds(index <= 4),
                format!("index = {index}"),
                nodes,
            ))
        })
    }));
    Ok(records)
}

fn caterpillars(opts: &SuiteOptions) -> Result<Timed, String> {
    let max_edges = capped(opts.max_edges, 9, crate::graph::MAX_TREE_EDGES, "max edges")?;
    let jobs: Vec<(Graph, usize)> = trees_up_to(max_edges)?
        .into_iter()
        .filter(|g| g.max_degree() >= 4 && is_caterpillar(g))
        .flat_map(|g| (2..=3).map(move |m| (g.clone(), m)))
        .collect();
    let mut records: Timed = jobs
        .par_iter()
        .map(|(g, m)| {
            let delta = g.max_degree();
            Check::new(graph_id(g), "index = Δ", Authority::Published, delta)
                .m(*m)
                .run(|| {
                    let (index, nodes) = index_check(g, *m, &opts.solver)?;
                    Ok(Observation::new(index, format!("Δ = {delta}"), nodes))
                })
        })
        .collect();
    records.par_extend(jobs.par_iter().map(|(g, m)| {
        let k = g.max_degree();
        Check::new(
            graph_id(g),
            "caterpillar strategy",
            Authority::Derived,
            WINS_EVERY_LINE,
        )
        .m(*m)
        .k(k)
        .run(|| {
            let rules = Ruleset::new(*m, k).map_err(|e| Failure::Error(e.to_string()))?;
            referee_check(
                g,
                rules,
                CaterpillarStrategy::new(g, *m, k),
                &opts.referee,
                k,
            )
        })
    }));
    Ok(records)
}

fn wheel_referee(n: usize, m: usize, k: usize, opts: &SuiteOptions) -> (InstanceRecord, f64) {
    let g = generate(Family::Wheel, &[n]).expect("n >= 3");
    Check::new(
        family_id(Family::Wheel, &[n]),
        "wheel strategy",
        Authority::Derived,
        WINS_EVERY_LINE,
    )
    .m(m)
    .k(k)
    .run(|| {
        let rules = Ruleset::new(m, k).map_err(|e| Failure::Error(e.to_string()))?;
        let s = WheelStrategy::new(g.wheel_layout()?, m, k);
        referee_check(&g, rules, s, &opts.referee, k)
    })
}

fn wheel_index(n: usize, m: usize, expected: usize, opts: &SuiteOptions) -> (InstanceRecord, f64) {
    let g = generate(Family::Wheel, &[n]).expect("n >= 3");
    Check::new(
        family_id(Family::Wheel, &[n]),
        "index",
        Authority::Published,
        expected,
    )
    .m(m)
    .run(|| {
        let (index, nodes) = index_check(&g, m, &opts.solver)?;
        Ok(Observation::new(index, "", nodes))
    })
}

fn wheels_small(opts: &SuiteOptions) -> Result<Timed, String> {
    let cases = [
        (3, 2, 3),
        (3, 3, 3),
        (3, 4, 3),
        (4, 2, 4),
        (4, 3, 5),
        (4, 4, 4),
        (4, 5, 4),
    ];
    let mut records: Timed = cases
        .par_iter()
        .map(|&(n, m, index)| wheel_index(n, m, index, opts))
        .collect();
    records.par_extend(
        cases
            .par_iter()
            .map(|&(n, m, index)| wheel_referee(n, m, index, opts)),
    );

    let w4 = generate(Family::Wheel, &[4]).expect("n >= 3");
    let expected = "0:B 1:B 2:B 3:B 4:B 5:M 6:M";
    records.push(
        Check::new("W4", "profile", Authority::Published, expected)
            .m(3)
            .run(|| {
                let p = win_profile(&w4, 3, &opts.solver)?;
                let shown: Vec<String> = p
                    .outcomes
                    .iter()
                    .enumerate()
                    .map(|(k, &w)| format!("{k}:{}", if w { 'M' } else { 'B' }))
                    .collect();
                Ok(Observation::new(
                    shown.join(" "),
                    "M = Maker wins, B = Breaker wins; k = 4, 5 published, k = 6 trivially",
                    p.nodes_expanded,
                ))
            }),
    );
    Ok(records)
}

fn wheels_general(opts: &SuiteOptions) -> Result<Timed, String> {
    let max_n = opts.max_n.unwrap_or(6).max(5);
    let mut records: Timed = [2, 3]
        .par_iter()
        .map(|&m| wheel_index(5, m, 5, opts))
        .collect();
    let referee_cases: Vec<(usize, usize)> = (5..=max_n).map(|n| (n, 2)).collect();
    records.par_extend(
        referee_cases
            .par_iter()
            .map(|&(n, m)| wheel_referee(n, m, n, opts)),
    );
    Ok(records)
}

fn prop7(opts: &SuiteOptions) -> Result<Timed, String> {
    let pairs: Vec<(usize, usize)> = match (opts.m1, opts.m2) {
        (Some(m1), Some(m2)) => vec![(m1, m2)],
        (None, None) => vec![(3, 1), (5, 2)],
        _ => return Err("prop7 needs both --m1 and --m2, or neither".into()),
    };
    for &(m1, m2) in &pairs {
        if m2 == 0 || m1 <= m2 || turn_multiplier(m1, m2).is_none() {
            return Err(format!(
                "m1 = {m1} is not t*m2 + t - 1 for m2 = {m2} and any t >= 2"
            ));
        }
    }
    let max_edges = capped(opts.max_edges, 7, crate::graph::MAX_TREE_EDGES, "max edges")?;
    let max_n = opts.max_n.unwrap_or(4);
    let mut graphs: Vec<(String, Graph)> = trees_up_to(max_edges)?
        .into_iter()
        .map(|g| (graph_id(&g), g))
        .collect();
    for n in 3..=max_n {
        graphs.push((
            family_id(Family::Wheel, &[n]),
            generate(Family::Wheel, &[n]).map_err(|e| e.to_string())?,
        ));
    }
    type Job<'a> = (&'a (String, Graph), (usize, usize));
    let jobs: Vec<Job> = graphs
        .iter()
        .flat_map(|g| pairs.iter().map(move |&p| (g, p)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|((name, g), (m1, m2))| {
            Check::new(
                format!("{name} m1={m1}"),
                "index(m1) <= index(m2)",
                Authority::Published,
                HOLDS,
            )
            .m(*m2)
            .run(|| {
                let (a, na) = index_check(g, *m1, &opts.solver)?;
                let (b, nb) = index_check(g, *m2, &opts.solver)?;
                Ok(Observation::new(
                    holds(a <= b),
                    format!("index(m1 = {m1}) = {a}, index(m2 = {m2}) = {b}"),
                    na + nb,
                ))
            })
        })
        .collect())
}

fn nonmono(opts: &SuiteOptions) -> Result<Timed, String> {
    let m1 = opts.m1.unwrap_or(3);
    let m2 = opts.m2.unwrap_or(2);
    let max_n = opts.max_n.unwrap_or(4);
    let wheels: Vec<Graph> = (3..=max_n)
        .map(|n| generate(Family::Wheel, &[n]).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if max_n < 3 {
        return Err("nonmono needs max n >= 3".into());
    }
    let expected = if (m1, m2) == (3, 2) {
        if max_n >= 4 {
            "W4 (5 > 4)"
        } else {
            "none"
        }
    } else if m2 >= 1 && m1 > m2 && turn_multiplier(m1, m2).is_some() {
        "none"
    } else {
        return Err(format!(
            "no reference value for m1 = {m1}, m2 = {m2}; use `scan` to explore other pairs"
        ));
    };
    let authority = Authority::Published;
    let record = Check::new(format!("W3..W{max_n}"), "witnesses", authority, expected)
        .m(m1)
        .run(|| {
            let found = scan_monotonicity_counterexamples(m1, m2, wheels, &opts.solver)?;
            let shown: Vec<String> = found
                .iter()
                .map(|w| {
                    format!(
                        "W{} ({} > {})",
                        w.graph.max_degree(),
                        w.index_m1,
                        w.index_m2
                    )
                })
                .collect();
            Ok(Observation::new(
                if shown.is_empty() {
                    "none".to_string()
                } else {
                    shown.join(", ")
                },
                format!("m1 = {m1}, m2 = {m2}"),
                0,
            ))
        });
    Ok(vec![record])
}

fn oracle(opts: &SuiteOptions) -> Result<Timed, String> {
    let max_edges = capped(
        opts.max_edges,
        6,
        crate::graph::MAX_CONNECTED_EDGES,
        "max edges",
    )?;
    let graphs = enumerate_connected_graphs(max_edges).map_err(|e| e.to_string())?;
    let mut jobs = Vec::new();
    for g in graphs.iter().filter(|g| g.edge_count() > 0) {
        for m in 1..=3 {
            for k in 1..=5 {
                jobs.push((g, m, k));
            }
        }
    }
    Ok(jobs
        .par_iter()
        .map(|&(g, m, k)| {
            let rules = Ruleset::new(m, k).expect("valid rules");
            let naive = naive_maker_wins(&GameState::new(g, rules));
            let expected = if naive { "maker" } else { "breaker" };
            Check::new(
                graph_id(g),
                "solver = minimax",
                Authority::Derived,
                expected,
            )
            .m(m)
            .k(k)
            .run(|| {
                let r = maker_wins_with(g, rules, &opts.solver)?;
                Ok(Observation::new(
                    if r.maker_wins { "maker" } else { "breaker" },
                    "",
                    r.nodes_expanded,
                ))
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn summary_matches_records() {
        let report = run_suite(Suite::WheelsSmall, &SuiteOptions::default()).unwrap();
        let s = report.summary;
        assert_eq!(s.total, report.records.len());
        assert_eq!(s.passed + s.failed + s.skipped, s.total);
        for r in &report.records {
            assert_eq!(
                r.verdict == Verdict::Pass,
                r.expected == r.observed,
                "{r:?}"
            );
        }
        assert!(
            report.all_passed(),
            "{:#?}",
            report.failures().collect::<Vec<_>>()
        );
    }

    #[test]
    fn records_are_sorted_and_keys_unique() {
        let report = run_suite(Suite::Prop7, &SuiteOptions::default()).unwrap();
        let keys: Vec<&String> = report.records.iter().map(|r| &r.key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn canonical_json_is_reproducible() {
        let opts = SuiteOptions {
            max_edges: Some(4),
            ..SuiteOptions::default()
        };
        let a = run_suite(Suite::Oracle, &opts).unwrap();
        let b = run_suite(Suite::Oracle, &opts).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert!(!a.to_canonical_json().contains("timing"));
        assert!(a.to_json().contains("timing"));
    }

    #[test]
    fn caps_mark_instances_skipped() {
        let opts = SuiteOptions {
            solver: SolverConfig {
                node_limit: Some(1),
                ..SolverConfig::relaxed()
            },
            ..SuiteOptions::default()
        };
        let report = run_suite(Suite::WheelsGeneral, &opts).unwrap();
        assert!(report.summary.skipped > 0);
        assert!(!report.all_passed());
        assert!(report
            .records
            .iter()
            .filter(|r| r.verdict == Verdict::Skipped)
            .all(|r| r.observed.starts_with("skipped")));
    }

    #[test]
    fn bad_prop7_pairs_are_rejected() {
        let opts = SuiteOptions {
            m1: Some(4),
            m2: Some(1),
            ..SuiteOptions::default()
        };
        assert!(run_suite(Suite::Prop7, &opts).is_err());
    }
}
