use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use edgegame::graph::{generate, parse_graph, Family, WheelLayout};
use edgegame::solver::SolveError;
use edgegame::{GameState, Graph, GraphError, SolverConfig, Status};

/// Error classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A solver, referee or enumeration cap stopped the run: exit 3.
    Cap(String),
    /// A check came out wrong: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Failure(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Cap(_) => ExitCode::from(3),
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Cap(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    write_file(path, &text)
}

/// Parses generator parameters given as separate words and/or comma lists,
/// so `caterpillar 3 3,0,3` and `caterpillar 3 3 0 3` agree.
pub fn parse_params(words: &[String]) -> Result<Vec<usize>, CliError> {
    words
        .iter()
        .flat_map(|w| w.split(','))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("invalid parameter `{t}`")))
        })
        .collect()
}

/// A graph with a display name.
pub struct Loaded {
    pub graph: Graph,
    pub name: String,
}

/// Loads `--graph`: a graph file, or `family:params` such as `wheel:4` or
/// `caterpillar:3,3,0,3`.
pub fn load_graph(spec: &str) -> Result<Loaded, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let graph = parse_graph(&read_file(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(Loaded { graph, name });
    }
    let Some((family, params)) = spec.split_once(':') else {
        return Err(usage(format!(
            "`{spec}` is neither a graph file nor a `family:params` spec such as wheel:4"
        )));
    };
    let family: Family = family.parse()?;
    let params = parse_params(&[params.to_string()])?;
    let graph = generate(family, &params)?;
    Ok(Loaded {
        name: family_name(family, &params),
        graph,
    })
}

pub fn family_name(family: Family, params: &[usize]) -> String {
    let joined = |ps: &[usize]| {
        ps.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match family {
        Family::Path => format!("P{}", joined(params)),
        Family::Cycle => format!("C{}", joined(params)),
        Family::Star => format!("K1,{}", joined(params)),
        Family::Wheel => format!("W{}", joined(params)),
        Family::Caterpillar => format!("caterpillar({})", joined(params)),
    }
}

pub fn solver_config(cap_override: bool, node_limit: Option<u64>) -> SolverConfig {
    let base = if cap_override {
        SolverConfig::relaxed()
    } else {
        SolverConfig::default()
    };
    SolverConfig { node_limit, ..base }
}

/// Edge names: wheel edges get their `s_i`/`r_i` label, others their
/// endpoints (1-based, as in graph files).
pub struct EdgeNames {
    names: Vec<String>,
    layout: Option<WheelLayout>,
}

impl EdgeNames {
    pub fn new(g: &Graph) -> Self {
        let layout = g.wheel_layout().ok();
        let names = (0..g.edge_count())
            .map(|e| match layout.as_ref().and_then(|l| l.label(e)) {
                Some(label) => label,
                None => {
                    let (u, v) = g.endpoints(e);
                    format!("{}-{}", u + 1, v + 1)
                }
            })
            .collect();
        EdgeNames { names, layout }
    }

    pub fn get(&self, e: usize) -> &str {
        &self.names[e]
    }

    /// Resolves an edge given as an index or, on wheels, as a label.
    pub fn resolve(&self, token: &str) -> Option<usize> {
        if let Ok(e) = token.parse::<usize>() {
            return Some(e);
        }
        self.layout.as_ref()?;
        self.names.iter().position(|n| n == token)
    }
}

pub fn layout_summary(name: &str, g: &Graph) -> String {
    let mut out = format!(
        "{name}: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    let names = EdgeNames::new(g);
    if let Ok(layout) = g.wheel_layout() {
        let _ = write!(out, "; wheel W{} with hub {}", layout.n(), layout.hub + 1);
        let spokes: Vec<String> = layout
            .spokes
            .iter()
            .map(|&e| format!("{}=e{e}", names.get(e)))
            .collect();
        let rims: Vec<String> = layout
            .rim
            .iter()
            .map(|&e| format!("{}=e{e}", names.get(e)))
            .collect();
        let _ = write!(
            out,
            "\n  spokes: {}\n  rim:    {}",
            spokes.join(" "),
            rims.join(" ")
        );
    } else if let Ok(spine) = g.spine() {
        let _ = write!(
            out,
            "; caterpillar with spine edges {:?} and {} legs",
            spine.spine_edges,
            spine.leg_edges.len()
        );
    } else if g.is_tree() {
        let _ = write!(out, "; tree with Δ = {}", g.max_degree());
    }
    out
}

pub fn render_state(state: &GameState<'_>, names: &EdgeNames) -> String {
    let g = state.graph();
    let mut out = String::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let color = state.color_of(e).map_or("·".to_string(), |c| c.to_string());
        let _ = writeln!(
            out,
            "  e{e:<3} {:<5} {:>3}-{:<3} {color}",
            names.get(e),
            u + 1,
            v + 1
        );
    }
    let _ = write!(out, "{}", status_line(state));
    out
}

pub fn status_line(state: &GameState<'_>) -> String {
    match state.status() {
        Status::MakerWin => "MakerWin: every edge is properly colored".to_string(),
        Status::BreakerWin => format!(
            "BreakerWin: {} cannot move and {} edges stay uncolored",
            state.side_to_move(),
            state.uncolored_count()
        ),
        Status::Ongoing => match state.side_to_move() {
            edgegame::Side::Maker => format!(
                "Maker to move ({} of {} sub-moves left this turn)",
                state.maker_submoves_left(),
                state.rules().m
            ),
            edgegame::Side::Breaker => "Breaker to move".to_string(),
        },
    }
}
