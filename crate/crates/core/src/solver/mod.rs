//! Exact perfect-play solver.
//!
//! Maker nodes are OR nodes over single sub-moves, Breaker nodes AND nodes.
//! Positions are memoized under a key that is invariant under renaming the
//! palette, and at each node only one representative of the colors unused
//! on the board is tried.

mod canon;

pub use canon::{canonical_key, canonical_relabeling, CanonicalKey};

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::game::{Color, GameError, GameState, Move, Ruleset, Side, Status};
use crate::graph::{Graph, GraphError};

/// Absolute limits of the packed state encoding.
pub const HARD_MAX_EDGES: usize = 30;
pub const HARD_MAX_COLORS: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("state-space cap exceeded: {0}")]
    CapExceeded(String),
    #[error("node limit of {0} expansions reached")]
    NodeLimit(u64),
    #[error("position is terminal")]
    Terminal,
    #[error("invalid request: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Game(#[from] GameError),
}

impl SolveError {
    pub fn is_cap(&self) -> bool {
        matches!(self, SolveError::CapExceeded(_) | SolveError::NodeLimit(_))
    }
}

/// Refusal thresholds. The defaults refuse anything beyond 12 edges or 8
/// colors; [`SolverConfig::relaxed`] opens up the full packed range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    pub max_edges: usize,
    pub max_colors: usize,
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_edges: 12,
            max_colors: 8,
            node_limit: None,
        }
    }
}

impl SolverConfig {
    pub fn relaxed() -> Self {
        SolverConfig {
            max_edges: HARD_MAX_EDGES,
            max_colors: HARD_MAX_COLORS,
            node_limit: None,
        }
    }

    fn check(&self, g: &Graph, k: usize) -> Result<(), SolveError> {
        let max_edges = self.max_edges.min(HARD_MAX_EDGES);
        let max_colors = self.max_colors.min(HARD_MAX_COLORS);
        if g.edge_count() > max_edges {
            return Err(SolveError::CapExceeded(format!(
                "{} edges > {max_edges}",
                g.edge_count()
            )));
        }
        if k > max_colors {
            return Err(SolveError::CapExceeded(format!(
                "{k} colors > {max_colors}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub maker_wins: bool,
    pub nodes_expanded: u64,
    pub table_hits: u64,
    /// A winning first sub-move when Maker wins; Breaker has no root move.
    pub principal_move: Option<Move>,
}

/// Memoized search for one graph and ruleset.
pub struct Solver<'g> {
    graph: &'g Graph,
    rules: Ruleset,
    adj: Vec<u64>,
    full: u64,
    palette: u64,
    table: FxHashMap<u128, bool>,
    nodes: u64,
    hits: u64,
    node_limit: Option<u64>,
}

#[derive(Clone)]
struct Board {
    colors: [Color; HARD_MAX_EDGES],
    colored: u64,
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

impl<'g> Solver<'g> {
    pub fn new(
        graph: &'g Graph,
        rules: Ruleset,
        config: &SolverConfig,
    ) -> Result<Self, SolveError> {
        config.check(graph, rules.k)?;
        let adj = graph
            .adjacency_masks()
            .expect("edge cap keeps masks in range");
        let e = graph.edge_count();
        Ok(Solver {
            graph,
            rules,
            adj,
            full: if e == 64 { u64::MAX } else { (1u64 << e) - 1 },
            palette: (1u64 << rules.k) - 1,
            table: FxHashMap::default(),
            nodes: 0,
            hits: 0,
            node_limit: config.node_limit,
        })
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    pub fn table_hits(&self) -> u64 {
        self.hits
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Winner of the fresh game, with a principal move when Maker wins.
    pub fn solve(&mut self) -> Result<SolveResult, SolveError> {
        let root = GameState::new(self.graph, self.rules);
        let maker_wins = self.maker_wins_from(&root)?;
        let principal_move = if maker_wins && !root.is_over() {
            Some(self.best_move(&root)?)
        } else {
            None
        };
        Ok(SolveResult {
            maker_wins,
            nodes_expanded: self.nodes,
            table_hits: self.hits,
            principal_move,
        })
    }

    /// Perfect-play winner from an arbitrary position of this game.
    pub fn maker_wins_from(&mut self, s: &GameState) -> Result<bool, SolveError> {
        self.check_state(s)?;
        match s.status() {
            Status::MakerWin => return Ok(true),
            Status::BreakerWin => return Ok(false),
            Status::Ongoing => {}
        }
        let mut board = Board {
            colors: [0; HARD_MAX_EDGES],
            colored: 0,
        };
        for (e, c) in s.colors().iter().enumerate() {
            if let Some(c) = *c {
                board.colors[e] = c;
                board.colored |= 1 << e;
            }
        }
        self.search(&mut board, s.side_to_move(), s.maker_submoves_left())
    }

    /// A move keeping the mover's game value, lowest `(edge, color)` first.
    /// In a lost position that is simply the lowest legal move.
    pub fn best_move(&mut self, s: &GameState) -> Result<Move, SolveError> {
        self.check_state(s)?;
        if s.is_over() {
            return Err(SolveError::Terminal);
        }
        let value = self.maker_wins_from(s)?;
        let moves = s.legal_moves();
        for &mv in &moves {
            let child = s.apply_move(mv)?;
            if self.maker_wins_from(&child)? == value {
                return Ok(mv);
            }
        }
        moves.first().copied().ok_or(SolveError::Terminal)
    }

    fn check_state(&self, s: &GameState) -> Result<(), SolveError> {
        if !std::ptr::eq(s.graph(), self.graph) && s.graph() != self.graph
            || s.rules() != self.rules
        {
            return Err(SolveError::Invalid(
                "position belongs to a different game".into(),
            ));
        }
        Ok(())
    }

    fn key(&self, b: &Board, side: Side, left: usize) -> u128 {
        let mut map = [u8::MAX; 64];
        let mut next = 0u8;
        let mut key = 0u128;
        for e in bits(b.colored) {
            let c = b.colors[e] as usize;
            if map[c] == u8::MAX {
                map[c] = next;
                next += 1;
            }
            key |= ((map[c] + 1) as u128) << (4 * e);
        }
        let side_bit = matches!(side, Side::Breaker) as u128;
        key | side_bit << 120 | (left as u128) << 121
    }

    fn search(&mut self, b: &mut Board, side: Side, left: usize) -> Result<bool, SolveError> {
        let uncolored = self.full & !b.colored;
        if uncolored == 0 {
            return Ok(true);
        }
        let mut feasible = [0u64; HARD_MAX_EDGES];
        let mut slack_everywhere = true;
        for e in bits(uncolored) {
            let blocked = bits(self.adj[e] & b.colored).fold(0u64, |m, f| m | 1 << b.colors[f]);
            let fe = self.palette & !blocked;
            if fe == 0 {
                // This edge can never be colored, so the game cannot complete.
                return Ok(false);
            }
            feasible[e] = fe;
            if fe.count_ones() <= (self.adj[e] & uncolored).count_ones() {
                slack_everywhere = false;
            }
        }
        if slack_everywhere {
            // Each edge keeps a color whatever its neighbours receive.
            return Ok(true);
        }
        let key = self.key(b, side, left);
        if let Some(&v) = self.table.get(&key) {
            self.hits += 1;
            return Ok(v);
        }
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(SolveError::NodeLimit(limit));
            }
        }

        let used = bits(b.colored).fold(0u64, |m, f| m | 1 << b.colors[f]);
        let unused = self.palette & !used;
        let fresh = unused & unused.wrapping_neg();
        let mut order: Vec<usize> = bits(uncolored).collect();
        order.sort_by_key(|&e| (feasible[e].count_ones(), e));

        let remaining_after = uncolored.count_ones() as usize - 1;
        let (next_side, next_left) = match side {
            Side::Maker if left > 1 => (Side::Maker, left - 1),
            Side::Maker => (Side::Breaker, 0),
            Side::Breaker => (Side::Maker, self.rules.m.min(remaining_after)),
        };
        let want = side == Side::Maker;
        let mut result = !want;
        'outer: for e in order {
            for c in bits(feasible[e] & (used | fresh)) {
                b.colors[e] = c as Color;
                b.colored |= 1 << e;
                let child = if remaining_after == 0 {
                    Ok(true)
                } else {
                    self.search(b, next_side, next_left)
                };
                b.colored &= !(1 << e);
                if child? == want {
                    result = want;
                    break 'outer;
                }
            }
        }
        self.table.insert(key, result);
        Ok(result)
    }
}

/// Plain minimax over the engine's rules: no table, no canonicalization,
/// every palette color tried. Exponential; meant as a reference for
/// checking [`Solver`] on small graphs.
pub fn naive_maker_wins(s: &GameState) -> bool {
    match s.status() {
        Status::MakerWin => true,
        Status::BreakerWin => false,
        Status::Ongoing => {
            let mut children = s
                .legal_moves()
                .into_iter()
                .map(|mv| naive_maker_wins(&s.apply_move(mv).expect("legal move")));
            match s.side_to_move() {
                Side::Maker => children.any(|w| w),
                Side::Breaker => children.all(|w| w),
            }
        }
    }
}

/// Winner of `(g, m, k)` under perfect play with default caps.
pub fn maker_wins(g: &Graph, rules: Ruleset) -> Result<SolveResult, SolveError> {
    maker_wins_with(g, rules, &SolverConfig::default())
}

pub fn maker_wins_with(
    g: &Graph,
    rules: Ruleset,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    Solver::new(g, rules, config)?.solve()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexOutcome {
    pub index: usize,
    pub nodes_expanded: u64,
}

/// Smallest palette size with which Maker wins.
///
/// Every `k` from `Δ` to the degree-sum bound is solved on its own; no
/// monotonicity in `k` is assumed. Palettes below `Δ` are rejected
/// without search since some vertex can never be completed.
pub fn game_chromatic_index(
    g: &Graph,
    m: usize,
    config: &SolverConfig,
) -> Result<usize, SolveError> {
    index_search(g, m, config).map(|o| o.index)
}

pub fn index_search(
    g: &Graph,
    m: usize,
    config: &SolverConfig,
) -> Result<IndexOutcome, SolveError> {
    if g.edge_count() == 0 {
        return Ok(IndexOutcome {
            index: 0,
            nodes_expanded: 0,
        });
    }
    let (lower, upper) = g.trivial_bounds()?;
    let mut nodes = 0;
    for k in lower..=upper {
        let r = maker_wins_with(g, Ruleset::new(m, k)?, config)?;
        nodes += r.nodes_expanded;
        if r.maker_wins {
            return Ok(IndexOutcome {
                index: k,
                nodes_expanded: nodes,
            });
        }
    }
    Err(SolveError::Invalid(format!(
        "Maker loses even with {upper} colors; the solver is inconsistent"
    )))
}

/// Outcome for every palette size `0..=upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WinProfile {
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
    /// `outcomes[k]` is true when Maker wins with `k` colors.
    pub outcomes: Vec<bool>,
    /// Once Maker wins for some `k`, Maker also wins for every larger `k`.
    pub monotone: bool,
    pub nodes_expanded: u64,
}

impl WinProfile {
    pub fn index(&self) -> Option<usize> {
        self.outcomes.iter().position(|&w| w)
    }
}

/// Solves every palette size up to the degree-sum bound, in parallel.
pub fn win_profile(g: &Graph, m: usize, config: &SolverConfig) -> Result<WinProfile, SolveError> {
    let (lower, upper) = g.trivial_bounds()?;
    Ruleset::new(m, upper)?;
    let results: Vec<SolveResult> = (0..=upper)
        .into_par_iter()
        .map(|k| maker_wins_with(g, Ruleset::new(m, k)?, config))
        .collect::<Result<_, _>>()?;
    let outcomes: Vec<bool> = results.iter().map(|r| r.maker_wins).collect();
    let monotone = match outcomes.iter().position(|&w| w) {
        Some(first) => outcomes[first..].iter().all(|&w| w),
        None => true,
    };
    Ok(WinProfile {
        m,
        lower,
        upper,
        outcomes,
        monotone,
        nodes_expanded: results.iter().map(|r| r.nodes_expanded).sum(),
    })
}

/// A graph whose index grows when Maker gets more moves per turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    pub index_m1: usize,
    pub index_m2: usize,
}

/// The `t` with `m1 = t*m2 + t - 1`, when one exists. For such pairs more
/// moves can never hurt Maker, so scans must come back empty.
pub fn turn_multiplier(m1: usize, m2: usize) -> Option<usize> {
    (m1 + 1).is_multiple_of(m2 + 1).then(|| (m1 + 1) / (m2 + 1))
}

/// Every graph of the stream with `index(G, m1) > index(G, m2)`, in stream order.
pub fn scan_monotonicity_counterexamples<I>(
    m1: usize,
    m2: usize,
    graphs: I,
    config: &SolverConfig,
) -> Result<Vec<Witness>, SolveError>
where
    I: IntoIterator<Item = Graph>,
{
    if m1 <= m2 || m2 == 0 {
        return Err(SolveError::Invalid(format!(
            "need m1 > m2 >= 1, got m1={m1}, m2={m2}"
        )));
    }
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let indices: Vec<(usize, usize)> = graphs
        .par_iter()
        .map(|g| {
            Ok((
                game_chromatic_index(g, m1, config)?,
                game_chromatic_index(g, m2, config)?,
            ))
        })
        .collect::<Result<_, SolveError>>()?;
    Ok(graphs
        .into_iter()
        .zip(indices)
        .filter(|(_, (a, b))| a > b)
        .map(|(graph, (index_m1, index_m2))| Witness {
            graph,
            index_m1,
            index_m2,
        })
        .collect())
}
