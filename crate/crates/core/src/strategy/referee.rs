use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::game::{Color, GameError, GameState, Move, Ruleset, Side, Status};
use crate::graph::Graph;
use crate::solver::{
    canonical_key, canonical_relabeling, CanonicalKey, HARD_MAX_COLORS, HARD_MAX_EDGES,
};

use super::{
    BreakerHeuristic, Decision, MakerStrategy, RuleTag, StrategyError, StrategyTrace, TraceEntry,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefereeConfig {
    pub max_edges: usize,
    pub max_colors: usize,
    /// Maximum number of distinct Breaker positions to expand.
    pub node_limit: u64,
    /// Fail on the first broken strategy invariant. Turning this off lets
    /// the walk show whether a broken invariant actually loses the game.
    pub check_invariants: bool,
}

impl Default for RefereeConfig {
    fn default() -> Self {
        RefereeConfig {
            max_edges: HARD_MAX_EDGES,
            max_colors: HARD_MAX_COLORS,
            node_limit: 20_000_000,
            check_invariants: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefereeError {
    #[error("instance exceeds the referee cap: {0}")]
    CapExceeded(String),
    #[error("referee gave up after {0} Breaker positions")]
    NodeLimit(u64),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("strategy played an illegal move after {} moves: {error}", trace.entries.len())]
    IllegalMove {
        trace: StrategyTrace,
        error: GameError,
    },
    #[error("strategy ended its turn early after {} moves", trace.entries.len())]
    IncompleteTurn { trace: StrategyTrace },
    #[error("strategy invariant broken after {} moves: {message}", trace.entries.len())]
    InvariantViolated {
        trace: StrategyTrace,
        message: String,
    },
}

impl RefereeError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            RefereeError::CapExceeded(_) | RefereeError::NodeLimit(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefereeOutcome {
    /// Every Breaker line ends in a Maker win.
    pub maker_always_wins: bool,
    /// A Breaker line that beats the strategy, when there is one.
    pub refutation: Option<StrategyTrace>,
    /// Why the refutation wins for Breaker.
    pub failure: Option<String>,
    /// The first complete line explored.
    pub sample: StrategyTrace,
    pub breaker_nodes: u64,
    pub table_hits: u64,
    pub invariant_checks: u64,
    /// Largest color Maker chose, counted with colors relabeled by first
    /// appearance; bounds how many colors the strategy ever needs.
    pub max_maker_color: Option<Color>,
}

/// Maker's moves for the current turn, planned on the color-canonical form
/// of `state` and mapped back to the actual colors.
///
/// Returns `(actual move, rule, canonical color)` per sub-move.
fn planned_turn<S: MakerStrategy>(
    state: &GameState<'_>,
    strategy: &mut S,
) -> Result<Vec<(Move, RuleTag, Color)>, StrategyError> {
    let perm = canonical_relabeling(state.colors(), state.rules().k);
    let mut inverse = vec![0; perm.len()];
    for (c, &p) in perm.iter().enumerate() {
        inverse[p as usize] = c as Color;
    }
    let canonical = state.relabeled(&perm);
    Ok(strategy
        .plan_turn(&canonical)?
        .into_iter()
        .map(|d| {
            let actual = Move::new(d.mv.edge, inverse[d.mv.color as usize]);
            (actual, d.rule, d.mv.color)
        })
        .collect())
}

/// Plans Maker's turn the way the referee does (on the color-canonical
/// form of `state`) and returns the decisions in the actual colors.
pub fn plan_maker_turn<S: MakerStrategy>(
    state: &GameState<'_>,
    strategy: &mut S,
) -> Result<Vec<Decision>, StrategyError> {
    Ok(planned_turn(state, strategy)?
        .into_iter()
        .map(|(mv, rule, _)| Decision { mv, rule })
        .collect())
}

struct Walk<S> {
    config: RefereeConfig,
    memo: FxHashMap<(CanonicalKey, S), bool>,
    trace: Vec<TraceEntry>,
    refutation: Option<StrategyTrace>,
    failure: Option<String>,
    sample: Option<StrategyTrace>,
    breaker_nodes: u64,
    table_hits: u64,
    invariant_checks: u64,
    max_maker_color: Option<Color>,
}

impl<S: MakerStrategy> Walk<S> {
    fn snapshot(&self) -> StrategyTrace {
        StrategyTrace {
            entries: self.trace.clone(),
        }
    }

    fn lose(&mut self, why: String) -> bool {
        self.refutation = Some(self.snapshot());
        self.failure = Some(why);
        false
    }

    fn finished(&mut self, state: &GameState<'_>) -> bool {
        match state.status() {
            Status::MakerWin => {
                if self.sample.is_none() {
                    self.sample = Some(self.snapshot());
                }
                true
            }
            _ => self.lose("Maker is left with an edge that has no feasible color".into()),
        }
    }

    fn maker_turn(
        &mut self,
        mut state: GameState<'_>,
        mut strategy: S,
        turn: usize,
    ) -> Result<bool, RefereeError> {
        let depth = self.trace.len();
        let moves = match planned_turn(&state, &mut strategy) {
            Ok(moves) => moves,
            Err(StrategyError::Stuck(why)) => {
                return Ok(self.lose(format!("strategy stuck: {why}")))
            }
            Err(StrategyError::Engine(error)) => {
                return Err(RefereeError::IllegalMove {
                    trace: self.snapshot(),
                    error,
                })
            }
            Err(e) => return Err(e.into()),
        };
        for (i, (mv, rule, canonical)) in moves.into_iter().enumerate() {
            self.max_maker_color = self.max_maker_color.max(Some(canonical));
            if let Err(error) = state.play_as(Side::Maker, mv) {
                return Err(RefereeError::IllegalMove {
                    trace: self.snapshot(),
                    error,
                });
            }
            self.trace.push(TraceEntry {
                turn,
                submove: i,
                side: Side::Maker,
                mv,
                rule: Some(rule),
            });
        }
        if !state.is_over() && state.side_to_move() == Side::Maker {
            return Err(RefereeError::IncompleteTurn {
                trace: self.snapshot(),
            });
        }
        if self.config.check_invariants {
            self.invariant_checks += 1;
            if let Err(message) = strategy.check_invariants(&state) {
                return Err(RefereeError::InvariantViolated {
                    trace: self.snapshot(),
                    message,
                });
            }
        }
        let won = if state.is_over() {
            self.finished(&state)
        } else {
            self.breaker_node(state, strategy, turn + 1)?
        };
        self.trace.truncate(depth);
        Ok(won)
    }

    fn breaker_node(
        &mut self,
        state: GameState<'_>,
        strategy: S,
        turn: usize,
    ) -> Result<bool, RefereeError> {
        let key = (canonical_key(&state), strategy);
        if let Some(&won) = self.memo.get(&key) {
            self.table_hits += 1;
            return Ok(won);
        }
        self.breaker_nodes += 1;
        if self.breaker_nodes > self.config.node_limit {
            return Err(RefereeError::NodeLimit(self.config.node_limit));
        }
        let mut seen = FxHashSet::default();
        let mut won = true;
        for mv in state.legal_moves() {
            let child = state.apply_move(mv).expect("legal move");
            if !seen.insert(canonical_key(&child)) {
                continue;
            }
            self.trace.push(TraceEntry {
                turn,
                submove: 0,
                side: Side::Breaker,
                mv,
                rule: None,
            });
            let ok = if child.is_over() {
                self.finished(&child)
            } else {
                self.maker_turn(child, key.1.clone(), turn + 1)?
            };
            self.trace.pop();
            if !ok {
                won = false;
                break;
            }
        }
        self.memo.insert(key, won);
        Ok(won)
    }
}

/// Plays `strategy` for Maker against every Breaker line.
///
/// Maker's turns are scripted, so only Breaker branches. Positions equal
/// up to color renaming, with equal strategy memory, are walked once; the
/// strategy always sees colors relabeled by first appearance.
pub fn referee_exhaustive<S: MakerStrategy>(
    g: &Graph,
    rules: Ruleset,
    strategy: S,
    config: &RefereeConfig,
) -> Result<RefereeOutcome, RefereeError> {
    if g.edge_count() > config.max_edges {
        return Err(RefereeError::CapExceeded(format!(
            "{} edges, cap {}",
            g.edge_count(),
            config.max_edges
        )));
    }
    if rules.k > config.max_colors {
        return Err(RefereeError::CapExceeded(format!(
            "{} colors, cap {}",
            rules.k, config.max_colors
        )));
    }
    let mut walk = Walk {
        config: config.clone(),
        memo: FxHashMap::default(),
        trace: Vec::new(),
        refutation: None,
        failure: None,
        sample: None,
        breaker_nodes: 0,
        table_hits: 0,
        invariant_checks: 0,
        max_maker_color: None,
    };
    let start = GameState::new(g, rules);
    let won = if start.is_over() {
        walk.finished(&start)
    } else {
        walk.maker_turn(start, strategy, 0)?
    };
    Ok(RefereeOutcome {
        maker_always_wins: won,
        refutation: walk.refutation,
        failure: walk.failure,
        sample: walk.sample.unwrap_or_default(),
        breaker_nodes: walk.breaker_nodes,
        table_hits: walk.table_hits,
        invariant_checks: walk.invariant_checks,
        max_maker_color: walk.max_maker_color,
    })
}

/// Plays one game of `strategy` against a Breaker heuristic.
///
/// Invariant violations and illegal moves are reported as errors, as in
/// the exhaustive walk.
pub fn play_against_heuristic<'g, S: MakerStrategy, R: Rng + ?Sized>(
    g: &'g Graph,
    rules: Ruleset,
    mut strategy: S,
    breaker: BreakerHeuristic,
    rng: &mut R,
) -> Result<(GameState<'g>, StrategyTrace), RefereeError> {
    let mut state = GameState::new(g, rules);
    let mut trace = StrategyTrace::default();
    let mut turn = 0;
    while !state.is_over() {
        match state.side_to_move() {
            Side::Maker => {
                let moves = match planned_turn(&state, &mut strategy) {
                    Ok(moves) => moves,
                    // A stuck strategy means an edge is dead: Breaker wins.
                    Err(StrategyError::Stuck(_)) => break,
                    Err(StrategyError::Engine(error)) => {
                        return Err(RefereeError::IllegalMove { trace, error })
                    }
                    Err(e) => return Err(e.into()),
                };
                for (i, (mv, rule, _)) in moves.into_iter().enumerate() {
                    if let Err(error) = state.play_as(Side::Maker, mv) {
                        return Err(RefereeError::IllegalMove { trace, error });
                    }
                    trace.entries.push(TraceEntry {
                        turn,
                        submove: i,
                        side: Side::Maker,
                        mv,
                        rule: Some(rule),
                    });
                }
                if let Err(message) = strategy.check_invariants(&state) {
                    return Err(RefereeError::InvariantViolated { trace, message });
                }
            }
            Side::Breaker => {
                let mv = breaker
                    .choose(&state, rng)
                    .expect("Breaker has a legal move in a running game");
                state
                    .play_as(Side::Breaker, mv)
                    .expect("heuristics play legal moves");
                trace.entries.push(TraceEntry {
                    turn,
                    submove: 0,
                    side: Side::Breaker,
                    mv,
                    rule: None,
                });
            }
        }
        turn += 1;
    }
    Ok((state, trace))
}
