//! Scripted Maker strategies, Breaker heuristics and an exhaustive referee.
//!
//! A [`MakerStrategy`] plans a whole Maker turn at once. Every decision
//! carries a [`RuleTag`] naming the step of the constructive argument it
//! implements, so traces can be audited move by move.

mod breaker;
mod caterpillar;
mod referee;
mod tree;
mod wheel;

pub use breaker::{slack, BreakerHeuristic};
pub use caterpillar::CaterpillarStrategy;
pub use referee::{
    plan_maker_turn, play_against_heuristic, referee_exhaustive, RefereeConfig, RefereeError,
    RefereeOutcome,
};
pub use tree::{MarkedSubtree, RootedOrientation, TreeMakerStrategy, TreeMode};
pub use wheel::WheelStrategy;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::game::{Color, GameError, GameState, Move, ReplayError, Ruleset, Side, Transcript};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("strategy has no scripted move: {0}")]
    Stuck(String),
    #[error(transparent)]
    Engine(#[from] GameError),
}

/// The step of a constructive argument that produced a Maker move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleTag {
    FirstTurnSubtree,
    JoinArcFirst,
    FillSubtree,
    ExtendSubtree,
    PathToBreaker,
    FrontierExtend,
    SpineOpening,
    SpineNeighborRepair,
    SpineFill,
    LegGreedy,
    PairOpening,
    SpokeMirror,
    PairFill,
    ResponseTable,
    ForcedPattern,
    SpokeFirst,
    MatchFreshColor,
    SeparateSpokes,
    RimFiller,
    RimGreedy,
    ForcedFill,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::FirstTurnSubtree => "first-turn-subtree",
            RuleTag::JoinArcFirst => "join-arc-first",
            RuleTag::FillSubtree => "fill-subtree",
            RuleTag::ExtendSubtree => "extend-subtree",
            RuleTag::PathToBreaker => "path-to-breaker",
            RuleTag::FrontierExtend => "frontier-extend",
            RuleTag::SpineOpening => "spine-opening",
            RuleTag::SpineNeighborRepair => "spine-neighbor-repair",
            RuleTag::SpineFill => "spine-fill",
            RuleTag::LegGreedy => "leg-greedy",
            RuleTag::PairOpening => "pair-opening",
            RuleTag::SpokeMirror => "spoke-mirror",
            RuleTag::PairFill => "pair-fill",
            RuleTag::ResponseTable => "response-table",
            RuleTag::ForcedPattern => "forced-pattern",
            RuleTag::SpokeFirst => "spoke-first",
            RuleTag::MatchFreshColor => "match-fresh-color",
            RuleTag::SeparateSpokes => "separate-spokes",
            RuleTag::RimFiller => "rim-filler",
            RuleTag::RimGreedy => "rim-greedy",
            RuleTag::ForcedFill => "forced-fill",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision {
    pub mv: Move,
    pub rule: RuleTag,
}

/// A deterministic Maker strategy with its own per-game memory.
///
/// `Eq + Hash` cover the memory, so a referee can tell apart two visits to
/// the same position with different strategy state.
pub trait MakerStrategy: Clone + Eq + Hash {
    fn name(&self) -> &'static str;

    /// Plans Maker's remaining sub-moves for the current turn.
    fn plan_turn(&mut self, state: &GameState<'_>) -> Result<Vec<Decision>, StrategyError>;

    /// Checked by the referee after every Maker turn.
    fn check_invariants(&self, _state: &GameState<'_>) -> Result<(), String> {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub turn: usize,
    pub submove: usize,
    pub side: Side,
    pub mv: Move,
    pub rule: Option<RuleTag>,
}

/// A played line with the rule behind each Maker move.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrategyTrace {
    pub entries: Vec<TraceEntry>,
}

impl StrategyTrace {
    pub fn moves(&self) -> Vec<Move> {
        self.entries.iter().map(|e| e.mv).collect()
    }

    /// Transcript lines with the rule tag as a trailing comment.
    pub fn to_transcript(&self) -> Transcript {
        let mut t = Transcript::default();
        for e in &self.entries {
            t.push(e.side, e.mv, e.rule.map(|r| r.to_string()));
        }
        t
    }

    pub fn replay<'g>(
        &self,
        graph: &'g Graph,
        rules: Ruleset,
    ) -> Result<GameState<'g>, ReplayError> {
        crate::game::replay_transcript(graph, rules, &self.to_transcript())
    }
}

/// Scratch copy of the position while a turn is being planned.
pub(crate) struct TurnPlan<'g> {
    state: GameState<'g>,
    budget: usize,
    decisions: Vec<Decision>,
}

impl<'g> TurnPlan<'g> {
    pub(crate) fn new(state: &GameState<'g>) -> Result<Self, StrategyError> {
        if state.is_over() || state.side_to_move() != Side::Maker {
            return Err(StrategyError::Precondition("Maker is not to move".into()));
        }
        Ok(TurnPlan {
            budget: state.maker_submoves_left(),
            state: state.clone(),
            decisions: Vec::new(),
        })
    }

    pub(crate) fn left(&self) -> usize {
        self.budget
    }

    pub(crate) fn state(&self) -> &GameState<'g> {
        &self.state
    }

    pub(crate) fn is_colored(&self, e: usize) -> bool {
        self.state.color_of(e).is_some()
    }

    pub(crate) fn play(
        &mut self,
        edge: usize,
        color: Color,
        rule: RuleTag,
    ) -> Result<(), StrategyError> {
        if self.budget == 0 {
            return Err(StrategyError::Stuck("turn already complete".into()));
        }
        let mv = Move::new(edge, color);
        self.state.play(mv)?;
        self.budget -= 1;
        self.decisions.push(Decision { mv, rule });
        Ok(())
    }

    /// Colors `edge` with its smallest feasible color.
    pub(crate) fn play_smallest(
        &mut self,
        edge: usize,
        rule: RuleTag,
    ) -> Result<(), StrategyError> {
        let c =
            self.state.feasible_colors(edge)?.min().ok_or_else(|| {
                StrategyError::Stuck(format!("edge {edge} has no feasible color"))
            })?;
        self.play(edge, c, rule)
    }

    /// Smallest color unused anywhere on the board.
    pub(crate) fn new_color(&self) -> Option<Color> {
        self.state
            .rules()
            .palette()
            .difference(self.state.used_colors())
            .min()
    }

    /// Spends the rest of the turn on the lowest uncolored edges.
    pub(crate) fn fill_rest(&mut self, rule: RuleTag) -> Result<(), StrategyError> {
        while self.budget > 0 {
            let e = self
                .state
                .uncolored_edges()
                .next()
                .ok_or_else(|| StrategyError::Stuck("no uncolored edge".into()))?;
            self.play_smallest(e, rule)?;
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Vec<Decision> {
        self.decisions
    }
}

/// The single edge colored since `mirror` was taken, if any.
pub(crate) fn newly_colored(state: &GameState<'_>, mirror: &[bool]) -> Option<usize> {
    (0..mirror.len()).find(|&e| !mirror[e] && state.color_of(e).is_some())
}

pub(crate) fn colored_mask(state: &GameState<'_>) -> Vec<bool> {
    state.colors().iter().map(Option::is_some).collect()
}
