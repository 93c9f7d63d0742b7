//! Engine, exact solver and scripted Maker strategies for the (m,1)-edge
//! coloring game, in which Maker colors `m` edges per turn, Breaker one,
//! and Maker wins exactly when every edge ends up properly colored.

pub mod game;
pub mod graph;
pub mod solver;
pub mod strategy;
pub mod verify;

pub use game::{Color, ColorSet, GameError, GameState, Move, Ruleset, Side, Status};
pub use graph::{Family, Graph, GraphError};
pub use solver::{
    game_chromatic_index, maker_wins, maker_wins_with, naive_maker_wins, win_profile, SolveError,
    SolveResult, Solver, SolverConfig, WinProfile,
};
pub use strategy::{
    referee_exhaustive, BreakerHeuristic, CaterpillarStrategy, MakerStrategy, RefereeConfig,
    RefereeOutcome, StrategyTrace, TreeMakerStrategy, TreeMode, WheelStrategy,
};
