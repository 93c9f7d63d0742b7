//! Interactive session: a human plays one side, an engine the other.

use std::io::{BufRead, Write};

use clap::ValueEnum;
use edgegame::game::Transcript;
use edgegame::solver::Solver;
use edgegame::strategy::{
    plan_maker_turn, BreakerHeuristic, CaterpillarStrategy, Decision, StrategyError,
    TreeMakerStrategy, TreeMode, WheelStrategy,
};
use edgegame::{GameState, Graph, Move, Ruleset, Side, SolverConfig};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::common::{render_state, status_line, usage, CliError, EdgeNames};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Maker,
    Breaker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Perfect play from the exact solver (either side).
    Solver,
    /// The scripted Maker strategy for wheels, trees and caterpillars.
    Strategy,
    /// A Breaker heuristic (see `--heuristic`).
    Heuristic,
}

pub const SUPPORTED_CLASSES: &str = "wheels W_n (n >= 3) with the palette their strategy needs, \
trees with k >= Δ+2 (or k >= Δ+1 and m >= diam-2), caterpillars with m >= 2 and k >= max(Δ, 4)";

/// One of the scripted Maker strategies, picked from the graph's class.
enum Scripted {
    Wheel(WheelStrategy),
    Tree(TreeMakerStrategy),
    Caterpillar(CaterpillarStrategy),
}

impl Scripted {
    fn pick(g: &Graph, rules: Ruleset) -> Result<Self, CliError> {
        let (m, k) = (rules.m, rules.k);
        let unsupported = |why: String| {
            usage(format!(
                "no scripted Maker strategy applies: {why}; supported classes: {SUPPORTED_CLASSES}"
            ))
        };
        if let Ok(layout) = g.wheel_layout() {
            return WheelStrategy::new(layout, m, k)
                .map(Scripted::Wheel)
                .map_err(|e| unsupported(e.to_string()));
        }
        if !g.is_tree() {
            return Err(unsupported(
                "the graph is neither a wheel nor a tree".into(),
            ));
        }
        let mut reasons = Vec::new();
        match CaterpillarStrategy::new(g, m, k) {
            Ok(s) => return Ok(Scripted::Caterpillar(s)),
            Err(e) => reasons.push(e.to_string()),
        }
        for mode in [TreeMode::Standard, TreeMode::FastFill] {
            match TreeMakerStrategy::new(g, m, k, mode) {
                Ok(s) => return Ok(Scripted::Tree(s)),
                Err(e) => reasons.push(e.to_string()),
            }
        }
        Err(unsupported(reasons.join("; ")))
    }

    fn plan(&mut self, state: &GameState<'_>) -> Result<Vec<Decision>, StrategyError> {
        match self {
            Scripted::Wheel(s) => plan_maker_turn(state, s),
            Scripted::Tree(s) => plan_maker_turn(state, s),
            Scripted::Caterpillar(s) => plan_maker_turn(state, s),
        }
    }
}

enum Opponent<'g> {
    Solver(Box<Solver<'g>>),
    Scripted(Scripted),
    Heuristic(BreakerHeuristic, ChaCha8Rng),
}

pub struct SessionConfig {
    pub human: Role,
    pub engine: Engine,
    pub heuristic: BreakerHeuristic,
    pub seed: u64,
    pub solver: SolverConfig,
}

pub struct Session<'g> {
    state: GameState<'g>,
    human: Side,
    opponent: Opponent<'g>,
    names: EdgeNames,
    pub transcript: Transcript,
}

impl<'g> Session<'g> {
    pub fn new(g: &'g Graph, rules: Ruleset, cfg: &SessionConfig) -> Result<Self, CliError> {
        let human = match cfg.human {
            Role::Maker => Side::Maker,
            Role::Breaker => Side::Breaker,
        };
        let opponent = match (cfg.engine, human) {
            (Engine::Solver, _) => Opponent::Solver(Box::new(Solver::new(g, rules, &cfg.solver)?)),
            (Engine::Strategy, Side::Breaker) => Opponent::Scripted(Scripted::pick(g, rules)?),
            (Engine::Strategy, Side::Maker) => return Err(usage(
                "scripted strategies play Maker; use --role breaker, or --engine solver|heuristic",
            )),
            (Engine::Heuristic, Side::Maker) => {
                Opponent::Heuristic(cfg.heuristic, ChaCha8Rng::seed_from_u64(cfg.seed))
            }
            (Engine::Heuristic, Side::Breaker) => {
                return Err(usage(
                    "heuristics play Breaker; use --role maker, or --engine solver|strategy",
                ))
            }
        };
        Ok(Session {
            state: GameState::new(g, rules),
            human,
            opponent,
            names: EdgeNames::new(g),
            transcript: Transcript::default(),
        })
    }

    fn record(&mut self, side: Side, mv: Move, note: Option<String>) {
        self.transcript.push(side, mv, note);
    }

    /// Plays the engine's moves until the human is to move or the game ends.
    fn engine_moves(&mut self, out: &mut impl Write) -> Result<(), CliError> {
        while !self.state.is_over() && self.state.side_to_move() != self.human {
            let side = self.state.side_to_move();
            let planned: Vec<(Move, Option<String>)> = match &mut self.opponent {
                Opponent::Solver(solver) => {
                    vec![(solver.best_move(&self.state)?, Some("solver".to_string()))]
                }
                Opponent::Heuristic(h, rng) => {
                    let mv = h
                        .choose(&self.state, rng)
                        .expect("a running game has a legal move");
                    vec![(mv, Some(h.to_string()))]
                }
                Opponent::Scripted(s) => match s.plan(&self.state) {
                    Ok(decisions) => decisions
                        .into_iter()
                        .map(|d| (d.mv, Some(d.rule.to_string())))
                        .collect(),
                    // The script has no answer; keep the game going with the
                    // lowest legal move so the session still ends properly.
                    Err(e) => {
                        let mv = self.state.legal_moves()[0];
                        vec![(mv, Some(format!("fallback ({e})")))]
                    }
                },
            };
            for (mv, note) in planned {
                self.state.play_as(side, mv).map_err(|e| {
                    CliError::Failure(format!("engine played an illegal move {mv}: {e}"))
                })?;
                let shown = note
                    .as_deref()
                    .map(|n| format!("  # {n}"))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{side}: e {} {}  ({}){shown}",
                    mv.edge,
                    mv.color,
                    self.names.get(mv.edge)
                );
                self.record(side, mv, note);
            }
        }
        Ok(())
    }

    fn feasible_list(&self) -> String {
        let mut lines = Vec::new();
        for e in self.state.uncolored_edges() {
            let colors: Vec<String> = self
                .state
                .feasible_colors(e)
                .map(|cs| cs.iter().map(|c| c.to_string()).collect())
                .unwrap_or_default();
            let shown = if colors.is_empty() {
                "none".to_string()
            } else {
                colors.join(" ")
            };
            lines.push(format!("  e{e} ({}): {shown}", self.names.get(e)));
        }
        lines.join("\n")
    }

    fn parse_move(&self, line: &str) -> Result<Move, String> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let toks = match toks.as_slice() {
            ["e", rest @ ..] => rest,
            rest => rest,
        };
        let [edge, color] = toks else {
            return Err("expected `e <edge> <color>`".into());
        };
        let edge = self
            .names
            .resolve(edge)
            .ok_or_else(|| format!("unknown edge `{edge}`"))?;
        let color = color
            .parse()
            .map_err(|_| format!("invalid color `{color}`"))?;
        Ok(Move::new(edge, color))
    }

    /// Runs the read-eval loop until the game ends, the human quits or
    /// input runs out.
    pub fn run(&mut self, input: &mut impl BufRead, out: &mut impl Write) -> Result<(), CliError> {
        let _ = writeln!(
            out,
            "You play {}. Enter moves as `e <edge> <color>` (edge index or label); `show`, `help`, `quit`.",
            self.human
        );
        let _ = writeln!(out, "{}", render_state(&self.state, &self.names));
        loop {
            self.engine_moves(out)?;
            if self.state.is_over() {
                let _ = writeln!(out, "{}", render_state(&self.state, &self.names));
                return Ok(());
            }
            let _ = write!(out, "{}> ", self.human);
            let _ = out.flush();
            let mut line = String::new();
            let read = input
                .read_line(&mut line)
                .map_err(|e| usage(format!("cannot read input: {e}")))?;
            if read == 0 {
                let _ = writeln!(out, "\nend of input; game left unfinished");
                return Ok(());
            }
            let line = line.trim();
            match line {
                "" => continue,
                "quit" | "q" | "exit" => {
                    let _ = writeln!(out, "game left unfinished");
                    return Ok(());
                }
                "show" => {
                    let _ = writeln!(out, "{}", render_state(&self.state, &self.names));
                    continue;
                }
                "help" | "?" => {
                    let _ = writeln!(
                        out,
                        "feasible colors per uncolored edge:\n{}",
                        self.feasible_list()
                    );
                    continue;
                }
                _ => {}
            }
            let checked = self.parse_move(line).and_then(|mv| {
                self.state
                    .check_move(mv)
                    .map(|()| mv)
                    .map_err(|e| e.to_string())
            });
            match checked {
                Ok(mv) => {
                    self.state
                        .play_as(self.human, mv)
                        .expect("move was checked");
                    self.record(self.human, mv, None);
                    if self.state.side_to_move() != self.human || self.state.is_over() {
                        let _ = writeln!(out, "{}", status_line(&self.state));
                    }
                }
                Err(why) => {
                    let _ = writeln!(
                        out,
                        "illegal move: {why}\nfeasible colors per uncolored edge:\n{}",
                        self.feasible_list()
                    );
                }
            }
        }
    }
}
