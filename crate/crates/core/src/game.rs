//! Rules of the (m,1)-edge coloring game.
//!
//! Maker moves first and colors `m` uncolored edges per turn, Breaker one.
//! Every coloring keeps adjacent edges distinct. Maker wins when all edges
//! are colored; Breaker wins as soon as the side to move has an uncolored
//! edge left but no legal move. Turns are mandatory: Maker makes exactly
//! `min(m, uncolored)` sub-moves and nobody may pass.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub type Color = u8;

/// Largest supported palette.
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid rules: {0}")]
    BadRules(String),
    #[error("the game is already over")]
    GameOver,
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("edge {0} is already colored")]
    EdgeColored(usize),
    #[error("color {color} is outside the palette 0..{k}")]
    ColorOutOfRange { color: Color, k: usize },
    #[error("color {color} clashes with an edge adjacent to {edge}")]
    Infeasible { edge: usize, color: Color },
    #[error("it is {expected}'s move, not {got}'s")]
    WrongSide { expected: Side, got: Side },
    #[error("inconsistent state: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ruleset {
    /// Maker's sub-moves per turn.
    pub m: usize,
    /// Palette size; colors are `0..k`.
    pub k: usize,
}

impl Ruleset {
    pub fn new(m: usize, k: usize) -> Result<Self, GameError> {
        if m == 0 {
            return Err(GameError::BadRules("m must be at least 1".into()));
        }
        if k > MAX_COLORS {
            return Err(GameError::BadRules(format!(
                "palette of {k} colors exceeds {MAX_COLORS}"
            )));
        }
        Ok(Ruleset { m, k })
    }

    pub fn palette(&self) -> ColorSet {
        ColorSet::full(self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Maker,
    Breaker,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Maker => Side::Breaker,
            Side::Breaker => Side::Maker,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Maker => "maker",
            Side::Breaker => "breaker",
        })
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maker" => Ok(Side::Maker),
            "breaker" => Ok(Side::Breaker),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    MakerWin,
    BreakerWin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub edge: usize,
    pub color: Color,
}

impl Move {
    pub fn new(edge: usize, color: Color) -> Self {
        Move { edge, color }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.edge, self.color)
    }
}

/// A set of palette colors, as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet(0)
    }

    pub fn full(k: usize) -> Self {
        if k >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn contains(self, c: Color) -> bool {
        (c as u32) < 64 && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros();
            bits &= bits - 1;
            Some(c as Color)
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// A position: partial proper edge coloring plus turn bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState<'g> {
    graph: &'g Graph,
    rules: Ruleset,
    colors: Vec<Option<Color>>,
    side: Side,
    maker_left: usize,
    status: Status,
    colored: usize,
}

impl<'g> GameState<'g> {
    /// Fresh game. A graph without edges is an immediate Maker win; a side
    /// facing uncolored edges without any legal move loses at once.
    pub fn new(graph: &'g Graph, rules: Ruleset) -> Self {
        let mut s = GameState {
            graph,
            rules,
            colors: vec![None; graph.edge_count()],
            side: Side::Maker,
            maker_left: rules.m.min(graph.edge_count()),
            status: Status::Ongoing,
            colored: 0,
        };
        s.settle();
        s
    }

    /// Builds an arbitrary position, e.g. a position quoted from a proof.
    pub fn from_parts(
        graph: &'g Graph,
        rules: Ruleset,
        colors: Vec<Option<Color>>,
        side: Side,
        maker_left: usize,
    ) -> Result<Self, GameError> {
        if colors.len() != graph.edge_count() {
            return Err(GameError::Inconsistent(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.edge_count()
            )));
        }
        for (e, c) in colors.iter().enumerate() {
            if let Some(c) = *c {
                if c as usize >= rules.k {
                    return Err(GameError::ColorOutOfRange {
                        color: c,
                        k: rules.k,
                    });
                }
                if graph
                    .adjacent_edges(e)
                    .iter()
                    .any(|&f| colors[f] == Some(c))
                {
                    return Err(GameError::Infeasible { edge: e, color: c });
                }
            }
        }
        let colored = colors.iter().filter(|c| c.is_some()).count();
        let uncolored = colors.len() - colored;
        let maker_left = match side {
            Side::Maker
                if uncolored > 0 && (maker_left == 0 || maker_left > rules.m.min(uncolored)) =>
            {
                return Err(GameError::Inconsistent(format!(
                    "Maker cannot have {maker_left} sub-moves left"
                )))
            }
            Side::Maker => maker_left.min(uncolored),
            Side::Breaker => 0,
        };
        let mut s = GameState {
            graph,
            rules,
            colors,
            side,
            maker_left,
            status: Status::Ongoing,
            colored,
        };
        s.settle();
        Ok(s)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn rules(&self) -> Ruleset {
        self.rules
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn color_of(&self, e: usize) -> Option<Color> {
        self.colors[e]
    }

    pub fn side_to_move(&self) -> Side {
        self.side
    }

    /// Remaining Maker sub-moves this turn; zero unless Maker is to move.
    pub fn maker_submoves_left(&self) -> usize {
        self.maker_left
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_over(&self) -> bool {
        self.status != Status::Ongoing
    }

    pub fn colored_count(&self) -> usize {
        self.colored
    }

    pub fn uncolored_count(&self) -> usize {
        self.colors.len() - self.colored
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.colors.len()).filter(|&e| self.colors[e].is_none())
    }

    /// Colors appearing anywhere on the board.
    pub fn used_colors(&self) -> ColorSet {
        self.colors.iter().flatten().copied().collect()
    }

    /// Colors on edges adjacent to `e`.
    pub fn blocked_colors(&self, e: usize) -> ColorSet {
        self.graph
            .adjacent_edges(e)
            .iter()
            .filter_map(|&f| self.colors[f])
            .collect()
    }

    pub fn feasible_colors(&self, e: usize) -> Result<ColorSet, GameError> {
        if e >= self.colors.len() {
            return Err(GameError::NoSuchEdge(e));
        }
        if self.colors[e].is_some() {
            return Err(GameError::EdgeColored(e));
        }
        Ok(self.rules.palette().difference(self.blocked_colors(e)))
    }

    /// All legal moves, ordered by edge index then color.
    pub fn legal_moves(&self) -> Vec<Move> {
        if self.is_over() {
            return Vec::new();
        }
        self.uncolored_edges()
            .flat_map(|e| {
                let feasible = self.feasible_colors(e).unwrap();
                feasible.iter().map(move |c| Move::new(e, c))
            })
            .collect()
    }

    pub fn has_legal_move(&self) -> bool {
        self.uncolored_edges()
            .any(|e| !self.feasible_colors(e).unwrap().is_empty())
    }

    pub fn check_move(&self, mv: Move) -> Result<(), GameError> {
        if self.is_over() {
            return Err(GameError::GameOver);
        }
        let feasible = self.feasible_colors(mv.edge)?;
        if mv.color as usize >= self.rules.k {
            return Err(GameError::ColorOutOfRange {
                color: mv.color,
                k: self.rules.k,
            });
        }
        if !feasible.contains(mv.color) {
            return Err(GameError::Infeasible {
                edge: mv.edge,
                color: mv.color,
            });
        }
        Ok(())
    }

    /// Applies a move for the side to move, in place.
    pub fn play(&mut self, mv: Move) -> Result<(), GameError> {
        self.check_move(mv)?;
        self.colors[mv.edge] = Some(mv.color);
        self.colored += 1;
        if self.uncolored_count() == 0 {
            self.status = Status::MakerWin;
            self.maker_left = 0;
            return Ok(());
        }
        match self.side {
            Side::Maker if self.maker_left > 1 => self.maker_left -= 1,
            Side::Maker => {
                self.side = Side::Breaker;
                self.maker_left = 0;
            }
            Side::Breaker => {
                self.side = Side::Maker;
                self.maker_left = self.rules.m.min(self.uncolored_count());
            }
        }
        self.settle();
        Ok(())
    }

    /// Like [`play`](Self::play) but also checks who is moving.
    pub fn play_as(&mut self, side: Side, mv: Move) -> Result<(), GameError> {
        if !self.is_over() && side != self.side {
            return Err(GameError::WrongSide {
                expected: self.side,
                got: side,
            });
        }
        self.play(mv)
    }

    pub fn apply_move(&self, mv: Move) -> Result<GameState<'g>, GameError> {
        let mut next = self.clone();
        next.play(mv)?;
        Ok(next)
    }

    /// Same position with every color `c` replaced by `perm[c]`.
    pub fn relabeled(&self, perm: &[Color]) -> GameState<'g> {
        let mut s = self.clone();
        for c in s.colors.iter_mut().flatten() {
            *c = perm[*c as usize];
        }
        s
    }

    pub fn is_proper(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .all(|(e, _)| match self.colors[e] {
                None => true,
                Some(c) => self
                    .graph
                    .adjacent_edges(e)
                    .iter()
                    .all(|&f| self.colors[f] != Some(c)),
            })
    }

    fn settle(&mut self) {
        if self.status != Status::Ongoing {
            return;
        }
        if self.uncolored_count() == 0 {
            self.status = Status::MakerWin;
            self.maker_left = 0;
        } else if !self.has_legal_move() {
            self.status = Status::BreakerWin;
            self.maker_left = 0;
        }
    }
}

/// One line of a game record: `<side> <edge-index> <color>`, optionally
/// followed by `# <note>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptLine {
    pub side: Side,
    pub mv: Move,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub lines: Vec<TranscriptLine>,
}

impl Transcript {
    pub fn push(&mut self, side: Side, mv: Move, note: Option<String>) {
        self.lines.push(TranscriptLine { side, mv, note });
    }

    pub fn moves(&self) -> Vec<Move> {
        self.lines.iter().map(|l| l.mv).collect()
    }

    pub fn parse(text: &str) -> Result<Transcript, String> {
        let mut t = Transcript::default();
        for (i, raw) in text.lines().enumerate() {
            let (body, note) = match raw.split_once('#') {
                Some((b, n)) => (b, Some(n.trim().to_string())),
                None => (raw, None),
            };
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let err = |msg: String| format!("line {}: {msg}", i + 1);
            let [side, edge, color] = toks[..] else {
                return Err(err("expected `<side> <edge> <color>`".into()));
            };
            let side = side.parse().map_err(err)?;
            let edge = edge
                .parse()
                .map_err(|_| err(format!("bad edge `{edge}`")))?;
            let color = color
                .parse()
                .map_err(|_| err(format!("bad color `{color}`")))?;
            t.push(side, Move::new(edge, color), note);
        }
        Ok(t)
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            write!(f, "{} {} {}", l.side, l.mv.edge, l.mv.color)?;
            if let Some(note) = &l.note {
                write!(f, " # {note}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index} is illegal: {source}")]
pub struct ReplayError {
    pub index: usize,
    pub source: GameError,
}

/// Folds `moves` over a fresh game, each played by whoever is to move.
pub fn replay<'g>(
    graph: &'g Graph,
    rules: Ruleset,
    moves: &[Move],
) -> Result<GameState<'g>, ReplayError> {
    let mut s = GameState::new(graph, rules);
    for (index, &mv) in moves.iter().enumerate() {
        s.play(mv).map_err(|source| ReplayError { index, source })?;
    }
    Ok(s)
}

/// Replays a transcript, also checking the recorded sides.
pub fn replay_transcript<'g>(
    graph: &'g Graph,
    rules: Ruleset,
    transcript: &Transcript,
) -> Result<GameState<'g>, ReplayError> {
    let mut s = GameState::new(graph, rules);
    for (index, line) in transcript.lines.iter().enumerate() {
        s.play_as(line.side, line.mv)
            .map_err(|source| ReplayError { index, source })?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn rules(m: usize, k: usize) -> Ruleset {
        Ruleset::new(m, k).unwrap()
    }

    #[test]
    fn fresh_games() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let s = GameState::new(&p3, rules(2, 2));
        assert_eq!(s.side_to_move(), Side::Maker);
        assert_eq!(s.maker_submoves_left(), 2);
        assert_eq!(s.status(), Status::Ongoing);

        let empty = Graph::new(3, &[]).unwrap();
        assert_eq!(
            GameState::new(&empty, rules(1, 0)).status(),
            Status::MakerWin
        );

        let w4 = generate(Family::Wheel, &[4]).unwrap();
        let s = GameState::new(&w4, rules(3, 5));
        assert_eq!(s.uncolored_count(), 8);
        assert_eq!(s.maker_submoves_left(), 3);
    }

    #[test]
    fn feasible_colors_follow_neighbours() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let s = GameState::new(&p3, rules(1, 2));
        assert_eq!(s.feasible_colors(0).unwrap(), ColorSet::full(2));

        let w3 = generate(Family::Wheel, &[3]).unwrap();
        let colors = vec![Some(0), Some(1), Some(2), None, None, None];
        let s = GameState::from_parts(&w3, rules(2, 3), colors, Side::Breaker, 0).unwrap();
        let w = w3.wheel_layout().unwrap();
        for j in 0..3 {
            let f = s.feasible_colors(w.rim[j]).unwrap();
            assert_eq!(f.len(), 1);
            let [a, b] = w.spokes_at_rim(j);
            let untouched = (0..3).find(|&i| i != a && i != b).unwrap() as Color;
            assert_eq!(f.min(), Some(untouched));
        }

        let star = generate(Family::Star, &[3]).unwrap();
        let colors = vec![Some(0), Some(1), None];
        let s = GameState::from_parts(&star, rules(1, 2), colors, Side::Maker, 1);
        // The last edge is blocked, so the position is already lost.
        assert_eq!(s.unwrap().status(), Status::BreakerWin);
        assert!(matches!(
            GameState::new(&star, rules(1, 3))
                .apply_move(Move::new(0, 0))
                .unwrap()
                .feasible_colors(0),
            Err(GameError::EdgeColored(0))
        ));
    }

    #[test]
    fn legal_move_counts() {
        let p2 = generate(Family::Path, &[2]).unwrap();
        assert_eq!(GameState::new(&p2, rules(1, 3)).legal_moves().len(), 3);
        let w4 = generate(Family::Wheel, &[4]).unwrap();
        assert_eq!(GameState::new(&w4, rules(1, 4)).legal_moves().len(), 32);
    }

    #[test]
    fn turn_structure() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let s = GameState::new(&p3, rules(1, 1))
            .apply_move(Move::new(0, 0))
            .unwrap();
        assert_eq!(s.status(), Status::BreakerWin);

        let p2 = generate(Family::Path, &[2]).unwrap();
        let s = GameState::new(&p2, rules(1, 1))
            .apply_move(Move::new(0, 0))
            .unwrap();
        assert_eq!(s.status(), Status::MakerWin);

        let w4 = generate(Family::Wheel, &[4]).unwrap();
        let mut s = GameState::new(&w4, rules(3, 4));
        for (i, mv) in [Move::new(0, 0), Move::new(1, 1), Move::new(2, 2)]
            .into_iter()
            .enumerate()
        {
            assert_eq!(s.side_to_move(), Side::Maker);
            assert_eq!(s.maker_submoves_left(), 3 - i);
            s.play(mv).unwrap();
        }
        assert_eq!(s.side_to_move(), Side::Breaker);
        assert_eq!(s.uncolored_count(), 5);
        s.play(Move::new(3, 3)).unwrap();
        assert_eq!(s.side_to_move(), Side::Maker);
        assert_eq!(s.maker_submoves_left(), 3);
    }

    #[test]
    fn illegal_moves() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let s = GameState::new(&p3, rules(2, 2));
        let s1 = s.apply_move(Move::new(0, 0)).unwrap();
        assert_eq!(
            s1.apply_move(Move::new(1, 0)),
            Err(GameError::Infeasible { edge: 1, color: 0 })
        );
        assert_eq!(
            s1.apply_move(Move::new(0, 1)),
            Err(GameError::EdgeColored(0))
        );
        assert_eq!(
            s1.apply_move(Move::new(5, 1)),
            Err(GameError::NoSuchEdge(5))
        );
        assert!(matches!(
            s1.apply_move(Move::new(1, 7)),
            Err(GameError::ColorOutOfRange { .. })
        ));
        let mut s2 = s.clone();
        assert!(matches!(
            s2.play_as(Side::Breaker, Move::new(0, 0)),
            Err(GameError::WrongSide { .. })
        ));
    }

    #[test]
    fn replay_reports_first_bad_index() {
        let p3 = generate(Family::Path, &[3]).unwrap();
        let r = rules(1, 2);
        assert_eq!(replay(&p3, r, &[]).unwrap(), GameState::new(&p3, r));
        let err = replay(&p3, r, &[Move::new(0, 0), Move::new(1, 0)]).unwrap_err();
        assert_eq!(err.index, 1);
    }

    #[test]
    fn transcript_text_round_trip() {
        let text = "maker 0 0 # opening\nbreaker 1 2\n";
        let t = Transcript::parse(text).unwrap();
        assert_eq!(t.lines.len(), 2);
        assert_eq!(t.lines[0].note.as_deref(), Some("opening"));
        assert_eq!(t.to_string(), text);
        assert!(Transcript::parse("maker 1\n").is_err());
        assert!(Transcript::parse("nobody 1 2\n").is_err());
    }
}
