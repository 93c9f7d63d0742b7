use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::{GameState, Move, Side, Status};

/// Breaker heuristics for playing against strategies and humans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BreakerHeuristic {
    /// Uniform over legal moves.
    Random,
    /// An unused color on the edge where it hurts most.
    FreshColorAttack,
    /// Minimizes Maker's slack a few sub-moves ahead.
    Lookahead { depth: usize },
}

impl BreakerHeuristic {
    pub const DEFAULT_DEPTH: usize = 2;

    pub fn name(self) -> &'static str {
        match self {
            BreakerHeuristic::Random => "random",
            BreakerHeuristic::FreshColorAttack => "fresh-color-attack",
            BreakerHeuristic::Lookahead { .. } => "lookahead",
        }
    }

    /// Breaker's move, or `None` if Breaker is not to move or is stuck.
    pub fn choose<R: Rng + ?Sized>(self, state: &GameState<'_>, rng: &mut R) -> Option<Move> {
        if state.is_over() || state.side_to_move() != Side::Breaker {
            return None;
        }
        match self {
            BreakerHeuristic::Random => state.legal_moves().choose(rng).copied(),
            BreakerHeuristic::FreshColorAttack => fresh_color_attack(state),
            BreakerHeuristic::Lookahead { depth } => lookahead(state, depth.max(1)),
        }
    }
}

impl fmt::Display for BreakerHeuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BreakerHeuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(BreakerHeuristic::Random),
            "fresh-color-attack" | "fresh_color_attack" | "fresh" => {
                Ok(BreakerHeuristic::FreshColorAttack)
            }
            "lookahead" => Ok(BreakerHeuristic::Lookahead {
                depth: Self::DEFAULT_DEPTH,
            }),
            _ => Err(format!(
                "unknown breaker heuristic `{s}` (expected random, fresh-color-attack or lookahead)"
            )),
        }
    }
}

/// Maker's worst margin: over uncolored edges, feasible colors minus
/// uncolored neighbors. Finished games score `i64::MAX` (Maker won) or
/// `i64::MIN` (Breaker won).
pub fn slack(state: &GameState<'_>) -> i64 {
    match state.status() {
        Status::MakerWin => return i64::MAX,
        Status::BreakerWin => return i64::MIN,
        Status::Ongoing => {}
    }
    let g = state.graph();
    state
        .uncolored_edges()
        .map(|e| {
            let feasible = state.feasible_colors(e).map_or(0, |c| c.len()) as i64;
            let open = g
                .adjacent_edges(e)
                .iter()
                .filter(|&&f| state.color_of(f).is_none())
                .count() as i64;
            feasible - open
        })
        .min()
        .unwrap_or(i64::MAX)
}

/// Moves worth trying: one representative per edge for each of the used
/// colors, plus the smallest fresh color, since fresh colors are
/// interchangeable.
fn representative_moves(state: &GameState<'_>) -> Vec<Move> {
    let used = state.used_colors();
    let fresh = state.rules().palette().difference(used).min();
    state
        .legal_moves()
        .into_iter()
        .filter(|mv| used.contains(mv.color) || Some(mv.color) == fresh)
        .collect()
}

fn minimax(state: &GameState<'_>, depth: usize) -> i64 {
    if depth == 0 || state.is_over() {
        return slack(state);
    }
    let values = representative_moves(state).into_iter().map(|mv| {
        let child = state.apply_move(mv).expect("legal move");
        minimax(&child, depth - 1)
    });
    match state.side_to_move() {
        Side::Maker => values.max(),
        Side::Breaker => values.min(),
    }
    .unwrap_or_else(|| slack(state))
}

fn lookahead(state: &GameState<'_>, depth: usize) -> Option<Move> {
    representative_moves(state).into_iter().min_by_key(|&mv| {
        let child = state.apply_move(mv).expect("legal move");
        (minimax(&child, depth - 1), mv.edge, mv.color)
    })
}

fn fresh_color_attack(state: &GameState<'_>) -> Option<Move> {
    let fresh = match state
        .rules()
        .palette()
        .difference(state.used_colors())
        .min()
    {
        Some(c) => c,
        None => return lookahead(state, 1),
    };
    let g = state.graph();
    let mut best: Option<((usize, usize, usize), Move)> = None;
    for e in state.uncolored_edges() {
        if !state.feasible_colors(e).ok()?.contains(fresh) {
            continue;
        }
        let (mut killed, mut shrunk, mut open) = (0, 0, 0);
        for &f in g.adjacent_edges(e) {
            if state.color_of(f).is_some() {
                continue;
            }
            open += 1;
            let feasible = state.feasible_colors(f).ok()?;
            if feasible.contains(fresh) {
                shrunk += 1;
                if feasible.len() == 1 {
                    killed += 1;
                }
            }
        }
        let score = (killed, shrunk, open);
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, Move::new(e, fresh)));
        }
    }
    best.map(|(_, mv)| mv).or_else(|| lookahead(state, 1))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::game::Ruleset;
    use crate::graph::{generate, Family};

    #[test]
    fn fresh_color_lands_where_it_kills_a_spoke() {
        // s1, s2, s3 hold three colors; the fourth color on r2 leaves s4
        // with nothing.
        let w4 = generate(Family::Wheel, &[4]).unwrap();
        let layout = w4.wheel_layout().unwrap();
        let rules = Ruleset::new(3, 4).unwrap();
        let mut colors = vec![None; 8];
        for i in 0..3 {
            colors[layout.spokes[i]] = Some(i as u8);
        }
        let s = GameState::from_parts(&w4, rules, colors, Side::Breaker, 0).unwrap();
        let mv = BreakerHeuristic::FreshColorAttack
            .choose(&s, &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        assert_eq!(mv, Move::new(6, 3));
        assert_eq!(layout.label(mv.edge).as_deref(), Some("r2"));
        let after = s.apply_move(mv).unwrap();
        assert!(after.feasible_colors(layout.spokes[3]).unwrap().is_empty());
    }

    #[test]
    fn no_fresh_color_falls_back_to_lookahead() {
        let p5 = generate(Family::Path, &[5]).unwrap();
        let rules = Ruleset::new(1, 2).unwrap();
        let s = GameState::from_parts(
            &p5,
            rules,
            vec![Some(0), Some(1), None, None],
            Side::Breaker,
            0,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mv = BreakerHeuristic::FreshColorAttack.choose(&s, &mut rng);
        assert!(mv.is_some());
        assert_eq!(
            mv,
            BreakerHeuristic::Lookahead { depth: 1 }.choose(&s, &mut rng)
        );
    }

    #[test]
    fn seeded_random_is_reproducible() {
        let w5 = generate(Family::Wheel, &[5]).unwrap();
        let rules = Ruleset::new(2, 5).unwrap();
        let mut s = GameState::new(&w5, rules);
        s.play(Move::new(0, 0)).unwrap();
        s.play(Move::new(1, 1)).unwrap();
        let pick = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5)
                .map(|_| BreakerHeuristic::Random.choose(&s, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(pick(7), pick(7));
        for mv in pick(7) {
            assert!(s.check_move(mv).is_ok());
        }
    }

    #[test]
    fn lookahead_takes_an_immediate_win() {
        // The other color on the far edge leaves the middle edge between
        // both colors.
        let p4 = generate(Family::Path, &[4]).unwrap();
        let rules = Ruleset::new(1, 2).unwrap();
        let s =
            GameState::from_parts(&p4, rules, vec![Some(0), None, None], Side::Breaker, 0).unwrap();
        let mv = BreakerHeuristic::Lookahead { depth: 1 }
            .choose(&s, &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        assert_eq!(mv, Move::new(2, 1));
        assert_eq!(s.apply_move(mv).unwrap().status(), Status::BreakerWin);
    }
}
