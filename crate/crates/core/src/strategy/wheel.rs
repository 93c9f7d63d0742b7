use crate::game::{Color, GameState};
use crate::graph::{WheelEdge, WheelLayout};

use super::{Decision, MakerStrategy, RuleTag, StrategyError, TurnPlan};

/// Maker strategy for wheels with the exact palette the wheel needs.
///
/// Supported instances: `W_3` with `k = 3`; `W_4` with `k = 5` for `m = 3`
/// and `k = 4` otherwise; `W_n`, `n >= 5`, with `k = n`. Always `m >= 2`.
///
/// The strategy keeps no memory beyond the layout: every decision is read
/// off the position, which keeps the referee's table small.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WheelStrategy {
    layout: WheelLayout,
    m: usize,
}

/// Maker's reply on `W_4`, `m = 2`, to Breaker's first move, keyed by the
/// edge Breaker colored. The opening is `s_1` and `r_1` in one color; the
/// reply puts two fresh colors on the listed edges, in order.
const W4_PAIR_REPLIES: [(WheelEdge, [WheelEdge; 2]); 6] = [
    (
        WheelEdge::Spoke(1),
        [WheelEdge::Spoke(3), WheelEdge::Rim(3)],
    ),
    (WheelEdge::Spoke(2), [WheelEdge::Rim(0), WheelEdge::Rim(2)]),
    (
        WheelEdge::Spoke(3),
        [WheelEdge::Spoke(1), WheelEdge::Rim(3)],
    ),
    (WheelEdge::Rim(0), [WheelEdge::Spoke(2), WheelEdge::Rim(2)]),
    (WheelEdge::Rim(2), [WheelEdge::Spoke(2), WheelEdge::Rim(0)]),
    (
        WheelEdge::Rim(3),
        [WheelEdge::Spoke(1), WheelEdge::Spoke(3)],
    ),
];

impl WheelStrategy {
    pub fn new(layout: WheelLayout, m: usize, k: usize) -> Result<Self, StrategyError> {
        let n = layout.n();
        let needed = match n {
            3 => 3,
            4 if m == 3 => 5,
            4 => 4,
            _ => n,
        };
        if m < 2 {
            return Err(StrategyError::Precondition(format!(
                "wheel strategy needs m >= 2, got m = {m}"
            )));
        }
        if k != needed {
            return Err(StrategyError::Precondition(format!(
                "wheel strategy for W{n} with m = {m} needs k = {needed}, got k = {k}"
            )));
        }
        Ok(WheelStrategy { layout, m })
    }

    pub fn layout(&self) -> &WheelLayout {
        &self.layout
    }

    fn edge(&self, role: WheelEdge) -> usize {
        match role {
            WheelEdge::Spoke(i) => self.layout.spokes[i],
            WheelEdge::Rim(j) => self.layout.rim[j],
        }
    }

    /// `s_1` and `r_1`, the pair colored first by the pairing strategies.
    fn opening_pair(&self) -> [usize; 2] {
        [
            self.layout.spokes[0],
            self.layout.rim[self.layout.partner_rim(0)],
        ]
    }

    fn second_pair(&self) -> [usize; 2] {
        [
            self.layout.spokes[1],
            self.layout.rim[self.layout.partner_rim(1)],
        ]
    }

    /// The single colored edge outside `opening`, if there is exactly one.
    fn lone_reply(state: &GameState<'_>, opening: &[usize]) -> Option<usize> {
        let mut outside = (0..state.graph().edge_count())
            .filter(|e| !opening.contains(e) && state.color_of(*e).is_some());
        let first = outside.next()?;
        outside.next().is_none().then_some(first)
    }

    fn is_fresh(state: &GameState<'_>) -> bool {
        state.colored_count() == 0
    }

    fn pair_strategy(
        &self,
        plan: &mut TurnPlan<'_>,
        pairs: &[[usize; 2]],
    ) -> Result<(), StrategyError> {
        if Self::is_fresh(plan.state()) {
            for (c, pair) in pairs.iter().enumerate() {
                for &e in pair {
                    plan.play(e, c as Color, RuleTag::PairOpening)?;
                }
            }
        } else {
            let opening: Vec<usize> = pairs.iter().flatten().copied().collect();
            if let Some(b) = Self::lone_reply(plan.state(), &opening) {
                let partner = self.layout.partner(b).expect("edge of the wheel");
                let color = plan.state().color_of(b).expect("colored by Breaker");
                if !plan.is_colored(partner)
                    && plan.state().feasible_colors(partner)?.contains(color)
                {
                    plan.play(partner, color, RuleTag::SpokeMirror)?;
                }
            }
        }
        plan.fill_rest(RuleTag::PairFill)
    }

    fn w4_pair_table(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        let opening = self.opening_pair();
        if Self::is_fresh(plan.state()) {
            for e in opening {
                plan.play(e, 0, RuleTag::PairOpening)?;
            }
            return Ok(());
        }
        if plan.state().colored_count() == 3 {
            let b = Self::lone_reply(plan.state(), &opening)
                .ok_or_else(|| StrategyError::Stuck("opening pair was not kept".into()))?;
            let role = self.layout.role(b).expect("edge of the wheel");
            let (_, reply) = W4_PAIR_REPLIES
                .iter()
                .find(|(r, _)| *r == role)
                .ok_or_else(|| StrategyError::Stuck(format!("no table entry for {role:?}")))?;
            for &target in reply {
                let c = plan
                    .new_color()
                    .ok_or_else(|| StrategyError::Stuck("no fresh color left".into()))?;
                plan.play(self.edge(target), c, RuleTag::ResponseTable)?;
            }
            return Ok(());
        }
        plan.fill_rest(RuleTag::ForcedFill)
    }

    fn w4_forced_pattern(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        if Self::is_fresh(plan.state()) {
            let s = &self.layout.spokes;
            let r = &self.layout.rim;
            // s1, r1 share the first color; s2, r3 and s4 take one color each.
            for (e, c) in [(s[0], 0), (r[1], 0), (s[1], 1), (r[3], 2), (s[3], 3)] {
                plan.play(e, c, RuleTag::ForcedPattern)?;
            }
        }
        plan.fill_rest(RuleTag::ForcedFill)
    }

    fn spokes_then_rim(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        while plan.left() > 0 {
            match self
                .layout
                .spokes
                .iter()
                .copied()
                .find(|&e| !plan.is_colored(e))
            {
                Some(e) => plan.play_smallest(e, RuleTag::SpokeFirst)?,
                None => plan.fill_rest(RuleTag::RimGreedy)?,
            }
        }
        Ok(())
    }

    fn uncolored_spokes(&self, state: &GameState<'_>) -> Vec<usize> {
        (0..self.layout.n())
            .filter(|&i| state.color_of(self.layout.spokes[i]).is_none())
            .collect()
    }

    /// Number of consecutive pairs among the spoke positions in `rest`.
    fn touching_pairs(&self, rest: &[usize]) -> usize {
        let mut count = 0;
        for (a, &i) in rest.iter().enumerate() {
            for &j in &rest[a + 1..] {
                if self.layout.spokes_next_to(i, j) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Among `candidates`, the spoke whose removal leaves the fewest
    /// consecutive uncolored spokes; ties go to the lowest position.
    fn best_separating(&self, uncolored: &[usize], candidates: &[usize]) -> Option<usize> {
        candidates.iter().copied().min_by_key(|&i| {
            let rest: Vec<usize> = uncolored.iter().copied().filter(|&j| j != i).collect();
            (self.touching_pairs(&rest), i)
        })
    }

    /// Colors that appear on the board but on no spoke.
    fn orphan_colors(&self, state: &GameState<'_>) -> Vec<Color> {
        let on_spokes: Vec<Color> = self
            .layout
            .spokes
            .iter()
            .filter_map(|&e| state.color_of(e))
            .collect();
        state
            .used_colors()
            .iter()
            .filter(|c| !on_spokes.contains(c))
            .collect()
    }

    fn general_submove(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        let state = plan.state();
        let uncolored = self.uncolored_spokes(state);
        if uncolored.is_empty() {
            let e = state.uncolored_edges().next().expect("game still running");
            return plan.play_smallest(e, RuleTag::RimGreedy);
        }

        if let Some(&orphan) = self.orphan_colors(state).first() {
            let mut hosts = Vec::new();
            for &i in &uncolored {
                if state
                    .feasible_colors(self.layout.spokes[i])?
                    .contains(orphan)
                {
                    hosts.push(i);
                }
            }
            if let Some(i) = self.best_separating(&uncolored, &hosts) {
                return plan.play(self.layout.spokes[i], orphan, RuleTag::MatchFreshColor);
            }
        }

        let left = plan.left();
        let pick = if uncolored.len() <= left || uncolored.len() > 3 {
            Some((uncolored[0], RuleTag::SpokeFirst))
        } else if uncolored.len() == 3 {
            self.best_separating(&uncolored, &uncolored)
                .map(|i| (i, RuleTag::SeparateSpokes))
        } else {
            // Two spokes apart and a single move left: spend it on a rim
            // edge without introducing a color.
            if let Some((e, c)) = self.rim_filler(state)? {
                return plan.play(e, c, RuleTag::RimFiller);
            }
            Some((uncolored[0], RuleTag::SpokeFirst))
        };
        let (i, rule) = pick.expect("some spoke is uncolored");
        let e = self.layout.spokes[i];
        match plan.new_color() {
            Some(c) if plan.state().feasible_colors(e)?.contains(c) => plan.play(e, c, rule),
            _ => plan.play_smallest(e, rule),
        }
    }

    /// Lowest uncolored rim edge that admits an already used color, with
    /// the smallest such color.
    fn rim_filler(&self, state: &GameState<'_>) -> Result<Option<(usize, Color)>, StrategyError> {
        let used = state.used_colors();
        for &e in &self.layout.rim {
            if state.color_of(e).is_none() {
                if let Some(c) = state.feasible_colors(e)?.intersection(used).min() {
                    return Ok(Some((e, c)));
                }
            }
        }
        Ok(None)
    }
}

impl MakerStrategy for WheelStrategy {
    fn name(&self) -> &'static str {
        "wheel"
    }

    fn plan_turn(&mut self, state: &GameState<'_>) -> Result<Vec<Decision>, StrategyError> {
        let mut plan = TurnPlan::new(state)?;
        match (self.layout.n(), self.m) {
            (3, 2) => self.pair_strategy(&mut plan, &[self.opening_pair()])?,
            (3, _) => self.spokes_then_rim(&mut plan)?,
            (4, 2) => self.w4_pair_table(&mut plan)?,
            (4, 3) => self.spokes_then_rim(&mut plan)?,
            (4, 4) => self.pair_strategy(&mut plan, &[self.opening_pair(), self.second_pair()])?,
            (4, _) => self.w4_forced_pattern(&mut plan)?,
            _ => {
                while plan.left() > 0 {
                    self.general_submove(&mut plan)?;
                }
            }
        }
        Ok(plan.finish())
    }

    fn check_invariants(&self, state: &GameState<'_>) -> Result<(), String> {
        let n = self.layout.n();
        if n < 5 {
            return Ok(());
        }
        let colored = n - self.uncolored_spokes(state).len();
        let used = state.used_colors().len();
        if colored < n - 3 && used != colored {
            return Err(format!("{colored} spokes colored but {used} colors in use"));
        }
        Ok(())
    }
}
