use crate::game::{Color, GameState};
use crate::graph::{Graph, SpineDecomposition};

use super::{
    colored_mask, newly_colored, Decision, MakerStrategy, RuleTag, StrategyError, TurnPlan,
};

/// Maker strategy for caterpillars: secure the spine, then the legs take
/// care of themselves.
///
/// A leg meets at most `Δ - 1` edges, so once every spine edge is colored
/// Maker can never get stuck. The spine is kept safe by repairing, right
/// after Breaker colors a leg, the spine edges next to that leg.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaterpillarStrategy {
    spine: SpineDecomposition,
    /// Spine edges adjacent to each edge, by edge index.
    spine_neighbors: Vec<Vec<usize>>,
    mirror: Vec<bool>,
}

impl CaterpillarStrategy {
    /// Needs `m >= 2`, `Δ >= 3` and `k >= max(Δ, 4)`.
    pub fn new(g: &Graph, m: usize, k: usize) -> Result<Self, StrategyError> {
        let spine = g
            .spine()
            .map_err(|e| StrategyError::Precondition(format!("caterpillar strategy: {e}")))?;
        let delta = g.max_degree();
        if m < 2 {
            return Err(StrategyError::Precondition(format!(
                "caterpillar strategy needs m >= 2, got m = {m}"
            )));
        }
        if delta < 3 {
            return Err(StrategyError::Precondition(format!(
                "caterpillar strategy needs Δ >= 3, got Δ = {delta}"
            )));
        }
        let needed = delta.max(4);
        if k < needed {
            return Err(StrategyError::Precondition(format!(
                "caterpillar strategy needs k >= {needed}, got k = {k}"
            )));
        }
        let spine_neighbors = (0..g.edge_count())
            .map(|e| {
                g.adjacent_edges(e)
                    .iter()
                    .copied()
                    .filter(|f| spine.is_spine_edge(*f))
                    .collect()
            })
            .collect();
        Ok(CaterpillarStrategy {
            spine,
            spine_neighbors,
            mirror: vec![false; g.edge_count()],
        })
    }

    pub fn spine(&self) -> &SpineDecomposition {
        &self.spine
    }

    fn first_turn(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        for (pos, &e) in self.spine.spine_edges.iter().enumerate() {
            if plan.left() == 0 {
                return Ok(());
            }
            plan.play(e, (pos % 2) as Color, RuleTag::SpineOpening)?;
        }
        self.spine_then_legs(plan)
    }

    fn spine_then_legs(&self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        while plan.left() > 0 {
            match self
                .spine
                .spine_edges
                .iter()
                .copied()
                .find(|&e| !plan.is_colored(e))
            {
                Some(e) => plan.play_smallest(e, RuleTag::SpineFill)?,
                None => plan.fill_rest(RuleTag::LegGreedy)?,
            }
        }
        Ok(())
    }
}

impl MakerStrategy for CaterpillarStrategy {
    fn name(&self) -> &'static str {
        "caterpillar"
    }

    fn plan_turn(&mut self, state: &GameState<'_>) -> Result<Vec<Decision>, StrategyError> {
        let mut plan = TurnPlan::new(state)?;
        if state.colored_count() == 0 {
            self.first_turn(&mut plan)?;
        } else {
            if let Some(e) = newly_colored(state, &self.mirror) {
                if !self.spine.is_spine_edge(e) {
                    for &f in &self.spine_neighbors[e] {
                        if plan.left() > 0 && !plan.is_colored(f) {
                            plan.play_smallest(f, RuleTag::SpineNeighborRepair)?;
                        }
                    }
                }
            }
            self.spine_then_legs(&mut plan)?;
        }
        self.mirror = colored_mask(plan.state());
        Ok(plan.finish())
    }

    fn check_invariants(&self, state: &GameState<'_>) -> Result<(), String> {
        let g = state.graph();
        for &f in &self.spine.spine_edges {
            if state.color_of(f).is_some() {
                continue;
            }
            let (spine_colored, legs_colored) = g
                .adjacent_edges(f)
                .iter()
                .filter(|&&e| state.color_of(e).is_some())
                .fold((0, 0), |(s, l), &e| {
                    if self.spine.is_spine_edge(e) {
                        (s + 1, l)
                    } else {
                        (s, l + 1)
                    }
                });
            if spine_colored > 2 || legs_colored > 1 {
                return Err(format!(
                    "uncolored spine edge {f} sees {spine_colored} colored spine edges and {legs_colored} colored legs"
                ));
            }
        }
        Ok(())
    }
}
