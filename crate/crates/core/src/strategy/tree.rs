use std::collections::VecDeque;

use crate::game::GameState;
use crate::graph::Graph;

use super::{
    colored_mask, newly_colored, Decision, MakerStrategy, RuleTag, StrategyError, TurnPlan,
};

/// A tree rooted at a leaf, with every edge directed away from the root.
///
/// The edge into vertex `v` is its arc; `head[e]` is the endpoint farther
/// from the root and `tail[e]` the nearer one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedOrientation {
    pub root: usize,
    /// The root's only neighbor.
    pub second: usize,
    /// Parent vertex, `None` for the root.
    pub parent: Vec<Option<usize>>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    /// Arc into each vertex, `None` for the root.
    pub arc_into: Vec<Option<usize>>,
    /// Arcs in breadth-first order of their heads, starting with the root arc.
    pub bfs_arcs: Vec<usize>,
}

impl RootedOrientation {
    /// Roots the tree at its lowest-numbered leaf.
    pub fn new(g: &Graph) -> Result<Self, StrategyError> {
        if !g.is_tree() || g.edge_count() == 0 {
            return Err(StrategyError::Precondition(
                "tree strategy needs a tree with an edge".into(),
            ));
        }
        let root = g.leaves().next().expect("a tree with an edge has leaves");
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut arc_into = vec![None; n];
        let mut tail = vec![0; g.edge_count()];
        let mut head = vec![0; g.edge_count()];
        let mut bfs_arcs = Vec::with_capacity(g.edge_count());
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut out: Vec<usize> = g.incident_edges(v).to_vec();
            out.sort_unstable();
            for e in out {
                let w = g.other_endpoint(e, v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    arc_into[w] = Some(e);
                    tail[e] = v;
                    head[e] = w;
                    bfs_arcs.push(e);
                    queue.push_back(w);
                }
            }
        }
        let second = head[bfs_arcs[0]];
        Ok(RootedOrientation {
            root,
            second,
            parent,
            tail,
            head,
            arc_into,
            bfs_arcs,
        })
    }

    pub fn root_arc(&self) -> usize {
        self.bfs_arcs[0]
    }

    /// The arc into the tail of `e`, `None` for the root arc.
    pub fn parent_arc(&self, e: usize) -> Option<usize> {
        self.arc_into[self.tail[e]]
    }

    /// Arcs on the directed path from the root to the head of `e`, in order.
    pub fn path_to(&self, e: usize) -> Vec<usize> {
        let mut path = vec![e];
        let mut cur = e;
        while let Some(p) = self.parent_arc(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Arcs leaving the head of `e`.
    pub fn child_arcs<'a>(&'a self, g: &'a Graph, e: usize) -> impl Iterator<Item = usize> + 'a {
        let v = self.head[e];
        g.incident_edges(v).iter().copied().filter(move |&f| f != e)
    }
}

/// The arc set grown by the tree strategy, plus the colored mask seen at
/// the end of Maker's last turn.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedSubtree {
    pub arcs: Vec<bool>,
    pub mirror: Vec<bool>,
}

impl MarkedSubtree {
    fn new(edges: usize) -> Self {
        MarkedSubtree {
            arcs: vec![false; edges],
            mirror: vec![false; edges],
        }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.arcs[e]
    }

    pub fn len(&self) -> usize {
        self.arcs.iter().filter(|&&a| a).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeMode {
    /// Grows a marked subtree; wins with `Δ + 2` colors for every `m`.
    Standard,
    /// Colors the whole path down to Breaker's arc; wins with `Δ + 1`
    /// colors when `m >= diam - 2`.
    FastFill,
    /// Standard play that leaves join arcs for last instead of coloring
    /// them first. Exists only so that tests can check the referee catches
    /// a broken strategy.
    SkipJoinArc,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeMakerStrategy {
    mode: TreeMode,
    orient: RootedOrientation,
    marked: MarkedSubtree,
    started: bool,
    /// Join arcs the sabotaged mode refuses to color while anything else
    /// is left.
    deferred: Vec<usize>,
}

impl TreeMakerStrategy {
    pub fn new(g: &Graph, m: usize, k: usize, mode: TreeMode) -> Result<Self, StrategyError> {
        let orient = RootedOrientation::new(g)?;
        let delta = g.max_degree();
        match mode {
            TreeMode::Standard | TreeMode::SkipJoinArc => {
                if k < delta + 2 {
                    return Err(StrategyError::Precondition(format!(
                        "tree strategy needs k >= Δ + 2 = {}, got k = {k}",
                        delta + 2
                    )));
                }
            }
            TreeMode::FastFill => {
                let diam = g.diameter().expect("trees are connected");
                if m + 2 < diam {
                    return Err(StrategyError::Precondition(format!(
                        "fast-fill strategy needs m >= diam - 2 = {}, got m = {m}",
                        diam - 2
                    )));
                }
                if k < delta + 1 {
                    return Err(StrategyError::Precondition(format!(
                        "fast-fill strategy needs k >= Δ + 1 = {}, got k = {k}",
                        delta + 1
                    )));
                }
            }
        }
        Ok(TreeMakerStrategy {
            mode,
            marked: MarkedSubtree::new(g.edge_count()),
            orient,
            started: false,
            deferred: Vec::new(),
        })
    }

    pub fn mode(&self) -> TreeMode {
        self.mode
    }

    pub fn orientation(&self) -> &RootedOrientation {
        &self.orient
    }

    pub fn marked(&self) -> &MarkedSubtree {
        &self.marked
    }

    fn first_turn(&mut self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        // A breadth-first prefix of the arcs is a subtree containing the
        // root arc; each arc sees at most Δ - 1 colored arcs at its tail.
        for &e in &self.orient.bfs_arcs {
            if plan.left() == 0 {
                break;
            }
            if !plan.is_colored(e) {
                plan.play_smallest(e, RuleTag::FirstTurnSubtree)?;
                self.marked.arcs[e] = true;
            }
        }
        Ok(())
    }

    fn standard_turn(&mut self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        if let Some(w) = newly_colored(plan.state(), &self.marked.mirror) {
            let path = self.orient.path_to(w);
            let join = *path
                .iter()
                .rev()
                .find(|&&a| self.marked.contains(a))
                .expect("the root arc is always marked");
            for &a in &path {
                self.marked.arcs[a] = true;
            }
            if !plan.is_colored(join) {
                if self.mode == TreeMode::SkipJoinArc {
                    self.deferred.push(join);
                } else {
                    plan.play_smallest(join, RuleTag::JoinArcFirst)?;
                }
            }
        }
        while plan.left() > 0 {
            let g = plan.state().graph();
            let fill = (0..g.edge_count()).find(|&a| {
                self.marked.contains(a) && !plan.is_colored(a) && !self.deferred.contains(&a)
            });
            if let Some(a) = fill {
                plan.play_smallest(a, RuleTag::FillSubtree)?;
                continue;
            }
            let extend = (0..g.edge_count()).find(|&a| {
                !self.marked.contains(a)
                    && !plan.is_colored(a)
                    && self
                        .orient
                        .parent_arc(a)
                        .is_none_or(|p| self.marked.contains(p))
            });
            match extend {
                Some(a) => {
                    self.marked.arcs[a] = true;
                    plan.play_smallest(a, RuleTag::ExtendSubtree)?;
                }
                // Only deferred arcs are left.
                None => plan.fill_rest(RuleTag::FillSubtree)?,
            }
        }
        Ok(())
    }

    fn fastfill_turn(&mut self, plan: &mut TurnPlan<'_>) -> Result<(), StrategyError> {
        if let Some(w) = newly_colored(plan.state(), &self.marked.mirror) {
            let path = self.orient.path_to(w);
            // Arcs from the root's neighbor down to the tail of w.
            let inner = if path.len() > 2 {
                &path[1..path.len() - 1]
            } else {
                &[][..]
            };
            for &a in inner {
                if plan.left() == 0 {
                    break;
                }
                if !plan.is_colored(a) {
                    plan.play_smallest(a, RuleTag::PathToBreaker)?;
                }
            }
        }
        while plan.left() > 0 {
            let frontier = self.orient.bfs_arcs.iter().copied().find(|&a| {
                !plan.is_colored(a) && self.orient.parent_arc(a).is_none_or(|p| plan.is_colored(p))
            });
            match frontier {
                Some(a) => plan.play_smallest(a, RuleTag::FrontierExtend)?,
                None => plan.fill_rest(RuleTag::FrontierExtend)?,
            }
        }
        Ok(())
    }
}

impl MakerStrategy for TreeMakerStrategy {
    fn name(&self) -> &'static str {
        match self.mode {
            TreeMode::Standard => "tree",
            TreeMode::FastFill => "tree-fastfill",
            TreeMode::SkipJoinArc => "tree-skip-join-arc",
        }
    }

    fn plan_turn(&mut self, state: &GameState<'_>) -> Result<Vec<Decision>, StrategyError> {
        let mut plan = TurnPlan::new(state)?;
        if !self.started {
            self.started = true;
            self.first_turn(&mut plan)?;
            if plan.left() > 0 {
                // The whole tree fit in the first turn.
                plan.fill_rest(RuleTag::FirstTurnSubtree)?;
            }
        } else if self.mode == TreeMode::FastFill {
            self.fastfill_turn(&mut plan)?;
        } else {
            self.standard_turn(&mut plan)?;
        }
        self.marked.mirror = colored_mask(plan.state());
        Ok(plan.finish())
    }

    fn check_invariants(&self, state: &GameState<'_>) -> Result<(), String> {
        if self.mode == TreeMode::FastFill {
            return Ok(());
        }
        let g = state.graph();
        let o = &self.orient;
        if !self.marked.contains(o.root_arc()) {
            return Err("the root arc is not marked".into());
        }
        for a in 0..g.edge_count() {
            if state.color_of(a).is_some() && !self.marked.contains(a) {
                return Err(format!("arc {a} is colored but not marked"));
            }
            if !self.marked.contains(a) {
                continue;
            }
            if let Some(p) = o.parent_arc(a) {
                if !self.marked.contains(p) {
                    return Err(format!("marked arc {a} hangs below unmarked arc {p}"));
                }
            }
            let marked_children = o
                .child_arcs(g, a)
                .filter(|&c| self.marked.contains(c))
                .count();
            if marked_children >= 2 && state.color_of(a).is_none() {
                return Err(format!(
                    "arc {a} has {marked_children} marked arcs below it but is uncolored"
                ));
            }
        }
        Ok(())
    }
}
