use serde::Serialize;

use super::{Graph, GraphError};

/// Spine of a caterpillar: the induced path on all vertices of degree at
/// least two, and the remaining pendant edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpineDecomposition {
    /// Spine vertices in path order.
    pub spine_vertices: Vec<usize>,
    /// Spine edges in path order.
    pub spine_edges: Vec<usize>,
    /// All other edges, by index.
    pub leg_edges: Vec<usize>,
}

impl SpineDecomposition {
    pub fn is_spine_edge(&self, e: usize) -> bool {
        self.spine_edges.contains(&e)
    }
}

/// Role of an edge in a wheel; indices are 0-based positions in the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WheelEdge {
    Spoke(usize),
    Rim(usize),
}

/// Labeled wheel `W_n`.
///
/// `spokes[i]` joins the hub to `rim_vertices[i]`; `rim[i]` joins
/// `rim_vertices[i]` and `rim_vertices[(i + 1) % n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WheelLayout {
    pub hub: usize,
    pub rim_vertices: Vec<usize>,
    pub spokes: Vec<usize>,
    pub rim: Vec<usize>,
}

impl WheelLayout {
    pub fn n(&self) -> usize {
        self.spokes.len()
    }

    pub fn role(&self, e: usize) -> Option<WheelEdge> {
        if let Some(i) = self.spokes.iter().position(|&s| s == e) {
            return Some(WheelEdge::Spoke(i));
        }
        self.rim.iter().position(|&r| r == e).map(WheelEdge::Rim)
    }

    /// Rim positions touching spoke position `i`.
    pub fn rims_at_spoke(&self, i: usize) -> [usize; 2] {
        let n = self.n();
        [(i + n - 1) % n, i]
    }

    /// Spoke positions touching rim position `j`.
    pub fn spokes_at_rim(&self, j: usize) -> [usize; 2] {
        [j, (j + 1) % self.n()]
    }

    /// Spoke positions `i` and `j` are consecutive around the rim.
    pub fn spokes_next_to(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }

    /// The rim position sharing no vertex with spoke position `i`, chosen
    /// so that `s_i` and `r_i` form the pairs used by the small-wheel
    /// strategies.
    pub fn partner_rim(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    /// The spoke position paired with rim position `j`.
    pub fn partner_spoke(&self, j: usize) -> usize {
        (j + self.n() - 1) % self.n()
    }

    /// Edge paired with `e`: a spoke with its partner rim and vice versa.
    pub fn partner(&self, e: usize) -> Option<usize> {
        self.role(e).map(|r| match r {
            WheelEdge::Spoke(i) => self.rim[self.partner_rim(i)],
            WheelEdge::Rim(j) => self.spokes[self.partner_spoke(j)],
        })
    }

    /// Label in `s_i` / `r_i` form, 1-based, with `s_i` and `r_i` partners.
    pub fn label(&self, e: usize) -> Option<String> {
        self.role(e).map(|r| match r {
            WheelEdge::Spoke(i) => format!("s{}", i + 1),
            WheelEdge::Rim(j) => format!("r{}", self.partner_spoke(j) + 1),
        })
    }
}

impl Graph {
    /// Longest shortest-path distance, in edges.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            for d in self.bfs_distances(v) {
                best = best.max(d.ok_or(GraphError::Disconnected)?);
            }
        }
        Ok(best)
    }

    pub fn spine(&self) -> Result<SpineDecomposition, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        if self.edge_count() < 2 {
            return Err(GraphError::BadParams(
                "spine needs a tree with at least 2 edges".into(),
            ));
        }
        let on_spine: Vec<bool> = (0..self.vertex_count())
            .map(|v| self.degree(v) >= 2)
            .collect();
        let spine_deg = |v: usize| self.neighbors(v).filter(|&w| on_spine[w]).count();
        let members: Vec<usize> = (0..self.vertex_count()).filter(|&v| on_spine[v]).collect();
        if members.iter().any(|&v| spine_deg(v) > 2) {
            return Err(GraphError::NotACaterpillar);
        }
        // Internal vertices of a tree induce a subtree, so max degree 2 means a path.
        let start = *members.iter().find(|&&v| spine_deg(v) <= 1).unwrap();
        let mut spine_vertices = vec![start];
        let mut spine_edges = Vec::new();
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = self.neighbors(cur).find(|&w| on_spine[w] && w != prev) {
            spine_edges.push(self.edge_between(cur, next).unwrap());
            spine_vertices.push(next);
            prev = cur;
            cur = next;
        }
        let leg_edges = (0..self.edge_count())
            .filter(|e| !spine_edges.contains(e))
            .collect();
        Ok(SpineDecomposition {
            spine_vertices,
            spine_edges,
            leg_edges,
        })
    }

    pub fn wheel_layout(&self) -> Result<WheelLayout, GraphError> {
        let v = self.vertex_count();
        if v < 4 || self.edge_count() != 2 * (v - 1) {
            return Err(GraphError::NotAWheel);
        }
        let n = v - 1;
        let hub = (0..v)
            .find(|&u| self.degree(u) == n)
            .ok_or(GraphError::NotAWheel)?;
        let rim_nbrs =
            |u: usize| -> Vec<usize> { self.neighbors(u).filter(|&w| w != hub).collect() };
        if (0..v).any(|u| u != hub && rim_nbrs(u).len() != 2) {
            return Err(GraphError::NotAWheel);
        }
        let first_spoke = *self.incident_edges(hub).iter().min().unwrap();
        let start = self.other_endpoint(first_spoke, hub);
        let spoke_to = |u: usize| self.edge_between(hub, u).unwrap();
        let mut next = rim_nbrs(start);
        next.sort_by_key(|&w| spoke_to(w));
        let mut rim_vertices = vec![start];
        let mut prev = start;
        let mut cur = next[0];
        while cur != start {
            if rim_vertices.len() == n {
                return Err(GraphError::NotAWheel);
            }
            rim_vertices.push(cur);
            let nb = rim_nbrs(cur);
            let step = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = step;
        }
        if rim_vertices.len() != n {
            return Err(GraphError::NotAWheel);
        }
        let spokes = rim_vertices.iter().map(|&u| spoke_to(u)).collect();
        let rim = (0..n)
            .map(|i| {
                self.edge_between(rim_vertices[i], rim_vertices[(i + 1) % n])
                    .unwrap()
            })
            .collect();
        Ok(WheelLayout {
            hub,
            rim_vertices,
            spokes,
            rim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{generate, Family};
    use super::*;

    #[test]
    fn diameters() {
        assert_eq!(generate(Family::Path, &[5]).unwrap().diameter(), Ok(4));
        assert_eq!(generate(Family::Wheel, &[4]).unwrap().diameter(), Ok(2));
        assert_eq!(generate(Family::Star, &[5]).unwrap().diameter(), Ok(2));
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.diameter(), Err(GraphError::Disconnected));
    }

    #[test]
    fn caterpillar_spine() {
        let cat = generate(Family::Caterpillar, &[3, 3, 0, 3]).unwrap();
        let s = cat.spine().unwrap();
        assert_eq!(s.spine_vertices, vec![0, 1, 2]);
        assert_eq!(s.spine_edges, vec![0, 1]);
        assert_eq!(s.leg_edges, (2..8).collect::<Vec<_>>());

        let p5 = generate(Family::Path, &[5]).unwrap();
        let s = p5.spine().unwrap();
        assert_eq!(s.spine_vertices, vec![1, 2, 3]);
        assert_eq!(s.spine_edges, vec![1, 2]);
    }

    #[test]
    fn spider_is_not_a_caterpillar() {
        let spider = Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(spider.spine(), Err(GraphError::NotACaterpillar));
        let w4 = generate(Family::Wheel, &[4]).unwrap();
        assert_eq!(w4.spine(), Err(GraphError::NotATree));
        let p2 = generate(Family::Path, &[2]).unwrap();
        assert!(matches!(p2.spine(), Err(GraphError::BadParams(_))));
    }

    #[test]
    fn wheel_layouts() {
        for n in 3..=12 {
            let g = generate(Family::Wheel, &[n]).unwrap();
            let w = g.wheel_layout().unwrap();
            assert_eq!(w.hub, 0);
            assert_eq!(w.spokes, (0..n).collect::<Vec<_>>());
            assert_eq!(w.rim, (n..2 * n).collect::<Vec<_>>());
        }
        // W3 is K4: each rim edge meets every edge except the opposite spoke.
        let w3 = generate(Family::Wheel, &[3]).unwrap();
        let w = w3.wheel_layout().unwrap();
        for (j, &r) in w.rim.iter().enumerate() {
            assert_eq!(w3.adjacent_edges(r).len(), 4);
            let opposite = w.spokes[(j + 2) % 3];
            assert!(!w3.are_adjacent_edges(r, opposite));
        }
        let p4 = generate(Family::Path, &[4]).unwrap();
        assert_eq!(p4.wheel_layout(), Err(GraphError::NotAWheel));
    }

    #[test]
    fn partners_are_disjoint_and_share_a_label() {
        for n in 3..=8 {
            let g = generate(Family::Wheel, &[n]).unwrap();
            let w = g.wheel_layout().unwrap();
            for i in 0..n {
                let s = w.spokes[i];
                let r = w.partner(s).unwrap();
                assert!(!g.are_adjacent_edges(s, r));
                assert_eq!(w.partner(r), Some(s));
                let (ls, lr) = (w.label(s).unwrap(), w.label(r).unwrap());
                assert_eq!(ls[1..], lr[1..]);
            }
        }
        let w4 = generate(Family::Wheel, &[4])
            .unwrap()
            .wheel_layout()
            .unwrap();
        assert_eq!(w4.label(4).as_deref(), Some("r4"));
        assert_eq!(w4.label(6).as_deref(), Some("r2"));
    }

    #[test]
    fn wheel_layout_of_relabeled_wheel() {
        // W5 with hub 3 and rim order 0,4,1,5,2.
        let rim = [0, 4, 1, 5, 2];
        let mut edges: Vec<_> = (0..5).map(|i| (rim[i], rim[(i + 1) % 5])).collect();
        edges.extend(rim.iter().map(|&u| (3, u)));
        let g = Graph::new(6, &edges).unwrap();
        let w = g.wheel_layout().unwrap();
        assert_eq!(w.hub, 3);
        assert_eq!(w.n(), 5);
        for j in 0..5 {
            let (a, b) = g.endpoints(w.rim[j]);
            let ends = [w.rim_vertices[j], w.rim_vertices[(j + 1) % 5]];
            assert!(ends.contains(&a) && ends.contains(&b));
        }
    }
}
