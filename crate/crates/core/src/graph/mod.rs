//! Simple undirected graphs with stable edge indices and line-graph adjacency.

mod enumerate;
mod generate;
mod io;
mod structure;

pub use enumerate::{
    enumerate_connected_graphs, enumerate_trees, is_isomorphic, TreeStream, MAX_CONNECTED_EDGES,
    MAX_TREE_EDGES,
};
pub use generate::{generate, Family};
pub use io::{parse_graph, write_graph};
pub use structure::{SpineDecomposition, WheelEdge, WheelLayout};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is not a caterpillar: degree-2+ vertices do not induce a path")]
    NotACaterpillar,
    #[error("graph is not a wheel")]
    NotAWheel,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header declares {declared} edges but {found} were given")]
    HeaderMismatch { declared: usize, found: usize },
    #[error("enumeration cap exceeded: {requested} > {cap} edges")]
    CapExceeded { requested: usize, cap: usize },
}

/// A finite simple graph.
///
/// Edges are stored as `(u, v)` with `u < v` and keep the index they were
/// inserted with. Two edges are adjacent when they share an endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    edge_adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut incident = vec![Vec::new(); vertex_count];
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            incident[e.0].push(i);
            incident[e.1].push(i);
            normalized.push(e);
        }
        let edge_adj = normalized
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let mut adj: Vec<usize> = incident[u]
                    .iter()
                    .chain(&incident[v])
                    .copied()
                    .filter(|&f| f != i)
                    .collect();
                adj.sort_unstable();
                adj
            })
            .collect();
        Ok(Graph {
            vertex_count,
            edges: normalized,
            incident,
            edge_adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge indices incident to `v`, in index order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Edges sharing an endpoint with `e`, sorted by index.
    pub fn adjacent_edges(&self, e: usize) -> &[usize] {
        &self.edge_adj[e]
    }

    pub fn are_adjacent_edges(&self, e: usize, f: usize) -> bool {
        self.edge_adj[e].binary_search(&f).is_ok()
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v]
            .iter()
            .map(move |&e| self.other_endpoint(e, v))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident[u]
            .iter()
            .copied()
            .find(|&e| self.other_endpoint(e, u) == v)
    }

    /// Bitmask of adjacent edges per edge; `None` beyond 64 edges.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.edges.len() > 64 {
            return None;
        }
        Some(
            self.edge_adj
                .iter()
                .map(|adj| adj.iter().fold(0u64, |m, &f| m | (1 << f)))
                .collect(),
        )
    }

    /// Connected in the usual sense; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count >= 1 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(|&v| self.degree(v) == 1)
    }

    pub(crate) fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Lower and upper palette bounds for the game.
    ///
    /// Below `lower = Δ` some vertex cannot have all its edges colored. At
    /// `upper = max(deg u + deg v - 1)` every edge keeps a feasible color no
    /// matter how its neighbours are colored.
    pub fn trivial_bounds(&self) -> Result<(usize, usize), GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::Edgeless);
        }
        let upper = self
            .edges
            .iter()
            .map(|&(u, v)| self.degree(u) + self.degree(v) - 1)
            .max()
            .unwrap();
        Ok((self.max_degree(), upper))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn edge_adjacency_is_symmetric() {
        let g = generate(Family::Wheel, &[5]).unwrap();
        for e in 0..g.edge_count() {
            for &f in g.adjacent_edges(e) {
                assert!(g.are_adjacent_edges(f, e));
            }
        }
    }

    #[test]
    fn bounds_of_small_families() {
        let w5 = generate(Family::Wheel, &[5]).unwrap();
        assert_eq!(w5.trivial_bounds(), Ok((5, 7)));
        let p4 = generate(Family::Path, &[4]).unwrap();
        assert_eq!(p4.trivial_bounds(), Ok((2, 3)));
        let k13 = generate(Family::Star, &[3]).unwrap();
        assert_eq!(k13.trivial_bounds(), Ok((3, 3)));
        let empty = Graph::new(3, &[]).unwrap();
        assert_eq!(empty.trivial_bounds(), Err(GraphError::Edgeless));
    }
}
