//! Small-graph enumeration for property sweeps.
//!
//! Both enumerators grow graphs one edge at a time and keep one
//! representative per isomorphism class.

use std::collections::{HashMap, HashSet};

use super::{Graph, GraphError};

pub const MAX_TREE_EDGES: usize = 12;
pub const MAX_CONNECTED_EDGES: usize = 7;

/// Stream of non-isomorphic trees with `1..=max_edges` edges, smallest first.
pub struct TreeStream {
    level: Vec<Graph>,
    pos: usize,
    edges: usize,
    max_edges: usize,
}

impl Iterator for TreeStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.pos == self.level.len() {
            if self.edges >= self.max_edges {
                return None;
            }
            self.level = grow_trees(&self.level);
            self.pos = 0;
            self.edges += 1;
        }
        let g = self.level[self.pos].clone();
        self.pos += 1;
        Some(g)
    }
}

pub fn enumerate_trees(max_edges: usize) -> Result<TreeStream, GraphError> {
    if max_edges > MAX_TREE_EDGES {
        return Err(GraphError::CapExceeded {
            requested: max_edges,
            cap: MAX_TREE_EDGES,
        });
    }
    let level = if max_edges == 0 {
        Vec::new()
    } else {
        vec![Graph::new(2, &[(0, 1)]).unwrap()]
    };
    Ok(TreeStream {
        level,
        pos: 0,
        edges: max_edges.min(1),
        max_edges,
    })
}

fn grow_trees(level: &[Graph]) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in level {
        let n = t.vertex_count();
        for v in 0..n {
            let mut edges = t.edges().to_vec();
            edges.push((v, n));
            let g = Graph::new(n + 1, &edges).unwrap();
            if seen.insert(tree_code(&g)) {
                out.push(g);
            }
        }
    }
    out
}

/// Canonical string of a tree (AHU encoding rooted at its center).
fn tree_code(t: &Graph) -> String {
    let n = t.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            deg[v] = 0;
            for w in t.neighbors(v) {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    match layer.as_slice() {
        [c] => rooted_code(t, *c, usize::MAX),
        [a, b] => {
            let (ca, cb) = (rooted_code(t, *a, *b), rooted_code(t, *b, *a));
            if ca <= cb {
                format!("{ca}-{cb}")
            } else {
                format!("{cb}-{ca}")
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .filter(|&w| w != parent)
        .map(|w| rooted_code(t, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Non-isomorphic connected graphs with `1..=max_edges` edges, by edge count.
pub fn enumerate_connected_graphs(max_edges: usize) -> Result<Vec<Graph>, GraphError> {
    if max_edges > MAX_CONNECTED_EDGES {
        return Err(GraphError::CapExceeded {
            requested: max_edges,
            cap: MAX_CONNECTED_EDGES,
        });
    }
    let mut all = Vec::new();
    let mut level = if max_edges == 0 {
        Vec::new()
    } else {
        vec![Graph::new(2, &[(0, 1)]).unwrap()]
    };
    for _ in 1..max_edges {
        all.extend(level.iter().cloned());
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut next: Vec<Graph> = Vec::new();
        for g in &level {
            let n = g.vertex_count();
            let mut candidates = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if g.edge_between(u, v).is_none() {
                        candidates.push((n, (u, v)));
                    }
                }
                candidates.push((n + 1, (u, n)));
            }
            for (verts, e) in candidates {
                let mut edges = g.edges().to_vec();
                edges.push(e);
                let h = Graph::new(verts, &edges).unwrap();
                let bucket = buckets.entry(invariant(&h)).or_default();
                if bucket.iter().all(|&i| !is_isomorphic(&next[i], &h)) {
                    bucket.push(next.len());
                    next.push(h);
                }
            }
        }
        level = next;
    }
    all.extend(level);
    Ok(all)
}

fn invariant(g: &Graph) -> Vec<usize> {
    let mut degs: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    let mut pairs: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.degree(u), g.degree(v));
            a.min(b) * 64 + a.max(b)
        })
        .collect();
    pairs.sort_unstable();
    let mut key = vec![g.vertex_count(), g.edge_count()];
    key.extend(degs);
    key.extend(pairs);
    key
}

/// Exact isomorphism test by backtracking with degree pruning.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let sorted_degrees = |x: &Graph| {
        let mut d: Vec<usize> = (0..x.vertex_count()).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if sorted_degrees(g) != sorted_degrees(h) {
        return false;
    }
    // Visit g's vertices in BFS order so each vertex after a component root
    // has an already-mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    anchor[w] = u;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let adj = |x: &Graph| {
        let mut m = vec![false; n * n];
        for &(u, v) in x.edges() {
            m[u * n + v] = true;
            m[v * n + u] = true;
        }
        m
    };
    let (ag, ah) = (adj(g), adj(h));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        i: usize,
        order: &[usize],
        anchor: &[usize],
        g: &Graph,
        h: &Graph,
        ag: &[bool],
        ah: &[bool],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.vertex_count();
        if i == order.len() {
            return true;
        }
        let x = order[i];
        let candidates: Vec<usize> = if anchor[x] != usize::MAX {
            h.neighbors(map[anchor[x]]).collect()
        } else {
            (0..n).collect()
        };
        for y in candidates {
            if used[y] || h.degree(y) != g.degree(x) {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&p| ag[x * n + p] == ah[y * n + map[p]]);
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if extend(i + 1, order, anchor, g, h, ag, ah, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }

    extend(0, &order, &anchor, g, h, &ag, &ah, &mut map, &mut used)
}
