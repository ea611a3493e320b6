//! Simple undirected graphs with sorted adjacency lists, plus the
//! distance-2, link and block primitives used throughout the crate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge-list parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Girth of a graph; forests have no cycle at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

/// A path `x - inner.. - y` whose inner vertices all have degree 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link {
    pub x: usize,
    pub inner: Vec<usize>,
    pub y: usize,
}

impl Link {
    pub fn middle(&self) -> usize {
        self.inner[0]
    }
}

/// A biconnected component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True when the block is a single cycle (every vertex has degree 2 in it).
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

impl Graph {
    /// Builds a graph, silently dropping duplicate edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut sets = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// All `u != v` with `dist(u, v) <= 2`.
    pub fn dist2_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &a in &self.adj[v] {
            out.insert(a);
            out.extend(self.adj[a].iter().copied());
        }
        out.remove(&v);
        out
    }

    /// Vertices sharing at least one common neighbor with `v`.
    pub fn common_neighbor_set(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &a in &self.adj[v] {
            out.extend(self.adj[a].iter().copied());
        }
        out.remove(&v);
        out
    }

    /// The square: `u ~ v` iff they are at distance 1 or 2.
    pub fn square(&self) -> Graph {
        Graph {
            adj: (0..self.n())
                .map(|v| self.dist2_neighborhood(v).into_iter().collect())
                .collect(),
        }
    }

    /// The conflict graph of a coloring mode: the square for 2-distance
    /// coloring, the "common neighbor" graph for injective coloring.
    pub fn common_neighbor_graph(&self) -> Graph {
        Graph {
            adj: (0..self.n())
                .map(|v| self.common_neighbor_set(v).into_iter().collect())
                .collect(),
        }
    }

    /// Exact girth by BFS from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// All 1-links `x - a - y` with `d(a) = 2`, one per middle vertex `a`,
    /// ordered by middle vertex id.
    pub fn one_links(&self, x: usize) -> Vec<Link> {
        self.adj[x]
            .iter()
            .filter(|&&a| self.degree(a) == 2)
            .map(|&a| {
                let y = self.other_neighbor(a, x);
                Link { x, inner: vec![a], y }
            })
            .collect()
    }

    /// For a degree-2 vertex `a` adjacent to `x`, the neighbor that is not `x`.
    pub fn other_neighbor(&self, a: usize, x: usize) -> usize {
        debug_assert_eq!(self.degree(a), 2);
        let nb = &self.adj[a];
        if nb[0] == x {
            nb[1]
        } else {
            nb[0]
        }
    }

    /// Whether the graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        Graph {
            adj: vertices
                .iter()
                .map(|&v| {
                    let mut nb: Vec<usize> = self.adj[v]
                        .iter()
                        .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                        .collect();
                    nb.sort_unstable();
                    nb
                })
                .collect(),
        }
    }

    /// Same vertex set, only the given edges kept.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        Graph::new(self.n(), edges).expect("edges taken from a valid graph")
    }

    pub fn without_vertices(&self, removed: &BTreeSet<usize>) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|(u, v)| !removed.contains(u) && !removed.contains(v))
            .collect();
        Graph::new(self.n(), &edges).expect("subset of valid edges")
    }

    /// Biconnected components (Hopcroft–Tarjan, iterative). Every edge lies
    /// in exactly one block; isolated vertices belong to no block.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX || self.adj[root].is_empty() {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, parent, next neighbor index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let w = self.adj[u][*idx];
                    *idx += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push((u, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, u, 0));
                    } else if disc[w] < disc[u] {
                        edge_stack.push((u, w));
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] >= disc[parent] {
                            let mut edges = Vec::new();
                            let mut verts = BTreeSet::new();
                            while let Some(e) = edge_stack.pop() {
                                let (a, b) = e;
                                edges.push((a.min(b), a.max(b)));
                                verts.insert(a);
                                verts.insert(b);
                                if e == (parent, u) {
                                    break;
                                }
                            }
                            edges.sort_unstable();
                            out.push(Block {
                                vertices: verts.into_iter().collect(),
                                edges,
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// 2-connected in the usual sense: at least 3 vertices, connected, and
    /// no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.n() < 3 || !self.is_connected() {
            return false;
        }
        let blocks = self.blocks();
        blocks.len() == 1 && blocks[0].len() == self.n()
    }

    pub fn is_clique(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|nb| nb.len() == 2) && self.is_connected()
    }

    /// Parses the `p <n> <m>` / `e <u> <v>` edge-list format.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut declared_m = 0usize;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| GraphError::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(&format!("bad integer `{s}`")));
            match fields[0] {
                "p" => {
                    if n.is_some() {
                        return Err(parse_err("duplicate header"));
                    }
                    if fields.len() != 3 {
                        return Err(parse_err("expected `p <n> <m>`"));
                    }
                    n = Some(num(fields[1])?);
                    declared_m = num(fields[2])?;
                }
                "e" => {
                    if n.is_none() {
                        return Err(parse_err("edge before header"));
                    }
                    if fields.len() != 3 {
                        return Err(parse_err("expected `e <u> <v>`"));
                    }
                    edges.push((num(fields[1])?, num(fields[2])?));
                }
                other => return Err(parse_err(&format!("unknown record `{other}`"))),
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `p` header".into(),
        })?;
        if edges.len() != declared_m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header declares {declared_m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    /// Canonical edge-list text (edges sorted, `u < v`).
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("p {} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }
}

/// Convenience constructors used by tests, gadgets and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    /// `K_{1,leaves}` with the hub at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    /// A `rows x cols` patch of the hexagonal (honeycomb) lattice, in
    /// brick-wall form.
    pub fn hex_patch(rows: usize, cols: usize) -> Graph {
        let w = 2 * cols + 2;
        let h = rows + 1;
        let id = |r: usize, c: usize| r * w + c;
        let mut edges = Vec::new();
        for r in 0..h {
            for c in 0..w {
                if c + 1 < w {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < h && (r + c) % 2 == 0 {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Graph::new(w * h, &edges).unwrap()
    }
}
