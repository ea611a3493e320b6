//! Gadget constructors for the named patterns and random instance
//! generators.
//!
//! Gadgets realize prescribed degrees by hanging pendant leaves on a role
//! vertex, so most gadgets also contain C1 matches; tests that care force
//! the reduction they want.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorer::{Color, ListAssignment};
use crate::configurations::MIN_K;
use crate::density::{mad_at_least, mad_exact};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no instance found: {0}")]
    Unsatisfiable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    WeakVertex,
    S1,
    S2,
    S3,
    Lock,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    HubTree,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 17] = [
        GadgetKind::WeakVertex,
        GadgetKind::S1,
        GadgetKind::S2,
        GadgetKind::S3,
        GadgetKind::Lock,
        GadgetKind::C1,
        GadgetKind::C2,
        GadgetKind::C3,
        GadgetKind::C4,
        GadgetKind::C5,
        GadgetKind::C6,
        GadgetKind::C7,
        GadgetKind::C8,
        GadgetKind::C9,
        GadgetKind::C10,
        GadgetKind::C11,
        GadgetKind::HubTree,
    ];
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GadgetKind::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown gadget `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub graph: Graph,
    pub roles: BTreeMap<String, usize>,
}

impl Gadget {
    pub fn role(&self, name: &str) -> usize {
        self.roles[name]
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    roles: BTreeMap<String, usize>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn role(&mut self, name: &str) -> usize {
        let v = self.vertex();
        self.roles.insert(name.to_string(), v);
        v
    }

    fn roles(&mut self, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| self.role(n)).collect()
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn path(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Adds pendant leaves until `v` has degree `d`.
    fn pad(&mut self, v: usize, d: usize) {
        for _ in self.degree(v)..d {
            let leaf = self.vertex();
            self.edge(v, leaf);
        }
    }

    fn build(self) -> Gadget {
        Gadget {
            graph: Graph::new(self.n, &self.edges).expect("gadget edges are valid"),
            roles: self.roles,
        }
    }
}

/// Builds the gadget for `kind`; `k` is the degree given to the high-degree
/// roles (at least 17).
pub fn gen_gadget(kind: GadgetKind, k: usize) -> Result<Gadget, GenError> {
    if k < MIN_K {
        return Err(GenError::BadParams(format!("k = {k} < 17")));
    }
    let mut b = Builder::default();
    match kind {
        GadgetKind::WeakVertex => {
            let r = b.roles(&["x", "a1", "y1", "a2", "y2", "u"]);
            let (x, a1, y1, a2, y2, u) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            b.path(&[y1, a1, x, a2, y2]);
            b.edge(x, u);
            b.pad(y1, 5);
            b.pad(y2, 5);
            b.pad(u, 5);
        }
        GadgetKind::S1 => {
            let r = b.roles(&["u", "x", "a", "b"]);
            b.path(&r);
            b.pad(r[0], k);
            b.pad(r[3], k);
        }
        GadgetKind::S2 => {
            let r = b.roles(&["u", "x", "a", "c", "d", "b"]);
            let (u, x, a, c, d, bb) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            b.path(&[u, x, a, c, d]);
            b.edge(a, bb);
            b.pad(u, k);
            b.pad(d, k);
            b.pad(bb, 5);
        }
        GadgetKind::S3 => {
            let r = b.roles(&["u", "x", "a", "b", "c", "d", "e", "f", "g"]);
            let (u, x, a, bb, c, d, e, f, g) = (r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8]);
            b.edge(u, x);
            b.path(&[bb, a, x, c, d, e]);
            b.path(&[d, f, g]);
            b.pad(u, k);
            b.pad(e, k);
            b.pad(bb, 5);
            b.pad(g, 5);
        }
        GadgetKind::Lock => {
            let r = b.roles(&["u", "x", "v1", "v2", "w1", "w2", "m11", "m12", "m21", "m22"]);
            let (u, x, v1, v2, w1, w2) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            let (m11, m12, m21, m22) = (r[6], r[7], r[8], r[9]);
            b.edge(u, v1);
            b.edge(u, v2);
            b.path(&[v1, m11, w1]);
            b.path(&[v1, m12, w2]);
            b.path(&[v2, m21, w1]);
            b.path(&[v2, m22, w2]);
            b.edge(w1, x);
            b.edge(w2, x);
            b.pad(u, k);
            b.pad(x, k);
        }
        GadgetKind::C1 => {
            let r = b.roles(&["u", "v"]);
            b.edge(r[0], r[1]);
            b.pad(r[1], k);
        }
        GadgetKind::C2 => {
            let r = b.roles(&["u", "v", "w", "x"]);
            let (u, v, w, x) = (r[0], r[1], r[2], r[3]);
            b.path(&[w, u, v, x]);
            b.pad(w, k);
            b.pad(x, k - 1);
        }
        GadgetKind::C3 => {
            let r = b.roles(&["u", "v", "w", "x", "y"]);
            let (u, v, w, x, y) = (r[0], r[1], r[2], r[3], r[4]);
            b.path(&[y, v, u, w]);
            b.edge(u, x);
            b.pad(y, k - 1);
            b.pad(w, (k - 1) / 2);
            b.pad(x, (k - 1) - (k - 1) / 2);
        }
        GadgetKind::C4 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "z"]);
            let (u, v, w, x, y, z) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            b.edge(u, v);
            b.edge(u, w);
            b.edge(u, x);
            b.edge(v, y);
            b.edge(v, z);
            let y2 = b.vertex();
            b.edge(y, y2);
            b.pad(y2, k);
            b.pad(z, 7);
            b.pad(w, (k - 1) / 2);
            b.pad(x, (k - 1) - (k - 1) / 2);
        }
        GadgetKind::C5 => {
            let r = b.roles(&["u", "v", "w", "x", "y1", "y2"]);
            let (u, v, w, x, y1, y2) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            b.path(&[y1, v, u, w, y2]);
            b.edge(u, x);
            b.pad(y1, 14);
            b.pad(y2, 14);
            b.pad(x, k - 1);
        }
        GadgetKind::C6 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "t"]);
            let (u, v, w, x, y, t) = (r[0], r[1], r[2], r[3], r[4], r[5]);
            b.path(&[t, v, u]);
            b.edge(u, w);
            b.edge(u, x);
            b.edge(u, y);
            b.pad(t, 14);
            b.pad(w, 7);
            b.pad(x, 3);
            b.pad(y, 3);
        }
        GadgetKind::C7 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "t1", "t2"]);
            let (u, v, w, x, y, t1, t2) = (r[0], r[1], r[2], r[3], r[4], r[5], r[6]);
            b.path(&[t1, v, u, w, t2]);
            b.edge(u, x);
            b.edge(u, y);
            b.pad(t1, 14);
            b.pad(t2, 14);
            b.pad(x, (k - 1) / 2);
            b.pad(y, (k - 1) - (k - 1) / 2);
        }
        GadgetKind::C8 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "z", "t"]);
            let (u, v, w, x, y, z, t) = (r[0], r[1], r[2], r[3], r[4], r[5], r[6]);
            b.path(&[t, v, u]);
            for o in [w, x, y, z] {
                b.edge(u, o);
            }
            b.pad(t, 7);
            b.pad(w, 7);
            b.pad(x, 3);
            b.pad(y, 3);
            let z2 = b.vertex();
            b.edge(z, z2);
            b.pad(z2, k);
        }
        GadgetKind::C9 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "z", "t", "s"]);
            let (u, v, w, x, y, z, t, s) = (r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7]);
            b.path(&[s, v, u]);
            for o in [w, x, y, z, t] {
                b.edge(u, o);
            }
            b.pad(s, 7);
            b.pad(w, 7);
            b.pad(x, 3);
            b.pad(y, 3);
            for o in [z, t] {
                let o2 = b.vertex();
                b.edge(o, o2);
                b.pad(o2, k);
            }
        }
        GadgetKind::C10 => {
            let u = b.role("u");
            let v = b.role("v");
            b.edge(u, v);
            b.pad(v, 7);
            for i in 1..=6 {
                let w = b.role(&format!("w{i}"));
                let t = b.role(&format!("t{i}"));
                b.path(&[u, w, t]);
                b.pad(t, 3);
            }
        }
        GadgetKind::C11 => {
            let r = b.roles(&["u", "v", "w", "x", "y", "z1", "z2", "z3", "z4", "y1", "y2", "a", "b"]);
            let (u, v, w, x, y) = (r[0], r[1], r[2], r[3], r[4]);
            let (z1, z2, z3, z4, y1, y2, a, bb) = (r[5], r[6], r[7], r[8], r[9], r[10], r[11], r[12]);
            b.edge(u, v);
            b.edge(u, w);
            b.path(&[y1, z1, v, z2, y]);
            b.path(&[y2, z4, w, z3, y]);
            b.path(&[u, x, a, bb]);
            b.pad(y, 3);
            b.pad(y1, 14);
            b.pad(y2, 14);
            b.pad(bb, k);
            b.pad(u, k);
        }
        GadgetKind::HubTree => {
            let hub = b.role("hub");
            for _ in 0..k {
                let a = b.vertex();
                let c = b.vertex();
                b.path(&[hub, a, c]);
            }
        }
    }
    Ok(b.build())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub delta: usize,
    pub seed: u64,
    pub mad_bound: Rational,
}

impl GenSpec {
    pub fn new(n: usize, delta: usize, seed: u64) -> Self {
        GenSpec { n, delta, seed, mad_bound: Rational::from_int(3) }
    }
}

/// Random graph with maximum degree exactly `delta` and `mad < mad_bound`.
///
/// Starts from a random tree around a hub of degree `delta` and adds random
/// edges, keeping each one only if the density bound still holds. The result
/// is certified by an exact mad computation.
pub fn gen_sparse(spec: &GenSpec) -> Result<Graph, GenError> {
    let (n, delta) = (spec.n, spec.delta);
    if delta < MIN_K {
        return Err(GenError::BadParams(format!("delta = {delta} < 17")));
    }
    if spec.mad_bound <= Rational::from_int(2) {
        return Err(GenError::BadParams("mad bound must exceed 2".into()));
    }
    if n < delta + 1 {
        return Err(GenError::Unsatisfiable(format!("n = {n} < delta + 1 = {}", delta + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut deg = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..=delta {
        edges.push((0, v));
    }
    deg[0] = delta;
    deg[1..=delta].fill(1);
    for v in delta + 1..n {
        let p = loop {
            let p = rng.gen_range(1..v);
            if deg[p] < delta {
                break p;
            }
        };
        edges.push((p, v));
        deg[p] += 1;
        deg[v] += 1;
    }
    let mut g = Graph::new(n, &edges).expect("tree edges");
    let target = rng.gen_range(n / 4..=n / 2);
    let mut added = 0;
    let mut misses = 0;
    while added < target && misses < 4 * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || g.has_edge(a, b) || deg[a] >= delta || deg[b] >= delta {
            misses += 1;
            continue;
        }
        edges.push((a, b));
        let candidate = Graph::new(n, &edges).expect("valid edge");
        if mad_at_least(&candidate, &spec.mad_bound) {
            edges.pop();
            misses += 1;
        } else {
            g = candidate;
            deg[a] += 1;
            deg[b] += 1;
            added += 1;
        }
    }
    let cert = mad_exact(&g).map_err(|e| GenError::Unsatisfiable(e.to_string()))?;
    if cert.value >= spec.mad_bound || g.max_degree() != delta {
        return Err(GenError::Unsatisfiable("certificate check failed".into()));
    }
    Ok(g)
}

/// Lists of `size` distinct colors drawn uniformly from `0..universe`.
pub fn random_lists(seed: u64, n: usize, size: usize, universe: usize) -> Result<ListAssignment, GenError> {
    if size > universe {
        return Err(GenError::BadParams(format!("list size {size} exceeds universe {universe}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Color> = (0..universe as Color).collect();
    Ok(ListAssignment((0..n).map(|_| all.choose_multiple(&mut rng, size).copied().collect()).collect()))
}

/// Random graph with `n` vertices, about `m` edges, and degrees at most `cap`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize, cap: usize) -> Graph {
    let mut deg = vec![0usize; n];
    let mut edges = std::collections::BTreeSet::new();
    if n >= 2 {
        for _ in 0..4 * m {
            if edges.len() >= m {
                break;
            }
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b || deg[a] >= cap || deg[b] >= cap || !edges.insert((a.min(b), a.max(b))) {
                continue;
            }
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    Graph::new(n, &edges.into_iter().collect::<Vec<_>>()).expect("valid edges")
}

/// Hubs joined by paths of random length 1 to 3, plus random pendant paths.
/// Produces many degree-2 and degree-3 vertices next to high-degree ones.
pub fn random_subdivided_hubs<R: Rng>(rng: &mut R, hubs: usize, max_degree: usize) -> Graph {
    let mut b = Builder::default();
    let hs: Vec<usize> = (0..hubs).map(|_| b.vertex()).collect();
    let mut deg = vec![0usize; hubs];
    let joins = rng.gen_range(hubs..=3 * hubs);
    for _ in 0..joins {
        let i = rng.gen_range(0..hubs);
        let j = rng.gen_range(0..hubs);
        if deg[i] >= max_degree || deg[j] >= max_degree || (i == j && deg[i] + 2 > max_degree) {
            continue;
        }
        let len = rng.gen_range(1..=3);
        if i == j && len < 2 {
            continue;
        }
        let mut prev = hs[i];
        for _ in 1..len {
            let mid = b.vertex();
            b.edge(prev, mid);
            prev = mid;
        }
        if prev == hs[j] || (len == 1 && b.edges.contains(&(hs[i], hs[j]))) {
            continue;
        }
        b.edge(prev, hs[j]);
        deg[i] += 1;
        deg[j] += 1;
    }
    for (i, &h) in hs.iter().enumerate() {
        let extra = rng.gen_range(0..=max_degree.saturating_sub(deg[i]));
        for _ in 0..extra {
            let len = rng.gen_range(1..=2);
            let mut prev = h;
            for _ in 0..len {
                let w = b.vertex();
                b.edge(prev, w);
                prev = w;
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = b.edges.iter().map(|&(a, c)| (a.min(c), a.max(c))).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::new(b.n, &edges).expect("valid edges")
}

/// Disjoint union of graphs.
pub fn disjoint_union(parts: &[&Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().into_iter().map(|(a, b)| (a + offset, b + offset)));
        offset += g.n();
    }
    Graph::new(offset, &edges).expect("valid edges")
}

/// One graph of a mixed random corpus: sparse random graphs, subdivided
/// hub graphs, and gadget unions with a few random extra edges. Degrees
/// stay at most `max_degree`.
pub fn corpus_graph(seed: u64, max_degree: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 4 {
        0 => {
            let n = rng.gen_range(2..40);
            let m = rng.gen_range(0..=3 * n / 2 + 2);
            random_graph(&mut rng, n, m, max_degree)
        }
        1 => {
            let n = rng.gen_range(4..20);
            let m = rng.gen_range(n..=3 * n);
            random_graph(&mut rng, n, m, max_degree)
        }
        2 => {
            let hubs = rng.gen_range(1..6);
            random_subdivided_hubs(&mut rng, hubs, max_degree)
        }
        _ => {
            let k = max_degree.max(MIN_K);
            let picks: Vec<Gadget> = (0..rng.gen_range(1..3))
                .map(|_| {
                    let kind = *GadgetKind::ALL.choose(&mut rng).expect("nonempty");
                    gen_gadget(kind, k).expect("k >= 17")
                })
                .collect();
            let union = disjoint_union(&picks.iter().map(|g| &g.graph).collect::<Vec<_>>());
            let mut edges = union.edges();
            let mut deg = union.degrees();
            let n = union.n();
            for _ in 0..rng.gen_range(0..4) {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != b && deg[a] < max_degree && deg[b] < max_degree && !union.has_edge(a, b) {
                    edges.push((a, b));
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
            let g = Graph::new(n, &edges).expect("valid edges");
            if g.max_degree() > max_degree {
                random_graph(&mut rng, 10, 12, max_degree)
            } else {
                g
            }
        }
    }
}

/// A connected graph whose support graph has one component built as a
/// tree of support units hanging off hubs of degree `k`: S1 chains, S2
/// patterns, and cycles through a hub carrying an odd number of S3
/// supports. Every support vertex is adjacent to exactly one hub.
pub fn gen_support_cactus(seed: u64, k: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::default();
    let first = b.vertex();
    let mut hubs = vec![first];
    let units = rng.gen_range(1..=4);
    for _ in 0..units {
        let h = *hubs.choose(&mut rng).expect("nonempty");
        if b.degree(h) + 3 > k {
            continue;
        }
        match rng.gen_range(0..3) {
            0 => {
                // h - x - a - h2
                let (x, a, h2) = (b.vertex(), b.vertex(), b.vertex());
                b.path(&[h, x, a, h2]);
                hubs.push(h2);
            }
            1 => {
                // h - x - a - c - h2, a - bb
                let (x, a, c, h2, bb) = (b.vertex(), b.vertex(), b.vertex(), b.vertex(), b.vertex());
                b.path(&[h, x, a, c, h2]);
                b.edge(a, bb);
                b.pad(bb, 3);
                hubs.push(h2);
            }
            _ => {
                // h - x1 - v1 - x2 - ... - x_{2r+1} - h, interior x_i on their own hubs
                let r = rng.gen_range(1..=2);
                let xs: Vec<usize> = (0..2 * r + 1).map(|_| b.vertex()).collect();
                b.edge(h, xs[0]);
                for w in xs.windows(2) {
                    let v = b.vertex();
                    b.path(&[w[0], v, w[1]]);
                }
                b.edge(*xs.last().expect("nonempty"), h);
                for &x in [xs[0], *xs.last().expect("nonempty")].iter() {
                    let (a, y) = (b.vertex(), b.vertex());
                    b.path(&[x, a, y]);
                    b.pad(y, 5);
                }
                for &x in &xs[1..xs.len() - 1] {
                    let h2 = b.vertex();
                    b.edge(x, h2);
                    hubs.push(h2);
                }
            }
        }
    }
    for &h in &hubs {
        b.pad(h, k);
    }
    b.build().graph
}
