//! Detection of the reducible configurations C1–C11 and of the structural
//! reducible blocks of the support graph.
//!
//! Every configuration is anchored at a vertex `u`. Core roles have exactly
//! the stated degree and are pairwise distinct; other roles may coincide
//! with anything the adjacency allows.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_vertices, support_graph, SupportType, VertexClassification};
use crate::graph::Graph;

pub const MIN_K: usize = 17;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("k = {k} is invalid: need k >= 17 and k >= max degree {max_degree}")]
    BadK { k: usize, max_degree: usize },
}

/// Degree budget `k`: at least 17 and at least the maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KParameter(usize);

impl KParameter {
    pub fn new(k: usize) -> Result<Self, ConfigError> {
        if k < MIN_K {
            return Err(ConfigError::BadK { k, max_degree: 0 });
        }
        Ok(KParameter(k))
    }

    /// Validates `k` against a graph; `None` picks `max(17, Δ)`.
    pub fn for_graph(g: &Graph, k: Option<usize>) -> Result<Self, ConfigError> {
        let delta = g.max_degree();
        let k = k.unwrap_or(delta.max(MIN_K));
        if k < MIN_K || k < delta {
            return Err(ConfigError::BadK { k, max_degree: delta });
        }
        Ok(KParameter(k))
    }

    pub fn get(self) -> usize {
        self.0
    }

    fn check(self, g: &Graph) -> Result<(), ConfigError> {
        let delta = g.max_degree();
        if self.0 < delta {
            return Err(ConfigError::BadK { k: self.0, max_degree: delta });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigKind {
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
    Structural,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 12] = [
        ConfigKind::C1,
        ConfigKind::C2,
        ConfigKind::C3,
        ConfigKind::C4,
        ConfigKind::C5,
        ConfigKind::C6,
        ConfigKind::C7,
        ConfigKind::C8,
        ConfigKind::C9,
        ConfigKind::C10,
        ConfigKind::C11,
        ConfigKind::Structural,
    ];

    /// Role names in binding order.
    pub fn role_names(self) -> &'static [&'static str] {
        use ConfigKind::*;
        match self {
            C1 => &["u"],
            C2 => &["u", "v", "w", "x"],
            C3 => &["u", "v", "w", "x", "y"],
            C4 => &["u", "v", "w", "x", "y", "z"],
            C5 => &["u", "v", "w", "x", "y1", "y2"],
            C6 => &["u", "v", "w", "x", "y", "t"],
            C7 => &["u", "v", "w", "x", "y", "t1", "t2"],
            C8 => &["u", "v", "w", "x", "y", "z", "t"],
            C9 => &["u", "v", "w", "x", "y", "z", "t", "s"],
            C10 => &[
                "u", "v", "w1", "w2", "w3", "w4", "w5", "w6", "t1", "t2", "t3", "t4", "t5", "t6",
            ],
            C11 => &["u", "v", "w", "x", "y", "z1", "z2", "z3", "z4", "y1", "y2"],
            Structural => &[],
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown configuration kind `{s}`"))
    }
}

/// How a structural block is reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StructuralReduction {
    /// A 2-connected piece of the block carrying exactly two supports.
    TwoSupports,
    /// All supports of the block, colored by degree-choosability.
    Brooks,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StructuralDetail {
    pub block: Vec<usize>,
    pub block_edges: Vec<(usize, usize)>,
    /// The support set `S` used by the reduction.
    pub supports: Vec<usize>,
    pub reduction: StructuralReduction,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConfigurationMatch {
    pub kind: ConfigKind,
    pub roles: Vec<(String, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub structural: Option<StructuralDetail>,
}

impl ConfigurationMatch {
    fn from_ids(kind: ConfigKind, ids: &[usize]) -> Self {
        let names = kind.role_names();
        debug_assert_eq!(names.len(), ids.len());
        ConfigurationMatch {
            kind,
            roles: names.iter().zip(ids).map(|(n, &v)| (n.to_string(), v)).collect(),
            structural: None,
        }
    }

    pub fn role(&self, name: &str) -> usize {
        self.roles
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("{} match has no role `{name}`", self.kind))
    }

    pub fn ids(&self) -> Vec<usize> {
        self.roles.iter().map(|&(_, v)| v).collect()
    }

    /// The same match with every vertex id passed through `map`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        ConfigurationMatch {
            kind: self.kind,
            roles: self.roles.iter().map(|(n, v)| (n.clone(), map[*v])).collect(),
            structural: self.structural.as_ref().map(|s| StructuralDetail {
                block: s.block.iter().map(|&v| map[v]).collect(),
                block_edges: s.block_edges.iter().map(|&(a, b)| (map[a], map[b])).collect(),
                supports: s.supports.iter().map(|&v| map[v]).collect(),
                reduction: s.reduction,
            }),
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The far end of the 1-link from `u` through `a`, if `a` has degree 2.
fn link_end(g: &Graph, u: usize, a: usize) -> Option<usize> {
    (g.degree(a) == 2).then(|| g.other_neighbor(a, u))
}

/// Matches anchored at `u` for the kinds whose roles are read off an
/// ordering of `N(u)` (C2–C9). `p` is an ordering of the neighbors.
fn neighbor_pattern(g: &Graph, k: usize, kind: ConfigKind, u: usize, p: &[usize]) -> Option<Vec<usize>> {
    let d = |v: usize| g.degree(v);
    use ConfigKind::*;
    match kind {
        C2 => {
            let (v, w) = (p[0], p[1]);
            let x = link_end(g, u, v)?;
            (d(x) < k).then(|| vec![u, v, w, x])
        }
        C3 => {
            let (v, w, x) = (p[0], p[1], p[2]);
            let y = link_end(g, u, v)?;
            (w < x && d(y) < k && d(w) + d(x) < k).then(|| vec![u, v, w, x, y])
        }
        C5 => {
            let (v, w, x) = (p[0], p[1], p[2]);
            let y1 = link_end(g, u, v)?;
            let y2 = link_end(g, u, w)?;
            (v < w && d(x) < k && d(y1) <= 14 && d(y2) <= 14).then(|| vec![u, v, w, x, y1, y2])
        }
        C6 => {
            let (v, w, x, y) = (p[0], p[1], p[2], p[3]);
            let t = link_end(g, u, v)?;
            (x < y && d(w) <= 7 && d(x) <= 3 && d(y) <= 3 && d(t) <= 14).then(|| vec![u, v, w, x, y, t])
        }
        C7 => {
            let (v, w, x, y) = (p[0], p[1], p[2], p[3]);
            let t1 = link_end(g, u, v)?;
            let t2 = link_end(g, u, w)?;
            (v < w && x < y && d(x) + d(y) < k && d(t1) <= 14 && d(t2) <= 14)
                .then(|| vec![u, v, w, x, y, t1, t2])
        }
        C8 => {
            let (v, w, x, y, z) = (p[0], p[1], p[2], p[3], p[4]);
            let t = link_end(g, u, v)?;
            (x < y && d(w) <= 7 && d(x) <= 3 && d(y) <= 3 && d(z) == 2 && d(t) <= 7)
                .then(|| vec![u, v, w, x, y, z, t])
        }
        C9 => {
            let (v, w, x, y, z, t) = (p[0], p[1], p[2], p[3], p[4], p[5]);
            let s = link_end(g, u, v)?;
            (x < y && z < t && d(w) <= 7 && d(x) <= 3 && d(y) <= 3 && d(z) == 2 && d(t) == 2 && d(s) <= 7)
                .then(|| vec![u, v, w, x, y, z, t, s])
        }
        _ => None,
    }
}

fn anchor_degree(kind: ConfigKind) -> Option<usize> {
    use ConfigKind::*;
    match kind {
        C2 => Some(2),
        C3 | C4 | C5 => Some(3),
        C6 | C7 => Some(4),
        C8 => Some(5),
        C9 => Some(6),
        _ => None,
    }
}

fn detect_neighbor_kind(g: &Graph, k: usize, kind: ConfigKind) -> Vec<Vec<usize>> {
    let deg = anchor_degree(kind).expect("neighbor-pattern kind");
    let mut out = Vec::new();
    for u in (0..g.n()).filter(|&u| g.degree(u) == deg) {
        for p in permutations(g.neighbors(u)) {
            if kind == ConfigKind::C4 {
                let (v, w, x) = (p[0], p[1], p[2]);
                if w > x || g.degree(w) + g.degree(x) >= k || g.degree(v) != 3 {
                    continue;
                }
                let rest: Vec<usize> = g.neighbors(v).iter().copied().filter(|&z| z != u).collect();
                for (y, z) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    if g.degree(y) == 2 && g.degree(z) <= 7 {
                        out.push(vec![u, v, w, x, y, z]);
                    }
                }
            } else if let Some(ids) = neighbor_pattern(g, k, kind, u, &p) {
                out.push(ids);
            }
        }
    }
    out
}

fn detect_c10(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for u in (0..g.n()).filter(|&u| g.degree(u) == 7) {
        let nb = g.neighbors(u);
        for &v in nb {
            if g.degree(v) > 7 {
                continue;
            }
            let ws: Vec<usize> = nb.iter().copied().filter(|&w| w != v).collect();
            let ends: Option<Vec<usize>> = ws
                .iter()
                .map(|&w| link_end(g, u, w).filter(|&t| g.degree(t) <= 3))
                .collect();
            if let Some(ends) = ends {
                let mut ids = vec![u, v];
                ids.extend(&ws);
                ids.extend(ends);
                out.push(ids);
            }
        }
    }
    out
}

/// The two 1-links of a degree-3 vertex `v` that avoid `u`, as (middle, end).
fn two_links_avoiding(g: &Graph, v: usize, u: usize) -> Option<[(usize, usize); 2]> {
    if g.degree(v) != 3 {
        return None;
    }
    let mids: Vec<usize> = g.neighbors(v).iter().copied().filter(|&a| a != u).collect();
    Some([
        (mids[0], link_end(g, v, mids[0])?),
        (mids[1], link_end(g, v, mids[1])?),
    ])
}

fn detect_c11(g: &Graph, k: usize, cls: &VertexClassification) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for u in (0..g.n()).filter(|&u| g.degree(u) == k) {
        let nb = g.neighbors(u);
        for &v in nb {
            let Some(lv) = two_links_avoiding(g, v, u) else { continue };
            for &w in nb {
                if w <= v {
                    continue;
                }
                let Some(lw) = two_links_avoiding(g, w, u) else { continue };
                // v: z1 -> y1, z2 -> y ; w: z4 -> y2, z3 -> y
                for (z2, y) in lv {
                    let (z1, y1) = if lv[0].0 == z2 { lv[1] } else { lv[0] };
                    for (z3, yy) in lw {
                        if yy != y {
                            continue;
                        }
                        let (z4, y2) = if lw[0].0 == z3 { lw[1] } else { lw[0] };
                        if g.degree(y) != 3 || y1 == y || y2 == y || g.degree(y1) > 14 || g.degree(y2) > 14 {
                            continue;
                        }
                        let core: BTreeSet<usize> = [v, w, y, z1, z2, z3, z4].into_iter().collect();
                        if core.len() != 7 || core.contains(&u) {
                            continue;
                        }
                        for &x in nb {
                            if x != v && x != w && cls.is_support(x) {
                                out.push(vec![u, v, w, x, y, z1, z2, z3, z4, y1, y2]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All matches of one kind, canonically ordered.
pub fn detect(g: &Graph, k: KParameter, kind: ConfigKind) -> Result<Vec<ConfigurationMatch>, ConfigError> {
    k.check(g)?;
    let kv = k.get();
    use ConfigKind::*;
    let mut ids: Vec<Vec<usize>> = match kind {
        C1 => (0..g.n()).filter(|&u| g.degree(u) <= 1).map(|u| vec![u]).collect(),
        C2 | C3 | C4 | C5 | C6 | C7 | C8 | C9 => detect_neighbor_kind(g, kv, kind),
        C10 => detect_c10(g),
        C11 => {
            if !(0..g.n()).any(|u| g.degree(u) == kv) {
                Vec::new()
            } else {
                let cls = classify_vertices(g);
                detect_c11(g, kv, &cls)
            }
        }
        Structural => {
            let cls = classify_vertices(g);
            let h = support_graph(g, &cls);
            return Ok(detect_structural(g, &cls, &h, k).into_iter().collect());
        }
    };
    ids.sort();
    ids.dedup();
    Ok(ids.iter().map(|r| ConfigurationMatch::from_ids(kind, r)).collect())
}

/// First match in priority order C1, C2, …, C11, Structural.
pub fn detect_any(g: &Graph, k: KParameter) -> Result<Option<ConfigurationMatch>, ConfigError> {
    for kind in ConfigKind::ALL {
        if let Some(m) = detect(g, k, kind)?.into_iter().next() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// A block of `H(G)` with at least three vertices that is neither a cycle
/// with an odd number of supports nor inside a lock.
pub fn detect_structural(
    g: &Graph,
    cls: &VertexClassification,
    h: &Graph,
    _k: KParameter,
) -> Option<ConfigurationMatch> {
    let lock_sets: Vec<BTreeSet<usize>> = cls.locks.iter().map(|l| l.vertices()).collect();
    for block in h.blocks() {
        if block.len() < 3 {
            continue;
        }
        let supports: Vec<usize> = block.vertices.iter().copied().filter(|&v| cls.is_support(v)).collect();
        if block.is_cycle() && supports.len() % 2 == 1 {
            continue;
        }
        if lock_sets.iter().any(|l| block.vertices.iter().all(|v| l.contains(v))) {
            continue;
        }
        let (set, reduction) = match two_support_piece(g.n(), &block.edges, &supports) {
            Some(pair) => (pair, StructuralReduction::TwoSupports),
            None => (supports.clone(), StructuralReduction::Brooks),
        };
        let roles = set.iter().enumerate().map(|(i, &s)| (format!("s{}", i + 1), s)).collect();
        return Some(ConfigurationMatch {
            kind: ConfigKind::Structural,
            roles,
            structural: Some(StructuralDetail {
                block: block.vertices.clone(),
                block_edges: block.edges.clone(),
                supports: set,
                reduction,
            }),
        });
    }
    None
}

/// Two supports lying on a common cycle that avoids every other support.
fn two_support_piece(n: usize, edges: &[(usize, usize)], supports: &[usize]) -> Option<Vec<usize>> {
    for (i, &s1) in supports.iter().enumerate() {
        for &s2 in &supports[i + 1..] {
            let kept: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|&(a, b)| {
                    let other = |v: usize| v != s1 && v != s2 && supports.contains(&v);
                    !other(a) && !other(b)
                })
                .collect();
            let sub = Graph::new(n, &kept).expect("block edges are valid");
            if sub
                .blocks()
                .iter()
                .any(|b| b.len() >= 3 && b.vertices.contains(&s1) && b.vertices.contains(&s2))
            {
                return Some(vec![s1, s2]);
            }
        }
    }
    None
}

/// Re-evaluates a match's predicates directly on the graph.
pub fn validate(g: &Graph, k: KParameter, m: &ConfigurationMatch) -> bool {
    let k = k.get();
    let r = |n: &str| m.role(n);
    let d = |v: usize| g.degree(v);
    let nbset = |v: usize| -> BTreeSet<usize> { g.neighbors(v).iter().copied().collect() };
    let set = |vs: &[usize]| -> BTreeSet<usize> { vs.iter().copied().collect() };
    let link = |a: usize, mid: usize, b: usize| d(mid) == 2 && g.has_edge(a, mid) && g.has_edge(mid, b) && a != b;
    let in_range = m.ids().iter().all(|&v| v < g.n());
    if !in_range {
        return false;
    }
    use ConfigKind::*;
    match m.kind {
        C1 => d(r("u")) <= 1,
        C2 => {
            let (u, v, w, x) = (r("u"), r("v"), r("w"), r("x"));
            nbset(u) == set(&[v, w]) && v != w && link(u, v, x) && d(x) < k
        }
        C3 => {
            let (u, v, w, x, y) = (r("u"), r("v"), r("w"), r("x"), r("y"));
            nbset(u) == set(&[v, w, x]) && set(&[v, w, x]).len() == 3 && d(w) + d(x) < k && link(u, v, y) && d(y) < k
        }
        C4 => {
            let (u, v, w, x, y, z) = (r("u"), r("v"), r("w"), r("x"), r("y"), r("z"));
            nbset(u) == set(&[v, w, x])
                && set(&[v, w, x]).len() == 3
                && d(w) + d(x) < k
                && nbset(v) == set(&[u, y, z])
                && set(&[u, y, z]).len() == 3
                && d(y) == 2
                && d(z) <= 7
        }
        C5 => {
            let (u, v, w, x, y1, y2) = (r("u"), r("v"), r("w"), r("x"), r("y1"), r("y2"));
            nbset(u) == set(&[v, w, x])
                && set(&[v, w, x]).len() == 3
                && d(x) < k
                && link(u, v, y1)
                && link(u, w, y2)
                && d(y1) <= 14
                && d(y2) <= 14
        }
        C6 => {
            let (u, v, w, x, y, t) = (r("u"), r("v"), r("w"), r("x"), r("y"), r("t"));
            nbset(u) == set(&[v, w, x, y])
                && set(&[v, w, x, y]).len() == 4
                && d(w) <= 7
                && d(x) <= 3
                && d(y) <= 3
                && link(u, v, t)
                && d(t) <= 14
        }
        C7 => {
            let (u, v, w, x, y) = (r("u"), r("v"), r("w"), r("x"), r("y"));
            let (t1, t2) = (r("t1"), r("t2"));
            nbset(u) == set(&[v, w, x, y])
                && set(&[v, w, x, y]).len() == 4
                && d(x) + d(y) < k
                && link(u, v, t1)
                && link(u, w, t2)
                && d(t1) <= 14
                && d(t2) <= 14
        }
        C8 => {
            let (u, v, w, x, y, z, t) = (r("u"), r("v"), r("w"), r("x"), r("y"), r("z"), r("t"));
            nbset(u) == set(&[v, w, x, y, z])
                && set(&[v, w, x, y, z]).len() == 5
                && d(w) <= 7
                && d(x) <= 3
                && d(y) <= 3
                && d(z) == 2
                && link(u, v, t)
                && d(t) <= 7
        }
        C9 => {
            let (u, v, w, x, y) = (r("u"), r("v"), r("w"), r("x"), r("y"));
            let (z, t, s) = (r("z"), r("t"), r("s"));
            nbset(u) == set(&[v, w, x, y, z, t])
                && set(&[v, w, x, y, z, t]).len() == 6
                && d(w) <= 7
                && d(x) <= 3
                && d(y) <= 3
                && d(z) == 2
                && d(t) == 2
                && link(u, v, s)
                && d(s) <= 7
        }
        C10 => {
            let (u, v) = (r("u"), r("v"));
            let ws: Vec<usize> = (1..=6).map(|i| r(&format!("w{i}"))).collect();
            let ts: Vec<usize> = (1..=6).map(|i| r(&format!("t{i}"))).collect();
            let mut all = ws.clone();
            all.push(v);
            nbset(u) == set(&all)
                && set(&all).len() == 7
                && d(v) <= 7
                && ws.iter().zip(&ts).all(|(&w, &t)| link(u, w, t) && d(t) <= 3)
        }
        C11 => {
            let (u, v, w, x, y) = (r("u"), r("v"), r("w"), r("x"), r("y"));
            let (z1, z2, z3, z4) = (r("z1"), r("z2"), r("z3"), r("z4"));
            let (y1, y2) = (r("y1"), r("y2"));
            let cls = classify_vertices(g);
            d(u) == k
                && set(&[v, w, x]).len() == 3
                && [v, w, x].iter().all(|&a| g.has_edge(u, a))
                && cls.is_support(x)
                && nbset(v) == set(&[u, z1, z2])
                && nbset(w) == set(&[u, z3, z4])
                && set(&[v, w, y, z1, z2, z3, z4]).len() == 7
                && link(v, z1, y1)
                && link(v, z2, y)
                && link(w, z3, y)
                && link(w, z4, y2)
                && d(y) == 3
                && y1 != y
                && y2 != y
                && d(y1) <= 14
                && d(y2) <= 14
        }
        Structural => {
            let Some(s) = &m.structural else { return false };
            let cls = classify_vertices(g);
            let h = support_graph(g, &cls);
            let block = Graph::new(g.n(), &s.block_edges).ok();
            let Some(block) = block else { return false };
            let sub = block.induced(&s.block);
            s.block.len() >= 3
                && s.block_edges.iter().all(|&(a, b)| h.has_edge(a, b))
                && sub.is_two_connected()
                && s.supports.iter().all(|&v| cls.is_support(v) && s.block.contains(&v))
                && !(sub.is_cycle() && s.block.iter().filter(|&&v| cls.is_support(v)).count() % 2 == 1)
        }
    }
}

/// Support type of `x` as seen from its high-degree neighbor `u`, with the vertex set `A` that is
/// removed together with `x` in the C11 reduction.
pub fn support_side_set(g: &Graph, cls: &VertexClassification, u: usize, x: usize) -> Option<(SupportType, Vec<usize>)> {
    let t = cls.support[x]?;
    let others: Vec<usize> = g.neighbors(x).iter().copied().filter(|&a| a != u).collect();
    match t {
        SupportType::S1 | SupportType::S2 => {
            let a = *others.first()?;
            if g.degree(a) == 2 {
                Some((SupportType::S1, vec![a]))
            } else {
                let (_, c) = crate::classify::s2_pattern(g, x, a)?;
                Some((SupportType::S2, vec![a, c]))
            }
        }
        SupportType::S3 => Some((SupportType::S3, others)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn k17() -> KParameter {
        KParameter::new(17).unwrap()
    }

    #[test]
    fn bad_k() {
        assert!(KParameter::new(16).is_err());
        let s = star(18);
        assert!(matches!(detect(&s, k17(), ConfigKind::C1), Err(ConfigError::BadK { .. })));
        assert!(KParameter::for_graph(&s, Some(17)).is_err());
        assert_eq!(KParameter::for_graph(&s, None).unwrap().get(), 18);
        assert_eq!(KParameter::for_graph(&path(3), None).unwrap().get(), 17);
    }

    #[test]
    fn c1_examples() {
        let one = Graph::empty(1);
        assert_eq!(detect(&one, k17(), ConfigKind::C1).unwrap().len(), 1);
        let k2 = path(2);
        let m = detect(&k2, k17(), ConfigKind::C1).unwrap();
        assert_eq!(m.iter().map(|m| m.role("u")).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn c2_on_c5() {
        let c5 = cycle(5);
        let m = detect(&c5, k17(), ConfigKind::C2).unwrap();
        // every vertex, both orientations
        assert_eq!(m.len(), 10);
        assert!(m.iter().all(|m| validate(&c5, k17(), m)));
        assert_eq!(m[0].ids(), vec![0, 1, 4, 2]);
    }

    #[test]
    fn detect_any_examples() {
        let s = star(17);
        let m = detect_any(&s, k17()).unwrap().unwrap();
        assert_eq!(m.kind, ConfigKind::C1);
        assert_eq!(m.role("u"), 1);
        assert_eq!(detect_any(&petersen(), k17()).unwrap(), None);
    }

    #[test]
    fn empty_support_graph_has_no_structural_match() {
        let g = petersen();
        let cls = classify_vertices(&g);
        let h = support_graph(&g, &cls);
        assert!(detect_structural(&g, &cls, &h, k17()).is_none());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ConfigKind::ALL {
            assert_eq!(k.to_string().parse::<ConfigKind>().unwrap(), k);
        }
    }
}
