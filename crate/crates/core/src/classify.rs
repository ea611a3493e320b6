//! Vertex taxonomy: weak, support (S1–S3), positive, negative (N1–N3),
//! locks, and the support graph with its per-component structure.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Degree bound for the endpoints of the links that make a vertex weak.
pub const WEAK_LINK_BOUND: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SupportType {
    S1,
    S2,
    S3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NegativeType {
    N1,
    N2,
    N3,
}

/// The ten vertices of a lock. `middles` are, in order, the degree-2
/// vertices on `v1-w1`, `v1-w2`, `v2-w1`, `v2-w2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lock {
    pub u: usize,
    pub x: usize,
    pub v1: usize,
    pub v2: usize,
    pub w1: usize,
    pub w2: usize,
    pub middles: [usize; 4],
}

impl Lock {
    pub fn vertices(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = [self.u, self.x, self.v1, self.v2, self.w1, self.w2]
            .into_iter()
            .collect();
        s.extend(self.middles);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub weak: Vec<bool>,
    pub support: Vec<Option<SupportType>>,
    pub positive: Vec<bool>,
    pub negative: Vec<Option<NegativeType>>,
    pub locked: Vec<bool>,
    pub locks: Vec<Lock>,
}

impl VertexClassification {
    pub fn is_support(&self, v: usize) -> bool {
        self.support[v].is_some()
    }

    pub fn is_negative(&self, v: usize) -> bool {
        self.negative[v].is_some()
    }
}

/// Serialisable view: vertex ids per flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub weak: Vec<usize>,
    pub support_s1: Vec<usize>,
    pub support_s2: Vec<usize>,
    pub support_s3: Vec<usize>,
    pub positive: Vec<usize>,
    pub negative_n1: Vec<usize>,
    pub negative_n2: Vec<usize>,
    pub negative_n3: Vec<usize>,
    pub locked: Vec<usize>,
    pub locks: Vec<Lock>,
}

impl From<&VertexClassification> for ClassificationReport {
    fn from(c: &VertexClassification) -> Self {
        let pick = |f: &dyn Fn(usize) -> bool| (0..c.weak.len()).filter(|&v| f(v)).collect();
        ClassificationReport {
            weak: pick(&|v| c.weak[v]),
            support_s1: pick(&|v| c.support[v] == Some(SupportType::S1)),
            support_s2: pick(&|v| c.support[v] == Some(SupportType::S2)),
            support_s3: pick(&|v| c.support[v] == Some(SupportType::S3)),
            positive: pick(&|v| c.positive[v]),
            negative_n1: pick(&|v| c.negative[v] == Some(NegativeType::N1)),
            negative_n2: pick(&|v| c.negative[v] == Some(NegativeType::N2)),
            negative_n3: pick(&|v| c.negative[v] == Some(NegativeType::N3)),
            locked: pick(&|v| c.locked[v]),
            locks: c.locks.clone(),
        }
    }
}

/// Degree 3 with at least two 1-links (distinct middles) to vertices of
/// degree at most 14. Two links to the same endpoint count twice.
pub fn is_weak(g: &Graph, x: usize) -> bool {
    g.degree(x) == 3
        && g
            .one_links(x)
            .iter()
            .filter(|l| g.degree(l.y) <= WEAK_LINK_BOUND)
            .count()
            >= 2
}

/// The S2 pattern at a degree-2 vertex `x` through its neighbor `a`:
/// `d(a) = 3` and `a` has two further neighbors, one of degree 2 and one
/// of degree at most 7. Returns `(b, c)` with `d(c) = 2`, `d(b) <= 7`,
/// preferring the smallest `c`.
pub fn s2_pattern(g: &Graph, x: usize, a: usize) -> Option<(usize, usize)> {
    if g.degree(x) != 2 || g.degree(a) != 3 || !g.has_edge(x, a) {
        return None;
    }
    let others: Vec<usize> = g.neighbors(a).iter().copied().filter(|&w| w != x).collect();
    let (p, q) = (others[0], others[1]);
    if g.degree(p) == 2 && g.degree(q) <= 7 {
        Some((q, p))
    } else if g.degree(q) == 2 && g.degree(p) <= 7 {
        Some((p, q))
    } else {
        None
    }
}

fn support_type(g: &Graph, weak: &[bool], x: usize) -> Option<SupportType> {
    match g.degree(x) {
        2 => {
            let nb = g.neighbors(x);
            if nb.iter().any(|&a| g.degree(a) == 2) {
                Some(SupportType::S1)
            } else if nb.iter().any(|&a| s2_pattern(g, x, a).is_some()) {
                Some(SupportType::S2)
            } else {
                None
            }
        }
        3 if weak[x] && g.one_links(x).iter().any(|l| weak[l.y]) => Some(SupportType::S3),
        _ => None,
    }
}

/// Finds all locks, with all ten vertices distinct, keyed canonically so a
/// lock seen from both locked ends is reported once.
pub fn find_locks(g: &Graph) -> Vec<Lock> {
    let mut found = BTreeSet::new();
    for u in 0..g.n() {
        let cands: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| g.degree(v) == 3).collect();
        for (i, &v1) in cands.iter().enumerate() {
            for &v2 in &cands[i + 1..] {
                if let Some(lock) = match_lock(g, u, v1, v2) {
                    found.insert(canonical_lock(lock));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// The two 1-links of a degree-3 vertex `v` that avoid `u`, as (middle, end).
fn side_links(g: &Graph, v: usize, u: usize) -> Option<[(usize, usize); 2]> {
    let mids: Vec<usize> = g.neighbors(v).iter().copied().filter(|&a| a != u).collect();
    if mids.len() != 2 || mids.iter().any(|&a| g.degree(a) != 2) {
        return None;
    }
    Some([
        (mids[0], g.other_neighbor(mids[0], v)),
        (mids[1], g.other_neighbor(mids[1], v)),
    ])
}

fn match_lock(g: &Graph, u: usize, v1: usize, v2: usize) -> Option<Lock> {
    let l1 = side_links(g, v1, u)?;
    let l2 = side_links(g, v2, u)?;
    let (w1, w2) = (l1[0].1, l1[1].1);
    if w1 == w2 {
        return None;
    }
    let (m11, m12) = (l1[0].0, l1[1].0);
    let (m21, m22) = if l2[0].1 == w1 && l2[1].1 == w2 {
        (l2[0].0, l2[1].0)
    } else if l2[0].1 == w2 && l2[1].1 == w1 {
        (l2[1].0, l2[0].0)
    } else {
        return None;
    };
    if g.degree(w1) != 3 || g.degree(w2) != 3 {
        return None;
    }
    let third = |w: usize, a: usize, b: usize| -> Option<usize> {
        let rest: Vec<usize> = g.neighbors(w).iter().copied().filter(|&z| z != a && z != b).collect();
        (rest.len() == 1).then(|| rest[0])
    };
    let x = third(w1, m11, m21)?;
    if third(w2, m12, m22)? != x {
        return None;
    }
    let lock = Lock {
        u,
        x,
        v1,
        v2,
        w1,
        w2,
        middles: [m11, m12, m21, m22],
    };
    (lock.vertices().len() == 10).then_some(lock)
}

/// Orients a lock so that `u < x`, `v1 < v2`, `w1 < w2`.
fn canonical_lock(l: Lock) -> Lock {
    let (u, x, v1, v2, w1, w2, [m11, m12, m21, m22]) =
        if l.u < l.x { (l.u, l.x, l.v1, l.v2, l.w1, l.w2, l.middles) } else {
            // swap the roles of the two sides
            let [m11, m12, m21, m22] = l.middles;
            (l.x, l.u, l.w1, l.w2, l.v1, l.v2, [m11, m21, m12, m22])
        };
    let (v1, v2, m11, m12, m21, m22) = if v1 < v2 {
        (v1, v2, m11, m12, m21, m22)
    } else {
        (v2, v1, m21, m22, m11, m12)
    };
    let (w1, w2, m11, m12, m21, m22) = if w1 < w2 {
        (w1, w2, m11, m12, m21, m22)
    } else {
        (w2, w1, m12, m11, m22, m21)
    };
    Lock { u, x, v1, v2, w1, w2, middles: [m11, m12, m21, m22] }
}

pub fn classify_vertices(g: &Graph) -> VertexClassification {
    let n = g.n();
    let weak: Vec<bool> = (0..n).map(|v| is_weak(g, v)).collect();
    let support: Vec<Option<SupportType>> = (0..n).map(|v| support_type(g, &weak, v)).collect();
    let positive: Vec<bool> = (0..n)
        .map(|v| g.degree(v) >= 4 && g.neighbors(v).iter().any(|&w| support[w].is_some()))
        .collect();
    let negative: Vec<Option<NegativeType>> = (0..n)
        .map(|v| match support[v] {
            Some(SupportType::S1) => Some(NegativeType::N1),
            Some(SupportType::S2) => Some(NegativeType::N2),
            _ if g.degree(v) == 2
                && g.neighbors(v).iter().all(|&w| support[w] == Some(SupportType::S3)) =>
            {
                Some(NegativeType::N3)
            }
            _ => None,
        })
        .collect();
    let locks = find_locks(g);
    let mut locked = vec![false; n];
    for l in &locks {
        locked[l.u] = true;
        locked[l.x] = true;
    }
    VertexClassification {
        weak,
        support,
        positive,
        negative,
        locked,
        locks,
    }
}

/// `H(G)`: same vertex ids, edges incident to at least one support vertex.
pub fn support_graph(g: &Graph, cls: &VertexClassification) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| cls.is_support(u) || cls.is_support(v))
        .collect();
    g.edge_subgraph(&edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleParity {
    pub cycle: Vec<usize>,
    pub supports: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub is_lock: bool,
    pub is_cactus: bool,
    pub cycles: Vec<CycleParity>,
    /// Negative vertices in the component.
    pub n: usize,
    /// Positive vertices in the component.
    pub p: usize,
}

/// Components of `H(G)` (vertices with at least one `H`-edge), each with
/// lock and cactus recognition, cycle support counts, and `n`, `p`.
pub fn analyze_components(h: &Graph, cls: &VertexClassification) -> Vec<ComponentReport> {
    let blocks = h.blocks();
    h.components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|vertices| {
            let members: BTreeSet<usize> = vertices.iter().copied().collect();
            let own: Vec<_> = blocks.iter().filter(|b| members.contains(&b.vertices[0])).collect();
            let is_cactus = own.iter().all(|b| b.edges.len() == 1 || b.is_cycle());
            let cycles = own
                .iter()
                .filter(|b| b.is_cycle())
                .map(|b| CycleParity {
                    cycle: b.vertices.clone(),
                    supports: b.vertices.iter().filter(|&&v| cls.is_support(v)).count(),
                })
                .collect();
            let is_lock = cls.locks.iter().any(|l| l.vertices() == members);
            ComponentReport {
                n: vertices.iter().filter(|&&v| cls.is_negative(v)).count(),
                p: vertices.iter().filter(|&&v| cls.positive[v]).count(),
                vertices,
                is_lock,
                is_cactus,
                cycles,
            }
        })
        .collect()
}
