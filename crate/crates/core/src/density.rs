//! Average degree, maximum average degree (exact, via parametric min cut),
//! a brute-force oracle, and the planar girth/mad inequality.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Girth, Graph};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph on {0} vertices is too large for brute force (limit 22)")]
    TooLarge(usize),
}

pub const BRUTE_FORCE_LIMIT: usize = 22;

/// Exact mad value with an induced subgraph attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MadCertificate {
    pub value: Rational,
    pub witness: Vec<usize>,
}

impl MadCertificate {
    /// Recomputes `2 e / v` on the witness.
    pub fn witness_value(&self, g: &Graph) -> Rational {
        induced_average_degree(g, &self.witness)
    }
}

fn induced_average_degree(g: &Graph, vertices: &[usize]) -> Rational {
    let h = g.induced(vertices);
    Rational::new(2 * h.m() as i64, h.n() as i64)
}

pub fn average_degree(g: &Graph) -> Result<Rational, DensityError> {
    if g.n() == 0 {
        return Err(DensityError::EmptyGraph);
    }
    Ok(Rational::new(2 * g.m() as i64, g.n() as i64))
}

/// Dinic max flow on integer capacities.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i128>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i128, rc: i128) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(rc);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, f: i128, level: &[usize], it: &mut [usize]) -> i128 {
        if u == t {
            return f;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let d = self.augment(v, t, f.min(self.cap[e]), level, it);
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return flow;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.augment(s, t, i128::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Vertices reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l != usize::MAX).collect()
    }
}

/// Maximises `e(S) - (p/q)|S|` over vertex sets `S` using Goldberg's
/// network. Returns the optimal (possibly empty) set and the optimum scaled
/// by `q`, i.e. `q e(S) - p |S|`.
fn densest_excess(g: &Graph, p: i128, q: i128) -> (Vec<usize>, i128) {
    let n = g.n();
    let m = g.m() as i128;
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        net.add_edge(s, v, m * q, 0);
        net.add_edge(v, t, m * q + 2 * p - g.degree(v) as i128 * q, 0);
    }
    for (u, v) in g.edges() {
        net.add_edge(u, v, q, q);
    }
    let cut = net.max_flow(s, t);
    // cut = q m n + 2 (p |S| - q e(S)) for the optimal source side S
    let excess = (q * m * n as i128 - cut) / 2;
    let side = net.source_side(s);
    let set: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    (set, excess)
}

fn as_pair(r: &Rational) -> (i128, i128) {
    r.to_i128_pair().expect("density fits in i128")
}

/// Exact maximum average degree with an induced witness.
///
/// Binary search over half-densities `e/v`; the loop stops once the bracket
/// is narrower than `1/(n(n-1))`, the minimum gap between two distinct
/// fractions with denominator at most `n`.
pub fn mad_exact(g: &Graph) -> Result<MadCertificate, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    let all: Vec<usize> = (0..n).collect();
    if g.m() == 0 || n == 1 {
        return Ok(MadCertificate {
            value: Rational::zero(),
            witness: all,
        });
    }
    let mut witness = all;
    let mut lo = Rational::new(g.m() as i64, n as i64);
    let mut hi = Rational::new(n as i64, 2);
    let gap = Rational::new(1, (n * (n - 1)) as i64);
    while &hi - &lo >= gap {
        let mid = Rational::new(1, 2) * (&lo + &hi);
        let (p, q) = as_pair(&mid);
        let (set, excess) = densest_excess(g, p, q);
        if excess > 0 && !set.is_empty() {
            let h = g.induced(&set);
            lo = Rational::new(h.m() as i64, h.n() as i64);
            witness = set;
        } else {
            hi = mid;
        }
    }
    Ok(MadCertificate {
        value: lo * Rational::from_int(2),
        witness,
    })
}

/// Whether `mad(g) >= bound`, decided with a single min cut.
pub fn mad_at_least(g: &Graph, bound: &Rational) -> bool {
    let n = g.n() as i128;
    if n == 0 {
        return false;
    }
    if bound.is_negative() || *bound == Rational::zero() {
        return true;
    }
    // e/s >= p/q  <=>  e/s > p/q - 1/(q (n+1)) for s <= n
    let half = Rational::new(1, 2) * bound.clone();
    let (p, q) = as_pair(&half);
    let (_, excess) = densest_excess(g, p * (n + 1) - 1, q * (n + 1));
    excess > 0
}

/// Enumerates every nonempty vertex subset.
pub fn mad_bruteforce(g: &Graph) -> Result<MadCertificate, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(DensityError::TooLarge(n));
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let (mut best_e, mut best_v, mut best_mask) = (0u64, 1u64, 1u32);
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones() as u64;
        let mut twice_e = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_e += (masks[v] & set).count_ones() as u64;
        }
        let e = twice_e / 2;
        if e * best_v > best_e * size {
            best_e = e;
            best_v = size;
            best_mask = set;
        }
    }
    Ok(MadCertificate {
        value: Rational::new(2 * best_e as i64, best_v as i64),
        witness: (0..n).filter(|&v| best_mask & (1 << v) != 0).collect(),
    })
}

/// Outcome of the planar girth/mad inequality `(mad - 2)(g - 2) < 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub holds: bool,
    /// Set when the girth is infinite and the limit reading `mad <= 2` was used.
    pub infinite_girth: bool,
}

pub fn euler_check(mad: &Rational, girth: Girth) -> EulerCheck {
    match girth {
        Girth::Finite(len) => {
            let lhs = (mad - &Rational::from_int(2)) * Rational::from(len.saturating_sub(2));
            EulerCheck {
                holds: lhs < Rational::from_int(4),
                infinite_girth: false,
            }
        }
        Girth::Infinite => EulerCheck {
            holds: *mad <= Rational::from_int(2),
            infinite_girth: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn average_degree_examples() {
        assert_eq!(average_degree(&path(3)).unwrap(), Rational::new(4, 3));
        assert_eq!(average_degree(&cycle(5)).unwrap(), Rational::from_int(2));
        assert_eq!(average_degree(&complete(4)).unwrap(), Rational::from_int(3));
        assert_eq!(average_degree(&Graph::empty(0)), Err(DensityError::EmptyGraph));
    }

    #[test]
    fn mad_examples() {
        let c5 = mad_exact(&cycle(5)).unwrap();
        assert_eq!(c5.value, Rational::from_int(2));
        assert_eq!(c5.witness, vec![0, 1, 2, 3, 4]);

        let mut edges = complete(4).edges();
        edges.push((3, 4));
        let k4p = Graph::new(5, &edges).unwrap();
        let cert = mad_exact(&k4p).unwrap();
        assert_eq!(cert.value, Rational::from_int(3));
        assert_eq!(cert.witness, vec![0, 1, 2, 3]);
        assert_eq!(mad_bruteforce(&k4p).unwrap().value, Rational::from_int(3));

        for n in 2..9 {
            let t = path(n);
            assert_eq!(mad_exact(&t).unwrap().value, Rational::new(2 * (n as i64 - 1), n as i64));
        }
        assert_eq!(mad_exact(&Graph::empty(0)), Err(DensityError::EmptyGraph));
        assert_eq!(mad_exact(&Graph::empty(3)).unwrap().value, Rational::zero());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(mad_bruteforce(&cycle(5)).unwrap().value, Rational::from_int(2));
        assert_eq!(mad_bruteforce(&path(2)).unwrap().value, Rational::from_int(1));
        assert_eq!(mad_bruteforce(&star(4)).unwrap().value, Rational::new(8, 5));
        assert_eq!(mad_bruteforce(&Graph::empty(23)), Err(DensityError::TooLarge(23)));
    }

    #[test]
    fn mad_threshold_decision() {
        let three = Rational::from_int(3);
        assert!(mad_at_least(&complete(4), &three));
        assert!(!mad_at_least(&cycle(6), &three));
        assert!(mad_at_least(&petersen(), &three));
        assert!(!mad_at_least(&petersen(), &Rational::new(301, 100)));
    }

    #[test]
    fn euler_examples() {
        let two = Rational::from_int(2);
        let three = Rational::from_int(3);
        assert!(euler_check(&two, Girth::Finite(6)).holds);
        assert!(euler_check(&three, Girth::Finite(3)).holds);
        assert!(!euler_check(&three, Girth::Finite(6)).holds);
        let forest = euler_check(&Rational::new(3, 2), Girth::Infinite);
        assert!(forest.holds && forest.infinite_girth);
    }
}
