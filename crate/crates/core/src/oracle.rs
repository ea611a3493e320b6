//! Exhaustive reference solvers for small graphs.

use thiserror::Error;

use crate::colorer::{Color, Coloring, ListAssignment, Mode};
use crate::graph::Graph;

pub const ORACLE_LIMIT: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph on {0} vertices exceeds the oracle limit of 14")]
    TooLarge(usize),
    #[error("{lists} lists for {n} vertices")]
    ListCount { lists: usize, n: usize },
}

/// Conflict matrix built from an adjacency matrix: `a` and `b` conflict if
/// some `w` is adjacent to both, or (2-distance) if they are adjacent.
fn conflict_matrix(g: &Graph, mode: Mode) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut conf = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let direct = mode == Mode::TwoDistance && adj[a][b];
            let via = (0..n).any(|w| adj[a][w] && adj[w][b]);
            conf[a][b] = direct || via;
        }
    }
    conf
}

/// Chromatic number of the square of `g`.
pub fn chi2_exact(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(OracleError::TooLarge(n));
    }
    if n == 0 {
        return Ok(0);
    }
    let conf = conflict_matrix(g, Mode::TwoDistance);
    let lower = g.max_degree() + 1;
    (lower..=n)
        .find(|&k| colorable(&conf, k))
        .ok_or(OracleError::TooLarge(n))
}

/// DSATUR-ordered search for a proper `k`-coloring of the conflict graph.
fn colorable(conf: &[Vec<bool>], k: usize) -> bool {
    fn go(conf: &[Vec<bool>], k: usize, colors: &mut [Option<usize>], used: usize) -> bool {
        let n = conf.len();
        let pick = (0..n).filter(|&v| colors[v].is_none()).max_by_key(|&v| {
            let mut seen = vec![false; k];
            for w in 0..n {
                if conf[v][w] {
                    if let Some(c) = colors[w] {
                        seen[c] = true;
                    }
                }
            }
            (seen.iter().filter(|&&s| s).count(), conf[v].iter().filter(|&&c| c).count())
        });
        let Some(v) = pick else { return true };
        // colors above `used` are interchangeable, so only try one of them
        for c in 0..k.min(used + 1) {
            if (0..n).all(|w| !conf[v][w] || colors[w] != Some(c)) {
                colors[v] = Some(c);
                if go(conf, k, colors, used.max(c + 1)) {
                    return true;
                }
                colors[v] = None;
            }
        }
        false
    }
    go(conf, k, &mut vec![None; conf.len()], 0)
}

/// A mode-valid coloring from the lists, if one exists.
pub fn list_color_exact(g: &Graph, la: &ListAssignment, mode: Mode) -> Result<Option<Coloring>, OracleError> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(OracleError::TooLarge(n));
    }
    if la.len() != n {
        return Err(OracleError::ListCount { lists: la.len(), n });
    }
    let conf = conflict_matrix(g, mode);
    fn go(conf: &[Vec<bool>], la: &ListAssignment, v: usize, out: &mut Vec<Color>) -> bool {
        if v == conf.len() {
            return true;
        }
        for &c in la.list(v) {
            if (0..v).all(|w| !conf[v][w] || out[w] != c) {
                out.push(c);
                if go(conf, la, v + 1, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let mut out = Vec::with_capacity(n);
    Ok(go(&conf, la, 0, &mut out).then_some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn chi2_examples() {
        assert_eq!(chi2_exact(&cycle(5)).unwrap(), 5);
        assert_eq!(chi2_exact(&star(3)).unwrap(), 4);
        assert_eq!(chi2_exact(&path(3)).unwrap(), 3);
        assert_eq!(chi2_exact(&cycle(6)).unwrap(), 3);
        assert_eq!(chi2_exact(&petersen()).unwrap(), 10);
        assert_eq!(chi2_exact(&Graph::empty(15)), Err(OracleError::TooLarge(15)));
    }

    #[test]
    fn list_examples() {
        let c5 = cycle(5);
        let five = ListAssignment::uniform(5, 1..=5);
        let c = list_color_exact(&c5, &five, Mode::TwoDistance).unwrap().unwrap();
        let mut sorted = c.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3, 4, 5]);
        let four = ListAssignment::uniform(5, 1..=4);
        assert_eq!(list_color_exact(&c5, &four, Mode::TwoDistance).unwrap(), None);
        let k2 = ListAssignment(vec![vec![1], vec![1]]);
        assert_eq!(list_color_exact(&path(2), &k2, Mode::Injective).unwrap(), Some(vec![1, 1]));
    }
}
