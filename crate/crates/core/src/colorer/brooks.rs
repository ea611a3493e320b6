//! Degree-choosability: a 2-connected graph that is neither a clique nor an
//! odd cycle is colorable from any lists with `|L(v)| >= d(v)`.

use std::collections::VecDeque;

use thiserror::Error;

use super::Color;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrooksError {
    #[error("precondition violated: graph is a clique")]
    Clique,
    #[error("precondition violated: graph is an odd cycle")]
    OddCycle,
    #[error("precondition violated: graph is not 2-connected")]
    NotTwoConnected,
    #[error("precondition violated: list of vertex {vertex} has {len} colors, degree is {degree}")]
    ShortList { vertex: usize, len: usize, degree: usize },
    #[error("list count {lists} does not match vertex count {n}")]
    ListCount { lists: usize, n: usize },
}

pub fn brooks_list_color(s: &Graph, lists: &[Vec<Color>]) -> Result<Vec<Color>, BrooksError> {
    let n = s.n();
    if lists.len() != n {
        return Err(BrooksError::ListCount { lists: lists.len(), n });
    }
    if !s.is_two_connected() {
        return Err(BrooksError::NotTwoConnected);
    }
    if s.is_clique() {
        return Err(BrooksError::Clique);
    }
    if s.is_cycle() && n % 2 == 1 {
        return Err(BrooksError::OddCycle);
    }
    let lists: Vec<Vec<Color>> = lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    for (v, l) in lists.iter().enumerate() {
        if l.len() < s.degree(v) {
            return Err(BrooksError::ShortList { vertex: v, len: l.len(), degree: s.degree(v) });
        }
    }
    let coloring = constructive(s, &lists).filter(|c| is_proper(s, &lists, c));
    match coloring {
        Some(c) => Ok(c),
        None => Ok(backtrack(s, &lists).expect("degree-choosable graph has a list coloring")),
    }
}

fn constructive(s: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    let n = s.n();
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let all = vec![true; n];

    if let Some(root) = (0..n).find(|&v| lists[v].len() > s.degree(v)) {
        greedy_rooted(s, lists, &all, root, &mut colors)?;
        return colors.into_iter().collect();
    }

    for (u, v) in s.edges() {
        let (u, v) = if lists[u] != lists[v] {
            if lists[u].iter().any(|c| !lists[v].contains(c)) {
                (u, v)
            } else {
                (v, u)
            }
        } else {
            continue;
        };
        let c = *lists[u].iter().find(|c| !lists[v].contains(c))?;
        colors[u] = Some(c);
        let mut active = all.clone();
        active[u] = false;
        greedy_rooted(s, lists, &active, v, &mut colors)?;
        return colors.into_iter().collect();
    }

    // every list equals a common list of size r and the graph is r-regular
    let r = s.degree(0);
    if r == 2 {
        let cycle = cycle_order(s)?;
        for (i, &v) in cycle.iter().enumerate() {
            colors[v] = Some(lists[0][i % 2]);
        }
        return colors.into_iter().collect();
    }
    for v in 0..n {
        let nb = s.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if s.has_edge(a, b) {
                    continue;
                }
                let mut active = all.clone();
                active[a] = false;
                active[b] = false;
                if bfs_order(s, &active, v).len() != n - 2 {
                    continue;
                }
                let c = lists[a][0];
                colors[a] = Some(c);
                colors[b] = Some(c);
                greedy_rooted(s, lists, &active, v, &mut colors)?;
                return colors.into_iter().collect();
            }
        }
    }
    None
}

fn bfs_order(s: &Graph, active: &[bool], root: usize) -> Vec<usize> {
    let mut seen = vec![false; s.n()];
    seen[root] = true;
    let mut order = vec![root];
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for &w in s.neighbors(u) {
            if active[w] && !seen[w] {
                seen[w] = true;
                order.push(w);
                q.push_back(w);
            }
        }
    }
    order
}

fn cycle_order(s: &Graph) -> Option<Vec<usize>> {
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = *s.neighbors(cur).iter().find(|&&w| w != prev)?;
        if next == 0 {
            return Some(order);
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
}

/// Colors the active vertices in reverse BFS order from `root`, so every
/// vertex except the root still has an uncolored neighbor at its turn.
fn greedy_rooted(
    s: &Graph,
    lists: &[Vec<Color>],
    active: &[bool],
    root: usize,
    colors: &mut [Option<Color>],
) -> Option<()> {
    for &v in bfs_order(s, active, root).iter().rev() {
        let c = lists[v]
            .iter()
            .copied()
            .find(|c| s.neighbors(v).iter().all(|&w| colors[w] != Some(*c)))?;
        colors[v] = Some(c);
    }
    Some(())
}

fn is_proper(s: &Graph, lists: &[Vec<Color>], c: &[Color]) -> bool {
    (0..s.n()).all(|v| lists[v].contains(&c[v])) && s.edges().iter().all(|&(u, v)| c[u] != c[v])
}

fn backtrack(s: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    fn go(s: &Graph, lists: &[Vec<Color>], v: usize, c: &mut Vec<Color>) -> bool {
        if v == s.n() {
            return true;
        }
        for &col in &lists[v] {
            if s.neighbors(v).iter().all(|&w| w >= v || c[w] != col) {
                c.push(col);
                if go(s, lists, v + 1, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    let mut c = Vec::with_capacity(s.n());
    go(s, lists, 0, &mut c).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn even_cycle_two_lists() {
        let g = cycle(4);
        let c = brooks_list_color(&g, &vec![vec![1, 2]; 4]).unwrap();
        assert!(is_proper(&g, &vec![vec![1, 2]; 4], &c));
    }

    #[test]
    fn even_cycle_distinct_lists() {
        let g = cycle(4);
        let lists = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]];
        let c = brooks_list_color(&g, &lists).unwrap();
        assert!(is_proper(&g, &lists, &c));
    }

    #[test]
    fn preconditions() {
        assert_eq!(brooks_list_color(&complete(4), &vec![vec![0, 1, 2]; 4]), Err(BrooksError::Clique));
        assert_eq!(brooks_list_color(&cycle(5), &vec![vec![0, 1]; 5]), Err(BrooksError::OddCycle));
        assert_eq!(brooks_list_color(&path(4), &vec![vec![0, 1]; 4]), Err(BrooksError::NotTwoConnected));
        assert!(matches!(
            brooks_list_color(&cycle(4), &[vec![0, 1], vec![0], vec![0, 1], vec![0, 1]]),
            Err(BrooksError::ShortList { vertex: 1, .. })
        ));
    }

    #[test]
    fn regular_identical_lists() {
        // Petersen graph, cubic, all lists {0,1,2}
        let g = petersen();
        let lists = vec![vec![0, 1, 2]; 10];
        assert!(constructive(&g, &lists).is_some_and(|c| is_proper(&g, &lists, &c)));
        // K_{3,3}
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        let k33 = Graph::new(6, &edges).unwrap();
        let lists = vec![vec![5, 6, 7]; 6];
        assert!(constructive(&k33, &lists).is_some_and(|c| is_proper(&k33, &lists, &c)));
    }
}
