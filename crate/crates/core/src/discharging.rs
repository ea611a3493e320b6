//! The discharging rules R1.1–R1.5, R2, R3, R4 and the global pot Rg, run
//! with exact rationals and a full transfer ledger.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{analyze_components, VertexClassification};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "R1.1")]
    R1_1,
    #[serde(rename = "R1.2")]
    R1_2,
    #[serde(rename = "R1.3")]
    R1_3,
    #[serde(rename = "R1.4")]
    R1_4,
    #[serde(rename = "R1.5")]
    R1_5,
    R2,
    R3,
    R4,
    Rg,
}

impl Rule {
    pub fn amount(self) -> Rational {
        match self {
            Rule::R1_1 => Rational::new(2, 5),
            Rule::R1_2 => Rational::new(3, 5),
            Rule::R1_3 => Rational::new(1, 2),
            Rule::R1_4 => Rational::new(3, 8),
            Rule::R1_5 => Rational::new(1, 5),
            Rule::R2 => Rational::new(1, 10),
            Rule::R3 => Rational::new(5, 8),
            Rule::R4 => Rational::new(4, 5),
            Rule::Rg => Rational::new(2, 5),
        }
    }

    pub fn is_r1(self) -> bool {
        matches!(self, Rule::R1_1 | Rule::R1_2 | Rule::R1_3 | Rule::R1_4 | Rule::R1_5)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1_1 => "R1.1",
            Rule::R1_2 => "R1.2",
            Rule::R1_3 => "R1.3",
            Rule::R1_4 => "R1.4",
            Rule::R1_5 => "R1.5",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::Rg => "Rg",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Vertex(usize),
    Pot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub rule: Rule,
    pub giver: Party,
    pub receiver: Party,
    pub amount: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeState {
    pub charge: Vec<Rational>,
    pub pot: Rational,
    pub ledger: Vec<Transfer>,
}

impl ChargeState {
    fn transfer(&mut self, rule: Rule, giver: Party, receiver: Party) {
        let amount = rule.amount();
        for (party, sign) in [(giver, -1), (receiver, 1)] {
            let slot = match party {
                Party::Vertex(v) => &mut self.charge[v],
                Party::Pot => &mut self.pot,
            };
            if sign < 0 {
                *slot -= &amount;
            } else {
                *slot += &amount;
            }
        }
        self.ledger.push(Transfer { rule, giver, receiver, amount });
    }

    pub fn total(&self) -> Rational {
        self.charge.iter().cloned().sum::<Rational>() + self.pot.clone()
    }
}

pub fn initial_charges(g: &Graph) -> ChargeState {
    ChargeState {
        charge: (0..g.n()).map(|v| Rational::from(g.degree(v))).collect(),
        pot: Rational::zero(),
        ledger: Vec::new(),
    }
}

/// R1 sub-rule for the link `x - a - y`, if any fires.
pub fn r1_rule(g: &Graph, cls: &VertexClassification, x: usize, a: usize, y: usize) -> Option<Rule> {
    let dx = g.degree(x);
    if !(3..=7).contains(&dx) {
        return None;
    }
    match g.degree(y) {
        0..=7 if cls.weak[x] => Some(Rule::R1_1),
        0..=7 if cls.weak[y] => Some(Rule::R1_2),
        0..=7 => Some(Rule::R1_3),
        8..=14 => Some(Rule::R1_4),
        _ if !cls.is_negative(a) => Some(Rule::R1_5),
        _ => None,
    }
}

/// Whether `u` qualifies as an R2 receiver from its neighbor `x`: degree 3,
/// and its two other neighbors are one of degree 2 and one of degree at most 7.
pub fn r2_applies(g: &Graph, x: usize, u: usize) -> bool {
    if !(3..=7).contains(&g.degree(x)) || g.degree(u) != 3 || !g.has_edge(x, u) {
        return false;
    }
    let rest: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w != x).collect();
    let (p, q) = (rest[0], rest[1]);
    (g.degree(p) == 2 && g.degree(q) <= 7) || (g.degree(q) == 2 && g.degree(p) <= 7)
}

/// One pass of every rule, starting from degree charges.
pub fn apply_rules(g: &Graph, cls: &VertexClassification) -> ChargeState {
    let mut cs = initial_charges(g);
    for x in 0..g.n() {
        let d = g.degree(x);
        if (3..=7).contains(&d) {
            for link in g.one_links(x) {
                let a = link.middle();
                if let Some(rule) = r1_rule(g, cls, x, a, link.y) {
                    cs.transfer(rule, Party::Vertex(x), Party::Vertex(a));
                }
            }
            for &u in g.neighbors(x) {
                if r2_applies(g, x, u) {
                    cs.transfer(Rule::R2, Party::Vertex(x), Party::Vertex(u));
                }
            }
        } else if d >= 8 {
            let rule = if d <= 14 { Rule::R3 } else { Rule::R4 };
            for &w in g.neighbors(x) {
                cs.transfer(rule, Party::Vertex(x), Party::Vertex(w));
            }
        }
    }
    for v in (0..g.n()).filter(|&v| cls.positive[v]) {
        cs.transfer(Rule::Rg, Party::Vertex(v), Party::Pot);
    }
    for v in (0..g.n()).filter(|&v| cls.is_negative(v)) {
        let amount = Rational::new(1, 5);
        cs.pot -= &amount;
        cs.charge[v] += &amount;
        cs.ledger.push(Transfer {
            rule: Rule::Rg,
            giver: Party::Pot,
            receiver: Party::Vertex(v),
            amount,
        });
    }
    cs
}

/// Rebuilds charges and pot from degrees and the ledger alone.
pub fn replay_ledger(g: &Graph, ledger: &[Transfer]) -> (Vec<Rational>, Rational) {
    let mut charge: Vec<Rational> = (0..g.n()).map(|v| Rational::from(g.degree(v))).collect();
    let mut pot = Rational::zero();
    for t in ledger {
        match t.giver {
            Party::Vertex(v) => charge[v] -= &t.amount,
            Party::Pot => pot -= &t.amount,
        }
        match t.receiver {
            Party::Vertex(v) => charge[v] += &t.amount,
            Party::Pot => pot += &t.amount,
        }
    }
    (charge, pot)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBound {
    pub component: Vec<usize>,
    pub n: usize,
    pub p: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DischargeReport {
    pub deficient: Vec<(usize, Rational)>,
    pub pot_value: Rational,
    pub component_bounds: Vec<ComponentBound>,
}

impl DischargeReport {
    pub fn ok(&self) -> bool {
        self.deficient.is_empty() && !self.pot_value.is_negative()
    }
}

/// Vertices ending below 3, plus the pot. Component bounds are left empty.
pub fn verify_min_charge(cs: &ChargeState) -> DischargeReport {
    let three = Rational::from_int(3);
    DischargeReport {
        deficient: cs
            .charge
            .iter()
            .enumerate()
            .filter(|(_, c)| **c < three)
            .map(|(v, c)| (v, c.clone()))
            .collect(),
        pot_value: cs.pot.clone(),
        component_bounds: Vec::new(),
    }
}

/// Per component of `H(G)`: negative count `n`, positive count `p`, and
/// whether `p >= ceil(n / 2)`.
pub fn pot_component_check(h: &Graph, cls: &VertexClassification) -> Vec<ComponentBound> {
    analyze_components(h, cls)
        .into_iter()
        .map(|c| ComponentBound {
            holds: 2 * c.p >= c.n,
            component: c.vertices,
            n: c.n,
            p: c.p,
        })
        .collect()
}

/// Runs the rules and builds the full report.
pub fn discharge(g: &Graph, cls: &VertexClassification, h: &Graph) -> (ChargeState, DischargeReport) {
    let cs = apply_rules(g, cls);
    let mut report = verify_min_charge(&cs);
    report.component_bounds = pot_component_check(h, cls);
    (cs, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_vertices, support_graph};
    use crate::graph::named::*;
    use proptest::prelude::*;

    fn run(g: &Graph) -> ChargeState {
        apply_rules(g, &classify_vertices(g))
    }

    #[test]
    fn initial_examples() {
        let cs = initial_charges(&cycle(5));
        assert!(cs.charge.iter().all(|c| *c == Rational::from_int(2)));
        assert_eq!(cs.pot, Rational::zero());
        let cs = initial_charges(&star(18));
        assert_eq!(cs.charge[0], Rational::from_int(18));
        assert_eq!(cs.charge[1], Rational::from_int(1));
        assert!(initial_charges(&Graph::empty(0)).charge.is_empty());
    }

    #[test]
    fn degree_eight_center_ends_at_three() {
        let cs = run(&star(8));
        assert_eq!(cs.charge[0], Rational::from_int(3));
    }

    #[test]
    fn star_18() {
        let g = star(18);
        let cs = run(&g);
        assert_eq!(cs.charge[0], Rational::new(18, 5));
        assert_eq!(cs.charge[1], Rational::new(9, 5));
        let rep = verify_min_charge(&cs);
        assert_eq!(rep.deficient.len(), 18);
        assert!(rep.deficient.iter().all(|(v, _)| *v >= 1));
    }

    #[test]
    fn empty_graph_report() {
        let g = Graph::empty(0);
        let cls = classify_vertices(&g);
        let (_, rep) = discharge(&g, &cls, &support_graph(&g, &cls));
        assert!(rep.deficient.is_empty() && rep.component_bounds.is_empty());
        assert_eq!(rep.pot_value, Rational::zero());
    }

    #[test]
    fn s1_chain_component() {
        // u - x - a - b with u and b padded to degree 17
        let mut edges = vec![(0, 1), (1, 2), (2, 3)];
        for i in 0..16 {
            edges.push((0, 4 + i));
            edges.push((3, 20 + i));
        }
        let g = Graph::new(36, &edges).unwrap();
        let cls = classify_vertices(&g);
        let b = pot_component_check(&support_graph(&g, &cls), &cls);
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].n, b[0].p, b[0].holds), (2, 2, true));
    }

    #[test]
    fn r1_dispatch_table() {
        // x = 0 (degree 3), link 0-1-2 with y = 2 of varying degree
        for (dy, expect) in [(3, Some(Rule::R1_3)), (9, Some(Rule::R1_4)), (15, Some(Rule::R1_5))] {
            let mut edges = vec![(0, 1), (1, 2), (0, 3), (0, 4)];
            for i in 0..dy - 1 {
                edges.push((2, 5 + i));
            }
            let g = Graph::new(5 + dy - 1, &edges).unwrap();
            let cls = classify_vertices(&g);
            assert_eq!(r1_rule(&g, &cls, 0, 1, 2), expect);
        }
    }

    fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(move |n| {
            prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
                let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn conservation_and_replay(g in arb_graph(24, 40)) {
            let cs = run(&g);
            prop_assert_eq!(cs.total(), Rational::from(2 * g.m()));
            let (charge, pot) = replay_ledger(&g, &cs.ledger);
            prop_assert_eq!(charge, cs.charge);
            prop_assert_eq!(pot, cs.pot);
        }

        #[test]
        fn r1_fires_at_most_once_per_link(g in arb_graph(20, 30)) {
            let cs = run(&g);
            let mut seen = std::collections::BTreeSet::new();
            for t in cs.ledger.iter().filter(|t| t.rule.is_r1()) {
                prop_assert!(seen.insert((t.giver, t.receiver)));
            }
        }
    }
}
