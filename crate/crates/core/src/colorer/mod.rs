//! Constructive list coloring by reducible configurations.
//!
//! The graph is peeled one configuration at a time until nothing is left,
//! then the levels are unwound and each reduction's deleted (or discolored)
//! vertices are colored back in the order its argument prescribes, always
//! taking the smallest available color. Every extension records the
//! measured number of constraints next to the bound the argument promises.
//! If a prescribed order gets stuck, that single step is finished by
//! exhaustive search over its own uncolored vertices.

pub mod brooks;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_vertices, SupportType};
use crate::configurations::{
    detect_any, support_side_set, validate, ConfigError, ConfigKind, ConfigurationMatch, KParameter,
    StructuralReduction,
};
use crate::graph::Graph;

pub use brooks::{brooks_list_color, BrooksError};

pub type Color = u32;
pub type Coloring = Vec<Color>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "2distance")]
    TwoDistance,
    #[serde(rename = "injective")]
    Injective,
}

impl Mode {
    /// Smallest list size guaranteed to suffice for degree budget `k`.
    pub fn min_list_size(self, k: usize) -> usize {
        match self {
            Mode::TwoDistance => k + 2,
            Mode::Injective => k + 1,
        }
    }

    /// Vertices that must get a color different from `v`.
    pub fn conflicts(self, g: &Graph, v: usize) -> BTreeSet<usize> {
        match self {
            Mode::TwoDistance => g.dist2_neighborhood(v),
            Mode::Injective => g.common_neighbor_set(v),
        }
    }

    pub fn in_conflict(self, g: &Graph, a: usize, b: usize) -> bool {
        a != b
            && (matches!(self, Mode::TwoDistance) && g.has_edge(a, b) || !g.common_neighbors(a, b).is_empty())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::TwoDistance => "2distance",
            Mode::Injective => "injective",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "2distance" | "2-distance" | "two-distance" | "distance2" => Ok(Mode::TwoDistance),
            "injective" => Ok(Mode::Injective),
            _ => Err(format!("unknown mode `{s}` (expected 2distance or injective)")),
        }
    }
}

/// Per-vertex color lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment(pub Vec<Vec<Color>>);

impl ListAssignment {
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color> + Clone) -> Self {
        ListAssignment(vec![colors.into_iter().collect(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.0[v]
    }

    fn normalized(&self) -> Self {
        ListAssignment(
            self.0
                .iter()
                .map(|l| {
                    let mut l = l.clone();
                    l.sort_unstable();
                    l.dedup();
                    l
                })
                .collect(),
        )
    }

    /// Parses a JSON object mapping vertex ids to color arrays; every vertex
    /// in `0..n` must be present.
    pub fn from_json(text: &str, n: usize) -> Result<Self, ColorError> {
        let map: BTreeMap<String, Vec<Color>> =
            serde_json::from_str(text).map_err(|e| ColorError::BadInput(format!("lists: {e}")))?;
        let mut lists = vec![None; n];
        for (key, colors) in map {
            let v: usize = key
                .parse()
                .map_err(|_| ColorError::BadInput(format!("lists: bad vertex id `{key}`")))?;
            if v >= n {
                return Err(ColorError::BadInput(format!("lists: vertex {v} out of range")));
            }
            lists[v] = Some(colors);
        }
        let lists = lists
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| ColorError::BadInput(format!("lists: vertex {v} has no list"))))
            .collect::<Result<_, _>>()?;
        Ok(ListAssignment(lists))
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<usize, &Vec<Color>> = self.0.iter().enumerate().collect();
        serde_json::to_string(&map).expect("lists serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialColoring(pub Vec<Option<Color>>);

impl PartialColoring {
    pub fn uncolored(n: usize) -> Self {
        PartialColoring(vec![None; n])
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.0[v]
    }
}

/// Colors within the mode's conflict range of `v`.
pub fn constraints(g: &Graph, pc: &PartialColoring, v: usize, mode: Mode) -> BTreeSet<Color> {
    let mut out = BTreeSet::new();
    for &a in g.neighbors(v) {
        if mode == Mode::TwoDistance {
            out.extend(pc.0[a]);
        }
        for &b in g.neighbors(a) {
            if b != v {
                out.extend(pc.0[b]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Clash { u: usize, v: usize, color: Color },
    NotInList { vertex: usize, color: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCheck {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

pub fn check_coloring(g: &Graph, c: &[Color], la: Option<&ListAssignment>, mode: Mode) -> ColoringCheck {
    let mut violations = Vec::new();
    if let Some(la) = la {
        for (v, &color) in c.iter().enumerate() {
            if !la.0[v].contains(&color) {
                violations.push(Violation::NotInList { vertex: v, color });
            }
        }
    }
    for u in 0..g.n() {
        for v in mode.conflicts(g, u) {
            if u < v && c[u] == c[v] {
                violations.push(Violation::Clash { u, v, color: c[u] });
            }
        }
    }
    ColoringCheck { valid: violations.is_empty(), violations }
}

/// One colored vertex during an extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub vertex: usize,
    pub color: Color,
    /// Constraints measured just before coloring.
    pub constraints: usize,
    /// The bound the reduction's argument promises, when it states one.
    pub bound: Option<usize>,
    pub colored_neighbor: bool,
    /// Degree in the graph of this level.
    pub degree: usize,
}

impl Assignment {
    pub fn within_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.constraints <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub matched: ConfigurationMatch,
    pub deleted_vertices: Vec<usize>,
    pub deleted_edges: Vec<(usize, usize)>,
    pub discolored: Vec<usize>,
    /// Vertices whose colors clashed once the deleted part was restored.
    pub extra_discolored: Vec<usize>,
    pub assignments: Vec<Assignment>,
    /// Set when the prescribed order got stuck and search finished the step.
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub k: usize,
    pub mode: Mode,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    /// Extended vertices with a neighbor but no colored neighbor at their turn.
    pub fn uncolored_neighbor_assignments(&self) -> Vec<usize> {
        self.steps
            .iter()
            .flat_map(|s| &s.assignments)
            .filter(|a| a.degree > 0 && !a.colored_neighbor)
            .map(|a| a.vertex)
            .collect()
    }

    /// Assignments whose measured constraint count exceeds the stated bound.
    pub fn bound_breaches(&self) -> Vec<(ConfigKind, Assignment)> {
        self.steps
            .iter()
            .flat_map(|s| s.assignments.iter().map(move |a| (s.matched.kind, a)))
            .filter(|(_, a)| !a.within_bound())
            .map(|(k, a)| (k, a.clone()))
            .collect()
    }

    pub fn fallback_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.fallback).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorOutcome {
    pub coloring: Coloring,
    pub trace: ReductionTrace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error(transparent)]
    BadK(#[from] ConfigError),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("no reducible configuration in the remaining subgraph on {} vertices", vertices.len())]
    NoReducibleConfiguration { vertices: Vec<usize>, edges: Vec<(usize, usize)> },
    #[error("extension failed at step {step} ({kind}): {detail}")]
    ExtensionFailure { step: usize, kind: ConfigKind, detail: String },
}

impl ColorError {
    /// The remaining subgraph for `NoReducibleConfiguration`, relabelled.
    pub fn irreducible_subgraph(&self) -> Option<Graph> {
        match self {
            ColorError::NoReducibleConfiguration { vertices, edges } => {
                let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let local: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (pos[a], pos[b])).collect();
                Some(Graph::new(vertices.len(), &local).expect("edges inside the vertex set"))
            }
            _ => None,
        }
    }
}

fn check_inputs(g: &Graph, la: &ListAssignment, k: KParameter, mode: Mode) -> Result<ListAssignment, ColorError> {
    if g.max_degree() > k.get() {
        return Err(ConfigError::BadK { k: k.get(), max_degree: g.max_degree() }.into());
    }
    if la.len() != g.n() {
        return Err(ColorError::BadInput(format!("{} lists for {} vertices", la.len(), g.n())));
    }
    let la = la.normalized();
    let need = mode.min_list_size(k.get());
    if let Some(v) = (0..g.n()).find(|&v| la.0[v].len() < need) {
        return Err(ColorError::BadInput(format!(
            "vertex {v} has {} colors, {mode} mode needs at least {need}",
            la.0[v].len()
        )));
    }
    Ok(la)
}

/// Colors `g` from `la`.
pub fn color(g: &Graph, la: &ListAssignment, k: KParameter, mode: Mode) -> Result<ColorOutcome, ColorError> {
    color_with_first(g, la, k, mode, None)
}

/// Like [`color`], but the first reduction uses `first` instead of the
/// match the search would pick.
pub fn color_with_first(
    g: &Graph,
    la: &ListAssignment,
    k: KParameter,
    mode: Mode,
    first: Option<ConfigurationMatch>,
) -> Result<ColorOutcome, ColorError> {
    let la = check_inputs(g, la, k, mode)?;
    if let Some(m) = &first {
        if !validate(g, k, m) {
            return Err(ColorError::BadInput(format!("forced {} match does not hold", m.kind)));
        }
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut current = g.clone();
    let mut levels = Vec::new();
    let mut steps = Vec::new();
    let mut forced = first;
    loop {
        let alive_list: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if alive_list.is_empty() {
            break;
        }
        let found = match forced.take() {
            Some(m) => Some(m),
            None => {
                let sub = current.induced(&alive_list);
                detect_any(&sub, k)?.map(|m| m.relabel(&alive_list))
            }
        };
        let Some(m) = found else {
            return Err(ColorError::NoReducibleConfiguration { vertices: alive_list, edges: current.edges() });
        };
        let (deleted_vertices, deleted_edges, discolored) = reduction(&current, &m);
        let removed: BTreeSet<usize> = deleted_vertices.iter().copied().collect();
        for &v in &removed {
            alive[v] = false;
        }
        let next_edges: Vec<(usize, usize)> = current
            .edges()
            .into_iter()
            .filter(|(a, b)| !removed.contains(a) && !removed.contains(b) && !deleted_edges.contains(&(*a, *b)))
            .collect();
        let next = Graph::new(n, &next_edges).expect("subset of valid edges");
        levels.push(std::mem::replace(&mut current, next));
        steps.push(TraceStep {
            matched: m,
            deleted_vertices,
            deleted_edges,
            discolored,
            extra_discolored: Vec::new(),
            assignments: Vec::new(),
            fallback: false,
        });
    }

    let mut pc = PartialColoring::uncolored(n);
    for i in (0..steps.len()).rev() {
        extend_step(&levels[i], &la, k.get(), mode, &mut steps[i], &mut pc).map_err(|detail| {
            ColorError::ExtensionFailure { step: i, kind: steps[i].matched.kind, detail }
        })?;
    }
    let coloring: Coloring = pc.0.iter().map(|c| c.expect("every vertex is deleted once")).collect();
    let check = check_coloring(g, &coloring, Some(&la), mode);
    if !check.valid {
        return Err(ColorError::ExtensionFailure {
            step: 0,
            kind: steps.first().map_or(ConfigKind::C1, |s| s.matched.kind),
            detail: format!("final coloring invalid: {:?}", check.violations),
        });
    }
    Ok(ColorOutcome { coloring, trace: ReductionTrace { k: k.get(), mode, steps } })
}

/// Vertices deleted, edges deleted, and vertices discolored by a reduction.
fn reduction(g: &Graph, m: &ConfigurationMatch) -> (Vec<usize>, Vec<(usize, usize)>, Vec<usize>) {
    let r = |name: &str| m.role(name);
    use ConfigKind::*;
    let (del, edges, disc): (Vec<usize>, Vec<(usize, usize)>, Vec<usize>) = match m.kind {
        C1 => (vec![r("u")], vec![], vec![]),
        C2 => (vec![r("u"), r("v")], vec![], vec![]),
        C3 | C6 | C8 | C9 => (vec![r("v")], vec![], vec![r("u")]),
        C4 => {
            let (u, v) = (r("u"), r("v"));
            (vec![], vec![(u.min(v), u.max(v))], vec![u, v])
        }
        C5 => (vec![r("u"), r("v"), r("w")], vec![], vec![]),
        C7 => (vec![r("v"), r("w")], vec![], vec![r("u")]),
        C10 => {
            let mut d = vec![r("u")];
            d.extend((1..=6).map(|i| r(&format!("w{i}"))));
            (d, vec![], vec![])
        }
        C11 => {
            let mut d: Vec<usize> = ["v", "w", "x", "y", "z1", "z2", "z3", "z4"].iter().map(|n| r(n)).collect();
            let cls = classify_vertices(g);
            if let Some((_, a)) = support_side_set(g, &cls, r("u"), r("x")) {
                d.extend(a);
            }
            (d, vec![], vec![])
        }
        Structural => {
            let s = &m.structural.as_ref().expect("structural detail").supports;
            let mut d: BTreeSet<usize> = s.iter().copied().collect();
            for &x in s {
                d.extend(g.neighbors(x).iter().copied().filter(|&v| g.degree(v) <= 3));
            }
            (d.into_iter().collect(), vec![], vec![])
        }
    };
    let mut seen = BTreeSet::new();
    let del = del.into_iter().filter(|v| seen.insert(*v)).collect();
    (del, edges, disc)
}

/// Coloring state of one extension step.
struct Extension<'a> {
    g: &'a Graph,
    la: &'a ListAssignment,
    mode: Mode,
    pc: &'a mut PartialColoring,
    out: Vec<Assignment>,
}

impl Extension<'_> {
    fn available(&self, v: usize) -> Vec<Color> {
        let cons = constraints(self.g, self.pc, v, self.mode);
        self.la.0[v].iter().copied().filter(|c| !cons.contains(c)).collect()
    }

    fn has_colored_neighbor(&self, v: usize) -> bool {
        self.g.neighbors(v).iter().any(|&w| self.pc.0[w].is_some())
    }

    fn assign(&mut self, v: usize, color: Color, bound: Option<usize>) {
        let constraints = constraints(self.g, self.pc, v, self.mode).len();
        self.out.push(Assignment {
            vertex: v,
            color,
            constraints,
            bound,
            colored_neighbor: self.has_colored_neighbor(v),
            degree: self.g.degree(v),
        });
        self.pc.0[v] = Some(color);
    }

    /// Smallest available color; `None` when the list is exhausted.
    fn greedy(&mut self, v: usize, bound: Option<usize>) -> Option<()> {
        if self.pc.0[v].is_some() {
            return Some(());
        }
        let c = *self.available(v).first()?;
        self.assign(v, c, bound);
        Some(())
    }

    /// Greedy over `order`. In injective mode the next vertex is the first
    /// remaining one with a colored neighbor, when there is such a vertex.
    fn greedy_seq(&mut self, order: &[(usize, Option<usize>)]) -> Option<()> {
        let mut rest: Vec<(usize, Option<usize>)> = order.to_vec();
        while !rest.is_empty() {
            let i = match self.mode {
                Mode::TwoDistance => 0,
                Mode::Injective => rest
                    .iter()
                    .position(|&(v, _)| self.pc.0[v].is_some() || self.has_colored_neighbor(v))
                    .unwrap_or(0),
            };
            let (v, b) = rest.remove(i);
            self.greedy(v, b)?;
        }
        Some(())
    }
}

fn extend_step(
    g: &Graph,
    la: &ListAssignment,
    k: usize,
    mode: Mode,
    step: &mut TraceStep,
    pc: &mut PartialColoring,
) -> Result<(), String> {
    for &v in &step.discolored {
        pc.0[v] = None;
    }
    // the restored part may put two colored vertices in conflict
    let mut extra = Vec::new();
    for v in 0..g.n() {
        let Some(c) = pc.0[v] else { continue };
        if mode.conflicts(g, v).iter().any(|&w| w < v && pc.0[w] == Some(c)) {
            pc.0[v] = None;
            extra.push(v);
        }
    }
    let mut targets: Vec<usize> = step.deleted_vertices.clone();
    for &v in step.discolored.iter().chain(&extra) {
        if !targets.contains(&v) {
            targets.push(v);
        }
    }
    step.extra_discolored = extra;

    let mut ext = Extension { g, la, mode, pc, out: Vec::new() };
    let ok = run_prescribed(&mut ext, k, &step.matched, &targets).is_some()
        && targets.iter().all(|&v| ext.pc.0[v].is_some());
    let mut assignments = std::mem::take(&mut ext.out);
    if !ok {
        for &v in &targets {
            pc.0[v] = None;
        }
        assignments = search(g, la, mode, pc, &targets)
            .ok_or_else(|| format!("no extension exists for vertices {targets:?}"))?;
        step.fallback = true;
    }
    for &v in &targets {
        let c = pc.0[v].ok_or_else(|| format!("vertex {v} left uncolored"))?;
        if !la.0[v].contains(&c) {
            return Err(format!("vertex {v} got color {c} outside its list"));
        }
        if mode.conflicts(g, v).iter().any(|&w| pc.0[w] == Some(c)) {
            return Err(format!("vertex {v} clashes on color {c}"));
        }
    }
    step.assignments = assignments;
    Ok(())
}

/// Follows the reduction's prescribed order. `None` when a list runs out.
fn run_prescribed(ext: &mut Extension, k: usize, m: &ConfigurationMatch, targets: &[usize]) -> Option<()> {
    let r = |name: &str| m.role(name);
    let d = |v: usize| ext.g.degree(v);
    use ConfigKind::*;
    let order: Vec<(usize, Option<usize>)> = match m.kind {
        C1 => vec![(r("u"), Some(k))],
        C2 => vec![(r("u"), Some(k + 1)), (r("v"), Some(k + 1))],
        C3 => vec![(r("v"), Some(k + 1)), (r("u"), Some(d(r("w")) + d(r("x")) + 2))],
        C4 => vec![(r("u"), Some(d(r("w")) + d(r("x")) + 2)), (r("v"), Some(7 + 3 + 2))],
        C5 => vec![(r("u"), Some(k + 1)), (r("v"), Some(14 + 3)), (r("w"), Some(14 + 3))],
        C6 => vec![(r("v"), Some(14 + 3)), (r("u"), Some(2 + 3 + 3 + 7))],
        C7 => vec![
            (r("u"), Some(d(r("x")) + d(r("y")) + 2)),
            (r("v"), Some(14 + 4)),
            (r("w"), Some(14 + 4)),
        ],
        C8 => vec![(r("u"), Some(7 + 3 + 3 + 2 + 1)), (r("v"), Some(7 + 5))],
        C9 => vec![(r("u"), Some(7 + 3 + 3 + 2 + 2 + 1)), (r("v"), Some(7 + 6))],
        C10 => {
            let mut o = vec![(r("u"), Some(7 + 6))];
            o.extend((1..=6).map(|i| (r(&format!("w{i}")), Some(3 + 7))));
            o
        }
        C11 => return run_c11(ext, k, m, targets),
        Structural => return run_structural(ext, k, m, targets),
    };
    ext.greedy_seq(&order)?;
    let rest: Vec<(usize, Option<usize>)> = targets.iter().map(|&v| (v, None)).collect();
    ext.greedy_seq(&rest)
}

fn run_c11(ext: &mut Extension, k: usize, m: &ConfigurationMatch, targets: &[usize]) -> Option<()> {
    let r = |name: &str| m.role(name);
    let (u, v, w, x, y) = (r("u"), r("v"), r("w"), r("x"), r("y"));
    let cls = classify_vertices(ext.g);
    let (ty, a_set) = support_side_set(ext.g, &cls, u, x)?;
    match ty {
        SupportType::S1 => ext.greedy(a_set[0], Some(k + 1))?,
        SupportType::S2 => ext.greedy(a_set[1], Some(k + 1))?,
        SupportType::S3 => {}
    }
    let ax = ext.available(x);
    let ay = ext.available(y);
    let shared = ax.iter().copied().find(|c| ay.contains(c));
    let bound = Some(k + 1);
    if let (Some(c), false) = (shared, ext.mode.in_conflict(ext.g, x, y)) {
        if ext.pc.0[x].is_none() && ext.pc.0[y].is_none() {
            ext.assign(x, c, bound);
            ext.assign(y, c, bound);
        }
        ext.greedy_seq(&[(v, bound), (w, bound)])?;
    } else if shared.is_none() {
        if ext.pc.0[v].is_none() {
            let av = ext.available(v);
            let c = av.iter().copied().find(|c| !ax.contains(c)).or_else(|| av.first().copied())?;
            ext.assign(v, c, bound);
        }
        ext.greedy(y, bound)?;
        ext.greedy(w, bound)?;
        ext.greedy(x, bound)?;
    } else {
        ext.greedy_seq(&[(x, bound), (v, bound), (w, bound), (y, bound)])?;
    }
    match ty {
        SupportType::S1 => {}
        SupportType::S2 => ext.greedy(a_set[0], Some(11))?,
        SupportType::S3 => {
            ext.greedy(a_set[0], Some(18))?;
            ext.greedy(a_set[1], Some(6))?;
        }
    }
    let zs: Vec<(usize, Option<usize>)> = ["z1", "z2", "z3", "z4"].iter().map(|n| (r(n), Some(17))).collect();
    ext.greedy_seq(&zs)?;
    let rest: Vec<(usize, Option<usize>)> = targets.iter().map(|&v| (v, None)).collect();
    ext.greedy_seq(&rest)
}

fn run_structural(ext: &mut Extension, k: usize, m: &ConfigurationMatch, targets: &[usize]) -> Option<()> {
    let detail = m.structural.as_ref()?;
    let supports = &detail.supports;
    match detail.reduction {
        StructuralReduction::TwoSupports => {
            let order: Vec<(usize, Option<usize>)> = supports.iter().map(|&s| (s, Some(k))).collect();
            ext.greedy_seq(&order)?;
        }
        StructuralReduction::Brooks => {
            let pos: BTreeMap<usize, usize> = supports.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let mut edges = Vec::new();
            for (i, &a) in supports.iter().enumerate() {
                for &b in &supports[i + 1..] {
                    if ext.mode.in_conflict(ext.g, a, b) {
                        edges.push((pos[&a], pos[&b]));
                    }
                }
            }
            let conflict = Graph::new(supports.len(), &edges).expect("support conflict graph");
            let lists: Vec<Vec<Color>> = supports.iter().map(|&s| ext.available(s)).collect();
            match brooks_list_color(&conflict, &lists) {
                Ok(colors) => {
                    for (i, &s) in supports.iter().enumerate() {
                        let bound = k + 2 - conflict.degree(i).min(k + 2);
                        ext.assign(s, colors[i], Some(bound));
                    }
                }
                Err(_) => {
                    let found = search(ext.g, ext.la, ext.mode, ext.pc, supports)?;
                    ext.out.extend(found);
                }
            }
        }
    }
    let rest: Vec<(usize, Option<usize>)> = targets
        .iter()
        .filter(|v| !supports.contains(v))
        .map(|&v| (v, Some(17)))
        .collect();
    ext.greedy_seq(&rest)
}

/// Exhaustive search over `targets`, most constrained vertex first. On
/// success the colors are written into `pc` and returned in search order.
fn search(
    g: &Graph,
    la: &ListAssignment,
    mode: Mode,
    pc: &mut PartialColoring,
    targets: &[usize],
) -> Option<Vec<Assignment>> {
    let conflict: BTreeMap<usize, BTreeSet<usize>> = targets.iter().map(|&v| (v, mode.conflicts(g, v))).collect();
    fn go(
        g: &Graph,
        la: &ListAssignment,
        mode: Mode,
        pc: &mut PartialColoring,
        conflict: &BTreeMap<usize, BTreeSet<usize>>,
        left: &mut Vec<usize>,
        out: &mut Vec<Assignment>,
    ) -> bool {
        if left.is_empty() {
            return true;
        }
        let avail = |pc: &PartialColoring, v: usize| -> Vec<Color> {
            la.0[v]
                .iter()
                .copied()
                .filter(|&c| conflict[&v].iter().all(|&w| pc.0[w] != Some(c)))
                .collect()
        };
        let (i, _) = left
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| avail(pc, v).len())
            .expect("nonempty");
        let v = left.swap_remove(i);
        for c in avail(pc, v) {
            out.push(Assignment {
                vertex: v,
                color: c,
                constraints: constraints(g, pc, v, mode).len(),
                bound: None,
                colored_neighbor: g.neighbors(v).iter().any(|&w| pc.0[w].is_some()),
                degree: g.degree(v),
            });
            pc.0[v] = Some(c);
            if go(g, la, mode, pc, conflict, left, out) {
                return true;
            }
            pc.0[v] = None;
            out.pop();
        }
        left.push(v);
        let last = left.len() - 1;
        left.swap(i, last);
        false
    }
    let mut left: Vec<usize> = targets.iter().copied().filter(|&v| pc.0[v].is_none()).collect();
    let mut out = Vec::new();
    go(g, la, mode, pc, &conflict, &mut left, &mut out).then_some(out)
}

/// Re-runs the trace's deletions on `g` and replays its recorded
/// assignments, checking each one. Returns the reproduced coloring.
pub fn replay_trace(g: &Graph, la: &ListAssignment, trace: &ReductionTrace) -> Result<Coloring, String> {
    let n = g.n();
    let k = KParameter::for_graph(g, Some(trace.k)).map_err(|e| e.to_string())?;
    let mut current = g.clone();
    let mut levels = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        if !validate(&current, k, &step.matched) {
            return Err(format!("step {i}: {} match does not hold", step.matched.kind));
        }
        let removed: BTreeSet<usize> = step.deleted_vertices.iter().copied().collect();
        let edges: Vec<(usize, usize)> = current
            .edges()
            .into_iter()
            .filter(|(a, b)| !removed.contains(a) && !removed.contains(b) && !step.deleted_edges.contains(&(*a, *b)))
            .collect();
        let next = Graph::new(n, &edges).map_err(|e| e.to_string())?;
        levels.push(std::mem::replace(&mut current, next));
    }
    if current.m() != 0 {
        return Err("trace leaves edges undeleted".into());
    }
    let mut pc = PartialColoring::uncolored(n);
    for (i, step) in trace.steps.iter().enumerate().rev() {
        let gi = &levels[i];
        for &v in step.discolored.iter().chain(&step.extra_discolored) {
            pc.0[v] = None;
        }
        for a in &step.assignments {
            if !la.0[a.vertex].contains(&a.color) {
                return Err(format!("step {i}: color {} not in list of {}", a.color, a.vertex));
            }
            if trace.mode.conflicts(gi, a.vertex).iter().any(|&w| pc.0[w] == Some(a.color)) {
                return Err(format!("step {i}: vertex {} clashes on {}", a.vertex, a.color));
            }
            pc.0[a.vertex] = Some(a.color);
        }
    }
    pc.0.iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| format!("vertex {v} never colored")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn k17() -> KParameter {
        KParameter::new(17).unwrap()
    }

    #[test]
    fn constraint_examples() {
        let c5 = cycle(5);
        let pc = PartialColoring::uncolored(5);
        assert!(constraints(&c5, &pc, 0, Mode::TwoDistance).is_empty());
        let mut pc = PartialColoring::uncolored(5);
        pc.0[1] = Some(1);
        pc.0[3] = Some(2);
        for v in [0, 2, 4] {
            assert_eq!(constraints(&c5, &pc, v, Mode::TwoDistance), BTreeSet::from([1, 2]));
        }
        let p3 = path(3);
        let pc = PartialColoring(vec![Some(1), None, Some(2)]);
        assert_eq!(constraints(&p3, &pc, 1, Mode::Injective), BTreeSet::new());
        assert_eq!(constraints(&p3, &pc, 1, Mode::TwoDistance), BTreeSet::from([1, 2]));
        let pc = PartialColoring(vec![None, Some(1), Some(2)]);
        assert_eq!(constraints(&p3, &pc, 0, Mode::Injective), BTreeSet::from([2]));
    }

    #[test]
    fn check_examples() {
        let c5 = cycle(5);
        assert!(check_coloring(&c5, &[0, 1, 2, 3, 4], None, Mode::TwoDistance).valid);
        assert!(!check_coloring(&c5, &[0, 1, 2, 3, 0], None, Mode::TwoDistance).valid);
        assert!(check_coloring(&path(2), &[7, 7], None, Mode::Injective).valid);
        let la = ListAssignment(vec![vec![7], vec![8]]);
        let bad = check_coloring(&path(2), &[7, 7], Some(&la), Mode::Injective);
        assert_eq!(bad.violations, vec![Violation::NotInList { vertex: 1, color: 7 }]);
    }

    #[test]
    fn star_17() {
        let g = star(17);
        let la = ListAssignment::uniform(18, 0..19);
        let out = color(&g, &la, k17(), Mode::TwoDistance).unwrap();
        assert!(check_coloring(&g, &out.coloring, Some(&la), Mode::TwoDistance).valid);
        assert_eq!(replay_trace(&g, &la, &out.trace).unwrap(), out.coloring);
    }

    #[test]
    fn five_cycle() {
        let g = cycle(5);
        let la = ListAssignment::uniform(5, 0..19);
        let out = color(&g, &la, k17(), Mode::TwoDistance).unwrap();
        let distinct: BTreeSet<Color> = out.coloring.iter().copied().collect();
        assert_eq!(distinct.len(), 5);
        assert!(out.trace.bound_breaches().is_empty());
    }

    #[test]
    fn short_lists_rejected() {
        let la = ListAssignment(vec![vec![0]; 3]);
        assert!(matches!(color(&cycle(3), &la, k17(), Mode::TwoDistance), Err(ColorError::BadInput(_))));
    }

    #[test]
    fn irreducible_graph_reported() {
        let g = petersen();
        let la = ListAssignment::uniform(10, 0..19);
        let err = color(&g, &la, k17(), Mode::TwoDistance).unwrap_err();
        assert_eq!(err.irreducible_subgraph().unwrap().n(), 10);
    }

    #[test]
    fn lists_json_round_trip() {
        let la = ListAssignment(vec![vec![1, 2], vec![3]]);
        assert_eq!(ListAssignment::from_json(&la.to_json(), 2).unwrap(), la);
        assert!(ListAssignment::from_json("{\"0\":[1]}", 2).is_err());
    }

    #[test]
    fn mode_parse() {
        assert_eq!("2distance".parse::<Mode>().unwrap(), Mode::TwoDistance);
        assert_eq!("injective".parse::<Mode>().unwrap(), Mode::Injective);
        assert!("x".parse::<Mode>().is_err());
    }
}
