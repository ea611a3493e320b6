//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqc_core::classify::{analyze_components, classify_vertices, support_graph};
use sqc_core::colorer::brooks::brooks_list_color;
use sqc_core::colorer::{check_coloring, color, color_with_first, Color, ListAssignment, Mode};
use sqc_core::configurations::{detect, detect_any, ConfigKind, KParameter};
use sqc_core::density::{euler_check, mad_bruteforce, mad_exact};
use sqc_core::discharging::{apply_rules, discharge};
use sqc_core::gen::{corpus_graph, gen_gadget, gen_sparse, gen_support_cactus, random_graph, GadgetKind, GenSpec};
use sqc_core::graph::named::{complete, cycle, hex_patch};
use sqc_core::oracle::chi2_exact;
use sqc_core::{Graph, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn random_lists(rng: &mut ChaCha8Rng, n: usize, size: usize, universe: usize) -> ListAssignment {
    let all: Vec<Color> = (0..universe as Color).collect();
    ListAssignment((0..n).map(|_| all.choose_multiple(rng, size).copied().collect()).collect())
}

fn is_forest(g: &Graph) -> bool {
    g.m() + g.components().len() == g.n()
}

fn square_and_chi2() -> Outcome {
    let c5 = cycle(5);
    if c5.square() != complete(5) {
        return Err("square(C5) is not K5".into());
    }
    match chi2_exact(&c5) {
        Ok(5) => Ok("square(C5) = K5, chi2 = 5".into()),
        other => Err(format!("chi2_exact(C5) = {other:?}")),
    }
}

fn mad_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut graphs: Vec<Graph> = (0..250)
        .map(|_| {
            let n = rng.gen_range(1..=10);
            let m = rng.gen_range(0..=n * (n - 1) / 2);
            random_graph(&mut rng, n, m, n)
        })
        .collect();
    let gadgets = GadgetKind::ALL.len();
    graphs.extend(GadgetKind::ALL.iter().map(|&k| gen_gadget(k, 17).unwrap().graph));
    for g in &graphs {
        let exact = mad_exact(g).map_err(|e| e.to_string())?;
        // brute force over subsets of non-leaf vertices keeps gadgets in reach
        let brute = mad_on_core(g)?;
        if exact.value != brute {
            return Err(format!("mismatch {} vs {} on {:?}", exact.value, brute, g.edges()));
        }
    }
    Ok(format!("{} random graphs and {gadgets} gadgets agree", graphs.len() - gadgets))
}

/// Pendant leaves never lie in a densest subgraph unless the graph is a
/// forest, so the brute force runs on the graph with leaves peeled away.
fn mad_on_core(g: &Graph) -> Result<Rational, String> {
    if g.n() <= 16 {
        return mad_bruteforce(g).map(|c| c.value).map_err(|e| e.to_string());
    }
    let sub = two_core(g);
    if sub.n() == 0 {
        return mad_exact(g).map(|c| c.value).map_err(|e| e.to_string());
    }
    if sub.n() > 20 {
        return Err(format!("core of {} vertices too large for brute force", sub.n()));
    }
    mad_bruteforce(&sub).map(|c| c.value).map_err(|e| e.to_string())
}

fn forest_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let two = Rational::from_int(2);
    let mut forests = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=30);
        let m = rng.gen_range(0..=n + 2);
        let g = random_graph(&mut rng, n, m, n);
        let below = mad_exact(&g).map_err(|e| e.to_string())?.value < two;
        if below != is_forest(&g) {
            return Err(format!("boundary fails on {:?}", g.edges()));
        }
        forests += usize::from(below);
    }
    Ok(format!("100 graphs, {forests} forests"))
}

fn euler_relation() -> Outcome {
    let mut count = 0;
    for rows in 1..=5 {
        for cols in 1..=5 {
            let g = hex_patch(rows, cols);
            let mad = mad_exact(&g).map_err(|e| e.to_string())?.value;
            if !euler_check(&mad, g.girth()).holds {
                return Err(format!("fails on {rows}x{cols} patch, mad {mad}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} hexagonal patches"))
}

fn conservation() -> Outcome {
    for seed in 0..1200 {
        let g = corpus_graph(seed, 25);
        let cls = classify_vertices(&g);
        let cs = apply_rules(&g, &cls);
        if cs.total() != Rational::from_int(2 * g.m() as i64) {
            return Err(format!("seed {seed}: total {} vs 2|E| = {}", cs.total(), 2 * g.m()));
        }
    }
    Ok("1200 graphs conserve charge".into())
}

/// The subgraph left after repeatedly deleting vertices of degree at most 1.
fn two_core(g: &Graph) -> Graph {
    let mut alive = vec![true; g.n()];
    let mut deg = g.degrees();
    while let Some(v) = (0..g.n()).find(|&v| alive[v] && deg[v] <= 1) {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    g.induced(&(0..g.n()).filter(|&v| alive[v]).collect::<Vec<_>>())
}

fn contrapositive() -> Outcome {
    let mut deficient = 0;
    let graphs = (0..1200).flat_map(|seed| {
        let g = corpus_graph(seed, 25);
        let core = two_core(&g);
        [(seed, g), (seed, core)]
    });
    for (seed, g) in graphs {
        if g.n() == 0 {
            continue;
        }
        let k = KParameter::for_graph(&g, None).map_err(|e| e.to_string())?;
        let cls = classify_vertices(&g);
        let h = support_graph(&g, &cls);
        let (_, report) = discharge(&g, &cls, &h);
        if !report.ok() {
            deficient += 1;
            if detect_any(&g, k).map_err(|e| e.to_string())?.is_none() {
                return Err(format!("seed {seed}: deficient and irreducible: {:?}", g.edges()));
            }
        }
    }
    Ok(format!("1200 graphs and their 2-cores, {deficient} deficient, all reducible"))
}

fn pot_bound() -> Outcome {
    let mut components = 0;
    for seed in 0..150 {
        let g = gen_support_cactus(seed, 17);
        let cls = classify_vertices(&g);
        let h = support_graph(&g, &cls);
        for c in analyze_components(&h, &cls) {
            if 2 * c.p < c.n {
                return Err(format!("seed {seed}: n = {}, p = {}", c.n, c.p));
            }
            components += 1;
        }
    }
    let lock = gen_gadget(GadgetKind::Lock, 17).unwrap().graph;
    let cls = classify_vertices(&lock);
    let comps = analyze_components(&support_graph(&lock, &cls), &cls);
    match comps.as_slice() {
        [c] if c.is_lock && c.n == 4 && c.p == 2 => Ok(format!("{components} cactus components, lock (4, 2)")),
        _ => Err(format!("lock components: {:?}", comps.iter().map(|c| (c.n, c.p)).collect::<Vec<_>>())),
    }
}

fn sparse_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < 100 {
        let n = rng.gen_range(40..=200);
        let delta = rng.gen_range(17..=22);
        seed += 1;
        if let Ok(g) = gen_sparse(&GenSpec::new(n, delta, seed)) {
            out.push(g);
        }
    }
    out
}

fn end_to_end(mode: Mode) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fallbacks = 0;
    let mut breaches = 0;
    for (i, g) in sparse_corpus().iter().enumerate() {
        let delta = g.max_degree();
        let k = KParameter::for_graph(g, None).map_err(|e| e.to_string())?;
        let la = random_lists(&mut rng, g.n(), mode.min_list_size(delta), 3 * delta);
        let out = color(g, &la, k, mode).map_err(|e| format!("instance {i}: {e}"))?;
        let check = check_coloring(g, &out.coloring, Some(&la), mode);
        if !check.valid {
            return Err(format!("instance {i}: {:?}", check.violations));
        }
        if mode == Mode::Injective {
            let bad = out.trace.uncolored_neighbor_assignments();
            if !bad.is_empty() {
                return Err(format!("instance {i}: no colored neighbor for {bad:?}"));
            }
        }
        fallbacks += out.trace.fallback_steps();
        breaches += out.trace.bound_breaches().len();
    }
    Ok(format!("100 instances colored ({fallbacks} fallback steps, {breaches} bound breaches)"))
}

fn reduction_bounds() -> Outcome {
    let kinds = [
        (GadgetKind::C1, ConfigKind::C1),
        (GadgetKind::C2, ConfigKind::C2),
        (GadgetKind::C3, ConfigKind::C3),
        (GadgetKind::C4, ConfigKind::C4),
        (GadgetKind::C5, ConfigKind::C5),
        (GadgetKind::C6, ConfigKind::C6),
        (GadgetKind::C7, ConfigKind::C7),
        (GadgetKind::C8, ConfigKind::C8),
        (GadgetKind::C9, ConfigKind::C9),
        (GadgetKind::C10, ConfigKind::C10),
    ];
    let k = KParameter::new(17).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut measured = 0;
    for (gk, ck) in kinds {
        let gad = gen_gadget(gk, 17).unwrap();
        let want: Vec<usize> = ck.role_names().iter().map(|r| gad.role(r)).collect();
        let m = detect(&gad.graph, k, ck)
            .map_err(|e| e.to_string())?
            .into_iter()
            .find(|m| m.ids() == want)
            .ok_or_else(|| format!("{ck} gadget match missing"))?;
        for mode in [Mode::TwoDistance, Mode::Injective] {
            for _ in 0..5 {
                let la = random_lists(&mut rng, gad.graph.n(), mode.min_list_size(17), 51);
                let out = color_with_first(&gad.graph, &la, k, mode, Some(m.clone())).map_err(|e| e.to_string())?;
                let step = &out.trace.steps[0];
                if step.fallback {
                    return Err(format!("{ck} ({mode}): prescribed order got stuck"));
                }
                for a in &step.assignments {
                    let Some(b) = a.bound else {
                        return Err(format!("{ck}: vertex {} has no stated bound", a.vertex));
                    };
                    if a.constraints > b {
                        return Err(format!("{ck} ({mode}): vertex {} has {} > {b} constraints", a.vertex, a.constraints));
                    }
                    measured += 1;
                }
            }
        }
    }
    Ok(format!("{measured} measured assignments within bound"))
}

fn brooks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 500 {
        let n = rng.gen_range(3..=10);
        let m = rng.gen_range(n..=n * (n - 1) / 2);
        let g = random_graph(&mut rng, n, m, n);
        if !g.is_two_connected() || g.is_clique() || (g.is_cycle() && n % 2 == 1) {
            continue;
        }
        let universe = rng.gen_range(g.max_degree()..=2 * g.max_degree());
        let lists: Vec<Vec<Color>> = (0..n)
            .map(|v| {
                let all: Vec<Color> = (0..universe as Color).collect();
                all.choose_multiple(&mut rng, g.degree(v)).copied().collect()
            })
            .collect();
        let c = brooks_list_color(&g, &lists).map_err(|e| format!("{e} on {:?}", g.edges()))?;
        let ok = (0..n).all(|v| lists[v].contains(&c[v])) && g.edges().iter().all(|&(a, b)| c[a] != c[b]);
        if !ok {
            return Err(format!("improper coloring on {:?}", g.edges()));
        }
        done += 1;
    }
    Ok("500 graphs list-colored from degree-size lists".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 square and chi2 of C5", square_and_chi2),
        ("2 mad oracle equivalence", mad_oracle),
        ("3 forest boundary", forest_boundary),
        ("4 Euler relation on hexagonal patches", euler_relation),
        ("5 discharging conservation", conservation),
        ("6 contrapositive soundness", contrapositive),
        ("7 pot bound on structured components", pot_bound),
        ("8 end-to-end 2-distance coloring", || end_to_end(Mode::TwoDistance)),
        ("9 end-to-end injective coloring", || end_to_end(Mode::Injective)),
        ("10 per-reduction constraint bounds", reduction_bounds),
        ("11 Brooks procedure", brooks),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
