//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! when any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fcc_cli::bench::instance_files;
use fcc_cli::format::{parse_instance, parse_instance_str, write_instance};
use fcc_cli::generate::{generate, Family};
use fcc_cli::solve::{solve, Algo, SolveOptions};
use fcc_core::bip::{self, Program, Relation};
use fcc_core::decomp::{
    dfs_forest, exact_forest, exact_treedepth, is_vertex_cover, min_vertex_cover, to_nice,
    tree_decomposition, treedepth_forest, TreeDecompositionMode, TreedepthMode,
};
use fcc_core::oracle::{brute_force_optimum, find_nice_optimum, OracleConfig};
use fcc_core::solver::td::{reduce_by_types, solve_td, TdConfig};
use fcc_core::{
    clustering_cost, cost_from_pair_counts, is_fair, max_cluster_size_bound, Clustering,
    ColoredInstance, Cost, Graph,
};

const FIG1_TIME_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(30 * 60);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn corpus() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn oracle(inst: &ColoredInstance) -> Cost {
    brute_force_optimum(inst, &OracleConfig::default())
        .expect("oracle applies")
        .cost
}

fn applicable(inst: &ColoredInstance) -> Vec<Algo> {
    let mut algos = vec![Algo::Vc, Algo::TwXp, Algo::Td];
    if inst.fairlet().size() <= 2 {
        algos.push(Algo::TwFpt2);
    }
    algos
}

/// First disagreement with the oracle: algorithm, its answer, the oracle's.
fn disagreement(inst: &ColoredInstance) -> Option<String> {
    let opt = oracle(inst);
    for algo in applicable(inst) {
        let r = solve(inst, &SolveOptions::new(algo));
        let ok = r.as_ref().is_ok_and(|r| {
            r.cost == Some(opt)
                && r.fair
                && r.clustering(inst.n())
                    .ok()
                    .flatten()
                    .is_some_and(|c| clustering_cost(inst, &c).ok() == Some(opt))
        });
        if !ok {
            let got = r.map_or_else(|e| e.to_string(), |r| format!("{:?}", r.cost));
            return Some(format!("{algo} gave {got}, oracle {opt}"));
        }
    }
    None
}

fn describe(inst: &ColoredInstance) -> String {
    let edges: Vec<String> = inst
        .graph()
        .edges()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect();
    format!(
        "n={} colors={:?} edges=[{}]",
        inst.n(),
        inst.colors(),
        edges.join(" ")
    )
}

// ---------------------------------------------------------------- graphs

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// One representative (the smallest edge mask) per isomorphism class.
fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let index = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let reps: BTreeSet<u32> = (0u32..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            perms
                .iter()
                .map(|img| {
                    img.iter()
                        .enumerate()
                        .filter(|&(b, _)| mask >> b & 1 == 1)
                        .fold(0u32, |acc, (_, &t)| acc | 1 << t)
                })
                .min()
                .unwrap()
        })
        .collect();
    reps.into_iter().map(|m| graph_from_mask(n, m)).collect()
}

/// Colorings with exactly `k` vertices of color 1 and the rest color 0.
fn colorings(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).map(|v| (m >> v & 1) as usize).collect())
        .collect()
}

fn small_sweep() -> Vec<ColoredInstance> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let graphs = nonisomorphic_graphs(n);
        let mut cs = Vec::new();
        if n % 2 == 0 {
            cs.extend(colorings(n, n / 2));
        }
        if n % 3 == 0 {
            cs.extend(colorings(n, n / 3));
        }
        for g in &graphs {
            for c in &cs {
                out.push(ColoredInstance::new(g.clone(), c.clone(), None).unwrap());
            }
        }
    }
    out
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, fairlets: &[&[usize]]) -> ColoredInstance {
    let fairlet = fairlets[rng.random_range(0..fairlets.len())];
    let size: usize = fairlet.iter().sum();
    let n = size * rng.random_range(1..=max_n / size);
    let family = match rng.random_range(0..4) {
        0 => Family::Tree,
        _ => Family::Gnp {
            p: rng.random_range(0..=10) as f64 / 10.0,
        },
    };
    generate(family, n, fairlet, rng.random()).unwrap()
}

// -------------------------------------------------------------- criteria

fn fig1_reproduction() -> Verdict {
    let fig = parse_instance(&corpus().join("fig1.fcc")).unwrap();
    let mono = ColoredInstance::new(fig.graph().clone(), vec![0; fig.n()], None).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut slowest = Duration::ZERO;
    for (label, inst, expect, algos) in [
        (
            "fair",
            &fig,
            9,
            vec![Algo::Oracle, Algo::Vc, Algo::TwXp, Algo::Td],
        ),
        (
            "monochrome",
            &mono,
            4,
            vec![Algo::Oracle, Algo::Vc, Algo::TwXp, Algo::Td, Algo::TwFpt2],
        ),
    ] {
        let mut got = Vec::new();
        for algo in algos {
            let start = Instant::now();
            let cost = solve(inst, &SolveOptions::new(algo))
                .ok()
                .and_then(|r| r.cost);
            let t = start.elapsed();
            slowest = slowest.max(t);
            pass &= cost == Some(expect) && t < FIG1_TIME_LIMIT;
            got.push(format!(
                "{algo}={}",
                cost.map_or("err".into(), |c| c.to_string())
            ));
        }
        parts.push(format!("{label} [{}] expected {expect}", got.join(" ")));
    }
    verdict(
        pass,
        format!(
            "{}; slowest {:.2}s (limit {}s)",
            parts.join("; "),
            slowest.as_secs_f64(),
            FIG1_TIME_LIMIT.as_secs()
        ),
    )
}

fn oracle_sweep(sweep: &[ColoredInstance]) -> Verdict {
    let start = Instant::now();
    let bad: Vec<String> = sweep
        .par_iter()
        .filter_map(|i| disagreement(i).map(|d| format!("{}: {d}", describe(i))))
        .collect();
    let t = start.elapsed();
    verdict(
        bad.is_empty() && t <= SWEEP_TIME_LIMIT,
        format!(
            "{} instances, {} disagreements, {:.1}s (limit {}s){}",
            sweep.len(),
            bad.len(),
            t.as_secs_f64(),
            SWEEP_TIME_LIMIT.as_secs(),
            bad.first()
                .map_or(String::new(), |b| format!("; first: {b}"))
        ),
    )
}

fn random_sweep() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let insts: Vec<ColoredInstance> = (0..500)
        .map(|_| random_instance(&mut rng, 8, &[&[1], &[1, 1], &[2, 1]]))
        .collect();
    let sizes: BTreeSet<usize> = insts.iter().map(|i| i.fairlet().size()).collect();
    let bad: Vec<String> = insts
        .par_iter()
        .filter_map(|i| disagreement(i).map(|d| format!("{}: {d}", describe(i))))
        .collect();
    verdict(
        bad.is_empty() && sizes.len() == 3,
        format!(
            "500 instances (fairlet sizes {sizes:?}), {} disagreements{}",
            bad.len(),
            bad.first()
                .map_or(String::new(), |b| format!("; first: {b}"))
        ),
    )
}

fn small_clusters_suffice(sweep: &[ColoredInstance]) -> Verdict {
    let bad: Vec<String> = sweep
        .par_iter()
        .filter_map(|i| {
            let tw = tree_decomposition(i.graph(), TreeDecompositionMode::exact())
                .unwrap()
                .width();
            let cap = max_cluster_size_bound(tw, i.fairlet().size());
            let cfg = OracleConfig::default().with_max_cluster_size(Some(cap));
            let capped = brute_force_optimum(i, &cfg).ok().map(|s| s.cost);
            let free = oracle(i);
            (capped != Some(free)).then(|| format!("{}: {capped:?} vs {free}", describe(i)))
        })
        .collect();
    verdict(
        bad.is_empty(),
        format!("{} instances, {} differ", sweep.len(), bad.len()),
    )
}

fn nice_optima() -> Verdict {
    let insts: Vec<ColoredInstance> = [2, 4, 6]
        .into_iter()
        .flat_map(|n| {
            let cs = colorings(n, n / 2);
            nonisomorphic_graphs(n).into_iter().flat_map(move |g| {
                cs.clone()
                    .into_iter()
                    .map(move |c| ColoredInstance::new(g.clone(), c, None).unwrap())
            })
        })
        .collect();
    let bad: Vec<String> = insts
        .par_iter()
        .filter_map(|i| {
            let opt = oracle(i);
            let nice = find_nice_optimum(i, &OracleConfig::default()).unwrap();
            let ok = nice.is_some_and(|c| clustering_cost(i, &c).ok() == Some(opt));
            (!ok).then(|| describe(i))
        })
        .collect();
    verdict(
        bad.is_empty(),
        format!(
            "{} instances (n = 2, 4, 6; odd n admits no (1,1) coloring), {} without a nice optimum",
            insts.len(),
            bad.len()
        ),
    )
}

/// Decision by the oracle restricted to clusters of at most `cap` vertices.
fn capped_decision(inst: &ColoredInstance, cap: usize, budget: i64) -> bool {
    if budget < 0 {
        return false;
    }
    let cfg = OracleConfig::default().with_max_cluster_size(Some(cap));
    brute_force_optimum(inst, &cfg).is_ok_and(|s| s.cost as i64 <= budget)
}

fn free_decision(inst: &ColoredInstance, budget: i64) -> bool {
    budget >= 0 && oracle(inst) as i64 <= budget
}

fn reduction_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases: Vec<(ColoredInstance, usize)> = (0..200)
        .map(|_| {
            let i = random_instance(&mut rng, 8, &[&[1], &[1, 1], &[2, 1]]);
            (i, rng.random_range(1..=3))
        })
        .collect();
    let results: Vec<(usize, bool, usize, Option<String>)> = cases
        .par_iter()
        .map(|(inst, gamma)| {
            let gamma = *gamma;
            let forest = treedepth_forest(inst.graph(), TreedepthMode::exact()).unwrap();
            let cfg = OracleConfig::default().with_max_cluster_size(Some(gamma));
            let opt = brute_force_optimum(inst, &cfg).ok().map(|s| s.cost as i64);
            let free = oracle(inst) as i64;
            let mut budgets: BTreeSet<i64> = [free - 1, free].into();
            if let Some(o) = opt {
                budgets.extend([o - 1, o]);
            }
            let mut restricted_bad = None;
            let mut free_bad = 0;
            let mut nontrivial = false;
            for &b in &budgets {
                if b < 0 {
                    continue;
                }
                let r = reduce_by_types(&inst.clone().with_budget(Some(b as u64)), &forest, gamma);
                nontrivial |= !r.removed.is_empty();
                let reduced = inst.with_graph(r.graph.clone());
                let b2 = r.budget.unwrap();
                let lhs = capped_decision(inst, gamma, b);
                let rhs = !r.rejected() && capped_decision(&reduced, gamma, b2);
                if lhs != rhs && restricted_bad.is_none() {
                    restricted_bad = Some(format!(
                        "{} gamma={gamma} parents={:?} B={b}: {lhs} vs {rhs}",
                        describe(inst),
                        forest.parents()
                    ));
                }
                if free_decision(inst, b) != (!r.rejected() && free_decision(&reduced, b2)) {
                    free_bad += 1;
                }
            }
            (budgets.len(), nontrivial, free_bad, restricted_bad)
        })
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let nontrivial = results.iter().filter(|r| r.1).count();
    let free_bad: usize = results.iter().map(|r| r.2).sum();
    let bad: Vec<&String> = results.iter().filter_map(|r| r.3.as_ref()).collect();
    verdict(
        bad.is_empty(),
        format!(
            "200 instances, {checks} budgets, {nontrivial} with removed edges, {} mismatches \
             under the cluster-size cap (unrestricted oracle, informational: {free_bad} mismatches){}",
            bad.len(),
            bad.first().map_or(String::new(), |b| format!("; first: {b}"))
        ),
    )
}

fn random_connected(rng: &mut ChaCha8Rng, s: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (1..s).map(|v| (rng.random_range(0..v), v)).collect();
    for u in 0..s {
        for v in u + 1..s {
            if !edges.contains(&(u, v)) && rng.random_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn random_program(rng: &mut ChaCha8Rng) -> Program {
    let n = rng.random_range(1..=6);
    let mut p = Program::new();
    for _ in 0..n {
        p.add_variable(rng.random_range(0..=5), rng.random_range(-3..=3));
    }
    for _ in 0..rng.random_range(0..=4) {
        let terms = (0..n)
            .map(|v| (v, rng.random_range(-3i64..=3)))
            .filter(|&(_, a)| a != 0)
            .collect();
        let rel = [Relation::Eq, Relation::Le, Relation::Ge][rng.random_range(0..3)];
        p.add_constraint(terms, rel, rng.random_range(-6..=12));
    }
    p
}

fn grid_optimum(p: &Program) -> Option<i64> {
    let n = p.num_variables();
    let mut x = vec![0i64; n];
    let mut best: Option<i64> = None;
    loop {
        if p.is_feasible(&x) {
            let o = p.objective_value(&x);
            best = Some(best.map_or(o, |b| b.min(o)));
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if x[i] < p.upper(i) {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn program_pipeline() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fairlets: [&[usize]; 4] = [&[1], &[1, 1], &[2, 1], &[1, 1, 1]];
    let insts: Vec<ColoredInstance> = (0..100)
        .map(|_| {
            let fairlet = fairlets[rng.random_range(0..fairlets.len())];
            let size: usize = fairlet.iter().sum();
            let n = size * rng.random_range(1..=10 / size);
            let mut edges = Vec::new();
            let mut base = 0;
            while base < n {
                let s = rng.random_range(1..=4).min(n - base);
                edges.extend(
                    random_connected(&mut rng, s)
                        .into_iter()
                        .map(|(u, v)| (u + base, v + base)),
                );
                base += s;
            }
            let mut colors: Vec<usize> = fairlet
                .iter()
                .enumerate()
                .flat_map(|(c, &k)| std::iter::repeat_n(c, k * n / size))
                .collect();
            rand::seq::SliceRandom::shuffle(colors.as_mut_slice(), &mut rng);
            ColoredInstance::from_edges(n, edges, colors).unwrap()
        })
        .collect();
    let largest = insts
        .iter()
        .flat_map(|i| i.graph().components())
        .map(|c| c.len())
        .max()
        .unwrap();
    let bad: Vec<String> = insts
        .par_iter()
        .filter_map(|i| {
            let opt = oracle(i);
            let got = solve_td(i, &TdConfig::default());
            let ok = got
                .as_ref()
                .is_ok_and(|s| s.cost == opt && is_fair(&s.clustering, &i.fairlet(), i.colors()));
            (!ok).then(|| format!("{}: {:?} vs {opt}", describe(i), got.map(|s| s.cost)))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let programs: Vec<Program> = (0..200).map(|_| random_program(&mut rng)).collect();
    let feasible = programs
        .iter()
        .filter(|p| grid_optimum(p).is_some())
        .count();
    let bip_bad = programs
        .iter()
        .filter(|p| {
            let s = bip::solve(p);
            s.as_ref().map(|s| s.objective) != grid_optimum(p)
                || s.is_some_and(|s| !p.is_feasible(&s.values))
        })
        .count();
    verdict(
        bad.is_empty() && bip_bad == 0 && largest <= 4,
        format!(
            "100 instances (largest component {largest}), {} pipeline mismatches; \
             200 programs ({feasible} feasible), {bip_bad} solver mismatches{}",
            bad.len(),
            bad.first()
                .map_or(String::new(), |b| format!("; first: {b}"))
        ),
    )
}

fn structural_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut identity_bad = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=12);
        let g = generate(
            Family::Gnp {
                p: rng.random_range(0.0..=1.0),
            },
            n,
            &[1],
            rng.random(),
        )
        .unwrap();
        let k = rng.random_range(1..=n);
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        let c = Clustering::from_labels(&labels);
        if clustering_cost(&g, &c).unwrap() != cost_from_pair_counts(&g, &c).unwrap() {
            identity_bad += 1;
        }
    }

    let graphs: Vec<Graph> = (0..500)
        .map(|_| {
            let n = rng.random_range(1..=10);
            let p = rng.random_range(0.0..=1.0);
            let family = match rng.random_range(0..3) {
                0 => Family::Tree,
                1 => Family::Ktree {
                    k: rng.random_range(1..=3),
                },
                _ => Family::Gnp { p },
            };
            generate(family, n, &[1], rng.random())
                .unwrap()
                .graph()
                .clone()
        })
        .collect();
    let decomp_bad = graphs
        .par_iter()
        .filter(|g| decomposition_fault(g).is_some())
        .count();
    let first_fault = graphs.iter().find_map(decomposition_fault);

    let files = instance_files(&corpus()).unwrap();
    let roundtrip_bad = files
        .iter()
        .filter(|f| {
            let a = parse_instance(f).unwrap();
            let text = write_instance(&a);
            let b = parse_instance_str(&text).unwrap();
            a != b || write_instance(&b) != text
        })
        .count();
    verdict(
        identity_bad == 0 && decomp_bad == 0 && roundtrip_bad == 0 && !files.is_empty(),
        format!(
            "pair-count identity {identity_bad}/1000 failures; decomposition invariants \
             {decomp_bad}/500 failures{}; corpus round-trip {roundtrip_bad}/{} failures",
            first_fault.map_or(String::new(), |f| format!(" ({f})")),
            files.len()
        ),
    )
}

fn decomposition_fault(g: &Graph) -> Option<String> {
    let check = || -> Result<(), String> {
        let e = |x: fcc_core::Error| x.to_string();
        let exact = tree_decomposition(g, TreeDecompositionMode::exact()).map_err(e)?;
        let heur = tree_decomposition(g, TreeDecompositionMode::Heuristic).map_err(e)?;
        if exact.width() > heur.width() {
            return Err("exact width above heuristic".into());
        }
        for td in [&exact, &heur] {
            let nice = to_nice(td, g).map_err(e)?;
            nice.validate(g).map_err(e)?;
            if nice.width() != td.width() {
                return Err("nice decomposition changed the width".into());
            }
        }
        let f = exact_forest(g, 20).map_err(e)?;
        f.validate(g).map_err(e)?;
        let d = dfs_forest(g);
        d.validate(g).map_err(e)?;
        if f.height() != exact_treedepth(g, 20).map_err(e)? || f.height() > d.height() {
            return Err("treedepth heights inconsistent".into());
        }
        if exact.width() + 1 > f.height() {
            return Err("treewidth exceeds treedepth minus one".into());
        }
        let vc = min_vertex_cover(g);
        if !is_vertex_cover(g, &vc.cover) || vc.cover.len() != vc.k {
            return Err("vertex cover invalid".into());
        }
        let smaller = (0u32..1 << g.n()).any(|m| {
            (m.count_ones() as usize) < vc.k
                && g.edges().all(|(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1)
        });
        if smaller {
            return Err("vertex cover not minimum".into());
        }
        Ok(())
    };
    check().err()
}

fn main() {
    let start = Instant::now();
    let sweep = small_sweep();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("example graph reproduction", Box::new(fig1_reproduction)),
        (
            "oracle equivalence, all graphs n <= 6",
            Box::new(|| oracle_sweep(&sweep)),
        ),
        ("randomized sweep", Box::new(random_sweep)),
        (
            "cluster-size bound",
            Box::new(|| small_clusters_suffice(&sweep)),
        ),
        ("nice optima", Box::new(nice_optima)),
        (
            "treedepth reduction equivalence",
            Box::new(reduction_equivalence),
        ),
        ("integer program pipeline", Box::new(program_pipeline)),
        ("structural suites", Box::new(structural_suites)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        failed += usize::from(!v.pass);
        println!(
            "{} {}. {name}: {} [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
