//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use tempfile::TempDir;
use treeaug_core::approx::{canonical_cross_orientations, half_approx};
use treeaug_core::format::{check_solution, InstanceDoc, SolutionDoc};
use treeaug_core::gen::{
    grid_instance, min_set_cover, random_instance, random_planar_bfs, reduce_set_cover, search_tightness_family,
    two_arm_instance, with_random_weights, SetCoverInstance,
};
use treeaug_core::oracle::{solve_exact, solve_exact_by_orders, solve_reference, DEFAULT_EDGE_LIMIT, DEFAULT_STATE_LIMIT};
use treeaug_core::ptas::{check_bfs_tree, guarantee, solve_ptas};
use treeaug_core::twdp::{heuristic_decomposition, solve_twdp, DEFAULT_WIDTH_CAP};
use treeaug_core::twoarm::{recognize_two_arm, solve_two_arm};
use treeaug_core::{complete_orientation, coverage, is_acyclic, Instance, Orientation, Weight};
use treeaug_cli::solve::{run_algorithm, Algo, SolveParams};

struct Verdict {
    failures: Vec<String>,
    detail: String,
}

fn verdict(failures: Vec<String>, detail: impl Into<String>) -> Verdict {
    Verdict {
        failures,
        detail: detail.into(),
    }
}

const MAX_EDGES: usize = 18;

/// Seeded random instances with 1..=18 edges.
fn random_pool(count: usize, weighted: bool, keep: impl Fn(&Instance) -> bool) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let n = 5 + (seed % 8) as usize;
        let p = [0.15, 0.25, 0.35, 0.45][(seed / 8 % 4) as usize];
        let mut inst = random_instance(n, p, seed);
        if weighted {
            inst = with_random_weights(&inst, seed ^ 0x5eed);
        }
        if (1..=MAX_EDGES).contains(&inst.edges().len()) && keep(&inst) {
            out.push(inst);
        }
        seed += 1;
    }
    out
}

fn two_arm_pool(count: usize, weighted: bool) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let l = 1 + (seed % 7) as usize;
        let r = (seed / 7 % 8) as usize;
        let cross = 2 + (seed % 11) as usize;
        let p_back = [0.0, 0.1, 0.2, 0.3][(seed % 4) as usize];
        let mut inst = two_arm_instance(l, r, cross, p_back, seed);
        if weighted {
            inst = with_random_weights(&inst, seed ^ 0x5eed);
        }
        if inst.edges().len() <= MAX_EDGES {
            out.push(inst);
        }
        seed += 1;
    }
    out
}

fn width_pool(count: usize, weighted: bool) -> Vec<Instance> {
    random_pool(count, weighted, |i| heuristic_decomposition(i).width() <= 4)
}

fn optimum(inst: &Instance) -> Weight {
    solve_exact(inst, DEFAULT_EDGE_LIMIT).expect("pool instances fit the oracle").1.value
}

fn criterion_half(weighted: bool) -> Verdict {
    let pool = random_pool(1000, weighted, |_| true);
    let results: Vec<(Weight, Weight)> = pool
        .par_iter()
        .map(|inst| (half_approx(inst).unwrap().1.value, optimum(inst)))
        .collect();
    let failures = results
        .iter()
        .enumerate()
        .filter(|(_, (h, o))| *h * Weight::integer(2) < *o)
        .map(|(i, (h, o))| format!("instance {i}: half {h} < ½·{o}"))
        .collect();
    let worst = results
        .iter()
        .filter(|(_, o)| *o > Weight::ZERO)
        .map(|(h, o)| h.as_f64() / o.as_f64())
        .fold(f64::INFINITY, f64::min);
    verdict(failures, format!("{} instances, worst half/opt {worst:.4}", pool.len()))
}

fn criterion_canonical() -> Verdict {
    let failures: Vec<String> = (0..10_000u64)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 2 + (seed % 30) as usize;
            let p = [0.05, 0.15, 0.3, 0.6][(seed / 30 % 4) as usize];
            let inst = random_instance(n, p, seed);
            let (f, r) = canonical_cross_orientations(&inst);
            let ok = is_acyclic(&inst, &f) && is_acyclic(&inst, &r);
            (!ok).then(|| format!("seed {seed}"))
        })
        .collect();
    verdict(failures, "10000 instances, both orientations checked")
}

fn criterion_two_arm(weighted: bool) -> Verdict {
    let pool = two_arm_pool(1000, weighted);
    let failures: Vec<String> = pool
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let ta = recognize_two_arm(inst).expect("generator output is two-arm");
            let (o, got) = solve_two_arm(&ta).unwrap();
            let want = optimum(inst);
            (got.value != want || !is_acyclic(inst, &o)).then(|| format!("instance {i}: twoarm {} vs oracle {want}", got.value))
        })
        .collect();
    verdict(failures, format!("{} instances", pool.len()))
}

fn criterion_twdp(weighted: bool) -> Verdict {
    let pool = width_pool(1000, weighted);
    let failures: Vec<String> = pool
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let td = heuristic_decomposition(inst);
            let (o, got) = solve_twdp(inst, &td, DEFAULT_WIDTH_CAP).unwrap();
            let want = optimum(inst);
            (got.value != want || !is_acyclic(inst, &o)).then(|| format!("instance {i}: twdp {} vs oracle {want}", got.value))
        })
        .collect();
    verdict(failures, format!("{} instances with heuristic width ≤ 4", pool.len()))
}

fn planar_pool() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for rows in 1..=4 {
        for cols in 1..=4 {
            out.push((format!("grid {rows}x{cols}"), grid_instance(rows, cols)));
        }
    }
    let mut seed = 0u64;
    let mut random = 0;
    while random < 120 {
        let rows = 2 + (seed % 3) as usize;
        let cols = 2 + (seed / 3 % 3) as usize;
        let inst = random_planar_bfs(rows, cols, 0.7, 0.35, seed);
        if check_bfs_tree(&inst).is_ok() {
            out.push((format!("planar {rows}x{cols} seed {seed}"), inst));
            random += 1;
        }
        seed += 1;
    }
    out
}

fn criterion_ptas() -> Verdict {
    let pool = planar_pool();
    let failures: Vec<String> = pool
        .par_iter()
        .flat_map_iter(|(label, inst)| {
            let opt = solve_reference(inst).expect("small planar instances fit an oracle").1.value;
            let mut bad = Vec::new();
            for d in 2..=4 {
                match solve_ptas(inst, d, DEFAULT_WIDTH_CAP, true) {
                    Ok(out) => {
                        if out.best().report.value < guarantee(d) * opt {
                            bad.push(format!("{label} d={d}: {} < {}·{opt}", out.best().report.value, guarantee(d)));
                        }
                        for s in &out.shifts {
                            if !is_acyclic(inst, &s.orientation) {
                                bad.push(format!("{label} d={d} shift {}: cycle", s.k));
                            }
                        }
                    }
                    Err(e) => bad.push(format!("{label} d={d}: {e}")),
                }
            }
            bad
        })
        .collect();
    verdict(failures, format!("16 grids + {} random planar instances, d ∈ {{2,3,4}}", pool.len() - 16))
}

/// Set families of `m` nonempty subsets (repeats allowed) of `n` elements, one per
/// isomorphism class under element relabelling.
fn families(n: usize, m: usize) -> Vec<Vec<u32>> {
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut combo = Vec::new();
    fn rec(start: usize, m: usize, subsets: &[u32], combo: &mut Vec<u32>, all: &mut Vec<Vec<u32>>) {
        if combo.len() == m {
            all.push(combo.clone());
            return;
        }
        for i in start..subsets.len() {
            combo.push(subsets[i]);
            rec(i, m, subsets, combo, all);
            combo.pop();
        }
    }
    let mut all = Vec::new();
    rec(0, m, &subsets, &mut combo, &mut all);
    for fam in all {
        let canon = perms
            .iter()
            .map(|p| {
                let mut f: Vec<u32> = fam
                    .iter()
                    .map(|&s| (0..n).filter(|&x| s >> x & 1 == 1).fold(0, |acc, x| acc | 1 << p[x]))
                    .collect();
                f.sort_unstable();
                f
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_reduction() -> Verdict {
    let mut cases = Vec::new();
    for n in 1..=3usize {
        for m in 1..=3usize {
            for k in 1..=m.min(2) {
                if 1 + 5 * m + n * (k + 1) > 24 {
                    continue;
                }
                for fam in families(n, m) {
                    let sets: Vec<Vec<usize>> = fam.iter().map(|&s| (0..n).filter(|&x| s >> x & 1 == 1).collect()).collect();
                    cases.push(SetCoverInstance::new(n, sets, k).unwrap());
                }
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|sc| {
            let (inst, threshold) = reduce_set_cover(sc);
            let opt = solve_exact_by_orders(&inst, DEFAULT_STATE_LIMIT).expect("gadget fits the order oracle").1.value;
            let gadget_yes = opt >= Weight::integer(threshold as i64);
            let cover_yes = min_set_cover(sc).is_some_and(|c| c <= sc.budget);
            (gadget_yes != cover_yes).then(|| format!("{sc:?}: optimum {opt}, threshold {threshold}, cover {cover_yes}"))
        })
        .collect();
    verdict(failures, format!("{} set-cover instances", cases.len()))
}

fn criterion_tightness() -> Verdict {
    let mut failures = Vec::new();
    let mut detail = String::new();
    for max_n in [4, 6, 8, 10] {
        let t = search_tightness_family(max_n, 0);
        let r = t.ratio();
        // independent check of the optimum by enumeration
        if t.instance.edges().len() <= DEFAULT_EDGE_LIMIT && optimum(&t.instance) != t.optimum {
            failures.push(format!("max_n {max_n}: optimum disagrees with enumeration"));
        }
        if t.optimum > Weight::integer(2) * t.canonical {
            failures.push(format!("max_n {max_n}: ratio {r} above 2"));
        }
        if max_n == 10 && Weight::integer(2) * t.optimum < Weight::integer(3) * t.canonical {
            failures.push(format!("max_n 10: best ratio {r} below 3/2"));
        }
        detail.push_str(&format!("n≤{max_n}: {r} "));
    }
    verdict(failures, detail.trim_end().to_string())
}

fn criterion_weighted() -> Verdict {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (name, v) in [
        ("half", criterion_half(true)),
        ("twoarm", criterion_two_arm(true)),
        ("twdp", criterion_twdp(true)),
    ] {
        failures.extend(v.failures.into_iter().map(|f| format!("{name}: {f}")));
        parts.push(format!("{name}: {}", v.detail));
    }
    // scaling by 7
    let seven = Weight::integer(7);
    let mut jobs: Vec<(Algo, Instance)> = Vec::new();
    for inst in random_pool(60, true, |_| true) {
        jobs.push((Algo::Half, inst.clone()));
        jobs.push((Algo::Exact, inst.clone()));
        if heuristic_decomposition(&inst).width() <= 4 {
            jobs.push((Algo::Twdp, inst));
        }
    }
    for inst in two_arm_pool(60, true) {
        jobs.push((Algo::Twoarm, inst));
    }
    for (r, c) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
        jobs.push((Algo::Ptas, with_random_weights(&grid_instance(r, c), (r * 10 + c) as u64)));
    }
    let scaled_failures: Vec<String> = jobs
        .par_iter()
        .enumerate()
        .filter_map(|(i, (algo, inst))| {
            let mut params = SolveParams::new(*algo);
            params.d = 3;
            let big = inst.scaled(seven).unwrap();
            let (o, base) = run_algorithm(inst, &params).unwrap();
            let (_, scaled) = run_algorithm(&big, &params).unwrap();
            let witness = coverage(&big, &o);
            let ok = scaled.value == base.value * seven
                && witness.as_ref().is_ok_and(|w| w.value == base.value * seven);
            (!ok).then(|| format!("scaling job {i} ({}): {} vs 7·{}", algo.name(), scaled.value, base.value))
        })
        .collect();
    parts.push(format!("×7 scaling over {} solver runs", jobs.len()));
    failures.extend(scaled_failures);
    verdict(failures, parts.join("; "))
}

fn verify_via_cli(dir: &TempDir, tag: usize, inst: &Instance, doc: &SolutionDoc) -> i32 {
    let ip = dir.path().join(format!("i{tag}.json"));
    let sp = dir.path().join(format!("s{tag}.json"));
    std::fs::write(&ip, InstanceDoc::from_instance(inst).to_json()).unwrap();
    std::fs::write(&sp, doc.to_json()).unwrap();
    let cli = <treeaug_cli::Cli as clap::Parser>::parse_from([
        "treeaug",
        "verify",
        ip.to_str().unwrap(),
        sp.to_str().unwrap(),
    ]);
    treeaug_cli::run(cli, &mut std::io::sink(), &mut std::io::sink())
}

fn criterion_round_trip() -> Verdict {
    let dir = TempDir::new().unwrap();
    let mut jobs: Vec<(Algo, usize, Instance)> = Vec::new();
    for weighted in [false, true] {
        for inst in random_pool(1000, weighted, |_| true) {
            jobs.push((Algo::Half, 0, inst.clone()));
            jobs.push((Algo::Exact, 0, inst));
        }
        jobs.extend(width_pool(1000, weighted).into_iter().map(|i| (Algo::Twdp, 0, i)));
        jobs.extend(two_arm_pool(1000, weighted).into_iter().map(|i| (Algo::Twoarm, 0, i)));
    }
    for (_, inst) in planar_pool() {
        for d in 2..=4 {
            jobs.push((Algo::Ptas, d, inst.clone()));
        }
    }
    let solved: Vec<(Instance, SolutionDoc)> = jobs
        .par_iter()
        .map(|(algo, d, inst)| {
            let mut params = SolveParams::new(*algo);
            params.d = (*d).max(2);
            let (o, r) = run_algorithm(inst, &params).unwrap();
            (inst.clone(), SolutionDoc::new(inst, &o, &r))
        })
        .collect();
    let mut failures = Vec::new();
    for (i, (inst, doc)) in solved.iter().enumerate() {
        let reread = SolutionDoc::from_json(&doc.to_json()).unwrap();
        if check_solution(inst, &reread).is_err() || verify_via_cli(&dir, i, inst, &reread) != 0 {
            failures.push(format!("solution {i} rejected"));
        }
    }
    // mutations: flip one arc in 100 solutions that have arcs
    let mut mutated = 0;
    let mut rejected = 0;
    let candidates: Vec<&(Instance, SolutionDoc)> = solved.iter().filter(|(_, d)| !d.oriented.is_empty()).collect();
    let stride = candidates.len() / 100;
    for (i, (inst, doc)) in candidates.iter().step_by(stride).take(100).enumerate() {
        let mut bad = doc.clone();
        let j = (i * 7919) % bad.oriented.len();
        bad.oriented[j].swap(0, 1);
        mutated += 1;
        let truth = truth_of(inst, &bad);
        let code = verify_via_cli(&dir, 100_000 + i, inst, &bad);
        if (code == 0) != truth {
            failures.push(format!("mutation {i}: verify exit {code}, expected accept={truth}"));
        }
        if code != 0 {
            rejected += 1;
        }
    }
    verdict(
        failures,
        format!("{} solutions verified; {mutated} mutations, {rejected} rejected, all as expected", solved.len()),
    )
}

/// Whether a solution document is feasible and claims exactly what it covers,
/// computed without the verifier.
fn truth_of(inst: &Instance, doc: &SolutionDoc) -> bool {
    let mut o = Orientation::for_instance(inst);
    for [a, b] in &doc.oriented {
        let (a, b) = (inst.index_of(a).unwrap(), inst.index_of(b).unwrap());
        let e = inst
            .edges()
            .iter()
            .position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
            .unwrap();
        o.set_from(inst, e, a);
    }
    let Ok(full) = complete_orientation(inst, &o) else {
        return false;
    };
    if !is_acyclic(inst, &full) {
        return false;
    }
    let report = coverage(inst, &full).unwrap();
    let mut covered: Vec<String> = report.covered.iter().map(|&v| inst.name(v).to_string()).collect();
    covered.sort();
    report.value == doc.value && covered == doc.covered
}

fn main() {
    type Criterion = (u8, &'static str, Duration, fn() -> Verdict);
    let criteria: Vec<Criterion> = vec![
        (1, "approximation bound", Duration::from_secs(120), || criterion_half(false)),
        (2, "canonical acyclicity", Duration::from_secs(120), criterion_canonical),
        (3, "two-arm exactness", Duration::from_secs(120), || criterion_two_arm(false)),
        (4, "treewidth DP exactness", Duration::from_secs(300), || criterion_twdp(false)),
        (5, "PTAS bound", Duration::from_secs(300), criterion_ptas),
        (6, "reduction fidelity", Duration::from_secs(300), criterion_reduction),
        (7, "tightness direction", Duration::from_secs(300), criterion_tightness),
        (8, "weighted corollaries", Duration::from_secs(540), criterion_weighted),
        (9, "round-trip integrity", Duration::from_secs(300), criterion_round_trip),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let mut failures = v.failures;
        if elapsed > limit {
            failures.push(format!("took {elapsed:.1?}, limit {limit:?}"));
        }
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} [{name}]: {status} ({}; {elapsed:.2?})", v.detail);
        for f in failures.iter().take(5) {
            println!("    {f}");
        }
        if !failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
