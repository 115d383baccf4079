use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use treeaug_core::gen::{grid_instance, random_instance, random_planar_bfs, two_arm_instance, with_random_weights};
use treeaug_core::oracle::solve_reference;
use treeaug_core::{Instance, Weight};

use crate::solve::{ratio, run_algorithm, Algo, SolveParams};

pub const SUITES: &[&str] = &["half", "weighted", "twoarm", "twdp", "ptas", "all"];

/// One matrix cell: a generated instance and a solver.
#[derive(Clone, Debug)]
pub struct Row {
    pub suite: &'static str,
    pub seed: u64,
    pub instance: String,
    pub nodes: usize,
    pub edges: usize,
    pub algorithm: String,
    pub value: Result<Weight, String>,
    pub optimum: Option<Weight>,
    pub elapsed_ms: f64,
}

impl Row {
    pub fn ratio(&self) -> Option<Weight> {
        match (&self.value, self.optimum) {
            (Ok(v), Some(o)) => Some(ratio(*v, o)),
            _ => None,
        }
    }
}

struct Cell {
    suite: &'static str,
    seed: u64,
    label: String,
    inst: Instance,
    params: SolveParams,
}

fn cells(suite: &'static str, seeds: u64) -> Vec<Cell> {
    let mut out = Vec::new();
    for seed in 0..seeds {
        let mut push = |label: String, inst: Instance, params: SolveParams| {
            out.push(Cell {
                suite,
                seed,
                label,
                inst,
                params,
            })
        };
        match suite {
            "half" => {
                let n = 6 + (seed % 5) as usize;
                push(format!("random n={n} p=0.3"), random_instance(n, 0.3, seed), SolveParams::new(Algo::Half));
            }
            "weighted" => {
                let n = 6 + (seed % 5) as usize;
                let inst = with_random_weights(&random_instance(n, 0.3, seed), seed);
                push(format!("weighted n={n} p=0.3"), inst.clone(), SolveParams::new(Algo::Half));
                push(format!("weighted n={n} p=0.3"), inst, SolveParams::new(Algo::Twdp));
            }
            "twoarm" => {
                let (l, r) = (2 + (seed % 5) as usize, 2 + (seed / 5 % 5) as usize);
                push(
                    format!("twoarm {l}+{r} cross=10"),
                    two_arm_instance(l, r, 10, 0.15, seed),
                    SolveParams::new(Algo::Twoarm),
                );
            }
            "twdp" => {
                let n = 7 + (seed % 4) as usize;
                push(format!("random n={n} p=0.3"), random_instance(n, 0.3, seed), SolveParams::new(Algo::Twdp));
            }
            "ptas" => {
                let (rows, cols) = [(3, 3), (3, 4), (4, 4)][(seed % 3) as usize];
                let mut params = SolveParams::new(Algo::Ptas);
                params.d = 3;
                let inst = if seed < 3 {
                    grid_instance(rows, cols)
                } else {
                    random_planar_bfs(rows, cols, 0.7, 0.3, seed)
                };
                push(format!("planar {rows}x{cols} d=3"), inst, params);
            }
            _ => unreachable!("suite names are checked by the caller"),
        }
    }
    out
}

/// Runs a suite over seeds `0..seeds`. Rows come back in a fixed order.
pub fn run_suite(name: &str, seeds: u64) -> Result<Vec<Row>, String> {
    let names: Vec<&'static str> = match name {
        "all" => SUITES.iter().copied().filter(|&s| s != "all").collect(),
        other => match SUITES.iter().find(|&&s| s == other) {
            Some(&s) => vec![s],
            None => return Err(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))),
        },
    };
    let all: Vec<Cell> = names.into_iter().flat_map(|s| cells(s, seeds)).collect();
    log::info!("running {} benchmark cells", all.len());
    Ok(all
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let value = run_algorithm(&c.inst, &c.params)
                .map(|(_, r)| r.value)
                .map_err(|e| e.to_string());
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let optimum = solve_reference(&c.inst).ok().map(|(_, r)| r.value);
            Row {
                suite: c.suite,
                seed: c.seed,
                instance: c.label.clone(),
                nodes: c.inst.n(),
                edges: c.inst.edges().len(),
                algorithm: c.params.algo.name().to_string(),
                value,
                optimum,
                elapsed_ms,
            }
        })
        .collect())
}

/// Markdown table plus a per-suite line with the smallest ratio.
pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    out.push_str("| suite | seed | instance | nodes | edges | algorithm | value | optimum | ratio | ms |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let value = match &r.value {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let opt = r.optimum.map_or("-".to_string(), |o| o.to_string());
        let ratio = r.ratio().map_or("-".to_string(), |x| format!("{:.4}", x.as_f64()));
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {:.2} |",
            r.suite, r.seed, r.instance, r.nodes, r.edges, r.algorithm, value, opt, ratio, r.elapsed_ms
        );
    }
    out.push('\n');
    let mut suites: Vec<(&str, &str)> = rows.iter().map(|r| (r.suite, r.algorithm.as_str())).collect();
    suites.dedup();
    suites.sort();
    suites.dedup();
    for (s, a) in suites {
        let these: Vec<&Row> = rows.iter().filter(|r| r.suite == s && r.algorithm == a).collect();
        let min = these.iter().filter_map(|r| r.ratio()).min();
        let failures = these.iter().filter(|r| r.value.is_err()).count();
        let _ = writeln!(
            out,
            "- {s}/{a}: {} rows, min ratio vs optimum {}, {failures} failures",
            these.len(),
            min.map_or("-".to_string(), |m| format!("{m} ({:.4})", m.as_f64()))
        );
    }
    out
}
