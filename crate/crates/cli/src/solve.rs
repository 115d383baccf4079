use std::time::Instant;

use serde::Serialize;
use treeaug_core::approx::half_approx;
use treeaug_core::oracle::{solve_exact, upper_bound, DEFAULT_EDGE_LIMIT};
use treeaug_core::ptas::{solve_ptas, DEFAULT_D};
use treeaug_core::twdp::{heuristic_decomposition, solve_twdp, TreeDecomposition, DEFAULT_WIDTH_CAP};
use treeaug_core::twoarm::{recognize_two_arm, solve_two_arm};
use treeaug_core::{coverage, is_acyclic, CoverageReport, Error, Instance, Orientation, Result, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    Half,
    Exact,
    Twdp,
    Ptas,
    Twoarm,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Half => "half",
            Algo::Exact => "exact",
            Algo::Twdp => "twdp",
            Algo::Ptas => "ptas",
            Algo::Twoarm => "twoarm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveParams {
    pub algo: Algo,
    pub d: usize,
    pub width_cap: usize,
    pub td: Option<TreeDecomposition>,
    pub embedding_required: bool,
    pub edge_limit: usize,
}

impl SolveParams {
    pub fn new(algo: Algo) -> SolveParams {
        SolveParams {
            algo,
            d: DEFAULT_D,
            width_cap: DEFAULT_WIDTH_CAP,
            td: None,
            embedding_required: false,
            edge_limit: DEFAULT_EDGE_LIMIT,
        }
    }
}

/// Runs the chosen solver and returns its total orientation.
pub fn run_algorithm(inst: &Instance, params: &SolveParams) -> Result<(Orientation, CoverageReport)> {
    match params.algo {
        Algo::Half => half_approx(inst),
        Algo::Exact => solve_exact(inst, params.edge_limit),
        Algo::Twdp => {
            let td = match &params.td {
                Some(td) => td.clone(),
                None => heuristic_decomposition(inst),
            };
            solve_twdp(inst, &td, params.width_cap)
        }
        Algo::Ptas => {
            let out = solve_ptas(inst, params.d, params.width_cap, params.embedding_required)?;
            let best = out.best();
            Ok((best.orientation.clone(), best.report.clone()))
        }
        Algo::Twoarm => {
            let ta = recognize_two_arm(inst).map_err(|e| Error::NotTwoArm(e.0))?;
            solve_two_arm(&ta)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub value: Weight,
    pub covered: Vec<String>,
    pub upper_bound: Weight,
    pub ratio_vs_bound: Weight,
    pub elapsed_ms: f64,
    pub acyclic_certified: bool,
}

pub fn ratio(a: Weight, b: Weight) -> Weight {
    if b == Weight::ZERO {
        return Weight::ONE;
    }
    let r = a.ratio() / b.ratio();
    Weight::new(*r.numer(), *r.denom())
}

/// Solves, then recomputes feasibility and value from scratch. Fails with
/// [`Error::Uncertified`] if the solver's output does not hold up.
pub fn solve_certified(inst: &Instance, params: &SolveParams) -> Result<(Orientation, CoverageReport, SolveReport)> {
    let start = Instant::now();
    let (o, report) = run_algorithm(inst, params)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    log::debug!("{} finished in {elapsed_ms:.2} ms with value {}", params.algo.name(), report.value);
    if !o.is_total() || !is_acyclic(inst, &o) {
        return Err(Error::Uncertified(format!("{} returned a cyclic or partial orientation", params.algo.name())));
    }
    let fresh = coverage(inst, &o)?;
    if fresh != report {
        return Err(Error::Uncertified(format!(
            "{} reported {} but its orientation covers {}",
            params.algo.name(),
            report.value,
            fresh.value
        )));
    }
    let bound = upper_bound(inst);
    let mut covered: Vec<String> = fresh.covered.iter().map(|&v| inst.name(v).to_string()).collect();
    covered.sort();
    let summary = SolveReport {
        algorithm: params.algo.name().to_string(),
        value: fresh.value,
        covered,
        upper_bound: bound,
        ratio_vs_bound: ratio(fresh.value, bound),
        elapsed_ms,
        acyclic_certified: true,
    };
    Ok((o, fresh, summary))
}
