use std::io::Write;
use std::time::Instant;

use matsense::io::write_atomic;
use matsense::solvers::{SolveError, StopRule};
use serde::Serialize;

use crate::failure::{at_path, CmdResult, Failure, EXIT_OK};
use crate::setup::{build_config, load_instance, prepare, run_algorithm};
use crate::BenchArgs;

#[derive(Serialize)]
struct Row {
    algorithm: &'static str,
    seed: u64,
    iters: usize,
    wall_nanos_total: u128,
    wall_nanos_per_iter: u128,
    final_max_residual: f64,
}

pub fn run(a: &BenchArgs) -> CmdResult {
    if a.algorithms.is_empty() {
        return Err(Failure::usage("bench needs at least one algorithm"));
    }
    if a.seeds == 0 {
        return Err(Failure::usage("--seeds must be at least 1"));
    }
    let inst = load_instance(&a.instance)?;
    let mut rows = Vec::new();
    for &alg in &a.algorithms {
        let problem = prepare(alg, &inst)?;
        let seeds = if alg.is_stochastic() { a.seeds } else { 1 };
        for seed in 0..seeds {
            let mut cfg = build_config(alg, &problem.set, &a.solver, Some(seed))?;
            if let Some(iters) = a.iters {
                cfg.stop_rule = StopRule::IterBudget;
                cfg.max_iters = iters;
            }
            let clock = Instant::now();
            let sol = match run_algorithm(alg, &problem, &cfg) {
                Ok(sol) => sol,
                Err(SolveError::BudgetExceeded { partial, .. }) => *partial,
                Err(SolveError::Core(e)) => return Err(e.into()),
            };
            let total = clock.elapsed().as_nanos();
            rows.push(Row {
                algorithm: alg.name(),
                seed,
                iters: sol.steps,
                wall_nanos_total: total,
                wall_nanos_per_iter: total / sol.steps.max(1) as u128,
                final_max_residual: sol.max_residual(),
            });
        }
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    match &a.out {
        Some(p) => at_path(p, write_atomic(p, &bytes))?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| Failure::usage(e.to_string()))?,
    }
    Ok(EXIT_OK)
}
