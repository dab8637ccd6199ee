use matsense::io::{write_matrix, write_trace};
use matsense::solvers::{Solution, SolveError, Termination};

use crate::failure::{at_path, CmdResult, Failure, EXIT_BUDGET, EXIT_OK};
use crate::setup::{build_config, load_instance, prepare, run_algorithm};
use crate::SolveArgs;

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::StopRule => "stop_rule",
        Termination::Stationary => "stationary",
        Termination::BudgetExhausted => "budget_exhausted",
    }
}

fn summary(sol: &Solution<f64>) -> String {
    let last = sol.trace.last().expect("every run records its final state");
    let phi = if last.overflow { format!("log_phi={}", last.phi) } else { format!("phi={}", last.phi) };
    format!(
        "t={} steps={} {} max_residual={} termination={}",
        last.t,
        sol.steps,
        phi,
        sol.max_residual(),
        termination_name(sol.termination)
    )
}

pub fn run(a: &SolveArgs) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let problem = prepare(a.algorithm, &inst)?;
    let cfg = build_config(a.algorithm, &problem.set, &a.solver, a.seed)?;
    let (sol, code) = match run_algorithm(a.algorithm, &problem, &cfg) {
        Ok(sol) => (sol, EXIT_OK),
        Err(SolveError::BudgetExceeded { partial, .. }) => (*partial, EXIT_BUDGET),
        Err(SolveError::Core(e)) => return Err(Failure::from(e)),
    };
    at_path(&a.out, write_matrix(&a.out, sol.iterate.as_matrix()))?;
    if let Some(p) = &a.trace {
        at_path(p, write_trace(p, &sol.trace))?;
    }
    println!("{}", summary(&sol));
    if code == EXIT_BUDGET {
        eprintln!("error: iteration budget of {} steps exhausted before the stop rule was met", cfg.max_iters);
    }
    Ok(code)
}
