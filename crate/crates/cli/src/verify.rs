use matsense::io::read_sym_matrix;
use matsense::solvers::verify_solution;

use crate::failure::{at_path, CmdResult, Failure, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::setup::load_instance;
use crate::VerifyArgs;

pub fn run(a: &VerifyArgs) -> CmdResult {
    if !(a.delta >= 0.0) {
        return Err(Failure::usage(format!("--delta must be non-negative, got {}", a.delta)));
    }
    let inst = load_instance(&a.instance)?;
    let solution = at_path(&a.solution, read_sym_matrix(&a.solution))?;
    let v = verify_solution(&inst.set, &solution, a.delta)?;
    let verdict = if v.passed { "pass" } else { "fail" };
    println!("{verdict} max_residual={} worst_index={} delta={}", v.max_residual, v.worst_index, a.delta);
    Ok(if v.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
