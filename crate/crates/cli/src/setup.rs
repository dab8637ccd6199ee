use std::fs;
use std::path::Path;

use matsense::io::{read_ground_truth, read_instance, Instance};
use matsense::solvers::{
    init_iterate, run_gd, run_sgd, run_sgd_general, run_spectral_gd, Algorithm, SolveError, Solution, SolverConfig,
};
use matsense::{MeasurementSet, SpectralOracle};
use serde_json::{Map, Value};

use crate::failure::{at_path, Failure};
use crate::SolverFlags;

/// An instance together with its oracle when the algorithm needs one.
pub struct Problem {
    pub set: MeasurementSet<f64>,
    pub oracle: Option<SpectralOracle<f64>>,
}

pub fn load_instance(path: &Path) -> Result<Instance<f64>, Failure> {
    at_path(path, read_instance(path))
}

/// Checks that `algorithm` can run on `inst` and loads the oracle for
/// spectral descent.
pub fn prepare(algorithm: Algorithm, inst: &Instance<f64>) -> Result<Problem, Failure> {
    let set = inst.set.clone();
    match algorithm {
        Algorithm::Sgd if !set.regime().is_orthogonal() => {
            return Err(Failure::usage(format!(
                "sgd requires an orthogonal instance, this one is {}; use --algorithm sgd-general",
                set.regime()
            )));
        }
        Algorithm::Spectral => {
            let path = inst
                .ground_truth_path
                .as_ref()
                .ok_or_else(|| Failure::usage("spectral needs an instance with a ground_truth reference"))?;
            let gt = at_path(path, read_ground_truth(path))?;
            if gt.dim() != set.n() {
                return Err(Failure::usage(format!(
                    "ground truth is {0}x{0} but the instance has n = {1}",
                    gt.dim(),
                    set.n()
                )));
            }
            let oracle = SpectralOracle::new(gt)?;
            return Ok(Problem { set, oracle: Some(oracle) });
        }
        _ => {}
    }
    Ok(Problem { set, oracle: None })
}

fn read_config_file(path: &Path) -> Result<Map<String, Value>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Failure::usage(format!("{}: config must be a JSON object", path.display()))),
        Err(e) => Err(Failure::usage(format!("{}: {e}", path.display()))),
    }
}

fn field<T: serde::de::DeserializeOwned>(map: &Map<String, Value>, key: &str) -> Result<Option<T>, Failure> {
    map.get(key)
        .map(|v| serde_json::from_value(v.clone()).map_err(|e| Failure::usage(format!("config field '{key}': {e}"))))
        .transpose()
}

/// Default schedule for the instance, then flags, then the config file.
pub fn build_config(
    algorithm: Algorithm,
    ms: &MeasurementSet<f64>,
    flags: &SolverFlags,
    seed: Option<u64>,
) -> Result<SolverConfig<f64>, Failure> {
    let file = match &flags.config {
        Some(p) => read_config_file(p)?,
        None => Map::new(),
    };
    let delta = field(&file, "delta")?.unwrap_or(flags.delta);
    let batch = field(&file, "batch")?.or(flags.batch).unwrap_or((ms.m() / 4).max(1));
    let mut cfg = SolverConfig::for_algorithm(algorithm, ms.n(), ms.m(), batch, delta);
    if let Some(v) = flags.lambda {
        cfg.lambda = v;
    }
    if let Some(v) = flags.epsilon {
        cfg.epsilon = v;
    }
    if let Some(v) = flags.max_iters {
        cfg.max_iters = v;
    }
    if let Some(v) = flags.log_every {
        cfg.log_every = v;
    }
    if let Some(v) = flags.recompute_every {
        cfg.recompute_every = Some(v);
    }
    if let Some(v) = flags.storage {
        cfg.storage = v.into();
    }
    if let Some(v) = seed {
        cfg.seed = v;
    }
    let Value::Object(mut merged) = serde_json::to_value(&cfg).map_err(|e| Failure::usage(e.to_string()))? else {
        unreachable!("SolverConfig serializes to an object");
    };
    for (k, v) in file {
        if !merged.contains_key(&k) {
            return Err(Failure::usage(format!("unknown config field '{k}'")));
        }
        merged.insert(k, v);
    }
    let cfg: SolverConfig<f64> =
        serde_json::from_value(Value::Object(merged)).map_err(|e| Failure::usage(format!("config: {e}")))?;
    cfg.validate(algorithm, ms.m())?;
    Ok(cfg)
}

pub fn run_algorithm(
    algorithm: Algorithm,
    problem: &Problem,
    cfg: &SolverConfig<f64>,
) -> Result<Solution<f64>, SolveError<f64>> {
    let ms = &problem.set;
    match algorithm {
        Algorithm::Gd => run_gd(ms, cfg),
        Algorithm::Sgd => run_sgd(ms, cfg),
        Algorithm::SgdGeneral => run_sgd_general(ms, cfg),
        Algorithm::Spectral => {
            let oracle = problem.oracle.as_ref().expect("prepare loads the oracle for spectral descent");
            run_spectral_gd(oracle, init_iterate(ms)?, cfg)
        }
    }
}
