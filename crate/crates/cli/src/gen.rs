use std::path::{Path, PathBuf};

use matsense::io::{write_instance, write_matrix};
use matsense::measurements::{gen_ground_truth_with_basis, gen_orthogonal, gen_rho_bounded, Basis, Spectrum};

use crate::failure::{at_path, CmdResult, Failure, EXIT_OK};
use crate::{GenArgs, RegimeArg};

pub fn parse_spectrum(s: &str) -> Result<Spectrum<f64>, Failure> {
    let bad = || Failure::usage(format!("invalid --spectrum '{s}' (expected lo:hi or a comma-separated list)"));
    if let Some((lo, hi)) = s.split_once(':') {
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        if !(lo <= hi) {
            return Err(Failure::usage(format!("--spectrum needs lo <= hi, got {lo}:{hi}")));
        }
        return Ok(Spectrum::Uniform { lo, hi });
    }
    let values = s.split(',').map(|v| v.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
    Ok(Spectrum::Explicit(values))
}

pub fn parse_basis(s: &str) -> Result<Basis, Failure> {
    if s == "haar" {
        return Ok(Basis::Haar);
    }
    s.strip_prefix("householder:")
        .and_then(|k| k.parse().ok())
        .map(|reflectors| Basis::Householder { reflectors })
        .ok_or_else(|| Failure::usage(format!("invalid --basis '{s}' (expected haar or householder:K)")))
}

/// `dir/name.json` → `dir/name.gt.json`.
fn ground_truth_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into());
    out.with_file_name(format!("{stem}.gt.json"))
}

pub fn run(a: &GenArgs) -> CmdResult {
    let spectrum = parse_spectrum(&a.spectrum)?;
    let basis = parse_basis(&a.basis)?;
    if let Spectrum::Explicit(v) = &spectrum {
        if v.len() != a.n {
            return Err(Failure::usage(format!("--spectrum lists {} values but --n is {}", v.len(), a.n)));
        }
    }
    let gt = gen_ground_truth_with_basis(a.n, &spectrum, basis, a.seed)?;
    let ms = match (a.regime, a.rho) {
        (RegimeArg::Orthogonal, None) => {
            if a.m > a.n {
                return Err(Failure::usage(format!(
                    "m > n: cannot draw {} orthogonal vectors in dimension {}",
                    a.m, a.n
                )));
            }
            gen_orthogonal(a.n, a.m, &gt, a.seed)?
        }
        (RegimeArg::Orthogonal, Some(_)) => return Err(Failure::usage("--rho only applies to --regime rho")),
        (RegimeArg::Rho, None) => return Err(Failure::usage("--regime rho requires --rho")),
        (RegimeArg::Rho, Some(rho)) => gen_rho_bounded(a.n, a.m, rho, &gt, a.seed)?,
    };
    let gt_path = ground_truth_path(&a.out);
    let gt_ref = gt_path.file_name().map(|s| s.to_string_lossy().into_owned());
    at_path(&gt_path, write_matrix(&gt_path, gt.matrix().as_matrix()))?;
    at_path(&a.out, write_instance(&a.out, &ms, gt_ref.as_deref()))?;
    println!("n={} m={} regime={} R={} out={}", ms.n(), ms.m(), ms.regime(), ms.r_bound(), a.out.display());
    Ok(EXIT_OK)
}
