use std::fmt;

use super::{rho_limit, MeasurementSet, Regime};
use crate::linalg::{dot, norm2};
use crate::scalar::Scalar;

/// Location of the worst violation of a check (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offender {
    Index(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation, in the units of the check.
    pub worst_value: f64,
    pub worst: Option<Offender>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<14} {}  {}", c.name, if c.passed { "ok  " } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

fn tolerance<T: Scalar>(base: f64) -> f64 {
    base.max(64.0 * T::epsilon().to_f64_lossy())
}

/// Checks every structural invariant of `ms` and reports each outcome.
pub fn validate<T: Scalar>(ms: &MeasurementSet<T>) -> ValidationReport {
    let m = ms.m();
    let mut checks = Vec::new();

    let finite = ms.vectors().is_finite() && ms.targets().iter().all(|b| b.is_finite());
    checks.push(Check {
        name: "finite",
        passed: finite,
        worst_value: 0.0,
        worst: None,
        detail: if finite { "all entries finite".into() } else { "non-finite entries present".into() },
    });

    let tol = tolerance::<T>(1e-10);
    let (mut worst, mut at) = (0.0, None);
    for i in 0..m {
        let dev = (norm2(ms.vector(i)).to_f64_lossy() - 1.0).abs();
        if dev > worst || at.is_none() {
            worst = dev;
            at = Some(Offender::Index(i));
        }
    }
    checks.push(Check {
        name: "unit_norm",
        passed: worst <= tol,
        worst_value: worst,
        worst: at,
        detail: format!("max |‖u_i‖ − 1| = {worst:.3e} (tol {tol:.1e})"),
    });

    let (mut worst, mut at) = (0.0, None);
    for i in 0..m {
        for j in (i + 1)..m {
            let ip = dot(ms.vector(i), ms.vector(j)).abs().to_f64_lossy();
            if ip > worst || at.is_none() {
                worst = ip;
                at = Some(Offender::Pair(i, j));
            }
        }
    }
    match ms.regime() {
        Regime::Orthogonal => checks.push(Check {
            name: "orthogonality",
            passed: worst <= tol,
            worst_value: worst,
            worst: at,
            detail: format!("max |⟨u_i, u_j⟩| = {worst:.3e} (tol {tol:.1e})"),
        }),
        Regime::RhoBounded(rho) => {
            let rho = rho.to_f64_lossy();
            checks.push(Check {
                name: "rho_bound",
                passed: worst <= rho,
                worst_value: worst,
                worst: at,
                detail: format!("max |⟨u_i, u_j⟩| = {worst:.3e} (rho {rho:.3e})"),
            });
            let limit = rho_limit::<f64>(m);
            checks.push(Check {
                name: "rho_limit",
                passed: rho <= limit * (1.0 + 1e-12),
                worst_value: rho,
                worst: None,
                detail: format!("rho = {rho:.3e}, 1/(10m) = {limit:.3e}"),
            });
        }
    }

    let actual = ms.targets().iter().fold(T::zero(), |acc, b| acc.max(b.abs()));
    let r_ok = actual == ms.r_bound();
    checks.push(Check {
        name: "r_bound",
        passed: r_ok,
        worst_value: (actual - ms.r_bound()).abs().to_f64_lossy(),
        worst: None,
        detail: format!("stored R = {}, max |b_i| = {}", ms.r_bound(), actual),
    });

    if let Some(w) = ms.gram_if_computed() {
        let gtol = tolerance::<T>(1e-12);
        let (mut worst, mut at) = (0.0, None);
        let shape_ok = w.rows() == m && w.cols() == m;
        if shape_ok {
            for i in 0..m {
                for j in 0..m {
                    let dev = (w[(i, j)] - dot(ms.vector(i), ms.vector(j))).abs().to_f64_lossy();
                    if dev > worst {
                        worst = dev;
                        at = Some(Offender::Pair(i, j));
                    }
                }
            }
        }
        checks.push(Check {
            name: "gram",
            passed: shape_ok && worst <= gtol,
            worst_value: worst,
            worst: at,
            detail: format!("max |w_ij − ⟨u_i, u_j⟩| = {worst:.3e} (tol {gtol:.1e})"),
        });
    }

    ValidationReport { checks }
}
