//! File formats: `f64mat` v1 matrices, `msinst` v1 instances, and CSV traces.
//! Every writer goes through a temporary file in the destination directory
//! followed by a rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::measurements::{GroundTruth, MeasurementSet, Regime};
use crate::scalar::Scalar;
use crate::solvers::ConvergenceTrace;

pub const TRACE_HEADER: [&str; 7] = ["t", "phi", "grad_norm", "max_residual", "wall_nanos", "overflow", "recompute"];

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Writes `bytes` to `path` via a sibling temporary file and an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct MatFile {
    format: String,
    version: u32,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

pub fn matrix_to_json<T: Scalar>(m: &Matrix<T>) -> Result<String> {
    let file = MatFile {
        format: "f64mat".into(),
        version: 1,
        rows: m.rows(),
        cols: m.cols(),
        data: m.data().iter().map(|v| v.to_f64_lossy()).collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn matrix_from_json<T: Scalar>(text: &str) -> Result<Matrix<T>> {
    let file: MatFile = serde_json::from_str(text)?;
    if file.format != "f64mat" || file.version != 1 {
        return Err(format_err(format!("expected f64mat v1, found {} v{}", file.format, file.version)));
    }
    if file.data.len() != file.rows * file.cols {
        return Err(format_err(format!(
            "f64mat declares {}x{} but holds {} values",
            file.rows,
            file.cols,
            file.data.len()
        )));
    }
    Matrix::new(file.rows, file.cols, file.data.into_iter().map(T::lit).collect())
}

pub fn write_matrix<T: Scalar>(path: &Path, m: &Matrix<T>) -> Result<()> {
    write_atomic(path, matrix_to_json(m)?.as_bytes())
}

pub fn read_matrix<T: Scalar>(path: &Path) -> Result<Matrix<T>> {
    matrix_from_json(&fs::read_to_string(path)?)
}

/// Reads a square f64mat file as a symmetric matrix.
pub fn read_sym_matrix<T: Scalar>(path: &Path) -> Result<SymMatrix<T>> {
    SymMatrix::from_matrix(read_matrix(path)?)
}

/// Reads a ground truth and checks positive definiteness.
pub fn read_ground_truth<T: Scalar>(path: &Path) -> Result<GroundTruth<T>> {
    GroundTruth::new(read_sym_matrix(path)?)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RegimeRepr {
    Name(String),
    Rho { rho: f64 },
}

#[derive(Serialize, Deserialize)]
struct InstFile {
    format: String,
    version: u32,
    n: usize,
    m: usize,
    regime: RegimeRepr,
    u: Vec<Vec<f64>>,
    b: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground_truth: Option<String>,
}

/// A parsed instance file.
#[derive(Debug, Clone)]
pub struct Instance<T: Scalar> {
    pub set: MeasurementSet<T>,
    /// The `ground_truth` field as written in the file.
    pub ground_truth_ref: Option<String>,
    /// `ground_truth_ref` resolved against the instance's directory.
    pub ground_truth_path: Option<PathBuf>,
}

pub fn instance_to_json<T: Scalar>(ms: &MeasurementSet<T>, ground_truth: Option<&str>) -> Result<String> {
    let regime = match ms.regime() {
        Regime::Orthogonal => RegimeRepr::Name("orthogonal".into()),
        Regime::RhoBounded(rho) => RegimeRepr::Rho { rho: rho.to_f64_lossy() },
    };
    let file = InstFile {
        format: "msinst".into(),
        version: 1,
        n: ms.n(),
        m: ms.m(),
        regime,
        u: (0..ms.m()).map(|i| ms.vector(i).iter().map(|v| v.to_f64_lossy()).collect()).collect(),
        b: ms.targets().iter().map(|v| v.to_f64_lossy()).collect(),
        ground_truth: ground_truth.map(str::to_owned),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn instance_from_json<T: Scalar>(text: &str) -> Result<(MeasurementSet<T>, Option<String>)> {
    let file: InstFile = serde_json::from_str(text)?;
    if file.format != "msinst" || file.version != 1 {
        return Err(format_err(format!("expected msinst v1, found {} v{}", file.format, file.version)));
    }
    if file.u.len() != file.m || file.b.len() != file.m {
        return Err(format_err(format!(
            "instance declares m = {} but has {} vectors and {} targets",
            file.m,
            file.u.len(),
            file.b.len()
        )));
    }
    if let Some(row) = file.u.iter().position(|r| r.len() != file.n) {
        return Err(format_err(format!("vector {} has length {}, expected n = {}", row, file.u[row].len(), file.n)));
    }
    let regime = match file.regime {
        RegimeRepr::Name(name) if name == "orthogonal" => Regime::Orthogonal,
        RegimeRepr::Name(name) => return Err(format_err(format!("unknown regime '{name}'"))),
        RegimeRepr::Rho { rho } => Regime::RhoBounded(T::lit(rho)),
    };
    let data = file.u.into_iter().flatten().map(T::lit).collect();
    let u = Matrix::new(file.m, file.n, data)?;
    let b = file.b.into_iter().map(T::lit).collect();
    Ok((MeasurementSet::new(u, b, regime)?, file.ground_truth))
}

pub fn write_instance<T: Scalar>(path: &Path, ms: &MeasurementSet<T>, ground_truth: Option<&str>) -> Result<()> {
    write_atomic(path, instance_to_json(ms, ground_truth)?.as_bytes())
}

pub fn read_instance<T: Scalar>(path: &Path) -> Result<Instance<T>> {
    let (set, ground_truth_ref) = instance_from_json(&fs::read_to_string(path)?)?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let ground_truth_path = ground_truth_ref.as_ref().map(|r| dir.join(r));
    Ok(Instance { set, ground_truth_ref, ground_truth_path })
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn trace_to_csv<T: Scalar>(trace: &ConvergenceTrace<T>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(TRACE_HEADER)?;
    for r in trace {
        w.write_record([
            r.t.to_string(),
            r.phi.to_string(),
            r.grad_norm.to_string(),
            r.max_residual.to_string(),
            r.wall_nanos.to_string(),
            flag(r.overflow).to_string(),
            flag(r.recompute).to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

pub fn write_trace<T: Scalar>(path: &Path, trace: &ConvergenceTrace<T>) -> Result<()> {
    write_atomic(path, &trace_to_csv(trace)?)
}
