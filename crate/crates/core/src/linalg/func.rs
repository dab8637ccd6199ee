use crate::error::{invalid, Error, OverflowSite, Result};
use crate::linalg::{eig, EigDecomp, Matrix, SymMatrix};
use crate::scalar::Scalar;

/// `f(A) = Q·f(Λ)·Qᵀ`.
pub fn matrix_fn<T: Scalar>(a: &SymMatrix<T>, f: impl Fn(T) -> T) -> Result<SymMatrix<T>> {
    matrix_fn_from(&eig(a)?, f)
}

/// [`matrix_fn`] on an existing decomposition.
pub fn matrix_fn_from<T: Scalar>(ed: &EigDecomp<T>, f: impl Fn(T) -> T) -> Result<SymMatrix<T>> {
    let fd = ed
        .values
        .iter()
        .map(|&v| {
            let y = f(v);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Overflow(OverflowSite::Eigenvalue(v.to_f64_lossy())))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ed.compose(&fd)
}

/// `tr[cosh(A)] = Σ cosh(λ_k)`.
pub fn tr_cosh<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    tr_cosh_of(&eig(a)?.values)
}

pub(crate) fn tr_cosh_of<T: Scalar>(eigenvalues: &[T]) -> Result<T> {
    let mut acc = T::zero();
    for &v in eigenvalues {
        let c = v.cosh();
        if !c.is_finite() {
            return Err(Error::Overflow(OverflowSite::Eigenvalue(v.to_f64_lossy())));
        }
        acc = acc + c;
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(Error::Overflow(OverflowSite::Aggregate("tr cosh")))
    }
}

/// Spectral norm `max |λ_k|` of a symmetric matrix.
pub fn spectral_norm<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    Ok(eig(a)?.max_abs_eigenvalue())
}

/// Upper bound `1 + ln tr[cosh(A)] ≥ ‖A‖₂`.
pub fn spectral_norm_bound<T: Scalar>(a: &SymMatrix<T>) -> Result<T> {
    Ok(T::one() + tr_cosh(a)?.ln())
}

/// Kronecker product. Builds the full `(ra·rb)×(ca·cb)` matrix; intended for
/// test-scale oracles only.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_finite() || !b.is_finite() {
        return Err(invalid("kron of non-finite matrix"));
    }
    let (rb, cb) = (b.rows(), b.cols());
    Ok(Matrix::from_fn(a.rows() * rb, a.cols() * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)]))
}
