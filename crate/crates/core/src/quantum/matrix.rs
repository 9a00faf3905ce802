use nalgebra::DMatrix;
use ndarray::{Array1, Array2};

pub use num_complex::Complex64 as C64;

pub type Matrix = Array2<C64>;
pub type Vector = Array1<C64>;

pub fn identity(n: usize) -> Matrix {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

/// Conjugate transpose.
pub fn dagger(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    ndarray::linalg::kron(a, b)
}

/// Largest entrywise modulus of `a - b`. Shapes must agree.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "max_abs_diff: shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_unitary(m: &Matrix, tol: f64) -> bool {
    let (r, c) = m.dim();
    r == c && max_abs_diff(&dagger(m).dot(m), &identity(r)) < tol
}

/// `max |Σ K†K − I|` over entries.
pub fn kraus_completeness_error(ks: &[Matrix]) -> f64 {
    let Some(first) = ks.first() else {
        return f64::INFINITY;
    };
    let n = first.ncols();
    let mut acc = Matrix::zeros((n, n));
    for k in ks {
        acc = acc + dagger(k).dot(k);
    }
    max_abs_diff(&acc, &identity(n))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.nrows();
    let dm = DMatrix::from_fn(n, n, |r, c| {
        // Hermitian part
        (m[[r, c]] + m[[c, r]].conj()) * 0.5
    });
    let mut ev: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
