//! Thin wrappers over nalgebra's dense complex decompositions with the
//! orderings the rest of the crate relies on.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen, SVD};

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = Complex { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = Complex { re: 1.0, im: 0.0 };

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: DMatrix<C64>,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }

    pub fn vector(&self, i: usize) -> DVector<C64> {
        self.vectors.column(i).into_owned()
    }
}

pub(crate) fn hermitian_part(a: &DMatrix<C64>) -> DMatrix<C64> {
    (a + a.adjoint()).scale(0.5)
}

/// Frobenius norm of the anti-Hermitian part.
pub(crate) fn asymmetry(a: &DMatrix<C64>) -> f64 {
    (a - a.adjoint()).norm() * 0.5
}

pub(crate) fn hermitian_eigen(a: &DMatrix<C64>) -> HermitianEigen {
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(a.nrows(), a.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

pub(crate) fn max_eigenvalue(a: &DMatrix<C64>) -> f64 {
    SymmetricEigen::new(hermitian_part(a))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Singular value decomposition with descending singular values.
pub(crate) struct SortedSvd {
    pub values: Vec<f64>,
    pub u: DMatrix<C64>,
    pub v_t: DMatrix<C64>,
}

pub(crate) fn svd(a: &DMatrix<C64>) -> SortedSvd {
    let s = SVD::new(a.clone(), true, true);
    SortedSvd {
        values: s.singular_values.iter().copied().collect(),
        u: s.u.expect("u requested"),
        v_t: s.v_t.expect("v_t requested"),
    }
}

/// Count of values at or above `tol * values[0]`; `values` must be descending.
pub(crate) fn relative_rank(values: &[f64], tol: f64) -> usize {
    match values.first() {
        Some(&top) if top > 0.0 => values.iter().take_while(|&&s| s >= tol * top).count(),
        _ => 0,
    }
}

/// Inverse square root of a Hermitian positive definite matrix.
pub(crate) fn psd_inv_sqrt(a: &DMatrix<C64>) -> DMatrix<C64> {
    spectral_map(a, |x| 1.0 / x.sqrt())
}

fn spectral_map(a: &DMatrix<C64>, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
    let eig = hermitian_eigen(a);
    let mut scaled = eig.vectors.clone();
    for (j, &x) in eig.values.iter().enumerate() {
        let fx = f(x);
        scaled.column_mut(j).scale_mut(fx);
    }
    hermitian_part(&(scaled * eig.vectors.adjoint()))
}

/// Orthonormal basis of `C^len` whose first column is `first` (assumed unit).
///
/// Standard basis vectors are added greedily, least-overlapping first, and the
/// whole set is re-orthonormalized once more at the end. Deterministic.
pub(crate) fn complete_basis(first: &DVector<C64>) -> DMatrix<C64> {
    let len = first.len();
    let mut candidates: Vec<usize> = (0..len).collect();
    candidates.sort_by(|&i, &j| first[i].norm().total_cmp(&first[j].norm()));

    let mut basis: Vec<DVector<C64>> = vec![first.clone()];
    for k in candidates {
        if basis.len() == len {
            break;
        }
        let mut r = DVector::from_element(len, ZERO);
        r[k] = ONE;
        for _ in 0..2 {
            for q in &basis {
                let overlap = q.dotc(&r);
                r -= q * overlap;
            }
        }
        let norm = r.norm();
        if norm > 1e-6 {
            basis.push(r / Complex::from(norm));
        }
    }
    assert_eq!(basis.len(), len, "standard basis spans the space");

    // second full pass to suppress drift
    let mut cleaned: Vec<DVector<C64>> = Vec::with_capacity(len);
    for v in basis {
        let mut r = v;
        for q in &cleaned {
            let overlap = q.dotc(&r);
            r -= q * overlap;
        }
        let norm = r.norm();
        cleaned.push(r / Complex::from(norm));
    }
    DMatrix::from_columns(&cleaned)
}

/// Thin QR orthonormalization of the columns of `a` (full column rank assumed).
pub(crate) fn orthonormal_columns(a: &DMatrix<C64>) -> DMatrix<C64> {
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(a.ncols());
    for j in 0..a.ncols() {
        let mut r = a.column(j).into_owned();
        for _ in 0..2 {
            for q in &cols {
                let overlap = q.dotc(&r);
                r -= q * overlap;
            }
        }
        let norm = r.norm();
        if norm > 1e-300 {
            cols.push(r / Complex::from(norm));
        } else {
            // degenerate column: fall back to any direction orthogonal to the rest
            let filler = complete_basis_from(&cols, a.nrows());
            cols.push(filler);
        }
    }
    DMatrix::from_columns(&cols)
}

fn complete_basis_from(cols: &[DVector<C64>], len: usize) -> DVector<C64> {
    for k in 0..len {
        let mut r = DVector::from_element(len, ZERO);
        r[k] = ONE;
        for q in cols {
            let overlap = q.dotc(&r);
            r -= q * overlap;
        }
        let norm = r.norm();
        if norm > 1e-6 {
            return r / Complex::from(norm);
        }
    }
    unreachable!("fewer columns than the ambient dimension")
}
