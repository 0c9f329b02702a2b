//! Dense complex linear algebra on `C^m ⊗ C^n`.
//!
//! Basis vector `e_i ⊗ f_j` sits at flat index `i * n + j` everywhere in the
//! crate. Reshapes, realignments and the partial transpose all derive from
//! that convention.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};

/// Default relative singular-value cutoff for SR/OSR.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Allowed deviation from unit norm for inputs documented as unit vectors.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Factor dimensions `(m, n)` of `C^m ⊗ C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDims")]
pub struct BipartiteDims {
    m: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawDims {
    m: usize,
    n: usize,
}

impl TryFrom<RawDims> for BipartiteDims {
    type Error = Error;
    fn try_from(raw: RawDims) -> Result<Self> {
        BipartiteDims::new(raw.m, raw.n)
    }
}

impl BipartiteDims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Dim(format!("factor dimensions must be positive, got {m}x{n}")));
        }
        Ok(BipartiteDims { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `min(m, n)`, the largest possible Schmidt rank.
    pub fn d(&self) -> usize {
        self.m.min(self.n)
    }

    /// `m * n`, the dimension of the joint space.
    pub fn total(&self) -> usize {
        self.m * self.n
    }

    /// Flat index of `e_i ⊗ f_j`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }
}

impl fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A vector in `C^m ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec {
    dims: BipartiteDims,
    data: DVector<C64>,
}

impl CVec {
    pub fn new(dims: BipartiteDims, data: DVector<C64>) -> Result<Self> {
        if data.len() != dims.total() {
            return Err(Error::Dim(format!(
                "vector of length {} does not live in {dims} (expected {})",
                data.len(),
                dims.total()
            )));
        }
        Ok(CVec { dims, data })
    }

    /// `u ⊗ v` for `u ∈ C^m`, `v ∈ C^n`.
    pub fn product(u: &DVector<C64>, v: &DVector<C64>) -> Result<Self> {
        let dims = BipartiteDims::new(u.len(), v.len())?;
        Ok(CVec { dims, data: u.kronecker(v) })
    }

    /// The product basis vector `e_i ⊗ f_j`.
    pub fn basis(dims: BipartiteDims, i: usize, j: usize) -> Self {
        let mut data = DVector::from_element(dims.total(), ZERO);
        data[dims.index(i, j)] = linalg::ONE;
        CVec { dims, data }
    }

    /// `∑_{i<d} e_i ⊗ f_i / √d`.
    pub fn max_entangled(dims: BipartiteDims) -> Self {
        let d = dims.d();
        let amp = Complex::from(1.0 / (d as f64).sqrt());
        let mut data = DVector::from_element(dims.total(), ZERO);
        for i in 0..d {
            data[dims.index(i, i)] = amp;
        }
        CVec { dims, data }
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.data
    }

    pub fn into_vector(self) -> DVector<C64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroInput("cannot normalize the zero vector".into()));
        }
        Ok(CVec { dims: self.dims, data: &self.data / Complex::from(norm) })
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVec) -> C64 {
        self.data.dotc(&other.data)
    }

    /// The rank-one operator `self · self*`.
    pub fn projector(&self) -> CMat {
        CMat { dims: self.dims, data: &self.data * self.data.adjoint() }
    }

    /// `self · other*`.
    pub fn outer(&self, other: &CVec) -> Result<CMat> {
        check_same(self.dims, other.dims)?;
        Ok(CMat { dims: self.dims, data: &self.data * other.data.adjoint() })
    }

    /// The `m x n` coefficient matrix `C[i, j] = v[i * n + j]`.
    pub fn coefficient_matrix(&self) -> DMatrix<C64> {
        let (m, n) = (self.dims.m, self.dims.n);
        DMatrix::from_fn(m, n, |i, j| self.data[i * n + j])
    }

    pub(crate) fn require_unit(&self, what: &str) -> Result<()> {
        require_unit(&self.data, what)
    }
}

/// An operator on `C^m ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    dims: BipartiteDims,
    data: DMatrix<C64>,
}

impl CMat {
    pub fn new(dims: BipartiteDims, data: DMatrix<C64>) -> Result<Self> {
        let side = dims.total();
        if data.nrows() != side || data.ncols() != side {
            return Err(Error::Dim(format!(
                "{}x{} matrix does not act on {dims} (expected side {side})",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(CMat { dims, data })
    }

    pub fn identity(dims: BipartiteDims) -> Self {
        let side = dims.total();
        CMat { dims, data: DMatrix::identity(side, side) }
    }

    pub fn zeros(dims: BipartiteDims) -> Self {
        let side = dims.total();
        CMat { dims, data: DMatrix::from_element(side, side, ZERO) }
    }

    /// The swap (flip) operator `F(x ⊗ y) = y ⊗ x`; requires `m == n`.
    pub fn swap(dims: BipartiteDims) -> Result<Self> {
        if dims.m != dims.n {
            return Err(Error::Dim(format!("swap needs equal factors, got {dims}")));
        }
        let mut out = CMat::zeros(dims);
        for i in 0..dims.m {
            for j in 0..dims.n {
                out.data[(dims.index(j, i), dims.index(i, j))] = linalg::ONE;
            }
        }
        Ok(out)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.data
    }

    pub fn adjoint(&self) -> CMat {
        CMat { dims: self.dims, data: self.data.adjoint() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    pub fn scale(&self, factor: f64) -> CMat {
        CMat { dims: self.dims, data: self.data.scale(factor) }
    }

    /// Frobenius norm of `(self - self*) / 2`.
    pub fn asymmetry(&self) -> f64 {
        linalg::asymmetry(&self.data)
    }

    /// `(self + self*) / 2`.
    pub fn hermitian_part(&self) -> CMat {
        CMat { dims: self.dims, data: linalg::hermitian_part(&self.data) }
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        check_same(self.dims, v.dims)?;
        Ok(CVec { dims: self.dims, data: &self.data * &v.data })
    }

    /// `v* self v` (real part; exact for Hermitian `self`).
    pub fn expectation(&self, v: &CVec) -> Result<f64> {
        check_same(self.dims, v.dims)?;
        Ok(v.data.dotc(&(&self.data * &v.data)).re)
    }

    pub fn distance(&self, other: &CMat) -> Result<f64> {
        check_same(self.dims, other.dims)?;
        Ok((&self.data - &other.data).norm())
    }

    /// `‖self* self - I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let side = self.dims.total();
        (self.data.adjoint() * &self.data - DMatrix::<C64>::identity(side, side)).norm()
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigen(&self.data).min()
    }

    /// Largest eigenvalue of the Hermitian part.
    pub fn max_eigenvalue(&self) -> f64 {
        linalg::max_eigenvalue(&self.data)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigen(&self.data).values
    }

    /// Ascending eigenvalues of the Hermitian part with matching unit eigenvectors.
    pub fn eigen(&self) -> Vec<(f64, CVec)> {
        let e = linalg::hermitian_eigen(&self.data);
        (0..e.values.len())
            .map(|i| (e.values[i], CVec { dims: self.dims, data: e.vector(i) }))
            .collect()
    }
}

fn check_same(a: BipartiteDims, b: BipartiteDims) -> Result<()> {
    if a != b {
        return Err(Error::Dim(format!("operands live in {a} and {b}")));
    }
    Ok(())
}

pub(crate) fn require_unit(v: &DVector<C64>, what: &str) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::Norm { what: what.to_string(), norm });
    }
    Ok(())
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dims, rhs.dims, "dimension mismatch in CMat addition");
        CMat { dims: self.dims, data: &self.data + &rhs.data }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dims, rhs.dims, "dimension mismatch in CMat subtraction");
        CMat { dims: self.dims, data: &self.data - &rhs.data }
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dims, rhs.dims, "dimension mismatch in CMat product");
        CMat { dims: self.dims, data: &self.data * &rhs.data }
    }
}

/// Kronecker product `a ⊗ b` of an `m x m` and an `n x n` matrix.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> Result<CMat> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Dim(format!(
            "kron factors must be square, got {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let dims = BipartiteDims::new(a.nrows(), b.nrows())?;
    Ok(CMat { dims, data: a.kronecker(b) })
}

/// Partial transpose on the second factor, `Γ = id ⊗ T`.
pub fn partial_transpose(x: &CMat) -> CMat {
    let dims = x.dims;
    let (m, n) = (dims.m, dims.n);
    let mut out = DMatrix::from_element(dims.total(), dims.total(), ZERO);
    for i in 0..m {
        for k in 0..m {
            for j in 0..n {
                for l in 0..n {
                    out[(i * n + l, k * n + j)] = x.data[(i * n + j, k * n + l)];
                }
            }
        }
    }
    CMat { dims, data: out }
}

/// Realignment `R[(i,k), (j,l)] = A[(i,j), (k,l)]`, an `m² x n²` matrix whose
/// rank is the operator Schmidt rank of `A`.
pub fn realign(a: &CMat) -> DMatrix<C64> {
    let (m, n) = (a.dims.m, a.dims.n);
    DMatrix::from_fn(m * m, n * n, |row, col| {
        let (i, k) = (row / m, row % m);
        let (j, l) = (col / n, col % n);
        a.data[(i * n + j, k * n + l)]
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Precondition(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

/// Schmidt decomposition `v = ∑ coeffs[i] left[i] ⊗ right[i]`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomp {
    /// All `min(m, n)` singular values, nonincreasing.
    pub coeffs: Vec<f64>,
    pub left: Vec<DVector<C64>>,
    pub right: Vec<DVector<C64>>,
    pub rank: usize,
    pub tol: f64,
}

impl SchmidtDecomp {
    /// `∑_{i < rank} coeffs[i] left[i] ⊗ right[i]`.
    pub fn reconstruct(&self) -> DVector<C64> {
        let len = self.left[0].len() * self.right[0].len();
        let mut out = DVector::from_element(len, ZERO);
        for i in 0..self.rank {
            out += self.left[i].kronecker(&self.right[i]) * Complex::from(self.coeffs[i]);
        }
        out
    }
}

pub fn schmidt_decompose(v: &CVec, tol: f64) -> Result<SchmidtDecomp> {
    check_tol(tol)?;
    if v.norm() == 0.0 {
        return Err(Error::ZeroInput("Schmidt decomposition of the zero vector".into()));
    }
    let s = linalg::svd(&v.coefficient_matrix());
    let rank = linalg::relative_rank(&s.values, tol);
    let left = (0..s.values.len()).map(|i| s.u.column(i).into_owned()).collect();
    // v = ∑ σ u_i v_t[i]ᵀ, so the right factor is the i-th row of v_t, unconjugated.
    let right = (0..s.values.len()).map(|i| s.v_t.row(i).transpose()).collect();
    Ok(SchmidtDecomp { coeffs: s.values, left, right, rank, tol })
}

/// Operator Schmidt decomposition `A = ∑ coeffs[i] left[i] ⊗ right[i]`.
#[derive(Debug, Clone)]
pub struct OpSchmidtDecomp {
    /// All `min(m², n²)` singular values of the realignment, nonincreasing.
    pub coeffs: Vec<f64>,
    /// `m x m` factors, Frobenius-orthonormal.
    pub left: Vec<DMatrix<C64>>,
    /// `n x n` factors, Frobenius-orthonormal.
    pub right: Vec<DMatrix<C64>>,
    pub rank: usize,
    pub tol: f64,
}

impl OpSchmidtDecomp {
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let side = self.left[0].nrows() * self.right[0].nrows();
        let mut out = DMatrix::from_element(side, side, ZERO);
        for i in 0..self.rank {
            out += self.left[i].kronecker(&self.right[i]) * Complex::from(self.coeffs[i]);
        }
        out
    }
}

pub fn op_schmidt_decompose(a: &CMat, tol: f64) -> Result<OpSchmidtDecomp> {
    check_tol(tol)?;
    if a.frobenius_norm() == 0.0 {
        return Err(Error::ZeroInput("operator Schmidt decomposition of the zero matrix".into()));
    }
    let (m, n) = (a.dims.m, a.dims.n);
    let s = linalg::svd(&realign(a));
    let rank = linalg::relative_rank(&s.values, tol);
    let left = (0..s.values.len())
        .map(|t| DMatrix::from_fn(m, m, |i, k| s.u[(i * m + k, t)]))
        .collect();
    let right = (0..s.values.len())
        .map(|t| DMatrix::from_fn(n, n, |j, l| s.v_t[(t, j * n + l)]))
        .collect();
    Ok(OpSchmidtDecomp { coeffs: s.values, left, right, rank, tol })
}

/// Schmidt rank of `v` at relative cutoff `tol`.
pub fn sr(v: &CVec, tol: f64) -> Result<usize> {
    Ok(schmidt_decompose(v, tol)?.rank)
}

/// Operator Schmidt rank of `a` at relative cutoff `tol`.
pub fn osr(a: &CMat, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    if a.frobenius_norm() == 0.0 {
        return Err(Error::ZeroInput("operator Schmidt rank of the zero matrix".into()));
    }
    let values = nalgebra::SVD::new(realign(a), false, false).singular_values;
    let mut values: Vec<f64> = values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(linalg::relative_rank(&values, tol))
}

/// A unitary `U` with `U (u ⊗ v) = w`.
///
/// Both `u ⊗ v` and `w` are completed to orthonormal bases `{a_i}`, `{b_i}`
/// and paired as `U = ∑ b_i a_i*`.
pub fn lift_product_to_target(u: &DVector<C64>, v: &DVector<C64>, w: &CVec) -> Result<CMat> {
    let dims = w.dims;
    if u.len() != dims.m || v.len() != dims.n {
        return Err(Error::Dim(format!(
            "factors of length {} and {} do not match target space {dims}",
            u.len(),
            v.len()
        )));
    }
    require_unit(u, "u")?;
    require_unit(v, "v")?;
    w.require_unit("w")?;
    let source = linalg::complete_basis(&u.kronecker(v));
    let target = linalg::complete_basis(&w.data);
    Ok(CMat { dims, data: target * source.adjoint() })
}
