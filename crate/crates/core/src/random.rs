//! Seeded random ensembles used by the samplers and verification suites.
//!
//! Every generator takes an explicit RNG; [`rng`] builds the crate's standard
//! ChaCha stream from a 64-bit seed so runs are reproducible across platforms.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::tensor::{partial_transpose, BipartiteDims, CMat, CVec};

pub type SeededRng = ChaCha8Rng;

/// Maximum Wishart draws spent looking for a PPT sample.
pub const PPT_REJECTION_LIMIT: usize = 10_000;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th independent stream derived from `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Standard complex Gaussian (unit variance per real component).
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> DVector<C64> {
    DVector::from_fn(len, |_, _| gaussian(rng))
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> DVector<C64> {
    loop {
        let v = gaussian_vector(rng, len);
        let norm = v.norm();
        if norm > 1e-8 {
            return v / Complex::from(norm);
        }
    }
}

/// Haar-distributed unitary (Gram–Schmidt on a Ginibre matrix).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, side: usize) -> DMatrix<C64> {
    linalg::orthonormal_columns(&ginibre(rng, side, side))
}

/// Random unit vector on the joint space (Schmidt rank `d` almost surely).
pub fn joint_unit_vector<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims) -> CVec {
    CVec::new(dims, unit_vector(rng, dims.total())).expect("length matches dims")
}

/// Unit product vector `u ⊗ v` together with its factors.
pub fn product_vector<R: Rng + ?Sized>(
    rng: &mut R,
    dims: BipartiteDims,
) -> (DVector<C64>, DVector<C64>, CVec) {
    let u = unit_vector(rng, dims.m());
    let v = unit_vector(rng, dims.n());
    let w = CVec::product(&u, &v).expect("factor lengths are positive");
    (u, v, w)
}

/// Unit vector `∑_{i<r} x_i ⊗ y_i` with Gaussian factors; Schmidt rank `r`
/// almost surely. Requires `1 <= r <= d`.
pub fn planted_schmidt_vector<R: Rng + ?Sized>(
    rng: &mut R,
    dims: BipartiteDims,
    r: usize,
) -> Result<CVec> {
    if r == 0 || r > dims.d() {
        return Err(Error::Precondition(format!(
            "planted Schmidt rank {r} outside 1..={} for {dims}",
            dims.d()
        )));
    }
    let mut acc = DVector::from_element(dims.total(), linalg::ZERO);
    for _ in 0..r {
        acc += gaussian_vector(rng, dims.m()).kronecker(&gaussian_vector(rng, dims.n()));
    }
    CVec::new(dims, acc)?.normalized()
}

/// `∑_{t<k} B_t ⊗ C_t` with Ginibre factors; operator Schmidt rank `k`
/// almost surely for `k <= min(m², n²)`.
pub fn planted_osr_operator<R: Rng + ?Sized>(
    rng: &mut R,
    dims: BipartiteDims,
    k: usize,
) -> Result<CMat> {
    let max = (dims.m() * dims.m()).min(dims.n() * dims.n());
    if k == 0 || k > max {
        return Err(Error::Precondition(format!(
            "planted operator Schmidt rank {k} outside 1..={max} for {dims}"
        )));
    }
    let side = dims.total();
    let mut acc = DMatrix::from_element(side, side, linalg::ZERO);
    for _ in 0..k {
        acc += ginibre(rng, dims.m(), dims.m()).kronecker(&ginibre(rng, dims.n(), dims.n()));
    }
    CMat::new(dims, acc)
}

fn trace_normalized(dims: BipartiteDims, gram: DMatrix<C64>) -> CMat {
    let tr = gram.trace().re;
    CMat::new(dims, linalg::hermitian_part(&gram).unscale(tr)).expect("square of side M")
}

/// Trace-one Wishart matrix `G G* / tr` with `G` of size `M x rank`.
pub fn wishart<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims, rank: usize) -> CMat {
    let g = ginibre(rng, dims.total(), rank.max(1));
    trace_normalized(dims, &g * g.adjoint())
}

/// Full-rank trace-one PSD matrix from a square Ginibre draw.
pub fn psd<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims) -> CMat {
    wishart(rng, dims, dims.total())
}

/// Trace-one PPT matrix by rejection from the induced Wishart ensemble with
/// environment dimension `2M`.
pub fn ppt<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims) -> Result<CMat> {
    for _ in 0..PPT_REJECTION_LIMIT {
        let x = wishart(rng, dims, 2 * dims.total());
        if partial_transpose(&x).min_eigenvalue() >= 0.0 {
            return Ok(x);
        }
    }
    Err(Error::DegenerateSample {
        attempts: PPT_REJECTION_LIMIT,
        reason: format!("no PPT draw in {dims}"),
    })
}

/// Trace-one separable matrix `∑ λ_j (a_j a_j*) ⊗ (b_j b_j*)` with `terms`
/// random product projectors and Dirichlet-like weights.
pub fn separable<R: Rng + ?Sized>(rng: &mut R, dims: BipartiteDims, terms: usize) -> CMat {
    let mut acc = CMat::zeros(dims);
    let mut total = 0.0;
    for _ in 0..terms.max(1) {
        let (_, _, w) = product_vector(rng, dims);
        let weight: f64 = -rng.random::<f64>().max(f64::MIN_POSITIVE).ln();
        acc = &acc + &w.projector().scale(weight);
        total += weight;
    }
    acc.scale(1.0 / total).hermitian_part()
}
