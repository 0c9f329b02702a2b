//! Membership tests for the PSD, PPT, separable and block-positive cones,
//! plus the see-saw heuristics behind the block-positivity checks.
//!
//! Every `Out` verdict carries a certificate that can be re-evaluated against
//! the tested matrix with [`Certificate::reevaluate`].

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::data::vector_serde;
use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::random;
use crate::tensor::{partial_transpose, sr, BipartiteDims, CMat, CVec, DEFAULT_TOL};

/// Largest joint dimension for which PPT decides separability.
pub const PPT_DECIDES_SEPARABILITY_UP_TO: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    In,
    Out,
    Indeterminate,
}

/// Which matrix a PPT certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PptSide {
    Matrix,
    PartialTranspose,
}

/// Normalization or structure invariant of a Kraus family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyInvariant {
    ExactNormalization,
    ContractiveNormalization,
    OsrBound,
    Locality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Extremal eigenpair of the tested matrix.
    Eigenpair {
        value: f64,
        #[serde(with = "vector_serde")]
        vector: DVector<C64>,
    },
    /// Extremal eigenpair of either the matrix or its partial transpose.
    PartialTranspose {
        side: PptSide,
        value: f64,
        #[serde(with = "vector_serde")]
        vector: DVector<C64>,
    },
    /// Product vector `z ⊗ y` and the expectation it attains.
    ProductVector {
        value: f64,
        #[serde(with = "vector_serde")]
        z: DVector<C64>,
        #[serde(with = "vector_serde")]
        y: DVector<C64>,
    },
    /// Range vector of a rank-one matrix and its Schmidt rank.
    SchmidtRank {
        rank: usize,
        #[serde(with = "vector_serde")]
        vector: DVector<C64>,
    },
    /// A violated Kraus-family invariant.
    Invariant {
        invariant: FamilyInvariant,
        residual: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        index: Option<usize>,
    },
}

impl Certificate {
    /// Recomputes the certified quantity against `x`: a Rayleigh quotient or
    /// product expectation, or the Schmidt rank for rank-one certificates.
    /// `None` for family invariants, which need the family itself.
    pub fn reevaluate(&self, x: &CMat) -> Result<Option<f64>> {
        let dims = x.dims();
        let value = match self {
            Certificate::Eigenpair { vector, .. } => rayleigh(x, vector)?,
            Certificate::PartialTranspose { side, vector, .. } => match side {
                PptSide::Matrix => rayleigh(x, vector)?,
                PptSide::PartialTranspose => rayleigh(&partial_transpose(x), vector)?,
            },
            Certificate::ProductVector { z, y, .. } => {
                let v = CVec::product(z, y)?;
                if v.dims() != dims {
                    return Err(Error::Dim(format!("certificate lives in {}, matrix in {dims}", v.dims())));
                }
                x.expectation(&v)? / v.norm().powi(2)
            }
            Certificate::SchmidtRank { vector, .. } => {
                let v = CVec::new(dims, vector.clone())?;
                sr(&v, DEFAULT_TOL)? as f64
            }
            Certificate::Invariant { .. } => return Ok(None),
        };
        Ok(Some(value))
    }
}

fn rayleigh(x: &CMat, v: &DVector<C64>) -> Result<f64> {
    let v = CVec::new(x.dims(), v.clone())?;
    Ok(x.expectation(&v)? / v.norm().powi(2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    pub min_eig: f64,
    pub tol: f64,
    /// Seed of the randomized search, when one ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Normalization residual, for Kraus-family validation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
}

impl MembershipReport {
    pub fn is_in(&self) -> bool {
        self.verdict == Verdict::In
    }
}

/// Knobs for the alternating (see-saw) product-vector searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub iters_per_restart: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        SeesawConfig { restarts: 32, iters_per_restart: 200, seed: 0, tol: 1e-9 }
    }
}

impl SeesawConfig {
    pub fn with_seed(seed: u64) -> Self {
        SeesawConfig { seed, ..Self::default() }
    }

    fn check(&self) -> Result<()> {
        if self.restarts == 0 || self.iters_per_restart == 0 {
            return Err(Error::Precondition("see-saw needs at least one restart and one iteration".into()));
        }
        Ok(())
    }
}

/// Symmetrizes `x` when its anti-Hermitian part is at most `100 * tol`.
fn hermitian_input(x: &CMat, tol: f64) -> Result<CMat> {
    let asym = x.asymmetry();
    let limit = 100.0 * tol * x.frobenius_norm().max(1.0);
    if asym > limit {
        return Err(Error::Hermiticity { asymmetry: asym, limit });
    }
    Ok(x.hermitian_part())
}

fn min_eigenpair(x: &CMat) -> (f64, DVector<C64>) {
    let eig = linalg::hermitian_eigen(x.as_matrix());
    (eig.min(), eig.vector(0))
}

/// Positive semidefiniteness: `In` iff `λ_min(x) >= -tol`.
pub fn is_psd(x: &CMat, tol: f64) -> Result<MembershipReport> {
    let x = hermitian_input(x, tol)?;
    let (min_eig, vector) = min_eigenpair(&x);
    Ok(MembershipReport {
        verdict: if min_eig >= -tol { Verdict::In } else { Verdict::Out },
        certificate: Some(Certificate::Eigenpair { value: min_eig, vector }),
        min_eig,
        tol,
        seed: None,
        residual: None,
    })
}

/// PPT test: `x >= 0` and `Γ(x) >= 0`. `min_eig` is the smaller of the two
/// spectra's minima; the certificate names the failing (or tighter) side.
pub fn is_ppt(x: &CMat, tol: f64) -> Result<MembershipReport> {
    let x = hermitian_input(x, tol)?;
    let (lo_x, vec_x) = min_eigenpair(&x);
    let (lo_g, vec_g) = min_eigenpair(&partial_transpose(&x));
    let (side, value, vector) = if lo_x < -tol || lo_x <= lo_g {
        (PptSide::Matrix, lo_x, vec_x)
    } else {
        (PptSide::PartialTranspose, lo_g, vec_g)
    };
    let min_eig = lo_x.min(lo_g);
    Ok(MembershipReport {
        verdict: if min_eig >= -tol { Verdict::In } else { Verdict::Out },
        certificate: Some(Certificate::PartialTranspose { side, value, vector }),
        min_eig,
        tol,
        seed: None,
        residual: None,
    })
}

/// Separability where it is decidable.
///
/// For `m n <= 6` the PPT test is exact. Otherwise a rank-one input is
/// separable iff its range vector is a product vector, a PPT failure proves
/// entanglement, and anything else is `Indeterminate`.
pub fn is_separable_decidable(x: &CMat, tol: f64) -> Result<MembershipReport> {
    let psd = is_psd(x, tol)?;
    if !psd.is_in() {
        return Err(Error::Precondition(format!(
            "separability test needs a PSD input, min eigenvalue {:.3e}",
            psd.min_eig
        )));
    }
    let dims = x.dims();
    if dims.total() <= PPT_DECIDES_SEPARABILITY_UP_TO {
        return is_ppt(x, tol);
    }

    let x = x.hermitian_part();
    let eig = linalg::hermitian_eigen(x.as_matrix());
    let top = eig.max();
    let rank = eig.values.iter().filter(|&&l| l > tol * top.max(f64::MIN_POSITIVE)).count();
    if rank == 1 {
        let vector = eig.vector(eig.values.len() - 1);
        let srank = sr(&CVec::new(dims, vector.clone())?, DEFAULT_TOL)?;
        return Ok(MembershipReport {
            verdict: if srank == 1 { Verdict::In } else { Verdict::Out },
            certificate: Some(Certificate::SchmidtRank { rank: srank, vector }),
            min_eig: psd.min_eig,
            tol,
            seed: None,
            residual: None,
        });
    }
    let ppt = is_ppt(&x, tol)?;
    if ppt.is_in() {
        Ok(MembershipReport { verdict: Verdict::Indeterminate, ..ppt })
    } else {
        Ok(ppt)
    }
}

/// Best product pair found by [`min_product_expectation`].
#[derive(Debug, Clone)]
pub struct ProductMinimum {
    pub value: f64,
    pub z: DVector<C64>,
    pub y: DVector<C64>,
}

/// Best Schmidt-rank-`k` vector found by [`min_sr_k_expectation`].
#[derive(Debug, Clone)]
pub struct SchmidtMinimum {
    pub value: f64,
    pub vector: CVec,
}

/// Heuristic minimum of `(z ⊗ y)* W (z ⊗ y)` over unit `z`, `y`.
///
/// The returned value is attained by the returned pair, so it is an upper
/// bound on the true minimum.
pub fn min_product_expectation(w: &CMat, cfg: &SeesawConfig) -> Result<ProductMinimum> {
    cfg.check()?;
    let w = hermitian_input(w, cfg.tol)?;
    let best = rank_k_search(&w, 1, cfg);
    let z = best.x.column(0).into_owned();
    let y = best.y.column(0).into_owned();
    // x, y are scaled so that z ⊗ y is the unit minimizer; split the norm
    let (zn, yn) = (z.norm(), y.norm());
    Ok(ProductMinimum {
        value: best.value,
        z: z / Complex::from(zn),
        y: y / Complex::from(yn),
    })
}

/// Heuristic minimum of `v* W v` over unit `v` with Schmidt rank at most `k`.
///
/// `k = d` is the exact minimum eigenvalue. For `k < d` the search grows the
/// rank one level at a time, warm-starting each level from the previous
/// optimum, so the value is nonincreasing in `k` for a fixed configuration.
pub fn min_sr_k_expectation(w: &CMat, k: usize, cfg: &SeesawConfig) -> Result<SchmidtMinimum> {
    cfg.check()?;
    let dims = w.dims();
    if k == 0 || k > dims.d() {
        return Err(Error::Precondition(format!("Schmidt rank bound {k} outside 1..={}", dims.d())));
    }
    let w = hermitian_input(w, cfg.tol)?;
    if k == dims.d() {
        let (value, vector) = min_eigenpair(&w);
        return Ok(SchmidtMinimum { value, vector: CVec::new(dims, vector)? });
    }
    let best = rank_k_search(&w, k, cfg);
    Ok(SchmidtMinimum { value: best.value, vector: CVec::new(dims, best.vector())? })
}

/// Block-positivity: `Out` with a product-vector certificate when the
/// see-saw finds a negative expectation, `In` only when `W` is PSD, and
/// `Indeterminate` otherwise.
pub fn is_block_positive_heuristic(w: &CMat, cfg: &SeesawConfig) -> Result<MembershipReport> {
    let tol = cfg.tol;
    let sym = hermitian_input(w, tol)?;
    let (min_eig, vector) = min_eigenpair(&sym);
    if min_eig >= -tol {
        return Ok(MembershipReport {
            verdict: Verdict::In,
            certificate: Some(Certificate::Eigenpair { value: min_eig, vector }),
            min_eig,
            tol,
            seed: Some(cfg.seed),
            residual: None,
        });
    }
    let best = min_product_expectation(&sym, cfg)?;
    let verdict = if best.value < -tol { Verdict::Out } else { Verdict::Indeterminate };
    Ok(MembershipReport {
        verdict,
        certificate: Some(Certificate::ProductVector { value: best.value, z: best.z, y: best.y }),
        min_eig,
        tol,
        seed: Some(cfg.seed),
        residual: None,
    })
}

/// `v = ∑_{i<k} x_i ⊗ y_i` with `x` (`m x k`) and `y` (`n x k`).
struct RankKPoint {
    value: f64,
    x: DMatrix<C64>,
    y: DMatrix<C64>,
}

impl RankKPoint {
    fn vector(&self) -> DVector<C64> {
        compose(&self.x, &self.y)
    }
}

fn compose(x: &DMatrix<C64>, y: &DMatrix<C64>) -> DVector<C64> {
    let mut v = DVector::from_element(x.nrows() * y.nrows(), ZERO);
    for i in 0..x.ncols() {
        v += x.column(i).kronecker(&y.column(i));
    }
    v
}

/// Linear map from stacked first-factor coefficients to `v`, given
/// orthonormal second-factor columns `y`: `L[(a n + b), (i m + a)] = y[b, i]`.
fn lift_first(dims: BipartiteDims, y: &DMatrix<C64>) -> DMatrix<C64> {
    let (m, n, k) = (dims.m(), dims.n(), y.ncols());
    let mut l = DMatrix::from_element(m * n, m * k, ZERO);
    for i in 0..k {
        for a in 0..m {
            for b in 0..n {
                l[(a * n + b, i * m + a)] = y[(b, i)];
            }
        }
    }
    l
}

/// `L[(a n + b), (i n + b)] = x[a, i]` for orthonormal first-factor columns `x`.
fn lift_second(dims: BipartiteDims, x: &DMatrix<C64>) -> DMatrix<C64> {
    let (m, n, k) = (dims.m(), dims.n(), x.ncols());
    let mut l = DMatrix::from_element(m * n, n * k, ZERO);
    for i in 0..k {
        for a in 0..m {
            for b in 0..n {
                l[(a * n + b, i * n + b)] = x[(a, i)];
            }
        }
    }
    l
}

/// Minimizes `c* (L* W L) c` over unit `c`; returns `(value, c)`.
fn reduced_min(w: &DMatrix<C64>, l: &DMatrix<C64>) -> (f64, DVector<C64>) {
    let h = l.adjoint() * w * l;
    let eig = linalg::hermitian_eigen(&h);
    (eig.min(), eig.vector(0))
}

/// Alternating minimization from the second-factor start `y0`.
fn alternate(w: &CMat, y0: DMatrix<C64>, cfg: &SeesawConfig) -> RankKPoint {
    let dims = w.dims();
    let (m, n) = (dims.m(), dims.n());
    let k = y0.ncols();
    let wm = w.as_matrix();
    let mut y = linalg::orthonormal_columns(&y0);
    let (mut value, c) = reduced_min(wm, &lift_first(dims, &y));
    let mut x = DMatrix::from_fn(m, k, |a, i| c[i * m + a]);
    for _ in 0..cfg.iters_per_restart {
        let xo = linalg::orthonormal_columns(&x);
        let (vy, cy) = reduced_min(wm, &lift_second(dims, &xo));
        let ynew = DMatrix::from_fn(n, k, |b, i| cy[i * n + b]);
        let yo = linalg::orthonormal_columns(&ynew);
        let (vx, cx) = reduced_min(wm, &lift_first(dims, &yo));
        let xnew = DMatrix::from_fn(m, k, |a, i| cx[i * m + a]);
        let improved = value - vx.min(vy);
        // keep the configuration that actually attains the reported value
        if vx <= vy {
            x = xnew;
            y = yo;
            value = vx;
        } else {
            x = xo;
            y = ynew;
            value = vy;
        }
        if improved <= cfg.tol * 1e-3 {
            break;
        }
    }
    RankKPoint { value, x, y }
}

/// Multi-restart search over Schmidt rank `1..=k`, each level warm-started
/// from the best point of the level below.
fn rank_k_search(w: &CMat, k: usize, cfg: &SeesawConfig) -> RankKPoint {
    let n = w.dims().n();
    let mut best: Option<RankKPoint> = None;
    for level in 1..=k {
        let mut level_best: Option<RankKPoint> = None;
        for restart in 0..cfg.restarts {
            let mut rng = random::rng(cfg.seed.wrapping_add(restart as u64));
            rng.set_stream(level as u64);
            let start = match (&best, restart) {
                (Some(prev), 0) => {
                    let mut y0 = DMatrix::from_element(n, level, ZERO);
                    y0.columns_mut(0, level - 1).copy_from(&prev.y);
                    y0.set_column(level - 1, &random::gaussian_vector(&mut rng, n));
                    y0
                }
                _ => random::ginibre(&mut rng, n, level),
            };
            let point = alternate(w, start, cfg);
            if level_best.as_ref().is_none_or(|b| point.value < b.value) {
                level_best = Some(point);
            }
        }
        best = level_best;
    }
    best.expect("at least one restart")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::kron;

    fn dims(m: usize, n: usize) -> BipartiteDims {
        BipartiteDims::new(m, n).unwrap()
    }

    fn bell() -> CVec {
        CVec::max_entangled(dims(2, 2))
    }

    fn singlet() -> CVec {
        let s = 0.5f64.sqrt();
        let d = dims(2, 2);
        let data = DVector::from_vec(vec![ZERO, Complex::new(s, 0.0), Complex::new(-s, 0.0), ZERO]);
        CVec::new(d, data).unwrap()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn psd_identity_is_in() {
        let r = is_psd(&CMat::identity(dims(2, 3)), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::In);
        assert!((r.min_eig - 1.0).abs() < 1e-14);
    }

    #[test]
    fn psd_negative_diagonal_is_out_with_certificate() {
        let z = DMatrix::from_diagonal(&DVector::from_vec(vec![Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)]));
        let x = kron(&z, &DMatrix::identity(2, 2)).unwrap();
        let r = is_psd(&x, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Out);
        let again = r.certificate.as_ref().unwrap().reevaluate(&x).unwrap().unwrap();
        assert!((again - r.min_eig).abs() <= 10.0 * TOL);
        assert!((r.min_eig + 1.0).abs() < 1e-14);
    }

    #[test]
    fn psd_bell_projector_has_zero_floor() {
        let r = is_psd(&bell().projector(), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::In);
        assert!(r.min_eig.abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut a = CMat::identity(dims(2, 2)).into_matrix();
        a[(0, 1)] = Complex::new(1.0, 0.0);
        let a = CMat::new(dims(2, 2), a).unwrap();
        assert!(matches!(is_psd(&a, TOL), Err(Error::Hermiticity { .. })));
        // round-off sized asymmetry is absorbed
        let mut b = CMat::identity(dims(2, 2)).into_matrix();
        b[(0, 1)] = Complex::new(1e-12, 0.0);
        assert!(is_psd(&CMat::new(dims(2, 2), b).unwrap(), TOL).unwrap().is_in());
    }

    #[test]
    fn ppt_examples() {
        assert!(is_ppt(&CMat::identity(dims(3, 3)), TOL).unwrap().is_in());
        let p = bell().projector();
        let r = is_ppt(&p, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Out);
        assert!((r.min_eig + 0.5).abs() < 1e-12);
        match r.certificate.as_ref().unwrap() {
            Certificate::PartialTranspose { side, .. } => assert_eq!(*side, PptSide::PartialTranspose),
            other => panic!("unexpected certificate {other:?}"),
        }
        let again = r.certificate.unwrap().reevaluate(&p).unwrap().unwrap();
        assert!((again + 0.5).abs() <= 10.0 * TOL);

        let mut rng = random::rng(3);
        let (_, _, w) = random::product_vector(&mut rng, dims(2, 3));
        assert!(is_ppt(&w.projector(), TOL).unwrap().is_in());
    }

    #[test]
    fn separability_examples() {
        let mut rng = random::rng(4);
        let (_, _, w) = random::product_vector(&mut rng, dims(3, 3));
        assert!(is_separable_decidable(&w.projector(), TOL).unwrap().is_in());
        assert_eq!(is_separable_decidable(&bell().projector(), TOL).unwrap().verdict, Verdict::Out);

        let v = random::planted_schmidt_vector(&mut rng, dims(3, 3), 2).unwrap();
        let r = is_separable_decidable(&v.projector(), TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Out);
        assert!(matches!(r.certificate, Some(Certificate::SchmidtRank { rank: 2, .. })));

        // full-rank PPT input above the decidable region
        let x = CMat::identity(dims(3, 3));
        assert_eq!(is_separable_decidable(&x, TOL).unwrap().verdict, Verdict::Indeterminate);
        // non-PSD input violates the precondition
        let neg = CMat::identity(dims(2, 2)).scale(-1.0);
        assert!(matches!(is_separable_decidable(&neg, TOL), Err(Error::Precondition(_))));
    }

    #[test]
    fn entangled_mixture_beyond_six_is_out_via_ppt() {
        let d = dims(3, 3);
        let x = &CVec::max_entangled(d).projector().scale(0.9) + &CMat::identity(d).scale(0.1 / 9.0);
        assert_eq!(is_separable_decidable(&x, TOL).unwrap().verdict, Verdict::Out);
    }

    #[test]
    fn product_expectation_of_identity_and_swap() {
        let cfg = SeesawConfig::with_seed(1);
        let id = min_product_expectation(&CMat::identity(dims(2, 3)), &cfg).unwrap();
        assert!((id.value - 1.0).abs() < 1e-12);
        let swap = CMat::swap(dims(2, 2)).unwrap();
        let best = min_product_expectation(&swap, &cfg).unwrap();
        assert!(best.value.abs() < 1e-9, "{}", best.value);
        // closed form (z⊗y)*F(z⊗y) = |⟨z,y⟩|²
        let overlap = best.z.dotc(&best.y).norm_sqr();
        assert!((overlap - best.value).abs() < 1e-12);
    }

    #[test]
    fn product_expectation_of_partial_transposed_bell_matches_grid() {
        let w = partial_transpose(&bell().projector());
        let best = min_product_expectation(&w, &SeesawConfig::with_seed(2)).unwrap();
        // grid oracle: 10^4 product vectors parametrized by Bloch angles
        let mut grid_min = f64::INFINITY;
        let steps = 10;
        for a in 0..steps {
            for b in 0..steps {
                for c in 0..steps {
                    for d in 0..steps {
                        let th1 = std::f64::consts::PI * a as f64 / (steps - 1) as f64;
                        let ph1 = 2.0 * std::f64::consts::PI * b as f64 / steps as f64;
                        let th2 = std::f64::consts::PI * c as f64 / (steps - 1) as f64;
                        let ph2 = 2.0 * std::f64::consts::PI * d as f64 / steps as f64;
                        let z = DVector::from_vec(vec![
                            Complex::new((th1 / 2.0).cos(), 0.0),
                            Complex::from_polar((th1 / 2.0).sin(), ph1),
                        ]);
                        let y = DVector::from_vec(vec![
                            Complex::new((th2 / 2.0).cos(), 0.0),
                            Complex::from_polar((th2 / 2.0).sin(), ph2),
                        ]);
                        let v = CVec::product(&z, &y).unwrap();
                        grid_min = grid_min.min(w.expectation(&v).unwrap());
                    }
                }
            }
        }
        assert!(grid_min.abs() < 1e-12, "grid minimum {grid_min}");
        assert!((best.value - grid_min).abs() < 1e-9);
    }

    #[test]
    fn block_positivity_verdicts() {
        let cfg = SeesawConfig::with_seed(5);
        let mut rng = random::rng(5);
        let psd = random::psd(&mut rng, dims(2, 3));
        assert_eq!(is_block_positive_heuristic(&psd, &cfg).unwrap().verdict, Verdict::In);

        let swap = CMat::swap(dims(2, 2)).unwrap();
        let r = is_block_positive_heuristic(&swap, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert!((r.min_eig + 1.0).abs() < 1e-12);
        assert_eq!(r.seed, Some(5));

        let e0 = DVector::from_vec(vec![Complex::new(1.0, 0.0), ZERO]);
        let u = crate::tensor::lift_product_to_target(&e0, &e0, &singlet()).unwrap();
        let broken = &(&u.adjoint() * &swap) * &u;
        let r = is_block_positive_heuristic(&broken, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Out);
        let cert = r.certificate.unwrap();
        let again = cert.reevaluate(&broken).unwrap().unwrap();
        assert!(again < -cfg.tol);
        assert!(again <= -1.0 + 1e-9);
    }

    #[test]
    fn schmidt_k_expectation_examples() {
        let cfg = SeesawConfig::with_seed(6);
        let swap = CMat::swap(dims(2, 2)).unwrap();
        let k1 = min_sr_k_expectation(&swap, 1, &cfg).unwrap();
        assert!(k1.value.abs() < 1e-9);
        let k2 = min_sr_k_expectation(&swap, 2, &cfg).unwrap();
        assert!((k2.value + 1.0).abs() < 1e-12);
        assert!(matches!(min_sr_k_expectation(&swap, 3, &cfg), Err(Error::Precondition(_))));
        assert!(matches!(min_sr_k_expectation(&swap, 0, &cfg), Err(Error::Precondition(_))));

        let mut rng = random::rng(6);
        let w = random::psd(&mut rng, dims(3, 4)).scale(-1.0).hermitian_part();
        let full = min_sr_k_expectation(&w, 3, &cfg).unwrap();
        assert!((full.value - w.min_eigenvalue()).abs() < 1e-12);
    }

    #[test]
    fn schmidt_k_vector_has_bounded_rank_and_attains_value() {
        let cfg = SeesawConfig { restarts: 4, ..SeesawConfig::with_seed(8) };
        let mut rng = random::rng(8);
        let d = dims(3, 3);
        let g = random::ginibre(&mut rng, 9, 9);
        let w = CMat::new(d, linalg::hermitian_part(&g)).unwrap();
        for k in 1..=2 {
            let best = min_sr_k_expectation(&w, k, &cfg).unwrap();
            assert!((best.vector.norm() - 1.0).abs() < 1e-10);
            assert!(sr(&best.vector, 1e-7).unwrap() <= k);
            assert!((w.expectation(&best.vector).unwrap() - best.value).abs() < 1e-10);
        }
    }
}
