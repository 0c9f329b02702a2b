//! Kraus families (C*-convex coefficient lists) and the explicit
//! constructions built from them.
//!
//! A family `{A_i}` acts on inputs `{X_i}` as `∑ A_i* X_i A_i`. Exact families
//! satisfy `∑ A_i* A_i = I`, contractive ones `∑ A_i* A_i <= I`. An optional
//! operator-Schmidt-rank bound and a locality flag record the structural
//! constraints the family was built under; [`validate`] re-checks all of them.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cone::{Certificate, FamilyInvariant, MembershipReport, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::random::{self, SeededRng};
use crate::tensor::{
    kron, lift_product_to_target, osr, require_unit, sr, BipartiteDims, CMat, CVec, DEFAULT_TOL,
};

/// Normalization tolerance for `∑ A_i* A_i` against `I`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Eigenvalues of `I - S` at or below this are dropped by [`complete_to_identity`].
pub const COMPLETION_CUTOFF: f64 = 1e-12;

/// Resampling budget for [`random_family`].
pub const MAX_RESAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `∑ A_i* A_i = I`
    Exact,
    /// `∑ A_i* A_i <= I`
    Contractive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Locality {
    Global,
    /// Every coefficient is a product `B_i ⊗ C_i`.
    Local,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausFamily {
    dims: BipartiteDims,
    ops: Vec<CMat>,
    mode: Normalization,
    osr_bound: Option<usize>,
    locality: Locality,
    seed: Option<u64>,
}

impl KrausFamily {
    /// A global family with no rank bound. An empty list is allowed here (it
    /// is the starting point of a completion) but never validates.
    pub fn new(dims: BipartiteDims, ops: Vec<CMat>, mode: Normalization) -> Result<Self> {
        if let Some(bad) = ops.iter().find(|a| a.dims() != dims) {
            return Err(Error::Dim(format!("operator on {} in a family over {dims}", bad.dims())));
        }
        Ok(KrausFamily { dims, ops, mode, osr_bound: None, locality: Locality::Global, seed: None })
    }

    pub fn with_osr_bound(mut self, k: Option<usize>) -> Self {
        self.osr_bound = k;
        self
    }

    pub fn with_locality(mut self, locality: Locality) -> Self {
        self.locality = locality;
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn ops(&self) -> &[CMat] {
        &self.ops
    }

    pub fn mode(&self) -> Normalization {
        self.mode
    }

    pub fn osr_bound(&self) -> Option<usize> {
        self.osr_bound
    }

    pub fn locality(&self) -> Locality {
        self.locality
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `S = ∑ A_i* A_i`.
    pub fn gram(&self) -> CMat {
        self.ops
            .iter()
            .fold(CMat::zeros(self.dims), |acc, a| &acc + &(&a.adjoint() * a))
            .hermitian_part()
    }

    /// `‖S - I‖_F`.
    pub fn exact_residual(&self) -> f64 {
        self.gram().distance(&CMat::identity(self.dims)).expect("same dims")
    }

    /// Largest operator Schmidt rank among the coefficients (zero operators
    /// count as rank 0).
    pub fn certified_osr(&self, tol: f64) -> Result<usize> {
        self.ops.iter().try_fold(0, |acc, a| Ok(acc.max(osr_or_zero(a, tol)?)))
    }
}

fn osr_or_zero(a: &CMat, tol: f64) -> Result<usize> {
    if a.frobenius_norm() == 0.0 {
        Ok(0)
    } else {
        osr(a, tol)
    }
}

fn family_report(verdict: Verdict, certificate: Option<Certificate>, min_eig: f64, residual: f64) -> MembershipReport {
    MembershipReport {
        verdict,
        certificate,
        min_eig,
        tol: NORMALIZATION_TOL,
        seed: None,
        residual: Some(residual),
    }
}

/// Checks normalization for the family's mode, the OSR bound and locality.
///
/// `min_eig` is `λ_min(I - S)`; `residual` is `‖S - I‖_F` for exact families
/// and `max(0, λ_max(S) - 1)` for contractive ones.
pub fn validate(f: &KrausFamily) -> Result<MembershipReport> {
    if f.is_empty() {
        return Err(Error::Precondition("cannot validate an empty Kraus family".into()));
    }
    let gram = f.gram();
    let eig = gram.eigenvalues();
    let min_eig = 1.0 - eig[eig.len() - 1];
    let violation = |invariant, residual, index| {
        Some(Certificate::Invariant { invariant, residual, index })
    };

    let residual = match f.mode {
        Normalization::Exact => {
            let r = f.exact_residual();
            if r > NORMALIZATION_TOL {
                let cert = violation(FamilyInvariant::ExactNormalization, r, None);
                return Ok(family_report(Verdict::Out, cert, min_eig, r));
            }
            r
        }
        Normalization::Contractive => {
            let r = (-min_eig).max(0.0);
            if r > NORMALIZATION_TOL {
                let cert = violation(FamilyInvariant::ContractiveNormalization, r, None);
                return Ok(family_report(Verdict::Out, cert, min_eig, r));
            }
            r
        }
    };

    let required = match (f.locality, f.osr_bound) {
        (Locality::Local, _) => Some((1, FamilyInvariant::Locality)),
        (Locality::Global, Some(k)) => Some((k, FamilyInvariant::OsrBound)),
        (Locality::Global, None) => None,
    };
    if let Some((bound, invariant)) = required {
        for (i, a) in f.ops.iter().enumerate() {
            let rank = osr_or_zero(a, DEFAULT_TOL)?;
            if rank > bound {
                let cert = violation(invariant, rank as f64, Some(i));
                return Ok(family_report(Verdict::Out, cert, min_eig, residual));
            }
        }
    }
    Ok(family_report(Verdict::In, None, min_eig, residual))
}

/// `∑ A_i* X_i A_i` for a family that validates.
pub fn apply(f: &KrausFamily, inputs: &[CMat]) -> Result<CMat> {
    if inputs.len() != f.len() {
        return Err(Error::Dim(format!("{} inputs for {} Kraus operators", inputs.len(), f.len())));
    }
    if let Some(bad) = inputs.iter().find(|x| x.dims() != f.dims) {
        return Err(Error::Dim(format!("input on {} for a family over {}", bad.dims(), f.dims)));
    }
    let report = validate(f)?;
    if !report.is_in() {
        return Err(Error::Precondition(format!(
            "Kraus family fails validation: {:?}",
            report.certificate
        )));
    }
    Ok(unchecked_apply(f, inputs))
}

fn unchecked_apply(f: &KrausFamily, inputs: &[CMat]) -> CMat {
    f.ops
        .iter()
        .zip(inputs)
        .fold(CMat::zeros(f.dims), |acc, (a, x)| &acc + &(&(&a.adjoint() * x) * a))
}

/// Parameters for [`random_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecipe {
    pub dims: BipartiteDims,
    pub count: usize,
    /// Operator Schmidt rank bound; `None` draws unconstrained Ginibre
    /// coefficients.
    pub k: Option<usize>,
    pub mode: Normalization,
    pub locality: Locality,
}

impl FamilyRecipe {
    pub fn new(dims: BipartiteDims, count: usize, k: Option<usize>, mode: Normalization) -> Self {
        FamilyRecipe { dims, count, k, mode, locality: Locality::Global }
    }

    pub fn local(dims: BipartiteDims, count: usize, mode: Normalization) -> Self {
        FamilyRecipe { dims, count, k: Some(1), mode, locality: Locality::Local }
    }
}

/// Seeded random Kraus family.
///
/// * Local or `k = 1`, exact: a grid `{B_i ⊗ C_j}` with `∑ B*B = I_m` and
///   `∑ C*C = I_n`.
/// * `k >= 2`, exact: the local grid left-multiplied by independent controlled
///   unitaries `∑_{a<k} P_a ⊗ V_a`, so each coefficient has OSR at most `k`.
/// * Contractive: each coefficient is a sum of `k` Gaussian product terms,
///   rescaled globally so that `λ_max(∑ A*A) = 1`.
/// * `k = None`: Ginibre coefficients, normalized by `S^{-1/2}` (exact) or the
///   global rescale (contractive).
///
/// Any bound recorded on the result is re-certified before returning.
pub fn random_family(recipe: &FamilyRecipe, seed: u64) -> Result<KrausFamily> {
    let dims = recipe.dims;
    if recipe.count == 0 {
        return Err(Error::Precondition("a Kraus family needs at least one operator".into()));
    }
    let k = match (recipe.locality, recipe.k) {
        (Locality::Local, None | Some(1)) => Some(1),
        (Locality::Local, Some(k)) => {
            return Err(Error::Precondition(format!("local families have OSR 1, not {k}")));
        }
        (Locality::Global, k) => k,
    };
    if let Some(k) = k {
        if k == 0 || k > dims.d() {
            return Err(Error::Precondition(format!("OSR bound {k} outside 1..={}", dims.d())));
        }
    }

    let mut rng = random::rng(seed);
    let mut last = String::new();
    for _ in 0..MAX_RESAMPLES {
        let ops = match draw_ops(&mut rng, recipe, k) {
            Ok(ops) => ops,
            Err(reason) => {
                last = reason;
                continue;
            }
        };
        let family = KrausFamily::new(dims, ops, recipe.mode)?
            .with_osr_bound(k)
            .with_locality(recipe.locality)
            .with_seed(Some(seed));
        if let Some(k) = k {
            let certified = family.certified_osr(DEFAULT_TOL)?;
            if certified > k {
                last = format!("certified OSR {certified} exceeds {k}");
                continue;
            }
        }
        return Ok(family);
    }
    Err(Error::DegenerateSample { attempts: MAX_RESAMPLES, reason: last })
}

type Draw = std::result::Result<Vec<CMat>, String>;

fn draw_ops(rng: &mut SeededRng, recipe: &FamilyRecipe, k: Option<usize>) -> Draw {
    let dims = recipe.dims;
    match (recipe.mode, k) {
        (Normalization::Exact, Some(1)) => local_grid(rng, dims, recipe.count),
        (Normalization::Exact, Some(k)) => {
            let grid = local_grid(rng, dims, recipe.count)?;
            Ok(grid
                .into_iter()
                .map(|l| &controlled_unitary(rng, dims, k) * &l)
                .collect())
        }
        (Normalization::Exact, None) => {
            let ops: Vec<DMatrix<C64>> = (0..recipe.count)
                .map(|_| random::ginibre(rng, dims.total(), dims.total()))
                .collect();
            let inv_sqrt = inverse_sqrt_gram(&ops)?;
            Ok(ops.into_iter().map(|g| cmat(dims, g * &inv_sqrt)).collect())
        }
        (Normalization::Contractive, k) => {
            let ops: Vec<CMat> = (0..recipe.count)
                .map(|_| match k {
                    Some(k) => random::planted_osr_operator(rng, dims, k).expect("k <= d <= min(m², n²)"),
                    None => cmat(dims, random::ginibre(rng, dims.total(), dims.total())),
                })
                .collect();
            let top = linalg::max_eigenvalue(
                &ops.iter().fold(DMatrix::zeros(dims.total(), dims.total()), |acc, a| {
                    acc + a.as_matrix().adjoint() * a.as_matrix()
                }),
            );
            if top <= 0.0 {
                return Err("zero Gram matrix".into());
            }
            let factor = 1.0 / top.sqrt();
            Ok(ops.into_iter().map(|a| a.scale(factor)).collect())
        }
    }
}

fn cmat(dims: BipartiteDims, a: DMatrix<C64>) -> CMat {
    CMat::new(dims, a).expect("operator of side M")
}

/// `(∑ G_i* G_i)^{-1/2}`, refusing ill-conditioned Gram matrices.
fn inverse_sqrt_gram(ops: &[DMatrix<C64>]) -> std::result::Result<DMatrix<C64>, String> {
    let side = ops[0].ncols();
    let s = ops.iter().fold(DMatrix::zeros(side, side), |acc, g| acc + g.adjoint() * g);
    let eig = linalg::hermitian_eigen(&s);
    if eig.min() <= 1e-10 * eig.max() {
        return Err(format!("singular Gram matrix, condition {:.3e}", eig.max() / eig.min()));
    }
    Ok(linalg::psd_inv_sqrt(&s))
}

/// `count = p q` with `p` the largest divisor not above `√count`.
fn grid_shape(count: usize) -> (usize, usize) {
    let p = (1..=count).filter(|p| count.is_multiple_of(*p) && p * p <= count).max().unwrap_or(1);
    (p, count / p)
}

/// Exact local family `{B_i ⊗ C_j}` with `p q = count` coefficients.
fn local_grid(rng: &mut SeededRng, dims: BipartiteDims, count: usize) -> Draw {
    let (p, q) = grid_shape(count);
    let normalized = |rng: &mut SeededRng, len: usize, side: usize| {
        let raw: Vec<DMatrix<C64>> = (0..len).map(|_| random::ginibre(rng, side, side)).collect();
        let inv_sqrt = inverse_sqrt_gram(&raw)?;
        Ok::<_, String>(raw.into_iter().map(|b| b * &inv_sqrt).collect::<Vec<_>>())
    };
    let bs = normalized(rng, p, dims.m())?;
    let cs = normalized(rng, q, dims.n())?;
    let mut ops = Vec::with_capacity(count);
    for b in &bs {
        for c in &cs {
            ops.push(kron(b, c).expect("square factors"));
        }
    }
    Ok(ops)
}

/// `∑_{a<k} P_a ⊗ V_a`: `P_a` project onto `k` disjoint groups of columns of a
/// Haar unitary on `C^m`, `V_a` are Haar unitaries on `C^n`. Requires `k <= m`.
fn controlled_unitary(rng: &mut SeededRng, dims: BipartiteDims, k: usize) -> CMat {
    let (m, n) = (dims.m(), dims.n());
    let w = random::haar_unitary(rng, m);
    let (base, extra) = (m / k, m % k);
    let mut start = 0;
    let mut acc = DMatrix::from_element(dims.total(), dims.total(), ZERO);
    for a in 0..k {
        let size = base + usize::from(a < extra);
        let cols = w.columns(start, size);
        let proj = cols * cols.adjoint();
        acc += proj.kronecker(&random::haar_unitary(rng, n));
        start += size;
    }
    cmat(dims, acc)
}

/// The standard product basis `{e_i ⊗ f_j}` in flat-index order.
pub fn standard_anchors(dims: BipartiteDims) -> Vec<CVec> {
    (0..dims.m())
        .flat_map(|i| (0..dims.n()).map(move |j| CVec::basis(dims, i, j)))
        .collect()
}

/// Appends rank-one coefficients `B_j = √μ_j f_j u_j*` built from the
/// spectral decomposition `I - S = ∑ μ_j u_j u_j*` so that the result is
/// exact. Anchors `f_j` must be unit product vectors; modes with
/// `μ_j <= COMPLETION_CUTOFF` are dropped.
///
/// The returned family carries the certified OSR of all its coefficients as
/// its bound, and is local only if every coefficient has OSR 1.
pub fn complete_to_identity(partial: &KrausFamily, anchors: &[CVec]) -> Result<KrausFamily> {
    let dims = partial.dims;
    let gram = partial.gram();
    let top = gram.max_eigenvalue();
    if top > 1.0 + NORMALIZATION_TOL {
        return Err(Error::Precondition(format!("∑ A*A has eigenvalue {top:.12} > 1")));
    }
    let remainder = &CMat::identity(dims) - &gram;
    let modes: Vec<(f64, CVec)> = remainder
        .eigen()
        .into_iter()
        .filter(|(mu, _)| *mu > COMPLETION_CUTOFF)
        .collect();
    if anchors.len() < modes.len() {
        return Err(Error::Anchor { needed: modes.len(), available: anchors.len() });
    }

    let mut ops = partial.ops.clone();
    for ((mu, u), f) in modes.iter().zip(anchors) {
        if f.dims() != dims {
            return Err(Error::Dim(format!("anchor in {}, family over {dims}", f.dims())));
        }
        f.require_unit("anchor")?;
        if sr(f, DEFAULT_TOL)? != 1 {
            return Err(Error::Precondition("completion anchors must be product vectors".into()));
        }
        ops.push(f.outer(u)?.scale(mu.sqrt()));
    }

    let family = KrausFamily::new(dims, ops, Normalization::Exact)?.with_seed(partial.seed);
    let bound = family.certified_osr(DEFAULT_TOL)?;
    let locality = if bound <= 1 { Locality::Local } else { Locality::Global };
    Ok(family.with_osr_bound(Some(bound.max(1))).with_locality(locality))
}

/// Output of [`collapse_construction`].
#[derive(Debug, Clone)]
pub struct CollapseConstruction {
    /// `M` coefficients `c e_i v*` followed by the completion terms.
    pub family: KrausFamily,
    /// `(1 / (c² M)) I` for the first `M` coefficients, zero matrices after.
    pub inputs: Vec<CMat>,
    /// The scalar `c = 1 / √(2M)`.
    pub scale: f64,
    /// Number of leading `c e_i v*` coefficients (`M`).
    pub primary: usize,
}

/// Realizes `vv*` as an exact C*-combination of PPT inputs with coefficients
/// of OSR at most `d`.
pub fn collapse_construction(v: &CVec) -> Result<CollapseConstruction> {
    v.require_unit("collapse target")?;
    let dims = v.dims();
    let big_m = dims.total();
    let scale = 1.0 / ((2 * big_m) as f64).sqrt();
    let anchors = standard_anchors(dims);
    let ops = anchors
        .iter()
        .map(|e| e.outer(v).map(|a| a.scale(scale)))
        .collect::<Result<Vec<_>>>()?;
    let partial = KrausFamily::new(dims, ops, Normalization::Contractive)?;
    let family = complete_to_identity(&partial, &anchors)?;

    let weight = 1.0 / (scale * scale * big_m as f64);
    let mut inputs = vec![CMat::identity(dims).scale(weight); big_m];
    inputs.resize(family.len(), CMat::zeros(dims));
    Ok(CollapseConstruction { family, inputs, scale, primary: big_m })
}

/// Single-coefficient contractive family `{u v*}` with `A* I A = vv*`.
pub fn embed_schmidt_k(v: &CVec, k: usize, u_product: &CVec) -> Result<KrausFamily> {
    let dims = v.dims();
    if u_product.dims() != dims {
        return Err(Error::Dim(format!("u in {}, v in {dims}", u_product.dims())));
    }
    if k == 0 || k > dims.d() {
        return Err(Error::Precondition(format!("Schmidt bound {k} outside 1..={}", dims.d())));
    }
    v.require_unit("v")?;
    u_product.require_unit("u")?;
    let rank = sr(v, DEFAULT_TOL)?;
    if rank > k {
        return Err(Error::Precondition(format!("SR(v) = {rank} exceeds k = {k}")));
    }
    if sr(u_product, DEFAULT_TOL)? != 1 {
        return Err(Error::Precondition("u must be a product vector".into()));
    }
    let family = KrausFamily::new(dims, vec![u_product.outer(v)?], Normalization::Contractive)?;
    Ok(family.with_osr_bound(Some(k)))
}

/// Output of [`witness_conjugation`].
#[derive(Debug, Clone)]
pub struct WitnessBreak {
    /// `W' = U* W U`.
    pub conjugated: CMat,
    /// `U` with `U (u ⊗ v) = z / ‖z‖`.
    pub unitary: CMat,
    /// `u ⊗ v`.
    pub product: CVec,
    /// `(u ⊗ v)* W' (u ⊗ v)`.
    pub expectation: f64,
    /// `z* W z / ‖z‖²`.
    pub target_value: f64,
}

/// Conjugates `w` by a unitary that carries the product vector `u ⊗ v` onto
/// the direction of `z`, turning a negative direction of `w` into a negative
/// product expectation of `W' = U* W U`.
pub fn witness_conjugation(
    w: &CMat,
    z: &CVec,
    u: &DVector<C64>,
    v: &DVector<C64>,
) -> Result<WitnessBreak> {
    let dims = w.dims();
    if z.dims() != dims {
        return Err(Error::Dim(format!("z in {}, W on {dims}", z.dims())));
    }
    let limit = 100.0 * DEFAULT_TOL * w.frobenius_norm().max(1.0);
    if w.asymmetry() > limit {
        return Err(Error::Hermiticity { asymmetry: w.asymmetry(), limit });
    }
    let w = w.hermitian_part();
    let zn = z.normalized()?;
    let target_value = w.expectation(&zn)?;
    if target_value >= -DEFAULT_TOL {
        return Err(Error::Precondition(format!(
            "z*Wz/‖z‖² = {target_value:.3e} is not negative"
        )));
    }
    require_unit(u, "u")?;
    require_unit(v, "v")?;
    let unitary = lift_product_to_target(u, v, &zn)?;
    let conjugated = &(&unitary.adjoint() * &w) * &unitary;
    let product = CVec::product(u, v)?;
    let expectation = conjugated.expectation(&product)?;
    Ok(WitnessBreak { conjugated, unitary, product, expectation, target_value })
}

/// Output of [`strict_enlargement`].
#[derive(Debug, Clone)]
pub struct Enlargement {
    /// The singleton exact family `{U*}`.
    pub family: KrausFamily,
    /// `U` with `U (u ⊗ v) = w`.
    pub unitary: CMat,
    /// The separable input `(uu*) ⊗ (vv*)`.
    pub input: CMat,
    /// `U (uu* ⊗ vv*) U* = ww*`.
    pub output: CMat,
}

/// Carries the product projector `(uu*) ⊗ (vv*)` onto `ww*` with a single
/// unitary coefficient.
///
/// The coefficient is `A = U*` where `U (u ⊗ v) = w`, so that
/// `A* X A = U X U* = ww*`.
pub fn strict_enlargement(u: &DVector<C64>, v: &DVector<C64>, w: &CVec) -> Result<Enlargement> {
    let unitary = lift_product_to_target(u, v, w)?;
    let dims = w.dims();
    let input = CVec::product(u, v)?.projector();
    let family = KrausFamily::new(dims, vec![unitary.adjoint()], Normalization::Exact)?;
    let output = apply(&family, std::slice::from_ref(&input))?;
    Ok(Enlargement { family, unitary, input, output })
}

/// Nonnegative combination `∑ λ_j X_j`.
#[derive(Debug, Clone)]
pub struct ConicCombination {
    dims: BipartiteDims,
    weights: Vec<f64>,
    terms: Vec<CMat>,
}

impl ConicCombination {
    pub fn new(dims: BipartiteDims, weights: Vec<f64>, terms: Vec<CMat>) -> Result<Self> {
        if weights.len() != terms.len() {
            return Err(Error::Precondition(format!(
                "{} weights for {} terms",
                weights.len(),
                terms.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Precondition(format!("conic weight {w} is not a nonnegative real")));
        }
        if let Some(bad) = terms.iter().find(|x| x.dims() != dims) {
            return Err(Error::Dim(format!("term on {} in a combination over {dims}", bad.dims())));
        }
        Ok(ConicCombination { dims, weights, terms })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn terms(&self) -> &[CMat] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `∑ λ_j X_j`; the empty combination is the zero matrix.
pub fn conic_scale(c: &ConicCombination) -> CMat {
    c.weights
        .iter()
        .zip(&c.terms)
        .fold(CMat::zeros(c.dims), |acc, (w, x)| &acc + &x.scale(*w))
}

/// Spectral decomposition of a Hermitian PSD `y` as eigenvalues and unit
/// eigenvectors, keeping eigenvalues above `cutoff * max(1, λ_max)`.
pub fn spectral_terms(y: &CMat, cutoff: f64) -> Vec<(f64, CVec)> {
    let eig = y.eigen();
    let top = eig.last().map_or(0.0, |(l, _)| *l).max(1.0);
    eig.into_iter().filter(|(l, _)| *l > cutoff * top).collect()
}
