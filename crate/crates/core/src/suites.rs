//! Seeded randomized verification suites for the constructive results, plus
//! an exploratory probe for the intermediate PPT cones.
//!
//! Every trial draws from its own stream `derive_seed(seed, index)`, so trials
//! run in parallel and any single trial can be replayed with [`rerun_trial`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{is_ppt, is_psd, is_separable_decidable, Verdict};
use crate::cstar::{
    apply, collapse_construction, conic_scale, embed_schmidt_k, random_family, spectral_terms,
    strict_enlargement, validate, witness_conjugation, ConicCombination, FamilyRecipe,
    KrausFamily, Normalization,
};
use crate::data::ComplexMatrix;
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};
use crate::random::{self, derive_seed, SeededRng};
use crate::tensor::{osr, partial_transpose, sr, BipartiteDims, CMat, CVec};

/// Default number of trials per suite.
pub const DEFAULT_TRIALS: usize = 500;

/// Reported residuals are rounded to this resolution.
pub const RESIDUAL_RESOLUTION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Srank,
    StrictEnlargement,
    ConeCollapsePplus,
    LocalStability,
    WitnessNotCstar,
    PptStability,
    PptCollapse,
    SchmidtEmbedding,
    ProbeIntermediate,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Srank,
        SuiteId::StrictEnlargement,
        SuiteId::ConeCollapsePplus,
        SuiteId::LocalStability,
        SuiteId::WitnessNotCstar,
        SuiteId::PptStability,
        SuiteId::PptCollapse,
        SuiteId::SchmidtEmbedding,
        SuiteId::ProbeIntermediate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Srank => "srank",
            SuiteId::StrictEnlargement => "strict-enlargement",
            SuiteId::ConeCollapsePplus => "cone-collapse-pplus",
            SuiteId::LocalStability => "local-stability",
            SuiteId::WitnessNotCstar => "witness-not-cstar",
            SuiteId::PptStability => "ppt-stability",
            SuiteId::PptCollapse => "ppt-collapse",
            SuiteId::SchmidtEmbedding => "schmidt-embedding",
            SuiteId::ProbeIntermediate => "probe-intermediate",
        }
    }

    /// Residual tolerance used when the caller does not override it.
    pub fn default_residual_tol(self) -> f64 {
        match self {
            SuiteId::StrictEnlargement => 1e-12,
            SuiteId::WitnessNotCstar | SuiteId::PptCollapse | SuiteId::SchmidtEmbedding => 1e-10,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative singular-value cutoff for SR and OSR.
    pub rank: f64,
    /// Eigenvalue slack for PSD/PPT membership.
    pub membership: f64,
    /// Bound on construction residuals.
    pub residual: f64,
}

impl Tolerances {
    pub fn for_suite(id: SuiteId) -> Self {
        Tolerances { rank: 1e-9, membership: 1e-9, residual: id.default_residual_tol() }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dims: BipartiteDims,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Extra PPT inputs (e.g. bound-entangled states) rotated into
    /// `ppt-stability` and `probe-intermediate`.
    pub extra_inputs: Vec<CMat>,
    /// OSR bound for `probe-intermediate`.
    pub k: Option<usize>,
    /// Witness for `witness-not-cstar`; defaults to the swap operator.
    pub witness: Option<CMat>,
}

impl SuiteConfig {
    pub fn new(id: SuiteId, dims: BipartiteDims, trials: usize, seed: u64) -> Self {
        SuiteConfig {
            dims,
            trials,
            seed,
            tolerances: Tolerances::for_suite(id),
            extra_inputs: Vec::new(),
            k: None,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteStatus {
    Verified,
    Failed,
    /// Probe runs: tallies only, never a verdict.
    Exploratory,
    /// The configured input does not meet the suite's precondition.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub index: usize,
    pub seed: u64,
    pub residual: f64,
    pub detail: String,
    pub inputs: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeEvidence {
    pub index: usize,
    pub seed: u64,
    /// Minimum eigenvalue of the output's partial transpose.
    pub min_gamma_eig: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeTallies {
    pub k: usize,
    pub ppt_outputs: usize,
    pub non_ppt_outputs: usize,
    pub evidence: Vec<ProbeEvidence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: SuiteId,
    pub dims: BipartiteDims,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub max_residual: f64,
    pub status: SuiteStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<ProbeTallies>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// Seconds.
    pub wall_time: f64,
}

pub const CSV_HEADER: &str = "suite_id,dims,trials,passes,max_residual,seed";

impl SuiteReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:e},{}",
            self.suite_id, self.dims, self.trials, self.passes, self.max_residual, self.seed
        )
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
    pub inputs: Vec<ComplexMatrix>,
    /// Partial-transpose minimum for probe trials.
    pub gamma_min: Option<f64>,
}

impl TrialOutcome {
    fn new(passed: bool, residual: f64, detail: String, inputs: Vec<ComplexMatrix>) -> Self {
        TrialOutcome { passed, residual, detail, inputs, gamma_min: None }
    }
}

fn quantize(r: f64) -> f64 {
    if r.is_finite() {
        (r / RESIDUAL_RESOLUTION).round() * RESIDUAL_RESOLUTION
    } else {
        r
    }
}

fn payload(ms: &[&CMat]) -> Vec<ComplexMatrix> {
    ms.iter().map(|x| ComplexMatrix::from(x.as_matrix())).collect()
}

fn column(v: &CVec) -> ComplexMatrix {
    let a = DMatrix::from_column_slice(v.dims().total(), 1, v.as_vector().as_slice());
    ComplexMatrix::from(&a)
}

/// Runs a suite. Trials execute in parallel; failures come back ordered by
/// trial index.
pub fn run_suite(id: SuiteId, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    check_config(id, cfg)?;

    if id == SuiteId::WitnessNotCstar {
        let w = witness_operator(cfg)?;
        if is_psd(&w, cfg.tolerances.membership)?.is_in() {
            return Ok(SuiteReport {
                suite_id: id,
                dims: cfg.dims,
                trials: 0,
                passes: 0,
                failures: Vec::new(),
                seed: cfg.seed,
                tolerances: cfg.tolerances,
                max_residual: 0.0,
                status: SuiteStatus::NotApplicable,
                probe: None,
                note: Some("witness is PSD and has no negative eigenvector".into()),
                wall_time: start.elapsed().as_secs_f64(),
            });
        }
    }

    let outcomes: Vec<(usize, u64, TrialOutcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let seed = derive_seed(cfg.seed, index as u64);
            let outcome = run_trial(id, cfg, index, seed).unwrap_or_else(|e| {
                TrialOutcome::new(false, f64::INFINITY, format!("trial error: {e}"), Vec::new())
            });
            (index, seed, outcome)
        })
        .collect();

    let mut passes = 0;
    let mut failures = Vec::new();
    let mut max_residual: f64 = 0.0;
    let mut probe = cfg.k.filter(|_| id == SuiteId::ProbeIntermediate).map(|k| ProbeTallies {
        k,
        ppt_outputs: 0,
        non_ppt_outputs: 0,
        evidence: Vec::new(),
    });
    for (index, seed, outcome) in outcomes {
        max_residual = max_residual.max(outcome.residual);
        if let (Some(tallies), Some(g)) = (probe.as_mut(), outcome.gamma_min) {
            if g < -cfg.tolerances.membership {
                tallies.non_ppt_outputs += 1;
                tallies.evidence.push(ProbeEvidence { index, seed, min_gamma_eig: g });
            } else {
                tallies.ppt_outputs += 1;
            }
        }
        if outcome.passed {
            passes += 1;
        } else {
            failures.push(FailureRecord {
                index,
                seed,
                residual: quantize(outcome.residual),
                detail: outcome.detail,
                inputs: outcome.inputs,
            });
        }
    }

    let status = if id == SuiteId::ProbeIntermediate {
        SuiteStatus::Exploratory
    } else if failures.is_empty() {
        SuiteStatus::Verified
    } else {
        SuiteStatus::Failed
    };
    Ok(SuiteReport {
        suite_id: id,
        dims: cfg.dims,
        trials: cfg.trials,
        passes,
        failures,
        seed: cfg.seed,
        tolerances: cfg.tolerances,
        max_residual: quantize(max_residual),
        status,
        probe,
        note: None,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Replays trial `index` of a suite with the seed it had in [`run_suite`].
pub fn rerun_trial(id: SuiteId, cfg: &SuiteConfig, index: usize) -> Result<TrialOutcome> {
    check_config(id, cfg)?;
    run_trial(id, cfg, index, derive_seed(cfg.seed, index as u64))
}

fn check_config(id: SuiteId, cfg: &SuiteConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(Error::Precondition("a suite needs at least one trial".into()));
    }
    let t = cfg.tolerances;
    for (name, v) in [("rank", t.rank), ("membership", t.membership), ("residual", t.residual)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Precondition(format!("{name} tolerance {v} outside (0, 1)")));
        }
    }
    let dims = cfg.dims;
    match id {
        SuiteId::StrictEnlargement if dims.d() < 2 => Err(Error::Precondition(format!(
            "{dims} has no entangled vectors to enlarge towards"
        ))),
        SuiteId::LocalStability if dims.total() > crate::cone::PPT_DECIDES_SEPARABILITY_UP_TO => {
            Err(Error::Precondition(format!(
                "local-stability needs decidable separability (m n <= 6), got {dims}"
            )))
        }
        SuiteId::ProbeIntermediate => match cfg.k {
            Some(k) if (1..=dims.d()).contains(&k) => Ok(()),
            Some(k) => Err(Error::Precondition(format!("probe bound {k} outside 1..={}", dims.d()))),
            None => Err(Error::Precondition("probe-intermediate needs an OSR bound k".into())),
        },
        SuiteId::PptStability => {
            for x in &cfg.extra_inputs {
                if x.dims() != dims {
                    return Err(Error::Dim(format!("extra input on {}, suite on {dims}", x.dims())));
                }
                if !is_ppt(x, t.membership)?.is_in() {
                    return Err(Error::Precondition("extra inputs must be PPT".into()));
                }
            }
            Ok(())
        }
        SuiteId::WitnessNotCstar => witness_operator(cfg).map(|_| ()),
        _ => Ok(()),
    }
}

fn witness_operator(cfg: &SuiteConfig) -> Result<CMat> {
    match &cfg.witness {
        Some(w) if w.dims() != cfg.dims => {
            Err(Error::Dim(format!("witness on {}, suite on {}", w.dims(), cfg.dims)))
        }
        Some(w) => Ok(w.clone()),
        None => CMat::swap(cfg.dims),
    }
}

fn run_trial(id: SuiteId, cfg: &SuiteConfig, index: usize, seed: u64) -> Result<TrialOutcome> {
    let mut rng = random::rng(seed);
    match id {
        SuiteId::Srank => trial_srank(cfg, &mut rng),
        SuiteId::StrictEnlargement => trial_strict_enlargement(cfg, index, &mut rng),
        SuiteId::ConeCollapsePplus => trial_cone_collapse(cfg, index, &mut rng),
        SuiteId::LocalStability => trial_local_stability(cfg, index, seed, &mut rng),
        SuiteId::WitnessNotCstar => trial_witness(cfg, index, &mut rng),
        SuiteId::PptStability => trial_ppt_stability(cfg, index, seed, &mut rng),
        SuiteId::PptCollapse => trial_ppt_collapse(cfg, index, &mut rng),
        SuiteId::SchmidtEmbedding => trial_embedding(cfg, index, &mut rng),
        SuiteId::ProbeIntermediate => trial_probe(cfg, index, seed, &mut rng),
    }
}

fn trial_srank(cfg: &SuiteConfig, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let d = dims.d();
    let tol = cfg.tolerances.rank;
    let k = rng.random_range(1..=d * d);
    let r = rng.random_range(1..=d);
    let a = random::planted_osr_operator(rng, dims, k)?;
    let v = random::planted_schmidt_vector(rng, dims, r)?;
    let (_, _, p) = random::product_vector(rng, dims);

    let (ka, rv) = (osr(&a, tol)?, sr(&v, tol)?);
    let image = sr(&a.apply(&v)?, tol)?;
    let product_image = sr(&a.apply(&p)?, tol)?;
    let excess = image.saturating_sub(ka * rv).max(product_image.saturating_sub(ka));
    Ok(TrialOutcome::new(
        excess == 0,
        excess as f64,
        format!("OSR(A)={ka} SR(v)={rv} SR(Av)={image} SR(A(u⊗w))={product_image}"),
        vec![ComplexMatrix::from(a.as_matrix()), column(&v), column(&p)],
    ))
}

fn trial_strict_enlargement(cfg: &SuiteConfig, index: usize, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let tol = cfg.tolerances;
    let (u, v, w) = if index == 0 {
        (basis(dims.m(), 0), basis(dims.n(), 0), CVec::max_entangled(dims))
    } else {
        let (u, v, _) = random::product_vector(rng, dims);
        let r = rng.random_range(2..=dims.d());
        (u, v, random::planted_schmidt_vector(rng, dims, r)?)
    };
    let enl = strict_enlargement(&u, &v, &w)?;
    let normalization = validate(&enl.family)?.residual.unwrap_or(f64::INFINITY);
    let mapping = enl.output.distance(&w.projector())?;
    let input_sep = is_separable_decidable(&enl.input, tol.membership)?;
    let output_sep = is_separable_decidable(&enl.output, tol.membership)?;
    let gamma_min = partial_transpose(&enl.output).min_eigenvalue();
    let residual = normalization.max(mapping);
    let passed = residual <= tol.residual && input_sep.is_in() && output_sep.verdict == Verdict::Out;
    Ok(TrialOutcome::new(
        passed,
        residual,
        format!(
            "SR(w)={} input {:?} output {:?} λ_min(Γ(W))={gamma_min:.12}",
            sr(&w, tol.rank)?,
            input_sep.verdict,
            output_sep.verdict
        ),
        vec![column(&w), ComplexMatrix::from(enl.input.as_matrix())],
    ))
}

fn basis(len: usize, i: usize) -> DVector<C64> {
    let mut e = DVector::from_element(len, ZERO);
    e[i] = ONE;
    e
}

/// Rebuilds a PSD `y` as a conic combination of unitary images of product
/// projectors, one per eigenvector. Returns the combination and the worst
/// per-term normalization residual.
pub fn unitary_lifted_decomposition(
    y: &CMat,
    rng: &mut SeededRng,
) -> Result<(ConicCombination, f64)> {
    let dims = y.dims();
    let mut weights = Vec::new();
    let mut terms = Vec::new();
    let mut worst: f64 = 0.0;
    for (lambda, w) in spectral_terms(y, 0.0) {
        let (u, v, _) = random::product_vector(rng, dims);
        let enl = strict_enlargement(&u, &v, &w)?;
        worst = worst.max(validate(&enl.family)?.residual.unwrap_or(f64::INFINITY));
        weights.push(lambda);
        terms.push(enl.output);
    }
    Ok((ConicCombination::new(dims, weights, terms)?, worst))
}

fn trial_cone_collapse(cfg: &SuiteConfig, index: usize, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let y = if index == 0 {
        CMat::identity(dims)
    } else {
        let rank = rng.random_range(1..=dims.total());
        random::wishart(rng, dims, rank)
    };
    let (combo, normalization) = unitary_lifted_decomposition(&y, rng)?;
    let residual = conic_scale(&combo).distance(&y)?.max(normalization);
    Ok(TrialOutcome::new(
        residual <= cfg.tolerances.residual,
        residual,
        format!("{} terms", combo.len()),
        payload(&[&y]),
    ))
}

/// Worst negative eigenvalue of `x` and `Γ(x)`, clamped at zero.
fn ppt_violation(x: &CMat) -> (f64, f64) {
    let g = partial_transpose(x).min_eigenvalue();
    ((-x.min_eigenvalue()).max(-g).max(0.0), g)
}

fn random_count(rng: &mut SeededRng) -> usize {
    rng.random_range(1..=4)
}

fn trial_local_stability(
    cfg: &SuiteConfig,
    index: usize,
    seed: u64,
    rng: &mut SeededRng,
) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let count = if index == 0 { 1 } else { random_count(rng) };
    let family = random_family(&FamilyRecipe::local(dims, count, Normalization::Exact), derive_seed(seed, 1))?;
    let inputs: Vec<CMat> = (0..count)
        .map(|_| {
            let terms = random_count(rng);
            random::separable(rng, dims, terms)
        })
        .collect();
    let out = apply(&family, &inputs)?;
    let verdict = is_separable_decidable(&out, cfg.tolerances.membership)?;
    let (violation, _) = ppt_violation(&out);
    Ok(TrialOutcome::new(
        verdict.is_in(),
        violation,
        format!("{count} local operators, output {:?}", verdict.verdict),
        payload(&inputs.iter().collect::<Vec<_>>()),
    ))
}

fn trial_witness(cfg: &SuiteConfig, index: usize, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let w = witness_operator(cfg)?.hermitian_part();
    let (lowest, z) = w.eigen().into_iter().next().expect("nonempty spectrum");
    let (u, v) = if index == 0 {
        (basis(dims.m(), 0), basis(dims.n(), 0))
    } else {
        let (u, v, _) = random::product_vector(rng, dims);
        (u, v)
    };
    let br = witness_conjugation(&w, &z, &u, &v)?;
    let family = KrausFamily::new(dims, vec![br.unitary.clone()], Normalization::Exact)?;
    let normalization = validate(&family)?.residual.unwrap_or(f64::INFINITY);
    let residual = (br.expectation - lowest).abs().max(normalization);
    let passed = br.expectation < -cfg.tolerances.membership && residual <= cfg.tolerances.residual;
    Ok(TrialOutcome::new(
        passed,
        residual,
        format!("product expectation {:.12} against λ_min(W)={lowest:.12}", br.expectation),
        payload(&[&w]),
    ))
}

fn ppt_inputs(cfg: &SuiteConfig, index: usize, count: usize, rng: &mut SeededRng) -> Result<Vec<CMat>> {
    let mut inputs = (0..count).map(|_| random::ppt(rng, cfg.dims)).collect::<Result<Vec<_>>>()?;
    if !cfg.extra_inputs.is_empty() {
        inputs[0] = cfg.extra_inputs[index % cfg.extra_inputs.len()].clone();
    }
    Ok(inputs)
}

fn trial_ppt_stability(
    cfg: &SuiteConfig,
    index: usize,
    seed: u64,
    rng: &mut SeededRng,
) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let (family, count) = if index == 0 {
        (KrausFamily::new(dims, vec![CMat::identity(dims)], Normalization::Exact)?.with_osr_bound(Some(1)), 1)
    } else {
        let count = random_count(rng);
        let recipe = FamilyRecipe::new(dims, count, Some(1), Normalization::Exact);
        (random_family(&recipe, derive_seed(seed, 1))?, count)
    };
    let inputs = ppt_inputs(cfg, index, count, rng)?;
    let out = apply(&family, &inputs)?;
    let (violation, gamma) = ppt_violation(&out);
    let mut passed = violation <= cfg.tolerances.membership;
    if index == 0 {
        passed &= out.distance(&inputs[0])? <= cfg.tolerances.residual;
    }
    Ok(TrialOutcome::new(
        passed,
        violation,
        format!("{count} operators, λ_min(Γ(out))={gamma:.12}"),
        payload(&inputs.iter().collect::<Vec<_>>()),
    ))
}

fn trial_ppt_collapse(cfg: &SuiteConfig, index: usize, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let tol = cfg.tolerances;
    let v = match index {
        0 => CVec::max_entangled(dims),
        1 => random::product_vector(rng, dims).2,
        _ => random::joint_unit_vector(rng, dims),
    };
    let c = collapse_construction(&v)?;
    let normalization = c.family.exact_residual();
    let output = apply(&c.family, &c.inputs)?.distance(&v.projector())?;
    let bound = c.family.certified_osr(tol.rank)?;
    let mut all_ppt = true;
    for x in &c.inputs {
        all_ppt &= is_ppt(x, tol.membership)?.is_in();
    }
    let residual = normalization.max(output);
    Ok(TrialOutcome::new(
        residual <= tol.residual && bound <= dims.d() && all_ppt,
        residual,
        format!("{} operators, max OSR {bound}, inputs PPT: {all_ppt}", c.family.len()),
        vec![column(&v)],
    ))
}

fn trial_embedding(cfg: &SuiteConfig, index: usize, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let tol = cfg.tolerances;
    let k = 1 + index % dims.d();
    let r = rng.random_range(1..=k);
    let v = random::planted_schmidt_vector(rng, dims, r)?;
    let (_, _, u) = random::product_vector(rng, dims);
    let family = embed_schmidt_k(&v, k, &u)?;
    let valid = validate(&family)?.is_in();
    let rank_a = osr(&family.ops()[0], tol.rank)?;
    let rank_v = sr(&v, tol.rank)?;
    let residual = apply(&family, &[CMat::identity(dims)])?.distance(&v.projector())?;
    Ok(TrialOutcome::new(
        valid && rank_a == rank_v && residual <= tol.residual,
        residual,
        format!("k={k} SR(v)={rank_v} OSR(A)={rank_a}"),
        vec![column(&v), column(&u)],
    ))
}

fn trial_probe(cfg: &SuiteConfig, index: usize, seed: u64, rng: &mut SeededRng) -> Result<TrialOutcome> {
    let dims = cfg.dims;
    let k = cfg.k.expect("checked");
    let count = random_count(rng);
    let family = random_family(&FamilyRecipe::new(dims, count, Some(k), Normalization::Exact), derive_seed(seed, 1))?;
    let inputs = ppt_inputs(cfg, index, count, rng)?;
    let out = apply(&family, &inputs)?;
    let gamma = partial_transpose(&out).min_eigenvalue();
    Ok(TrialOutcome {
        passed: true,
        residual: 0.0,
        detail: format!("{count} operators, λ_min(Γ(out))={gamma:.12}"),
        inputs: Vec::new(),
        gamma_min: Some(gamma),
    })
}
