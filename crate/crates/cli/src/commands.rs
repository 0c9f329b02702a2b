use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{Complex, DVector};
use serde_json::json;

use conekit::cstar::{self, strict_enlargement};
use conekit::suites::{SuiteStatus, CSV_HEADER, DEFAULT_TRIALS};
use conekit::{
    apply, collapse_construction, embed_schmidt_k, is_block_positive_heuristic, is_ppt, is_psd,
    is_separable_decidable, lift_product_to_target, osr, run_suite, sr, validate,
    witness_conjugation, BipartiteDims, CMat, CVec, MembershipReport, SeesawConfig, SuiteConfig,
    SuiteId, Verdict, C64,
};

use crate::error::{CliError, Result};
use crate::files::{
    read_factor_vector, read_joint_vector, render_family, render_matrix_list, write_atomic,
    MatrixFile,
};

pub const EXIT_IN: i32 = 0;
pub const EXIT_OUT: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;

/// Residual bound for the `construct` reports.
const CONSTRUCT_TOL: f64 = 1e-10;
/// Mapping and unitarity bound for lifted unitaries.
const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "conekit", version, about = "Cone membership, Schmidt ranks and C*-convex constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a matrix file for cone membership (exit 0 in, 1 out, 2 undecided).
    Check {
        kind: CheckKind,
        file: PathBuf,
        #[arg(long, default_value_t = conekit::DEFAULT_TOL)]
        tol: f64,
        /// See-saw seed for `blockpos`.
        #[arg(long, env = "CONEKIT_SEED")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Schmidt rank of a vector or the operator Schmidt rank of a matrix.
    Rank {
        kind: RankKind,
        file: PathBuf,
        #[arg(long, default_value_t = conekit::DEFAULT_TOL)]
        tol: f64,
    },
    /// Build one of the explicit constructions and write it to --out.
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        u: Option<PathBuf>,
        #[arg(long)]
        v: Option<PathBuf>,
        #[arg(long)]
        w: Option<PathBuf>,
        #[arg(long)]
        z: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = conekit::DEFAULT_TOL)]
        tol: f64,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a verification suite (exit 0 iff no trial fails).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, env = "CONEKIT_SEED")]
        seed: Option<u64>,
        /// Rank and membership tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Residual tolerance (defaults per suite).
        #[arg(long)]
        residual_tol: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        /// Report path; defaults to `<suite>-<m>x<n>-seed<seed>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV summary file; a row is appended if it exists.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Extra PPT input matrices (repeatable).
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Witness matrix for `witness-not-cstar`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Psd,
    Ppt,
    Sep,
    Blockpos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankKind {
    Sr,
    Osr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Collapse,
    #[value(name = "embed_k")]
    EmbedK,
    #[value(name = "witness_break")]
    WitnessBreak,
    Lift,
}

pub fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::In => EXIT_IN,
        Verdict::Out => EXIT_OUT,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol > 0.0 && tol < 1.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("--tol must lie in (0, 1), got {tol}")))
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { kind, file, tol, seed, restarts, iters, out } => {
            check(kind, &file, check_tol(tol)?, seed.unwrap_or(0), restarts, iters, out.as_deref())
        }
        Command::Rank { kind, file, tol } => rank(kind, &file, check_tol(tol)?),
        Command::Construct { kind, target, u, v, w, z, k, tol, out } => {
            let args = ConstructArgs { target, u, v, w, z, k, tol: check_tol(tol)? };
            construct(kind, &args, &out)
        }
        Command::Verify { suite, m, n, trials, seed, tol, residual_tol, k, out, csv, input, witness } => {
            let id: SuiteId = suite.parse().map_err(|_| {
                let known: Vec<&str> = SuiteId::ALL.iter().map(|s| s.as_str()).collect();
                CliError::Usage(format!("unknown suite `{suite}`; expected one of {}", known.join(", ")))
            })?;
            let dims = BipartiteDims::new(m, n).map_err(|e| CliError::Usage(e.to_string()))?;
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let mut cfg = SuiteConfig::new(id, dims, trials, seed.unwrap_or(0));
            if let Some(t) = tol {
                cfg.tolerances.rank = check_tol(t)?;
                cfg.tolerances.membership = t;
            }
            if let Some(t) = residual_tol {
                cfg.tolerances.residual = check_tol(t)?;
            }
            cfg.k = k;
            cfg.extra_inputs = input
                .iter()
                .map(|p| MatrixFile::read(p).map(|f| f.matrix))
                .collect::<Result<_>>()?;
            cfg.witness = witness.as_deref().map(MatrixFile::read).transpose()?.map(|f| f.matrix);
            verify(id, &cfg, out, csv.as_deref())
        }
    }
}

fn check(
    kind: CheckKind,
    file: &Path,
    tol: f64,
    seed: u64,
    restarts: usize,
    iters: usize,
    out: Option<&Path>,
) -> Result<i32> {
    let x = MatrixFile::read(file)?.matrix;
    let report: MembershipReport = match kind {
        CheckKind::Psd => is_psd(&x, tol)?,
        CheckKind::Ppt => is_ppt(&x, tol)?,
        CheckKind::Sep => is_separable_decidable(&x, tol)?,
        CheckKind::Blockpos => {
            eprintln!("seed: {seed}");
            let cfg = SeesawConfig { restarts, iters_per_restart: iters, seed, tol };
            is_block_positive_heuristic(&x, &cfg)?
        }
    };
    let text = pretty(&report);
    print!("{text}");
    if let Some(path) = out {
        write_atomic(path, &text)?;
    }
    Ok(verdict_exit(report.verdict))
}

fn rank(kind: RankKind, file: &Path, tol: f64) -> Result<i32> {
    let r = match kind {
        RankKind::Sr => sr(&read_joint_vector(file)?, tol)?,
        RankKind::Osr => osr(&MatrixFile::read(file)?.matrix, tol)?,
    };
    println!("{r}");
    Ok(0)
}

struct ConstructArgs {
    target: Option<PathBuf>,
    u: Option<PathBuf>,
    v: Option<PathBuf>,
    w: Option<PathBuf>,
    z: Option<PathBuf>,
    k: Option<usize>,
    tol: f64,
}

fn required<'a>(flag: &str, p: &'a Option<PathBuf>) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn first_basis(len: usize) -> DVector<C64> {
    let mut e = DVector::from_element(len, Complex::new(0.0, 0.0));
    e[0] = Complex::new(1.0, 0.0);
    e
}

fn factor_or_default(p: &Option<PathBuf>, len: usize) -> Result<DVector<C64>> {
    match p {
        Some(path) => read_factor_vector(path),
        None => Ok(first_basis(len)),
    }
}

fn construct(kind: ConstructKind, a: &ConstructArgs, out: &Path) -> Result<i32> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let (passed, report) = match kind {
        ConstructKind::Collapse => {
            let target = read_joint_vector(required("target", &a.target)?)?;
            let c = collapse_construction(&target)?;
            let validation = validate(&c.family)?;
            let normalization = c.family.exact_residual();
            let output = apply(&c.family, &c.inputs)?.distance(&target.projector())?;
            let max_osr = c.family.certified_osr(a.tol)?;
            let mut inputs_ppt = true;
            for x in &c.inputs {
                inputs_ppt &= is_ppt(x, a.tol)?.is_in();
            }
            write_atomic(&out.join("family.json"), &render_family(&c.family))?;
            write_atomic(&out.join("inputs.json"), &render_matrix_list(target.dims(), &c.inputs))?;
            let passed = validation.is_in()
                && normalization <= CONSTRUCT_TOL
                && output <= CONSTRUCT_TOL
                && max_osr <= target.dims().d()
                && inputs_ppt;
            (
                passed,
                json!({
                    "construction": "collapse",
                    "passed": passed,
                    "scale": c.scale,
                    "operators": c.family.len(),
                    "primary_operators": c.primary,
                    "normalization_residual": normalization,
                    "output_residual": output,
                    "max_osr": max_osr,
                    "inputs_ppt": inputs_ppt,
                    "validation": validation,
                }),
            )
        }
        ConstructKind::EmbedK => {
            let v = read_joint_vector(required("v", &a.v)?)?;
            let k = a.k.ok_or_else(|| CliError::Usage("--k is required".into()))?;
            let u = match &a.u {
                Some(p) => read_joint_vector(p)?,
                None => CVec::basis(v.dims(), 0, 0),
            };
            let family = embed_schmidt_k(&v, k, &u)?;
            let validation = validate(&family)?;
            let output = apply(&family, &[CMat::identity(v.dims())])?.distance(&v.projector())?;
            let osr_a = osr(&family.ops()[0], a.tol)?;
            let sr_v = sr(&v, a.tol)?;
            write_atomic(&out.join("family.json"), &render_family(&family))?;
            let passed = validation.is_in() && output <= CONSTRUCT_TOL && osr_a == sr_v;
            (
                passed,
                json!({
                    "construction": "embed_k",
                    "passed": passed,
                    "k": k,
                    "osr": osr_a,
                    "sr_v": sr_v,
                    "output_residual": output,
                    "validation": validation,
                }),
            )
        }
        ConstructKind::WitnessBreak => {
            let w = MatrixFile::read(required("w", &a.w)?)?.matrix;
            let z = match &a.z {
                Some(p) => read_joint_vector(p)?,
                None => w.hermitian_part().eigen().into_iter().next().expect("nonempty spectrum").1,
            };
            let u = factor_or_default(&a.u, w.dims().m())?;
            let v = factor_or_default(&a.v, w.dims().n())?;
            let br = witness_conjugation(&w, &z, &u, &v)?;
            let unitarity = br.unitary.unitarity_residual();
            MatrixFile::new(br.conjugated.clone()).write(&out.join("conjugated.json"))?;
            MatrixFile::new(br.unitary.clone()).write(&out.join("unitary.json"))?;
            let passed = br.expectation < -a.tol && unitarity <= UNITARY_TOL;
            (
                passed,
                json!({
                    "construction": "witness_break",
                    "passed": passed,
                    "expectation": br.expectation,
                    "target_value": br.target_value,
                    "unitarity_residual": unitarity,
                }),
            )
        }
        ConstructKind::Lift => {
            let u = read_factor_vector(required("u", &a.u)?)?;
            let v = read_factor_vector(required("v", &a.v)?)?;
            let w = read_joint_vector(required("w", &a.w)?)?;
            let unitary = lift_product_to_target(&u, &v, &w)?;
            let image = unitary.apply(&CVec::product(&u, &v)?)?;
            let mapping = (image.as_vector() - w.as_vector()).norm();
            let unitarity = unitary.unitarity_residual();
            let enl = strict_enlargement(&u, &v, &w)?;
            MatrixFile::new(unitary).write(&out.join("unitary.json"))?;
            let passed = mapping <= UNITARY_TOL && unitarity <= UNITARY_TOL;
            (
                passed,
                json!({
                    "construction": "lift",
                    "passed": passed,
                    "mapping_residual": mapping,
                    "unitarity_residual": unitarity,
                    "output_separable": is_separable_decidable(&enl.output, a.tol)?.verdict,
                    "family_residual": cstar::validate(&enl.family)?.residual,
                }),
            )
        }
    };
    let text = pretty(&report);
    write_atomic(&out.join("report.json"), &text)?;
    print!("{text}");
    Ok(if passed { 0 } else { 1 })
}

fn verify(id: SuiteId, cfg: &SuiteConfig, out: Option<PathBuf>, csv: Option<&Path>) -> Result<i32> {
    eprintln!("seed: {}", cfg.seed);
    let report = run_suite(id, cfg)?;
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{id}-{}-seed{}.json", cfg.dims, cfg.seed)));
    write_atomic(&path, &pretty(&report))?;
    if let Some(csv) = csv {
        let mut text = match fs::read_to_string(csv) {
            Ok(existing) if !existing.is_empty() => existing,
            Ok(_) => format!("{CSV_HEADER}\n"),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => format!("{CSV_HEADER}\n"),
            Err(e) => return Err(CliError::io(csv, e)),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        text.push_str(&report.csv_row());
        text.push('\n');
        write_atomic(csv, &text)?;
    }
    let status = match report.status {
        SuiteStatus::Verified => "verified",
        SuiteStatus::Failed => "failed",
        SuiteStatus::Exploratory => "exploratory",
        SuiteStatus::NotApplicable => "not applicable",
    };
    println!(
        "{id} {}: {}/{} passed, {status}, max residual {:e}, seed {}, report {}",
        report.dims,
        report.passes,
        report.trials,
        report.max_residual,
        report.seed,
        path.display()
    );
    if let Some(p) = &report.probe {
        println!(
            "probe k={}: {} PPT outputs, {} non-PPT outputs",
            p.k, p.ppt_outputs, p.non_ppt_outputs
        );
    }
    Ok(if report.failures.is_empty() { 0 } else { 1 })
}
