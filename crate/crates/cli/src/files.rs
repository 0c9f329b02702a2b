//! JSON file formats with split real/imaginary arrays.
//!
//! Writers emit a canonical layout with every float in `{:.16e}` form
//! (17 significant digits), so `render(parse(text)) == text` for any file
//! this module wrote.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::{Complex, DMatrix, DVector};
use serde::Deserialize;

use conekit::cstar::{KrausFamily, Locality, Normalization};
use conekit::{BipartiteDims, CMat, CVec, C64};

use crate::error::{CliError, Result};

/// Writes through a temporary sibling file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let tmp: PathBuf = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_list(xs: impl Iterator<Item = f64>) -> String {
    let items: Vec<String> = xs.map(num).collect();
    format!("[{}]", items.join(", "))
}

fn render_rows(out: &mut String, a: &DMatrix<C64>, part: fn(&C64) -> f64, indent: &str) {
    out.push_str("[\n");
    for i in 0..a.nrows() {
        let sep = if i + 1 < a.nrows() { "," } else { "" };
        let row = render_list((0..a.ncols()).map(|j| part(&a[(i, j)])));
        let _ = writeln!(out, "{indent}  {row}{sep}");
    }
    let _ = write!(out, "{indent}]");
}

fn render_matrix_body(out: &mut String, a: &DMatrix<C64>, indent: &str) {
    let _ = write!(out, "{indent}\"re\": ");
    render_rows(out, a, |z| z.re, indent);
    let _ = write!(out, ",\n{indent}\"im\": ");
    render_rows(out, a, |z| z.im, indent);
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn parse_json<'a, T: Deserialize<'a>>(path: &Path, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::malformed(path, e.to_string()))
}

fn dims_of(path: &Path, m: usize, n: usize) -> Result<BipartiteDims> {
    BipartiteDims::new(m, n).map_err(|e| CliError::malformed(path, e.to_string()))
}

fn square(path: &Path, side: usize, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<DMatrix<C64>> {
    let shape_ok = |rows: &[Vec<f64>]| rows.len() == side && rows.iter().all(|r| r.len() == side);
    if !shape_ok(re) || !shape_ok(im) {
        return Err(CliError::malformed(path, format!("re and im must both be {side}x{side} arrays")));
    }
    if re.iter().chain(im).flatten().any(|x| !x.is_finite()) {
        return Err(CliError::malformed(path, "non-finite entry"));
    }
    Ok(DMatrix::from_fn(side, side, |i, j| Complex::new(re[i][j], im[i][j])))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    m: usize,
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
    #[serde(default)]
    meta: Option<BTreeMap<String, String>>,
}

/// A single operator on `C^m ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub matrix: CMat,
    pub meta: BTreeMap<String, String>,
}

impl MatrixFile {
    pub fn new(matrix: CMat) -> Self {
        MatrixFile { matrix, meta: BTreeMap::new() }
    }

    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let raw: RawMatrix = parse_json(path, text)?;
        let dims = dims_of(path, raw.m, raw.n)?;
        let a = square(path, dims.total(), &raw.re, &raw.im)?;
        Ok(MatrixFile { matrix: CMat::new(dims, a)?, meta: raw.meta.unwrap_or_default() })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(path, &read_text(path)?)
    }

    pub fn render(&self) -> String {
        let dims = self.matrix.dims();
        let mut out = format!("{{\n  \"m\": {},\n  \"n\": {},\n", dims.m(), dims.n());
        render_matrix_body(&mut out, self.matrix.as_matrix(), "  ");
        if !self.meta.is_empty() {
            let fields: Vec<String> = self
                .meta
                .iter()
                .map(|(k, v)| format!("{}: {}", json_string(k), json_string(v)))
                .collect();
            let _ = write!(out, ",\n  \"meta\": {{{}}}", fields.join(", "));
        }
        out.push_str("\n}\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.render())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVector {
    #[serde(default)]
    m: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// A vector: either a factor vector (no dims) or a joint vector on
/// `C^m ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile {
    pub dims: Option<BipartiteDims>,
    pub data: DVector<C64>,
}

impl VectorFile {
    pub fn joint(v: &CVec) -> Self {
        VectorFile { dims: Some(v.dims()), data: v.as_vector().clone() }
    }

    pub fn factor(data: DVector<C64>) -> Self {
        VectorFile { dims: None, data }
    }

    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let raw: RawVector = parse_json(path, text)?;
        if raw.re.len() != raw.im.len() || raw.re.is_empty() {
            return Err(CliError::malformed(path, "re and im must be nonempty and of equal length"));
        }
        if raw.re.iter().chain(&raw.im).any(|x| !x.is_finite()) {
            return Err(CliError::malformed(path, "non-finite entry"));
        }
        let dims = match (raw.m, raw.n) {
            (Some(m), Some(n)) => {
                let dims = dims_of(path, m, n)?;
                if dims.total() != raw.re.len() {
                    return Err(CliError::malformed(path, format!("{} entries for {dims}", raw.re.len())));
                }
                Some(dims)
            }
            (None, None) => None,
            _ => return Err(CliError::malformed(path, "give both m and n or neither")),
        };
        let data = DVector::from_iterator(
            raw.re.len(),
            raw.re.iter().zip(&raw.im).map(|(&re, &im)| Complex::new(re, im)),
        );
        Ok(VectorFile { dims, data })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(path, &read_text(path)?)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("{\n");
        if let Some(d) = self.dims {
            let _ = write!(out, "  \"m\": {},\n  \"n\": {},\n", d.m(), d.n());
        }
        let _ = write!(
            out,
            "  \"re\": {},\n  \"im\": {}\n}}\n",
            render_list(self.data.iter().map(|z| z.re)),
            render_list(self.data.iter().map(|z| z.im))
        );
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.render())
    }
}

/// A file holding either a vector or a matrix, told apart by the shape of
/// its `re` field.
pub enum Loaded {
    Vector(VectorFile),
    Matrix(MatrixFile),
}

pub fn read_any(path: &Path) -> Result<Loaded> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse_json(path, &text)?;
    let nested = value
        .get("re")
        .and_then(|re| re.as_array())
        .and_then(|rows| rows.first())
        .is_some_and(|first| first.is_array());
    if nested {
        Ok(Loaded::Matrix(MatrixFile::parse(path, &text)?))
    } else {
        Ok(Loaded::Vector(VectorFile::parse(path, &text)?))
    }
}

/// A joint vector from a vector file, or the range vector (scaled by the
/// square root of its eigenvalue) of a rank-one PSD matrix file.
pub fn read_joint_vector(path: &Path) -> Result<CVec> {
    match read_any(path)? {
        Loaded::Vector(v) => {
            let dims = v.dims.ok_or_else(|| CliError::malformed(path, "a joint vector needs m and n"))?;
            Ok(CVec::new(dims, v.data)?)
        }
        Loaded::Matrix(f) => {
            let x = &f.matrix;
            if x.asymmetry() > 1e-9 * x.frobenius_norm().max(1.0) {
                return Err(CliError::malformed(path, "matrix is not Hermitian"));
            }
            let mut eig = x.hermitian_part().eigen();
            let (top, v) = eig.pop().expect("nonempty spectrum");
            let rest_ok = eig.iter().all(|(l, _)| l.abs() <= 1e-9 * top.max(f64::MIN_POSITIVE));
            if top <= 0.0 || !rest_ok {
                return Err(CliError::malformed(path, "expected a vector or a rank-one PSD matrix"));
            }
            Ok(CVec::new(v.dims(), v.as_vector() * Complex::new(top.sqrt(), 0.0))?)
        }
    }
}

/// A factor vector on `C^m` or `C^n` (dims, if present, are ignored).
pub fn read_factor_vector(path: &Path) -> Result<DVector<C64>> {
    Ok(VectorFile::read(path)?.data)
}

fn render_mode(mode: Normalization) -> &'static str {
    match mode {
        Normalization::Exact => "exact",
        Normalization::Contractive => "contractive",
    }
}

fn render_locality(locality: Locality) -> &'static str {
    match locality {
        Locality::Global => "global",
        Locality::Local => "local",
    }
}

fn render_option<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "null".to_string(), |v| v.to_string())
}

fn render_matrix_array(out: &mut String, key: &str, ms: &[CMat]) {
    let _ = write!(out, "  \"{key}\": [");
    for (i, a) in ms.iter().enumerate() {
        out.push_str(if i == 0 { "\n    {\n" } else { ",\n    {\n" });
        render_matrix_body(out, a.as_matrix(), "      ");
        out.push_str("\n    }");
    }
    out.push_str(if ms.is_empty() { "]" } else { "\n  ]" });
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOp {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHeader {
    m: usize,
    n: usize,
    mode: Normalization,
    osr_bound: Option<usize>,
    locality: Locality,
    seed: Option<u64>,
    count: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    header: RawHeader,
    ops: Vec<RawOp>,
}

/// Canonical text for a Kraus family: a header and the operator list.
pub fn render_family(f: &KrausFamily) -> String {
    let d = f.dims();
    let mut out = format!(
        "{{\n  \"header\": {{\"m\": {}, \"n\": {}, \"mode\": \"{}\", \"osr_bound\": {}, \"locality\": \"{}\", \"seed\": {}, \"count\": {}}},\n",
        d.m(),
        d.n(),
        render_mode(f.mode()),
        render_option(f.osr_bound()),
        render_locality(f.locality()),
        render_option(f.seed()),
        f.len()
    );
    render_matrix_array(&mut out, "ops", f.ops());
    out.push_str("\n}\n");
    out
}

pub fn parse_family(path: &Path, text: &str) -> Result<KrausFamily> {
    let raw: RawFamily = parse_json(path, text)?;
    let h = raw.header;
    if h.count != raw.ops.len() {
        return Err(CliError::malformed(path, format!("header count {} but {} ops", h.count, raw.ops.len())));
    }
    let dims = dims_of(path, h.m, h.n)?;
    let ops = raw
        .ops
        .iter()
        .map(|op| Ok(CMat::new(dims, square(path, dims.total(), &op.re, &op.im)?)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(KrausFamily::new(dims, ops, h.mode)?
        .with_osr_bound(h.osr_bound)
        .with_locality(h.locality)
        .with_seed(h.seed))
}

pub fn read_family(path: &Path) -> Result<KrausFamily> {
    parse_family(path, &read_text(path)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawList {
    m: usize,
    n: usize,
    matrices: Vec<RawOp>,
}

/// Canonical text for a list of operators on the same space.
pub fn render_matrix_list(dims: BipartiteDims, ms: &[CMat]) -> String {
    let mut out = format!("{{\n  \"m\": {},\n  \"n\": {},\n", dims.m(), dims.n());
    render_matrix_array(&mut out, "matrices", ms);
    out.push_str("\n}\n");
    out
}

pub fn parse_matrix_list(path: &Path, text: &str) -> Result<Vec<CMat>> {
    let raw: RawList = parse_json(path, text)?;
    let dims = dims_of(path, raw.m, raw.n)?;
    raw.matrices
        .iter()
        .map(|op| Ok(CMat::new(dims, square(path, dims.total(), &op.re, &op.im)?)?))
        .collect()
}
