//! Input documents and their conversion into validated algebra objects.
//!
//! Scalars are exact rationals written as strings (`"3"`, `"-1/2"`).
//! Conversion tracks a field path so that errors point into the document.

use std::path::Path;

use liewedge_core::catalog::{self, SideWitness};
use liewedge_core::lie::Validation;
use liewedge_core::spindler::{SpindlerAlgebra, SpindlerData};
use liewedge_core::{parse_rat, Error as CoreError, LieAlgebra, Mat, Rat};
use serde::Deserialize;

use crate::CliError;

pub type RatText = String;
pub type MatrixText = Vec<Vec<RatText>>;

/// Top-level input document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub algebra: Option<AlgebraDoc>,
    pub spindler: Option<SpindlerDoc>,
    pub derivation: Option<DerivationDoc>,
    pub functional: Option<Vec<RatText>>,
    pub witnesses: Option<WitnessDoc>,
}

/// Structure constants `[e_i, e_j] = sum_k c e_k`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: RatText,
}

/// `g(l, V, z, beta)`. When `l.brackets` is absent, `l` is the matrix Lie
/// algebra spanned by `rho`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpindlerDoc {
    pub l: LDoc,
    pub dim_v: usize,
    #[serde(default)]
    pub rho: Vec<MatrixText>,
    #[serde(default)]
    pub beta: Vec<MatrixText>,
    pub torus: Option<Vec<Vec<RatText>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LDoc {
    #[serde(default)]
    pub labels: Vec<String>,
    pub brackets: Option<Vec<BracketDoc>>,
}

/// A derivation as a full matrix, in classified form `(h, d_v, d_z)`, or a
/// list of candidate matrices for the no-go scan.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub matrix: Option<MatrixText>,
    pub h: Option<Vec<RatText>>,
    pub d_v: Option<MatrixText>,
    pub d_z: Option<MatrixText>,
    pub candidates: Option<Vec<MatrixText>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub convex_x: Option<Vec<RatText>>,
    pub plus: Option<SideDoc>,
    pub minus: Option<SideDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideDoc {
    #[serde(default)]
    pub jordan_units: Vec<Vec<RatText>>,
    pub central: Option<Vec<RatText>>,
}

/// The algebra under study.
#[derive(Clone, Debug)]
pub enum Subject {
    Plain(LieAlgebra),
    Spindler(Box<SpindlerAlgebra>),
}

impl Subject {
    pub fn lie(&self) -> &LieAlgebra {
        match self {
            Subject::Plain(g) => g,
            Subject::Spindler(s) => &s.g,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationInput {
    Matrix(Mat),
    Classified { h: Vec<Rat>, d_v: Mat, d_z: Mat },
}

/// Everything a pipeline may need, after validation.
#[derive(Clone, Debug)]
pub struct Problem {
    pub source: String,
    pub subject: Subject,
    pub functional: Option<Vec<Rat>>,
    pub derivation: Option<DerivationInput>,
    pub candidates: Option<Vec<Mat>>,
    pub convex_x: Option<Vec<Rat>>,
    pub torus: Vec<Vec<Rat>>,
    pub plus: Option<SideWitness>,
    pub minus: Option<SideWitness>,
    /// Set when the Jacobi check was deferred; holds its outcome.
    pub deferred_jacobi: Option<Result<(), CoreError>>,
}

fn validation(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Validation { path: path.into(), message: message.to_string() }
}

pub fn rational(path: &str, text: &str) -> Result<Rat, CliError> {
    parse_rat(text).ok_or_else(|| CliError::Parse {
        path: path.to_string(),
        message: format!("`{text}` is not a rational number"),
    })
}

pub fn vector(path: &str, items: &[RatText]) -> Result<Vec<Rat>, CliError> {
    items.iter().enumerate().map(|(i, t)| rational(&format!("{path}[{i}]"), t)).collect()
}

pub fn vector_of_len(path: &str, items: &[RatText], len: usize) -> Result<Vec<Rat>, CliError> {
    let v = vector(path, items)?;
    if v.len() != len {
        return Err(validation(path, format!("expected {len} entries, found {}", v.len())));
    }
    Ok(v)
}

pub fn matrix(path: &str, rows: &MatrixText, n_rows: usize, n_cols: usize) -> Result<Mat, CliError> {
    if rows.len() != n_rows {
        return Err(validation(path, format!("expected {n_rows} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n_rows);
    for (r, row) in rows.iter().enumerate() {
        out.push(vector_of_len(&format!("{path}[{r}]"), row, n_cols)?);
    }
    if n_rows == 0 {
        return Ok(Mat::zeros(0, n_cols));
    }
    Ok(Mat::from_rows(out))
}

/// Parses a comma or whitespace separated list of rationals.
pub fn parse_functional(text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| rational(&format!("--functional[{i}]"), t))
        .collect()
}

fn parse_json<T: for<'de> Deserialize<'de>>(origin: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { path: origin.to_string(), message: e.to_string() })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load_document(path: &Path) -> Result<InputDoc, CliError> {
    parse_json(&path.display().to_string(), &read(path)?)
}

pub fn load_derivation(path: &Path) -> Result<DerivationDoc, CliError> {
    parse_json(&path.display().to_string(), &read(path)?)
}

fn brackets(path: &str, items: &[BracketDoc]) -> Result<Vec<(usize, usize, usize, Rat)>, CliError> {
    items.iter().enumerate().map(|(n, b)| Ok((b.i, b.j, b.k, rational(&format!("{path}[{n}].c"), &b.c)?))).collect()
}

/// Maps a core error raised while validating the field at `path`.
fn core(path: &str, e: CoreError) -> CliError {
    validation(path, e)
}

fn plain_algebra(doc: &AlgebraDoc, defer: bool) -> Result<(LieAlgebra, Option<Result<(), CoreError>>), CliError> {
    let entries = brackets("algebra.brackets", &doc.brackets)?;
    let mode = if defer { Validation::Deferred } else { Validation::Full };
    let g = LieAlgebra::from_entries(doc.labels.clone(), entries, mode).map_err(|e| core("algebra.brackets", e))?;
    let deferred = defer.then(|| g.check_jacobi());
    Ok((g, deferred))
}

fn spindler_algebra(doc: &SpindlerDoc) -> Result<SpindlerAlgebra, CliError> {
    let n = doc.dim_v;
    let rho = doc
        .rho
        .iter()
        .enumerate()
        .map(|(a, m)| matrix(&format!("spindler.rho[{a}]"), m, n, n))
        .collect::<Result<Vec<_>, _>>()?;
    let beta = doc
        .beta
        .iter()
        .enumerate()
        .map(|(r, m)| matrix(&format!("spindler.beta[{r}]"), m, n, n))
        .collect::<Result<Vec<_>, _>>()?;
    let l = match &doc.l.brackets {
        Some(b) => {
            let entries = brackets("spindler.l.brackets", b)?;
            LieAlgebra::from_entries(doc.l.labels.clone(), entries, Validation::Full)
                .map_err(|e| core("spindler.l.brackets", e))?
        }
        None => {
            let labels = if doc.l.labels.is_empty() {
                liewedge_core::lie::numbered_labels("x", rho.len())
            } else {
                doc.l.labels.clone()
            };
            LieAlgebra::from_matrix_basis(labels, &rho).map_err(|e| core("spindler.rho", e))?
        }
    };
    if rho.len() != l.dim() {
        return Err(validation("spindler.rho", format!("{} matrices for dim l = {}", rho.len(), l.dim())));
    }
    let dim_l = l.dim();
    let mut data = SpindlerData { l, rho, dim_v: n, dim_z: beta.len(), beta, torus: None };
    if let Some(t) = &doc.torus {
        let torus = t
            .iter()
            .enumerate()
            .map(|(i, x)| vector_of_len(&format!("spindler.torus[{i}]"), x, dim_l))
            .collect::<Result<Vec<_>, _>>()?;
        data = data.with_torus(torus);
    }
    data.validate().map_err(|e| core("spindler", e))?;
    SpindlerAlgebra::new(data).map_err(|e| core("spindler", e))
}

fn derivation_input(doc: &DerivationDoc, subject: &Subject, origin: &str) -> Result<Option<DerivationInput>, CliError> {
    let n = subject.lie().dim();
    let classified = doc.h.is_some() || doc.d_v.is_some() || doc.d_z.is_some();
    match (&doc.matrix, classified) {
        (Some(_), true) => Err(validation(origin, "give either `matrix` or `h`/`d_v`/`d_z`, not both")),
        (Some(m), false) => Ok(Some(DerivationInput::Matrix(matrix(&format!("{origin}.matrix"), m, n, n)?))),
        (None, true) => {
            let Subject::Spindler(s) = subject else {
                return Err(validation(origin, "classified form needs a `spindler` algebra"));
            };
            let cb = s.basis;
            let missing = |f: &str| validation(format!("{origin}.{f}"), "missing field");
            let h = vector_of_len(&format!("{origin}.h"), doc.h.as_ref().ok_or_else(|| missing("h"))?, cb.dim_l)?;
            let d_v =
                matrix(&format!("{origin}.d_v"), doc.d_v.as_ref().ok_or_else(|| missing("d_v"))?, cb.dim_v, cb.dim_v)?;
            let d_z =
                matrix(&format!("{origin}.d_z"), doc.d_z.as_ref().ok_or_else(|| missing("d_z"))?, cb.dim_z, cb.dim_z)?;
            Ok(Some(DerivationInput::Classified { h, d_v, d_z }))
        }
        (None, false) => Ok(None),
    }
}

fn candidates(doc: &DerivationDoc, n: usize, origin: &str) -> Result<Option<Vec<Mat>>, CliError> {
    doc.candidates
        .as_ref()
        .map(|cs| cs.iter().enumerate().map(|(i, m)| matrix(&format!("{origin}.candidates[{i}]"), m, n, n)).collect())
        .transpose()
}

fn side(path: &str, doc: &SideDoc, s: &SpindlerAlgebra) -> Result<SideWitness, CliError> {
    let cb = s.basis;
    let jordan_units = doc
        .jordan_units
        .iter()
        .enumerate()
        .map(|(k, u)| vector_of_len(&format!("{path}.jordan_units[{k}]"), u, cb.dim_l))
        .collect::<Result<Vec<_>, _>>()?;
    let central = doc.central.as_ref().map(|c| vector_of_len(&format!("{path}.central"), c, cb.dim_z)).transpose()?;
    Ok(SideWitness { jordan_units, central })
}

/// Resolves `--input`, which is either a file or `catalog:<name>`.
pub fn load_problem(input: &str, defer_jacobi: bool) -> Result<Problem, CliError> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog_problem(name);
    }
    let doc = load_document(Path::new(input))?;
    problem_from_document(input, &doc, defer_jacobi)
}

pub fn catalog_problem(name: &str) -> Result<Problem, CliError> {
    let entry = catalog::get(name).map_err(|e| validation("--input", e))?;
    let (derivation, plus, minus) = match entry.grading {
        Some(gd) => {
            (Some(DerivationInput::Classified { h: gd.h, d_v: gd.d_v, d_z: gd.d_z }), Some(gd.plus), Some(gd.minus))
        }
        None => (None, None, None),
    };
    Ok(Problem {
        source: format!("catalog:{}", entry.name),
        subject: Subject::Spindler(Box::new(entry.algebra)),
        functional: entry.functional,
        derivation,
        candidates: None,
        convex_x: entry.convex_x,
        torus: entry.torus,
        plus,
        minus,
        deferred_jacobi: None,
    })
}

pub fn problem_from_document(source: &str, doc: &InputDoc, defer_jacobi: bool) -> Result<Problem, CliError> {
    let (subject, deferred_jacobi) = match (&doc.algebra, &doc.spindler) {
        (Some(a), None) => {
            let (g, deferred) = plain_algebra(a, defer_jacobi)?;
            (Subject::Plain(g), deferred)
        }
        (None, Some(s)) => (Subject::Spindler(Box::new(spindler_algebra(s)?)), None),
        _ => return Err(validation("", "exactly one of `algebra` and `spindler` is required")),
    };
    let functional = doc.functional.as_ref().map(|f| vector("functional", f)).transpose()?;
    let (derivation, candidates) = match &doc.derivation {
        Some(d) => (derivation_input(d, &subject, "derivation")?, candidates(d, subject.lie().dim(), "derivation")?),
        None => (None, None),
    };
    let mut problem = Problem {
        source: source.to_string(),
        subject,
        functional,
        derivation,
        candidates,
        convex_x: None,
        torus: Vec::new(),
        plus: None,
        minus: None,
        deferred_jacobi,
    };
    if let Subject::Spindler(s) = &problem.subject {
        problem.torus = s.data.torus.clone().unwrap_or_default();
        if let Some(w) = &doc.witnesses {
            problem.convex_x =
                w.convex_x.as_ref().map(|x| vector_of_len("witnesses.convex_x", x, s.basis.dim_l)).transpose()?;
            problem.plus = w.plus.as_ref().map(|p| side("witnesses.plus", p, s)).transpose()?;
            problem.minus = w.minus.as_ref().map(|p| side("witnesses.minus", p, s)).transpose()?;
        }
    } else if doc.witnesses.is_some() {
        return Err(validation("witnesses", "witnesses need a `spindler` algebra"));
    }
    Ok(problem)
}

/// Applies `--functional` and `--derivation` overrides.
pub fn apply_overrides(
    problem: &mut Problem,
    functional: Option<&str>,
    derivation: Option<&Path>,
) -> Result<(), CliError> {
    if let Some(f) = functional {
        problem.functional = Some(parse_functional(f)?);
    }
    if let Some(path) = derivation {
        let doc = load_derivation(path)?;
        let origin = "--derivation";
        let d = derivation_input(&doc, &problem.subject, origin)?;
        let c = candidates(&doc, problem.subject.lie().dim(), origin)?;
        if d.is_some() {
            problem.derivation = d;
        }
        if c.is_some() {
            problem.candidates = c;
        }
    }
    Ok(())
}
