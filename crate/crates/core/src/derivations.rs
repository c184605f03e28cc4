//! Derivation algebras, 3-gradings and the classification of grading
//! derivations of Spindler algebras.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cones::ConeQuery;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{self, int, rat, Echelon, Mat, Rat};
use crate::spindler::{self, SpindlerAlgebra};

/// A matrix verified to satisfy `D[x,y] = [Dx,y] + [x,Dy]` on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    matrix: Mat,
    parent: u64,
}

impl Derivation {
    pub fn new(g: &LieAlgebra, matrix: Mat) -> Result<Self> {
        if matrix.rows() != g.dim() || matrix.cols() != g.dim() {
            return Err(Error::DimensionMismatch(format!(
                "derivation must be {0}x{0}, got {1}x{2}",
                g.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some((i, j)) = derivation_defect(g, &matrix) {
            return Err(Error::NotADerivation(format!(
                "Leibniz rule fails on the basis pair ({}, {})",
                g.labels()[i],
                g.labels()[j]
            )));
        }
        Ok(Derivation { matrix, parent: g.id() })
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        Derivation { matrix: Mat::zeros(g.dim(), g.dim()), parent: g.id() }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }
}

/// First basis pair `(i, j)`, `i < j`, on which the Leibniz rule fails.
pub fn derivation_defect(g: &LieAlgebra, d: &Mat) -> Option<(usize, usize)> {
    let n = g.dim();
    // sparse columns: cols[j] lists the nonzero D[m][j]
    let cols: Vec<Vec<(usize, Rat)>> =
        (0..n).map(|j| (0..n).filter(|&m| !d[(m, j)].is_zero()).map(|m| (m, d[(m, j)].clone())).collect()).collect();
    let brackets: Vec<Vec<Vec<(usize, Rat)>>> =
        (0..n).map(|a| (0..n).map(|b| g.basis_bracket(a, b)).collect()).collect();
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    let add = |acc: &mut BTreeMap<usize, Rat>, k: usize, v: Rat| {
        *acc.entry(k).or_insert_with(Rat::zero) += v;
    };
    for i in 0..n {
        for j in i + 1..n {
            acc.clear();
            for (m, c) in &brackets[i][j] {
                for (k, dkm) in &cols[*m] {
                    add(&mut acc, *k, c * dkm);
                }
            }
            for (m, dmi) in &cols[i] {
                for (k, c) in &brackets[*m][j] {
                    add(&mut acc, *k, -(dmi * c));
                }
            }
            for (m, dmj) in &cols[j] {
                for (k, c) in &brackets[i][*m] {
                    add(&mut acc, *k, -(dmj * c));
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Basis of `der(g)` as the kernel of the Leibniz system on `End(g)`.
///
/// The unknown `D[a][b]` has index `a * n + b`; there is one equation for
/// each pair `i < j` and each output coordinate `k`:
/// `sum_m c_ij^m D[k][m] - sum_m D[m][i] c_mj^k - sum_m D[m][j] c_im^k = 0`.
pub fn derivation_algebra(g: &LieAlgebra) -> Vec<Mat> {
    let n = g.dim();
    let brackets: Vec<Vec<Vec<(usize, Rat)>>> =
        (0..n).map(|a| (0..n).map(|b| g.basis_bracket(a, b)).collect()).collect();
    let mut e = Echelon::new(n * n);
    for i in 0..n {
        for j in i + 1..n {
            let mut rows: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
            for (m, c) in &brackets[i][j] {
                for k in 0..n {
                    *rows.entry(k).or_default().entry(k * n + m).or_insert_with(Rat::zero) += c;
                }
            }
            for (m, from_m) in brackets.iter().enumerate() {
                for (k, c) in &from_m[j] {
                    *rows.entry(*k).or_default().entry(m * n + i).or_insert_with(Rat::zero) -= c;
                }
                for (k, c) in &brackets[i][m] {
                    *rows.entry(*k).or_default().entry(m * n + j).or_insert_with(Rat::zero) -= c;
                }
            }
            for row in rows.into_values() {
                let row: Vec<(usize, Rat)> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !row.is_empty() {
                    e.insert_sparse(&row);
                }
            }
        }
    }
    e.kernel().into_iter().map(|v| Mat::from_flat(n, n, v)).collect()
}

/// Canonical basis of `ad(g)`, flattened row-major.
pub fn inner_derivations(g: &LieAlgebra) -> Vec<Vec<Rat>> {
    let n = g.dim();
    let ads: Vec<Vec<Rat>> = (0..n).map(|i| g.ad_vec(&linalg::unit_vec(n, i)).flatten().to_vec()).collect();
    linalg::span_basis(&ads, n * n)
}

/// `g = g_{-1} + g_0 + g_1` for the eigenspaces of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading3 {
    pub derivation: Derivation,
    pub minus: Vec<Vec<Rat>>,
    pub zero: Vec<Vec<Rat>>,
    pub plus: Vec<Vec<Rat>>,
}

impl Grading3 {
    /// `(dim g_{-1}, dim g_0, dim g_1)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.minus.len(), self.zero.len(), self.plus.len())
    }

    pub fn side(&self, side: i8) -> &[Vec<Rat>] {
        match side {
            1 => &self.plus,
            -1 => &self.minus,
            _ => &self.zero,
        }
    }
}

/// Why a derivation fails to induce a 3-grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingFailure {
    /// The eigenspaces for `-1, 0, 1` only cover `covered` of `dim`
    /// dimensions; `stray` lists other small rational eigenvalues found.
    Incomplete { covered: usize, dim: usize, stray: Vec<Rat> },
    /// `[g_i, g_j]` leaves `g_{i+j}`.
    Incompatible { left: i8, right: i8 },
}

impl std::fmt::Display for GradingFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GradingFailure::Incomplete { covered, dim, stray } => {
                write!(f, "eigenspaces for -1, 0, 1 cover {covered} of {dim} dimensions")?;
                if !stray.is_empty() {
                    let list: Vec<String> = stray.iter().map(Rat::to_string).collect();
                    write!(f, "; other eigenvalues {}", list.join(", "))?;
                }
                Ok(())
            }
            GradingFailure::Incompatible { left, right } => {
                write!(f, "bracket of degrees {left} and {right} leaves degree {}", left + right)
            }
        }
    }
}

/// Eigenspaces of `d` at `-1, 0, 1` with the bracket compatibility check.
pub fn grading_of(g: &LieAlgebra, d: &Derivation) -> std::result::Result<Grading3, GradingFailure> {
    let m = d.matrix();
    let minus = linalg::eigenspace(m, &int(-1));
    let zero = linalg::eigenspace(m, &int(0));
    let plus = linalg::eigenspace(m, &int(1));
    let covered = minus.len() + zero.len() + plus.len();
    if covered != g.dim() || !linalg::is_direct_sum(&[minus.clone(), zero.clone(), plus.clone()], g.dim()) {
        let probes = [rat(1, 2), rat(-1, 2), rat(3, 2), rat(-3, 2), int(2), int(-2), int(3), int(-3)];
        let stray = probes.into_iter().filter(|l| !linalg::eigenspace(m, l).is_empty()).collect();
        return Err(GradingFailure::Incomplete { covered, dim: g.dim(), stray });
    }
    let blocks: [(i8, &Vec<Vec<Rat>>); 3] = [(-1, &minus), (0, &zero), (1, &plus)];
    for (i, a) in blocks {
        for (j, b) in blocks {
            if j < i {
                continue;
            }
            let target: &[Vec<Rat>] = match i + j {
                -1 => &minus,
                0 => &zero,
                1 => &plus,
                _ => &[],
            };
            let image = g.bracket_span(a, b);
            if !linalg::span_contains(target, &image, g.dim()) {
                return Err(GradingFailure::Incompatible { left: i, right: j });
            }
        }
    }
    Ok(Grading3 { derivation: d.clone(), minus, zero, plus })
}

pub fn detect_3grading(g: &LieAlgebra, d: &Derivation) -> Option<Grading3> {
    grading_of(g, d).ok()
}

/// `D_z beta(v, w) = beta(D_V v, w) + beta(v, D_V w)` on all basis pairs.
pub fn is_beta_compatible(d_v: &Mat, d_z: &Mat, beta: &[Mat]) -> bool {
    let n = d_v.rows();
    if d_v.cols() != n || d_z.rows() != beta.len() || d_z.cols() != beta.len() {
        return false;
    }
    if beta.iter().any(|b| b.rows() != n || b.cols() != n) {
        return false;
    }
    for (r, b) in beta.iter().enumerate() {
        let rhs = &(&d_v.transpose() * b) + &(b * d_v);
        let mut lhs = Mat::zeros(n, n);
        for (s, bs) in beta.iter().enumerate() {
            if !d_z[(r, s)].is_zero() {
                lhs = &lhs + &bs.scale(&d_z[(r, s)]);
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// A validated beta-compatible pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCompatiblePair {
    pub d_v: Mat,
    pub d_z: Mat,
}

impl BetaCompatiblePair {
    pub fn new(d_v: Mat, d_z: Mat, beta: &[Mat]) -> Result<Self> {
        if !is_beta_compatible(&d_v, &d_z, beta) {
            return Err(Error::NotADerivation("pair is not beta-compatible".into()));
        }
        Ok(BetaCompatiblePair { d_v, d_z })
    }
}

/// Blocks `D(v, z) = (D_V v, D_Vz v + D_z z)` of a derivation of a
/// generalized Heisenberg algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergBlocks {
    pub d_v: Mat,
    pub d_vz: Mat,
    pub d_z: Mat,
}

pub fn decompose_heis_derivation(heis: &SpindlerAlgebra, d: &Derivation) -> Result<HeisenbergBlocks> {
    let cb = heis.basis;
    let data = &heis.data;
    if cb.dim_l != 0 {
        return Err(Error::NotHeisenberg("reductive factor is nonzero".into()));
    }
    let z_block: Vec<Vec<Rat>> = cb.z_range().map(|i| linalg::unit_vec(cb.dim(), i)).collect();
    if !linalg::same_span(&heis.g.center(), &z_block, cb.dim()) {
        return Err(Error::NotHeisenberg("center does not equal the z-block".into()));
    }
    let m = d.matrix();
    let d_v = m.block(0, cb.dim_v, 0, cb.dim_v);
    let d_vz = m.block(cb.dim_v, cb.dim_z, 0, cb.dim_v);
    let d_z = m.block(cb.dim_v, cb.dim_z, cb.dim_v, cb.dim_z);
    if !m.block(0, cb.dim_v, cb.dim_v, cb.dim_z).is_zero() {
        return Err(Error::NotHeisenberg("derivation does not preserve the center".into()));
    }
    if !is_beta_compatible(&d_v, &d_z, &data.beta) {
        return Err(Error::NotADerivation("extracted blocks are not beta-compatible".into()));
    }
    let sp = spindler::sp_of_beta(cb.dim_v, &data.beta);
    let flat: Vec<Vec<Rat>> = sp.iter().map(|x| x.flatten().to_vec()).collect();
    for x in &sp {
        if !linalg::in_span(&flat, d_v.commutator(x).flatten()) {
            return Err(Error::NotADerivation("ad(D_V) does not preserve sp(V, beta)".into()));
        }
    }
    Ok(HeisenbergBlocks { d_v, d_vz, d_z })
}

/// The data `(h, D_V, D_z)` of a grading derivation
/// `D(v, z, x) = (D_V v + rho(h) v, D_z z, [h, x])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedDerivation {
    /// `h` in `l` coordinates; lies in `[l, l]`.
    pub h: Vec<Rat>,
    pub d_v: Mat,
    pub d_z: Mat,
}

/// Spans of `beta(V_a, V_b)` for the eigenspaces of `D_V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDecomposition {
    pub plus: Vec<Vec<Rat>>,
    pub minus: Vec<Vec<Rat>>,
    pub mixed: Vec<Vec<Rat>>,
    pub dim_z: usize,
}

impl CenterDecomposition {
    /// The three pieces are independent and fill `z`.
    pub fn holds(&self) -> bool {
        linalg::is_direct_sum(&[self.plus.clone(), self.minus.clone(), self.mixed.clone()], self.dim_z)
    }
}

impl ClassifiedDerivation {
    /// Matrix of `D` on the composite basis.
    pub fn matrix(&self, s: &SpindlerAlgebra) -> Mat {
        let cb = s.basis;
        let mut m = Mat::zeros(cb.dim(), cb.dim());
        m.set_block(0, 0, &(&self.d_v + &s.data.rho_of(&self.h)));
        m.set_block(cb.dim_v, cb.dim_v, &self.d_z);
        m.set_block(cb.dim_v + cb.dim_z, cb.dim_v + cb.dim_z, &s.data.l.ad_vec(&self.h));
        m
    }

    pub fn center_decomposition(&self, s: &SpindlerAlgebra) -> CenterDecomposition {
        let data = &s.data;
        let span = |a: &[Vec<Rat>], b: &[Vec<Rat>]| {
            let mut out = Vec::new();
            for v in a {
                for w in b {
                    out.push(data.beta_of(v, w));
                }
            }
            linalg::span_basis(&out, data.dim_z)
        };
        let vp = linalg::eigenspace(&self.d_v, &rat(1, 2));
        let vm = linalg::eigenspace(&self.d_v, &rat(-1, 2));
        let v0 = linalg::eigenspace(&self.d_v, &int(0));
        let mut mixed = span(&v0, &v0);
        mixed.extend(span(&vm, &vp));
        CenterDecomposition {
            plus: span(&vp, &vp),
            minus: span(&vm, &vm),
            mixed: linalg::span_basis(&mixed, data.dim_z),
            dim_z: data.dim_z,
        }
    }
}

fn violation(condition: u8, detail: impl Into<String>) -> Error {
    Error::ConditionViolation { condition, detail: detail.into() }
}

/// Matrix of `ad(h)` restricted to `[l, l]` in the canonical basis of `[l, l]`.
fn ad_on_semisimple_part(l: &LieAlgebra, h: &[Rat]) -> Option<Mat> {
    let s = l.derived_subalgebra();
    let ad = l.ad_vec(h);
    let cols: Option<Vec<Vec<Rat>>> = s.iter().map(|x| linalg::coordinates(&s, &ad.mul_vec(x))).collect();
    Some(Mat::from_cols(&cols?, s.len()))
}

fn eigen_total(m: &Mat, values: &[Rat]) -> usize {
    values.iter().map(|l| linalg::eigenspace(m, l).len()).sum()
}

/// Verdict on one classification condition; `condition` is `None` for
/// beta-compatibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: Option<u8>,
    pub outcome: std::result::Result<(), String>,
}

fn condition_1(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> std::result::Result<(), String> {
    let l = &s.data.l;
    if l.center().iter().any(|z| !linalg::is_zero_vec(&l.bracket_vec(&c.h, z))) {
        return Err("D does not vanish on the center of l".into());
    }
    Ok(())
}

fn condition_2(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> std::result::Result<(), String> {
    let l = &s.data.l;
    if !linalg::in_span(&l.derived_subalgebra(), &c.h) {
        return Err("h does not lie in [l, l]".into());
    }
    let ad_s = ad_on_semisimple_part(l, &c.h).ok_or("ad(h) does not preserve [l, l]")?;
    if eigen_total(&ad_s, &[int(-1), int(0), int(1)]) != ad_s.rows() {
        return Err("ad(h) does not induce a 3-grading of [l, l]".into());
    }
    Ok(())
}

fn condition_3(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> std::result::Result<(), String> {
    let data = &s.data;
    let dim_v = s.basis.dim_v;
    for (a, r) in data.rho.iter().enumerate() {
        if !c.d_v.commutator(r).is_zero() {
            return Err(format!("D_V does not commute with rho({})", data.l.labels()[a]));
        }
    }
    if eigen_total(&c.d_v, &[rat(-1, 2), int(0), rat(1, 2)]) != dim_v {
        return Err("D_V is not diagonalizable with spectrum in {0, -1/2, 1/2}".into());
    }
    let rho_h = data.rho_of(&c.h);
    if !linalg::same_span(&linalg::kernel(&c.d_v), &linalg::kernel(&rho_h), dim_v) {
        return Err("ker(D_V) differs from ker(rho(h))".into());
    }
    let half_sum = |m: &Mat| {
        let mut v = linalg::eigenspace(m, &rat(-1, 2));
        v.extend(linalg::eigenspace(m, &rat(1, 2)));
        v
    };
    if !linalg::same_span(&half_sum(&c.d_v), &half_sum(&rho_h), dim_v) {
        return Err("the +-1/2 eigenspaces of D_V and rho(h) differ".into());
    }
    Ok(())
}

fn check_shapes(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> Result<()> {
    let cb = s.basis;
    if c.h.len() != cb.dim_l
        || c.d_v.rows() != cb.dim_v
        || c.d_v.cols() != cb.dim_v
        || c.d_z.rows() != cb.dim_z
        || c.d_z.cols() != cb.dim_z
    {
        return Err(Error::DimensionMismatch("classified data does not match the Spindler blocks".into()));
    }
    Ok(())
}

/// Evaluates the three classification conditions and beta-compatibility
/// independently of each other.
pub fn condition_checks(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> Result<Vec<ConditionCheck>> {
    check_shapes(s, c)?;
    let beta = if is_beta_compatible(&c.d_v, &c.d_z, &s.data.beta) {
        Ok(())
    } else {
        Err("(D_V, D_z) is not beta-compatible".to_string())
    };
    Ok(vec![
        ConditionCheck { condition: Some(1), outcome: condition_1(s, c) },
        ConditionCheck { condition: Some(2), outcome: condition_2(s, c) },
        ConditionCheck { condition: Some(3), outcome: condition_3(s, c) },
        ConditionCheck { condition: None, outcome: beta },
    ])
}

/// First failing condition, in the order of [`condition_checks`].
fn check_conditions(s: &SpindlerAlgebra, c: &ClassifiedDerivation) -> Result<()> {
    for check in condition_checks(s, c)? {
        if let Err(detail) = check.outcome {
            return Err(match check.condition {
                Some(condition) => violation(condition, detail),
                None => Error::NotADerivation(detail),
            });
        }
    }
    Ok(())
}

/// Validates `(h, D_V, D_z)`, assembles `D` and re-verifies that it is a
/// derivation inducing a 3-grading.
pub fn build_classified(
    s: &SpindlerAlgebra,
    h: Vec<Rat>,
    d_v: Mat,
    d_z: Mat,
) -> Result<(ClassifiedDerivation, Derivation, Grading3)> {
    let c = ClassifiedDerivation { h, d_v, d_z };
    check_conditions(s, &c)?;
    let d = Derivation::new(&s.g, c.matrix(s))?;
    let grading = grading_of(&s.g, &d).map_err(|e| Error::NotAGrading(e.to_string()))?;
    Ok((c, d, grading))
}

/// Why a derivation could not be brought into classified form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotClassified {
    /// Classification condition the extracted data violates, if any.
    pub condition: Option<u8>,
    pub reason: String,
}

impl std::fmt::Display for NotClassified {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.condition {
            Some(c) => write!(f, "condition ({c}): {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

fn not_classified(condition: Option<u8>, reason: impl Into<String>) -> NotClassified {
    NotClassified { condition, reason: reason.into() }
}

/// Extracts `(h, D_V, D_z)` from a block-preserving derivation.
pub fn classify_from_derivation(
    s: &SpindlerAlgebra,
    d: &Derivation,
) -> std::result::Result<ClassifiedDerivation, NotClassified> {
    let cb = s.basis;
    let data = &s.data;
    let m = d.matrix();
    let ranges = [cb.v_range(), cb.z_range(), cb.l_range()];
    for (bi, rows) in ranges.iter().enumerate() {
        for (bj, cols) in ranges.iter().enumerate() {
            if bi == bj {
                continue;
            }
            for i in rows.clone() {
                for j in cols.clone() {
                    if !m[(i, j)].is_zero() {
                        return Err(not_classified(None, "presentation not adapted: D mixes the V, z and l blocks"));
                    }
                }
            }
        }
    }
    let d_l = m.block(cb.dim_v + cb.dim_z, cb.dim_l, cb.dim_v + cb.dim_z, cb.dim_l);
    for z in data.l.center() {
        if !linalg::is_zero_vec(&d_l.mul_vec(&z)) {
            return Err(not_classified(Some(1), "D does not vanish on the center of l"));
        }
    }
    let semisimple = data.l.derived_subalgebra();
    let ad_cols: Vec<Vec<Rat>> = semisimple.iter().map(|x| data.l.ad_vec(x).flatten().to_vec()).collect();
    let coeffs = linalg::coordinates(&ad_cols, d_l.flatten())
        .ok_or_else(|| not_classified(Some(2), "D restricted to l is not ad(h) for h in [l, l]"))?;
    let mut h = linalg::zero_vec(cb.dim_l);
    for (c, x) in coeffs.iter().zip(&semisimple) {
        h = linalg::add_vec(&h, &linalg::scale_vec(c, x));
    }
    let d_v = &m.block(0, cb.dim_v, 0, cb.dim_v) - &data.rho_of(&h);
    let d_z = m.block(cb.dim_v, cb.dim_z, cb.dim_v, cb.dim_z);
    let c = ClassifiedDerivation { h, d_v, d_z };
    match check_conditions(s, &c) {
        Ok(()) => {}
        Err(Error::ConditionViolation { condition, detail }) => return Err(not_classified(Some(condition), detail)),
        Err(e) => return Err(not_classified(None, e.to_string())),
    }
    if c.matrix(s) != *m {
        return Err(not_classified(None, "reassembled matrix differs from the input"));
    }
    if let Err(e) = grading_of(&s.g, d) {
        return Err(not_classified(None, e.to_string()));
    }
    Ok(c)
}

/// Outcome of one candidate in a solvable no-go scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoGoOutcome {
    NotADerivation,
    /// Rejected at grading detection.
    NoGrading(String),
    /// `D = 0`; trivially graded with empty `g_{+-1}`.
    ZeroSurvivor,
    /// `W_f` meets `g_side` only inside the center, whose trace on `g_side`
    /// has dimension `cone_span_dim < eigenspace_dim`.
    SpanFails {
        side: i8,
        eigenspace_dim: usize,
        cone_span_dim: usize,
    },
    /// The scan could not decide this candidate.
    Unresolved(String),
}

impl NoGoOutcome {
    pub fn survives(&self) -> bool {
        matches!(self, NoGoOutcome::ZeroSurvivor | NoGoOutcome::Unresolved(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoGoReport {
    pub outcomes: Vec<NoGoOutcome>,
}

impl NoGoReport {
    /// Indices of candidates that were not ruled out.
    pub fn survivors(&self) -> Vec<usize> {
        self.outcomes.iter().enumerate().filter(|(_, o)| o.survives()).map(|(i, _)| i).collect()
    }
}

/// Validates the hypotheses of the solvable no-go statement: `l` abelian,
/// `g` solvable and `z(g) ⊆ [g, g]`.
pub fn check_no_go_hypotheses(s: &SpindlerAlgebra) -> Result<()> {
    if !s.data.l.derived_subalgebra().is_empty() {
        return Err(Error::HypothesisViolation("reductive factor is not abelian".into()));
    }
    if !s.g.is_solvable() {
        return Err(Error::HypothesisViolation("algebra is not solvable".into()));
    }
    if !linalg::span_contains(&s.g.derived_subalgebra(), &s.g.center(), s.g.dim()) {
        return Err(Error::HypothesisViolation("center is not contained in [g, g]".into()));
    }
    Ok(())
}

/// Scans a finite candidate set for nonzero grading derivations whose
/// `+-1` eigenspaces are spanned by their intersection with `W_f`.
///
/// This is a sample, not a proof over all of `der(g)`.
pub fn solvable_no_go_scan(query: &ConeQuery, candidates: &[Mat]) -> Result<NoGoReport> {
    let s = query.algebra();
    check_no_go_hypotheses(s)?;
    let n = s.g.dim();
    let nil = s.data.nilradical_block();
    let center = s.g.center();
    let mut outcomes = Vec::with_capacity(candidates.len());
    for m in candidates {
        let d = match Derivation::new(&s.g, m.clone()) {
            Ok(d) => d,
            Err(_) => {
                outcomes.push(NoGoOutcome::NotADerivation);
                continue;
            }
        };
        let grading = match grading_of(&s.g, &d) {
            Ok(g) => g,
            Err(e) => {
                outcomes.push(NoGoOutcome::NoGrading(e.to_string()));
                continue;
            }
        };
        if m.is_zero() {
            outcomes.push(NoGoOutcome::ZeroSurvivor);
            continue;
        }
        let mut outcome = None;
        for side in [1i8, -1] {
            let space = grading.side(side);
            if !linalg::span_contains(&nil, space, n) {
                outcome = Some(NoGoOutcome::Unresolved(format!("g_{side} is not contained in the nilradical")));
                break;
            }
            // Every cone point of g_side lies in the nilradical, hence in the
            // center; its span is at most g_side ∩ z(g).
            if !query.cone_in_nilradical_is_central() {
                outcome = Some(NoGoOutcome::Unresolved("cone meets the nilradical outside the center".into()));
                break;
            }
            let trace = intersect(space, &center, n);
            if trace < space.len() {
                outcome = Some(NoGoOutcome::SpanFails { side, eigenspace_dim: space.len(), cone_span_dim: trace });
                break;
            }
        }
        outcomes.push(outcome.unwrap_or_else(|| NoGoOutcome::Unresolved("both eigenspaces are central".into())));
    }
    Ok(NoGoReport { outcomes })
}

/// `dim(span a ∩ span b)`.
fn intersect(a: &[Vec<Rat>], b: &[Vec<Rat>], n: usize) -> usize {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    linalg::rank_of(a, n) + linalg::rank_of(b, n) - linalg::rank_of(&both, n)
}

/// Combinations `sum a_i D_i` with every `a_i` in `{0, +-1/2, +-1}`.
pub fn rescaled_combinations(basis: &[Mat]) -> Vec<Mat> {
    let coeffs = [int(0), rat(1, 2), rat(-1, 2), int(1), int(-1)];
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let mut out = vec![Mat::zeros(first.rows(), first.cols())];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        for m in &out {
            for c in &coeffs {
                next.push(if c.is_zero() { m.clone() } else { m + &b.scale(c) });
            }
        }
        out = next;
    }
    out
}

/// `D(v, z, x) = (c v, 2 c z, 0)`, the conformal derivation of a Jacobi-type
/// algebra with one-dimensional center.
pub fn conformal_derivation(s: &SpindlerAlgebra, c: &Rat) -> Mat {
    let cb = s.basis;
    let mut d = Mat::zeros(cb.dim(), cb.dim());
    for i in cb.v_range() {
        d[(i, i)] = c.clone();
    }
    for i in cb.z_range() {
        d[(i, i)] = c * int(2);
    }
    d
}

/// The inner derivation `ad(x)`.
pub fn inner(g: &LieAlgebra, x: &[Rat]) -> Mat {
    g.ad_vec(x)
}

/// `(1/2 id_V, id_z)`, which is beta-compatible for every beta.
pub fn scaling_pair(dim_v: usize, dim_z: usize) -> (Mat, Mat) {
    (Mat::identity(dim_v).scale(&rat(1, 2)), Mat::identity(dim_z))
}
