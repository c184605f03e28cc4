//! Built-in algebras with their witnesses.
//!
//! Every entry ships the data that downstream checks need: a convex-type
//! element, a torus acting without fixed vectors, a grading derivation in
//! classified form and the Jordan-unit elements used as cone witnesses.

use num_traits::{Signed, Zero};

use crate::cones::ConeQuery;
use crate::derivations::{build_classified, classify_from_derivation};
use crate::error::{Error, Result};
use crate::lie::{numbered_labels, LieAlgebra};
use crate::linalg::{self, int, rat, Mat, Rat};
use crate::spindler::{standard_omega, standard_sp_basis, SpindlerAlgebra, SpindlerData, SymplecticForm};

/// Largest `dim V` the catalog builds.
pub const MAX_DIM_V: usize = 8;

/// Witness for one side of a grading: Jordan units in `l` coordinates and an
/// optional central element in `z` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideWitness {
    pub jordan_units: Vec<Vec<Rat>>,
    pub central: Option<Vec<Rat>>,
}

/// A grading derivation in classified form with witnesses for both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    pub h: Vec<Rat>,
    pub d_v: Mat,
    pub d_z: Mat,
    pub plus: SideWitness,
    pub minus: SideWitness,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: SpindlerAlgebra,
    /// `f` with `f o beta` symplectic and of convex type.
    pub functional: Option<Vec<Rat>>,
    /// `x` in `l` coordinates with positive definite Hamiltonian.
    pub convex_x: Option<Vec<Rat>>,
    pub torus: Vec<Vec<Rat>>,
    /// Declared, not computed.
    pub tube_type: bool,
    pub grading: Option<GradingData>,
}

/// Outcome of one catalog self-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheck {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Catalog names accepted by [`get`].
pub fn names() -> Vec<&'static str> {
    vec!["sl2", "sp2n(n)", "heis(n)", "jacobi(n)", "ex318", "oscillator", "ex319(n)"]
}

fn parse_name(name: &str) -> Result<(String, Option<usize>)> {
    let name = name.trim();
    match name.split_once('(') {
        Some((base, rest)) => {
            let arg = rest
                .strip_suffix(')')
                .and_then(|a| a.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            Ok((base.trim().to_string(), Some(arg)))
        }
        None => Ok((name.to_string(), None)),
    }
}

fn check_size(name: &str, n: usize, dim_v: usize) -> Result<()> {
    if n == 0 || dim_v > MAX_DIM_V {
        return Err(Error::UnknownName(format!("{name}: size {n} outside the catalog range (dim V <= {MAX_DIM_V})")));
    }
    Ok(())
}

/// Materializes a catalog entry; see [`names`].
pub fn get(name: &str) -> Result<CatalogEntry> {
    let (base, arg) = parse_name(name)?;
    let entry = match (base.as_str(), arg) {
        ("sl2", None) => sp2n(1, "sl2")?,
        ("sp2n", Some(n)) => {
            check_size(name, n, 0)?;
            if n > MAX_DIM_V / 2 {
                return Err(Error::UnknownName(format!("{name}: size outside the catalog range")));
            }
            sp2n(n, name)?
        }
        ("heis", n) => {
            let n = n.unwrap_or(1);
            check_size(name, n, 2 * n)?;
            heis(n)?
        }
        ("jacobi", n) => {
            let n = n.unwrap_or(1);
            check_size(name, n, 2 * n)?;
            jacobi(n)?
        }
        ("ex318" | "generalized_jacobi_ex318", None) => ex318()?,
        ("oscillator", None) => oscillator()?,
        ("ex319" | "wedge_fix_ex319", n) => {
            let n = n.unwrap_or(2);
            check_size(name, n, 2 * n)?;
            ex319(n)?
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(entry)
}

fn unzip_basis(basis: Vec<(String, Mat)>) -> (Vec<String>, Vec<Mat>) {
    basis.into_iter().unzip()
}

fn sl2_basis() -> (Vec<String>, Vec<Mat>) {
    unzip_basis(standard_sp_basis(1))
}

/// Coordinates of `½ diag(I, -I)`, the sum of `½ a_ii`, in the standard basis.
fn half_h(n: usize) -> Vec<Rat> {
    let mut h = linalg::zero_vec(n * n + n * (n + 1));
    for i in 0..n {
        h[i * n + i] = rat(1, 2);
    }
    h
}

/// Index of `b_ii` (upper) or `c_ii` (lower) in the standard basis.
fn sym_diag_index(n: usize, i: usize, upper: bool) -> usize {
    let per = n * (n + 1) / 2;
    let offset: usize = (0..i).map(|r| n - r).sum();
    n * n + if upper { 0 } else { per } + offset
}

/// `[[0, I], [0, 0]]`, `-[[0, 0], [I, 0]]` and `U = [[0, I], [-I, 0]]`.
fn jordan_units(n: usize) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let d = n * n + n * (n + 1);
    let mut plus = linalg::zero_vec(d);
    let mut minus = linalg::zero_vec(d);
    for i in 0..n {
        plus[sym_diag_index(n, i, true)] = int(1);
        minus[sym_diag_index(n, i, false)] = int(-1);
    }
    let u = linalg::add_vec(&plus, &minus);
    (plus, minus, u)
}

/// Compact torus `b_ii - c_ii`.
fn sp_torus(n: usize) -> Vec<Vec<Rat>> {
    let d = n * n + n * (n + 1);
    (0..n)
        .map(|i| {
            let mut t = linalg::zero_vec(d);
            t[sym_diag_index(n, i, true)] = int(1);
            t[sym_diag_index(n, i, false)] = int(-1);
            t
        })
        .collect()
}

fn reductive_only(labels: Vec<String>, mats: &[Mat]) -> Result<SpindlerData> {
    let l = LieAlgebra::from_matrix_basis(labels, mats)?;
    let rho = vec![Mat::zeros(0, 0); l.dim()];
    Ok(SpindlerData { l, rho, dim_v: 0, dim_z: 0, beta: Vec::new(), torus: None })
}

fn sp2n(n: usize, name: &str) -> Result<CatalogEntry> {
    let (labels, mats) = unzip_basis(standard_sp_basis(n));
    let torus = sp_torus(n);
    let data = reductive_only(labels, &mats)?.with_torus(torus.clone());
    let (plus, minus, u) = jordan_units(n);
    Ok(CatalogEntry {
        name: name.to_string(),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(Vec::new()),
        convex_x: Some(u),
        torus,
        tube_type: true,
        grading: Some(GradingData {
            h: half_h(n),
            d_v: Mat::zeros(0, 0),
            d_z: Mat::zeros(0, 0),
            plus: SideWitness { jordan_units: vec![plus], central: None },
            minus: SideWitness { jordan_units: vec![minus], central: None },
        }),
    })
}

fn heis(n: usize) -> Result<CatalogEntry> {
    let data = SpindlerData::heisenberg(vec![standard_omega(n)])?;
    Ok(CatalogEntry {
        name: format!("heis({n})"),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(vec![int(1)]),
        convex_x: None,
        torus: Vec::new(),
        tube_type: false,
        grading: Some(GradingData {
            h: Vec::new(),
            d_v: Mat::zeros(2 * n, 2 * n),
            d_z: Mat::zeros(1, 1),
            plus: SideWitness { jordan_units: Vec::new(), central: None },
            minus: SideWitness { jordan_units: Vec::new(), central: None },
        }),
    })
}

fn jacobi(n: usize) -> Result<CatalogEntry> {
    let (labels, mats) = unzip_basis(standard_sp_basis(n));
    let torus = sp_torus(n);
    let data = SpindlerData::linear(labels, mats, vec![standard_omega(n)])?.with_torus(torus.clone());
    let (plus, minus, u) = jordan_units(n);
    Ok(CatalogEntry {
        name: format!("jacobi({n})"),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(vec![int(1)]),
        convex_x: Some(u),
        torus,
        tube_type: true,
        grading: Some(GradingData {
            h: half_h(n),
            d_v: Mat::identity(2 * n).scale(&rat(1, 2)),
            d_z: Mat::identity(1),
            plus: SideWitness { jordan_units: vec![plus], central: Some(vec![int(1)]) },
            minus: SideWitness { jordan_units: vec![minus], central: None },
        }),
    })
}

fn ex318() -> Result<CatalogEntry> {
    let (labels, mats) = sl2_basis();
    let diag: Vec<Mat> = mats.iter().map(|m| Mat::block_diag(&[m.clone(), m.clone()])).collect();
    let w = standard_omega(1);
    let zero = Mat::zeros(2, 2);
    let beta = vec![Mat::block_diag(&[w.clone(), zero.clone()]), Mat::block_diag(&[zero, w])];
    let l = LieAlgebra::from_matrix_basis(labels, &mats)?;
    let torus = vec![vec![int(0), int(1), int(-1)]];
    let data = SpindlerData { l, rho: diag, dim_v: 4, dim_z: 2, beta, torus: Some(torus.clone()) };
    Ok(CatalogEntry {
        name: "ex318".into(),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(vec![int(1), int(1)]),
        convex_x: Some(vec![int(0), int(1), int(-1)]),
        torus,
        tube_type: true,
        grading: Some(GradingData {
            h: vec![rat(1, 2), int(0), int(0)],
            d_v: Mat::diag(&[rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)]),
            d_z: Mat::diag(&[int(1), int(-1)]),
            plus: SideWitness { jordan_units: vec![vec![int(0), int(1), int(0)]], central: Some(vec![int(1), int(0)]) },
            minus: SideWitness {
                jordan_units: vec![vec![int(0), int(0), int(-1)]],
                central: Some(vec![int(0), int(1)]),
            },
        }),
    })
}

fn oscillator() -> Result<CatalogEntry> {
    let u = Mat::from_i64(&[&[0, 1], &[-1, 0]]);
    let torus = vec![vec![int(1)]];
    let data = SpindlerData::linear(vec!["U".into()], vec![u], vec![standard_omega(1)])?.with_torus(torus.clone());
    Ok(CatalogEntry {
        name: "oscillator".into(),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(vec![int(1)]),
        convex_x: Some(vec![int(1)]),
        torus,
        tube_type: false,
        grading: None,
    })
}

/// `V = (R^2)^n` under `sl(2)` acting on each copy, `z = (V ∧ V)_fix` and
/// `beta(v, w)` the projection of `v ∧ w` onto the fixed part along
/// `span(s.(V ∧ V))`.
fn ex319(n: usize) -> Result<CatalogEntry> {
    let (labels, mats) = sl2_basis();
    let dim_v = 2 * n;
    let rho: Vec<Mat> = mats.iter().map(|m| Mat::block_diag(&vec![m.clone(); n])).collect();
    let omega = Mat::block_diag(&vec![standard_omega(1); n]);
    let pairs: Vec<(usize, usize)> = (0..dim_v).flat_map(|p| (p + 1..dim_v).map(move |q| (p, q))).collect();
    let pair_index = |p: usize, q: usize| pairs.iter().position(|&pq| pq == (p, q)).expect("p < q");
    // Action on V ∧ V: x.(e_p ∧ e_q) = x e_p ∧ e_q + e_p ∧ x e_q.
    let wedge_action: Vec<Mat> = rho
        .iter()
        .map(|x| {
            let mut a = Mat::zeros(pairs.len(), pairs.len());
            for (col, &(p, q)) in pairs.iter().enumerate() {
                for r in 0..dim_v {
                    for (c, (s, t)) in [(x[(r, p)].clone(), (r, q)), (x[(r, q)].clone(), (p, r))] {
                        if c.is_zero() || s == t {
                            continue;
                        }
                        let (i, sign) = if s < t { (pair_index(s, t), int(1)) } else { (pair_index(t, s), int(-1)) };
                        a[(i, col)] += c * sign;
                    }
                }
            }
            a
        })
        .collect();
    let stacked: Vec<Vec<Rat>> = wedge_action.iter().flat_map(Mat::row_vecs).collect();
    let fix = linalg::kernel(&Mat::from_rows(stacked));
    let eff_gens: Vec<Vec<Rat>> = wedge_action.iter().flat_map(|a| (0..pairs.len()).map(move |j| a.col(j))).collect();
    let eff = linalg::span_basis(&eff_gens, pairs.len());
    if !linalg::is_direct_sum(&[fix.clone(), eff.clone()], pairs.len()) {
        return Err(Error::HypothesisViolation("V ∧ V is not fix ⊕ eff".into()));
    }
    let mut all = fix.clone();
    all.extend(eff.iter().cloned());
    let k = fix.len();
    let mut beta = vec![Mat::zeros(dim_v, dim_v); k];
    for (idx, &(p, q)) in pairs.iter().enumerate() {
        let coords = linalg::coordinates(&all, &linalg::unit_vec(pairs.len(), idx)).ok_or(Error::Inconsistent)?;
        for (r, b) in beta.iter_mut().enumerate() {
            b[(p, q)] = coords[r].clone();
            b[(q, p)] = -coords[r].clone();
        }
    }
    let f: Vec<Rat> = fix
        .iter()
        .map(|v| pairs.iter().zip(v).fold(Rat::zero(), |acc, (&(p, q), c)| acc + c * &omega[(p, q)]))
        .collect();
    let l = LieAlgebra::from_matrix_basis(labels, &mats)?;
    let torus = vec![vec![int(0), int(1), int(-1)]];
    let data = SpindlerData { l, rho, dim_v, dim_z: k, beta, torus: Some(torus.clone()) };
    data.validate()?;
    // V_1 is the first copy, V_{-1} the rest.
    let mut dv = vec![rat(-1, 2); dim_v];
    dv[0] = rat(1, 2);
    dv[1] = rat(1, 2);
    let d_v = Mat::diag(&dv);
    let d_z = solve_center_part(&data, &d_v)?;
    let plus_central = data.beta_of(&linalg::unit_vec(dim_v, 0), &linalg::unit_vec(dim_v, 1));
    let minus_central =
        if n > 1 { Some(data.beta_of(&linalg::unit_vec(dim_v, 2), &linalg::unit_vec(dim_v, 3))) } else { None };
    Ok(CatalogEntry {
        name: format!("ex319({n})"),
        algebra: SpindlerAlgebra::new(data)?,
        functional: Some(f),
        convex_x: Some(vec![int(0), int(1), int(-1)]),
        torus,
        tube_type: true,
        grading: Some(GradingData {
            h: vec![rat(1, 2), int(0), int(0)],
            d_v,
            d_z,
            plus: SideWitness { jordan_units: vec![vec![int(0), int(1), int(0)]], central: Some(plus_central) },
            minus: SideWitness { jordan_units: vec![vec![int(0), int(0), int(-1)]], central: minus_central },
        }),
    })
}

/// The unique `D_z` making `(D_V, D_z)` beta-compatible when `beta(V, V)`
/// spans `z`.
pub fn solve_center_part(data: &SpindlerData, d_v: &Mat) -> Result<Mat> {
    let k = data.dim_z;
    let n = data.dim_v;
    // Unknown D_z[r][s] at index r * k + s; equation per (r, p, q):
    // sum_s D_z[r][s] beta_s[p][q] = (D_V^T beta_r + beta_r D_V)[p][q].
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (r, b) in data.beta.iter().enumerate() {
        let target = &(&d_v.transpose() * b) + &(b * d_v);
        for p in 0..n {
            for q in p + 1..n {
                let mut row = linalg::zero_vec(k * k);
                for (s, bs) in data.beta.iter().enumerate() {
                    row[r * k + s] = bs[(p, q)].clone();
                }
                rows.push(row);
                rhs.push(target[(p, q)].clone());
            }
        }
    }
    if rows.is_empty() {
        return Ok(Mat::zeros(k, k));
    }
    let x = linalg::solve(&Mat::from_rows(rows), &rhs)?;
    Ok(Mat::from_flat(k, k, x))
}

impl CatalogEntry {
    pub fn query(&self) -> Option<Result<ConeQuery>> {
        self.functional.as_ref().map(|f| ConeQuery::new(self.algebra.clone(), f.clone()))
    }

    /// Runs every check the entry's witnesses support.
    pub fn self_checks(&self) -> Vec<SelfCheck> {
        let s = &self.algebra;
        let g = &s.g;
        let n = g.dim();
        let mut out = Vec::new();
        let mut push = |id: &'static str, passed: bool, detail: String| out.push(SelfCheck { id, passed, detail });
        push("spindler.jacobi-identity", g.check_jacobi().is_ok(), format!("dim {n}"));
        let center = g.center();
        push(
            "spindler.center-closed-form",
            linalg::same_span(&center, &s.data.center_closed_form(), n),
            format!("dim z(g) = {}", center.len()),
        );
        let derived = g.derived_subalgebra();
        push(
            "spindler.derived-closed-form",
            linalg::same_span(&derived, &s.data.derived_closed_form(), n),
            format!("dim [g,g] = {}", derived.len()),
        );
        push("spindler.metadata", g.check_metadata().is_ok(), String::new());
        if !self.torus.is_empty() {
            let ok = s.data.check_effective_torus(&self.torus).unwrap_or(false);
            push("spindler.effective-torus", ok, format!("{} torus elements", self.torus.len()));
        }
        if let (Some(f), Some(x)) = (&self.functional, &self.convex_x) {
            let ok = SymplecticForm::new(&s.data, f.clone()).is_ok_and(|form| s.data.check_convex_type(&form, x));
            push("spindler.convex-type", ok, String::new());
        }
        if let Some(Ok(q)) = self.query() {
            push("cones.phi-homomorphism", q.phi_homomorphism_defect().is_none(), String::new());
            if self.name.starts_with("ex319") {
                push(
                    "catalog.fix-form-restricts-to-omega",
                    q.omega() == &omega_of_copies(s.basis.dim_v / 2),
                    format!("dim z = {}", s.basis.dim_z),
                );
            }
        }
        if let Some(gd) = &self.grading {
            match build_classified(s, gd.h.clone(), gd.d_v.clone(), gd.d_z.clone()) {
                Ok((c, d, grading)) => {
                    let (m, z, p) = grading.dims();
                    push("derivations.grading", true, format!("dims (g-1, g0, g1) = ({m}, {z}, {p})"));
                    push(
                        "derivations.round-trip",
                        classify_from_derivation(s, &d).is_ok_and(|back| back == c),
                        String::new(),
                    );
                }
                Err(e) => push("derivations.grading", false, e.to_string()),
            }
        }
        out
    }
}

fn omega_of_copies(n: usize) -> Mat {
    Mat::block_diag(&vec![standard_omega(1); n])
}

/// Sign-normalizes a central element so that `f` is positive on it.
pub fn positive_central(f: &[Rat], z: &[Rat]) -> Option<Vec<Rat>> {
    let value = linalg::dot(f, z);
    if value.is_positive() {
        Some(z.to_vec())
    } else if value.is_negative() {
        Some(linalg::scale_vec(&int(-1), z))
    } else {
        None
    }
}

/// Labels `f0..` used for V coordinates in built algebras.
pub fn v_labels(dim_v: usize) -> Vec<String> {
    numbered_labels("f", dim_v)
}
