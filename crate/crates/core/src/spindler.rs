//! Spindler's construction `g(l, V, z, beta) = V x z x l` and the symplectic
//! machinery around it.
//!
//! The bracket is `[(v,z,x), (v',z',x')] = (x.v' - x'.v, beta(v,v'), [x,x'])`.
//! Coordinates of a built algebra are ordered V-block, z-block, l-block.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{numbered_labels, LieAlgebra, Metadata, Validation};
use crate::linalg::{self, int, rat, zero_vec, Mat, PsdStatus, Rat};

/// Inputs of the construction.
///
/// `rho[a]` is the matrix of the `a`-th basis element of `l` acting on `V`;
/// `beta[r]` is the antisymmetric matrix of the `r`-th component of `beta`,
/// so `beta(f_p, f_q) = sum_r beta[r][(p, q)] z_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpindlerData {
    pub l: LieAlgebra,
    pub rho: Vec<Mat>,
    pub dim_v: usize,
    pub dim_z: usize,
    pub beta: Vec<Mat>,
    /// Basis (in `l` coordinates) of a toral subalgebra used to certify
    /// `z_V(t) = 0`.
    pub torus: Option<Vec<Vec<Rat>>>,
}

/// Index bookkeeping for the V, z, l blocks of a built algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositeBasis {
    pub dim_v: usize,
    pub dim_z: usize,
    pub dim_l: usize,
}

impl CompositeBasis {
    pub fn dim(&self) -> usize {
        self.dim_v + self.dim_z + self.dim_l
    }

    pub fn v_range(&self) -> std::ops::Range<usize> {
        0..self.dim_v
    }

    pub fn z_range(&self) -> std::ops::Range<usize> {
        self.dim_v..self.dim_v + self.dim_z
    }

    pub fn l_range(&self) -> std::ops::Range<usize> {
        self.dim_v + self.dim_z..self.dim()
    }

    pub fn v_index(&self, p: usize) -> usize {
        p
    }

    pub fn z_index(&self, r: usize) -> usize {
        self.dim_v + r
    }

    pub fn l_index(&self, a: usize) -> usize {
        self.dim_v + self.dim_z + a
    }

    /// Assembles `(v, z, x)` into composite coordinates.
    pub fn join(&self, v: &[Rat], z: &[Rat], x: &[Rat]) -> Vec<Rat> {
        assert_eq!((v.len(), z.len(), x.len()), (self.dim_v, self.dim_z, self.dim_l));
        v.iter().chain(z).chain(x).cloned().collect()
    }

    pub fn embed_v(&self, v: &[Rat]) -> Vec<Rat> {
        self.join(v, &zero_vec(self.dim_z), &zero_vec(self.dim_l))
    }

    pub fn embed_z(&self, z: &[Rat]) -> Vec<Rat> {
        self.join(&zero_vec(self.dim_v), z, &zero_vec(self.dim_l))
    }

    pub fn embed_l(&self, x: &[Rat]) -> Vec<Rat> {
        self.join(&zero_vec(self.dim_v), &zero_vec(self.dim_z), x)
    }

    /// Splits composite coordinates into `(v, z, x)`.
    pub fn split<'a>(&self, y: &'a [Rat]) -> (&'a [Rat], &'a [Rat], &'a [Rat]) {
        assert_eq!(y.len(), self.dim());
        let (v, rest) = y.split_at(self.dim_v);
        let (z, x) = rest.split_at(self.dim_z);
        (v, z, x)
    }
}

/// A functional `f` on `z` together with `Omega = f o beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub f: Vec<Rat>,
    pub omega: Mat,
}

impl SymplecticForm {
    /// Fails with `OmegaSingular` unless `f o beta` is nondegenerate.
    pub fn new(data: &SpindlerData, f: Vec<Rat>) -> Result<Self> {
        if f.len() != data.dim_z {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} entries, z has dimension {}",
                f.len(),
                data.dim_z
            )));
        }
        let omega = data.form_of(&f);
        if linalg::det(&omega).is_zero() {
            return Err(Error::OmegaSingular);
        }
        Ok(SymplecticForm { f, omega })
    }

    /// `Omega(a, b) = a^T Omega b`.
    pub fn eval(&self, a: &[Rat], b: &[Rat]) -> Rat {
        linalg::dot(a, &self.omega.mul_vec(b))
    }
}

/// A built algebra together with the data it came from.
#[derive(Clone, Debug)]
pub struct SpindlerAlgebra {
    pub data: SpindlerData,
    pub g: LieAlgebra,
    pub basis: CompositeBasis,
}

impl SpindlerData {
    /// `l` given as a matrix Lie algebra acting on `V` by its own matrices.
    pub fn linear(labels: Vec<String>, mats: Vec<Mat>, beta: Vec<Mat>) -> Result<Self> {
        let dim_v = beta.first().map(Mat::rows).or_else(|| mats.first().map(Mat::rows)).unwrap_or(0);
        let l = LieAlgebra::from_matrix_basis(labels, &mats)?;
        let data = SpindlerData { l, rho: mats, dim_v, dim_z: beta.len(), beta, torus: None };
        data.validate()?;
        Ok(data)
    }

    /// Heisenberg data: `l = 0`.
    pub fn heisenberg(beta: Vec<Mat>) -> Result<Self> {
        let dim_v = beta.first().map_or(0, Mat::rows);
        let data = SpindlerData {
            l: LieAlgebra::abelian(Vec::new()),
            rho: Vec::new(),
            dim_v,
            dim_z: beta.len(),
            beta,
            torus: None,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn with_torus(mut self, torus: Vec<Vec<Rat>>) -> Self {
        self.torus = Some(torus);
        self
    }

    pub fn composite_basis(&self) -> CompositeBasis {
        CompositeBasis { dim_v: self.dim_v, dim_z: self.dim_z, dim_l: self.l.dim() }
    }

    /// `rho(x)` for `x` in `l` coordinates.
    pub fn rho_of(&self, x: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.dim_v, self.dim_v);
        for (c, r) in x.iter().zip(&self.rho) {
            if !c.is_zero() {
                m = &m + &r.scale(c);
            }
        }
        m
    }

    /// `beta(v, w)` as a vector in `z`.
    pub fn beta_of(&self, v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        self.beta.iter().map(|b| linalg::dot(v, &b.mul_vec(w))).collect()
    }

    /// Matrix of the form `g o beta`.
    pub fn form_of(&self, g: &[Rat]) -> Mat {
        let mut m = Mat::zeros(self.dim_v, self.dim_v);
        for (c, b) in g.iter().zip(&self.beta) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        m
    }

    /// Checks shapes, antisymmetry of `beta`, that `rho` is a homomorphism and
    /// that `beta` is `l`-invariant. Violations name a basis triple.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim_v;
        if self.rho.len() != self.l.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} representation matrices for dim l = {}",
                self.rho.len(),
                self.l.dim()
            )));
        }
        if self.beta.len() != self.dim_z {
            return Err(Error::DimensionMismatch(format!(
                "{} beta components for dim z = {}",
                self.beta.len(),
                self.dim_z
            )));
        }
        for m in self.rho.iter().chain(&self.beta) {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n}x{n} matrix, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (r, b) in self.beta.iter().enumerate() {
            for p in 0..n {
                for q in p..n {
                    if b[(p, q)] != -&b[(q, p)] {
                        return Err(Error::InvalidData(p, q, r, "beta is not antisymmetric".into()));
                    }
                }
            }
        }
        for a in 0..self.l.dim() {
            for b in a + 1..self.l.dim() {
                let lhs = self.rho_of(
                    &self.l.bracket_vec(&linalg::unit_vec(self.l.dim(), a), &linalg::unit_vec(self.l.dim(), b)),
                );
                let rhs = self.rho[a].commutator(&self.rho[b]);
                if lhs != rhs {
                    return Err(Error::InvalidData(a, b, 0, "rho is not a homomorphism on this pair".into()));
                }
            }
        }
        for (a, x) in self.rho.iter().enumerate() {
            for (r, b) in self.beta.iter().enumerate() {
                let defect = &(&x.transpose() * b) + &(b * x);
                if let Some(pq) = first_nonzero(&defect) {
                    return Err(Error::InvalidData(a, pq.0, pq.1, format!("beta component {r} is not invariant")));
                }
            }
        }
        Ok(())
    }

    /// True iff `beta(V, V)` spans `z`.
    pub fn beta_spans_center(&self) -> bool {
        linalg::rank_of(&self.beta_image(), self.dim_z) == self.dim_z
    }

    fn beta_image(&self) -> Vec<Vec<Rat>> {
        let n = self.dim_v;
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                out.push(self.beta.iter().map(|b| b[(p, q)].clone()).collect());
            }
        }
        out
    }

    /// Human-readable warnings about hypotheses of the classification that
    /// the data does not meet.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.beta_spans_center() {
            w.push("beta(V,V) does not span z; the center is not contained in [g,g] and classification results may be vacuous".into());
        }
        w
    }

    /// `z_V(t) = 0` for the given toral basis (in `l` coordinates).
    pub fn check_effective_torus(&self, torus: &[Vec<Rat>]) -> Result<bool> {
        for (i, s) in torus.iter().enumerate() {
            for t in &torus[i + 1..] {
                if !linalg::is_zero_vec(&self.l.bracket_vec(s, t)) {
                    return Err(Error::NotAbelian);
                }
            }
        }
        if self.dim_v == 0 {
            return Ok(true);
        }
        let mut rows = Vec::new();
        for t in torus {
            rows.extend(self.rho_of(t).row_vecs());
        }
        if rows.is_empty() {
            return Ok(false);
        }
        Ok(linalg::kernel(&Mat::from_rows(rows)).is_empty())
    }

    /// Whether the Hamiltonian `v -> Omega(x.v, v)` is positive definite.
    pub fn check_convex_type(&self, form: &SymplecticForm, witness_x: &[Rat]) -> bool {
        let s = hamiltonian(&self.rho_of(witness_x), &form.omega);
        matches!(linalg::psd_status(&s), Ok(PsdStatus::PositiveDefinite))
    }

    /// Closed form of the center: `{0} x z x {x in z(l) : rho(x) = 0}`.
    pub fn center_closed_form(&self) -> Vec<Vec<Rat>> {
        let cb = self.composite_basis();
        let zl = self.l.center();
        let coeffs = linalg::kernel_of_map(zl.len(), |i| self.rho_of(&zl[i]).flatten().to_vec());
        let mut out: Vec<Vec<Rat>> = (0..self.dim_z).map(|r| cb.embed_z(&linalg::unit_vec(self.dim_z, r))).collect();
        for c in coeffs {
            let mut x = zero_vec(self.l.dim());
            for (ci, zi) in c.iter().zip(&zl) {
                x = linalg::add_vec(&x, &linalg::scale_vec(ci, zi));
            }
            out.push(cb.embed_l(&x));
        }
        linalg::span_basis(&out, cb.dim())
    }

    /// Closed form of the derived algebra: `span(l.V) x beta(V,V) x [l,l]`.
    pub fn derived_closed_form(&self) -> Vec<Vec<Rat>> {
        let cb = self.composite_basis();
        let mut out = Vec::new();
        for r in &self.rho {
            for p in 0..self.dim_v {
                out.push(cb.embed_v(&r.col(p)));
            }
        }
        for z in self.beta_image() {
            out.push(cb.embed_z(&z));
        }
        for x in self.l.derived_subalgebra() {
            out.push(cb.embed_l(&x));
        }
        linalg::span_basis(&out, cb.dim())
    }

    /// `V + z(g)`, the nilradical when the torus acts effectively.
    pub fn nilradical_block(&self) -> Vec<Vec<Rat>> {
        let cb = self.composite_basis();
        let mut out: Vec<Vec<Rat>> = (0..self.dim_v).map(|p| cb.embed_v(&linalg::unit_vec(self.dim_v, p))).collect();
        out.extend(self.center_closed_form());
        linalg::span_basis(&out, cb.dim())
    }
}

fn first_nonzero(m: &Mat) -> Option<(usize, usize)> {
    (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).find(|&(i, j)| !m[(i, j)].is_zero())
}

/// Symmetric matrix of `v -> Omega(x v, v)`.
pub fn hamiltonian(x: &Mat, omega: &Mat) -> Mat {
    let a = &x.transpose() * omega;
    (&a + &a.transpose()).scale(&rat(1, 2))
}

/// Assembles `g(l, V, z, beta)` and validates the Jacobi identity.
pub fn build(data: &SpindlerData) -> Result<LieAlgebra> {
    Ok(SpindlerAlgebra::new(data.clone())?.g)
}

impl SpindlerAlgebra {
    pub fn new(data: SpindlerData) -> Result<Self> {
        data.validate()?;
        let cb = data.composite_basis();
        let mut labels = numbered_labels("f", data.dim_v);
        labels.extend(numbered_labels("z", data.dim_z));
        labels.extend(data.l.labels().iter().cloned());
        let mut entries = Vec::new();
        for p in 0..data.dim_v {
            for q in p + 1..data.dim_v {
                for (r, b) in data.beta.iter().enumerate() {
                    if !b[(p, q)].is_zero() {
                        entries.push((cb.v_index(p), cb.v_index(q), cb.z_index(r), b[(p, q)].clone()));
                    }
                }
            }
        }
        for (a, m) in data.rho.iter().enumerate() {
            for p in 0..data.dim_v {
                for q in 0..data.dim_v {
                    if !m[(q, p)].is_zero() {
                        entries.push((cb.l_index(a), cb.v_index(p), cb.v_index(q), m[(q, p)].clone()));
                    }
                }
            }
        }
        for (a, b, row) in data.l.constants() {
            for (k, c) in row {
                entries.push((cb.l_index(a), cb.l_index(b), cb.l_index(*k), c.clone()));
            }
        }
        let g = LieAlgebra::from_entries(labels, entries, Validation::Full).map_err(|e| match e {
            Error::InvalidStructure { i, j, k, reason } => Error::InvalidData(i, j, k, reason),
            other => other,
        })?;
        let mut meta = Metadata {
            center: Some(data.center_closed_form()),
            nilradical: None,
            levi: Some(data.l.derived_subalgebra().iter().map(|x| cb.embed_l(x)).collect()),
        };
        if let Some(t) = &data.torus {
            if data.check_effective_torus(t)? {
                meta.nilradical = Some(data.nilradical_block());
            }
        }
        let g = g.with_metadata(meta);
        Ok(SpindlerAlgebra { data, g, basis: cb })
    }
}

/// Basis of `sp(V, beta) = {x : beta(xv, w) + beta(v, xw) = 0}`.
pub fn sp_of_beta(dim_v: usize, beta: &[Mat]) -> Vec<Mat> {
    linalg::matrix_kernel(dim_v, |x| {
        let mut out = Vec::new();
        for b in beta {
            let d = &(&x.transpose() * b) + &(b * x);
            for p in 0..dim_v {
                for q in p + 1..dim_v {
                    out.push(d[(p, q)].clone());
                }
                out.push(d[(p, p)].clone());
            }
        }
        out
    })
}

/// `sp(V, beta)` recomputed as the centralizer in `sp(V, Omega_f)` of the maps
/// `Psi_g` for `g` running over the coordinate functionals of `z`.
pub fn sp_of_beta_via_psi(dim_v: usize, f: &[Rat], beta: &[Mat]) -> Result<Vec<Mat>> {
    let omega = combine_forms(dim_v, f, beta);
    let psis: Vec<Mat> =
        (0..beta.len()).map(|r| psi_g(&linalg::unit_vec(beta.len(), r), f, beta)).collect::<Result<_>>()?;
    Ok(linalg::matrix_kernel(dim_v, |x| {
        let mut out: Vec<Rat> = (&(&x.transpose() * &omega) + &(&omega * x)).flatten().to_vec();
        for p in &psis {
            out.extend(x.commutator(p).flatten().iter().cloned());
        }
        out
    }))
}

fn combine_forms(dim_v: usize, g: &[Rat], beta: &[Mat]) -> Mat {
    let mut m = Mat::zeros(dim_v, dim_v);
    for (c, b) in g.iter().zip(beta) {
        m = &m + &b.scale(c);
    }
    m
}

/// `X# = Omega^{-1} X^T Omega`, the adjoint with respect to `Omega`.
pub fn sharp(x: &Mat, omega: &Mat) -> Result<Mat> {
    let inv = linalg::inverse(omega).ok_or(Error::OmegaSingular)?;
    Ok(&(&inv * &x.transpose()) * omega)
}

/// Basis of the commutant `{A : [A, rho_a] = 0 for all a}`.
pub fn commutant(rho: &[Mat], dim_v: usize) -> Vec<Mat> {
    linalg::matrix_kernel(dim_v, |a| rho.iter().flat_map(|r| a.commutator(r).flatten().to_vec()).collect())
}

/// Basis of `{A in commutant : A# = -A}`.
pub fn antisymmetric_commutant(rho: &[Mat], omega: &Mat) -> Vec<Mat> {
    let n = omega.rows();
    linalg::matrix_kernel(n, |a| {
        let mut out: Vec<Rat> = rho.iter().flat_map(|r| a.commutator(r).flatten().to_vec()).collect();
        out.extend((&(&a.transpose() * omega) + &(omega * a)).flatten().iter().cloned());
        out
    })
}

/// Rational probe points used to test for real eigenvalues.
pub fn spectrum_probes() -> Vec<Rat> {
    vec![int(1), int(-1), rat(1, 2), rat(-1, 2), int(2), int(-2)]
}

/// No probe `lambda` is an eigenvalue of `x`: the eigenspace is empty and
/// `det(x - lambda)` is nonzero.
pub fn has_no_probe_eigenvalue(x: &Mat) -> bool {
    let n = x.rows();
    spectrum_probes()
        .iter()
        .all(|l| linalg::eigenspace(x, l).is_empty() && !linalg::det(&(x - &Mat::identity(n).scale(l))).is_zero())
}

/// `Psi_g = Omega_f^{-1} Omega_g`, so that `(g o beta)(v, w) = Omega_f(Psi_g v, w)`.
pub fn psi_g(g: &[Rat], f: &[Rat], beta: &[Mat]) -> Result<Mat> {
    let n = beta.first().map_or(0, Mat::rows);
    let omega_f = combine_forms(n, f, beta);
    let inv = linalg::inverse(&omega_f).ok_or(Error::OmegaSingular)?;
    Ok(&inv * &combine_forms(n, g, beta))
}

/// `sp(V, beta)` as a matrix Lie algebra with labels `x0, x1, ...`.
pub fn generalized_jacobi_data(dim_v: usize, beta: Vec<Mat>) -> Result<SpindlerData> {
    let basis = sp_of_beta(dim_v, &beta);
    let labels = numbered_labels("x", basis.len());
    if beta.is_empty() {
        return Err(Error::DimensionMismatch("beta has no components".into()));
    }
    SpindlerData::linear(labels, basis, beta)
}

/// `hsp(V, Omega) = g(sp(V, Omega), V, R, Omega)`.
pub fn build_jacobi(dim_v: usize, omega: &Mat) -> Result<LieAlgebra> {
    if omega.rows() != dim_v || !omega.is_antisymmetric() {
        return Err(Error::DimensionMismatch("omega must be an antisymmetric dim_v x dim_v matrix".into()));
    }
    if linalg::det(omega).is_zero() {
        return Err(Error::OmegaSingular);
    }
    build(&generalized_jacobi_data(dim_v, vec![omega.clone()])?)
}

/// `hsp(V, beta) = g(sp(V, beta), V, z, beta)`.
pub fn build_generalized_jacobi(dim_v: usize, dim_z: usize, beta: Vec<Mat>) -> Result<LieAlgebra> {
    if beta.len() != dim_z {
        return Err(Error::DimensionMismatch(format!("{} beta components for dim z = {dim_z}", beta.len())));
    }
    build(&generalized_jacobi_data(dim_v, beta)?)
}

/// The standard form `[[0, I], [-I, 0]]` on `R^{2n}`.
pub fn standard_omega(n: usize) -> Mat {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = Rat::one();
        m[(n + i, i)] = -Rat::one();
    }
    m
}

/// Basis of `sp(2n, R)` for the standard form: `[[A, 0], [0, -A^T]]`,
/// `[[0, B], [0, 0]]` and `[[0, 0], [C, 0]]` with `B`, `C` symmetric.
/// For `n = 1` the labels are `H`, `E`, `F`.
pub fn standard_sp_basis(n: usize) -> Vec<(String, Mat)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut m = Mat::zeros(2 * n, 2 * n);
            m[(i, j)] = Rat::one();
            m[(n + j, n + i)] = -Rat::one();
            out.push((format!("a{i}{j}"), m));
        }
    }
    for (tag, upper) in [("b", true), ("c", false)] {
        for i in 0..n {
            for j in i..n {
                let mut m = Mat::zeros(2 * n, 2 * n);
                let (r0, c0) = if upper { (0, n) } else { (n, 0) };
                m[(r0 + i, c0 + j)] = Rat::one();
                m[(r0 + j, c0 + i)] = Rat::one();
                out.push((format!("{tag}{i}{j}"), m));
            }
        }
    }
    if n == 1 {
        for ((label, _), name) in out.iter_mut().zip(["H", "E", "F"]) {
            *label = name.to_string();
        }
    }
    out
}
