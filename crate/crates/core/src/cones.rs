//! The invariant cones `W_f`.
//!
//! `Phi_f(v, z, x) = (v, f(z), rho(x))` maps a Spindler algebra into the
//! Jacobi algebra `hsp(V, Omega)` with `Omega = f o beta`. There an element
//! `(w, c, x)` is the polynomial `p(v) = 1/2 Omega(xv, v) + Omega(w, v) + c`
//! and the positive cone consists of the nonnegative polynomials. `W_f` is
//! the preimage of that cone.
//!
//! A quadratic `p(v) = v^T Q v + l^T v + c` is nonnegative on all of `V` iff
//! the bordered matrix `[[Q, l/2], [l^T/2, c]]` is positive semidefinite: the
//! bordered form is the homogenization `t^2 p(v/t)`, and nonnegativity on
//! `t != 0` extends to `t = 0` by continuity.

use num_traits::{One, Signed};

use crate::derivations::{ClassifiedDerivation, Grading3};
use crate::error::{Error, Result};
use crate::lie::Element;
use crate::linalg::{self, int, rat, Mat, PsdStatus, Rat};
use crate::spindler::{SpindlerAlgebra, SymplecticForm};

/// An element `(w, c, x)` of `hsp(V, Omega)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiElement {
    pub w: Vec<Rat>,
    pub c: Rat,
    pub x: Mat,
}

impl JacobiElement {
    /// Bracket `(x w' - x' w, Omega(w, w'), [x, x'])`.
    pub fn bracket(&self, other: &JacobiElement, omega: &Mat) -> JacobiElement {
        JacobiElement {
            w: linalg::sub_vec(&self.x.mul_vec(&other.w), &other.x.mul_vec(&self.w)),
            c: linalg::dot(&self.w, &omega.mul_vec(&other.w)),
            x: self.x.commutator(&other.x),
        }
    }
}

/// `p(v) = v^T q v + linear^T v + constant` with `q` symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPolynomial {
    pub q: Mat,
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl QuadPolynomial {
    pub fn eval(&self, v: &[Rat]) -> Rat {
        linalg::dot(v, &self.q.mul_vec(v)) + linalg::dot(&self.linear, v) + &self.constant
    }

    /// `[[q, l/2], [l^T/2, c]]`.
    pub fn bordered(&self) -> Mat {
        let n = self.q.rows();
        let mut m = Mat::zeros(n + 1, n + 1);
        m.set_block(0, 0, &self.q);
        let half = rat(1, 2);
        for (i, l) in self.linear.iter().enumerate() {
            m[(i, n)] = l * &half;
            m[(n, i)] = l * &half;
        }
        m[(n, n)] = self.constant.clone();
        m
    }

    pub fn status(&self) -> PsdStatus {
        linalg::psd_status(&self.bordered()).expect("bordered matrix is symmetric by construction")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.status().is_psd()
    }

    pub fn is_interior(&self) -> bool {
        self.status() == PsdStatus::PositiveDefinite
    }
}

/// `phi(w, c, x)(v) = 1/2 Omega(xv, v) + Omega(w, v) + c` in coefficient form:
/// `Q = (x^T Omega - Omega x) / 4`, `l = Omega^T w`.
pub fn to_polynomial(j: &JacobiElement, omega: &Mat) -> QuadPolynomial {
    let a = &j.x.transpose() * omega;
    let q = (&a - &(omega * &j.x)).scale(&rat(1, 4));
    QuadPolynomial { q, linear: omega.transpose().mul_vec(&j.w), constant: j.c.clone() }
}

/// A Spindler algebra with a functional `f` on `z` such that `f o beta` is
/// symplectic.
#[derive(Clone, Debug)]
pub struct ConeQuery {
    algebra: SpindlerAlgebra,
    form: SymplecticForm,
}

impl ConeQuery {
    pub fn new(algebra: SpindlerAlgebra, f: Vec<Rat>) -> Result<Self> {
        let form = SymplecticForm::new(&algebra.data, f)?;
        Ok(ConeQuery { algebra, form })
    }

    pub fn algebra(&self) -> &SpindlerAlgebra {
        &self.algebra
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn omega(&self) -> &Mat {
        &self.form.omega
    }

    pub fn phi_f(&self, y: &[Rat]) -> JacobiElement {
        let (v, z, x) = self.algebra.basis.split(y);
        JacobiElement { w: v.to_vec(), c: linalg::dot(&self.form.f, z), x: self.algebra.data.rho_of(x) }
    }

    pub fn polynomial(&self, y: &[Rat]) -> QuadPolynomial {
        to_polynomial(&self.phi_f(y), self.omega())
    }

    pub fn in_cone(&self, y: &[Rat]) -> bool {
        self.polynomial(y).is_nonnegative()
    }

    pub fn in_cone_interior(&self, y: &[Rat]) -> bool {
        self.polynomial(y).is_interior()
    }

    pub fn element_in_cone(&self, y: &Element) -> Result<bool> {
        if y.parent_id() != self.algebra.g.id() {
            return Err(Error::ParentMismatch);
        }
        Ok(self.in_cone(y.coords()))
    }

    /// First basis pair on which `Phi_f` fails to be a homomorphism.
    pub fn phi_homomorphism_defect(&self) -> Option<(usize, usize)> {
        let g = &self.algebra.g;
        let n = g.dim();
        let images: Vec<JacobiElement> = (0..n).map(|i| self.phi_f(&linalg::unit_vec(n, i))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.phi_f(&g.bracket_vec(&linalg::unit_vec(n, i), &linalg::unit_vec(n, j)));
                if lhs != images[i].bracket(&images[j], self.omega()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Exact check that `W_f ∩ u ⊆ z(g)` for the nilradical `u = V + z(g)`.
    ///
    /// On `u` the polynomial is the affine function `Omega(v, .) + f(z)`,
    /// which is nonnegative iff `v = 0` and `f(z) >= 0` since `Omega` is
    /// nondegenerate. So the claim reduces to: `rho` vanishes on the l-part of
    /// `u`, and every element of `u` with zero V-part is central.
    pub fn cone_in_nilradical_is_central(&self) -> bool {
        let s = &self.algebra;
        let cb = s.basis;
        let u = s.data.nilradical_block();
        if u.iter().any(|y| !s.data.rho_of(cb.split(y).2).is_zero()) {
            return false;
        }
        let section = self.nilradical_cone_section();
        linalg::span_contains(&s.g.center(), &section, cb.dim())
    }

    /// Basis of `{y in u : V-part of y = 0}`, the subspace containing
    /// `W_f ∩ u`.
    pub fn nilradical_cone_section(&self) -> Vec<Vec<Rat>> {
        let s = &self.algebra;
        let cb = s.basis;
        let u = s.data.nilradical_block();
        let coeffs = linalg::kernel_of_map(u.len(), |i| cb.split(&u[i]).0.to_vec());
        coeffs
            .iter()
            .map(|c| {
                let mut y = linalg::zero_vec(cb.dim());
                for (ci, ui) in c.iter().zip(&u) {
                    y = linalg::add_vec(&y, &linalg::scale_vec(ci, ui));
                }
                y
            })
            .collect()
    }
}

/// `sum_k x_k + central` for Jordan units `x_k` in `s_side(h)`, checked to
/// lie in `g_side(D)`.
///
/// `jordan_units` are given in l coordinates and `central` in z coordinates;
/// `central` may be omitted when `z_side(D) = 0`.
pub fn witness_3grading(
    query: &ConeQuery,
    grading: &Grading3,
    classified: &ClassifiedDerivation,
    side: i8,
    jordan_units: &[Vec<Rat>],
    central: Option<&[Rat]>,
) -> Result<Element> {
    let s = query.algebra();
    let cb = s.basis;
    let l = &s.data.l;
    let semisimple = l.derived_subalgebra();
    let lambda = int(side as i64);
    let mut x = linalg::zero_vec(cb.dim_l);
    for (k, unit) in jordan_units.iter().enumerate() {
        if unit.len() != cb.dim_l {
            return Err(Error::DimensionMismatch(format!("Jordan unit {k} has the wrong length")));
        }
        let image = l.bracket_vec(&classified.h, unit);
        if image != linalg::scale_vec(&lambda, unit) || !linalg::in_span(&semisimple, unit) {
            return Err(Error::NotInEigenspace(format!("Jordan unit {k} is not in s_{side}(h)")));
        }
        x = linalg::add_vec(&x, unit);
    }
    let z = match central {
        Some(z) => {
            if z.len() != cb.dim_z {
                return Err(Error::DimensionMismatch("central part has the wrong length".into()));
            }
            if !linalg::dot(&query.form().f, z).is_positive() {
                return Err(Error::HypothesisViolation("f must be positive on the central part".into()));
            }
            z.to_vec()
        }
        None => linalg::zero_vec(cb.dim_z),
    };
    let y = cb.join(&linalg::zero_vec(cb.dim_v), &z, &x);
    if !linalg::in_span(grading.side(side), &y) {
        return Err(Error::NotInEigenspace(format!("witness is not in g_{side}(D)")));
    }
    s.g.element(y)
}

/// Interior certificate: `witness ± epsilons[i] * subspace[i]` all lie in `W_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCertificate {
    pub subspace: Vec<Vec<Rat>>,
    pub witness: Vec<Rat>,
    pub epsilons: Vec<Rat>,
    /// `witness + eps_i e_i` and `witness - eps_i e_i`, interleaved.
    pub points: Vec<Vec<Rat>>,
}

impl SpanCertificate {
    /// Halving exponent `k` with `epsilons[i] = 2^-k`.
    pub fn halvings(&self) -> Vec<u32> {
        self.epsilons.iter().map(|e| e.denom().bits().saturating_sub(1) as u32).collect()
    }

    /// Re-checks every point against the cone and that the points span the
    /// subspace.
    pub fn revalidate(&self, query: &ConeQuery) -> bool {
        let n = query.algebra().g.dim();
        if !linalg::in_span(&self.subspace, &self.witness) || !query.in_cone(&self.witness) {
            return false;
        }
        if self.points.len() != 2 * self.subspace.len() || self.epsilons.len() != self.subspace.len() {
            return false;
        }
        for (i, (e, eps)) in self.subspace.iter().zip(&self.epsilons).enumerate() {
            let step = linalg::scale_vec(eps, e);
            if !eps.is_positive()
                || self.points[2 * i] != linalg::add_vec(&self.witness, &step)
                || self.points[2 * i + 1] != linalg::sub_vec(&self.witness, &step)
            {
                return false;
            }
        }
        self.points.iter().all(|p| query.in_cone(p))
            && linalg::span_contains(&self.subspace, &self.points, n)
            && linalg::rank_of(&self.points, n) == linalg::rank_of(&self.subspace, n)
    }
}

/// Result of a span certification attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanVerdict {
    Certified(SpanCertificate),
    /// The search budget ran out for `direction`; this is not a disproof.
    Inconclusive {
        direction: usize,
    },
}

impl SpanVerdict {
    pub fn certificate(&self) -> Option<&SpanCertificate> {
        match self {
            SpanVerdict::Certified(c) => Some(c),
            SpanVerdict::Inconclusive { .. } => None,
        }
    }
}

pub const DEFAULT_MAX_HALVINGS: u32 = 40;

/// Searches `eps in {1, 1/2, ..., 2^-max_halvings}` per basis direction for
/// the largest value with `witness ± eps e_i` in `W_f`.
///
/// The admissible `eps` for one direction form an interval starting at 0
/// (the cone is convex), so the first success from the top is the largest.
pub fn certify_span(
    query: &ConeQuery,
    subspace: &[Vec<Rat>],
    witness: &[Rat],
    max_halvings: u32,
) -> Result<SpanVerdict> {
    if !linalg::in_span(subspace, witness) {
        return Err(Error::NotInEigenspace("witness is not in the subspace".into()));
    }
    if !query.in_cone(witness) {
        return Err(Error::WitnessNotInCone);
    }
    let mut epsilons = Vec::with_capacity(subspace.len());
    let mut points = Vec::with_capacity(2 * subspace.len());
    for (i, e) in subspace.iter().enumerate() {
        let mut eps = Rat::one();
        let mut found = None;
        for _ in 0..=max_halvings {
            let step = linalg::scale_vec(&eps, e);
            let up = linalg::add_vec(witness, &step);
            let down = linalg::sub_vec(witness, &step);
            if query.in_cone(&up) && query.in_cone(&down) {
                found = Some((up, down));
                break;
            }
            eps /= int(2);
        }
        match found {
            Some((up, down)) => {
                epsilons.push(eps);
                points.push(up);
                points.push(down);
            }
            None => return Ok(SpanVerdict::Inconclusive { direction: i }),
        }
    }
    Ok(SpanVerdict::Certified(SpanCertificate {
        subspace: subspace.to_vec(),
        witness: witness.to_vec(),
        epsilons,
        points,
    }))
}
