//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, is_zero_vec, zero_vec, Echelon, Mat, Rat};

/// Whether the Jacobi identity is checked when an algebra is constructed.
///
/// `Deferred` exists for test oracles that assemble tensors they validate by
/// other means; library code always uses `Full`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Full,
    Deferred,
}

/// Optional distinguished subspaces, stored as coordinate vectors.
///
/// They are never trusted: [`LieAlgebra::check_metadata`] re-derives each
/// defining property.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub center: Option<Vec<Vec<Rat>>>,
    pub nilradical: Option<Vec<Vec<Rat>>>,
    pub levi: Option<Vec<Vec<Rat>>>,
}

type Sparse = Vec<(usize, Rat)>;

/// A real Lie algebra `[e_i, e_j] = sum_k c_ijk e_k` with rational constants.
///
/// Only pairs `i < j` are stored.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    id: u64,
    labels: Vec<String>,
    constants: BTreeMap<(usize, usize), Sparse>,
    metadata: Metadata,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.constants == other.constants
    }
}

impl Eq for LieAlgebra {}

/// A vector in a specific Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Rat>,
    parent: u64,
}

impl Element {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(Element { coords: linalg::add_vec(&self.coords, &other.coords), parent: self.parent })
    }

    pub fn scale(&self, s: &Rat) -> Element {
        Element { coords: linalg::scale_vec(s, &self.coords), parent: self.parent }
    }
}

impl LieAlgebra {
    /// Builds an algebra from entries `(i, j, k, c_ijk)`.
    ///
    /// Entries may be given for either or both orders of `(i, j)`; when both
    /// appear they must be negatives of each other. Repeated entries for the
    /// same triple and order are summed.
    pub fn from_entries(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
        validation: Validation,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut ordered: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidStructure {
                    i,
                    j,
                    k,
                    reason: format!("index out of range for dimension {dim}"),
                });
            }
            *ordered.entry((i, j, k)).or_insert_with(Rat::zero) += c;
        }
        let mut constants: BTreeMap<(usize, usize), Sparse> = BTreeMap::new();
        for (&(i, j, k), c) in &ordered {
            if c.is_zero() {
                continue;
            }
            if i == j {
                return Err(Error::InvalidStructure {
                    i,
                    j,
                    k,
                    reason: "nonzero self-bracket violates antisymmetry".into(),
                });
            }
            if i > j {
                if let Some(partner) = ordered.get(&(j, i, k)) {
                    if *partner != -c {
                        return Err(Error::InvalidStructure {
                            i,
                            j,
                            k,
                            reason: format!("c[{i}][{j}][{k}] = {c} but c[{j}][{i}][{k}] = {partner}"),
                        });
                    }
                    continue;
                }
                constants.entry((j, i)).or_default().push((k, -c));
            } else {
                if let Some(partner) = ordered.get(&(j, i, k)) {
                    if *partner != -c {
                        return Err(Error::InvalidStructure {
                            i,
                            j,
                            k,
                            reason: format!("c[{i}][{j}][{k}] = {c} but c[{j}][{i}][{k}] = {partner}"),
                        });
                    }
                }
                constants.entry((i, j)).or_default().push((k, c.clone()));
            }
        }
        for row in constants.values_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        let mut g = LieAlgebra { id: 0, labels, constants, metadata: Metadata::default() };
        g.id = g.compute_id();
        if validation == Validation::Full {
            g.check_jacobi()?;
        }
        Ok(g)
    }

    /// Builds an algebra from a dense tensor `c[i][j][k]`.
    pub fn from_dense(labels: Vec<String>, c: &[Vec<Vec<Rat>>], validation: Validation) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, ci) in c.iter().enumerate() {
            for (j, cij) in ci.iter().enumerate() {
                for (k, x) in cij.iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((i, j, k, x.clone()));
                    }
                }
            }
        }
        LieAlgebra::from_entries(labels, entries, validation)
    }

    /// The linear Lie algebra spanned by `basis`, which must be closed under
    /// the commutator.
    pub fn from_matrix_basis(labels: Vec<String>, basis: &[Mat]) -> Result<Self> {
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} matrices", labels.len(), basis.len())));
        }
        let flat: Vec<Vec<Rat>> = basis.iter().map(|m| m.flatten().to_vec()).collect();
        let coords_of = linalg::CoordinateSystem::new(&flat)
            .ok_or_else(|| Error::DimensionMismatch("matrix basis is linearly dependent".into()))?;
        let mut entries = Vec::new();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let comm = basis[i].commutator(&basis[j]);
                let coords = coords_of.coordinates(comm.flatten()).ok_or_else(|| Error::InvalidStructure {
                    i,
                    j,
                    k: 0,
                    reason: "commutator leaves the span of the basis".into(),
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        LieAlgebra::from_entries(labels, entries, Validation::Full)
    }

    /// Abelian algebra on the given labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        LieAlgebra::from_entries(labels, Vec::new(), Validation::Full).expect("abelian algebra is valid")
    }

    fn compute_id(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.labels.hash(&mut h);
        for ((i, j), row) in &self.constants {
            (i, j).hash(&mut h);
            for (k, c) in row {
                k.hash(&mut h);
                c.hash(&mut h);
            }
        }
        h.finish()
    }

    /// Checks the Jacobi identity on all basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let table: Vec<Vec<Sparse>> = (0..n).map(|a| (0..n).map(|b| self.basis_bracket(a, b)).collect()).collect();
        let mut sum: BTreeMap<usize, Rat> = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    sum.clear();
                    for (outer, inner, last) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, am) in &table[outer][inner] {
                            for (r, c) in &table[*m][last] {
                                *sum.entry(*r).or_insert_with(Rat::zero) += am * c;
                            }
                        }
                    }
                    if let Some((out, _)) = sum.iter().find(|(_, x)| !x.is_zero()) {
                        return Err(Error::InvalidStructure {
                            i,
                            j,
                            k,
                            reason: format!("Jacobi identity fails in component {out}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// Nonzero constants for `i < j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rat)])> {
        self.constants.iter().map(|(&(i, j), row)| (i, j, row.as_slice()))
    }

    /// `c_ijk` for any ordered pair.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.basis_bracket(i, j).into_iter().find(|(r, _)| *r == k).map_or_else(Rat::zero, |(_, c)| c)
    }

    /// `[e_i, e_j]` in sparse form.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Sparse {
        if i < j {
            self.constants.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.constants.get(&(j, i)).map(|row| row.iter().map(|(k, c)| (*k, -c)).collect()).unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(Element { coords, parent: self.id })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element { coords: linalg::unit_vec(self.dim(), i), parent: self.id }
    }

    pub fn zero(&self) -> Element {
        Element { coords: zero_vec(self.dim()), parent: self.id }
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.dim());
        // sparse inputs: only pairs inside the joint support contribute
        let support: Vec<usize> = (0..self.dim()).filter(|&i| !x[i].is_zero() || !y[i].is_zero()).collect();
        if support.len() * support.len() < 2 * self.constants.len() {
            for (p, &i) in support.iter().enumerate() {
                for &j in &support[p + 1..] {
                    if let Some(row) = self.constants.get(&(i, j)) {
                        let s = &x[i] * &y[j] - &x[j] * &y[i];
                        for (k, c) in row {
                            out[*k] += &s * c;
                        }
                    }
                }
            }
            return out;
        }
        for (&(i, j), row) in &self.constants {
            let s = &x[i] * &y[j] - &x[j] * &y[i];
            if s.is_zero() {
                continue;
            }
            for (k, c) in row {
                out[*k] += &s * c;
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.parent != self.id || y.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(Element { coords: self.bracket_vec(&x.coords, &y.coords), parent: self.id })
    }

    /// Matrix of `ad(x)`; column `j` is `[x, e_j]`.
    pub fn ad_vec(&self, x: &[Rat]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (&(i, j), row) in &self.constants {
            for (k, c) in row {
                if !x[i].is_zero() {
                    m[(*k, j)] += &x[i] * c;
                }
                if !x[j].is_zero() {
                    m[(*k, i)] -= &x[j] * c;
                }
            }
        }
        m
    }

    /// `exp(ad x)` as the finite sum `sum_k ad(x)^k / k!`, or `None` when
    /// `ad x` is not nilpotent.
    pub fn exp_ad(&self, x: &[Rat]) -> Option<Mat> {
        let n = self.dim();
        let ad = self.ad_vec(x);
        let mut term = Mat::identity(n);
        let mut sum = Mat::identity(n);
        for k in 1..=n {
            term = (&term * &ad).scale(&Rat::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                return Some(sum);
            }
            sum = &sum + &term;
        }
        None
    }

    pub fn ad_matrix(&self, x: &Element) -> Result<Mat> {
        if x.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(self.ad_vec(&x.coords))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Rat>> {
        // [x, e_j]_k = sum_i x_i c_ijk = 0 for all j, k.
        let n = self.dim();
        let mut e = Echelon::new(n);
        for j in 0..n {
            let mut rows: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
            for i in 0..n {
                for (k, c) in self.basis_bracket(i, j) {
                    rows.entry(k).or_default().push((i, c));
                }
            }
            for row in rows.values() {
                e.insert_sparse(row);
            }
        }
        e.kernel()
    }

    /// Canonical basis of `span [a, b]`.
    pub fn bracket_span(&self, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut e = Echelon::new(self.dim());
        for x in a {
            for y in b {
                e.insert(&self.bracket_vec(x, y));
            }
        }
        e.rref_basis()
    }

    fn full_basis(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|i| linalg::unit_vec(self.dim(), i)).collect()
    }

    pub fn derived_subalgebra(&self) -> Vec<Vec<Rat>> {
        let mut e = Echelon::new(self.dim());
        for row in self.constants.values() {
            let mut v = zero_vec(self.dim());
            for (k, c) in row {
                v[*k] = c.clone();
            }
            e.insert(&v);
        }
        e.rref_basis()
    }

    /// `g, [g,g], [g,[g,g]], ...` until the dimension stabilizes.
    pub fn lower_central_series(&self) -> Vec<Vec<Vec<Rat>>> {
        let g = self.full_basis();
        let mut series = vec![linalg::span_basis(&g, self.dim())];
        loop {
            let next = self.bracket_span(&g, series.last().expect("nonempty"));
            if next.len() == series.last().expect("nonempty").len() {
                return series;
            }
            series.push(next);
        }
    }

    /// `g, [g,g], [[g,g],[g,g]], ...` until the dimension stabilizes.
    pub fn derived_series(&self) -> Vec<Vec<Vec<Rat>>> {
        let mut series = vec![linalg::span_basis(&self.full_basis(), self.dim())];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(last, last);
            if next.len() == last.len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Vec::is_empty)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Vec::is_empty)
    }

    /// `[g, span(s)] ⊆ span(s)`.
    pub fn subspace_is_ideal(&self, s: &[Vec<Rat>]) -> bool {
        let mut e = Echelon::new(self.dim());
        for v in s {
            e.insert(v);
        }
        (0..self.dim()).all(|i| {
            let ei = linalg::unit_vec(self.dim(), i);
            s.iter().all(|v| e.contains(&self.bracket_vec(&ei, v)))
        })
    }

    /// `[span(s), span(s)] ⊆ span(s)`.
    pub fn subspace_is_subalgebra(&self, s: &[Vec<Rat>]) -> bool {
        linalg::span_contains(s, &self.bracket_span(s, s), self.dim())
    }

    /// True if the subalgebra spanned by `s` is nilpotent.
    pub fn subspace_is_nilpotent(&self, s: &[Vec<Rat>]) -> bool {
        let mut term = linalg::span_basis(s, self.dim());
        let base = term.clone();
        for _ in 0..=self.dim() {
            if term.is_empty() {
                return true;
            }
            let next = self.bracket_span(&base, &term);
            if next.len() == term.len() {
                return false;
            }
            term = next;
        }
        term.is_empty()
    }

    /// Re-derives the defining property of every recorded metadata subspace.
    pub fn check_metadata(&self) -> Result<()> {
        let n = self.dim();
        let bad = |what: &str| Error::HypothesisViolation(format!("recorded {what} fails its definition"));
        if let Some(z) = &self.metadata.center {
            if !linalg::same_span(z, &self.center(), n) {
                return Err(bad("center"));
            }
        }
        if let Some(u) = &self.metadata.nilradical {
            if !self.subspace_is_ideal(u) || !self.subspace_is_nilpotent(u) {
                return Err(bad("nilradical"));
            }
        }
        if let Some(s) = &self.metadata.levi {
            if !self.subspace_is_subalgebra(s) || !linalg::same_span(&self.bracket_span(s, s), s, n) {
                return Err(bad("Levi part"));
            }
        }
        Ok(())
    }
}

/// Labels `prefix0, prefix1, ...`.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
