//! Exact rational linear algebra.
//!
//! Everything here works over [`Rat`] (arbitrary precision rationals). Row
//! reduction is fraction-free: each row is scaled to a primitive integer
//! vector and eliminations are integer cross-multiplications followed by a
//! content division, which keeps entry growth in check on the structure
//! constant systems this crate builds.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Whitespace around the parts is ignored.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| s * x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[Mat]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn flatten(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| s * x).collect() }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Sub-block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Mat {
        let mut b = Mat::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                b[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Matrix power for small non-negative exponents.
    pub fn pow(&self, k: u32) -> Mat {
        let mut out = Mat::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &rhs.data) }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &rhs.data) }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&int(-1))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Fraction-free echelon form
// ---------------------------------------------------------------------------

type IntRow = Vec<(usize, BigInt)>;

fn content_normalize(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, a)| g.gcd(a));
    if g.is_zero() {
        row.clear();
        return;
    }
    // Leading coefficient positive.
    let g = if row[0].1.is_negative() { -g } else { g };
    if !g.is_one() {
        for (_, a) in row.iter_mut() {
            *a = &*a / &g;
        }
    }
}

fn int_row<'a>(entries: impl IntoIterator<Item = (usize, &'a Rat)>) -> IntRow {
    let entries: Vec<(usize, &Rat)> = entries.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    let l = entries.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
    let mut row: IntRow = entries.into_iter().map(|(c, x)| (c, x.numer() * (&l / x.denom()))).collect();
    row.sort_by_key(|(c, _)| *c);
    content_normalize(&mut row);
    row
}

/// `a * x - b * y` on sparse integer rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some((cx, _)), Some((cy, _))) => cx.cmp(cy),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, _) => std::cmp::Ordering::Greater,
        };
        let (c, v) = match take {
            std::cmp::Ordering::Less => {
                let (c, v) = &x[i];
                i += 1;
                (*c, a * v)
            }
            std::cmp::Ordering::Greater => {
                let (c, v) = &y[j];
                j += 1;
                (*c, -(b * v))
            }
            std::cmp::Ordering::Equal => {
                let (c, vx) = &x[i];
                let (_, vy) = &y[j];
                i += 1;
                j += 1;
                (*c, a * vx - b * vy)
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Incremental row-echelon form over the integers.
///
/// Rows are kept primitive with a positive leading entry; every stored row has
/// a distinct leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, coeff)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else {
                break;
            };
            let plead = &p[0].1;
            let g = plead.gcd(&coeff);
            row = combine(&(plead / &g), &row, &(&coeff / &g), p);
            content_normalize(&mut row);
        }
        row
    }

    fn insert_int(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.first() {
            Some(&(lead, _)) => {
                debug_assert!(lead < self.ncols);
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    /// Adds a dense row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: &[Rat]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.insert_int(int_row(row.iter().enumerate()))
    }

    /// Adds a sparse row given as `(column, value)` pairs.
    pub fn insert_sparse(&mut self, row: &[(usize, Rat)]) -> bool {
        self.insert_int(int_row(row.iter().map(|(c, x)| (*c, x))))
    }

    /// True if `row` lies in the row space.
    pub fn contains(&self, row: &[Rat]) -> bool {
        self.reduce(int_row(row.iter().enumerate())).is_empty()
    }

    /// Basis of the null space `{x : row · x = 0 for all rows}`.
    ///
    /// The vector for free column `f` has `x_f = 1` and zeros on the other
    /// free columns, so the basis only depends on the row space.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = zero_vec(self.ncols);
                x[f] = Rat::one();
                self.back_substitute(&mut x, None);
                x
            })
            .collect()
    }

    /// Solves for pivot variables in descending pivot order. With `rhs_col`
    /// set, that column holds the right-hand side of each equation.
    fn back_substitute(&self, x: &mut [Rat], rhs_col: Option<usize>) {
        for (&p, row) in self.pivots.iter().rev() {
            let mut acc = Rat::zero();
            for (c, a) in row.iter().skip(1) {
                if Some(*c) == rhs_col {
                    acc -= Rat::from_integer(a.clone());
                } else {
                    acc += Rat::from_integer(a.clone()) * &x[*c];
                }
            }
            x[p] = -acc / Rat::from_integer(row[0].1.clone());
        }
    }

    /// Canonical basis of the row space (reduced row echelon form, leading 1).
    pub fn rref_basis(&self) -> Vec<Vec<Rat>> {
        let mut reduced: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut dense = zero_vec(self.ncols);
            for (c, a) in row {
                dense[*c] = Rat::from_integer(a.clone());
            }
            for (&q, rq) in reduced.iter() {
                if !dense[q].is_zero() {
                    let f = dense[q].clone();
                    for (d, r) in dense.iter_mut().zip(rq) {
                        *d -= &f * r;
                    }
                }
            }
            let lead = dense[p].clone();
            for d in dense.iter_mut() {
                *d /= &lead;
            }
            reduced.insert(p, dense);
        }
        reduced.into_values().collect()
    }
}

fn echelon_of(m: &Mat) -> Echelon {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i));
    }
    e
}

pub fn rank(m: &Mat) -> usize {
    echelon_of(m).rank()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &Mat) -> Vec<Vec<Rat>> {
    echelon_of(m).kernel()
}

/// Kernel of the linear map whose value on the `u`-th unit vector of
/// `Q^n_in` is `image(u)`.
pub fn kernel_of_map(n_in: usize, image: impl Fn(usize) -> Vec<Rat>) -> Vec<Vec<Rat>> {
    let mut rows: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
    for u in 0..n_in {
        for (k, x) in image(u).into_iter().enumerate() {
            if !x.is_zero() {
                rows.entry(k).or_default().push((u, x));
            }
        }
    }
    let mut e = Echelon::new(n_in);
    for row in rows.values() {
        e.insert_sparse(row);
    }
    e.kernel()
}

/// Kernel of a linear map on `n x n` matrices, returned as matrices.
pub fn matrix_kernel(n: usize, image: impl Fn(&Mat) -> Vec<Rat>) -> Vec<Mat> {
    kernel_of_map(n * n, |u| {
        let mut unit = Mat::zeros(n, n);
        unit[(u / n, u % n)] = Rat::one();
        image(&unit)
    })
    .into_iter()
    .map(|v| Mat::from_flat(n, n, v))
    .collect()
}

/// Basis of `ker(m - lambda I)`; empty iff `lambda` is not an eigenvalue.
pub fn eigenspace(m: &Mat, lambda: &Rat) -> Vec<Vec<Rat>> {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    let shifted = m - &Mat::identity(m.rows()).scale(lambda);
    kernel(&shifted)
}

/// Rank of a list of vectors of length `dim`.
pub fn rank_of(vectors: &[Vec<Rat>], dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// True iff the concatenated vectors are independent and fill `ambient_dim`.
pub fn is_direct_sum(subspaces: &[Vec<Vec<Rat>>], ambient_dim: usize) -> bool {
    let all: Vec<Vec<Rat>> = subspaces.iter().flatten().cloned().collect();
    all.len() == ambient_dim && rank_of(&all, ambient_dim) == ambient_dim
}

/// Canonical (reduced echelon) basis of the span.
pub fn span_basis(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rref_basis()
}

pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut e = Echelon::new(v.len());
    for b in basis {
        e.insert(b);
    }
    e.contains(v)
}

/// Mutual containment of two spans.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> bool {
    let ra = rank_of(a, dim);
    let rb = rank_of(b, dim);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank_of(&both, dim) == ra
}

/// True iff `span(a) ⊆ span(b)`.
pub fn span_contains(b: &[Vec<Rat>], a: &[Vec<Rat>], dim: usize) -> bool {
    let mut e = Echelon::new(dim);
    for v in b {
        e.insert(v);
    }
    a.iter().all(|v| e.contains(v))
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` is in the span.
pub fn coordinates(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let a = Mat::from_cols(basis, v.len());
    solve(&a, v).ok()
}

/// Coordinates relative to a fixed independent family, factored once so
/// that many vectors can be expressed cheaply.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    inv: Mat,
}

impl CoordinateSystem {
    /// `None` if the family is linearly dependent.
    pub fn new(basis: &[Vec<Rat>]) -> Option<Self> {
        let d = basis.len();
        let width = basis.first().map_or(0, Vec::len);
        let mut e = Echelon::new(d);
        let mut pivots = Vec::new();
        for p in 0..width {
            if pivots.len() == d {
                break;
            }
            let row: Vec<Rat> = basis.iter().map(|b| b[p].clone()).collect();
            if e.insert(&row) {
                pivots.push(p);
            }
        }
        if pivots.len() != d {
            return None;
        }
        let square = Mat::from_rows(pivots.iter().map(|&p| basis.iter().map(|b| b[p].clone()).collect()).collect());
        Some(CoordinateSystem { basis: basis.to_vec(), pivots, inv: inverse(&square)? })
    }

    /// Coefficients of `v`, or `None` if `v` leaves the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let restricted: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let c = self.inv.mul_vec(&restricted);
        let mut back = zero_vec(v.len());
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in back.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += ci * y;
                }
            }
        }
        (back == v).then_some(c)
    }
}

/// Some solution of `m x = rhs`.
pub fn solve(m: &Mat, rhs: &[Rat]) -> Result<Vec<Rat>> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("rhs has length {}, matrix has {} rows", rhs.len(), m.rows())));
    }
    let n = m.cols();
    let mut e = Echelon::new(n + 1);
    for (i, r) in rhs.iter().enumerate() {
        let mut row = m.row(i).to_vec();
        row.push(r.clone());
        e.insert(&row);
    }
    if e.pivots.contains_key(&n) {
        return Err(Error::Inconsistent);
    }
    let mut x = zero_vec(n + 1);
    e.back_substitute(&mut x, Some(n));
    x.truncate(n);
    Ok(x)
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    if rank(m) < n {
        return None;
    }
    for j in 0..n {
        cols.push(solve(m, &unit_vec(n, j)).ok()?);
    }
    Some(Mat::from_cols(&cols, n))
}

fn integer_matrix(m: &Mat) -> (Vec<Vec<BigInt>>, BigInt) {
    let l = m.flatten().iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect()).collect();
    (rows, l)
}

/// Exact determinant via Bareiss elimination.
pub fn det(m: &Mat) -> Rat {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rat::one();
    }
    let (mut a, scale) = integer_matrix(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = sign * &a[n - 1][n - 1];
    Rat::new(d, num_traits::pow(scale, n))
}

/// Definiteness class of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsdStatus {
    PositiveDefinite,
    PositiveSemidefiniteSingular,
    Indefinite,
}

impl PsdStatus {
    pub fn is_psd(self) -> bool {
        !matches!(self, PsdStatus::Indefinite)
    }
}

/// Classifies a symmetric matrix by symmetric-pivoted Bareiss elimination.
///
/// Each step picks a remaining index with positive diagonal and forms the
/// (scaled) Schur complement. A negative diagonal, or a zero diagonal whose
/// row is nonzero, certifies indefiniteness; a vanishing remainder certifies
/// a singular semidefinite matrix.
pub fn psd_status(m: &Mat) -> Result<PsdStatus> {
    if let Some((row, col)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = m.rows();
    let (mut a, _) = integer_matrix(m);
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while !active.is_empty() {
        let mut pivot = None;
        for &i in &active {
            let d = &a[i][i];
            if d.is_negative() {
                return Ok(PsdStatus::Indefinite);
            }
            if d.is_zero() {
                if active.iter().any(|&j| !a[i][j].is_zero()) {
                    return Ok(PsdStatus::Indefinite);
                }
            } else if pivot.is_none() {
                pivot = Some(i);
            }
        }
        let Some(k) = pivot else {
            return Ok(PsdStatus::PositiveSemidefiniteSingular);
        };
        active.retain(|&i| i != k);
        let p = a[k][k].clone();
        for &i in &active {
            for &j in &active {
                if j < i {
                    continue;
                }
                let v = (&p * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v.clone();
                a[j][i] = v;
            }
        }
        prev = p;
    }
    Ok(PsdStatus::PositiveDefinite)
}
