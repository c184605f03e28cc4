//! Dense reference computations kept apart from the library's sparse
//! fraction-free elimination.

#![allow(dead_code, clippy::needless_range_loop)]

use liewedge_core::{LieAlgebra, Mat, Rat};
use num_traits::{One, Zero};

/// Nullspace dimension of a dense row list by textbook Gauss-Jordan.
pub fn nullity(mut rows: Vec<Vec<Rat>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rat::one() / rows[rank][col].clone();
        for c in 0..ncols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let v = &rows[rank][c] * &factor;
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    ncols - rank
}

pub fn rank(rows: Vec<Vec<Rat>>, ncols: usize) -> usize {
    ncols - nullity(rows, ncols)
}

/// `[x, y]` from the dense structure tensor.
fn bracket(g: &LieAlgebra, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let n = g.dim();
    let mut out = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += &x[i] * &y[j] * g.constant(i, j, k);
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// `dim der(g)`: the Leibniz defect of every elementary matrix `E_ab` is one
/// column of the linear system, evaluated on all basis pairs `(i, j)`.
pub fn brute_force_derivation_dim(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let mut columns = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut d = Mat::zeros(n, n);
            d[(a, b)] = Rat::one();
            let mut col = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let lhs = d.mul_vec(&bracket(g, &unit(n, i), &unit(n, j)));
                    let r1 = bracket(g, &d.col(i), &unit(n, j));
                    let r2 = bracket(g, &unit(n, i), &d.col(j));
                    for k in 0..n {
                        col.push(&lhs[k] - &r1[k] - &r2[k]);
                    }
                }
            }
            columns.push(col);
        }
    }
    let nrows = columns[0].len();
    let rows: Vec<Vec<Rat>> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    nullity(rows, n * n)
}

/// `dim ad(g)` from the dense ad matrices.
pub fn brute_force_inner_dim(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut flat = Vec::with_capacity(n * n);
            for r in 0..n {
                for c in 0..n {
                    flat.push(bracket(g, &unit(n, i), &unit(n, c))[r].clone());
                }
            }
            flat
        })
        .collect();
    rank(rows, n * n)
}

/// `dim ker(m - lambda)`.
pub fn eigen_dim(m: &Mat, lambda: &Rat) -> usize {
    let n = m.rows();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { &m[(r, c)] - lambda } else { m[(r, c)].clone() }).collect())
        .collect();
    nullity(rows, n)
}
