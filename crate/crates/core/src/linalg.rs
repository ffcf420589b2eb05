//! Exact dense linear algebra over the rationals.
//!
//! Every routine clears denominators row by row and then runs a
//! fraction-free forward elimination on arbitrary-precision integers. Pivots
//! are the first nonzero entry in column order, so results (rank, the
//! particular solution of [`solve`], the kernel basis) are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = &a[r * n + c] / &pivot;
                for j in c..n {
                    let v = &a[r * n + j] - &f * &a[c * n + j];
                    a[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `SingularMatrix` when the determinant vanishes.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if rank(self) < n {
            return Err(Error::SingularMatrix);
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(solve(self, &e)?.ok_or(Error::SingularMatrix)?);
        }
        Self::from_columns(n, &cols)
    }
}

/// Integer row with the row's denominators cleared.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect()
}

fn normalize(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Echelon form of an integer matrix plus the pivot column of each nonzero row.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn eliminate(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let keep = pivot / &g;
            let take = &row[c] / &g;
            for j in c..cols {
                if pivot_row[j].is_zero() {
                    if !row[j].is_zero() {
                        row[j] *= &keep;
                    }
                } else {
                    row[j] = &row[j] * &keep - &take * &pivot_row[j];
                }
            }
            debug_assert!(row[c].is_zero());
            normalize(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

fn echelon_of(a: &ExactMatrix) -> Echelon {
    let rows = (0..a.rows())
        .map(|i| integer_row(a.row(i)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|mut r| {
            normalize(&mut r);
            r
        })
        .collect();
    eliminate(rows, a.cols())
}

pub fn rank(a: &ExactMatrix) -> usize {
    echelon_of(a).pivots.len()
}

pub fn nullity(a: &ExactMatrix) -> usize {
    a.cols() - rank(a)
}

/// Back substitution on an echelon system with the given right-hand side per
/// row; free variables are fixed by `free_values`.
fn back_substitute(
    ech: &Echelon,
    cols: usize,
    rhs: &[BigInt],
    free_values: &[(usize, Scalar)],
) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); cols];
    for (j, v) in free_values {
        x[*j] = v.clone();
    }
    for (i, row) in ech.rows.iter().enumerate().rev() {
        let c = ech.pivots[i];
        let mut acc = Scalar::from_integer(rhs[i].clone());
        for j in c + 1..cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Scalar::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = acc / Scalar::from_integer(row[c].clone());
    }
    x
}

/// Exact kernel basis: one vector per free column (in column order), with
/// that free variable set to 1 and the others to 0.
pub fn kernel_basis(a: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let ech = echelon_of(a);
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let zeros = vec![BigInt::zero(); ech.rows.len()];
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|f| back_substitute(&ech, cols, &zeros, &[(f, Scalar::one())]))
        .collect()
}

/// Particular solution of `A x = b` with every free variable zero, or `None`
/// when the system is inconsistent.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "matrix has {} rows, right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let cols = a.cols();
    let rows = (0..a.rows())
        .map(|i| {
            let mut full: Vec<Scalar> = a.row(i).to_vec();
            full.push(b[i].clone());
            integer_row(&full)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|mut r| {
            normalize(&mut r);
            r
        })
        .collect();
    let ech = eliminate(rows, cols + 1);
    if ech.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let rhs: Vec<BigInt> = ech.rows.iter().map(|r| r[cols].clone()).collect();
    Ok(Some(back_substitute(&ech, cols, &rhs, &[])))
}

/// Whether `b` lies in the column space of `a`.
pub fn in_column_space(a: &ExactMatrix, b: &[Scalar]) -> Result<bool> {
    Ok(solve(a, b)?.is_some())
}
