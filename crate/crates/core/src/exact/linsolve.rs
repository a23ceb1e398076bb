//! Exact linear algebra over the rationals.
//!
//! Dense systems go through fraction-free (Bareiss) elimination: rows are
//! first cleared of denominators, eliminated over the integers with exact
//! divisions by the previous pivot, and only the final echelon form is
//! normalized back to rationals. [`SparseEchelon`] handles the large, very
//! sparse systems produced by the Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        Echelon::of(self, self.cols).pivots.len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let e = Echelon::of(self, self.cols);
        let rows = e.reduced();
        let m = Matrix::from_rows(rows).unwrap_or_else(|_| unreachable!());
        let m = if m.rows == 0 { Matrix::zeros(0, self.cols) } else { m };
        (m, e.pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let e = Echelon::of(&aug, n);
        if e.pivots.len() < n || e.pivots.iter().any(|&p| p >= n) {
            return Err(Error::SingularMatrix);
        }
        let rows = e.reduced();
        let mut inv = Matrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                inv[(i, j)] = row[n + j].clone();
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
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

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Integer row echelon form of a rational matrix.
///
/// Only the first `pivot_cols` columns are eligible as pivots, which lets
/// augmented systems keep their right-hand side out of the pivot search.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn of(m: &Matrix, pivot_cols: usize) -> Echelon {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let den = Rational::from_integer(common_denominator(row));
                row.iter().map(|v| (v * &den).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(m.cols) {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..m.cols {
                    let v = pivot * &row[j] - &lead * &pivot_row[j];
                    row[j] = v / &prev;
                }
            }
            prev = pivot.clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon { rows: a, pivots }
    }

    fn reduced(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = row[p].clone();
                row.iter().map(|v| Rational::new(v.clone(), lead.clone())).collect()
            })
            .collect();
        for r in (0..rows.len()).rev() {
            let p = self.pivots[r];
            let (above, below) = rows.split_at_mut(r);
            let pivot_row = &below[0];
            for row in above.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (v, w) in row.iter_mut().zip(pivot_row).skip(p) {
                    if !w.is_zero() {
                        *v -= &f * w;
                    }
                }
            }
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Consistent { particular: Vec<Rational>, kernel: Vec<Vec<Rational>> },
    Inconsistent,
}

impl LinearSolution {
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            LinearSolution::Consistent { kernel, .. } => Some(kernel.len()),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// Solves `m * x = rhs`, returning a particular solution and a kernel basis.
pub fn linear_solve(m: &Matrix, rhs: &[Rational]) -> Result<LinearSolution> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: rhs.len() });
    }
    let n = m.cols;
    let mut aug = Matrix::zeros(m.rows, n + 1);
    for i in 0..m.rows {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let e = Echelon::of(&aug, n + 1);
    if e.pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let rows = e.reduced();
    let mut particular = vec![Rational::zero(); n];
    for (row, &p) in rows.iter().zip(&e.pivots) {
        particular[p] = row[n].clone();
    }
    let kernel = kernel_from_rref(&rows, &e.pivots, n);
    Ok(LinearSolution::Consistent { particular, kernel })
}

fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); n];
            x[f] = Rational::one();
            for (row, &p) in rows.iter().zip(pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

type SparseRow = BTreeMap<usize, BigInt>;

/// Incremental echelon form for sparse homogeneous systems.
///
/// Rows are kept as primitive integer vectors keyed by their leading column,
/// so each insertion only touches the few stored rows it collides with.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    cols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon { cols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds an equation `sum coeff * x_col = 0`. Returns whether the rank grew.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        let den = Rational::from_integer(common_denominator(acc.values()));
        let mut row: SparseRow = acc.into_iter().map(|(c, v)| (c, (v * &den).to_integer())).collect();
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            let Some(pivot_row) = self.rows.get(&lead) else {
                make_primitive(&mut row);
                self.rows.insert(lead, row);
                return true;
            };
            let a = &pivot_row[&lead];
            let b = &row[&lead];
            let g = a.gcd(b);
            let (fa, fb) = (a / &g, b / &g);
            let mut next = SparseRow::new();
            for (c, v) in &row {
                next.insert(*c, v * &fa);
            }
            for (c, v) in pivot_row {
                let e = next.entry(*c).or_insert_with(BigInt::zero);
                *e -= v * &fb;
            }
            next.retain(|_, v| !v.is_zero());
            make_primitive(&mut next);
            row = next;
        }
    }

    /// A basis of the solution space, one vector per free column in
    /// increasing order; each vector has a one at its free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (&p, row) in self.rows.iter().rev() {
                    if p > f {
                        continue;
                    }
                    let mut s = Rational::zero();
                    for (c, v) in row.range(p + 1..) {
                        if !x[*c].is_zero() {
                            s += &x[*c] * Rational::from_integer(v.clone());
                        }
                    }
                    if !s.is_zero() {
                        x[p] = -s / Rational::from_integer(row[&p].clone());
                    }
                }
                x
            })
            .collect()
    }
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    let flip = row.values().next().is_some_and(Signed::is_negative);
    if g.is_zero() || (g.is_one() && !flip) {
        return;
    }
    for v in row.values_mut() {
        *v /= &g;
        if flip {
            *v = -std::mem::take(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    /// Plain rational Gauss-Jordan, kept deliberately naive.
    fn oracle_rref(mut a: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let cols = a.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let rhs = vec![rat(1, 2), int(-3), int(7)];
        match linear_solve(&Matrix::identity(3), &rhs).unwrap() {
            LinearSolution::Consistent { particular, kernel } => {
                assert_eq!(particular, rhs);
                assert!(kernel.is_empty());
            }
            LinearSolution::Inconsistent => panic!("identity is solvable"),
        }
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let sol = linear_solve(&Matrix::zeros(2, 2), &[int(0), int(0)]).unwrap();
        assert_eq!(sol.kernel_dim(), Some(2));
    }

    #[test]
    fn inconsistent_system() {
        let m = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(linear_solve(&m, &[int(1), int(3)]).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn sparse_matches_dense_on_a_small_system() {
        let m = mat(&[&[1, 2, 0, -1], &[0, 0, 3, 1], &[2, 4, 3, -1]]);
        let mut s = SparseEchelon::new(4);
        for i in 0..3 {
            s.push(m.row(i).iter().cloned().enumerate());
        }
        assert_eq!(s.rank(), m.rank());
        for k in s.kernel() {
            assert!(m.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec(small_rational(), cols), rows)
    }

    proptest! {
        #[test]
        fn random_5x7_matches_oracle(a in matrix(5, 7), rhs in prop::collection::vec(small_rational(), 5)) {
            let m = Matrix::from_rows(a.clone()).unwrap();
            let aug: Vec<Vec<Rational>> = a.iter().zip(&rhs)
                .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect()).collect();
            let (orows, opivots) = oracle_rref(aug);
            let (_, mpivots) = oracle_rref(a);
            match linear_solve(&m, &rhs).unwrap() {
                LinearSolution::Inconsistent => prop_assert_eq!(opivots.last(), Some(&7)),
                LinearSolution::Consistent { particular, kernel } => {
                    prop_assert!(opivots.last() != Some(&7));
                    prop_assert_eq!(m.mul_vec(&particular).unwrap(), rhs);
                    for k in &kernel {
                        prop_assert!(m.mul_vec(k).unwrap().iter().all(Zero::is_zero));
                    }
                    prop_assert_eq!(kernel.len() + mpivots.len(), 7);
                    let (mrref, _) = m.rref();
                    let (orref, _) = oracle_rref(m.to_rows());
                    prop_assert_eq!(mrref.to_rows(), orref);
                    prop_assert_eq!(orows.len(), mpivots.len());
                }
            }
        }

        #[test]
        fn sparse_kernel_matches_oracle(a in matrix(6, 8)) {
            let mut s = SparseEchelon::new(8);
            for row in &a {
                s.push(row.iter().cloned().enumerate());
            }
            let (_, pivots) = oracle_rref(a.clone());
            prop_assert_eq!(s.rank(), pivots.len());
            let m = Matrix::from_rows(a).unwrap();
            let kernel = s.kernel();
            prop_assert_eq!(kernel.len(), 8 - pivots.len());
            for k in &kernel {
                prop_assert!(m.mul_vec(k).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(Matrix::from_rows(kernel.clone()).map(|k| k.rank()).unwrap_or(0), kernel.len());
        }
    }
}
