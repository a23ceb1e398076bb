//! Derivation algebras and diagonal derivations.
//!
//! A derivation is stored as the matrix `D` with `D X_b = sum_a D[a][b] X_a`.
//! The Leibniz rule gives one linear equation per pair `i < j` and target
//! `k`; these are fed into a [`SparseEchelon`] over the `n^2` entries.

use num_traits::Zero;

use crate::exact::{Assignment, Matrix, Poly, Rational, SparseEchelon};
use crate::error::Result;
use crate::liealg::{Algebra, Table};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub dim: usize,
    pub basis: Vec<Matrix>,
}

fn leibniz_rows(table: &Table) -> impl Iterator<Item = Vec<(usize, Rational)>> + '_ {
    let n = table.dim();
    let var = move |a: usize, b: usize| a * n + b;
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| {
            (0..n).filter_map(move |k| {
                let mut row = Vec::new();
                for (m, c) in table.get(i, j) {
                    row.push((var(k, *m), c.clone()));
                }
                for a in 0..n {
                    for (t, c) in table.get(a, j) {
                        if *t == k {
                            row.push((var(a, i), -c.clone()));
                        }
                    }
                    for (t, c) in table.get(i, a) {
                        if *t == k {
                            row.push((var(a, j), -c.clone()));
                        }
                    }
                }
                (!row.is_empty()).then_some(row)
            })
        })
    })
}

pub fn derivation_space_of(table: &Table) -> DerivationSpace {
    let n = table.dim();
    let mut system = SparseEchelon::new(n * n);
    for row in leibniz_rows(table) {
        system.push(row);
    }
    let basis: Vec<Matrix> = system
        .kernel()
        .into_iter()
        .map(|x| Matrix::from_rows(x.chunks(n.max(1)).map(<[Rational]>::to_vec).collect()).unwrap_or_else(|_| Matrix::zeros(0, 0)))
        .collect();
    DerivationSpace { dim: basis.len(), basis }
}

pub fn derivation_space(a: &Algebra, point: &Assignment) -> Result<DerivationSpace> {
    Ok(derivation_space_of(&a.table(point)?))
}

/// Whether `d` satisfies `D[X_i,X_j] = [DX_i,X_j] + [X_i,DX_j]` on all pairs.
pub fn is_derivation(table: &Table, d: &Matrix) -> bool {
    let n = table.dim();
    let col = |b: usize| (0..n).map(|a| d[(a, b)].clone()).collect::<Vec<_>>();
    let unit = |i: usize| {
        (0..n).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }).collect::<Vec<_>>()
    };
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(&table.bracket(&unit(i), &unit(j))).expect("square");
            let r1 = table.bracket(&col(i), &unit(j));
            let r2 = table.bracket(&unit(i), &col(j));
            if (0..n).any(|k| lhs[k] != &r1[k] + &r2[k]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDerivations {
    pub dim: usize,
    /// Each vector holds the diagonal entries of one basis derivation.
    pub basis: Vec<Vec<Rational>>,
}

impl DiagonalDerivations {
    /// Whether `w` lies in the span of the basis.
    pub fn contains(&self, w: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        let before = Matrix::from_rows(rows.clone()).map_or(0, |m| m.rank());
        rows.push(w.to_vec());
        Matrix::from_rows(rows).map_or(false, |m| m.rank() == before)
    }
}

/// Solutions of `w_i + w_j = w_k` over every nonzero constant.
pub fn diagonal_derivations_of(table: &Table) -> DiagonalDerivations {
    let n = table.dim();
    let one = || Rational::from_integer(1.into());
    let mut system = SparseEchelon::new(n);
    for (i, j, k, _) in table.nonzero() {
        system.push([(i, one()), (j, one()), (k, -one())]);
    }
    let basis = system.kernel();
    DiagonalDerivations { dim: basis.len(), basis }
}

pub fn diagonal_derivations(a: &Algebra, point: &Assignment) -> Result<DiagonalDerivations> {
    Ok(diagonal_derivations_of(&a.table(point)?))
}

/// Dimension of the diagonal derivations in the given basis. On the catalog
/// bases this is the rank; in general it is only a lower bound.
pub fn rank_in_basis(a: &Algebra, point: &Assignment) -> Result<usize> {
    Ok(diagonal_derivations(a, point)?.dim)
}

/// A bracket on which a claimed weight vector is not additive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `w_i + w_j - w_k`, nonzero.
    pub defect: Poly,
}

/// Checks `w_i + w_j = w_k` as polynomials for every stored constant. The
/// weights live in their own parameter space, independent of the algebra's.
pub fn weight_violations(a: &Algebra, weights: &[Poly]) -> Vec<WeightViolation> {
    let mut out = Vec::new();
    for (&(i, j), terms) in a.constants() {
        for &k in terms.keys() {
            let defect = &(&weights[i] + &weights[j]) - &weights[k];
            if !defect.is_zero() {
                out.push(WeightViolation { i, j, k, defect });
            }
        }
    }
    out
}
