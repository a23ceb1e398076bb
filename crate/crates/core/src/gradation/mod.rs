//! Lower central series, type vectors and the associated graded algebra.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Assignment, Matrix, ParamSpace, Rational};
use crate::liealg::{Algebra, Table};

/// Reduced echelon basis of the span of `vectors` in dimension `dim`,
/// with the pivot column of each row.
pub fn span_basis(vectors: Vec<Vec<Rational>>, dim: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let nonzero: Vec<Vec<Rational>> = vectors.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
    if nonzero.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (r, pivots) = Matrix::from_rows(nonzero).expect("vectors share a length").rref();
    debug_assert_eq!(r.cols(), dim);
    (r.to_rows(), pivots)
}

/// The ideals `g_1 ⊇ g_2 ⊇ ... ⊇ g_{m+1} = 0`, each as an echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub dim: usize,
    pub ideals: Vec<Vec<Vec<Rational>>>,
    pivots: Vec<Vec<usize>>,
}

impl Filtration {
    pub fn dims(&self) -> Vec<usize> {
        self.ideals.iter().map(Vec::len).collect()
    }

    /// Number of nonzero terms `g_1, ..., g_m`.
    pub fn nilindex(&self) -> usize {
        self.ideals.len() - 1
    }
}

/// Bracket spans `g_{k+1} = [g_k, g]` until they vanish.
pub fn lower_central_series_of(table: &Table) -> Result<Filtration> {
    let n = table.dim();
    let full: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
        .collect();
    let mut ideals = vec![full];
    let mut pivots = vec![(0..n).collect::<Vec<_>>()];
    while !ideals.last().unwrap().is_empty() {
        let current = ideals.last().unwrap();
        let images = current
            .iter()
            .flat_map(|v| (0..n).map(move |j| table.bracket_basis(v, j)))
            .collect();
        let (next, p) = span_basis(images, n);
        if next.len() == current.len() {
            let mut dims: Vec<usize> = ideals.iter().map(Vec::len).collect();
            dims.push(next.len());
            return Err(Error::NonNilpotent { dims });
        }
        ideals.push(next);
        pivots.push(p);
    }
    Ok(Filtration { dim: n, ideals, pivots })
}

pub fn lower_central_series(a: &Algebra, point: &Assignment) -> Result<Filtration> {
    lower_central_series_of(&a.table(point)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector(pub Vec<usize>);

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub type_vector: TypeVector,
    pub nilindex: usize,
    pub filiform: bool,
    pub quasi_filiform: bool,
    /// For quasi-filiform algebras, `r` with `p_r = 2`, or 1 when `p_1 = 3`.
    pub r: Option<usize>,
}

pub fn type_from_filtration(f: &Filtration) -> TypeInfo {
    let dims = f.dims();
    let p: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
    let n = f.dim;
    let nilindex = f.nilindex();
    let filiform = n >= 2 && nilindex + 1 == n;
    let quasi_filiform = n >= 3 && nilindex + 2 == n;
    let r = if !quasi_filiform {
        None
    } else if p.first() == Some(&3) {
        Some(1)
    } else {
        p.iter().skip(1).position(|&x| x == 2).map(|i| i + 2)
    };
    TypeInfo { type_vector: TypeVector(p), nilindex, filiform, quasi_filiform, r }
}

pub fn type_of(a: &Algebra, point: &Assignment) -> Result<TypeInfo> {
    Ok(type_from_filtration(&lower_central_series(a, point)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub algebra: Algebra,
    /// Degree of each new basis vector.
    pub weights: Vec<usize>,
    /// Rows are the homogeneous basis vectors in the original coordinates.
    pub basis: Matrix,
}

impl GradedAlgebra {
    /// Brackets whose target degree is not the sum of the source degrees.
    pub fn additivity_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for (&(i, j), terms) in self.algebra.constants() {
            for &k in terms.keys() {
                if self.weights[i] + self.weights[j] != self.weights[k] {
                    bad.push((i, j, k));
                }
            }
        }
        bad
    }
}

/// The associated graded algebra of a nilpotent table.
///
/// The basis of `g_i` is completed from that of `g_{i+1}` by the echelon rows
/// of `g_i` whose pivots are new; the resulting vectors are ordered by pivot
/// column, so an algebra that is already graded in its own basis maps to
/// itself.
pub fn gr_of(table: &Table) -> Result<GradedAlgebra> {
    let f = lower_central_series_of(table)?;
    let n = f.dim;
    let mut chosen: Vec<(usize, usize, Vec<Rational>)> = Vec::with_capacity(n);
    for level in 0..f.nilindex() {
        let deeper = &f.pivots[level + 1];
        for (row, &p) in f.ideals[level].iter().zip(&f.pivots[level]) {
            if !deeper.contains(&p) {
                chosen.push((p, level + 1, row.clone()));
            }
        }
    }
    chosen.sort_by_key(|(p, _, _)| *p);
    let weights: Vec<usize> = chosen.iter().map(|(_, w, _)| *w).collect();
    let basis = Matrix::from_rows(chosen.into_iter().map(|(_, _, v)| v).collect())
        .unwrap_or_else(|_| Matrix::zeros(0, 0));
    let basis = if n == 0 { Matrix::zeros(0, 0) } else { basis };
    let inv = basis.inverse()?;
    let mut algebra = Algebra::new(n, ParamSpace::empty());
    for a in 0..n {
        for b in a + 1..n {
            let v = table.bracket(basis.row(a), basis.row(b));
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let target = weights[a] + weights[b];
            let coords = inv.transpose().mul_vec(&v)?;
            for (k, c) in coords.into_iter().enumerate() {
                if weights[k] == target && !c.is_zero() {
                    algebra.add(a, b, k, c);
                }
            }
        }
    }
    Ok(GradedAlgebra { algebra, weights, basis })
}

pub fn gr(a: &Algebra, point: &Assignment) -> Result<GradedAlgebra> {
    gr_of(&a.table(point)?)
}
