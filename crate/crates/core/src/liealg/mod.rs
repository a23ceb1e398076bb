//! Lie algebras given by structure constants.
//!
//! An [`Algebra`] stores `[X_i, X_j] = sum_k c_ij^k X_k` for `i < j` only,
//! with polynomial coefficients over a declared [`ParamSpace`]. Concrete
//! computations (series, derivations) go through a [`Table`], the fully
//! antisymmetric rational table obtained by specializing every parameter.

mod table;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Assignment, Matrix, ParamSpace, Poly, Rational};

pub use table::Table;

/// Nonzero `(k, c_ij^k)` pairs, sorted by `k`.
pub type Terms = BTreeMap<usize, Poly>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    params: ParamSpace,
    constants: BTreeMap<(usize, usize), Terms>,
}

impl Algebra {
    pub fn new(dim: usize, params: ParamSpace) -> Self {
        Algebra {
            dim,
            labels: (0..dim).map(|i| format!("X_{i}")).collect(),
            params,
            constants: BTreeMap::new(),
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Algebra::new(dim, ParamSpace::empty())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    /// Stored constants, keyed by `(i, j)` with `i < j`.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.constants
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Adds `c * X_k` to `[X_i, X_j]`. Panics on an index out of range or
    /// on `i == j` with a nonzero coefficient.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: impl Into<Poly>) {
        if let Err(e) = self.try_add(i, j, k, c) {
            panic!("{e}");
        }
    }

    pub fn try_add(&mut self, i: usize, j: usize, k: usize, c: impl Into<Poly>) -> Result<()> {
        for index in [i, j, k] {
            if index >= self.dim {
                return Err(Error::IndexOutOfRange { index, dim: self.dim });
            }
        }
        let c = c.into();
        if c.is_zero() {
            return Ok(());
        }
        if i == j {
            return Err(Error::Parse(format!("[X_{i}, X_{i}] must vanish")));
        }
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let terms = self.constants.entry((i, j)).or_default();
        let entry = terms.entry(k).or_insert_with(Poly::zero);
        *entry += &c;
        if entry.is_zero() {
            terms.remove(&k);
            if terms.is_empty() {
                self.constants.remove(&(i, j));
            }
        }
        Ok(())
    }

    /// `[X_i, X_j]` as sparse terms, antisymmetry applied.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Terms {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Terms::new(),
            std::cmp::Ordering::Less => self.constants.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .constants
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Poly {
        self.basis_bracket(i, j).remove(&k).unwrap_or_default()
    }

    /// Bilinear bracket of two coefficient vectors.
    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Result<Vec<Poly>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        let mut out = vec![Poly::zero(); self.dim];
        for (&(i, j), terms) in &self.constants {
            let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if w.is_zero() {
                continue;
            }
            for (&k, c) in terms {
                out[k] += &(&w * c);
            }
        }
        Ok(out)
    }

    fn bracket_terms(&self, x: &Terms, j: usize) -> Terms {
        let mut out = Terms::new();
        for (&i, a) in x {
            for (k, c) in self.basis_bracket(i, j) {
                let e = out.entry(k).or_insert_with(Poly::zero);
                *e += &(a * &c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Residuals `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]` for
    /// every triple `i < j < k`; only nonzero ones are kept.
    pub fn jacobi_check(&self) -> JacobiReport {
        let mut residuals = BTreeMap::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut total = Terms::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.basis_bracket(a, b);
                        if ab.is_empty() {
                            continue;
                        }
                        for (m, v) in self.bracket_terms(&ab, c) {
                            *total.entry(m).or_insert_with(Poly::zero) += &v;
                        }
                    }
                    total.retain(|_, v| !v.is_zero());
                    if !total.is_empty() {
                        residuals.insert((i, j, k), total.into_iter().collect());
                    }
                }
            }
        }
        JacobiReport { residuals }
    }

    /// Re-expresses the algebra in the basis `Y_a = sum_i P[a][i] X_i`.
    pub fn change_of_basis(&self, p: &Matrix) -> Result<Algebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.rows().max(p.cols()) });
        }
        let pinv = p.inverse()?;
        let n = self.dim;
        let mut out = Algebra::new(n, self.params.clone());
        for a in 0..n {
            for b in a + 1..n {
                let mut in_x = vec![Poly::zero(); n];
                for (&(i, j), terms) in &self.constants {
                    let w = &p[(a, i)] * &p[(b, j)] - &p[(a, j)] * &p[(b, i)];
                    if w.is_zero() {
                        continue;
                    }
                    for (&k, c) in terms {
                        in_x[k] += &c.scale(&w);
                    }
                }
                for (k, v) in in_x.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for m in 0..n {
                        let q = &pinv[(k, m)];
                        if !q.is_zero() {
                            out.add(a, b, m, v.scale(q));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block sum; brackets between the two blocks vanish.
    pub fn direct_sum(&self, other: &Algebra) -> Result<Algebra> {
        let (params, remap) = self.params.merge(&other.params)?;
        let mut out = Algebra::new(self.dim + other.dim, params);
        out.constants = self.constants.clone();
        for (&(i, j), terms) in &other.constants {
            for (&k, c) in terms {
                out.add(i + self.dim, j + self.dim, k + self.dim, c.remap(&remap));
            }
        }
        Ok(out)
    }

    /// End of the chain `X_1 -> X_2 -> ...` traced by `[X_0, X_i] = X_{i+1}`.
    pub fn chain_end(&self) -> usize {
        let mut i = 1;
        while i + 1 < self.dim {
            let t = self.basis_bracket(0, i);
            if t.len() == 1 && t.get(&(i + 1)).is_some_and(|c| c == &Poly::one()) {
                i += 1;
            } else {
                break;
            }
        }
        i
    }

    /// Appends a generator `Y` with `[X_i, Y] = X_{i+shift}` for every chain
    /// vector `X_i` whose image stays on the chain.
    pub fn extend_by_shift(&self, shift: i64) -> Result<Algebra> {
        let n = self.dim + 1;
        if shift < 2 {
            return Err(Error::ShiftOutOfRange { shift, dim: n });
        }
        let end = self.chain_end();
        let mut out = self.direct_sum(&Algebra::abelian(1))?;
        let s = shift as usize;
        for i in 1..=end {
            if i + s <= end {
                out.add(i, n - 1, i + s, Rational::from_integer(1.into()));
            }
        }
        Ok(out)
    }

    /// Substitutes the assigned parameters; they leave the universe.
    pub fn specialize(&self, point: &Assignment) -> Result<Algebra> {
        let keep: Vec<usize> = (0..self.params.len())
            .filter(|&v| !point.contains_key(self.params.name(v)))
            .collect();
        let params = ParamSpace::new(keep.iter().map(|&v| self.params.name(v).to_string()));
        let mut remap = vec![usize::MAX; self.params.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let mut out = Algebra { params, constants: BTreeMap::new(), ..self.clone() };
        for (&(i, j), terms) in &self.constants {
            for (&k, c) in terms {
                let v = c.partial_eval(|var| point.get(self.params.name(var)).cloned());
                out.add(i, j, k, v.remap(&remap));
            }
        }
        Ok(out)
    }

    /// The rational table at `point`; fails if any occurring parameter is
    /// left unassigned.
    pub fn table(&self, point: &Assignment) -> Result<Table> {
        let mut t = Table::zero(self.dim);
        for (&(i, j), terms) in &self.constants {
            for (&k, c) in terms {
                let v = c.eval(&self.params, point)?;
                t.add(i, j, k, v);
            }
        }
        Ok(t)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Algebra(dim={}, params={:?})", self.dim, self.params.names())?;
        for (&(i, j), terms) in &self.constants {
            let rhs: Vec<String> = terms
                .iter()
                .map(|(k, c)| format!("({}) {}", c.display(&self.params), self.labels[*k]))
                .collect();
            writeln!(f, "  [{}, {}] = {}", self.labels[i], self.labels[j], rhs.join(" + "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub residuals: BTreeMap<(usize, usize, usize), Vec<(usize, Poly)>>,
}

impl JacobiReport {
    pub fn is_empty(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Every nonzero residual coefficient, in triple order.
    pub fn components(&self) -> impl Iterator<Item = &Poly> {
        self.residuals.values().flat_map(|v| v.iter().map(|(_, p)| p))
    }
}
