use num_traits::Zero;

use crate::exact::Rational;

/// Dense, fully antisymmetric table of rational structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    dim: usize,
    entries: Vec<Vec<(usize, Rational)>>,
}

impl Table {
    pub fn zero(dim: usize) -> Self {
        Table { dim, entries: vec![Vec::new(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        for (a, b, v) in [(i, j, c.clone()), (j, i, -c)] {
            let cell = &mut self.entries[a * self.dim + b];
            match cell.iter_mut().find(|(m, _)| *m == k) {
                Some((_, w)) => *w += v,
                None => cell.push((k, v)),
            }
            cell.retain(|(_, w)| !w.is_zero());
            cell.sort_by_key(|(m, _)| *m);
        }
    }

    /// `[X_i, X_j]` as sorted `(k, c)` pairs.
    pub fn get(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.entries[i * self.dim + j]
    }

    /// Nonzero `(i, j, k, c)` with `i < j`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        (0..self.dim).flat_map(move |i| {
            (i + 1..self.dim).flat_map(move |j| self.get(i, j).iter().map(move |(k, c)| (i, j, *k, c)))
        })
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.get(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// `[x, X_j]`.
    pub fn bracket_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in self.get(i, j) {
                out[*k] += a * c;
            }
        }
        out
    }
}
