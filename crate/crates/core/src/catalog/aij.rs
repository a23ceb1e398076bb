use std::collections::BTreeMap;

use crate::exact::{ParamSpace, Poly};

/// Coefficients `a_ij`, `1 <= i < j`, `i + j <= bound`, as integer linear
/// forms in `alpha_1, ..., alpha_{t-1}`.
///
/// The superdiagonal carries the parameters, `a_{i,i+1} = alpha_i`, and the
/// rest follows from `a_{i,j} = a_{i+1,j} + a_{i,j+1}` read forwards as
/// `a_{i,j+1} = a_{i,j} - a_{i+1,j}`. That relation comes from the Jacobi
/// identity with `Y_0`, which only constrains pairs whose image under
/// `ad Y_0` stays in range, i.e. `i + j + 1 <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AijTable {
    bound: usize,
    params: ParamSpace,
    values: BTreeMap<(usize, usize), Poly>,
}

pub fn alpha_space(count: usize) -> ParamSpace {
    ParamSpace::new((1..=count).map(|i| format!("alpha{i}")))
}

pub fn aij_table(bound: usize, t: usize) -> AijTable {
    let params = alpha_space(t.saturating_sub(1));
    let mut values: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for s in 3..=bound {
        for i in (1..=(s - 1) / 2).rev() {
            let j = s - i;
            let v = if j == i + 1 {
                if i < t { Poly::var(i - 1) } else { Poly::zero() }
            } else {
                let left = values.get(&(i, j - 1)).cloned().unwrap_or_default();
                let below = values.get(&(i + 1, j - 1)).cloned().unwrap_or_default();
                &left - &below
            };
            values.insert((i, j), v);
        }
    }
    AijTable { bound, params, values }
}

impl AijTable {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    /// `a_ij` with antisymmetry; zero outside the declared range.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        if i < j {
            self.values.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            -self.values.get(&(j, i)).cloned().unwrap_or_default()
        }
    }

    /// Stored `((i, j), a_ij)` with `i < j`, zero entries included.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.values.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, t: &AijTable) -> Poly {
        Poly::parse(s, t.params()).unwrap()
    }

    #[test]
    fn diagonal_and_superdiagonal() {
        let t = aij_table(9, 4);
        assert!(t.get(2, 2).is_zero());
        for i in 1..4 {
            assert_eq!(t.get(i, i + 1), Poly::var(i - 1));
        }
        assert!(t.get(4, 5).is_zero());
        assert!(t.get(3, 7).is_zero());
    }

    #[test]
    fn hand_unrolled_entries() {
        let t = aij_table(7, 4);
        // a13 = a12 - a22, a14 = a13 - a23, a24 = a23 - a33, a15 = a14 - a24
        assert_eq!(t.get(1, 3), p("alpha1", &t));
        assert_eq!(t.get(1, 4), p("alpha1 - alpha2", &t));
        assert_eq!(t.get(2, 4), p("alpha2", &t));
        assert_eq!(t.get(1, 5), p("alpha1 - 2*alpha2", &t));
        assert_eq!(t.get(2, 5), p("alpha2 - alpha3", &t));
        assert_eq!(t.get(1, 6), p("alpha1 - 3*alpha2 + alpha3", &t));
    }

    #[test]
    fn recurrence_holds_inside_range() {
        let t = aij_table(13, 7);
        for i in 1..13 {
            for j in i + 1..13 {
                if i + j < t.bound() {
                    assert_eq!(t.get(i, j), &t.get(i + 1, j) + &t.get(i, j + 1), "({i},{j})");
                }
            }
        }
    }
}
