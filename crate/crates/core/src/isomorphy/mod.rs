//! The parameter-eliminating change of basis for `C_n(alpha)`, basis-free
//! fingerprints, and identification of `gr` within the graded catalog.

use std::fmt;

use num_traits::Zero;

use crate::catalog::{generate, Family, FamilySpec};
use crate::derivations::{derivation_space_of, diagonal_derivations_of};
use crate::error::{Error, Result};
use crate::exact::{int, Assignment, Matrix, Rational};
use crate::gradation::{gr_of, lower_central_series_of, span_basis, type_from_filtration, TypeVector};
use crate::liealg::{Algebra, Table};

/// Result of eliminating the parameters of `C_n(alpha)`.
#[derive(Clone, Debug)]
pub struct CnElimination {
    pub source: Algebra,
    pub image: Algebra,
    /// One matrix per elimination stage followed by the final sign change,
    /// each in the convention of [`Algebra::change_of_basis`].
    pub stages: Vec<Matrix>,
    /// Product of the stages, later stages on the left.
    pub total: Matrix,
}

/// Order in which the parameters are eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// `alpha_1` first. Each stage only disturbs parameters of higher index.
    Ascending,
    /// `alpha_{m-2}` first.
    Descending,
}

/// `Y_i -> Y_i + c Y_{i+2j}` for `1 <= i <= n-2-2j`; the chain relation
/// `[Y_0, Y_i] = Y_{i+1}` is preserved.
fn elimination_stage(n: usize, j: usize, c: &Rational) -> Matrix {
    let mut p = Matrix::identity(n);
    for i in 1..=(n - 2).saturating_sub(2 * j) {
        p[(i, i + 2 * j)] = c.clone();
    }
    p
}

/// Maps `C_n(alpha)` onto `Q_n`, eliminating `alpha_1, ..., alpha_{m-2}`.
pub fn eliminate_cn_parameters(n: usize, alphas: &[Rational]) -> Result<CnElimination> {
    eliminate_cn_parameters_ordered(n, alphas, EliminationOrder::Ascending)
}

pub fn eliminate_cn_parameters_ordered(n: usize, alphas: &[Rational], order: EliminationOrder) -> Result<CnElimination> {
    let spec = FamilySpec::new(Family::Cn, n).with_alpha(alphas.to_vec());
    let source = generate(&spec)?;
    let m = n / 2;
    let mut order_js: Vec<usize> = (1..=m - 2).collect();
    if order == EliminationOrder::Descending {
        order_js.reverse();
    }
    let mut current = source.clone();
    let mut stages = Vec::new();
    let mut total = Matrix::identity(n);
    let mut apply = |p: Matrix, current: &mut Algebra| -> Result<()> {
        *current = current.change_of_basis(&p)?;
        total = &p * &total;
        stages.push(p);
        Ok(())
    };
    for j in order_js {
        let alpha = current.coefficient(1, n - 2 * j - 2, n - 1);
        let alpha = alpha.as_constant().unwrap_or_default();
        if alpha.is_zero() {
            continue;
        }
        let p = elimination_stage(n, j, &(alpha / int(2)));
        apply(p, &mut current)?;
    }
    let mut sign = Matrix::identity(n);
    sign[(n - 1, n - 1)] = int(-1);
    apply(sign, &mut current)?;
    Ok(CnElimination { source, image: current, stages, total })
}

/// Isomorphism invariants of a concrete algebra, plus the basis-dependent
/// diagonal rank kept apart from them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub type_vector: TypeVector,
    pub lcs_dims: Vec<usize>,
    pub center_dim: usize,
    pub derived_dims: Vec<usize>,
    /// Dimension of the centralizer of `[g, g]`.
    pub centralizer_dim: usize,
    /// Dimensions of the centralizers of each lower central term.
    pub lcs_centralizer_dims: Vec<usize>,
    pub der_dim: usize,
    /// Rank of the trace form `tr(D D')` on the derivation algebra. When the
    /// derivation algebra is solvable with a rational torus this is the rank.
    pub der_trace_rank: usize,
    /// Dimension of diagonal derivations in the given basis; not an
    /// invariant and ignored by [`Fingerprint::invariants_match`].
    pub rank_in_basis: usize,
}

impl Fingerprint {
    pub fn invariants_match(&self, other: &Fingerprint) -> bool {
        Fingerprint { rank_in_basis: 0, ..self.clone() } == Fingerprint { rank_in_basis: 0, ..other.clone() }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} type={} lcs={:?} center={} derived={:?} centralizer={} lcs_centralizers={:?} der={} der_trace_rank={} rank_in_basis={}",
            self.dim,
            self.type_vector,
            self.lcs_dims,
            self.center_dim,
            self.derived_dims,
            self.centralizer_dim,
            self.lcs_centralizer_dims,
            self.der_dim,
            self.der_trace_rank,
            self.rank_in_basis
        )
    }
}

/// Dimension of `{x : [x, s] = 0 for every s in span}`.
fn centralizer_dim(t: &Table, span: &[Vec<Rational>]) -> usize {
    let n = t.dim();
    let mut rows = Vec::new();
    for s in span {
        let images: Vec<Vec<Rational>> = (0..n).map(|i| t.bracket_basis(s, i)).collect();
        for k in 0..n {
            rows.push((0..n).map(|i| -images[i][k].clone()).collect());
        }
    }
    n - span_basis(rows, n).0.len()
}

fn trace_form_rank(basis: &[Matrix]) -> usize {
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    let mut t = Rational::zero();
                    for i in 0..x.rows() {
                        for j in 0..x.cols() {
                            if !x[(i, j)].is_zero() {
                                t += &x[(i, j)] * &y[(j, i)];
                            }
                        }
                    }
                    t
                })
                .collect()
        })
        .collect();
    if gram.is_empty() {
        return 0;
    }
    Matrix::from_rows(gram).expect("square").rank()
}

fn derived_dims(t: &Table) -> Vec<usize> {
    let n = t.dim();
    let mut current: Vec<Vec<Rational>> = span_basis(identity_rows(n), n).0;
    let mut dims = vec![current.len()];
    while !current.is_empty() {
        let mut images = Vec::new();
        for (a, x) in current.iter().enumerate() {
            for y in &current[a + 1..] {
                images.push(t.bracket(x, y));
            }
        }
        let next = span_basis(images, n).0;
        if next.len() == current.len() {
            break;
        }
        current = next;
        dims.push(current.len());
    }
    dims
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|k| if i == k { int(1) } else { int(0) }).collect()).collect()
}

pub fn fingerprint_of(t: &Table) -> Result<Fingerprint> {
    let n = t.dim();
    let lcs = lower_central_series_of(t)?;
    let info = type_from_filtration(&lcs);
    let der = derivation_space_of(t);
    let centralizer = |k: usize| lcs.ideals.get(k).map_or(n, |s| centralizer_dim(t, s));
    Ok(Fingerprint {
        dim: n,
        type_vector: info.type_vector,
        lcs_dims: lcs.dims(),
        center_dim: centralizer_dim(t, &identity_rows(n)),
        derived_dims: derived_dims(t),
        centralizer_dim: centralizer(1),
        lcs_centralizer_dims: (0..lcs.ideals.len()).map(centralizer).collect(),
        der_dim: der.dim,
        der_trace_rank: trace_form_rank(&der.basis),
        rank_in_basis: diagonal_derivations_of(t).dim,
    })
}

pub fn fingerprint(a: &Algebra, point: &Assignment) -> Result<Fingerprint> {
    fingerprint_of(&a.table(point)?)
}

/// Outcome of matching `gr` against the naturally graded catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Classified(FamilySpec),
    /// Zero or several catalog entries share the fingerprint.
    Unclassified { candidates: Vec<FamilySpec> },
}

/// Naturally graded filiform and quasi-filiform entries of dimension `n`.
pub fn graded_entries(n: usize) -> Vec<FamilySpec> {
    let mut families = vec![Family::L, Family::Q];
    families.extend(Family::GRADED_QUASI_FILIFORM);
    families
        .into_iter()
        .flat_map(|f| FamilySpec::enumerate(f, n))
        .filter(|s| s.n == n)
        .collect()
}

/// Identifies `gr` of a concrete algebra among [`graded_entries`] by
/// fingerprint.
pub fn classify_gr_of(t: &Table) -> Result<Classification> {
    let g = gr_of(t)?;
    let target = fingerprint(&g.algebra, &Assignment::new())?;
    let mut candidates = Vec::new();
    for spec in graded_entries(t.dim()) {
        let f = fingerprint(&generate(&spec)?, &Assignment::new())?;
        if f.invariants_match(&target) {
            candidates.push(spec);
        }
    }
    Ok(match candidates.len() {
        1 => Classification::Classified(candidates.pop().unwrap()),
        _ => Classification::Unclassified { candidates },
    })
}

pub fn classify_gr(a: &Algebra, point: &Assignment) -> Result<Classification> {
    if a.dim() == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    classify_gr_of(&a.table(point)?)
}
