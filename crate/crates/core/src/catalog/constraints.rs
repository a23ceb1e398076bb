use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::build::generate;
use super::spec::FamilySpec;
use crate::error::Result;
use crate::exact::{int, rat, Assignment, ParamSpace, Poly, Rational};

/// Polynomial conditions on the parameters of a family: a parameter value
/// gives a Lie algebra exactly when every generator vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub params: ParamSpace,
    /// Monic, pairwise distinct, sorted by leading term.
    pub generators: Vec<Poly>,
}

fn sort_key(p: &Poly) -> Vec<(crate::exact::Monomial, Rational)> {
    p.terms().rev().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn canonical(polys: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for p in polys {
        let p = p.monic();
        if !p.is_zero() && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_by_key(sort_key);
    out
}

/// The Jacobi residual components of the symbolic family member.
pub fn extract_constraints(spec: &FamilySpec) -> Result<ConstraintSet> {
    let a = generate(&spec.symbolic())?;
    let report = a.jacobi_check();
    Ok(ConstraintSet {
        params: a.params().clone(),
        generators: canonical(report.components().cloned()),
    })
}

const NODE_BUDGET: usize = 20_000;

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn assignment(&self, point: &[Rational]) -> Assignment {
        self.params.names().iter().cloned().zip(point.iter().cloned()).collect()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        self.generators
            .iter()
            .all(|g| g.eval_with(|v| point.get(v).cloned()).is_ok_and(|x| x.is_zero()))
    }

    /// A rational point on the constraint variety, chosen to avoid special
    /// values: free parameters take distinct primes, and branching tries
    /// nonzero values before zero. `None` if the bounded search finds none.
    pub fn find_point(&self) -> Option<Vec<Rational>> {
        let mut solver = Solver { nvars: self.params.len(), budget: NODE_BUDGET };
        let point = solver.solve(self.generators.clone(), vec![None; self.params.len()], Vec::new())?;
        self.is_satisfied_by(&point).then_some(point)
    }

    /// Whether `alpha = 0` is a solution; it always is when no generator has
    /// a constant term.
    pub fn vanishes_at_origin(&self) -> bool {
        self.is_satisfied_by(&vec![Rational::zero(); self.params.len()])
    }
}

fn prime(index: usize) -> i64 {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    PRIMES[index % PRIMES.len()]
}

fn candidates(var: usize) -> Vec<Rational> {
    let p = prime(var);
    vec![int(p), int(-p), int(1), int(-1), int(2), int(-2), rat(1, 2), rat(-1, 2), int(3), int(0)]
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = BigInt::from(10_000);
    if n.is_zero() || n > limit {
        return Vec::new();
    }
    let mut d = BigInt::one();
    let mut out = Vec::new();
    while d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

/// Rational roots of `sum c_i x^i`, nonzero roots first.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    let mut has_zero = false;
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        has_zero = true;
    }
    match c.len() {
        0 | 1 => {}
        2 => roots.push(-&c[0] / &c[1]),
        3 => {
            let disc = &c[1] * &c[1] - int(4) * &c[2] * &c[0];
            if let Some(s) = rational_sqrt(&disc) {
                let two_a = int(2) * &c[2];
                roots.push((-&c[1] + &s) / &two_a);
                roots.push((-&c[1] - &s) / &two_a);
            }
        }
        _ => {
            let den = crate::exact::rational::common_denominator(c.iter());
            let ints: Vec<BigInt> = c.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
            for p in small_divisors(&ints[0]) {
                for q in small_divisors(ints.last().unwrap()) {
                    for s in [1, -1] {
                        let x = Rational::new(&p * s, q.clone());
                        let val = c.iter().rev().fold(Rational::zero(), |acc, ci| acc * &x + ci);
                        if val.is_zero() && !roots.contains(&x) {
                            roots.push(x);
                        }
                    }
                }
            }
        }
    }
    roots.dedup();
    if has_zero {
        roots.push(Rational::zero());
    }
    roots
}

struct Solver {
    nvars: usize,
    budget: usize,
}

impl Solver {
    fn solve(&mut self, gens: Vec<Poly>, fixed: Vec<Option<Rational>>, defs: Vec<(usize, Poly)>) -> Option<Vec<Rational>> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let gens = canonical(gens);
        if gens.iter().any(Poly::is_constant) {
            return None;
        }
        if gens.is_empty() {
            return Some(self.complete(fixed, &defs));
        }
        for g in &gens {
            for v in g.vars() {
                let Some((coeff, rest)) = g.split_linear(v) else { continue };
                let Some(c) = coeff.as_constant() else { continue };
                let expr = rest.scale(&(-c.recip()));
                let others = gens.iter().filter(|h| *h != g).map(|h| h.substitute(v, &expr)).collect();
                let mut defs = defs.clone();
                defs.push((v, expr));
                return self.solve(others, fixed, defs);
            }
        }
        for g in &gens {
            let vars = g.vars();
            if vars.len() != 1 {
                continue;
            }
            let v = *vars.iter().next().unwrap();
            let coeffs = g.univariate_coefficients(v).expect("single variable");
            for root in rational_roots(&coeffs) {
                if let Some(p) = self.assign(&gens, &fixed, &defs, v, root) {
                    return Some(p);
                }
            }
            return None;
        }
        let mut counts = vec![0usize; self.nvars];
        for g in &gens {
            for v in g.vars() {
                counts[v] += 1;
            }
        }
        let v = (0..self.nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v)))?;
        for value in candidates(v) {
            if let Some(p) = self.assign(&gens, &fixed, &defs, v, value) {
                return Some(p);
            }
        }
        None
    }

    fn assign(
        &mut self,
        gens: &[Poly],
        fixed: &[Option<Rational>],
        defs: &[(usize, Poly)],
        v: usize,
        value: Rational,
    ) -> Option<Vec<Rational>> {
        let c = Poly::constant(value.clone());
        let next = gens.iter().map(|g| g.substitute(v, &c)).collect();
        let mut fixed = fixed.to_vec();
        fixed[v] = Some(value);
        let defs = defs.iter().map(|(w, e)| (*w, e.substitute(v, &c))).collect();
        self.solve(next, fixed, defs)
    }

    fn complete(&self, fixed: Vec<Option<Rational>>, defs: &[(usize, Poly)]) -> Vec<Rational> {
        let defined: BTreeSet<usize> = defs.iter().map(|(v, _)| *v).collect();
        let mut point: Vec<Option<Rational>> = fixed;
        for v in 0..self.nvars {
            if point[v].is_none() && !defined.contains(&v) {
                point[v] = Some(int(prime(v)));
            }
        }
        for (v, expr) in defs.iter().rev() {
            let value = expr
                .eval_with(|w| point[w].clone())
                .expect("definitions only refer to earlier-resolved variables");
            point[*v] = Some(value);
        }
        point.into_iter().map(|v| v.unwrap_or_default()).collect()
    }
}
