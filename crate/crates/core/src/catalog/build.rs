use super::aij::{aij_table, alpha_space};
use super::spec::{Family, FamilySpec};
use crate::error::Result;
use crate::exact::{int, rat, Assignment, ParamSpace, Poly, Rational};
use crate::liealg::Algebra;

/// How a family's bracket table is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reading {
    /// The encoding adopted by the catalog, consistent with the weights.
    Normalized,
    /// The tables exactly as printed, where they differ from the normalized
    /// encoding; identical to [`Reading::Normalized`] elsewhere.
    Printed,
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 { int(1) } else { int(-1) }
}

fn chain(a: &mut Algebra, lo: usize, hi: usize) {
    for i in lo..=hi {
        a.add(0, i, i + 1, int(1));
    }
}

fn filiform_l(n: usize, params: ParamSpace) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 2);
    a
}

fn filiform_q(n: usize, params: ParamSpace) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 3);
    for j in 1..n / 2 {
        a.add(j, n - j - 1, n - 1, sign(j - 1));
    }
    a
}

/// Adds `[Y_i, Y_j] = a_ij Y_{i+j+k-1}` for `i + j <= bound`.
fn add_aij(a: &mut Algebra, k: usize, bound: usize) {
    let t = aij_table(bound, (bound + 1) / 2);
    for (&(i, j), v) in t.entries() {
        a.add(i, j, i + j + k - 1, v.clone());
    }
}

fn params_for(bound: usize) -> ParamSpace {
    alpha_space(((bound + 1) / 2).saturating_sub(1))
}

fn ank(n: usize, k: usize) -> Algebra {
    let bound = n - k;
    let mut a = filiform_l(n, params_for(bound));
    add_aij(&mut a, k, bound);
    a
}

fn bnk(n: usize, k: usize, reading: Reading) -> Algebra {
    let bound = n - k - 1;
    let mut a = filiform_q(n, params_for(bound));
    match reading {
        Reading::Normalized => add_aij(&mut a, k, bound),
        Reading::Printed => {
            let t = aij_table(bound, (bound + 1) / 2);
            for (&(i, j), v) in t.entries() {
                if j == i + 1 {
                    a.add(i, j, 2 * i + k - 1, v.clone());
                } else {
                    a.add(i, j, i + j + k - 1, v.clone());
                }
            }
        }
    }
    a
}

fn cn(n: usize) -> Algebra {
    let m = n / 2;
    let mut a = Algebra::new(n, alpha_space(m - 2));
    chain(&mut a, 1, n - 3);
    for i in 1..m {
        a.add(i, n - i - 1, n - 1, sign(i));
    }
    for k in 1..=m - 2 {
        for i in 1..m - k {
            a.add(i, n - 2 * k - 1 - i, n - 1, Poly::var(k - 1).scale(&sign(i + 1)));
        }
    }
    a
}

fn plus_line(a: &Algebra) -> Algebra {
    a.direct_sum(&Algebra::abelian(1)).expect("an empty universe always merges")
}

/// `[Y_i, Y_{n-1}] = Y_{i+l-2}` for `1 <= i <= n-l`, as printed.
fn shifted_as_printed(a: &Algebra, l: usize) -> Algebra {
    let mut out = plus_line(a);
    let n = out.dim();
    for i in 1..=n - l {
        out.add(i, n - 1, i + l - 2, int(1));
    }
    out
}

fn lnr(n: usize, r: usize, params: ParamSpace) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 3);
    for i in 1..=(r - 1) / 2 {
        a.add(i, r - i, n - 1, sign(i - 1));
    }
    a
}

fn qnr(n: usize, r: usize, params: ParamSpace) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 4);
    for i in 1..=(r - 1) / 2 {
        a.add(i, r - i, n - 1, sign(i - 1));
    }
    for i in 1..=(n - 3) / 2 {
        a.add(i, n - 2 - i, n - 2, sign(i - 1));
    }
    a
}

/// `T_{n,n-4}`; `shifted_coefficient` selects the `(n-2-i)/2` coefficient
/// on `Y_{n-2}` printed alongside the parametric extension.
fn tn4(n: usize, params: ParamSpace, shifted_coefficient: bool) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 5);
    a.add(0, n - 3, n - 2, int(1));
    a.add(0, n - 1, n - 3, int(1));
    for i in 1..=(n - 5) / 2 {
        a.add(i, n - 4 - i, n - 1, sign(i - 1));
        a.add(i, n - 3 - i, n - 3, sign(i - 1) * rat((n - 3 - 2 * i) as i64, 2));
    }
    for i in 1..=(n - 3) / 2 {
        let c = if shifted_coefficient { (n - 2 - i) as i64 } else { (n - 3 - i) as i64 };
        if !shifted_coefficient && i < 2 {
            continue;
        }
        a.add(i, n - 2 - i, n - 2, sign(i) * int(i as i64 - 1) * rat(c, 2));
    }
    a
}

fn tn3(n: usize, params: ParamSpace) -> Algebra {
    let mut a = Algebra::new(n, params);
    chain(&mut a, 1, n - 4);
    a.add(0, n - 1, n - 2, int(1));
    for i in 1..=(n - 4) / 2 {
        a.add(i, n - 3 - i, n - 1, sign(i - 1));
        a.add(i, n - 2 - i, n - 2, sign(i - 1) * rat((n - 2 - 2 * i) as i64, 2));
    }
    a
}

fn sporadic(n: usize, chain_end: usize, brackets: &[(usize, usize, usize, i64)]) -> Algebra {
    let mut a = Algebra::abelian(n);
    chain(&mut a, 1, chain_end - 1);
    for &(i, j, k, c) in brackets {
        a.add(i, j, k, int(c));
    }
    a
}

fn e951() -> Algebra {
    sporadic(9, 7, &[(0, 8, 6, 1), (2, 8, 7, -3), (1, 4, 8, 1), (1, 5, 6, 2), (1, 6, 7, 3), (2, 3, 8, -1), (2, 4, 6, -1), (2, 5, 7, -1)])
}

fn e952() -> Algebra {
    sporadic(
        9,
        7,
        &[(0, 8, 6, 1), (2, 8, 7, -1), (1, 4, 8, 1), (1, 5, 6, 2), (1, 6, 7, 1), (2, 3, 8, -1), (2, 4, 6, -1), (2, 5, 7, 1), (3, 4, 7, -2)],
    )
}

fn e953() -> Algebra {
    sporadic(9, 7, &[(0, 8, 6, 1), (1, 4, 8, 1), (1, 5, 6, 2), (2, 3, 8, -1), (2, 4, 6, -1), (2, 5, 7, 2), (3, 4, 7, -3)])
}

fn e73() -> Algebra {
    sporadic(7, 5, &[(0, 6, 4, 1), (2, 6, 5, -1), (1, 2, 6, 1), (1, 3, 4, 1), (1, 4, 5, 1)])
}

fn shift(a: &Algebra, l: usize) -> Algebra {
    a.extend_by_shift(l as i64).expect("validated shift")
}

/// Generates the algebra of a validated spec, symbolic in alpha.
fn build(spec: &FamilySpec, reading: Reading) -> Algebra {
    let (n, r, k, l) = (spec.n, spec.r_value(), spec.k_value(), spec.l_value());
    let printed = reading == Reading::Printed;
    use Family::*;
    match spec.family {
        L => filiform_l(n, ParamSpace::empty()),
        Q => filiform_q(n, ParamSpace::empty()),
        Ank => ank(n, k),
        Bnk => bnk(n, k, Reading::Normalized),
        Cn => cn(n),
        LsumC => plus_line(&filiform_l(n - 1, ParamSpace::empty())),
        QsumC => plus_line(&filiform_q(n - 1, ParamSpace::empty())),
        Lnr => lnr(n, r, ParamSpace::empty()),
        Qnr => qnr(n, r, ParamSpace::empty()),
        Tn4 => tn4(n, ParamSpace::empty(), false),
        Tn3 => tn3(n, ParamSpace::empty()),
        E951 => e951(),
        E952 => e952(),
        E953 => e953(),
        E73 => e73(),
        AsumC => plus_line(&ank(n - 1, k)),
        LshiftC if printed => shifted_as_printed(&filiform_l(n - 1, ParamSpace::empty()), l),
        LshiftC => shift(&filiform_l(n - 1, ParamSpace::empty()), l),
        AshiftC if printed => shifted_as_printed(&ank(n - 1, k), l),
        AshiftC => shift(&ank(n - 1, k), l),
        BsumC => plus_line(&bnk(n - 1, k, reading)),
        QshiftaC => shift(&filiform_q(n - 1, ParamSpace::empty()), l),
        BshiftaC => shift(&bnk(n - 1, k, Reading::Normalized), l),
        QshiftbC => {
            let mut a = shift(&filiform_q(n - 1, ParamSpace::empty()), l);
            a.add(0, n - 1, n - 2, int(1));
            a
        }
        QshiftcC => {
            let mut a = plus_line(&filiform_q(n - 1, ParamSpace::empty()));
            a.add(0, n - 1, n - 2, int(1));
            a
        }
        BshiftcC => {
            let mut a = plus_line(&bnk(n - 1, k, Reading::Normalized));
            a.add(0, n - 1, n - 2, int(1));
            a
        }
        Cnrk => {
            let bound = n - k - 1;
            let mut a = lnr(n, r, params_for(bound));
            add_aij(&mut a, k, bound);
            for i in 1..=(n - r).saturating_sub(2 * k) {
                a.add(i, n - 1, 2 * k + r + i - 2, int(1));
            }
            a
        }
        Dnrk => {
            let mut a = lnr(n, r, ParamSpace::empty());
            for i in 1..=(n - r - 1).saturating_sub(2 * k) {
                a.add(i, n - 1, 2 * k + r + i - 1, int(1));
            }
            a
        }
        Enrk => {
            let bound = n - k - 2;
            let mut a = qnr(n, r, params_for(bound));
            add_aij(&mut a, k, bound);
            for i in 1..=(n - r - 1).saturating_sub(2 * k) {
                a.add(i, n - 1, 2 * k + r + i - 2, int(1));
            }
            a
        }
        Fnrk => {
            let mut a = qnr(n, r, ParamSpace::empty());
            for i in 1..=(n - r - 2).saturating_sub(2 * k) {
                a.add(i, n - 1, 2 * k + r + i - 1, int(1));
            }
            a
        }
        Gnk => {
            let bound = n - k - 3;
            let mut a = tn4(n, params_for(bound), printed);
            if k == 2 {
                a.add(1, n - 1, n - 2, int(1));
            }
            add_aij(&mut a, k, bound);
            a
        }
        Hnk => {
            let bound = n - k - 2;
            let mut a = tn3(n, params_for(bound));
            add_aij(&mut a, k, bound);
            a
        }
    }
}

/// Generates a family member in its catalog basis. Without alpha values
/// the result is symbolic in `alpha1, alpha2, ...`.
pub fn generate(spec: &FamilySpec) -> Result<Algebra> {
    generate_reading(spec, Reading::Normalized)
}

pub fn generate_reading(spec: &FamilySpec, reading: Reading) -> Result<Algebra> {
    spec.validate()?;
    let a = build(spec, reading);
    match &spec.alpha {
        None => Ok(a),
        Some(values) => a.specialize(&alpha_assignment(values)),
    }
}

/// `alpha1 = values[0], alpha2 = values[1], ...`.
pub fn alpha_assignment(values: &[Rational]) -> Assignment {
    values.iter().enumerate().map(|(i, v)| (format!("alpha{}", i + 1), v.clone())).collect()
}
