use super::build::{generate_reading, Reading};
use super::spec::{Family, FamilySpec};
use crate::derivations::{weight_violations, WeightViolation};
use crate::error::{Error, Result};
use crate::exact::{int, rat, ParamSpace, Poly, Rational};

/// The eigenvalue names used by claimed diagonal forms. `lambda_last` is the
/// free eigenvalue of the line in a direct sum with a one-dimensional ideal.
pub fn weight_space() -> ParamSpace {
    ParamSpace::new(["lambda0", "lambda1", "lambda_last"])
}

/// A diagonal form `diag(w_0, ..., w_{n-1})` claimed for a family, with each
/// `w_i` a polynomial in the eigenvalue names of `space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClaim {
    pub spec: FamilySpec,
    pub reading: Reading,
    pub space: ParamSpace,
    pub weights: Vec<Poly>,
}

impl WeightClaim {
    pub fn display(&self) -> String {
        let parts: Vec<String> = self.weights.iter().map(|w| w.display(&self.space).to_string()).collect();
        format!("diag({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAudit {
    pub claim: WeightClaim,
    pub violations: Vec<WeightViolation>,
}

impl WeightAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lambda0() -> Poly {
    Poly::var(0)
}

fn lambda1() -> Poly {
    Poly::var(1)
}

/// `a * lambda0 + m * lambda1`.
fn form(a: Rational, m: i64) -> Poly {
    &lambda0().scale(&a) + &lambda1().scale(&int(m))
}

fn n0(a: Rational) -> Poly {
    lambda0().scale(&a)
}

fn z(x: usize) -> Rational {
    int(x as i64)
}

/// `lambda0, lambda1, lambda0 + lambda1, ...` up to index `last`.
fn filiform_head(last: usize) -> Vec<Poly> {
    let mut w = vec![lambda0()];
    w.extend((1..=last).map(|i| form(z(i) - int(1), 1)));
    w
}

/// `lambda0, s lambda0, (s+1) lambda0, ...` up to index `last`.
fn graded_head(s: Rational, last: usize) -> Vec<Poly> {
    let mut w = vec![lambda0()];
    w.extend((1..=last).map(|i| n0(&s + z(i) - int(1))));
    w
}

fn l_weights(n: usize) -> Vec<Poly> {
    filiform_head(n - 1)
}

fn a_weights(n: usize, k: usize) -> Vec<Poly> {
    graded_head(z(k), n - 1)
}

fn q_weights(n: usize) -> Vec<Poly> {
    let mut w = filiform_head(n - 2);
    w.push(form(z(n) - int(3), 2));
    w
}

fn b_weights(n: usize, k: usize) -> Vec<Poly> {
    let mut w = graded_head(z(k), n - 2);
    w.push(n0(z(n + 2 * k) - int(3)));
    w
}

fn with(mut w: Vec<Poly>, extra: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    w.extend(extra);
    w
}

fn claimed(spec: &FamilySpec, reading: Reading) -> Result<(ParamSpace, Vec<Poly>)> {
    let (n, r, k, l) = (spec.n, spec.r_value(), spec.k_value(), spec.l_value());
    let last = Poly::var(2);
    let shift = n0(z(l));
    let printed = reading == Reading::Printed;
    let half = rat(1, 2);
    use Family::*;
    let w = match spec.family {
        L => l_weights(n),
        Q => q_weights(n),
        Ank => a_weights(n, k),
        Bnk => b_weights(n, k),
        Cn => return Err(Error::NoClaimedWeights(spec.to_string())),
        LsumC => with(l_weights(n - 1), [last]),
        AsumC => with(a_weights(n - 1, k), [last]),
        LshiftC => with(l_weights(n - 1), [shift]),
        AshiftC => with(a_weights(n - 1, k), [shift]),
        QsumC => with(q_weights(n - 1), [last]),
        BsumC => with(b_weights(n - 1, k), [last]),
        QshiftaC => with(q_weights(n - 1), [shift]),
        BshiftaC => with(b_weights(n - 1, k), [shift]),
        QshiftbC => {
            let beta = rat(l as i64 - n as i64 + 5, 2);
            let mut w = with(
                graded_head(beta.clone(), n - 3),
                [n0(z(n) - int(4) + int(2) * &beta), n0(z(n) - int(5) + int(2) * &beta)],
            );
            if printed {
                let space = ParamSpace::new(["lambda0", "lambda1", "lambda_last", "k"]);
                w[2] = &(&Poly::var(3) * &lambda0()) + &lambda0();
                return Ok((space, w));
            }
            w
        }
        QshiftcC => {
            let mut w = with(q_weights(n - 1), [form(z(n) - int(5), 2)]);
            if printed {
                w[n - 3] = (&lambda0() * &lambda1()).scale(&(z(n) - int(4)));
            }
            w
        }
        BshiftcC => with(b_weights(n - 1, k), [n0(z(n + 2 * k) - int(5))]),
        Lnr => with(filiform_head(n - 2), [form(z(r) - int(2), 2)]),
        Cnrk => with(graded_head(z(k), n - 2), [n0(z(r + 2 * k) - int(2))]),
        Dnrk => with(graded_head(z(k) + &half, n - 2), [n0(z(r + 2 * k) - int(1))]),
        Qnr => with(filiform_head(n - 3), [form(z(n) - int(4), 2), form(z(r) - int(2), 2)]),
        Enrk => with(graded_head(z(k), n - 3), [n0(z(n + 2 * k) - int(4)), n0(z(r + 2 * k) - int(2))]),
        Fnrk => with(graded_head(z(k) + &half, n - 3), [n0(z(n + 2 * k) - int(3)), n0(z(r + 2 * k) - int(1))]),
        Tn4 => with(filiform_head(n - 4), [form(z(n) - int(5), 2), form(z(n) - int(4), 2), form(z(n) - int(6), 2)]),
        Gnk => with(
            graded_head(z(k), n - 4),
            [n0(z(n + 2 * k) - int(5)), n0(z(n + 2 * k) - int(4)), n0(z(n + 2 * k) - int(6))],
        ),
        Tn3 => with(filiform_head(n - 3), [form(z(n) - int(4), 2), form(z(n) - int(5), 2)]),
        Hnk => with(graded_head(z(k), n - 3), [n0(z(n + 2 * k) - int(4)), n0(z(n + 2 * k) - int(5))]),
        E951 | E952 | E953 => [1, 1, 2, 3, 4, 5, 6, 7, 5].map(|c| n0(int(c))).to_vec(),
        E73 => [1, 1, 2, 3, 4, 5, 3].map(|c| n0(int(c))).to_vec(),
    };
    Ok((weight_space(), w))
}

/// The diagonal form claimed for `spec` in its catalog basis.
pub fn claimed_weights(spec: &FamilySpec, reading: Reading) -> Result<WeightClaim> {
    spec.validate()?;
    let (space, weights) = claimed(spec, reading)?;
    debug_assert_eq!(weights.len(), spec.n);
    Ok(WeightClaim { spec: spec.symbolic(), reading, space, weights })
}

/// Checks the claimed form against every bracket of the symbolic family
/// member, both under the same reading.
pub fn verify_claimed_weights(spec: &FamilySpec, reading: Reading) -> Result<WeightAudit> {
    let claim = claimed_weights(spec, reading)?;
    let a = generate_reading(&claim.spec, reading)?;
    let violations = weight_violations(&a, &claim.weights);
    Ok(WeightAudit { claim, violations })
}
