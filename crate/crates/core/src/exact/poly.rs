//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`Poly`] stores only nonzero terms in a `BTreeMap` keyed by [`Monomial`],
//! whose ordering is graded lexicographic. Two equal polynomials therefore
//! always have identical representations, and `==` is structural.
//!
//! Variables are plain indices. Their names live in a [`ParamSpace`] owned by
//! whoever holds the polynomials (typically an algebra), which is also what
//! formatting and parsing go through.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector indexed by variable; trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial(exps)
    }

    fn without(&self, var: usize) -> Monomial {
        let mut exps = self.0.clone();
        if var < exps.len() {
            exps[var] = 0;
        }
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered, immutable list of parameter names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamSpace(Arc<[String]>);

impl ParamSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        ParamSpace(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn empty() -> Self {
        ParamSpace::default()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    /// Merges two universes. They must either be identical or share no
    /// names. Returns the merged space and the reindexing for `other`.
    pub fn merge(&self, other: &ParamSpace) -> Result<(ParamSpace, Vec<usize>)> {
        if self == other {
            return Ok((self.clone(), (0..other.len()).collect()));
        }
        if let Some(shared) = other.0.iter().find(|n| self.0.contains(n)) {
            return Err(Error::ParameterUniverse(format!(
                "`{shared}` occurs in both universes, which are not identical"
            )));
        }
        let names: Vec<String> = self.0.iter().chain(other.0.iter()).cloned().collect();
        let offset = self.len();
        Ok((ParamSpace::new(names), (0..other.len()).map(|i| i + offset).collect()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, _)| i)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    /// Evaluates with `value(var)`; the error carries the first variable
    /// without a value.
    pub fn eval_with(&self, value: impl Fn(usize) -> Option<Rational>) -> Result<Rational, usize> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (var, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = value(var).ok_or(var)?;
                term *= num_traits::pow(v, e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluates at a point given by parameter names.
    pub fn eval(&self, space: &ParamSpace, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        self.eval_with(|var| point.get(space.name(var)).cloned())
            .map_err(|var| Error::MissingParameter(space.name(var).to_string()))
    }

    /// Replaces every occurrence of `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Poly::monomial(m.without(var), c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Partially evaluates the variables that `value` knows.
    pub fn partial_eval(&self, value: impl Fn(usize) -> Option<Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (var, e) in exps.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(v) = value(var) {
                    coeff *= num_traits::pow(v, *e as usize);
                    *e = 0;
                }
            }
            out.add_term(Monomial::from_exponents(exps), coeff);
        }
        out
    }

    /// Renames variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut exps = Vec::new();
            for (var, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let target = map[var];
                if exps.len() <= target {
                    exps.resize(target + 1, 0);
                }
                exps[target] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Splits `self = coeff * x + rest` when `x` occurs at most linearly.
    pub fn split_linear(&self, var: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(var) > 1 {
            return None;
        }
        let mut coeff = Poly::zero();
        let mut rest = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(var) == 1 {
                coeff.add_term(m.without(var), c.clone());
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        Some((coeff, rest))
    }

    /// Coefficients of a univariate polynomial in `var`, lowest degree first.
    pub fn univariate_coefficients(&self, var: usize) -> Option<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.without(var) != Monomial::one() {
                return None;
            }
            coeffs[m.exponent(var) as usize] += c;
        }
        Some(coeffs)
    }

    pub fn display<'a>(&'a self, space: &'a ParamSpace) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, space }
    }

    /// Parses the format produced by [`Poly::display`]: a sum of terms, each
    /// a product of rational literals and `name` or `name^e` factors.
    pub fn parse(s: &str, space: &ParamSpace) -> Result<Poly> {
        PolyParser::new(s, space).parse()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    space: &'a ParamSpace,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (var, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.space.name(var).to_string()),
                    _ => factors.push(format!("{}^{}", self.space.name(var), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    space: &'a ParamSpace,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str, space: &'a ParamSpace) -> Self {
        PolyParser { src, chars: src.chars().collect(), pos: 0, space }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("polynomial `{}`: {what} at offset {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        let mut total = Poly::zero();
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            let mut saw_sign = false;
            while let Some(c @ ('+' | '-')) = self.peek() {
                if c == '-' {
                    sign = -sign;
                }
                saw_sign = true;
                self.pos += 1;
            }
            if !first && !saw_sign {
                return Err(self.err("expected `+` or `-`"));
            }
            total += &self.term()?.scale(&sign);
            first = false;
            if self.peek().is_none() {
                return Ok(total);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut p = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            p = &p * &self.factor()?;
        }
        Ok(p)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_digit() || *c == '/')
                {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                Ok(Poly::constant(parse_rational(&lit)?))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let var = self
                    .space
                    .index_of(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}`")))?;
                let mut exp = 1usize;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    let lit: String = self.chars[start..self.pos].iter().collect();
                    exp = lit.parse().map_err(|_| self.err("bad exponent"))?;
                }
                let mut exps = vec![0; var + 1];
                exps[var] = exp as u32;
                Ok(Poly::monomial(Monomial::from_exponents(exps), Rational::one()))
            }
            _ => Err(self.err("expected a number or a parameter name")),
        }
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn space() -> ParamSpace {
        ParamSpace::new(["alpha1", "alpha2", "alpha3"])
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, &space()).unwrap()
    }

    #[test]
    fn distributivity_example() {
        let a1 = Poly::var(0);
        let a2 = Poly::var(1);
        assert_eq!(&(&a1 + &a2) * &a1, p("alpha1^2 + alpha1*alpha2"));
    }

    #[test]
    fn self_difference_is_zero() {
        let q = p("3*alpha1^2 - 1/2*alpha2 + 7");
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn constant_arithmetic() {
        let s = &Poly::constant(rat(1, 2)) + &Poly::constant(rat(1, 3));
        assert_eq!(s.as_constant(), Some(rat(5, 6)));
    }

    #[test]
    fn graded_lex_order_puts_degree_first() {
        let q = p("alpha2^2 + alpha1 + alpha1*alpha2 + 1");
        let order: Vec<String> = q
            .terms()
            .rev()
            .map(|(m, c)| Poly::monomial(m.clone(), c.clone()).display(&space()).to_string())
            .collect();
        assert_eq!(order, ["alpha1*alpha2", "alpha2^2", "alpha1", "1"]);
    }

    #[test]
    fn display_parse_round_trip() {
        let s = "-2*alpha1*alpha3 + 3*alpha2^2 - alpha2*alpha3 + 1";
        assert_eq!(p(s).display(&space()).to_string(), s);
        assert_eq!(Poly::zero().display(&space()).to_string(), "0");
        assert_eq!(p("-1/2").display(&space()).to_string(), "-1/2");
    }

    #[test]
    fn eval_substitutes() {
        let sp = ParamSpace::new(["alpha1"]);
        let q = Poly::parse("alpha1^2 + 2", &sp).unwrap();
        let point = BTreeMap::from([("alpha1".to_string(), int(3))]);
        assert_eq!(q.eval(&sp, &point).unwrap(), int(11));
        assert_eq!(Poly::zero().eval(&sp, &BTreeMap::new()).unwrap(), int(0));
    }

    #[test]
    fn eval_reports_missing_parameter() {
        let err = p("alpha1 + alpha2").eval(&space(), &BTreeMap::from([("alpha1".into(), int(1))]));
        assert_eq!(err, Err(Error::MissingParameter("alpha2".into())));
    }

    #[test]
    fn substitution_and_split() {
        let q = p("alpha1^2*alpha2 + alpha3");
        let r = q.substitute(0, &p("alpha2 + 1"));
        assert_eq!(r, p("alpha2^3 + 2*alpha2^2 + alpha2 + alpha3"));
        let (c, rest) = p("2*alpha1*alpha2 + alpha1 - alpha3").split_linear(0).unwrap();
        assert_eq!(c, p("2*alpha2 + 1"));
        assert_eq!(rest, p("-alpha3"));
        assert!(p("alpha1^2").split_linear(0).is_none());
    }

    #[test]
    fn merge_universes() {
        let a = ParamSpace::new(["x"]);
        let b = ParamSpace::new(["y", "z"]);
        let (m, map) = a.merge(&b).unwrap();
        assert_eq!(m.names(), ["x", "y", "z"]);
        assert_eq!(map, vec![1, 2]);
        assert!(a.merge(&ParamSpace::new(["x", "y"])).is_err());
        assert_eq!(a.merge(&a).unwrap().0, a);
    }

    fn arb_poly() -> impl proptest::strategy::Strategy<Value = Poly> {
        use proptest::prelude::*;
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..=5, 1i64..=4), 0..5).prop_map(|terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, c), p, q)| (Monomial::from_exponents(vec![a, b, c]), rat(p, q))),
            )
        })
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            proptest::prop_assert_eq!(&a + &b, &b + &a);
            proptest::prop_assert_eq!(&a * &b, &b * &a);
            proptest::prop_assert!((&(&a + &b) - &b - a.clone()).is_zero());
        }

        #[test]
        fn display_parses_back(a in arb_poly()) {
            let text = a.display(&space()).to_string();
            proptest::prop_assert_eq!(Poly::parse(&text, &space()).unwrap(), a);
        }
    }
}
