use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};

/// Every family the catalog can generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Graded filiform chain `L_n`.
    L,
    /// Graded filiform `Q_n`, `n` even.
    Q,
    /// Filiform `A_n^k(alpha)` over `L_n`.
    Ank,
    /// Filiform `B_n^k(alpha)` over `Q_n`.
    Bnk,
    /// `C_n(alpha)`, isomorphic to `Q_n`.
    Cn,
    /// `L_{n-1} ⊕ C`.
    LsumC,
    /// `Q_{n-1} ⊕ C`.
    QsumC,
    /// `L_{n,r}`.
    Lnr,
    /// `Q_{n,r}`.
    Qnr,
    /// `T_{n,n-4}`.
    Tn4,
    /// `T_{n,n-3}`.
    Tn3,
    E951,
    E952,
    E953,
    E73,
    /// `A_{n-1}^k ⊕ C`.
    AsumC,
    /// `L_{n-1}` extended by a shift of `l`.
    LshiftC,
    /// `A_{n-1}^k` extended by a shift of `l`.
    AshiftC,
    /// `B_{n-1}^k ⊕ C`.
    BsumC,
    /// `Q_{n-1}` extended by a shift of `l`.
    QshiftaC,
    /// `B_{n-1}^k` extended by a shift of `l`.
    BshiftaC,
    /// `Q_{n-1}` extended by a shift of `l` with `[Y_0, Y_{n-1}] = Y_{n-2}`.
    QshiftbC,
    /// `Q_{n-1} ⊕ C` with `[Y_0, Y_{n-1}] = Y_{n-2}`.
    QshiftcC,
    /// `B_{n-1}^k ⊕ C` with `[Y_0, Y_{n-1}] = Y_{n-2}`.
    BshiftcC,
    Cnrk,
    Dnrk,
    Enrk,
    Fnrk,
    Gnk,
    Hnk,
}

/// Which integer parameters a family takes besides `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub r: bool,
    pub k: bool,
    pub l: bool,
    pub alpha: bool,
}

/// The filiform and quasi-filiform graded classes families are filed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradedClass {
    L,
    Q,
    LsumC,
    QsumC,
    Lnr,
    Qnr,
    Tn4,
    Tn3,
    E951,
    E952,
    E953,
    E73,
}

impl Family {
    pub const ALL: [Family; 30] = [
        Family::L,
        Family::Q,
        Family::Ank,
        Family::Bnk,
        Family::Cn,
        Family::LsumC,
        Family::QsumC,
        Family::Lnr,
        Family::Qnr,
        Family::Tn4,
        Family::Tn3,
        Family::E951,
        Family::E952,
        Family::E953,
        Family::E73,
        Family::AsumC,
        Family::LshiftC,
        Family::AshiftC,
        Family::BsumC,
        Family::QshiftaC,
        Family::BshiftaC,
        Family::QshiftbC,
        Family::QshiftcC,
        Family::BshiftcC,
        Family::Cnrk,
        Family::Dnrk,
        Family::Enrk,
        Family::Fnrk,
        Family::Gnk,
        Family::Hnk,
    ];

    /// Naturally graded quasi-filiform families.
    pub const GRADED_QUASI_FILIFORM: [Family; 10] = [
        Family::LsumC,
        Family::QsumC,
        Family::Lnr,
        Family::Qnr,
        Family::Tn4,
        Family::Tn3,
        Family::E951,
        Family::E952,
        Family::E953,
        Family::E73,
    ];

    /// Quasi-filiform families admitting a nonzero diagonal derivation.
    pub const NONZERO_RANK: [Family; 25] = [
        Family::LsumC,
        Family::AsumC,
        Family::LshiftC,
        Family::AshiftC,
        Family::QsumC,
        Family::BsumC,
        Family::QshiftaC,
        Family::BshiftaC,
        Family::QshiftbC,
        Family::QshiftcC,
        Family::BshiftcC,
        Family::Lnr,
        Family::Cnrk,
        Family::Dnrk,
        Family::Qnr,
        Family::Enrk,
        Family::Fnrk,
        Family::Tn4,
        Family::Gnk,
        Family::Tn3,
        Family::Hnk,
        Family::E951,
        Family::E952,
        Family::E953,
        Family::E73,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::Q => "Q",
            Family::Ank => "Ank",
            Family::Bnk => "Bnk",
            Family::Cn => "Cn",
            Family::LsumC => "LsumC",
            Family::QsumC => "QsumC",
            Family::Lnr => "Lnr",
            Family::Qnr => "Qnr",
            Family::Tn4 => "Tn4",
            Family::Tn3 => "Tn3",
            Family::E951 => "E951",
            Family::E952 => "E952",
            Family::E953 => "E953",
            Family::E73 => "E73",
            Family::AsumC => "AsumC",
            Family::LshiftC => "LshiftC",
            Family::AshiftC => "AshiftC",
            Family::BsumC => "BsumC",
            Family::QshiftaC => "QshiftaC",
            Family::BshiftaC => "BshiftaC",
            Family::QshiftbC => "QshiftbC",
            Family::QshiftcC => "QshiftcC",
            Family::BshiftcC => "BshiftcC",
            Family::Cnrk => "Cnrk",
            Family::Dnrk => "Dnrk",
            Family::Enrk => "Enrk",
            Family::Fnrk => "Fnrk",
            Family::Gnk => "Gnk",
            Family::Hnk => "Hnk",
        }
    }

    pub fn shape(self) -> Shape {
        use Family::*;
        let r = matches!(self, Lnr | Qnr | Cnrk | Dnrk | Enrk | Fnrk);
        let k = matches!(
            self,
            Ank | Bnk | AsumC | AshiftC | BsumC | BshiftaC | BshiftcC | Cnrk | Dnrk | Enrk | Fnrk | Gnk | Hnk
        );
        let l = matches!(self, LshiftC | AshiftC | QshiftaC | BshiftaC | QshiftbC);
        Shape { r, k, l, alpha: self.is_parametric() }
    }

    pub fn is_parametric(self) -> bool {
        use Family::*;
        matches!(self, Ank | Bnk | Cn | AsumC | AshiftC | BsumC | BshiftaC | BshiftcC | Cnrk | Enrk | Gnk | Hnk)
    }

    pub fn is_filiform(self) -> bool {
        matches!(self, Family::L | Family::Q | Family::Ank | Family::Bnk | Family::Cn)
    }

    /// Fixed dimension of the sporadic families.
    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            Family::E951 | Family::E952 | Family::E953 => Some(9),
            Family::E73 => Some(7),
            _ => None,
        }
    }

    /// Rank stated for the family's generic members; `None` for the
    /// filiform families and `C_n`.
    pub fn claimed_rank(self) -> Option<usize> {
        use Family::*;
        match self {
            LsumC | QsumC => Some(3),
            Lnr | Qnr | Tn4 | Tn3 | AsumC | LshiftC | BsumC | QshiftaC | QshiftcC | BshiftcC => Some(2),
            E951 | E952 | E953 | E73 | AshiftC | BshiftaC | QshiftbC | Cnrk | Dnrk | Enrk | Fnrk | Gnk | Hnk => Some(1),
            L | Q | Ank | Bnk | Cn => None,
        }
    }

    pub fn graded_class(self) -> GradedClass {
        use Family::*;
        match self {
            L | Ank => GradedClass::L,
            Q | Bnk | Cn => GradedClass::Q,
            LsumC | AsumC | LshiftC | AshiftC => GradedClass::LsumC,
            QsumC | BsumC | QshiftaC | BshiftaC | QshiftbC | QshiftcC | BshiftcC => GradedClass::QsumC,
            Lnr | Cnrk | Dnrk => GradedClass::Lnr,
            Qnr | Enrk | Fnrk => GradedClass::Qnr,
            Tn4 | Gnk => GradedClass::Tn4,
            Tn3 | Hnk => GradedClass::Tn3,
            E951 => GradedClass::E951,
            E952 => GradedClass::E952,
            E953 => GradedClass::E953,
            E73 => GradedClass::E73,
        }
    }
}

impl GradedClass {
    pub fn family(self) -> Family {
        match self {
            GradedClass::L => Family::L,
            GradedClass::Q => Family::Q,
            GradedClass::LsumC => Family::LsumC,
            GradedClass::QsumC => Family::QsumC,
            GradedClass::Lnr => Family::Lnr,
            GradedClass::Qnr => Family::Qnr,
            GradedClass::Tn4 => Family::Tn4,
            GradedClass::Tn3 => Family::Tn3,
            GradedClass::E951 => Family::E951,
            GradedClass::E952 => Family::E952,
            GradedClass::E953 => Family::E953,
            GradedClass::E73 => Family::E73,
        }
    }

    /// The class member of dimension `n` (with the same `r` where relevant).
    pub fn spec_for(self, n: usize, r: Option<usize>) -> FamilySpec {
        let mut s = FamilySpec::new(self.family(), n);
        if self.family().shape().r {
            s.r = r;
        }
        s
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family together with its integer parameters and, optionally, concrete
/// values for its `alpha` parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub alpha: Option<Vec<Rational>>,
}

fn odd(x: usize) -> bool {
    x % 2 == 1
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, r: None, k: None, l: None, alpha: None }
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_l(mut self, l: usize) -> Self {
        self.l = Some(l);
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<Rational>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    /// The same spec with its alpha values dropped.
    pub fn symbolic(&self) -> Self {
        FamilySpec { alpha: None, ..self.clone() }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidParameters { family: self.to_string(), reason: reason.into() }
    }

    pub(crate) fn r_value(&self) -> usize {
        self.r.unwrap_or(0)
    }

    pub(crate) fn k_value(&self) -> usize {
        self.k.unwrap_or(0)
    }

    pub(crate) fn l_value(&self) -> usize {
        self.l.unwrap_or(0)
    }

    /// The non-parametric item this spec becomes when every alpha vanishes.
    pub fn reduction_at_zero(&self) -> Option<FamilySpec> {
        use Family::*;
        let n = self.n;
        Some(match self.family {
            AsumC => FamilySpec::new(LsumC, n),
            AshiftC => FamilySpec::new(LshiftC, n).with_l(self.l?),
            BsumC => FamilySpec::new(QsumC, n),
            BshiftaC => FamilySpec::new(QshiftaC, n).with_l(self.l?),
            BshiftcC => FamilySpec::new(QshiftcC, n),
            Cnrk => FamilySpec::new(Lnr, n).with_r(self.r?),
            Enrk => FamilySpec::new(Qnr, n).with_r(self.r?),
            Gnk => FamilySpec::new(Tn4, n),
            Hnk => FamilySpec::new(Tn3, n),
            _ => return None,
        })
    }

    /// Number of `alpha` parameters, or zero for non-parametric families.
    pub fn alpha_count(&self) -> usize {
        let (n, k) = (self.n, self.k_value());
        use Family::*;
        let t = match self.family {
            Ank => (n - k + 1) / 2,
            Bnk | AsumC | AshiftC | Cnrk => (n - k) / 2,
            BsumC | BshiftaC | BshiftcC | Enrk | Hnk => (n - k - 1) / 2,
            Gnk => (n - k - 2) / 2,
            Cn => return n / 2 - 2,
            _ => return 0,
        };
        t.saturating_sub(1)
    }

    /// Checks the parameter ranges each family is defined for.
    pub fn validate(&self) -> Result<()> {
        let shape = self.family.shape();
        for (name, present, wanted) in [("r", self.r.is_some(), shape.r), ("k", self.k.is_some(), shape.k), ("l", self.l.is_some(), shape.l)] {
            if present != wanted {
                let what = if wanted { "is required" } else { "is not a parameter of this family" };
                return Err(self.invalid(format!("`{name}` {what}")));
            }
        }
        if self.alpha.is_some() && !shape.alpha {
            return Err(self.invalid("the family has no alpha parameters"));
        }
        let (n, r, k, l) = (self.n, self.r_value(), self.k_value(), self.l_value());
        let check = |ok: bool, reason: &str| if ok { Ok(()) } else { Err(self.invalid(reason)) };
        use Family::*;
        match self.family {
            L => check(n >= 3, "n >= 3")?,
            Q | Cn => check(n >= 6 && n % 2 == 0, "n even, n >= 6")?,
            Ank => check(n >= 5 && (2..=n - 3).contains(&k), "2 <= k <= n-3")?,
            Bnk => {
                check(n >= 6 && n % 2 == 0, "n even, n >= 6")?;
                check((2..=n - 3).contains(&k), "2 <= k <= n-3")?
            }
            LsumC => check(n >= 4, "n >= 4")?,
            QsumC | QshiftcC => check(n >= 7 && odd(n), "n odd, n >= 7")?,
            Lnr | Cnrk | Dnrk => {
                check(n >= 5, "n >= 5")?;
                check(odd(r) && r >= 3 && r < 2 * ((n - 1) / 2), "r odd, 3 <= r <= 2[(n-1)/2]-1")?;
                match self.family {
                    Cnrk => check((2..=n - 4).contains(&k), "2 <= k <= n-4")?,
                    Dnrk => check(k >= 1 && n >= r + 2 && 2 * k <= n - r - 2, "1 <= k <= [(n-r-2)/2]")?,
                    _ => {}
                }
            }
            Qnr | Enrk | Fnrk => {
                check(n >= 7 && odd(n), "n odd, n >= 7")?;
                check(odd(r) && r >= 3 && r + 4 <= n, "r odd, 3 <= r <= n-4")?;
                match self.family {
                    Enrk => check((2..=n - 5).contains(&k), "2 <= k <= n-5")?,
                    Fnrk => check(k >= 1 && n >= r + 4 && 2 * k <= n - r - 4, "1 <= k <= [(n-r-4)/2]")?,
                    _ => {}
                }
            }
            Tn4 | Gnk => {
                check(n >= 7 && odd(n), "n odd, n >= 7")?;
                if self.family == Gnk {
                    check(n >= 8 && (2..=n - 6).contains(&k), "2 <= k <= n-6")?
                }
            }
            Tn3 | Hnk => {
                check(n >= 6 && n % 2 == 0, "n even, n >= 6")?;
                if self.family == Hnk {
                    check((2..=n - 5).contains(&k), "2 <= k <= n-5")?
                }
            }
            E951 | E952 | E953 | E73 => check(Some(n) == self.family.fixed_dim(), "fixed dimension")?,
            AsumC => check(n >= 6 && (2..=n - 4).contains(&k), "2 <= k <= n-4")?,
            LshiftC => check(n >= 5 && (2..=n - 3).contains(&l), "2 <= l <= n-3")?,
            AshiftC => {
                check(n >= 6 && (2..=n - 4).contains(&k), "2 <= k <= n-4")?;
                check((2..=n - 3).contains(&l), "2 <= l <= n-3")?
            }
            BsumC | BshiftcC => {
                check(n >= 7 && odd(n), "n odd, n >= 7")?;
                check((2..=n - 5).contains(&k), "2 <= k <= n-5")?
            }
            QshiftaC | QshiftbC => {
                check(n >= 7 && odd(n), "n odd, n >= 7")?;
                check((2..=n - 4).contains(&l), "2 <= l <= n-4")?
            }
            BshiftaC => {
                check(n >= 7 && odd(n), "n odd, n >= 7")?;
                check((2..=n - 5).contains(&k), "2 <= k <= n-5")?;
                check((2..=n - 4).contains(&l), "2 <= l <= n-4")?
            }
        }
        if let Some(alpha) = &self.alpha {
            if alpha.len() != self.alpha_count() {
                return Err(self.invalid(format!("expected {} alpha values, found {}", self.alpha_count(), alpha.len())));
            }
        }
        Ok(())
    }

    /// All valid parameter tuples of `family` with `n <= n_max`, in
    /// increasing `(n, r, k, l)` order.
    pub fn enumerate(family: Family, n_max: usize) -> Vec<FamilySpec> {
        let shape = family.shape();
        let mut out = Vec::new();
        let opt = |on: bool, hi: usize| if on { (0..=hi).map(Some).collect::<Vec<_>>() } else { vec![None] };
        for n in 3..=n_max {
            for r in opt(shape.r, n) {
                for k in opt(shape.k, n) {
                    for l in opt(shape.l, n) {
                        let s = FamilySpec { family, n, r, k, l, alpha: None };
                        if s.validate().is_ok() {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}", self.family, self.n)?;
        for (name, v) in [("r", self.r), ("k", self.k), ("l", self.l)] {
            if let Some(v) = v {
                write!(f, ",{name}={v}")?;
            }
        }
        if let Some(alpha) = &self.alpha {
            let parts: Vec<String> = alpha.iter().map(ToString::to_string).collect();
            write!(f, ",alpha=[{}]", parts.join(","))?;
        }
        f.write_str(")")
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the `Display` form, e.g. `Ank(n=8,k=3,alpha=[1,0])`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = |why: &str| Error::Parse(format!("family spec `{s}`: {why}"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(|| bad("missing `(`"))?;
        let body = rest.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let family: Family = name.trim().parse()?;
        let mut spec = FamilySpec::new(family, 0);
        let mut seen_n = false;
        let mut rest = body;
        while !rest.trim().is_empty() {
            let (key, after) = rest.split_once('=').ok_or_else(|| bad("expected `key=value`"))?;
            let key = key.trim().trim_start_matches(',').trim();
            let (value, tail) = if after.trim_start().starts_with('[') {
                let close = after.find(']').ok_or_else(|| bad("unclosed `[`"))?;
                (&after[..=close], &after[close + 1..])
            } else {
                match after.find(',') {
                    Some(i) => (&after[..i], &after[i..]),
                    None => (after, ""),
                }
            };
            let int = || value.trim().parse::<usize>().map_err(|_| bad(&format!("`{key}` must be a nonnegative integer")));
            match key {
                "n" => {
                    spec.n = int()?;
                    seen_n = true;
                }
                "r" => spec.r = Some(int()?),
                "k" => spec.k = Some(int()?),
                "l" => spec.l = Some(int()?),
                "alpha" => {
                    let inner = value.trim().trim_start_matches('[').trim_end_matches(']');
                    let values = inner
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    spec.alpha = Some(values);
                }
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
            rest = tail;
        }
        if !seen_n {
            return Err(bad("`n` is required"));
        }
        Ok(spec)
    }
}
