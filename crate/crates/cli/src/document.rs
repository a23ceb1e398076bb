//! The JSON algebra file format.

use serde::{Deserialize, Serialize};

use qflab_core::{Algebra, Error, ParamSpace, Poly, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    /// Polynomial in the document's parameters, canonical term order.
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
}

impl AlgebraDocument {
    pub fn from_algebra(a: &Algebra, metadata: Option<String>) -> Self {
        let brackets = a
            .constants()
            .iter()
            .map(|(&(i, j), terms)| BracketEntry {
                i,
                j,
                terms: terms.iter().map(|(&k, c)| TermEntry { k, coeff: c.display(a.params()).to_string() }).collect(),
            })
            .collect();
        AlgebraDocument { dim: a.dim(), params: a.params().names().to_vec(), brackets, metadata }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let space = ParamSpace::new(self.params.iter().cloned());
        if space.len() != self.params.len() {
            return Err(Error::Parse("duplicate parameter names".into()));
        }
        let mut a = Algebra::new(self.dim, space.clone());
        for b in &self.brackets {
            if b.i >= b.j {
                return Err(Error::Parse(format!("bracket ({}, {}) must have i < j", b.i, b.j)));
            }
            for t in &b.terms {
                let c = Poly::parse(&t.coeff, &space)?;
                a.try_add(b.i, b.j, t.k, c)?;
            }
        }
        Ok(a)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents always serialize");
        format!("{}\n", serde_json::to_string_pretty(&value).expect("values always serialize"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
