//! JSON renderings of core results. Every number that can be fractional is
//! a `"p/q"` string.

use serde_json::{json, Value};

use qflab_core::derivations::{DerivationSpace, DiagonalDerivations};
use qflab_core::gradation::Filtration;
use qflab_core::isomorphy::Fingerprint;
use qflab_core::{Algebra, JacobiReport, Matrix, Rational};

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

pub fn jacobi(a: &Algebra, report: &JacobiReport) -> Value {
    let residuals: Vec<Value> = report
        .residuals
        .iter()
        .map(|(&(i, j, k), terms)| {
            let terms: Vec<Value> = terms
                .iter()
                .map(|(t, c)| json!({ "k": t, "coeff": c.display(a.params()).to_string() }))
                .collect();
            json!({ "i": i, "j": j, "k": k, "terms": terms })
        })
        .collect();
    json!({ "valid": report.is_empty(), "residuals": residuals })
}

pub fn filtration(f: &Filtration) -> Value {
    let ideals: Vec<Value> = f.ideals.iter().map(|b| Value::Array(b.iter().map(|v| vector(v)).collect())).collect();
    json!({ "dims": f.dims(), "nilindex": f.nilindex(), "bases": ideals })
}

pub fn derivations(space: &DerivationSpace, diagonal: &DiagonalDerivations) -> Value {
    json!({
        "dim": space.dim,
        "basis": space.basis.iter().map(matrix).collect::<Vec<_>>(),
        "diagonal": {
            "dim": diagonal.dim,
            "basis": diagonal.basis.iter().map(|v| vector(v)).collect::<Vec<_>>(),
        },
        "rank_in_basis": diagonal.dim,
        "rank_note": "dimension of diagonal derivations in this basis; a lower bound for the rank",
    })
}

pub fn fingerprint(f: &Fingerprint) -> Value {
    json!({
        "dim": f.dim,
        "type": f.type_vector.0,
        "lcs_dims": f.lcs_dims,
        "center_dim": f.center_dim,
        "derived_dims": f.derived_dims,
        "centralizer_dim": f.centralizer_dim,
        "lcs_centralizer_dims": f.lcs_centralizer_dims,
        "der_dim": f.der_dim,
        "der_trace_rank": f.der_trace_rank,
        "rank_in_basis": f.rank_in_basis,
    })
}

pub fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values always serialize"));
}
