//! Batch verification over every parameter tuple of a list of families.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use qflab_core::catalog::{extract_constraints, verify_claimed_weights};
use qflab_core::derivations::rank_in_basis;
use qflab_core::isomorphy::classify_gr;
use qflab_core::{generate, int, Algebra, Assignment, Classification, Error, Family, FamilySpec, Reading, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Status {
    Valid(Algebra),
    JacobiFails,
    NoRationalPoint,
}

/// Verdicts for one tuple; `None` means the check does not apply.
#[derive(Clone, Debug)]
struct TupleResult {
    spec: FamilySpec,
    status: Status,
    rank: Option<std::result::Result<(), String>>,
    gr: Option<std::result::Result<(), String>>,
    weights: Option<std::result::Result<(), String>>,
}

fn sample(spec: &FamilySpec) -> Result<(FamilySpec, Status)> {
    if !spec.family.is_parametric() {
        let a = generate(spec)?;
        let status = if a.jacobi_check().is_empty() { Status::Valid(a) } else { Status::JacobiFails };
        return Ok((spec.clone(), status));
    }
    match extract_constraints(spec)?.find_point() {
        None => Ok((spec.clone(), Status::NoRationalPoint)),
        Some(point) => {
            let spec = spec.clone().with_alpha(point);
            let a = generate(&spec)?;
            let status = if a.jacobi_check().is_empty() { Status::Valid(a) } else { Status::JacobiFails };
            Ok((spec, status))
        }
    }
}

/// The item a zero parameter point turns the algebra into, if any.
fn degenerate(spec: &FamilySpec, a: &Algebra) -> Option<FamilySpec> {
    let alpha = spec.alpha.as_ref()?;
    if alpha.is_empty() || alpha.iter().any(|x| *x != int(0)) {
        return None;
    }
    let target = spec.reduction_at_zero()?;
    (generate(&target).ok()? == *a).then_some(target)
}

fn check(spec: &FamilySpec) -> Result<TupleResult> {
    let (spec, status) = sample(spec)?;
    let none = Assignment::new();
    let weights = match verify_claimed_weights(&spec, Reading::Normalized) {
        Ok(audit) if audit.passed() => Some(Ok(())),
        Ok(audit) => Some(Err(format!("{spec}: {} non-additive brackets", audit.violations.len()))),
        Err(Error::NoClaimedWeights(_)) => None,
        Err(e) => return Err(e),
    };
    let (mut rank, mut gr) = (None, None);
    if let Status::Valid(a) = &status {
        let reduced = degenerate(&spec, a);
        let want = reduced.as_ref().map_or(spec.family, |t| t.family).claimed_rank();
        if let Some(want) = want {
            let got = rank_in_basis(a, &none)?;
            rank = Some(if got == want { Ok(()) } else { Err(format!("{spec} has rank {got}, expected {want}")) });
        }
        let expected = spec.family.graded_class().spec_for(spec.n, spec.r);
        gr = Some(match classify_gr(a, &none)? {
            Classification::Classified(c) if c == expected => Ok(()),
            Classification::Classified(c) => Err(format!("gr({spec}) is {c}, expected {expected}")),
            Classification::Unclassified { candidates } => {
                let names: Vec<String> = candidates.iter().map(ToString::to_string).collect();
                Err(format!("gr({spec}) is one of [{}], expected {expected}", names.join(", ")))
            }
        });
    }
    Ok(TupleResult { spec, status, rank, gr, weights })
}

#[derive(Default)]
struct Cell {
    tuples: usize,
    valid: usize,
    jacobi_failures: usize,
    no_rational_point: usize,
    rank_checked: usize,
    rank_mismatches: usize,
    gr_checked: usize,
    gr_mismatches: usize,
    weights_checked: usize,
    weight_failures: usize,
    failures: Vec<String>,
}

impl Cell {
    fn add(&mut self, t: &TupleResult) {
        self.tuples += 1;
        match t.status {
            Status::Valid(_) => self.valid += 1,
            Status::JacobiFails => {
                self.jacobi_failures += 1;
                self.failures.push(format!("{}: Jacobi identity fails", t.spec));
            }
            Status::NoRationalPoint => self.no_rational_point += 1,
        }
        let tally = |v: &Option<std::result::Result<(), String>>, checked: &mut usize, bad: &mut usize, out: &mut Vec<String>| {
            if let Some(v) = v {
                *checked += 1;
                if let Err(e) = v {
                    *bad += 1;
                    out.push(e.clone());
                }
            }
        };
        tally(&t.rank, &mut self.rank_checked, &mut self.rank_mismatches, &mut self.failures);
        tally(&t.gr, &mut self.gr_checked, &mut self.gr_mismatches, &mut self.failures);
        tally(&t.weights, &mut self.weights_checked, &mut self.weight_failures, &mut self.failures);
    }

    fn failed(&self) -> usize {
        self.jacobi_failures + self.rank_mismatches + self.gr_mismatches + self.weight_failures
    }
}

pub struct SweepReport {
    pub document: Value,
    pub passed: bool,
}

pub fn parse_families(list: &str) -> Result<Vec<Family>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Family::ALL.to_vec());
    }
    let mut out: Vec<Family> = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let f: Family = name.parse()?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

pub fn sweep(families: &[Family], n_max: usize) -> Result<SweepReport> {
    let specs: Vec<FamilySpec> = families.iter().flat_map(|&f| FamilySpec::enumerate(f, n_max)).collect();
    let results = specs.par_iter().map(check).collect::<Result<Vec<_>>>()?;
    let mut cells: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    for t in &results {
        let order = families.iter().position(|&f| f == t.spec.family).unwrap_or(usize::MAX);
        cells.entry((order, t.spec.n)).or_default().add(t);
    }
    let mut rows = Vec::new();
    let mut table = vec![format!(
        "{:<10} {:>3} {:>6} {:>6} {:>8} {:>8} {:>10} {:>10} {:>10}",
        "family", "n", "tuples", "valid", "jacobi", "no_point", "rank", "gr", "weights"
    )];
    let mut failed = 0;
    for ((order, n), c) in &cells {
        let family = families[*order];
        failed += c.failed();
        let frac = |bad: usize, checked: usize| format!("{}/{}", checked - bad, checked);
        table.push(format!(
            "{:<10} {:>3} {:>6} {:>6} {:>8} {:>8} {:>10} {:>10} {:>10}",
            family.name(),
            n,
            c.tuples,
            c.valid,
            c.jacobi_failures,
            c.no_rational_point,
            frac(c.rank_mismatches, c.rank_checked),
            frac(c.gr_mismatches, c.gr_checked),
            frac(c.weight_failures, c.weights_checked),
        ));
        rows.push(json!({
            "family": family.name(),
            "n": n,
            "tuples": c.tuples,
            "valid": c.valid,
            "jacobi_failures": c.jacobi_failures,
            "no_rational_point": c.no_rational_point,
            "rank": { "checked": c.rank_checked, "mismatches": c.rank_mismatches },
            "gr": { "checked": c.gr_checked, "mismatches": c.gr_mismatches },
            "weights": { "checked": c.weights_checked, "failures": c.weight_failures },
            "failures": c.failures,
        }));
    }
    let document = json!({
        "families": families.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "n_max": n_max,
        "tuples": results.len(),
        "failures": failed,
        "cells": rows,
        "table": table,
    });
    Ok(SweepReport { document, passed: failed == 0 })
}
