//! `qflab`: command-line front end to the exact Lie algebra toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.

mod document;
mod report;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qflab_core::catalog::{claimed_weights, extract_constraints, verify_claimed_weights};
use qflab_core::derivations::{derivation_space, diagonal_derivations};
use qflab_core::gradation::{gr, lower_central_series, type_from_filtration};
use qflab_core::isomorphy::{classify_gr, fingerprint, eliminate_cn_parameters};
use qflab_core::{generate, parse_rational, Algebra, Assignment, Classification, Error, Family, FamilySpec, Rational, Reading};

use document::AlgebraDocument;

#[derive(Parser)]
#[command(name = "qflab", version, about = "Exact computations on filiform and quasi-filiform nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Family name, e.g. Lnr, QsumC, Ank.
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Comma-separated rational values, e.g. 1,-1/2,3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the bracket table of a catalog entry as a JSON document.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Jacobi residuals of a document, symbolic in its parameters.
    Jacobi { file: PathBuf },
    /// Lower central series and type vector.
    Series { file: PathBuf },
    /// Associated graded algebra of the lower central filtration.
    Gr {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Derivation algebra and diagonal derivations.
    Derivations { file: PathBuf },
    /// Dimension of the diagonal derivations in the document's basis.
    Rank { file: PathBuf },
    /// Fingerprint and graded class.
    Classify { file: PathBuf },
    /// Polynomial conditions on alpha for the family to be a Lie algebra.
    Constraints {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Eliminate the parameters of C_n and compare with Q_n.
    IsoCn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<String>,
    },
    /// Check every parameter tuple of the listed families up to n-max.
    Sweep {
        /// Comma-separated family names, or `all`.
        #[arg(long)]
        families: String,
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Check the claimed diagonal form of a family on its brackets.
    Weights {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the tables as printed instead of the normalized encoding.
        #[arg(long)]
        printed: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonNilpotent { .. } | Error::SingularMatrix => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn parse_alpha(flag: &str, values: &[String]) -> Result<Vec<Rational>, Failure> {
    values
        .iter()
        .map(|v| parse_rational(v).map_err(|e| Failure::Usage(format!("{flag}: {e}"))))
        .collect()
}

impl SpecArgs {
    fn spec(&self) -> Result<FamilySpec, Failure> {
        let family: Family = self.family.parse().map_err(|e: Error| Failure::Usage(format!("<family>: {e}")))?;
        let spec = FamilySpec { family, n: self.n, r: self.r, k: self.k, l: self.l, alpha: None };
        let spec = match &self.alpha {
            Some(v) => spec.with_alpha(parse_alpha("--alpha", v)?),
            None => spec,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn load(path: &Path) -> Result<(AlgebraDocument, Algebra), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc = AlgebraDocument::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let a = doc.to_algebra().map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok((doc, a))
}

/// A document whose coefficients are all constants.
fn load_concrete(path: &Path) -> Result<(AlgebraDocument, Algebra), Failure> {
    let (doc, a) = load(path)?;
    let symbolic = a.constants().values().flat_map(|t| t.values()).any(|c| !c.is_constant());
    if symbolic {
        return Err(Failure::Usage(format!(
            "{}: coefficients depend on parameters [{}]; generate the document with --alpha",
            path.display(),
            a.params().names().join(", ")
        )));
    }
    Ok((doc, a))
}

fn emit_document(doc: &AlgebraDocument, output: Option<&Path>) -> Result<(), Failure> {
    let text = doc.to_json();
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("-o {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Outcome {
    let none = Assignment::new();
    match command {
        Command::Gen { spec, output } => {
            let spec = spec.spec()?;
            let a = generate(&spec)?;
            emit_document(&AlgebraDocument::from_algebra(&a, Some(spec.to_string())), output.as_deref())?;
            Ok(true)
        }
        Command::Jacobi { file } => {
            let (_, a) = load(&file)?;
            let r = a.jacobi_check();
            report::print(&report::jacobi(&a, &r));
            Ok(r.is_empty())
        }
        Command::Series { file } => {
            let (_, a) = load_concrete(&file)?;
            let f = lower_central_series(&a, &none)?;
            let t = type_from_filtration(&f);
            report::print(&json!({
                "lower_central_series": report::filtration(&f),
                "type": t.type_vector.0,
                "nilindex": t.nilindex,
                "filiform": t.filiform,
                "quasi_filiform": t.quasi_filiform,
                "r": t.r,
            }));
            Ok(true)
        }
        Command::Gr { file, output } => {
            let (doc, a) = load_concrete(&file)?;
            let g = gr(&a, &none)?;
            let metadata = doc.metadata.map(|m| format!("gr {m}"));
            emit_document(&AlgebraDocument::from_algebra(&g.algebra, metadata), output.as_deref())?;
            Ok(true)
        }
        Command::Derivations { file } => {
            let (_, a) = load_concrete(&file)?;
            let space = derivation_space(&a, &none)?;
            let diagonal = diagonal_derivations(&a, &none)?;
            report::print(&report::derivations(&space, &diagonal));
            Ok(true)
        }
        Command::Rank { file } => {
            let (_, a) = load_concrete(&file)?;
            println!("{}", diagonal_derivations(&a, &none)?.dim);
            Ok(true)
        }
        Command::Classify { file } => {
            let (_, a) = load_concrete(&file)?;
            let f = fingerprint(&a, &none)?;
            let (class, candidates) = match classify_gr(&a, &none)? {
                Classification::Classified(s) => (Some(s.to_string()), vec![s.to_string()]),
                Classification::Unclassified { candidates } => (None, candidates.iter().map(ToString::to_string).collect()),
            };
            let ok = class.is_some();
            report::print(&json!({ "fingerprint": report::fingerprint(&f), "gr_class": class, "candidates": candidates }));
            Ok(ok)
        }
        Command::Constraints { spec } => {
            let spec = spec.spec()?.symbolic();
            let c = extract_constraints(&spec)?;
            let point = c.find_point();
            report::print(&json!({
                "family": spec.to_string(),
                "params": c.params.names(),
                "generators": c.generators.iter().map(|g| g.display(&c.params).to_string()).collect::<Vec<_>>(),
                "vanishes_at_origin": c.vanishes_at_origin(),
                "sample_point": point.as_deref().map(report::vector),
            }));
            Ok(true)
        }
        Command::IsoCn { n, alpha } => {
            let alphas = parse_alpha("--alpha", &alpha)?;
            let t = eliminate_cn_parameters(n, &alphas)?;
            let q = generate(&FamilySpec::new(Family::Q, n))?;
            let equal = t.image == q;
            let verdict = format!("{} Q_{n}", if equal { "EQUAL" } else { "DIFFERENT" });
            report::print(&json!({
                "source": serde_json::to_value(AlgebraDocument::from_algebra(&t.source, None)).expect("documents serialize"),
                "stages": t.stages.iter().map(report::matrix).collect::<Vec<_>>(),
                "total": report::matrix(&t.total),
                "verdict": verdict,
            }));
            Ok(equal)
        }
        Command::Sweep { families, n_max } => {
            let list = sweep::parse_families(&families).map_err(|e| Failure::Usage(format!("--families: {e}")))?;
            let cap = match std::env::var("QFLAB_NMAX") {
                Ok(v) => v.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("QFLAB_NMAX: `{v}` is not an integer")))?,
                Err(_) => usize::MAX,
            };
            let r = sweep::sweep(&list, n_max.min(cap))?;
            report::print(&r.document);
            Ok(r.passed)
        }
        Command::Weights { spec, printed } => {
            let spec = spec.spec()?.symbolic();
            let reading = if printed { Reading::Printed } else { Reading::Normalized };
            claimed_weights(&spec, reading)?;
            let audit = verify_claimed_weights(&spec, reading)?;
            let space = qflab_core::catalog::weight_space();
            let violations: Vec<Value> = audit
                .violations
                .iter()
                .map(|v| json!({ "i": v.i, "j": v.j, "k": v.k, "defect": v.defect.display(&space).to_string() }))
                .collect();
            report::print(&json!({
                "family": spec.to_string(),
                "reading": if printed { "printed" } else { "normalized" },
                "claim": audit.claim.display(),
                "passed": audit.passed(),
                "violations": violations,
            }));
            Ok(audit.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
