//! Command-line front end: subcommand dispatch and report assembly.
//!
//! Exit codes: 0 success, 2 usage error, 3 input parse error, 4 violated
//! mathematical precondition. Reports go to stdout, diagnostics to
//! stderr.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::canonical::{canonical_bases_with, synthesize_pair_with, CanonicalForm};
use crate::error::Error;
use crate::inertia::inertia_split;
use crate::matfile::{parse_matrix, MatrixFile, ParseError};
use crate::principal::{
    dual_principal_values_with, principal_decomposition_with, principal_spectrum_with,
    PrincipalSpectrum,
};
use crate::report::{input_echo, matrix_value, vector_value, Report};
use crate::subspace::{angle_between, project_gram, Subspace};
use crate::tol::Tolerances;

#[derive(Parser)]
#[command(
    name = "subspace-angles",
    about = "Angles, principal values, canonical forms and inertia splits for subspace pairs",
    version
)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Principal-value clustering gap (default 1e-7).
    #[arg(long, global = true, value_name = "EPS")]
    tol_cluster: Option<f64>,
    /// Absolute numerical-rank threshold (default: data-driven).
    #[arg(long, global = true, value_name = "EPS")]
    tol_rank: Option<f64>,
    /// Orthonormality residual bound (default 1e-10).
    #[arg(long, global = true, value_name = "EPS")]
    tol_orth: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(c) = self.tol_cluster {
            tol.cluster = c;
        }
        if let Some(o) = self.tol_orth {
            tol.orth = o;
        }
        tol.rank = self.tol_rank;
        tol
    }
}

#[derive(Subcommand)]
enum Command {
    /// Angle between the subspaces spanned by the rows of two matrices.
    Angle {
        /// Spanning rows of the first subspace (CSV or JSON, `-` = stdin).
        #[arg(long)]
        a: String,
        /// Spanning rows of the second subspace.
        #[arg(long)]
        b: String,
        /// Report the angle in degrees instead of radians.
        #[arg(long)]
        degrees: bool,
        /// Also report the obtuse representative pi - phi.
        #[arg(long)]
        both_angles: bool,
    },
    /// Principal values with multiplicities.
    Principal {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Paired decomposition into principal subspaces.
    Decompose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Canonical matrix and the four canonical bases.
    Canonical {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Construct a pair with prescribed squared principal values.
    Synthesize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Comma-separated squared cosines in [0,1], p of them.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        values: Vec<f64>,
    },
    /// Spectra of a pair and of its complement pair.
    Dual {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Orthogonal projection of a vector onto a subspace.
    Project {
        /// Spanning rows of the subspace (must be linearly independent).
        #[arg(long)]
        a: String,
        /// Comma-separated coordinates of the vector.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        vector: Vec<f64>,
    },
    /// Restricted inertia indices of a symmetric matrix.
    Inertia {
        /// The symmetric matrix.
        #[arg(long)]
        a: String,
        /// Spanning rows of the restriction subspace.
        #[arg(long)]
        l: String,
    },
}

enum CliError {
    Parse(ParseError),
    Math(Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

/// Parses arguments, runs the command, prints the report to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    let tol = cli.tol.build();
    match execute(cli.command, &tol) {
        Ok(report) => {
            println!("{}", report.to_json());
            0
        }
        Err(CliError::Parse(e)) => {
            eprintln!("parse error: {e}");
            3
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            4
        }
    }
}

fn load_subspace(path: &str, tol: &Tolerances) -> Result<(MatrixFile, Subspace), CliError> {
    let file = parse_matrix(path)?;
    let ambient = file.parsed.cols();
    let subspace = Subspace::with_tolerances(ambient, file.parsed.clone(), tol)?;
    Ok((file, subspace))
}

fn execute(command: Command, tol: &Tolerances) -> Result<Report, CliError> {
    match command {
        Command::Angle {
            a,
            b,
            degrees,
            both_angles,
        } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let (fb, sb) = load_subspace(&b, tol)?;
            let result = angle_between(&sa, &sb)?;
            let (phi, obtuse, unit) = if degrees {
                (
                    result.phi.to_degrees(),
                    180.0 - result.phi.to_degrees(),
                    "degrees",
                )
            } else {
                (result.phi, std::f64::consts::PI - result.phi, "radians")
            };
            let mut payload = Map::new();
            payload.insert("cos_phi".into(), Value::from(result.cos_phi));
            payload.insert("det_mmt".into(), Value::from(result.det_mmt));
            payload.insert("gamma1".into(), Value::from(result.gamma1));
            payload.insert("gamma2".into(), Value::from(result.gamma2));
            payload.insert("phi".into(), Value::from(phi));
            payload.insert("unit".into(), Value::String(unit.into()));
            if both_angles {
                payload.insert("phi_obtuse".into(), Value::from(obtuse));
            }
            Ok(Report::new(
                "angle",
                json!({"a": input_echo(&fa), "b": input_echo(&fb)}),
                Value::Object(payload),
                tol,
            ))
        }
        Command::Principal { a, b } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let (fb, sb) = load_subspace(&b, tol)?;
            let spectrum = principal_spectrum_with(&sa, &sb, tol)?;
            Ok(Report::new(
                "principal",
                json!({"a": input_echo(&fa), "b": input_echo(&fb)}),
                spectrum_value(&spectrum),
                tol,
            ))
        }
        Command::Decompose { a, b } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let (fb, sb) = load_subspace(&b, tol)?;
            let decomposition = principal_decomposition_with(&sa, &sb, tol)?;
            let pairs: Vec<Value> = decomposition
                .pairs
                .iter()
                .map(|pair| {
                    json!({
                        "value": pair.value,
                        "multiplicity": pair.sigma1_part.dim() as u64,
                        "sigma1_basis": matrix_value(pair.sigma1_part.ortho_basis()),
                        "sigma2_basis": matrix_value(pair.sigma2_part.ortho_basis()),
                    })
                })
                .collect();
            let remainder = decomposition
                .remainder
                .as_ref()
                .map_or(Value::Null, |s| matrix_value(s.ortho_basis()));
            Ok(Report::new(
                "decompose",
                json!({"a": input_echo(&fa), "b": input_echo(&fb)}),
                json!({
                    "spectrum": spectrum_value(&decomposition.spectrum),
                    "pairs": pairs,
                    "remainder": remainder,
                }),
                tol,
            ))
        }
        Command::Canonical { a, b } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let (fb, sb) = load_subspace(&b, tol)?;
            let form = canonical_bases_with(&sa, &sb, tol)?;
            Ok(Report::new(
                "canonical",
                json!({"a": input_echo(&fa), "b": input_echo(&fb)}),
                form_value(&form),
                tol,
            ))
        }
        Command::Synthesize { n, p, q, values } => {
            let (s1, s2) = synthesize_pair_with(n, p, q, &values, tol)?;
            Ok(Report::new(
                "synthesize",
                json!({
                    "n": n as u64,
                    "p": p as u64,
                    "q": q as u64,
                    "values": vector_value(&values),
                }),
                json!({
                    "sigma1_basis": matrix_value(s1.ortho_basis()),
                    "sigma2_basis": matrix_value(s2.ortho_basis()),
                }),
                tol,
            ))
        }
        Command::Dual { a, b } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let (fb, sb) = load_subspace(&b, tol)?;
            let spectra = dual_principal_values_with(&sa, &sb, tol)?;
            Ok(Report::new(
                "dual",
                json!({"a": input_echo(&fa), "b": input_echo(&fb)}),
                json!({
                    "pair": spectrum_value(&spectra.pair),
                    "dual": spectrum_value(&spectra.dual),
                    "unit_mult_shift": spectra.unit_mult_shift,
                }),
                tol,
            ))
        }
        Command::Project { a, vector } => {
            let (fa, sa) = load_subspace(&a, tol)?;
            let projected = project_gram(&vector, &sa)?;
            Ok(Report::new(
                "project",
                json!({"a": input_echo(&fa), "vector": vector_value(&vector)}),
                json!({"projection": vector_value(&projected)}),
                tol,
            ))
        }
        Command::Inertia { a, l } => {
            let fa = parse_matrix(&a)?;
            let (fl, sl) = load_subspace(&l, tol)?;
            let report = inertia_split(&fa.parsed, &sl)?;
            Ok(Report::new(
                "inertia",
                json!({"a": input_echo(&fa), "l": input_echo(&fl)}),
                json!({
                    "ind_full": report.ind_full as u64,
                    "ind_restricted": report.ind_restricted as u64,
                    "ind_complement": report.ind_complement as u64,
                    "additivity_holds": report.additivity_holds,
                }),
                tol,
            ))
        }
    }
}

fn spectrum_value(spectrum: &PrincipalSpectrum) -> Value {
    json!({
        "values": vector_value(spectrum.values()),
        "multiplicities": spectrum.multiplicities().iter().map(|&m| m as u64).collect::<Vec<_>>(),
        "total": spectrum.total() as u64,
    })
}

fn form_value(form: &CanonicalForm) -> Value {
    let spec = &form.spec;
    json!({
        "matrix_p": matrix_value(&form.matrix_p),
        "basis_sigma": matrix_value(&form.basis_sigma),
        "basis_sigma_star": matrix_value(&form.basis_sigma_star),
        "basis_pi": matrix_value(&form.basis_pi),
        "basis_pi_star": matrix_value(&form.basis_pi_star),
        "spec": {
            "n": spec.n() as u64,
            "p": spec.p() as u64,
            "q": spec.q() as u64,
            "r0": spec.r0() as u64,
            "r0_prime": spec.r0_prime() as u64,
            "r_last": spec.r_last() as u64,
            "cosines": vector_value(spec.cosines()),
            "multiplicities": spec.multiplicities().iter().map(|&m| m as u64).collect::<Vec<_>>(),
            "block_sizes": spec.block_sizes().iter().map(|&b| b as u64).collect::<Vec<_>>(),
        },
        "swapped": form.swapped,
        "dualized": form.dualized,
    })
}
