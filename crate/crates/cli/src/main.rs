//! `nonfg` — command-line front end for slope-bounded monomial subalgebras.
//!
//! Subcommands: `enumerate` (list family elements with exact slopes),
//! `membership` (decide and factor a target over a generator set),
//! `witness` (construct a non-generation certificate), `verify` (check a
//! certificate independently), and `poly` (test polynomials for subalgebra
//! membership). Human-readable output goes to standard output; the only
//! machine artifact is the certificate written via `--out`, which is
//! byte-reproducible for identical inputs.
//!
//! Exit codes: 0 affirmative, 1 negative verdict, 2 input error, 3 theorem
//! not applicable.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use nonfg_core::{
    construct_witness, construct_witness_from_generators, factorizations, fits_search_budget,
    in_subalgebra, member, parse_decimal, verify_certificate, Certificate, CertificateError,
    CoefficientRing, DeepCheck, ExponentPair, GeneratorSet, Integers, LambdaFamily, Modular,
    Monomial, SparsePoly,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "nonfg",
    version,
    about = "Exact membership and non-finite-generation certificates for monomial subalgebras of R[x,y]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first elements of a family's canonical enumeration with
    /// their exact slopes
    Enumerate {
        /// Family: "vertical", "fibonacci", or a path to a family JSON file
        #[arg(long)]
        family: String,
        /// How many elements to print
        #[arg(short = 'k', long = "count", default_value_t = 10)]
        count: usize,
    },
    /// Decide whether a target exponent pair is a sum of generators, and
    /// show factorization(s)
    Membership {
        /// Path to a generators JSON file: an array of ["a","b"] pairs
        #[arg(long)]
        gens: PathBuf,
        /// Target exponent pair as "A,B" (decimal integers)
        #[arg(long)]
        target: String,
        /// Enumerate all factorizations (up to --limit) instead of only the
        /// canonical one
        #[arg(long)]
        all: bool,
        /// Maximum number of factorizations listed with --all
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Construct a certificate that the given generators (or the generators
    /// extracted from the given polynomials) do not generate the family's
    /// whole subalgebra
    Witness {
        /// Family: "vertical", "fibonacci", or a path to a family JSON file
        #[arg(long)]
        family: String,
        /// Path to a generators JSON file
        #[arg(long, conflicts_with = "polys")]
        gens: Option<PathBuf>,
        /// Path to a polynomial file, one polynomial per line
        #[arg(long)]
        polys: Option<PathBuf>,
        /// Write the certificate JSON to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate file and report each check
    Verify {
        /// Path to a certificate JSON file
        #[arg(long)]
        cert: PathBuf,
        /// Additionally re-run the membership search on the witness
        #[arg(long)]
        deep: bool,
    },
    /// Test whether polynomials lie in the family's subalgebra and list the
    /// generating monomials found
    Poly {
        /// Family: "vertical", "fibonacci", or a path to a family JSON file
        #[arg(long)]
        family: String,
        /// Path to a polynomial file, one polynomial per line
        #[arg(long)]
        poly: PathBuf,
        /// Work over the integers modulo this value instead of the integers
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
}

/// A command failure: message for standard error plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<CertificateError> for Failure {
    fn from(err: CertificateError) -> Failure {
        let code = match err {
            CertificateError::TheoremNotApplicable { .. } => EXIT_NOT_APPLICABLE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Enumerate { family, count } => cmd_enumerate(&family, count),
        Command::Membership {
            gens,
            target,
            all,
            limit,
        } => cmd_membership(&gens, &target, all, limit),
        Command::Witness {
            family,
            gens,
            polys,
            out,
        } => cmd_witness(&family, gens.as_deref(), polys.as_deref(), out.as_deref()),
        Command::Verify { cert, deep } => cmd_verify(&cert, deep),
        Command::Poly {
            family,
            poly,
            modulus,
        } => cmd_poly(&family, &poly, modulus.as_deref()),
    }
}

/// Resolves a family argument: the built-in names first, otherwise a path
/// to a family JSON file.
fn load_family(arg: &str) -> Result<LambdaFamily, Failure> {
    match arg {
        "vertical" => Ok(LambdaFamily::vertical()),
        "fibonacci" => Ok(LambdaFamily::fibonacci()),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read family file {path}: {e}")))?;
            LambdaFamily::from_json_str(&text)
                .map_err(|e| Failure::input(format!("invalid family file {path}: {e}")))
        }
    }
}

fn load_generators(path: &Path) -> Result<GeneratorSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::input(format!("cannot read generators file {}: {e}", path.display()))
    })?;
    GeneratorSet::from_json_str(&text).map_err(|e| {
        Failure::input(format!("invalid generators file {}: {e}", path.display()))
    })
}

/// Reads a polynomial file: one polynomial per line in `c*x^a*y^b + ...`
/// form, blank lines skipped. Returns (1-based line number, text) pairs.
fn load_poly_lines(path: &Path) -> Result<Vec<(usize, String)>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::input(format!("cannot read polynomial file {}: {e}", path.display()))
    })?;
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| (i + 1, line.to_owned()))
        .collect();
    if lines.is_empty() {
        return Err(Failure::input(format!(
            "polynomial file {} contains no polynomials",
            path.display()
        )));
    }
    Ok(lines)
}

fn parse_target(text: &str) -> Result<Monomial, Failure> {
    let (a, b) = text.split_once(',').ok_or_else(|| {
        Failure::input(format!("target must be \"A,B\" decimal integers, got {text:?}"))
    })?;
    let parse = |part: &str| {
        parse_decimal(part.trim()).map_err(|e| Failure::input(format!("invalid target {text:?}: {e}")))
    };
    Ok(Monomial::new(parse(a)?, parse(b)?))
}

fn cmd_enumerate(family: &str, count: usize) -> Result<u8, Failure> {
    let fam = load_family(family)?;
    for pair in fam.enumerate(count) {
        println!("{} slope={}", pair, pair.slope());
    }
    Ok(EXIT_OK)
}

fn cmd_membership(gens: &Path, target: &str, all: bool, limit: usize) -> Result<u8, Failure> {
    let gens = load_generators(gens)?;
    let target = parse_target(target)?;
    if !fits_search_budget(&gens, &target) {
        return Err(Failure::input(format!(
            "target {target} is too large for the membership search"
        )));
    }
    let found = if all {
        factorizations(&gens, &target, limit)
    } else {
        member(&gens, &target).into_iter().collect()
    };
    if found.is_empty() {
        println!("not-a-member");
        return Ok(EXIT_NEGATIVE);
    }
    println!("member");
    for factorization in &found {
        println!("{}", factorization.render(&gens));
    }
    Ok(EXIT_OK)
}

fn cmd_witness(
    family: &str,
    gens: Option<&Path>,
    polys: Option<&Path>,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let fam = load_family(family)?;
    let cert = match (gens, polys) {
        (Some(path), None) => {
            let generators = load_generators(path)?;
            construct_witness_from_generators(&fam, &generators)?
        }
        (None, Some(path)) => {
            let polys = load_poly_lines(path)?
                .into_iter()
                .map(|(line, text)| {
                    SparsePoly::parse(Integers, &text)
                        .map_err(|e| Failure::input(format!("line {line}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            construct_witness(&fam, &polys)?
        }
        _ => return Err(Failure::input("provide exactly one of --gens or --polys")),
    };
    println!("beta = {}", cert.beta());
    println!(
        "witness = {} at family index {}",
        cert.witness(),
        cert.witness_in_family_index()
    );
    if let Some(path) = out {
        fs::write(path, cert.to_json_pretty() + "\n").map_err(|e| {
            Failure::input(format!("cannot write certificate to {}: {e}", path.display()))
        })?;
        println!("certificate written to {}", path.display());
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cert: &Path, deep: bool) -> Result<u8, Failure> {
    let text = fs::read_to_string(cert).map_err(|e| {
        Failure::input(format!("cannot read certificate file {}: {e}", cert.display()))
    })?;
    let cert = Certificate::from_json(&text)?;
    let deep = if deep { DeepCheck::Run } else { DeepCheck::Skip };
    let report = verify_certificate(&cert, deep);
    for check in &report.checks {
        println!(
            "{}: {} ({})",
            check.name,
            if check.pass { "pass" } else { "fail" },
            check.detail
        );
    }
    if report.pass {
        println!("verdict: pass");
        Ok(EXIT_OK)
    } else {
        println!("verdict: fail");
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_poly(family: &str, poly: &Path, modulus: Option<&str>) -> Result<u8, Failure> {
    let fam = load_family(family)?;
    let lines = load_poly_lines(poly)?;
    match modulus {
        None => report_polys(Integers, &lines, &fam),
        Some(text) => {
            let m = parse_decimal(text.trim())
                .map_err(|e| Failure::input(format!("invalid modulus {text:?}: {e}")))?;
            let ring = Modular::new(m).map_err(|e| Failure::input(e.to_string()))?;
            report_polys(ring, &lines, &fam)
        }
    }
}

fn report_polys<R: CoefficientRing>(
    ring: R,
    lines: &[(usize, String)],
    fam: &LambdaFamily,
) -> Result<u8, Failure> {
    let mut all_inside = true;
    for (index, (line, text)) in lines.iter().enumerate() {
        let poly = SparsePoly::parse(ring.clone(), text)
            .map_err(|e| Failure::input(format!("line {line}: {e}")))?;
        let result = in_subalgebra(&poly, fam);
        if result.inside {
            println!("polynomial {}: inside", index + 1);
            println!("  M* = {}", render_monomial_set(&result.generating_monomials));
            for tf in &result.term_factorizations {
                println!("  term {} = {}", tf.term, render_parts(&tf.parts));
            }
        } else {
            all_inside = false;
            println!("polynomial {}: not inside", index + 1);
            for term in &result.failing_terms {
                println!("  obstruction term {term}");
            }
        }
    }
    Ok(if all_inside { EXIT_OK } else { EXIT_NEGATIVE })
}

fn render_monomial_set(pairs: &[ExponentPair]) -> String {
    let mut out = String::from("{");
    for (i, p) in pairs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{p}");
    }
    out.push('}');
    out
}

fn render_parts(parts: &[(ExponentPair, BigUint)]) -> String {
    if parts.is_empty() {
        return "(empty product)".to_owned();
    }
    parts
        .iter()
        .map(|(g, c)| format!("{c}*{g}"))
        .collect::<Vec<_>>()
        .join(" + ")
}
