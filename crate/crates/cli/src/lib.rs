//! `sos-cert certify | verify | inspect`.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 hypothesis violated,
//! 3 not non-negative (or invalid certificate), 4 precision exhausted.

use clap::{Args, Parser, Subcommand};
use sos_cert::certificate::{self, verify, Verdict};
use sos_cert::factor::factor_over_q_with;
use sos_cert::factor::FactorOptions;
use sos_cert::lifting::{certify_nonnegative, CertifyError};
use sos_cert::ratpoly::{gcd, squarefree_decompose, sturm_real_root_count};
use sos_cert::{parse_poly, CertifyOptions, Poly, Rational};
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sos-cert", version, about = "Exact SOS certificates of g >= 0 on the real roots of f")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Produce a certificate g = sum w_i h_i^2 + q f.
    Certify(CertifyArgs),
    /// Check a certificate file exactly.
    Verify {
        /// Certificate file written by `certify`.
        #[arg(long)]
        cert: std::path::PathBuf,
    },
    /// Report gcd, factorizations and real-root counts.
    Inspect {
        #[arg(long)]
        f: String,
        /// Also report gcd(f, g) and the coprimality check.
        #[arg(long)]
        g: Option<String>,
    },
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Modulus polynomial in x, e.g. "x*(x^3-2)^2".
    #[arg(long)]
    f: String,
    /// Polynomial to certify non-negative at the real roots of f.
    #[arg(long)]
    g: String,
    /// Write the JSON certificate here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Initial working precision in bits; doubled on failure.
    #[arg(long, default_value_t = 106)]
    precision_bits: usize,
    /// Largest number of decimal digits used when rounding.
    #[arg(long, default_value_t = 64)]
    digits_cap: u32,
    /// Precision doublings before giving up.
    #[arg(long, default_value_t = 3)]
    max_retries: u32,
    /// Rational constant greater than 1 scaling the complex-pair weights.
    #[arg(long, default_value = "2")]
    lambda_factor: String,
    /// Emit the JSON certificate (default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Print the identity in human-readable form.
    #[arg(long)]
    pretty: bool,
}

/// Runs the command line `args` (program name first); `seed` is the value of
/// `SOS_CERT_SEED`, if set.
pub fn run<I, T>(args: I, seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_INPUT;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.cmd {
        Cmd::Certify(a) => certify(a, seed, out, err),
        Cmd::Verify { cert } => verify_file(&cert, out),
        Cmd::Inspect { f, g } => inspect(&f, g.as_deref(), seed, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn parse_arg(name: &str, text: &str) -> Result<Poly, String> {
    parse_poly(text).map_err(|e| format!("--{name} \"{text}\": {e}"))
}

fn parse_seed(seed: Option<&str>) -> Result<u64, String> {
    match seed {
        None => Ok(FactorOptions::default().seed),
        Some(s) => s.trim().parse().map_err(|_| format!("SOS_CERT_SEED \"{s}\" is not an unsigned integer")),
    }
}

fn certify(a: CertifyArgs, seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let f = parse_arg("f", &a.f)?;
    let g = parse_arg("g", &a.g)?;
    let lambda = parse_arg("lambda-factor", &a.lambda_factor)?;
    let lambda_factor = match lambda.deg() {
        None | Some(0) if lambda.coeff(0) > Rational::from_integer(1.into()) => lambda.coeff(0),
        _ => return Err("--lambda-factor must be a rational constant greater than 1".into()),
    };
    let opts = CertifyOptions {
        precision_bits: a.precision_bits,
        digits_cap: a.digits_cap,
        max_retries: a.max_retries,
        lambda_factor,
        seed: parse_seed(seed)?,
    };
    let start = Instant::now();
    let cert = match certify_nonnegative(&f, &g, &opts) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return Ok(match e {
                CertifyError::HypothesisViolated { .. } => EXIT_HYPOTHESIS,
                CertifyError::NotNonnegative { .. } => EXIT_NEGATIVE,
                CertifyError::PrecisionExhausted { .. } => EXIT_PRECISION,
                _ => EXIT_INPUT,
            });
        }
    };
    let elapsed = start.elapsed();
    let text = certificate::serialize(&cert);
    match &a.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None if !a.pretty => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
        None => {}
    }
    if a.pretty {
        out.write_all(cert.to_pretty().as_bytes()).map_err(|e| e.to_string())?;
    }
    let _ = writeln!(
        err,
        "certified: {} terms, max coefficient {} bits, {:.3} ms",
        cert.len(),
        cert.max_coeff_bits(),
        elapsed.as_secs_f64() * 1e3
    );
    Ok(EXIT_OK)
}

fn verify_file(path: &std::path::Path, out: &mut dyn Write) -> Result<i32, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cert = certificate::deserialize(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match verify(&cert) {
        Verdict::Valid => {
            let _ = writeln!(out, "valid");
            Ok(EXIT_OK)
        }
        Verdict::Invalid(reason) => {
            let _ = writeln!(out, "invalid: {reason}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn factor_table(p: &Poly, seed: u64, out: &mut dyn Write) -> Result<(), String> {
    if p.is_constant() {
        let _ = writeln!(out, "  (constant)");
        return Ok(());
    }
    let opts = FactorOptions { seed, ..FactorOptions::default() };
    let fact = factor_over_q_with(p, &opts).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "  unit {}", fact.unit);
    for (q, e) in &fact.factors {
        let real = sturm_real_root_count(q).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "  ({}, {e})  real roots: {real}", q.to_pretty());
    }
    Ok(())
}

fn inspect(f: &str, g: Option<&str>, seed: Option<&str>, out: &mut dyn Write) -> Result<i32, String> {
    let f = parse_arg("f", f)?;
    if f.is_constant() {
        return Err("--f must have positive degree".into());
    }
    let seed = parse_seed(seed)?;
    let sqf = squarefree_decompose(&f).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "f = {}", f.to_pretty());
    let parts: Vec<String> = sqf
        .parts
        .iter()
        .map(|(p, m)| format!("({}, {m})", p.to_pretty()))
        .collect();
    let _ = writeln!(out, "squarefree: unit {} {}", sqf.unit, parts.join(" "));
    let _ = writeln!(out, "irreducible factors of f:");
    factor_table(&f, seed, out)?;
    if let Some(g) = g {
        let g = parse_arg("g", g)?;
        let _ = writeln!(out, "g = {}", g.to_pretty());
        if g.is_zero() {
            let _ = writeln!(out, "hypothesis: OK (g = 0)");
            return Ok(EXIT_OK);
        }
        let d = gcd(&f, &g).map_err(|e| e.to_string())?;
        let cof = f.exact_div(&d).map_err(|e| e.to_string())?.expect("gcd divides f");
        let _ = writeln!(out, "d = gcd(f, g) = {}", d.to_pretty());
        let _ = writeln!(out, "f/d = {}", cof.to_pretty());
        let _ = writeln!(out, "irreducible factors of f/d:");
        factor_table(&cof, seed, out)?;
        let ok = gcd(&d, &cof).map_err(|e| e.to_string())?.is_one();
        let _ = writeln!(out, "hypothesis: {}", if ok { "OK" } else { "VIOLATED" });
    }
    Ok(EXIT_OK)
}
