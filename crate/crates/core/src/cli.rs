//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards its arguments and exit code.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codes::{CodeFile, CodeTuple, LinearCode};
use crate::cyclotomic::CycField;
use crate::enumerators::{self, EnumeratorKind};
use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;
use crate::polynomials::{MultiPoly, Registry};
use crate::transforms::{self, IdentityKind, Invariance, Report};
use crate::util::big_pow;
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "macwilliams", version, about = "Weight enumerators and MacWilliams-type identities for codes over Galois rings")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest number of codeword tuples to enumerate.
    #[arg(long, default_value_t = 1 << 24, global = true)]
    max_tuples: u64,
    /// Largest |R|^N scanned when computing a dual.
    #[arg(long, default_value_t = 1 << 24, global = true)]
    max_scan: u64,
    /// Largest variable registry.
    #[arg(long, default_value_t = crate::polynomials::DEFAULT_MAX_REGISTRY, global = true)]
    max_registry: usize,
    /// Largest intermediate term count in a staged transform.
    #[arg(long, default_value_t = 1 << 22, global = true)]
    max_terms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Hamming,
    Complete,
    Support,
    Exact,
    Rsupport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformArg {
    Hamming,
    Support,
    Complete,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Macwilliams,
    Wan,
    Cwrcs2,
    Britz,
    Exact,
    Hamw,
    Klove,
    Dps,
    PairDecomposition,
    Repetition,
    Corollary,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a weight enumerator of a code tuple.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        /// Tuple size; a single code is repeated m times.
        #[arg(short)]
        m: Option<usize>,
        /// Subspace dimension for rsupport.
        #[arg(short)]
        r: Option<usize>,
        /// Enumerate the tuple of duals, brute-forcing each dual.
        #[arg(long, conflicts_with = "via_transform_of_dual")]
        dual: bool,
        /// Enumerate the tuple of duals through the transform of the given codes.
        #[arg(long)]
        via_transform_of_dual: bool,
        /// Code files or built-in names (C1..C5, D1, D2).
        #[arg(required = true)]
        codes: Vec<String>,
    },
    /// Print a code file generating the dual code.
    Dual { code: String },
    /// Check an identity; exit 1 if it fails.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(short)]
        m: Option<usize>,
        /// Copies of R appended (repetition).
        #[arg(short, default_value_t = 0)]
        s: usize,
        /// Copies of the dual of R appended (repetition).
        #[arg(short, default_value_t = 0)]
        t: usize,
        /// The code R for repetition; defaults to the all-ones code.
        #[arg(long)]
        rep: Option<String>,
        #[arg(required = true)]
        codes: Vec<String>,
    },
    /// Apply a transform to a polynomial read from a file (`-` for stdin).
    Transform {
        #[arg(value_enum)]
        kind: TransformArg,
        /// Polynomial file, in canonical text or the JSON term list.
        input: String,
        /// Alphabet size for hamming/support (defaults to the ring size).
        #[arg(short, long)]
        q: Option<u64>,
        #[arg(short, default_value_t = 1)]
        m: usize,
        /// Ring names, one per tuple entry; a single ring is repeated m times.
        #[arg(long = "ring")]
        rings: Vec<String>,
        /// Code length, for support and exact.
        #[arg(short = 'n', long)]
        length: Option<usize>,
        /// Report whether q^(-Nm/2) W(X+(q^m-1)Y, X-Y) = W.
        #[arg(long)]
        check_invariance: bool,
        /// Report the divisibility conditions for realizability.
        #[arg(long)]
        check_divisibility: bool,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let limits = Limits {
        max_words: 1 << 16,
        max_scan: cli.config.max_scan,
        max_tuples: cli.config.max_tuples,
        max_registry: cli.config.max_registry,
        max_terms: cli.config.max_terms,
    };
    match execute(&cli, &limits, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap_exceeded() {
                EXIT_CAP
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("i/o: {e}"))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

/// A code file path, or a built-in name when no such file exists.
pub fn load_code(arg: &str, limits: &Limits) -> Result<LinearCode> {
    if !Path::new(arg).exists() {
        if let Ok(c) = LinearCode::named(arg, limits) {
            return Ok(c);
        }
    }
    CodeFile::parse(&read_input(arg)?)?.build(limits)
}

fn load_tuple(args: &[String], m: Option<usize>, limits: &Limits) -> Result<CodeTuple> {
    let codes = args.iter().map(|a| load_code(a, limits)).collect::<Result<Vec<_>>>()?;
    match (m, codes.len()) {
        (Some(m), 1) => CodeTuple::repeat(&codes[0], m),
        (Some(m), k) if m != k => Err(Error::Invalid(format!("-m {m} given with {k} codes"))),
        _ => CodeTuple::new(codes),
    }
}

fn poly_json(p: &MultiPoly) -> Result<Value> {
    let vars: Vec<String> = p.registry().keys().iter().map(ToString::to_string).collect();
    Ok(json!({ "variables": vars, "terms": p.to_json()?, "text": p.render()? }))
}

fn print_poly(p: &MultiPoly, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{}", p.render()?),
        Format::Json => writeln!(out, "{}", poly_json(p)?),
    }
    .map_err(io)
}

fn print_report(r: &Report, format: Format, out: &mut dyn Write) -> Result<i32> {
    match format {
        Format::Text => write!(out, "{r}"),
        Format::Json => writeln!(out, "{}", r.to_json()),
    }
    .map_err(io)?;
    Ok(if r.passed { EXIT_OK } else { EXIT_IDENTITY_FAILED })
}

fn execute(cli: &Cli, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let format = cli.config.format;
    match &cli.command {
        Command::Enumerate { kind, m, r, dual, via_transform_of_dual, codes } => {
            let tuple = load_tuple(codes, *m, limits)?;
            let mm = tuple.m();
            let kind = match kind {
                EnumKind::Hamming => EnumeratorKind::Hamming(mm),
                EnumKind::Complete => EnumeratorKind::Complete(mm),
                EnumKind::Support => EnumeratorKind::Support(mm),
                EnumKind::Exact => EnumeratorKind::Exact(mm),
                EnumKind::Rsupport => {
                    EnumeratorKind::RSupport(r.ok_or_else(|| Error::Invalid("rsupport needs -r".into()))?)
                }
            };
            let p = if *via_transform_of_dual {
                transforms::dual_enumerator_via_transform(kind, &tuple, limits)?
            } else if *dual {
                enumerators::enumerate(kind, &tuple.duals(limits)?, limits)?
            } else {
                enumerators::enumerate(kind, &tuple, limits)?
            };
            print_poly(&p, format, out)?;
            Ok(EXIT_OK)
        }
        Command::Dual { code } => {
            let c = load_code(code, limits)?;
            writeln!(out, "{}", c.dual(limits)?.to_file().to_json()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { theorem, m, s, t, rep, codes } => verify(*theorem, *m, *s, *t, rep.as_deref(), codes, limits, format, out),
        Command::Transform { kind, input, q, m, rings, length, check_invariance, check_divisibility } => {
            let rings = rings.iter().map(|r| GaloisRing::named(r)).collect::<Result<Vec<_>>>()?;
            let rings = if rings.len() == 1 && *m > 1 { vec![rings[0].clone(); *m] } else { rings };
            let q = match (q, rings.first()) {
                (Some(q), _) => Some(*q),
                (None, Some(r)) => Some(r.cardinality()),
                (None, None) => None,
            };
            let need_q = || q.ok_or_else(|| Error::Invalid("give -q or --ring".into()));
            let need_n = || length.ok_or_else(|| Error::Invalid("give -n/--length".into()));
            let need_rings = || {
                if rings.is_empty() {
                    Err(Error::Invalid("give --ring".into()))
                } else {
                    Ok(rings.clone())
                }
            };
            let reg: Arc<Registry> = match kind {
                TransformArg::Hamming => Registry::plain(),
                TransformArg::Support => Registry::positional(need_n()?, limits.max_registry)?,
                TransformArg::Complete => {
                    Registry::column_tuples(&need_rings()?.iter().map(GaloisRing::cardinality).collect::<Vec<_>>(), limits.max_registry)?
                }
                TransformArg::Exact => Registry::positional_tuples(
                    need_n()?,
                    &need_rings()?.iter().map(GaloisRing::cardinality).collect::<Vec<_>>(),
                    limits.max_registry,
                )?,
            };
            let text = read_input(input)?;
            let poly = parse_poly(&text, &reg)?;
            if *check_invariance || *check_divisibility {
                if *kind != TransformArg::Hamming {
                    return Err(Error::Invalid("realizability checks apply to hamming enumerators".into()));
                }
                let q = need_q()?;
                let mut code = EXIT_OK;
                if *check_invariance {
                    let inv = transforms::check_invariance(&poly, q, *m)?;
                    if inv == Invariance::NotInvariant {
                        code = EXIT_IDENTITY_FAILED;
                    }
                    emit_line(out, format, "invariance", &inv.to_string(), inv != Invariance::NotInvariant)?;
                }
                if *check_divisibility {
                    let d = transforms::check_divisibility(&poly, q, *m)?;
                    if !d.passed() {
                        code = EXIT_IDENTITY_FAILED;
                    }
                    emit_line(out, format, "divisibility", &d.to_string(), d.passed())?;
                }
                return Ok(code);
            }
            let result = match kind {
                TransformArg::Hamming => transforms::transform_hamming(&poly, need_q()?, *m)?,
                TransformArg::Support => transforms::transform_support(&poly, need_q()?, *m, limits)?,
                TransformArg::Complete => transforms::transform_complete(&poly, &need_rings()?, limits)?,
                TransformArg::Exact => transforms::transform_exact(&poly, &need_rings()?, need_n()?, limits)?,
            };
            match format {
                Format::Text => writeln!(out, "{result}").map_err(io)?,
                Format::Json => {
                    let v = poly_json(&result).unwrap_or_else(|_| json!({ "text": result.to_string() }));
                    writeln!(out, "{v}").map_err(io)?
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn emit_line(out: &mut dyn Write, format: Format, check: &str, text: &str, passed: bool) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{text}"),
        Format::Json => writeln!(out, "{}", json!({ "check": check, "passed": passed, "result": text })),
    }
    .map_err(io)
}

fn parse_poly(text: &str, reg: &Arc<Registry>) -> Result<MultiPoly> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        let terms = v.get("terms").cloned().unwrap_or(v);
        return MultiPoly::from_json(&terms, reg, CycField::rational());
    }
    MultiPoly::parse(trimmed, reg, CycField::rational())
}

#[allow(clippy::too_many_arguments)]
fn verify(
    theorem: Theorem,
    m: Option<usize>,
    s: usize,
    t: usize,
    rep: Option<&str>,
    codes: &[String],
    limits: &Limits,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let identity = |k: IdentityKind| -> Result<Report> { transforms::verify_identity(k, &load_tuple(codes, m, limits)?, limits) };
    let report = match theorem {
        Theorem::Macwilliams => identity(IdentityKind::MacWilliams)?,
        Theorem::Wan => identity(IdentityKind::Wan)?,
        Theorem::Cwrcs2 => identity(IdentityKind::Cwrcs2)?,
        Theorem::Britz => identity(IdentityKind::Britz)?,
        Theorem::Exact => identity(IdentityKind::Exact)?,
        Theorem::Hamw => identity(IdentityKind::HamW)?,
        Theorem::Klove => identity(IdentityKind::Klove)?,
        Theorem::Dps => identity(IdentityKind::Dps)?,
        Theorem::PairDecomposition => {
            let tuple = load_tuple(codes, None, limits)?;
            let [c1, c2] = tuple.codes() else {
                return Err(Error::Invalid("pair-decomposition takes two codes".into()));
            };
            let lhs = enumerators::mtuple_hamming_we(&tuple, limits)?;
            let rhs = transforms::decompose_pair_we(c1, c2, limits)?;
            Report::compare("pair-decomposition", tuple.to_string(), lhs, rhs)?
        }
        Theorem::Repetition => {
            let tuple = load_tuple(codes, m, limits)?;
            let r = match rep {
                Some(a) => load_code(a, limits)?,
                None => {
                    let ring = tuple.common_ring()?;
                    LinearCode::from_generators(ring, tuple.length(), vec![vec![1; tuple.length()]], limits)?
                }
            };
            let q = r.ring().cardinality();
            let ext = transforms::repetition_tuple(&tuple, s, t, &r, limits)?;
            let lhs = enumerators::mtuple_hamming_we(&ext, limits)?.scale_int(&big_pow(q, t as u32));
            let rhs = transforms::repetition_formula(&tuple, s, t, &r, limits)?;
            Report::compare(format!("repetition(s={s}, t={t})"), ext.to_string(), lhs, rhs)?
        }
        Theorem::Corollary => {
            let [code] = codes else {
                return Err(Error::Invalid("corollary takes one code".into()));
            };
            transforms::corollary_selfdual_pair(&load_code(code, limits)?, m.unwrap_or(1), limits)?
        }
    };
    print_report(&report, format, out)
}
