//! Command-line front end. [`run`] parses arguments, calls the library and
//! writes the result; it never computes anything itself.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use fixmahon::enumeration::{joint_distribution, verify_claim, Claim, Stat, VerifyParams, DEFAULT_ENUM_CAP};
use fixmahon::f3::{f3, f3_inv};
use fixmahon::phi::{phi, psi};
use fixmahon::report::VerificationReport;
use fixmahon::zder::{f3_inv_perm, f3_perm, perm_stats, phi_perm, psi_perm, zder, zder_inv};
use fixmahon::{Error, Permutation, Word};

/// Environment variable overriding the enumeration cap.
pub const MAX_N_ENV: &str = "FIXMAHON_MAX_N";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fixmahon", version, about = "Fixed-point-aware Mahonian statistics and bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Statistics of a permutation or a word.
    Stats(Payload),
    /// The zero-moving bijection Φ.
    Phi(Payload),
    /// The inverse Ψ of Φ.
    Psi(Payload),
    /// The maj-to-mafz bijection F₃.
    F3(Payload),
    /// The inverse of F₃.
    F3Inv(Payload),
    /// Encode a permutation as a zero-padded word.
    Zder(PermOnly),
    /// Decode a zero-padded word into a permutation.
    ZderInv(WordOnly),
    /// Joint distribution of statistics over S_n.
    Table(TableArgs),
    /// Exhaustively check a claim.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Space-separated nonnegative letters, e.g. "1 2 0 0 1".
    #[arg(long)]
    word: Option<String>,
    /// One-line notation, e.g. "8 2 1 3 5 6 4 9 7".
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args, Debug)]
struct Payload {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PermOnly {
    #[arg(long)]
    perm: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct WordOnly {
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated statistics among fix, des, exc, maj, dez, maz, maf.
    #[arg(long, default_value = "fix,des,maj")]
    stats: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// thm-1.1, thm-1.2, prop-1.3, thm-1.4, cor-1.5, prop-4.1, roundtrips,
    /// id-1.27 or id-1.26.
    #[arg(long)]
    claim: String,
    /// Largest n of the sweep.
    #[arg(long = "n", visible_alias = "max-n")]
    max_n: Option<usize>,
    /// Smallest n of the sweep.
    #[arg(long, default_value_t = 0)]
    min_n: usize,
    /// u-degree cap of the truncated-series identity.
    #[arg(long, default_value_t = 6)]
    u: usize,
    /// t-degree cap of the truncated-series identity.
    #[arg(long, default_value_t = 6)]
    t: usize,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// JSON envelope of single-object commands.
#[derive(Serialize)]
struct Envelope {
    input: String,
    operation: &'static str,
    result: String,
    stats: Value,
}

enum Object {
    Word(Word),
    Perm(Permutation),
}

impl Object {
    fn parse(input: &Input) -> Result<Self, Error> {
        match (&input.word, &input.perm) {
            (Some(w), _) => Ok(Object::Word(w.parse()?)),
            (None, Some(p)) => Ok(Object::Perm(p.parse()?)),
            (None, None) => unreachable!("clap requires one payload"),
        }
    }

    fn text(&self) -> String {
        match self {
            Object::Word(w) => w.to_string(),
            Object::Perm(p) => p.to_string(),
        }
    }

    fn stats_json(&self) -> Value {
        match self {
            Object::Word(w) => serde_json::to_value(w.stats()),
            Object::Perm(p) => serde_json::to_value(perm_stats(p)),
        }
        .expect("stats serialize")
    }

    fn stats_lines(&self) -> Vec<String> {
        match self {
            Object::Word(w) => {
                let s = w.stats();
                let bullet = s.rise_bullet.map_or_else(|| "undefined".to_string(), |b| b.to_string());
                vec![
                    format!("Zero={}", s.zero),
                    format!("Pos={}", s.pos),
                    format!("DES={}", s.des),
                    format!("RISE={}", s.rise),
                    format!("RISE•={bullet}"),
                    format!("maj={}", s.maj),
                    format!("mafz={}", s.mafz),
                ]
            }
            Object::Perm(p) => {
                let s = perm_stats(p);
                vec![
                    format!("fix={}", s.fix),
                    format!("des={}", s.des),
                    format!("exc={}", s.exc),
                    format!("maj={}", s.maj),
                    format!("dez={}", s.dez),
                    format!("maz={}", s.maz),
                    format!("maf={}", s.maf),
                    format!("FIX={}", s.fix_set),
                    format!("DES={}", s.des_set),
                    format!("DEZ={}", s.dez_set),
                    format!("RISE={}", s.rise_set),
                    format!("RIZE={}", s.rize_set),
                ]
            }
        }
    }
}

/// Enumeration cap, from [`MAX_N_ENV`] when set.
pub fn enumeration_cap() -> Result<usize, String> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_N_ENV}={v:?} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 when a verification fails, 2 on usage or domain
/// errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut buf = String::new();
    let status = dispatch(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match status {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Stats(p) => {
            let obj = Object::parse(&p.input)?;
            match p.format {
                Format::Json => push_json(out, &envelope(&obj, "stats", &obj)),
                _ => obj.stats_lines().iter().for_each(|l| push_line(out, l)),
            }
        }
        Command::Phi(p) => transform(p, "phi", phi, |s| Ok(phi_perm(s)), out)?,
        Command::Psi(p) => transform(p, "psi", psi, |s| Ok(psi_perm(s)), out)?,
        Command::F3(p) => transform(p, "f3", |w| Ok(f3(w)), |s| Ok(f3_perm(s)), out)?,
        Command::F3Inv(p) => transform(p, "f3-inv", |w| Ok(f3_inv(w)), |s| Ok(f3_inv_perm(s)), out)?,
        Command::Zder(a) => {
            let input = Object::Perm(a.perm.parse()?);
            let Object::Perm(sigma) = &input else { unreachable!() };
            emit(out, a.format, &input, "zder", &Object::Word(zder(sigma)));
        }
        Command::ZderInv(a) => {
            let input = Object::Word(a.word.parse()?);
            let Object::Word(w) = &input else { unreachable!() };
            emit(out, a.format, &input, "zder-inv", &Object::Perm(zder_inv(w)?));
        }
        Command::Table(a) => {
            let cap = enumeration_cap().map_err(Failure::Usage)?;
            let stats = Stat::parse_list(&a.stats)?;
            let table = joint_distribution(a.n, &stats, cap)?;
            match a.format {
                Format::Text => out.push_str(&table.to_string()),
                Format::Csv => out.push_str(&table.to_csv()),
                Format::Json => push_json(out, &table.to_json()),
            }
        }
        Command::Verify(a) => return verify(a, out),
    }
    Ok(())
}

fn transform(
    p: Payload,
    operation: &'static str,
    on_word: impl Fn(&Word) -> Result<Word, Error>,
    on_perm: impl Fn(&Permutation) -> Result<Permutation, Error>,
    out: &mut String,
) -> Result<(), Failure> {
    let input = Object::parse(&p.input)?;
    let result = match &input {
        Object::Word(w) => Object::Word(on_word(w)?),
        Object::Perm(s) => Object::Perm(on_perm(s)?),
    };
    emit(out, p.format, &input, operation, &result);
    Ok(())
}

fn emit(out: &mut String, format: Format, input: &Object, operation: &'static str, result: &Object) {
    match format {
        Format::Json => push_json(out, &envelope(input, operation, result)),
        _ => push_line(out, &result.text()),
    }
}

fn envelope(input: &Object, operation: &'static str, result: &Object) -> Value {
    serde_json::to_value(Envelope { input: input.text(), operation, result: result.text(), stats: result.stats_json() })
        .expect("envelope serializes")
}

fn verify(a: VerifyArgs, out: &mut String) -> Result<(), Failure> {
    let claim: Claim = a.claim.parse()?;
    let cap = enumeration_cap().map_err(Failure::Usage)?;
    let defaults = VerifyParams::default();
    let params = VerifyParams { min_n: a.min_n, max_n: a.max_n.unwrap_or(defaults.max_n), cap, max_u: a.u, max_t: a.t };
    if params.min_n > params.max_n {
        return Err(Failure::Usage(format!("--min-n {} exceeds --n {}", params.min_n, params.max_n)));
    }
    let report: VerificationReport = match a.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(|| verify_claim(claim, &params))?,
        None => verify_claim(claim, &params)?,
    };
    match a.format {
        Format::Json => push_json(out, &serde_json::to_value(&report).expect("report serializes")),
        _ => out.push_str(&report.to_string()),
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn push_line(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}

fn push_json(out: &mut String, value: &Value) {
    push_line(out, &serde_json::to_string(value).expect("JSON values serialize"));
}
