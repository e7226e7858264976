//! `wse`: command-line front end for the word, morphism, MSE and billiard
//! analyses of `wse-core`.
//!
//! Exit status is 0 when a verdict is Consistent or accepted, 1 when it is
//! Refuted or Rejected, and 2 on usage or input errors.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wse_core::analysis::{balance_order, complexity, profiles_csv, wse_verdict, SturmianVerdict, Witness};
use wse_core::billiard::{billiard_word, classify, event_stream, BilliardConfig};
use wse_core::classify::classify_letters;
use wse_core::exactnum::parse_expr;
use wse_core::mse::{mse_membership, primality, psi, MseRejection, MseVerdict, PrimalityVerdict};
use wse_core::st::st_membership;
use wse_core::stream::{apply_stream, fibonacci_stream, fixed_point_stream, mechanical_stream, WordStream};
use wse_core::{analyze_sturmian, erase, FiniteWord, Morphism};

const DEFAULT_LENGTH: usize = 10_000;
const DEFAULT_MAX_N: usize = 30;

#[derive(Parser)]
#[command(name = "wse", version, about = "Sturmian words, words with Sturmian erasures and their morphisms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit prefixes of infinite words, or erase a letter.
    #[command(subcommand)]
    Word(WordCmd),
    /// Complexity, balance and Sturmian/WSE verdicts of a prefix.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Apply, compose and inspect morphisms.
    #[command(subcommand)]
    Morphism(MorphismCmd),
    /// Membership in the monoid of Sturmian morphisms.
    #[command(subcommand)]
    St(StCmd),
    /// Morphisms with Sturmian erasures.
    #[command(subcommand)]
    Mse(MseCmd),
    /// Cubic billiard codings.
    #[command(subcommand)]
    Billiard(BilliardCmd),
}

#[derive(Args)]
struct Input {
    /// Word as a digit string; read from --file or standard input when absent.
    word: Option<String>,
    /// Read the word from a file.
    #[arg(long, conflicts_with = "word")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Length {
    /// Prefix length.
    #[arg(long, default_value_t = DEFAULT_LENGTH)]
    length: usize,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Prefix of the Fibonacci word.
    Fib(Length),
    /// Prefix of the mechanical word of slope alpha and intercept rho.
    Mechanical {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "0")]
        rho: String,
        #[command(flatten)]
        length: Length,
    },
    /// Prefix of the fixed point of a prolongable morphism.
    FixedPoint {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u8,
        #[command(flatten)]
        length: Length,
    },
    /// Erase every occurrence of a letter.
    Erase {
        #[arg(long)]
        letter: u8,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Largest factor length; defaults to min(30, L).
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    input: Input,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    Complexity(AnalyzeArgs),
    Balance(AnalyzeArgs),
    Sturmian(AnalyzeArgs),
    Wse(AnalyzeArgs),
}

#[derive(Subcommand)]
enum MorphismCmd {
    /// Apply to a word, or to the Fibonacci word with --fib.
    Apply {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        fib: bool,
        #[command(flatten)]
        length: Length,
        #[command(flatten)]
        input: Input,
    },
    /// Compose the given morphisms, leftmost outermost.
    Compose {
        #[arg(long, required = true, num_args = 1)]
        spec: Vec<String>,
    },
    /// Incidence matrix (entry (i, j) counts letter i in the image of j).
    Matrix {
        #[arg(long)]
        spec: String,
    },
    /// Determinant of the incidence matrix.
    Det {
        #[arg(long)]
        spec: String,
    },
    /// Nilpotent, permuting and expansive letters.
    Classify {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum StCmd {
    /// Factor a two-letter morphism over E, phi and phit.
    Decompose {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum MseCmd {
    /// Decide membership in MSE.
    Check {
        #[arg(long)]
        spec: String,
    },
    /// Prime or composite certificate for an erasing MSE morphism.
    Prime {
        #[arg(long)]
        spec: String,
    },
    /// The n-th morphism of the psi family.
    Psi {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct BilliardArgs {
    /// Direction, three comma-separated expressions.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Intercept, three comma-separated expressions in [0, 1).
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    rho: String,
}

#[derive(Subcommand)]
enum BilliardCmd {
    /// Coded word; with --format json, the crossing-event log.
    Code {
        #[command(flatten)]
        config: BilliardArgs,
        #[command(flatten)]
        length: Length,
    },
    /// Periodic, SturmianProjection, WSECandidate or Degenerate.
    Classify {
        #[command(flatten)]
        config: BilliardArgs,
    },
}

/// A finished command: what to print and how to exit.
struct Outcome {
    stdout: String,
    status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, status: 0 }
    }

    fn verdict(stdout: String, accepted: bool) -> Self {
        Outcome { stdout, status: if accepted { 0 } else { 1 } }
    }
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stdout.is_empty() && !out.stdout.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.status)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, format: Format) -> CmdResult {
    match command {
        Command::Word(c) => word(c, format),
        Command::Analyze(c) => analyze(c, format),
        Command::Morphism(c) => morphism(c, format),
        Command::St(c) => st(c, format),
        Command::Mse(c) => mse(c, format),
        Command::Billiard(c) => billiard(c, format),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn parse_spec(text: &str) -> Result<Morphism, String> {
    text.parse::<Morphism>().map_err(|e| e.to_string())
}

fn check_length(len: usize) -> Result<usize, String> {
    if len == 0 {
        return Err("--length must be at least 1".into());
    }
    Ok(len)
}

fn read_input(input: Input) -> Result<FiniteWord, String> {
    let text = match (input.word, input.file) {
        (Some(w), _) => w,
        (None, Some(path)) => std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?,
        (None, None) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("standard input: {e}"))?;
            s
        }
    };
    let text: String = text.split_whitespace().collect();
    text.parse::<FiniteWord>().map_err(|e| e.to_string())
}

fn emit_word(mut s: WordStream, len: usize, format: Format) -> CmdResult {
    let w = s.prefix(check_length(len)?).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(word_output(&w, format)))
}

fn word_output(w: &FiniteWord, format: Format) -> String {
    match format {
        Format::Json => json(w),
        _ => w.to_string(),
    }
}

fn word(c: WordCmd, format: Format) -> CmdResult {
    match c {
        WordCmd::Fib(l) => emit_word(fibonacci_stream(), l.length, format),
        WordCmd::Mechanical { alpha, rho, length } => {
            let alpha = parse_expr(&alpha).map_err(|e| e.to_string())?;
            let rho = parse_expr(&rho).map_err(|e| e.to_string())?;
            emit_word(mechanical_stream(alpha, rho).map_err(|e| e.to_string())?, length.length, format)
        }
        WordCmd::FixedPoint { spec, seed, length } => {
            let s = fixed_point_stream(parse_spec(&spec)?, seed).map_err(|e| e.to_string())?;
            emit_word(s, length.length, format)
        }
        WordCmd::Erase { letter, input } => {
            if letter > 2 {
                return Err(format!("letter {letter} is not in {{0,1,2}}"));
            }
            Ok(Outcome::ok(word_output(&erase(&read_input(input)?, letter), format)))
        }
    }
}

fn max_n(requested: Option<usize>, len: usize) -> Result<usize, String> {
    match requested {
        Some(n) if n == 0 || n > len => Err(format!("--max-n {n} must lie in 1..={len} (the word length)")),
        Some(n) => Ok(n),
        None if len == 0 => Err("the word is empty".into()),
        None => Ok(DEFAULT_MAX_N.min(len)),
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Complexity { n, count } => format!("P({n}) = {count} > {}", n + 1),
        Witness::Imbalance { n, imbalance } => format!("two factors of length {n} differ by {imbalance} in a letter count"),
    }
}

fn describe_sturmian(v: &SturmianVerdict) -> String {
    match v {
        SturmianVerdict::Refuted { witness } => format!("Refuted: {}", describe_witness(witness)),
        SturmianVerdict::Consistent { note, .. } => format!("Consistent: {note}"),
    }
}

fn analyze(c: AnalyzeCmd, format: Format) -> CmdResult {
    let (kind, args) = match c {
        AnalyzeCmd::Complexity(a) => ("complexity", a),
        AnalyzeCmd::Balance(a) => ("balance", a),
        AnalyzeCmd::Sturmian(a) => ("sturmian", a),
        AnalyzeCmd::Wse(a) => ("wse", a),
    };
    let w = read_input(args.input)?;
    let n = max_n(args.max_n, w.len())?;
    let err = |e: wse_core::analysis::AnalysisError| e.to_string();
    match kind {
        "complexity" => {
            let p = complexity(&w, n).map_err(err)?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&p),
                Format::Csv => p.counts.iter().fold("n,P\n".to_string(), |mut s, (n, c)| {
                    let _ = writeln!(s, "{n},{c}");
                    s
                }),
                Format::Text => p.counts.iter().map(|(n, c)| format!("P({n}) = {c}\n")).collect(),
            }))
        }
        "balance" => {
            let b = balance_order(&w, n).map_err(err)?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&b),
                Format::Csv => profiles_csv(&complexity(&w, n).map_err(err)?, &b),
                Format::Text => {
                    let mut s: String = b.imbalance.iter().map(|(n, d)| format!("imbalance({n}) = {d}\n")).collect();
                    let _ = writeln!(s, "balance order >= {}", b.order);
                    s
                }
            }))
        }
        "sturmian" => {
            let v = analyze_sturmian(&w, n).map_err(err)?;
            let out = match format {
                Format::Json => json(&v),
                Format::Csv => profiles_csv(&complexity(&w, n).map_err(err)?, &balance_order(&w, n).map_err(err)?),
                Format::Text => describe_sturmian(&v),
            };
            Ok(Outcome::verdict(out, !v.is_refuted()))
        }
        _ => {
            let v = wse_verdict(&w, n).map_err(err)?;
            let out = match format {
                Format::Json => json(&v),
                Format::Csv => v.erasures.iter().fold("letter,erased_length,max_n,verdict,period\n".to_string(), |mut s, r| {
                    let verdict = if r.verdict.is_refuted() { "refuted" } else { "consistent" };
                    let period = r.period.map(|p| p.to_string()).unwrap_or_default();
                    let _ = writeln!(s, "{},{},{},{verdict},{period}", r.letter, r.erased_length, r.max_n);
                    s
                }),
                Format::Text => {
                    let mut s = String::new();
                    for r in &v.erasures {
                        let _ = write!(s, "erase {}: {}", r.letter, describe_sturmian(&r.verdict));
                        if let Some(p) = r.period {
                            let _ = write!(s, " (prefix looks periodic with period {p})");
                        }
                        s.push('\n');
                    }
                    let _ = writeln!(s, "{}", if v.refuted { "not a word with Sturmian erasures" } else { "no erasure refuted" });
                    s
                }
            };
            Ok(Outcome::verdict(out, !v.refuted))
        }
    }
}

#[derive(Serialize)]
struct MatrixReport {
    morphism: Morphism,
    incidence: wse_core::IncidenceMatrix,
}

fn matrix_text(m: &wse_core::IncidenceMatrix) -> String {
    m.row_vecs()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn morphism(c: MorphismCmd, format: Format) -> CmdResult {
    match c {
        MorphismCmd::Apply { spec, fib, length, input } => {
            let f = parse_spec(&spec)?;
            if fib {
                emit_word(apply_stream(f, fibonacci_stream()), length.length, format)
            } else {
                let w = f.apply(&read_input(input)?).map_err(|e| e.to_string())?;
                Ok(Outcome::ok(word_output(&w, format)))
            }
        }
        MorphismCmd::Compose { spec } => {
            let mut parts = spec.iter().map(|s| parse_spec(s));
            let first = parts.next().expect("clap requires one spec")?;
            let f = parts.try_fold(first, |acc, g| acc.compose(&g?).map_err(|e| e.to_string()))?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&f),
                _ => f.to_string(),
            }))
        }
        MorphismCmd::Matrix { spec } => {
            let f = parse_spec(&spec)?;
            let m = f.incidence();
            Ok(Outcome::ok(match format {
                Format::Json => json(&MatrixReport { morphism: f, incidence: m }),
                Format::Csv => matrix_text(&m).replace(' ', ","),
                Format::Text => matrix_text(&m),
            }))
        }
        MorphismCmd::Det { spec } => {
            let f = parse_spec(&spec)?;
            let n = f.domain().max(f.codomain());
            let det = f.with_codomain(n).incidence().determinant().map_err(|e| e.to_string())?;
            Ok(Outcome::ok(match format {
                Format::Json => serde_json::json!({ "morphism": f, "determinant": det.to_string() }).to_string(),
                _ => det.to_string(),
            }))
        }
        MorphismCmd::Classify { spec } => {
            let f = parse_spec(&spec)?;
            if f.codomain() > f.domain() {
                return Err(format!("{f} is not an endomorphism"));
            }
            let c = classify_letters(&f);
            Ok(Outcome::ok(match format {
                Format::Json => json(&c),
                _ => {
                    let set = |s: wse_core::classify::LetterSet| {
                        let v: Vec<String> = s.letters().map(|a| a.to_string()).collect();
                        format!("{{{}}}", v.join(","))
                    };
                    format!(
                        "nilpotent {}\npermuting core {}\npermuting {}\nexpansive {}\n",
                        set(c.nilpotent),
                        set(c.permuting_core),
                        set(c.permuting),
                        set(c.expansive)
                    )
                }
            }))
        }
    }
}

fn st(c: StCmd, format: Format) -> CmdResult {
    let StCmd::Decompose { spec } = c;
    let f = parse_spec(&spec)?;
    Ok(match st_membership(&f) {
        Ok(cert) => Outcome::verdict(
            match format {
                Format::Json => serde_json::json!({ "accepted": true, "certificate": cert, "degree": cert.degree() })
                    .to_string(),
                _ => {
                    let names: Vec<String> = cert.factors.iter().map(|g| g.to_string()).collect();
                    let body = if names.is_empty() { "Id".to_string() } else { names.join(" o ") };
                    format!("accepted: {f} = {body} (degree at most {})", cert.degree())
                }
            },
            true,
        ),
        Err(reason) => Outcome::verdict(
            match format {
                Format::Json => serde_json::json!({ "accepted": false, "rejection": reason }).to_string(),
                _ => format!("rejected: {reason}"),
            },
            false,
        ),
    })
}

fn describe_mse(f: &Morphism, v: &MseVerdict) -> String {
    match v {
        MseVerdict::Permutation => format!("Permutation: {f} permutes the alphabet\n"),
        MseVerdict::ErasingMember { erased, certificates } => {
            let mut s = format!("ErasingMember: {f} erases {erased}\n");
            for c in certificates {
                let names: Vec<String> = c.certificate.factors.iter().map(|g| g.to_string()).collect();
                let body = if names.is_empty() { "Id".to_string() } else { names.join(" o ") };
                let _ = writeln!(s, "  projection {}: {} = {body}", c.projection, c.recoded);
            }
            s
        }
        MseVerdict::Rejected { rejection } => match rejection {
            MseRejection::NotTernary { domain } => format!("Rejected: {f} acts on {domain} letters, not 3\n"),
            MseRejection::NotPermutationNoErasedLetter => {
                format!("Rejected: {f} is neither a permutation nor erasing\n")
            }
            MseRejection::Projection { erased, projection, recoded, cause } => format!(
                "Rejected: {f} erases {erased}, but its projection {projection} recodes to {recoded}, not in St: {cause}\n"
            ),
        },
    }
}

fn mse(c: MseCmd, format: Format) -> CmdResult {
    match c {
        MseCmd::Check { spec } => {
            let f = parse_spec(&spec)?;
            let v = mse_membership(&f);
            let out = match format {
                Format::Json => json(&v),
                _ => describe_mse(&f, &v),
            };
            Ok(Outcome::verdict(out, v.is_member()))
        }
        MseCmd::Prime { spec } => {
            let f = parse_spec(&spec)?;
            match primality(&f) {
                Ok(v) => Ok(Outcome::ok(match format {
                    Format::Json => json(&v),
                    _ => match v {
                        PrimalityVerdict::PrimeCertified { witness } => format!(
                            "PrimeCertified: images {} and {} are neither prefix nor suffix of each other",
                            witness.images[0], witness.images[1]
                        ),
                        PrimalityVerdict::CompositeCertified { outer, inner } => {
                            format!("CompositeCertified: {f} = ({outer}) o ({inner})")
                        }
                        PrimalityVerdict::Unknown { note } => format!("Unknown: {note}"),
                    },
                })),
                Err(e) => Ok(Outcome::verdict(format!("rejected: {e}"), false)),
            }
        }
        MseCmd::Psi { n } => {
            let fam = psi(n).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(match format {
                Format::Json => json(&fam),
                _ => fam.psi.to_string(),
            }))
        }
    }
}

fn billiard(c: BilliardCmd, format: Format) -> CmdResult {
    let parse = |a: &BilliardArgs| BilliardConfig::parse(&a.d, &a.rho).map_err(|e| e.to_string());
    match c {
        BilliardCmd::Code { config, length } => {
            let cfg = parse(&config)?;
            let len = check_length(length.length)?;
            if format == Format::Json {
                // events up to the one that completes the requested prefix
                let mut letters = 0;
                let events: Vec<_> = event_stream(&cfg)
                    .take_while(|e| {
                        let more = letters < len;
                        letters += e.faces.len();
                        more
                    })
                    .collect();
                return Ok(Outcome::ok(serde_json::to_string(&events).expect("serializable")));
            }
            emit_word(billiard_word(&cfg), len, format)
        }
        BilliardCmd::Classify { config } => {
            let cfg = parse(&config)?;
            let class = classify(&cfg);
            Ok(Outcome::ok(match format {
                Format::Json => json(&class),
                _ => class.to_string(),
            }))
        }
    }
}
