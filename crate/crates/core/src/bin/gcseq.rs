//! Command-line front end: `generate`, `autocorr`, `adic`, `verify`, `sweep`.
//!
//! Exit status: 0 when every requested check holds, 1 on usage errors
//! (including invalid primes), 2 when a verification check fails.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gcseq::adic2::complexity_report;
use gcseq::autocorr::{
    autocorr_all_closed_form, autocorr_all_empirical, distribution, distribution_empirical,
    nontrivial_bound, write_tau_csv,
};
use gcseq::groupring::{verify_correlation_identity, verify_lemma1};
use gcseq::sequence::generate;
use gcseq::sweep::{parse_pairs, run_sweep, Check, Format, PairBounds, SweepSpec};
use gcseq::{OddPrimePair, SequenceParams, Triple};

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Parser)]
#[command(name = "gcseq", version, about = "Generalized cyclotomic sequences of period pq")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one period of S(a,b,c).
    Generate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Bits)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Autocorrelation values and their distribution.
    Autocorr {
        #[command(flatten)]
        params: ParamArgs,
        /// Direct summation only.
        #[arg(long, conflicts_with_all = ["closed", "both"])]
        empirical: bool,
        /// Closed form only (the default).
        #[arg(long, conflicts_with = "both")]
        closed: bool,
        /// Both routes with a per-shift match flag.
        #[arg(long)]
        both: bool,
        /// Emit value,count rows instead of per-shift rows (csv only).
        #[arg(long)]
        aggregate: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact 2-adic complexity.
    Adic {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity checks for one prime pair.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Restrict to one triple; all eight by default.
        #[arg(long)]
        abc: Option<String>,
        #[arg(long = "check", value_name = "CHECK")]
        checks: Vec<String>,
        #[arg(long)]
        all: bool,
    },
    /// Batch run over many prime pairs and triples.
    Sweep {
        /// Enumerate pairs with p*q <= N.
        #[arg(long, value_name = "N")]
        max_n: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        q_max: Option<u64>,
        /// Only pairs with q = p + GAP.
        #[arg(long)]
        gap: Option<u64>,
        /// Explicit pairs "P:Q,P:Q"; overrides the bounds.
        #[arg(long)]
        pairs: Option<String>,
        /// Triples such as 100; repeatable. All eight by default.
        #[arg(long = "triple", value_name = "ABC")]
        triples: Vec<String>,
        #[arg(long = "check", value_name = "CHECK")]
        checks: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    /// The bits a, b, c as one string, e.g. 100.
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    abc: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    a: Option<u8>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    b: Option<u8>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    c: Option<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Bits,
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

impl From<gcseq::Error> for Failure {
    fn from(e: gcseq::Error) -> Self {
        usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(format!("I/O error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        usage(format!("CSV error: {e}"))
    }
}

impl ParamArgs {
    fn resolve(&self) -> Result<SequenceParams, Failure> {
        let triple = match (&self.abc, self.a, self.b, self.c) {
            (Some(abc), _, _, _) => abc.parse::<Triple>()?,
            (None, Some(a), Some(b), Some(c)) => Triple::new(a == 1, b == 1, c == 1),
            _ => return Err(usage("give the triple as --abc XYZ or as all of --a, --b, --c")),
        };
        Ok(SequenceParams::new(self.p, self.q, triple)?)
    }
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_checks(names: &[String], all: bool) -> Result<Vec<Check>, Failure> {
    if all || names.is_empty() {
        return Ok(Check::ALL.to_vec());
    }
    let mut checks = Vec::new();
    for name in names.iter().flat_map(|n| n.split(',')) {
        checks.push(name.parse::<Check>()?);
    }
    Ok(checks)
}

fn cmd_generate(params: &ParamArgs, format: OutFormat, out: &Option<PathBuf>) -> Result<(), Failure> {
    let seq = generate(&params.resolve()?);
    let mut w = open_out(out)?;
    match format {
        OutFormat::Bits | OutFormat::Text => writeln!(w, "{}", seq.to_bit_string())?,
        OutFormat::Json => writeln!(w, "{}", seq.to_json())?,
        OutFormat::Csv => return Err(usage("generate supports --format bits or json")),
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Route {
    Empirical,
    Closed,
    Both,
}

fn cmd_autocorr(
    params: &ParamArgs,
    route: Route,
    aggregate: bool,
    format: OutFormat,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let params = params.resolve()?;
    let seq = generate(&params);
    let empirical = (route != Route::Closed).then(|| autocorr_all_empirical(&seq));
    let closed = (route != Route::Empirical).then(|| autocorr_all_closed_form(&params));
    let profile = match route {
        Route::Empirical => distribution_empirical(&seq),
        _ => distribution(&params),
    };
    let all_match = match (&empirical, &closed) {
        (Some(e), Some(c)) => Some(e == c),
        _ => None,
    };

    let mut w = open_out(out)?;
    match format {
        OutFormat::Json => {
            let mut v = profile.to_json();
            if let Some(e) = &empirical {
                v["empirical"] = serde_json::json!(e);
            }
            if let Some(c) = &closed {
                v["closed_form"] = serde_json::json!(c);
            }
            if let Some(m) = all_match {
                v["all_match"] = serde_json::json!(m);
            }
            writeln!(w, "{v}")?;
        }
        OutFormat::Csv if aggregate => profile.write_distribution_csv(&mut w)?,
        OutFormat::Csv => match (&empirical, &closed) {
            (Some(e), Some(c)) => {
                let mut cw = csv::Writer::from_writer(&mut w);
                cw.write_record(["tau", "class", "empirical", "closed_form", "match"])?;
                for tau in 0..params.n() {
                    let class = gcseq::sequence::classify(tau, &params)?;
                    cw.write_record([
                        tau.to_string(),
                        class.name().to_string(),
                        e[tau].to_string(),
                        c[tau].to_string(),
                        (e[tau] == c[tau]).to_string(),
                    ])?;
                }
                cw.flush()?;
            }
            (Some(v), None) | (None, Some(v)) => write_tau_csv(&params, v, &mut w)?,
            (None, None) => unreachable!("at least one route is computed"),
        },
        OutFormat::Text | OutFormat::Bits => {
            writeln!(w, "{params} n={}", params.n())?;
            let dist: Vec<String> = profile
                .distribution
                .iter()
                .rev()
                .map(|(v, c)| format!("{v}:{c}"))
                .collect();
            writeln!(w, "distribution: {{{}}}", dist.join(", "))?;
            writeln!(w, "family: {}", profile.family.name())?;
            writeln!(
                w,
                "max_nontrivial_abs: {} (bound {})",
                profile.max_nontrivial_abs,
                nontrivial_bound(&params)
            )?;
            if let (Some(e), Some(c)) = (&empirical, &closed) {
                match e.iter().zip(c).position(|(x, y)| x != y) {
                    None => writeln!(w, "routes: all {} shifts match", params.n())?,
                    Some(tau) => writeln!(
                        w,
                        "routes: mismatch at tau={tau} (empirical {}, closed form {})",
                        e[tau], c[tau]
                    )?,
                }
            }
        }
    }
    w.flush()?;
    match all_match {
        Some(false) => Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: "empirical and closed-form autocorrelation disagree".into(),
        }),
        _ => Ok(()),
    }
}

fn cmd_adic(params: &ParamArgs, format: OutFormat, out: &Option<PathBuf>) -> Result<(), Failure> {
    let report = complexity_report(&params.resolve()?);
    let mut w = open_out(out)?;
    match format {
        OutFormat::Json => writeln!(w, "{}", report.to_json())?,
        OutFormat::Text | OutFormat::Bits => {
            writeln!(w, "{} n={}", report.params, report.n)?;
            writeln!(w, "d={}", report.d_exact)?;
            writeln!(w, "d_p={}", report.d_p)?;
            writeln!(w, "d_q={}", report.d_q)?;
            writeln!(w, "d_star={}", report.d_star)?;
            writeln!(w, "complexity={} ~ {:.6}", report.complexity_bits_exact(), report.complexity_float)?;
            writeln!(w, "best_value={}", report.best_value)?;
            writeln!(w, "best_value_predicate={}", report.best_value_predicate)?;
            if !report.holds() {
                let names: Vec<_> = report.violations.iter().map(|v| v.name()).collect();
                writeln!(w, "violations={}", names.join(","))?;
            }
        }
        OutFormat::Csv => return Err(usage("adic supports --format text or json")),
    }
    w.flush()?;
    if report.holds() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: "2-adic complexity relations violated".into(),
        })
    }
}

fn cmd_verify(p: u64, q: u64, abc: &Option<String>, checks: &[Check]) -> Result<(), Failure> {
    let primes = OddPrimePair::new(p, q)?;
    let triples: Vec<Triple> = match abc {
        Some(s) => vec![s.parse()?],
        None => Triple::all().collect(),
    };
    let spec = SweepSpec::new(vec![primes])
        .with_triples(triples)
        .with_checks(checks.iter().copied());
    let outcome = run_sweep(&spec);
    let mut out = io::stdout().lock();
    let mut passed = 0;
    for &check in &spec.checks {
        let failing: Vec<String> = outcome
            .rows
            .iter()
            .filter(|r| r.checks_failed.contains(&check))
            .map(|r| format!("{}{}{}", r.a, r.b, r.c))
            .collect();
        if failing.is_empty() {
            passed += 1;
            writeln!(out, "PASS {check}")?;
        } else {
            writeln!(out, "FAIL {check} (abc = {})", failing.join(", "))?;
            if check == Check::Lemma1 {
                for f in verify_lemma1(&primes).failures() {
                    writeln!(out, "  {}: {:?}", f.name, f.first_difference)?;
                }
            }
            if check == Check::CorrelationIdentity {
                for abc in &failing {
                    let params = SequenceParams::new(p, q, abc.parse()?)?;
                    for f in verify_correlation_identity(&params).failures() {
                        writeln!(out, "  {abc} {}: {:?}", f.name, f.first_difference)?;
                    }
                }
            }
            if check == Check::Theorem2 {
                for row in outcome.rows.iter().filter(|r| !r.violations.is_empty()) {
                    let names: Vec<_> = row.violations.iter().map(|v| v.name()).collect();
                    writeln!(out, "  {}{}{}: {}", row.a, row.b, row.c, names.join(","))?;
                }
            }
        }
    }
    writeln!(out, "{passed}/{} checks pass", spec.checks.len())?;
    out.flush()?;
    if passed == spec.checks.len() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: "verification failed".into(),
        })
    }
}

fn cmd_sweep(
    bounds: PairBounds,
    pairs: &Option<String>,
    triples: &[String],
    checks: &[Check],
    format: OutFormat,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let pairs = match pairs {
        Some(list) => parse_pairs(list)?,
        None if bounds == PairBounds::default() => {
            return Err(usage("sweep needs --pairs or at least one of --max-n, --p-max, --q-max"))
        }
        None => bounds.enumerate(),
    };
    let triples: Vec<Triple> = if triples.is_empty() {
        Triple::all().collect()
    } else {
        triples
            .iter()
            .flat_map(|t| t.split(','))
            .map(str::parse)
            .collect::<Result<_, _>>()?
    };
    let format = match format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
        _ => return Err(usage("sweep supports --format csv or json")),
    };
    let spec = SweepSpec::new(pairs)
        .with_triples(triples)
        .with_checks(checks.iter().copied())
        .with_format(format);
    let outcome = run_sweep(&spec);
    let mut w = open_out(out)?;
    outcome.write(spec.format, &mut w)?;
    w.flush()?;
    eprintln!("{}", outcome.summary());
    if outcome.failures() == 0 {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: "one or more checks failed".into(),
        })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { params, format, out } => cmd_generate(&params, format, &out),
        Command::Autocorr {
            params,
            empirical,
            closed: _,
            both,
            aggregate,
            format,
            out,
        } => {
            let route = match (empirical, both) {
                (true, _) => Route::Empirical,
                (_, true) => Route::Both,
                _ => Route::Closed,
            };
            cmd_autocorr(&params, route, aggregate, format, &out)
        }
        Command::Adic { params, format, out } => cmd_adic(&params, format, &out),
        Command::Verify { p, q, abc, checks, all } => cmd_verify(p, q, &abc, &parse_checks(&checks, all)?),
        Command::Sweep {
            max_n,
            p_max,
            q_max,
            gap,
            pairs,
            triples,
            checks,
            all,
            format,
            out,
        } => cmd_sweep(
            PairBounds { max_n, p_max, q_max, gap },
            &pairs,
            &triples,
            &parse_checks(&checks, all)?,
            format,
            &out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
