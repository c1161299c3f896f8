//! Batch verification CLI: named suites, plus direct evaluation of
//! character sums, the p-adic Gamma function, q-expansions, L-values,
//! and period values.

use clap::{Args, Parser, Subcommand};
use hypergeom::charsum::{integer_reconstruct, sums, PrimeFieldContext};
use hypergeom::datum::{parse_datum, parse_rat, Rat};
use hypergeom::error::Error;
use hypergeom::numeric::{show, Ctx};
use hypergeom::qseries::eta::EtaQuotient;
use hypergeom::suites::{run_suite, SuiteConfig, SuiteId};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "hgm",
    about = "Hypergeometric verification engine: character sums, p-adic Gamma, eta quotients, L-values",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite and write a JSON-lines report.
    Verify(VerifyArgs),
    /// Evaluate the normalized character sum of a datum at one prime.
    Charsum(CharsumArgs),
    /// Evaluate the p-adic Gamma function at a rational argument.
    Gammap(GammapArgs),
    /// Print a q-expansion (eta quotient or a named family member).
    Qexp(QexpArgs),
    /// Evaluate a special L-value by the split-integral method.
    Lvalue(LvalueArgs),
    /// Evaluate the period value P(r, s) by two routes.
    Pvalue(PvalueArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// galois | supercongruence | classical | appendix |
    /// charsum-identities | padic-properties | qmodular-properties
    suite: String,
    /// Column-index range A..B (inclusive), within 1..11
    #[arg(long, default_value = "1..11")]
    j: String,
    /// Prime sweep bound
    #[arg(long, default_value_t = 200)]
    pmax: u64,
    /// Worker threads (0 = library default)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Working precision for complex checks, decimal digits
    #[arg(long, default_value_t = 60)]
    precision: u32,
    /// Seed for the sampled parameter tuples
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report file (JSON lines + summary); stdout summary always printed
    #[arg(long)]
    out: Option<PathBuf>,
    /// Expansion cache directory (HGM_CACHE_DIR overrides)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct CharsumArgs {
    /// Datum with evaluation point, e.g. "1/2,1/2,1/2,1/2;1,1,1,1@-1"
    #[arg(long)]
    datum: String,
    #[arg(long)]
    p: u64,
    /// Embedding choice: which power of the generator plays the root of unity
    #[arg(long, default_value_t = 1)]
    root_choice: u64,
}

#[derive(Args)]
struct GammapArgs {
    /// Rational argument, e.g. 1/2
    #[arg(long)]
    x: String,
    #[arg(long)]
    p: u64,
    /// Precision exponent k (value mod p^k)
    #[arg(long, default_value_t = 2)]
    prec: u32,
}

#[derive(Args)]
struct QexpArgs {
    /// Weight-3 family member "R,S"
    #[arg(long, conflicts_with_all = ["k1", "eta"])]
    k2: Option<String>,
    /// Weight-2 family member "R,S"
    #[arg(long, conflicts_with = "eta")]
    k1: Option<String>,
    /// Eta quotient "scale:exp,scale:exp,...", e.g. "4:6" or "1:2,2:1,4:1,8:2"
    #[arg(long)]
    eta: Option<String>,
    /// Substitute tau -> scale * tau
    #[arg(long, default_value_t = 1)]
    scale: u64,
    /// Exclusive exponent bound (in q powers)
    #[arg(long, default_value_t = 24)]
    order: i64,
}

#[derive(Args)]
struct LvalueArgs {
    /// Eta quotient "scale:exp,..."
    #[arg(long, conflicts_with = "k2")]
    eta: Option<String>,
    /// Level N of the integral split tau -> -1/(N tau)
    #[arg(long)]
    fricke_level: Option<u64>,
    /// Weight-3 family member "R,S"
    #[arg(long)]
    k2: Option<String>,
    /// Substitute tau -> scale * tau before integrating (with --k2)
    #[arg(long, default_value_t = 1)]
    scale: u64,
    /// L-value argument (1 or 2)
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Working precision, decimal digits
    #[arg(long, default_value_t = 40)]
    precision: u32,
}

#[derive(Args)]
struct PvalueArgs {
    #[arg(long)]
    r: String,
    #[arg(long)]
    s: String,
    /// Working precision, decimal digits
    #[arg(long, default_value_t = 60)]
    precision: u32,
}

fn parse_j_range(s: &str) -> Result<(i64, i64), Error> {
    if let Some((a, b)) = s.split_once("..") {
        let a = a.parse().map_err(|_| Error::Parameter(format!("bad range `{s}`")))?;
        let b = b.parse().map_err(|_| Error::Parameter(format!("bad range `{s}`")))?;
        Ok((a, b))
    } else {
        let j = s.parse().map_err(|_| Error::Parameter(format!("bad range `{s}`")))?;
        Ok((j, j))
    }
}

fn parse_pair(s: &str) -> Result<(Rat, Rat), Error> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parameter(format!("expected R,S got `{s}`")))?;
    let a = parse_rat(a).map_err(|msg| Error::Parse { pos: 1, msg })?;
    let b = parse_rat(b).map_err(|msg| Error::Parse { pos: 2, msg })?;
    Ok((a, b))
}

fn parse_eta_spec(s: &str) -> Result<EtaQuotient, Error> {
    let mut factors = Vec::new();
    for part in s.split(',') {
        let (scale, exp) = part
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("expected scale:exp got `{part}`")))?;
        let scale = parse_rat(scale).map_err(|msg| Error::Parse { pos: 0, msg })?;
        let exp: i32 = exp
            .parse()
            .map_err(|_| Error::Parameter(format!("bad exponent `{exp}`")))?;
        factors.push((scale, exp));
    }
    EtaQuotient::new(factors)
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => {
            let suite = SuiteId::from_str(&args.suite)?;
            let (j_min, j_max) = parse_j_range(&args.j)?;
            let config = SuiteConfig {
                suite,
                j_min,
                j_max,
                pmax: args.pmax,
                precision: args.precision,
                threads: args.threads,
                cache_dir: args
                    .cache_dir
                    .or_else(|| std::env::var_os(hypergeom::cache::CACHE_DIR_ENV).map(PathBuf::from)),
                seed: args.seed,
                out: args.out,
            };
            let (records, summary) = run_suite(&config)?;
            for r in &records {
                if !r.passed() {
                    println!(
                        "[{:?}] {} {:?}: {} vs {}",
                        r.status, r.check_id, r.params, r.lhs, r.rhs
                    );
                }
            }
            println!(
                "suite {}: {} checks, {} pass, {} fail, {} skipped, {} error",
                summary.suite, summary.total, summary.pass, summary.fail, summary.skipped, summary.error
            );
            Ok(summary.all_green())
        }
        Command::Charsum(args) => {
            let (hd, lambda) = parse_datum(&args.datum)?;
            let ctx = PrimeFieldContext::with_root_choice(args.p, args.root_choice)?;
            let value = sums::h_value(&hd, &lambda, &ctx)?;
            println!(
                "H({}; {} ; p={}) = {:?} (certified within {:.3e})",
                hd.render(),
                lambda,
                args.p,
                value.value(),
                value.abs_err()
            );
            match integer_reconstruct(&value) {
                Ok(n) => println!("certified integer: {n}"),
                Err(e) => println!("not certified to an integer: {e}"),
            }
            Ok(true)
        }
        Command::Gammap(args) => {
            let x = parse_rat(&args.x).map_err(|msg| Error::Parse { pos: 0, msg })?;
            let value = hypergeom::padic::gamma_p(&x, args.p, args.prec)?;
            println!("Gamma_{}({}) = {}", args.p, x, value);
            Ok(true)
        }
        Command::Qexp(args) => {
            let series = if let Some(spec) = &args.k2 {
                let (r, s) = parse_pair(spec)?;
                hypergeom::qseries::eta::k2_series(&r, &s, args.scale, args.order)?
            } else if let Some(spec) = &args.k1 {
                let (r, s) = parse_pair(spec)?;
                hypergeom::qseries::eta::k1_series(&r, &s, args.scale, args.order)?
            } else if let Some(spec) = &args.eta {
                let q = parse_eta_spec(spec)?.scaled(args.scale);
                let grid = q.natural_grid();
                q.expand(grid, args.order * grid as i64)?
            } else {
                return Err(Error::Parameter("one of --k2, --k1, --eta required".into()));
            };
            println!("{series}");
            Ok(true)
        }
        Command::Lvalue(args) => {
            let ctx = Ctx::new(args.precision);
            let value = if let Some(spec) = &args.eta {
                let level = args.fricke_level.ok_or_else(|| {
                    Error::Parameter("--fricke-level required with --eta".into())
                })?;
                let q = parse_eta_spec(spec)?;
                hypergeom::numeric::lvalue::lvalue_eta(&q, level, args.s, &ctx)?
            } else if let Some(spec) = &args.k2 {
                let (r, s) = parse_pair(spec)?;
                hypergeom::numeric::lvalue::lvalue_k2(&r, &s, args.scale, args.s, &ctx)?
            } else {
                return Err(Error::Parameter("one of --eta, --k2 required".into()));
            };
            println!(
                "L = {} (working precision {} digits)",
                show(&value, args.precision as usize),
                args.precision
            );
            Ok(true)
        }
        Command::Pvalue(args) => {
            let r = parse_rat(&args.r).map_err(|msg| Error::Parse { pos: 0, msg })?;
            let s = parse_rat(&args.s).map_err(|msg| Error::Parse { pos: 0, msg })?;
            let ctx = Ctx::new(args.precision);
            let p = hypergeom::numeric::pvalue::p_value(&r, &s, &ctx)?;
            println!(
                "P({r}, {s}) = {} (route disagreement bound {})",
                show(&p.value, args.precision as usize),
                show(&p.err, 3)
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Parameter(_) | Error::Parse { .. })) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
