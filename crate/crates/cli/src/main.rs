use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cmpair::example::{gaussian_401, worked_example, ExampleOptions};
use cmpair::{eta, LawConfig, PairingContext, PairingValue, Point, QuadInt};
use serde::Serialize;

mod config;

use config::{parse_pair, FileConfig, PointSpec};

/// Sesquilinear Weil and Tate pairings on elliptic curves with complex multiplication.
#[derive(Parser)]
#[command(name = "cmpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one pairing value.
    Pair(JobArgs),
    /// Recompute the worked example over F_401 and compare with its golden values.
    Example(ExampleArgs),
    /// Run every law check and a non-degeneracy scan.
    Selftest(JobArgs),
    /// Tabulate T^_alpha on E[conj(alpha)] x E/[alpha]E and check non-degeneracy.
    Scan(JobArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Jsonl,
}

#[derive(clap::Args)]
struct JobArgs {
    /// TOML job file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// t_hat, w_hat, t_hat_via_tn, w_hat_via_en, t_alpha or w_alpha.
    #[arg(long)]
    op: Option<String>,
    #[arg(long, value_name = "X,Y", value_parser = parse_pair, allow_hyphen_values = true)]
    alpha: Option<[i64; 2]>,
    /// Auxiliary element for the coherence laws.
    #[arg(long, value_name = "X,Y", value_parser = parse_pair, allow_hyphen_values = true)]
    beta: Option<[i64; 2]>,
    /// A point as `x,y`, or `O`.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    p: Option<PointSpec>,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    q: Option<PointSpec>,
    /// Fixes the auxiliary point instead of drawing it from the seed.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    aux: Option<PointSpec>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(clap::Args)]
struct ExampleArgs {
    /// Square root of -1 used for [i].
    #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
    root: i64,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    aux: Option<PointSpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Op {
    THat,
    WHat,
    THatViaTn,
    WHatViaEn,
    TAlpha,
    WAlpha,
}

impl FromStr for Op {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "t_hat" => Op::THat,
            "w_hat" => Op::WHat,
            "t_hat_via_tn" => Op::THatViaTn,
            "w_hat_via_en" => Op::WHatViaEn,
            "t_alpha" => Op::TAlpha,
            "w_alpha" => Op::WAlpha,
            _ => bail!("unknown op `{s}`"),
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::THat => "t_hat",
            Op::WHat => "w_hat",
            Op::THatViaTn => "t_hat_via_tn",
            Op::WHatViaEn => "w_hat_via_en",
            Op::TAlpha => "t_alpha",
            Op::WAlpha => "w_alpha",
        })
    }
}

struct Job {
    ctx: PairingContext,
    op: Op,
    alpha: QuadInt,
    beta: Option<QuadInt>,
    p: Option<Point>,
    q: Option<Point>,
    aux: Option<Point>,
    format: Format,
    trials: usize,
}

impl Job {
    fn resolve(args: JobArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let cm = file.cm_curve()?;
        let order = cm.order();
        let pairing = &file.pairing;
        let op = match args.op.as_deref().or(pairing.op.as_deref()) {
            Some(s) => s.parse()?,
            None => Op::THat,
        };
        let alpha = config::quad(order, args.alpha.or(pairing.alpha).unwrap_or([1, -2]));
        let beta = args.beta.or(pairing.beta).map(|b| config::quad(order, b));
        let builtin = args.config.is_none();
        let p = args
            .p
            .or(pairing.p)
            .or(builtin.then_some(PointSpec::Affine([204, 283])));
        let q = args
            .q
            .or(pairing.q)
            .or(builtin.then_some(PointSpec::Affine([56, 137])));
        let p = p.map(|s| config::point(&cm, s)).transpose()?;
        let q = q.map(|s| config::point(&cm, s)).transpose()?;
        let aux = args
            .aux
            .or(pairing.aux)
            .map(|s| config::point(&cm, s))
            .transpose()?;
        let format = match (args.format, &pairing.format) {
            (Some(f), _) => f,
            (None, Some(s)) => Format::from_str(s, true).map_err(anyhow::Error::msg)?,
            (None, None) => Format::Human,
        };
        let seed = args.seed.or(pairing.seed).unwrap_or(0);
        let trials = args.trials.or(pairing.trials).unwrap_or(500);
        if alpha.is_zero() {
            bail!("alpha must be nonzero");
        }
        Ok(Self {
            ctx: PairingContext::new(cm, seed)?,
            op,
            alpha,
            beta,
            p,
            q,
            aux,
            format,
            trials,
        })
    }

    fn integer_alpha(&self) -> Result<u64> {
        match self.alpha.coords() {
            (n, 0) if n > 0 => Ok(n as u64),
            _ => bail!("{} needs alpha to be a positive integer", self.op),
        }
    }

    fn no_aux(&self) -> Result<()> {
        if self.aux.is_some() {
            bail!("{} does not take an auxiliary point", self.op);
        }
        Ok(())
    }

    fn evaluate(&self) -> Result<(PairingValue, Point, Point)> {
        let c = &self.ctx;
        let p = self.p.context("P is required (--p or pairing.p)")?;
        let q = self.q.context("Q is required (--q or pairing.q)")?;
        let alpha = self.alpha;
        let v = match (self.op, self.aux) {
            (Op::THat, Some(s)) => c.t_hat_with_aux(p, q, alpha, s)?,
            (Op::THat, None) => c.t_hat(p, q, alpha)?,
            (Op::WHat, Some(t)) => c.w_hat_with_aux(p, q, alpha, t)?,
            (Op::WHat, None) => c.w_hat(p, q, alpha)?,
            (Op::THatViaTn, _) => {
                self.no_aux()?;
                c.t_hat_via_tn(p, q, self.integer_alpha()?)?
            }
            (Op::WHatViaEn, _) => {
                self.no_aux()?;
                c.w_hat_via_en(p, q, self.integer_alpha()?)?
            }
            (Op::TAlpha, _) => {
                self.no_aux()?;
                c.t_alpha(&eta(c.cm(), p), &eta(c.cm(), q), alpha)?
            }
            (Op::WAlpha, Some(t)) => {
                c.w_alpha_with_aux(&eta(c.cm(), p), &eta(c.cm(), q), alpha, t)?
            }
            (Op::WAlpha, None) => c.w_alpha(&eta(c.cm(), p), &eta(c.cm(), q), alpha)?,
        };
        Ok((v, p, q))
    }

    /// The given beta, or the smallest-norm element with full rational
    /// kernels whose norm is prime to `N(alpha)`.
    fn beta(&self) -> Result<QuadInt> {
        if let Some(b) = self.beta {
            return Ok(b);
        }
        let order = self.ctx.order();
        let n = self.alpha.norm();
        let mut candidates: Vec<QuadInt> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| order.elem(x, y)))
            .filter(|b| b.norm() > 1 && gcd(b.norm(), n) == 1)
            .collect();
        candidates.sort_by_key(|b| (b.norm(), b.x.abs() + b.y.abs(), -b.x, -b.y));
        for b in candidates {
            let full = |k: QuadInt| -> Result<bool> {
                Ok(self.ctx.cm().kernel_of(k)?.len() as i64 == k.norm())
            };
            if full(b)? && full(b.conj())? {
                return Ok(b);
            }
        }
        bail!("no suitable beta found; pass one with --beta")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

#[derive(Serialize)]
struct PairRecord<'a> {
    op: Op,
    alpha: QuadInt,
    p: Point,
    q: Point,
    aux: Option<Point>,
    seed: u64,
    value: &'a PairingValue,
}

fn cmd_pair(args: JobArgs) -> Result<ExitCode> {
    let job = Job::resolve(args)?;
    let (v, p, q) = job.evaluate()?;
    match job.format {
        Format::Human => {
            println!("curve: {}", job.ctx.curve());
            println!("{}(P, Q) with alpha = {}", job.op, job.alpha);
            println!("P = {p}, Q = {q}");
            if let Some(s) = job.aux {
                println!("auxiliary point: {s}");
            }
            println!("raw: {}", v.raw);
            println!("value: {} ({})", v.exponent_form(), v.codomain);
            println!(
                "reduced: {}",
                v.reduced_form().unwrap_or_else(|| "none".into())
            );
        }
        Format::Jsonl => print_json(&PairRecord {
            op: job.op,
            alpha: job.alpha,
            p,
            q,
            aux: job.aux,
            seed: job.ctx.seed(),
            value: &v,
        })?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Summary {
    matched: usize,
    total: usize,
}

fn cmd_example(args: ExampleArgs) -> Result<ExitCode> {
    let aux = match args.aux {
        Some(s) => Some(config::point(&gaussian_401()?, s)?),
        None => None,
    };
    let report = worked_example(ExampleOptions {
        i: args.root,
        aux,
        seed: args.seed,
    })
    .context("the worked example could not be evaluated")?;
    match args.format {
        Format::Human => println!("{report}"),
        Format::Jsonl => {
            for c in &report.checks {
                print_json(c)?;
            }
            print_json(&Summary {
                matched: report.matched(),
                total: report.checks.len(),
            })?;
        }
    }
    if let Some(c) = report.first_mismatch() {
        eprintln!(
            "first mismatch: {}: expected {}, got {}",
            c.name, c.expected, c.actual
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(args: JobArgs) -> Result<ExitCode> {
    let job = Job::resolve(args)?;
    let report = job.ctx.nondegeneracy_scan(job.alpha)?;
    match job.format {
        Format::Human => println!("{report}"),
        Format::Jsonl => print_json(&report)?,
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_selftest(args: JobArgs) -> Result<ExitCode> {
    let job = Job::resolve(args)?;
    if job.trials == 0 {
        eprintln!("warning: trials = 0, the law checks pass vacuously");
    }
    let cfg = LawConfig {
        alpha: job.alpha,
        beta: job.beta()?,
        trials: job.trials,
    };
    let laws = job.ctx.property_suite(&cfg)?;
    let scan = job.ctx.nondegeneracy_scan(job.alpha)?;
    match job.format {
        Format::Human => {
            println!("{laws}");
            println!();
            println!("{scan}");
        }
        Format::Jsonl => {
            for law in &laws.laws {
                print_json(law)?;
            }
            print_json(&scan)?;
        }
    }
    let ok = laws.passed() && scan.passed();
    if !ok {
        eprintln!("selftest failed");
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pair(a) => cmd_pair(a),
        Command::Example(a) => cmd_example(a),
        Command::Selftest(a) => cmd_selftest(a),
        Command::Scan(a) => cmd_scan(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
