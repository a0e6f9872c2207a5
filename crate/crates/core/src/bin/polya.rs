//! `polya`: loop counts, first-return counts, return probabilities, the
//! sign-pair codec, asymptotics and Monte Carlo estimates as JSON Lines or
//! CSV.
//!
//! Exit codes: 0 on success, 1 when `verify-paper` has a failing check or
//! output cannot be written, 2 on invalid input, 3 when a size cap is hit.

use std::io;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polya::analysis::{
    self, asymptotic_ratio, closed_form_loop_count, loop_series, loop_series_by_convolution,
    return_probability, simple_loop_series, Mode, DEFAULT_EXACT_THRESHOLD,
};
use polya::bijection::{decode_pair, encode_walk, SignPair};
use polya::montecarlo::{simulate_return, McConfig};
use polya::output::{
    write_records, AsymptoticRow, CodecRow, CountRow, Format, ReturnProbRow, SimpleRow,
    SimulateRow, VerifyRow,
};
use polya::series::DEFAULT_ORDER;
use polya::walks::{self, enumerate_loop_count, enumerate_simple_loop_count, EnumCap};
use polya::{Dimension, Result, Walk};

#[derive(Parser)]
#[command(
    name = "polya",
    version,
    about = "Lattice walk loop counts and return probabilities"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "POLYA_FORMAT",
        default_value = "json"
    )]
    format: FormatArg,

    /// Largest half-length the enumeration oracle accepts, for both
    /// dimensions (default: 10 in 1D, 6 in 2D).
    #[arg(long, global = true, env = "POLYA_ENUM_CAP")]
    enum_cap: Option<u32>,

    /// Largest number of terms computed with exact rationals.
    #[arg(long, global = true, env = "POLYA_EXACT_THRESHOLD", default_value_t = DEFAULT_EXACT_THRESHOLD)]
    exact_threshold: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    /// C(2n, n)^d.
    Formula,
    /// First-return inversion (1D) and axis interleaving (2D).
    Series,
    /// Exhaustive walk enumeration.
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Loop counts B_n for n = 0..=n-max.
    Count {
        #[arg(long, value_parser = parse_dim)]
        dim: Dimension,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "formula")]
        method: CountMethod,
    },
    /// Simple (first-return) loop counts P_n for n = 1..=n-max.
    Simple {
        #[arg(long, value_parser = parse_dim)]
        dim: Dimension,
        #[arg(long, env = "POLYA_SERIES_ORDER", default_value_t = DEFAULT_ORDER as u32)]
        n_max: u32,
        /// Print the whole series P(t) as one JSON array of decimal strings.
        #[arg(long)]
        as_series: bool,
    },
    /// Return probability within 2N steps.
    ReturnProb {
        #[arg(long, value_parser = parse_dim)]
        dim: Dimension,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Convert between 2D walks and sign pairs.
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
    /// Weighted loop coefficient against 1/sqrt(pi n) (1D) or 1/(pi n) (2D).
    Asymptotics {
        #[arg(long, value_parser = parse_dim)]
        dim: Dimension,
        #[arg(long)]
        n: u64,
    },
    /// Monte Carlo estimate of returning to the origin within --steps.
    Simulate {
        #[arg(long, value_parser = parse_dim)]
        dim: Dimension,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Recompute the published constants and worked examples.
    VerifyPaper,
}

#[derive(Subcommand)]
enum CodecOp {
    /// Walk over RLUD to "a,b".
    Encode {
        #[arg(long)]
        walk: String,
    },
    /// "a,b" to a walk over RLUD.
    Decode {
        #[arg(long, allow_hyphen_values = true)]
        pair: String,
    },
}

fn parse_dim(s: &str) -> std::result::Result<Dimension, String> {
    let d: u8 = s.parse().map_err(|_| format!("invalid dimension {s:?}"))?;
    Dimension::try_from(d).map_err(|e| e.to_string())
}

struct Ctx {
    format: Format,
    cap: EnumCap,
    exact_threshold: usize,
}

impl Ctx {
    fn emit<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        write_records(self.format, rows, io::stdout().lock())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        cap: cli.enum_cap.map(EnumCap::uniform).unwrap_or_default(),
        exact_threshold: cli.exact_threshold,
    };
    match run(&ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("polya: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { dim, n_max, method } => cmd_count(ctx, dim, n_max, method)?,
        Command::Simple {
            dim,
            n_max,
            as_series,
        } => cmd_simple(ctx, dim, n_max, as_series)?,
        Command::ReturnProb { dim, terms, mode } => cmd_return_prob(ctx, dim, terms, mode)?,
        Command::Codec { op } => cmd_codec(ctx, op)?,
        Command::Asymptotics { dim, n } => {
            let r = asymptotic_ratio(dim, n)?;
            ctx.emit(&[AsymptoticRow {
                command: "asymptotics".into(),
                dim: dim.into(),
                n,
                weighted_coefficient: r.weighted_coefficient,
                predicted: r.predicted,
                ratio: r.ratio,
            }])?
        }
        Command::Simulate {
            dim,
            steps,
            samples,
            seed,
            workers,
        } => cmd_simulate(ctx, dim, steps, samples, seed, workers)?,
        Command::VerifyPaper => return cmd_verify_paper(ctx),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(ctx: &Ctx, dim: Dimension, n_max: u32, method: CountMethod) -> Result<()> {
    let (name, values): (&str, Vec<String>) = match method {
        CountMethod::Formula => (
            "formula",
            (0..=n_max)
                .map(|n| closed_form_loop_count(dim, n).to_string())
                .collect(),
        ),
        CountMethod::Series => (
            "series",
            loop_series_by_convolution(dim, n_max as usize).to_decimal_strings(),
        ),
        CountMethod::Enumerate => (
            "enumerate",
            (0..=n_max)
                .map(|n| enumerate_loop_count(dim, n, ctx.cap).map(|c| c.to_string()))
                .collect::<Result<_>>()?,
        ),
    };
    let rows: Vec<_> = values
        .into_iter()
        .enumerate()
        .map(|(n, value)| CountRow {
            command: "count".into(),
            dim: dim.into(),
            method: name.into(),
            n: n as u32,
            value,
        })
        .collect();
    ctx.emit(&rows)
}

fn cmd_simple(ctx: &Ctx, dim: Dimension, n_max: u32, as_series: bool) -> Result<()> {
    let p = simple_loop_series(dim, n_max as usize);
    if as_series {
        println!("{}", p.to_json());
        return Ok(());
    }
    let rows: Vec<_> = p
        .to_decimal_strings()
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, value)| SimpleRow {
            command: "simple".into(),
            dim: dim.into(),
            n: n as u32,
            value,
        })
        .collect();
    ctx.emit(&rows)
}

fn cmd_return_prob(ctx: &Ctx, dim: Dimension, terms: usize, mode: ModeArg) -> Result<()> {
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    let r = return_probability(dim, terms, mode, ctx.exact_threshold)?;
    ctx.emit(&[ReturnProbRow {
        command: "return-prob".into(),
        dim: dim.into(),
        terms,
        mode: match mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
        .into(),
        value: r.value.to_string(),
        approx: r.value.to_f64(),
    }])
}

fn cmd_codec(ctx: &Ctx, op: CodecOp) -> Result<()> {
    let (name, walk, pair) = match op {
        CodecOp::Encode { walk } => {
            let w = Walk::parse(Dimension::Two, &walk)?;
            let p = encode_walk(&w)?;
            ("encode", w, p)
        }
        CodecOp::Decode { pair } => {
            let p: SignPair = pair.parse()?;
            ("decode", decode_pair(&p), p)
        }
    };
    ctx.emit(&[CodecRow {
        command: "codec".into(),
        op: name.into(),
        walk: walk.to_string(),
        pair: pair.to_string(),
        class: format!("{:?}", walk.classify()),
    }])
}

fn cmd_simulate(
    ctx: &Ctx,
    dim: Dimension,
    steps: u64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<()> {
    let cfg = McConfig {
        dim,
        max_steps: steps,
        samples,
        seed,
        streams: workers,
    };
    let est = simulate_return(&cfg)?;
    let terms = (steps / 2) as usize;
    let (exact, z_score) = if terms <= ctx.exact_threshold {
        let r = analysis::exact_partial_sums(dim, terms)
            .pop()
            .expect("terms >= 1");
        let value = analysis::rational_to_f64(&r);
        let diff = (est.returned_fraction - value).abs();
        let z = if diff == 0.0 {
            0.0
        } else if est.stderr == 0.0 {
            f64::INFINITY
        } else {
            diff / est.stderr
        };
        (Some(format!("{}/{}", r.numer(), r.denom())), Some(z))
    } else {
        (None, None)
    };
    ctx.emit(&[SimulateRow {
        command: "simulate".into(),
        dim: dim.into(),
        steps,
        samples,
        seed,
        workers,
        returned: est.returned,
        fraction: est.returned_fraction,
        stderr: est.stderr,
        exact,
        z_score,
    }])
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> VerifyRow {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    VerifyRow {
        command: "verify-paper".into(),
        check: name.into(),
        pass: expected == actual,
        expected,
        actual,
    }
}

fn list(values: impl IntoIterator<Item = impl ToString>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_verify_paper(ctx: &Ctx) -> Result<ExitCode> {
    let start = Instant::now();
    let cap = EnumCap::default();
    let p2 = simple_loop_series(Dimension::Two, 2);
    let rulldr = Walk::parse(Dimension::Two, "RULLDR")?;
    let mut rows = vec![
        check(
            "P_1, P_2 (2D) by series inversion",
            "4 20",
            list(&p2.coeffs()[1..]),
        ),
        check(
            "P_1, P_2 (2D) by enumeration",
            "4 20",
            list([
                enumerate_simple_loop_count(Dimension::Two, 1, cap)?,
                enumerate_simple_loop_count(Dimension::Two, 2, cap)?,
            ]),
        ),
        check(
            "example: decode +---++,++---+",
            "RULLDR",
            decode_pair(&"+---++,++---+".parse()?),
        ),
        check(
            "example: RULLDR returns to the origin",
            "0 0",
            list(walks::displacement(&rulldr)),
        ),
        check(
            "example: encode RULLDR",
            "+---++,++---+",
            encode_walk(&rulldr)?,
        ),
        check(
            "example: encode RUDDLU",
            "+-++--,++---+",
            encode_walk(&Walk::parse(Dimension::Two, "RUDDLU")?)?,
        ),
    ];
    for (dim, n_max) in [(Dimension::Two, 5), (Dimension::One, 8)] {
        let formula = (0..=n_max).map(|n| closed_form_loop_count(dim, n));
        let enumerated = (0..=n_max)
            .map(|n| enumerate_loop_count(dim, n, EnumCap::uniform(n_max)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(check(
            &format!(
                "B_n = C(2n,n)^{} for n <= {n_max} by enumeration",
                dim.get()
            ),
            list(formula),
            list(enumerated),
        ));
    }
    let b = loop_series(Dimension::Two, 10);
    rows.push(check(
        "B_n (2D) by interleaving 1D loops",
        list(b.coeffs()),
        list(loop_series_by_convolution(Dimension::Two, 10).coeffs()),
    ));
    let ratios = [Dimension::One, Dimension::Two]
        .map(|d| asymptotic_ratio(d, 1000).map(|r| (r.ratio - 1.0).abs() < 1e-3));
    rows.push(check(
        "b_n ~ 1/sqrt(pi n) (1D), 1/(pi n) (2D) at n = 1000",
        "true true",
        list([ratios[0].clone()?, ratios[1].clone()?]),
    ));
    let all_pass = rows.iter().all(|r| r.pass);
    ctx.emit(&rows)?;
    eprintln!(
        "polya: {} of {} checks passed in {:.2?}",
        rows.iter().filter(|r| r.pass).count(),
        rows.len(),
        start.elapsed()
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
