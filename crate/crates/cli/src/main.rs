use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lattes_core::bigfloat::MIN_PRECISION;
use lattes_core::cfrac::{expand, period_matrix};
use lattes_core::dynsys::periodic_points;
use lattes_core::pipeline::{
    comparison_report, conjugacy_test_matrices, functor_f, functor_rm, verify_worked_example, FunctorOutput,
};
use lattes_core::sft::{k_invariants, zeta_sft};
use lattes_core::{EllipticCurve, Error, IntMatrix, QuadElem, QuadSurd, RationalMap, SftMatrix};

const PRECISION_ENV: &str = "LATTES_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "lattes", version, about = "Lattès maps, pseudo-lattices and subshifts of finite type")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Float precision in bits for root finding (at least 64). LATTES_PRECISION overrides it.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Largest matrix entry tried by the equivalence searches.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    entry_bound: u32,
    /// Largest lag tried by the shift-equivalence search.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    lag_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the chain from (curve,) D and epsilon to the matrix A and its invariants.
    Functor {
        #[arg(long = "D")]
        d: u64,
        /// Multiplier as "a+b*sqrt(D)".
        #[arg(long)]
        eps: String,
        /// Curve coefficients "a,b,c" of y^2 = x^3 + a x^2 + b x + c.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Zeta function 1/det(I - tA) of a non-negative matrix.
    Zeta {
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        matrix: String,
    },
    /// Solutions of phi^n(x) = x on the projective line.
    Periodic {
        /// Map as "num_coeffs / den_coeffs", lowest degree first.
        #[arg(long, conflicts_with = "curve", required_unless_present = "curve")]
        map: Option<String>,
        /// Use the doubling map of this curve.
        #[arg(long)]
        curve: Option<String>,
        #[arg(short = 'n', long = "period")]
        n: u32,
    },
    /// Shift equivalence over Z+ (with GL2(Z) similarity for 2x2 input).
    ShiftEquiv {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Continued fraction of a quadratic surd "(P+sqrt(D))/Q".
    Cfrac {
        #[arg(long)]
        surd: String,
    },
    /// Periodic-point counts of the doubling map next to tr(A^n).
    Compare {
        #[arg(long)]
        curve: String,
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        eps: String,
        #[arg(short = 'n', long = "period", default_value_t = 3)]
        n: u32,
    },
    /// Replay the worked example and compare against the expected values.
    Verify,
}

enum Failure {
    Domain(String),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

struct Rendered {
    json: Value,
    text: String,
}

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, s: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("invalid {what}: {e}")))
}

fn precision(config: &Config) -> Result<u32, Failure> {
    let bits = match std::env::var(PRECISION_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{PRECISION_ENV}={v:?} is not an integer")))?,
        Err(_) => config.precision,
    };
    if bits < MIN_PRECISION {
        return Err(Failure::Usage(format!("precision must be at least {MIN_PRECISION} bits, got {bits}")));
    }
    Ok(bits)
}

fn functor_text(out: &FunctorOutput) -> String {
    let mut lines = vec![
        format!("D = {}", out.d),
        format!("epsilon = {}", out.epsilon),
        format!("A = {}", out.a),
        format!("theta' = {}", out.theta_prime),
        format!("cf = {}", out.cf),
        format!("T = {}", out.t),
        format!("zeta = {}", out.zeta),
        format!("K0 = {}", out.k0),
        format!("index = {}", out.index),
        format!("lattice = {}", out.lattice),
        format!("endomorphism degree = {}", out.endomorphism_degree),
    ];
    if let (Some(map), Some(deg)) = (&out.lattes_map, out.lattes_degree) {
        lines.push(format!("lattes map = {} (degree {deg})", map.pretty()));
    }
    lines.join("\n")
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Functor { d, eps, curve } => {
            let eps: QuadElem = parse("--eps", eps)?;
            let out = match curve {
                Some(c) => functor_f(&parse::<EllipticCurve>("--curve", c)?.with_cm(*d), &eps)?,
                None => functor_rm(*d, &eps)?,
            };
            Ok(Rendered { json: to_json(&out), text: functor_text(&out) })
        }
        Command::Zeta { matrix } => {
            let a: SftMatrix = parse("--matrix", matrix)?;
            let zeta = zeta_sft(&a);
            let series: Vec<String> = zeta.series(8).iter().map(|c| c.to_string()).collect();
            let k = k_invariants(&a);
            Ok(Rendered {
                json: json!({
                    "A": to_json(&a),
                    "zeta": to_json(&zeta),
                    "series": series,
                    "K0": to_json(&k.k0),
                    "K1_rank": k.k1_rank,
                    "BowenFranks": to_json(&k.bowen_franks),
                }),
                text: zeta.to_string(),
            })
        }
        Command::Periodic { map, curve, n } => {
            let phi: RationalMap = match (map, curve) {
                (Some(m), _) => parse("--map", m)?,
                (None, Some(c)) => parse::<EllipticCurve>("--curve", c)?.duplication_map(),
                (None, None) => return Err(Failure::Usage("one of --map or --curve is required".into())),
            };
            let report = periodic_points(&phi, *n, precision(cfg)?)?;
            let points: Vec<String> =
                report.finite_points.iter().map(|[re, im]| format!("  {re:+.15e} {im:+.15e}i")).collect();
            let text = format!(
                "map = {}\nn = {}, degree = {}\nwith multiplicity = {}\ndistinct = {}\ninfinity fixed = {} (multiplicity {})\nconverged = {}\nfinite points:\n{}",
                phi.pretty(),
                report.n,
                report.degree,
                report.count_with_multiplicity,
                report.count_distinct,
                report.infinity_fixed,
                report.infinity_multiplicity,
                report.converged,
                points.join("\n"),
            );
            Ok(Rendered { json: to_json(&report), text })
        }
        Command::ShiftEquiv { a, b } => {
            let a: IntMatrix = parse("--A", a)?;
            let b: IntMatrix = parse("--B", b)?;
            if a.rows() == 2 && b.rows() == 2 && a.is_square() && b.is_square() {
                let v = conjugacy_test_matrices(&a, &b, cfg.entry_bound, cfg.lag_bound)?;
                let text =
                    format!("shift equivalence: {}\nGL2(Z) similarity: {}", v.shift_equivalence, v.gl2z_similarity);
                Ok(Rendered { json: to_json(&v), text })
            } else {
                let (sa, sb) = (SftMatrix::new(a)?, SftMatrix::new(b)?);
                let v = lattes_core::sft::shift_equivalent(&sa, &sb, cfg.entry_bound, cfg.lag_bound)?;
                Ok(Rendered {
                    json: json!({ "shift_equivalence": to_json(&v) }),
                    text: format!("shift equivalence: {v}"),
                })
            }
        }
        Command::Cfrac { surd } => {
            let x: QuadSurd = parse("--surd", surd)?;
            let cf = expand(&x);
            let t = period_matrix(&cf)?;
            Ok(Rendered {
                json: json!({ "surd": to_json(&x), "cf": to_json(&cf), "T": to_json(&t) }),
                text: cf.to_string(),
            })
        }
        Command::Compare { curve, d, eps, n } => {
            let curve = parse::<EllipticCurve>("--curve", curve)?.with_cm(*d);
            let eps: QuadElem = parse("--eps", eps)?;
            let report = comparison_report(&curve, &eps, *n)?;
            let mut lines = vec![
                format!("map = {} (degree {}), A = {}", report.map.pretty(), report.degree, report.a),
                "n  trace  enumeration  distinct  with_multiplicity".to_string(),
            ];
            for r in &report.rows {
                let e = r.enumeration_count.map_or("-".to_string(), |e| e.to_string());
                lines.push(format!(
                    "{:<2} {:<6} {:<12} {:<9} {}",
                    r.n, r.trace_count, e, r.distinct_count, r.multiplicity_count
                ));
            }
            lines.push(format!("note: {}", report.note));
            Ok(Rendered { json: to_json(&report), text: lines.join("\n") })
        }
        Command::Verify => {
            let report = verify_worked_example()?;
            let text = report
                .checks
                .iter()
                .map(|c| format!("{} {} = {}", if c.ok { "ok  " } else { "FAIL" }, c.name, c.actual))
                .collect::<Vec<_>>()
                .join("\n");
            if !report.passed {
                let diff = report
                    .checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| format!("{}:\n- {}\n+ {}", c.name, c.expected, c.actual))
                    .collect::<Vec<_>>()
                    .join("\n");
                return Err(Failure::Mismatch(diff));
            }
            Ok(Rendered { json: to_json(&report), text })
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.config.output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON")),
                Output::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(diff)) => {
            eprintln!("verification mismatch:\n{diff}");
            ExitCode::from(3)
        }
    }
}
