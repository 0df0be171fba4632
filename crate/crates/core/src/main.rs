use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use abundancy::abundancy::{
    abundancy_index, bound_excess_over_sqrt, index_lower_bound_from_square, sandwich_check,
    x_exponent, SandwichStatus,
};
use abundancy::arith::{sigma, Factorization, Natural};
use abundancy::even_perfect::mersenne_scan_with;
use abundancy::interval::{
    certify_against, one_plus_sqrt3, Comparison, IntervalReal, PrecisionConfig,
};
use abundancy::opn::{
    residual_case_classify, theorem2_contradiction_scan, theorem2_lower_bound, validate_eulerian,
    CheckStatus, EulerianCandidate,
};
use abundancy::ratio::{parse_ratio, render, Ratio};
use abundancy::report::run_report;
use abundancy::Result;

#[derive(Parser)]
#[command(
    name = "abundancy",
    version,
    about = "Abundancy indices and odd perfect number constraints"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Initial working precision in bits.
    #[arg(long, global = true, env = "ABUNDANCY_BITS", default_value_t = 256)]
    bits: u32,

    /// Precision ceiling for escalation.
    #[arg(
        long,
        global = true,
        env = "ABUNDANCY_MAX_BITS",
        default_value_t = 4096
    )]
    max_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sum of divisors.
    Sigma { n: Factorization },
    /// Abundancy index I(n) = sigma(n)/n.
    Abundancy { n: Factorization },
    /// Abundancy exponent x(n) = ln I(n^2) / ln I(n).
    Exponent { n: Factorization },
    /// min(x(a), x(b)) < x(ab) < max(x(a), x(b)) for coprime a, b.
    Sandwich { a: Factorization, b: Factorization },
    /// Validate a candidate line `q=<int> k=<int> n=<factored>`.
    Check { candidate: String },
    /// Lower bound L^(1/x(u)) on I(n) from I(n^2) > L.
    Bound {
        #[arg(long = "L", value_parser = parse_ratio_arg)]
        l: Ratio,
        #[arg(long)]
        u: Natural,
    },
    /// f(q, u) = (q+1)/q + (2q/(q+1))^(1/x(u)).
    F {
        #[arg(long)]
        q: Natural,
        #[arg(long)]
        u: Natural,
    },
    /// Certify f(q, u) against 1 + sqrt 3 for primes q = 1 (mod 4) up to qmax.
    ScanTheorem2 {
        #[arg(long)]
        qmax: u64,
        #[arg(long)]
        u: u64,
    },
    /// Residue class of an Euler prime mod 12.
    Classify { q: Natural },
    /// Exponents p <= limit with 2^p - 1 prime.
    Mersenne {
        #[arg(long)]
        limit: u64,
        /// Allow limits above 2500.
        #[arg(long)]
        allow_large: bool,
    },
    /// Re-derive every constant and re-run every suite.
    Report {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_ratio_arg(s: &str) -> std::result::Result<Ratio, String> {
    parse_ratio(s).map_err(|e| e.to_string())
}

/// Rendered text plus whether the outcome is clean (no failures, nothing undecided).
struct Output {
    text: String,
    json: serde_json::Value,
    clean: bool,
}

fn print_json(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes")
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = PrecisionConfig::new(cli.bits, cli.max_bits)?;
    let out = match &cli.command {
        Command::Sigma { n } => {
            let s = sigma(n);
            Output {
                text: format!("sigma({n}) = {s}"),
                json: json!({ "n": n.to_string(), "value": n.value().to_string(), "sigma": s.to_string() }),
                clean: true,
            }
        }
        Command::Abundancy { n } => {
            let i = abundancy_index(n);
            let e = IntervalReal::from_ratio(&i, cfg.initial_bits);
            Output {
                text: format!("I({n}) = {} = {e}", render(&i)),
                json: json!({ "n": n.to_string(), "index": render(&i), "enclosure": e.to_string() }),
                clean: true,
            }
        }
        Command::Exponent { n } => {
            let x = x_exponent(n, &cfg)?;
            Output {
                text: format!(
                    "x({n}) = {}\n1 < x < 2 certified: {}",
                    x.value, x.range_certified
                ),
                json: json!({
                    "n": n.to_string(),
                    "x": x.value.to_string(),
                    "bits": x.value.bits(),
                    "range_certified": x.range_certified,
                }),
                clean: x.range_certified,
            }
        }
        Command::Sandwich { a, b } => {
            let o = sandwich_check(a, b, &cfg)?;
            let status = serde_json::to_value(o.status).expect("status serializes");
            let status = status.as_str().unwrap_or_default().to_string();
            Output {
                text: format!(
                    "x({a}) = {}\nx({b}) = {}\nx({}) = {}\n{status}",
                    o.x_a,
                    o.x_b,
                    a.mul(b),
                    o.x_ab
                ),
                json: json!({
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "x_a": o.x_a.to_string(),
                    "x_b": o.x_b.to_string(),
                    "x_ab": o.x_ab.to_string(),
                    "status": status,
                    "bits": o.bits,
                }),
                clean: o.status == SandwichStatus::Holds,
            }
        }
        Command::Check { candidate } => {
            let c: EulerianCandidate = candidate.parse()?;
            let report = validate_eulerian(&c, &cfg)?;
            Output {
                text: report.to_string(),
                json: serde_json::to_value(&report).expect("report serializes"),
                clean: report.all_pass(),
            }
        }
        Command::Bound { l, u } => {
            let bound = index_lower_bound_from_square(l, u, &cfg)?;
            let excess = certify_against(&cfg, &Ratio::from_integer(0.into()), |bits| {
                bound_excess_over_sqrt(l, u, bits)
            })?;
            let above = excess.outcome == Comparison::Greater;
            Output {
                text: format!(
                    "({})^(1/x({u})) = {bound}\nabove sqrt({}): {}",
                    render(l),
                    render(l),
                    excess.outcome
                ),
                json: json!({
                    "L": render(l),
                    "u": u.to_string(),
                    "bound": bound.to_string(),
                    "above_sqrt": excess.outcome.to_string(),
                }),
                clean: above,
            }
        }
        Command::F { q, u } => {
            let f = theorem2_lower_bound(q, u, &cfg)?;
            let ceiling = one_plus_sqrt3(cfg.initial_bits);
            let relation = f.compare(&ceiling);
            Output {
                text: format!("f({q}, {u}) = {f}\n1+sqrt(3) = {ceiling}\nf vs ceiling: {relation}"),
                json: json!({
                    "q": q.to_string(),
                    "u": u.to_string(),
                    "f": f.to_string(),
                    "ceiling": ceiling.to_string(),
                    "relation": relation.to_string(),
                }),
                clean: relation != Comparison::Undecided,
            }
        }
        Command::ScanTheorem2 { qmax, u } => {
            let scan = theorem2_contradiction_scan(*qmax, *u, &cfg)?;
            let report = scan.to_report();
            let summary: serde_json::Value =
                serde_json::from_str(&scan.summary_json()).expect("summary is json");
            Output {
                text: format!("{report}\n{}", print_json(&summary)),
                json: json!({ "summary": summary, "report": report }),
                clean: report.count(CheckStatus::Undecided) == 0,
            }
        }
        Command::Classify { q } => {
            let c = residual_case_classify(q)?;
            let mut text = format!("{q}: {}", c.case);
            for note in &c.notes {
                text.push_str(&format!("\n  {note}"));
            }
            Output {
                text,
                json: serde_json::to_value(&c).expect("classification serializes"),
                clean: true,
            }
        }
        Command::Mersenne { limit, allow_large } => {
            let ps = mersenne_scan_with(*limit, *allow_large)?;
            let list: Vec<String> = ps.iter().map(u64::to_string).collect();
            Output {
                text: list.join(" "),
                json: json!({ "limit": limit, "exponents": ps }),
                clean: true,
            }
        }
        Command::Report { seed } => {
            let report = run_report(*seed, &cfg)?;
            Output {
                text: report.to_string(),
                json: serde_json::to_value(&report).expect("report serializes"),
                clean: report.all_clean(),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", print_json(&out.json));
            } else {
                println!("{}", out.text);
            }
            if out.clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
