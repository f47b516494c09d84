//! Command-line surface for the z4codes library. Every invocation is
//! deterministic given its flags; identical flags produce byte-identical
//! output. `verify` exits 0 exactly when every checked row matches its
//! expected-verdict annotation.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use z4codes::code::coordinate_code_is_constacyclic;
use z4codes::factor::factor_xn_minus_1;
use z4codes::gray::z4_digits;
use z4codes::poly::Z4Poly;
use z4codes::ring::Ru;
use z4codes::search::{build_thm312, run_search, verify_table, GeneratorRule, RowFilter};
use z4codes::tables::{raw_data, TableId};
use z4codes::weight::{min_weight_enumerate, Budgets, CodeParams, Metric};
use z4codes::Error;

#[derive(Parser)]
#[command(name = "z4codes", version, about = "Constacyclic codes over Z4[u]/(u^2-1) and their Z4 Gray images")]
struct Cli {
    /// Cap the number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Code construction flags shared by several subcommands.
#[derive(Args)]
struct CodeArgs {
    /// Ring length n (odd).
    #[arg(long)]
    n: usize,
    /// First generator, high-to-low digits (0 for none).
    #[arg(long, default_value = "0")]
    g1: String,
    /// Second generator; the code is <g1(y), u g2(y)> with y = lambda x.
    #[arg(long, default_value = "0")]
    g2: String,
    /// Shift constant: 1+2u (constacyclic) or 1 (cyclic).
    #[arg(long, default_value = "1+2u")]
    lambda: String,
}

#[derive(Args)]
struct BudgetArgs {
    /// log2 of the enumeration cap (env Z4CODES_CAP).
    #[arg(long)]
    cap: Option<u32>,
    /// Membership-test budget for low-weight scans (env Z4CODES_SCAN_BUDGET).
    #[arg(long)]
    scan_budget: Option<u64>,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Ok(v) = std::env::var("Z4CODES_CAP") {
            if let Ok(v) = v.parse() {
                b.enum_cap_log2 = v;
            }
        }
        if let Ok(v) = std::env::var("Z4CODES_SCAN_BUDGET") {
            if let Ok(v) = v.parse() {
                b.scan_budget = v;
            }
        }
        if let Some(v) = self.cap {
            b.enum_cap_log2 = v;
        }
        if let Some(v) = self.scan_budget {
            b.scan_budget = v;
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - 1 over Z4 into basic irreducible factors (n odd).
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build a code and report the parameters of its Gray image.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Weight to minimize: lee or euclidean.
        #[arg(long, default_value = "lee")]
        metric: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical generator matrix of the Gray image.
    Gray {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Minimum-weight details of the Gray image.
    Minweight {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "lee")]
        metric: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Dual of the code in its coordinate representation.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Search all divisor-triple pairs at length n, best code per type.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "lee")]
        metric: String,
        /// log2 of the per-code enumeration cap.
        #[arg(long, default_value_t = 20)]
        cap: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Verify embedded reference tables against their printed parameters.
    Verify {
        /// Table to check: 1, 2 or 3.
        #[arg(long)]
        table: String,
        /// Restrict rows: `n=7` or a 1-based range `2..5`.
        #[arg(long)]
        rows: Option<String>,
        /// Combination rule for three-generator rows, e.g. "g1;u*g2".
        #[arg(long)]
        rule: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Dump the embedded reference tables.
    Tables {
        #[arg(long)]
        table: Option<String>,
    },
}

fn parse_code(args: &CodeArgs) -> Result<(z4codes::RCode, usize), Error> {
    let g1 = Z4Poly::from_digit_string(&args.g1)?;
    let g2 = Z4Poly::from_digit_string(&args.g2)?;
    let lambda: Ru = args.lambda.parse()?;
    let code = if lambda == Ru::LAMBDA {
        build_thm312(args.n, &g1, &g2)?
    } else {
        if args.n == 0 || args.n % 2 == 0 {
            return Err(Error::EvenLength(args.n));
        }
        let gens = vec![
            z4codes::RPoly::from_z4(&g1),
            z4codes::RPoly::from_z4(&g2).times_u(),
        ];
        z4codes::RCode::new(args.n, lambda, gens)?
    };
    Ok((code, args.n))
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Factor { n, json } => {
            let fs = factor_xn_minus_1(n)?;
            if json {
                println!("{}", fs.to_json());
            } else {
                let names: Vec<String> =
                    fs.factors().iter().map(|f| f.digit_string()).collect();
                println!("{}", names.join(", "));
            }
        }
        Command::Build { code, metric, budget, json } => {
            let metric = Metric::parse(&metric)?;
            let budgets = budget.budgets();
            let (rcode, n) = parse_code(&code)?;
            let image = rcode.gray_image();
            let (k1, k2) = image.type_of();
            if image.is_zero() {
                if json {
                    println!(
                        "{}",
                        serde_json::json!({"length": 2*n, "k1": 0, "k2": 0, "zero": true})
                    );
                } else {
                    println!("({}, 4^0 2^0) zero code", 2 * n);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let w = min_weight_enumerate(&image, metric, budgets.enum_cap_log2)?;
            let params = CodeParams { length: 2 * n, k1, k2, d: w.min_weight, metric };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "length": 2*n, "k1": k1, "k2": k2,
                        "d": w.min_weight, "metric": metric.subscript(),
                        "exact": w.exact, "method": w.method.to_string(),
                        "witness": z4_digits(&w.witness),
                    })
                );
            } else {
                println!("{} {}", params, if w.exact { "exact" } else { "not exact" });
                println!("method: {}", w.method);
                println!("witness: {}", z4_digits(&w.witness));
            }
        }
        Command::Gray { code, json } => {
            let (rcode, n) = parse_code(&code)?;
            let image = rcode.gray_image();
            if json {
                println!("{}", image.to_json());
            } else {
                let (k1, k2) = image.type_of();
                println!("length: {}", 2 * n);
                println!("type: 4^{k1} 2^{k2}");
                println!("rows:");
                for row in image.rows() {
                    println!("{}", z4_digits(row));
                }
            }
        }
        Command::Minweight { code, metric, budget, json } => {
            let metric = Metric::parse(&metric)?;
            let budgets = budget.budgets();
            let (rcode, _) = parse_code(&code)?;
            let image = rcode.gray_image();
            let w = min_weight_enumerate(&image, metric, budgets.enum_cap_log2)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "metric": metric.to_string(), "min_weight": w.min_weight,
                        "exact": w.exact, "method": w.method.to_string(),
                        "witness": z4_digits(&w.witness),
                    })
                );
            } else {
                println!("metric: {metric}");
                println!("min weight: {}", w.min_weight);
                println!("exact: {}", w.exact);
                println!("method: {}", w.method);
                println!("witness: {}", z4_digits(&w.witness));
            }
        }
        Command::Dual { code, json } => {
            let (rcode, n) = parse_code(&code)?;
            let dual = rcode.dual_coordinate_code();
            let constacyclic = coordinate_code_is_constacyclic(&dual, rcode.lambda());
            if json {
                let mut v = dual.to_json();
                v["constacyclic"] = serde_json::json!(constacyclic);
                v["lambda"] = serde_json::json!(rcode.lambda().to_string());
                println!("{v}");
            } else {
                let (k1, k2) = dual.type_of();
                println!("length: {}", 2 * n);
                println!("type: 4^{k1} 2^{k2}");
                println!("constacyclic({}): {}", rcode.lambda(), constacyclic);
                println!("rows:");
                for row in dual.rows() {
                    println!("{}", z4_digits(row));
                }
            }
        }
        Command::Search { n, metric, cap, json, csv } => {
            let metric = Metric::parse(&metric)?;
            let report = run_search(n, metric, cap)?;
            if json {
                println!("{}", report.to_json());
            } else if csv {
                print!("{}", report.to_csv());
            } else {
                println!(
                    "n={} metric={} pairs={} distinct={}",
                    report.n,
                    report.metric,
                    report.pairs_scanned,
                    report.codes.len()
                );
                for c in &report.classes {
                    println!(
                        "(({}, 4^{} 2^{}, {}_{})) size=2^{}{} witness={}",
                        2 * report.n,
                        c.k1,
                        c.k2,
                        c.d,
                        report.metric.subscript(),
                        c.log2_size,
                        if c.exact { "" } else { " (upper bound)" },
                        c.witness
                    );
                }
            }
        }
        Command::Verify { table, rows, rule, budget, json, csv } => {
            let id = TableId::parse(&table)?;
            let filter = match rows {
                None => RowFilter::All,
                Some(s) => RowFilter::parse(&s)?,
            };
            let rule = rule.as_deref().map(GeneratorRule::parse).transpose()?;
            let budgets = budget.budgets();
            let report = verify_table(id, filter, &budgets, rule.as_ref());
            if json {
                println!("{}", report.to_json());
            } else if csv {
                print!("{}", report.to_csv());
            } else {
                for r in &report.rows {
                    let g3 = r
                        .row
                        .g3_raw
                        .as_ref()
                        .map(|g| format!(" g3={g}"))
                        .unwrap_or_default();
                    println!(
                        "T{} n={} g1={} g2={}{} claimed {}: {} [expected {}] {}",
                        report.table.number(),
                        r.row.n,
                        r.row.g1_raw,
                        r.row.g2_raw,
                        g3,
                        r.row.claimed,
                        r.verification.verdict,
                        r.row.expected_verdict,
                        if r.matches_expected { "ok" } else { "DIVERGED" }
                    );
                    for note in &r.verification.notes {
                        println!("    note: {note}");
                    }
                }
                let ok = report.rows.iter().filter(|r| r.matches_expected).count();
                println!("rows={} ok={}", report.rows.len(), ok);
            }
            if !report.all_expected() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Tables { table } => {
            let id = table.as_deref().map(TableId::parse).transpose()?;
            for line in raw_data().lines() {
                if line.starts_with('#') || line.trim().is_empty() {
                    continue;
                }
                if let Some(id) = id {
                    if !line.starts_with(&format!("{},", id.number())) {
                        continue;
                    }
                }
                println!("{line}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
