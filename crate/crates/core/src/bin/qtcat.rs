use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qtcatalan::catalan::{catalan_poly3, catalan_poly_k4, catalan_poly_lambda3, Region3};
use qtcatalan::dyck::{
    area3, area4, bounce3, bounce4, bounce4_case, enumerate_paths3, enumerate_paths4, KVec3,
};
use qtcatalan::polynomial::SparsePoly;
use qtcatalan::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "qtcat",
    version,
    about = "q,t-Catalan polynomials for length-3 vectors and k^4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// C_k(q,t) for a length-3 vector k.
    Poly3 {
        #[arg(long, value_parser = parse_triple)]
        k: [u32; 3],
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sum of C_k over the orderings of a partition.
    PolyLambda {
        #[arg(long, value_parser = parse_triple)]
        lambda: [u32; 3],
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// C_{k^4}(q,t).
    Poly4 {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite over a range.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        max: Option<u32>,
        /// Truncation order for the gf suite.
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Per-path statistics as CSV.
    Table {
        #[arg(long, value_enum)]
        what: What,
        /// `K1,K2,K3` for stats3, a single `K` for stats4.
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Symmetry3,
    Symmetry4,
    Involution,
    Gf,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Stats3,
    Stats4,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
}

fn parse_triple(s: &str) -> Result<[u32; 3], String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<u32>| format!("expected three comma-separated values, got {}", v.len()))
}

fn render(p: &SparsePoly, format: Format) -> String {
    match format {
        Format::Json => p.to_json_pretty(),
        Format::Latex => p.to_latex(),
        Format::Text => p.to_string(),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn table(what: What, k: &str) -> Result<String, String> {
    let mut out = String::new();
    match what {
        What::Stats3 => {
            let [k1, k2, k3] = parse_triple(k)?;
            out.push_str("r2,r3,area,bounce,region\n");
            for p in enumerate_paths3(KVec3::new(k1, k2, k3)) {
                let region = Region3::ALL
                    .into_iter()
                    .find(|r| r.contains(&p))
                    .expect("regions cover every path");
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    p.r2,
                    p.r3,
                    area3(&p),
                    bounce3(&p),
                    region
                ));
            }
        }
        What::Stats4 => {
            let k: u32 = k.trim().parse().map_err(|e| format!("`{k}`: {e}"))?;
            out.push_str("a,b,c,area,bounce,case\n");
            for p in enumerate_paths4(k) {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    p.a,
                    p.b,
                    p.c,
                    area4(&p),
                    bounce4(&p),
                    bounce4_case(&p).name()
                ));
            }
        }
    }
    Ok(out)
}

fn verify(suite: SuiteArg, max: Option<u32>, truncate: Option<u32>) -> ExitCode {
    let suite = match suite {
        SuiteArg::Symmetry3 => Suite::Symmetry3,
        SuiteArg::Symmetry4 => Suite::Symmetry4,
        SuiteArg::Involution => Suite::Involution,
        SuiteArg::Gf => Suite::Gf,
    };
    let bound = match suite {
        Suite::Gf => truncate.or(max),
        _ => max,
    }
    .unwrap_or(suite.default_max());
    eprintln!("running {} up to {bound}", suite.name());
    let outcomes = match run_suite(suite, bound, |o| eprintln!("  {o}")) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(ce) = outcomes.iter().find_map(|o| o.counterexample.as_ref()) {
        println!(
            "{}",
            serde_json::to_string_pretty(ce).expect("serializable")
        );
        return ExitCode::from(1);
    }
    let summary = serde_json::json!({
        "suite": suite.name(),
        "max": bound,
        "passed": true,
        "checks": outcomes,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("serializable")
    );
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Poly3 {
            k: [k1, k2, k3],
            format,
        } => {
            println!("{}", render(&catalan_poly3(KVec3::new(k1, k2, k3)), format));
        }
        Command::PolyLambda { lambda, format } => match catalan_poly_lambda3(lambda) {
            Ok(p) => println!("{}", render(&p, format)),
            Err(e) => return usage_error(e),
        },
        Command::Poly4 { k, format } => println!("{}", render(&catalan_poly_k4(k), format)),
        Command::Verify {
            suite,
            max,
            truncate,
        } => return verify(suite, max, truncate),
        Command::Table {
            what,
            k,
            format: TableFormat::Csv,
        } => match table(what, &k) {
            Ok(s) => print!("{s}"),
            Err(e) => return usage_error(e),
        },
    }
    ExitCode::SUCCESS
}
