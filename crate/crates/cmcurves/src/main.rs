//! Command-line front end: prediction, point counting, L-polynomial
//! recovery, and the verification harness.
//!
//! Exit codes: 0 success / no mismatch, 1 mismatch found, 2 config error,
//! 3 I/O error.

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use cmcurves::curves::{count_sequence, parse_curve, Curve};
use cmcurves::lpoly::{charpoly, classify, lpoly_from_counts};
use cmcurves::splitting::{predict_reduction, AbelianCMFieldSpec};
use cmcurves::verify::{
    check_fact51, run_to_writer, scan_maximal, OutputFormat, RunConfig, RunError, Verdict,
    DEFAULT_EXTENSION_CAP, DEFAULT_MAX_FIELD_SIZE,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cmcurves",
    about = "Predict and verify reduction types of CM Jacobians",
    after_help = family_help()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn family_help() -> String {
    let mut s = String::from("Curve DSL families:\n");
    for line in cmcurves::curves::FamilyRegistry::builtin().usage_lines() {
        s.push_str("  ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Predict the reduction type at p from prime splitting alone.
    Predict {
        /// CM field: cyclotomic:<N> or composite:<M>:<d>
        #[arg(long)]
        field: String,
        #[arg(long)]
        prime: u64,
    },
    /// Count points of a curve over F_{p^k} by brute force.
    Count {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        prime: u64,
        /// Extension degree k.
        #[arg(long)]
        ext: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_FIELD_SIZE)]
        max_field_size: u128,
    },
    /// Recover the L-polynomial at p from counts N_1..N_g.
    Lpoly {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_FIELD_SIZE)]
        max_field_size: u128,
    },
    /// Run prediction vs. observation over a prime range.
    Verify {
        /// Curve DSL; repeat for several families.
        #[arg(long = "curve", required = true)]
        curves: Vec<String>,
        #[arg(long)]
        prime_min: u64,
        #[arg(long)]
        prime_max: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_FIELD_SIZE)]
        max_field_size: u128,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
        format: FormatArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check the genus-3 quotient curve charpoly table over a prime range.
    Fact51 {
        #[arg(long)]
        prime_min: u64,
        #[arg(long)]
        prime_max: u64,
    },
    /// Scan for Hasse–Weil maximal curves via N_2 alone.
    ScanMaximal {
        #[arg(long = "curve", required = true)]
        curves: Vec<String>,
        #[arg(long)]
        prime_min: u64,
        #[arg(long)]
        prime_max: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_FIELD_SIZE)]
        max_field_size: u128,
    },
}

fn parse_field(s: &str) -> Result<AbelianCMFieldSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["cyclotomic", n] => {
            let n: u64 = n.parse().map_err(|_| format!("bad integer `{n}`"))?;
            AbelianCMFieldSpec::cyclotomic(n).map_err(|e| e.to_string())
        }
        ["composite", m, d] => {
            let m: u64 = m.parse().map_err(|_| format!("bad integer `{m}`"))?;
            let d: u64 = d.parse().map_err(|_| format!("bad integer `{d}`"))?;
            AbelianCMFieldSpec::composite_real(m, d).map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "bad field spec `{s}`; expected cyclotomic:<N> or composite:<M>:<d>"
        )),
    }
}

fn config_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn io_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("I/O error: {msg}");
    ExitCode::from(EXIT_IO)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Predict { field, prime } => {
            let spec = match parse_field(&field) {
                Ok(s) => s,
                Err(e) => return config_err(e),
            };
            // Rationality of the superspecial charpoly over Q is a property
            // of a concrete curve; the bare field predictor assumes it.
            match predict_reduction(&spec, prime, true) {
                Ok(pred) => {
                    println!("{}", serde_json::to_string_pretty(&pred).expect("json"));
                    ExitCode::SUCCESS
                }
                Err(e) => config_err(e),
            }
        }
        Command::Count {
            curve,
            prime,
            ext,
            max_field_size,
        } => {
            let curve = match parse_curve(&curve) {
                Ok(c) => c,
                Err(e) => return config_err(e),
            };
            if let Err(reason) = curve.good_prime(prime) {
                return config_err(format!("bad reduction at {prime}: {reason}"));
            }
            if ext == 0 {
                return config_err("--ext must be >= 1");
            }
            match count_sequence(curve.as_ref(), prime, ext, max_field_size) {
                Ok(seq) => {
                    println!("{}", seq.counts[ext as usize - 1]);
                    ExitCode::SUCCESS
                }
                Err(e) => config_err(e),
            }
        }
        Command::Lpoly {
            curve,
            prime,
            max_field_size,
        } => {
            let curve = match parse_curve(&curve) {
                Ok(c) => c,
                Err(e) => return config_err(e),
            };
            if let Err(reason) = curve.good_prime(prime) {
                return config_err(format!("bad reduction at {prime}: {reason}"));
            }
            let g = curve.genus();
            let counts = match count_sequence(curve.as_ref(), prime, g as u32, max_field_size) {
                Ok(c) => c,
                Err(e) => return config_err(e),
            };
            let lpoly = match lpoly_from_counts(&counts, g) {
                Ok(l) => l,
                Err(e) => return config_err(e),
            };
            let obs = classify(&lpoly, counts.counts.get(1).copied());
            let out = serde_json::json!({
                "p": prime,
                "g": g,
                "l_coefficients": lpoly.coefficients,
                "charpoly": charpoly(&lpoly),
                "charpoly_display": charpoly(&lpoly).to_string(),
                "observation": obs,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            ExitCode::SUCCESS
        }
        Command::Verify {
            curves,
            prime_min,
            prime_max,
            max_field_size,
            threads,
            format,
            out,
        } => {
            let cfg = RunConfig {
                prime_min,
                prime_max,
                families: curves,
                max_field_size,
                extension_cap: DEFAULT_EXTENSION_CAP,
                threads,
                output_path: out.clone(),
                format: match format {
                    FormatArg::Jsonl => OutputFormat::Jsonl,
                    FormatArg::Csv => OutputFormat::Csv,
                },
            };
            if let Err(e) = cfg.validate() {
                return config_err(e);
            }
            let result = match &out {
                Some(path) => {
                    let file = match std::fs::File::create(path) {
                        Ok(f) => f,
                        Err(e) => return io_err(e),
                    };
                    let mut w = std::io::BufWriter::new(file);
                    run_to_writer(&cfg, &mut w).and_then(|s| {
                        w.flush()?;
                        Ok(s)
                    })
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut w = stdout.lock();
                    run_to_writer(&cfg, &mut w)
                }
            };
            match result {
                Ok(summary) => {
                    eprintln!(
                        "verify: {} records — {} match, {} mismatch, {} undetermined, {} skipped",
                        summary.total(),
                        summary.matches,
                        summary.mismatches,
                        summary.undetermined,
                        summary.skipped
                    );
                    if summary.mismatches == 0 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_MISMATCH)
                    }
                }
                Err(RunError::Config(e)) => config_err(e),
                Err(RunError::Io(e)) => io_err(e),
            }
        }
        Command::Fact51 {
            prime_min,
            prime_max,
        } => {
            if prime_min > prime_max {
                return config_err(format!("prime_min {prime_min} > prime_max {prime_max}"));
            }
            let cfg = RunConfig {
                prime_min,
                prime_max,
                families: vec!["gk-x".into()],
                max_field_size: DEFAULT_MAX_FIELD_SIZE,
                extension_cap: DEFAULT_EXTENSION_CAP,
                threads: 1,
                output_path: None,
                format: OutputFormat::Jsonl,
            };
            let mut mismatches = 0usize;
            for p in prime_min..=prime_max {
                if !cmcurves::arith::is_prime(p) {
                    continue;
                }
                let record = check_fact51(p, &cfg);
                if matches!(record.verdict, Verdict::Mismatch { .. }) {
                    mismatches += 1;
                }
                println!("{}", serde_json::to_string(&record).expect("json"));
            }
            if mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Command::ScanMaximal {
            curves,
            prime_min,
            prime_max,
            max_field_size,
        } => {
            if prime_min > prime_max {
                return config_err(format!("prime_min {prime_min} > prime_max {prime_max}"));
            }
            let mut parsed: Vec<Arc<dyn Curve>> = Vec::new();
            for dsl in &curves {
                match parse_curve(dsl) {
                    Ok(c) => parsed.push(c),
                    Err(e) => return config_err(e),
                }
            }
            for entry in scan_maximal(&parsed, prime_min, prime_max, max_field_size) {
                println!("{}", serde_json::to_string(&entry).expect("json"));
            }
            ExitCode::SUCCESS
        }
    }
}
