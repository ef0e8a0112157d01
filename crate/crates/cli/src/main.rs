use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use weakcorr_cli::report::format_float;
use weakcorr_cli::suite::{check_scenario, IDENTITY_TOL};
use weakcorr_cli::{
    emit_report, parse_scenario, run_verification_suite, scan_anomalous, HarnessError, ReportFormat,
};
use weakcorr_core::{
    commuting_reduction_check, conditional_average, fixtures, kd_quasiprobability,
    sequential_measurement_distribution, weak_value, Complex64, Mode, QuasiProbTable, Scenario,
};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "weakcorr",
    version,
    about = "Weak values, correlation functions and their quasi-probability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check every identity on seeded random scenarios.
    Verify {
        #[arg(long)]
        seed: u64,
        /// Comma-separated dimensions, each at least 2.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Trials per dimension.
        #[arg(long)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: VerifyFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock time in the summary (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Weak value of A for one post-selection, next to the quasi-probability average.
    Weakvalue {
        #[arg(long)]
        scenario: PathBuf,
        /// Eigenvalue of B to post-select on.
        #[arg(long = "post-select", allow_hyphen_values = true)]
        post_select: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Quasi-probability table of a scenario, with marginals and the sequential-measurement table.
    Quasiprob {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Search random scenarios for weak values outside the spectrum of A.
    Scan {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Run the hand-computed qubit examples.
    Demo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            seed,
            dims,
            trials,
            format,
            out,
            timing,
        } => verify(seed, &dims, trials, format, out.as_deref(), timing),
        Command::Weakvalue {
            scenario,
            post_select,
            format,
        } => weakvalue(&scenario, post_select, format),
        Command::Quasiprob { scenario, format } => quasiprob(&scenario, format),
        Command::Scan {
            seed,
            dim,
            trials,
            format,
        } => scan(seed, dim, trials, format),
        Command::Demo => Ok(demo()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn usage(field: &str, message: &str) -> HarnessError {
    HarnessError::Validation {
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), HarnessError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|source| HarnessError::Io {
                path: "<stdout>".to_string(),
                source,
            }),
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, HarnessError> {
    let bytes = fs::read(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&bytes)
}

fn verify(
    seed: u64,
    dims: &[usize],
    trials: usize,
    format: VerifyFormat,
    out: Option<&Path>,
    timing: bool,
) -> Result<ExitCode, HarnessError> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(usage(
            "dims",
            "need at least one dimension, each at least 2",
        ));
    }
    let start = Instant::now();
    let mut report = run_verification_suite(seed, dims, trials);
    if timing {
        report.summary.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    let format = match format {
        VerifyFormat::Json => ReportFormat::Json,
        VerifyFormat::Csv => ReportFormat::Csv,
    };
    write_output(out, &emit_report(&report, format))?;
    let s = &report.summary;
    eprintln!(
        "{} checks: {} passed, {} failed, {} skipped post-selections, max error {:e}",
        s.total, s.passed, s.failed, s.skipped, s.max_error
    );
    Ok(status(report.all_passed()))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn fmt_c(z: Complex64) -> String {
    format!("{} {:+e}i", format_float(z.re), z.im)
}

fn weakvalue(path: &Path, b: f64, format: OutputFormat) -> Result<ExitCode, HarnessError> {
    let s = load_scenario(path)?;
    let wv = weak_value(&s, b)?;
    let avg = conditional_average(&s, b)?;
    let diff = (wv.value - avg).norm();
    let ok = diff <= IDENTITY_TOL;
    match format {
        OutputFormat::Text => {
            println!("mode                  {}", s.mode().as_str());
            println!("post-selection b      {}", format_float(b));
            println!(
                "Pr(b)                 {}",
                format_float(wv.postselection_prob)
            );
            println!("weak value            {}", fmt_c(wv.value));
            println!("sum_a a Pr(a|b)       {}", fmt_c(avg));
            println!("|difference|          {diff:e}");
            println!(
                "spectrum of A         [{}, {}]",
                format_float(s.obs_a().spectral_min()),
                format_float(s.obs_a().spectral_max())
            );
        }
        OutputFormat::Json => {
            let v = json!({
                "mode": s.mode().as_str(),
                "post_select": b,
                "postselection_prob": wv.postselection_prob,
                "weak_value": pair(wv.value),
                "conditional_average": pair(avg),
                "abs_error": diff,
                "tolerance": IDENTITY_TOL,
                "pass": ok,
                "spectral_min": s.obs_a().spectral_min(),
                "spectral_max": s.obs_a().spectral_max(),
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
    }
    Ok(status(ok))
}

fn table_json(t: &QuasiProbTable) -> serde_json::Value {
    json!({
        "a_labels": t.a_labels,
        "b_labels": t.b_labels,
        "entries": t.entries.iter().map(|row| row.iter().map(|&z| pair(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn print_table(title: &str, t: &QuasiProbTable) {
    println!("{title}");
    for (bi, &b) in t.b_labels.iter().enumerate() {
        for (ai, &a) in t.a_labels.iter().enumerate() {
            println!(
                "  b={:<24} a={:<24} {}",
                format_float(b),
                format_float(a),
                fmt_c(t.entries[bi][ai])
            );
        }
    }
}

fn quasiprob(path: &Path, format: OutputFormat) -> Result<ExitCode, HarnessError> {
    let s = load_scenario(path)?;
    let table = kd_quasiprobability(&s);
    let seq = sequential_measurement_distribution(&s);
    let commuting = commuting_reduction_check(&s);
    let (records, _) = check_scenario("file", 0, &s);
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    let pr_b: Vec<_> = (0..table.b_labels.len())
        .map(|i| pair(table.row_sum(i)))
        .collect();
    let pr_a: Vec<_> = (0..table.a_labels.len())
        .map(|i| pair(table.column_sum(i)))
        .collect();

    match format {
        OutputFormat::Text => {
            println!("mode {}", s.mode().as_str());
            print_table("quasi-probability Pr(b, a)", &table);
            println!("total {}", fmt_c(table.total()));
            print_table("sequential measurement P(b, a)", &seq);
            println!(
                "commutator norm {:e} ({})",
                commuting.commutator_norm,
                if commuting.commuting {
                    "commuting"
                } else {
                    "non-commuting"
                }
            );
        }
        OutputFormat::Json => {
            let v = json!({
                "mode": s.mode().as_str(),
                "quasiprobability": table_json(&table),
                "pr_b": pr_b,
                "pr_a": pr_a,
                "total": pair(table.total()),
                "sequential": table_json(&seq),
                "commutator_norm": commuting.commutator_norm,
                "commuting": commuting.commuting,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
    }
    for r in &failed {
        eprintln!(
            "check failed: {} (error {:e} > {:e})",
            r.check_name, r.abs_error, r.tolerance
        );
    }
    Ok(status(failed.is_empty()))
}

fn scan(
    seed: u64,
    dim: usize,
    trials: usize,
    format: OutputFormat,
) -> Result<ExitCode, HarnessError> {
    if dim < 2 {
        return Err(usage("dim", "must be at least 2"));
    }
    let found = scan_anomalous(seed, dim, trials);
    match format {
        OutputFormat::Text => {
            println!(
                "{} anomalous weak values in {trials} scenarios",
                found.len()
            );
            for r in &found {
                println!(
                    "{:<12} b={:<24} weak value {:<24} spectrum [{}, {}] excess {:e}{}",
                    r.scenario_id,
                    format_float(r.b_label),
                    format_float(r.weak_value),
                    format_float(r.spectral_min),
                    format_float(r.spectral_max),
                    r.excess,
                    if r.reverified { "" } else { "  NOT REVERIFIED" }
                );
            }
        }
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&found).expect("json"));
        }
    }
    Ok(status(found.iter().all(|r| r.reverified)))
}

fn demo_line(name: &str, lhs: Complex64, rhs: Complex64, tol: f64) -> bool {
    let pass = (lhs - rhs).norm() <= tol;
    println!(
        "{:<56} {:<34} {:<34} {}",
        name,
        fmt_c(lhs),
        fmt_c(rhs),
        if pass { "ok" } else { "FAIL" }
    );
    pass
}

fn demo() -> ExitCode {
    let mut ok = true;
    println!("{:<56} {:<34} {:<34}", "", "weak value", "sum_a a Pr(a|b)");

    let cases: [(&str, Scenario, f64); 4] = [
        (
            "anomalous: cos(pi/16)|0>+sin(pi/16)|1>, b=-1",
            fixtures::anomalous_qubit(),
            -1.0,
        ),
        (
            "eigenstate: |0>, A=B=sz, b=+1",
            fixtures::eigenstate_qubit(),
            1.0,
        ),
        (
            "negativity: cos(3pi/8)|0>+sin(3pi/8)|1>, b=+1",
            fixtures::negativity_qubit(),
            1.0,
        ),
        (
            "negativity: cos(3pi/8)|0>+sin(3pi/8)|1>, b=-1",
            fixtures::negativity_qubit(),
            -1.0,
        ),
    ];
    for (name, s, b) in cases {
        for mode in [Mode::Real, Mode::Complex] {
            let s = s.with_mode(mode);
            let label = format!("{name} [{}]", mode.as_str());
            match (weak_value(&s, b), conditional_average(&s, b)) {
                (Ok(wv), Ok(avg)) => ok &= demo_line(&label, wv.value, avg, IDENTITY_TOL),
                (Err(e), _) | (_, Err(e)) => {
                    ok = false;
                    println!("{label}: {e}");
                }
            }
        }
    }

    let cot = 1.0 / (std::f64::consts::PI / 16.0).tan();
    println!();
    println!(
        "expected anomalous weak value cot(pi/16) = {}",
        format_float(cot)
    );

    let neg = kd_quasiprobability(&fixtures::negativity_qubit());
    println!(
        "negativity: Pr(b=+1, a=-1) = {}",
        format_float(neg.entry(1.0, -1.0).expect("fixture labels").re)
    );

    let contrast = fixtures::contrast_qubit();
    println!();
    print_table(
        "|0>, A=sx, B=sz: quasi-probability",
        &kd_quasiprobability(&contrast),
    );
    print_table(
        "|0>, A=sx, B=sz: sequential measurement",
        &sequential_measurement_distribution(&contrast),
    );
    status(ok)
}
