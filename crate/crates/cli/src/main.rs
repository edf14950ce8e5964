//! `rstab` — Ramanujan-kernel tables, norms, certificates, simulators, and
//! the built-in verification suite, all emitting CSV for external plotting.
//!
//! Exit codes: 0 on success (and when asserted properties hold), 1 when an
//! asserted property fails, 2 on usage or input errors.

mod config;

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::{DVector, Vector2};

use rstab_core::arith;
use rstab_core::cert::{certify, gain_closed_form, ClassKSpec, KernelMode, KernelSpec};
use rstab_core::io::{
    fmt_f64, read_sequence_csv, write_discrete_trajectory_csv, write_hybrid_trajectory_csv,
    write_jump_events_csv,
};
use rstab_core::sim::{
    example1_matrix, filter_demo, hybrid_ramanujan_trace, ramanujan_trace, simulate_discrete,
    simulate_hybrid, DiscreteSystem, HybridSystem, TraceConfig,
};
use rstab_core::space::{project_coefficients, truncated_norm, TruncationConfig};
use rstab_core::verify;

use config::{apply_overrides, parse_config, RunConfig, SystemChoice};

#[derive(Parser)]
#[command(
    name = "rstab",
    version,
    about = "Ramanujan-sum kernels, arithmetic norms, small-gain certificates, and simulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one period of c_q as CSV (or an n-indexed table with --n-max).
    Rsum {
        #[arg(long)]
        q: u64,
        /// Emit an `n,value` table for n = 0..=N instead of the bare row.
        #[arg(long = "n-max")]
        n_max: Option<i64>,
    },
    /// Truncated Ramanujan norm of a sequence file (`n,value` CSV).
    Norm {
        #[arg(long)]
        input: PathBuf,
        /// Truncation depth Q.
        #[arg(long = "Q")]
        depth: u64,
        /// Accept a clamped (negative) quadratic form instead of failing.
        #[arg(long)]
        clamp: bool,
    },
    /// Ramanujan-basis coefficients of one period of a periodic signal.
    Project {
        #[arg(long)]
        input: PathBuf,
        /// Period length; must match the number of stored values.
        #[arg(long)]
        period: usize,
        /// Largest modulus to project onto.
        #[arg(long = "D")]
        max_modulus: u64,
    },
    /// Small-gain certificate fields as `key,value` CSV.
    Gain {
        #[arg(long)]
        q: u64,
        #[arg(long = "M")]
        gain: f64,
        #[arg(long)]
        r: f64,
        /// Kernel weighting: signed or abs.
        #[arg(long, default_value = "abs")]
        mode: KernelMode,
        /// Scale of the comparison function a·s^p.
        #[arg(long = "alpha-a", default_value_t = 1.0)]
        alpha_a: f64,
        /// Exponent of the comparison function a·s^p.
        #[arg(long = "alpha-p", default_value_t = 1.0)]
        alpha_p: f64,
        /// Initial norm; enables the uniform bound.
        #[arg(long = "x0-norm")]
        x0_norm: Option<f64>,
        /// Disturbance norm supremum; enables the disturbance bound.
        #[arg(long = "W")]
        disturbance_sup: Option<f64>,
        /// Exit 1 if the certificate is unstable.
        #[arg(long)]
        assert_stable: bool,
    },
    /// Simulate a discrete system and write the trajectory CSV.
    SimulateDiscrete {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path (overrides the config `out` key).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a config key, e.g. --set K=500 (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Simulate the hybrid oscillator; write trajectory and jump-event CSV.
    SimulateHybrid {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Jump-event CSV path.
        #[arg(long)]
        events: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Residue-class disturbance filtering report (text + CSV).
    FilterDemo {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r0: u64,
        #[arg(long)]
        q: u64,
        /// Largest j for the kernel-weight table c_q(r0 + m·j).
        #[arg(long, default_value_t = 16)]
        horizon: u64,
    },
    /// Run the built-in invariant suites; exit 0 iff all checks pass.
    Verify {
        /// Shrink exhaustive ranges for a quick run.
        #[arg(long)]
        fast: bool,
    },
}

enum CliError {
    /// Usage or input problem -> exit 2.
    Input(String),
    /// An asserted property failed -> exit 1.
    Assertion(String),
}

impl From<rstab_core::Error> for CliError {
    fn from(e: rstab_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Assertion(msg)) => {
            eprintln!("rstab: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("rstab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Rsum { q, n_max } => cmd_rsum(q, n_max),
        Command::Norm {
            input,
            depth,
            clamp,
        } => cmd_norm(&input, depth, clamp),
        Command::Project {
            input,
            period,
            max_modulus,
        } => cmd_project(&input, period, max_modulus),
        Command::Gain {
            q,
            gain,
            r,
            mode,
            alpha_a,
            alpha_p,
            x0_norm,
            disturbance_sup,
            assert_stable,
        } => cmd_gain(
            q,
            gain,
            r,
            mode,
            alpha_a,
            alpha_p,
            x0_norm,
            disturbance_sup,
            assert_stable,
        ),
        Command::SimulateDiscrete { config, out, set } => cmd_simulate_discrete(config, out, &set),
        Command::SimulateHybrid {
            config,
            out,
            events,
            set,
        } => cmd_simulate_hybrid(config, out, events, &set),
        Command::FilterDemo { m, r0, q, horizon } => cmd_filter_demo(m, r0, q, horizon),
        Command::Verify { fast } => cmd_verify(fast),
    }
}

fn cmd_rsum(q: u64, n_max: Option<i64>) -> CliResult {
    let row = arith::ramanujan_row(q)?;
    match n_max {
        None => {
            let text: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
            println!("{}", text.join(","));
        }
        Some(n_max) => {
            if n_max < 0 {
                return Err(input_err("--n-max must be nonnegative"));
            }
            println!("n,value");
            for n in 0..=n_max {
                println!("{n},{}", row.value(n));
            }
        }
    }
    Ok(())
}

fn cmd_norm(input: &PathBuf, depth: u64, clamp: bool) -> CliResult {
    let file = fs::File::open(input)
        .map_err(|e| input_err(format!("cannot open {}: {e}", input.display())))?;
    let seq = read_sequence_csv(BufReader::new(file))?;
    let cfg = TruncationConfig::new(depth)?;
    let result = truncated_norm(&seq, &cfg);
    println!("value,{}", fmt_f64(result.value));
    println!("clamped,{}", result.clamped);
    if result.clamped && !clamp {
        return Err(CliError::Assertion(
            "quadratic form was negative and clamped; pass --clamp to accept".into(),
        ));
    }
    Ok(())
}

fn cmd_project(input: &PathBuf, period: usize, max_modulus: u64) -> CliResult {
    let file = fs::File::open(input)
        .map_err(|e| input_err(format!("cannot open {}: {e}", input.display())))?;
    let seq = read_sequence_csv(BufReader::new(file))?;
    if seq.len() != period {
        return Err(input_err(format!(
            "--period {period} does not match the {} stored values",
            seq.len()
        )));
    }
    let coeffs = project_coefficients(&seq, max_modulus)?;
    println!("d,alpha,phi_d");
    for (d, alpha) in coeffs.iter() {
        println!("{d},{},{}", fmt_f64(alpha), arith::totient(d)?);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gain(
    q: u64,
    gain: f64,
    r: f64,
    mode: KernelMode,
    alpha_a: f64,
    alpha_p: f64,
    x0_norm: Option<f64>,
    disturbance_sup: Option<f64>,
    assert_stable: bool,
) -> CliResult {
    let kernel = KernelSpec::new(q, gain, r, mode)?;
    println!("q,{q}");
    println!("M,{}", fmt_f64(gain));
    println!("r,{}", fmt_f64(r));
    println!("mode,{mode}");
    let stable = match x0_norm {
        Some(x0) => {
            let alpha = ClassKSpec::new(alpha_a, alpha_p)?;
            let cert = certify(kernel, alpha, x0, disturbance_sup)?;
            println!("G,{}", fmt_f64(cert.gain));
            println!("stable,{}", cert.stable);
            if let Some(b) = cert.uniform_bound {
                println!("uniform_bound,{}", fmt_f64(b));
            }
            if let Some(b) = cert.disturbance_bound {
                println!("disturbance_bound,{}", fmt_f64(b));
            }
            cert.stable
        }
        None => {
            let g = gain_closed_form(&kernel);
            println!("G,{}", fmt_f64(g));
            println!("stable,{}", g < 1.0);
            g < 1.0
        }
    };
    if assert_stable && !stable {
        return Err(CliError::Assertion("certificate is unstable (G >= 1)".into()));
    }
    Ok(())
}

fn load_config(
    path: Option<&PathBuf>,
    overrides: &[String],
    out_flag: Option<PathBuf>,
) -> Result<RunConfig, CliError> {
    let mut cfg = match path {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| input_err(format!("cannot read {}: {e}", p.display())))?;
            parse_config(&text).map_err(|errs| {
                let lines: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
                input_err(format!(
                    "invalid config {}:\n  {}",
                    p.display(),
                    lines.join("\n  ")
                ))
            })?
        }
        None => RunConfig::default(),
    };
    let mut map = BTreeMap::new();
    for item in overrides {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| input_err(format!("--set `{item}` is not KEY=VALUE")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    apply_overrides(&mut cfg, &map).map_err(input_err)?;
    if let Some(out) = out_flag {
        cfg.out = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn trace_config(q: u64, lambda: f64, window: Option<usize>) -> Result<TraceConfig, CliError> {
    Ok(TraceConfig::new(q, lambda)?.with_window(window)?)
}

fn cmd_simulate_discrete(
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    overrides: &[String],
) -> CliResult {
    let cfg = load_config(config.as_ref(), overrides, out)?;
    let out_path = cfg
        .out
        .clone()
        .ok_or_else(|| input_err("no output path: pass --out or set `out` in the config"))?;

    let matrix = match cfg.system {
        SystemChoice::Example1 => example1_matrix(),
        SystemChoice::Custom => cfg
            .matrix
            .clone()
            .ok_or_else(|| input_err("system = custom requires key `A`"))?,
    };
    let dim = matrix.nrows();
    let disturbance = cfg.disturbance_spec(dim).map_err(input_err)?;
    let system = DiscreteSystem::linear(matrix, disturbance)?;
    if cfg.x0.len() != dim {
        return Err(input_err(format!(
            "x0 has {} entries, state dimension is {dim}",
            cfg.x0.len()
        )));
    }
    let x0 = DVector::from_vec(cfg.x0.clone());
    let traj = simulate_discrete(&system, &x0, cfg.steps)?;
    let tcfg = trace_config(cfg.q, cfg.discrete_lambda(), cfg.window)?;
    let trace = ramanujan_trace(&traj, &tcfg);

    let file = fs::File::create(&out_path)
        .map_err(|e| input_err(format!("cannot create {out_path}: {e}")))?;
    write_discrete_trajectory_csv(BufWriter::new(file), traj.states(), &trace)?;
    println!("wrote {} rows to {out_path}", traj.len());
    Ok(())
}

fn cmd_simulate_hybrid(
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    events: Option<PathBuf>,
    overrides: &[String],
) -> CliResult {
    let cfg = load_config(config.as_ref(), overrides, out)?;
    let out_path = cfg
        .out
        .clone()
        .ok_or_else(|| input_err("no output path: pass --out or set `out` in the config"))?;
    if cfg.x0.len() != 2 {
        return Err(input_err(format!(
            "the hybrid oscillator needs a 2-entry x0, got {}",
            cfg.x0.len()
        )));
    }
    let system = HybridSystem {
        horizon: cfg.horizon,
        step: cfg.step_size,
        ..HybridSystem::default()
    };
    let x0 = Vector2::new(cfg.x0[0], cfg.x0[1]);
    let traj = simulate_hybrid(&system, &x0)?;
    let tcfg = trace_config(cfg.q, cfg.hybrid_lambda(), cfg.window)?;
    let trace = hybrid_ramanujan_trace(&traj, &tcfg)?;

    let file = fs::File::create(&out_path)
        .map_err(|e| input_err(format!("cannot create {out_path}: {e}")))?;
    write_hybrid_trajectory_csv(BufWriter::new(file), &traj, &trace)?;
    println!(
        "wrote {} samples and {} jumps to {out_path}",
        traj.samples().len(),
        traj.jump_events().len()
    );
    if let Some(events_path) = events {
        let file = fs::File::create(&events_path)
            .map_err(|e| input_err(format!("cannot create {}: {e}", events_path.display())))?;
        write_jump_events_csv(BufWriter::new(file), traj.jump_events())?;
        println!("wrote events to {}", events_path.display());
    }
    Ok(())
}

fn cmd_filter_demo(m: u64, r0: u64, q: u64, horizon: u64) -> CliResult {
    let report = filter_demo(m, r0, q, horizon)?;
    println!("# filter demo: disturbance on k = {r0} (mod {m}), analysis modulus q = {q}");
    match report.expected_moebius {
        Some(mu) => {
            println!("# q = m and gcd(r0, m) = 1: every weight should equal mu({m}) = {mu}");
            println!(
                "# all weights equal mu(m): {}",
                report.all_weights_match.unwrap()
            );
        }
        None => println!("# q != m or gcd(r0, m) != 1: no Moebius identity applies"),
    }
    println!(
        "# projection coefficient alpha_{q} of the indicator disturbance: {}",
        fmt_f64(report.projection_coefficient)
    );
    println!("j,n,weight");
    for (j, n, w) in &report.kernel_weights {
        println!("{j},{n},{w}");
    }
    Ok(())
}

fn cmd_verify(fast: bool) -> CliResult {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let ok = verify::run_all(fast, &mut lock).map_err(|e| input_err(e.to_string()))?;
    lock.flush().ok();
    if ok {
        Ok(())
    } else {
        Err(CliError::Assertion("one or more checks failed".into()))
    }
}
