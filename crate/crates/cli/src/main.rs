// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! `qcausal`: parameter sweeps, PDM construction and causal inference.
//!
//! Relative `--out` paths resolve against `$QCAUSAL_OUT_DIR` when it is set.
//! Results go to stdout when `--out` is omitted; diagnostics go to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qcausal_core::channels::{parse_named_channel, ChannelCJ, DensityMatrix};
use qcausal_core::expr::{parse_grid, parse_real};
use qcausal_core::extraction::SdpConfig;
use qcausal_core::inference::{
    format_float, infer, records_to_csv, records_to_json, run_sweep, CorrelatorRoute, SweepFamily, SweepSpec,
    DEFAULT_EPSILON,
};
use qcausal_core::io::matrix_from_json;
use qcausal_core::pdm::{pdm_closed_form, pdm_from_correlators, CorrelatorTable, Pdm};
use qcausal_core::scattering::{simulate_scattering, ScatteringDocument};

const OUT_DIR_VAR: &str = "QCAUSAL_OUT_DIR";

#[derive(Parser)]
#[command(version, about = "Infer quantum causal structure from pseudo-density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the relay channel strength θ at fixed input polarization
    SweepTheta {
        #[arg(long, default_value = "0.7", value_parser = real)]
        lambda: f64,
        #[arg(long, default_value = "0:pi:17")]
        grid: String,
        #[command(flatten)]
        common: SweepArgs,
    },
    /// Sweep the input polarization λ through the relay channel at fixed θ
    SweepLambda {
        #[arg(long, default_value = "3pi/8", value_parser = real)]
        theta: f64,
        #[arg(long, default_value = "0:1:11")]
        grid: String,
        #[command(flatten)]
        common: SweepArgs,
    },
    /// Sweep the input polarization λ through the fully decohering channel
    SweepDecohere {
        #[arg(long, default_value = "0:1:5")]
        grid: String,
        #[command(flatten)]
        common: SweepArgs,
    },
    /// Classify a PDM or correlator table read from a JSON file
    Infer {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Build the PDM of a state sent through a channel
    Pdm {
        /// `identity`, `decohering`, `relay(θ)` or a channel JSON file
        #[arg(long)]
        channel: String,
        /// Named single-qubit state or a matrix JSON file
        #[arg(long)]
        state: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one probe-qubit scattering experiment from a JSON description
    Scatter {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Sample every correlator with this many shots
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Zero threshold for the negativities; defaults to 1e-6, or 3/√shots
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Via::ClosedForm)]
    via: Via,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    ClosedForm,
    Scattering,
}

fn real(s: &str) -> std::result::Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn out_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            let p = out_path(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn sweep(family: SweepFamily, grid: &str, lambda: Option<f64>, theta: Option<f64>, a: SweepArgs) -> Result<()> {
    let mut spec = SweepSpec::new(family, parse_grid(grid).context("parsing --grid")?);
    spec.lambda = lambda;
    spec.theta = theta;
    spec.shots = a.shots;
    spec.seed = a.seed;
    spec.epsilon = a.epsilon;
    spec.route = match a.via {
        Via::ClosedForm => CorrelatorRoute::ClosedForm,
        Via::Scattering => CorrelatorRoute::Scattering,
    };
    let points = run_sweep(&spec)?;
    for p in &points {
        if let Err(e) = &p.outcome {
            eprintln!("warning: point {}: {e}", p.param);
        }
    }
    let text = match a.format {
        Format::Csv => records_to_csv(&points),
        Format::Json => records_to_json(&points)?,
    };
    emit(a.out.as_deref(), &text)
}

/// A JSON array is a correlator table; anything else is a PDM object.
fn load_pdm(text: &str) -> Result<Pdm> {
    if text.trim_start().starts_with('[') {
        let table = CorrelatorTable::from_json_str(text).context("parsing correlator table")?;
        Ok(pdm_from_correlators(&table)?)
    } else {
        Ok(Pdm::from_json_str(text).context("parsing PDM")?)
    }
}

fn run_infer(input: &Path, epsilon: f64) -> Result<()> {
    let r = load_pdm(&read(input)?)?;
    let inf = infer(&r, epsilon, &SdpConfig::default())?;
    let v = inf.verdict;
    println!("{}", v.kind);
    for (name, x) in [
        ("f_pdm", v.f_pdm),
        ("f_fwd", v.f_forward),
        ("f_rev", v.f_reverse),
        ("epsilon", v.epsilon),
    ] {
        println!("{name}={}", format_float(x));
    }
    for (name, x) in [("forward", &inf.directions.forward), ("reverse", &inf.directions.reverse)] {
        if !x.is_accepted() {
            eprintln!("warning: {name} extraction residual {:e} exceeds tolerance", x.residual);
        }
        if x.may_be_non_unique() {
            eprintln!("warning: {name} CJ matrix is not uniquely determined by the data");
        }
    }
    Ok(())
}

fn load_channel(spec: &str) -> Result<ChannelCJ> {
    let p = Path::new(spec);
    if p.is_file() {
        return ChannelCJ::from_json_str(&read(p)?).context("parsing channel");
    }
    Ok(parse_named_channel(spec)?)
}

fn load_state(spec: &str, channel: &ChannelCJ) -> Result<DensityMatrix> {
    let layout = channel.in_layout().clone();
    let p = Path::new(spec);
    if p.is_file() {
        let m = matrix_from_json(&read(p)?).context("parsing state")?;
        return Ok(DensityMatrix::new(m, layout)?);
    }
    if layout.len() != 1 {
        bail!("channel input has {} sites; pass the state as a matrix file", layout.len());
    }
    Ok(DensityMatrix::from_spec(spec, &layout.labels()[0])?)
}

fn run_pdm(channel: &str, state: &str, out: Option<&Path>) -> Result<()> {
    let ch = load_channel(channel)?;
    let rho = load_state(state, &ch)?;
    let mut text = pdm_closed_form(&rho, &ch)?.to_json_string();
    text.push('\n');
    emit(out, &text)
}

fn run_scatter(spec: &Path) -> Result<()> {
    let doc = ScatteringDocument::from_json_str(&read(spec)?).context("parsing scattering spec")?;
    let r = simulate_scattering(&doc.to_spec()?);
    println!("expectation={}", format_float(r.expectation));
    println!("imaginary_residual={}", format_float(r.imaginary_residual));
    println!("probe_purity={}", format_float(r.probe_purity));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SweepTheta { lambda, grid, common } => {
            sweep(SweepFamily::ThetaSweep, &grid, Some(lambda), None, common)
        }
        Command::SweepLambda { theta, grid, common } => {
            sweep(SweepFamily::LambdaSweep, &grid, None, Some(theta), common)
        }
        Command::SweepDecohere { grid, common } => {
            sweep(SweepFamily::DecohereSweep, &grid, None, None, common)
        }
        Command::Infer { input, epsilon } => run_infer(&input, epsilon),
        Command::Pdm { channel, state, out } => run_pdm(&channel, &state, out.as_deref()),
        Command::Scatter { spec } => run_scatter(&spec),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
