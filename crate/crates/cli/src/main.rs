//! `mobius`: run, check and mesh the Möbius-strip minimal surface pipeline.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 when the configuration or arguments are invalid.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mobius_core::config::KChoice;
use mobius_core::pipeline::{self, ProbeTarget};
use mobius_core::{config_hash, RunConfig, RunReport, STANDARD_CONFIG};

#[derive(Parser, Debug)]
#[command(name = "mobius", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for m2 exactly and check the multiplier properties.
    #[command(name = "lemma2")]
    Multiplier {
        /// Rational m1, e.g. `2` or `5/3`.
        #[arg(long, default_value = "2")]
        m1: String,
        /// Radicand of the quadratic field; computed when omitted.
        #[arg(long = "D")]
        d: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full construction and every check.
    Verify(Common),
    /// Verify, then write an OBJ mesh.
    Mesh {
        #[command(flatten)]
        common: Common,
        /// Mesh path; defaults to `output.mesh_path`, then `mobius.obj`.
        #[arg(long)]
        mesh: Option<PathBuf>,
    },
    /// Metric length toward a puncture or a regular point.
    Probe {
        #[command(flatten)]
        common: Common,
        /// `alpha`, `beta`, `alpha-image`, `beta-image` or `re,im`.
        #[arg(long, default_value = "alpha")]
        target: String,
        /// Strictly decreasing distances to the target.
        #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5")]
        eps: Vec<f64>,
    },
    /// Dump the Laurent coefficients of the base forms, f and Ψ as JSON.
    Coeffs(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// TOML config; the standard config when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path; defaults to `output.report_path` for reports.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override `construction.k`.
    #[arg(long)]
    k: Option<u32>,
    /// Override `mesh.quotient`.
    #[arg(long)]
    quotient: Option<bool>,
}

struct Loaded {
    config: RunConfig,
    text: String,
}

impl Common {
    fn load(&self) -> Result<Loaded> {
        let text = match &self.config {
            Some(p) => std::fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?,
            None => STANDARD_CONFIG.to_string(),
        };
        let mut config = RunConfig::from_toml(&text)?;
        if self.k.is_none() && self.quotient.is_none() {
            return Ok(Loaded { config, text });
        }
        if let Some(k) = self.k {
            config.construction.k = KChoice::Fixed(k);
        }
        if let Some(q) = self.quotient {
            config.mesh.quotient = q;
        }
        // the hash then covers the effective configuration
        let text = config.to_toml();
        Ok(Loaded { config, text })
    }

    fn report_path(&self, config: &RunConfig) -> Option<PathBuf> {
        self.out
            .clone()
            .or_else(|| config.output.report_path.as_ref().map(PathBuf::from))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn finish(report: &RunReport, path: Option<&Path>) -> Result<u8> {
    print!("{}", report.summary());
    if let Some(p) = path {
        write_file(p, &report.to_json())?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Multiplier { m1, d, out } => {
            let report = pipeline::run_multiplier(&m1, d)?;
            for (k, v) in &report.values {
                println!("{k} = {v}");
            }
            finish(&report, out.as_deref())
        }
        Command::Verify(common) => {
            let l = common.load()?;
            let v = pipeline::run_verify(&l.config, &l.text)?;
            finish(&v.report, common.report_path(&l.config).as_deref())
        }
        Command::Mesh { common, mesh } => {
            let l = common.load()?;
            let mesh_path = mesh
                .or_else(|| l.config.output.mesh_path.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("mobius.obj"));
            let outcome = pipeline::run_mesh(&l.config, &l.text)?;
            let code = finish(&outcome.report, common.report_path(&l.config).as_deref())?;
            if let (0, Some(m)) = (code, &outcome.mesh) {
                write_file(&mesh_path, &m.to_obj())?;
                println!("wrote {}", mesh_path.display());
            }
            Ok(code)
        }
        Command::Probe {
            common,
            target,
            eps,
        } => {
            let l = common.load()?;
            let target: ProbeTarget = target.parse()?;
            let mut report = pipeline::run_probe(&l.config, target, &eps)?;
            report.config_hash = Some(config_hash(l.text.as_bytes()));
            finish(&report, common.out.as_deref())
        }
        Command::Coeffs(common) => {
            let l = common.load()?;
            let dump = pipeline::coefficient_dump(&l.config)?;
            let text = serde_json::to_string_pretty(&dump)? + "\n";
            match &common.out {
                Some(p) => write_file(p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
