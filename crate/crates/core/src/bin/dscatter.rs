use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dispersive_scatter::cli::presets::{find, presets, run_preset};
use dispersive_scatter::cli::runner::run_config_file;
use dispersive_scatter::cli::selfcheck::selfcheck;
use dispersive_scatter::cli::CliError;

/// Scattering of light pulses off a dispersively coupled qubit.
#[derive(Parser)]
#[command(name = "dscatter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a key = value configuration file.
    Run {
        config: PathBuf,
        /// Output directory (overrides `out` in the file).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every scenario of a figure preset.
    Preset {
        id: String,
        /// Parent directory; each scenario writes to `<out>/<scenario id>`.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// List the figure presets with their resolved parameters.
    ListPresets,
    /// Run the fast invariant suite.
    Selfcheck,
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out } => match run_config_file(&config, out.as_deref()) {
            Ok(r) => {
                println!(
                    "{}: n_out = {:.6}, dE_qubit = {:.6e}, dE_field = {:.6e}",
                    r.scenario.id, r.energy.photon_number_out, r.energy.de_qubit, r.energy.de_field
                );
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Preset { id, out } => {
            let preset = match find(&id) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            match run_preset(&preset, &out.join(preset.id)) {
                Ok(results) => {
                    for r in results {
                        println!("{}: n_out = {:.6}", r.scenario.id, r.energy.photon_number_out);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::ListPresets => {
            for p in presets() {
                println!("{}  {}", p.id, p.description);
                for s in &p.scenarios {
                    match s.resolve() {
                        Ok(r) => {
                            for line in r.to_string().lines() {
                                println!("    {line}");
                            }
                        }
                        Err(e) => println!("    {}: {e}", s.id),
                    }
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Command::Selfcheck => {
            let checks = selfcheck();
            let mut ok = true;
            for c in &checks {
                println!("{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                ok &= c.passed;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
    }
}
