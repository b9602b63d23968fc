use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qvsim::harness::{parse_circuit, report_layers, run_mode, CircuitFile, HarnessError, McSpecChoice, Mode, RunOptions};

#[derive(Parser)]
#[command(name = "qvsim", version, about = "Run qudit circuit files directly, via ancilla-driven protocols, or under minimal control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a circuit file and emit a JSON result document.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
        /// Also run the direct oracle on the same outcomes and report the fidelity.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Forced outcomes, e.g. `2,0,1`; overrides the file's `force` line.
        #[arg(long, value_delimiter = ',')]
        force: Option<Vec<usize>>,
        /// Seed for the random minimal-control interaction.
        #[arg(long)]
        spec_seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = SpecArg::Auto)]
        mc_spec: SpecArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the compiled ADQC layer and adaptivity summary as JSON.
    Layers { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Direct,
    Adqc,
    Mincontrol,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpecArg {
    Auto,
    Universal,
    Cz,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qvsim: {msg}");
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<CircuitFile, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| harness_fail(path, e))
}

fn harness_fail(path: &Path, e: HarnessError) -> ExitCode {
    fail(e.exit_code() as u8, format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Layers { file } => {
            let circuit = match load(&file) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match report_layers(&circuit) {
                Ok(rep) => {
                    println!("{}", serde_json::to_string_pretty(&rep).expect("plain data serializes"));
                    ExitCode::SUCCESS
                }
                Err(e) => harness_fail(&file, e),
            }
        }
        Command::Run { file, mode, compare, seed, force, spec_seed, mc_spec, out } => {
            let circuit = match load(&file) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let mode = match mode {
                ModeArg::Direct => Mode::Direct,
                ModeArg::Adqc => Mode::Adqc,
                ModeArg::Mincontrol => Mode::MinControl,
            };
            let mc_spec = match mc_spec {
                SpecArg::Auto => McSpecChoice::Auto,
                SpecArg::Universal => McSpecChoice::Universal,
                SpecArg::Cz => McSpecChoice::Cz,
            };
            let opts = RunOptions { compare, seed, force, spec_seed, mc_spec };
            let doc = match run_mode(&circuit, mode, &opts) {
                Ok(d) => d,
                Err(e) => return harness_fail(&file, e),
            };
            let json = doc.to_json();
            match &out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &json) {
                        return fail(1, format!("{}: {e}", p.display()));
                    }
                }
                None => print!("{json}"),
            }
            if !doc.compare_ok() {
                return fail(3, format!("oracle fidelity {} below tolerance", doc.fidelity.unwrap_or(0.0)));
            }
            ExitCode::SUCCESS
        }
    }
}
