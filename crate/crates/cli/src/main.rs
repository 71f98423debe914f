use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootform_cli::*;
use rootform_reps::peterweyl::ThetaRule;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "rootform", version, about = "Root data, Chevalley groups, compact forms and their representations")]
struct Cli {
    /// Flat key-value (TOML) run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Dynkin type such as A3 or G2.
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LieTable {
    Gamma,
    Killing,
}

#[derive(Clone, Copy, ValueEnum)]
enum IrrepTable {
    Dims,
    Gram,
    Actions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gen {
    Alpha,
    Beta,
    Xi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Gauss,
    Midpoint,
}

#[derive(Subcommand)]
enum Cmd {
    /// All roots as integer vectors in the simple-root basis.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        emit: Format,
    },
    /// Objects, shift and pairing matrix of the root category.
    Rootcat {
        #[command(flatten)]
        common: Common,
    },
    /// Structure constants or the Killing form.
    Liealg {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        emit: LieTable,
    },
    /// Relations of the adjoint Chevalley group.
    Chevgroup {
        #[command(subcommand)]
        action: ChevCmd,
    },
    /// The compact real form.
    Compact {
        #[command(subcommand)]
        action: CompactCmd,
    },
    /// A highest-weight module.
    Irrep {
        #[command(flatten)]
        common: Common,
        /// Highest weight in fundamental coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "dims")]
        emit: IrrepTable,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Matrix coefficients, Haar quadrature and integral forms.
    Peterweyl {
        #[command(subcommand)]
        action: PwCmd,
    },
    /// Run verification suites: all, liealg, chevgroup, compact, hwmodules, peterweyl.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Format,
        /// Flip the sign of one structure constant first.
        #[arg(long)]
        mutate_gamma: bool,
    },
}

#[derive(Subcommand)]
enum ChevCmd {
    Verify {
        #[command(flatten)]
        common: Common,
        /// rational, all, or F_p for p in 2..13.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Format,
    },
}

#[derive(Subcommand)]
enum CompactCmd {
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        exp_tol: Option<f64>,
        #[arg(long)]
        gram_tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Format,
    },
    /// Print exp of one compact generator at `t`.
    Exp {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        gen: Gen,
        #[arg(long)]
        obj: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
}

#[derive(Subcommand)]
enum PwCmd {
    /// SU(2) Schur integrals for spins j1, j2.
    Schur {
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, value_enum, default_value = "gauss")]
        rule: Rule,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Parseval and the convolution homomorphism on a truncation.
    Plancherel {
        #[command(flatten)]
        common: Common,
        /// Weights separated by `;`, e.g. `0,0;1,0;0,1`.
        #[arg(long)]
        trunc: Option<String>,
    },
    /// Analytically integral forms and the fundamental group order.
    Lattice {
        #[command(flatten)]
        common: Common,
    },
    /// Dominant weights in the root lattice with coordinate sum ≤ bound.
    Qplus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bound: i64,
    },
}

enum Output {
    Report(Report, Format),
    Value(Value),
    Text(String),
}

fn config(file: &Option<PathBuf>, flags: RunConfig) -> CliResult<RunConfig> {
    let base = match file {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    Ok(base.overlay(flags))
}

fn flags(c: &Common) -> RunConfig {
    RunConfig {
        type_label: c.ty.clone(),
        seed: c.seed,
        ..Default::default()
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    let file = &cli.config;
    let with_out = |mut r: RunConfig| {
        r.output = cli.out.clone();
        r
    };
    match &cli.cmd {
        Cmd::Roots { common, emit } => {
            let d = config(file, with_out(flags(common)))?.datum()?;
            Ok(match emit {
                Format::Json => Output::Value(serde_json::to_value(roots_table(&d)).unwrap()),
                Format::Csv => Output::Text(roots_csv(&d)),
            })
        }
        Cmd::Rootcat { common } => Ok(Output::Value(rootcat_json(&config(file, flags(common))?.datum()?))),
        Cmd::Liealg { common, emit } => {
            let d = config(file, flags(common))?.datum()?;
            Ok(Output::Value(match emit {
                LieTable::Gamma => liealg_gamma_json(&d)?,
                LieTable::Killing => liealg_killing_json(&d)?,
            }))
        }
        Cmd::Chevgroup { action: ChevCmd::Verify { common, field, emit } } => {
            let cfg = config(file, with_out(RunConfig { field: field.clone(), ..flags(common) }))?;
            Ok(Output::Report(run_verify(&[Suite::ChevGroup], &cfg)?, *emit))
        }
        Cmd::Compact { action } => match action {
            CompactCmd::Verify { common, exp_tol, gram_tol, emit } => {
                let cfg = config(
                    file,
                    with_out(RunConfig {
                        exp_tol: *exp_tol,
                        gram_tol: *gram_tol,
                        ..flags(common)
                    }),
                )?;
                Ok(Output::Report(run_verify(&[Suite::Compact], &cfg)?, *emit))
            }
            CompactCmd::Exp { common, gen, obj, t } => {
                let d = config(file, flags(common))?.datum()?;
                let g = match gen {
                    Gen::Alpha => "alpha",
                    Gen::Beta => "beta",
                    Gen::Xi => "xi",
                };
                Ok(Output::Value(compact_exp_json(&d, g, *obj, *t)?))
            }
        },
        Cmd::Irrep { common, weight, emit, cap } => {
            let d = config(file, flags(common))?.datum()?;
            let w = parse_weight(weight, d.rank)?;
            let e = match emit {
                IrrepTable::Dims => "dims",
                IrrepTable::Gram => "gram",
                IrrepTable::Actions => "actions",
            };
            Ok(Output::Value(irrep_json(&d, &w, e, *cap)?))
        }
        Cmd::Peterweyl { action } => match action {
            PwCmd::Schur { j1, j2, grid, rule, seed, tol } => {
                let cfg = config(
                    file,
                    with_out(RunConfig {
                        seed: *seed,
                        quad_tol: *tol,
                        ..Default::default()
                    }),
                )?;
                let rule = match rule {
                    Rule::Gauss => ThetaRule::GaussLegendre,
                    Rule::Midpoint => ThetaRule::Midpoint,
                };
                Ok(Output::Report(schur_command(j1, j2, *grid, rule, &cfg)?, Format::Json))
            }
            PwCmd::Plancherel { common, trunc } => {
                let cfg = config(file, with_out(RunConfig { trunc: trunc.clone(), ..flags(common) }))?;
                Ok(Output::Report(plancherel_command(&cfg)?, Format::Json))
            }
            PwCmd::Lattice { common } => {
                let cfg = config(file, with_out(flags(common)))?;
                Ok(Output::Report(lattice_command(&cfg)?, Format::Json))
            }
            PwCmd::Qplus { common, bound } => {
                let d = config(file, flags(common))?.datum()?;
                Ok(Output::Value(qplus_json(&d, *bound)?))
            }
        },
        Cmd::Verify { suite, common, field, emit, mutate_gamma } => {
            let suites = Suite::parse(suite)?;
            let cfg = config(file, with_out(RunConfig { field: field.clone(), ..flags(common) }))?;
            let report = if *mutate_gamma { run_mutated_gamma(&cfg)? } else { run_verify(&suites, &cfg)? };
            Ok(Output::Report(report, *emit))
        }
    }
}

fn emit(text: &str, out: &Option<String>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{p}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, passed) = match run(&cli) {
        Ok(Output::Report(r, f)) => {
            let t = match f {
                Format::Json => r.to_json() + "\n",
                Format::Csv => r.to_csv(),
            };
            (t, r.passed)
        }
        Ok(Output::Value(v)) => (serde_json::to_string_pretty(&v).unwrap() + "\n", true),
        Ok(Output::Text(t)) => (t, true),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&text, &cli.out) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
