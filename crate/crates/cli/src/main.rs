mod args;
mod commands;
mod report;
mod workspace;

use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use perfrank::json::WorkspaceJson;
use perfrank::{FieldSpec, Fp, Rational, Scalar};

use args::{Cli, Command, ExampleName};
use commands::Settings;
use report::Report;
use workspace::Workspace;

/// Prime fields the binary is compiled for.
const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 101];

fn run_in<F: Scalar>(j: &WorkspaceJson, cmd: &Command, s: &Settings) -> anyhow::Result<Report> {
    let ws = Workspace::<F>::build(j)?;
    commands::execute(&ws, cmd, s).map_err(|e| anyhow::anyhow!("{}: {e}", cmd.name()))
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let settings = Settings {
        period: cli.period,
        depth: cli.depth,
        samples: cli.samples,
        seed: cli.seed,
    };
    if let Command::Example { name } = &cli.command {
        let text = match name {
            ExampleName::SmallexampleM2 | ExampleName::SmallexampleAug => workspace::SMALLEXAMPLE,
            ExampleName::Fiedorowicz => workspace::FIEDOROWICZ,
            ExampleName::Dualnumbers => workspace::DUALNUMBERS,
        };
        let ws = Workspace::<Rational>::build(&workspace::parse(text)?)?;
        return commands::example(&ws, *name, &settings)
            .map_err(|e| anyhow::anyhow!("example: {e}"));
    }
    let j = match &cli.workspace {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            workspace::parse(&text)?
        }
        None => workspace::parse(workspace::SMALLEXAMPLE)?,
    };
    match j.field {
        FieldSpec::Rationals => run_in::<Rational>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(2) => run_in::<Fp<2>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(3) => run_in::<Fp<3>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(5) => run_in::<Fp<5>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(7) => run_in::<Fp<7>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(11) => run_in::<Fp<11>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(101) => run_in::<Fp<101>>(&j, &cli.command, &settings),
        FieldSpec::PrimeField(p) => {
            anyhow::bail!("unsupported field F_{p}; supported primes: {PRIMES:?}")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.json());
            } else {
                print!("{}", report.human());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
