mod args;
mod commands;
mod failure;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use failure::Failure;

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(Failure::new(2, "--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::new(1, e.to_string()))?;
    }
    let g = &cli.global;
    let report = match &cli.command {
        Command::Regularize { input, epsilon, t0 } => commands::regularize(input, *epsilon, *t0, g)?,
        Command::Twins { input, eps, method } => commands::twins(input, eps, *method, g)?,
        Command::Ktuplets { input, eps, k, method } => commands::ktuplets(input, eps, *k, *method, g)?,
        Command::Exact(a) => {
            let r = commands::exact(a, g)?;
            output::emit(&r.text, g.out.as_deref())?;
            return Ok(if a.require_exact && r.has_intervals { 3 } else { 0 });
        }
        Command::Construct { kind } => commands::construct(kind, g)?,
        Command::Alpha { k, ell, tol } => commands::alpha(*k, *ell, *tol, g)?,
        Command::Bound { n, k, ell } => commands::bound(*n, *k, *ell, g)?,
    };
    output::emit(&report.text, g.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("twinword: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
