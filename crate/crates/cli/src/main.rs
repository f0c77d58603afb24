//! `galcoh`: reproducible reports for Galois cohomology computations.
//!
//! Exit codes: 0 on success, 2 when a bounded search was inconclusive,
//! 1 on any error.

mod check;
mod codec;
mod commands;
mod input;
mod problem;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::input::{CliError, CliResult, InputFile};
use crate::report::{Format, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "galcoh", version, about = "First Galois cohomology sets and the forms they classify")]
pub struct Cli {
    /// Worker threads for parallel enumeration; output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "records")]
    format: Format,
    /// Append the wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Re-verify a records-format report and its witnesses.
    #[arg(long, value_name = "REPORT")]
    check: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// H¹(Γ, A) for a group, action and optional stable subgroup.
    H1 {
        file: String,
        /// Maximum number of candidate cocycles to enumerate.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Forms of a tensor family over a finite-field extension.
    Forms {
        #[arg(long)]
        p: u32,
        #[arg(long = "k-deg")]
        k_deg: u32,
        #[arg(long)]
        ext: u32,
        #[arg(long)]
        tensor: String,
        /// Maximum size of the matrix groups to enumerate.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Units, H¹(Γ, U_K) and ambiguous ideals of a quadratic field.
    Units {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Emit generator witnesses for the ambiguous principal ideals.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = commands::DEFAULT_MAX_NORM)]
        max_norm: u64,
    },
    /// The cocycle, determinant class and predicates of a Galois-stable lattice.
    Lattice {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Reference lattice, or the lattice itself when no second file is given.
        first: String,
        /// Lattice to compare with the reference.
        second: Option<String>,
        #[arg(long, default_value = "GL")]
        group: String,
        #[arg(long, default_value_t = commands::DEFAULT_LATTICE_BOUND)]
        bound: u64,
    },
    /// Étale algebras of dimension n split by a Galois group.
    Etale {
        /// A group file or one of trivial, C<n>, S<n>.
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: Option<String>,
    },
    /// Classes of H¹ that are locally trivial at every listed localization.
    Genus {
        file: String,
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// The subcommand words of `argv`, without the global presentation flags.
pub fn normalized_command(args: &[String]) -> String {
    let mut out = Vec::new();
    let mut skip_value = false;
    for a in args {
        if skip_value {
            skip_value = false;
            continue;
        }
        match a.as_str() {
            "--workers" | "--format" => skip_value = true,
            "--timing" => {}
            s if s.starts_with("--workers=") || s.starts_with("--format=") => {}
            _ => out.push(a.clone()),
        }
    }
    shell_words::join(out)
}

pub fn run(command: &Command, echo: String) -> CliResult<Report> {
    match command {
        Command::H1 { file, bound } => {
            let f = InputFile::read(file)?;
            let mut r = Report::new(echo, &[&f]);
            commands::h1(&f, *bound, &mut r)?;
            Ok(r)
        }
        Command::Genus { file, bound } => {
            let f = InputFile::read(file)?;
            let mut r = Report::new(echo, &[&f]);
            commands::genus(&f, *bound, &mut r)?;
            Ok(r)
        }
        Command::Forms {
            p,
            k_deg,
            ext,
            tensor,
            bound,
        } => {
            let f = InputFile::read(tensor)?;
            let mut r = Report::new(echo, &[&f]);
            commands::forms(*p, *k_deg, *ext, &f, *bound, &mut r)?;
            Ok(r)
        }
        Command::Units { d, certify, max_norm } => {
            let mut r = Report::new(echo, &[]);
            commands::units(*d, *certify, *max_norm, &mut r)?;
            Ok(r)
        }
        Command::Lattice {
            d,
            first,
            second,
            group,
            bound,
        } => {
            let a = InputFile::read(first)?;
            let b = second.as_deref().map(InputFile::read).transpose()?;
            let inputs: Vec<&InputFile> = std::iter::once(&a).chain(b.as_ref()).collect();
            let mut r = Report::new(echo, &inputs);
            match &b {
                Some(b) => commands::lattice(*d, Some(&a), b, group, *bound, &mut r)?,
                None => commands::lattice(*d, None, &a, group, *bound, &mut r)?,
            }
            Ok(r)
        }
        Command::Etale { group, n, order } => {
            let (gamma, gfile) = commands::etale_group(group)?;
            let ofile = order.as_deref().map(InputFile::read).transpose()?;
            let inputs: Vec<&InputFile> = gfile.iter().chain(ofile.iter()).collect();
            let mut r = Report::new(echo, &inputs);
            commands::etale(&gamma, *n, ofile.as_ref(), &mut r)?;
            Ok(r)
        }
    }
}

fn configure_workers(workers: Option<usize>) -> CliResult<()> {
    let Some(w) = workers else { return Ok(()) };
    if w == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(w)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_workers(cli.workers) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let start = Instant::now();
    let outcome = match (&cli.check, &cli.command) {
        (Some(path), None) => check::check_report(path),
        (None, Some(cmd)) => run(cmd, normalized_command(&args[1..])),
        _ => Err(CliError::Usage("give a subcommand or --check <REPORT>".into())),
    };
    match outcome {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            print!("{}", report.render(cli.format));
            match report.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Undecided => ExitCode::from(2),
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_drops_presentation_flags() {
        let args: Vec<String> = ["units", "--workers", "4", "--d", "-1", "--format=text", "--timing"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(normalized_command(&args), "units --d -1");
        let spaced: Vec<String> = ["h1", "my file.txt"].iter().map(|s| s.to_string()).collect();
        assert_eq!(normalized_command(&spaced), "h1 'my file.txt'");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
