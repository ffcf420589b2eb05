//! `compat-leibniz`: command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when a check fails (the
//! defect or witness is printed), 2 on usage or input errors.

mod algebra_cmd;
mod catalog_cmd;
mod deform_cmd;
mod ext_cmd;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use algebra_cmd::Coefficients;
use report::Report;

#[derive(Parser)]
#[command(
    name = "compat-leibniz",
    version,
    about = "Exact computations for compatible Leibniz algebras"
)]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity for each bracket, and optionally compatibility.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        compatible: bool,
    },
    /// Evaluate the Maurer-Cartan components [m1,m1], [m1,m2], [m2,m2].
    McCheck {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Dimension of a cohomology group.
    Cohomology {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value = "adjoint")]
        coefficients: Coefficients,
        #[arg(long)]
        degree: usize,
        /// Use the compatible complex of the pair instead of one bracket.
        #[arg(long, conflicts_with = "bracket")]
        compatible: bool,
        /// Which bracket of the file to use for the Leibniz complex.
        #[arg(long, default_value_t = 1)]
        bracket: usize,
    },
    /// Truncated formal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Abelian extensions.
    #[command(subcommand)]
    Ext(ExtCommand),
    /// The built-in classification tables.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum DeformCommand {
    /// Check the deformation equations up to the file's order.
    Verify { file: PathBuf },
    /// The obstruction to extending by one order.
    Obstruction { file: PathBuf },
    /// Extend by one order when the obstruction is a coboundary.
    Extend {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a formal change of basis.
    Gauge {
        file: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    /// Build the extension of a 2-cocycle.
    Build {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        bimodule: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the cocycle and bimodule of an extension.
    Extract { file: PathBuf },
    /// Dimension of the space of extension classes.
    Classes {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        bimodule: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the entries.
    List,
    /// Print the brackets of one entry.
    Show {
        name: String,
        /// Parameter value, e.g. `alpha=2` or `-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Check every entry, and optionally the listed pairs.
    Verify {
        #[arg(long)]
        pairs: bool,
        #[arg(long, default_value_t = 200)]
        search_attempts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cmd: Command) -> anyhow::Result<Report> {
    match cmd {
        Command::Check {
            algebra,
            compatible,
        } => algebra_cmd::check(&algebra, compatible),
        Command::McCheck { algebra } => algebra_cmd::mc(&algebra),
        Command::Cohomology {
            algebra,
            coefficients,
            degree,
            compatible,
            bracket,
        } => algebra_cmd::cohomology(&algebra, coefficients, degree, compatible, bracket),
        Command::Deform(d) => match d {
            DeformCommand::Verify { file } => deform_cmd::verify(&file),
            DeformCommand::Obstruction { file } => deform_cmd::obstruction(&file),
            DeformCommand::Extend { file, output } => deform_cmd::extend(&file, output.as_ref()),
            DeformCommand::Gauge { file, phi, output } => {
                deform_cmd::gauge(&file, &phi, output.as_ref())
            }
        },
        Command::Ext(e) => match e {
            ExtCommand::Build {
                algebra,
                bimodule,
                cocycle,
                output,
            } => ext_cmd::build(&algebra, &bimodule, &cocycle, output.as_ref()),
            ExtCommand::Extract { file } => ext_cmd::extract(&file),
            ExtCommand::Classes { algebra, bimodule } => ext_cmd::classes(&algebra, &bimodule),
        },
        Command::Catalog(c) => match c {
            CatalogCommand::List => catalog_cmd::list(),
            CatalogCommand::Show { name, param } => catalog_cmd::show(&name, param.as_deref()),
            CatalogCommand::Verify {
                pairs,
                search_attempts,
                seed,
            } => catalog_cmd::verify(pairs, search_attempts, seed),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.json).as_bytes());
            let _ = out.flush();
            ExitCode::from(if report.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
