use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sblab::basis::standard_basis;
use sblab::experiments::{
    artin_rees_experiment, emit_report, growth_experiment, paper_example_check, prop4_experiment, render_report,
    LambdaMin, Report, ReportFormat,
};
use sblab::ideal::{graded_minimal_basis, IdealHandle, Setting};
use sblab::parser::{parse_problem, ProblemSpec};
use sblab::poly::MonomialOrder;
use sblab::Error;

const EXIT_VERDICT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "sblab", version, about = "Standard bases in local rings and experiments on ideal powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Local,
    Global,
}

#[derive(clap::Args)]
struct Outputs {
    /// Write the full JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the row table as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Standard basis of the ideal I of a problem file.
    Basis {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "local")]
        order: OrderArg,
        /// Drop elements whose initial exponent is divisible by another's.
        #[arg(long)]
        minimal: bool,
        /// Tail-reduce a minimal basis (implies --minimal).
        #[arg(long)]
        reduced: bool,
        /// Degree above which tails are discarded by --reduced; defaults to
        /// twice the largest generator degree.
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Minimal generators of the tangent cone I*.
    TangentCone { file: PathBuf },
    /// Orders of minimal standard bases of J + Iⁿ for n = 1..nmax.
    Growth {
        file: PathBuf,
        #[arg(long)]
        nmax: u32,
        #[command(flatten)]
        out: Outputs,
    },
    /// Least uniform Artin–Rees exponent on a finite grid.
    ArtinRees {
        file: PathBuf,
        #[arg(long)]
        mmax: u32,
        #[arg(long)]
        npad: u32,
        #[arg(long)]
        lambda_bound: u32,
        #[command(flatten)]
        out: Outputs,
    },
    /// Both sides of the 𝔪-adic splitting criterion for one l.
    Prop4 {
        file: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        mmax: u32,
        #[command(flatten)]
        out: Outputs,
    },
    /// Tangent cones of the powers of (x², y³ − xy).
    PaperExample {
        #[arg(long)]
        nmax: u32,
        #[command(flatten)]
        out: Outputs,
    },
}

enum Failure {
    Error(Error),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn load(path: &Path) -> Result<ProblemSpec, Error> {
    parse_problem(&std::fs::read_to_string(path)?)
}

/// Prints the JSON report and writes any requested files.
fn publish<R: Report>(report: &R, out: &Outputs) -> Result<(), Error> {
    print!("{}", render_report(report, ReportFormat::Json)?);
    if let Some(p) = &out.json {
        emit_report(report, ReportFormat::Json, p)?;
    }
    if let Some(p) = &out.csv {
        emit_report(report, ReportFormat::Csv, p)?;
    }
    Ok(())
}

fn run_basis(file: &Path, order: OrderArg, minimal: bool, reduced: bool, cutoff: Option<u32>) -> Result<(), Error> {
    let spec = load(file)?;
    let nvars = spec.nvars();
    let (ord, name) = match order {
        OrderArg::Local => (MonomialOrder::local(nvars), "local"),
        OrderArg::Global => (MonomialOrder::global(nvars), "global"),
    };
    let mut basis = standard_basis(&spec.generators_i, ord)?;
    if minimal || reduced {
        basis = basis.minimalize();
    }
    if reduced {
        let max_deg = spec.generators_i.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        basis = basis.reduce(cutoff.unwrap_or(2 * max_deg));
    }
    println!("order: {name}");
    println!("minimal: {}", basis.is_minimal());
    if let Some(c) = basis.reduced_cutoff() {
        println!("reduced with cutoff: {c}");
    }
    println!("elements: {}", basis.len());
    for ((f, e), o) in basis.elements().iter().zip(basis.leading_exps()).zip(basis.orders()) {
        println!("  ord {o}  exp {e}  {}", spec.show(f));
    }
    Ok(())
}

fn run_tangent_cone(file: &Path) -> Result<(), Error> {
    let spec = load(file)?;
    let ideal = IdealHandle::new(spec.field, spec.nvars(), Setting::Local, spec.generators_i.clone())?;
    let forms = graded_minimal_basis(&ideal)?
        .iter()
        .map(|f| f.leading_form())
        .collect::<Result<Vec<_>, _>>()?;
    println!("generators: {}", forms.len());
    for g in &forms {
        println!("  degree {}  {}", g.degree(), spec.show(g.poly()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Basis {
            file,
            order,
            minimal,
            reduced,
            cutoff,
        } => run_basis(&file, order, minimal, reduced, cutoff)?,
        Command::TangentCone { file } => run_tangent_cone(&file)?,
        Command::Growth { file, nmax, out } => {
            let report = growth_experiment(&load(&file)?, nmax)?;
            publish(&report, &out)?;
            if let Some(t) = &report.truncated {
                return Err(Error::Resource(format!("stopped at n = {}: {}", t.at, t.reason)).into());
            }
        }
        Command::ArtinRees {
            file,
            mmax,
            npad,
            lambda_bound,
            out,
        } => {
            let report = artin_rees_experiment(&load(&file)?, mmax, npad, lambda_bound)?;
            publish(&report, &out)?;
            if let Some(t) = &report.truncated {
                return Err(Error::Resource(format!("stopped at m = {}: {}", t.at, t.reason)).into());
            }
            if !report.inclusion_everywhere() {
                return Err(Failure::Verdict("a cell violates RHS ⊆ LHS".into()));
            }
            if let LambdaMin::NotFoundWithin(b) = report.lambda_min {
                return Err(Failure::Verdict(format!("no exponent up to {b} works on the grid")));
            }
        }
        Command::Prop4 { file, l, mmax, out } => {
            let report = prop4_experiment(&load(&file)?, l, mmax)?;
            publish(&report, &out)?;
            if !report.consistent {
                return Err(Failure::Verdict(format!(
                    "sides disagree for l = {l}: left {:?}, right {}",
                    report.lhs_holds, report.rhs_holds
                )));
            }
        }
        Command::PaperExample { nmax, out } => {
            let report = paper_example_check(nmax)?;
            publish(&report, &out)?;
            if let Some(n) = report.failed_at {
                let row = &report.rows[n as usize - 1];
                return Err(Failure::Verdict(format!(
                    "n = {n}: computed {:?}, expected {:?}",
                    row.cone_generators, row.expected_generators
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(msg)) => {
            eprintln!("sblab: check failed: {msg}");
            ExitCode::from(EXIT_VERDICT)
        }
        Err(Failure::Error(e)) => {
            eprintln!("sblab: {e}");
            if e.is_resource() {
                ExitCode::from(EXIT_RESOURCE)
            } else {
                ExitCode::from(EXIT_INPUT)
            }
        }
    }
}
