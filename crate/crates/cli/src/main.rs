use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use terracini::error::{Error, ErrorKind, Result};
use terracini::fields::{Field, FieldSpec};
use terracini::locus::{
    admissible_r_range, generators_text, membership, terracini_ideal, Mode, PointConfig, TerraciniOptions, TerraciniReport,
};
use terracini::varieties::{parse_variety_spec, Variety};
use terracini::verify::{run_suite, VerifyOptions, SUITES};
use terracini::with_field;

/// Terracini loci of projective and multiprojective varieties.
#[derive(Parser, Debug)]
#[command(name = "terracini", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a point configuration lies in the Terracini locus.
    Membership {
        #[arg(long)]
        variety: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Expected number of points; checked against the configuration.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Compute the saturated Terracini ideal and write its Groebner basis.
    Ideal(IdealArgs),
    /// Compute the locus dimension and write a JSON report.
    Dimension(IdealArgs),
    /// Print the admissible range of r.
    Range {
        #[arg(long)]
        variety: PathBuf,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Configurations drawn per membership case.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long)]
        max_minors: Option<usize>,
        /// Run cases on worker threads.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Args, Debug)]
struct IdealArgs {
    #[arg(long)]
    variety: PathBuf,
    #[arg(long)]
    r: usize,
    /// `q` or `fp:<prime>`.
    #[arg(long, default_value = "fp:32003")]
    field: FieldSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_minors: Option<usize>,
    #[arg(long, default_value = "degrevlex", value_parser = ["degrevlex"])]
    order: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report `wall_ms` as 0 so that outputs are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_variety(path: &Path) -> Result<Variety> {
    parse_variety_spec(&read(path)?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_ideal(args: &IdealArgs, mode: Mode) -> Result<()> {
    let variety = load_variety(&args.variety)?;
    let opts = TerraciniOptions { seed: args.seed, max_minors: args.max_minors, ..TerraciniOptions::default() };
    with_field!(args.field, |f| compute(&variety, f, args, &opts, mode))
}

fn compute<F: Field>(variety: &Variety, field: F, args: &IdealArgs, opts: &TerraciniOptions, mode: Mode) -> Result<()> {
    let start = Instant::now();
    let t = terracini_ideal(variety, args.r, field, opts)?;
    let mut report = TerraciniReport::new(mode, &t, args.seed, 0)?;
    if !args.no_timing {
        report.wall_ms = start.elapsed().as_millis() as u64;
    }
    for w in &t.warnings {
        eprintln!("warning: {w}");
    }
    if t.capped {
        eprintln!("warning: only {} minors were used; emptiness is not certified", args.max_minors.unwrap_or(0));
    }
    match mode {
        Mode::Ideal => {
            let text = generators_text(&t)?;
            match &args.out {
                Some(path) => {
                    std::fs::write(path, text)?;
                    report.generators_path = Some(path.display().to_string());
                    println!("{}", report.to_json());
                }
                None => print!("{text}"),
            }
            Ok(())
        }
        _ => write_or_print(args.out.as_deref(), &format!("{}\n", report.to_json())),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Membership { variety, points, r } => {
            let variety = load_variety(&variety)?;
            let config = PointConfig::from_json(&read(&points)?)?;
            if let Some(r) = r {
                if r != config.r() {
                    return Err(Error::InvalidConfiguration(format!("--r {r} but the file holds {} points", config.r())));
                }
            }
            let report = membership(&variety, &config)?;
            println!("{}", if report.is_member() { "MEMBER" } else { "NON-MEMBER" });
            println!("rank {} threshold {} ({}x{} stacked matrix)", report.rank, report.threshold, report.rows, report.cols);
            Ok(true)
        }
        Command::Ideal(args) => run_ideal(&args, Mode::Ideal).map(|_| true),
        Command::Dimension(args) => run_ideal(&args, Mode::Dimension).map(|_| true),
        Command::Range { variety } => {
            println!("{}", admissible_r_range(&load_variety(&variety)?)?);
            Ok(true)
        }
        Command::Verify { suite, seed, samples, max_minors, parallel } => {
            let report = run_suite(&suite, &VerifyOptions { seed, samples, max_minors, parallel })?;
            println!("{report}");
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Precondition => 1,
                ErrorKind::Input => 2,
            })
        }
    }
}
