use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use relhom_cli::{
    exit_code, parse_job, render, run, CliError, DegreeRange, OutputFormat, BUDGET_ENV,
};

/// Relative homology of finite group pairs.
#[derive(Parser, Debug)]
#[command(name = "relhom", version)]
struct Args {
    /// Job file in JSON (`-` reads standard input).
    #[arg(long)]
    job: PathBuf,
    /// Overrides the job's output format.
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    /// Overrides the job's degree range, written A..B.
    #[arg(long)]
    degrees: Option<DegreeRange>,
    /// Overrides the rank cap.
    #[arg(long)]
    budget: Option<usize>,
}

fn read_job(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::validation("--job", format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut format = args.output.unwrap_or_default();
    let outcome = read_job(&args.job).and_then(|text| {
        let mut job = parse_job(&text)?;
        if let Some(o) = args.output {
            job.output = o;
        }
        format = job.output;
        if let Some(d) = args.degrees {
            job.degrees = Some(d);
        }
        if let Some(b) = args.budget {
            job.budget.max_rank = Some(b);
        }
        run(&job, std::env::var(BUDGET_ENV).ok().as_deref())
    });
    match outcome {
        Ok(doc) => {
            print!("{}", render(&doc, format));
            ExitCode::from(exit_code(&doc) as u8)
        }
        Err(e) => {
            match format {
                OutputFormat::Json => println!("{}", e.to_json()),
                OutputFormat::Table => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
