use clap::Parser;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

/// Compute the first N zeta-zero ordinates and write them one per line.
#[derive(Parser)]
#[command(name = "zerogen")]
struct Args {
    /// Number of ordinates to compute.
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args = Args::parse();
    let mut next_report = 10_000;
    let zeros = zosc_zerogen::first_zeros_with_progress(args.count, |n| {
        if n >= next_report {
            eprintln!("{n} zeros");
            next_report += 10_000;
        }
    })?;
    let mut out = BufWriter::new(File::create(&args.out)?);
    writeln!(out, "# Ordinates of the first {} nontrivial zeros of zeta(s), ascending.", zeros.len())?;
    writeln!(out, "# Euler-Maclaurin Z(t), Gram/Rosser-block bracketing, Brent refinement.")?;
    writeln!(out, "# Absolute accuracy better than 1e-10.")?;
    for g in &zeros {
        writeln!(out, "{g:.12}")?;
    }
    out.flush()?;
    Ok(())
}
