use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use fourfold_core::exec::{set_exec, Exec};
use fourfold_core::surfaces::SurfaceTag;
use fourfold_core::text::write_ideal;
use fourfold_harness::pipeline::build_for_dump;
use fourfold_harness::{emit_report, run_rows, ExpectedFile, Options, RowPlan};
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "fourfold", version, about = "Reproduce surface invariants and birational maps of special cubic fourfolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification rows and compare against the expected values.
    Verify(Verify),
}

#[derive(Parser)]
struct Verify {
    /// Row tag (repeatable); all rows when omitted.
    #[arg(long = "row", value_name = "TAG")]
    rows: Vec<String>,
    /// Characteristic of the ground field.
    #[arg(long, env = "FOURFOLD_PRIME", default_value_t = fourfold_core::field::DEFAULT_PRIME)]
    prime: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Compute inverse maps and their base loci.
    #[arg(long)]
    with_inverse: bool,
    /// Compute h^0 of the normal bundles.
    #[arg(long)]
    with_normal_bundle: bool,
    /// Count lines through a general image point.
    #[arg(long)]
    with_line_counts: bool,
    /// Write the JSON report here.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the ideal of a surface in text format and exit.
    #[arg(long, num_args = 2, value_names = ["TAG", "FILE"])]
    dump_surface: Option<Vec<String>>,
    /// Alternative expected-value file.
    #[arg(long, value_name = "FILE")]
    expected: Option<PathBuf>,
    /// Wall-clock budget per step, in seconds.
    #[arg(long, default_value_t = 1800)]
    step_budget: u64,
    /// Rows run concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Disable data-parallel kernels.
    #[arg(long)]
    sequential: bool,
}

fn main() -> anyhow::Result<()> {
    let Command::Verify(v) = Cli::parse().command;
    if v.sequential {
        set_exec(Exec::Sequential);
    }
    let opts = Options {
        prime: v.prime,
        seed: v.seed,
        with_inverse: v.with_inverse,
        with_normal_bundle: v.with_normal_bundle,
        with_line_counts: v.with_line_counts,
        step_budget: Duration::from_secs(v.step_budget),
        ..Options::default()
    };

    if let Some(dump) = &v.dump_surface {
        let tag: SurfaceTag = dump[0].parse().map_err(|e| anyhow::anyhow!("{e}"))?;
        let (ring, gens) = build_for_dump(tag, &opts)?;
        std::fs::write(&dump[1], write_ideal(&ring, &gens)).with_context(|| format!("writing {}", dump[1]))?;
        eprintln!("wrote {} generators of the {} ideal to {}", gens.len(), tag, dump[1]);
        return Ok(());
    }

    let file = match &v.expected {
        Some(p) => ExpectedFile::load(p)?,
        None => ExpectedFile::builtin(),
    };
    let mut plans = Vec::new();
    if v.rows.is_empty() {
        for r in &file.rows {
            plans.push(RowPlan::new(r)?);
        }
    } else {
        for tag in &v.rows {
            let Some(r) = file.row(tag) else { bail!("unknown row {tag}") };
            plans.push(RowPlan::new(r)?);
        }
    }

    let reports = run_rows(&plans, &opts, v.jobs);
    print!("{}", emit_report(&reports, v.out.as_deref())?);
    if reports.iter().any(|r| r.failed()) {
        std::process::exit(1);
    }
    Ok(())
}
