//! `synth-data`: generate the synthetic two-class benchmark set.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::data::{bayes_accuracy, synth_dataset};

use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Total points (even, at least 4).
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    /// Class overlap in [0, 1]; 0 is linearly separable.
    #[arg(long, default_value_t = 0.3)]
    overlap: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args, _config_file: Option<&Path>) -> Result<(), CliError> {
    let data = synth_dataset(args.samples, args.overlap, args.seed)?;
    data.save_csv(&args.out)?;
    println!(
        "synth-data: {} points, overlap {}, Bayes bound {:.4} -> {}",
        data.len(),
        args.overlap,
        bayes_accuracy(args.overlap)?,
        args.out.display()
    );
    Ok(())
}
