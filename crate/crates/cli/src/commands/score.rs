//! `score`: accuracy of a saved model over a labeled set.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::data::Dataset2D;
use photonic_core::persist::KvWriter;

use super::AnyModel;
use crate::config::RunConfig;
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Saved model file.
    #[arg(long)]
    model: PathBuf,
    /// Labeled dataset CSV.
    #[arg(long)]
    data: PathBuf,
    /// Optional report file.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args, config_file: Option<&Path>) -> Result<(), CliError> {
    let config = RunConfig::resolve(config_file)?;
    let model = AnyModel::load(&args.model)?;
    let data = Dataset2D::load_csv(&args.data, config.label_convention)?;
    let accuracy = model.score(&data)?;
    println!(
        "score: {} on {} points -> accuracy {accuracy}",
        model.kind(),
        data.len()
    );
    if let Some(out) = args.out {
        let mut report = KvWriter::new("score_report");
        report.push("model_kind", model.kind());
        report.push("count", data.len());
        report.push("accuracy", accuracy);
        report.write_to(&out)?;
    }
    Ok(())
}
