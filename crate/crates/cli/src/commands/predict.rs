//! `predict`: label points with a saved model.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::Error;

use super::AnyModel;
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Saved model file.
    #[arg(long)]
    model: PathBuf,
    /// Input CSV with header x1,x2 or x1,x2,label (labels are ignored).
    #[arg(long)]
    data: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args, _config_file: Option<&Path>) -> Result<(), CliError> {
    let model = AnyModel::load(&args.model)?;
    let points = load_points(&args.data)?;
    let mut out = String::from("# format_version 1\n# kind predictions\nx1,x2,decision,label\n");
    for point in &points {
        let decision = model.decision(*point)?;
        let label = if decision >= 0.0 { "+1" } else { "-1" };
        out.push_str(&format!("{},{},{},{}\n", point[0], point[1], decision, label));
    }
    std::fs::write(&args.out, out).map_err(Error::from)?;
    println!(
        "predict: {} points through the {} model -> {}",
        points.len(),
        model.kind(),
        args.out.display()
    );
    Ok(())
}

/// Reads bare or labeled point rows; features must lie in [-1, 1].
pub fn load_points(path: &Path) -> Result<Vec<[f64; 2]>, CliError> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() || line.starts_with('#') => continue,
            Some((_, line)) => break line.trim(),
            None => return Err(Error::EmptyDataset.into()),
        }
    };
    if header != "x1,x2" && header != "x1,x2,label" {
        return Err(Error::MalformedRow {
            row: 1,
            message: format!("expected header 'x1,x2[,label]', got '{header}'"),
        }
        .into());
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() < 2 {
            return Err(Error::MalformedRow {
                row,
                message: format!("expected at least 2 fields, got {}", parts.len()),
            }
            .into());
        }
        let mut point = [0.0; 2];
        for (slot, raw) in point.iter_mut().zip(&parts[..2]) {
            *slot = raw.trim().parse().map_err(|_| Error::MalformedRow {
                row,
                message: format!("cannot parse feature '{raw}'"),
            })?;
            if !(-1.0..=1.0).contains(slot) {
                return Err(Error::FeatureOutOfRange { row, value: *slot }.into());
            }
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(Error::EmptyDataset.into());
    }
    Ok(points)
}
