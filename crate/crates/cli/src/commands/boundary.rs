//! `boundary-grid`: decision values of a model over a uniform grid on the
//! unit box, optionally rendered as a PPM heatmap with test points overlaid.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::data::Dataset2D;
use photonic_core::Error;

use super::AnyModel;
use crate::config::RunConfig;
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Saved model file.
    #[arg(long)]
    model: PathBuf,
    /// Grid points per axis (at least 16).
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Optional PPM heatmap of the predicted sign.
    #[arg(long)]
    ppm: Option<PathBuf>,
    /// Labeled points to overlay on the heatmap.
    #[arg(long)]
    points: Option<PathBuf>,
}

pub fn run(args: Args, config_file: Option<&Path>) -> Result<(), CliError> {
    let config = RunConfig::resolve(config_file)?;
    if args.resolution < 16 {
        return Err(CliError::Config(format!(
            "resolution must be at least 16, got {}",
            args.resolution
        )));
    }
    let model = AnyModel::load(&args.model)?;
    let res = args.resolution;

    let coordinate = |k: usize| -1.0 + 2.0 * k as f64 / (res - 1) as f64;
    let mut signs = vec![1.0f64; res * res];
    let mut out = String::new();
    out.push_str("# format_version 1\n# kind boundary_grid\n");
    out.push_str(&format!("# model_kind {}\n# resolution {res}\n", model.kind()));
    out.push_str("x1,x2,decision,sign\n");
    for i in 0..res {
        let x1 = coordinate(i);
        for j in 0..res {
            let x2 = coordinate(j);
            let decision = model.decision([x1, x2])?;
            let sign = if decision >= 0.0 { 1.0 } else { -1.0 };
            signs[i * res + j] = sign;
            out.push_str(&format!("{x1},{x2},{decision},{}\n", sign as i32));
        }
    }
    std::fs::write(&args.out, out).map_err(Error::from)?;
    println!(
        "boundary-grid: {res}x{res} {} grid -> {}",
        model.kind(),
        args.out.display()
    );

    if let Some(ppm_path) = args.ppm {
        let overlay = match &args.points {
            Some(path) => Some(Dataset2D::load_csv(path, config.label_convention)?),
            None => None,
        };
        let image = render_ppm(&signs, res, overlay.as_ref());
        std::fs::write(&ppm_path, image).map_err(Error::from)?;
        println!("heatmap -> {}", ppm_path.display());
    }
    Ok(())
}

/// Binary P6 image: row 0 at the top corresponds to x2 = +1, so the plot has
/// conventional axis orientation. Positive region light blue, negative dark
/// red; overlaid points draw as 3x3 stamps, white for +1 and black for -1.
fn render_ppm(signs: &[f64], res: usize, points: Option<&Dataset2D>) -> Vec<u8> {
    const POSITIVE: [u8; 3] = [168, 200, 235];
    const NEGATIVE: [u8; 3] = [150, 46, 46];
    let mut pixels = vec![0u8; res * res * 3];
    for row in 0..res {
        for col in 0..res {
            // Pixel (row, col) shows grid point i = col (x1), j = res-1-row (x2).
            let sign = signs[col * res + (res - 1 - row)];
            let color = if sign >= 0.0 { POSITIVE } else { NEGATIVE };
            pixels[(row * res + col) * 3..][..3].copy_from_slice(&color);
        }
    }
    if let Some(data) = points {
        for (p, y) in data.iter() {
            let col = ((p[0] + 1.0) / 2.0 * (res - 1) as f64).round() as isize;
            let row = (res as isize - 1) - ((p[1] + 1.0) / 2.0 * (res - 1) as f64).round() as isize;
            let color = if y > 0.0 { [255, 255, 255] } else { [0, 0, 0] };
            for dr in -1isize..=1 {
                for dc in -1isize..=1 {
                    let (r, c) = (row + dr, col + dc);
                    if (0..res as isize).contains(&r) && (0..res as isize).contains(&c) {
                        let at = (r as usize * res + c as usize) * 3;
                        pixels[at..at + 3].copy_from_slice(&color);
                    }
                }
            }
        }
    }
    let mut image = format!("P6\n{res} {res}\n255\n").into_bytes();
    image.extend_from_slice(&pixels);
    image
}
