//! `fit-kernel`: train the two-mode observable against the Gaussian target
//! and export the (distance, target, model) curve.

use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use photonic_core::gkm;
use photonic_core::optim::BasinHoppingSettings;

use crate::config::{FitMethod, RunConfig};
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Photon number of the input state |n, 0>.
    #[arg(long)]
    photons: Option<u32>,
    /// Kernel resolution sigma.
    #[arg(long)]
    sigma: Option<f64>,
    /// Number of training distances.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for the training-distance draw.
    #[arg(long)]
    delta_seed: Option<u64>,
    /// Fit route: ls (exact) or bh (basin hopping).
    #[arg(long)]
    fit_method: Option<String>,
    /// Seed of the basin-hopping route.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args, config_file: Option<&Path>) -> Result<(), CliError> {
    let mut config = RunConfig::resolve(config_file)?;
    if let Some(v) = args.photons {
        config.photons = v;
    }
    if let Some(v) = args.sigma {
        config.sigma = v;
    }
    if let Some(v) = args.samples {
        config.delta_count = v;
    }
    if let Some(v) = args.delta_seed {
        config.delta_seed = v;
    }
    if let Some(v) = &args.fit_method {
        config.set("fit_method", v)?;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if !(1..=10).contains(&config.photons) {
        return Err(CliError::Config(format!(
            "photons must be between 1 and 10, got {}",
            config.photons
        )));
    }

    let deltas = gkm::sample_training_deltas(config.delta_count, config.delta_seed);
    let observable = match config.fit_method {
        FitMethod::LeastSquares => gkm::fit_observable_ls(config.photons, config.sigma, &deltas)?,
        FitMethod::BasinHopping => gkm::fit_observable_bh(
            config.photons,
            config.sigma,
            &deltas,
            &BasinHoppingSettings {
                niter: config.niter,
                niter_basin: config.niter_basin,
                step_scale: config.step_scale,
            },
            config.seed,
        )?,
    };
    let loss = gkm::kernel_fit_loss(&observable, &deltas, config.sigma)?;

    let mut out = String::new();
    out.push_str("# format_version 1\n# kind kernel_fit\n");
    out.push_str(&format!("# photons {}\n", config.photons));
    out.push_str(&format!("# sigma {}\n", config.sigma));
    out.push_str(&format!("# samples {}\n", config.delta_count));
    out.push_str(&format!("# delta_seed {}\n", config.delta_seed));
    out.push_str(&format!("# loss {loss}\n"));
    out.push_str("delta,target,model\n");
    for k in 0..200 {
        let delta = 3.0 * k as f64 / 199.0;
        let target = gkm::gaussian_target(delta, config.sigma)?;
        let model = gkm::kernel_model_output(delta, &observable);
        out.push_str(&format!("{delta},{target},{model}\n"));
    }
    std::fs::write(&args.out, out).map_err(photonic_core::Error::from)?;
    println!(
        "fit-kernel: photons={} sigma={} samples={} loss={loss:e} -> {}",
        config.photons,
        config.sigma,
        config.delta_count,
        args.out.display()
    );
    Ok(())
}
