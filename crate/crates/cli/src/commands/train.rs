//! `train`: split a labeled 2D dataset, train one of the three classifiers,
//! persist the model, and write a metrics report.
//!
//! Wall time is printed but kept out of the report file so reruns with the
//! same configuration produce byte-identical artifacts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args as ClapArgs;
use photonic_core::data::{split_dataset, Dataset2D, SplitRatios};
use photonic_core::gkm;
use photonic_core::optim::{BasinHoppingSettings, DualAnnealingSettings};
use photonic_core::persist::KvWriter;
use photonic_core::rks;
use photonic_core::vqc;

use crate::config::{FitMethod, RunConfig};
use crate::CliError;

#[derive(ClapArgs)]
pub struct Args {
    /// Classifier: gkm, rks, or vqc.
    #[arg(long)]
    method: String,
    /// Labeled dataset CSV (x1,x2,label).
    #[arg(long)]
    data: PathBuf,
    /// Where to write the model.
    #[arg(long)]
    model_out: PathBuf,
    /// Where to write the metrics report (default: the model path with a
    /// `.metrics` extension).
    #[arg(long)]
    metrics_out: Option<PathBuf>,
    #[arg(long)]
    photons: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    features: Option<usize>,
    #[arg(long)]
    distribution: Option<String>,
    #[arg(long)]
    input_state: Option<String>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    split_seed: Option<u64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    fit_method: Option<String>,
}

pub fn run(args: Args, config_file: Option<&Path>) -> Result<(), CliError> {
    let mut config = RunConfig::resolve(config_file)?;
    if let Some(v) = args.photons {
        config.photons = v;
    }
    if let Some(v) = args.alpha {
        config.alpha = Some(v);
    }
    if let Some(v) = args.gamma {
        config.gamma = v;
    }
    if let Some(v) = args.features {
        config.features = v;
    }
    if let Some(v) = &args.distribution {
        config.set("distribution", v)?;
    }
    if let Some(v) = &args.input_state {
        config.set("input_state", v)?;
    }
    if let Some(v) = args.restarts {
        config.restarts = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.split_seed {
        config.split_seed = v;
    }
    if let Some(v) = args.max_iter {
        config.max_iter = v;
    }
    if let Some(v) = &args.fit_method {
        config.set("fit_method", v)?;
    }

    let data = Dataset2D::load_csv(&args.data, config.label_convention)?;
    let labels: Vec<i8> = data.labels().iter().map(|&y| y as i8).collect();
    let ratios = SplitRatios::new(config.ratios.0, config.ratios.1, config.ratios.2)?;
    let split = split_dataset(&labels, ratios, config.split_seed, config.stratified)?;
    let (train, validation, test) = data.split(&split);

    let started = Instant::now();
    let trained = match args.method.as_str() {
        "gkm" => train_gkm(&config, &train)?,
        "rks" => train_rks(&config, &train)?,
        "vqc" => train_vqc(&config, &train, &validation)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown method '{other}' (expected gkm, rks, or vqc)"
            )))
        }
    };
    let elapsed = started.elapsed();

    let accuracy = |set: &Dataset2D| -> Result<f64, CliError> {
        Ok(match &trained {
            Trained::Gkm { model, .. } => model.score(set)?,
            Trained::Rks { model, .. } => model.score(set)?,
            Trained::Vqc { model } => model.score(set)?,
        })
    };
    let train_accuracy = accuracy(&train)?;
    let validation_accuracy = accuracy(&validation)?;
    let test_accuracy = accuracy(&test)?;

    let mut report = KvWriter::new("metrics");
    report.push("method", &args.method);
    report.push("train_count", train.len());
    report.push("validation_count", validation.len());
    report.push("test_count", test.len());
    report.push("split_seed", config.split_seed);
    report.push("seed", config.seed);
    report.push("train_accuracy", train_accuracy);
    report.push("validation_accuracy", validation_accuracy);
    report.push("test_accuracy", test_accuracy);
    match &trained {
        Trained::Gkm { model, .. } => {
            model.save(&args.model_out)?;
            report.push("photons", config.photons);
            report.push("sigma", config.sigma);
            report.push("alpha", config.alpha_for_gkm());
            report.push("fit_loss", trained.loss());
        }
        Trained::Rks { model, .. } => {
            model.save(&args.model_out)?;
            report.push("features", config.features);
            report.push("gamma", config.gamma);
            report.push("distribution", config.distribution.as_str());
            report.push("loss", trained.loss());
        }
        Trained::Vqc { model } => {
            model.save(&args.model_out)?;
            report.push("input_state", photonic_core::persist::occupation_token(
                model.input_state.occupations(),
            ));
            report.push("alpha", config.vqc_alpha);
            report.push("restarts", config.restarts);
            report.push_list("restart_losses", model.restart_losses.iter());
            report.push_list("restart_seeds", model.restart_seeds.iter());
            report.push("retained_restart", model.retained_restart);
            report.push("loss", trained.loss());
        }
    }
    let metrics_path = args
        .metrics_out
        .unwrap_or_else(|| args.model_out.with_extension("metrics"));
    report.write_to(&metrics_path)?;

    println!(
        "train {}: accuracy train/val/test = {train_accuracy:.4}/{validation_accuracy:.4}/{test_accuracy:.4}, loss = {:e}, wall time = {elapsed:.2?}",
        args.method,
        trained.loss(),
    );
    println!(
        "model -> {}, metrics -> {}",
        args.model_out.display(),
        metrics_path.display()
    );
    Ok(())
}

enum Trained {
    Gkm { model: gkm::GkmModel, fit_loss: f64 },
    Rks { model: rks::RksModel, train_loss: f64 },
    Vqc { model: vqc::VqcModel },
}

impl Trained {
    fn loss(&self) -> f64 {
        match self {
            Trained::Gkm { fit_loss, .. } => *fit_loss,
            Trained::Rks { train_loss, .. } => *train_loss,
            Trained::Vqc { model } => model.restart_losses[model.retained_restart],
        }
    }
}

fn train_gkm(config: &RunConfig, train: &Dataset2D) -> Result<Trained, CliError> {
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
    let fit_loss = gkm::kernel_fit_loss(&observable, &deltas, config.sigma)?;
    let mut model = gkm::train_gkm(train, observable, config.sigma, config.alpha_for_gkm())?;
    model.label_convention = config.label_convention;
    model.delta_seed = Some(config.delta_seed);
    Ok(Trained::Gkm { model, fit_loss })
}

fn train_rks(config: &RunConfig, train: &Dataset2D) -> Result<Trained, CliError> {
    let features = rks::RksFeatures::sample(
        config.features,
        config.gamma,
        config.distribution,
        config.placement,
        config.seed,
    )?;
    let model = rks::train_rks(train, features)?;
    // Mean squared residual of the linear fit.
    let train_loss = train
        .iter()
        .map(|(x, y)| (model.decision(x) - y).powi(2))
        .sum::<f64>()
        / (2.0 * train.len() as f64);
    Ok(Trained::Rks { model, train_loss })
}

fn train_vqc(
    config: &RunConfig,
    train: &Dataset2D,
    validation: &Dataset2D,
) -> Result<Trained, CliError> {
    let settings = vqc::VqcSettings {
        alpha: config.vqc_alpha,
        restarts: config.restarts,
        annealing: DualAnnealingSettings {
            max_iter: config.max_iter,
            refine_evals: config.refine_evals,
            ..DualAnnealingSettings::default()
        },
        transform: vqc::AffineTransform::default(),
    };
    let seeds: Vec<u64> = (0..config.restarts as u64)
        .map(|r| config.seed.wrapping_add(r))
        .collect();
    let validation = if validation.is_empty() {
        None
    } else {
        Some(validation)
    };
    let model = vqc::train_vqc(
        train,
        config.input_state.clone(),
        &settings,
        &seeds,
        validation,
    )?;
    Ok(Trained::Vqc { model })
}
