//! Run configuration: defaults, config file, environment, then flags, each
//! layer overriding the previous one.
//!
//! The file format is the crate's flat key-value text; every key can also be
//! set through the environment as `PHOTONIC_<UPPERCASE_KEY>`.

use std::path::Path;

use photonic_core::data::LabelConvention;
use photonic_core::fock::FockState;
use photonic_core::gkm;
use photonic_core::persist::{parse_occupations, KvFile, KvWriter};
use photonic_core::rks::{FeatureDistribution, GammaPlacement};

use crate::CliError;

/// How observables are fit where both routes exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitMethod {
    /// Exact linear least squares.
    #[default]
    LeastSquares,
    /// Basin hopping on the quadratic loss.
    BasinHopping,
}

impl FitMethod {
    #[cfg_attr(not(test), allow(dead_code))]
    fn as_str(&self) -> &'static str {
        match self {
            FitMethod::LeastSquares => "ls",
            FitMethod::BasinHopping => "bh",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "ls" => Some(FitMethod::LeastSquares),
            "bh" => Some(FitMethod::BasinHopping),
            _ => None,
        }
    }
}

/// Every tunable the commands understand, with defaults matching the
/// reference values where one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Photon number for the kernel classifier.
    pub photons: u32,
    /// Kernel resolution.
    pub sigma: f64,
    /// Ridge weight; per-photon default when unset.
    pub alpha: Option<f64>,
    /// Observable penalty weight of the variational classifier.
    pub vqc_alpha: f64,
    /// Random-feature resolution.
    pub gamma: f64,
    /// Random-feature count R.
    pub features: usize,
    /// Cosine frequency multiplier k.
    pub frequency: u32,
    pub distribution: FeatureDistribution,
    pub placement: GammaPlacement,
    /// Input state of the variational circuit.
    pub input_state: FockState,
    /// Annealing restarts.
    pub restarts: usize,
    /// Base seed for model training randomness.
    pub seed: u64,
    pub split_seed: u64,
    pub stratified: bool,
    pub ratios: (u32, u32, u32),
    /// Seed and count of the kernel-fit training distances.
    pub delta_seed: u64,
    pub delta_count: usize,
    /// Basin-hopping settings.
    pub niter: usize,
    pub niter_basin: usize,
    pub step_scale: f64,
    /// Dual-annealing budget.
    pub max_iter: usize,
    pub refine_evals: Option<usize>,
    pub fit_method: FitMethod,
    pub label_convention: LabelConvention,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            photons: 4,
            sigma: 1.0,
            alpha: None,
            vqc_alpha: 1e-4,
            gamma: 0.1,
            features: 100,
            frequency: 1,
            distribution: FeatureDistribution::Gaussian,
            placement: GammaPlacement::ScaleDirections,
            input_state: FockState::new(vec![1, 0, 0]).expect("static state"),
            restarts: 8,
            seed: 1,
            split_seed: 5,
            stratified: true,
            ratios: (80, 10, 10),
            delta_seed: gkm::DEFAULT_DELTA_SEED,
            delta_count: gkm::DEFAULT_DELTA_COUNT,
            niter: 10,
            niter_basin: 10,
            step_scale: 0.5,
            max_iter: 1000,
            refine_evals: None,
            fit_method: FitMethod::default(),
            label_convention: LabelConvention::VisPositive,
        }
    }
}

const KEYS: &[&str] = &[
    "photons",
    "sigma",
    "alpha",
    "vqc_alpha",
    "gamma",
    "features",
    "frequency",
    "distribution",
    "placement",
    "input_state",
    "restarts",
    "seed",
    "split_seed",
    "stratified",
    "ratios",
    "delta_seed",
    "delta_count",
    "niter",
    "niter_basin",
    "step_scale",
    "max_iter",
    "refine_evals",
    "fit_method",
    "label_convention",
];

impl RunConfig {
    /// Ridge weight: explicit value, else the per-photon default, else 3.0.
    pub fn alpha_for_gkm(&self) -> f64 {
        self.alpha
            .or_else(|| gkm::default_alpha(self.photons))
            .unwrap_or(3.0)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Config(format!("config key '{key}': {what} '{value}'"));
        match key {
            "photons" => self.photons = value.parse().map_err(|_| bad("bad integer"))?,
            "sigma" => self.sigma = value.parse().map_err(|_| bad("bad number"))?,
            "alpha" => {
                self.alpha = if value == "auto" {
                    None
                } else {
                    Some(value.parse().map_err(|_| bad("bad number"))?)
                }
            }
            "vqc_alpha" => self.vqc_alpha = value.parse().map_err(|_| bad("bad number"))?,
            "gamma" => self.gamma = value.parse().map_err(|_| bad("bad number"))?,
            "features" => self.features = value.parse().map_err(|_| bad("bad integer"))?,
            "frequency" => self.frequency = value.parse().map_err(|_| bad("bad integer"))?,
            "distribution" => {
                self.distribution =
                    FeatureDistribution::parse(value).ok_or_else(|| bad("unknown distribution"))?
            }
            "placement" => {
                self.placement =
                    GammaPlacement::parse(value).ok_or_else(|| bad("unknown placement"))?
            }
            "input_state" => {
                let occ = parse_occupations(value).ok_or_else(|| bad("bad occupation token"))?;
                self.input_state =
                    FockState::new(occ).map_err(|e| CliError::Config(e.to_string()))?;
            }
            "restarts" => self.restarts = value.parse().map_err(|_| bad("bad integer"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("bad integer"))?,
            "split_seed" => self.split_seed = value.parse().map_err(|_| bad("bad integer"))?,
            "stratified" => self.stratified = value.parse().map_err(|_| bad("bad boolean"))?,
            "ratios" => {
                let parts: Vec<u32> = value
                    .split(',')
                    .map(|p| p.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad("bad ratio list"))?;
                if parts.len() != 3 {
                    return Err(bad("expected three ratios"));
                }
                self.ratios = (parts[0], parts[1], parts[2]);
            }
            "delta_seed" => self.delta_seed = value.parse().map_err(|_| bad("bad integer"))?,
            "delta_count" => self.delta_count = value.parse().map_err(|_| bad("bad integer"))?,
            "niter" => self.niter = value.parse().map_err(|_| bad("bad integer"))?,
            "niter_basin" => self.niter_basin = value.parse().map_err(|_| bad("bad integer"))?,
            "step_scale" => self.step_scale = value.parse().map_err(|_| bad("bad number"))?,
            "max_iter" => self.max_iter = value.parse().map_err(|_| bad("bad integer"))?,
            "refine_evals" => {
                self.refine_evals = if value == "auto" {
                    None
                } else {
                    Some(value.parse().map_err(|_| bad("bad integer"))?)
                }
            }
            "fit_method" => {
                self.fit_method = FitMethod::parse(value).ok_or_else(|| bad("unknown method"))?
            }
            "label_convention" => {
                self.label_convention = value
                    .parse()
                    .map_err(|_| bad("unknown convention"))?
            }
            other => {
                return Err(CliError::Config(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }

    #[cfg_attr(not(test), allow(dead_code))]
    fn value_of(&self, key: &str) -> String {
        match key {
            "photons" => self.photons.to_string(),
            "sigma" => self.sigma.to_string(),
            "alpha" => self.alpha.map_or("auto".to_string(), |a| a.to_string()),
            "vqc_alpha" => self.vqc_alpha.to_string(),
            "gamma" => self.gamma.to_string(),
            "features" => self.features.to_string(),
            "frequency" => self.frequency.to_string(),
            "distribution" => self.distribution.as_str(),
            "placement" => self.placement.as_str().to_string(),
            "input_state" => photonic_core::persist::occupation_token(
                self.input_state.occupations(),
            ),
            "restarts" => self.restarts.to_string(),
            "seed" => self.seed.to_string(),
            "split_seed" => self.split_seed.to_string(),
            "stratified" => self.stratified.to_string(),
            "ratios" => format!("{},{},{}", self.ratios.0, self.ratios.1, self.ratios.2),
            "delta_seed" => self.delta_seed.to_string(),
            "delta_count" => self.delta_count.to_string(),
            "niter" => self.niter.to_string(),
            "niter_basin" => self.niter_basin.to_string(),
            "step_scale" => self.step_scale.to_string(),
            "max_iter" => self.max_iter.to_string(),
            "refine_evals" => self
                .refine_evals
                .map_or("auto".to_string(), |v| v.to_string()),
            "fit_method" => self.fit_method.as_str().to_string(),
            "label_convention" => self.label_convention.as_str().to_string(),
            _ => unreachable!("value_of called with unknown key"),
        }
    }

    /// Serializes every setting; loading the result reproduces the config.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn to_text(&self) -> String {
        let mut w = KvWriter::new("config");
        for key in KEYS {
            w.push(key, self.value_of(key));
        }
        w.finish()
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let file = KvFile::read(path).map_err(CliError::Core)?;
        file.expect_kind("config").map_err(CliError::Core)?;
        for key in file.keys() {
            if key != "format_version" && key != "kind" && !KEYS.contains(&key) {
                return Err(CliError::Config(format!(
                    "{}: unknown config key '{key}'",
                    path.display()
                )));
            }
        }
        for key in KEYS {
            if file.has(key) {
                let value: String = file.get_one(key).map_err(CliError::Core)?;
                self.set(key, &value)?;
            }
        }
        Ok(())
    }

    /// Applies `PHOTONIC_<KEY>` environment overrides.
    pub fn apply_env(&mut self) -> Result<(), CliError> {
        for key in KEYS {
            let var = format!("PHOTONIC_{}", key.to_uppercase());
            if let Ok(value) = std::env::var(&var) {
                self.set(key, &value)?;
            }
        }
        Ok(())
    }

    /// Standard resolution order: defaults, file, environment. Flags are
    /// applied by the caller afterwards.
    pub fn resolve(config_file: Option<&Path>) -> Result<Self, CliError> {
        let mut config = Self::default();
        if let Some(path) = config_file {
            config.load_file(path)?;
        }
        config.apply_env()?;
        Ok(config)
    }
}
