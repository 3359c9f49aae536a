//! Quantum-enhanced random kitchen sinks: randomized cosine features sampled
//! by the one-photon two-mode circuit, fit with a plain linear model.
//!
//! Each feature is the circuit expectation `sqrt(2) cos(phase)` at a
//! randomized phase built from a random direction `w_r` and offset `b_r`.
//! Inner products of the feature vectors approximate a low-resolution
//! Gaussian kernel, and training reduces to an R-dimensional least-squares
//! problem; no kernel matrix over the samples is ever formed.

use std::path::Path;

use ndarray::Array2;

use crate::circuit::mzi_unitary;
use crate::data::Dataset2D;
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::observable::DiagonalObservable;
use crate::optim::{
    basin_hopping, solve_least_squares, solve_least_squares_with_rank, BasinHoppingSettings,
    Objective,
};
use crate::persist::{occupation_token, parse_occupations, KvFile, KvWriter};
use crate::rng::SeededRng;
use crate::simulate::{mzi_closed_form, output_distribution};

/// Distribution of the random direction coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureDistribution {
    /// Standard normal per coordinate (spherical Gaussian directions).
    Gaussian,
    /// Chi-squared per coordinate with the given degrees of freedom.
    ChiSquared { df: u32 },
}

impl FeatureDistribution {
    pub const DEFAULT_CHI2_DF: u32 = 2;

    pub fn as_str(&self) -> String {
        match self {
            FeatureDistribution::Gaussian => "gaussian".to_string(),
            FeatureDistribution::ChiSquared { df } => format!("chi2:{df}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gaussian" => Some(FeatureDistribution::Gaussian),
            "chi2" => Some(FeatureDistribution::ChiSquared {
                df: Self::DEFAULT_CHI2_DF,
            }),
            other => other.strip_prefix("chi2:").and_then(|df| {
                df.parse().ok().map(|df| FeatureDistribution::ChiSquared { df })
            }),
        }
    }
}

/// Where the resolution factor applies in the randomized phase.
///
/// `ScaleDirections` is the standard random-Fourier-feature construction
/// (`phase = (gamma w) . x + b`, offsets uniform over a full period), the
/// one whose inner products converge to the Gaussian kernel. `ScaleAll`
/// scales the offset too (`phase = gamma (w . x + b)`); it spans the same
/// model class but biases the kernel estimate, and is kept as a variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaPlacement {
    #[default]
    ScaleDirections,
    ScaleAll,
}

impl GammaPlacement {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaPlacement::ScaleDirections => "scale_directions",
            GammaPlacement::ScaleAll => "scale_all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "scale_directions" => Some(GammaPlacement::ScaleDirections),
            "scale_all" => Some(GammaPlacement::ScaleAll),
            _ => None,
        }
    }
}

/// Draws the random directions (R x d, i.i.d. rows) and offsets (uniform on
/// [0, 2 pi]) of a feature bank. Reproducible given the seed.
pub fn sample_random_features(
    r: usize,
    d: usize,
    distribution: FeatureDistribution,
    seed: u64,
) -> Result<(Array2<f64>, Vec<f64>)> {
    if r == 0 || d == 0 {
        return Err(Error::ZeroIterations("feature count"));
    }
    let mut rng = SeededRng::new(seed);
    let mut w = Array2::zeros((r, d));
    for i in 0..r {
        for j in 0..d {
            w[[i, j]] = match distribution {
                FeatureDistribution::Gaussian => rng.normal(),
                FeatureDistribution::ChiSquared { df } => rng.chi_squared(df),
            };
        }
    }
    let b = (0..r)
        .map(|_| rng.uniform_range(0.0, std::f64::consts::TAU))
        .collect();
    Ok((w, b))
}

/// Fits the diagonal observable of the `|n, 0>` interferometer so that its
/// expectation equals `sqrt(2) cos(phase)`, by least squares over a phase
/// grid. For one photon the solution is exactly `(-sqrt 2, sqrt 2)` on the
/// outcomes `(1,0), (0,1)`; for any `n` the cosine lies in the model span,
/// so the residual vanishes.
pub fn fit_cosine_observable(photons: u32) -> Result<DiagonalObservable> {
    let grid: Vec<f64> = (0..64)
        .map(|k| k as f64 * std::f64::consts::TAU / 64.0)
        .collect();
    let design = Array2::from_shape_fn((grid.len(), photons as usize + 1), |(i, m)| {
        mzi_closed_form(photons, m as u32, grid[i]).expect("m <= n")
    });
    let targets: Vec<f64> = grid
        .iter()
        .map(|&p| std::f64::consts::SQRT_2 * p.cos())
        .collect();
    let (lambda, rank) = solve_least_squares_with_rank(&design, &targets)?;
    if rank < photons as usize + 1 {
        return Err(Error::RankDeficient {
            rank,
            cols: photons as usize + 1,
        });
    }
    let mut obs = DiagonalObservable::new(photons, 2)?;
    for (m, &value) in lambda.iter().enumerate() {
        obs.set(
            FockState::new(vec![photons - m as u32, m as u32])?,
            value,
        )?;
    }
    Ok(obs)
}

/// Basin-hopping variant of [`fit_cosine_observable`] for one photon; the
/// quadratic loss sends it to the same optimum.
pub fn fit_cosine_observable_bh(
    settings: &BasinHoppingSettings,
    seed: u64,
) -> Result<DiagonalObservable> {
    let grid: Vec<f64> = (0..64)
        .map(|k| k as f64 * std::f64::consts::TAU / 64.0)
        .collect();
    let loss = move |lambda: &[f64]| {
        grid.iter()
            .map(|&p| {
                let f = lambda[0] * (p / 2.0).sin().powi(2) + lambda[1] * (p / 2.0).cos().powi(2);
                (f - std::f64::consts::SQRT_2 * p.cos()).powi(2)
            })
            .sum::<f64>()
            / (2.0 * 64.0)
    };
    let objective = Objective::new(2, loss)?.with_bounds(vec![(-10.0, 10.0); 2])?;
    let result = basin_hopping(&objective, &[0.0, 0.0], settings, seed)?;
    let mut obs = DiagonalObservable::new(1, 2)?;
    obs.set(FockState::new(vec![1, 0])?, result.parameters[0])?;
    obs.set(FockState::new(vec![0, 1])?, result.parameters[1])?;
    Ok(obs)
}

/// A sampled feature bank plus the circuit pieces that evaluate it.
#[derive(Debug, Clone, PartialEq)]
pub struct RksFeatures {
    pub gamma: f64,
    /// Cosine frequency multiplier applied to the phase.
    pub frequency: u32,
    pub distribution: FeatureDistribution,
    pub placement: GammaPlacement,
    pub seed: u64,
    input_state: FockState,
    observable: DiagonalObservable,
    w: Array2<f64>,
    b: Vec<f64>,
}

impl RksFeatures {
    /// Samples a bank of `r` features for the one-photon circuit.
    pub fn sample(
        r: usize,
        gamma: f64,
        distribution: FeatureDistribution,
        placement: GammaPlacement,
        seed: u64,
    ) -> Result<Self> {
        Self::sample_with_photons(r, gamma, distribution, placement, seed, 1)
    }

    /// Same bank evaluated through the `|n, 0>` input state with an
    /// observable trained to the identical cosine response.
    pub fn sample_with_photons(
        r: usize,
        gamma: f64,
        distribution: FeatureDistribution,
        placement: GammaPlacement,
        seed: u64,
        photons: u32,
    ) -> Result<Self> {
        if gamma.is_nan() || gamma <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
            });
        }
        let (w, b) = sample_random_features(r, 2, distribution, seed)?;
        Ok(Self {
            gamma,
            frequency: 1,
            distribution,
            placement,
            seed,
            input_state: FockState::new(vec![photons, 0])?,
            observable: fit_cosine_observable(photons)?,
            w,
            b,
        })
    }

    pub fn feature_count(&self) -> usize {
        self.w.nrows()
    }

    pub fn input_state(&self) -> &FockState {
        &self.input_state
    }

    pub fn observable(&self) -> &DiagonalObservable {
        &self.observable
    }

    pub fn directions(&self) -> &Array2<f64> {
        &self.w
    }

    pub fn offsets(&self) -> &[f64] {
        &self.b
    }

    /// Phase fed to feature `r` for input `x`.
    pub fn phase(&self, r: usize, x: [f64; 2]) -> f64 {
        let dot = self.w[[r, 0]] * x[0] + self.w[[r, 1]] * x[1];
        let base = match self.placement {
            GammaPlacement::ScaleDirections => self.gamma * dot + self.b[r],
            GammaPlacement::ScaleAll => self.gamma * (dot + self.b[r]),
        };
        self.frequency as f64 * base
    }

    /// Feature vector via the circuit: each entry is the observable
    /// expectation of the interferometer output at the feature's phase,
    /// scaled by `1/sqrt(R)`.
    pub fn map(&self, x: [f64; 2]) -> Vec<f64> {
        let scale = 1.0 / (self.feature_count() as f64).sqrt();
        (0..self.feature_count())
            .map(|r| {
                let dist = output_distribution(&mzi_unitary(self.phase(r, x)), &self.input_state)
                    .expect("two-mode interferometer evaluates everywhere");
                scale * self.observable.expectation(&dist)
            })
            .collect()
    }

    /// Closed-form evaluation `sqrt(2)/sqrt(R) cos(phase)`; the circuit path
    /// must agree with this to machine precision.
    pub fn map_closed_form(&self, x: [f64; 2]) -> Vec<f64> {
        let scale = std::f64::consts::SQRT_2 / (self.feature_count() as f64).sqrt();
        (0..self.feature_count())
            .map(|r| scale * self.phase(r, x).cos())
            .collect()
    }
}

/// A trained kitchen-sinks classifier: the feature bank and the linear
/// weights.
#[derive(Debug, Clone, PartialEq)]
pub struct RksModel {
    pub features: RksFeatures,
    coefficients: Vec<f64>,
}

/// Fits the linear weights by ordinary least squares on the feature matrix
/// (N x R); no regularization term, and no N x N matrix anywhere on the
/// path.
pub fn train_rks(train: &Dataset2D, features: RksFeatures) -> Result<RksModel> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = train.len();
    let r = features.feature_count();
    let mut z = Array2::zeros((n, r));
    for (i, (x, _)) in train.iter().enumerate() {
        for (j, v) in features.map(x).into_iter().enumerate() {
            z[[i, j]] = v;
        }
    }
    let c = solve_least_squares(&z, train.labels())?;
    Ok(RksModel {
        features,
        coefficients: c.to_vec(),
    })
}

impl RksModel {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Real-valued decision `c . z(x)`.
    pub fn decision(&self, x: [f64; 2]) -> f64 {
        self.features
            .map(x)
            .iter()
            .zip(&self.coefficients)
            .map(|(z, c)| z * c)
            .sum()
    }

    /// Sign of the decision; exact zero maps to +1.
    pub fn classify(&self, x: [f64; 2]) -> f64 {
        if self.decision(x) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn score(&self, data: &Dataset2D) -> Result<f64> {
        crate::gkm::score_with(|x| self.classify(x), data)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = KvWriter::new("rks");
        w.push("features", self.features.feature_count());
        w.push("gamma", self.features.gamma);
        w.push("frequency", self.features.frequency);
        w.push("distribution", self.features.distribution.as_str());
        w.push("placement", self.features.placement.as_str());
        w.push("seed", self.features.seed);
        w.push(
            "input_state",
            occupation_token(self.features.input_state.occupations()),
        );
        for (state, value) in self.features.observable.coefficients() {
            w.push_list(
                "lambda",
                [occupation_token(state.occupations()), value.to_string()],
            );
        }
        for i in 0..self.features.feature_count() {
            w.push_list(
                "direction",
                [self.features.w[[i, 0]], self.features.w[[i, 1]], self.features.b[i]],
            );
        }
        w.push_list("coefficients", self.coefficients.iter());
        w.write_to(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = KvFile::read(path)?;
        file.expect_kind("rks")?;
        let r: usize = file.get_one("features")?;
        let dist_text: String = file.get_one("distribution")?;
        let distribution = FeatureDistribution::parse(&dist_text)
            .ok_or_else(|| file.error(format!("unknown distribution '{dist_text}'")))?;
        let placement_text: String = file.get_one("placement")?;
        let placement = GammaPlacement::parse(&placement_text)
            .ok_or_else(|| file.error(format!("unknown placement '{placement_text}'")))?;
        let input_token: String = file.get_one("input_state")?;
        let occupations = parse_occupations(&input_token)
            .ok_or_else(|| file.error(format!("bad occupation token '{input_token}'")))?;
        let input_state = FockState::new(occupations)?;

        let mut observable = DiagonalObservable::new(input_state.photons(), 2)?;
        for row in file.all("lambda") {
            if row.len() != 2 {
                return Err(file.error("lambda expects an occupation token and a value"));
            }
            let occupations = parse_occupations(&row[0])
                .ok_or_else(|| file.error(format!("bad occupation token '{}'", row[0])))?;
            let value: f64 = file.parse_values("lambda", &row[1..])?[0];
            observable.set(FockState::new(occupations)?, value)?;
        }

        let rows = file.all("direction");
        if rows.len() != r {
            return Err(file.error(format!("expected {r} direction rows, found {}", rows.len())));
        }
        let mut w = Array2::zeros((r, 2));
        let mut b = vec![0.0; r];
        for (i, row) in rows.into_iter().enumerate() {
            let vals: Vec<f64> = file.parse_values("direction", row)?;
            if vals.len() != 3 {
                return Err(file.error("direction expects w1 w2 b"));
            }
            w[[i, 0]] = vals[0];
            w[[i, 1]] = vals[1];
            b[i] = vals[2];
        }
        let coefficients: Vec<f64> = file.get_list("coefficients")?;
        if coefficients.len() != r {
            return Err(file.error("coefficient count does not match feature count"));
        }
        Ok(Self {
            features: RksFeatures {
                gamma: file.get_one("gamma")?,
                frequency: file.get_one("frequency")?,
                distribution,
                placement,
                seed: file.get_one("seed")?,
                input_state,
                observable,
                w,
                b,
            },
            coefficients,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synth_dataset;
    use crate::rng::SeededRng;

    fn bank(r: usize, seed: u64) -> RksFeatures {
        RksFeatures::sample(
            r,
            0.1,
            FeatureDistribution::Gaussian,
            GammaPlacement::ScaleDirections,
            seed,
        )
        .unwrap()
    }

    #[test]
    fn sampling_is_reproducible() {
        let (w1, b1) =
            sample_random_features(3, 2, FeatureDistribution::Gaussian, 5).unwrap();
        let (w2, b2) =
            sample_random_features(3, 2, FeatureDistribution::Gaussian, 5).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(b1, b2);
        let (w3, _) = sample_random_features(3, 2, FeatureDistribution::Gaussian, 6).unwrap();
        assert_ne!(w1, w3);
    }

    #[test]
    fn gaussian_draws_center_on_zero() {
        let (w, b) =
            sample_random_features(50_000, 2, FeatureDistribution::Gaussian, 11).unwrap();
        for j in 0..2 {
            let mean: f64 = (0..50_000).map(|i| w[[i, j]]).sum::<f64>() / 50_000.0;
            assert!(mean.abs() < 0.02, "coordinate {j} mean {mean}");
        }
        assert!(b.iter().all(|&x| (0.0..=std::f64::consts::TAU).contains(&x)));
    }

    #[test]
    fn chi_squared_draws_are_non_negative() {
        let (w, _) = sample_random_features(
            1000,
            2,
            FeatureDistribution::ChiSquared { df: 2 },
            3,
        )
        .unwrap();
        assert!(w.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn cosine_observable_is_the_antisymmetric_pair() {
        let obs = fit_cosine_observable(1).unwrap();
        let s = std::f64::consts::SQRT_2;
        assert!((obs.coefficient(&FockState::new(vec![1, 0]).unwrap()) + s).abs() < 1e-10);
        assert!((obs.coefficient(&FockState::new(vec![0, 1]).unwrap()) - s).abs() < 1e-10);
        // Expectations at reference phases.
        let at = |phase: f64| {
            let dist =
                output_distribution(&mzi_unitary(phase), &FockState::new(vec![1, 0]).unwrap())
                    .unwrap();
            obs.expectation(&dist)
        };
        assert!((at(0.0) - s).abs() < 1e-10);
        assert!(at(std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn basin_hopping_observable_matches_analytic() {
        let obs = fit_cosine_observable_bh(&BasinHoppingSettings::default(), 7).unwrap();
        let s = std::f64::consts::SQRT_2;
        assert!((obs.coefficient(&FockState::new(vec![1, 0]).unwrap()) + s).abs() < 1e-6);
        assert!((obs.coefficient(&FockState::new(vec![0, 1]).unwrap()) - s).abs() < 1e-6);
    }

    #[test]
    fn circuit_features_equal_closed_form() {
        let features = bank(16, 9);
        let mut rng = SeededRng::new(1);
        for _ in 0..20 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let circuit = features.map(x);
            let formula = features.map_closed_form(x);
            for (a, b) in circuit.iter().zip(&formula) {
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn feature_norm_is_bounded_by_two() {
        let features = bank(32, 4);
        let mut rng = SeededRng::new(2);
        for _ in 0..50 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let norm_sq: f64 = features.map(x).iter().map(|z| z * z).sum();
            assert!(norm_sq <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn gamma_to_zero_flattens_features_when_scaling_all() {
        // Scaling the offset too sends every phase to zero, so each feature
        // approaches sqrt(2/R).
        let features = RksFeatures::sample(
            8,
            1e-8,
            FeatureDistribution::Gaussian,
            GammaPlacement::ScaleAll,
            3,
        )
        .unwrap();
        let expected = std::f64::consts::SQRT_2 / (8.0f64).sqrt();
        for z in features.map([0.4, -0.9]) {
            assert!((z - expected).abs() < 1e-8, "{z} vs {expected}");
        }
    }

    #[test]
    fn feature_products_approximate_the_gaussian_kernel() {
        // Monte-Carlo convergence of z(x) . z(x') to exp(-gamma^2 d / 2).
        let features = bank(1000, 12);
        let mut rng = SeededRng::new(3);
        let mut good = 0;
        for _ in 0..100 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let y = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let zx = features.map_closed_form(x);
            let zy = features.map_closed_form(y);
            let product: f64 = zx.iter().zip(&zy).map(|(a, b)| a * b).sum();
            let d = (x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2);
            let target = (-0.1f64 * 0.1 * d / 2.0).exp();
            if (product - target).abs() < 0.1 {
                good += 1;
            }
        }
        assert!(good >= 95, "only {good}/100 pairs within 0.1");
    }

    #[test]
    fn ten_photon_features_equal_one_photon_features() {
        // The observable fit to the same cosine response makes photon number
        // irrelevant on this path.
        let one = bank(12, 21);
        let ten = RksFeatures::sample_with_photons(
            12,
            0.1,
            FeatureDistribution::Gaussian,
            GammaPlacement::ScaleDirections,
            21,
            10,
        )
        .unwrap();
        let mut rng = SeededRng::new(4);
        for _ in 0..10 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            for (a, b) in one.map(x).iter().zip(ten.map(x)) {
                assert!((a - b).abs() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn kernel_error_halves_when_features_quadruple() {
        let mut rng = SeededRng::new(17);
        let pairs: Vec<([f64; 2], [f64; 2])> = (0..100)
            .map(|_| {
                (
                    [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)],
                    [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)],
                )
            })
            .collect();
        let rms = |r: usize| {
            // Averaged over a fixed list of seeds to tame bank-to-bank noise.
            let seeds = [101u64, 102, 103, 104, 105];
            let mut acc = 0.0;
            for &seed in &seeds {
                let features = bank(r, seed);
                let mut sq = 0.0;
                for &(x, y) in &pairs {
                    let zx = features.map_closed_form(x);
                    let zy = features.map_closed_form(y);
                    let product: f64 = zx.iter().zip(&zy).map(|(a, b)| a * b).sum();
                    let d = (x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2);
                    sq += (product - (-0.1f64 * 0.1 * d / 2.0).exp()).powi(2);
                }
                acc += (sq / pairs.len() as f64).sqrt();
            }
            acc / seeds.len() as f64
        };
        let (e25, e100, e400) = (rms(25), rms(100), rms(400));
        let r1 = e100 / e25;
        let r2 = e400 / e100;
        assert!((0.3..=0.7).contains(&r1), "25->100 ratio {r1}");
        assert!((0.3..=0.7).contains(&r2), "100->400 ratio {r2}");
    }

    #[test]
    fn training_recovers_single_point_label() {
        let mut train = Dataset2D::new();
        train.push([0.3, -0.4], -1.0).unwrap();
        let model = train_rks(&train, bank(3, 5)).unwrap();
        assert_eq!(model.classify([0.3, -0.4]), -1.0);
    }

    #[test]
    fn zero_coefficients_default_to_positive() {
        let features = bank(3, 5);
        let model = RksModel {
            features,
            coefficients: vec![0.0; 3],
        };
        assert_eq!(model.classify([0.5, 0.5]), 1.0);
        assert_eq!(model.classify([-0.5, -0.5]), 1.0);
    }

    #[test]
    fn separable_blobs_reach_high_accuracy() {
        let data = synth_dataset(200, 0.15, 31).unwrap();
        let model = train_rks(&data, bank(100, 7)).unwrap();
        let accuracy = model.score(&data).unwrap();
        assert!(accuracy >= 0.95, "accuracy {accuracy}");
    }

    #[test]
    fn more_features_do_not_hurt() {
        let data = synth_dataset(400, 0.4, 13).unwrap();
        let small = train_rks(&data, bank(3, 7)).unwrap();
        let large = train_rks(&data, bank(100, 7)).unwrap();
        let acc_small = small.score(&data).unwrap();
        let acc_large = large.score(&data).unwrap();
        assert!(
            acc_large >= acc_small - 0.02,
            "R=100 {acc_large} vs R=3 {acc_small}"
        );
    }

    #[test]
    fn sampling_distributions_score_alike() {
        let data = synth_dataset(400, 0.4, 13).unwrap();
        let gauss = train_rks(&data, bank(100, 7)).unwrap();
        let chi = train_rks(
            &data,
            RksFeatures::sample(
                100,
                0.1,
                FeatureDistribution::ChiSquared { df: 2 },
                GammaPlacement::ScaleDirections,
                7,
            )
            .unwrap(),
        )
        .unwrap();
        let a = gauss.score(&data).unwrap();
        let b = chi.score(&data).unwrap();
        assert!((a - b).abs() <= 0.03, "gaussian {a} vs chi2 {b}");
    }

    #[test]
    fn model_round_trips_through_disk() {
        let data = synth_dataset(60, 0.3, 5).unwrap();
        let model = train_rks(&data, bank(10, 2)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.txt");
        model.save(&path).unwrap();
        let loaded = RksModel::load(&path).unwrap();
        assert_eq!(model, loaded);
        let mut rng = SeededRng::new(1);
        for _ in 0..25 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            assert_eq!(model.decision(x).to_bits(), loaded.decision(x).to_bits());
        }
    }

    #[test]
    fn unknown_tags_are_rejected() {
        assert_eq!(FeatureDistribution::parse("gaussian"), Some(FeatureDistribution::Gaussian));
        assert_eq!(
            FeatureDistribution::parse("chi2"),
            Some(FeatureDistribution::ChiSquared { df: 2 })
        );
        assert_eq!(
            FeatureDistribution::parse("chi2:4"),
            Some(FeatureDistribution::ChiSquared { df: 4 })
        );
        assert_eq!(FeatureDistribution::parse("cauchy"), None);
    }
}
