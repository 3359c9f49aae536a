//! Variational classifier on a three-mode circuit: trainable mesh, data
//! encoding by phase shifters, trainable mesh, then a trainable diagonal
//! observable. Circuit and observable parameters are optimized jointly by
//! dual annealing over independently seeded restarts.

use std::path::Path;

use ndarray::Array2;
use num_complex::Complex64;

use crate::circuit::{CircuitSpec, ModeUnitary, PhaseBindings};
use crate::data::Dataset2D;
use crate::error::{Error, Result};
use crate::fock::{self, FockState};
use crate::observable::DiagonalObservable;
use crate::optim::{dual_annealing, DualAnnealingSettings, Objective};
use crate::permanent::permanent;
use crate::persist::{occupation_token, parse_occupations, KvFile, KvWriter};
use crate::simulate::output_distribution;

/// Per-feature affine map applied before encoding; identity by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTransform {
    pub scale: [f64; 2],
    pub offset: [f64; 2],
}

impl Default for AffineTransform {
    fn default() -> Self {
        Self {
            scale: [1.0, 1.0],
            offset: [0.0, 0.0],
        }
    }
}

impl AffineTransform {
    pub fn is_identity(&self) -> bool {
        self.scale == [1.0, 1.0] && self.offset == [0.0, 0.0]
    }

    fn apply(&self, x: [f64; 2]) -> [f64; 2] {
        [
            self.scale[0] * x[0] + self.offset[0],
            self.scale[1] * x[1] + self.offset[1],
        ]
    }
}

/// Number of phases in one trainable mesh.
pub const MESH_PARAMS: usize = 6;

/// Universal triangular mesh on three modes: interferometers on mode pairs
/// (0,1), (1,2), (0,1), each one `BS, PS(internal), BS, PS(external)` with
/// the phase shifters on the lower mode of the pair.
pub fn mesh_unitary(theta: &[f64; MESH_PARAMS]) -> ModeUnitary {
    let mut circuit = CircuitSpec::new(3).expect("three modes");
    for (pair, k) in [((0usize, 1usize), 0usize), ((1, 2), 2), ((0, 1), 4)] {
        circuit = circuit
            .beam_splitter(pair.0, pair.1)
            .and_then(|c| c.phase_shifter(pair.0, theta[k]))
            .and_then(|c| c.beam_splitter(pair.0, pair.1))
            .and_then(|c| c.phase_shifter(pair.0, theta[k + 1]))
            .expect("static mesh layout");
    }
    circuit
        .compile(&PhaseBindings::new())
        .expect("all phases fixed")
}

/// Data-encoding layer: `diag(e^{i(a1 x1 + t1)}, e^{i(a2 x2 + t2)}, 1)` with
/// feature j driving the phase shifter on mode j. Inputs must lie in
/// [-1, 1]^2 before the transform.
pub fn encoding_unitary(x: [f64; 2], transform: &AffineTransform) -> Result<ModeUnitary> {
    for &v in &x {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::FeatureOutsideUnitBox(v));
        }
    }
    let phases = transform.apply(x);
    let mut entries = Array2::zeros((3, 3));
    entries[[0, 0]] = Complex64::from_polar(1.0, phases[0]);
    entries[[1, 1]] = Complex64::from_polar(1.0, phases[1]);
    entries[[2, 2]] = Complex64::new(1.0, 0.0);
    ModeUnitary::new(entries)
}

/// Measurement outcomes of the three-mode circuit for `photons` photons, in
/// basis order; the observable coefficient vector indexes into this.
pub fn outcome_basis(photons: u32) -> Result<Vec<FockState>> {
    fock::enumerate(3, photons)
}

/// Circuit output for one point: the observable expectation of the output
/// distribution of `W2 S(x) W1` applied to the input state.
pub fn vqc_output(
    w1: &ModeUnitary,
    w2: &ModeUnitary,
    lambda: &DiagonalObservable,
    input: &FockState,
    transform: &AffineTransform,
    x: [f64; 2],
) -> Result<f64> {
    let s = encoding_unitary(x, transform)?;
    let u = w2.compose(&s)?.compose(w1)?;
    let dist = output_distribution(&u, input)?;
    Ok(lambda.expectation(&dist))
}

/// Regularized quadratic loss: `1/(2N) sum (y - f)^2 + alpha lambda . lambda`.
pub fn vqc_loss(
    theta1: &[f64; MESH_PARAMS],
    theta2: &[f64; MESH_PARAMS],
    lambda: &DiagonalObservable,
    input: &FockState,
    transform: &AffineTransform,
    data: &Dataset2D,
    alpha: f64,
) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if alpha < 0.0 {
        return Err(Error::NegativeAlpha(alpha));
    }
    let w1 = mesh_unitary(theta1);
    let w2 = mesh_unitary(theta2);
    let mut acc = 0.0;
    for (x, y) in data.iter() {
        let f = vqc_output(&w1, &w2, lambda, input, transform, x)?;
        acc += (y - f).powi(2);
    }
    let penalty: f64 = lambda.coefficients().map(|(_, c)| c * c).sum::<f64>();
    Ok(acc / (2.0 * data.len() as f64) + alpha * lambda.scale().powi(2) * penalty)
}

/// Training controls.
#[derive(Debug, Clone)]
pub struct VqcSettings {
    /// Observable penalty weight.
    pub alpha: f64,
    /// Independent annealing restarts.
    pub restarts: usize,
    pub annealing: DualAnnealingSettings,
    pub transform: AffineTransform,
}

impl Default for VqcSettings {
    fn default() -> Self {
        Self {
            alpha: 1e-4,
            restarts: 8,
            annealing: DualAnnealingSettings::default(),
            transform: AffineTransform::default(),
        }
    }
}

/// A trained variational model with its full restart history.
#[derive(Debug, Clone, PartialEq)]
pub struct VqcModel {
    pub input_state: FockState,
    pub theta1: [f64; MESH_PARAMS],
    pub theta2: [f64; MESH_PARAMS],
    pub lambda: DiagonalObservable,
    pub alpha: f64,
    pub transform: AffineTransform,
    pub restart_losses: Vec<f64>,
    pub restart_seeds: Vec<u64>,
    pub retained_restart: usize,
}

/// Trains by dual annealing over the mesh phases (each in [0, 2 pi]) and the
/// observable coefficients (each in [-10, 10]). One restart per seed; the
/// restart with the lowest loss is retained, with validation score breaking
/// ties toward the better classifier when a validation set is given.
pub fn train_vqc(
    train: &Dataset2D,
    input_state: FockState,
    settings: &VqcSettings,
    seeds: &[u64],
    validation: Option<&Dataset2D>,
) -> Result<VqcModel> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if input_state.modes() != 3 {
        return Err(Error::ModeMismatch {
            left: input_state.modes(),
            right: 3,
        });
    }
    if settings.restarts == 0 {
        return Err(Error::ZeroIterations("restarts"));
    }
    if seeds.len() != settings.restarts {
        return Err(Error::DimensionMismatch {
            context: "restart seeds",
            expected: settings.restarts,
            actual: seeds.len(),
        });
    }
    let basis = outcome_basis(input_state.photons())?;
    let dim = 2 * MESH_PARAMS + basis.len();
    let mut bounds = vec![(0.0, std::f64::consts::TAU); 2 * MESH_PARAMS];
    bounds.extend(vec![(-10.0, 10.0); basis.len()]);

    let objective_fn = |params: &[f64]| {
        packed_loss(params, &basis, &input_state, &settings.transform, train, settings.alpha)
    };
    let objective = Objective::new(dim, objective_fn)?.with_bounds(bounds)?;

    let mut best: Option<(Vec<f64>, f64, f64)> = None; // params, loss, val score
    let mut restart_losses = Vec::with_capacity(settings.restarts);
    let mut retained = 0usize;
    for (restart, &seed) in seeds.iter().enumerate() {
        let result = dual_annealing(&objective, &settings.annealing, seed)?;
        restart_losses.push(result.loss);
        let score = match validation {
            Some(val) => {
                let candidate = model_from_params(
                    &result.parameters,
                    &basis,
                    &input_state,
                    settings,
                    &[],
                    &[],
                    0,
                );
                candidate.score(val)?
            }
            None => 0.0,
        };
        let better = match &best {
            None => true,
            Some((_, best_loss, best_score)) => {
                result.loss < *best_loss || (result.loss == *best_loss && score > *best_score)
            }
        };
        if better {
            best = Some((result.parameters, result.loss, score));
            retained = restart;
        }
    }

    let (params, _, _) = best.expect("at least one restart");
    Ok(model_from_params(
        &params,
        &basis,
        &input_state,
        settings,
        &restart_losses,
        seeds,
        retained,
    ))
}

fn model_from_params(
    params: &[f64],
    basis: &[FockState],
    input_state: &FockState,
    settings: &VqcSettings,
    restart_losses: &[f64],
    seeds: &[u64],
    retained: usize,
) -> VqcModel {
    let mut theta1 = [0.0; MESH_PARAMS];
    let mut theta2 = [0.0; MESH_PARAMS];
    theta1.copy_from_slice(&params[..MESH_PARAMS]);
    theta2.copy_from_slice(&params[MESH_PARAMS..2 * MESH_PARAMS]);
    let mut lambda = DiagonalObservable::new(input_state.photons(), 3).expect("three modes");
    for (state, &value) in basis.iter().zip(&params[2 * MESH_PARAMS..]) {
        lambda.set(state.clone(), value).expect("sector state");
    }
    VqcModel {
        input_state: input_state.clone(),
        theta1,
        theta2,
        lambda,
        alpha: settings.alpha,
        transform: settings.transform,
        restart_losses: restart_losses.to_vec(),
        restart_seeds: seeds.to_vec(),
        retained_restart: retained,
    }
}

/// Loss over the packed parameter vector `[theta1, theta2, lambda]`.
///
/// The hot path of training: meshes are compiled once per evaluation, the
/// per-point unitary `W2 diag(e^{i phi}) W1` is formed without intermediate
/// allocations, and the permanent submatrix is built into a reused scratch
/// buffer. Tests pin this against the allocation-friendly public route.
fn packed_loss(
    params: &[f64],
    basis: &[FockState],
    input: &FockState,
    transform: &AffineTransform,
    data: &Dataset2D,
    alpha: f64,
) -> f64 {
    let mut theta1 = [0.0; MESH_PARAMS];
    let mut theta2 = [0.0; MESH_PARAMS];
    theta1.copy_from_slice(&params[..MESH_PARAMS]);
    theta2.copy_from_slice(&params[MESH_PARAMS..2 * MESH_PARAMS]);
    let lambda = &params[2 * MESH_PARAMS..];
    let w1 = mesh_unitary(&theta1);
    let w2 = mesh_unitary(&theta2);
    let w1 = w1.entries();
    let w2 = w2.entries();

    let photons = input.photons() as usize;
    let single_photon_mode = if photons == 1 {
        input.occupations().iter().position(|&n| n == 1)
    } else {
        None
    };
    let norm_in = input.occupation_factorial() as f64;
    let mut scratch = Array2::<Complex64>::zeros((photons, photons));

    let mut acc = 0.0;
    for (x, y) in data.iter() {
        let phases = transform.apply(x);
        let e = [
            Complex64::from_polar(1.0, phases[0]),
            Complex64::from_polar(1.0, phases[1]),
            Complex64::new(1.0, 0.0),
        ];
        // u = w2 diag(e) w1, written out directly.
        let mut u = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, row) in u.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| w2[[i, k]] * e[k] * w1[[k, j]]).sum();
            }
        }

        let mut f = 0.0;
        if let Some(mode) = single_photon_mode {
            for (state, &coefficient) in basis.iter().zip(lambda) {
                if coefficient != 0.0 {
                    let out = state.occupations().iter().position(|&n| n == 1).expect("one photon");
                    f += coefficient * u[mode][out].norm_sqr();
                }
            }
        } else {
            for (state, &coefficient) in basis.iter().zip(lambda) {
                if coefficient == 0.0 {
                    continue;
                }
                let mut row = 0;
                for (i, &s_i) in input.occupations().iter().enumerate() {
                    for _ in 0..s_i {
                        let mut col = 0;
                        for (j, &t_j) in state.occupations().iter().enumerate() {
                            for _ in 0..t_j {
                                scratch[[row, col]] = u[i][j];
                                col += 1;
                            }
                        }
                        row += 1;
                    }
                }
                let amplitude = permanent(&scratch).expect("square scratch");
                let p = amplitude.norm_sqr() / (norm_in * state.occupation_factorial() as f64);
                f += coefficient * p;
            }
        }
        acc += (y - f).powi(2);
    }
    let penalty: f64 = lambda.iter().map(|c| c * c).sum();
    acc / (2.0 * data.len() as f64) + alpha * penalty
}

impl VqcModel {
    /// Real-valued circuit output at a point.
    pub fn decision(&self, x: [f64; 2]) -> Result<f64> {
        let w1 = mesh_unitary(&self.theta1);
        let w2 = mesh_unitary(&self.theta2);
        vqc_output(&w1, &w2, &self.lambda, &self.input_state, &self.transform, x)
    }

    /// Sign of the output; exact zero maps to +1.
    pub fn classify(&self, x: [f64; 2]) -> Result<f64> {
        Ok(if self.decision(x)? >= 0.0 { 1.0 } else { -1.0 })
    }

    pub fn score(&self, data: &Dataset2D) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut correct = 0;
        for (x, y) in data.iter() {
            if self.classify(x)? == y {
                correct += 1;
            }
        }
        Ok(correct as f64 / data.len() as f64)
    }

    /// Training loss of the stored parameters over a dataset.
    pub fn loss(&self, data: &Dataset2D) -> Result<f64> {
        vqc_loss(
            &self.theta1,
            &self.theta2,
            &self.lambda,
            &self.input_state,
            &self.transform,
            data,
            self.alpha,
        )
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = KvWriter::new("vqc");
        w.push("input_state", occupation_token(self.input_state.occupations()));
        w.push("alpha", self.alpha);
        w.push_list("theta1", self.theta1.iter());
        w.push_list("theta2", self.theta2.iter());
        w.push_list(
            "transform",
            [
                self.transform.scale[0],
                self.transform.scale[1],
                self.transform.offset[0],
                self.transform.offset[1],
            ],
        );
        for (state, value) in self.lambda.coefficients() {
            w.push_list(
                "lambda",
                [occupation_token(state.occupations()), value.to_string()],
            );
        }
        w.push_list("restart_losses", self.restart_losses.iter());
        w.push_list("restart_seeds", self.restart_seeds.iter());
        w.push("retained_restart", self.retained_restart);
        w.write_to(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = KvFile::read(path)?;
        file.expect_kind("vqc")?;
        let token: String = file.get_one("input_state")?;
        let occupations = parse_occupations(&token)
            .ok_or_else(|| file.error(format!("bad occupation token '{token}'")))?;
        let input_state = FockState::new(occupations)?;
        let theta1_v: Vec<f64> = file.get_list("theta1")?;
        let theta2_v: Vec<f64> = file.get_list("theta2")?;
        if theta1_v.len() != MESH_PARAMS || theta2_v.len() != MESH_PARAMS {
            return Err(file.error("each mesh expects six phases"));
        }
        let transform_v: Vec<f64> = file.get_list("transform")?;
        if transform_v.len() != 4 {
            return Err(file.error("transform expects a1 a2 t1 t2"));
        }
        let mut lambda = DiagonalObservable::new(input_state.photons(), 3)?;
        for row in file.all("lambda") {
            if row.len() != 2 {
                return Err(file.error("lambda expects an occupation token and a value"));
            }
            let occupations = parse_occupations(&row[0])
                .ok_or_else(|| file.error(format!("bad occupation token '{}'", row[0])))?;
            let value: f64 = file.parse_values("lambda", &row[1..])?[0];
            lambda.set(FockState::new(occupations)?, value)?;
        }
        let mut theta1 = [0.0; MESH_PARAMS];
        let mut theta2 = [0.0; MESH_PARAMS];
        theta1.copy_from_slice(&theta1_v);
        theta2.copy_from_slice(&theta2_v);
        Ok(Self {
            input_state,
            theta1,
            theta2,
            lambda,
            alpha: file.get_one("alpha")?,
            transform: AffineTransform {
                scale: [transform_v[0], transform_v[1]],
                offset: [transform_v[2], transform_v[3]],
            },
            restart_losses: file.get_list("restart_losses")?,
            restart_seeds: file.get_list("restart_seeds")?,
            retained_restart: file.get_one("retained_restart")?,
        })
    }
}

/// Counts strict sign changes of a model's decision along the diagonal scan
/// line x1 = x2 = t for t on a uniform grid over [-1, 1].
pub fn sign_changes_on_scan(model: &VqcModel, samples: usize) -> Result<usize> {
    let mut changes = 0;
    let mut previous: Option<f64> = None;
    for k in 0..samples {
        let t = -1.0 + 2.0 * k as f64 / (samples - 1) as f64;
        let sign = model.classify([t, t])?;
        if let Some(prev) = previous {
            if sign != prev {
                changes += 1;
            }
        }
        previous = Some(sign);
    }
    Ok(changes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synth_dataset;
    use crate::rng::SeededRng;

    fn state(occ: &[u32]) -> FockState {
        FockState::new(occ.to_vec()).unwrap()
    }

    fn quick_settings(restarts: usize, max_iter: usize) -> VqcSettings {
        VqcSettings {
            restarts,
            annealing: DualAnnealingSettings {
                max_iter,
                refine_evals: Some(1500),
                ..DualAnnealingSettings::default()
            },
            ..VqcSettings::default()
        }
    }

    #[test]
    fn identity_equivalent_mesh_is_diagonal() {
        // Each interferometer at (pi, 0) collapses to diag(-1, 1); composing
        // the three gives diag(1, -1, 1).
        let pi = std::f64::consts::PI;
        let u = mesh_unitary(&[pi, 0.0, pi, 0.0, pi, 0.0]);
        for i in 0..3 {
            for j in 0..3 {
                let expected = match (i, j) {
                    (0, 0) | (2, 2) => Complex64::new(1.0, 0.0),
                    (1, 1) => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, 0.0),
                };
                assert!(
                    (u.entries()[[i, j]] - expected).norm() < 1e-12,
                    "entry ({i},{j}) = {}",
                    u.entries()[[i, j]]
                );
            }
        }
    }

    #[test]
    fn random_meshes_are_unitary() {
        let mut rng = SeededRng::new(2);
        for _ in 0..20 {
            let theta: [f64; 6] =
                std::array::from_fn(|_| rng.uniform_range(0.0, std::f64::consts::TAU));
            assert!(mesh_unitary(&theta).unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn mesh_is_locally_smooth() {
        let mut rng = SeededRng::new(3);
        let theta: [f64; 6] =
            std::array::from_fn(|_| rng.uniform_range(0.0, std::f64::consts::TAU));
        let u = mesh_unitary(&theta);
        let mut shifted = theta;
        shifted[2] += 1e-6;
        let v = mesh_unitary(&shifted);
        let diff: f64 = u
            .entries()
            .iter()
            .zip(v.entries().iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-4, "diff {diff}");
    }

    #[test]
    fn encoding_matches_direct_substitution() {
        let identity = AffineTransform::default();
        let u = encoding_unitary([0.0, 0.0], &identity).unwrap();
        for i in 0..3 {
            assert!((u.entries()[[i, i]] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }

        let u = encoding_unitary([1.0, -1.0], &identity).unwrap();
        assert!((u.entries()[[0, 0]] - Complex64::from_polar(1.0, 1.0)).norm() < 1e-15);
        assert!((u.entries()[[1, 1]] - Complex64::from_polar(1.0, -1.0)).norm() < 1e-15);
        assert!((u.entries()[[2, 2]] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn out_of_box_features_rejected() {
        assert!(matches!(
            encoding_unitary([std::f64::consts::PI, 0.0], &AffineTransform::default()),
            Err(Error::FeatureOutsideUnitBox(_))
        ));
    }

    #[test]
    fn uniform_lambda_gives_normalization() {
        let basis = outcome_basis(2).unwrap();
        assert_eq!(basis.len(), 6);
        let mut ones = DiagonalObservable::new(2, 3).unwrap();
        let mut zeros = DiagonalObservable::new(2, 3).unwrap();
        for s in &basis {
            ones.set(s.clone(), 1.0).unwrap();
            zeros.set(s.clone(), 0.0).unwrap();
        }
        let w1 = mesh_unitary(&[0.3, 1.2, 2.2, 0.4, 5.1, 0.9]);
        let w2 = mesh_unitary(&[1.3, 0.2, 3.2, 2.4, 0.1, 4.9]);
        let input = state(&[1, 1, 0]);
        let identity = AffineTransform::default();
        let mut rng = SeededRng::new(5);
        for _ in 0..10 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let one = vqc_output(&w1, &w2, &ones, &input, &identity, x).unwrap();
            assert!((one - 1.0).abs() < 1e-9, "normalization {one}");
            let zero = vqc_output(&w1, &w2, &zeros, &input, &identity, x).unwrap();
            assert_eq!(zero, 0.0);
        }
    }

    #[test]
    fn one_hot_lambdas_sum_to_one() {
        let basis = outcome_basis(1).unwrap();
        let w1 = mesh_unitary(&[0.7, 0.2, 1.2, 3.4, 2.1, 0.3]);
        let w2 = mesh_unitary(&[2.7, 1.2, 0.2, 0.4, 4.1, 1.3]);
        let input = state(&[1, 0, 0]);
        let identity = AffineTransform::default();
        let x = [0.25, -0.75];
        let mut total = 0.0;
        for s in &basis {
            let mut lambda = DiagonalObservable::new(1, 3).unwrap();
            lambda.set(s.clone(), 1.0).unwrap();
            let value = vqc_output(&w1, &w2, &lambda, &input, &identity, x).unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&value), "probability {value}");
            total += value;
        }
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn output_is_linear_in_lambda() {
        let basis = outcome_basis(1).unwrap();
        let w1 = mesh_unitary(&[0.7, 0.2, 1.2, 3.4, 2.1, 0.3]);
        let w2 = mesh_unitary(&[2.7, 1.2, 0.2, 0.4, 4.1, 1.3]);
        let input = state(&[1, 0, 0]);
        let identity = AffineTransform::default();
        let x = [0.1, 0.6];
        let coeffs_a = [0.3, -1.0, 0.7];
        let coeffs_b = [-0.2, 0.5, 1.1];
        let build = |coeffs: &[f64]| {
            let mut lambda = DiagonalObservable::new(1, 3).unwrap();
            for (s, &c) in basis.iter().zip(coeffs) {
                lambda.set(s.clone(), c).unwrap();
            }
            lambda
        };
        let sum: Vec<f64> = coeffs_a.iter().zip(&coeffs_b).map(|(a, b)| a + b).collect();
        let fa = vqc_output(&w1, &w2, &build(&coeffs_a), &input, &identity, x).unwrap();
        let fb = vqc_output(&w1, &w2, &build(&coeffs_b), &input, &identity, x).unwrap();
        let fs = vqc_output(&w1, &w2, &build(&sum), &input, &identity, x).unwrap();
        assert!((fs - (fa + fb)).abs() < 1e-12);
    }

    #[test]
    fn global_phase_leaves_outputs_unchanged() {
        let basis = outcome_basis(2).unwrap();
        let w1 = mesh_unitary(&[0.7, 0.2, 1.2, 3.4, 2.1, 0.3]);
        let w2 = mesh_unitary(&[2.7, 1.2, 0.2, 0.4, 4.1, 1.3]);
        let phase = Complex64::from_polar(1.0, 0.87);
        let w2_phased = ModeUnitary::new(w2.entries().mapv(|v| v * phase)).unwrap();
        let mut lambda = DiagonalObservable::new(2, 3).unwrap();
        for (k, s) in basis.iter().enumerate() {
            lambda.set(s.clone(), k as f64 - 2.0).unwrap();
        }
        let input = state(&[2, 0, 0]);
        let identity = AffineTransform::default();
        for x in [[0.2, 0.4], [-0.9, 0.1], [0.0, 0.0]] {
            let a = vqc_output(&w1, &w2, &lambda, &input, &identity, x).unwrap();
            let b = vqc_output(&w1, &w2_phased, &lambda, &input, &identity, x).unwrap();
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn loss_formula_reference_cases() {
        let mut data = Dataset2D::new();
        data.push([0.5, 0.5], 1.0).unwrap();
        data.push([-0.5, -0.5], -1.0).unwrap();
        let zeros = DiagonalObservable::new(1, 3).unwrap();
        let theta = [0.0; MESH_PARAMS];
        // f = 0 with lambda = 0 and balanced labels: loss = 1/2.
        let loss = vqc_loss(
            &theta,
            &theta,
            &zeros,
            &state(&[1, 0, 0]),
            &AffineTransform::default(),
            &data,
            0.0,
        )
        .unwrap();
        assert!((loss - 0.5).abs() < 1e-12);

        // Doubling alpha with nonzero lambda strictly increases the loss.
        let mut lambda = DiagonalObservable::new(1, 3).unwrap();
        lambda.set(state(&[1, 0, 0]), 0.8).unwrap();
        lambda.set(state(&[0, 1, 0]), -0.3).unwrap();
        let input = state(&[1, 0, 0]);
        let l1 = vqc_loss(&theta, &theta, &lambda, &input, &AffineTransform::default(), &data, 1e-3).unwrap();
        let l2 = vqc_loss(&theta, &theta, &lambda, &input, &AffineTransform::default(), &data, 2e-3).unwrap();
        assert!(l2 > l1);
        // And the increment is exactly alpha * |lambda|^2.
        let penalty = 0.8f64 * 0.8 + 0.3 * 0.3;
        assert!((l2 - l1 - 1e-3 * penalty).abs() < 1e-12);
    }

    #[test]
    fn packed_loss_matches_public_loss() {
        let data = synth_dataset(40, 0.3, 9).unwrap();
        let basis = outcome_basis(1).unwrap();
        let input = state(&[1, 0, 0]);
        let identity = AffineTransform::default();
        let params: Vec<f64> = (0..15).map(|k| 0.3 + 0.4 * k as f64).collect();
        let packed = packed_loss(&params, &basis, &input, &identity, &data, 1e-4);

        let mut theta1 = [0.0; MESH_PARAMS];
        let mut theta2 = [0.0; MESH_PARAMS];
        theta1.copy_from_slice(&params[..6]);
        theta2.copy_from_slice(&params[6..12]);
        let mut lambda = DiagonalObservable::new(1, 3).unwrap();
        for (s, &c) in basis.iter().zip(&params[12..]) {
            lambda.set(s.clone(), c).unwrap();
        }
        let public = vqc_loss(&theta1, &theta2, &lambda, &input, &identity, &data, 1e-4).unwrap();
        assert!((packed - public).abs() < 1e-12);
    }

    #[test]
    fn training_beats_the_constant_predictor() {
        let data = synth_dataset(60, 0.3, 41).unwrap();
        let model = train_vqc(
            &data,
            state(&[1, 0, 0]),
            &quick_settings(2, 60),
            &[11, 12],
            None,
        )
        .unwrap();
        // Constant predictors cannot push the quadratic loss below 1/2 on
        // balanced labels.
        let retained = model.restart_losses[model.retained_restart];
        assert!(retained < 0.5, "loss {retained}");
        assert_eq!(
            retained,
            model
                .restart_losses
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min)
        );
        assert_eq!(model.restart_losses.len(), 2);
        // The stored parameters reproduce the retained loss.
        assert!((model.loss(&data).unwrap() - retained).abs() < 1e-9);
    }

    #[test]
    fn flipping_lambda_flips_predictions() {
        let data = synth_dataset(40, 0.3, 17).unwrap();
        let model = train_vqc(
            &data,
            state(&[1, 0, 0]),
            &quick_settings(1, 40),
            &[3],
            None,
        )
        .unwrap();
        let mut flipped = model.clone();
        let mut lambda = DiagonalObservable::new(1, 3).unwrap();
        for (s, c) in model.lambda.coefficients() {
            lambda.set(s.clone(), -c).unwrap();
        }
        flipped.lambda = lambda;
        let mut rng = SeededRng::new(6);
        for _ in 0..20 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            let d = model.decision(x).unwrap();
            if d != 0.0 {
                assert_eq!(model.classify(x).unwrap(), -flipped.classify(x).unwrap());
            }
        }
    }

    #[test]
    fn zero_lambda_classifies_positive_everywhere() {
        let model = VqcModel {
            input_state: state(&[1, 0, 0]),
            theta1: [0.0; 6],
            theta2: [0.0; 6],
            lambda: DiagonalObservable::new(1, 3).unwrap(),
            alpha: 1e-4,
            transform: AffineTransform::default(),
            restart_losses: vec![],
            restart_seeds: vec![],
            retained_restart: 0,
        };
        for x in [[0.0, 0.0], [0.5, -0.5], [-1.0, 1.0]] {
            assert_eq!(model.classify(x).unwrap(), 1.0);
        }
    }

    #[test]
    fn model_round_trips_through_disk() {
        let data = synth_dataset(40, 0.3, 29).unwrap();
        let model = train_vqc(
            &data,
            state(&[1, 0, 0]),
            &quick_settings(2, 40),
            &[5, 6],
            Some(&data),
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.txt");
        model.save(&path).unwrap();
        let loaded = VqcModel::load(&path).unwrap();
        assert_eq!(model, loaded);
        let mut rng = SeededRng::new(1);
        for _ in 0..10 {
            let x = [rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0)];
            assert_eq!(
                model.decision(x).unwrap().to_bits(),
                loaded.decision(x).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn scan_line_counts_sign_changes() {
        // A handcrafted observable with sign structure sin(x1) + sin(x2)
        // changes sign exactly once along the diagonal.
        let data = synth_dataset(80, 0.2, 3).unwrap();
        let model = train_vqc(
            &data,
            state(&[1, 0, 0]),
            &quick_settings(2, 80),
            &[21, 22],
            None,
        )
        .unwrap();
        let changes = sign_changes_on_scan(&model, 200).unwrap();
        assert!(changes >= 1, "no sign change along the scan line");
    }
}
