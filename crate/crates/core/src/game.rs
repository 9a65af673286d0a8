//! The quantum penny flip game.
//!
//! A coin starts heads up (`σ3` on the Bloch sphere, `|0⟩⟨0|` as a density
//! matrix). Player Q applies a unitary `U1`, player P flips (`F = σ1`) with
//! probability `p` or does nothing, and Q finishes with a unitary `U3` that
//! must not depend on `p`. Q wins when the final state is heads again.
//!
//! Q wins for every `p` exactly when `U3 U1` commutes with `σ3` and `U1`
//! rotates `σ3` onto `±σ1`. The complete family of such moves is
//! parametrized by an angle `θ` with `π/2 <= |θ| <= 3π/2`, a free angle `φ`,
//! and two signs: the rotation axis is
//! `u = a σ1 + c3 cot(θ/2) σ2 + c3 a σ3` with
//! `a = ±sqrt(1/2 - cot²(θ/2)/2)`, and `U3 = e^{ιφσ3/2} U1†`.
//!
//! Games run in either formalism ([`Backend::Ga`] rotors, [`Backend::Dm`]
//! density matrices); the two transcripts must agree stage by stage.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::bridge::multivector_to_matrix;
use crate::ga::{AxisAngle, GaError, Multivector, Rotor};
use crate::qm::{self, DensityMatrix, Matrix2, MatrixAxisAngle, QmError};

/// A strategy "always wins" when every final `σ3` component reaches 1
/// within this tolerance.
pub const WIN_TOL: f64 = 1e-9;
/// Sampled first moves whose rotated `σ3` lands within this distance of
/// `±σ1` are treated as family members and skipped by falsification.
pub const NEAR_FAMILY_TOL: f64 = 1e-6;
/// A trial is refuted once some flip probability drives `s3` below
/// `1 - REFUTE_MARGIN`.
pub const REFUTE_MARGIN: f64 = 1e-6;
/// Flip probabilities probed by falsification; `p = 1` is the extremal case.
pub const FALSIFY_P_GRID: [f64; 3] = [0.0, 0.5, 1.0];

const THETA_MIN: f64 = FRAC_PI_2;
const THETA_MAX: f64 = 1.5 * PI;

pub const STAGE_LABELS: [&str; 4] = ["start", "after-Q1", "after-P", "after-Q3"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error(
        "theta = {0} lies outside the winning band pi/2 <= |theta| <= 3*pi/2 \
         (the family axis requires |cot(theta/2)| <= 1)"
    )]
    ThetaOutsideBand(f64),
    #[error("{0} is not a valid sign; expected +1 or -1")]
    InvalidSign(i32),
    #[error("flip probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error(transparent)]
    Ga(#[from] GaError),
    #[error(transparent)]
    Qm(#[from] QmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = GameError;
    fn try_from(v: i32) -> Result<Sign, GameError> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(GameError::InvalidSign(other)),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Parameters selecting one member of Q's winning family.
///
/// `theta` is reduced mod 2π into `(-2π, 2π)` and must satisfy
/// `π/2 <= |θ| <= 3π/2` (closed band); `phi` is arbitrary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyParams {
    theta: f64,
    phi: f64,
    sign_a: Sign,
    c3: Sign,
}

impl StrategyParams {
    pub fn new(theta: f64, phi: f64, sign_a: Sign, c3: Sign) -> Result<StrategyParams, GameError> {
        if !theta.is_finite() {
            return Err(GameError::ThetaOutsideBand(theta));
        }
        let reduced = theta % TAU;
        let abs = reduced.abs();
        if !(THETA_MIN..=THETA_MAX).contains(&abs) {
            return Err(GameError::ThetaOutsideBand(theta));
        }
        Ok(StrategyParams {
            theta: reduced,
            phi,
            sign_a,
            c3,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn sign_a(&self) -> Sign {
        self.sign_a
    }

    pub fn c3(&self) -> Sign {
        self.c3
    }
}

/// Q's two moves in both formalisms. The rotor pair and the matrix pair are
/// constructed independently; the bridge ties them together in tests.
#[derive(Debug, Clone, Copy)]
pub struct QStrategy {
    u1: Rotor,
    u3: Rotor,
    u1_matrix: Matrix2,
    u3_matrix: Matrix2,
    axis: AxisAngle,
    params: StrategyParams,
}

impl QStrategy {
    pub fn u1(&self) -> &Rotor {
        &self.u1
    }

    pub fn u3(&self) -> &Rotor {
        &self.u3
    }

    pub fn u1_matrix(&self) -> &Matrix2 {
        &self.u1_matrix
    }

    pub fn u3_matrix(&self) -> &Matrix2 {
        &self.u3_matrix
    }

    /// Rotation axis and angle of the first move.
    pub fn axis(&self) -> &AxisAngle {
        &self.axis
    }

    pub fn params(&self) -> &StrategyParams {
        &self.params
    }
}

/// Constructs the family member selected by `params`:
/// `a = sign_a sqrt(1/2 - cot²(θ/2)/2)`, `b = c3 cot(θ/2)`, `c = c3 a`,
/// `U1` the rotor about `u = (a, b, c)` through `θ`, and
/// `U3 = e^{ιφσ3/2} U1†`.
pub fn solve_family(params: StrategyParams) -> QStrategy {
    let half = params.theta / 2.0;
    let cot = half.cos() / half.sin();
    // The radicand carries O(1e-16) rounding noise where |cot| = 1; snap it
    // so the band edges yield a = 0 exactly.
    let radicand = 0.5 - 0.5 * cot * cot;
    let a_mag = if radicand < 1e-15 { 0.0 } else { radicand.sqrt() };
    let a = params.sign_a.value() * a_mag;
    let b = params.c3.value() * cot;
    let c = params.c3.value() * a;

    let axis = AxisAngle::new([a, b, c], params.theta).expect("family axis is unit on the band");
    let u1 = Rotor::from_axis_angle(&axis);
    let sigma3_axis = AxisAngle::new([0.0, 0.0, 1.0], params.phi).expect("unit axis");
    let u3 = Rotor::from_axis_angle(&sigma3_axis) * u1.reverse();

    let u1_matrix = MatrixAxisAngle::new([a, b, c], params.theta, 0.0)
        .expect("family axis is unit on the band")
        .to_unitary();
    let u3_matrix = MatrixAxisAngle::new([0.0, 0.0, 1.0], params.phi, 0.0)
        .expect("unit axis")
        .to_unitary()
        * u1_matrix.conjugate_transpose();

    QStrategy {
        u1,
        u3,
        u1_matrix,
        u3_matrix,
        axis,
        params,
    }
}

/// The Hadamard strategy: `θ = π`, `φ = 0`, both signs positive, rotating
/// `σ3` to `σ1` about `(σ1 + σ3)/√2`.
pub fn meyer_strategy() -> QStrategy {
    let params =
        StrategyParams::new(PI, 0.0, Sign::Plus, Sign::Plus).expect("pi lies in the winning band");
    solve_family(params)
}

/// Angle between the strategy's rotation axis and `σ3`; `cos ψ` is the
/// axis' `σ3` component.
pub fn tilt_angle(strategy: &QStrategy) -> f64 {
    strategy.axis.axis()[2].clamp(-1.0, 1.0).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Ga,
    Dm,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Ga => write!(f, "ga"),
            Backend::Dm => write!(f, "dm"),
        }
    }
}

/// The four per-move states of one game in the back end it was played in.
#[derive(Debug, Clone)]
pub enum TranscriptStates {
    Ga([Multivector; 4]),
    Dm([DensityMatrix; 4]),
}

#[derive(Debug, Clone)]
pub struct GameTranscript {
    pub p: f64,
    pub states: TranscriptStates,
}

impl GameTranscript {
    pub fn backend(&self) -> Backend {
        match self.states {
            TranscriptStates::Ga(_) => Backend::Ga,
            TranscriptStates::Dm(_) => Backend::Dm,
        }
    }

    /// Bloch vector at each of the four stages.
    pub fn bloch_vectors(&self) -> [[f64; 3]; 4] {
        match &self.states {
            TranscriptStates::Ga(states) => {
                [0, 1, 2, 3].map(|i| states[i].vector_part())
            }
            TranscriptStates::Dm(states) => [0, 1, 2, 3].map(|i| states[i].bloch_vector()),
        }
    }

    /// Final `σ3` component.
    pub fn final_s3(&self) -> f64 {
        self.bloch_vectors()[3][2]
    }
}

/// Final score of one game. `q_win_probability` is the Born-rule chance of
/// reading heads, `(1 + s3)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameOutcome {
    pub s3: f64,
    pub q_win_probability: f64,
    pub q_always_wins: bool,
}

impl GameOutcome {
    fn from_s3(s3: f64) -> GameOutcome {
        GameOutcome {
            s3,
            q_win_probability: ((1.0 + s3) / 2.0).clamp(0.0, 1.0),
            q_always_wins: s3 >= 1.0 - WIN_TOL,
        }
    }
}

fn validated_probability(p: f64) -> Result<f64, GameError> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(GameError::InvalidProbability(p));
    }
    Ok(p)
}

/// P's move on a Bloch vector: `p σ1 ψ σ1 + (1-p) ψ`.
pub fn p_move_vector(state: &Multivector, p: f64) -> Result<Multivector, GameError> {
    let p = validated_probability(p)?;
    let flipped = Multivector::SIGMA1 * *state * Multivector::SIGMA1;
    Ok(flipped * p + *state * (1.0 - p))
}

/// P's move on a density matrix: `p σ1 ρ σ1 + (1-p) ρ`.
pub fn p_move_density(state: &DensityMatrix, p: f64) -> Result<DensityMatrix, GameError> {
    let p = validated_probability(p)?;
    let flip = Matrix2::pauli(1).expect("index in range");
    Ok(qm::mix(&[(p, state.evolve(&flip)?), (1.0 - p, *state)])?)
}

fn play_ga(u1: &Rotor, u3: &Rotor, p: f64) -> Result<[Multivector; 4], GameError> {
    let psi0 = Multivector::SIGMA3;
    let psi1 = u1.apply(&psi0)?;
    let psi2 = p_move_vector(&psi1, p)?;
    let psi3 = u3.apply(&psi2)?;
    Ok([psi0, psi1, psi2, psi3])
}

fn play_dm(u1: &Matrix2, u3: &Matrix2, p: f64) -> Result<[DensityMatrix; 4], GameError> {
    let rho0 = DensityMatrix::pure_zero();
    let rho1 = rho0.evolve(u1)?;
    let rho2 = p_move_density(&rho1, p)?;
    let rho3 = rho2.evolve(u3)?;
    Ok([rho0, rho1, rho2, rho3])
}

/// Plays one game with an arbitrary rotor pair. The density-matrix back end
/// receives the rotors' matrix images.
pub fn play_rotors(
    u1: &Rotor,
    u3: &Rotor,
    p: f64,
    backend: Backend,
) -> Result<(GameTranscript, GameOutcome), GameError> {
    let p = validated_probability(p)?;
    let states = match backend {
        Backend::Ga => TranscriptStates::Ga(play_ga(u1, u3, p)?),
        Backend::Dm => TranscriptStates::Dm(play_dm(
            &multivector_to_matrix(u1.as_multivector()),
            &multivector_to_matrix(u3.as_multivector()),
            p,
        )?),
    };
    let transcript = GameTranscript { p, states };
    let outcome = GameOutcome::from_s3(transcript.final_s3());
    Ok((transcript, outcome))
}

/// Plays one game with a family strategy in the chosen back end.
pub fn play(
    strategy: &QStrategy,
    p: f64,
    backend: Backend,
) -> Result<(GameTranscript, GameOutcome), GameError> {
    let p = validated_probability(p)?;
    let states = match backend {
        Backend::Ga => TranscriptStates::Ga(play_ga(&strategy.u1, &strategy.u3, p)?),
        Backend::Dm => {
            TranscriptStates::Dm(play_dm(&strategy.u1_matrix, &strategy.u3_matrix, p)?)
        }
    };
    let transcript = GameTranscript { p, states };
    let outcome = GameOutcome::from_s3(transcript.final_s3());
    Ok((transcript, outcome))
}

/// True iff the rotor pair wins (final `s3 = 1` within [`WIN_TOL`]) at every
/// probability in `p_grid`. Equivalent to the algebraic pair of conditions:
/// `U3 U1` commutes with `σ3` and `U1 σ3 U1† = ±σ1`.
pub fn is_winning_strategy(u1: &Rotor, u3: &Rotor, p_grid: &[f64]) -> bool {
    p_grid.iter().all(|&p| {
        let (_, outcome) =
            play_rotors(u1, u3, p, Backend::Ga).expect("p_grid entries must be probabilities");
        outcome.q_always_wins
    })
}

/// Classification of one falsification draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrialOutcome {
    /// Rotated `σ3` within [`NEAR_FAMILY_TOL`] of `±σ1`; excluded from the
    /// counterexample check.
    NearFamily { distance: f64 },
    /// Some probed `p` beat the strategy, as the characterization predicts.
    Refuted { p: f64, s3: f64 },
    /// No probed `p` beat a non-family strategy; a genuine counterexample to
    /// the characterization.
    Violation { min_s3: f64 },
}

/// Probes one first move `U1` (with `U3 = e^{ιφσ3/2} U1†`) against the flip
/// probabilities in [`FALSIFY_P_GRID`].
pub fn falsify_trial(u1: &Rotor, phi: f64) -> TrialOutcome {
    let rotated = u1
        .apply(&Multivector::SIGMA3)
        .expect("sigma3 is a vector")
        .vector_part();
    let dist_to = |target: f64| -> f64 {
        let dx = rotated[0] - target;
        (dx * dx + rotated[1] * rotated[1] + rotated[2] * rotated[2]).sqrt()
    };
    let distance = dist_to(1.0).min(dist_to(-1.0));
    if distance <= NEAR_FAMILY_TOL {
        return TrialOutcome::NearFamily { distance };
    }

    let sigma3_axis = AxisAngle::new([0.0, 0.0, 1.0], phi).expect("unit axis");
    let u3 = Rotor::from_axis_angle(&sigma3_axis) * u1.reverse();
    let mut min_s3 = f64::INFINITY;
    for p in FALSIFY_P_GRID {
        let (_, outcome) =
            play_rotors(u1, &u3, p, Backend::Ga).expect("grid probabilities are valid");
        if outcome.s3 < 1.0 - REFUTE_MARGIN {
            return TrialOutcome::Refuted { p, s3: outcome.s3 };
        }
        min_s3 = min_s3.min(outcome.s3);
    }
    TrialOutcome::Violation { min_s3 }
}

/// A non-family draw that no probed `p` refuted.
#[derive(Debug, Clone, Copy)]
pub struct FalsificationViolation {
    pub trial: usize,
    pub axis: [f64; 3],
    pub angle: f64,
    pub phi: f64,
    pub min_s3: f64,
}

/// Aggregate result of [`falsify_random`]. The characterization of the
/// winning family holds iff `violations` stays empty.
#[derive(Debug, Clone, Default)]
pub struct FalsificationReport {
    pub trials: usize,
    pub skipped_near_family: usize,
    pub refuted: usize,
    pub violations: Vec<FalsificationViolation>,
}

impl FalsificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws the trial's rotor parameters from `(seed, trial index)` only, so
/// trials may run concurrently or be replayed in isolation.
fn sample_trial(seed: u64, trial: usize) -> ([f64; 3], f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let axis = loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1e-6 {
            break [x / norm, y / norm, z / norm];
        }
    };
    let angle = rng.random_range(0.0..TAU);
    let phi = rng.random_range(0.0..TAU);
    (axis, angle, phi)
}

/// Samples `trials` random first moves (axis uniform on the sphere, angle
/// uniform on `[0, 2π)`) and checks each non-family draw is refuted by some
/// probed `p`. Expected outcome: no violations.
pub fn falsify_random(trials: usize, rng_seed: u64) -> FalsificationReport {
    let mut report = FalsificationReport {
        trials,
        ..FalsificationReport::default()
    };
    for trial in 0..trials {
        let (axis, angle, phi) = sample_trial(rng_seed, trial);
        let ax = AxisAngle::new(axis, angle).expect("sampled axis is normalized");
        let u1 = Rotor::from_axis_angle(&ax);
        match falsify_trial(&u1, phi) {
            TrialOutcome::NearFamily { .. } => report.skipped_near_family += 1,
            TrialOutcome::Refuted { .. } => report.refuted += 1,
            TrialOutcome::Violation { min_s3 } => report.violations.push(FalsificationViolation {
                trial,
                axis,
                angle,
                phi,
                min_s3,
            }),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const MEYER_AXIS: [f64; 3] = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];

    fn params(theta: f64, phi: f64) -> StrategyParams {
        StrategyParams::new(theta, phi, Sign::Plus, Sign::Plus).unwrap()
    }

    #[test]
    fn meyer_strategy_axis_and_rotation() {
        let strategy = meyer_strategy();
        let axis = strategy.axis().axis();
        for k in 0..3 {
            assert!((axis[k] - MEYER_AXIS[k]).abs() < 1e-12, "axis {axis:?}");
        }
        let rotated = strategy.u1().apply(&Multivector::SIGMA3).unwrap();
        assert!((rotated - Multivector::SIGMA1).max_abs() < 1e-12);
    }

    #[test]
    fn band_edge_axis_is_orthogonal_to_a_plane() {
        // cot(pi/4) = 1 forces a = 0, axis = sigma2
        let strategy = solve_family(params(FRAC_PI_2, 0.0));
        let axis = strategy.axis().axis();
        assert_eq!(axis[0], 0.0);
        assert_eq!(axis[2], 0.0);
        assert!((axis[1].abs() - 1.0).abs() < 1e-12);
        let rotated = strategy.u1().apply(&Multivector::SIGMA3).unwrap().vector_part();
        assert!((rotated[0].abs() - 1.0).abs() < 1e-10, "expected +-sigma1, got {rotated:?}");
    }

    #[test]
    fn interior_point_axis_components() {
        // cot(pi/3) = 1/sqrt(3) gives a = b = c = 1/sqrt(3)
        let strategy = solve_family(params(2.0 * PI / 3.0, 0.0));
        let axis = strategy.axis().axis();
        let third = 1.0 / 3.0_f64.sqrt();
        for component in axis {
            assert!((component - third).abs() < 1e-12, "axis {axis:?}");
        }
    }

    #[test]
    fn theta_band_is_enforced_at_construction() {
        for bad in [0.0, PI / 4.0, FRAC_PI_2 - 1e-3, THETA_MAX + 1e-3, 7.0 * PI / 4.0] {
            let err = StrategyParams::new(bad, 0.0, Sign::Plus, Sign::Plus).unwrap_err();
            assert!(matches!(err, GameError::ThetaOutsideBand(_)));
            assert!(err.to_string().contains("cot"), "{err}");
        }
        for ok in [FRAC_PI_2, -FRAC_PI_2, PI, -PI, THETA_MAX, -THETA_MAX, 3.0 * PI] {
            assert!(StrategyParams::new(ok, 0.0, Sign::Plus, Sign::Plus).is_ok(), "{ok}");
        }
    }

    #[test]
    fn theta_reduction_keeps_the_rotation() {
        let wrapped = StrategyParams::new(PI + TAU, 0.3, Sign::Plus, Sign::Plus).unwrap();
        assert!((wrapped.theta() - PI).abs() < 1e-12);
    }

    #[test]
    fn p_move_fixes_sigma1() {
        for p in [0.0, 0.37, 1.0] {
            let moved = p_move_vector(&Multivector::SIGMA1, p).unwrap();
            assert!((moved - Multivector::SIGMA1).max_abs() < 1e-15);
        }
    }

    #[test]
    fn p_move_flips_and_mixes_sigma3() {
        let flipped = p_move_vector(&Multivector::SIGMA3, 1.0).unwrap();
        assert!((flipped + Multivector::SIGMA3).max_abs() < 1e-15);

        let mixed = p_move_vector(&Multivector::SIGMA3, 0.5).unwrap();
        assert!(mixed.max_abs() < 1e-15);
        // density back end agrees: the midpoint is the maximally mixed state
        let rho = p_move_density(&DensityMatrix::pure_zero(), 0.5).unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
            < 1e-15);
    }

    #[test]
    fn p_move_rejects_bad_probability() {
        assert!(matches!(
            p_move_vector(&Multivector::SIGMA3, 1.5),
            Err(GameError::InvalidProbability(_))
        ));
        assert!(matches!(
            p_move_density(&DensityMatrix::pure_zero(), -0.1),
            Err(GameError::InvalidProbability(_))
        ));
    }

    #[test]
    fn meyer_wins_at_every_probability() {
        let strategy = meyer_strategy();
        for p in [0.0, 0.25, 0.5, 1.0] {
            for backend in [Backend::Ga, Backend::Dm] {
                let (transcript, outcome) = play(&strategy, p, backend).unwrap();
                assert!((outcome.s3 - 1.0).abs() < 1e-12, "p={p} {backend}");
                assert!(outcome.q_always_wins);
                assert!((outcome.q_win_probability - 1.0).abs() < 1e-12);
                let start = transcript.bloch_vectors()[0];
                assert_eq!(start, [0.0, 0.0, 1.0]);
            }
        }
    }

    #[test]
    fn classical_no_op_loses_to_a_certain_flip() {
        let (transcript, outcome) =
            play_rotors(&Rotor::IDENTITY, &Rotor::IDENTITY, 1.0, Backend::Ga).unwrap();
        assert!((outcome.s3 + 1.0).abs() < 1e-15);
        assert_eq!(outcome.q_win_probability, 0.0);
        assert!(!outcome.q_always_wins);
        let stages = transcript.bloch_vectors();
        assert_eq!(stages[1], [0.0, 0.0, 1.0]);
        assert_eq!(stages[2], [0.0, 0.0, -1.0]);
    }

    #[test]
    fn family_member_wins_in_the_density_backend() {
        let strategy = solve_family(params(2.0 * PI / 3.0, 1.0));
        let (transcript, outcome) = play(&strategy, 0.3, Backend::Dm).unwrap();
        assert!((outcome.s3 - 1.0).abs() < 1e-9);
        if let TranscriptStates::Dm(states) = &transcript.states {
            let dev = states[3].matrix().max_abs_diff(DensityMatrix::pure_zero().matrix());
            assert!(dev < 1e-9, "rho3 deviates by {dev:e}");
        } else {
            panic!("expected density transcript");
        }
        // geometric back end agrees stage by stage
        let (ga, _) = play(&strategy, 0.3, Backend::Ga).unwrap();
        let (a, b) = (ga.bloch_vectors(), transcript.bloch_vectors());
        for stage in 0..4 {
            for k in 0..3 {
                assert!((a[stage][k] - b[stage][k]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn play_rejects_invalid_probability() {
        let strategy = meyer_strategy();
        assert!(matches!(
            play(&strategy, 1.0 + 1e-9, Backend::Ga),
            Err(GameError::InvalidProbability(_))
        ));
    }

    #[test]
    fn winning_strategy_detection() {
        let grid = [0.0, 0.5, 1.0];
        let meyer = meyer_strategy();
        assert!(is_winning_strategy(meyer.u1(), meyer.u3(), &grid));
        assert!(!is_winning_strategy(&Rotor::IDENTITY, &Rotor::IDENTITY, &grid));

        // a sigma3 rotation leaves psi1 at sigma3, so a certain flip wins
        let ax = AxisAngle::new([0.0, 0.0, 1.0], PI / 3.0).unwrap();
        let u1 = Rotor::from_axis_angle(&ax);
        assert!(!is_winning_strategy(&u1, &u1.reverse(), &grid));
    }

    #[test]
    fn falsify_trial_classifications() {
        // family member at theta = pi/2: axis sigma2
        let family = Rotor::from_axis_angle(&AxisAngle::new([0.0, 1.0, 0.0], FRAC_PI_2).unwrap());
        assert!(matches!(
            falsify_trial(&family, 0.7),
            TrialOutcome::NearFamily { .. }
        ));
        assert!(is_winning_strategy(
            &family,
            &(Rotor::from_axis_angle(&AxisAngle::new([0.0, 0.0, 1.0], 0.7).unwrap())
                * family.reverse()),
            &FALSIFY_P_GRID
        ));

        // an eighth turn leaves psi1 off the sigma1 axis and some p wins
        let off_family =
            Rotor::from_axis_angle(&AxisAngle::new([0.0, 1.0, 0.0], PI / 4.0).unwrap());
        match falsify_trial(&off_family, 0.0) {
            TrialOutcome::Refuted { s3, .. } => assert!(s3 < 1.0 - REFUTE_MARGIN),
            other => panic!("expected refutation, got {other:?}"),
        }
        // direct play at the extremal p = 1 confirms the counterexample
        let u3 = off_family.reverse();
        let (_, outcome) = play_rotors(&off_family, &u3, 1.0, Backend::Ga).unwrap();
        assert!(outcome.s3 < 1.0 - REFUTE_MARGIN);
    }

    #[test]
    fn falsification_run_stays_clean() {
        let report = falsify_random(1000, 1);
        assert!(report.is_clean(), "violations: {:?}", report.violations);
        assert_eq!(report.trials, 1000);
        assert_eq!(report.refuted + report.skipped_near_family, 1000);
    }

    #[test]
    fn falsification_is_reproducible_per_trial() {
        let a = sample_trial(42, 7);
        let b = sample_trial(42, 7);
        assert_eq!(a, b);
        let c = sample_trial(42, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn tilt_angles_of_reference_strategies() {
        let meyer = meyer_strategy();
        assert!((tilt_angle(&meyer) - PI / 4.0).abs() < 1e-12);

        let edge = solve_family(params(FRAC_PI_2, 0.0));
        assert!((tilt_angle(&edge) - FRAC_PI_2).abs() < 1e-12);

        let interior = solve_family(params(2.0 * PI / 3.0, 0.0));
        let want = (1.0 / 3.0_f64.sqrt()).acos();
        assert!((tilt_angle(&interior) - want).abs() < 1e-12);
    }

    #[test]
    fn sign_of_a_trades_against_theta() {
        let theta = 2.0;
        let flipped_sign =
            solve_family(StrategyParams::new(theta, 0.0, Sign::Minus, Sign::Plus).unwrap());
        let flipped_theta =
            solve_family(StrategyParams::new(-theta, 0.0, Sign::Plus, Sign::Plus).unwrap());
        let a = flipped_sign.u1().apply(&Multivector::SIGMA3).unwrap();
        let b = flipped_theta.u1().apply(&Multivector::SIGMA3).unwrap();
        assert!((a - b).max_abs() < 1e-12);
    }

    #[test]
    fn c3_flip_is_conjugation_by_the_sigma1_half_turn() {
        let theta = 2.0;
        let plus = solve_family(StrategyParams::new(theta, 0.0, Sign::Plus, Sign::Plus).unwrap());
        let minus = solve_family(StrategyParams::new(theta, 0.0, Sign::Plus, Sign::Minus).unwrap());
        let s = Rotor::from_axis_angle(&AxisAngle::new([1.0, 0.0, 0.0], PI).unwrap());
        let conjugated = s.apply(&plus.axis().axis_vector()).unwrap();
        let dev = (conjugated - minus.axis().axis_vector()).max_abs();
        assert!(dev < 1e-12, "axis conjugation deviates by {dev:e}");
    }
}
