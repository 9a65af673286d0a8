//! Conventional quantum formalism for a single qubit: 2x2 complex matrices,
//! Pauli matrices, axis-angle unitaries `U = (I cos(θ/2) + i û sin(θ/2)) e^{iβ}`,
//! and density-matrix evolution `ρ -> U ρ U†`.

use std::ops::{Add, Index, Mul, Neg, Sub};

pub use num_complex::Complex64;
use thiserror::Error;

/// Tolerance for exact algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Unitarity tolerance for the `evolve` precondition.
pub const TOL_UNITARY: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmError {
    #[error("Pauli index {0} out of range (valid indices are 1..=3)")]
    PauliIndexOutOfRange(usize),
    #[error("axis ({0}, {1}, {2}) is not a unit vector (norm^2 deviates by {3:e})")]
    NonUnitAxis(f64, f64, f64, f64),
    #[error("matrix is not unitary: |U†U - I| = {0:e}")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix trace {0} is not 1")]
    TraceNotOne(f64),
    #[error("matrix has a negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
    #[error("probabilities must be nonnegative, got {0}")]
    NegativeProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    ProbabilitySumNotOne(f64),
    #[error("mixture must contain at least one component")]
    EmptyMixture,
    #[error("Bloch vector has norm {0} > 1")]
    BlochVectorTooLong(f64),
    #[error("matrix entry is not finite")]
    NonFiniteEntry,
}

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    e: [Complex64; 4],
}

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2 { e: [ZERO; 4] };
    pub const IDENTITY: Matrix2 = Matrix2::new(ONE, ZERO, ZERO, ONE);

    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Matrix2 {
        Matrix2 { e: [m00, m01, m10, m11] }
    }

    /// The standard Pauli matrix `σi` for `i` in `1..=3`.
    pub fn pauli(i: usize) -> Result<Matrix2, QmError> {
        match i {
            1 => Ok(Matrix2::new(ZERO, ONE, ONE, ZERO)),
            2 => Ok(Matrix2::new(
                ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                ZERO,
            )),
            3 => Ok(Matrix2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))),
            _ => Err(QmError::PauliIndexOutOfRange(i)),
        }
    }

    /// The Hadamard matrix `(σ1 + σ3)/√2`.
    pub fn hadamard() -> Matrix2 {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Matrix2::new(h, h, h, -h)
    }

    /// `û = a σ1 + b σ2 + c σ3` for a real 3-vector.
    pub fn from_pauli_vector(v: [f64; 3]) -> Matrix2 {
        Matrix2::new(
            Complex64::new(v[2], 0.0),
            Complex64::new(v[0], -v[1]),
            Complex64::new(v[0], v[1]),
            Complex64::new(-v[2], 0.0),
        )
    }

    pub fn conjugate_transpose(&self) -> Matrix2 {
        Matrix2::new(
            self.e[0].conj(),
            self.e[2].conj(),
            self.e[1].conj(),
            self.e[3].conj(),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0] + self.e[3]
    }

    pub fn determinant(&self) -> Complex64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    pub fn scale(&self, s: Complex64) -> Matrix2 {
        Matrix2::new(self.e[0] * s, self.e[1] * s, self.e[2] * s, self.e[3] * s)
    }

    /// Multiplies by the global phase `e^{iβ}`.
    pub fn phased(&self, beta: f64) -> Matrix2 {
        self.scale(Complex64::from_polar(1.0, beta))
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        (*self - *other).max_abs()
    }

    /// `|U†U - I|`, zero for unitary matrices.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.conjugate_transpose() * *self - Matrix2::IDENTITY).max_abs()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `|M - M†|`, zero for Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.conjugate_transpose())
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix2 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.e[2 * r + c]
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.e[0] + rhs.e[0],
            self.e[1] + rhs.e[1],
            self.e[2] + rhs.e[2],
            self.e[3] + rhs.e[3],
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.e[0] - rhs.e[0],
            self.e[1] - rhs.e[1],
            self.e[2] - rhs.e[2],
            self.e[3] - rhs.e[3],
        )
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.e;
        let b = &rhs.e;
        Matrix2::new(
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )
    }
}

/// Unit rotation axis, angle, and global phase for a 2x2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixAxisAngle {
    axis: [f64; 3],
    angle: f64,
    phase: f64,
}

impl MatrixAxisAngle {
    pub fn new(axis: [f64; 3], angle: f64, phase: f64) -> Result<MatrixAxisAngle, QmError> {
        let norm2 = axis.iter().map(|a| a * a).sum::<f64>();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > TOL_EXACT {
            return Err(QmError::NonUnitAxis(
                axis[0],
                axis[1],
                axis[2],
                (norm2 - 1.0).abs(),
            ));
        }
        Ok(MatrixAxisAngle { axis, angle, phase })
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// `U = (I cos(θ/2) + i û sin(θ/2)) e^{iβ}`.
    pub fn to_unitary(&self) -> Matrix2 {
        let half = self.angle / 2.0;
        let (s, c) = half.sin_cos();
        let u_hat = Matrix2::from_pauli_vector(self.axis);
        let body = Matrix2::IDENTITY.scale(Complex64::new(c, 0.0))
            + u_hat.scale(Complex64::new(0.0, s));
        body.phased(self.phase)
    }
}

/// A valid density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix2);

impl DensityMatrix {
    pub fn new(m: Matrix2) -> Result<DensityMatrix, QmError> {
        if !m.is_finite() {
            return Err(QmError::NonFiniteEntry);
        }
        let herm = m.hermiticity_deviation();
        if herm > TOL_EXACT {
            return Err(QmError::NotHermitian(herm));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TOL_EXACT {
            return Err(QmError::TraceNotOne(tr));
        }
        let min_eig = min_eigenvalue_hermitian(&m);
        if min_eig < -TOL_EXACT {
            return Err(QmError::NegativeEigenvalue(min_eig));
        }
        Ok(DensityMatrix(m))
    }

    /// `|0⟩⟨0|` where `|0⟩ = (1, 0)ᵀ`.
    pub fn pure_zero() -> DensityMatrix {
        DensityMatrix(Matrix2::new(ONE, ZERO, ZERO, ZERO))
    }

    /// `|1⟩⟨1|`.
    pub fn pure_one() -> DensityMatrix {
        DensityMatrix(Matrix2::new(ZERO, ZERO, ZERO, ONE))
    }

    pub fn maximally_mixed() -> DensityMatrix {
        DensityMatrix(Matrix2::IDENTITY.scale(Complex64::new(0.5, 0.0)))
    }

    /// `ρ = (I + s·σ)/2` for a Bloch vector with `|s| <= 1`.
    pub fn from_bloch(s: [f64; 3]) -> Result<DensityMatrix, QmError> {
        let norm = s.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm <= 1.0 + TOL_EXACT) {
            return Err(QmError::BlochVectorTooLong(norm));
        }
        let m = (Matrix2::IDENTITY + Matrix2::from_pauli_vector(s)).scale(Complex64::new(0.5, 0.0));
        DensityMatrix::new(m)
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    /// Unitary evolution `ρ -> U ρ U†`. Rejects `u` whose unitarity deviation
    /// exceeds [`TOL_UNITARY`].
    pub fn evolve(&self, u: &Matrix2) -> Result<DensityMatrix, QmError> {
        let dev = u.unitarity_deviation();
        if dev > TOL_UNITARY {
            return Err(QmError::NotUnitary(dev));
        }
        DensityMatrix::new(*u * self.0 * u.conjugate_transpose())
    }

    /// Bloch decomposition `s_i = tr(ρ σi)`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let mut s = [0.0; 3];
        for (k, si) in s.iter_mut().enumerate() {
            let pauli = Matrix2::pauli(k + 1).expect("index in range");
            *si = (self.0 * pauli).trace().re;
        }
        s
    }

    /// `tr(ρ²)`: 1 for pure states, 1/2 for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }
}

/// Smallest eigenvalue of a Hermitian 2x2 matrix via the characteristic
/// polynomial; trace and determinant are real for Hermitian input.
fn min_eigenvalue_hermitian(m: &Matrix2) -> f64 {
    let t = m.trace().re;
    let d = m.determinant().re;
    let disc = (t * t - 4.0 * d).max(0.0);
    (t - disc.sqrt()) / 2.0
}

/// Convex combination of density matrices. Probabilities must be nonnegative
/// and sum to 1 within [`TOL_EXACT`].
pub fn mix(parts: &[(f64, DensityMatrix)]) -> Result<DensityMatrix, QmError> {
    if parts.is_empty() {
        return Err(QmError::EmptyMixture);
    }
    let mut sum = 0.0;
    for &(p, _) in parts {
        if !p.is_finite() || p < 0.0 {
            return Err(QmError::NegativeProbability(p));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > TOL_EXACT {
        return Err(QmError::ProbabilitySumNotOne(sum));
    }
    let mut acc = Matrix2::ZERO;
    for &(p, rho) in parts {
        acc = acc + rho.matrix().scale(Complex64::new(p, 0.0));
    }
    DensityMatrix::new(acc)
}

/// True iff `U σ3 - σ3 U` vanishes within [`TOL_UNITARY`].
pub fn commutes_with_sigma3(u: &Matrix2) -> bool {
    let s3 = Matrix2::pauli(3).expect("index in range");
    (*u * s3 - s3 * *u).max_abs() < TOL_UNITARY
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, PI};

    /// Test-only matrix exponential by plain Taylor series, the independent
    /// oracle for the closed-form axis-angle constructor.
    fn matrix_exp_series(m: &Matrix2) -> Matrix2 {
        let mut sum = Matrix2::IDENTITY;
        let mut term = Matrix2::IDENTITY;
        for n in 1..64 {
            term = term * m.scale(Complex64::new(1.0 / n as f64, 0.0));
            if term.max_abs() < 1e-18 {
                break;
            }
            sum = sum + term;
        }
        sum
    }

    fn exp_of_axis_angle(axis: [f64; 3], angle: f64, phase: f64) -> Matrix2 {
        let a = Matrix2::from_pauli_vector(axis).scale(Complex64::new(0.0, angle / 2.0));
        matrix_exp_series(&a).phased(phase)
    }

    #[test]
    fn pauli_matrices_match_convention() {
        let s1 = Matrix2::pauli(1).unwrap();
        assert_eq!(s1[(0, 1)], ONE);
        assert_eq!(s1[(1, 0)], ONE);
        assert_eq!(s1[(0, 0)], ZERO);
        let s3 = Matrix2::pauli(3).unwrap();
        assert_eq!(s3[(0, 0)], ONE);
        assert_eq!(s3[(1, 1)], Complex64::new(-1.0, 0.0));
        assert_eq!(Matrix2::pauli(0), Err(QmError::PauliIndexOutOfRange(0)));
        assert_eq!(Matrix2::pauli(4), Err(QmError::PauliIndexOutOfRange(4)));
    }

    #[test]
    fn pauli_matrices_square_to_identity() {
        for i in 1..=3 {
            let s = Matrix2::pauli(i).unwrap();
            assert!((s * s).max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
        }
    }

    #[test]
    fn zero_angle_gives_identity() {
        let p = MatrixAxisAngle::new([0.0, 0.0, 1.0], 0.0, 0.0).unwrap();
        assert!(p.to_unitary().max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
    }

    #[test]
    fn hadamard_axis_half_turn_is_i_times_hadamard() {
        let p = MatrixAxisAngle::new([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2], PI, 0.0).unwrap();
        let got = p.to_unitary();
        let want = Matrix2::hadamard().scale(Complex64::new(0.0, 1.0));
        assert!(got.max_abs_diff(&want) < TOL_EXACT);
        // independent series-exponential oracle
        let oracle = exp_of_axis_angle([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2], PI, 0.0);
        assert!(got.max_abs_diff(&oracle) < TOL_EXACT);
    }

    #[test]
    fn sigma3_rotation_is_diagonal_phase_pair() {
        let phi = 0.7;
        let p = MatrixAxisAngle::new([0.0, 0.0, 1.0], phi, 0.0).unwrap();
        let got = p.to_unitary();
        let want = Matrix2::new(
            Complex64::from_polar(1.0, phi / 2.0),
            ZERO,
            ZERO,
            Complex64::from_polar(1.0, -phi / 2.0),
        );
        assert!(got.max_abs_diff(&want) < TOL_EXACT);
        let oracle = exp_of_axis_angle([0.0, 0.0, 1.0], phi, 0.0);
        assert!(got.max_abs_diff(&oracle) < TOL_EXACT);
    }

    #[test]
    fn non_unit_axis_is_rejected() {
        assert!(matches!(
            MatrixAxisAngle::new([1.0, 1.0, 0.0], PI, 0.0),
            Err(QmError::NonUnitAxis(..))
        ));
    }

    #[test]
    fn evolve_under_identity_and_flip() {
        let rho = DensityMatrix::pure_zero();
        assert_eq!(rho.evolve(&Matrix2::IDENTITY).unwrap(), rho);
        let flipped = rho.evolve(&Matrix2::pauli(1).unwrap()).unwrap();
        assert!(flipped.matrix().max_abs_diff(DensityMatrix::pure_one().matrix()) < 1e-15);
    }

    #[test]
    fn hadamard_image_of_zero_state() {
        let rho = DensityMatrix::pure_zero().evolve(&Matrix2::hadamard()).unwrap();
        let half = Complex64::new(0.5, 0.0);
        let want = Matrix2::new(half, half, half, half);
        assert!(rho.matrix().max_abs_diff(&want) < TOL_EXACT);
        let b = rho.bloch_vector();
        assert!((b[0] - 1.0).abs() < TOL_EXACT && b[1].abs() < TOL_EXACT && b[2].abs() < TOL_EXACT);
    }

    #[test]
    fn evolve_rejects_non_unitary() {
        let rho = DensityMatrix::pure_zero();
        let u = Matrix2::IDENTITY.scale(Complex64::new(2.0, 0.0));
        assert!(matches!(rho.evolve(&u), Err(QmError::NotUnitary(_))));
    }

    #[test]
    fn mix_identities() {
        let rho = DensityMatrix::pure_zero().evolve(&Matrix2::hadamard()).unwrap();
        let single = mix(&[(1.0, rho)]).unwrap();
        assert!(single.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let mixed = mix(&[(0.5, DensityMatrix::pure_zero()), (0.5, DensityMatrix::pure_one())])
            .unwrap();
        assert!(mixed.matrix().max_abs_diff(DensityMatrix::maximally_mixed().matrix()) < 1e-15);
    }

    #[test]
    fn hadamard_image_is_flip_invariant() {
        let rho = DensityMatrix::pure_zero().evolve(&Matrix2::hadamard()).unwrap();
        let flip = Matrix2::pauli(1).unwrap();
        let p = 0.3;
        let mixed = mix(&[(p, rho.evolve(&flip).unwrap()), (1.0 - p, rho)]).unwrap();
        assert!(mixed.matrix().max_abs_diff(rho.matrix()) < TOL_EXACT);
    }

    #[test]
    fn mix_rejects_bad_probability_vectors() {
        let rho = DensityMatrix::pure_zero();
        assert!(matches!(
            mix(&[(0.5, rho), (0.6, rho)]),
            Err(QmError::ProbabilitySumNotOne(_))
        ));
        assert!(matches!(
            mix(&[(-0.1, rho), (1.1, rho)]),
            Err(QmError::NegativeProbability(_))
        ));
        assert_eq!(mix(&[]), Err(QmError::EmptyMixture));
    }

    #[test]
    fn commutation_with_sigma3() {
        let phases = MatrixAxisAngle::new([0.0, 0.0, 1.0], 1.3, 0.0).unwrap().to_unitary();
        assert!(commutes_with_sigma3(&phases));
        assert!(!commutes_with_sigma3(&Matrix2::pauli(1).unwrap()));
        assert!(!commutes_with_sigma3(&Matrix2::hadamard()));
    }

    #[test]
    fn bloch_vectors_of_reference_states() {
        assert_eq!(DensityMatrix::pure_zero().bloch_vector(), [0.0, 0.0, 1.0]);
        assert_eq!(DensityMatrix::maximally_mixed().bloch_vector(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn from_bloch_round_trips() {
        let s = [0.3, -0.2, 0.4];
        let rho = DensityMatrix::from_bloch(s).unwrap();
        let back = rho.bloch_vector();
        for k in 0..3 {
            assert!((back[k] - s[k]).abs() < 1e-15);
        }
        assert!(matches!(
            DensityMatrix::from_bloch([1.0, 1.0, 0.0]),
            Err(QmError::BlochVectorTooLong(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = Matrix2::IDENTITY;
        assert!(matches!(DensityMatrix::new(bad_trace), Err(QmError::TraceNotOne(_))));

        let non_herm = Matrix2::new(ONE, ONE, ZERO, ZERO);
        assert!(matches!(DensityMatrix::new(non_herm), Err(QmError::NotHermitian(_))));

        let indefinite = Matrix2::new(
            Complex64::new(1.5, 0.0),
            ZERO,
            ZERO,
            Complex64::new(-0.5, 0.0),
        );
        assert!(matches!(
            DensityMatrix::new(indefinite),
            Err(QmError::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn global_phase_does_not_affect_evolution() {
        let p = MatrixAxisAngle::new([0.0, 1.0, 0.0], FRAC_PI_3, 0.0).unwrap();
        let u = p.to_unitary();
        let rho = DensityMatrix::pure_zero();
        let a = rho.evolve(&u).unwrap();
        let b = rho.evolve(&u.phased(1.234)).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < TOL_EXACT);
    }

    #[test]
    fn purity_bounds() {
        assert!((DensityMatrix::pure_zero().purity() - 1.0).abs() < 1e-15);
        assert!((DensityMatrix::maximally_mixed().purity() - 0.5).abs() < 1e-15);
    }
}
