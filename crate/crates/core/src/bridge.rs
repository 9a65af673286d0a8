//! The algebra isomorphism between Cl(3,0) and the 2x2 complex matrices:
//! `1 -> I`, `σk -> pauli(k)`, `ι -> iI`, `ισk -> i pauli(k)`.
//!
//! Both directions are total maps over the full 8-dimensional algebra, so
//! grade-1 states, rotors, and the flip operator all cross on the same
//! homomorphism. Each formalism serves as the numerical oracle for the other.

use crate::ga::Multivector;
use crate::qm::{Complex64, DensityMatrix, Matrix2};

/// Tolerance for state correspondence checks over composed evolution paths.
pub const TOL_STATE: f64 = 1e-10;

/// Maps a multivector to its matrix representation; an algebra homomorphism
/// taking the geometric product to the matrix product.
pub fn multivector_to_matrix(x: &Multivector) -> Matrix2 {
    let c = x.coeffs();
    // z0 I + z . sigma with z0 = c[0] + i c[7], z_k = c[k] + i c[k+3]
    let z0 = Complex64::new(c[0], c[7]);
    let z1 = Complex64::new(c[1], c[4]);
    let z2 = Complex64::new(c[2], c[5]);
    let z3 = Complex64::new(c[3], c[6]);
    Matrix2::new(z0 + z3, z1 - Complex64::new(0.0, 1.0) * z2, z1 + Complex64::new(0.0, 1.0) * z2, z0 - z3)
}

/// Inverse of [`multivector_to_matrix`] via trace projections
/// `z0 = tr(M)/2`, `z_k = tr(σk M)/2`.
pub fn matrix_to_multivector(m: &Matrix2) -> Multivector {
    let half = Complex64::new(0.5, 0.0);
    let z0 = m.trace() * half;
    let mut z = [Complex64::new(0.0, 0.0); 3];
    for (k, zk) in z.iter_mut().enumerate() {
        let pauli = Matrix2::pauli(k + 1).expect("index in range");
        *zk = (pauli * *m).trace() * half;
    }
    Multivector::from_coeffs([
        z0.re, z[0].re, z[1].re, z[2].re, z[0].im, z[1].im, z[2].im, z0.im,
    ])
}

/// One verified identity in a [`BridgeReport`].
#[derive(Debug, Clone)]
pub struct BridgeCheck {
    pub label: &'static str,
    pub deviation: f64,
    pub pass: bool,
}

/// Outcome of a correspondence check; failures are carried, not raised.
#[derive(Debug, Clone, Default)]
pub struct BridgeReport {
    pub checks: Vec<BridgeCheck>,
}

impl BridgeReport {
    fn push(&mut self, label: &'static str, deviation: f64, tol: f64) {
        self.checks.push(BridgeCheck {
            label,
            deviation,
            pass: deviation <= tol,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.deviation))
    }
}

/// Verifies that a grade-1 state and a density matrix describe the same
/// Bloch vector, including the reconstruction `ρ = (I + s·σ)/2`.
///
/// Mixed (non-unit) Bloch vectors are in scope; mid-game mixtures shrink the
/// state below the unit sphere.
pub fn check_state_correspondence(v: &Multivector, rho: &DensityMatrix) -> BridgeReport {
    let mut report = BridgeReport::default();

    report.push("grade-1 purity", v.max_abs_off_grade(1), TOL_STATE);
    report.push("state norm <= 1", (v.vector_norm() - 1.0).max(0.0), 1e-12);

    let s = v.vector_part();
    let b = rho.bloch_vector();
    let bloch_dev = s
        .iter()
        .zip(b.iter())
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    report.push("Bloch vector match", bloch_dev, TOL_STATE);

    let reconstructed = (Matrix2::IDENTITY + Matrix2::from_pauli_vector(s))
        .scale(Complex64::new(0.5, 0.0));
    report.push(
        "density reconstruction",
        reconstructed.max_abs_diff(rho.matrix()),
        TOL_STATE,
    );

    report
}
