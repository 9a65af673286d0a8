//! The geometric algebra of 3-space, Cl(3,0).
//!
//! A multivector has 8 real coefficients over the basis
//! `{1, σ1, σ2, σ3, ισ1, ισ2, ισ3, ι}` where `ι = σ1σ2σ3` is the unit
//! trivector. Bivectors are stored in dual form (`ισk`), so a rotor about a
//! unit axis `u` is coefficient-direct: `R = e^{ιθu/2} = cos(θ/2) + ιu sin(θ/2)`.
//!
//! The basis multiplication follows `σiσj = δij + ι ε_ijk σk`; `ι` commutes
//! with everything and squares to -1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Tolerance for exact algebraic identities (single multiply-add paths).
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for composed numerical paths (sandwich products, series).
pub const TOL_COMPOSED: f64 = 1e-10;
/// Smallest coefficient magnitude the [`fmt::Display`] formatter prints.
pub const DISPLAY_EPSILON: f64 = 1e-12;

/// Power-series exponential stops once a term's max-abs coefficient drops
/// below this cutoff.
const SERIES_CUTOFF: f64 = 1e-16;
/// Hard stop for the series exponential.
const SERIES_MAX_TERMS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaError {
    #[error("axis ({0}, {1}, {2}) is not a unit vector (norm^2 deviates by {3:e})")]
    NonUnitAxis(f64, f64, f64, f64),
    #[error("multivector has non-bivector components and cannot be exponentiated as a bivector")]
    NotABivector,
    #[error("multivector is not a pure grade-1 vector (off-grade magnitude {0:e})")]
    NotAVector(f64),
    #[error("multivector has odd-grade components and cannot be a rotor")]
    NotEvenGrade,
    #[error("rotor is not unit: |R R† - 1| = {0:e}")]
    NonUnitRotor(f64),
    #[error("grade {0} out of range (valid grades are 0..=3)")]
    GradeOutOfRange(usize),
    #[error("coefficient at index {0} is not finite")]
    NonFiniteCoefficient(usize),
}

const P: f64 = 1.0;
const N: f64 = -1.0;

/// Basis product table: `BASIS[i] * BASIS[j] = CAYLEY[i][j].0 * BASIS[CAYLEY[i][j].1]`
/// over the basis order `[1, σ1, σ2, σ3, ισ1, ισ2, ισ3, ι]`.
const CAYLEY: [[(f64, usize); 8]; 8] = [
    [(P, 0), (P, 1), (P, 2), (P, 3), (P, 4), (P, 5), (P, 6), (P, 7)],
    [(P, 1), (P, 0), (P, 6), (N, 5), (P, 7), (N, 3), (P, 2), (P, 4)],
    [(P, 2), (N, 6), (P, 0), (P, 4), (P, 3), (P, 7), (N, 1), (P, 5)],
    [(P, 3), (P, 5), (N, 4), (P, 0), (N, 2), (P, 1), (P, 7), (P, 6)],
    [(P, 4), (P, 7), (N, 3), (P, 2), (N, 0), (N, 6), (P, 5), (N, 1)],
    [(P, 5), (P, 3), (P, 7), (N, 1), (P, 6), (N, 0), (N, 4), (N, 2)],
    [(P, 6), (N, 2), (P, 1), (P, 7), (N, 5), (P, 4), (N, 0), (N, 3)],
    [(P, 7), (P, 4), (P, 5), (P, 6), (N, 1), (N, 2), (N, 3), (N, 0)],
];

/// Coefficient indices belonging to each grade, positional by construction.
const GRADE_INDICES: [&[usize]; 4] = [&[0], &[1, 2, 3], &[4, 5, 6], &[7]];

const BASIS_LABELS: [&str; 8] = ["1", "σ1", "σ2", "σ3", "ισ1", "ισ2", "ισ3", "ι"];

/// An element of Cl(3,0): 8 real coefficients in the order
/// `scalar, σ1, σ2, σ3, ισ1, ισ2, ισ3, ι`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Multivector {
    coeffs: [f64; 8],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector { coeffs: [0.0; 8] };
    pub const ONE: Multivector = Multivector::basis(0);
    pub const SIGMA1: Multivector = Multivector::basis(1);
    pub const SIGMA2: Multivector = Multivector::basis(2);
    pub const SIGMA3: Multivector = Multivector::basis(3);
    /// The unit trivector `ι = σ1σ2σ3`.
    pub const PSEUDOSCALAR: Multivector = Multivector::basis(7);

    const fn basis(i: usize) -> Multivector {
        let mut coeffs = [0.0; 8];
        coeffs[i] = 1.0;
        Multivector { coeffs }
    }

    pub const fn from_coeffs(coeffs: [f64; 8]) -> Multivector {
        Multivector { coeffs }
    }

    pub fn scalar(s: f64) -> Multivector {
        Multivector::from_coeffs([s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Grade-1 vector `x σ1 + y σ2 + z σ3`.
    pub fn vector(x: f64, y: f64, z: f64) -> Multivector {
        Multivector::from_coeffs([0.0, x, y, z, 0.0, 0.0, 0.0, 0.0])
    }

    /// Dual-form bivector `ι (x σ1 + y σ2 + z σ3)`.
    pub fn bivector(x: f64, y: f64, z: f64) -> Multivector {
        Multivector::from_coeffs([0.0, 0.0, 0.0, 0.0, x, y, z, 0.0])
    }

    pub const fn coeffs(&self) -> [f64; 8] {
        self.coeffs
    }

    pub const fn coeff(&self, i: usize) -> f64 {
        self.coeffs[i]
    }

    /// The grade-1 components `(σ1, σ2, σ3)`.
    pub fn vector_part(&self) -> [f64; 3] {
        [self.coeffs[1], self.coeffs[2], self.coeffs[3]]
    }

    /// Full Cl(3,0) geometric product.
    pub fn geometric_product(&self, rhs: &Multivector) -> Multivector {
        let mut out = [0.0; 8];
        for i in 0..8 {
            let a = self.coeffs[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..8 {
                let b = rhs.coeffs[j];
                if b == 0.0 {
                    continue;
                }
                let (sign, k) = CAYLEY[i][j];
                out[k] += sign * a * b;
            }
        }
        Multivector { coeffs: out }
    }

    /// Reversion `x†`: inverts factor order in products, which negates the
    /// grade-2 and grade-3 coefficients and fixes grades 0 and 1.
    pub fn reverse(&self) -> Multivector {
        let c = &self.coeffs;
        Multivector::from_coeffs([c[0], c[1], c[2], c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    /// Zeroes every coefficient outside grade `k`.
    pub fn grade_project(&self, k: usize) -> Result<Multivector, GaError> {
        if k > 3 {
            return Err(GaError::GradeOutOfRange(k));
        }
        let mut out = [0.0; 8];
        for &i in GRADE_INDICES[k] {
            out[i] = self.coeffs[i];
        }
        Ok(Multivector { coeffs: out })
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient magnitude outside grade `k`.
    pub fn max_abs_off_grade(&self, k: usize) -> f64 {
        let kept = GRADE_INDICES[k];
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| !kept.contains(i))
            .fold(0.0, |m, (_, c)| m.max(c.abs()))
    }

    /// Euclidean norm of the grade-1 part.
    pub fn vector_norm(&self) -> f64 {
        let [x, y, z] = self.vector_part();
        (x * x + y * y + z * z).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    fn ensure_finite(&self) -> Result<(), GaError> {
        match self.coeffs.iter().position(|c| !c.is_finite()) {
            Some(i) => Err(GaError::NonFiniteCoefficient(i)),
            None => Ok(()),
        }
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        let mut out = [0.0; 8];
        for i in 0..8 {
            out[i] = self.coeffs[i] + rhs.coeffs[i];
        }
        Multivector { coeffs: out }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        let mut out = [0.0; 8];
        for i in 0..8 {
            out[i] = self.coeffs[i] - rhs.coeffs[i];
        }
        Multivector { coeffs: out }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        let mut out = self.coeffs;
        for c in &mut out {
            *c *= s;
        }
        Multivector { coeffs: out }
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.abs() < DISPLAY_EPSILON {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{}", BASIS_LABELS[i])?;
            } else {
                write!(f, "{mag}{}", BASIS_LABELS[i])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A rotation axis and angle. The axis must be unit length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    axis: [f64; 3],
    angle: f64,
}

impl AxisAngle {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<AxisAngle, GaError> {
        let norm2 = axis.iter().map(|a| a * a).sum::<f64>();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > TOL_EXACT {
            return Err(GaError::NonUnitAxis(
                axis[0],
                axis[1],
                axis[2],
                (norm2 - 1.0).abs(),
            ));
        }
        Ok(AxisAngle { axis, angle })
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The axis as a grade-1 multivector.
    pub fn axis_vector(&self) -> Multivector {
        Multivector::vector(self.axis[0], self.axis[1], self.axis[2])
    }
}

/// A unit element of the even subalgebra (grades 0 and 2), acting on vectors
/// by the sandwich `v -> R v R†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotor(Multivector);

impl Rotor {
    pub const IDENTITY: Rotor = Rotor(Multivector::ONE);

    /// `R = e^{ιθu/2} = cos(θ/2) + ιu sin(θ/2)` for the unit axis `u`.
    pub fn from_axis_angle(ax: &AxisAngle) -> Rotor {
        let half = ax.angle() / 2.0;
        let (s, c) = half.sin_cos();
        let [ux, uy, uz] = ax.axis();
        Rotor(Multivector::scalar(c) + Multivector::bivector(ux * s, uy * s, uz * s))
    }

    /// Validates the rotor invariants: even grade (odd coefficients exactly
    /// zero) and `R R† = 1` within [`TOL_EXACT`].
    pub fn try_from_multivector(mv: Multivector) -> Result<Rotor, GaError> {
        mv.ensure_finite()?;
        if mv.coeff(1) != 0.0 || mv.coeff(2) != 0.0 || mv.coeff(3) != 0.0 || mv.coeff(7) != 0.0 {
            return Err(GaError::NotEvenGrade);
        }
        let unit = mv * mv.reverse() - Multivector::ONE;
        let dev = unit.max_abs();
        if dev > TOL_EXACT {
            return Err(GaError::NonUnitRotor(dev));
        }
        Ok(Rotor(mv))
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn reverse(&self) -> Rotor {
        Rotor(self.0.reverse())
    }

    /// Applies the rotation to a pure grade-1 vector: returns `R v R†`.
    ///
    /// `v` may carry off-grade numerical residue up to [`TOL_EXACT`], which
    /// composed sandwich chains accumulate.
    pub fn apply(&self, v: &Multivector) -> Result<Multivector, GaError> {
        v.ensure_finite()?;
        let off = v.max_abs_off_grade(1);
        if off > TOL_EXACT {
            return Err(GaError::NotAVector(off));
        }
        Ok(self.0 * *v * self.0.reverse())
    }
}

/// Composition of rotations; the product of unit rotors is a unit rotor and
/// the even subalgebra is closed under the geometric product.
impl Mul for Rotor {
    type Output = Rotor;
    fn mul(self, rhs: Rotor) -> Rotor {
        Rotor(self.0 * rhs.0)
    }
}

/// Power-series exponential of a pure bivector, the independent cross-check
/// for the closed-form rotor constructor.
///
/// Terminates when a term's max-abs coefficient falls below `1e-16` or after
/// 64 terms, whichever comes first.
pub fn exp_bivector_series(b: &Multivector) -> Result<Multivector, GaError> {
    b.ensure_finite()?;
    if b.max_abs_off_grade(2) != 0.0 {
        return Err(GaError::NotABivector);
    }
    let mut sum = Multivector::ONE;
    let mut term = Multivector::ONE;
    for n in 1..=SERIES_MAX_TERMS {
        term = term * *b * (1.0 / n as f64);
        if term.max_abs() < SERIES_CUTOFF {
            break;
        }
        sum = sum + term;
    }
    Ok(sum)
}
