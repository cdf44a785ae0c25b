//! The degree-4 Blaschke family B_a(z) = z^3 (z - a) / (1 - ā z).
//!
//! For |a| ≠ 1 these are proper degree-4 self-maps of the Riemann sphere
//! that fix the unit circle as a set. The degenerate locus |a| = 1 collapses
//! the Möbius factor and leaves z ↦ -a z^3.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::AtlasError;

/// Parameters whose modulus is within this tolerance of 1 are degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Unit-circle membership tolerance used by eval's circle-invariance contract.
pub const CIRCLE_TOL: f64 = 1e-12;
/// Inputs beyond this modulus are dynamically indistinguishable from ∞
/// (they lie far outside every escape radius we ever use) and evaluating
/// the rational formula there risks overflow.
const OVERFLOW_RADIUS: f64 = 1e70;

/// A point on the Riemann sphere.
///
/// Infinity is a deliberate tag, never an overflow artifact: `eval` promotes
/// overflowing values to `Infinity` itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    /// Spherical-chart modulus: ∞ reports `f64::INFINITY`.
    pub fn modulus(self) -> f64 {
        match self {
            ExtComplex::Finite(z) => z.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// Reflection I(z) = 1/z̄ across the unit circle. Involution; swaps 0 and ∞
/// and fixes the circle pointwise. Conjugates B_a with itself.
pub fn reflect(z: ExtComplex) -> ExtComplex {
    match z {
        ExtComplex::Infinity => ExtComplex::Finite(Complex64::new(0.0, 0.0)),
        ExtComplex::Finite(z) if z.re == 0.0 && z.im == 0.0 => ExtComplex::Infinity,
        ExtComplex::Finite(z) => ExtComplex::Finite(z.conj().inv()),
    }
}

/// Finite-input reflection, for callers that already excluded 0.
pub fn reflect_finite(z: Complex64) -> Complex64 {
    z.conj().inv()
}

/// One member of the family, normalized so the rotation parameter is 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeParam {
    a: Complex64,
    t: f64,
}

impl BlaschkeParam {
    pub fn new(a: Complex64) -> Self {
        assert!(a.is_finite(), "parameter a must be finite");
        BlaschkeParam { a, t: 0.0 }
    }

    /// Member e^{2πit} z^3 (z-a)/(1-āz), immediately rewritten in normalized
    /// form: z ↦ e^{-2πiα}z with α = -t/3 conjugates it to the member with
    /// parameter a·e^{2πit/3} and rotation 0.
    pub fn with_rotation(a: Complex64, t: f64) -> Self {
        let a = a * Complex64::from_polar(1.0, TAU * t / 3.0);
        BlaschkeParam::new(a)
    }

    pub fn a(self) -> Complex64 {
        self.a
    }

    /// Rotation in normalized form; always 0.
    pub fn t(self) -> f64 {
        self.t
    }

    pub fn modulus(self) -> f64 {
        self.a.norm()
    }

    pub fn is_degenerate(self) -> bool {
        (self.a.norm() - 1.0).abs() <= DEGENERACY_TOL
    }

    /// Pole 1/ā of the Möbius factor; ∞ when a = 0.
    pub fn pole(self) -> ExtComplex {
        reflect(ExtComplex::Finite(self.a))
    }
}

/// The free critical points of B_a together with its finite zero and pole.
///
/// `c_plus` is the exterior point (|c_plus| ≥ 1) and `c_minus` its mirror
/// 1/c̄_plus-direction partner (|c_minus| ≤ 1, |c_plus|·|c_minus| = 1);
/// for 1 ≤ |a| ≤ 2 both lie on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub zero: Complex64,
    pub pole: Complex64,
}

/// B_a(z) on the sphere. Total: 0 ↦ 0, ∞ ↦ ∞, a ↦ 0, 1/ā ↦ ∞, and the
/// unit circle maps into itself. Degenerate members use -a z^3.
pub fn eval(p: &BlaschkeParam, z: ExtComplex) -> ExtComplex {
    let z = match z {
        ExtComplex::Infinity => return ExtComplex::Infinity,
        ExtComplex::Finite(z) => z,
    };
    debug_assert!(!z.re.is_nan() && !z.im.is_nan(), "NaN input to eval");
    if z.norm_sqr() > OVERFLOW_RADIUS * OVERFLOW_RADIUS {
        return ExtComplex::Infinity;
    }
    let w = if p.is_degenerate() {
        -p.a * z * z * z
    } else {
        let den = Complex64::new(1.0, 0.0) - p.a.conj() * z;
        if den.re == 0.0 && den.im == 0.0 {
            return ExtComplex::Infinity;
        }
        z * z * z * (z - p.a) / den
    };
    if w.is_finite() {
        ExtComplex::Finite(w)
    } else {
        // Overflow next to the pole (or cubing something huge): the true
        // image is enormous, which for every consumer means "gone to ∞".
        ExtComplex::Infinity
    }
}

/// Convenience wrapper for finite points known to avoid overflow.
pub fn eval_finite(p: &BlaschkeParam, z: Complex64) -> ExtComplex {
    eval(p, ExtComplex::Finite(z))
}

/// dB_a/dz by the quotient rule:
/// B'(z) = z^2 [3(z-a)(1-āz) + z(1-|a|²)] / (1-āz)^2.
pub fn derivative(p: &BlaschkeParam, z: Complex64) -> Result<Complex64, AtlasError> {
    debug_assert!(!z.re.is_nan() && !z.im.is_nan(), "NaN input to derivative");
    if p.is_degenerate() {
        return Ok(-3.0 * p.a * z * z);
    }
    let den = Complex64::new(1.0, 0.0) - p.a.conj() * z;
    if den.re == 0.0 && den.im == 0.0 {
        return Err(AtlasError::DerivativeAtPole(z));
    }
    let numerator = 3.0 * (z - p.a) * den + z * (1.0 - p.a.norm_sqr());
    let d = z * z * numerator / (den * den);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(AtlasError::DerivativeAtPole(z))
    }
}

/// Free critical points per the closed form
/// c_± = a (2 + |a|² ± √((|a|²-4)(|a|²-1))) / (3|a|²).
///
/// The radicand is real; for 1 < |a| < 2 it is negative and the square root
/// is taken with positive imaginary part, assigned to `c_plus`, which puts
/// both points on the unit circle as complex conjugates of each other up to
/// the direction of a.
pub fn critical_points(p: &BlaschkeParam) -> Result<CriticalData, AtlasError> {
    if p.is_degenerate() || p.a.norm_sqr() == 0.0 {
        return Err(AtlasError::DegenerateParameter(p.a));
    }
    let m2 = p.a.norm_sqr();
    let mut rad = (m2 - 4.0) * (m2 - 1.0);
    // Near the merge circles |a| ∈ {1, 2} the radicand is pure roundoff
    // (≈ ε·m²·m²) which the square root would amplify to a √ε-sized spurious
    // offset between the two points; snap noise-level radicands to the
    // double root so the merge is exact.
    if rad.abs() < 32.0 * f64::EPSILON * m2 * (m2 + 5.0) {
        rad = 0.0;
    }
    let (f_plus, f_minus) = if rad >= 0.0 {
        let s = rad.sqrt();
        (
            Complex64::new(2.0 + m2 + s, 0.0),
            Complex64::new(2.0 + m2 - s, 0.0),
        )
    } else {
        let s = (-rad).sqrt();
        (Complex64::new(2.0 + m2, s), Complex64::new(2.0 + m2, -s))
    };
    let scale = 1.0 / (3.0 * m2);
    Ok(CriticalData {
        c_plus: p.a * f_plus * scale,
        c_minus: p.a * f_minus * scale,
        zero: p.a,
        pole: p.a.conj().inv(),
    })
}
