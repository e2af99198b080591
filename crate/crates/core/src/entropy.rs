//! Von Neumann entropy of a reduced two-level state, computed two ways:
//! from the reduced density matrix's spectrum, and from the magnitude of the
//! atom's mean spin vector via `S(r) = H₂(½ + r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    mean_spin_vector, partial_trace, spin_magnitude, Atom, DensityMatrix1Q, PureTwoQubitState,
};

/// Unentangled threshold for exact (non-sampled) states.
pub const DEFAULT_EPS: f64 = 1e-9;
const CLAMP_TOL: f64 = 1e-12;

/// `−p·log₂p − (1−p)·log₂(1−p)`, with `0·log₂0 = 0`.
pub fn binary_entropy_bits(p: f64) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(xlog2x(p) + xlog2x(1.0 - p))
}

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Entropy (bits) from the eigenvalues of `rho`.
pub fn entropy_eigen(rho: &DensityMatrix1Q) -> f64 {
    let (top, _) = rho.eigenvalues();
    let top = top.clamp(0.0, 1.0);
    // `top` is clamped into range, so this cannot fail.
    binary_entropy_bits(top).unwrap_or(0.0)
}

/// Entropy (bits) from the mean spin magnitude `r ∈ [0, ½]`.
pub fn entropy_from_magnitude(r: f64) -> Result<f64> {
    if !(-CLAMP_TOL..=0.5 + CLAMP_TOL).contains(&r) {
        return Err(Error::MagnitudeOutOfRange(r));
    }
    binary_entropy_bits(0.5 + r.clamp(0.0, 0.5))
}

/// `log₂((½−r)/(½+r))`, the slope of [`entropy_from_magnitude`].
pub fn entropy_slope(r: f64) -> f64 {
    ((0.5 - r) / (0.5 + r)).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entanglement {
    Entangled,
    Unentangled,
}

impl Entanglement {
    pub fn is_entangled(self) -> bool {
        self == Entanglement::Entangled
    }
}

/// Unentangled iff `r ≥ ½ − eps`.
pub fn classify_entanglement(r: f64, eps: f64) -> Entanglement {
    if r >= 0.5 - eps {
        Entanglement::Unentangled
    } else {
        Entanglement::Entangled
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub s_eigen_atom1: f64,
    pub s_eigen_atom2: f64,
    pub s_from_magnitude: f64,
    pub magnitude_atom1: f64,
    pub magnitude_atom2: f64,
    pub entangled: bool,
}

pub fn analyze(psi: &PureTwoQubitState) -> Result<EntropyReport> {
    let r1 = spin_magnitude(&mean_spin_vector(psi, Atom::One)?);
    let r2 = spin_magnitude(&mean_spin_vector(psi, Atom::Two)?);
    Ok(EntropyReport {
        s_eigen_atom1: entropy_eigen(&partial_trace(psi, Atom::One)),
        s_eigen_atom2: entropy_eigen(&partial_trace(psi, Atom::Two)),
        s_from_magnitude: entropy_from_magnitude(r1)?,
        magnitude_atom1: r1,
        magnitude_atom2: r2,
        entangled: classify_entanglement(r1, DEFAULT_EPS).is_entangled(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::C64;
    use approx::assert_abs_diff_eq;

    // -0.75·log₂0.75 − 0.25·log₂0.25, evaluated independently in f64 and numpy.
    const S_075: f64 = 0.811_278_124_459_132_8;

    fn diag(a: f64, b: f64) -> DensityMatrix1Q {
        let z = C64::new(0.0, 0.0);
        DensityMatrix1Q::new([[C64::new(a, 0.0), z], [z, C64::new(b, 0.0)]]).unwrap()
    }

    #[test]
    fn binary_entropy_points() {
        assert_eq!(binary_entropy_bits(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy_bits(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy_bits(0.5).unwrap(), 1.0);
        assert_abs_diff_eq!(binary_entropy_bits(0.75).unwrap(), S_075, epsilon = 1e-15);
        assert_eq!(binary_entropy_bits(-1e-13).unwrap(), 0.0);
        assert!(binary_entropy_bits(1.1).is_err());
        assert!(binary_entropy_bits(-0.1).is_err());
        assert!(binary_entropy_bits(f64::NAN).is_err());
    }

    #[test]
    fn eigen_entropy_points() {
        assert_eq!(entropy_eigen(&diag(0.5, 0.5)), 1.0);
        assert_eq!(entropy_eigen(&diag(1.0, 0.0)), 0.0);
        assert_abs_diff_eq!(entropy_eigen(&diag(0.75, 0.25)), S_075, epsilon = 1e-15);
    }

    #[test]
    fn magnitude_entropy_points() {
        assert_eq!(entropy_from_magnitude(0.0).unwrap(), 1.0);
        assert_eq!(entropy_from_magnitude(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(
            entropy_from_magnitude(0.25).unwrap(),
            entropy_eigen(&diag(0.75, 0.25)),
            epsilon = 1e-15
        );
        assert_eq!(entropy_from_magnitude(0.5 + 1e-13).unwrap(), 0.0);
        assert!(entropy_from_magnitude(0.6).is_err());
        assert!(entropy_from_magnitude(-0.01).is_err());
    }

    #[test]
    fn slope_matches_finite_difference() {
        let h = 1e-6;
        let r = 0.25;
        let fd =
            (entropy_from_magnitude(r + h).unwrap() - entropy_from_magnitude(r - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(entropy_slope(r), fd, epsilon = 1e-8);
        assert_abs_diff_eq!(entropy_slope(r), -1.584_962_500_721_156, epsilon = 1e-12);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_entanglement(0.5, 1e-9), Entanglement::Unentangled);
        assert_eq!(classify_entanglement(0.0, 1e-9), Entanglement::Entangled);
        assert_eq!(
            classify_entanglement(0.499_999_999_6, 1e-9),
            Entanglement::Unentangled
        );
        assert_eq!(
            classify_entanglement(0.499_999_998, 1e-9),
            Entanglement::Entangled
        );
    }

    #[test]
    fn analyze_named_states() {
        let r = analyze(&PureTwoQubitState::bell()).unwrap();
        assert_abs_diff_eq!(r.s_eigen_atom1, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s_eigen_atom2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s_from_magnitude, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.magnitude_atom1, 0.0, epsilon = 1e-12);
        assert!(r.entangled);

        let r = analyze(&PureTwoQubitState::basis(0)).unwrap();
        assert_eq!(
            (r.s_eigen_atom1, r.s_eigen_atom2, r.s_from_magnitude),
            (0.0, 0.0, 0.0)
        );
        assert_eq!((r.magnitude_atom1, r.magnitude_atom2), (0.5, 0.5));
        assert!(!r.entangled);

        let psi = PureTwoQubitState::from_real([0.75f64.sqrt(), 0.0, 0.0, 0.25f64.sqrt()]).unwrap();
        let r = analyze(&psi).unwrap();
        assert_abs_diff_eq!(r.s_eigen_atom1, S_075, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s_from_magnitude, S_075, epsilon = 1e-12);
        assert_abs_diff_eq!(r.magnitude_atom2, 0.25, epsilon = 1e-12);
        assert!(r.entangled);
    }
}
