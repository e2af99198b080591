//! Schmidt decomposition of a two-atom pure state.
//!
//! The 2×2 coefficient matrix `M` is split as `c1·u1⊗v1 + c2·u2⊗v2` in closed
//! form: `u1` is the top eigenvector of `M M†` (the atom-1 reduced state),
//! `u2` its orthogonal complement, and the atom-2 vectors follow from
//! `Mᵀ u*`. Phase convention: the larger-modulus component of each `u_i` is
//! real and nonnegative; the compensating phase sits in `v_i`, which keeps the
//! coefficients real and nonnegative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    hermitian_top_eigenvector, partial_trace, tensor_product_state, Atom, PureTwoQubitState,
    SingleQubitState, C64,
};

/// Coefficient gap at or below which `c1 = c2` is reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;
const INVARIANT_TOL: f64 = 1e-10;
const MAGNITUDE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtDecomposition {
    pub c1: f64,
    pub c2: f64,
    pub u1: SingleQubitState,
    pub u2: SingleQubitState,
    pub v1: SingleQubitState,
    pub v2: SingleQubitState,
    /// `c1 − c2 ≤ DEGENERACY_TOL`: the local bases are not unique.
    pub degenerate: bool,
}

impl SchmidtDecomposition {
    /// Checks ordering, normalization and orthogonality within 1e-10.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if !(self.c1.is_finite() && self.c2.is_finite()) {
            return bad("non-finite coefficient".into());
        }
        if self.c2 < 0.0 || self.c1 < self.c2 {
            return bad(format!("need c1 >= c2 >= 0, got c1={} c2={}", self.c1, self.c2));
        }
        let n = self.c1 * self.c1 + self.c2 * self.c2;
        if (n - 1.0).abs() > INVARIANT_TOL {
            return bad(format!("c1^2 + c2^2 = {n}"));
        }
        for (name, s) in [
            ("u1", &self.u1),
            ("u2", &self.u2),
            ("v1", &self.v1),
            ("v2", &self.v2),
        ] {
            let n = s.inner(s).re;
            if (n - 1.0).abs() > INVARIANT_TOL {
                return bad(format!("{name} has squared norm {n}"));
            }
        }
        let uu = self.u1.inner(&self.u2).norm();
        if uu > INVARIANT_TOL {
            return bad(format!("|<u1|u2>| = {uu}"));
        }
        let vv = self.v1.inner(&self.v2).norm();
        if vv > INVARIANT_TOL {
            return bad(format!("|<v1|v2>| = {vv}"));
        }
        Ok(())
    }

    /// `(c1², c2²)`
    pub fn probabilities(&self) -> (f64, f64) {
        (self.c1 * self.c1, self.c2 * self.c2)
    }

    pub fn is_product(&self) -> bool {
        self.c2 == 0.0
    }
}

fn fix_phase(v: [C64; 2]) -> [C64; 2] {
    let lead = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    let n = lead.norm();
    if n == 0.0 {
        return v;
    }
    let rot = lead.conj() / n;
    [v[0] * rot, v[1] * rot]
}

/// `Mᵀ·u*`, i.e. `Σ_a conj(u[a])·M[a][b]`.
fn contract_atom1(m: &[[C64; 2]; 2], u: &[C64; 2]) -> [C64; 2] {
    [
        u[0].conj() * m[0][0] + u[1].conj() * m[1][0],
        u[0].conj() * m[0][1] + u[1].conj() * m[1][1],
    ]
}

pub fn schmidt_decompose(psi: &PureTwoQubitState) -> SchmidtDecomposition {
    let m = psi.coefficient_matrix();
    let rho1 = partial_trace(psi, Atom::One);

    let u1 = fix_phase(hermitian_top_eigenvector(rho1.matrix()));
    let u2 = fix_phase(
        SingleQubitState::from_parts_unchecked(u1)
            .orthogonal()
            .components(),
    );

    // c1·v1 = Mᵀ u1*; c1 ≥ 1/√2 for normalized input so the division is safe.
    let w1 = contract_atom1(&m, &u1);
    let c1 = (w1[0].norm_sqr() + w1[1].norm_sqr()).sqrt();
    let v1 = SingleQubitState::from_parts_unchecked([w1[0] / c1, w1[1] / c1]);

    // v2 is fixed by orthogonality to v1; c2 = |⟨u2⊗v2|Ψ⟩| after absorbing
    // the phase. This stays accurate when c2 → 0.
    let v2_raw = v1.orthogonal().components();
    let w2 = contract_atom1(&m, &u2);
    let z = v2_raw[0].conj() * w2[0] + v2_raw[1].conj() * w2[1];
    let c2 = z.norm();
    let v2 = if c2 > 0.0 {
        let phase = z / c2;
        [v2_raw[0] * phase, v2_raw[1] * phase]
    } else {
        v2_raw
    };

    // c1, c2 come from separate contractions; rounding can leave them a few ulps off.
    let total = (c1 * c1 + c2 * c2).sqrt();
    let (c1, c2) = (c1 / total, c2 / total);

    SchmidtDecomposition {
        c1,
        c2,
        u1: SingleQubitState::from_parts_unchecked(u1),
        u2: SingleQubitState::from_parts_unchecked(u2),
        v1,
        v2: SingleQubitState::from_parts_unchecked(v2),
        degenerate: c1 - c2 <= DEGENERACY_TOL,
    }
}

/// `c1·(u1⊗v1) + c2·(u2⊗v2)`.
pub fn reconstruct(d: &SchmidtDecomposition) -> Result<PureTwoQubitState> {
    d.validate()?;
    let a = tensor_product_state(&d.u1, &d.v1);
    let b = tensor_product_state(&d.u2, &d.v2);
    let mut amps = [C64::new(0.0, 0.0); 4];
    for (k, out) in amps.iter_mut().enumerate() {
        *out = a.amplitudes()[k] * d.c1 + b.amplitudes()[k] * d.c2;
    }
    PureTwoQubitState::new_renormalized(amps)
}

/// `(½ + r, ½ − r)`: the squared Schmidt coefficients recovered from a mean
/// spin magnitude. Overshoot above ½ by at most 1e-12 is clamped.
pub fn schmidt_probs_from_magnitude(r: f64) -> Result<(f64, f64)> {
    if !r.is_finite() || !(0.0..=0.5 + MAGNITUDE_TOL).contains(&r) {
        return Err(Error::MagnitudeOutOfRange(r));
    }
    let r = r.min(0.5);
    let p1 = 0.5 + r;
    Ok((p1, 1.0 - p1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{mean_spin_vector, spin_magnitude};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_state() {
        let d = schmidt_decompose(&PureTwoQubitState::basis(0));
        assert_eq!((d.c1, d.c2), (1.0, 0.0));
        assert_eq!(d.u1, SingleQubitState::UP);
        assert_eq!(d.v1, SingleQubitState::UP);
        assert!(!d.degenerate);
        assert!(d.is_product());
        d.validate().unwrap();
    }

    #[test]
    fn product_state_down_down() {
        let d = schmidt_decompose(&PureTwoQubitState::basis(3));
        assert_abs_diff_eq!(d.c1, 1.0, epsilon = 1e-15);
        assert_eq!(d.u1, SingleQubitState::DOWN);
        assert_eq!(d.v1, SingleQubitState::DOWN);
    }

    #[test]
    fn bell_state_is_degenerate() {
        let d = schmidt_decompose(&PureTwoQubitState::bell());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(d.c1, h, epsilon = 1e-15);
        assert_abs_diff_eq!(d.c2, h, epsilon = 1e-15);
        assert!(d.degenerate);
        let back = reconstruct(&d).unwrap();
        assert!(back.fidelity(&PureTwoQubitState::bell()) >= 1.0 - 1e-12);
    }

    #[test]
    fn weighted_state_matches_reduced_spectrum() {
        let psi = PureTwoQubitState::from_real([0.75f64.sqrt(), 0.0, 0.0, 0.25f64.sqrt()]).unwrap();
        let d = schmidt_decompose(&psi);
        assert_abs_diff_eq!(d.c1, 0.75f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.c2, 0.25f64.sqrt(), epsilon = 1e-15);
        let (l1, l2) = partial_trace(&psi, Atom::One).eigenvalues();
        let (p1, p2) = d.probabilities();
        assert_abs_diff_eq!(p1, l1, epsilon = 1e-10);
        assert_abs_diff_eq!(p2, l2, epsilon = 1e-10);
    }

    #[test]
    fn complex_entangled_state_roundtrip() {
        let psi = PureTwoQubitState::new_renormalized([c(0.3, -0.1), c(0.0, 0.5), c(-0.4, 0.2), c(0.1, 0.6)])
            .unwrap();
        let d = schmidt_decompose(&psi);
        d.validate().unwrap();
        assert!(reconstruct(&d).unwrap().fidelity(&psi) >= 1.0 - 1e-12);
        let r = spin_magnitude(&mean_spin_vector(&psi, Atom::One).unwrap());
        let (p1, p2) = d.probabilities();
        assert_abs_diff_eq!((p1 - p2) / 2.0, r, epsilon = 1e-11);
    }

    #[test]
    fn phase_convention() {
        let psi = PureTwoQubitState::new_renormalized([c(0.1, 0.7), c(0.2, -0.3), c(0.0, 0.4), c(0.5, 0.1)])
            .unwrap();
        let d = schmidt_decompose(&psi);
        for u in [d.u1, d.u2] {
            let lead = if u.up().norm() >= u.down().norm() {
                u.up()
            } else {
                u.down()
            };
            assert_eq!(lead.im, 0.0);
            assert!(lead.re >= 0.0);
        }
        // Reconstruction without any global phase freedom.
        let back = reconstruct(&d).unwrap();
        for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn reconstruct_rejects_bad_input() {
        let mut d = schmidt_decompose(&PureTwoQubitState::basis(0));
        d.c2 = 0.5;
        assert!(matches!(reconstruct(&d), Err(Error::InvalidDecomposition(_))));
        let mut d = schmidt_decompose(&PureTwoQubitState::bell());
        d.u2 = d.u1;
        assert!(reconstruct(&d).is_err());
        let mut d = schmidt_decompose(&PureTwoQubitState::bell());
        std::mem::swap(&mut d.c1, &mut d.c2);
        d.c1 *= 0.9;
        assert!(reconstruct(&d).is_err());
    }

    #[test]
    fn reconstruct_from_basis_coefficients() {
        let d = SchmidtDecomposition {
            c1: 1.0,
            c2: 0.0,
            u1: SingleQubitState::UP,
            u2: SingleQubitState::DOWN,
            v1: SingleQubitState::UP,
            v2: SingleQubitState::DOWN,
            degenerate: false,
        };
        assert_eq!(reconstruct(&d).unwrap(), PureTwoQubitState::basis(0));
    }

    #[test]
    fn probabilities_from_magnitude() {
        assert_eq!(schmidt_probs_from_magnitude(0.0).unwrap(), (0.5, 0.5));
        assert_eq!(schmidt_probs_from_magnitude(0.5).unwrap(), (1.0, 0.0));
        assert_eq!(schmidt_probs_from_magnitude(0.25).unwrap(), (0.75, 0.25));
        assert_eq!(schmidt_probs_from_magnitude(0.5 + 5e-13).unwrap(), (1.0, 0.0));
        assert!(schmidt_probs_from_magnitude(0.51).is_err());
        assert!(schmidt_probs_from_magnitude(-1e-3).is_err());
        assert!(schmidt_probs_from_magnitude(f64::NAN).is_err());
    }
}
