//! Two-level-atom state algebra.
//!
//! Single-atom vectors live in the `{|+½⟩, |−½⟩}` basis (upper level first).
//! Two-atom amplitudes are stored row-major over `(m1, m2)`:
//!
//! | index | atom 1 | atom 2 |
//! |-------|--------|--------|
//! | 0     | +½     | +½     |
//! | 1     | +½     | −½     |
//! | 2     | −½     | +½     |
//! | 3     | −½     | −½     |
//!
//! so `index = 2 * (atom 1 is −½) + (atom 2 is −½)`. All quantities use ħ = 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// 2×2 complex matrix, `m[row][col]`.
pub type Mat2 = [[C64; 2]; 2];

/// Tolerance on `Σ|a|² = 1` when ingesting amplitudes.
pub const NORM_TOL: f64 = 1e-9;
/// Largest imaginary part tolerated on an expectation value of a Hermitian operator.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    One,
    Two,
}

impl Atom {
    pub fn other(self) -> Atom {
        match self {
            Atom::One => Atom::Two,
            Atom::Two => Atom::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Atom::One => 1,
            Atom::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Atom> {
        match n {
            1 => Some(Atom::One),
            2 => Some(Atom::Two),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// 2×2 matrix helpers

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

pub fn mat_scale(s: C64, a: &Mat2) -> Mat2 {
    [[s * a[0][0], s * a[0][1]], [s * a[1][0], s * a[1][1]]]
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn trace(a: &Mat2) -> C64 {
    a[0][0] + a[1][1]
}

pub fn determinant(a: &Mat2) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entrywise modulus of `a − a†`.
pub fn hermiticity_defect(a: &Mat2) -> f64 {
    let d = mat_sub(a, &adjoint(a));
    d.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    mat_sub(a, b)
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues `(λ₊, λ₋)` of a Hermitian 2×2 matrix, `λ₊ ≥ λ₋`.
///
/// Only the real diagonal and the upper off-diagonal entry are read.
pub fn hermitian_eigenvalues(a: &Mat2) -> (f64, f64) {
    let (mid, half_gap) = hermitian_mid_and_gap(a);
    (mid + half_gap, mid - half_gap)
}

/// `(Tr/2, √((Tr/2)² − det))`, with the radicand written as
/// `((a−d)/2)² + |b|²` so it can't go negative.
fn hermitian_mid_and_gap(a: &Mat2) -> (f64, f64) {
    let p = a[0][0].re;
    let q = a[1][1].re;
    let b = a[0][1];
    let half_diff = 0.5 * (p - q);
    ((p + q) * 0.5, half_diff.hypot(b.norm()))
}

/// Unit eigenvector for the larger eigenvalue of a Hermitian 2×2 matrix.
///
/// Picks whichever of the two textbook eigenvector forms avoids cancellation.
/// Fully degenerate matrices (multiple of the identity) return `|+½⟩`.
pub fn hermitian_top_eigenvector(a: &Mat2) -> [C64; 2] {
    let p = a[0][0].re;
    let q = a[1][1].re;
    let b = a[0][1];
    let (_, h) = hermitian_mid_and_gap(a);
    let half_diff = 0.5 * (p - q);
    let v = if h == 0.0 {
        [ONE, ZERO]
    } else if half_diff >= 0.0 {
        [C64::new(half_diff + h, 0.0), b.conj()]
    } else {
        [b, C64::new(-half_diff + h, 0.0)]
    };
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

// ---------------------------------------------------------------------------
// spin operators

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator {
    pub axis: Axis,
    pub matrix: Mat2,
}

/// `J_axis` for one two-level atom in the `{|+½⟩, |−½⟩}` basis.
pub fn spin_operator(axis: Axis) -> SpinOperator {
    let h = 0.5;
    let matrix = match axis {
        Axis::X => [[ZERO, C64::new(h, 0.0)], [C64::new(h, 0.0), ZERO]],
        Axis::Y => [[ZERO, C64::new(0.0, -h)], [C64::new(0.0, h), ZERO]],
        Axis::Z => [[C64::new(h, 0.0), ZERO], [ZERO, C64::new(-h, 0.0)]],
    };
    SpinOperator { axis, matrix }
}

/// `ab − ba`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

// ---------------------------------------------------------------------------
// states

fn check_finite(zs: &[C64]) -> Result<()> {
    if zs.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Normalized state of one atom: `up·|+½⟩ + down·|−½⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitState {
    up: C64,
    down: C64,
}

impl SingleQubitState {
    pub const UP: SingleQubitState = SingleQubitState { up: ONE, down: ZERO };
    pub const DOWN: SingleQubitState = SingleQubitState { up: ZERO, down: ONE };

    pub fn new(up: C64, down: C64) -> Result<Self> {
        check_finite(&[up, down])?;
        let n2 = up.norm_sqr() + down.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { up, down })
    }

    /// Rescales to unit norm; fails only on the zero vector or non-finite input.
    pub fn new_renormalized(up: C64, down: C64) -> Result<Self> {
        check_finite(&[up, down])?;
        let n = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if n < 1e-300 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(Self {
            up: up / n,
            down: down / n,
        })
    }

    pub(crate) fn from_parts_unchecked(v: [C64; 2]) -> Self {
        Self { up: v[0], down: v[1] }
    }

    pub fn up(&self) -> C64 {
        self.up
    }

    pub fn down(&self) -> C64 {
        self.down
    }

    pub fn components(&self) -> [C64; 2] {
        [self.up, self.down]
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &SingleQubitState) -> C64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    /// The unit vector orthogonal to `self`, `(−down*, up*)`.
    pub fn orthogonal(&self) -> SingleQubitState {
        SingleQubitState {
            up: -self.down.conj(),
            down: self.up.conj(),
        }
    }

    pub fn apply(&self, u: &Mat2) -> SingleQubitState {
        SingleQubitState {
            up: u[0][0] * self.up + u[0][1] * self.down,
            down: u[1][0] * self.up + u[1][1] * self.down,
        }
    }
}

/// Pure state of two atoms; see the module docs for amplitude ordering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureTwoQubitState {
    amps: [C64; 4],
}

/// Result of [`superpose`]: the normalized state and the factor that was
/// applied to restore unit norm (1 for orthogonal, correctly weighted inputs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superposition {
    pub state: PureTwoQubitState,
    pub renormalization: f64,
}

impl PureTwoQubitState {
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        check_finite(&amps)?;
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amps })
    }

    pub fn new_renormalized(amps: [C64; 4]) -> Result<Self> {
        check_finite(&amps)?;
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if n2 < 1e-300 {
            return Err(Error::NotNormalized(n2));
        }
        let n = n2.sqrt();
        Ok(Self {
            amps: amps.map(|a| a / n),
        })
    }

    pub fn from_real(amps: [f64; 4]) -> Result<Self> {
        Self::new(amps.map(|a| C64::new(a, 0.0)))
    }

    /// Product basis state `|k⟩`, `k < 4`.
    pub fn basis(k: usize) -> Self {
        let mut amps = [ZERO; 4];
        amps[k] = ONE;
        Self { amps }
    }

    /// `(|++⟩ + |−−⟩)/√2`
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)],
        }
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amps
    }

    pub fn amp(&self, m1_down: usize, m2_down: usize) -> C64 {
        self.amps[2 * m1_down + m2_down]
    }

    /// Coefficient matrix `M[a][b]` = amplitude of (atom 1 = a, atom 2 = b).
    pub fn coefficient_matrix(&self) -> Mat2 {
        [[self.amps[0], self.amps[1]], [self.amps[2], self.amps[3]]]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureTwoQubitState) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`; 1 for states equal up to global phase.
    pub fn fidelity(&self, other: &PureTwoQubitState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Applies a 2×2 matrix to one atom (`U⊗I` or `I⊗U`). No normalization
    /// check; callers pass unitaries.
    pub fn apply_local(&self, atom: Atom, u: &Mat2) -> PureTwoQubitState {
        let a = &self.amps;
        let amps = match atom {
            Atom::One => [
                u[0][0] * a[0] + u[0][1] * a[2],
                u[0][0] * a[1] + u[0][1] * a[3],
                u[1][0] * a[0] + u[1][1] * a[2],
                u[1][0] * a[1] + u[1][1] * a[3],
            ],
            Atom::Two => [
                u[0][0] * a[0] + u[0][1] * a[1],
                u[1][0] * a[0] + u[1][1] * a[1],
                u[0][0] * a[2] + u[0][1] * a[3],
                u[1][0] * a[2] + u[1][1] * a[3],
            ],
        };
        PureTwoQubitState { amps }
    }
}

pub fn tensor_product_state(s1: &SingleQubitState, s2: &SingleQubitState) -> PureTwoQubitState {
    let a = s1.components();
    let b = s2.components();
    PureTwoQubitState {
        amps: [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]],
    }
}

/// `c1·p1 + c2·p2`, renormalized. The applied correction is reported so that
/// non-orthogonal or mis-weighted inputs are visible to the caller.
pub fn superpose(c1: f64, p1: &PureTwoQubitState, c2: f64, p2: &PureTwoQubitState) -> Result<Superposition> {
    if !(c1.is_finite() && c2.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut amps = [ZERO; 4];
    for (k, a) in amps.iter_mut().enumerate() {
        *a = p1.amps[k] * c1 + p2.amps[k] * c2;
    }
    let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if n < 1e-12 {
        return Err(Error::DestructiveCancellation(n));
    }
    let scale = 1.0 / n;
    Ok(Superposition {
        state: PureTwoQubitState {
            amps: amps.map(|a| a * scale),
        },
        renormalization: scale,
    })
}

// ---------------------------------------------------------------------------
// reduced states

/// Reduced (one-atom) density matrix: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix1Q {
    matrix: Mat2,
}

impl DensityMatrix1Q {
    pub fn new(matrix: Mat2) -> Result<Self> {
        check_finite(&[matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]])?;
        let herm = hermiticity_defect(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::NonHermitian(herm));
        }
        let tr = trace(&matrix);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        let (_, low) = hermitian_eigenvalues(&matrix);
        if low < -PSD_TOL {
            return Err(Error::NegativeEigenvalue(low));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// `(λ₊, λ₋)`
    pub fn eigenvalues(&self) -> (f64, f64) {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `Tr(ρ·op)`, imaginary part kept.
    pub fn expectation(&self, op: &Mat2) -> C64 {
        trace(&mat_mul(&self.matrix, op))
    }
}

/// `Tr_other(|Ψ⟩⟨Ψ|)` for the requested atom.
pub fn partial_trace(psi: &PureTwoQubitState, atom: Atom) -> DensityMatrix1Q {
    let m = psi.coefficient_matrix();
    let mut rho = [[ZERO; 2]; 2];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = match atom {
                // (M M†)[i][j]
                Atom::One => m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj(),
                // (Mᵀ M*)[i][j]
                Atom::Two => m[0][i] * m[0][j].conj() + m[1][i] * m[1][j].conj(),
            };
        }
    }
    // Force exact Hermiticity; the off-diagonal pair is conjugate up to rounding.
    rho[0][0].im = 0.0;
    rho[1][1].im = 0.0;
    rho[1][0] = rho[0][1].conj();
    DensityMatrix1Q { matrix: rho }
}

/// `⟨Ψ|O⊗I|Ψ⟩` (or `I⊗O`) evaluated directly on the four amplitudes,
/// without forming a reduced state.
pub fn expectation_local(psi: &PureTwoQubitState, atom: Atom, op: &Mat2) -> C64 {
    let applied = psi.apply_local(atom, op);
    psi.inner(&applied)
}

// ---------------------------------------------------------------------------
// mean spin vector

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MeanSpinVector {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl MeanSpinVector {
    pub fn new(jx: f64, jy: f64, jz: f64) -> Self {
        Self { jx, jy, jz }
    }

    pub fn component(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.jx,
            Axis::Y => self.jy,
            Axis::Z => self.jz,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.jx, self.jy, self.jz]
    }

    pub fn magnitude(&self) -> f64 {
        spin_magnitude(self)
    }
}

/// Euclidean norm of the mean spin vector.
pub fn spin_magnitude(j: &MeanSpinVector) -> f64 {
    (j.jx * j.jx + j.jy * j.jy + j.jz * j.jz).sqrt()
}

/// `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)` of one atom, computed as `Tr(ρ_atom · J_α)`.
pub fn mean_spin_vector(psi: &PureTwoQubitState, atom: Atom) -> Result<MeanSpinVector> {
    let rho = partial_trace(psi, atom);
    let mut out = [0.0; 3];
    for axis in Axis::ALL {
        let e = rho.expectation(&spin_operator(axis).matrix);
        if e.im.abs() > IMAG_RESIDUE_TOL {
            return Err(Error::ImaginaryResidue(e.im));
        }
        out[axis.index()] = e.re;
    }
    Ok(MeanSpinVector::new(out[0], out[1], out[2]))
}

// ---------------------------------------------------------------------------
// explicit-coefficient constraints

/// The ten numbers that write a two-atom state in Schmidt form over the
/// `{m1, m2}` basis: `C1·u1⊗v1 + C2·u2⊗v2` with
/// `u1 = (c3, c4)`, `v1 = (c5, c6)`, `u2 = (c7, c8)`, `v2 = (c9, c10)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub u1: [C64; 2],
    pub v1: [C64; 2],
    pub u2: [C64; 2],
    pub v2: [C64; 2],
}

impl ExplicitCoefficients {
    /// The state these coefficients describe, without any validation.
    pub fn raw_amplitudes(&self) -> [C64; 4] {
        let t = |u: &[C64; 2], v: &[C64; 2]| [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]];
        let a = t(&self.u1, &self.v1);
        let b = t(&self.u2, &self.v2);
        let mut out = [ZERO; 4];
        for k in 0..4 {
            out[k] = a[k] * self.c1 + b[k] * self.c2;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// `|c3|² + |c4|² = 1`
    NormU1,
    /// `|c5|² + |c6|² = 1`
    NormV1,
    /// `|c7|² + |c8|² = 1`
    NormU2,
    /// `|c9|² + |c10|² = 1`
    NormV2,
    /// `C1² + C2² = 1`
    SchmidtNorm,
    /// `c3·c7* = −c4·c8*`
    OrthogonalityAtom1,
    /// `c5·c9* = −c6·c10*`
    OrthogonalityAtom2,
    /// `|c3|² = |c8|²`
    ModulusC3C8,
    /// `|c4|² = |c7|²`
    ModulusC4C7,
    /// `|c6|² = |c9|²`
    ModulusC6C9,
    /// `|c5|² = |c10|²`
    ModulusC5C10,
    /// `|⟨u1|u2⟩| = 0`
    InnerProductAtom1,
    /// `|⟨v1|v2⟩| = 0`
    InnerProductAtom2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub tolerance: f64,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, constraint: Constraint) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.constraint == constraint)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Residuals of every normalization and orthogonality condition on the ten
/// coefficients, plus the modulus equalities they imply.
pub fn validate_constraints(c: &ExplicitCoefficients) -> ConstraintReport {
    validate_constraints_with_tol(c, NORM_TOL)
}

pub fn validate_constraints_with_tol(c: &ExplicitCoefficients, tol: f64) -> ConstraintReport {
    let [c3, c4] = c.u1;
    let [c5, c6] = c.v1;
    let [c7, c8] = c.u2;
    let [c9, c10] = c.v2;
    let norm = |a: C64, b: C64| (a.norm_sqr() + b.norm_sqr() - 1.0).abs();
    let residuals = [
        (Constraint::NormU1, norm(c3, c4)),
        (Constraint::NormV1, norm(c5, c6)),
        (Constraint::NormU2, norm(c7, c8)),
        (Constraint::NormV2, norm(c9, c10)),
        (Constraint::SchmidtNorm, (c.c1 * c.c1 + c.c2 * c.c2 - 1.0).abs()),
        (
            Constraint::OrthogonalityAtom1,
            (c3 * c7.conj() + c4 * c8.conj()).norm(),
        ),
        (
            Constraint::OrthogonalityAtom2,
            (c5 * c9.conj() + c6 * c10.conj()).norm(),
        ),
        (Constraint::ModulusC3C8, (c3.norm_sqr() - c8.norm_sqr()).abs()),
        (Constraint::ModulusC4C7, (c4.norm_sqr() - c7.norm_sqr()).abs()),
        (Constraint::ModulusC6C9, (c6.norm_sqr() - c9.norm_sqr()).abs()),
        (Constraint::ModulusC5C10, (c5.norm_sqr() - c10.norm_sqr()).abs()),
        (
            Constraint::InnerProductAtom1,
            (c3.conj() * c7 + c4.conj() * c8).norm(),
        ),
        (
            Constraint::InnerProductAtom2,
            (c5.conj() * c9 + c6.conj() * c10).norm(),
        ),
    ];
    ConstraintReport {
        tolerance: tol,
        checks: residuals
            .into_iter()
            .map(|(constraint, residual)| ConstraintCheck {
                constraint,
                residual,
                passed: residual <= tol,
            })
            .collect(),
    }
}
