//! Batch workloads: Haar-random equivalence checks and multi-seed
//! measurement sweeps. Every item owns its own RNG stream, so results do not
//! depend on the execution mode.

use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_eigen, entropy_from_magnitude};
use crate::error::Result;
use crate::exec::{map_indices, try_map_indices, Execution};
use crate::measurement::{haar_random_state, measure, MeasurementEstimate, RngStream};
use crate::qstate::{mean_spin_vector, partial_trace, spin_magnitude, Atom, PureTwoQubitState};
use crate::schmidt::{reconstruct, schmidt_decompose};

/// `count` Haar-random states; state `i` uses stream `i` under `seed`.
pub fn haar_states(count: usize, seed: u64, exec: Execution) -> Vec<PureTwoQubitState> {
    map_indices(exec, count, |i| {
        haar_random_state(&RngStream::new(seed, i as u64))
    })
}

/// Discrepancies between the independent computation routes for one state.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StateCheck {
    /// `|S_eigen − S(r)|` per atom.
    pub entropy_gap: [f64; 2],
    /// `|r₁ − r₂|`
    pub magnitude_gap: f64,
    /// `|(c1² − c2²)/2 − r|`, worst atom.
    pub schmidt_gap: f64,
    /// Decompose → reconstruct fidelity.
    pub roundtrip_fidelity: f64,
}

pub fn check_state(psi: &PureTwoQubitState) -> Result<StateCheck> {
    let mut entropy_gap = [0.0; 2];
    let mut mags = [0.0; 2];
    for (k, atom) in [Atom::One, Atom::Two].into_iter().enumerate() {
        let r = spin_magnitude(&mean_spin_vector(psi, atom)?);
        let s_eig = entropy_eigen(&partial_trace(psi, atom));
        entropy_gap[k] = (s_eig - entropy_from_magnitude(r)?).abs();
        mags[k] = r;
    }
    let d = schmidt_decompose(psi);
    let (p1, p2) = d.probabilities();
    let half_gap = (p1 - p2) / 2.0;
    let fidelity = reconstruct(&d)?.fidelity(psi);
    Ok(StateCheck {
        entropy_gap,
        magnitude_gap: (mags[0] - mags[1]).abs(),
        schmidt_gap: (half_gap - mags[0]).abs().max((half_gap - mags[1]).abs()),
        roundtrip_fidelity: fidelity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceSummary {
    pub count: usize,
    pub seed: u64,
    pub max_entropy_gap: f64,
    pub max_entropy_gap_atom1: f64,
    pub max_entropy_gap_atom2: f64,
    pub max_magnitude_gap: f64,
    pub max_schmidt_gap: f64,
    pub min_roundtrip_fidelity: f64,
}

impl EquivalenceSummary {
    fn from_checks(seed: u64, checks: &[StateCheck]) -> Self {
        let max = |f: &dyn Fn(&StateCheck) -> f64| checks.iter().map(f).fold(0.0, f64::max);
        let a1 = max(&|c| c.entropy_gap[0]);
        let a2 = max(&|c| c.entropy_gap[1]);
        Self {
            count: checks.len(),
            seed,
            max_entropy_gap: a1.max(a2),
            max_entropy_gap_atom1: a1,
            max_entropy_gap_atom2: a2,
            max_magnitude_gap: max(&|c| c.magnitude_gap),
            max_schmidt_gap: max(&|c| c.schmidt_gap),
            min_roundtrip_fidelity: checks
                .iter()
                .map(|c| c.roundtrip_fidelity)
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Runs [`check_state`] over `count` Haar-random states and reduces the
/// worst case of each discrepancy.
pub fn equivalence_check(count: usize, seed: u64, exec: Execution) -> Result<EquivalenceSummary> {
    let checks = try_map_indices(exec, count, |i| {
        check_state(&haar_random_state(&RngStream::new(seed, i as u64)))
    })?;
    Ok(EquivalenceSummary::from_checks(seed, &checks))
}

/// One measurement run per seed in `seeds`, same state and atom.
pub fn measurement_sweep(
    psi: &PureTwoQubitState,
    atom: Atom,
    shots_per_axis: u64,
    seeds: std::ops::Range<u64>,
    exec: Execution,
) -> Result<Vec<MeasurementEstimate>> {
    let start = seeds.start;
    let n = seeds.end.saturating_sub(start) as usize;
    try_map_indices(exec, n, |i| measure(psi, atom, shots_per_axis, start + i as u64))
}

/// Root-mean-square error of the clamped magnitude estimates.
pub fn magnitude_rmse(runs: &[MeasurementEstimate], truth: f64) -> f64 {
    let sq: f64 = runs
        .iter()
        .map(|m| (m.entropy.magnitude_estimate - truth).powi(2))
        .sum();
    (sq / runs.len() as f64).sqrt()
}

/// Fraction of runs whose entropy interval contains `truth`.
pub fn interval_coverage(runs: &[MeasurementEstimate], truth: f64) -> f64 {
    let hits = runs
        .iter()
        .filter(|m| {
            let (lo, hi) = m.entropy.entropy_interval;
            lo <= truth && truth <= hi
        })
        .count();
    hits as f64 / runs.len() as f64
}
