//! Simulated projective spin measurements on one atom.
//!
//! Each axis is read out `shots` times with ideal ±½ projective outcomes. The
//! component estimate is the sample mean of the outcomes, `p̂ − ½`; the
//! magnitude is the plug-in Euclidean norm of the three estimates, and the
//! entropy interval comes from the delta method on that norm.
//!
//! Randomness comes from ChaCha8 with a 64-bit seed and a 64-bit stream id
//! ([`RngStream`]); a given `(seed, stream)` pair always yields the same
//! outcome sequence. Counts are drawn from an exact binomial sampler.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::entropy::{classify_entanglement, entropy_from_magnitude, Entanglement, DEFAULT_EPS};
use crate::error::{Error, Result};
use crate::qstate::{mean_spin_vector, Atom, Axis, PureTwoQubitState, C64};

/// Two-sided 95% normal quantile used for all intervals.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Stream id used for `(atom, axis)` within one measurement run.
pub fn axis_stream(atom: Atom, axis: Axis) -> u64 {
    3 * (atom.number() as u64 - 1) + axis.index() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisCounts {
    pub axis: Axis,
    pub shots: u64,
    pub plus_count: u64,
}

impl AxisCounts {
    pub fn new(axis: Axis, shots: u64, plus_count: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        if plus_count > shots {
            return Err(Error::CountOverflow {
                plus: plus_count,
                shots,
            });
        }
        Ok(Self {
            axis,
            shots,
            plus_count,
        })
    }

    pub fn plus_fraction(&self) -> f64 {
        self.plus_count as f64 / self.shots as f64
    }
}

/// Probability of the `+½` outcome when measuring `J_axis` on `atom`:
/// `½ + ⟨J_axis⟩`.
pub fn axis_outcome_prob(psi: &PureTwoQubitState, atom: Atom, axis: Axis) -> Result<f64> {
    let j = mean_spin_vector(psi, atom)?;
    Ok((0.5 + j.component(axis)).clamp(0.0, 1.0))
}

pub fn simulate_counts(
    psi: &PureTwoQubitState,
    atom: Atom,
    axis: Axis,
    shots: u64,
    rng: &RngStream,
) -> Result<AxisCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let p = axis_outcome_prob(psi, atom, axis)?;
    let plus = sample_binomial(shots, p, rng);
    AxisCounts::new(axis, shots, plus)
}

pub(crate) fn sample_binomial(shots: u64, p: f64, rng: &RngStream) -> u64 {
    // p is clamped to [0, 1] by the caller, so construction cannot fail.
    let dist = Binomial::new(shots, p).expect("probability in [0, 1]");
    dist.sample(&mut rng.rng())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisEstimate {
    pub axis: Axis,
    pub value: f64,
    pub std_err: f64,
}

impl AxisEstimate {
    pub fn from_counts(c: &AxisCounts) -> Self {
        let p = c.plus_fraction();
        Self {
            axis: c.axis,
            value: p - 0.5,
            std_err: (p * (1.0 - p) / c.shots as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinEstimate {
    pub x: AxisEstimate,
    pub y: AxisEstimate,
    pub z: AxisEstimate,
}

impl SpinEstimate {
    /// Builds from point values and standard errors directly, for callers
    /// with their own estimates.
    pub fn from_values(values: [f64; 3], std_errs: [f64; 3]) -> Self {
        let e = |axis: Axis| AxisEstimate {
            axis,
            value: values[axis.index()],
            std_err: std_errs[axis.index()],
        };
        Self {
            x: e(Axis::X),
            y: e(Axis::Y),
            z: e(Axis::Z),
        }
    }

    pub fn values(&self) -> [f64; 3] {
        [self.x.value, self.y.value, self.z.value]
    }

    pub fn std_errs(&self) -> [f64; 3] {
        [self.x.std_err, self.y.std_err, self.z.std_err]
    }
}

pub fn estimate_mean_spin(cx: &AxisCounts, cy: &AxisCounts, cz: &AxisCounts) -> Result<SpinEstimate> {
    for (expected, c) in [(Axis::X, cx), (Axis::Y, cy), (Axis::Z, cz)] {
        if c.axis != expected {
            return Err(Error::AxisMismatch {
                expected,
                found: c.axis,
            });
        }
    }
    Ok(SpinEstimate {
        x: AxisEstimate::from_counts(cx),
        y: AxisEstimate::from_counts(cy),
        z: AxisEstimate::from_counts(cz),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Norm of the component estimates, unclamped.
    pub raw_magnitude: f64,
    /// `raw_magnitude` clamped to `[0, ½]`.
    pub magnitude_estimate: f64,
    /// Delta-method standard error of the norm.
    pub magnitude_std_err: f64,
    pub entropy_estimate: f64,
    /// 95% interval on the entropy, `low ≤ estimate ≤ high`, inside `[0, 1]`.
    pub entropy_interval: (f64, f64),
    pub entangled: bool,
}

/// Plug-in entropy estimate with a delta-method 95% interval.
///
/// The norm's gradient is `ĵ/r̂`, so `SE(r̂)² = Σ (ĵ_α/r̂)² SE_α²`. The
/// magnitude interval `r̂ ± 1.96·SE(r̂)` is clamped to `[0, ½]` and mapped
/// through the (decreasing) entropy curve. Near `r̂ = 0` the gradient is
/// undefined; when `r̂` is below the combined per-axis error the upper end is
/// widened to 1.
pub fn estimate_entropy(est: &SpinEstimate) -> EntropyEstimate {
    let values = est.values();
    let errs = est.std_errs();
    let raw = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let combined_se = errs.iter().map(|e| e * e).sum::<f64>().sqrt();

    let se_r = if raw > 0.0 {
        values
            .iter()
            .zip(errs.iter())
            .map(|(v, e)| (v / raw * e).powi(2))
            .sum::<f64>()
            .sqrt()
    } else {
        combined_se
    };

    let r = raw.clamp(0.0, 0.5);
    let r_low = (raw - Z_95 * se_r).clamp(0.0, 0.5);
    let r_high = (raw + Z_95 * se_r).clamp(0.0, 0.5);

    let s = entropy_from_magnitude(r).expect("clamped magnitude");
    let s_low = entropy_from_magnitude(r_high).expect("clamped magnitude");
    let mut s_high = entropy_from_magnitude(r_low).expect("clamped magnitude");
    if raw < combined_se {
        s_high = 1.0;
    }

    let eps = (Z_95 * se_r).max(DEFAULT_EPS);
    EntropyEstimate {
        raw_magnitude: raw,
        magnitude_estimate: r,
        magnitude_std_err: se_r,
        entropy_estimate: s,
        entropy_interval: (s_low.min(s), s_high.max(s)),
        entangled: classify_entanglement(r, eps) == Entanglement::Entangled,
    }
}

/// One complete three-axis measurement run on one atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementEstimate {
    pub atom: Atom,
    pub seed: u64,
    pub shots_per_axis: u64,
    pub total_shots: u64,
    pub counts: [AxisCounts; 3],
    pub spin: SpinEstimate,
    pub entropy: EntropyEstimate,
}

/// Measures X, Y and Z `shots_per_axis` times each. Axis `α` of atom `a`
/// draws from stream [`axis_stream`]`(a, α)` under `seed`.
pub fn measure(
    psi: &PureTwoQubitState,
    atom: Atom,
    shots_per_axis: u64,
    seed: u64,
) -> Result<MeasurementEstimate> {
    let mut counts = Vec::with_capacity(3);
    for axis in Axis::ALL {
        let rng = RngStream::new(seed, axis_stream(atom, axis));
        counts.push(simulate_counts(psi, atom, axis, shots_per_axis, &rng)?);
    }
    let counts = [counts[0], counts[1], counts[2]];
    let spin = estimate_mean_spin(&counts[0], &counts[1], &counts[2])?;
    Ok(MeasurementEstimate {
        atom,
        seed,
        shots_per_axis,
        total_shots: 3 * shots_per_axis,
        counts,
        spin,
        entropy: estimate_entropy(&spin),
    })
}

/// Four i.i.d. standard complex Gaussians, normalized: Haar measure on pure
/// two-qubit states.
pub fn haar_random_state(rng: &RngStream) -> PureTwoQubitState {
    let mut g = rng.rng();
    loop {
        let mut amps = [C64::new(0.0, 0.0); 4];
        for a in amps.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut g);
            let im: f64 = StandardNormal.sample(&mut g);
            *a = C64::new(re, im);
        }
        // All-zero draws have probability zero; retry rather than divide by it.
        if let Ok(s) = PureTwoQubitState::new_renormalized(amps) {
            return s;
        }
    }
}
