//! Per-step Ramanujan-kernel traces of trajectories.
//!
//! The trace at step `k` is the discounted, windowed, single-modulus
//! quadratic form
//!
//! ```text
//! E_k = (1/q) · Σ_{j=max(0,k−W+1)}^{k} c_q(k−j) · λ^{k−j} · ‖x_j‖₂²
//! ```
//!
//! reported as `sqrt(max(E_k, 0))` with a flag marking clamped steps. The
//! kernel mirrors the small-gain criterion kernel `c_q(k−j)·r^{k−j}`.

use super::discrete::DiscreteTrajectory;
use super::hybrid::HybridTrajectory;
use crate::arith::ramanujan_row;
use crate::{Error, Result};

/// Parameters of the per-step trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceConfig {
    modulus: u64,
    discount: f64,
    /// `None` means unbounded: every past sample contributes.
    pub window: Option<usize>,
    /// Whether callers should treat clamped steps as acceptable.
    pub clamp: bool,
}

impl TraceConfig {
    pub fn new(modulus: u64, discount: f64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositive { name: "q" });
        }
        if !(discount > 0.0 && discount <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("{discount} not in (0, 1]"),
            });
        }
        Ok(Self {
            modulus,
            discount,
            window: None,
            clamp: true,
        })
    }

    /// Defaults for discrete trajectories: q = 5, λ = 0.9, unbounded window.
    pub fn discrete_default() -> Self {
        Self::new(5, 0.9).expect("valid defaults")
    }

    /// Defaults for hybrid sample traces: q = 5, λ = 0.995.
    pub fn hybrid_default() -> Self {
        Self::new(5, 0.995).expect("valid defaults")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    pub fn with_window(mut self, window: Option<usize>) -> Result<Self> {
        if window == Some(0) {
            return Err(Error::NonPositive { name: "window" });
        }
        self.window = window;
        Ok(self)
    }
}

/// Trace sample for a discrete trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub step: usize,
    pub value: f64,
    pub clamped: bool,
}

/// Trace sample for a hybrid trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridTracePoint {
    pub t: f64,
    pub value: f64,
    pub clamped: bool,
}

/// Trace-norm selector for trajectory statistics.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceNorm {
    Euclidean,
    Ramanujan(TraceConfig),
}

/// Evaluate the kernel quadratic form on a precomputed energy sequence.
///
/// Returns `(value, clamped)` per index. This is the common core of the
/// discrete and hybrid traces and is also what CSV re-verification uses.
pub fn trace_energies(energies: &[f64], cfg: &TraceConfig) -> Vec<(f64, bool)> {
    let row = ramanujan_row(cfg.modulus).expect("modulus validated");
    let q = cfg.modulus as f64;
    let lambda = cfg.discount;
    let mut out = Vec::with_capacity(energies.len());
    for k in 0..energies.len() {
        let reach = match cfg.window {
            Some(w) => k.saturating_sub(w - 1),
            None => 0,
        };
        let mut quad = 0.0;
        let mut pow = 1.0;
        // lag 0 at j = k, walking backwards
        for j in (reach..=k).rev() {
            let lag = (k - j) as i64;
            quad += row.value(lag) as f64 * pow * energies[j];
            pow *= lambda;
        }
        quad /= q;
        out.push((quad.max(0.0).sqrt(), quad < 0.0));
    }
    out
}

/// Per-step Ramanujan trace of a discrete trajectory.
pub fn ramanujan_trace(traj: &DiscreteTrajectory, cfg: &TraceConfig) -> Vec<TracePoint> {
    trace_energies(&traj.energies(), cfg)
        .into_iter()
        .enumerate()
        .map(|(step, (value, clamped))| TracePoint {
            step,
            value,
            clamped,
        })
        .collect()
}

/// Ramanujan trace of a hybrid run's uniform samples.
///
/// The samples are treated as a discrete trajectory indexed by sample
/// number; non-uniform spacing is rejected.
pub fn hybrid_ramanujan_trace(
    traj: &HybridTrajectory,
    cfg: &TraceConfig,
) -> Result<Vec<HybridTracePoint>> {
    let samples = traj.samples();
    let step = traj.step();
    for (i, w) in samples.windows(2).enumerate() {
        let found = w[1].t - w[0].t;
        if (found - step).abs() > 1e-9 {
            return Err(Error::NonUniformSampling {
                index: i + 1,
                expected: step,
                found,
            });
        }
    }
    let energies = traj.energies();
    Ok(trace_energies(&energies, cfg)
        .into_iter()
        .zip(samples)
        .map(|((value, clamped), s)| HybridTracePoint {
            t: s.t,
            value,
            clamped,
        })
        .collect())
}
