//! Hybrid oscillator with dissipative jumps at prime times.
//!
//! Flow: `ẋ = (x₂, −x₁ − c_damp·x₂)`. Jump: `x⁺ = (x₁, c_jump·x₂)` whenever
//! continuous time hits a prime `<= T`. Jump times are known a priori, so
//! the integrator lands on them exactly (no event detection); integration is
//! classical fixed-step 4th-order between landings. Jumps are instantaneous:
//! the sample recorded at a prime time holds the post-jump state, while the
//! pre-jump state lives in the jump-event record.

use nalgebra::Vector2;

use super::STATE_LIMIT;
use crate::arith::prime_sieve;
use crate::{Error, Result};

/// Oscillator parameters and run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridSystem {
    /// Velocity damping coefficient in the flow map.
    pub damping: f64,
    /// Velocity scale applied at each jump.
    pub jump_scale: f64,
    /// Continuous-time horizon T.
    pub horizon: f64,
    /// Integrator and sampling step h.
    pub step: f64,
}

impl Default for HybridSystem {
    fn default() -> Self {
        Self {
            damping: 0.1,
            jump_scale: 0.6,
            horizon: 50.0,
            step: 0.05,
        }
    }
}

impl HybridSystem {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("damping", self.damping),
            ("jump_scale", self.jump_scale),
            ("horizon", self.horizon),
            ("step", self.step),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("{v} is not positive and finite"),
                });
            }
        }
        Ok(())
    }

    /// Flow vector field.
    pub fn flow(&self, x: &Vector2<f64>) -> Vector2<f64> {
        Vector2::new(x[1], -x[0] - self.damping * x[1])
    }

    /// Jump map.
    pub fn jump(&self, x: &Vector2<f64>) -> Vector2<f64> {
        Vector2::new(x[0], self.jump_scale * x[1])
    }

    /// Total energy `V(x) = ½(x₁² + x₂²)`.
    pub fn energy(x: &Vector2<f64>) -> f64 {
        0.5 * (x[0] * x[0] + x[1] * x[1])
    }
}

/// One recorded sample on the hybrid time domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridSample {
    pub t: f64,
    /// Number of jumps that have occurred up to and including time `t`.
    pub jumps: u32,
    pub state: Vector2<f64>,
}

/// A jump event with the states on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEvent {
    pub t: f64,
    pub before: Vector2<f64>,
    pub after: Vector2<f64>,
}

impl JumpEvent {
    /// Energy change across the jump.
    pub fn delta_energy(&self) -> f64 {
        HybridSystem::energy(&self.after) - HybridSystem::energy(&self.before)
    }
}

/// Uniform samples plus all jump events of one hybrid run.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridTrajectory {
    samples: Vec<HybridSample>,
    jump_events: Vec<JumpEvent>,
    step: f64,
}

impl HybridTrajectory {
    pub fn samples(&self) -> &[HybridSample] {
        &self.samples
    }

    pub fn jump_events(&self) -> &[JumpEvent] {
        &self.jump_events
    }

    /// Sampling step the run was recorded with.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Per-sample Euclidean norm `(t, ‖x‖₂)`.
    pub fn euclidean_trace(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|s| (s.t, s.state.norm()))
            .collect()
    }

    /// Squared Euclidean norms of the samples.
    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.state.norm_squared()).collect()
    }
}

/// One classical 4th-order step of size `h`.
fn rk4_step(sys: &HybridSystem, x: &Vector2<f64>, h: f64) -> Vector2<f64> {
    let k1 = sys.flow(x);
    let k2 = sys.flow(&(x + k1 * (h / 2.0)));
    let k3 = sys.flow(&(x + k2 * (h / 2.0)));
    let k4 = sys.flow(&(x + k3 * h));
    x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Integrate the flow from `t0` to `t1` with steps of at most `h`,
/// subdivided evenly so the endpoint is hit exactly.
pub fn integrate_flow(
    sys: &HybridSystem,
    x0: &Vector2<f64>,
    t0: f64,
    t1: f64,
    h: f64,
) -> Vector2<f64> {
    let span = t1 - t0;
    if span <= 0.0 {
        return *x0;
    }
    let n = (span / h - 1e-12).ceil().max(1.0) as usize;
    let hs = span / n as f64;
    let mut x = *x0;
    for _ in 0..n {
        x = rk4_step(sys, &x, hs);
    }
    x
}

// Merge tolerance for deciding that a sample time coincides with a prime.
const TIME_EPS: f64 = 1e-9;

#[derive(Clone, Copy)]
struct Event {
    t: f64,
    is_sample: bool,
    is_jump: bool,
}

/// Run the hybrid system from `x0` over `[0, T]`.
///
/// Records a sample every `step` seconds and a jump event at every prime
/// time; samples that coincide with a jump hold the post-jump state and the
/// incremented jump counter.
pub fn simulate_hybrid(sys: &HybridSystem, x0: &Vector2<f64>) -> Result<HybridTrajectory> {
    sys.validate()?;
    let horizon = sys.horizon;
    let h = sys.step;

    let primes: Vec<f64> = prime_sieve(horizon.floor() as u64)
        .into_iter()
        .map(|p| p as f64)
        .collect();
    let n_samples = (horizon / h + TIME_EPS).floor() as usize;

    // merged, time-ordered event list
    let mut events: Vec<Event> = Vec::with_capacity(n_samples + primes.len() + 1);
    let mut pi = 0usize;
    for i in 0..=n_samples {
        let t = i as f64 * h;
        while pi < primes.len() && primes[pi] < t - TIME_EPS {
            events.push(Event {
                t: primes[pi],
                is_sample: false,
                is_jump: true,
            });
            pi += 1;
        }
        if pi < primes.len() && (primes[pi] - t).abs() <= TIME_EPS {
            events.push(Event {
                t: primes[pi],
                is_sample: true,
                is_jump: true,
            });
            pi += 1;
        } else {
            events.push(Event {
                t,
                is_sample: true,
                is_jump: false,
            });
        }
    }
    while pi < primes.len() {
        events.push(Event {
            t: primes[pi],
            is_sample: false,
            is_jump: true,
        });
        pi += 1;
    }

    let mut samples = Vec::with_capacity(n_samples + 1);
    let mut jump_events = Vec::new();
    let mut x = *x0;
    let mut t_cur = 0.0f64;
    let mut jumps = 0u32;
    check_state(&x, t_cur)?;
    for ev in events {
        if ev.t > t_cur + TIME_EPS {
            x = integrate_flow(sys, &x, t_cur, ev.t, h);
            t_cur = ev.t;
            check_state(&x, t_cur)?;
        }
        if ev.is_jump {
            let before = x;
            x = sys.jump(&x);
            jumps += 1;
            jump_events.push(JumpEvent {
                t: ev.t,
                before,
                after: x,
            });
        }
        if ev.is_sample {
            samples.push(HybridSample {
                t: ev.t,
                jumps,
                state: x,
            });
        }
    }

    Ok(HybridTrajectory {
        samples,
        jump_events,
        step: h,
    })
}

fn check_state(x: &Vector2<f64>, t: f64) -> Result<()> {
    if x.iter().any(|v| !v.is_finite() || v.abs() > STATE_LIMIT) {
        return Err(Error::StateDiverged {
            at: format!("t = {t}"),
            limit: STATE_LIMIT,
        });
    }
    Ok(())
}
