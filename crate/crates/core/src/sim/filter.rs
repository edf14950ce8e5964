//! Residue-class disturbance filtering demo.
//!
//! A disturbance injected on the class `k ≡ r0 (mod m)` meets the analysis
//! kernel `c_q` only at indices `r0 + m·j`. When `q = m` and
//! `gcd(r0, m) = 1`, every such weight equals `μ(m)`; in particular a
//! squarefree-violating modulus (μ = 0) makes the disturbance invisible to
//! the kernel, and its projection coefficient on modulus `q` vanishes.

use crate::arith::{gcd, moebius, ramanujan_row};
use crate::space::{project_coefficients, FiniteSequence};
use crate::{Error, Result};

/// Everything the demo computes for one `(m, r0, q)` choice.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterDemoReport {
    pub modulus_disturbance: u64,
    pub residue: u64,
    pub modulus_analysis: u64,
    /// `(j, n, c_q(n))` for `n = r0 + m·j`, `j = 0..=horizon`.
    pub kernel_weights: Vec<(u64, u64, i64)>,
    /// `μ(m)`, present when `q = m` and `gcd(r0, m) = 1`.
    pub expected_moebius: Option<i64>,
    /// Whether all kernel weights equal `μ(m)` (same condition).
    pub all_weights_match: Option<bool>,
    /// Projection coefficient `α_q` of the period-m indicator disturbance.
    pub projection_coefficient: f64,
}

/// Run the demo: kernel weights along the disturbance class, the Möbius
/// identity when it applies, and the projection coefficient.
pub fn filter_demo(
    modulus_disturbance: u64,
    residue: u64,
    modulus_analysis: u64,
    horizon: u64,
) -> Result<FilterDemoReport> {
    if modulus_disturbance == 0 {
        return Err(Error::NonPositive { name: "m" });
    }
    if modulus_analysis == 0 {
        return Err(Error::NonPositive { name: "q" });
    }
    if residue >= modulus_disturbance {
        return Err(Error::InvalidParameter {
            name: "r0",
            reason: format!("residue {residue} not in [0, {modulus_disturbance})"),
        });
    }

    let row = ramanujan_row(modulus_analysis)?;
    let mut kernel_weights = Vec::with_capacity(horizon as usize + 1);
    for j in 0..=horizon {
        let n = residue + modulus_disturbance * j;
        kernel_weights.push((j, n, row.value(n as i64)));
    }

    let coprime_case =
        modulus_analysis == modulus_disturbance && gcd(residue, modulus_disturbance) == 1;
    let expected_moebius = if coprime_case {
        Some(moebius(modulus_disturbance)?)
    } else {
        None
    };
    let all_weights_match = expected_moebius
        .map(|mu| kernel_weights.iter().all(|&(_, _, w)| w == mu));

    // indicator of the class over one period of length m
    let mut period = vec![0.0; modulus_disturbance as usize];
    period[residue as usize] = 1.0;
    let indicator = FiniteSequence::new(0, period);
    let coefficients = project_coefficients(&indicator, modulus_analysis)?;
    let projection_coefficient = coefficients.get(modulus_analysis);

    Ok(FilterDemoReport {
        modulus_disturbance,
        residue,
        modulus_analysis,
        kernel_weights,
        expected_moebius,
        all_weights_match,
        projection_coefficient,
    })
}
