//! Ramanujan-sum arithmetic, the associated inner-product space, small-gain
//! stability certificates, and reference simulators for discrete and hybrid
//! systems driven by arithmetically structured disturbances.
//!
//! The crate is organized around four layers:
//!
//! * [`arith`] — exact integer number theory: primes, factorization, Euler's
//!   totient, the Möbius function, and Ramanujan sums `c_q(n)` computed both
//!   by the Hölder closed form and by the defining exponential sum.
//! * [`space`] — finitely supported sequences with the truncated Ramanujan
//!   inner product, Cesàro weights, projection onto the Ramanujan basis, and
//!   the coefficient-side (Parseval) norm.
//! * [`cert`] — small-gain quantities `G` for periodic arithmetic kernels,
//!   stability certificates with uniform and disturbance bounds, a sampled
//!   gain estimator, and a discrete Lyapunov solver for the Euclidean
//!   comparison.
//! * [`sim`] — simulators for a Schur-stable linear system under
//!   prime-indexed disturbances and a lightly damped oscillator with jumps at
//!   prime times, plus Euclidean/Ramanujan trajectory traces, Lyapunov
//!   condition checkers, and the residue-class filtering demo.
//!
//! [`io`] holds the CSV formats consumed and emitted by the command-line
//! frontend, and [`verify`] bundles the invariant suites behind a single
//! entry point.

pub mod arith;
pub mod cert;
pub mod io;
pub mod sim;
pub mod space;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument that must be >= 1 was zero.
    #[error("{name} must be a positive integer")]
    NonPositive { name: &'static str },

    /// The floating-point exponential sum did not land on an integer.
    ///
    /// `c_q(n)` is integer-valued, so a residual beyond the tolerance means
    /// the summation itself went numerically wrong.
    #[error("exponential sum for c_{q}({n}) is {residual:e} away from the nearest integer")]
    RoundingResidual { q: u64, n: i64, residual: f64 },

    /// A parameter was outside its documented range.
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Sequence input with no stored values where at least one is required.
    #[error("sequence has no stored values")]
    EmptySequence,

    /// The common projection period exceeds the supported bound.
    #[error("projection period {length} exceeds the supported maximum {max}")]
    PeriodTooLong { length: u128, max: u64 },

    /// Vector/matrix dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A simulated state left the finite range (overflow guard).
    #[error("state diverged at {at}: component exceeds {limit:e} or is non-finite")]
    StateDiverged { at: String, limit: f64 },

    /// Fixed-point Lyapunov iteration failed to converge.
    #[error("discrete Lyapunov iteration did not converge after {iterations} iterations; spectral radius is likely >= 1")]
    LyapunovNotConvergent { iterations: usize },

    /// Matrix order above the supported small-matrix bound.
    #[error("matrix dimension {n} exceeds the supported maximum {max}")]
    MatrixTooLarge { n: usize, max: usize },

    /// Bounds were requested from a certificate with G >= 1.
    #[error("certificate is not stable (G = {gain}); no bounds are defined")]
    UnstableCertificate { gain: f64 },

    /// Hybrid trace input whose samples are not on a uniform grid.
    #[error("samples are not uniformly spaced: step {found} at index {index}, expected {expected}")]
    NonUniformSampling {
        index: usize,
        expected: f64,
        found: f64,
    },

    /// Malformed CSV input.
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
