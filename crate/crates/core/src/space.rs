//! Sequences over the integers and the two faces of the Ramanujan inner
//! product: the truncated residue-class form and the coefficient-side
//! Parseval form.
//!
//! The defining inner product is a limit over truncation depths Q; only the
//! finite-Q object is computable, so Q is an explicit parameter everywhere.
//! For a fixed support point `n`, grouping the residue-class sums over
//! `q = 1..=Q` collapses to the Cesàro weight
//! `w_Q(n) = (1/Q)·Σ_{q<=Q} c_q(n)/q`, which is how the truncated forms are
//! evaluated here.
//!
//! The finite-Q quadratic form may be negative (the kernel is signed), so
//! norms clamp at zero and report that they did.

use std::collections::BTreeMap;

use crate::arith::{self, SieveTables};
use crate::{Error, Result};

/// A finitely supported real sequence: values for indices
/// `offset..offset+len`, zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSequence {
    offset: i64,
    values: Vec<f64>,
}

impl FiniteSequence {
    pub fn new(offset: i64, values: Vec<f64>) -> Self {
        Self { offset, values }
    }

    /// Unit impulse at index `n`.
    pub fn impulse(n: i64) -> Self {
        Self {
            offset: n,
            values: vec![1.0],
        }
    }

    /// Build from sparse `(index, value)` pairs; missing indices are zero.
    pub fn from_pairs(pairs: &[(i64, f64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySequence);
        }
        let lo = pairs.iter().map(|&(n, _)| n).min().unwrap();
        let hi = pairs.iter().map(|&(n, _)| n).max().unwrap();
        let len = usize::try_from(hi - lo + 1).map_err(|_| Error::InvalidParameter {
            name: "pairs",
            reason: "index span too large".into(),
        })?;
        let mut values = vec![0.0; len];
        for &(n, v) in pairs {
            values[(n - lo) as usize] = v;
        }
        Ok(Self { offset: lo, values })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at an arbitrary index (zero outside the stored span).
    pub fn value_at(&self, n: i64) -> f64 {
        if n < self.offset {
            return 0.0;
        }
        let i = (n - self.offset) as u64;
        if i < self.values.len() as u64 {
            self.values[i as usize]
        } else {
            0.0
        }
    }

    /// Stored `(index, value)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.offset + i as i64, v))
    }

    /// Euclidean (ℓ²) norm of the sequence.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Periodic extension: the stored block repeated over all of ℤ.
    fn periodic_value(&self, n: i64) -> f64 {
        let len = self.values.len() as i64;
        self.values[(n - self.offset).rem_euclid(len) as usize]
    }
}

/// Truncation depth Q for the residue-class inner product, plus the policy
/// flag for callers that want to treat a clamped (negative) quadratic form
/// as a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationConfig {
    depth: u64,
    pub clamp_negative: bool,
}

impl TruncationConfig {
    pub fn new(depth: u64) -> Result<Self> {
        if depth == 0 {
            return Err(Error::NonPositive { name: "Q" });
        }
        Ok(Self {
            depth,
            clamp_negative: true,
        })
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }
}

/// A nonnegative value plus whether the quadratic form underneath was
/// clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedValue {
    pub value: f64,
    pub clamped: bool,
}

/// Ramanujan expansion coefficients: modulus `d` maps to `α_d`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RamanujanCoefficients {
    entries: BTreeMap<u64, f64>,
}

impl RamanujanCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(u64, f64)]) -> Result<Self> {
        let mut c = Self::new();
        for &(d, a) in pairs {
            c.set(d, a)?;
        }
        Ok(c)
    }

    pub fn set(&mut self, modulus: u64, alpha: f64) -> Result<()> {
        if modulus == 0 {
            return Err(Error::NonPositive { name: "modulus" });
        }
        self.entries.insert(modulus, alpha);
        Ok(())
    }

    pub fn get(&self, modulus: u64) -> f64 {
        self.entries.get(&modulus).copied().unwrap_or(0.0)
    }

    pub fn max_modulus(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(&d, &a)| (d, a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Truncated Ramanujan inner product
/// `(1/Q)·Σ_{q=1}^{Q} (1/q)·Σ_{r=0}^{q−1} c_q(r)·Σ_{n≡r (q)} a_n·b_n`,
/// with residues normalized as `((n mod q) + q) mod q`.
///
/// Since `c_q(r) = c_q(n)` on the class `n ≡ r`, the triple sum regroups as
/// `Σ_n a_n·b_n·w_Q(n)` over the common support.
pub fn truncated_inner(a: &FiniteSequence, b: &FiniteSequence, cfg: &TruncationConfig) -> f64 {
    let tables = SieveTables::up_to(cfg.depth).expect("depth validated");
    let lo = a.offset.max(b.offset);
    let hi = (a.offset + a.len() as i64).min(b.offset + b.len() as i64);
    let mut total = 0.0;
    for n in lo..hi {
        let p = a.value_at(n) * b.value_at(n);
        if p == 0.0 {
            continue;
        }
        total += p * cesaro_weight_from_tables(n, &tables);
    }
    total
}

/// Truncated Ramanujan norm: `sqrt(max(<a,a>_Q, 0))` with a clamp flag.
pub fn truncated_norm(a: &FiniteSequence, cfg: &TruncationConfig) -> ClampedValue {
    let quad = truncated_inner(a, a, cfg);
    ClampedValue {
        value: quad.max(0.0).sqrt(),
        clamped: quad < 0.0,
    }
}

fn cesaro_weight_from_tables(n: i64, tables: &SieveTables) -> f64 {
    let depth = tables.limit();
    let mut sum = 0.0;
    for q in 1..=depth {
        sum += tables.ramanujan(q, n) as f64 / q as f64;
    }
    sum / depth as f64
}

/// Cesàro weight `w_Q(n) = (1/Q)·Σ_{q=1}^{Q} c_q(n)/q`.
///
/// As Q grows this tends to 6/π² for `n = 0` and to 0 for `n ≠ 0`.
///
/// # Panics
/// Panics if `depth == 0`.
pub fn cesaro_weight(n: i64, depth: u64) -> f64 {
    let tables = SieveTables::up_to(depth).expect("depth must be >= 1");
    cesaro_weight_from_tables(n, &tables)
}

const MAX_PROJECTION_PERIOD: u64 = 10_000_000;

/// Project one period of an N-periodic signal onto the Ramanujan basis.
///
/// The stored block of `a` is treated as one full period. For each modulus
/// `d <= max_modulus`,
/// `α_d = (1/(φ(d)·L))·Σ_{n=1}^{L} a(n)·c_d(n)` with
/// `L = lcm(N, lcm(1..=max_modulus))`, so that every kernel row completes
/// whole periods and the projection is leakage-free.
pub fn project_coefficients(
    a: &FiniteSequence,
    max_modulus: u64,
) -> Result<RamanujanCoefficients> {
    if max_modulus == 0 {
        return Err(Error::NonPositive { name: "D" });
    }
    if a.is_empty() {
        return Err(Error::EmptySequence);
    }
    let period = a.len() as u64;
    let mut l: u128 = period as u128;
    for d in 1..=max_modulus {
        let g = arith::gcd((l % d as u128) as u64, d);
        l = l * (d / g) as u128;
        if l > MAX_PROJECTION_PERIOD as u128 {
            return Err(Error::PeriodTooLong {
                length: l,
                max: MAX_PROJECTION_PERIOD,
            });
        }
    }
    let l = l as u64;

    let mut coeffs = RamanujanCoefficients::new();
    for d in 1..=max_modulus {
        let row = arith::ramanujan_row(d)?;
        let phi_d = row.values()[0] as f64;
        let mut sum = 0.0;
        for n in 1..=l as i64 {
            sum += a.periodic_value(n) * row.value(n) as f64;
        }
        coeffs.set(d, sum / (phi_d * l as f64))?;
    }
    Ok(coeffs)
}

/// Coefficient-side inner product `Σ_d φ(d)·α_d·β_d` (missing entries are 0).
pub fn parseval_inner(alpha: &RamanujanCoefficients, beta: &RamanujanCoefficients) -> f64 {
    let mut sum = 0.0;
    for (d, a) in alpha.iter() {
        let b = beta.get(d);
        if b != 0.0 {
            sum += arith::totient(d).expect("modulus >= 1") as f64 * a * b;
        }
    }
    sum
}

/// Coefficient-side norm `sqrt(Σ_d φ(d)·α_d²)`; zero iff all coefficients
/// are zero.
pub fn parseval_norm(alpha: &RamanujanCoefficients) -> f64 {
    alpha
        .iter()
        .map(|(d, a)| arith::totient(d).expect("modulus >= 1") as f64 * a * a)
        .sum::<f64>()
        .sqrt()
}

/// Evaluate the finite expansion `a(n) = Σ_d α_d·c_d(n)`.
pub fn reconstruct(alpha: &RamanujanCoefficients, n: i64) -> f64 {
    alpha
        .iter()
        .map(|(d, a)| a * arith::ramanujan_sum(d, n).expect("modulus >= 1") as f64)
        .sum()
}

/// Sum of the coefficient sets of two expansions.
pub fn coefficients_sum(
    alpha: &RamanujanCoefficients,
    beta: &RamanujanCoefficients,
) -> RamanujanCoefficients {
    let mut out = alpha.clone();
    for (d, b) in beta.iter() {
        let v = out.get(d) + b;
        out.set(d, v).expect("modulus >= 1");
    }
    out
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = arith::gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let g = g.max(1);
        Self {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self, v: i64) -> bool {
        self.den == 1 && self.num == v
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exact average `(1/L)·Σ_{n=1}^{L} c_d(n)·c_e(n)` over `L = lcm(d, e)`.
///
/// Equals `φ(d)` when `d = e` and `0` otherwise — the orthogonality identity
/// that makes the Parseval form work.
pub fn orthogonality_average(d: u64, e: u64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::NonPositive { name: "d" });
    }
    if e == 0 {
        return Err(Error::NonPositive { name: "e" });
    }
    let l = arith::lcm(d, e);
    if l > 10_000_000 {
        return Err(Error::PeriodTooLong {
            length: l,
            max: 10_000_000,
        });
    }
    let l = l as i64;
    let row_d = arith::ramanujan_row(d)?;
    let row_e = arith::ramanujan_row(e)?;
    let mut sum: i64 = 0;
    for n in 1..=l {
        sum += row_d.value(n) * row_e.value(n);
    }
    Ok(Rational::new(sum, l))
}
