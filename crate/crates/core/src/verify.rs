//! Built-in invariant suites, one `PASS`/`FAIL` line per check.
//!
//! `fast` shrinks the exhaustive ranges so the suite stays interactive;
//! the full mode runs the ranges the library is specified against.

use std::io::Write;

use nalgebra::{DMatrix, DVector, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, ramanujan_row, ramanujan_sum, ramanujan_sum_direct, totient};
use crate::cert::{
    certify, delta_for_epsilon, discrete_lyapunov, empirical_gain, gain_closed_form,
    gain_truncated, lyapunov_residual, ClassKSpec, KernelMode, KernelSpec,
};
use crate::sim::{
    example1_matrix, example1_system, filter_demo, hybrid_ramanujan_trace, integrate_flow,
    lyapunov_flow_check, lyapunov_jump_check, ramanujan_trace, simulate_discrete, simulate_hybrid,
    DiscreteSystem, DisturbanceSpec, HybridSystem, TraceConfig, TraceNorm,
};
use crate::space::{
    cesaro_weight, orthogonality_average, parseval_norm, project_coefficients, reconstruct,
    truncated_inner, truncated_norm, FiniteSequence, RamanujanCoefficients, TruncationConfig,
};

type CheckResult = Result<(), String>;

fn fail(msg: impl Into<String>) -> CheckResult {
    Err(msg.into())
}

fn random_sequence(rng: &mut ChaCha8Rng) -> FiniteSequence {
    let len = rng.gen_range(1..12usize);
    let offset = rng.gen_range(-20i64..20);
    let values: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
    FiniteSequence::new(offset, values)
}

fn check_holder_vs_direct(fast: bool) -> CheckResult {
    let q_max = if fast { 60 } else { 200 };
    for q in 1..=q_max {
        for n in 0..q as i64 {
            let h = ramanujan_sum(q, n).map_err(|e| e.to_string())?;
            let d = ramanujan_sum_direct(q, n).map_err(|e| e.to_string())?;
            if h != d {
                return fail(format!("c_{q}({n}): closed form {h} != direct sum {d}"));
            }
        }
    }
    Ok(())
}

fn check_row_invariants(fast: bool) -> CheckResult {
    let q_max = if fast { 40 } else { 120 };
    for q in 1..=q_max {
        let row = ramanujan_row(q).map_err(|e| e.to_string())?;
        let phi = totient(q).unwrap() as i64;
        if row.values()[0] != phi {
            return fail(format!("c_{q}(0) = {} != phi = {phi}", row.values()[0]));
        }
        let sum: i64 = row.values().iter().sum();
        let expect = if q == 1 { 1 } else { 0 };
        if sum != expect {
            return fail(format!("row sum for q={q} is {sum}, expected {expect}"));
        }
        if row.values().iter().any(|v| v.abs() > phi) {
            return fail(format!("|c_{q}| exceeds phi({q})"));
        }
        for n in -3..3i64 {
            if row.value(n) != row.value(n + q as i64) {
                return fail(format!("period violated at q={q}, n={n}"));
            }
        }
    }
    Ok(())
}

fn check_moebius_and_multiplicativity(_fast: bool) -> CheckResult {
    for q in 1..=40u64 {
        let mu = arith::moebius(q).unwrap();
        for n in 0..q as i64 {
            if arith::gcd(n.unsigned_abs(), q) == 1 && ramanujan_sum(q, n).unwrap() != mu {
                return fail(format!("c_{q}({n}) != mu({q}) on coprime index"));
            }
        }
    }
    for q1 in 1..=20u64 {
        for q2 in 1..=20u64 {
            if arith::gcd(q1, q2) != 1 {
                continue;
            }
            for n in 0..(q1 * q2) as i64 {
                let lhs = ramanujan_sum(q1 * q2, n).unwrap();
                let rhs = ramanujan_sum(q1, n).unwrap() * ramanujan_sum(q2, n).unwrap();
                if lhs != rhs {
                    return fail(format!("multiplicativity fails at q1={q1} q2={q2} n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn check_orthogonality(fast: bool) -> CheckResult {
    let max = if fast { 12 } else { 30 };
    for d in 1..=max {
        for e in 1..=max {
            let avg = orthogonality_average(d, e).map_err(|err| err.to_string())?;
            let expect = if d == e { totient(d).unwrap() as i64 } else { 0 };
            if !avg.is_integer(expect) {
                return fail(format!("average for ({d},{e}) is {avg}, expected {expect}"));
            }
        }
    }
    Ok(())
}

fn check_parseval_round_trip(fast: bool) -> CheckResult {
    let max_d: u64 = if fast { 6 } else { 10 };
    let period: u64 = (1..=max_d).fold(1u64, |acc, d| (arith::lcm(acc, d)) as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let rounds = if fast { 8 } else { 25 };
    for _ in 0..rounds {
        let mut alpha = RamanujanCoefficients::new();
        for d in 1..=max_d {
            if rng.gen_bool(0.7) {
                alpha.set(d, rng.gen_range(-2.0..2.0)).unwrap();
            }
        }
        let samples: Vec<f64> = (0..period as i64).map(|n| reconstruct(&alpha, n)).collect();
        let seq = FiniteSequence::new(0, samples);
        let back = project_coefficients(&seq, max_d).map_err(|e| e.to_string())?;
        for d in 1..=max_d {
            let diff = (back.get(d) - alpha.get(d)).abs();
            if diff > 1e-9 {
                return fail(format!("coefficient {d} off by {diff:e}"));
            }
        }
        // norm identity
        let direct: f64 = alpha
            .iter()
            .map(|(d, a)| totient(d).unwrap() as f64 * a * a)
            .sum();
        let n = parseval_norm(&alpha);
        if (n * n - direct).abs() > 1e-12 {
            return fail(format!("norm^2 mismatch: {} vs {direct}", n * n));
        }
    }
    Ok(())
}

fn check_euclidean_comparison(fast: bool) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rounds = if fast { 100 } else { 1000 };
    for _ in 0..rounds {
        let seq = random_sequence(&mut rng);
        let l2 = seq.l2_norm();
        for depth in 1..=50 {
            let cfg = TruncationConfig::new(depth).unwrap();
            let r = truncated_norm(&seq, &cfg);
            if r.value > l2 + 1e-12 {
                return fail(format!(
                    "truncated norm {} exceeds l2 {l2} at Q={depth}",
                    r.value
                ));
            }
        }
    }
    Ok(())
}

fn check_inner_bilinearity(_fast: bool) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = TruncationConfig::new(9).unwrap();
    for _ in 0..50 {
        let a = random_sequence(&mut rng);
        let b = random_sequence(&mut rng);
        let ab = truncated_inner(&a, &b, &cfg);
        let ba = truncated_inner(&b, &a, &cfg);
        if (ab - ba).abs() > 1e-12 {
            return fail(format!("asymmetry {ab} vs {ba}"));
        }
        let s = rng.gen_range(-2.0..2.0);
        let scaled = FiniteSequence::new(
            a.offset(),
            a.values().iter().map(|v| s * v).collect(),
        );
        let lhs = truncated_inner(&scaled, &b, &cfg);
        if (lhs - s * ab).abs() > 1e-9 * (1.0 + lhs.abs()) {
            return fail(format!("homogeneity: {lhs} vs {}", s * ab));
        }
    }
    Ok(())
}

fn check_cesaro_weights(_fast: bool) -> CheckResult {
    let w0 = cesaro_weight(0, 100_000);
    if (w0 - 0.6079).abs() > 0.01 {
        return fail(format!("w(0, 1e5) = {w0}, expected within 0.01 of 0.6079"));
    }
    let w1 = cesaro_weight(1, 10_000);
    if w1.abs() > 0.01 {
        return fail(format!("|w(1, 1e4)| = {} > 0.01", w1.abs()));
    }
    Ok(())
}

fn check_gain_closed_form(fast: bool) -> CheckResult {
    let q_max = if fast { 20 } else { 50 };
    for q in 1..=q_max {
        for r in [0.3, 0.5, 0.9] {
            for mode in [KernelMode::Signed, KernelMode::Absolute] {
                let k = KernelSpec::new(q, 1.0, r, mode).unwrap();
                let diff = (gain_truncated(&k, 1000) - gain_closed_form(&k)).abs();
                if diff > 1e-12 {
                    return fail(format!("q={q} r={r} {mode}: |truncated - closed| = {diff:e}"));
                }
            }
        }
    }
    let worked = gain_closed_form(
        &KernelSpec::new(5, 0.1, 0.5, KernelMode::Absolute).unwrap(),
    );
    if (worked - 0.10194).abs() > 1e-5 {
        return fail(format!("worked gain {worked} != 0.10194 within 1e-5"));
    }
    Ok(())
}

fn check_gain_ordering(_fast: bool) -> CheckResult {
    for q in 1..=20u64 {
        for r in [0.2, 0.5, 0.8] {
            let s = gain_closed_form(&KernelSpec::new(q, 1.0, r, KernelMode::Signed).unwrap());
            let a = gain_closed_form(&KernelSpec::new(q, 1.0, r, KernelMode::Absolute).unwrap());
            if s > a + 1e-15 {
                return fail(format!("signed gain {s} above absolute {a} at q={q} r={r}"));
            }
        }
    }
    for q in [1u64, 4, 6, 10] {
        let mut prev = -1.0;
        for m in [0.0f64, 0.5, 1.0, 2.0] {
            let g = gain_closed_form(&KernelSpec::new(q, m, 0.5, KernelMode::Absolute).unwrap());
            if g < prev {
                return fail(format!("gain not monotone in M at q={q}"));
            }
            prev = g;
        }
        let mut prev = -1.0;
        for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let g = gain_closed_form(&KernelSpec::new(q, 1.0, r, KernelMode::Absolute).unwrap());
            if g < prev {
                return fail(format!("gain not monotone in r at q={q}"));
            }
            prev = g;
        }
    }
    Ok(())
}

fn check_certificates(_fast: bool) -> CheckResult {
    let cert = certify(
        KernelSpec::new(3, 0.4, 0.6, KernelMode::Absolute).unwrap(),
        ClassKSpec::new(2.0, 1.5).unwrap(),
        0.8,
        Some(1.5),
    )
    .map_err(|e| e.to_string())?;
    if !cert.stable {
        return fail("expected stable certificate");
    }
    let alpha0 = cert.alpha.apply(0.8);
    let mut s = 0.0;
    for _ in 0..100_000 {
        s = alpha0 + cert.gain * s;
    }
    let u = cert.uniform_bound.unwrap();
    if (s - u).abs() > 1e-9 {
        return fail(format!("fixed point {s} vs uniform bound {u}"));
    }
    let expect = (alpha0 + cert.gain * 1.5) / (1.0 - cert.gain);
    let d = cert.disturbance_bound.unwrap();
    if (d - expect).abs() > 1e-12 {
        return fail(format!("disturbance bound {d} vs {expect}"));
    }
    let eps = 0.25;
    let delta = delta_for_epsilon(&cert, eps).map_err(|e| e.to_string())?;
    if cert.alpha.apply(delta) / (1.0 - cert.gain) >= eps {
        return fail("delta_for_epsilon margin violated");
    }
    Ok(())
}

fn check_discrete_lyapunov(_fast: bool) -> CheckResult {
    let a = example1_matrix();
    let q = DMatrix::identity(2, 2);
    let p = discrete_lyapunov(&a, &q).map_err(|e| e.to_string())?;
    let res = lyapunov_residual(&a, &p, &q);
    if res > 1e-9 {
        return fail(format!("residual {res:e} > 1e-9"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let x = DVector::from_iterator(2, (0..2).map(|_| rng.gen_range(-1.0..1.0)));
        if x.norm() > 1e-6 {
            let v = (x.transpose() * &p * &x)[(0, 0)];
            if v <= 0.0 {
                return fail(format!("x'Px = {v} not positive"));
            }
        }
    }
    Ok(())
}

fn check_example1_nominal(_fast: bool) -> CheckResult {
    let sys = DiscreteSystem::linear(example1_matrix(), DisturbanceSpec::Zero).unwrap();
    let traj = simulate_discrete(&sys, &DVector::from_vec(vec![1.0, 1.0]), 50)
        .map_err(|e| e.to_string())?;
    let n50 = traj.states()[50].norm();
    if n50 > 1e-3 {
        return fail(format!("nominal ‖x_50‖ = {n50} > 1e-3"));
    }
    Ok(())
}

fn check_example1_disturbed_euclid(_fast: bool) -> CheckResult {
    let traj = simulate_discrete(&example1_system(), &DVector::from_vec(vec![1.0, 1.0]), 200)
        .map_err(|e| e.to_string())?;
    let max = traj
        .euclidean_trace()
        .iter()
        .filter(|(k, _)| (150..=200).contains(k))
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    if max < 0.25 {
        return fail(format!("euclidean max over [150,200] = {max} < 0.25"));
    }
    Ok(())
}

/// Reproduction target for the disturbed-run trace: decay below 0.05 with a
/// nonincreasing tail. The implemented kernel trace keeps weight
/// `phi(q)/q` on the current energy, which the prime-indexed disturbance
/// keeps re-exciting, so this check currently fails; see README
/// ("Known issues") for the analysis. Kept as stated rather than loosened.
fn check_example1_trace_decay(_fast: bool) -> CheckResult {
    let traj = simulate_discrete(&example1_system(), &DVector::from_vec(vec![1.0, 1.0]), 200)
        .map_err(|e| e.to_string())?;
    let trace = ramanujan_trace(&traj, &TraceConfig::discrete_default());
    let last = trace[200].value;
    let mut worst_rise = 0.0f64;
    for w in trace[30..].windows(2) {
        worst_rise = worst_rise.max(w[1].value - w[0].value);
    }
    if last > 0.05 {
        return fail(format!(
            "trace at k=200 is {last:.4} > 0.05 (worst rise after k=30: {worst_rise:.4})"
        ));
    }
    if worst_rise > 1e-3 {
        return fail(format!("trace rises by {worst_rise:.4} after k=30"));
    }
    Ok(())
}

fn check_example2_run(_fast: bool) -> CheckResult {
    let sys = HybridSystem::default();
    let traj = simulate_hybrid(&sys, &Vector2::new(1.0, 1.0)).map_err(|e| e.to_string())?;
    if traj.jump_events().len() != 15 {
        return fail(format!("{} jumps, expected 15", traj.jump_events().len()));
    }
    let flow = lyapunov_flow_check(&sys, &traj, 1e-6);
    if !flow.is_clean() {
        return fail(format!(
            "flow check: identity err {:e}, slope {:e}",
            flow.max_identity_error, flow.max_slope
        ));
    }
    if flow.max_slope > 1e-9 {
        return fail(format!("V slope {:e} > 1e-9", flow.max_slope));
    }
    let jumps = lyapunov_jump_check(&sys, &traj);
    if !jumps.is_clean() {
        return fail(format!("jump check max error {:e}", jumps.max_error));
    }
    let trace = hybrid_ramanujan_trace(&traj, &TraceConfig::hybrid_default())
        .map_err(|e| e.to_string())?;
    let first = trace.first().unwrap().value;
    let last = trace.last().unwrap().value;
    if last > 0.2 * first {
        return fail(format!("trace({}) = {last} > 0.2 × {first}", trace.last().unwrap().t));
    }
    Ok(())
}

fn check_integrator_order(_fast: bool) -> CheckResult {
    let sys = HybridSystem::default();
    let x0 = Vector2::new(1.0, 1.0);
    let reference = integrate_flow(&sys, &x0, 0.0, 2.0, 0.0005);
    let e1 = (integrate_flow(&sys, &x0, 0.0, 2.0, 0.05) - reference).norm();
    let e2 = (integrate_flow(&sys, &x0, 0.0, 2.0, 0.025) - reference).norm();
    let ratio = e1 / e2;
    if !(12.0..=20.0).contains(&ratio) {
        return fail(format!("error ratio {ratio} outside [12, 20]"));
    }
    Ok(())
}

fn check_filter_demo(_fast: bool) -> CheckResult {
    let r = filter_demo(4, 1, 4, 16).map_err(|e| e.to_string())?;
    if !r.kernel_weights.iter().all(|&(_, _, w)| w == 0) || r.projection_coefficient != 0.0 {
        return fail("m=4 r0=1 q=4 should zero out weights and projection");
    }
    let r = filter_demo(6, 1, 6, 16).map_err(|e| e.to_string())?;
    if !r.kernel_weights.iter().all(|&(_, _, w)| w == 1) {
        return fail("m=6 r0=1 q=6 weights should all equal mu(6) = 1");
    }
    let r = filter_demo(4, 1, 1, 16).map_err(|e| e.to_string())?;
    if !r.kernel_weights.iter().all(|&(_, _, w)| w == 1) {
        return fail("q=1 weights should all equal 1");
    }
    Ok(())
}

fn check_determinism(_fast: bool) -> CheckResult {
    let x0 = DVector::from_vec(vec![1.0, 1.0]);
    let a = simulate_discrete(&example1_system(), &x0, 150).unwrap();
    let b = simulate_discrete(&example1_system(), &x0, 150).unwrap();
    if a != b {
        return fail("discrete runs differ");
    }
    let ha = simulate_hybrid(&HybridSystem::default(), &Vector2::new(1.0, 1.0)).unwrap();
    let hb = simulate_hybrid(&HybridSystem::default(), &Vector2::new(1.0, 1.0)).unwrap();
    if ha != hb {
        return fail("hybrid runs differ");
    }
    Ok(())
}

fn check_empirical_gain(fast: bool) -> CheckResult {
    let samples = if fast { 16 } else { 64 };
    let zero = DiscreteSystem::linear(DMatrix::zeros(2, 2), DisturbanceSpec::Zero).unwrap();
    let g = empirical_gain(&zero, 2.0, samples, 5, &TraceNorm::Euclidean, 0)
        .map_err(|e| e.to_string())?;
    if (g - 2.0).abs() > 1e-9 {
        return fail(format!("zero dynamics estimate {g} != radius 2"));
    }
    let sys = DiscreteSystem::linear(example1_matrix(), DisturbanceSpec::Zero).unwrap();
    let g = empirical_gain(&sys, 1.0, samples, 50, &TraceNorm::Euclidean, 0)
        .map_err(|e| e.to_string())?;
    if !(1.0 - 1e-9..=1.01).contains(&g) {
        return fail(format!("contractive estimate {g} outside [1, 1.01]"));
    }
    Ok(())
}

/// Run every suite, printing one line per check. Returns `true` iff all
/// checks passed.
pub fn run_all<W: Write>(fast: bool, out: &mut W) -> std::io::Result<bool> {
    let checks: Vec<(&str, fn(bool) -> CheckResult)> = vec![
        ("arith/holder-vs-direct", check_holder_vs_direct),
        ("arith/row-invariants", check_row_invariants),
        ("arith/moebius-multiplicativity", check_moebius_and_multiplicativity),
        ("space/orthogonality", check_orthogonality),
        ("space/parseval-round-trip", check_parseval_round_trip),
        ("space/euclidean-comparison", check_euclidean_comparison),
        ("space/inner-bilinearity", check_inner_bilinearity),
        ("space/cesaro-weights", check_cesaro_weights),
        ("cert/gain-closed-form", check_gain_closed_form),
        ("cert/gain-ordering", check_gain_ordering),
        ("cert/certificate-bounds", check_certificates),
        ("cert/discrete-lyapunov", check_discrete_lyapunov),
        ("sim/example1-nominal-decay", check_example1_nominal),
        ("sim/example1-disturbed-euclid", check_example1_disturbed_euclid),
        ("sim/example1-trace-decay", check_example1_trace_decay),
        ("sim/example2-run", check_example2_run),
        ("sim/integrator-order", check_integrator_order),
        ("sim/filter-demo", check_filter_demo),
        ("sim/determinism", check_determinism),
        ("cert/empirical-gain", check_empirical_gain),
    ];
    let mut all_ok = true;
    for (name, check) in checks {
        match check(fast) {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(msg) => {
                all_ok = false;
                writeln!(out, "FAIL {name}: {msg}")?;
            }
        }
    }
    Ok(all_ok)
}
