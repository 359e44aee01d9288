//! Acceptance suite. Prints one line per criterion and exits non-zero when
//! the outcomes differ from the expected ones.
//!
//! Four criteria are known not to hold as stated; they are still evaluated
//! exactly as written and reported as FAIL:
//!
//! * 2: b_2 = 1/√π = 0.5641896, outside 0.5641 ± 5e−5.
//! * 5: the definitional h_n(2) beats the Alzer upper bound only for
//!   n ∈ {2, 3}, not {2, …, 7}.
//! * 7: d_n(1) falls below b_n from n = 9 on; d_n(1)/b_n tends to
//!   exp(log(2/π) + (log π + γ − 1)/2) ≈ 0.913.
//! * 10: `1/(2(n−1)) = 1/4 > 1/6` at n = 3, and the right-hand side of the
//!   same inequality decreases to log(4/π) ≈ 0.241564 < 0.2416.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ballratio::analysis::{
    chain_violations, crossover_in, log_ratio_check, klein_rota_violations, remark1_r, remark1_upper_check,
    verify_bounds_in, OrderingChain, SweepContext,
};
use ballratio::ballvol::{v_exact, v_product, w_exact, BallSweep, ExactBallValue};
use ballratio::bounds::{catalog, BoundId, FAMILY_COUNT};
use ballratio::gautschi::{joint_factor_truncate, JointFactorArgs, TruncationControl};
use ballratio::specfun::{
    digamma_closed, psi_lower_ineq, trigamma_lower_ineq, Constants, HalfInteger,
};
use ballratio::Rational;
use num_bigint::BigInt;

const KNOWN_FAILURES: &[u32] = &[2, 5, 7, 10];

const SWEEP_N: u64 = 10_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn exact(p: i64, q: i64, pi_power: i64) -> ExactBallValue {
    ExactBallValue::new(ratio(p, q), pi_power).unwrap()
}

fn c1_exact_spot_values() -> Outcome {
    let spots = [
        ("v_1", v_exact(1).unwrap(), exact(1, 2, 0)),
        ("v_2", v_exact(2).unwrap(), exact(2, 1, -1)),
        ("v_3", v_exact(3).unwrap(), exact(3, 4, 0)),
        ("w_2", w_exact(2).unwrap(), exact(3, 8, 1)),
    ];
    let mut bad: Vec<String> = spots
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, _)| format!("{name} = {got}"))
        .collect();
    // v_{n+1} = (n+1)/(2π v_n), built independently of the closed forms
    let mut v = exact(1, 2, 0);
    for n in 1..=300u64 {
        if v != v_exact(n).unwrap() {
            bad.push(format!("recurrence disagrees at n = {n}"));
            break;
        }
        v = exact(n as i64 + 1, 2, -1).div(&v);
    }
    for r in BallSweep::new().take(300) {
        if r.v != v_exact(r.n).unwrap() || r.w != w_exact(r.n).unwrap() {
            bad.push(format!("sweep disagrees at n = {}", r.n));
            break;
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "v_1 = 1/2, v_2 = 2/pi, v_3 = 3/4, w_2 = 3/8 pi; recurrence agrees to n = 300".into()
        } else {
            bad.join("; ")
        },
    )
}

fn c2_spot_numerics() -> Outcome {
    let d1: f64 = ballratio::eval_bound(BoundId::VLowerD(1), 1).unwrap();
    let d2: f64 = ballratio::eval_bound(BoundId::VLowerD(1), 2).unwrap();
    let b2: f64 = ballratio::eval_bound(BoundId::VLowerBorgwardt, 2).unwrap();
    let parts = [
        ("d_1 in (0.4986, 0.4990)", d1 > 0.4986 && d1 < 0.4990),
        ("d_2 in (0.6319, 0.6321)", d2 > 0.6319 && d2 < 0.6321),
        ("|b_2 - 0.5641| <= 5e-5", (b2 - 0.5641).abs() <= 5e-5),
    ];
    let failed: Vec<&str> = parts.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    outcome(
        failed.is_empty(),
        format!(
            "d_1 = {d1:.7}, d_2 = {d2:.7}, b_2 = {b2:.7}; failing: {}",
            if failed.is_empty() { "none".into() } else { failed.join(", ") }
        ),
    )
}

fn c3_alpha() -> Outcome {
    let alpha = Constants::<f64>::new().alpha;
    let reference = 2.0 - 0.577_215_664_901_532_9 - 4f64.ln();
    let psi = digamma_closed::<f64>(HalfInteger::from_twice(3).unwrap());
    let pass = alpha > 0.0360 && alpha < 0.0370 && (alpha - reference).abs() <= 1e-15;
    outcome(
        pass,
        format!(
            "alpha = {alpha:.10}, |alpha - (2 - gamma - log 4)| = {:.1e}, psi(3/2) = {psi:.10}",
            (alpha - reference).abs()
        ),
    )
}

fn c4_alzer_exact_at_one() -> Outcome {
    let u: f64 = ballratio::eval_bound(BoundId::VUpperAlzer, 1).unwrap();
    let diff = (u - 0.5).abs();
    outcome(diff <= 1e-15, format!("|upper-alzer(1) - v_1| = {diff:.1e}"))
}

fn c5_crossovers() -> Outcome {
    let ctx = SweepContext::<f64>::psi_only(1000);
    let checks = [
        (BoundId::VUpperH(2), BoundId::VUpperAlzer, 50u64, (2..=7).collect::<Vec<u64>>()),
        (BoundId::VUpperH(1), BoundId::VUpperBorgwardt, 50, (1..=7).collect()),
        (BoundId::VUpperH(1), BoundId::VUpperAlzer, 1000, Vec::new()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b, n_max, want) in checks {
        let res = crossover_in(&ctx, a, b, n_max).unwrap();
        let ok = res.sharper_set == want && res.ties.is_empty();
        pass &= ok;
        parts.push(format!(
            "{a} vs {b} (n <= {n_max}): {:?}{}",
            res.sharper_set,
            if ok { "" } else { " [expected different set]" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn c6_sidedness(ctx: &SweepContext<f64>) -> Outcome {
    let ids: Vec<BoundId> = catalog().into_iter().map(|s| s.id).collect();
    let records = verify_bounds_in(ctx, &ids, SWEEP_N);
    let mut families: Vec<&str> = records.iter().map(|r| r.bound.family()).collect();
    families.sort_unstable();
    families.dedup();
    let bad: Vec<String> = records
        .iter()
        .filter(|r| !r.side_ok)
        .take(5)
        .map(|r| format!("{} at n = {}", r.bound, r.n))
        .collect();
    let alzer_one = records
        .iter()
        .find(|r| r.bound == BoundId::VUpperAlzer && r.n == 1)
        .map(|r| r.gap.abs());
    let pass = bad.is_empty() && families.len() == FAMILY_COUNT && alzer_one.is_some_and(|g| g <= 1e-15);
    outcome(
        pass,
        format!(
            "{} records, {} families, violations: {}",
            records.len(),
            families.len(),
            if bad.is_empty() { "none".into() } else { bad.join(", ") }
        ),
    )
}

fn c7_ordering_chains(ctx: &SweepContext<f64>) -> Outcome {
    let mut bad = Vec::new();
    for chain in OrderingChain::ALL {
        let fails = chain_violations(ctx, chain, SWEEP_N).unwrap();
        if !fails.is_empty() {
            let (a, b) = chain.pair();
            bad.push(format!(
                "{a} vs {b} fails at {} n (first {}, margin {:.4})",
                fails.len(),
                fails[0],
                chain.log_margin(ctx, fails[0]).unwrap()
            ));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} chains hold for all n <= {SWEEP_N}", OrderingChain::ALL.len())
        } else {
            format!("{}; all other chains hold", bad.join("; "))
        },
    )
}

fn c8_klein_rota() -> Outcome {
    let v = klein_rota_violations(SWEEP_N);
    outcome(v.is_empty(), format!("w_n < 1 + 1/n exactly for n <= {SWEEP_N}: {} violations", v.len()))
}

fn c9_product_convergence() -> Outcome {
    let ctrl = TruncationControl::tolerance(1e-6);
    let mut worst = (0.0f64, 0u64);
    for n in 1..=100u64 {
        let est = v_product::<f64>(n, ctrl).unwrap();
        let x: f64 = v_exact(n).unwrap().to_real();
        let rel = (est.value - x).abs() / x;
        if rel > worst.0 {
            worst = (rel, n);
        }
    }
    let mut monotone = true;
    for n in 1..=100u64 {
        let args = JointFactorArgs::<f64>::ball(n).unwrap();
        let mut prev = joint_factor_truncate(&args, 0);
        for m in 1..=2000 {
            let p = joint_factor_truncate(&args, m);
            monotone &= p > prev;
            prev = p;
        }
    }
    outcome(
        worst.0 <= 2e-6 && monotone,
        format!(
            "worst relative error {:.3e} at n = {}; partial products increasing: {monotone}",
            worst.0, worst.1
        ),
    )
}

fn c10_proof_inequalities() -> Outcome {
    let psi_bad: Vec<u64> = (1..=400u64)
        .filter(|&k| !psi_lower_ineq(k as f64 / 2.0).unwrap().holds)
        .collect();
    let tri_bad: Vec<u64> = (1..=400u64)
        .filter(|&k| !trigamma_lower_ineq(k as f64 / 2.0).unwrap().holds)
        .collect();
    let checks: Vec<_> = (3..=SWEEP_N).map(|n| log_ratio_check(n).unwrap()).collect();
    let fails_holds = checks.iter().filter(|c| !c.holds).count();
    let lhs_over: Vec<u64> = checks.iter().filter(|c| c.lhs > 1.0 / 6.0).map(|c| c.n).collect();
    let rhs_under: Vec<u64> = checks.iter().filter(|c| !(c.rhs > 0.2416)).map(|c| c.n).collect();
    let min_rhs = checks.iter().map(|c| c.rhs).fold(f64::INFINITY, f64::min);
    let pass = psi_bad.is_empty()
        && tri_bad.is_empty()
        && fails_holds == 0
        && lhs_over.is_empty()
        && rhs_under.is_empty();
    outcome(
        pass,
        format!(
            "psi lower: {} failures; trigamma lower: {} failures; log-ratio inequality fails at {} n, \
             lhs > 1/6 at n = {:?}, rhs <= 0.2416 at {} n (min rhs {min_rhs:.7}, first n = {:?})",
            psi_bad.len(),
            tri_bad.len(),
            fails_holds,
            lhs_over,
            rhs_under.len(),
            rhs_under.first()
        ),
    )
}

fn c11_product_thresholds() -> Outcome {
    let rs: Vec<Option<u64>> = (1..=50u64).map(|n| remark1_r(n, 100_000_000)).collect();
    let missing: Vec<u64> = (1..=50u64).zip(&rs).filter(|(_, r)| r.is_none()).map(|(n, _)| n).collect();
    let upper_bad: Vec<u64> = (1..=100u64).filter(|&n| !remark1_upper_check(n, 100_000)).collect();
    outcome(
        missing.is_empty() && upper_bad.is_empty(),
        format!(
            "r(1) = {:?}, r(50) = {:?}, missing r for {:?}; upper check fails for {:?}",
            rs[0], rs[49], missing, upper_bad
        ),
    )
}

fn main() -> ExitCode {
    let ctx = SweepContext::<f64>::new(SWEEP_N);
    type Check<'a> = (u32, &'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Check> = vec![
        (1, "exact spot values", Duration::from_secs(1), Box::new(c1_exact_spot_values)),
        (2, "d_1, d_2, b_2 numerics", Duration::from_secs(1), Box::new(c2_spot_numerics)),
        (3, "alpha constant", Duration::from_secs(1), Box::new(c3_alpha)),
        (4, "upper-alzer exact at n = 1", Duration::from_secs(1), Box::new(c4_alzer_exact_at_one)),
        (5, "crossover sets", Duration::from_secs(5), Box::new(c5_crossovers)),
        (6, "catalog sidedness to 1e4", Duration::from_secs(60), Box::new(|| c6_sidedness(&ctx))),
        (7, "ordering chains to 1e4", Duration::from_secs(60), Box::new(|| c7_ordering_chains(&ctx))),
        (8, "Klein-Rota to 1e4", Duration::from_secs(60), Box::new(c8_klein_rota)),
        (9, "product convergence", Duration::from_secs(30), Box::new(c9_product_convergence)),
        (10, "auxiliary inequalities", Duration::from_secs(60), Box::new(c10_proof_inequalities)),
        (11, "truncated product existence and cap", Duration::from_secs(60), Box::new(c11_product_thresholds)),
    ];

    let mut failed = Vec::new();
    for (id, name, budget, run) in &criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = out.pass && in_time;
        if !pass {
            failed.push(*id);
        }
        println!(
            "criterion {id:>2} {}: {name} ({:.2}s, budget {}s): {}{}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail,
            if in_time { "" } else { " [over time budget]" }
        );
    }

    let unexpected_fail: Vec<u32> = failed.iter().copied().filter(|id| !KNOWN_FAILURES.contains(id)).collect();
    let unexpected_pass: Vec<u32> = KNOWN_FAILURES.iter().copied().filter(|id| !failed.contains(id)).collect();
    println!(
        "summary: {} passed, {} failed {:?} (known: {:?})",
        criteria.len() - failed.len(),
        failed.len(),
        failed,
        KNOWN_FAILURES
    );
    if unexpected_fail.is_empty() && unexpected_pass.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected_fail:?}; unexpected passes: {unexpected_pass:?}");
        ExitCode::FAILURE
    }
}
