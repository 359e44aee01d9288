//! Verification sweeps, sharpness comparisons and threshold discovery.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::ballvol::{exact_reals, v_exact, w_exact, BallSweep};
use crate::bounds::{eval_bound_with, BoundId, Side, Target};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::HalfIntTable;

/// Relative slack under which a wrong-side gap still counts as a tie.
pub const TIE_TOLERANCE: f64 = 1e-13;

/// Relative difference below which two bounds are treated as tied when
/// deciding which one is sharper.
pub const CROSSOVER_TIE: f64 = 1e-12;

/// Precomputed ψ table and exact targets for `n = 1..=n_max`.
#[derive(Debug, Clone)]
pub struct SweepContext<T> {
    psi: HalfIntTable<T>,
    v: Vec<T>,
    w: Vec<T>,
}

impl<T: Scalar> SweepContext<T> {
    pub fn new(n_max: u64) -> Self {
        let (psi, (v, w)) = rayon::join(
            || HalfIntTable::new(n_max + 1),
            || exact_reals::<T>(n_max),
        );
        Self { psi, v, w }
    }

    /// ψ values only; no exact targets.
    pub fn psi_only(n_max: u64) -> Self {
        Self {
            psi: HalfIntTable::new(n_max + 1),
            v: Vec::new(),
            w: Vec::new(),
        }
    }

    pub fn n_max(&self) -> u64 {
        self.v.len() as u64
    }

    pub fn exact(&self, target: Target, n: u64) -> Option<T> {
        let idx = n.checked_sub(1)? as usize;
        match target {
            Target::V => self.v.get(idx).copied(),
            Target::W => self.w.get(idx).copied(),
        }
    }

    pub fn eval(&self, id: BoundId, n: u64) -> Result<T> {
        eval_bound_with(&self.psi, id, n)
    }
}

/// One bound evaluated at one n against the exact target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationRecord<T> {
    pub n: u64,
    pub bound: BoundId,
    pub bound_value: T,
    pub exact_value: T,
    /// `exact − bound` for lower bounds, `bound − exact` for upper bounds.
    pub gap: T,
    pub side_ok: bool,
}

impl<T: Scalar> EvaluationRecord<T> {
    pub fn new(n: u64, bound: BoundId, bound_value: T, exact_value: T) -> Self {
        let gap = match bound.side() {
            Side::Lower => exact_value - bound_value,
            Side::Upper => bound_value - exact_value,
        };
        let mut rec = Self {
            n,
            bound,
            bound_value,
            exact_value,
            gap,
            side_ok: false,
        };
        rec.side_ok = rec.gap_is_ok();
        rec
    }

    fn gap_is_ok(&self) -> bool {
        self.gap > -T::lit(TIE_TOLERANCE) * self.exact_value.abs()
    }

    /// Flips the sign of the gap; used to exercise the alarm path.
    pub fn inject_fault(&mut self) {
        self.gap = -self.gap - T::one();
        self.side_ok = self.gap_is_ok();
    }
}

/// Evaluates every id for `n = min_n(id)..=n_max`, ordered by id then n.
pub fn verify_bounds<T: Scalar>(ids: &[BoundId], n_max: u64) -> Vec<EvaluationRecord<T>> {
    let ctx = SweepContext::<T>::new(n_max);
    verify_bounds_in(&ctx, ids, n_max)
}

pub fn verify_bounds_in<T: Scalar>(
    ctx: &SweepContext<T>,
    ids: &[BoundId],
    n_max: u64,
) -> Vec<EvaluationRecord<T>> {
    ids.par_iter()
        .map(|&id| {
            (id.min_n()..=n_max)
                .map(|n| {
                    let exact = ctx.exact(id.target(), n).expect("context covers n_max");
                    let value = ctx.eval(id, n).expect("n is within the bound's domain");
                    EvaluationRecord::new(n, id, value, exact)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Per-bound counts over a set of records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSummary {
    pub bound: BoundId,
    pub checked: usize,
    pub ok: usize,
    pub violations: usize,
}

pub fn summarize<T: Scalar>(records: &[EvaluationRecord<T>]) -> Vec<BoundSummary> {
    let mut out: Vec<BoundSummary> = Vec::new();
    for r in records {
        let entry = match out.iter_mut().find(|s| s.bound == r.bound) {
            Some(s) => s,
            None => {
                out.push(BoundSummary {
                    bound: r.bound,
                    checked: 0,
                    ok: 0,
                    violations: 0,
                });
                out.last_mut().unwrap()
            }
        };
        entry.checked += 1;
        if r.side_ok {
            entry.ok += 1;
        } else {
            entry.violations += 1;
        }
    }
    out
}

/// Which of two same-sided bounds is sharper, over a range of n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverResult {
    pub bound_a: BoundId,
    pub bound_b: BoundId,
    pub target: Target,
    pub side: Side,
    /// Scanned range `first_n..=n_max`.
    pub first_n: u64,
    pub n_max: u64,
    /// n where `bound_a` is strictly sharper than `bound_b`.
    pub sharper_set: Vec<u64>,
    /// n where the two differ by less than [`CROSSOVER_TIE`] relative.
    pub ties: Vec<u64>,
    /// Largest element when `sharper_set` is a single run of consecutive n.
    pub threshold: Option<u64>,
}

impl CrossoverResult {
    /// Start of the run when `sharper_set` is one interval.
    pub fn interval_start(&self) -> Option<u64> {
        self.threshold.map(|_| self.sharper_set[0])
    }

    /// True when the sharper set is exactly `{first_n, …, threshold}`.
    pub fn is_prefix(&self) -> bool {
        self.interval_start() == Some(self.first_n)
    }

    /// True when the run reaches the end of the scan, so the threshold is
    /// only a lower estimate.
    pub fn open_ended(&self) -> bool {
        self.threshold == Some(self.n_max)
    }
}

fn check_pair(a: BoundId, b: BoundId) -> Result<()> {
    let reason = if a.target() != b.target() {
        "bounds estimate different ratios"
    } else if a.side() != b.side() {
        "one bound is a lower bound and the other an upper bound"
    } else {
        return Ok(());
    };
    Err(Error::IncompatibleBounds {
        a: a.to_string(),
        b: b.to_string(),
        reason: reason.into(),
    })
}

/// Compares two same-sided bounds: an upper bound is sharper when smaller,
/// a lower bound when larger.
pub fn crossover(a: BoundId, b: BoundId, n_max: u64) -> Result<CrossoverResult> {
    check_pair(a, b)?;
    let ctx = SweepContext::<f64>::psi_only(n_max);
    crossover_in(&ctx, a, b, n_max)
}

pub fn crossover_in(
    ctx: &SweepContext<f64>,
    a: BoundId,
    b: BoundId,
    n_max: u64,
) -> Result<CrossoverResult> {
    check_pair(a, b)?;
    let first_n = a.min_n().max(b.min_n());
    if n_max < first_n {
        return Err(Error::BelowMinimum {
            what: format!("crossover of {a} and {b}"),
            n: n_max,
            min_n: first_n,
        });
    }
    let mut sharper_set = Vec::new();
    let mut ties = Vec::new();
    for n in first_n..=n_max {
        let va = ctx.eval(a, n)?;
        let vb = ctx.eval(b, n)?;
        if (va - vb).abs() <= CROSSOVER_TIE * va.abs().max(vb.abs()) {
            ties.push(n);
            continue;
        }
        let a_sharper = match a.side() {
            Side::Upper => va < vb,
            Side::Lower => va > vb,
        };
        if a_sharper {
            sharper_set.push(n);
        }
    }
    let contiguous = !sharper_set.is_empty() && sharper_set.windows(2).all(|w| w[1] == w[0] + 1);
    let threshold = if contiguous { sharper_set.last().copied() } else { None };
    Ok(CrossoverResult {
        bound_a: a,
        bound_b: b,
        target: a.target(),
        side: a.side(),
        first_n,
        n_max,
        sharper_set,
        ties,
        threshold,
    })
}

fn ball_factor(n: u64, k: u64) -> f64 {
    let (k, n) = (k as f64, n as f64);
    (2.0 * k / (2.0 * k - 1.0)) * ((2.0 * k + n - 1.0) / (2.0 * k + n))
}

/// Smallest r with `∏_{k≤r} (2k/(2k−1))((2k+n−1)/(2k+n)) > √(π(2n+1))/2`.
pub fn remark1_r(n: u64, r_max: u64) -> Option<u64> {
    let target = (std::f64::consts::PI * (2 * n + 1) as f64).sqrt() / 2.0;
    let mut p = 1.0f64;
    for r in 1..=r_max {
        p *= ball_factor(n, r);
        if p > target {
            return Some(r);
        }
    }
    None
}

/// True when every partial product up to `m_max` stays below
/// `√(π(2n+2))/2`.
pub fn remark1_upper_check(n: u64, m_max: u64) -> bool {
    let cap = (std::f64::consts::PI * (2 * n + 2) as f64).sqrt() / 2.0;
    let mut p = 1.0f64;
    for m in 1..=m_max {
        p *= ball_factor(n, m);
        if !(p < cap) {
            return false;
        }
    }
    true
}

fn exact_strictly_less(value: &crate::ballvol::ExactBallValue, r: &BigRational) -> bool {
    match value.cmp_rational(r) {
        Some(ord) => ord == Ordering::Less,
        None => {
            let x: f64 = value.to_real();
            x < f64::from_rational(r)
        }
    }
}

/// n ≤ n_max where `w_n < 1 + 1/n` fails, decided in exact arithmetic.
pub fn klein_rota_violations(n_max: u64) -> Vec<u64> {
    BallSweep::new()
        .take(n_max as usize)
        .filter(|r| {
            let cap = BigRational::new(BigInt::from(r.n + 1), BigInt::from(r.n));
            !exact_strictly_less(&r.w, &cap)
        })
        .map(|r| r.n)
        .collect()
}

/// `w_n < 1 + 1/n` for all `n ≤ n_max` (monotonicity of nΩ_n/Ω_{n−1}).
pub fn klein_rota_check(n_max: u64) -> bool {
    klein_rota_violations(n_max).is_empty()
}

/// n ≤ n_max where `w_n > 1` fails, decided in exact arithmetic.
pub fn log_concavity_violations(n_max: u64) -> Vec<u64> {
    let one = BigRational::one();
    BallSweep::new()
        .take(n_max as usize)
        .filter(|r| r.w.cmp_rational(&one) != Some(Ordering::Greater))
        .map(|r| r.n)
        .collect()
}

/// Both sides of an elementary inequality `lhs ⋚ rhs` at one n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub n: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `1/(2(n−1)) ≤ log[(4/π)(n+1)²/(n(n+2))]`, n ≥ 3.
pub fn log_ratio_check(n: u64) -> Result<InequalityCheck> {
    if n < 3 {
        return Err(Error::BelowMinimum {
            what: "log-ratio inequality".into(),
            n,
            min_n: 3,
        });
    }
    let nf = n as f64;
    let lhs = 1.0 / (2.0 * (nf - 1.0));
    let rhs = (4.0 / std::f64::consts::PI * (nf + 1.0).powi(2) / (nf * (nf + 2.0))).ln();
    Ok(InequalityCheck {
        n,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// `n/(n−1)[log((n+2)/2) − 1/(2(n−1))] ≥ log[(π/8) n ((n+2)/(n+1))²]`, n ≥ 2.
pub fn d_reduction_check(n: u64) -> Result<InequalityCheck> {
    if n < 2 {
        return Err(Error::BelowMinimum {
            what: "d_n versus b_n reduction".into(),
            n,
            min_n: 2,
        });
    }
    let nf = n as f64;
    let lhs = nf / (nf - 1.0) * (((nf + 2.0) / 2.0).ln() - 1.0 / (2.0 * (nf - 1.0)));
    let rhs = (std::f64::consts::PI / 8.0 * nf * ((nf + 2.0) / (nf + 1.0)).powi(2)).ln();
    Ok(InequalityCheck {
        n,
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

/// `2/(n+1) < log(1 + 2/n)`.
pub fn log_refinement_check(n: u64) -> Result<InequalityCheck> {
    if n < 1 {
        return Err(Error::BelowMinimum {
            what: "log refinement".into(),
            n,
            min_n: 1,
        });
    }
    let nf = n as f64;
    let lhs = 2.0 / (nf + 1.0);
    let rhs = (2.0 / nf).ln_1p();
    Ok(InequalityCheck {
        n,
        lhs,
        rhs,
        holds: lhs < rhs,
    })
}

/// Pairwise orderings between catalog bounds claimed to hold for every n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingChain {
    /// d_n(1) > b_n
    DAboveBorgwardt,
    /// p_n > √(1 + 1/(n+1))
    PAboveClassic,
    /// p_n > exp[(n+3)/(2(n+2)²)]
    PAbove443,
    /// exp[1/(2(n+1))] < (1 + 2/n)^{1/4}, n ≥ 2
    Upper51BelowMerkleQ,
    /// Merkle's upper bound < √(1 + 1/n)
    MerkleBelowAlzer,
    /// refined(m) < exp[1/(2(n+1))]
    RefinedBelow51(u32),
}

impl OrderingChain {
    pub const ALL: [OrderingChain; 8] = [
        Self::DAboveBorgwardt,
        Self::PAboveClassic,
        Self::PAbove443,
        Self::Upper51BelowMerkleQ,
        Self::MerkleBelowAlzer,
        Self::RefinedBelow51(1),
        Self::RefinedBelow51(2),
        Self::RefinedBelow51(3),
    ];

    /// The sharper and the cruder bound of the pair.
    pub fn pair(self) -> (BoundId, BoundId) {
        match self {
            Self::DAboveBorgwardt => (BoundId::VLowerD(1), BoundId::VLowerBorgwardt),
            Self::PAboveClassic => (BoundId::WLowerP, BoundId::WLowerClassic),
            Self::PAbove443 => (BoundId::WLowerP, BoundId::WLower443),
            Self::Upper51BelowMerkleQ => (BoundId::WUpper51, BoundId::WUpperMerkleQ),
            Self::MerkleBelowAlzer => (BoundId::WUpperMerkle, BoundId::WUpperAlzer),
            Self::RefinedBelow51(m) => (BoundId::WUpperRefined(m), BoundId::WUpper51),
        }
    }

    pub fn min_n(self) -> u64 {
        let (a, b) = self.pair();
        a.min_n().max(b.min_n())
    }

    /// Log of the ratio in the direction that is positive when the ordering
    /// holds. Margins between the w bounds shrink like n⁻⁴, far below the
    /// resolution of a direct comparison, so each is expanded into terms
    /// that `ln_1p` evaluates without cancellation.
    pub fn log_margin<T: Scalar>(self, ctx: &SweepContext<T>, n: u64) -> Result<f64> {
        if n < self.min_n() {
            return Err(Error::BelowMinimum {
                what: format!("{self:?}"),
                n,
                min_n: self.min_n(),
            });
        }
        let x = n as f64;
        Ok(match self {
            Self::DAboveBorgwardt => {
                let (a, b) = self.pair();
                ctx.eval(a, n)?.as_f64().ln() - ctx.eval(b, n)?.as_f64().ln()
            }
            Self::PAboveClassic => {
                (1.0 / ((x + 1.0) * (x + 3.0))).ln_1p() + (x + 1.0) / (2.0 * (x + 2.0).powi(2))
                    - 0.5 * (1.0 / (x + 1.0)).ln_1p()
            }
            Self::PAbove443 => (1.0 / ((x + 1.0) * (x + 3.0))).ln_1p() - (x + 2.0).powi(-2),
            Self::Upper51BelowMerkleQ => 0.25 * (2.0 / x).ln_1p() - 0.5 / (x + 1.0),
            Self::MerkleBelowAlzer => {
                0.5 * (1.0 / x).ln_1p() - (1.0 / (x + 1.0)).ln_1p()
                    + 0.5 * (1.0 / (x + 2.0)).ln_1p()
            }
            Self::RefinedBelow51(m) => {
                let mf = m as f64;
                let trunc: f64 = (1..=m)
                    .map(|k| (-(x + 2.0 * k as f64).powi(-2)).ln_1p())
                    .sum();
                mf / ((x + 1.0) * (x + 2.0 * mf + 1.0)) + trunc
            }
        })
    }
}

/// n ≤ n_max where `chain` fails.
pub fn chain_violations<T: Scalar>(
    ctx: &SweepContext<T>,
    chain: OrderingChain,
    n_max: u64,
) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for n in chain.min_n()..=n_max {
        if !(chain.log_margin(ctx, n)? > 0.0) {
            out.push(n);
        }
    }
    Ok(out)
}

/// A bound value and its gap to the exact target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCell<T> {
    pub value: T,
    pub gap: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow<T> {
    pub n: u64,
    pub exact: T,
    /// One cell per id; `None` where n is below the bound's domain.
    pub cells: Vec<Option<TableCell<T>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundTable<T> {
    pub target: Target,
    pub ids: Vec<BoundId>,
    pub rows: Vec<TableRow<T>>,
}

/// Rows keyed by n with the exact target, each bound value and its gap.
/// Columns follow the order of `ids`. With `partial`, n below a bound's
/// domain yields an empty cell instead of an error.
pub fn make_table<T: Scalar>(
    target: Target,
    ids: &[BoundId],
    n_list: &[u64],
    partial: bool,
) -> Result<BoundTable<T>> {
    if let Some(bad) = ids.iter().find(|id| id.target() != target) {
        return Err(Error::InvalidArgument(format!(
            "bound {bad} does not estimate {target}_n"
        )));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n == 0) {
        return Err(Error::BelowMinimum {
            what: format!("{target}_n"),
            n,
            min_n: 1,
        });
    }
    let n_top = n_list.iter().copied().max().unwrap_or(1);
    let psi = HalfIntTable::<T>::new(n_top + 1);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let exact = match target {
            Target::V => v_exact(n)?,
            Target::W => w_exact(n)?,
        }
        .to_real::<T>();
        let mut cells = Vec::with_capacity(ids.len());
        for &id in ids {
            if n < id.min_n() {
                if partial {
                    cells.push(None);
                    continue;
                }
                return Err(Error::BelowMinimum {
                    what: id.to_string(),
                    n,
                    min_n: id.min_n(),
                });
            }
            let value = eval_bound_with(&psi, id, n)?;
            let rec = EvaluationRecord::new(n, id, value, exact);
            cells.push(Some(TableCell {
                value,
                gap: rec.gap,
            }));
        }
        rows.push(TableRow { n, exact, cells });
    }
    Ok(BoundTable {
        target,
        ids: ids.to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_margins_match_direct_ratios() {
        let ctx = SweepContext::<f64>::psi_only(60);
        for chain in OrderingChain::ALL {
            let (a, b) = chain.pair();
            for n in chain.min_n()..=60 {
                let direct = (ctx.eval(a, n).unwrap() / ctx.eval(b, n).unwrap()).ln();
                let direct = if a.side() == Side::Upper { -direct } else { direct };
                let m = chain.log_margin(&ctx, n).unwrap();
                assert!((m - direct).abs() < 1e-13, "{chain:?} n={n}: {m} vs {direct}");
            }
        }
    }

    #[test]
    fn chain_margins_at_large_n() {
        // 50-digit reference values
        let ctx = SweepContext::<f64>::psi_only(1);
        let m = OrderingChain::PAbove443.log_margin(&ctx, 10_000).unwrap();
        assert!((m / 4.996_001_979_755_295e-17 - 1.0).abs() < 1e-6);
        let m = OrderingChain::RefinedBelow51(1).log_margin(&ctx, 10_000).unwrap();
        assert!((m / 4.996_002_065_787_003e-17 - 1.0).abs() < 1e-6);
        let m = OrderingChain::RefinedBelow51(3).log_margin(&ctx, 6_000).unwrap();
        assert!((m / 1.154_327_021_450_250e-15 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn d_chain_breaks_at_nine() {
        let ctx = SweepContext::<f64>::psi_only(20);
        let v = chain_violations(&ctx, OrderingChain::DAboveBorgwardt, 20).unwrap();
        assert_eq!(v, (9..=20).collect::<Vec<_>>());
    }
    use crate::bounds::eval_bound;

    #[test]
    fn verify_small_examples() {
        let recs = verify_bounds::<f64>(&[BoundId::WUpper51], 3);
        assert_eq!(recs.len(), 3);
        let expected = [0.010_785_9, 0.003_263_2, 0.001_380_0];
        for (r, e) in recs.iter().zip(expected) {
            assert!(r.side_ok);
            assert!((r.gap - e).abs() < 5e-7, "n = {}: {}", r.n, r.gap);
        }
        let recs = verify_bounds::<f64>(&[BoundId::VLowerBorgwardt], 2);
        assert!(recs.iter().all(|r| r.side_ok));
        assert_eq!(recs[0].exact_value, 0.5);
        assert!((recs[1].exact_value - 2.0 / std::f64::consts::PI).abs() < 1e-16);
        let recs = verify_bounds::<f64>(&[BoundId::VUpperAlzer], 1);
        assert!(recs[0].gap.abs() <= 1e-15 && recs[0].side_ok);
    }

    #[test]
    fn merkle_q_skipped_at_n1() {
        let recs = verify_bounds::<f64>(&[BoundId::WUpperMerkleQ], 1);
        assert!(recs.is_empty());
    }

    #[test]
    fn fault_injection_flags_record() {
        let mut recs = verify_bounds::<f64>(&[BoundId::WUpper51], 2);
        recs[0].inject_fault();
        assert!(!recs[0].side_ok);
        assert_eq!(summarize(&recs)[0].violations, 1);
    }

    #[test]
    fn crossover_examples() {
        let r = crossover(BoundId::VUpperH(1), BoundId::VUpperBorgwardt, 50).unwrap();
        assert_eq!(r.sharper_set, (1..=7).collect::<Vec<_>>());
        assert_eq!(r.threshold, Some(7));
        assert!(r.is_prefix());
        let r = crossover(BoundId::VUpperH(1), BoundId::VUpperAlzer, 50).unwrap();
        assert!(r.sharper_set.is_empty() && r.threshold.is_none());
        assert!(crossover(BoundId::VUpperH(1), BoundId::VLowerAlzer, 10).is_err());
        assert!(crossover(BoundId::VUpperH(1), BoundId::WUpper51, 10).is_err());
    }

    #[test]
    fn crossover_is_antisymmetric() {
        let pairs = [
            (BoundId::VUpperH(2), BoundId::VUpperAlzer),
            (BoundId::VLowerD(1), BoundId::VLowerAlzer),
            (BoundId::WUpper51, BoundId::WUpperMerkle),
            (BoundId::WLowerP, BoundId::WLowerTrunc(2)),
        ];
        for (a, b) in pairs {
            let ab = crossover(a, b, 200).unwrap();
            let ba = crossover(b, a, 200).unwrap();
            assert!(ab.sharper_set.iter().all(|n| !ba.sharper_set.contains(n)));
            assert_eq!(ab.ties, ba.ties);
            assert_eq!(
                ab.sharper_set.len() + ba.sharper_set.len() + ab.ties.len(),
                (ab.n_max - ab.first_n + 1) as usize
            );
        }
    }

    #[test]
    fn truncated_product_thresholds() {
        let r1 = remark1_r(1, 1_000_000).unwrap();
        let r2 = remark1_r(2, 1_000_000).unwrap();
        assert!(r1 >= 1 && r2 >= 1);
        assert_eq!(remark1_r(3, 0), None);
        assert!(remark1_upper_check(1, 100_000));
        assert!(remark1_upper_check(2, 100_000));
        assert!(remark1_upper_check(100, 10_000));
    }

    #[test]
    fn remark1_r_is_minimal() {
        for n in 1..6u64 {
            let r = remark1_r(n, 1_000_000).unwrap();
            let target = (std::f64::consts::PI * (2 * n + 1) as f64).sqrt() / 2.0;
            let p: f64 = (1..r).map(|k| ball_factor(n, k)).product();
            assert!(p <= target);
            assert!(p * ball_factor(n, r) > target);
        }
    }

    #[test]
    fn klein_rota_small() {
        assert!(klein_rota_check(1));
        assert!(klein_rota_check(2));
        assert!(klein_rota_check(500));
        assert!(log_concavity_violations(500).is_empty());
    }

    #[test]
    fn elementary_inequalities() {
        let c = log_ratio_check(3).unwrap();
        assert!(c.holds && c.lhs == 0.25);
        assert!(log_ratio_check(2).is_err());
        assert!(d_reduction_check(2).unwrap().holds);
        assert!(log_refinement_check(1).unwrap().holds);
    }

    #[test]
    fn table_examples() {
        let t = make_table::<f64>(
            Target::V,
            &[BoundId::VLowerBorgwardt, BoundId::VLowerD(1)],
            &[2],
            false,
        )
        .unwrap();
        let row = &t.rows[0];
        assert!((row.exact - 0.636_619_8).abs() < 1e-7);
        assert!((row.cells[0].unwrap().value - 0.564_189_6).abs() < 1e-7);
        assert!((row.cells[1].unwrap().value - 0.631_983_2).abs() < 1e-7);

        let t = make_table::<f64>(Target::W, &[BoundId::WUpper51], &[1], false).unwrap();
        assert!((t.rows[0].exact - 1.273_239_5).abs() < 1e-7);
        assert!((t.rows[0].cells[0].unwrap().value - 1.284_025_4).abs() < 1e-7);

        let t = make_table::<f64>(Target::W, &[BoundId::WUpper51], &[], false).unwrap();
        assert!(t.rows.is_empty());
    }

    #[test]
    fn table_domain_handling() {
        let ids = [BoundId::WUpperMerkleQ, BoundId::WUpper51];
        assert!(make_table::<f64>(Target::W, &ids, &[1], false).is_err());
        let t = make_table::<f64>(Target::W, &ids, &[1, 2], true).unwrap();
        assert!(t.rows[0].cells[0].is_none() && t.rows[0].cells[1].is_some());
        assert!(make_table::<f64>(Target::V, &ids, &[2], true).is_err());
        assert!(make_table::<f64>(Target::W, &[BoundId::WUpper51], &[0], true).is_err());
    }

    #[test]
    fn table_matches_eval_bound_bitwise() {
        let ids = crate::bounds::catalog_ids(Target::W);
        let ns: Vec<u64> = (2..120).step_by(7).collect();
        let t = make_table::<f64>(Target::W, &ids, &ns, false).unwrap();
        for row in &t.rows {
            for (id, cell) in ids.iter().zip(&row.cells) {
                let direct = eval_bound::<f64>(*id, row.n).unwrap();
                assert_eq!(cell.unwrap().value.to_bits(), direct.to_bits());
            }
        }
    }
}
