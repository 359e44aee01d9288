//! Digamma and trigamma at integer and half-integer arguments.
//!
//! Every argument the bound catalog needs has the form `n/2`, so the
//! canonical path is the closed form: an exact rational harmonic-type sum
//! plus the constants γ, log 4 and π². The rational part is accumulated in
//! arbitrary precision and rounded once. The series representation of ψ is
//! kept as an independent cross-check and for arguments off the half-integer
//! lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gautschi::TruncationControl;
use crate::scalar::Scalar;

/// Named constants: γ, π, log 4, α = ψ(3/2) = 2 − γ − log 4 and β = π/2 − 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants<T> {
    pub gamma_euler: T,
    pub pi: T,
    pub log4: T,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> Constants<T> {
    pub fn new() -> Self {
        let two = T::lit(2.0);
        let gamma_euler = T::euler_gamma();
        let pi = T::PI();
        let log4 = two * T::LN_2();
        Self {
            gamma_euler,
            pi,
            log4,
            alpha: two - gamma_euler - log4,
            beta: T::FRAC_PI_2() - T::one(),
        }
    }
}

impl<T: Scalar> Default for Constants<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// A positive half-integer `twice / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: u64,
}

impl HalfInteger {
    pub fn from_twice(twice: u64) -> Result<Self> {
        if twice < 1 {
            return Err(Error::InvalidArgument(
                "half-integer argument must be at least 1/2".into(),
            ));
        }
        Ok(Self { twice })
    }

    /// The integer `k` as a half-integer.
    pub fn integer(k: u64) -> Result<Self> {
        Self::from_twice(2 * k)
    }

    /// Recognises a real that lies on the half-integer lattice.
    pub fn from_real<T: Scalar>(x: T) -> Option<Self> {
        let twice = x * T::lit(2.0);
        if twice < T::one() || twice != twice.round() || twice.as_f64() > 9.0e15 {
            return None;
        }
        twice.to_u64().map(|twice| Self { twice })
    }

    pub fn twice(self) -> u64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_real<T: Scalar>(self) -> T {
        T::from_count(self.twice) / T::lit(2.0)
    }
}

/// Running sum of unit fractions `Σ 1/q` kept over the lcm of the
/// denominators seen so far. Additions cost a small-by-big gcd only.
#[derive(Debug, Clone)]
pub(crate) struct UnitFractionSum {
    numer: BigInt,
    denom: BigInt,
}

impl UnitFractionSum {
    pub(crate) fn new() -> Self {
        Self {
            numer: BigInt::zero(),
            denom: BigInt::one(),
        }
    }

    pub(crate) fn add_unit(&mut self, q: u64) {
        debug_assert!(q > 0);
        let rem = (&self.denom % q).to_u64().expect("remainder below q");
        let g = rem.gcd(&q);
        let scale = q / g;
        if scale != 1 {
            self.denom *= scale;
            self.numer *= scale;
        }
        self.numer += &self.denom / q;
    }

    /// Correctly rounded value, optionally scaled by a small integer.
    pub(crate) fn to_scalar<T: Scalar>(&self, factor: u64) -> T {
        if factor == 1 {
            T::from_ratio_parts(&self.numer, &self.denom)
        } else {
            T::from_ratio_parts(&(&self.numer * factor), &self.denom)
        }
    }

    pub(crate) fn to_rational(&self) -> BigRational {
        BigRational::new(self.numer.clone(), self.denom.clone())
    }
}

fn sum_units(terms: impl Iterator<Item = u64>) -> UnitFractionSum {
    let mut acc = UnitFractionSum::new();
    for q in terms {
        acc.add_unit(q);
    }
    acc
}

/// `ψ(x) + γ` in exact form: `rational − log 4` when `x` is a proper
/// half-integer, `rational` alone when `x` is an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedDigamma {
    pub rational: BigRational,
    pub minus_log4: bool,
}

/// `ψ'(x) = pi_sq_coeff · π² − rational`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigammaParts {
    pub pi_sq_coeff: BigRational,
    pub rational: BigRational,
}

/// Sum underlying `ψ(x) + γ`: `H_{j−1}` at `x = j`, `2 Σ_{i≤m} 1/(2i−1)` at
/// `x = m + 1/2`. Returned with the integer factor to apply.
fn digamma_sum(x: HalfInteger) -> (UnitFractionSum, u64) {
    if x.is_integer() {
        let j = x.twice / 2;
        (sum_units(1..j), 1)
    } else {
        let m = x.twice / 2;
        (sum_units((1..=m).map(|i| 2 * i - 1)), 2)
    }
}

fn trigamma_sum(x: HalfInteger) -> (UnitFractionSum, u64) {
    if x.is_integer() {
        let j = x.twice / 2;
        (sum_units((1..j).map(|i| i * i)), 1)
    } else {
        let m = x.twice / 2;
        (sum_units((1..=m).map(|i| (2 * i - 1) * (2 * i - 1))), 4)
    }
}

pub fn digamma_exact(x: HalfInteger) -> ShiftedDigamma {
    let (sum, factor) = digamma_sum(x);
    ShiftedDigamma {
        rational: sum.to_rational() * BigInt::from(factor),
        minus_log4: !x.is_integer(),
    }
}

pub fn trigamma_exact(x: HalfInteger) -> TrigammaParts {
    let (sum, factor) = trigamma_sum(x);
    let coeff = if x.is_integer() { 6 } else { 2 };
    TrigammaParts {
        pi_sq_coeff: BigRational::new(BigInt::one(), BigInt::from(coeff)),
        rational: sum.to_rational() * BigInt::from(factor),
    }
}

fn shifted_from_sum<T: Scalar>(x: HalfInteger, sum: &UnitFractionSum, factor: u64) -> T {
    let r: T = sum.to_scalar(factor);
    if x.is_integer() {
        r
    } else {
        r - Constants::<T>::new().log4
    }
}

fn trigamma_from_sum<T: Scalar>(x: HalfInteger, sum: &UnitFractionSum, factor: u64) -> T {
    let pi = T::PI();
    let lead = if x.is_integer() {
        pi * pi / T::lit(6.0)
    } else {
        pi * pi / T::lit(2.0)
    };
    lead - sum.to_scalar::<T>(factor)
}

/// Source of ψ + γ and ψ' values at half-integers.
///
/// Both implementations return bit-identical values: each is the same
/// exact rational rounded once and combined with the same constants.
pub trait PsiSource<T: Scalar>: Sync {
    /// `ψ(x) + γ`.
    fn digamma_shifted(&self, x: HalfInteger) -> T;
    fn trigamma(&self, x: HalfInteger) -> T;
}

/// Computes every value from scratch.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForm;

impl<T: Scalar> PsiSource<T> for ClosedForm {
    fn digamma_shifted(&self, x: HalfInteger) -> T {
        let (sum, factor) = digamma_sum(x);
        shifted_from_sum(x, &sum, factor)
    }

    fn trigamma(&self, x: HalfInteger) -> T {
        let (sum, factor) = trigamma_sum(x);
        trigamma_from_sum(x, &sum, factor)
    }
}

/// Precomputed ψ + γ and ψ' for every half-integer up to a cap, built by
/// walking the four exact sums incrementally. Arguments beyond the cap fall
/// back to [`ClosedForm`].
#[derive(Debug, Clone)]
pub struct HalfIntTable<T> {
    shifted: Vec<T>,
    trigamma: Vec<T>,
}

impl<T: Scalar> HalfIntTable<T> {
    /// Table covering `x = 1/2, 1, …, max_twice/2`.
    pub fn new(max_twice: u64) -> Self {
        let max_twice = max_twice.max(1);
        let len = max_twice as usize;
        let ((int_shift, half_shift), (int_tri, half_tri)) = rayon::join(
            || {
                rayon::join(
                    || Self::chain(max_twice, true, false),
                    || Self::chain(max_twice, false, false),
                )
            },
            || {
                rayon::join(
                    || Self::chain(max_twice, true, true),
                    || Self::chain(max_twice, false, true),
                )
            },
        );
        let mut shifted = vec![T::zero(); len];
        let mut trigamma = vec![T::zero(); len];
        for (twice, v) in int_shift.into_iter().chain(half_shift) {
            shifted[(twice - 1) as usize] = v;
        }
        for (twice, v) in int_tri.into_iter().chain(half_tri) {
            trigamma[(twice - 1) as usize] = v;
        }
        Self { shifted, trigamma }
    }

    fn chain(max_twice: u64, integer: bool, squared: bool) -> Vec<(u64, T)> {
        let mut out = Vec::new();
        let mut acc = UnitFractionSum::new();
        let mut twice = if integer { 2 } else { 1 };
        let mut step = 0u64;
        while twice <= max_twice {
            let x = HalfInteger { twice };
            if step > 0 {
                // integer chain adds 1/(j−1)^p, half chain adds 1/(2m−1)^p
                let base = if integer { step } else { 2 * step - 1 };
                acc.add_unit(if squared { base * base } else { base });
            }
            let v = match (integer, squared) {
                (true, false) => shifted_from_sum(x, &acc, 1),
                (false, false) => shifted_from_sum(x, &acc, 2),
                (true, true) => trigamma_from_sum(x, &acc, 1),
                (false, true) => trigamma_from_sum(x, &acc, 4),
            };
            out.push((twice, v));
            twice += 2;
            step += 1;
        }
        out
    }

    pub fn max_twice(&self) -> u64 {
        self.shifted.len() as u64
    }
}

impl<T: Scalar> PsiSource<T> for HalfIntTable<T> {
    fn digamma_shifted(&self, x: HalfInteger) -> T {
        match self.shifted.get((x.twice - 1) as usize) {
            Some(&v) => v,
            None => ClosedForm.digamma_shifted(x),
        }
    }

    fn trigamma(&self, x: HalfInteger) -> T {
        match self.trigamma.get((x.twice - 1) as usize) {
            Some(&v) => v,
            None => ClosedForm.trigamma(x),
        }
    }
}

/// ψ(x) at a half-integer from the closed form.
pub fn digamma_closed<T: Scalar>(x: HalfInteger) -> T {
    PsiSource::<T>::digamma_shifted(&ClosedForm, x) - T::euler_gamma()
}

/// ψ'(x) at a half-integer from the closed form.
pub fn trigamma_closed<T: Scalar>(x: HalfInteger) -> T {
    PsiSource::<T>::trigamma(&ClosedForm, x)
}

/// ψ(u) − ψ(v). Same-lattice arguments cancel γ and log 4 and are rounded
/// once from the exact rational difference.
pub fn digamma_diff<T: Scalar>(u: HalfInteger, v: HalfInteger) -> T {
    if u == v {
        return T::zero();
    }
    if u.is_integer() == v.is_integer() {
        let du = digamma_exact(u);
        let dv = digamma_exact(v);
        T::from_rational(&(du.rational - dv.rational))
    } else {
        digamma_closed::<T>(u) - digamma_closed::<T>(v)
    }
}

/// Value of a truncated series together with a bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate<T> {
    pub value: T,
    pub terms: u64,
    pub error_bound: T,
}

/// ψ(x) from the series `−γ + Σ_{k≥1} (1/k − 1/(k+x))`, `x > −1`.
///
/// `FixedM(K)` returns the plain partial sum with error bound `|x|/K`.
/// `Tolerance(eps, _)` adds the midpoint of the integral bracket
/// `[ln(1 + x/(K+1)), ln(1 + x/K)]` for the tail and picks the smallest `K`
/// whose bracket half-width is at most `eps/4`.
pub fn digamma_series<T: Scalar>(x: T, ctrl: TruncationControl) -> Result<SeriesEstimate<T>> {
    if !(x > -T::one()) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "digamma series requires x > -1, got {x}"
        )));
    }
    ctrl.validate()?;
    let gamma = T::euler_gamma();
    if x == T::zero() {
        return Ok(SeriesEstimate {
            value: -gamma,
            terms: 0,
            error_bound: T::zero(),
        });
    }
    let partial = |k_max: u64| -> T {
        // smallest terms first
        let mut s = T::zero();
        for k in (1..=k_max).rev() {
            let kf = T::from_count(k);
            s = s + x / (kf * (kf + x));
        }
        s
    };
    match ctrl {
        TruncationControl::FixedM(k_max) => {
            let bound = if k_max == 0 {
                T::infinity()
            } else {
                x.abs() / T::from_count(k_max)
            };
            Ok(SeriesEstimate {
                value: -gamma + partial(k_max),
                terms: k_max,
                error_bound: bound,
            })
        }
        TruncationControl::Tolerance { eps, max_terms } => {
            let eps_t = T::lit(eps);
            let half_width = |k: u64| {
                let kf = T::from_count(k);
                ((x / kf).ln_1p() - (x / (kf + T::one())).ln_1p()).abs() / T::lit(2.0)
            };
            let target = eps_t / T::lit(4.0);
            let guess = (T::lit(2.0) * x.abs() / eps_t).sqrt().ceil().max(T::one());
            let mut k = guess.to_u64().unwrap_or(u64::MAX).max(1);
            while k > 1 && half_width(k - 1) <= target {
                k -= 1;
            }
            while half_width(k) > target && k <= max_terms {
                k += 1 + k / 64;
            }
            if k > max_terms {
                let s = partial(max_terms);
                return Err(Error::NonConvergence {
                    partial: (-gamma + s).as_f64(),
                    tail_bound: (x.abs() / T::from_count(max_terms)).as_f64(),
                    terms: max_terms,
                });
            }
            let kf = T::from_count(k);
            let tail = ((x / kf).ln_1p() + (x / (kf + T::one())).ln_1p()) / T::lit(2.0);
            Ok(SeriesEstimate {
                value: -gamma + (partial(k) + tail),
                terms: k,
                error_bound: half_width(k),
            })
        }
    }
}

/// ψ'(x) for real `x > 0` from `Σ_{k≥0} 1/(k+x)²` with an integral-bracket
/// tail; used off the half-integer lattice.
pub fn trigamma_series<T: Scalar>(x: T, eps: f64) -> Result<SeriesEstimate<T>> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "trigamma requires x > 0, got {x}"
        )));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    // Σ_{k≥K} g(k) ∈ [1/(K+x), 1/(K+x) + 1/(K+x)²]
    let k = ((2.0 / eps).sqrt() - x.as_f64()).ceil().max(1.0) as u64;
    let mut s = T::zero();
    for j in (0..k).rev() {
        let d = T::from_count(j) + x;
        s = s + T::one() / (d * d);
    }
    let d = T::from_count(k) + x;
    let lo = T::one() / d;
    let width = T::one() / (d * d);
    Ok(SeriesEstimate {
        value: s + lo + width / T::lit(2.0),
        terms: k,
        error_bound: width / T::lit(2.0),
    })
}

/// Outcome of checking `lhs < rhs` for one of the auxiliary inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IneqCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// `log(t + 1/2) − 1/t < ψ(t)` for `t > 0`.
pub fn psi_lower_ineq<T: Scalar>(t: T) -> Result<IneqCheck<T>> {
    if !(t > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "inequality requires t > 0, got {t}"
        )));
    }
    let lhs = (t + T::lit(0.5)).ln() - t.recip();
    let rhs = match HalfInteger::from_real(t) {
        Some(h) => digamma_closed(h),
        None => {
            digamma_series(
                t,
                TruncationControl::Tolerance {
                    eps: 1e-10,
                    max_terms: 100_000_000,
                },
            )?
            .value
        }
    };
    Ok(IneqCheck {
        lhs,
        rhs,
        holds: lhs < rhs,
    })
}

/// `1/(x+1) + 1/x² + 1/(2(x+1)²) < ψ'(x)` for `x > 0`.
pub fn trigamma_lower_ineq<T: Scalar>(x: T) -> Result<IneqCheck<T>> {
    if !(x > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "inequality requires x > 0, got {x}"
        )));
    }
    let one = T::one();
    let xp1 = x + one;
    let lhs = xp1.recip() + (x * x).recip() + (T::lit(2.0) * xp1 * xp1).recip();
    let rhs = match HalfInteger::from_real(x) {
        Some(h) => trigamma_closed(h),
        None => trigamma_series(x, 1e-12)?.value,
    };
    Ok(IneqCheck {
        lhs,
        rhs,
        holds: rhs > lhs,
    })
}
