//! Unit-ball volumes Ω_n and the ratios v_n = Ω_{n−1}/Ω_n and
//! w_n = Ω_n²/(Ω_{n−1}Ω_{n+1}).
//!
//! For integer n each of these is a rational multiple of an integer power
//! of π, carried exactly as an [`ExactBallValue`]. The exact values are the
//! reference for everything else; the infinite-product forms are evaluated
//! here as approximations under test.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gautschi::{joint_factor, JointFactorArgs, ProductEstimate, TruncationControl};
use crate::scalar::Scalar;

/// π truncated to 30 significant digits, as `PI_30_NUMER / 10^29`.
const PI_30_NUMER: u128 = 314_159_265_358_979_323_846_264_338_327;
const PI_30_EXP10: u32 = 29;

/// Rational enclosure `[lo, hi]` of π with `hi − lo = 10^−29`.
pub fn pi_bounds() -> (BigRational, BigRational) {
    let den = BigInt::from(10u32).pow(PI_30_EXP10);
    let lo = BigRational::new(BigInt::from(PI_30_NUMER), den.clone());
    let hi = BigRational::new(BigInt::from(PI_30_NUMER + 1), den);
    (lo, hi)
}

/// `mantissa · π^pi_power` with a positive, reduced rational mantissa.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactBallValue {
    mantissa: BigRational,
    pi_power: i64,
}

impl ExactBallValue {
    pub fn new(mantissa: BigRational, pi_power: i64) -> Result<Self> {
        if !mantissa.is_positive() {
            return Err(Error::InvalidArgument(
                "ball value mantissa must be positive".into(),
            ));
        }
        Ok(Self { mantissa, pi_power })
    }

    pub fn mantissa(&self) -> &BigRational {
        &self.mantissa
    }

    pub fn pi_power(&self) -> i64 {
        self.pi_power
    }

    pub fn recip(&self) -> Self {
        Self {
            mantissa: self.mantissa.recip(),
            pi_power: -self.pi_power,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            mantissa: &self.mantissa * &other.mantissa,
            pi_power: self.pi_power + other.pi_power,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        Self {
            mantissa: &self.mantissa / &other.mantissa,
            pi_power: self.pi_power - other.pi_power,
        }
    }

    /// Value as a real, with π at full precision of `T`.
    pub fn to_real<T: Scalar>(&self) -> T {
        let m = T::from_rational(&self.mantissa);
        let pi = T::PI();
        if m.is_normal() {
            match self.pi_power.cmp(&0) {
                Ordering::Equal => m,
                Ordering::Greater => m * pi.powi(self.pi_power as i32),
                Ordering::Less => m / pi.powi((-self.pi_power) as i32),
            }
        } else {
            // mantissa outside the range of T: go through logarithms
            let ln = ln_rational(&self.mantissa) + self.pi_power as f64 * std::f64::consts::PI.ln();
            T::lit(ln.exp())
        }
    }

    /// Exact comparison against a rational, using the 30-digit enclosure of
    /// π. `None` when the enclosure cannot separate the two.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        if self.pi_power == 0 {
            return Some(self.mantissa.cmp(r));
        }
        let (lo, hi) = pi_bounds();
        let e = self.pi_power.unsigned_abs() as usize;
        // cross-multiplied so that no big gcd is ever taken
        let bracket = |pi: &BigRational| -> Ordering {
            let pe_n = num_traits::pow(pi.numer().clone(), e);
            let pe_d = num_traits::pow(pi.denom().clone(), e);
            let (num, den) = if self.pi_power > 0 {
                (self.mantissa.numer() * pe_n, self.mantissa.denom() * pe_d)
            } else {
                (self.mantissa.numer() * pe_d, self.mantissa.denom() * pe_n)
            };
            (num * r.denom()).cmp(&(r.numer() * den))
        };
        let (low, high) = if self.pi_power > 0 { (&lo, &hi) } else { (&hi, &lo) };
        if bracket(low) == Ordering::Greater {
            Some(Ordering::Greater)
        } else if bracket(high) == Ordering::Less {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Rendered as `p/q · pi^k`, or just `p/q` when `k = 0`.
    pub fn symbolic(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ExactBallValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mantissa)?;
        if self.pi_power != 0 {
            write!(f, " · pi^{}", self.pi_power)?;
        }
        Ok(())
    }
}

fn ln_rational(r: &BigRational) -> f64 {
    fn ln_big(x: &BigInt) -> f64 {
        let bits = x.bits();
        let shift = bits.saturating_sub(64);
        let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

/// `odd / 2^exp2` (or its reciprocal) reduced by cancelling powers of two.
fn pow2_fraction(other: BigInt, exp2: u64, pow2_on_top: bool) -> BigRational {
    let tz = other.trailing_zeros().unwrap_or(0).min(exp2);
    let other = other >> tz;
    let p2 = BigInt::one() << (exp2 - tz);
    if pow2_on_top {
        BigRational::new_raw(p2, other)
    } else {
        BigRational::new_raw(other, p2)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c *= n - i;
        c /= i + 1;
    }
    c
}

fn factorial_range(from: u64, to: u64) -> BigInt {
    let mut p = BigInt::one();
    for i in from..=to {
        p *= i;
    }
    p
}

/// `r · a/b`, reduced, for a reduced positive `r` and small `a, b`.
fn scale_reduced(r: &BigRational, a: u64, b: u64) -> BigRational {
    let g = a.gcd(&b);
    let (a, b) = (a / g, b / g);
    let ga = a.gcd(&(r.denom() % a).to_u64().expect("small remainder"));
    let gb = b.gcd(&(r.numer() % b).to_u64().expect("small remainder"));
    let numer = (r.numer() / gb) * (a / ga);
    let denom = (r.denom() / ga) * (b / gb);
    BigRational::new_raw(numer, denom)
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::BelowMinimum {
            what: what.into(),
            n,
            min_n: 1,
        })
    } else {
        Ok(())
    }
}

/// Ω_n = π^{n/2}/Γ(1 + n/2).
pub fn omega_exact(n: u64) -> ExactBallValue {
    let k = n / 2;
    let mantissa = if n % 2 == 0 {
        BigRational::new_raw(BigInt::one(), factorial_range(1, k))
    } else {
        // 2^{2k+1} k!/(2k+1)! = 2^{2k+1} / ((k+1)(k+2)…(2k+1))
        pow2_fraction(factorial_range(k + 1, 2 * k + 1), 2 * k + 1, true)
    };
    ExactBallValue {
        mantissa,
        pi_power: k as i64,
    }
}

/// v_n = Ω_{n−1}/Ω_n, n ≥ 1.
pub fn v_exact(n: u64) -> Result<ExactBallValue> {
    require_positive(n, "v_n")?;
    let k = n / 2;
    Ok(if n % 2 == 1 {
        // (2k+1) C(2k,k) / 2^{2k+1}
        ExactBallValue {
            mantissa: pow2_fraction(binomial(2 * k, k) * (2 * k + 1), 2 * k + 1, false),
            pi_power: 0,
        }
    } else {
        // 2^{2k−1} / C(2k−1,k) · π^{−1}
        ExactBallValue {
            mantissa: pow2_fraction(binomial(2 * k - 1, k), 2 * k - 1, true),
            pi_power: -1,
        }
    })
}

/// w_n = v_{n+1}/v_n, n ≥ 1.
pub fn w_exact(n: u64) -> Result<ExactBallValue> {
    require_positive(n, "w_n")?;
    let k = n / 2;
    Ok(if n % 2 == 0 {
        // (2k+1) C(2k,k) C(2k−1,k) / 2^{4k} · π
        let top = binomial(2 * k, k) * binomial(2 * k - 1, k) * (2 * k + 1);
        ExactBallValue {
            mantissa: pow2_fraction(top, 4 * k, false),
            pi_power: 1,
        }
    } else {
        // 2^{4k+2} / ((2k+1) C(2k,k) C(2k+1,k+1)) · π^{−1}
        let bottom = binomial(2 * k, k) * binomial(2 * k + 1, k + 1) * (2 * k + 1);
        ExactBallValue {
            mantissa: pow2_fraction(bottom, 4 * k + 2, true),
            pi_power: -1,
        }
    })
}

/// Exact (v_n, w_n) pairs for consecutive n, driven by the recurrence
/// `v_{n+1} = (n+1)/(2π v_n)`. Each step costs a few small-by-big
/// operations, which makes sweeps to large n cheap.
#[derive(Debug, Clone)]
pub struct BallSweep {
    n: u64,
    v: ExactBallValue,
}

/// One step of [`BallSweep`].
#[derive(Debug, Clone)]
pub struct BallRatios {
    pub n: u64,
    pub v: ExactBallValue,
    pub w: ExactBallValue,
}

impl BallSweep {
    pub fn new() -> Self {
        Self {
            n: 1,
            v: ExactBallValue {
                mantissa: BigRational::new_raw(BigInt::one(), BigInt::from(2)),
                pi_power: 0,
            },
        }
    }
}

impl Default for BallSweep {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for BallSweep {
    type Item = BallRatios;

    fn next(&mut self) -> Option<BallRatios> {
        let n = self.n;
        let inv = self.v.mantissa.recip();
        let next_v = ExactBallValue {
            mantissa: scale_reduced(&inv, n + 1, 2),
            pi_power: -1 - self.v.pi_power,
        };
        // w_n = (n+1)/(2 m_n²) · π^{pp_{n+1} − pp_n}
        let w = ExactBallValue {
            mantissa: scale_reduced(
                &BigRational::new_raw(inv.numer() * inv.numer(), inv.denom() * inv.denom()),
                n + 1,
                2,
            ),
            pi_power: next_v.pi_power - self.v.pi_power,
        };
        let v = std::mem::replace(&mut self.v, next_v);
        self.n += 1;
        Some(BallRatios { n, v, w })
    }
}

/// Real-valued v_n and w_n for `n = 1..=n_max`, index `n − 1`.
pub fn exact_reals<T: Scalar>(n_max: u64) -> (Vec<T>, Vec<T>) {
    BallSweep::new()
        .take(n_max as usize)
        .map(|r| (r.v.to_real::<T>(), r.w.to_real::<T>()))
        .unzip()
}

/// v_n from the joint-factor product: `f((n+1)/2, 1/2)/π`.
pub fn v_product<T: Scalar>(n: u64, ctrl: TruncationControl) -> Result<ProductEstimate<T>> {
    require_positive(n, "v_n")?;
    let est = joint_factor(&JointFactorArgs::<T>::ball(n)?, ctrl)?;
    Ok(ProductEstimate {
        value: est.value / T::PI(),
        ..est
    })
}

/// Bound on `log w_n − log w_m(n)`: `Σ_{k>m} 1/((2k+n)²−1) = 1/(2(n+2m+1))`.
fn w_tail<T: Scalar>(n: u64, m: u64) -> T {
    T::one() / (T::lit(2.0) * T::from_count(n + 2 * m + 1))
}

fn w_partial<T: Scalar>(n: u64, m: u64) -> T {
    let mut p = T::one();
    for k in 1..=m {
        let q = T::from_count(2 * k + n);
        p = p * (T::one() + T::one() / (q * q - T::one()));
    }
    p
}

/// w_n from `∏_{k≥1} (2k+n)²/((2k+n)²−1)`.
pub fn w_product<T: Scalar>(n: u64, ctrl: TruncationControl) -> Result<ProductEstimate<T>> {
    require_positive(n, "w_n")?;
    ctrl.validate()?;
    let m = match ctrl {
        TruncationControl::FixedM(m) => m,
        TruncationControl::Tolerance { eps, max_terms } => {
            let eps_t = T::lit(eps);
            let guess = ((0.5 / eps - (n + 1) as f64) / 2.0).floor().max(0.0);
            let mut m = if guess > max_terms as f64 { max_terms } else { guess as u64 };
            while m > 0 && w_tail::<T>(n, m - 1) < eps_t {
                m -= 1;
            }
            while w_tail::<T>(n, m) >= eps_t && m < max_terms {
                m += 1;
            }
            if w_tail::<T>(n, m) >= eps_t {
                return Err(Error::NonConvergence {
                    partial: w_partial::<T>(n, max_terms).as_f64(),
                    tail_bound: w_tail::<T>(n, max_terms).as_f64(),
                    terms: max_terms,
                });
            }
            m
        }
    };
    Ok(ProductEstimate {
        value: w_partial(n, m),
        terms: m,
        tail_bound: w_tail(n, m),
    })
}

/// Ratio `Ω_{n+1}/Ω_{n−1} = 2π/(n+1)` as an exact value.
pub fn two_step_ratio(n: u64) -> ExactBallValue {
    ExactBallValue {
        mantissa: BigRational::new(BigInt::from(2), BigInt::from(n + 1)),
        pi_power: 1,
    }
}

impl ExactBallValue {
    /// True when the stored mantissa is in lowest terms.
    pub fn is_reduced(&self) -> bool {
        self.mantissa.numer().gcd(self.mantissa.denom()).is_one() && !self.mantissa.denom().is_zero()
    }
}
