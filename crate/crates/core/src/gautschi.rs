//! The joint-factor product for Γ(x+a)/Γ(x).
//!
//! For `x > 0` and `0 ≤ a < 1`,
//!
//! ```text
//! Γ(x+a)/Γ(x) = f(x,a)/Γ(1−a),   f(x,a) = ∏_{k≥1} k(x+k−1) / ((k−a)(k+x+a−1)).
//! ```
//!
//! Each factor equals `1 + c/((k−a)(k+b))` with `b = x+a−1` and
//! `c = a·b`, which is how the factors are evaluated. The tail of the
//! product is controlled through `|log t| ≤ |t−1|/min(1,t)` and the integral
//! comparison `Σ_{k>m} 1/((k−a)(k+b)) ≤ ∫_m^∞ dt/((t−a)(t+b))`.
//!
//! Convergence is `O(1/m)`; tolerance mode is practical for `eps ≳ 1e−6`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_EPS: f64 = 1e-6;
pub const DEFAULT_MAX_TERMS: u64 = 100_000_000;

/// How far to run an infinite product or series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationControl {
    /// Exactly `m` factors (the m-truncate).
    FixedM(u64),
    /// Smallest `m` whose tail bound falls below `eps`.
    Tolerance { eps: f64, max_terms: u64 },
}

impl TruncationControl {
    pub fn tolerance(eps: f64) -> Self {
        Self::Tolerance {
            eps,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::FixedM(_) => Ok(()),
            Self::Tolerance { eps, max_terms } => {
                if !(eps > 0.0) || !eps.is_finite() {
                    Err(Error::InvalidArgument(format!(
                        "tolerance must be positive, got {eps}"
                    )))
                } else if max_terms < 1 {
                    Err(Error::InvalidArgument("max_terms must be at least 1".into()))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl Default for TruncationControl {
    fn default() -> Self {
        Self::tolerance(DEFAULT_EPS)
    }
}

/// Validated `(x, a)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointFactorArgs<T> {
    x: T,
    a: T,
}

impl<T: Scalar> JointFactorArgs<T> {
    pub fn new(x: T, a: T) -> Result<Self> {
        if !(x > T::zero()) || !x.is_finite() {
            return Err(Error::InvalidArgument(format!("x must be positive, got {x}")));
        }
        // negative shifts are never needed by the bound catalog
        if !(a >= T::zero() && a < T::one()) {
            return Err(Error::InvalidArgument(format!(
                "shift a must satisfy 0 <= a < 1, got {a}"
            )));
        }
        Ok(Self { x, a })
    }

    /// `x = (n+1)/2`, `a = 1/2`: the factor behind Ω_{n−1}/Ω_n.
    pub fn ball(n: u64) -> Result<Self> {
        Self::new(T::from_count(n + 1) / T::lit(2.0), T::lit(0.5))
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn a(&self) -> T {
        self.a
    }

    fn b(&self) -> T {
        self.x + self.a - T::one()
    }

    fn c(&self) -> T {
        self.a * self.b()
    }

    /// The k-th factor minus one.
    #[inline]
    fn excess(&self, k: T) -> T {
        self.c() / ((k - self.a) * (k + self.b()))
    }

    /// Bound on `|log f − log f_m|`.
    pub fn tail_bound(&self, m: u64) -> T {
        let c = self.c();
        if c == T::zero() {
            return T::zero();
        }
        if m == 0 {
            let t1 = T::one() + self.excess(T::one());
            return self.excess(T::one()).abs() / t1.min(T::one()) + self.tail_bound(1);
        }
        let mf = T::from_count(m);
        let s = self.x + T::lit(2.0) * self.a - T::one();
        let integral = if s == T::zero() {
            (mf - self.a).recip()
        } else {
            (s / (mf - self.a)).ln_1p() / s
        };
        let next = T::one() + self.excess(mf + T::one());
        c.abs() * integral / next.min(T::one())
    }
}

/// A truncated product with the number of factors used and a bound on
/// `|log f − log value|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductEstimate<T> {
    pub value: T,
    pub terms: u64,
    pub tail_bound: T,
}

/// `f_m(x, a)`, the product of the first `m` factors.
pub fn joint_factor_truncate<T: Scalar>(args: &JointFactorArgs<T>, m: u64) -> T {
    let mut p = T::one();
    let mut k = T::zero();
    for _ in 0..m {
        k = k + T::one();
        p = p * (T::one() + args.excess(k));
    }
    p
}

/// `f(x, a)` under the given truncation policy.
pub fn joint_factor<T: Scalar>(
    args: &JointFactorArgs<T>,
    ctrl: TruncationControl,
) -> Result<ProductEstimate<T>> {
    ctrl.validate()?;
    let m = match ctrl {
        TruncationControl::FixedM(m) => m,
        TruncationControl::Tolerance { eps, max_terms } => {
            let eps = T::lit(eps);
            if args.tail_bound(max_terms) >= eps {
                return Err(Error::NonConvergence {
                    partial: joint_factor_truncate(args, max_terms).as_f64(),
                    tail_bound: args.tail_bound(max_terms).as_f64(),
                    terms: max_terms,
                });
            }
            if args.tail_bound(0) < eps {
                0
            } else {
                // tail_bound is non-increasing in m
                let (mut lo, mut hi) = (0u64, max_terms);
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if args.tail_bound(mid) < eps {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        }
    };
    Ok(ProductEstimate {
        value: joint_factor_truncate(args, m),
        terms: m,
        tail_bound: args.tail_bound(m),
    })
}

/// Γ(1−a) for the shifts with a closed form: `a = 0` and `a = 1/2`.
pub fn gamma_one_minus<T: Scalar>(a: T) -> Option<T> {
    if a == T::zero() {
        Some(T::one())
    } else if a == T::lit(0.5) {
        Some(T::PI().sqrt())
    } else {
        None
    }
}

/// Γ(x+a)/Γ(x) for `a ∈ {0, 1/2}`.
pub fn gautschi_ratio<T: Scalar>(args: &JointFactorArgs<T>, ctrl: TruncationControl) -> Result<T> {
    let g = gamma_one_minus(args.a()).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no closed form for Gamma(1 - a) at a = {}; use gautschi_ratio_with",
            args.a()
        ))
    })?;
    gautschi_ratio_with(args, ctrl, g)
}

/// Γ(x+a)/Γ(x) given a caller-supplied Γ(1−a).
pub fn gautschi_ratio_with<T: Scalar>(
    args: &JointFactorArgs<T>,
    ctrl: TruncationControl,
    gamma_one_minus_a: T,
) -> Result<T> {
    Ok(joint_factor(args, ctrl)?.value / gamma_one_minus_a)
}
