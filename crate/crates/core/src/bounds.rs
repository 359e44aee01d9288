//! Catalog of lower and upper bounds for v_n and w_n.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::{ClosedForm, Constants, HalfInteger, PsiSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Upper,
}

/// Which ratio a bound estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// v_n = Ω_{n−1}/Ω_n
    V,
    /// w_n = Ω_n²/(Ω_{n−1}Ω_{n+1})
    W,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::V => "v",
            Target::W => "w",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v" => Ok(Target::V),
            "w" => Ok(Target::W),
            _ => Err(Error::InvalidArgument(format!("unknown target `{s}`"))),
        }
    }
}

/// Every bound family; parameterized families carry the truncation order m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// f_m(n)/π
    VLowerTrunc(u32),
    /// d_n(m)
    VLowerD(u32),
    /// b_n = √(n/2π)
    VLowerBorgwardt,
    /// A_n = √((n+1/2)/2π)
    VLowerAlzer,
    /// h_n(m)
    VUpperH(u32),
    /// √((n+β)/2π), β = π/2 − 1
    VUpperAlzer,
    /// b_{n+1} = √((n+1)/2π)
    VUpperBorgwardt,
    /// ∏_{k≤m} (2k+n)²/((2k+n)²−1)
    WLowerTrunc(u32),
    /// exp(ψ'(n/2)/4 − 1/n²)
    WLowerTrigamma,
    /// exp[(n+3)/(2(n+2)²)]
    WLower443,
    /// p_n = (n+2)²/((n+1)(n+3)) · exp[(n+1)/(2(n+2)²)]
    WLowerP,
    /// √(1 + 1/(n+1))
    WLowerClassic,
    /// exp[1/(2(n+1))]
    WUpper51,
    /// (n+2)^{3/2}/((n+1)(n+3)^{1/2})
    WUpperMerkle,
    /// (1 + 2/n)^{1/4}, n ≥ 2
    WUpperMerkleQ,
    /// √(1 + 1/n)
    WUpperAlzer,
    /// truncate(m) · exp[1/(2(n+2m+1))]
    WUpperRefined(u32),
}

pub const FAMILY_COUNT: usize = 17;

impl BoundId {
    pub fn side(self) -> Side {
        use BoundId::*;
        match self {
            VLowerTrunc(_) | VLowerD(_) | VLowerBorgwardt | VLowerAlzer | WLowerTrunc(_)
            | WLowerTrigamma | WLower443 | WLowerP | WLowerClassic => Side::Lower,
            _ => Side::Upper,
        }
    }

    pub fn target(self) -> Target {
        use BoundId::*;
        match self {
            VLowerTrunc(_) | VLowerD(_) | VLowerBorgwardt | VLowerAlzer | VUpperH(_)
            | VUpperAlzer | VUpperBorgwardt => Target::V,
            _ => Target::W,
        }
    }

    pub fn min_n(self) -> u64 {
        match self {
            BoundId::WUpperMerkleQ => 2,
            _ => 1,
        }
    }

    pub fn order(self) -> Option<u32> {
        use BoundId::*;
        match self {
            VLowerTrunc(m) | VLowerD(m) | VUpperH(m) | WLowerTrunc(m) | WUpperRefined(m) => Some(m),
            _ => None,
        }
    }

    /// Upper-case family name, e.g. `V_LOWER_D`.
    pub fn family(self) -> &'static str {
        use BoundId::*;
        match self {
            VLowerTrunc(_) => "V_LOWER_TRUNC",
            VLowerD(_) => "V_LOWER_D",
            VLowerBorgwardt => "V_LOWER_BORGWARDT",
            VLowerAlzer => "V_LOWER_ALZER",
            VUpperH(_) => "V_UPPER_H",
            VUpperAlzer => "V_UPPER_ALZER",
            VUpperBorgwardt => "V_UPPER_BORGWARDT",
            WLowerTrunc(_) => "W_LOWER_TRUNC",
            WLowerTrigamma => "W_LOWER_TRIGAMMA",
            WLower443 => "W_LOWER_443",
            WLowerP => "W_LOWER_P",
            WLowerClassic => "W_LOWER_CLASSIC",
            WUpper51 => "W_UPPER_51",
            WUpperMerkle => "W_UPPER_MERKLE",
            WUpperMerkleQ => "W_UPPER_MERKLE_Q",
            WUpperAlzer => "W_UPPER_ALZER",
            WUpperRefined(_) => "W_UPPER_REFINED",
        }
    }

    fn stem(self) -> &'static str {
        use BoundId::*;
        match self {
            VLowerTrunc(_) | WLowerTrunc(_) => "lower-trunc",
            VLowerD(_) => "lower-d",
            VLowerBorgwardt => "lower-borgwardt",
            VLowerAlzer => "lower-alzer",
            VUpperH(_) => "upper-h",
            VUpperAlzer | WUpperAlzer => "upper-alzer",
            VUpperBorgwardt => "upper-borgwardt",
            WLowerTrigamma => "lower-trigamma",
            WLower443 => "lower-443",
            WLowerP => "lower-p",
            WLowerClassic => "lower-classic",
            WUpper51 => "upper-51",
            WUpperMerkle => "upper-merkle",
            WUpperMerkleQ => "upper-merkle-q",
            WUpperRefined(_) => "upper-refined",
        }
    }

    /// Command-line key, e.g. `lower-d:1`; unique within a target.
    pub fn key(self) -> String {
        match self.order() {
            Some(m) => format!("{}:{m}", self.stem()),
            None => self.stem().to_string(),
        }
    }

    pub fn citation(self) -> &'static str {
        use BoundId::*;
        match self {
            VLowerTrunc(_) => "m-truncate of the joint factor: f_m(n)/pi < v_n",
            VLowerD(_) => "d_n(m) = f_m(n)/pi * exp((n/2)[(psi((n+1)/2)+gamma)/(n-1) - sigma_m]) < v_n",
            VLowerBorgwardt => "Borgwardt: b_n = sqrt(n/(2 pi)) < v_n",
            VLowerAlzer => "Alzer: A_n = sqrt((n+1/2)/(2 pi)) < v_n",
            VUpperH(_) => "h_n(m) = f_m(n)/pi * exp(n[(psi(n/2)-alpha)/(2(n+1)) - s_m]) > v_n",
            VUpperAlzer => "Alzer: sqrt((n+beta)/(2 pi)), beta = pi/2 - 1, > v_n",
            VUpperBorgwardt => "Borgwardt: b_{n+1} = sqrt((n+1)/(2 pi)) > v_n",
            WLowerTrunc(_) => "m-truncate: prod_{k<=m} (2k+n)^2/((2k+n)^2-1) < w_n",
            WLowerTrigamma => "exp(psi'(n/2)/4 - 1/n^2) < w_n",
            WLower443 => "exp[(n+3)/(2(n+2)^2)] < w_n",
            WLowerP => "p_n = (n+2)^2/((n+1)(n+3)) exp[(n+1)/(2(n+2)^2)] < w_n",
            WLowerClassic => "classical: sqrt(1 + 1/(n+1)) < w_n",
            WUpper51 => "exp[0.5/(n+1)] > w_n",
            WUpperMerkle => "Merkle: (n+2)^(3/2)/((n+1)(n+3)^(1/2)) > w_n",
            WUpperMerkleQ => "Merkle: (1 + 2/n)^(1/4) > w_n, n >= 2",
            WUpperAlzer => "Alzer: sqrt(1 + 1/n) > w_n",
            WUpperRefined(_) => "truncate(m) * exp[0.5/(n+2m+1)] > w_n",
        }
    }

    /// Parses a command-line key for the given target.
    pub fn parse(target: Target, s: &str) -> Result<Self> {
        use BoundId::*;
        let s = s.trim();
        let (stem, m) = match s.split_once(':') {
            Some((stem, m)) => {
                let m: u32 = m
                    .parse()
                    .map_err(|_| Error::UnknownBound(s.to_string()))?;
                if m == 0 {
                    return Err(Error::UnknownBound(s.to_string()));
                }
                (stem, Some(m))
            }
            None => (s, None),
        };
        let id = match (target, stem, m) {
            (Target::V, "lower-trunc", Some(m)) => VLowerTrunc(m),
            (Target::V, "lower-d", Some(m)) => VLowerD(m),
            (Target::V, "lower-borgwardt", None) => VLowerBorgwardt,
            (Target::V, "lower-alzer", None) => VLowerAlzer,
            (Target::V, "upper-h", Some(m)) => VUpperH(m),
            (Target::V, "upper-alzer", None) => VUpperAlzer,
            (Target::V, "upper-borgwardt", None) => VUpperBorgwardt,
            (Target::W, "lower-trunc", Some(m)) => WLowerTrunc(m),
            (Target::W, "lower-trigamma", None) => WLowerTrigamma,
            (Target::W, "lower-443", None) => WLower443,
            (Target::W, "lower-p", None) => WLowerP,
            (Target::W, "lower-classic", None) => WLowerClassic,
            (Target::W, "upper-51", None) => WUpper51,
            (Target::W, "upper-merkle", None) => WUpperMerkle,
            (Target::W, "upper-merkle-q", None) => WUpperMerkleQ,
            (Target::W, "upper-alzer", None) => WUpperAlzer,
            (Target::W, "upper-refined", Some(m)) => WUpperRefined(m),
            _ => return Err(Error::UnknownBound(s.to_string())),
        };
        Ok(id)
    }

    pub fn spec(self) -> BoundSpec {
        BoundSpec {
            id: self,
            side: self.side(),
            target: self.target(),
            min_n: self.min_n(),
            citation: self.citation(),
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(m) => write!(f, "{}({m})", self.family()),
            None => f.write_str(self.family()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSpec {
    pub id: BoundId,
    pub side: Side,
    pub target: Target,
    pub min_n: u64,
    pub citation: &'static str,
}

/// Every family, with parameterized families expanded over `orders`, in
/// catalog order.
pub fn catalog_with_orders(orders: &[u32]) -> Vec<BoundSpec> {
    use BoundId::*;
    let param = |f: fn(u32) -> BoundId| orders.iter().map(move |&m| f(m));
    let ids: Vec<BoundId> = param(VLowerTrunc)
        .chain(param(VLowerD))
        .chain([VLowerBorgwardt, VLowerAlzer])
        .chain(param(VUpperH))
        .chain([VUpperAlzer, VUpperBorgwardt])
        .chain(param(WLowerTrunc))
        .chain([WLowerTrigamma, WLower443, WLowerP, WLowerClassic])
        .chain([WUpper51, WUpperMerkle, WUpperMerkleQ, WUpperAlzer])
        .chain(param(WUpperRefined))
        .collect();
    ids.into_iter().map(BoundId::spec).collect()
}

/// The catalog with m ∈ {1, 2, 3}.
pub fn catalog() -> Vec<BoundSpec> {
    catalog_with_orders(&[1, 2, 3])
}

/// Ids of the catalog restricted to one target.
pub fn catalog_ids(target: Target) -> Vec<BoundId> {
    catalog()
        .into_iter()
        .filter(|s| s.target == target)
        .map(|s| s.id)
        .collect()
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// σ_m = Σ_{k=1}^m 1/(k(2k+n−1)).
pub fn sigma_m(n: u64, m: u32) -> BigRational {
    (1..=m as u64).fold(BigRational::zero(), |acc, k| acc + ratio(1, k * (2 * k + n - 1)))
}

/// s_m = Σ_{k=0}^m 1/((2k−1)(2k+n)); the k = 0 term is −1/n.
pub fn s_m(n: u64, m: u32) -> BigRational {
    let first = -ratio(1, n);
    (1..=m as u64).fold(first, |acc, k| acc + ratio(1, (2 * k - 1) * (2 * k + n)))
}

/// f_m(n) = ∏_{k=1}^m (2k/(2k−1))((2k+n−1)/(2k+n)), exact.
pub fn v_truncate_exact(n: u64, m: u32) -> BigRational {
    (1..=m as u64).fold(BigRational::one(), |acc, k| {
        acc * ratio(2 * k * (2 * k + n - 1), (2 * k - 1) * (2 * k + n))
    })
}

/// ∏_{k=1}^m (2k+n)²/((2k+n)²−1), exact.
pub fn w_truncate_exact(n: u64, m: u32) -> BigRational {
    (1..=m as u64).fold(BigRational::one(), |acc, k| {
        let q = 2 * k + n;
        acc * ratio(q * q, q * q - 1)
    })
}

fn half(twice: u64) -> HalfInteger {
    HalfInteger::from_twice(twice).expect("twice >= 1")
}

/// Evaluates a bound at n using closed-form ψ and ψ'.
pub fn eval_bound<T: Scalar>(id: BoundId, n: u64) -> Result<T> {
    eval_bound_with(&ClosedForm, id, n)
}

/// Evaluates a bound at n with ψ and ψ' taken from `psi`. All sweep and
/// table code goes through this one function.
pub fn eval_bound_with<T: Scalar, S: PsiSource<T> + ?Sized>(
    psi: &S,
    id: BoundId,
    n: u64,
) -> Result<T> {
    use BoundId::*;
    if n < id.min_n() {
        return Err(Error::BelowMinimum {
            what: id.to_string(),
            n,
            min_n: id.min_n(),
        });
    }
    if let Some(0) = id.order() {
        return Err(Error::InvalidArgument(format!(
            "truncation order must be at least 1 for {}",
            id.family()
        )));
    }
    let c = Constants::<T>::new();
    let one = T::one();
    let two = T::lit(2.0);
    let nf = T::from_count(n);
    let two_pi = two * c.pi;
    let q = |a: u64, b: u64| T::from_rational(&ratio(a, b));

    let value = match id {
        VLowerTrunc(m) => T::from_rational(&v_truncate_exact(n, m)) / c.pi,
        VLowerD(m) => {
            let lead = if n == 1 {
                // removable singularity: the bracket's first term tends to ψ'(1)/2
                psi.trigamma(half(2)) / two
            } else {
                psi.digamma_shifted(half(n + 1)) / T::from_count(n - 1)
            };
            let bracket = lead - T::from_rational(&sigma_m(n, m));
            T::from_rational(&v_truncate_exact(n, m)) / c.pi * (nf / two * bracket).exp()
        }
        VLowerBorgwardt => (nf / two_pi).sqrt(),
        VLowerAlzer => ((nf + T::lit(0.5)) / two_pi).sqrt(),
        VUpperH(m) => {
            // ψ(n/2) − α = (ψ(n/2) + γ) − (2 − log 4)
            let psi_minus_alpha = psi.digamma_shifted(half(n)) - (two - c.log4);
            let bracket = psi_minus_alpha / (two * T::from_count(n + 1))
                - T::from_rational(&s_m(n, m));
            T::from_rational(&v_truncate_exact(n, m)) / c.pi * (nf * bracket).exp()
        }
        VUpperAlzer => ((nf + c.beta) / two_pi).sqrt(),
        VUpperBorgwardt => (T::from_count(n + 1) / two_pi).sqrt(),
        WLowerTrunc(m) => T::from_rational(&w_truncate_exact(n, m)),
        WLowerTrigamma => {
            (psi.trigamma(half(n)) / T::lit(4.0) - one / (nf * nf)).exp()
        }
        WLower443 => q(n + 3, 2 * (n + 2) * (n + 2)).exp(),
        WLowerP => q((n + 2) * (n + 2), (n + 1) * (n + 3)) * q(n + 1, 2 * (n + 2) * (n + 2)).exp(),
        WLowerClassic => q(n + 2, n + 1).sqrt(),
        WUpper51 => q(1, 2 * (n + 1)).exp(),
        WUpperMerkle => {
            let num = BigInt::from(n + 2).pow(3);
            let den = BigInt::from(n + 1).pow(2) * BigInt::from(n + 3);
            T::from_rational(&BigRational::new(num, den)).sqrt()
        }
        WUpperMerkleQ => q(n + 2, n).sqrt().sqrt(),
        WUpperAlzer => q(n + 1, n).sqrt(),
        WUpperRefined(m) => {
            T::from_rational(&w_truncate_exact(n, m)) * q(1, 2 * (n + 2 * m as u64 + 1)).exp()
        }
    };
    Ok(value)
}
