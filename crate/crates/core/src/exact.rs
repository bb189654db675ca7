//! Exact integer certificates for comparisons involving logarithms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::Real;

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `a^e1 > b^e2`, decided exactly.
pub fn pow_gt(a: &BigUint, e1: u64, b: &BigUint, e2: u64) -> bool {
    pow(a, e1) > pow(b, e2)
}

pub fn pow(a: &BigUint, e: u64) -> BigUint {
    let e = u32::try_from(e).expect("exponent fits in 32 bits");
    a.pow(e)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn to_real(&self) -> Real {
        Real::ratio(self.num, self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The real number `ln P / ln Q` for integers `P, Q > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRatio {
    pub p: BigUint,
    pub q: BigUint,
}

impl LogRatio {
    pub fn new(p: BigUint, q: BigUint) -> Result<Self> {
        if p <= BigUint::one() || q <= BigUint::one() {
            return Err(Error::Data(
                "log ratio needs integers greater than 1".into(),
            ));
        }
        Ok(LogRatio { p, q })
    }

    pub fn value(&self) -> Real {
        Real::from_big(&self.p)
            .ln()
            .div(&Real::from_big(&self.q).ln())
    }

    /// `n/d ≥ ln P / ln Q`, i.e. `P^d ≤ Q^n`.
    pub fn is_at_most(&self, r: Rational) -> bool {
        pow(&self.p, r.den) <= pow(&self.q, r.num)
    }

    /// `n/d ≤ ln P / ln Q`, i.e. `P^d ≥ Q^n`.
    pub fn is_at_least(&self, r: Rational) -> bool {
        pow(&self.p, r.den) >= pow(&self.q, r.num)
    }
}

/// Rational bounds `lower ≤ x ≤ upper`, each checked by exact integer powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub lower: Rational,
    pub upper: Rational,
}

impl Certificate {
    pub fn width(&self) -> Real {
        self.upper.to_real().sub(&self.lower.to_real())
    }
}

/// Continued-fraction convergents of a positive real, from its high-precision value.
fn convergents(x: &Real, count: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigUint::zero(), BigUint::one());
    let (mut k0, mut k1) = (BigUint::one(), BigUint::zero());
    let mut r = x.clone();
    for _ in 0..count {
        let a = r.floor_u64();
        let h2 = &h1 * a + &h0;
        let k2 = &k1 * a + &k0;
        match (h2.to_u64(), k2.to_u64()) {
            (Some(n), Some(d)) if n < (1 << 40) && d < (1 << 40) => {
                out.push(Rational { num: n, den: d })
            }
            _ => break,
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r.sub(&Real::from_u64(a));
        if frac.to_f64() < 1e-60 {
            break;
        }
        r = Real::from_u64(1).div(&frac);
    }
    out
}

/// `(a + k·c) / (b + k·d)` for a step of `k` along the Stern–Brocot tree.
fn step(from: Rational, toward: Rational, k: u64) -> Option<Rational> {
    let num = from.num.checked_add(k.checked_mul(toward.num)?)?;
    let den = from.den.checked_add(k.checked_mul(toward.den)?)?;
    (num < (1 << 40) && den < (1 << 40)).then_some(Rational { num, den })
}

fn floor_ratio(n: &Real, d: &Real) -> u64 {
    if n.is_negative() {
        0
    } else {
        n.div(d).floor_u64()
    }
}

/// Rational bounds of width below `tol`, each side with the least denominator that gets
/// within `tol/2`, verified exactly.
pub fn certify(x: &LogRatio, tol: f64) -> Result<Certificate> {
    let v = x.value();
    let fail = || {
        Error::Data(format!(
            "no certified rational bounds for ln {} / ln {}",
            x.p, x.q
        ))
    };
    // ln P / ln Q = n/d exactly only if P and Q are powers of a common base, so d ≤ log₂ Q.
    let bits = x.q.bits();
    for c in convergents(&v, 60)
        .into_iter()
        .take_while(|c| c.den <= bits)
    {
        if x.is_at_least(c) && x.is_at_most(c) {
            return Ok(Certificate { lower: c, upper: c });
        }
    }
    let t = Real::ratio(1, (2.0 / tol).ceil() as u64);
    let fl = v.floor_u64();
    let mut lo = Rational { num: fl, den: 1 };
    let mut hi = Rational {
        num: fl + 1,
        den: 1,
    };
    for _ in 0..10_000 {
        let (b, d) = (Real::from_u64(lo.den), Real::from_u64(hi.den));
        // v·b − a and c − v·d, both positive while v is strictly inside.
        let below = v.mul(&b).sub(&Real::from_u64(lo.num));
        let above = Real::from_u64(hi.num).sub(&v.mul(&d));
        let lo_done = below.div(&b) < t;
        let hi_done = above.div(&d) < t;
        if lo_done && hi_done {
            break;
        }
        // Largest steps that keep each side strictly on its side of v, and the least
        // steps that bring each within t.
        let kmax_lo = floor_ratio(&below, &above);
        let kmax_hi = floor_ratio(&above, &below);
        let need_lo = floor_ratio(&below.sub(&t.mul(&b)), &above.add(&t.mul(&d))) + 1;
        let need_hi = floor_ratio(&above.sub(&t.mul(&d)), &below.add(&t.mul(&b))) + 1;
        let next = match (lo_done, kmax_lo, kmax_hi) {
            (_, 0, 0) => None,
            (false, 0, k) => step(hi, lo, k).map(|h| (lo, h)),
            (false, k, _) => step(lo, hi, k.min(need_lo)).map(|l| (l, hi)),
            (true, k, 0) => step(lo, hi, k).map(|l| (l, hi)),
            (true, _, k) => step(hi, lo, k.min(need_hi)).map(|h| (lo, h)),
        };
        (lo, hi) = next.ok_or_else(fail)?;
    }
    let width = hi.to_real().sub(&lo.to_real());
    if width.to_f64() >= tol || !x.is_at_least(lo) || !x.is_at_most(hi) {
        return Err(fail());
    }
    Ok(Certificate {
        lower: lo,
        upper: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert!(pow_gt(&big(3), 48, &big(120), 11));
        assert!(!pow_gt(&big(3), 52, &big(120), 12));
        assert_eq!(factorial(5), big(120));
    }

    #[test]
    fn certificates_bracket_the_value() {
        // ln 60 / ln(120 · 24^(1/3)) = ln 60³ / ln(120³ · 24)
        let g = LogRatio::new(big(60).pow(3), big(120).pow(3) * 24u32).unwrap();
        let c = certify(&g, 1e-9).unwrap();
        let v = g.value();
        assert!(c.lower.to_real() <= v && v <= c.upper.to_real());
        assert!(c.width().to_f64() < 1e-9);
        assert_eq!(v.fixed(9), "0.700265861");
        assert!(g.is_at_most(c.upper) && !g.is_at_most(c.lower));
    }
}
