//! High-precision reals for reports and for locating rational certificates. Decisions
//! never rest on these values alone; see [`crate::exact`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;

/// Working precision in bits (about 77 decimal digits).
pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_u64(x: u64) -> Self {
        Real(BigFloat::from_u64(x, PREC))
    }

    pub fn from_big(x: &BigUint) -> Self {
        Real(with_cc(|cc| {
            BigFloat::parse(&x.to_string(), Radix::Dec, PREC, RM, cc)
        }))
    }

    pub fn ratio(n: u64, d: u64) -> Self {
        Self::from_u64(n).div(&Self::from_u64(d))
    }

    pub fn parse(s: &str) -> Self {
        Real(with_cc(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc)))
    }

    pub fn ln_u64(x: u64) -> Self {
        Self::from_u64(x).ln()
    }

    pub fn ln(&self) -> Self {
        Real(with_cc(|cc| self.0.ln(PREC, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        Real(with_cc(|cc| self.0.exp(PREC, RM, cc)))
    }

    pub fn add(&self, o: &Real) -> Self {
        Real(self.0.add(&o.0, PREC, RM))
    }

    pub fn sub(&self, o: &Real) -> Self {
        Real(self.0.sub(&o.0, PREC, RM))
    }

    pub fn mul(&self, o: &Real) -> Self {
        Real(self.0.mul(&o.0, PREC, RM))
    }

    pub fn div(&self, o: &Real) -> Self {
        Real(self.0.div(&o.0, PREC, RM))
    }

    /// x^(num/den) for x > 0.
    pub fn pow_ratio(&self, num: u64, den: u64) -> Self {
        self.ln().mul(&Real::ratio(num, den)).exp()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    /// Floor of a nonnegative value.
    pub fn floor_u64(&self) -> u64 {
        let r: u64 = self.fixed(0).parse().unwrap_or(0);
        if r > 0 && Real::from_u64(r) > *self {
            r - 1
        } else {
            r
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn scientific(&self) -> (bool, Vec<u8>, i64) {
        let s = with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).expect("finite value");
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, s),
        };
        let (mant, exp) = match body.split_once(['e', 'E']) {
            Some((m, e)) => (m.to_string(), e.parse::<i64>().expect("exponent")),
            None => (body, 0),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((&mant, ""));
        let digits: Vec<u8> = int.bytes().chain(frac.bytes()).map(|b| b - b'0').collect();
        // value = 0.d1d2... * 10^(point)
        let point = int.len() as i64 + exp;
        (neg, digits, point)
    }

    /// Fixed-point rendering with `decimals` digits after the point, rounded half up.
    pub fn fixed(&self, decimals: usize) -> String {
        let (neg, digits, point) = self.scientific();
        let keep = point + decimals as i64;
        let mut out: Vec<u8> = if keep <= 0 {
            vec![0]
        } else {
            (0..keep)
                .map(|i| *digits.get(i as usize).unwrap_or(&0))
                .collect()
        };
        let next = if keep < 0 {
            0
        } else {
            *digits.get(keep as usize).unwrap_or(&0)
        };
        if next >= 5 {
            let mut i = out.len();
            loop {
                if i == 0 {
                    out.insert(0, 1);
                    break;
                }
                i -= 1;
                if out[i] == 9 {
                    out[i] = 0;
                } else {
                    out[i] += 1;
                    break;
                }
            }
        }
        while out.len() <= decimals {
            out.insert(0, 0);
        }
        let split = out.len() - decimals;
        let mut s: String = out[..split].iter().map(|d| (b'0' + d) as char).collect();
        let s_trim = s.trim_start_matches('0');
        s = if s_trim.is_empty() {
            "0".into()
        } else {
            s_trim.to_string()
        };
        if decimals > 0 {
            s.push('.');
            s.extend(out[split..].iter().map(|d| (b'0' + d) as char));
        }
        if neg && s.bytes().any(|b| (b'1'..=b'9').contains(&b)) {
            s.insert(0, '-');
        }
        s
    }

    pub fn to_f64(&self) -> f64 {
        let (neg, digits, point) = self.scientific();
        let m: String = digits.iter().take(20).map(|d| (b'0' + d) as char).collect();
        let v: f64 = format!("0.{m}e{point}").parse().expect("decimal");
        if neg {
            -v
        } else {
            v
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, o: &Self) -> bool {
        self.partial_cmp(o) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

/// Renders with 50 significant digits after the point for values of moderate size.
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fixed(f.precision().unwrap_or(50)))
    }
}

/// log|S| / log(a^(1/k) · out), the ratio minimised over excluded simple groups.
pub fn simple_ratio(order: u64, out: u64, beta_base: u64, beta_root: u64) -> Real {
    let k = Real::from_u64(beta_root);
    let num = Real::ln_u64(order).mul(&k);
    let den = Real::ln_u64(out).mul(&k).add(&Real::ln_u64(beta_base));
    num.div(&den)
}
