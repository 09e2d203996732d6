//! `f64` enclosures with outward rounding. Every basic operation is
//! correctly rounded, so widening each result by one ulp on each side
//! yields a valid enclosure of the exact value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 15;
pub const MAX_PRECISION: u32 = 17;

/// Significant decimal digits used when printing bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision(u32);

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if !(DEFAULT_PRECISION..=MAX_PRECISION).contains(&digits) {
            return Err(Error::Invalid(format!(
                "precision must be between {DEFAULT_PRECISION} and {MAX_PRECISION} digits, got {digits}"
            )));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Decimal string with `digits` significant digits, rounded toward
    /// `-∞` (`down`) or `+∞`. Enclosure ends are already one ulp outside
    /// the exact value, which absorbs the sub-ulp error of the decimal
    /// expansion used here.
    pub fn format(self, x: f64, down: bool) -> String {
        if !x.is_finite() || x == 0.0 {
            return format!("{x}");
        }
        let p = self.0 as usize;
        let sci = format!("{:.*e}", p + 2, x.abs());
        let (mant, exp) = sci.split_once('e').expect("scientific format");
        let mut exp: i32 = exp.parse().expect("exponent");
        let digits: Vec<u8> = mant.bytes().filter(|b| b.is_ascii_digit()).map(|b| b - b'0').collect();
        let mut m: u128 = digits[..p].iter().fold(0, |a, &d| a * 10 + d as u128);
        let rest = digits[p..].iter().any(|&d| d != 0);
        let toward_zero = down == (x > 0.0);
        if rest && !toward_zero {
            m += 1;
            if m == 10u128.pow(p as u32) {
                m /= 10;
                exp += 1;
            }
        }
        let ds = m.to_string();
        let body = if (-5..17).contains(&exp) {
            let point = exp + 1;
            let s = if point <= 0 {
                format!("0.{}{}", "0".repeat((-point) as usize), ds)
            } else if point as usize >= ds.len() {
                format!("{}{}", ds, "0".repeat(point as usize - ds.len()))
            } else {
                format!("{}.{}", &ds[..point as usize], &ds[point as usize..])
            };
            if s.contains('.') {
                s.trim_end_matches('0').trim_end_matches('.').to_string()
            } else {
                s
            }
        } else {
            let tail = ds[1..].trim_end_matches('0');
            if tail.is_empty() {
                format!("{}e{exp}", &ds[..1])
            } else {
                format!("{}.{}e{exp}", &ds[..1], tail)
            }
        };
        if x < 0.0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION)
    }
}

/// Closed interval `[lo, hi]` containing an exact real.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

#[allow(clippy::should_implement_trait)]
impl Enclosure {
    pub fn exact(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    fn widen(lo: f64, hi: f64) -> Self {
        Enclosure { lo: lo.next_down(), hi: hi.next_up() }
    }

    /// `2π`.
    pub fn two_pi() -> Self {
        Self::widen(std::f64::consts::TAU, std::f64::consts::TAU)
    }

    pub fn add(self, o: Self) -> Self {
        Self::widen(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::widen(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn mul(self, o: Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widen(lo, hi)
    }

    /// Division by an interval not containing zero.
    pub fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widen(lo, hi)
    }

    /// Square root, clamped at zero.
    pub fn sqrt(self) -> Self {
        let lo = self.lo.max(0.0).sqrt().next_down().max(0.0);
        let hi = self.hi.max(0.0).sqrt().next_up();
        Enclosure { lo, hi }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }
}
