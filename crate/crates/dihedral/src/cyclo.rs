//! Exact values in Q/Z.
//!
//! A finite-order character takes values in the roots of unity; we track the
//! exponent `r` with value `e^(2*pi*i*r)` as an exact rational in `[0, 1)`.
//! Addition here is multiplication of the underlying root of unity.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A rational number modulo 1, canonically reduced into `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloValue(Ratio<i64>);

impl CycloValue {
    pub fn zero() -> Self {
        CycloValue(Ratio::zero())
    }

    pub fn half() -> Self {
        CycloValue::new(1, 2)
    }

    /// `num/den` reduced modulo 1. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        CycloValue::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let mut f = r.fract();
        if f.is_negative() {
            f += Ratio::new(1, 1);
        }
        // fract() of an integer can return -0-like zero; normalize.
        if f.denom() == &1 {
            f = Ratio::zero();
        }
        CycloValue(f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Order of the corresponding root of unity (the reduced denominator).
    pub fn order(&self) -> u64 {
        *self.0.denom() as u64
    }

    /// Integer multiple `k * self` in Q/Z.
    pub fn scale(&self, k: i64) -> Self {
        CycloValue::from_ratio(self.0 * Ratio::new(k, 1))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    /// The complex number `e^(2*pi*i*self)` as `(re, im)`.
    pub fn unit_complex(&self) -> (f64, f64) {
        let angle = 2.0 * std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64);
        (angle.cos(), angle.sin())
    }

    /// All reduced rationals in `[0,1)` with denominator at most `max_den`,
    /// sorted increasingly. Used for deterministic character enumeration.
    pub fn all_with_denominator_up_to(max_den: u64) -> Vec<CycloValue> {
        let mut out = Vec::new();
        for den in 1..=max_den as i64 {
            for num in 0..den {
                if num.gcd(&den) == 1 {
                    out.push(CycloValue(Ratio::new(num, den)));
                }
            }
        }
        out.sort();
        out
    }
}

impl Add for CycloValue {
    type Output = CycloValue;
    fn add(self, rhs: CycloValue) -> CycloValue {
        CycloValue::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for CycloValue {
    type Output = CycloValue;
    fn sub(self, rhs: CycloValue) -> CycloValue {
        CycloValue::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for CycloValue {
    type Output = CycloValue;
    fn neg(self) -> CycloValue {
        CycloValue::from_ratio(-self.0)
    }
}

impl fmt::Display for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse "a/b" or "a" into a CycloValue (reduced mod 1).
impl std::str::FromStr for CycloValue {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|e| e.to_string())?,
                d.trim().parse::<i64>().map_err(|e| e.to_string())?,
            ),
            None => (s.parse::<i64>().map_err(|e| e.to_string())?, 1),
        };
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(CycloValue::new(n, d))
    }
}
