//! Fixed-precision elements of Q_p for odd p, stored as p^val * unit.
//!
//! The unit part is an integer in [1, p^digits) coprime to p, so valuations,
//! square classes and Hilbert symbols come out exactly rather than through
//! floating approximations.  Additive cancellation shrinks the tracked digit
//! count; a value that cancels across its whole precision window collapses to
//! the zero sentinel, which is the correct reading at fixed working precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Digits of the unit part carried by freshly constructed values.
pub const DEFAULT_DIGITS: u32 = 32;

/// Operations that would leave fewer digits than this panic instead of
/// returning junk; every computation in the crate is height-bounded far
/// above the floor, so hitting it means a bug, not bad luck.
pub const MIN_DIGITS: u32 = 4;

pub(crate) fn pow_p(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

fn check_prime(p: u64) {
    assert!(p >= 3 && p % 2 == 1, "p must be an odd prime, got {p}");
    assert!(
        (3..p).all(|d| d * d > p || !p.is_multiple_of(d)),
        "p must be an odd prime, got {p}"
    );
}

pub(crate) fn mod_inverse(a: &BigUint, modulus: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    assert!(ext.gcd.is_one(), "inverse of a non-unit requested");
    let mut x = ext.x % &m;
    if x.is_negative() {
        x += &m;
    }
    x.to_biguint().unwrap()
}

fn strip_p(p: u64, mut n: BigUint) -> (u32, BigUint) {
    debug_assert!(!n.is_zero());
    let bp = BigUint::from(p);
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if r.is_zero() {
            n = q;
            count += 1;
        } else {
            return (count, n);
        }
    }
}

#[derive(Clone)]
pub struct PAdicNumber {
    p: u64,
    /// Meaningful only when `unit` is nonzero.
    val: i64,
    /// In [1, p^digits) and coprime to p; zero encodes the zero value.
    unit: BigUint,
    digits: u32,
}

impl PAdicNumber {
    pub fn zero(p: u64) -> Self {
        check_prime(p);
        PAdicNumber {
            p,
            val: 0,
            unit: BigUint::zero(),
            digits: DEFAULT_DIGITS,
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(p, 1)
    }

    /// Exact integer at the default working precision.
    pub fn from_integer(p: u64, n: i64) -> Self {
        check_prime(p);
        if n == 0 {
            return Self::zero(p);
        }
        let (val, mag) = strip_p(p, BigUint::from(n.unsigned_abs()));
        let modulus = pow_p(p, DEFAULT_DIGITS);
        let unit = if n < 0 {
            &modulus - (mag % &modulus)
        } else {
            mag % &modulus
        };
        PAdicNumber {
            p,
            val: val as i64,
            unit,
            digits: DEFAULT_DIGITS,
        }
    }

    /// p^val * unit with the unit reduced mod p^digits.  Stray p factors in
    /// the given unit move into the valuation; the input is treated as exact,
    /// so the full digit count is kept.
    pub fn from_parts(p: u64, val: i64, unit: BigUint, digits: u32) -> Self {
        check_prime(p);
        assert!(digits >= MIN_DIGITS);
        if unit.is_zero() {
            return Self::zero(p);
        }
        let (extra, mag) = strip_p(p, unit);
        let unit = mag % pow_p(p, digits);
        if unit.is_zero() {
            return Self::zero(p);
        }
        PAdicNumber {
            p,
            val: val + extra as i64,
            unit,
            digits,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// None for the zero value.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn unit_part(&self) -> &BigUint {
        &self.unit
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Residue of the unit part mod p; 0 for the zero value.
    pub fn unit_residue(&self) -> u64 {
        (&self.unit % self.p).to_u64().unwrap()
    }

    /// Stable dictionary key: valuation plus the unit truncated to `window`
    /// digits.  Callers must key a single table with a single window.
    pub fn canonical_key(&self, window: u32) -> String {
        if self.is_zero() {
            return "z".into();
        }
        let w = window.min(self.digits);
        format!("{}:{}", self.val, &self.unit % pow_p(self.p, w))
    }

    /// Honestly mark a value as known to only `d` digits.  Used after
    /// iterative refinements that stop short of full working precision.
    pub fn truncate_digits(&mut self, d: u32) {
        assert!(d >= MIN_DIGITS);
        if self.is_zero() || d >= self.digits {
            return;
        }
        self.unit %= pow_p(self.p, d);
        self.digits = d;
        debug_assert!(!self.unit.is_zero(), "unit parts are coprime to p");
    }

    pub fn scale_pow_p(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.val += k;
        }
        out
    }

    /// Round to the exact integer representative modulo p^window, restamped
    /// at full working precision.  This discards the precision history, so
    /// it is only sound inside self-correcting iterations, where it keeps a
    /// convergent step from half-cancelling against the previous iterate.
    pub fn settle(&self, window: u32) -> Self {
        if self.is_zero() {
            return Self::zero(self.p);
        }
        assert!(self.val >= 0, "settle needs an integral value");
        if self.val as u32 >= window {
            return Self::zero(self.p);
        }
        let unit = &self.unit % pow_p(self.p, window - self.val as u32);
        Self::from_parts(self.p, self.val, unit, DEFAULT_DIGITS)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let modulus = pow_p(self.p, self.digits);
        PAdicNumber {
            p: self.p,
            val: -self.val,
            unit: mod_inverse(&self.unit, &modulus),
            digits: self.digits,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            let mut one = Self::one(self.p);
            one.digits = self.digits;
            return one;
        }
        if self.is_zero() {
            assert!(n > 0, "negative power of zero");
            return self.clone();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let modulus = pow_p(self.p, base.digits);
        let e = n.unsigned_abs();
        PAdicNumber {
            p: self.p,
            val: base.val * e as i64,
            unit: base.unit.modpow(&BigUint::from(e), &modulus),
            digits: base.digits,
        }
    }

    /// True iff the value is a square in Q_p (odd p: even valuation and a
    /// quadratic residue unit).  Zero counts as square.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.val % 2 == 0 && legendre(self.unit_residue() as i64, self.p) == 1
    }

    /// Canonical square root: the branch whose unit has the smallest residue
    /// mod p, lifted by Newton.  Errors on odd valuation or a non-residue unit.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.val % 2 != 0 {
            return Err(Error::Precondition(
                "square root needs even valuation".into(),
            ));
        }
        let p = self.p;
        let r = self.unit_residue();
        let Some(seed) = (1..p).find(|z| (z * z) % p == r) else {
            return Err(Error::Precondition(
                "unit part is not a quadratic residue".into(),
            ));
        };
        let modulus = pow_p(p, self.digits);
        let inv2 = mod_inverse(&BigUint::from(2u32), &modulus);
        let mut x = BigUint::from(seed);
        let mut correct = 1u32;
        while correct < self.digits {
            let xi = mod_inverse(&x, &modulus);
            x = ((&x + (&self.unit * xi) % &modulus) * &inv2) % &modulus;
            correct *= 2;
        }
        assert_eq!((&x * &x) % &modulus, self.unit);
        Ok(PAdicNumber {
            p,
            val: self.val / 2,
            unit: x,
            digits: self.digits,
        })
    }
}

impl Add for &PAdicNumber {
    type Output = PAdicNumber;

    fn add(self, rhs: &PAdicNumber) -> PAdicNumber {
        assert_eq!(self.p, rhs.p);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.val <= rhs.val {
            (self, rhs)
        } else {
            (rhs, self)
        };
        // absolute precision of the sum is the worse of the two inputs
        let abs = (lo.val + lo.digits as i64).min(hi.val + hi.digits as i64);
        let window = (abs - lo.val) as u32;
        let modulus = pow_p(lo.p, window);
        let shift = (hi.val - lo.val) as u32;
        let shifted = if shift >= window {
            BigUint::zero()
        } else {
            (&hi.unit * pow_p(lo.p, shift)) % &modulus
        };
        let s = (&lo.unit % &modulus + shifted) % &modulus;
        if s.is_zero() {
            // cancelled across the whole shared window: zero at working precision
            return PAdicNumber::zero(lo.p);
        }
        let (t, unit) = strip_p(lo.p, s);
        let digits = window - t;
        assert!(
            digits >= MIN_DIGITS,
            "cancellation left only {digits} p-adic digits; raise the working precision"
        );
        PAdicNumber {
            p: lo.p,
            val: lo.val + t as i64,
            unit,
            digits,
        }
    }
}

impl Neg for &PAdicNumber {
    type Output = PAdicNumber;

    fn neg(self) -> PAdicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = pow_p(self.p, self.digits);
        PAdicNumber {
            p: self.p,
            val: self.val,
            unit: &modulus - &self.unit,
            digits: self.digits,
        }
    }
}

impl Sub for &PAdicNumber {
    type Output = PAdicNumber;

    fn sub(self, rhs: &PAdicNumber) -> PAdicNumber {
        self + &-rhs
    }
}

impl Mul for &PAdicNumber {
    type Output = PAdicNumber;

    fn mul(self, rhs: &PAdicNumber) -> PAdicNumber {
        assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return PAdicNumber::zero(self.p);
        }
        let digits = self.digits.min(rhs.digits);
        let modulus = pow_p(self.p, digits);
        PAdicNumber {
            p: self.p,
            val: self.val + rhs.val,
            unit: (&self.unit * &rhs.unit) % &modulus,
            digits,
        }
    }
}

impl Div for &PAdicNumber {
    type Output = PAdicNumber;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &PAdicNumber) -> PAdicNumber {
        self * &rhs.inv()
    }
}

impl PartialEq for PAdicNumber {
    /// Equality at the smaller of the two digit counts.
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                if self.val != other.val {
                    return false;
                }
                let m = pow_p(self.p, self.digits.min(other.digits));
                &self.unit % &m == &other.unit % &m
            }
        }
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(
            f,
            "{}*{}^{} + O({}^{})",
            self.unit,
            self.p,
            self.val,
            self.p,
            self.val + self.digits as i64
        )
    }
}

impl fmt::Debug for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Legendre symbol (a|p) via Euler's criterion; 0 when p divides a.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = BigUint::from(r).modpow(&BigUint::from((p - 1) / 2), &BigUint::from(p));
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Smallest positive non-residue mod p; the fixed unit representative u.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| legendre(n as i64, p) == -1)
        .expect("odd prime has a non-residue")
}

/// The four cosets of Q_p^* modulo squares, labelled by the representatives
/// 1, u, p, u*p with u the smallest positive non-residue.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SquareClass {
    One,
    U,
    Pi,
    UPi,
}

impl SquareClass {
    pub fn of(x: &PAdicNumber) -> Result<SquareClass> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let odd = x.val.rem_euclid(2) == 1;
        let residue_square = legendre(x.unit_residue() as i64, x.p) == 1;
        Ok(Self::from_parity_and_residue(odd, residue_square))
    }

    pub fn from_parity_and_residue(val_odd: bool, residue_square: bool) -> SquareClass {
        match (val_odd, residue_square) {
            (false, true) => SquareClass::One,
            (false, false) => SquareClass::U,
            (true, true) => SquareClass::Pi,
            (true, false) => SquareClass::UPi,
        }
    }

    pub fn representative(self, p: u64) -> i64 {
        let u = smallest_nonresidue(p) as i64;
        match self {
            SquareClass::One => 1,
            SquareClass::U => u,
            SquareClass::Pi => p as i64,
            SquareClass::UPi => u * p as i64,
        }
    }

    /// Klein four-group law.
    pub fn product(self, other: SquareClass) -> SquareClass {
        let bits = |c: SquareClass| match c {
            SquareClass::One => (false, false),
            SquareClass::U => (false, true),
            SquareClass::Pi => (true, false),
            SquareClass::UPi => (true, true),
        };
        let (a0, a1) = bits(self);
        let (b0, b1) = bits(other);
        match (a0 ^ b0, a1 ^ b1) {
            (false, false) => SquareClass::One,
            (false, true) => SquareClass::U,
            (true, false) => SquareClass::Pi,
            (true, true) => SquareClass::UPi,
        }
    }

    pub fn is_trivial(self) -> bool {
        self == SquareClass::One
    }

    pub fn all() -> [SquareClass; 4] {
        [
            SquareClass::One,
            SquareClass::U,
            SquareClass::Pi,
            SquareClass::UPi,
        ]
    }
}

/// Teichmueller lift of the residue r: the (p-1)-st root of unity congruent
/// to r mod p, found by Newton iteration on x^(p-1) - 1.
pub fn teichmuller_lift(p: u64, r: u64, digits: u32) -> Result<PAdicNumber> {
    check_prime(p);
    if r.is_multiple_of(p) {
        return Err(Error::Precondition(
            "teichmuller lift needs a unit residue".into(),
        ));
    }
    let modulus = pow_p(p, digits);
    let mut x = BigUint::from(r % p);
    let mut correct = 1u32;
    while correct < digits {
        let x_pm2 = x.modpow(&BigUint::from(p - 2), &modulus);
        let fx = (x.modpow(&BigUint::from(p - 1), &modulus) + &modulus - BigUint::one()) % &modulus;
        let dfx = (&x_pm2 * BigUint::from(p - 1)) % &modulus;
        let step = (fx * mod_inverse(&dfx, &modulus)) % &modulus;
        x = (&x + &modulus - step) % &modulus;
        correct *= 2;
    }
    assert!(x.modpow(&BigUint::from(p - 1), &modulus).is_one());
    assert_eq!(&x % p, BigUint::from(r % p));
    Ok(PAdicNumber::from_parts(p, 0, x, digits))
}

/// Tame Hilbert symbol (a,b)_p for odd p: with a = p^alpha u_a, b = p^beta u_b,
/// the symbol is (-1|p)^(alpha beta) (u_a|p)^beta (u_b|p)^alpha.
pub fn hilbert_symbol(a: &PAdicNumber, b: &PAdicNumber) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert_eq!(a.p, b.p);
    let p = a.p;
    let alpha = a.val.rem_euclid(2);
    let beta = b.val.rem_euclid(2);
    let mut s = 1;
    if alpha == 1 && beta == 1 {
        s *= legendre(-1, p);
    }
    if beta == 1 {
        s *= legendre(a.unit_residue() as i64, p);
    }
    if alpha == 1 {
        s *= legendre(b.unit_residue() as i64, p);
    }
    Ok(s)
}

/// Hilbert symbol on square-class representatives.
pub fn hilbert_on_classes(p: u64, a: SquareClass, b: SquareClass) -> i32 {
    hilbert_symbol(
        &PAdicNumber::from_integer(p, a.representative(p)),
        &PAdicNumber::from_integer(p, b.representative(p)),
    )
    .expect("representatives are nonzero")
}
