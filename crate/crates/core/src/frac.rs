//! Non-negative exact rationals.
//!
//! Almost every value the library touches has a denominator below 2^64, so
//! `Frac` keeps those inline and widens to `u128` for intermediate products.
//! Anything that does not fit spills into `BigUint` transparently.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Frac(Repr);

#[derive(Clone)]
enum Repr {
    Small { num: u64, den: u64 },
    Big { num: BigUint, den: BigUint },
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Frac {
    pub const ZERO: Frac = Frac(Repr::Small { num: 0, den: 1 });
    pub const ONE: Frac = Frac(Repr::Small { num: 1, den: 1 });
    pub const HALF: Frac = Frac(Repr::Small { num: 1, den: 2 });

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Frac {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        Frac(Repr::Small {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Frac {
        Frac(Repr::Small { num: n, den: 1 })
    }

    pub fn from_u128(num: u128, den: u128) -> Frac {
        assert!(den != 0, "zero denominator");
        if let (Ok(n), Ok(d)) = (u64::try_from(num), u64::try_from(den)) {
            return Frac::new(n, d);
        }
        let g = gcd_u128(num, den);
        Self::from_reduced_u128(num / g, den / g)
    }

    fn from_reduced_u128(num: u128, den: u128) -> Frac {
        match (u64::try_from(num), u64::try_from(den)) {
            (Ok(num), Ok(den)) => Frac(Repr::Small { num, den }),
            _ => Frac(Repr::Big {
                num: BigUint::from(num),
                den: BigUint::from(den),
            }),
        }
    }

    pub fn from_big(num: BigUint, den: BigUint) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        Self::from_reduced_big(num, den)
    }

    fn from_reduced_big(num: BigUint, den: BigUint) -> Frac {
        match (num.to_u64(), den.to_u64()) {
            (Some(num), Some(den)) => Frac(Repr::Small { num, den }),
            _ => Frac(Repr::Big { num, den }),
        }
    }

    pub fn numer(&self) -> BigUint {
        match &self.0 {
            Repr::Small { num, .. } => BigUint::from(*num),
            Repr::Big { num, .. } => num.clone(),
        }
    }

    pub fn denom(&self) -> BigUint {
        match &self.0 {
            Repr::Small { den, .. } => BigUint::from(*den),
            Repr::Big { den, .. } => den.clone(),
        }
    }

    /// `(numerator, denominator)` when both fit in a `u64`.
    pub fn as_small(&self) -> Option<(u64, u64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn denom_is_odd(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => den & 1 == 1,
            Repr::Big { den, .. } => den.bit(0),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big { .. } => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big { num, den } => {
                // Shift both down to keep the quotient representable.
                let shift = den.bits().saturating_sub(60);
                let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
                let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }

    fn big_parts(&self) -> (BigUint, BigUint) {
        (self.numer(), self.denom())
    }

    /// `self mod 1`.
    pub fn fract(&self) -> Frac {
        match &self.0 {
            Repr::Small { num, den } => Frac(Repr::Small {
                num: num % den,
                den: *den,
            }),
            Repr::Big { num, den } => Self::from_reduced_big(num % den, den.clone()),
        }
    }

    pub fn floor(&self) -> BigUint {
        match &self.0 {
            Repr::Small { num, den } => BigUint::from(num / den),
            Repr::Big { num, den } => num / den,
        }
    }

    /// `2·self mod 1`, assuming `self < 1`.
    pub fn double_mod1(&self) -> Frac {
        match &self.0 {
            Repr::Small { num, den } => {
                if den & 1 == 0 {
                    let h = den / 2;
                    Frac(Repr::Small {
                        num: num % h,
                        den: h,
                    })
                } else {
                    let n = ((*num as u128 * 2) % *den as u128) as u64;
                    Frac(Repr::Small { num: n, den: *den })
                }
            }
            Repr::Big { num, den } => {
                if den.bit(0) {
                    Self::from_reduced_big((num << 1u32) % den, den.clone())
                } else {
                    let h: BigUint = den >> 1u32;
                    Self::from_reduced_big(num % &h, h)
                }
            }
        }
    }

    pub fn half(&self) -> Frac {
        match &self.0 {
            Repr::Small { num, den } => {
                if num & 1 == 0 {
                    Frac(Repr::Small {
                        num: num / 2,
                        den: *den,
                    })
                } else {
                    Self::from_reduced_u128(*num as u128, *den as u128 * 2)
                }
            }
            Repr::Big { num, den } => {
                if num.bit(0) {
                    Self::from_reduced_big(num.clone(), den << 1u32)
                } else {
                    Self::from_reduced_big(num >> 1u32, den.clone())
                }
            }
        }
    }

    /// `self / 2^k`.
    pub fn div_pow2(&self, k: u32) -> Frac {
        if let Repr::Small { num, den } = &self.0 {
            if k < 64 && (*den as u128) << k <= u64::MAX as u128 {
                return Frac::from_u128(*num as u128, (*den as u128) << k);
            }
        }
        let (n, d) = self.big_parts();
        Frac::from_big(n, d << k)
    }

    pub fn checked_sub(&self, rhs: &Frac) -> Option<Frac> {
        if self < rhs {
            return None;
        }
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            let (a, b, c, d) = (*a as u128, *b as u128, *c as u128, *d as u128);
            return Some(Frac::from_u128(a * d - c * b, b * d));
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Some(Frac::from_big(a * &d - c * &b, b * d))
    }

    pub fn recip(&self) -> Frac {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Frac(Repr::Small {
                num: *den,
                den: *num,
            }),
            Repr::Big { num, den } => Self::from_reduced_big(den.clone(), num.clone()),
        }
    }

    pub fn pow2(k: u32) -> Frac {
        if k < 64 {
            Frac::integer(1u64 << k)
        } else {
            Frac::from_reduced_big(BigUint::one() << k, BigUint::one())
        }
    }

    /// `2^k - 1` as an integer-valued fraction.
    pub fn mersenne(k: u32) -> Frac {
        if k < 64 {
            Frac::integer((1u64 << k) - 1)
        } else {
            Frac::from_reduced_big((BigUint::one() << k) - 1u32, BigUint::one())
        }
    }
}

impl Default for Frac {
    fn default() -> Self {
        Frac::ZERO
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        // Canonical form makes representation equality value equality.
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big { num: a, den: b }, Repr::Big { num: c, den: d }) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Frac {}

impl Hash for Frac {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big { num, den } => {
                1u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
        }
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =
            (&self.0, &other.0)
        {
            if b == d {
                return a.cmp(c);
            }
            return (*a as u128 * *d as u128).cmp(&(*c as u128 * *b as u128));
        }
        let ((a, b), (c, d)) = (self.big_parts(), other.big_parts());
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            let (a, b, c, d) = (*a as u128, *b as u128, *c as u128, *d as u128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Frac::from_u128(n, b * d);
            }
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Frac::from_big(a * &d + c * &b, b * d)
    }
}

impl Sub for &Frac {
    type Output = Frac;
    /// Panics if the result would be negative.
    fn sub(self, rhs: &Frac) -> Frac {
        self.checked_sub(rhs).expect("negative rational")
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0)
        {
            let g1 = a.gcd(d).max(1);
            let g2 = c.gcd(b).max(1);
            let n = (a / g1) as u128 * (c / g2) as u128;
            let m = (b / g2) as u128 * (d / g1) as u128;
            return Frac::from_reduced_u128(n, m);
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Frac::from_big(a * c, b * d)
    }
}

impl Div for &Frac {
    type Output = Frac;
    fn div(self, rhs: &Frac) -> Frac {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Frac {
            type Output = Frac;
            fn $m(self, rhs: Frac) -> Frac {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Frac> for Frac {
            type Output = Frac;
            fn $m(self, rhs: &Frac) -> Frac {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Frac {
    type Err = Error;

    /// Accepts `a/b` or a bare integer; the result is reduced.
    fn from_str(s: &str) -> Result<Frac> {
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        if n.is_empty() || d.is_empty() || !n.bytes().chain(d.bytes()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigUint = n.parse().map_err(|_| bad())?;
        let d: BigUint = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Frac::from_big(n, d))
    }
}
