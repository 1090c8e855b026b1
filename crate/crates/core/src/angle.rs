//! Points of the circle, chords, and the positional predicates on them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frac::Frac;

/// A word over {0, 1}; each entry is 0 or 1.
pub type BitWord = Vec<u8>;

pub fn parse_bits(s: &str) -> Result<BitWord> {
    s.bytes()
        .map(|c| match c {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(Error::Parse(format!("not a binary word: {s:?}"))),
        })
        .collect()
}

pub fn bits_to_string(w: &[u8]) -> String {
    w.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// A point of the circle R/Z, stored as a reduced fraction in [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Frac);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitType {
    pub preperiod: u32,
    pub period: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryExpansion {
    pub prefix: BitWord,
    pub repeat: BitWord,
}

impl BinaryExpansion {
    pub fn digit(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.repeat[(i - self.prefix.len()) % self.repeat.len()]
        }
    }
}

impl Angle {
    pub const ZERO: Angle = Angle(Frac::ZERO);

    pub fn new(num: u64, den: u64) -> Result<Angle> {
        if den == 0 {
            return Err(Error::InvalidAngle(format!("{num}/0")));
        }
        Angle::from_frac(Frac::new(num, den))
    }

    pub fn from_frac(f: Frac) -> Result<Angle> {
        if f >= Frac::ONE {
            return Err(Error::InvalidAngle(format!("{f} is not in [0,1)")));
        }
        Ok(Angle(f))
    }

    /// Reduces any non-negative rational modulo 1.
    pub fn from_frac_mod1(f: &Frac) -> Angle {
        Angle(f.fract())
    }

    pub fn value(&self) -> &Frac {
        &self.0
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn double(&self) -> Angle {
        Angle(self.0.double_mod1())
    }

    pub fn iterate(&self, n: u32) -> Angle {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.double();
        }
        x
    }

    /// The preimage `x/2`.
    pub fn half(&self) -> Angle {
        Angle(self.0.half())
    }

    /// The preimage `(x+1)/2`.
    pub fn half_plus(&self) -> Angle {
        Angle((&self.0 + &Frac::ONE).half())
    }

    pub fn preimages(&self) -> [Angle; 2] {
        [self.half(), self.half_plus()]
    }

    pub fn is_periodic(&self) -> bool {
        self.0.denom_is_odd()
    }

    pub fn is_dyadic(&self) -> bool {
        match self.0.as_small() {
            Some((_, d)) => d.is_power_of_two(),
            None => {
                let d = self.0.denom();
                d.count_ones() == 1
            }
        }
    }

    pub fn orbit_type(&self) -> OrbitType {
        match self.0.as_small() {
            Some((_, d)) => {
                let k = d.trailing_zeros();
                OrbitType {
                    preperiod: k,
                    period: order_of_two(d >> k),
                }
            }
            None => {
                let d = self.0.denom();
                let k = d.trailing_zeros().unwrap_or(0);
                let o: BigUint = d >> k;
                OrbitType {
                    preperiod: k as u32,
                    period: order_of_two_big(&o),
                }
            }
        }
    }

    /// Exact period under doubling, or `None` for strictly preperiodic angles.
    pub fn period(&self) -> Option<u32> {
        self.is_periodic().then(|| self.orbit_type().period)
    }

    /// The first `n` binary digits.
    pub fn bits(&self, n: usize) -> BitWord {
        let mut x = self.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(u8::from(x.0 >= Frac::HALF));
            x = x.double();
        }
        out
    }

    /// The binary expansion with minimal prefix and block; dyadic angles get
    /// the expansion ending in zeros.
    pub fn binary_of(&self) -> BinaryExpansion {
        let t = self.orbit_type();
        let k = t.preperiod as usize;
        let digits = self.bits(k + t.period as usize);
        BinaryExpansion {
            prefix: digits[..k].to_vec(),
            repeat: digits[k..].to_vec(),
        }
    }

    /// All binary expansions: two for dyadic angles (including 0), one otherwise.
    pub fn binary_expansions(&self) -> Vec<BinaryExpansion> {
        let first = self.binary_of();
        if !self.is_dyadic() {
            return vec![first];
        }
        let mut prefix = first.prefix.clone();
        if let Some(last) = prefix.last_mut() {
            debug_assert_eq!(*last, 1);
            *last = 0;
        }
        vec![
            first,
            BinaryExpansion {
                prefix,
                repeat: vec![1],
            },
        ]
    }

    /// The angle `.prefix (repeat)^inf`, taken mod 1.
    pub fn from_binary(prefix: &[u8], repeat: &[u8]) -> Result<Angle> {
        if repeat.is_empty() {
            return Err(Error::Precondition("empty repeating block".into()));
        }
        let word = |w: &[u8]| {
            w.iter()
                .fold(BigUint::zero(), |acc, &b| (acc << 1u32) + BigUint::from(b))
        };
        let k = prefix.len();
        let n = repeat.len();
        let m = (BigUint::one() << n) - 1u32;
        let num = word(prefix) * &m + word(repeat);
        let den = (BigUint::one() << k) * m;
        Ok(Angle::from_frac_mod1(&Frac::from_big(num, den)))
    }

    pub fn from_expansion(e: &BinaryExpansion) -> Result<Angle> {
        Angle::from_binary(&e.prefix, &e.repeat)
    }
}

fn order_of_two(o: u64) -> u32 {
    if o == 1 {
        return 1;
    }
    let o = o as u128;
    let mut r = 2 % o;
    let mut n = 1;
    while r != 1 {
        r = r * 2 % o;
        n += 1;
    }
    n
}

fn order_of_two_big(o: &BigUint) -> u32 {
    if o.is_one() {
        return 1;
    }
    if let Some(s) = o.to_u64() {
        return order_of_two(s);
    }
    let two = BigUint::from(2u32);
    let mut r = &two % o;
    let mut n = 1;
    while !r.is_one() {
        r = (r << 1u32) % o;
        n += 1;
    }
    n
}

/// All angles of exact period `n`, in increasing order.
pub fn angles_of_period(n: u32) -> Vec<Angle> {
    assert!((1..64).contains(&n), "period out of range");
    let den = (1u64 << n) - 1;
    if n == 1 {
        return vec![Angle::ZERO];
    }
    let proper: Vec<u64> = (1..n)
        .filter(|d| n % d == 0)
        .map(|d| (1u64 << d) - 1)
        .collect();
    (1..den)
        .filter(|a| {
            // a/den has a smaller period iff it is a multiple of den/(2^d-1).
            proper.iter().all(|&q| a % (den / q) != 0)
        })
        .map(|a| Angle(Frac::new(a, den)))
        .collect()
}

/// Angles of exact period `n >= 2` strictly inside the counter-clockwise arc
/// from `lo` to `hi`, in circular order starting at `lo`.
pub fn angles_of_period_between(lo: &Angle, hi: &Angle, n: u32) -> Vec<Angle> {
    assert!((2..63).contains(&n), "period out of range");
    if lo < hi {
        periodic_in(lo.value(), hi.value(), n)
    } else {
        let mut out = periodic_in(lo.value(), &Frac::ONE, n);
        out.extend(periodic_in(&Frac::ZERO, hi.value(), n));
        out
    }
}

fn periodic_in(lo: &Frac, hi: &Frac, n: u32) -> Vec<Angle> {
    let den = (1u64 << n) - 1;
    let scale = Frac::integer(den);
    let first = (lo * &scale).floor().to_u64().expect("below 2^63") + 1;
    let top = hi * &scale;
    let mut last = top.floor().to_u64().expect("below 2^63");
    if top.is_integer() {
        last = last.saturating_sub(1);
    }
    let proper: Vec<u64> = (1..n)
        .filter(|d| n % d == 0)
        .map(|d| den / ((1u64 << d) - 1))
        .collect();
    (first..=last.min(den - 1))
        .filter(|a| proper.iter().all(|&q| a % q != 0))
        .map(|a| Angle(Frac::new(a, den)))
        .collect()
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Angle> {
        Angle::from_frac(s.parse()?)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(y - x) mod 1`: counter-clockwise distance from `x` to `y`.
pub fn ccw_offset(x: &Angle, y: &Angle) -> Frac {
    if y >= x {
        y.value() - x.value()
    } else {
        &(&Frac::ONE - x.value()) + y.value()
    }
}

/// Whether `x, y, z` appear in this counter-clockwise order. Equal angles are
/// an error.
pub fn circular_order(x: &Angle, y: &Angle, z: &Angle) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(Error::Tie);
    }
    Ok(ccw_offset(x, y) < ccw_offset(x, z))
}

/// A non-degenerate chord with ends `a < b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    a: Angle,
    b: Angle,
}

/// Which side of a chord another object lies on. `Inner` is the side facing
/// the arc `(a, b)`, which is the minor arc unless the chord is a diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
    On,
}

impl Chord {
    pub fn new(x: Angle, y: Angle) -> Result<Chord> {
        match x.cmp(&y) {
            Ordering::Less => Ok(Chord { a: x, b: y }),
            Ordering::Greater => Ok(Chord { a: y, b: x }),
            Ordering::Equal => Err(Error::DegenerateChord(x.to_string())),
        }
    }

    /// Convenience constructor from two `(num, den)` pairs.
    pub fn from_fracs(x: (u64, u64), y: (u64, u64)) -> Result<Chord> {
        Chord::new(Angle::new(x.0, x.1)?, Angle::new(y.0, y.1)?)
    }

    pub fn a(&self) -> &Angle {
        &self.a
    }

    pub fn b(&self) -> &Angle {
        &self.b
    }

    pub fn ends(&self) -> [&Angle; 2] {
        [&self.a, &self.b]
    }

    pub fn has_end(&self, x: &Angle) -> bool {
        &self.a == x || &self.b == x
    }

    fn span(&self) -> Frac {
        self.b.value() - self.a.value()
    }

    pub fn length(&self) -> Frac {
        let s = self.span();
        if s <= Frac::HALF {
            s
        } else {
            &Frac::ONE - &s
        }
    }

    pub fn is_diameter(&self) -> bool {
        self.span() == Frac::HALF
    }

    /// The end at which the minor arc starts when traversed counter-clockwise.
    pub fn minor_start(&self) -> &Angle {
        if self.span() <= Frac::HALF {
            &self.a
        } else {
            &self.b
        }
    }

    pub fn minor_end(&self) -> &Angle {
        if self.span() <= Frac::HALF {
            &self.b
        } else {
            &self.a
        }
    }

    /// Image under doubling; `None` when both ends land on the same point.
    pub fn double(&self) -> Option<Chord> {
        Chord::new(self.a.double(), self.b.double()).ok()
    }

    pub fn iterate(&self, n: u32) -> Option<Chord> {
        let mut c = self.clone();
        for _ in 0..n {
            c = c.double()?;
        }
        Some(c)
    }

    fn strictly_inside(&self, x: &Angle) -> bool {
        &self.a < x && x < &self.b
    }

    /// Strictly inside the minor arc. Errors for diameters.
    pub fn minor_contains(&self, x: &Angle) -> Result<bool> {
        let s = self.span();
        match s.cmp(&Frac::HALF) {
            Ordering::Less => Ok(self.strictly_inside(x)),
            Ordering::Greater => Ok(x < &self.a || x > &self.b),
            Ordering::Equal => Err(Error::Diameter(self.to_string())),
        }
    }

    fn minor_is_inner(&self) -> Result<bool> {
        match self.span().cmp(&Frac::HALF) {
            Ordering::Less => Ok(true),
            Ordering::Greater => Ok(false),
            Ordering::Equal => Err(Error::Diameter(self.to_string())),
        }
    }

    pub fn crosses(&self, other: &Chord) -> bool {
        if self.has_end(&other.a) || self.has_end(&other.b) {
            return false;
        }
        self.strictly_inside(&other.a) != self.strictly_inside(&other.b)
    }

    /// The side of `self` on which `other` lies. Errors if they cross.
    pub fn side_of(&self, other: &Chord) -> Result<Side> {
        if self == other {
            return Ok(Side::On);
        }
        if self.crosses(other) {
            return Err(Error::Crossing(self.to_string(), other.to_string()));
        }
        let free = if self.has_end(&other.a) {
            &other.b
        } else {
            &other.a
        };
        Ok(if self.strictly_inside(free) {
            Side::Inner
        } else {
            Side::Outer
        })
    }

    pub fn point_side(&self, x: &Angle) -> Side {
        if self.has_end(x) {
            Side::On
        } else if self.strictly_inside(x) {
            Side::Inner
        } else {
            Side::Outer
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Chord {
    type Err = Error;

    /// Accepts `a/b-c/d`, `a/b c/d` or `a/b,c/d`.
    fn from_str(s: &str) -> Result<Chord> {
        let parts: Vec<&str> = s
            .trim()
            .trim_matches(|c| c == '{' || c == '}')
            .split(|c: char| c == '-' || c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        match parts.as_slice() {
            [x, y] => Chord::new(x.parse()?, y.parse()?),
            _ => Err(Error::Parse(format!("not a chord: {s:?}"))),
        }
    }
}

impl Serialize for Chord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(s)
    }
}

pub fn chord_length(c: &Chord) -> Frac {
    c.length()
}

/// `x` lies strictly inside the minor arc of `c`.
pub fn is_between(x: &Angle, c: &Chord) -> Result<bool> {
    c.minor_contains(x)
}

pub fn crosses(c1: &Chord, c2: &Chord) -> bool {
    c1.crosses(c2)
}

/// Something that can lie behind a chord.
pub trait BehindTarget {
    fn is_behind(&self, c: &Chord) -> Result<bool>;
}

impl BehindTarget for Angle {
    fn is_behind(&self, c: &Chord) -> Result<bool> {
        c.minor_contains(self)
    }
}

impl BehindTarget for Chord {
    fn is_behind(&self, c: &Chord) -> Result<bool> {
        let minor_inner = c.minor_is_inner()?;
        let mut strict = false;
        for x in self.ends() {
            match c.point_side(x) {
                Side::On => {}
                Side::Inner if minor_inner => strict = true,
                Side::Outer if !minor_inner => strict = true,
                _ => return Ok(false),
            }
        }
        Ok(strict)
    }
}

pub fn is_behind<T: BehindTarget + ?Sized>(target: &T, c: &Chord) -> Result<bool> {
    target.is_behind(c)
}

/// `x` lies in the closed region bounded by `c1` and `c2` and is neither of them.
pub fn chord_between_chords(x: &Chord, c1: &Chord, c2: &Chord) -> Result<bool> {
    if x == c1 || x == c2 || c1 == c2 {
        return Ok(false);
    }
    Ok(c1.side_of(x)? == c1.side_of(c2)? && c2.side_of(x)? == c2.side_of(c1)?)
}

/// `s` separates `c1` from `c2`: `c1` and `c2` lie on different sides of `s`.
pub fn separates(s: &Chord, c1: &Chord, c2: &Chord) -> Result<bool> {
    if c1.crosses(c2) {
        return Err(Error::Crossing(c1.to_string(), c2.to_string()));
    }
    if s.is_diameter() {
        return Err(Error::Diameter(s.to_string()));
    }
    let (s1, s2) = (s.side_of(c1)?, s.side_of(c2)?);
    Ok(s1 != Side::On && s2 != Side::On && s1 != s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ang(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn ch(x: &str, y: &str) -> Chord {
        Chord::new(ang(x), ang(y)).unwrap()
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(ang("1/3").double(), ang("2/3"));
        assert_eq!(ang("5/31").double(), ang("10/31"));
        assert_eq!(ang("2/3").double(), ang("1/3"));
    }

    #[test]
    fn orbit_types() {
        assert_eq!(
            ang("13/31").orbit_type(),
            OrbitType {
                preperiod: 0,
                period: 5
            }
        );
        assert_eq!(
            ang("1/2").orbit_type(),
            OrbitType {
                preperiod: 1,
                period: 1
            }
        );
        assert_eq!(
            ang("5/62").orbit_type(),
            OrbitType {
                preperiod: 1,
                period: 5
            }
        );
        assert_eq!(
            ang("0").orbit_type(),
            OrbitType {
                preperiod: 0,
                period: 1
            }
        );
    }

    #[test]
    fn lengths() {
        assert_eq!(ch("5/31", "6/31").length(), Frac::new(1, 31));
        assert_eq!(ch("1/3", "2/3").length(), Frac::new(1, 3));
        assert_eq!(ch("5/62", "37/62").length(), Frac::new(15, 31));
    }

    #[test]
    fn between_examples() {
        assert!(is_between(&ang("3/7"), &ch("13/31", "18/31")).unwrap());
        assert!(!is_between(&ang("0"), &ch("1/3", "2/3")).unwrap());
        assert!(!is_between(&ang("1/3"), &ch("1/3", "2/3")).unwrap());
        assert!(is_between(&ang("0"), &ch("1/3", "7/8")).unwrap());
        assert!(is_between(&ang("0"), &ch("1/4", "3/4")).is_err());
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(&ch("0", "1/2"), &ch("1/4", "3/4")));
        assert!(!crosses(&ch("1/3", "2/3"), &ch("2/5", "3/5")));
        assert!(!crosses(&ch("1/3", "2/3"), &ch("1/3", "5/6")));
        assert!(!crosses(&ch("1/3", "2/3"), &ch("1/3", "2/3")));
    }

    #[test]
    fn behind_examples() {
        assert!(is_behind(&ch("2/5", "3/5"), &ch("1/3", "2/3")).unwrap());
        assert!(is_behind(&ch("7/15", "8/15"), &ch("3/7", "4/7")).unwrap());
        assert!(!is_behind(&ch("1/3", "2/3"), &ch("2/5", "3/5")).unwrap());
        assert!(is_behind(&ch("1/3", "1/2"), &ch("1/3", "2/3")).unwrap());
        assert!(!is_behind(&ch("1/3", "2/3"), &ch("1/3", "2/3")).unwrap());
        // Minor arc through 0.
        assert!(is_behind(&ch("1/31", "30/31"), &ch("1/15", "14/15")).is_ok());
        assert!(is_behind(&ch("0", "1/15"), &ch("14/15", "1/7")).unwrap());
        assert!(is_behind(&ch("1/7", "2/7"), &ch("0", "1/2")).is_err());
    }

    #[test]
    fn separation_examples() {
        let (a, b, c) = (ch("2/5", "3/5"), ch("1/3", "2/3"), ch("13/31", "18/31"));
        assert!(separates(&a, &b, &c).unwrap());
        assert!(!separates(&ch("1/7", "2/7"), &b, &ch("3/7", "4/7")).unwrap());
        assert!(!separates(&b, &b, &c).unwrap());
        assert!(separates(&a, &b, &ch("1/2", "3/4")).is_err());
    }

    #[test]
    fn triangle_is_not_separation() {
        let (c1, s, c2) = (ch("0", "1/3"), ch("1/3", "2/3"), ch("0", "2/3"));
        assert!(!separates(&s, &c1, &c2).unwrap());
        assert!(chord_between_chords(&s, &c1, &c2).unwrap());
        assert!(chord_between_chords(&c2, &c1, &s).unwrap());
    }

    #[test]
    fn binary_examples() {
        assert_eq!(Angle::from_binary(&[], &[0, 1]).unwrap(), ang("1/3"));
        assert_eq!(Angle::from_binary(&[], &[0, 1, 1, 0]).unwrap(), ang("2/5"));
        let e = ang("1/2").binary_expansions();
        assert_eq!(
            e[0],
            BinaryExpansion {
                prefix: vec![1],
                repeat: vec![0]
            }
        );
        assert_eq!(
            e[1],
            BinaryExpansion {
                prefix: vec![0],
                repeat: vec![1]
            }
        );
        assert_eq!(Angle::from_binary(&[], &[1]).unwrap(), Angle::ZERO);
        assert_eq!(ang("0").binary_expansions().len(), 2);
        assert_eq!(ang("1/3").binary_expansions().len(), 1);
    }

    #[test]
    fn period_lists() {
        assert_eq!(angles_of_period(2), vec![ang("1/3"), ang("2/3")]);
        assert_eq!(angles_of_period(4).len(), 12);
        for n in 1..=12 {
            for x in angles_of_period(n) {
                assert_eq!(x.period(), Some(n));
            }
        }
    }

    fn arb_angle() -> impl Strategy<Value = Angle> {
        (1u64..5000).prop_flat_map(|d| (0..d).prop_map(move |n| Angle::new(n, d).unwrap()))
    }

    fn arb_chord() -> impl Strategy<Value = Chord> {
        (arb_angle(), arb_angle())
            .prop_filter("distinct", |(x, y)| x != y)
            .prop_map(|(x, y)| Chord::new(x, y).unwrap())
    }

    proptest! {
        #[test]
        fn binary_round_trip(x in arb_angle()) {
            for e in x.binary_expansions() {
                prop_assert_eq!(Angle::from_expansion(&e).unwrap(), x.clone());
            }
        }

        #[test]
        fn exactly_two_preimages(x in arb_angle()) {
            let [p, q] = x.preimages();
            prop_assert!(p != q);
            prop_assert_eq!(p.double(), x.clone());
            prop_assert_eq!(q.double(), x);
        }

        #[test]
        fn period_is_order_of_two(x in arb_angle()) {
            if let Some(n) = x.period() {
                let d = x.denom();
                prop_assert!((((BigUint::one() << n) - 1u32) % &d).is_zero());
                for k in 1..n {
                    prop_assert!(!(((BigUint::one() << k) - 1u32) % &d).is_zero());
                }
            }
        }

        #[test]
        fn order_invariance_on_semicircles(x in arb_angle(), y in arb_angle(), z in arb_angle()) {
            prop_assume!(x != y && y != z && x != z);
            // All three fit in an open semicircle starting at one of them.
            let fits = |p: &Angle, q: &Angle, r: &Angle| {
                ccw_offset(p, q) < Frac::HALF && ccw_offset(p, r) < Frac::HALF
            };
            prop_assume!(fits(&x, &y, &z) || fits(&y, &z, &x) || fits(&z, &x, &y)
                || fits(&x, &z, &y) || fits(&y, &x, &z) || fits(&z, &y, &x));
            prop_assert_eq!(
                circular_order(&x, &y, &z).unwrap(),
                circular_order(&x.double(), &y.double(), &z.double()).unwrap()
            );
        }

        #[test]
        fn separation_matches_literal_definition(s in arb_chord(), c1 in arb_chord(), c2 in arb_chord()) {
            prop_assume!(!s.crosses(&c1) && !s.crosses(&c2) && !c1.crosses(&c2) && !s.is_diameter());
            prop_assume!(c1 != c2);
            let literal = chord_between_chords(&s, &c1, &c2).unwrap()
                && !chord_between_chords(&c2, &c1, &s).unwrap();
            prop_assert_eq!(separates(&s, &c1, &c2).unwrap(), literal);
        }

        #[test]
        fn separation_implies_behind(s in arb_chord(), c1 in arb_chord(), c2 in arb_chord()) {
            prop_assume!(!s.crosses(&c1) && !s.crosses(&c2) && !c1.crosses(&c2) && !s.is_diameter());
            let major_side = !is_behind(&c1, &s).unwrap() && c1 != s;
            if separates(&s, &c1, &c2).unwrap() && major_side {
                prop_assert!(is_behind(&c2, &s).unwrap());
            }
        }
    }
}
