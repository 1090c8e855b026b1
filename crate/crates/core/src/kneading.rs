//! Kneading sequences over {0, 1, *} and internal addresses.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::angle::{Angle, BitWord, Chord};
use crate::error::{Error, Result};
use crate::lamination::in_entire_lamination;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Zero,
    One,
    Star,
}

impl Sym {
    pub fn bit(b: u8) -> Sym {
        if b == 0 {
            Sym::Zero
        } else {
            Sym::One
        }
    }

    pub fn as_bit(self) -> Option<u8> {
        match self {
            Sym::Zero => Some(0),
            Sym::One => Some(1),
            Sym::Star => None,
        }
    }

    pub fn flipped(self) -> Sym {
        match self {
            Sym::Zero => Sym::One,
            Sym::One => Sym::Zero,
            Sym::Star => Sym::Star,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Star => '*',
        }
    }
}

pub fn syms_to_string(w: &[Sym]) -> String {
    w.iter().map(|s| s.as_char()).collect()
}

pub fn parse_syms(s: &str) -> Result<Vec<Sym>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(Sym::Zero),
            '1' => Ok(Sym::One),
            '*' | '∗' => Ok(Sym::Star),
            _ => Err(Error::Parse(format!("bad kneading symbol {c:?} in {s:?}"))),
        })
        .collect()
}

pub fn bits_to_syms(w: &[u8]) -> Vec<Sym> {
    w.iter().map(|&b| Sym::bit(b)).collect()
}

/// An eventually periodic word `prefix · block^inf`, kept in canonical form
/// so that structural equality is equality of sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KneadingSequence {
    prefix: Vec<Sym>,
    block: Vec<Sym>,
}

fn primitive_root(block: &[Sym]) -> &[Sym] {
    let n = block.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| block[i] == block[i - d]) {
            return &block[..d];
        }
    }
    block
}

impl KneadingSequence {
    pub fn new(prefix: Vec<Sym>, block: Vec<Sym>) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::Precondition("empty kneading block".into()));
        }
        let mut prefix = prefix;
        let mut block = primitive_root(&block).to_vec();
        while let Some(&last) = prefix.last() {
            if last != *block.last().expect("non-empty") {
                break;
            }
            prefix.pop();
            block.rotate_right(1);
        }
        Ok(KneadingSequence { prefix, block })
    }

    pub fn periodic(block: Vec<Sym>) -> Result<Self> {
        Self::new(Vec::new(), block)
    }

    pub fn from_bits_periodic(block: &[u8]) -> Result<Self> {
        Self::periodic(bits_to_syms(block))
    }

    pub fn prefix(&self) -> &[Sym] {
        &self.prefix
    }

    pub fn block(&self) -> &[Sym] {
        &self.block
    }

    /// Symbol at 0-based position `i` (symbol `i+1` in 1-based numbering).
    pub fn symbol(&self, i: usize) -> Sym {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.block[(i - self.prefix.len()) % self.block.len()]
        }
    }

    pub fn take(&self, n: usize) -> Vec<Sym> {
        (0..n).map(|i| self.symbol(i)).collect()
    }

    /// Position (1-based) of the first `*`, if any.
    pub fn star_position(&self) -> Option<usize> {
        let len = self.prefix.len() + self.block.len();
        (0..len)
            .find(|&i| self.symbol(i) == Sym::Star)
            .map(|i| i + 1)
    }

    pub fn is_star_only(&self) -> bool {
        self.prefix.is_empty() && self.block == [Sym::Star]
    }

    /// Number of symbols after which both sequences have certainly repeated.
    fn horizon_with(&self, other: &KneadingSequence) -> usize {
        let l = num_integer::lcm(self.block.len(), other.block.len());
        self.prefix.len().max(other.prefix.len()) + l
    }

    /// First 1-based position where the two sequences differ.
    pub fn first_difference(&self, other: &KneadingSequence) -> Option<usize> {
        (0..self.horizon_with(other))
            .find(|&i| self.symbol(i) != other.symbol(i))
            .map(|i| i + 1)
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})^inf",
            syms_to_string(&self.prefix),
            syms_to_string(&self.block)
        )
    }
}

impl fmt::Debug for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for KneadingSequence {
    type Err = Error;

    /// Accepts `pre(block)^inf`, `(block)^inf`, or a bare word read as a
    /// repeating block.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(open) = s.find('(') {
            let rest = s[open + 1..]
                .strip_suffix(")^inf")
                .ok_or_else(|| Error::Parse(format!("expected `(...)^inf` in {s:?}")))?;
            KneadingSequence::new(parse_syms(&s[..open])?, parse_syms(rest)?)
        } else {
            KneadingSequence::periodic(parse_syms(s)?)
        }
    }
}

impl Serialize for KneadingSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symbol of a point `y` relative to the halves cut at `x/2`, `(x+1)/2`.
fn symbol_at(x: &Angle, y: &Angle) -> Sym {
    let lo = x.half();
    let hi = x.half_plus();
    if y == &lo || y == &hi {
        Sym::Star
    } else if &lo < y && y < &hi {
        Sym::Zero
    } else {
        Sym::One
    }
}

/// The first `n` kneading symbols of `x`.
pub fn kneading_prefix(x: &Angle, n: usize) -> Vec<Sym> {
    if let Some((a, d)) = x.value().as_small() {
        if d < 1 << 62 {
            return kneading_prefix_small(a, d, n);
        }
    }
    let mut y = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(symbol_at(x, &y));
        y = y.double();
    }
    out
}

/// Integer version for `x = a/d`: positions are measured in units of `1/(2d)`.
fn kneading_prefix_small(a: u64, d: u64, n: usize) -> Vec<Sym> {
    let (lo, hi) = (a, a + d);
    let mut b = a;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let y = 2 * b;
        out.push(if y == lo || y == hi {
            Sym::Star
        } else if lo < y && y < hi {
            Sym::Zero
        } else {
            Sym::One
        });
        b = y % d;
    }
    out
}

/// Kneading sequence of an angle. The angle 0 is assigned `(*)^inf`, the
/// sequence of the main component.
pub fn kneading_of_angle(x: &Angle) -> KneadingSequence {
    if x.is_zero() {
        return KneadingSequence::periodic(vec![Sym::Star]).expect("non-empty");
    }
    let t = x.orbit_type();
    let (k, p) = (t.preperiod as usize, t.period as usize);
    let mut syms = kneading_prefix(x, k + p);
    let block = syms.split_off(k);
    KneadingSequence::new(syms, block).expect("non-empty block")
}

fn periodic_ends(s: &Chord) -> Option<u32> {
    let (pa, pb) = (s.a().period()?, s.b().period()?);
    (pa == pb).then_some(pa)
}

/// `(v, e)` for a periodic leaf of period `m >= 2`: `v` is the common
/// kneading prefix of length `m-1` and `e` selects the preimage of `S` with
/// preperiodic ends.
pub fn v_e_of(s: &Chord) -> Result<(BitWord, u8)> {
    let m = periodic_ends(s).ok_or_else(|| Error::NotPeriodic(s.to_string()))?;
    if m < 2 || !in_entire_lamination(s) {
        return Err(Error::NotInLamination(s.to_string()));
    }
    let alpha = s.a();
    let v: BitWord = kneading_prefix(alpha, m as usize - 1)
        .into_iter()
        .map(|x| {
            x.as_bit()
                .ok_or_else(|| Error::Internal(format!("early * in kneading of {alpha}")))
        })
        .collect::<Result<_>>()?;
    // L_0(S) = {(α+1)/2, γ/2}; it is the periodic preimage unless e = 0.
    let l0_periodic = alpha.half_plus().is_periodic();
    Ok((v, if l0_periodic { 1 } else { 0 }))
}

fn with_last(v: &[u8], last: Sym) -> Vec<Sym> {
    let mut w = bits_to_syms(v);
    w.push(last);
    w
}

fn member_kneading(s: &Chord) -> Result<KneadingSequence> {
    if !in_entire_lamination(s) {
        return Err(Error::NotInLamination(s.to_string()));
    }
    let ka = kneading_of_angle(s.a());
    if !s.a().is_periodic() || !s.b().is_periodic() {
        let kb = kneading_of_angle(s.b());
        if ka != kb {
            return Err(Error::Internal(format!(
                "ends of {s} have kneading {ka} and {kb}"
            )));
        }
    }
    Ok(ka)
}

pub fn leaf_kneading(s: &Chord) -> Result<KneadingSequence> {
    member_kneading(s)
}

pub fn just_behind(s: &Chord) -> Result<KneadingSequence> {
    if periodic_ends(s).is_some() {
        let (v, e) = v_e_of(s)?;
        KneadingSequence::periodic(with_last(&v, Sym::bit(e)))
    } else {
        member_kneading(s)
    }
}

pub fn just_before(s: &Chord) -> Result<KneadingSequence> {
    if periodic_ends(s).is_some() {
        let (v, e) = v_e_of(s)?;
        KneadingSequence::periodic(with_last(&v, Sym::bit(1 - e)))
    } else {
        member_kneading(s)
    }
}

/// A strictly increasing list of positive integers starting at 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InternalAddress(Vec<u32>);

impl InternalAddress {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.first() != Some(&1) {
            return Err(Error::Parse("internal address must start with 1".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "internal address must be strictly increasing".into(),
            ));
        }
        Ok(InternalAddress(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn last(&self) -> u32 {
        *self.0.last().expect("non-empty")
    }

    pub fn extended(&self, n: u32) -> Result<Self> {
        let mut e = self.0.clone();
        e.push(n);
        InternalAddress::new(e)
    }

    pub fn is_prefix_of(&self, other: &InternalAddress) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for InternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

impl fmt::Debug for InternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for InternalAddress {
    type Err = Error;

    /// Accepts `1-2-4-5`, `1->2->4->5`, `1→2→4→5` or comma separated entries.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad address entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty()
            || s.chars()
                .any(|c| !(c.is_ascii_digit() || "->→, ".contains(c)))
        {
            return Err(Error::Parse(format!("not an internal address: {s:?}")));
        }
        InternalAddress::new(entries)
    }
}

impl Serialize for InternalAddress {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of reading an address off a kneading sequence up to a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddressPrefix {
    pub address: InternalAddress,
    /// `true` when the next entry would exceed the horizon.
    pub truncated: bool,
}

/// Reads the internal address of `k`, stopping at the first `*`, when `k`
/// becomes periodic with the current word, or once the next entry would
/// exceed `horizon`.
pub fn address_prefix(k: &KneadingSequence, horizon: u32) -> AddressPrefix {
    let mut entries = vec![1u32];
    loop {
        let n = *entries.last().expect("non-empty") as usize;
        if k.symbol(n - 1) == Sym::Star {
            break;
        }
        let w = KneadingSequence::periodic(k.take(n)).expect("non-empty");
        match k.first_difference(&w) {
            None => break,
            Some(next) if next as u64 > horizon as u64 => {
                return AddressPrefix {
                    address: InternalAddress(entries),
                    truncated: true,
                };
            }
            Some(next) => entries.push(next as u32),
        }
    }
    AddressPrefix {
        address: InternalAddress(entries),
        truncated: false,
    }
}

/// Entries beyond this bound are reported as an error by
/// [`address_from_kneading`]; sequences without `*` can have infinite addresses.
pub const DEFAULT_ADDRESS_HORIZON: u32 = 4096;

pub fn address_from_kneading(k: &KneadingSequence) -> Result<InternalAddress> {
    let p = address_prefix(k, DEFAULT_ADDRESS_HORIZON);
    if p.truncated {
        return Err(Error::LimitExceeded(format!(
            "address of {k} has entries beyond {DEFAULT_ADDRESS_HORIZON}"
        )));
    }
    Ok(p.address)
}

pub fn kneading_from_address(a: &InternalAddress) -> KneadingSequence {
    let mut current = vec![Sym::Zero];
    let entries = a.entries();
    for (i, &n) in entries.iter().enumerate().skip(1) {
        let n = n as usize;
        let mut next: Vec<Sym> = (0..n).map(|j| current[j % current.len()]).collect();
        if i + 1 < entries.len() {
            next[n - 1] = next[n - 1].flipped();
        }
        current = next;
    }
    let n = current.len();
    current[n - 1] = Sym::Star;
    KneadingSequence::periodic(current).expect("non-empty")
}
