//! The parameter lamination: membership test, enumeration of the periodic
//! leaves, parameter visibility and separator search.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::angle::{angles_of_period, Angle, Chord, Side};
use crate::error::{Error, Result};
use crate::kneading::{just_before, just_behind, kneading_of_angle, kneading_prefix};

/// Membership in the entire parameter lamination for chords with rational
/// ends: the forward iterates are pairwise non-crossing and none of them
/// crosses the two diameters through the halved ends.
pub fn in_entire_lamination(c: &Chord) -> bool {
    let da = match Chord::new(c.a().half(), c.a().half_plus()) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let dg = Chord::new(c.b().half(), c.b().half_plus()).expect("halves differ");
    let mut orbit: Vec<Chord> = Vec::new();
    let mut seen = HashSet::new();
    let mut cur = Some(c.clone());
    while let Some(x) = cur {
        if !seen.insert(x.clone()) {
            break;
        }
        if x.crosses(&da) || x.crosses(&dg) || orbit.iter().any(|y| y.crosses(&x)) {
            return false;
        }
        cur = x.double();
        orbit.push(x);
    }
    true
}

/// A leaf of the periodic parameter lamination.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    pub period: u32,
    pub chord: Chord,
}

impl Leaf {
    /// Wraps a chord whose ends share an exact period. Membership in the
    /// lamination is not checked here; see [`Leaf::checked`].
    pub fn new(chord: Chord) -> Result<Leaf> {
        match (chord.a().period(), chord.b().period()) {
            (Some(p), Some(q)) if p == q => Ok(Leaf { period: p, chord }),
            _ => Err(Error::NotPeriodic(chord.to_string())),
        }
    }

    pub fn checked(chord: Chord) -> Result<Leaf> {
        let leaf = Leaf::new(chord)?;
        if leaf.period < 2 || !in_entire_lamination(&leaf.chord) {
            return Err(Error::NotInLamination(leaf.chord.to_string()));
        }
        Ok(leaf)
    }

    pub fn a(&self) -> &Angle {
        self.chord.a()
    }

    pub fn b(&self) -> &Angle {
        self.chord.b()
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a(), self.b())
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.period, self)
    }
}

impl FromStr for Leaf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Leaf> {
        Leaf::new(s.parse()?)
    }
}

impl Serialize for Leaf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.chord.serialize(s)
    }
}

/// What separates two leaves of equal period: a leaf of lower period, or the
/// period-1 main component (whose only angle is 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separator {
    MainComponent,
    Leaf(Leaf),
}

impl Separator {
    pub fn period(&self) -> u32 {
        match self {
            Separator::MainComponent => 1,
            Separator::Leaf(l) => l.period,
        }
    }
}

impl fmt::Display for Separator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separator::MainComponent => f.write_str("main component"),
            Separator::Leaf(l) => fmt::Display::fmt(l, f),
        }
    }
}

/// Number of angles of exact period `n` (for `n >= 2`).
pub fn count_exact_period(n: u32) -> u64 {
    fn mobius(mut k: u32) -> i64 {
        let mut res = 1;
        let mut p = 2;
        while p * p <= k {
            if k % p == 0 {
                k /= p;
                if k % p == 0 {
                    return 0;
                }
                res = -res;
            }
            p += 1;
        }
        if k > 1 {
            res = -res;
        }
        res
    }
    let total: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(n / d) * (1i64 << d))
        .sum();
    total as u64
}

/// The periodic parameter lamination up to a maximal period.
#[derive(Clone, Debug)]
pub struct LaminationStore {
    max_period: u32,
    by_period: Vec<Vec<Leaf>>,
    all: Vec<Leaf>,
    index: HashMap<Chord, usize>,
    by_end: HashMap<Angle, usize>,
    /// Innermost strictly enclosing leaf, as an index into `all`.
    parent: Vec<Option<usize>>,
}

impl PartialEq for LaminationStore {
    fn eq(&self, other: &Self) -> bool {
        self.max_period == other.max_period && self.all == other.all
    }
}

impl Eq for LaminationStore {}

impl LaminationStore {
    fn from_leaves(max_period: u32, mut leaves: Vec<Leaf>) -> Result<Self> {
        leaves.sort();
        let mut by_period = vec![Vec::new(); max_period as usize + 1];
        for l in &leaves {
            if l.period < 2 || l.period > max_period {
                return Err(Error::Internal(format!("leaf {l:?} outside period range")));
            }
            by_period[l.period as usize].push(l.clone());
        }
        let mut index = HashMap::with_capacity(leaves.len());
        let mut by_end = HashMap::with_capacity(2 * leaves.len());
        for (i, l) in leaves.iter().enumerate() {
            index.insert(l.chord.clone(), i);
            for x in l.chord.ends() {
                if by_end.insert(x.clone(), i).is_some() {
                    return Err(Error::Internal(format!(
                        "angle {x} is an end of two leaves"
                    )));
                }
            }
        }
        let parent = nesting_parents(&leaves)?;
        Ok(LaminationStore {
            max_period,
            by_period,
            all: leaves,
            index,
            by_end,
            parent,
        })
    }

    pub fn max_period(&self) -> u32 {
        self.max_period
    }

    pub fn leaves(&self, period: u32) -> &[Leaf] {
        self.by_period
            .get(period as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// All leaves, sorted by period and then by smaller end.
    pub fn all_leaves(&self) -> &[Leaf] {
        &self.all
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn get(&self, chord: &Chord) -> Option<&Leaf> {
        self.index.get(chord).map(|&i| &self.all[i])
    }

    pub fn contains(&self, chord: &Chord) -> bool {
        self.index.contains_key(chord)
    }

    /// The leaf of the store with the given chord, or an error naming why not.
    pub fn leaf(&self, chord: &Chord) -> Result<&Leaf> {
        if let Some(l) = self.get(chord) {
            return Ok(l);
        }
        let l = Leaf::new(chord.clone())?;
        if l.period > self.max_period {
            Err(Error::StoreTooShallow {
                have: self.max_period,
                need: l.period,
            })
        } else {
            Err(Error::NotInLamination(chord.to_string()))
        }
    }

    pub fn partner(&self, x: &Angle) -> Result<Angle> {
        let p = x
            .period()
            .ok_or_else(|| Error::NotPeriodic(x.to_string()))?;
        if p < 2 {
            return Err(Error::Precondition(format!(
                "{x} has period 1 and no partner"
            )));
        }
        if p > self.max_period {
            return Err(Error::StoreTooShallow {
                have: self.max_period,
                need: p,
            });
        }
        let l = &self.all[self.by_end[x]];
        Ok(if l.a() == x {
            l.b().clone()
        } else {
            l.a().clone()
        })
    }

    pub fn parent_of(&self, leaf: &Leaf) -> Option<&Leaf> {
        let i = *self.index.get(&leaf.chord)?;
        self.parent[i].map(|j| &self.all[j])
    }

    /// Store leaves strictly enclosing `leaf`, innermost first.
    pub fn ancestors(&self, leaf: &Leaf) -> Vec<&Leaf> {
        let mut out = Vec::new();
        let mut cur = self.index.get(&leaf.chord).and_then(|&i| self.parent[i]);
        while let Some(j) = cur {
            out.push(&self.all[j]);
            cur = self.parent[j];
        }
        out
    }

    /// Store leaves of period at most `max_period` that separate two
    /// non-crossing chords (which need not belong to the store).
    pub fn separators(&self, c1: &Chord, c2: &Chord, max_period: u32) -> Result<Vec<&Leaf>> {
        if c1.crosses(c2) {
            return Err(Error::Crossing(c1.to_string(), c2.to_string()));
        }
        let bound = max_period.min(self.max_period) as usize;
        let mut out = Vec::new();
        for p in 2..=bound {
            for l in &self.by_period[p] {
                let (s1, s2) = (l.chord.side_of(c1)?, l.chord.side_of(c2)?);
                if s1 != Side::On && s2 != Side::On && s1 != s2 {
                    out.push(l);
                }
            }
        }
        Ok(out)
    }

    /// Symbolic visibility: the kneading sequences just behind `s` and just
    /// before `q` agree on the first `period(q) - 1` symbols.
    pub fn is_visible_symbolic(s: &Leaf, q: &Leaf) -> Result<bool> {
        require_behind(s, q)?;
        let n = q.period as usize - 1;
        Ok(just_behind(&s.chord)?.take(n) == just_before(&q.chord)?.take(n))
    }

    /// Geometric visibility: no store leaf of period below (or, with
    /// `inclusive`, up to) `period(q)` separates the two.
    pub fn is_visible_geometric(&self, s: &Leaf, q: &Leaf, inclusive: bool) -> Result<bool> {
        require_behind(s, q)?;
        let bound = if inclusive { q.period } else { q.period - 1 };
        self.require_depth(bound)?;
        Ok(self.separators(&s.chord, &q.chord, bound)?.is_empty())
    }

    /// Visibility of `q` from `s`, decided symbolically and confirmed
    /// geometrically (both strict and non-strict period bound) when the store
    /// is deep enough.
    pub fn is_visible(&self, s: &Leaf, q: &Leaf) -> Result<bool> {
        let sym = Self::is_visible_symbolic(s, q)?;
        if q.period <= self.max_period {
            let strict = self.is_visible_geometric(s, q, false)?;
            let loose = self.is_visible_geometric(s, q, true)?;
            if sym != strict || strict != loose {
                return Err(Error::Internal(format!(
                    "visibility of {q} from {s}: symbolic {sym}, geometric {strict}/{loose}"
                )));
            }
        }
        Ok(sym)
    }

    /// Symbolic immediate visibility: the sequence just behind `s` equals the
    /// sequence just before `b`.
    pub fn is_immediately_visible_symbolic(s: &Leaf, b: &Leaf) -> Result<bool> {
        require_behind(s, b)?;
        Ok(just_behind(&s.chord)? == just_before(&b.chord)?)
    }

    /// Two periodic sequences with periods `m` and `n` that agree on
    /// `m + n - 1` symbols agree everywhere, so separators of higher period
    /// need not be examined.
    pub fn immediate_separator_bound(s: &Leaf, b: &Leaf) -> u32 {
        s.period + b.period - 1
    }

    pub fn is_immediately_visible_geometric(&self, s: &Leaf, b: &Leaf) -> Result<bool> {
        require_behind(s, b)?;
        let bound = Self::immediate_separator_bound(s, b);
        self.require_depth(bound)?;
        Ok(self.separators(&s.chord, &b.chord, bound)?.is_empty())
    }

    pub fn is_immediately_visible(&self, s: &Leaf, b: &Leaf) -> Result<bool> {
        let sym = Self::is_immediately_visible_symbolic(s, b)?;
        if Self::immediate_separator_bound(s, b) <= self.max_period {
            let geo = self.is_immediately_visible_geometric(s, b)?;
            if geo != sym {
                return Err(Error::Internal(format!(
                    "immediate visibility of {b} from {s}: symbolic {sym}, geometric {geo}"
                )));
            }
        }
        Ok(sym)
    }

    fn require_depth(&self, need: u32) -> Result<()> {
        if need > self.max_period {
            Err(Error::StoreTooShallow {
                have: self.max_period,
                need,
            })
        } else {
            Ok(())
        }
    }

    /// Store leaves on the path between two leaves of the nesting tree,
    /// excluding the two leaves themselves. When neither leaf lies behind the
    /// other, the path runs through their innermost common enclosing
    /// component; `None` in the result stands for the main component.
    pub fn path_separators(&self, q1: &Leaf, q2: &Leaf) -> Result<Vec<Option<&Leaf>>> {
        let (i, j) = match (self.index.get(&q1.chord), self.index.get(&q2.chord)) {
            (Some(&i), Some(&j)) => (i, j),
            _ => {
                return Err(Error::Precondition(format!(
                    "{q1} or {q2} not in the store"
                )))
            }
        };
        let chain = |k: usize| {
            let mut v = vec![k];
            let mut cur = self.parent[k];
            while let Some(x) = cur {
                v.push(x);
                cur = self.parent[x];
            }
            v
        };
        let (c1, c2) = (chain(i), chain(j));
        let s1: HashSet<usize> = c1.iter().copied().collect();
        let s2: HashSet<usize> = c2.iter().copied().collect();
        let lca = c1.iter().copied().find(|k| s2.contains(k));
        let mut out: Vec<Option<&Leaf>> = s1
            .symmetric_difference(&s2)
            .filter(|&&k| k != i && k != j)
            .map(|&k| Some(&self.all[k]))
            .collect();
        match lca {
            Some(k) if k != i && k != j => out.push(Some(&self.all[k])),
            None => out.push(None),
            _ => {}
        }
        out.sort();
        Ok(out)
    }

    /// The unique separator of lowest period between two distinct store
    /// leaves of equal period.
    pub fn lavaurs_separator(&self, q1: &Leaf, q2: &Leaf) -> Result<Separator> {
        if q1 == q2 {
            return Err(Error::Precondition(
                "separator of a leaf from itself".into(),
            ));
        }
        if q1.period != q2.period {
            return Err(Error::Precondition(format!(
                "{q1} and {q2} have different periods"
            )));
        }
        let seps = self.path_separators(q1, q2)?;
        let period = |s: &Option<&Leaf>| s.map_or(1, |l| l.period);
        let min = seps
            .iter()
            .map(period)
            .min()
            .ok_or_else(|| Error::Internal(format!("no separator between {q1} and {q2}")))?;
        let lowest: Vec<&Option<&Leaf>> = seps.iter().filter(|s| period(s) == min).collect();
        if lowest.len() != 1 {
            return Err(Error::Internal(format!(
                "{} separators of period {min} between {q1} and {q2}",
                lowest.len()
            )));
        }
        if min >= q1.period {
            return Err(Error::Internal(format!(
                "lowest separator of {q1}, {q2} has period {min}"
            )));
        }
        Ok(match lowest[0] {
            Some(l) => Separator::Leaf((*l).clone()),
            None => Separator::MainComponent,
        })
    }

    /// Serializes in the line-oriented cache format.
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "LAMINA v1 max_period={}", self.max_period)?;
        for l in &self.all {
            writeln!(w, "{} {} {}", l.period, l.a(), l.b())?;
        }
        Ok(())
    }

    pub fn read_cache<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty cache file".into()))??;
        let max_period: u32 = header
            .strip_prefix("LAMINA v1 max_period=")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad cache header {header:?}")))?;
        let mut leaves = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [p, a, b] = parts.as_slice() else {
                return Err(Error::Parse(format!("bad cache line {line:?}")));
            };
            let p: u32 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad period in {line:?}")))?;
            let (a, b): (Angle, Angle) = (a.parse()?, b.parse()?);
            if a >= b {
                return Err(Error::Parse(format!("ends out of order in {line:?}")));
            }
            let leaf = Leaf::new(Chord::new(a, b)?)?;
            if leaf.period != p {
                return Err(Error::Parse(format!("period mismatch in {line:?}")));
            }
            leaves.push(leaf);
        }
        if leaves.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("cache lines are not sorted".into()));
        }
        let store = LaminationStore::from_leaves(max_period, leaves)?;
        for n in 2..=max_period {
            if store.leaves(n).len() as u64 * 2 != count_exact_period(n) {
                return Err(Error::Parse(format!("cache is incomplete at period {n}")));
            }
        }
        Ok(store)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_cache(&mut buf)?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, buf)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_cache(std::io::BufReader::new(f))
    }
}

fn require_behind(s: &Leaf, q: &Leaf) -> Result<()> {
    if crate::angle::is_behind(&q.chord, &s.chord)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{q} is not behind {s}")))
    }
}

/// Parent links of the nesting forest. Leaves of the periodic lamination
/// never have 0 in their minor arc, so nesting is interval nesting in [0, 1).
fn nesting_parents(leaves: &[Leaf]) -> Result<Vec<Option<usize>>> {
    let mut order: Vec<usize> = (0..leaves.len()).collect();
    order.sort_by(|&i, &j| leaves[i].a().cmp(leaves[j].a()));
    let mut parent = vec![None; leaves.len()];
    let mut stack: Vec<usize> = Vec::new();
    for i in order {
        let l = &leaves[i];
        if l.chord.length() != l.b().value() - l.a().value() {
            return Err(Error::Internal(format!("leaf {l} has 0 in its minor arc")));
        }
        while let Some(&top) = stack.last() {
            if leaves[top].b() < l.a() {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            if l.b() > leaves[top].b() {
                return Err(Error::Internal(format!(
                    "leaves {} and {l} cross",
                    leaves[top]
                )));
            }
            parent[i] = Some(top);
        }
        stack.push(i);
    }
    Ok(parent)
}

/// For each angle (sorted), the index of the innermost leaf whose arc
/// strictly contains it. `leaves` must be pairwise non-crossing and `angles`
/// must avoid all leaf ends.
pub(crate) fn innermost_enclosing(leaves: &[Leaf], angles: &[Angle]) -> Vec<Option<usize>> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Ev {
        // Ordering within equal positions never matters: positions are distinct.
        Open(usize),
        Close(usize),
        Point(usize),
    }
    let mut events: Vec<(&Angle, Ev)> = Vec::with_capacity(2 * leaves.len() + angles.len());
    for (i, l) in leaves.iter().enumerate() {
        events.push((l.a(), Ev::Open(i)));
        events.push((l.b(), Ev::Close(i)));
    }
    for (i, x) in angles.iter().enumerate() {
        events.push((x, Ev::Point(i)));
    }
    events.sort_by(|x, y| x.0.cmp(y.0));
    let mut out = vec![None; angles.len()];
    let mut stack = Vec::new();
    for (_, ev) in events {
        match ev {
            Ev::Open(i) => stack.push(i),
            Ev::Close(i) => {
                let top = stack.pop();
                debug_assert_eq!(top, Some(i));
            }
            Ev::Point(i) => out[i] = stack.last().copied(),
        }
    }
    out
}

/// Builds the periodic parameter lamination up to `max_period`, one period
/// at a time in the manner of Lavaurs: the leaves of lower period cut the
/// disk into regions, and inside each region the new angles are joined in
/// circular order. Every leaf is verified against the membership test and
/// the kneading of its ends.
pub fn enumerate(max_period: u32) -> Result<LaminationStore> {
    if max_period < 2 {
        return Err(Error::Precondition("max_period must be at least 2".into()));
    }
    if max_period > 40 {
        return Err(Error::LimitExceeded(format!(
            "max_period {max_period} is above 40"
        )));
    }
    let mut placed: Vec<Leaf> = Vec::new();
    for n in 2..=max_period {
        let angles = angles_of_period(n);
        let region = innermost_enclosing(&placed, &angles);
        let mut groups: BTreeMap<Option<usize>, Vec<&Angle>> = BTreeMap::new();
        for (x, r) in angles.iter().zip(&region) {
            groups.entry(*r).or_default().push(x);
        }
        let mut fresh = Vec::with_capacity(angles.len() / 2);
        for (r, xs) in groups {
            // Within a region the new leaves sit side by side, so consecutive
            // angles pair up. Every pair is verified below.
            if xs.len() % 2 != 0 {
                return Err(Error::Internal(format!(
                    "{} angles of period {n} in the region below {:?}",
                    xs.len(),
                    r.map(|i| &placed[i])
                )));
            }
            for p in xs.chunks(2) {
                fresh.push(Leaf {
                    period: n,
                    chord: Chord::new(p[0].clone(), p[1].clone())?,
                });
            }
        }
        fresh.par_iter().try_for_each(|l| -> Result<()> {
            if !in_entire_lamination(&l.chord) {
                return Err(Error::Internal(format!(
                    "paired chord {l} fails the membership test"
                )));
            }
            let (ka, kb) = (kneading_of_angle(l.a()), kneading_of_angle(l.b()));
            if ka != kb {
                return Err(Error::Internal(format!(
                    "ends of {l} have kneading {ka} and {kb}"
                )));
            }
            Ok(())
        })?;
        placed.extend(fresh);
        placed.sort_by(|x, y| x.chord.cmp(&y.chord));
    }
    LaminationStore::from_leaves(max_period, placed)
}

/// Independent construction of the period-`n` leaves: every pair of angles
/// of exact period `n` that passes the membership test, followed by a check
/// that these pairs match every angle exactly once.
pub fn brute_force_leaves(n: u32) -> Result<Vec<Leaf>> {
    let angles = angles_of_period(n);
    let pairs: Vec<Leaf> = (0..angles.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let angles = &angles;
            (i + 1..angles.len()).filter_map(move |j| {
                let c = Chord::new(angles[i].clone(), angles[j].clone()).ok()?;
                in_entire_lamination(&c).then_some(Leaf {
                    period: n,
                    chord: c,
                })
            })
        })
        .collect();
    let mut used = HashSet::new();
    for l in &pairs {
        for x in l.chord.ends() {
            if !used.insert(x.clone()) {
                return Err(Error::Internal(format!(
                    "{x} is an end of two period-{n} chords"
                )));
            }
        }
    }
    if used.len() != angles.len() {
        return Err(Error::Internal(format!(
            "period {n}: {} of {} angles matched",
            used.len(),
            angles.len()
        )));
    }
    let mut pairs = pairs;
    pairs.sort();
    Ok(pairs)
}

/// Kneading prefixes of the two ends agree except at the `*` positions.
pub fn ends_share_kneading(c: &Chord, n: usize) -> bool {
    kneading_prefix(c.a(), n)
        .into_iter()
        .zip(kneading_prefix(c.b(), n))
        .all(|(x, y)| x == y || x == crate::kneading::Sym::Star || y == crate::kneading::Sym::Star)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn leaf(s: &str) -> Leaf {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(in_entire_lamination(&ch("1/3-2/3")));
        assert!(!in_entire_lamination(&ch("1/7-4/7")));
        assert!(in_entire_lamination(&ch("13/31-18/31")));
    }

    #[test]
    fn small_stores() {
        let s = enumerate(4).unwrap();
        assert_eq!(s.leaves(2), &[leaf("1/3-2/3")]);
        assert_eq!(
            s.leaves(3),
            &[leaf("1/7-2/7"), leaf("3/7-4/7"), leaf("5/7-6/7")]
        );
        assert_eq!(s.leaves(4).len(), 6);
        assert_eq!(s.len(), 10);
    }

    #[test]
    fn partners() {
        let s = enumerate(5).unwrap();
        let a = |x: &str| x.parse::<Angle>().unwrap();
        assert_eq!(s.partner(&a("13/31")).unwrap(), a("18/31"));
        assert_eq!(s.partner(&a("5/31")).unwrap(), a("6/31"));
        assert_eq!(s.partner(&a("2/5")).unwrap(), a("3/5"));
        assert!(s.partner(&Angle::ZERO).is_err());
        assert!(matches!(
            s.partner(&a("1/63")),
            Err(Error::StoreTooShallow { .. })
        ));
    }

    #[test]
    fn counts() {
        assert_eq!(count_exact_period(2), 2);
        assert_eq!(count_exact_period(4), 12);
        assert_eq!(count_exact_period(6), 54);
        for n in 2..=8 {
            assert_eq!(angles_of_period(n).len() as u64, count_exact_period(n));
        }
    }

    #[test]
    fn visibility_examples() {
        let s = enumerate(6).unwrap();
        let main = leaf("1/3-2/3");
        assert!(s.is_visible(&main, &leaf("3/7-4/7")).unwrap());
        assert!(s
            .is_visible(&leaf("2/5-3/5"), &leaf("13/31-18/31"))
            .unwrap());
        assert!(s.is_immediately_visible(&main, &leaf("2/5-3/5")).unwrap());
        assert!(!s.is_immediately_visible(&main, &leaf("3/7-4/7")).unwrap());
        assert!(s.is_visible(&main, &leaf("1/7-2/7")).is_err());
    }

    #[test]
    fn separator_examples() {
        let s = enumerate(5).unwrap();
        let sep = s
            .lavaurs_separator(&leaf("1/7-2/7"), &leaf("3/7-4/7"))
            .unwrap();
        assert_eq!(sep, Separator::MainComponent);
        let sep = s
            .lavaurs_separator(&leaf("3/7-4/7"), &leaf("5/7-6/7"))
            .unwrap();
        assert_eq!(sep, Separator::MainComponent);
        let sep = s.lavaurs_separator(&leaf("2/5-3/5"), &leaf("3/7-4/7"));
        assert!(sep.is_err(), "different periods");
        let sep = s
            .lavaurs_separator(&leaf("2/5-3/5"), &leaf("1/5-4/15"))
            .unwrap();
        assert_eq!(sep, Separator::MainComponent);
        let sep = s
            .lavaurs_separator(&leaf("2/5-3/5"), &leaf("7/15-8/15"))
            .unwrap();
        assert_eq!(sep, Separator::Leaf(leaf("3/7-4/7")));
        assert!(s
            .lavaurs_separator(&leaf("3/7-4/7"), &leaf("3/7-4/7"))
            .is_err());
        assert!(s
            .lavaurs_separator(&leaf("2/5-3/5"), &leaf("2/31-3/31"))
            .is_err());
    }

    #[test]
    fn cache_round_trip() {
        let s = enumerate(7).unwrap();
        let mut buf = Vec::new();
        s.write_cache(&mut buf).unwrap();
        let back = LaminationStore::read_cache(&buf[..]).unwrap();
        assert_eq!(back, s);
        let mut again = Vec::new();
        back.write_cache(&mut again).unwrap();
        assert_eq!(buf, again);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("LAMINA v1 max_period=7\n2 1/3 2/3\n"));
        assert!(LaminationStore::read_cache(&b"LAMINA v1 max_period=3\n2 1/3 2/3\n"[..]).is_err());
    }
}
