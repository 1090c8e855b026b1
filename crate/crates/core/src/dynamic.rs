//! The dynamic lamination generated by a periodic leaf `S`: pullbacks `L_w`,
//! the boundary leaves of the critical value gap, dynamic pairs, their
//! visibility and semi-visibility, and the translation by `h^{lm}`.

use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::angle::{bits_to_string, ccw_offset, is_behind, separates, Angle, BitWord, Chord};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::kneading::{kneading_prefix, v_e_of, Sym};
use crate::lamination::{in_entire_lamination, Leaf};

/// Everything about a periodic leaf `S` that the pullback machinery needs.
#[derive(Clone, Debug)]
pub struct LeafContext {
    s: Leaf,
    v: BitWord,
    e: u8,
    dot: Chord,
    ddot: Chord,
    l0: Chord,
    l1: Chord,
    lo: Angle,
    hi: Angle,
}

pub fn context_of(s: &Leaf) -> Result<LeafContext> {
    let (v, e) = v_e_of(&s.chord)?;
    let (alpha, gamma) = (s.a(), s.b());
    let l0 = Chord::new(alpha.half_plus(), gamma.half())?;
    let l1 = Chord::new(alpha.half(), gamma.half_plus())?;
    let (dot, ddot) = if e == 1 {
        (l0.clone(), l1.clone())
    } else {
        (l1.clone(), l0.clone())
    };
    let orbit_preimage = s.chord.iterate(s.period - 1);
    if orbit_preimage.as_ref() != Some(&dot) || !dot.a().is_periodic() || ddot.a().is_periodic() {
        return Err(Error::Internal(format!(
            "companion leaves of {s} are inconsistent"
        )));
    }
    Ok(LeafContext {
        s: s.clone(),
        v,
        e,
        dot,
        ddot,
        l0,
        l1,
        lo: alpha.half(),
        hi: alpha.half_plus(),
    })
}

impl LeafContext {
    pub fn leaf(&self) -> &Leaf {
        &self.s
    }

    pub fn chord(&self) -> &Chord {
        &self.s.chord
    }

    pub fn period(&self) -> u32 {
        self.s.period
    }

    pub fn v(&self) -> &[u8] {
        &self.v
    }

    pub fn e(&self) -> u8 {
        self.e
    }

    /// `h^{m-1}(S)`, the preimage of `S` with periodic ends.
    pub fn dot(&self) -> &Chord {
        &self.dot
    }

    /// The preimage of `S` with preperiodic ends.
    pub fn ddot(&self) -> &Chord {
        &self.ddot
    }

    pub fn alpha(&self) -> &Angle {
        self.s.a()
    }

    /// The length `d` of `S`.
    pub fn d(&self) -> Frac {
        self.s.chord.length()
    }

    /// The word `ve`.
    pub fn ve(&self) -> BitWord {
        let mut w = self.v.clone();
        w.push(self.e);
        w
    }

    /// The periodic sequence `(ve)^inf`, symbol `i` counted from 0.
    pub fn ve_symbol(&self, i: usize) -> u8 {
        let m = self.s.period as usize;
        if i % m == m - 1 {
            self.e
        } else {
            self.v[i % m]
        }
    }

    pub fn ve_prefix(&self, n: usize) -> Vec<Sym> {
        (0..n).map(|i| Sym::bit(self.ve_symbol(i))).collect()
    }

    /// Side of the diameter `{α/2, (α+1)/2}`: 0 inside `]α/2, (α+1)/2[`, 1 in
    /// the complementary open arc, `None` at its ends.
    fn open_side(&self, z: &Angle) -> Option<u8> {
        if z == &self.lo || z == &self.hi {
            None
        } else if &self.lo < z && z < &self.hi {
            Some(0)
        } else {
            Some(1)
        }
    }

    fn closed_side(&self, z: &Angle, bit: u8) -> bool {
        self.open_side(z).map_or(true, |b| b == bit)
    }

    /// `L_bit(R)`: the preimage of `R` in the dynamic lamination with an end in
    /// the open half circle selected by `bit`.
    pub fn pullback(&self, r: &Chord, bit: u8) -> Result<Chord> {
        if r == &self.s.chord {
            return Ok(if bit == 0 {
                self.l0.clone()
            } else {
                self.l1.clone()
            });
        }
        if [&self.s.chord, &self.dot, &self.ddot]
            .iter()
            .any(|c| r.crosses(c))
        {
            return Err(Error::NotInDynamicLamination(r.to_string()));
        }
        self.lift(r, bit)
    }

    /// Pullback of a chord already known not to cross `S`, `Ṡ` or `S̈`.
    fn lift(&self, r: &Chord, bit: u8) -> Result<Chord> {
        if r == &self.s.chord {
            return Ok(if bit == 0 {
                self.l0.clone()
            } else {
                self.l1.clone()
            });
        }
        let lift = |x: &Angle| -> Vec<Angle> {
            x.preimages()
                .into_iter()
                .filter(|p| self.closed_side(p, bit))
                .collect()
        };
        let (xs, ys) = (lift(r.a()), lift(r.b()));
        let mut found: Option<Chord> = None;
        for x in &xs {
            for y in &ys {
                let Ok(c) = Chord::new(x.clone(), y.clone()) else {
                    continue;
                };
                if c.crosses(&self.dot) || c.crosses(&self.ddot) {
                    continue;
                }
                if !c.ends().iter().any(|z| self.open_side(z) == Some(bit)) {
                    continue;
                }
                if let Some(prev) = found.replace(c) {
                    return Err(Error::Internal(format!(
                        "ambiguous pullback of {r}: {prev} and {}",
                        found.expect("just set")
                    )));
                }
            }
        }
        found.ok_or_else(|| Error::NotInDynamicLamination(r.to_string()))
    }

    /// `L_w(R)`; the last symbol of `w` is applied first.
    pub fn pullback_word(&self, r: &Chord, w: &[u8]) -> Result<Chord> {
        let Some((&last, rest)) = w.split_last() else {
            return Ok(r.clone());
        };
        // Pullbacks of a lamination leaf stay in the lamination.
        let mut c = self.pullback(r, last)?;
        for &b in rest.iter().rev() {
            c = self.lift(&c, b)?;
        }
        Ok(c)
    }

    /// `L_w(S)`.
    pub fn leaf_at(&self, w: &[u8]) -> Result<Chord> {
        self.pullback_word(&self.s.chord, w)
    }

    /// The word `v s1 v s2 ... v sl v e` addressing a boundary leaf of the
    /// critical value gap.
    pub fn gap_boundary_word(&self, s: &[u8]) -> BitWord {
        let mut w = Vec::with_capacity((s.len() + 1) * self.s.period as usize);
        for &x in s {
            w.extend_from_slice(&self.v);
            w.push(x);
        }
        w.extend_from_slice(&self.v);
        w.push(self.e);
        w
    }

    /// Expected length of the boundary leaf with `l` free symbols:
    /// `(2^m - 2) / 2^{(l+1)m} * d`.
    pub fn gap_boundary_length(&self, l: u32) -> Frac {
        let m = self.s.period;
        let num = &Frac::pow2(m) - &Frac::integer(2);
        &(&num * &self.d()) / &Frac::pow2((l + 1) * m)
    }

    /// The boundary leaf `L_{v s1 ... v sl v e}(S)` of the critical value gap.
    pub fn gap_boundary_leaf(&self, s: &[u8]) -> Result<Chord> {
        let c = self.leaf_at(&self.gap_boundary_word(s))?;
        let expected = self.gap_boundary_length(s.len() as u32);
        if c.length() != expected {
            return Err(Error::Internal(format!(
                "boundary leaf {c} has length {}, expected {expected}",
                c.length()
            )));
        }
        Ok(c)
    }

    /// The free symbols `s1 ... sl` of a preperiodic boundary leaf of the
    /// critical value gap, or an error if `r` is not one.
    pub fn boundary_symbols(&self, r: &Chord) -> Result<BitWord> {
        let m = self.s.period as usize;
        let not_boundary = || {
            Error::Precondition(format!(
                "{r} is not a boundary leaf of the critical value gap"
            ))
        };
        let mut word = Vec::new();
        let mut c = r.clone();
        let limit = 64 * m + 64;
        while c != self.s.chord {
            if word.len() > limit {
                return Err(not_boundary());
            }
            let sym = self
                .open_side(c.a())
                .or_else(|| self.open_side(c.b()))
                .ok_or_else(not_boundary)?;
            word.push(sym);
            c = c.double().ok_or_else(not_boundary)?;
        }
        if word.is_empty() || word.len() % m != 0 {
            return Err(not_boundary());
        }
        let s: BitWord = (1..word.len() / m).map(|i| word[i * m - 1]).collect();
        if self.gap_boundary_word(&s) != word || &self.leaf_at(&word)? != r {
            return Err(not_boundary());
        }
        Ok(s)
    }

    fn ends_with_v(&self, w: &[u8]) -> bool {
        w.len() >= self.v.len() && w[w.len() - self.v.len()..] == self.v[..]
    }

    /// The dynamic pair `{L_{w0}(S), L_{w1}(S)}`.
    pub fn dynamic_pair(&self, w: &[u8]) -> Result<DynamicPair> {
        if self.ends_with_v(w) {
            return Err(Error::Precondition(format!(
                "word {} ends with v",
                bits_to_string(w)
            )));
        }
        let c0 = self.pullback_word(&self.l0, w)?;
        let c1 = self.pullback_word(&self.l1, w)?;
        let (l0, l1) = (c0.length(), c1.length());
        let first_is_0 = l0 > l1 || (l0 == l1 && c0.a() < c1.a());
        let (s1, s2) = if first_is_0 { (c0, c1) } else { (c1, c0) };
        Ok(DynamicPair {
            s1,
            s2,
            step: w.len() as u32 + 1,
            word: w.to_vec(),
        })
    }

    /// Number of dynamic pairs of a given step: words of length `step - 1`
    /// that do not end with `v`.
    pub fn pair_count(&self, step: u32) -> u64 {
        let n = step - 1;
        let k = self.s.period - 1;
        if n < k {
            1 << n
        } else {
            (1 << n) - (1 << (n - k))
        }
    }

    /// Words of length below `max_step` not ending with `v` whose pairs can
    /// meet the closed arc `target` (start, length). Pruning follows the
    /// itinerary of the pair's ends with respect to `{α/2, (α+1)/2}`.
    fn candidate_words(&self, max_step: u32, target: Option<(Angle, Frac)>) -> Vec<BitWord> {
        let root = Piece {
            start: self.alpha().clone(),
            img: self.alpha().clone(),
            img_len: Frac::ONE,
        };
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), vec![root])];
        while let Some((w, pieces)) = stack.pop() {
            if !self.ends_with_v(&w) {
                out.push(w.clone());
            }
            if w.len() as u32 + 1 >= max_step {
                continue;
            }
            let depth = w.len() as u32;
            for bit in [1u8, 0u8] {
                let mut next: Vec<Piece> = Vec::new();
                for p in &pieces {
                    for q in self.split(p, depth, bit) {
                        let keep = match &target {
                            Some((t, tl)) => {
                                arcs_meet(&q.start, &q.img_len.div_pow2(depth + 1), t, tl)
                            }
                            None => true,
                        };
                        if keep && !next.contains(&q) {
                            next.push(q);
                        }
                    }
                }
                if !next.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(bit);
                    stack.push((w2, next));
                }
            }
        }
        out
    }

    fn split(&self, p: &Piece, depth: u32, bit: u8) -> Vec<Piece> {
        let half_start = if bit == 0 { &self.lo } else { &self.hi };
        let o = ccw_offset(&p.img, half_start);
        let mut segs = Vec::with_capacity(2);
        if o <= p.img_len {
            let end = (&o + &Frac::HALF).min(p.img_len.clone());
            segs.push((o.clone(), &end - &o));
        }
        if let Some(wrap) = (&o + &Frac::HALF).checked_sub(&Frac::ONE) {
            segs.push((Frac::ZERO, wrap.min(p.img_len.clone())));
        }
        segs.into_iter()
            .map(|(s, l)| Piece {
                start: Angle::from_frac_mod1(&(p.start.value() + &s.div_pow2(depth))),
                img: Angle::from_frac_mod1(&(&(p.img.value() + &s) * &Frac::integer(2))),
                img_len: &l * &Frac::integer(2),
            })
            .collect()
    }

    fn pairs_from_words(&self, words: Vec<BitWord>) -> Result<Vec<DynamicPair>> {
        let mut pairs: Vec<DynamicPair> = words
            .par_iter()
            .map(|w| self.dynamic_pair(w))
            .collect::<Result<_>>()?;
        pairs.sort_by(|x, y| (x.step, &x.word).cmp(&(y.step, &y.word)));
        Ok(pairs)
    }

    /// Every dynamic pair of step at most `max_step`, ordered by step and word.
    pub fn enumerate_pairs(&self, max_step: u32) -> Result<Vec<DynamicPair>> {
        if max_step == 0 {
            return Ok(Vec::new());
        }
        self.pairs_from_words(self.candidate_words(max_step, None))
    }

    /// Dynamic pairs of step at most `max_step` lying behind `r`: `s2`
    /// strictly behind and `s1` behind or equal.
    pub fn pairs_behind(&self, r: &Chord, max_step: u32) -> Result<Vec<DynamicPair>> {
        if max_step == 0 {
            return Ok(Vec::new());
        }
        let target = (r.minor_start().clone(), r.length());
        let words = self.candidate_words(max_step, Some(target));
        let pairs = self.pairs_from_words(words)?;
        let mut out = Vec::new();
        for p in pairs {
            if p.is_behind(r)? {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Dynamic pairs of step at most `max_step` visible from the boundary
    /// leaf `r` of the critical value gap.
    pub fn visible_pairs(&self, r: &Chord, max_step: u32) -> Result<Vec<DynamicPair>> {
        self.boundary_symbols(r)?;
        let pool = self.pairs_behind(r, max_step)?;
        let flags: Vec<bool> = pool
            .par_iter()
            .map(|p| screened(&pool, r, p).map(|s| !s))
            .collect::<Result<_>>()?;
        Ok(pool
            .into_iter()
            .zip(flags)
            .filter_map(|(p, f)| f.then_some(p))
            .collect())
    }

    /// Visibility of a single pair from the boundary leaf `r`.
    pub fn pair_visible(&self, r: &Chord, p: &DynamicPair) -> Result<bool> {
        self.boundary_symbols(r)?;
        if !p.is_behind(r)? {
            return Err(Error::Precondition(format!("pair {p} is not behind {r}")));
        }
        let pool = self.pairs_behind(r, p.step.saturating_sub(1))?;
        Ok(!screened(&pool, r, p)?)
    }

    /// Semi-visibility from `R_B` where `B` has period `qm`. When the pair is
    /// semi-visible, the step bound and the shape of the kneading sequence of
    /// the shorter member are verified as well.
    pub fn semi_visible_from(&self, r_b: &Chord, qm: u32, p: &DynamicPair) -> Result<bool> {
        if !p.is_behind(r_b)? {
            return Err(Error::Precondition(format!("pair {p} is not behind {r_b}")));
        }
        let n = p.step as usize;
        let ve = self.ve_prefix(n);
        if kneading_prefix(p.s1.a(), n) != ve {
            return Ok(false);
        }
        if !in_entire_lamination(&p.s1) || !in_entire_lamination(&p.s2) {
            return Ok(false);
        }
        if p.step >= qm {
            return Err(Error::Internal(format!(
                "semi-visible pair {p} has step {} >= {qm}",
                p.step
            )));
        }
        let mut k2 = kneading_prefix(p.s2.a(), n);
        if k2[n - 1] != ve[n - 1].flipped() {
            return Err(Error::Internal(format!(
                "shorter member of {p} agrees with (ve)^inf at {n}"
            )));
        }
        k2[n - 1] = ve[n - 1];
        if k2 != ve {
            return Err(Error::Internal(format!(
                "shorter member of {p} leaves (ve)^inf before {n}"
            )));
        }
        Ok(true)
    }

    /// Semi-visibility from the gateway of an immediately visible `B`.
    pub fn pair_semi_visible(&self, b: &Leaf, p: &DynamicPair) -> Result<bool> {
        let r_b = crate::tuning::gateway(self, b)?;
        self.semi_visible_from(&r_b, b.period, p)
    }

    /// Image of a pair behind `L_{v s1 v s2 ... v sl v e}(S)` under `h^{lm}`.
    pub fn translate_pair(&self, l: u32, p: &DynamicPair) -> Result<DynamicPair> {
        if l == 0 {
            return Ok(p.clone());
        }
        let m = self.s.period as usize;
        let shift = l as usize * m;
        if p.word.len() < shift {
            return Err(Error::Precondition(format!(
                "pair {p} has step below {}",
                shift + 1
            )));
        }
        let s: BitWord = (1..=l as usize).map(|i| p.word[i * m - 1]).collect();
        let boundary = self.gap_boundary_leaf(&s)?;
        if !p.is_behind(&boundary)? {
            return Err(Error::Precondition(format!(
                "pair {p} is not behind {boundary}"
            )));
        }
        let image = self.dynamic_pair(&p.word[shift..])?;
        let (i1, i2) = (p.s1.iterate(shift as u32), p.s2.iterate(shift as u32));
        let same = |x: &Option<Chord>, c: &Chord| x.as_ref() == Some(c);
        let matches = (same(&i1, &image.s1) && same(&i2, &image.s2))
            || (same(&i1, &image.s2) && same(&i2, &image.s1));
        if !matches {
            return Err(Error::Internal(format!(
                "h^{shift} does not carry {p} onto {image}"
            )));
        }
        Ok(image)
    }
}

/// Some pair of smaller step has its longer member equal to `r` or
/// separating `r` from the longer member of `p`.
fn screened(pool: &[DynamicPair], r: &Chord, p: &DynamicPair) -> Result<bool> {
    for q in pool.iter().take_while(|q| q.step < p.step) {
        if &q.s1 == r || separates(&q.s1, r, &p.s1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Part of an itinerary cylinder: the arc of angles starting at `start` whose
/// image under `h^depth` is the arc `[img, img + img_len]`.
#[derive(Clone, Debug, PartialEq)]
struct Piece {
    start: Angle,
    img: Angle,
    img_len: Frac,
}

fn arcs_meet(x: &Angle, xl: &Frac, y: &Angle, yl: &Frac) -> bool {
    &ccw_offset(x, y) <= xl || &ccw_offset(y, x) <= yl
}

/// `c` equals `r` or lies behind it.
pub fn behind_or_equal(c: &Chord, r: &Chord) -> Result<bool> {
    Ok(c == r || is_behind(c, r)?)
}

/// The two leaves bounding an infinite gap of the dynamic lamination, with
/// `s1` not shorter than `s2`. Ties in length are broken by the smaller end.
#[derive(Clone, Debug)]
pub struct DynamicPair {
    pub s1: Chord,
    pub s2: Chord,
    pub step: u32,
    pub word: BitWord,
}

impl DynamicPair {
    /// The shorter member lies strictly behind `r` and the longer one behind
    /// or on it.
    pub fn is_behind(&self, r: &Chord) -> Result<bool> {
        Ok(is_behind(&self.s2, r)? && behind_or_equal(&self.s1, r)?)
    }

    pub fn is_tie(&self) -> bool {
        self.s1.length() == self.s2.length()
    }
}

impl PartialEq for DynamicPair {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for DynamicPair {}

impl fmt::Display for DynamicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; step {}, w={})",
            self.s1,
            self.s2,
            self.step,
            bits_to_string(&self.word)
        )
    }
}

impl Serialize for DynamicPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DynamicPair", 4)?;
        st.serialize_field("s1", &self.s1)?;
        st.serialize_field("s2", &self.s2)?;
        st.serialize_field("step", &self.step)?;
        st.serialize_field("word", &bits_to_string(&self.word))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::parse_bits;

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn ctx(s: &str) -> LeafContext {
        context_of(&Leaf::checked(ch(s)).unwrap()).unwrap()
    }

    fn bits(s: &str) -> BitWord {
        parse_bits(s).unwrap()
    }

    #[test]
    fn companions() {
        let c = ctx("5/31-6/31");
        assert_eq!(c.dot(), &ch("3/31-18/31"));
        assert_eq!(c.ddot(), &ch("5/62-37/62"));
        assert_eq!(c.v(), &bits("0010")[..]);
        assert_eq!(c.e(), 1);
        let c = ctx("1/3-2/3");
        assert_eq!(c.dot(), &ch("1/3-2/3"));
        assert_eq!(c.ddot(), &ch("1/6-5/6"));
        assert_eq!((c.v(), c.e()), (&[0u8][..], 1));
    }

    #[test]
    fn pullback_identities() {
        for s in ["1/3-2/3", "5/31-6/31", "13/31-18/31", "1/7-2/7", "2/5-3/5"] {
            let c = ctx(s);
            let e = c.e();
            assert_eq!(&c.pullback(c.chord(), 1 - e).unwrap(), c.dot(), "{s}");
            assert_eq!(&c.pullback(c.chord(), e).unwrap(), c.ddot(), "{s}");
            let mut w = c.v().to_vec();
            w.push(1 - e);
            assert_eq!(&c.leaf_at(&w).unwrap(), c.chord(), "{s}");
            assert_eq!(&c.pullback_word(c.dot(), c.v()).unwrap(), c.chord(), "{s}");
        }
        let c = ctx("1/3-2/3");
        assert_eq!(c.leaf_at(&bits("01")).unwrap(), ch("5/12-7/12"));
    }

    #[test]
    fn pullback_maps_back() {
        let c = ctx("5/31-6/31");
        let mut r = c.chord().clone();
        for b in [1, 0, 1, 1, 0, 0, 1, 0] {
            let p = c.pullback(&r, b).unwrap();
            assert_eq!(p.double().unwrap(), r);
            r = p;
        }
    }

    #[test]
    fn boundary_leaves() {
        let c = ctx("1/3-2/3");
        assert_eq!(c.gap_boundary_leaf(&[]).unwrap(), ch("5/12-7/12"));
        let c = ctx("5/31-6/31");
        let r = c.gap_boundary_leaf(&[]).unwrap();
        assert_eq!(r, c.leaf_at(&bits("00101")).unwrap());
        assert!(c.boundary_symbols(&r).unwrap().is_empty());
        for s in ["0", "1", "01", "110"] {
            let r = c.gap_boundary_leaf(&bits(s)).unwrap();
            assert_eq!(c.boundary_symbols(&r).unwrap(), bits(s));
            let k = (s.len() as u32 + 1) * 5;
            assert_eq!(r.iterate(k).as_ref(), Some(c.chord()));
            assert!((1..k).all(|i| r.iterate(i).as_ref() != Some(c.chord())));
        }
        assert!(c.boundary_symbols(c.dot()).is_err());
    }

    #[test]
    fn figure_pair() {
        let c = ctx("5/31-6/31");
        let p = c.dynamic_pair(&bits("00101")).unwrap();
        assert_eq!(p.step, 6);
        assert_eq!(p.s1, c.leaf_at(&bits("001010")).unwrap());
        assert_eq!(p.s2, c.leaf_at(&bits("001011")).unwrap());
        assert!(p.s1.length() > p.s2.length());
        assert_eq!(c.dynamic_pair(&[]).unwrap().step, 1);
        assert!(c.dynamic_pair(&bits("10010")).is_err());
        let r = c.gap_boundary_leaf(&[]).unwrap();
        assert!(c.pair_visible(&r, &p).unwrap());
    }

    #[test]
    fn pair_counts() {
        for s in ["1/3-2/3", "1/7-2/7", "5/31-6/31", "13/31-18/31"] {
            let c = ctx(s);
            let pairs = c.enumerate_pairs(9).unwrap();
            for n in 1..=9 {
                let k = pairs.iter().filter(|p| p.step == n).count() as u64;
                assert_eq!(k, c.pair_count(n), "{s} step {n}");
            }
        }
    }

    #[test]
    fn pruned_search_matches_full_enumeration() {
        let c = ctx("5/31-6/31");
        let all = c.enumerate_pairs(12).unwrap();
        for s in ["", "0", "1"] {
            let r = c.gap_boundary_leaf(&bits(s)).unwrap();
            let want: Vec<&DynamicPair> = all.iter().filter(|p| p.is_behind(&r).unwrap()).collect();
            let got = c.pairs_behind(&r, 12).unwrap();
            assert_eq!(got.iter().collect::<Vec<_>>(), want, "behind {r}");
        }
    }
}
