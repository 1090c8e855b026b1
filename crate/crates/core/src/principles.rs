//! Checkers relating dynamic pairs behind `R_B` to visible parameter leaves
//! behind `B`, and the (partial) translation statements built on them.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{angles_of_period_between, is_behind, separates, Angle, BitWord, Chord};
use crate::dynamic::{behind_or_equal, context_of, DynamicPair, LeafContext};
use crate::error::{Error, Result};
use crate::kneading::{
    bits_to_syms, kneading_of_angle, kneading_prefix, leaf_kneading, KneadingSequence, Sym,
};
use crate::lamination::{LaminationStore, Leaf};
use crate::tuning::SublimbDesc;
use crate::vistree::{build_tree, visibility_tree_of, visible_leaves_behind, VisTree};

/// The two open arcs between the members of a pair, each running from an end
/// of one member to an end of the other.
fn arcs_between(c1: &Chord, c2: &Chord) -> Vec<(Angle, Angle)> {
    let mut ends: Vec<(Angle, u8)> = c1.ends().into_iter().map(|x| (x.clone(), 1)).collect();
    ends.extend(c2.ends().into_iter().map(|x| (x.clone(), 2)));
    ends.sort();
    (0..4)
        .filter(|&i| ends[i].1 != ends[(i + 1) % 4].1)
        .map(|i| (ends[i].0.clone(), ends[(i + 1) % 4].0.clone()))
        .collect()
}

/// The leaf `Q(S_1, S_2)` of a pair semi-visible from `R_B`: the unique
/// leaf of period `STEP` joining the periodic points of that period in the
/// two arcs between the members. Its kneading sequence, its visibility and
/// the absence of any other visible separator below period `qm` are checked.
pub fn q_map(desc: &SublimbDesc, p: &DynamicPair) -> Result<Leaf> {
    let ctx = &desc.ctx;
    if !ctx.semi_visible_from(&desc.r_b, desc.qm(), p)? {
        return Err(Error::Precondition(format!(
            "pair {p} is not semi-visible from {}",
            desc.r_b
        )));
    }
    let n = p.step;
    let arcs = arcs_between(&p.s1, &p.s2);
    if arcs.len() != 2 {
        return Err(Error::Internal(format!(
            "members of {p} do not bound two arcs"
        )));
    }
    let mut ends = Vec::new();
    for (lo, hi) in &arcs {
        for l in 2..n {
            if !angles_of_period_between(lo, hi, l).is_empty() {
                return Err(Error::Internal(format!(
                    "period {l} point between the members of {p}"
                )));
            }
        }
        match angles_of_period_between(lo, hi, n).as_slice() {
            [x] => ends.push(x.clone()),
            xs => {
                return Err(Error::Internal(format!(
                    "{} period {n} points in one arc of {p}",
                    xs.len()
                )))
            }
        }
    }
    let q = Leaf::checked(Chord::new(ends[0].clone(), ends[1].clone())?)?;
    if !separates(&q.chord, &p.s1, &p.s2)? {
        return Err(Error::Internal(format!(
            "{q} does not separate the members of {p}"
        )));
    }
    let mut block = ctx.ve_prefix(n as usize - 1);
    block.push(Sym::Star);
    if leaf_kneading(&q.chord)? != KneadingSequence::periodic(block)? {
        return Err(Error::Internal(format!(
            "{q} has the wrong kneading sequence"
        )));
    }
    if !LaminationStore::is_visible_symbolic(ctx.leaf(), &q)? {
        return Err(Error::Internal(format!(
            "{q} is not visible from {}",
            ctx.leaf()
        )));
    }
    for k in (n + 1)..desc.qm() {
        let target = ctx.ve_prefix(k as usize - 1);
        let visible_ends = |(lo, hi): &(Angle, Angle)| -> Vec<Angle> {
            angles_of_period_between(lo, hi, k)
                .into_iter()
                .filter(|x| kneading_prefix(x, k as usize - 1) == target)
                .collect()
        };
        let (xs, ys) = (visible_ends(&arcs[0]), visible_ends(&arcs[1]));
        for x in &xs {
            for y in &ys {
                if let Ok(other) = Leaf::checked(Chord::new(x.clone(), y.clone())?) {
                    return Err(Error::Internal(format!(
                        "{other} is a second visible separator of {p}"
                    )));
                }
            }
        }
    }
    Ok(q)
}

/// Dynamic pairs behind `R_B` semi-visible from it. A semi-visible pair of
/// step `qm` or more is reported as an error.
pub fn enumerate_semi_visible(desc: &SublimbDesc) -> Result<Vec<DynamicPair>> {
    let pool = desc.ctx.pairs_behind(&desc.r_b, desc.qm())?;
    let flags: Vec<bool> = pool
        .par_iter()
        .map(|p| desc.ctx.semi_visible_from(&desc.r_b, desc.qm(), p))
        .collect::<Result<_>>()?;
    Ok(pool
        .into_iter()
        .zip(flags)
        .filter_map(|(p, f)| f.then_some(p))
        .collect())
}

fn pair_behind_or_on(s1: &Chord, s2: &Chord, r: &Chord) -> Result<bool> {
    Ok(behind_or_equal(s1, r)? && behind_or_equal(s2, r)?)
}

/// The gateways `R_{1/2}`, `R_{1/3}` and `R_{2/3}` of a leaf.
#[derive(Clone, Debug)]
pub struct Gateways {
    pub half: Chord,
    pub third: Chord,
    pub two_thirds: Chord,
}

impl Gateways {
    pub fn of(ctx: &LeafContext) -> Result<Self> {
        Ok(Gateways {
            half: SublimbDesc::new(ctx, 1, 2)?.r_b,
            third: SublimbDesc::new(ctx, 1, 3)?.r_b,
            two_thirds: SublimbDesc::new(ctx, 2, 3)?.r_b,
        })
    }
}

/// For `q >= 3`: the `(q-3)m`-th iterate of the pair lies behind `R_{1/3}` or
/// `R_{2/3}`, and every later iterate before the return to `S` that lies
/// behind `S` lies behind `R_{1/2}`.
pub fn iterate_condition(desc: &SublimbDesc, gw: &Gateways, p: &DynamicPair) -> Result<bool> {
    if desc.q < 3 {
        return Err(Error::Precondition("iterate condition needs q >= 3".into()));
    }
    let k0 = (desc.q - 3) * desc.m();
    let image = |i: u32| -> Result<(Chord, Chord)> {
        match (p.s1.iterate(i), p.s2.iterate(i)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Internal(format!("iterate {i} of {p} degenerates"))),
        }
    };
    let (a, b) = image(k0)?;
    if !pair_behind_or_on(&a, &b, &gw.third)? && !pair_behind_or_on(&a, &b, &gw.two_thirds)? {
        return Ok(false);
    }
    let s = desc.ctx.chord();
    for i in k0 + 1..p.step {
        let (a, b) = image(i)?;
        if pair_behind_or_on(&a, &b, s)? && !pair_behind_or_on(&a, &b, &gw.half)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Planar tree of visible pairs behind `R_B`: a pair hangs below the pair
/// of shortest longer member that its own longer member lies behind.
fn pair_tree_canonical(desc: &SublimbDesc, pairs: &[DynamicPair]) -> Result<String> {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&i, &j| pairs[j].s1.length().cmp(&pairs[i].s1.length()));
    let mut parent = vec![None::<usize>; pairs.len()];
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[..k] {
            if is_behind(&pairs[i].s1, &pairs[j].s1)? {
                parent[i] = match parent[i] {
                    Some(b) if pairs[b].s1.length() <= pairs[j].s1.length() => Some(b),
                    _ => Some(j),
                };
            }
        }
    }
    fn write(
        me: Option<usize>,
        label: u32,
        pairs: &[DynamicPair],
        parent: &[Option<usize>],
        out: &mut String,
    ) {
        out.push_str(&label.to_string());
        let mut kids: Vec<usize> = (0..pairs.len()).filter(|&i| parent[i] == me).collect();
        kids.sort_by(|&i, &j| pairs[i].s1.a().cmp(pairs[j].s1.a()));
        if !kids.is_empty() {
            out.push('(');
            for (n, &k) in kids.iter().enumerate() {
                if n > 0 {
                    out.push(',');
                }
                write(Some(k), pairs[k].step, pairs, parent, out);
            }
            out.push(')');
        }
    }
    let mut s = String::new();
    write(None, desc.qm(), pairs, &parent, &mut s);
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct MappedPair {
    pub pair: DynamicPair,
    pub leaf: Leaf,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiVisibleReport {
    pub pairs: Vec<MappedPair>,
    pub bijective: bool,
    pub step_is_period: bool,
    pub iterate_condition: bool,
    pub missed: Vec<Leaf>,
}

impl SemiVisibleReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.step_is_period && self.iterate_condition
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub leaf: Leaf,
    pub p: u32,
    pub q: u32,
    pub b: Leaf,
    pub r_b: Chord,
    pub tree: VisTree,
    pub visible: Vec<MappedPair>,
    pub injective: bool,
    pub step_is_period: bool,
    pub embedding_preserved: bool,
    pub visible_are_semi_visible: bool,
    /// Visible leaves behind `B` that no visible pair reaches.
    pub uncovered: Vec<Leaf>,
    pub semi_visible: Option<SemiVisibleReport>,
}

impl CorrespondenceReport {
    /// The partial correspondence: injective, embedding preserving and step
    /// to period on visible pairs.
    pub fn partial_holds(&self) -> bool {
        self.injective
            && self.step_is_period
            && self.embedding_preserved
            && self.visible_are_semi_visible
    }

    /// The original claim that visible pairs reach every visible leaf.
    pub fn surjective(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn semi_visible_holds(&self) -> bool {
        self.semi_visible
            .as_ref()
            .map_or(true, SemiVisibleReport::holds)
    }
}

fn map_pairs(desc: &SublimbDesc, pairs: Vec<DynamicPair>) -> Result<Vec<MappedPair>> {
    pairs
        .into_par_iter()
        .map(|pair| q_map(desc, &pair).map(|leaf| MappedPair { pair, leaf }))
        .collect()
}

fn is_injective(mapped: &[MappedPair]) -> bool {
    let mut leaves: Vec<&Leaf> = mapped.iter().map(|m| &m.leaf).collect();
    leaves.sort();
    leaves.windows(2).all(|w| w[0] != w[1])
}

fn missed_leaves(mapped: &[MappedPair], targets: &[Leaf]) -> Vec<Leaf> {
    targets
        .iter()
        .filter(|l| !mapped.iter().any(|m| &m.leaf == *l))
        .cloned()
        .collect()
}

pub fn check_correspondence(desc: &SublimbDesc) -> Result<CorrespondenceReport> {
    let ctx = &desc.ctx;
    let targets = visible_leaves_behind(desc)?;
    let tree = build_tree(&desc.b, &targets)?;
    let visible_pairs = ctx.visible_pairs(&desc.r_b, desc.qm() - 1)?;
    let mut visible_are_semi_visible = true;
    for p in &visible_pairs {
        visible_are_semi_visible &= ctx.semi_visible_from(&desc.r_b, desc.qm(), p)?;
    }
    let visible = if visible_are_semi_visible {
        map_pairs(desc, visible_pairs.clone())?
    } else {
        Vec::new()
    };
    let step_is_period = visible.iter().all(|m| m.pair.step == m.leaf.period);
    let injective = is_injective(&visible);
    let in_tree = visible.iter().all(|m| targets.contains(&m.leaf));
    let images: Vec<Leaf> = visible.iter().map(|m| m.leaf.clone()).collect();
    let embedding_preserved = in_tree
        && build_tree(&desc.b, &images)?.canonical() == pair_tree_canonical(desc, &visible_pairs)?;
    let uncovered = missed_leaves(&visible, &targets);
    let semi_visible = if desc.q >= 3 {
        let gw = Gateways::of(ctx)?;
        let semi = map_pairs(desc, enumerate_semi_visible(desc)?)?;
        let mut iterate_ok = true;
        for m in &semi {
            iterate_ok &= iterate_condition(desc, &gw, &m.pair)?;
        }
        let missed = missed_leaves(&semi, &targets);
        Some(SemiVisibleReport {
            bijective: is_injective(&semi)
                && missed.is_empty()
                && semi.iter().all(|m| targets.contains(&m.leaf)),
            step_is_period: semi.iter().all(|m| m.pair.step == m.leaf.period),
            iterate_condition: iterate_ok,
            missed,
            pairs: semi,
        })
    } else {
        None
    };
    Ok(CorrespondenceReport {
        leaf: ctx.leaf().clone(),
        p: desc.p,
        q: desc.q,
        b: desc.b.clone(),
        r_b: desc.r_b.clone(),
        tree,
        visible,
        injective,
        step_is_period,
        embedding_preserved,
        visible_are_semi_visible,
        uncovered,
        semi_visible,
    })
}

pub fn coprime_numerators(q: u32) -> Vec<u32> {
    (1..q).filter(|p| p.gcd(&q) == 1).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeMatch {
    pub p: u32,
    pub q: u32,
    pub tree: String,
    /// Which of `1/3`, `2/3` the shifted tree coincides with.
    pub matches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremIReport {
    pub leaf: Leaf,
    pub half: String,
    pub third: String,
    pub two_thirds: String,
    /// Whether `Vis_{1/2}` shifted by `m` equals `Vis_{1/3}`.
    pub half_translates: bool,
    pub trees: Vec<TreeMatch>,
}

impl TheoremIReport {
    pub fn holds(&self) -> bool {
        self.trees.iter().all(|t| !t.matches.is_empty())
    }
}

pub fn check_theorem_i(ctx: &LeafContext, q_max: u32) -> Result<TheoremIReport> {
    let m = ctx.period() as i64;
    let tree = |p, q| visibility_tree_of(&SublimbDesc::new(ctx, p, q)?);
    let (half, third, two_thirds) = (tree(1, 2)?, tree(1, 3)?, tree(2, 3)?);
    let sublimbs: Vec<(u32, u32)> = (3..=q_max)
        .flat_map(|q| coprime_numerators(q).into_iter().map(move |p| (p, q)))
        .collect();
    let trees: Vec<TreeMatch> = sublimbs
        .into_par_iter()
        .map(|(p, q)| {
            let t = tree(p, q)?;
            let shift = -(q as i64 - 3) * m;
            let shifted = t.canonical_shifted(shift);
            let mut matches = Vec::new();
            if shifted == third.canonical() {
                matches.push("1/3".to_string());
            }
            if shifted == two_thirds.canonical() {
                matches.push("2/3".to_string());
            }
            Ok(TreeMatch {
                p,
                q,
                tree: t.canonical(),
                matches,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TheoremIReport {
        leaf: ctx.leaf().clone(),
        half_translates: half.canonical_shifted(m) == third.canonical(),
        half: half.canonical(),
        third: third.canonical(),
        two_thirds: two_thirds.canonical(),
        trees,
    })
}

/// `h^{(q-3)m}(R_{p/q})`, the chord compared in the hypothesis of the
/// translation theorem for `q >= 3`.
pub fn reduced_gateway(desc: &SublimbDesc) -> Result<Chord> {
    if desc.q < 3 {
        return Err(Error::Precondition("q >= 3 required".into()));
    }
    desc.r_b
        .iterate((desc.q - 3) * desc.m())
        .ok_or_else(|| Error::Internal(format!("iterate of {} degenerates", desc.r_b)))
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaIIIPairing {
    pub matched: usize,
    pub step_relation: bool,
    pub semi_visibility_transfers: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremIIEntry {
    pub first: (u32, u32),
    pub second: (u32, u32),
    pub equivalent: bool,
    pub lemma_iii: LemmaIIIPairing,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremIIReport {
    pub leaf: Leaf,
    pub entries: Vec<TheoremIIEntry>,
}

impl TheoremIIReport {
    pub fn theorem_holds(&self) -> bool {
        self.entries.iter().all(|e| e.equivalent)
    }

    pub fn lemma_holds(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.lemma_iii.step_relation && e.lemma_iii.semi_visibility_transfers)
    }
}

type ChordKey = (Chord, Chord);

fn iterated_pairs(desc: &SublimbDesc) -> Result<HashMap<ChordKey, (DynamicPair, bool)>> {
    let k = (desc.q - 3) * desc.m();
    let mut out = HashMap::new();
    for p in desc.ctx.pairs_behind(&desc.r_b, desc.qm() - 1)? {
        let semi = desc.ctx.semi_visible_from(&desc.r_b, desc.qm(), &p)?;
        if let (Some(a), Some(b)) = (p.s1.iterate(k), p.s2.iterate(k)) {
            out.insert((a, b), (p, semi));
        }
    }
    Ok(out)
}

/// For every two sublimbs with `3 <= q <= q_max` whose reduced gateways
/// coincide: the visibility trees are equivalent, and pairs with equal
/// reduced iterates differ in step by `(q_2 - q_1)m` and share
/// semi-visibility.
pub fn check_theorem_ii(ctx: &LeafContext, q_max: u32) -> Result<TheoremIIReport> {
    let m = ctx.period();
    let descs: Vec<SublimbDesc> = (3..=q_max)
        .flat_map(|q| coprime_numerators(q).into_iter().map(move |p| (p, q)))
        .map(|(p, q)| SublimbDesc::new(ctx, p, q))
        .collect::<Result<_>>()?;
    let reduced: Vec<Chord> = descs.iter().map(reduced_gateway).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for i in 0..descs.len() {
        for j in i + 1..descs.len() {
            if reduced[i] == reduced[j] {
                jobs.push((i, j));
            }
        }
    }
    let entries = jobs
        .into_par_iter()
        .map(|(i, j)| {
            let (d1, d2) = (&descs[i], &descs[j]);
            let shift = (d2.q as i64 - d1.q as i64) * m as i64;
            let equivalent = visibility_tree_of(d1)?.canonical_shifted(shift)
                == visibility_tree_of(d2)?.canonical();
            let (x, y) = (iterated_pairs(d1)?, iterated_pairs(d2)?);
            let mut lemma = LemmaIIIPairing {
                matched: 0,
                step_relation: true,
                semi_visibility_transfers: true,
            };
            for (key, (p1, semi1)) in &x {
                if let Some((p2, semi2)) = y.get(key) {
                    lemma.matched += 1;
                    lemma.step_relation &= p2.step as i64 - p1.step as i64 == shift;
                    lemma.semi_visibility_transfers &= semi1 == semi2;
                }
            }
            Ok(TheoremIIEntry {
                first: (d1.p, d1.q),
                second: (d2.p, d2.q),
                equivalent,
                lemma_iii: lemma,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TheoremIIReport {
        leaf: ctx.leaf().clone(),
        entries,
    })
}

fn repeat_word(w: &[u8], k: u32) -> BitWord {
    (0..k).flat_map(|_| w.iter().copied()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaIReport {
    pub p: u32,
    pub q: u32,
    pub gateway_kneading: bool,
    pub behind_prefix: bool,
    pub checked_angles: usize,
    /// `None` when `q < 3`.
    pub iterate_lands: Option<bool>,
}

impl LemmaIReport {
    pub fn holds(&self) -> bool {
        self.gateway_kneading && self.behind_prefix && self.iterate_lands.unwrap_or(true)
    }
}

/// The kneading sequence of `R_{p/q}` is `(ve)^{q-1}(v(1-e))^inf`; angles
/// behind it start with `(ve)^{q-2}`; for `q >= 3` its `((q-2)m-1)`-th
/// iterate is `L_{eve}(S)` or `L_{(1-e)ve}(S)`. Angles of period at most
/// `max_period` behind `R_{p/q}` are tested.
pub fn check_lemma_i(desc: &SublimbDesc, max_period: u32) -> Result<LemmaIReport> {
    let ctx = &desc.ctx;
    let (m, q) = (desc.m(), desc.q);
    let ve = ctx.ve();
    let mut tail = ctx.v().to_vec();
    tail.push(1 - ctx.e());
    let want = KneadingSequence::new(bits_to_syms(&repeat_word(&ve, q - 1)), bits_to_syms(&tail))?;
    let gateway_kneading = desc.r_b.ends().iter().all(|x| kneading_of_angle(x) == want);
    let prefix = ctx.ve_prefix(((q - 2) * m) as usize);
    let r = &desc.r_b;
    let angles: Vec<Angle> = (2..=max_period)
        .flat_map(|n| angles_of_period_between(r.minor_start(), r.minor_end(), n))
        .collect();
    let behind_prefix = angles
        .par_iter()
        .all(|x| kneading_prefix(x, prefix.len()) == prefix);
    let iterate_lands = if q >= 3 {
        let image = r.iterate((q - 2) * m - 1);
        let e = ctx.e();
        let options = [1 - e, e].map(|first| {
            let mut w = vec![first];
            w.extend_from_slice(&ve);
            ctx.leaf_at(&w)
        });
        let mut lands = false;
        for o in options {
            lands |= image.as_ref() == Some(&o?);
        }
        Some(lands)
    } else {
        None
    };
    Ok(LemmaIReport {
        p: desc.p,
        q,
        gateway_kneading,
        behind_prefix,
        checked_angles: angles.len(),
        iterate_lands,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationFailure {
    pub leaf: Leaf,
    pub narrow: bool,
    /// Trees keyed by sublimb, shifted back to denominator 2.
    pub trees: BTreeMap<String, String>,
}

/// Leaves of period up to `max_period` for which the visibility trees of the
/// sublimbs with denominators up to `q_max` are not all translates of one
/// another.
pub fn scan_translation(
    store: &LaminationStore,
    max_period: u32,
    q_max: u32,
) -> Result<Vec<TranslationFailure>> {
    if max_period > store.max_period() {
        return Err(Error::StoreTooShallow {
            have: store.max_period(),
            need: max_period,
        });
    }
    let leaves: Vec<&Leaf> = (2..=max_period).flat_map(|n| store.leaves(n)).collect();
    let results: Vec<Option<TranslationFailure>> = leaves
        .into_par_iter()
        .map(|s| {
            let ctx = context_of(s)?;
            let m = s.period as i64;
            let mut trees = BTreeMap::new();
            for q in 2..=q_max {
                for p in coprime_numerators(q) {
                    let t = visibility_tree_of(&SublimbDesc::new(&ctx, p, q)?)?;
                    trees.insert(format!("{p}/{q}"), t.canonical_shifted(-(q as i64 - 2) * m));
                }
            }
            let first = trees.values().next().cloned();
            let uniform = trees.values().all(|t| Some(t) == first.as_ref());
            Ok((!uniform).then(|| TranslationFailure {
                leaf: s.clone(),
                narrow: is_narrow_length(s),
                trees,
            }))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<TranslationFailure> = results.into_iter().flatten().collect();
    out.sort_by(|x, y| x.leaf.cmp(&y.leaf));
    Ok(out)
}

fn is_narrow_length(s: &Leaf) -> bool {
    s.chord.length() == crate::frac::Frac::mersenne(s.period).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::angles_of_period;
    use crate::kneading::address_from_kneading;
    use crate::lamination::enumerate;

    fn ctx(s: &str) -> LeafContext {
        context_of(&Leaf::checked(s.parse().unwrap()).unwrap()).unwrap()
    }

    // Period-n leaves separating the members, found by trying every pair of
    // period-n angles.
    fn brute_separators(p: &DynamicPair) -> Vec<Leaf> {
        let xs = angles_of_period(p.step);
        let mut out = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                let c = Chord::new(x.clone(), y.clone()).unwrap();
                if c.crosses(&p.s1) || c.crosses(&p.s2) {
                    continue;
                }
                if let Ok(l) = Leaf::checked(c) {
                    if separates(&l.chord, &p.s1, &p.s2).unwrap() {
                        out.push(l);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn q_map_of_the_basilica_third() {
        let c = ctx("1/3-2/3");
        let d = SublimbDesc::new(&c, 1, 3).unwrap();
        assert_eq!(d.r_b, "17/48-19/48".parse().unwrap());
        let semi = enumerate_semi_visible(&d).unwrap();
        let p5: Vec<&DynamicPair> = semi.iter().filter(|p| p.step == 5).collect();
        assert_eq!(p5.len(), 1);
        let q = q_map(&d, p5[0]).unwrap();
        assert_eq!(q.chord, "11/31-12/31".parse().unwrap());
        assert_eq!(brute_separators(p5[0]), vec![q.clone()]);
        let k = crate::kneading::leaf_kneading(&q.chord).unwrap();
        assert_eq!(address_from_kneading(&k).unwrap().to_string(), "1-2-5");
    }

    #[test]
    fn q_map_of_the_step_six_pair() {
        let c = ctx("5/31-6/31");
        let d = SublimbDesc::new(&c, 1, 2).unwrap();
        let p = c
            .dynamic_pair(&crate::angle::parse_bits("00101").unwrap())
            .unwrap();
        let q = q_map(&d, &p).unwrap();
        assert_eq!(q.period, 6);
        assert_eq!(brute_separators(&p), vec![q]);
    }

    #[test]
    fn counterexample_correspondence() {
        let c = ctx("13/31-18/31");
        let r = check_correspondence(&SublimbDesc::new(&c, 1, 3).unwrap()).unwrap();
        assert!(r.partial_holds());
        assert_eq!(r.uncovered.len(), 1);
        assert_eq!(r.uncovered[0].period, 11);
        assert!(r.semi_visible_holds());
        let semi = r.semi_visible.unwrap();
        assert!(semi.pairs.iter().any(|m| m.leaf == r.uncovered[0]));
        let r = check_correspondence(&SublimbDesc::new(&c, 1, 2).unwrap()).unwrap();
        assert!(r.partial_holds() && r.surjective());
    }

    #[test]
    fn narrow_correspondence_is_complete() {
        let c = ctx("5/31-6/31");
        for (p, q) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
            let r = check_correspondence(&SublimbDesc::new(&c, p, q).unwrap()).unwrap();
            assert!(
                r.partial_holds() && r.surjective() && r.semi_visible_holds(),
                "{p}/{q}"
            );
        }
    }

    #[test]
    fn theorem_i_records_alternatives() {
        let r = check_theorem_i(&ctx("13/31-18/31"), 5).unwrap();
        assert!(r.holds());
        assert!(!r.half_translates);
        for t in &r.trees {
            assert_eq!(t.matches.len(), 1, "{}/{}", t.p, t.q);
        }
        let r = check_theorem_i(&ctx("5/31-6/31"), 5).unwrap();
        assert!(r.holds() && r.half_translates);
    }

    #[test]
    fn theorem_ii_and_lemmas() {
        for s in ["1/3-2/3", "3/7-4/7", "13/31-18/31"] {
            let c = ctx(s);
            let r = check_theorem_ii(&c, 5).unwrap();
            assert!(!r.entries.is_empty());
            assert!(r.theorem_holds() && r.lemma_holds(), "{s}");
            for q in 2..=4 {
                for p in coprime_numerators(q) {
                    let l = check_lemma_i(&SublimbDesc::new(&c, p, q).unwrap(), 12).unwrap();
                    assert!(l.holds(), "{s} {p}/{q}: {l:?}");
                }
            }
        }
    }

    #[test]
    fn translation_scan() {
        let store = enumerate(5).unwrap();
        let f = scan_translation(&store, 5, 3).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].leaf.chord, "13/31-18/31".parse().unwrap());
        assert!(!f[0].narrow);
        assert!(scan_translation(&store, 4, 5).unwrap().is_empty());
    }
}
