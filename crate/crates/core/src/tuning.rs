//! The tuning map of a periodic leaf, internal angles, bifurcation leaves and
//! the gateway leaf `R_B` of a sublimb.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::angle::{angles_of_period_between, Angle, BinaryExpansion, BitWord, Chord};
use crate::dynamic::LeafContext;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::kneading::kneading_prefix;
use crate::lamination::Leaf;

fn word_in_base(digits: &[u8], m: u32) -> BigUint {
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &b| (acc << m) + BigUint::from(b))
}

/// `f(β) = α + (2^m - 1) d Σ b_i 2^{-im}` for the given digit sequence of β.
pub fn tune_expansion(ctx: &LeafContext, beta: &BinaryExpansion) -> Angle {
    let m = ctx.period();
    let (k, r) = (beta.prefix.len() as u32, beta.repeat.len() as u32);
    let p_num = word_in_base(&beta.prefix, m);
    let r_num = word_in_base(&beta.repeat, m);
    let block = (BigUint::one() << (r * m)) - 1u32;
    // Σ = p_num / 2^{km} + r_num / (2^{km} (2^{rm} - 1))
    let sum = Frac::from_big(p_num * &block + r_num, (BigUint::one() << (k * m)) * block);
    let span = ctx.leaf().b().value() - ctx.alpha().value();
    let value = ctx.alpha().value() + &(&(&Frac::mersenne(m) * &span) * &sum);
    Angle::from_frac(value).expect("tuned angle stays inside the arc of S")
}

/// Tuning of an angle with a single binary expansion.
pub fn tune(ctx: &LeafContext, beta: &Angle) -> Result<Angle> {
    if beta.is_dyadic() {
        return Err(Error::Precondition(format!(
            "{beta} is dyadic; choose an expansion or use tune_dyadic"
        )));
    }
    Ok(tune_expansion(ctx, &beta.binary_of()))
}

/// The boundary leaf of the critical value gap spanned by the images of
/// both binary expansions of a dyadic angle.
pub fn tune_dyadic(ctx: &LeafContext, beta: &Angle) -> Result<Chord> {
    let exps = beta.binary_expansions();
    if exps.len() != 2 {
        return Err(Error::Precondition(format!("{beta} is not dyadic")));
    }
    Chord::new(tune_expansion(ctx, &exps[0]), tune_expansion(ctx, &exps[1]))
}

pub fn tune_chord(ctx: &LeafContext, c: &Chord) -> Result<Chord> {
    Chord::new(tune(ctx, c.a())?, tune(ctx, c.b())?)
}

/// Inverse of the tuning map on its image: the binary expansion of `x` must
/// split into blocks each equal to the expansion block of `α` or of `γ`.
pub fn untune(ctx: &LeafContext, x: &Angle) -> Result<Angle> {
    let m = ctx.period() as usize;
    let lo = ctx.alpha().bits(m);
    let hi = ctx.leaf().b().bits(m);
    for exp in x.binary_expansions() {
        let pre_blocks = exp.prefix.len().div_ceil(m);
        let total = pre_blocks + exp.repeat.len();
        let mut digits: BitWord = Vec::with_capacity(total);
        for j in 0..total {
            let block: BitWord = (j * m..(j + 1) * m).map(|i| exp.digit(i)).collect();
            if block == lo {
                digits.push(0);
            } else if block == hi {
                digits.push(1);
            } else {
                break;
            }
        }
        if digits.len() < total {
            continue;
        }
        let beta_exp = BinaryExpansion {
            prefix: digits[..pre_blocks].to_vec(),
            repeat: digits[pre_blocks..].to_vec(),
        };
        if &tune_expansion(ctx, &beta_exp) == x {
            return Angle::from_expansion(&beta_exp);
        }
    }
    Err(Error::Precondition(format!(
        "{x} is not in the image of the tuning map of {}",
        ctx.leaf()
    )))
}

/// Combinatorial rotation number `p/q` of the orbit of a periodic angle.
pub fn rotation_number(x: &Angle) -> Result<(u32, u32)> {
    let q = x
        .period()
        .ok_or_else(|| Error::NotPeriodic(x.to_string()))?;
    if q == 1 {
        return Ok((0, 1));
    }
    let mut orbit: Vec<Angle> = Vec::with_capacity(q as usize);
    let mut y = x.clone();
    for _ in 0..q {
        orbit.push(y.clone());
        y = y.double();
    }
    let mut sorted = orbit.clone();
    sorted.sort();
    let pos = |a: &Angle| sorted.binary_search(a).expect("orbit point");
    let p = (pos(&orbit[1]) + q as usize - pos(&orbit[0])) % q as usize;
    for i in 0..q as usize {
        let next = &orbit[(i + 1) % q as usize];
        if pos(next) != (pos(&orbit[i]) + p) % q as usize {
            return Err(Error::Precondition(format!(
                "the orbit of {x} is not a rotation"
            )));
        }
    }
    Ok((p as u32, q))
}

fn require_coprime(p: u32, q: u32) -> Result<()> {
    if q < 2 || p == 0 || p >= q || p.gcd(&q) != 1 {
        return Err(Error::Precondition(format!(
            "{p}/{q} is not a reduced fraction in (0, 1) with q >= 2"
        )));
    }
    Ok(())
}

/// The period-`q` leaf whose ends lie on the orbit of rotation number `p/q`.
pub fn limb_leaf(p: u32, q: u32) -> Result<Leaf> {
    require_coprime(p, q)?;
    if q > 62 {
        return Err(Error::LimitExceeded(format!("denominator {q} above 62")));
    }
    // The point of the orbit nearest to 0: its k-th digit is 1 iff the
    // k-th orbit point is one of the p points in [1/2, 1).
    let digits: BitWord = (0..q).map(|k| u8::from((k * p) % q >= q - p)).collect();
    let x0 = Angle::from_binary(&[], &digits)?;
    let mut orbit = vec![x0.clone()];
    for _ in 1..q {
        let next = orbit.last().expect("non-empty").double();
        orbit.push(next);
    }
    orbit.sort();
    if rotation_number(&x0)? != (p, q) {
        return Err(Error::Internal(format!(
            "constructed orbit of {x0} is not the {p}/{q} rotation"
        )));
    }
    let mut found = Vec::new();
    let pairs = if q == 2 { 1 } else { q as usize };
    for i in 0..pairs {
        let c = Chord::new(orbit[i].clone(), orbit[(i + 1) % q as usize].clone())?;
        if let Ok(l) = Leaf::checked(c) {
            found.push(l);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one leaf")),
        n => Err(Error::Internal(format!(
            "{n} lamination leaves on the {p}/{q} orbit"
        ))),
    }
}

/// The leaf of period `qm` bifurcating from `S` at internal angle `p/q`.
pub fn bifurcation_leaf(ctx: &LeafContext, p: u32, q: u32) -> Result<Leaf> {
    let limb = limb_leaf(p, q)?;
    let b = Leaf::checked(tune_chord(ctx, &limb.chord)?)?;
    if b.period != q * ctx.period() {
        return Err(Error::Internal(format!(
            "tuned leaf {b} has period {}, expected {}",
            b.period,
            q * ctx.period()
        )));
    }
    if internal_angle(ctx, &b)? != (p, q) {
        return Err(Error::Internal(format!(
            "tuned leaf {b} does not have internal angle {p}/{q}"
        )));
    }
    Ok(b)
}

/// Internal angle `p/q` of a leaf immediately visible from `S`: the rotation
/// number of its untuned ends.
pub fn internal_angle(ctx: &LeafContext, b: &Leaf) -> Result<(u32, u32)> {
    let (x, y) = (untune(ctx, b.a())?, untune(ctx, b.b())?);
    let (rx, ry) = (rotation_number(&x)?, rotation_number(&y)?);
    if rx != ry || rx.1 < 2 {
        return Err(Error::Precondition(format!(
            "{b} is not a bifurcation leaf of {}",
            ctx.leaf()
        )));
    }
    Ok(rx)
}

/// All leaves of period `qm` immediately visible from `S`, found by scanning
/// the angles of that period behind `S`, in circular order. Returned with
/// the internal angles `p/q` assigned by that order.
pub fn immediately_visible_by_order(ctx: &LeafContext, q: u32) -> Result<Vec<(u32, Leaf)>> {
    let n = q * ctx.period();
    if n > 30 {
        return Err(Error::LimitExceeded(format!("scan of period {n} angles")));
    }
    let target: Vec<_> = ctx.ve_prefix(n as usize - 1);
    let s = ctx.chord();
    let ends: Vec<Angle> = angles_of_period_between(s.minor_start(), s.minor_end(), n)
        .into_iter()
        .filter(|x| kneading_prefix(x, n as usize - 1) == target)
        .collect();
    let mut leaves = Vec::new();
    let mut used = vec![false; ends.len()];
    for i in 0..ends.len() {
        if used[i] {
            continue;
        }
        for j in i + 1..ends.len() {
            if used[j] {
                continue;
            }
            if let Ok(l) = Leaf::checked(Chord::new(ends[i].clone(), ends[j].clone())?) {
                // Immediate visibility: the sequence just before the leaf is (ve)^inf.
                let before_last = 1 - crate::kneading::v_e_of(&l.chord)?.1;
                if before_last == ctx.e() {
                    leaves.push(l);
                }
                used[i] = true;
                used[j] = true;
                break;
            }
        }
    }
    leaves.sort_by(|x, y| x.chord.cmp(&y.chord));
    let ps: Vec<u32> = (1..q).filter(|p| p.gcd(&q) == 1).collect();
    if ps.len() != leaves.len() {
        return Err(Error::Internal(format!(
            "{} immediately visible leaves of period {n} behind {}, expected {}",
            leaves.len(),
            ctx.leaf(),
            ps.len()
        )));
    }
    Ok(ps.into_iter().zip(leaves).collect())
}

/// `B`, `R_B` and the internal angle of a sublimb of `S`.
#[derive(Clone, Debug)]
pub struct SublimbDesc {
    pub ctx: LeafContext,
    pub p: u32,
    pub q: u32,
    pub b: Leaf,
    pub r_b: Chord,
}

impl SublimbDesc {
    pub fn new(ctx: &LeafContext, p: u32, q: u32) -> Result<Self> {
        let b = bifurcation_leaf(ctx, p, q)?;
        let r_b = gateway(ctx, &b)?;
        Ok(SublimbDesc {
            ctx: ctx.clone(),
            p,
            q,
            b,
            r_b,
        })
    }

    pub fn m(&self) -> u32 {
        self.ctx.period()
    }

    pub fn qm(&self) -> u32 {
        self.q * self.ctx.period()
    }
}

/// Length of the bifurcation leaf of denominator `q`: `(2^m-1)^2/(2^{qm}-1) d`.
pub fn bifurcation_length(ctx: &LeafContext, q: u32) -> Frac {
    let m = ctx.period();
    let a = Frac::mersenne(m);
    &(&(&a * &a) * &ctx.d()) / &Frac::mersenne(q * m)
}

/// The gateway `R_B` of a leaf `B` immediately visible from `S`.
pub fn gateway(ctx: &LeafContext, b: &Leaf) -> Result<Chord> {
    let m = ctx.period();
    if b.period % m != 0 || b.period / m < 2 {
        return Err(Error::Precondition(format!(
            "{b} does not have period qm with q >= 2"
        )));
    }
    let q = b.period / m;
    let (x, y) = (untune(ctx, b.a())?, untune(ctx, b.b())?);
    let limb = Chord::new(x, y)?;
    let level = q - 1;
    if level > 62 {
        return Err(Error::LimitExceeded(format!("denominator {q} above 63")));
    }
    // Limb leaves never have 0 in their minor arc, so the arc is (a, b).
    let scale = Frac::pow2(level);
    let first = (limb.a().value() * &scale)
        .floor()
        .to_u64()
        .expect("below 2^62")
        + 1;
    let mut betas = Vec::new();
    let mut k = first;
    loop {
        let beta = Frac::new(k, 1 << level);
        if &beta >= limb.b().value() {
            break;
        }
        if k % 2 == 1 {
            betas.push(Angle::from_frac(beta)?);
        }
        k += 1;
    }
    let beta = match betas.as_slice() {
        [one] => one.clone(),
        _ => {
            return Err(Error::Internal(format!(
                "{} dyadic angles of level {level} inside {limb}",
                betas.len()
            )))
        }
    };
    let r = tune_dyadic(ctx, &beta)?;
    let d_r = ctx.gap_boundary_length(q - 2);
    if r.length() != d_r {
        return Err(Error::Internal(format!(
            "gateway {r} has length {}, expected {d_r}",
            r.length()
        )));
    }
    if !crate::angle::is_behind(&r, &b.chord)? {
        return Err(Error::Internal(format!("gateway {r} is not behind {b}")));
    }
    let s = ctx.chord();
    let returns: Vec<u32> = (1..=(q - 1) * m)
        .filter(|&i| r.iterate(i).as_ref() == Some(s))
        .collect();
    if returns != [(q - 1) * m] {
        return Err(Error::Internal(format!(
            "gateway {r} does not first return to S after {} steps",
            (q - 1) * m
        )));
    }
    let symbols = ctx.boundary_symbols(&r)?;
    if symbols.len() as u32 != q - 2 {
        return Err(Error::Internal(format!(
            "gateway {r} has {} free symbols",
            symbols.len()
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamic::context_of;
    use proptest::prelude::*;

    fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn ang(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn ctx(s: &str) -> LeafContext {
        context_of(&Leaf::checked(ch(s)).unwrap()).unwrap()
    }

    // Replace each binary digit of β by the period block of α or γ.
    fn substituted(ctx: &LeafContext, beta: &BinaryExpansion) -> Angle {
        let m = ctx.period() as usize;
        let blocks = [ctx.alpha().bits(m), ctx.leaf().b().bits(m)];
        let sub =
            |w: &[u8]| -> BitWord { w.iter().flat_map(|&b| blocks[b as usize].clone()).collect() };
        Angle::from_binary(&sub(&beta.prefix), &sub(&beta.repeat)).unwrap()
    }

    #[test]
    fn known_tunings() {
        let c = ctx("1/3-2/3");
        assert_eq!(tune(&c, &ang("1/7")).unwrap(), ang("22/63"));
        assert_eq!(tune(&c, &ang("2/7")).unwrap(), ang("25/63"));
        assert_eq!(tune_dyadic(&c, &ang("1/2")).unwrap(), ch("5/12-7/12"));
        assert!(tune(&c, &ang("1/2")).is_err());
        let c = ctx("13/31-18/31");
        assert_eq!(tune(&c, &ang("1/3")).unwrap(), ang("434/1023"));
        assert_eq!(tune(&c, &ang("2/3")).unwrap(), ang("589/1023"));
        assert!(untune(&c, &ang("1/3")).is_err());
    }

    #[test]
    fn rotation_numbers() {
        assert_eq!(rotation_number(&ang("1/7")).unwrap(), (1, 3));
        assert_eq!(rotation_number(&ang("1/3")).unwrap(), (1, 2));
        assert_eq!(rotation_number(&ang("1/15")).unwrap(), (1, 4));
        assert_eq!(rotation_number(&ang("5/7")).unwrap(), (2, 3));
        assert!(rotation_number(&ang("3/15")).is_err());
    }

    #[test]
    fn limb_leaves() {
        assert_eq!(limb_leaf(1, 2).unwrap().chord, ch("1/3-2/3"));
        assert_eq!(limb_leaf(1, 3).unwrap().chord, ch("1/7-2/7"));
        assert_eq!(limb_leaf(2, 3).unwrap().chord, ch("5/7-6/7"));
        assert_eq!(limb_leaf(2, 5).unwrap().chord, ch("9/31-10/31"));
        assert!(limb_leaf(2, 4).is_err());
        for q in 2..12u32 {
            for p in (1..q).filter(|p| p.gcd(&q) == 1) {
                let l = limb_leaf(p, q).unwrap();
                assert_eq!(l.period, q);
                assert_eq!(rotation_number(l.a()).unwrap(), (p, q));
            }
        }
    }

    #[test]
    fn bifurcations_and_gateways() {
        let c = ctx("1/3-2/3");
        let b2 = bifurcation_leaf(&c, 1, 2).unwrap();
        assert_eq!(b2.chord, ch("2/5-3/5"));
        let b3 = bifurcation_leaf(&c, 1, 3).unwrap();
        assert_eq!(b3.chord, ch("22/63-25/63"));
        assert_eq!(gateway(&c, &b2).unwrap(), ch("5/12-7/12"));
        assert_eq!(gateway(&c, &b2).unwrap(), c.leaf_at(&c.ve()).unwrap());
        assert_eq!(gateway(&c, &b3).unwrap(), ch("17/48-19/48"));
        assert_eq!(internal_angle(&c, &b3).unwrap(), (1, 3));
        for s in ["1/3-2/3", "1/7-2/7", "5/31-6/31", "13/31-18/31"] {
            let c = ctx(s);
            for q in 2..6u32 {
                for p in (1..q).filter(|p| p.gcd(&q) == 1) {
                    let d = SublimbDesc::new(&c, p, q).unwrap();
                    assert_eq!(d.b.chord.length(), bifurcation_length(&c, q), "{s} {p}/{q}");
                    assert!(LaminationStoreFree::immediately_visible(&c, &d.b));
                }
            }
        }
    }

    #[test]
    fn internal_angles_follow_circular_order() {
        for s in ["1/3-2/3", "1/7-2/7", "5/31-6/31"] {
            let c = ctx(s);
            for q in 2..=(20 / c.period()).min(7) {
                for (p, l) in immediately_visible_by_order(&c, q).unwrap() {
                    assert_eq!(bifurcation_leaf(&c, p, q).unwrap(), l, "{s} {p}/{q}");
                }
            }
        }
    }

    struct LaminationStoreFree;

    impl LaminationStoreFree {
        fn immediately_visible(c: &LeafContext, b: &Leaf) -> bool {
            crate::lamination::LaminationStore::is_immediately_visible_symbolic(c.leaf(), b)
                .unwrap()
        }
    }

    proptest! {
        #[test]
        fn tuning_is_word_substitution(
            s in prop::sample::select(vec!["1/3-2/3", "1/7-2/7", "5/31-6/31", "13/31-18/31"]),
            prefix in prop::collection::vec(0u8..2, 0..4),
            repeat in prop::collection::vec(0u8..2, 1..5),
        ) {
            let c = ctx(s);
            let beta = BinaryExpansion { prefix, repeat };
            let x = tune_expansion(&c, &beta);
            prop_assert_eq!(&x, &substituted(&c, &beta));
            let b = Angle::from_expansion(&beta).unwrap();
            if !b.is_dyadic() {
                prop_assert_eq!(untune(&c, &x).unwrap(), b);
            }
        }
    }
}
