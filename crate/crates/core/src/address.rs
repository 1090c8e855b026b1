//! Admissibility of internal addresses by exhaustive witness search,
//! narrow leaves, and the translation statements for addresses.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::angle::Angle;
use crate::dynamic::context_of;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::kneading::{kneading_from_address, kneading_prefix, InternalAddress, Sym};
use crate::lamination::{LaminationStore, Leaf};
use crate::vistree::visible_leaves_of_period;

/// Largest final entry accepted by [`is_admissible`] unless a caller asks
/// for more.
pub const DEFAULT_ADMISSIBLE_BOUND: u32 = 26;

/// The smallest angle `a/(2^n - 1)` of exact period `n = last entry` whose
/// kneading sequence has the address `a`, if there is one.
pub fn is_admissible(a: &InternalAddress, bound: u32) -> Result<Option<Angle>> {
    let n = a.last();
    if n > bound || n > 62 {
        return Err(Error::LimitExceeded(format!(
            "address entry {n} above the bound {}",
            bound.min(62)
        )));
    }
    if n == 1 {
        return Ok(Some(Angle::ZERO));
    }
    let target: Vec<Sym> = kneading_from_address(a).take(n as usize);
    let den = (1u64 << n) - 1;
    let proper: Vec<u64> = (1..n)
        .filter(|d| n % d == 0)
        .map(|d| den / ((1u64 << d) - 1))
        .collect();
    let hit = (1..den).into_par_iter().find_first(|&num| {
        proper.iter().all(|&q| num % q != 0)
            && kneading_prefix(
                &Angle::from_frac(Frac::new(num, den)).expect("in range"),
                n as usize,
            ) == target
    });
    Ok(hit.map(|num| Angle::from_frac(Frac::new(num, den)).expect("in range")))
}

/// Length test: a leaf of period `m` is narrow iff its length is `1/(2^m-1)`.
pub fn is_narrow(s: &Leaf) -> bool {
    s.chord.length() == Frac::mersenne(s.period).recip()
}

/// Narrowness by definition: no leaf of smaller period behind `s` is
/// visible from it. Decided geometrically on the store.
pub fn narrow_by_visibility(store: &LaminationStore, s: &Leaf) -> Result<bool> {
    if s.period > store.max_period() {
        return Err(Error::StoreTooShallow {
            have: store.max_period(),
            need: s.period,
        });
    }
    for n in 2..s.period {
        for q in store.leaves(n) {
            if crate::angle::is_behind(&q.chord, &s.chord)?
                && store.is_visible_geometric(s, q, false)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Narrowness by definition, decided by a scan of the angles behind `s`.
pub fn narrow_by_scan(s: &Leaf) -> Result<bool> {
    let ctx = context_of(s)?;
    for n in 2..s.period {
        if !visible_leaves_of_period(&ctx, &s.chord, n)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Length test confirmed by the definitional scan.
pub fn is_narrow_checked(s: &Leaf) -> Result<bool> {
    let (by_length, by_scan) = (is_narrow(s), narrow_by_scan(s)?);
    if by_length != by_scan {
        return Err(Error::Internal(format!(
            "narrowness of {s}: length {by_length}, scan {by_scan}"
        )));
    }
    Ok(by_length)
}

#[derive(Clone, Debug, Serialize)]
pub struct AddressCheck {
    pub j: u32,
    pub address: InternalAddress,
    pub witness: Option<Angle>,
}

impl AddressCheck {
    pub fn admissible(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub prefix: InternalAddress,
    pub r: u32,
    /// `prefix -> jm` for `j >= 2`.
    pub multiples: Vec<AddressCheck>,
    /// `prefix -> jm + r` for `j >= 2`.
    pub offsets: Vec<AddressCheck>,
    /// `prefix -> m + r`, outside the range the corrected statement covers.
    pub first: AddressCheck,
}

impl CorollaryReport {
    pub fn multiples_admissible(&self) -> bool {
        self.multiples.iter().all(AddressCheck::admissible)
    }

    pub fn offsets_uniform(&self) -> bool {
        self.offsets
            .windows(2)
            .all(|w| w[0].admissible() == w[1].admissible())
    }

    /// The corrected statement, over `j >= 2`.
    pub fn corrected_holds(&self) -> bool {
        self.multiples_admissible() && self.offsets_uniform()
    }

    /// The original statement, which also includes `j = 1`.
    pub fn original_holds(&self) -> bool {
        self.corrected_holds()
            && self
                .offsets
                .iter()
                .all(|c| c.admissible() == self.first.admissible())
    }
}

/// Checks admissibility of `prefix -> jm` and `prefix -> jm + r` for `j` in
/// `js` (values below 2 are skipped) and of `prefix -> m + r` separately.
pub fn check_corollary_i(
    prefix: &InternalAddress,
    r: u32,
    js: RangeInclusive<u32>,
    bound: u32,
) -> Result<CorollaryReport> {
    let m = prefix.last();
    if r == 0 || r >= m {
        return Err(Error::Precondition(format!("offset {r} outside 1..{m}")));
    }
    if is_admissible(prefix, bound)?.is_none() {
        return Err(Error::Precondition(format!("{prefix} is not admissible")));
    }
    let check = |j: u32, n: u32| -> Result<AddressCheck> {
        let address = prefix.extended(n)?;
        Ok(AddressCheck {
            j,
            witness: is_admissible(&address, bound)?,
            address,
        })
    };
    let js: Vec<u32> = js.filter(|&j| j >= 2).collect();
    Ok(CorollaryReport {
        prefix: prefix.clone(),
        r,
        multiples: js.iter().map(|&j| check(j, j * m)).collect::<Result<_>>()?,
        offsets: js
            .iter()
            .map(|&j| check(j, j * m + r))
            .collect::<Result<_>>()?,
        first: check(1, m + r)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::{address_from_kneading, address_prefix, kneading_of_angle};
    use crate::lamination::enumerate;

    fn addr(s: &str) -> InternalAddress {
        s.parse().unwrap()
    }

    #[test]
    fn known_addresses() {
        assert_eq!(is_admissible(&addr("1-2-4-5-6"), 26).unwrap(), None);
        let w = is_admissible(&addr("1-2-4-5-11"), 26).unwrap().unwrap();
        assert_eq!(
            address_from_kneading(&kneading_of_angle(&w)).unwrap(),
            addr("1-2-4-5-11")
        );
        assert_eq!(
            is_admissible(&addr("1-2-3"), 26).unwrap(),
            Some("3/7".parse().unwrap())
        );
        assert_eq!(is_admissible(&addr("1"), 26).unwrap(), Some(Angle::ZERO));
        assert!(is_admissible(&addr("1-40"), 26).is_err());
    }

    #[test]
    fn store_addresses_are_admissible_and_symmetric() {
        let store = enumerate(10).unwrap();
        for l in store.all_leaves() {
            let a = address_from_kneading(&kneading_of_angle(l.a())).unwrap();
            let w = is_admissible(&a, 26).unwrap().expect("witness");
            assert!(w <= *l.a());
            let k = kneading_of_angle(&w);
            assert_eq!(k, kneading_of_angle(l.b()));
            assert_eq!(store.partner(&w).map(|p| kneading_of_angle(&p)).unwrap(), k);
        }
    }

    // Every address prefix read off a preperiodic angle is realized by an
    // angle of the prefix's last period.
    #[test]
    fn prefixes_of_angle_addresses_are_admissible() {
        for k in 1..=3u32 {
            for n in 1..=(10 - k).min(7) {
                let den = (1u64 << k) * ((1u64 << n) - 1);
                for num in 1..den {
                    let x = Angle::from_frac(Frac::new(num, den)).unwrap();
                    let p = address_prefix(&kneading_of_angle(&x), 10);
                    let e = p.address.entries();
                    for i in 1..=e.len() {
                        let a = InternalAddress::new(e[..i].to_vec()).unwrap();
                        assert!(is_admissible(&a, 26).unwrap().is_some(), "{a} from {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn narrow_leaves() {
        let store = enumerate(8).unwrap();
        for (s, want) in [
            ("5/31-6/31", true),
            ("13/31-18/31", false),
            ("1/3-2/3", true),
        ] {
            let l = store.leaf(&s.parse().unwrap()).unwrap();
            assert_eq!(is_narrow_checked(l).unwrap(), want, "{s}");
        }
        for l in store.all_leaves() {
            assert_eq!(
                is_narrow(l),
                narrow_by_visibility(&store, l).unwrap(),
                "{l}"
            );
            assert_eq!(is_narrow(l), narrow_by_scan(l).unwrap(), "{l}");
        }
    }

    #[test]
    fn corollary_on_the_counterexample() {
        let r = check_corollary_i(&addr("1-2-4-5"), 1, 1..=3, 26).unwrap();
        assert!(!r.first.admissible());
        assert!(r.offsets.iter().all(AddressCheck::admissible));
        assert!(r.corrected_holds());
        assert!(!r.original_holds());
    }

    #[test]
    fn satellite_cascade() {
        let r = check_corollary_i(&addr("1-2"), 1, 2..=10, 26).unwrap();
        assert!(r.multiples_admissible() && r.corrected_holds());
    }

    #[test]
    fn narrow_prefix_admits_everything() {
        for n in 6..=16 {
            assert!(
                is_admissible(&addr(&format!("1-3-5-{n}")), 26)
                    .unwrap()
                    .is_some(),
                "{n}"
            );
        }
    }
}
