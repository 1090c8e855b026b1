//! Visibility trees of sublimbs: the leaves behind a bifurcation leaf `B`
//! that are visible from `S`, arranged by nesting and planar order.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{angles_of_period_between, ccw_offset, is_behind, Angle, Chord};
use crate::dynamic::LeafContext;
use crate::error::{Error, Result};
use crate::kneading::kneading_prefix;
use crate::lamination::Leaf;
use crate::tuning::SublimbDesc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VisNode {
    pub period: u32,
    pub leaf: Leaf,
    pub children: Vec<VisNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VisTree {
    pub root: VisNode,
}

impl VisNode {
    fn write_canonical(&self, shift: i64, out: &mut String) {
        out.push_str(&(self.period as i64 + shift).to_string());
        if !self.children.is_empty() {
            out.push('(');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                c.write_canonical(shift, out);
            }
            out.push(')');
        }
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a VisNode>) {
        out.push(self);
        for c in &self.children {
            c.collect(out);
        }
    }
}

impl VisTree {
    /// Depth-first serialization `period(child,child,...)` with every period
    /// label increased by `shift`.
    pub fn canonical_shifted(&self, shift: i64) -> String {
        let mut s = String::new();
        self.root.write_canonical(shift, &mut s);
        s
    }

    pub fn canonical(&self) -> String {
        self.canonical_shifted(0)
    }

    /// All nodes in depth-first order, root first.
    pub fn nodes(&self) -> Vec<&VisNode> {
        let mut out = Vec::new();
        self.root.collect(&mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.nodes().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_period(&self, n: u32) -> bool {
        self.nodes().iter().any(|x| x.period == n)
    }

    pub fn periods(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.nodes().iter().map(|x| x.period).collect();
        p.sort_unstable();
        p
    }
}

impl fmt::Display for VisTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

pub fn trees_equivalent(t1: &VisTree, t2: &VisTree, shift: i64) -> bool {
    t1.canonical_shifted(shift) == t2.canonical()
}

/// Leaves of period `n` with both ends strictly inside the minor arc of
/// `outer` whose ends have the kneading prefix of `(ve)^inf` up to `n - 1`.
/// For a leaf behind `S` this prefix condition is visibility from `S`.
pub fn visible_leaves_of_period(ctx: &LeafContext, outer: &Chord, n: u32) -> Result<Vec<Leaf>> {
    let target = ctx.ve_prefix(n as usize - 1);
    let ends: Vec<Angle> = angles_of_period_between(outer.minor_start(), outer.minor_end(), n)
        .into_par_iter()
        .filter(|x| kneading_prefix(x, n as usize - 1) == target)
        .collect();
    pair_ends(ends)
}

/// Matches angles of one period into lamination leaves. Each angle must find
/// its partner among the others.
fn pair_ends(ends: Vec<Angle>) -> Result<Vec<Leaf>> {
    let mut used = vec![false; ends.len()];
    let mut out = Vec::new();
    for i in 0..ends.len() {
        if used[i] {
            continue;
        }
        let mut partner = None;
        for j in i + 1..ends.len() {
            if !used[j] {
                if let Ok(l) = Leaf::checked(Chord::new(ends[i].clone(), ends[j].clone())?) {
                    partner = Some((j, l));
                    break;
                }
            }
        }
        let (j, l) = partner.ok_or_else(|| {
            Error::Internal(format!("{} has no partner inside the scanned arc", ends[i]))
        })?;
        used[i] = true;
        used[j] = true;
        out.push(l);
    }
    Ok(out)
}

/// All leaves behind `B` of period below `qm` visible from `S`, sorted.
pub fn visible_leaves_behind(desc: &SublimbDesc) -> Result<Vec<Leaf>> {
    let per_period: Vec<Vec<Leaf>> = (2..desc.qm())
        .into_par_iter()
        .map(|n| visible_leaves_of_period(&desc.ctx, &desc.b.chord, n))
        .collect::<Result<_>>()?;
    let mut out: Vec<Leaf> = per_period.into_iter().flatten().collect();
    out.sort();
    for l in &out {
        if !is_behind(&l.chord, &desc.r_b)? {
            return Err(Error::Internal(format!(
                "visible leaf {l} behind {} is not behind R_B",
                desc.b
            )));
        }
    }
    Ok(out)
}

/// Nests `leaves` (all behind `root`) into a planar tree. The parent of a
/// leaf is the shortest node it lies behind; children are ordered
/// counter-clockwise from the smaller end of the parent's minor arc.
pub fn build_tree(root: &Leaf, leaves: &[Leaf]) -> Result<VisTree> {
    let mut nodes: Vec<&Leaf> = leaves.iter().collect();
    nodes.sort_by(|x, y| y.chord.length().cmp(&x.chord.length()).then(x.cmp(y)));
    let mut parent = vec![None::<usize>; nodes.len()];
    for i in 0..nodes.len() {
        let mut best: Option<usize> = None;
        for j in 0..i {
            if is_behind(&nodes[i].chord, &nodes[j].chord)? {
                best = match best {
                    Some(b) if nodes[b].chord.length() <= nodes[j].chord.length() => Some(b),
                    _ => Some(j),
                };
            }
        }
        if best.is_none() && !is_behind(&nodes[i].chord, &root.chord)? {
            return Err(Error::Precondition(format!(
                "{} is not behind {root}",
                nodes[i]
            )));
        }
        parent[i] = best;
    }
    fn build(leaf: &Leaf, me: Option<usize>, nodes: &[&Leaf], parent: &[Option<usize>]) -> VisNode {
        let start = leaf.chord.minor_start();
        let mut kids: Vec<usize> = (0..nodes.len()).filter(|&i| parent[i] == me).collect();
        kids.sort_by_key(|&i| ccw_offset(start, nodes[i].chord.minor_start()));
        VisNode {
            period: leaf.period,
            leaf: leaf.clone(),
            children: kids
                .into_iter()
                .map(|i| build(nodes[i], Some(i), nodes, parent))
                .collect(),
        }
    }
    Ok(VisTree {
        root: build(root, None, &nodes, &parent),
    })
}

pub fn visibility_tree_of(desc: &SublimbDesc) -> Result<VisTree> {
    build_tree(&desc.b, &visible_leaves_behind(desc)?)
}

pub fn visibility_tree(ctx: &LeafContext, p: u32, q: u32) -> Result<VisTree> {
    visibility_tree_of(&SublimbDesc::new(ctx, p, q)?)
}
