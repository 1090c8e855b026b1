//! SVG drawings of laminations: chords as hyperbolic geodesics in the unit
//! disk.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::angle::{Angle, Chord};
use crate::dynamic::LeafContext;
use crate::error::{Error, Result};
use crate::lamination::LaminationStore;
use crate::vistree::VisTree;

pub const MAX_RENDER_DEPTH: u32 = 14;
pub const MAX_RENDER_PERIOD: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RenderWhat {
    /// Pullbacks `L_w(S)` with `|w|` up to the depth.
    LeafLamination,
    /// Parameter leaves up to the period.
    ParameterLamination,
    VisibilityTree,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub what: RenderWhat,
    pub depth: u32,
    pub highlight: Vec<Chord>,
    pub size_px: u32,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        let limit = match self.what {
            RenderWhat::LeafLamination => MAX_RENDER_DEPTH,
            RenderWhat::ParameterLamination => MAX_RENDER_PERIOD,
            RenderWhat::VisibilityTree => u32::MAX,
        };
        if self.depth > limit {
            return Err(Error::LimitExceeded(format!(
                "render depth {} above {limit}",
                self.depth
            )));
        }
        if self.size_px == 0 {
            return Err(Error::Precondition("image size must be positive".into()));
        }
        Ok(())
    }
}

/// Fixed 9-decimal formatting without negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn point(x: &Angle, scale: f64) -> (f64, f64) {
    let t = TAU * x.to_f64();
    (scale * t.cos(), -scale * t.sin())
}

/// Path data of the geodesic through the ends of `c` on a circle of radius
/// `scale` centered at the origin.
pub fn geodesic_path(c: &Chord, scale: f64) -> String {
    let (x1, y1) = point(c.minor_start(), scale);
    let (x2, y2) = point(c.minor_end(), scale);
    if c.is_diameter() {
        return format!("M {} {} L {} {}", num(x1), num(y1), num(x2), num(y2));
    }
    let half = TAU * c.length().to_f64() / 2.0;
    let radius = scale * half.tan();
    format!(
        "M {} {} A {} {} 0 0 0 {} {}",
        num(x1),
        num(y1),
        num(radius),
        num(radius),
        num(x2),
        num(y2)
    )
}

/// An SVG 1.1 document with the unit circle and one geodesic per chord.
pub fn render_svg(spec: &RenderSpec, chords: &[Chord]) -> String {
    let size = spec.size_px as f64;
    let scale = size / 2.0 * 0.95;
    let mut out = String::new();
    let h = num(size / 2.0);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="-{1} -{1} {2} {2}">"#,
        spec.size_px,
        h,
        num(size)
    )
    .unwrap();
    writeln!(
        out,
        r#"<circle cx="0" cy="0" r="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        num(scale)
    )
    .unwrap();
    let mut sorted: Vec<&Chord> = chords.iter().collect();
    sorted.sort();
    sorted.dedup();
    for c in sorted {
        let (stroke, width) = if spec.highlight.contains(c) {
            ("red", "1.5")
        } else {
            ("steelblue", "0.5")
        };
        writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            geodesic_path(c, scale)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Pullbacks `L_w(S)` for all words of length up to `depth`.
pub fn leaf_lamination_chords(ctx: &LeafContext, depth: u32) -> Result<Vec<Chord>> {
    let mut level = vec![ctx.chord().clone()];
    let mut out = level.clone();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for r in &level {
            for bit in [0, 1] {
                next.push(ctx.pullback(r, bit)?);
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().cloned());
        level = next;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn parameter_lamination_chords(store: &LaminationStore, max_period: u32) -> Result<Vec<Chord>> {
    if max_period > store.max_period() {
        return Err(Error::StoreTooShallow {
            have: store.max_period(),
            need: max_period,
        });
    }
    Ok((2..=max_period)
        .flat_map(|n| store.leaves(n).iter().map(|l| l.chord.clone()))
        .collect())
}

pub fn tree_chords(tree: &VisTree) -> Vec<Chord> {
    tree.nodes().iter().map(|n| n.leaf.chord.clone()).collect()
}
