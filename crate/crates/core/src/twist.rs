//! Twisting axis crossings: D(h) and its partial and resolved variants.

use crate::bracket::{A_PAIRS, B_PAIRS};
use crate::diagram::{Diagram, Draft, Port};
use crate::refined::{resolve_crossings, Resolution};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("top and bottom axis crossings are not designated (need at least two axis crossings)")]
    InvalidDesignation,
    #[error("no axis crossing with axis_index {0}")]
    BadIndex(i64),
}

/// Replacement counts: every axis crossing gets `h` unless overridden by axis_index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistSpec {
    pub h: i64,
    pub overrides: BTreeMap<i64, i64>,
}

impl TwistSpec {
    pub fn uniform(h: i64) -> Self {
        Self { h, overrides: BTreeMap::new() }
    }
}

/// Replaces on-axis crossing `c` by a vertical chain of |count| crossings,
/// of the same type for count > 0 and switched for count < 0; count = 0 leaves
/// the vertical smoothing.
pub(crate) fn twist_crossing(draft: &mut Draft, d: &Diagram, c: usize, count: i64) {
    let positive = d.crossing(c).sign() > 0;
    let (horizontal, vertical) = if positive { (A_PAIRS, B_PAIRS) } else { (B_PAIRS, A_PAIRS) };
    if count == 0 {
        draft.remove_join(c, vertical);
        return;
    }
    if count == 1 {
        return;
    }
    let vmate = |s: u8| -> u8 {
        let (a, b) = if vertical[0].0 == s || vertical[0].1 == s { vertical[0] } else { vertical[1] };
        if a == s {
            b
        } else {
            a
        }
    };
    // the pair holding slot 0 is the bottom of the chain
    let bottom = if horizontal[0].0 == 0 || horizontal[0].1 == 0 { horizontal[0] } else { horizontal[1] };
    let is_bottom = |s: u8| s == bottom.0 || s == bottom.1;
    let m = count.unsigned_abs() as usize;
    let x = draft.x(c).clone();
    let key = x.axis_key;
    let chain: Vec<usize> = (0..m).map(|j| draft.add(true, (key.0, j as i64))).collect();
    for &y in &chain {
        let dx = draft.xm(y);
        dx.under_in = x.under_in;
        dx.over_in = x.over_in;
        dx.rho = x.rho.map(|p| Port::new(y, p.s));
    }
    // where each slot of c now lives
    let home = |s: u8| -> Port {
        if is_bottom(s) {
            Port::new(chain[0], s)
        } else {
            Port::new(chain[m - 1], s)
        }
    };
    for s in 0..4u8 {
        let q = x.nbr[s as usize];
        let target = if q.c == c { home(q.s) } else { q };
        draft.link(home(s), target);
    }
    for j in 0..m - 1 {
        for b in [bottom.0, bottom.1] {
            draft.link(Port::new(chain[j], vmate(b)), Port::new(chain[j + 1], b));
        }
    }
    draft.xs[c] = None;
    if count < 0 {
        for &y in &chain {
            draft.switch(y);
        }
    }
}

pub fn twist_spec(d: &Diagram, spec: &TwistSpec) -> Result<Diagram, TwistError> {
    d.validate().map_err(|e| TwistError::InvalidDiagram(e.to_string()))?;
    for k in spec.overrides.keys() {
        d.by_axis_index(*k).ok_or(TwistError::BadIndex(*k))?;
    }
    let mut draft = Draft::from_diagram(d);
    for c in d.axis_crossings() {
        let idx = d.crossing(c).axis_index.unwrap();
        let count = spec.overrides.get(&idx).copied().unwrap_or(spec.h);
        twist_crossing(&mut draft, d, c, count);
    }
    Ok(draft.finish_reoriented())
}

/// D(h): every axis crossing replaced by |h| crossings.
pub fn twist(d: &Diagram, h: i64) -> Result<Diagram, TwistError> {
    twist_spec(d, &TwistSpec::uniform(h))
}

/// Top and bottom are the axis crossings with the largest and smallest axis_index.
pub fn top_bottom(d: &Diagram) -> Result<(i64, i64), TwistError> {
    let axis = d.axis_crossings();
    if axis.len() < 2 {
        return Err(TwistError::InvalidDesignation);
    }
    let idx = |c: usize| d.crossing(c).axis_index.unwrap();
    Ok((idx(*axis.last().unwrap()), idx(axis[0])))
}

/// D(t, h, b): top crossing -> t copies, bottom -> b, the others -> h.
pub fn twist_partial(d: &Diagram, t: i64, h: i64, b: i64) -> Result<Diagram, TwistError> {
    let (top, bottom) = top_bottom(d)?;
    let mut spec = TwistSpec::uniform(h);
    spec.overrides.insert(top, t);
    spec.overrides.insert(bottom, b);
    twist_spec(d, &spec)
}

/// Horizontal (0) or vertical (1) smoothing of one axis crossing.
pub fn resolve_axis_crossing(d: &Diagram, axis_index: i64, r: Resolution) -> Result<Diagram, TwistError> {
    let c = d.by_axis_index(axis_index).ok_or(TwistError::BadIndex(axis_index))?;
    Ok(resolve_crossings(d, &[(c, r)]))
}
