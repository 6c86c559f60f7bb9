//! Master templates for every move kind and their generated variants.

use super::tangle::{Labels, Morse, Over, Tangle};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MoveKind {
    R1sym,
    R2sym,
    R3sym,
    S1plus,
    S1minus,
    S2h,
    S2v,
    S2pm,
    S3,
    S4,
    S4mn(i32, i32),
    S2pmn(i8, i32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivClass {
    Symmetric,
    Weak,
}

impl MoveKind {
    pub const ELEMENTARY: [MoveKind; 10] = [
        MoveKind::R1sym,
        MoveKind::R2sym,
        MoveKind::R3sym,
        MoveKind::S1plus,
        MoveKind::S1minus,
        MoveKind::S2h,
        MoveKind::S2v,
        MoveKind::S2pm,
        MoveKind::S3,
        MoveKind::S4,
    ];

    pub fn class(self) -> EquivClass {
        match self {
            MoveKind::S2v => EquivClass::Weak,
            _ => EquivClass::Symmetric,
        }
    }

    pub fn allowed_in(self, class: EquivClass) -> bool {
        class == EquivClass::Weak || self.class() == EquivClass::Symmetric
    }

    /// Off-axis moves, performed together with their mirror image.
    pub fn is_paired(self) -> bool {
        matches!(self, MoveKind::R1sym | MoveKind::R2sym | MoveKind::R3sym)
    }

    pub fn is_composite(self) -> bool {
        matches!(self, MoveKind::S4mn(..) | MoveKind::S2pmn(..))
    }

    pub fn parse(s: &str) -> Option<Self> {
        let simple = MoveKind::ELEMENTARY.iter().find(|k| k.to_string().eq_ignore_ascii_case(s));
        if let Some(k) = simple {
            return Some(*k);
        }
        let inner = |p: &str| -> Option<Vec<i32>> {
            let body = s.strip_prefix(p)?.strip_prefix('(')?.strip_suffix(')')?;
            body.split(',').map(|t| t.trim().replace('+', "").parse().ok()).collect()
        };
        if let Some(v) = inner("S4mn").filter(|v| v.len() == 2) {
            return Some(MoveKind::S4mn(v[0], v[1]));
        }
        if let Some(v) = inner("S2pmn").filter(|v| v.len() == 2 && v[0].abs() == 1) {
            return Some(MoveKind::S2pmn(v[0] as i8, v[1]));
        }
        None
    }
}

impl From<MoveKind> for String {
    fn from(k: MoveKind) -> Self {
        k.to_string()
    }
}

impl TryFrom<String> for MoveKind {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        MoveKind::parse(&s).ok_or_else(|| format!("unknown move kind {s:?}"))
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::S4mn(m, n) => write!(f, "S4mn({m},{n})"),
            MoveKind::S2pmn(s, n) => write!(f, "S2pmn({s},{n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub lhs: Tangle,
    pub rhs: Tangle,
    pub paired: bool,
}

impl Template {
    fn map(&self, f: impl Fn(&Tangle) -> Tangle) -> Self {
        Self { lhs: f(&self.lhs), rhs: f(&self.rhs), paired: self.paired }
    }

    pub fn reversed(&self) -> Self {
        Self { lhs: self.rhs.clone(), rhs: self.lhs.clone(), paired: self.paired }
    }
}

fn sym(t: Tangle, s: usize) -> Tangle {
    t.with_symmetry(s).expect("master template is symmetric")
}

/// Sign of an on-axis tangle crossing: the reflection maps slot 0 to 1 or to 3.
pub fn axis_sign(t: &Tangle, c: usize) -> i32 {
    if t.rho[c][0].1 == 1 {
        1
    } else {
        -1
    }
}

/// A vertical chain of |m| axis crossings between four external labels.
/// Positive crossings have the strand from upper left to lower right over.
pub fn chain(lab: &mut Labels, m: i32, nw: u32, ne: u32, sw: u32, se: u32) {
    if m == 0 {
        lab.merge(nw, sw);
        lab.merge(ne, se);
        return;
    }
    let len = m.unsigned_abs() as usize;
    let mut top = (nw, ne);
    for j in 0..len {
        let bottom = if j + 1 == len { (sw, se) } else { (lab.fresh(), lab.fresh()) };
        let (w, e) = top;
        let (bw, be) = bottom;
        // geometric SW, SE, NE, NW
        let frame = if m > 0 { [bw, be, e, w] } else { [be, e, w, bw] };
        lab.cross(frame);
        top = bottom;
    }
}

fn s1(sign: i32) -> Template {
    let build = |o: Over| Morse::new(0).cup(0).x(0, o).finish();
    let mut lhs = sym(build(Over::Rising), 1);
    if axis_sign(&lhs, 0) != sign {
        lhs = sym(build(Over::Falling), 1);
    }
    Template { lhs, rhs: sym(Morse::new(0).cup(0).finish(), 1), paired: false }
}

/// Horizontal twist pair around a box of n axis crossings, and the bare box.
/// For `sign` = -1 the strand from the upper corner is over at both twists.
pub fn s2_family(sign: i8, n: i32) -> Template {
    let mut lab = Labels::default();
    let [bl, br, tr, tl] = [lab.fresh(), lab.fresh(), lab.fresh(), lab.fresh()];
    let [lnw, lsw, rne, rse] = [lab.fresh(), lab.fresh(), lab.fresh(), lab.fresh()];
    let mut left = [bl, lsw, lnw, tl];
    let mut right = [br, tr, rne, rse];
    if sign > 0 {
        left.rotate_left(1);
        right.rotate_left(1);
    }
    lab.cross(left);
    lab.cross(right);
    chain(&mut lab, n, lnw, rne, lsw, rse);
    let lhs = sym(lab.build(&[bl, br, tr, tl]), 1);
    let mut lab = Labels::default();
    let [bl, br, tr, tl] = [lab.fresh(), lab.fresh(), lab.fresh(), lab.fresh()];
    chain(&mut lab, n, tl, tr, bl, br);
    let rhs = sym(lab.build(&[bl, br, tr, tl]), 1);
    Template { lhs, rhs, paired: false }
}

/// Two boxes exchanged along the axis: box m above box n with the four
/// strands of n passing over those of m on each side, against n above m.
pub fn s4_family(m: i32, n: i32) -> Template {
    // boundary, counterclockwise: R(-2.5) R(-1) R(1) R(2.5) L(2.5) L(1) L(-1) L(-2.5)
    let mut lab = Labels::default();
    let pts: Vec<u32> = (0..8).map(|_| lab.fresh()).collect();
    let (rb, ra, rc, rd, ld, lc, la, lb) = (pts[0], pts[1], pts[2], pts[3], pts[4], pts[5], pts[6], pts[7]);
    // right grid: a and b rise to box m, c and d fall to box n; primes on the left
    let l: Vec<u32> = (0..16).map(|_| lab.fresh()).collect();
    let (a2, a3, b2, b3, c2, c3, d2, d3) = (l[0], l[1], l[2], l[3], l[4], l[5], l[6], l[7]);
    let (a2l, a3l, b2l, b3l, c2l, c3l, d2l, d3l) = (l[8], l[9], l[10], l[11], l[12], l[13], l[14], l[15]);
    // frames on the right: [under prev, over prev, under next, over next]
    lab.cross([ra, rc, a2, c2]); // (a,c)
    lab.cross([a2, rd, a3, d2]); // (a,d)
    lab.cross([rb, c2, b2, c3]); // (b,c)
    lab.cross([b2, d2, b3, d3]); // (b,d)
    // mirror: [under prev, over next, under next, over prev]
    lab.cross([la, c2l, a2l, lc]);
    lab.cross([a2l, d2l, a3l, ld]);
    lab.cross([lb, c3l, b2l, c2l]);
    lab.cross([b2l, d3l, b3l, d2l]);
    chain(&mut lab, m, a3l, a3, b3l, b3);
    chain(&mut lab, n, d3l, d3, c3l, c3);
    let lhs = sym(lab.build(&pts), 7);
    let mut lab = Labels::default();
    let pts: Vec<u32> = (0..8).map(|_| lab.fresh()).collect();
    let (rb, ra, rc, rd, ld, lc, la, lb) = (pts[0], pts[1], pts[2], pts[3], pts[4], pts[5], pts[6], pts[7]);
    chain(&mut lab, n, ld, rd, lc, rc);
    chain(&mut lab, m, la, ra, lb, rb);
    let rhs = sym(lab.build(&pts), 7);
    Template { lhs, rhs, paired: false }
}

fn masters(kind: MoveKind) -> Vec<Template> {
    use Over::*;
    let flat = |t: Tangle, r: Tangle| Template { lhs: t, rhs: r, paired: true };
    match kind {
        MoveKind::R1sym => vec![flat(Morse::new(1).cup(1).x(0, Rising).cap(1).finish(), Morse::new(1).finish())],
        MoveKind::R2sym => vec![flat(Morse::new(2).x_seq(&[(0, Rising), (0, Falling)]).finish(), Morse::new(2).finish())],
        MoveKind::R3sym => vec![
            flat(
                Morse::new(3).x_seq(&[(0, Rising), (1, Rising), (0, Rising)]).finish(),
                Morse::new(3).x_seq(&[(1, Rising), (0, Rising), (1, Rising)]).finish(),
            ),
            flat(
                Morse::new(3).x_seq(&[(0, Rising), (1, Rising), (0, Falling)]).finish(),
                Morse::new(3).x_seq(&[(1, Falling), (0, Rising), (1, Rising)]).finish(),
            ),
        ],
        MoveKind::S1plus => vec![s1(1)],
        MoveKind::S1minus => vec![s1(-1)],
        MoveKind::S2v => vec![Template {
            lhs: sym(Morse::new(2).x_seq(&[(0, Rising), (0, Falling)]).finish(), 1),
            rhs: sym(Morse::new(2).finish(), 1),
            paired: false,
        }],
        MoveKind::S2h => vec![Template {
            lhs: sym(Morse::new(0).cup(0).cup(1).x_seq(&[(0, Rising), (2, Falling)]).finish(), 3),
            rhs: sym(Morse::new(0).cup(0).cup(1).finish(), 3),
            paired: false,
        }],
        MoveKind::S3 => [Rising, Falling]
            .into_iter()
            .map(|tau| Template {
                lhs: sym(Morse::new(2).x(0, tau).cup(1).x_seq(&[(0, Falling), (2, Rising)]).finish(), 1),
                rhs: sym(Morse::new(2).cup(1).x_seq(&[(0, Falling), (2, Rising), (1, tau)]).finish(), 1),
                paired: false,
            })
            .collect(),
        MoveKind::S2pm => [(-1, -1), (-1, 1), (1, -1), (1, 1)].into_iter().map(|(s, n)| s2_family(s, n)).collect(),
        MoveKind::S4 => [(1, 1), (1, -1), (-1, 1), (-1, -1)].into_iter().map(|(m, n)| s4_family(m, n)).collect(),
        MoveKind::S4mn(m, n) => vec![s4_family(m, n)],
        MoveKind::S2pmn(s, n) => vec![s2_family(s, n)],
    }
}

/// All variants of a kind: masters, planar reflections, and switched copies.
/// Kink moves and composite moves keep the signs in their names, so only
/// sign-preserving variants are used for them.
pub fn templates(kind: MoveKind) -> Vec<Template> {
    let mut out: Vec<Template> = Vec::new();
    for m in masters(kind) {
        let vs: Vec<Template> = match kind {
            MoveKind::S1plus | MoveKind::S1minus | MoveKind::S4mn(..) | MoveKind::S2pmn(..) => {
                vec![m.clone(), m.map(|t| t.switched().reflected())]
            }
            _ => {
                let r = m.map(Tangle::reflected);
                vec![m.map(Tangle::switched), r.map(Tangle::switched), r, m]
            }
        };
        for v in vs {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}
