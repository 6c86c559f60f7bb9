//! Ordering of on-axis crossings along the axis.

use super::{Diagram, Port};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Point {
    Edge(Port),
    Cross(usize),
}

impl Diagram {
    /// Walks the axis of each piece from its unbounded face and renumbers the
    /// axis crossings in the order met. Of the two walking directions the one
    /// agreeing best with `old` (id, previous index) wins. Leaves the numbering
    /// unchanged if the reflection data does not describe a single axis.
    pub fn renumber_axis(&mut self, old: &[(u32, i64)]) {
        let Some(order) = self.axis_walk(old) else { return };
        for x in &mut self.crossings {
            x.axis_index = None;
        }
        for (r, c) in order.into_iter().enumerate() {
            self.crossings[c].axis_index = Some(r as i64);
        }
    }

    fn axis_walk(&self, old: &[(u32, i64)]) -> Option<Vec<usize>> {
        self.rho.as_ref()?;
        let faces = self.faces();
        let rank: HashMap<u32, i64> = old.iter().copied().collect();
        let mut pieces = Vec::new();
        for (piece, outer) in self.outer_faces(&faces) {
            let mut at: HashMap<usize, Vec<Point>> = HashMap::new();
            let mut ends: HashMap<Point, [usize; 2]> = HashMap::new();
            for &c in &piece {
                let x = &self.crossings[c];
                if x.on_axis {
                    let s0 = self.rho(Port::new(c, 0))?.s;
                    let k = (s0 + 3) / 2 % 2;
                    let f = [faces.corner(c, k), faces.corner(c, k + 2)];
                    ends.insert(Point::Cross(c), f);
                }
                for s in 0..4 {
                    let p = Port::new(c, s);
                    let q = self.nbr(p);
                    if p < q && self.edge_crosses_axis(p) {
                        ends.insert(Point::Edge(p), [faces.face(p), faces.face(q)]);
                    }
                }
            }
            for (&pt, f) in &ends {
                at.entry(f[0]).or_default().push(pt);
                at.entry(f[1]).or_default().push(pt);
            }
            if ends.is_empty() {
                continue;
            }
            if at.values().any(|v| v.len() != 2) {
                return None;
            }
            let start = at.get(&outer)?.clone();
            let mut best: Option<(usize, Vec<u32>, Vec<usize>)> = None;
            for first in start {
                let mut seq = Vec::new();
                let mut face = outer;
                let mut pt = first;
                for _ in 0..ends.len() {
                    if let Point::Cross(c) = pt {
                        seq.push(c);
                    }
                    let f = ends[&pt];
                    face = if f[0] == face { f[1] } else { f[0] };
                    let v = &at[&face];
                    pt = if v[0] == pt { v[1] } else { v[0] };
                    if face == outer {
                        break;
                    }
                }
                let ranks: Vec<i64> = seq.iter().filter_map(|&c| rank.get(&self.crossings[c].id).copied()).collect();
                let inv = ranks.iter().enumerate().map(|(i, a)| ranks[i + 1..].iter().filter(|b| *b < a).count()).sum();
                let ids: Vec<u32> = seq.iter().map(|&c| self.crossings[c].id).collect();
                let cand = (inv, ids, seq);
                if best.as_ref().is_none_or(|b| (cand.0, &cand.1) < (b.0, &b.1)) {
                    best = Some(cand);
                }
            }
            let (_, _, seq) = best?;
            let key = seq.iter().filter_map(|&c| rank.get(&self.crossings[c].id).copied()).min().unwrap_or(i64::MAX);
            pieces.push((key, piece[0], seq));
        }
        pieces.sort();
        Some(pieces.into_iter().flat_map(|p| p.2).collect())
    }
}
