//! Combinatorial planar diagrams with axis and mirror metadata.
//!
//! Every crossing keeps a fixed frame of four slots, listed counterclockwise,
//! with slots 0 and 2 on the under-strand. Orientation is stored as the
//! incoming slot of each strand, so re-orienting never rotates frames.

mod axis;
mod canon;
mod edit;
mod faces;
mod sud;
mod symmetry;

pub use canon::{canonical_form, canonical_form_oriented, same_diagram};
pub(crate) use edit::{Draft, Ext, Inner, Patch, PatchRho};
pub use faces::{Coloring, Color, Faces};
pub use sud::{SudCrossing, SudFile, SudFreeLoop, SudOrientation, SudPort};
pub use symmetry::{SymmetryFailure, SymmetryReport};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub c: usize,
    pub s: u8,
}

impl Port {
    pub const fn new(c: usize, s: u8) -> Self {
        Self { c, s }
    }

    pub fn rot(self, k: u8) -> Self {
        Self { c: self.c, s: (self.s + k) % 4 }
    }

    pub fn opposite(self) -> Self {
        self.rot(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: u32,
    /// `nbr[k]` is the port at the other end of the edge leaving slot k.
    pub nbr: [Port; 4],
    /// Incoming under slot, 0 or 2.
    pub under_in: u8,
    /// Incoming over slot, 1 or 3.
    pub over_in: u8,
    pub on_axis: bool,
    pub axis_index: Option<i64>,
    /// Index (not id) of the mirror partner.
    pub mirror: Option<usize>,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.over_in == (self.under_in + 3) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn is_in(&self, s: u8) -> bool {
        s == self.under_in || s == self.over_in
    }

    /// Slot `k` of the standard convention (counterclockwise from the incoming under-strand).
    pub fn pd_slot(&self, k: u8) -> u8 {
        (self.under_in + k) % 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeLoop {
    pub crosses_axis: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error at {field}: {msg}")]
    Parse { field: String, msg: String },
    #[error("invalid diagram: {0}")]
    Validation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub(crate) crossings: Vec<Crossing>,
    pub(crate) free_loops: Vec<FreeLoop>,
    /// Reflection on ports; present when every off-axis crossing has a partner.
    pub(crate) rho: Option<Vec<[Port; 4]>>,
    /// A port whose right-hand face is the unbounded face of its piece.
    pub(crate) outer_hint: Option<Port>,
}

/// Crossing counts split by sign and axis position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Writhe {
    pub p_off: usize,
    pub n_off: usize,
    pub p_axis: usize,
    pub n_axis: usize,
}

impl Writhe {
    pub fn total(&self) -> i64 {
        self.p_off as i64 + self.p_axis as i64 - self.n_off as i64 - self.n_axis as i64
    }

    pub fn axis(&self) -> i64 {
        self.p_axis as i64 - self.n_axis as i64
    }
}

/// Strand components: each is a cyclic list of departure ports in its direction of travel.
#[derive(Clone, Debug)]
pub struct Components {
    pub strands: Vec<Vec<Port>>,
    pub free_loops: usize,
}

impl Components {
    pub fn count(&self) -> usize {
        self.strands.len() + self.free_loops
    }
}

impl Diagram {
    pub fn unlink(m: usize, crosses_axis: bool) -> Self {
        Self {
            crossings: Vec::new(),
            free_loops: vec![FreeLoop { crosses_axis }; m],
            rho: Some(Vec::new()),
            outer_hint: None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops.is_empty()
    }

    pub fn nbr(&self, p: Port) -> Port {
        self.crossings[p.c].nbr[p.s as usize]
    }

    pub fn is_in(&self, p: Port) -> bool {
        self.crossings[p.c].is_in(p.s)
    }

    pub fn rho(&self, p: Port) -> Option<Port> {
        self.rho.as_ref().map(|r| r[p.c][p.s as usize])
    }

    pub fn has_mirror_data(&self) -> bool {
        self.rho.is_some()
    }

    /// An edge crosses the axis exactly when the reflection fixes it.
    pub fn edge_crosses_axis(&self, p: Port) -> bool {
        self.rho(p) == Some(self.nbr(p))
    }

    pub fn axis_crossings(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).filter(|&c| self.crossings[c].on_axis).collect();
        v.sort_by_key(|&c| self.crossings[c].axis_index);
        v
    }

    pub fn index_of_id(&self, id: u32) -> Option<usize> {
        self.crossings.iter().position(|x| x.id == id)
    }

    pub fn by_axis_index(&self, idx: i64) -> Option<usize> {
        self.crossings.iter().position(|x| x.on_axis && x.axis_index == Some(idx))
    }

    /// All ports, in index order.
    pub fn ports(&self) -> impl Iterator<Item = Port> + '_ {
        (0..self.len()).flat_map(|c| (0..4).map(move |s| Port::new(c, s)))
    }

    /// One representative port per edge (the smaller end).
    pub fn edges(&self) -> impl Iterator<Item = Port> + '_ {
        self.ports().filter(move |&p| p <= self.nbr(p))
    }

    /// Departure port of an edge in the oriented direction.
    pub fn tail(&self, p: Port) -> Port {
        if self.is_in(p) {
            self.nbr(p)
        } else {
            p
        }
    }

    pub fn writhe(&self) -> Writhe {
        let mut w = Writhe::default();
        for x in &self.crossings {
            match (x.on_axis, x.sign() > 0) {
                (false, true) => w.p_off += 1,
                (false, false) => w.n_off += 1,
                (true, true) => w.p_axis += 1,
                (true, false) => w.n_axis += 1,
            }
        }
        w
    }

    /// Oriented strand components.
    pub fn components(&self) -> Components {
        let mut seen = vec![[false; 4]; self.len()];
        let mut strands = Vec::new();
        for p in self.ports() {
            if self.is_in(p) || seen[p.c][p.s as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut q = p;
            while !seen[q.c][q.s as usize] {
                seen[q.c][q.s as usize] = true;
                cycle.push(q);
                q = self.nbr(q).opposite();
            }
            strands.push(cycle);
        }
        Components { strands, free_loops: self.free_loops.len() }
    }

    pub fn component_count(&self) -> usize {
        self.components().count()
    }

    /// Crossing-graph pieces (connected components of the 4-valent graph).
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut piece = Vec::new();
            label[start] = id;
            while let Some(c) = stack.pop() {
                piece.push(c);
                for p in self.crossings[c].nbr {
                    if label[p.c] == usize::MAX {
                        label[p.c] = id;
                        stack.push(p.c);
                    }
                }
            }
            piece.sort_unstable();
            out.push(piece);
        }
        out
    }

    /// Structural checks: port pairing, orientation consistency, planarity per piece.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let n = self.len();
        for p in self.ports() {
            let q = self.nbr(p);
            if q.c >= n || q.s > 3 {
                return Err(DiagramError::Validation(format!("dangling port {:?}", p)));
            }
            if q == p || self.nbr(q) != p {
                return Err(DiagramError::Validation(format!("edge pairing broken at {:?}", p)));
            }
            if self.is_in(p) == self.is_in(q) {
                return Err(DiagramError::Validation(format!(
                    "inconsistent orientation on edge at crossing {} slot {}",
                    self.crossings[p.c].id, p.s
                )));
            }
        }
        for x in &self.crossings {
            if x.under_in % 2 != 0 || x.over_in % 2 != 1 {
                return Err(DiagramError::Validation(format!("bad strand levels at crossing {}", x.id)));
            }
            if x.on_axis != x.axis_index.is_some() {
                return Err(DiagramError::Validation(format!("axis_index mismatch at crossing {}", x.id)));
            }
            if x.on_axis && x.mirror.is_some() {
                return Err(DiagramError::Validation(format!("on-axis crossing {} has a mirror partner", x.id)));
            }
        }
        let mut ids: Vec<u32> = self.crossings.iter().map(|x| x.id).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != n {
            return Err(DiagramError::Validation("duplicate crossing id".into()));
        }
        let mut axis: Vec<i64> = self.crossings.iter().filter_map(|x| x.axis_index).collect();
        let na = axis.len();
        axis.sort_unstable();
        axis.dedup();
        if axis.len() != na {
            return Err(DiagramError::Validation("duplicate axis_index".into()));
        }
        let faces = self.faces();
        for piece in self.pieces() {
            let f = faces.count_in_piece(&piece);
            if f != piece.len() + 2 {
                return Err(DiagramError::Validation(format!(
                    "Euler check failed: {} crossings but {} faces",
                    piece.len(),
                    f
                )));
            }
        }
        if let Some(r) = &self.rho {
            if r.len() != n {
                return Err(DiagramError::Validation("reflection table size".into()));
            }
        }
        Ok(())
    }

    /// Re-derive orientation: mirror components get mirror-reversed orientations,
    /// reflection-invariant ones keep the direction of their lowest trusted edge.
    pub fn reorient_symmetric(&mut self) {
        let trusted = vec![true; self.len()];
        self.reorient_with(&trusted);
    }

    pub(crate) fn reorient_with(&mut self, trusted: &[bool]) {
        let n = self.len();
        // unoriented strand cycles
        let mut comp = vec![[usize::MAX; 4]; n];
        let mut cycles: Vec<Vec<Port>> = Vec::new();
        for p in self.ports() {
            if comp[p.c][p.s as usize] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut q = p;
            loop {
                // q departs; its partner arrives
                let a = self.nbr(q);
                comp[q.c][q.s as usize] = id;
                comp[a.c][a.s as usize] = id;
                cyc.push(q);
                q = a.opposite();
                if q == p {
                    break;
                }
            }
            cycles.push(cyc);
        }
        // decide, per cycle, whether the listed ports are outgoing
        let mut outgoing: Vec<Option<bool>> = vec![None; cycles.len()];
        let pref = |cyc: &Vec<Port>| -> bool {
            let mut best: Option<(bool, Port, bool)> = None;
            for &q in cyc {
                let a = self.nbr(q);
                for (port, listed) in [(q, true), (a, false)] {
                    let t = trusted[port.c];
                    let cand = (!t, port, listed);
                    if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                        best = Some(cand);
                    }
                }
            }
            let (_, port, listed) = best.unwrap();
            // keep the stored direction of that port
            let stored_out = !self.is_in(port);
            if listed {
                stored_out
            } else {
                !stored_out
            }
        };
        let order: Vec<usize> = {
            let mut o: Vec<usize> = (0..cycles.len()).collect();
            o.sort_by_key(|&i| cycles[i].iter().map(|q| (!trusted[q.c], *q)).min());
            o
        };
        for i in order {
            if outgoing[i].is_some() {
                continue;
            }
            let dir = pref(&cycles[i]);
            outgoing[i] = Some(dir);
            if let Some(r) = &self.rho {
                let p = cycles[i][0];
                let rp = r[p.c][p.s as usize];
                let j = comp[rp.c][rp.s as usize];
                if j != i && outgoing[j].is_none() {
                    // rho(p) must have the opposite in/out status of p
                    let p_out = dir;
                    let rp_out = !p_out;
                    let listed = cycles[j].contains(&rp);
                    outgoing[j] = Some(if listed { rp_out } else { !rp_out });
                }
            }
        }
        for (i, cyc) in cycles.iter().enumerate() {
            let out = outgoing[i].unwrap();
            for &q in cyc {
                let a = self.nbr(q);
                let incoming = if out { a } else { q };
                let x = &mut self.crossings[incoming.c];
                if incoming.s % 2 == 0 {
                    x.under_in = incoming.s;
                } else {
                    x.over_in = incoming.s;
                }
            }
        }
    }

    /// Reverse the orientation of every strand.
    pub fn reversed(&self) -> Self {
        let mut d = self.clone();
        for x in &mut d.crossings {
            x.under_in = (x.under_in + 2) % 4;
            x.over_in = (x.over_in + 2) % 4;
        }
        d
    }

    /// Switch every crossing (mirror image in the projection plane).
    pub fn mirror_image(&self) -> Self {
        self.switched(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Exchange over and under at the given crossing indices.
    pub fn switched(&self, cs: &[usize]) -> Self {
        let mut draft = Draft::from_diagram(self);
        for &c in cs {
            draft.switch(c);
        }
        draft.finish()
    }
}
