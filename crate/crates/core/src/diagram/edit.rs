//! Mutable working copy used by rewrites (smoothing, twisting, moves).

use super::{Crossing, Diagram, FreeLoop, Port};

#[derive(Clone, Debug)]
pub(crate) struct DX {
    pub id: u32,
    pub nbr: [Port; 4],
    pub under_in: u8,
    pub over_in: u8,
    pub on_axis: bool,
    pub axis_key: (i64, i64),
    pub mirror: Option<usize>,
    pub rho: [Port; 4],
    pub fresh: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Draft {
    pub xs: Vec<Option<DX>>,
    pub loops: Vec<FreeLoop>,
    pub has_rho: bool,
    pub outer_hint: Option<Port>,
    next_id: u32,
}

impl Draft {
    pub fn from_diagram(d: &Diagram) -> Self {
        let xs = d
            .crossings
            .iter()
            .enumerate()
            .map(|(i, x)| {
                Some(DX {
                    id: x.id,
                    nbr: x.nbr,
                    under_in: x.under_in,
                    over_in: x.over_in,
                    on_axis: x.on_axis,
                    axis_key: (x.axis_index.unwrap_or(0), 0),
                    mirror: x.mirror,
                    rho: d.rho.as_ref().map_or([Port::new(i, 0); 4], |r| r[i]),
                    fresh: false,
                })
            })
            .collect();
        Self {
            xs,
            loops: d.free_loops.clone(),
            has_rho: d.rho.is_some(),
            outer_hint: d.outer_hint,
            next_id: d.crossings.iter().map(|x| x.id + 1).max().unwrap_or(1),
        }
    }

    pub fn x(&self, c: usize) -> &DX {
        self.xs[c].as_ref().expect("live crossing")
    }

    pub fn xm(&mut self, c: usize) -> &mut DX {
        self.xs[c].as_mut().expect("live crossing")
    }

    pub fn link(&mut self, p: Port, q: Port) {
        self.xm(p.c).nbr[p.s as usize] = q;
        self.xm(q.c).nbr[q.s as usize] = p;
    }

    pub fn fresh_id(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    /// Adds a crossing; its links must be set afterwards.
    pub fn add(&mut self, on_axis: bool, axis_key: (i64, i64)) -> usize {
        let id = self.fresh_id();
        let c = self.xs.len();
        self.xs.push(Some(DX {
            id,
            nbr: [Port::new(c, 0); 4],
            under_in: 0,
            over_in: 1,
            on_axis,
            axis_key,
            mirror: None,
            rho: [Port::new(c, 0); 4],
            fresh: true,
        }));
        c
    }

    /// Removes crossing `c`, joining its slots along `pairs` (a perfect matching of
    /// the four slots). Closed circuits become free loops.
    pub fn remove_join(&mut self, c: usize, pairs: [(u8, u8); 2]) {
        let x = self.x(c).clone();
        let mate = |s: u8| -> u8 {
            for (a, b) in pairs {
                if a == s {
                    return b;
                }
                if b == s {
                    return a;
                }
            }
            unreachable!("pairs must match all slots")
        };
        let internal = |s: u8| -> Option<u8> {
            let q = x.nbr[s as usize];
            (q.c == c).then_some(q.s)
        };
        let mut done = [false; 4];
        let mut joins = Vec::new();
        let mut loops = Vec::new();
        for s in 0..4u8 {
            if done[s as usize] || internal(s).is_some() {
                continue;
            }
            // walk from an externally attached slot
            let mut cur = s;
            let mut axis = false;
            done[cur as usize] = true;
            loop {
                let m = mate(cur);
                axis |= self.has_rho && x.rho[cur as usize] == Port::new(c, m);
                done[m as usize] = true;
                match internal(m) {
                    Some(z) => {
                        axis |= self.has_rho && x.rho[m as usize] == Port::new(c, z);
                        done[z as usize] = true;
                        cur = z;
                    }
                    None => {
                        joins.push((x.nbr[s as usize], x.nbr[m as usize]));
                        break;
                    }
                }
            }
            let _ = axis;
        }
        for s in 0..4u8 {
            if done[s as usize] {
                continue;
            }
            // closed circuit inside the crossing
            let mut cur = s;
            let mut axis = false;
            loop {
                done[cur as usize] = true;
                let m = mate(cur);
                axis |= self.has_rho && x.rho[cur as usize] == Port::new(c, m);
                done[m as usize] = true;
                let z = internal(m).expect("closed circuit");
                axis |= self.has_rho && x.rho[m as usize] == Port::new(c, z);
                if z == s {
                    break;
                }
                cur = z;
            }
            loops.push(axis);
        }
        self.xs[c] = None;
        for (p, q) in joins {
            self.link(p, q);
        }
        for a in loops {
            self.loops.push(FreeLoop { crosses_axis: a });
        }
    }

    /// Renames the slots of crossing `c`: old slot s becomes `perm[s]`.
    pub fn relabel(&mut self, c: usize, perm: [u8; 4]) {
        let map = |p: Port| if p.c == c { Port::new(c, perm[p.s as usize]) } else { p };
        let old = self.x(c).clone();
        // references from neighbours and reflection partners
        for s in 0..4usize {
            let q = old.nbr[s];
            if q.c != c {
                self.xm(q.c).nbr[q.s as usize] = Port::new(c, perm[s]);
            }
        }
        if self.has_rho {
            for s in 0..4usize {
                let q = old.rho[s];
                if q.c != c {
                    self.xm(q.c).rho[q.s as usize] = Port::new(c, perm[s]);
                }
            }
        }
        let x = self.xm(c);
        for s in 0..4usize {
            x.nbr[perm[s] as usize] = map(old.nbr[s]);
            x.rho[perm[s] as usize] = map(old.rho[s]);
        }
        x.under_in = perm[old.under_in as usize];
        x.over_in = perm[old.over_in as usize];
        if x.under_in % 2 == 1 {
            std::mem::swap(&mut x.under_in, &mut x.over_in);
        }
    }

    /// Exchanges over- and under-strand, keeping the orientation.
    pub fn switch(&mut self, c: usize) {
        self.relabel(c, [3, 0, 1, 2]);
    }

    /// Compacts indices, re-ranks axis positions, and optionally re-orients.
    pub fn finish(self) -> Diagram {
        self.finish_inner(false)
    }

    pub fn finish_reoriented(self) -> Diagram {
        self.finish_inner(true)
    }

    fn finish_inner(self, reorient: bool) -> Diagram {
        let mut new_index = vec![usize::MAX; self.xs.len()];
        let mut k = 0;
        for (i, x) in self.xs.iter().enumerate() {
            if x.is_some() {
                new_index[i] = k;
                k += 1;
            }
        }
        let remap = |p: Port| Port::new(new_index[p.c], p.s);
        let mut keys: Vec<((i64, i64), usize)> = Vec::new();
        let mut crossings = Vec::with_capacity(k);
        let mut rho = Vec::with_capacity(k);
        let mut trusted = Vec::with_capacity(k);
        for x in self.xs.iter().flatten() {
            let i = crossings.len();
            if x.on_axis {
                keys.push((x.axis_key, i));
            }
            crossings.push(Crossing {
                id: x.id,
                nbr: x.nbr.map(remap),
                under_in: x.under_in,
                over_in: x.over_in,
                on_axis: x.on_axis,
                axis_index: None,
                mirror: x.mirror.map(|m| new_index[m]),
            });
            rho.push(x.rho.map(remap));
            trusted.push(!x.fresh);
        }
        keys.sort();
        for (r, (_, i)) in keys.into_iter().enumerate() {
            crossings[i].axis_index = Some(r as i64);
        }
        let outer_hint = self.outer_hint.filter(|p| new_index[p.c] != usize::MAX).map(remap);
        let mut d = Diagram {
            crossings,
            free_loops: self.loops,
            rho: self.has_rho.then_some(rho),
            outer_hint,
        };
        if reorient {
            d.reorient_with(&trusted);
        }
        d
    }
}

/// What lies outside a boundary point of a patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ext {
    Port(Port),
    /// Boundary point `.1` of patch `.0`, reached without meeting a crossing.
    Bnd(usize, usize),
}

/// Inside a patch: boundary point `i` connects to an arm of a new crossing or
/// straight to another boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Inner {
    Arm(usize, u8),
    Bnd(usize),
}

/// Replacement of a disk: old crossings and loops out, new crossings in.
#[derive(Clone, Debug)]
pub(crate) struct Patch {
    pub remove: Vec<usize>,
    pub remove_loops: Vec<usize>,
    pub ext: Vec<Ext>,
    pub inner: Vec<Inner>,
    /// Links among new arms: `arms[t][k]` for each new crossing t.
    pub arms: Vec<[Inner; 4]>,
    pub on_axis: Vec<bool>,
    /// Reflection of new arms: within this patch, or onto a partner patch.
    pub rho: PatchRho,
}

#[derive(Clone, Debug)]
pub(crate) enum PatchRho {
    Within { arms: Vec<[(usize, u8); 4]>, sigma: Vec<usize> },
    /// Mirror image of the partner patch, with slot k reflected to -k.
    Partner(usize),
}

impl Draft {
    /// Applies patches simultaneously. Returns the new crossing indices per patch.
    pub fn splice(&mut self, patches: &[Patch]) -> Vec<Vec<usize>> {
        let mut new: Vec<Vec<usize>> = Vec::with_capacity(patches.len());
        for p in patches {
            new.push(p.on_axis.iter().map(|&a| self.add(a, (i64::MAX, 0))).collect());
        }
        for (pi, p) in patches.iter().enumerate() {
            for (t, row) in p.arms.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    if let Inner::Arm(u, l) = *e {
                        let a = Port::new(new[pi][t], k as u8);
                        self.xm(a.c).nbr[k] = Port::new(new[pi][u], l);
                    }
                }
                let c = new[pi][t];
                let x = self.xm(c);
                x.under_in = 0;
                x.over_in = 1;
                match &p.rho {
                    PatchRho::Within { arms, .. } => {
                        let img = arms[t];
                        x.rho = img.map(|(u, l)| Port::new(new[pi][u], l));
                        if img[0].0 != t {
                            x.mirror = Some(new[pi][img[0].0]);
                        }
                    }
                    PatchRho::Partner(q) => {
                        let d = new[*q][t];
                        x.rho = std::array::from_fn(|k| Port::new(d, ((4 - k) % 4) as u8));
                        x.mirror = Some(d);
                    }
                }
            }
        }
        let real_inner = |pi: usize, i: usize| -> Option<Port> {
            match patches[pi].inner[i] {
                Inner::Arm(t, k) => Some(Port::new(new[pi][t], k)),
                Inner::Bnd(_) => None,
            }
        };
        // walk from one side of a boundary node to the far real port
        let far = |pi: usize, i: usize, from_outside: bool, seen: &mut Vec<Vec<bool>>| -> Option<Port> {
            let (mut pi, mut i, mut outside) = (pi, i, from_outside);
            loop {
                seen[pi][i] = true;
                if outside {
                    // entered from outside: continue inwards
                    match patches[pi].inner[i] {
                        Inner::Arm(..) => return real_inner(pi, i),
                        Inner::Bnd(j) => {
                            i = j;
                            seen[pi][i] = true;
                            outside = false;
                        }
                    }
                } else {
                    match patches[pi].ext[i] {
                        Ext::Port(q) => return Some(q),
                        Ext::Bnd(pj, j) => {
                            pi = pj;
                            i = j;
                            outside = true;
                        }
                    }
                }
            }
        };
        let mut seen: Vec<Vec<bool>> = patches.iter().map(|p| vec![false; p.ext.len()]).collect();
        let mut links = Vec::new();
        for (pi, p) in patches.iter().enumerate() {
            for i in 0..p.ext.len() {
                if seen[pi][i] {
                    continue;
                }
                // start at a node with a real port on at least one side
                if let Some(a) = real_inner(pi, i) {
                    let b = far(pi, i, false, &mut seen).expect("open walk");
                    links.push((a, b));
                } else if let Ext::Port(a) = p.ext[i] {
                    let b = far(pi, i, true, &mut seen).expect("open walk");
                    links.push((a, b));
                }
            }
        }
        // closed circuits through boundary nodes only
        let partner = |pi: usize, i: usize| -> (usize, usize) {
            match &patches[pi].rho {
                PatchRho::Within { sigma, .. } => (pi, sigma[i]),
                PatchRho::Partner(q) => (*q, patches[pi].ext.len() - 1 - i),
            }
        };
        let mut loops = Vec::new();
        for (pi, p) in patches.iter().enumerate() {
            for i in 0..p.ext.len() {
                if seen[pi][i] {
                    continue;
                }
                let mut members = Vec::new();
                let (mut a, mut b) = (pi, i);
                loop {
                    seen[a][b] = true;
                    members.push((a, b));
                    let Inner::Bnd(j) = patches[a].inner[b] else { unreachable!() };
                    seen[a][j] = true;
                    members.push((a, j));
                    let Ext::Bnd(a2, b2) = patches[a].ext[j] else { unreachable!() };
                    if seen[a2][b2] {
                        break;
                    }
                    a = a2;
                    b = b2;
                }
                members.sort_unstable();
                let mut img: Vec<(usize, usize)> = members.iter().map(|&(a, b)| partner(a, b)).collect();
                img.sort_unstable();
                loops.push(self.has_rho && img == members);
            }
        }
        for p in patches {
            for &c in &p.remove {
                self.xs[c] = None;
            }
        }
        let mut drop: Vec<usize> = patches.iter().flat_map(|p| p.remove_loops.iter().copied()).collect();
        drop.sort_unstable();
        drop.dedup();
        for l in drop.into_iter().rev() {
            self.loops.remove(l);
        }
        for (a, b) in links {
            self.link(a, b);
        }
        for a in loops {
            self.loops.push(FreeLoop { crosses_axis: a });
        }
        new
    }

    /// Ids and old axis indices of crossings that survive from the source diagram.
    pub fn old_axis_ranks(&self) -> Vec<(u32, i64)> {
        self.xs.iter().flatten().filter(|x| !x.fresh && x.on_axis).map(|x| (x.id, x.axis_key.0)).collect()
    }
}
