//! Embedding template sides into host diagrams and performing the rewrite.

use super::tangle::{End, Side, Tangle};
use super::{Anchor, ArcPlace, EdgeRef, MoveError};
use crate::diagram::{Diagram, Draft, Ext, Faces, Inner, Patch, PatchRho, Port};
use std::collections::{BTreeMap, HashMap, HashSet};

/// A host edge given by its smaller port, or a segment of a free loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum HostEdge {
    Port(Port),
    Loop(usize, u8),
}

#[derive(Clone, Copy, Debug)]
struct ArcAt {
    edge: HostEdge,
    key: i32,
    near: usize,
    far: usize,
}

enum At {
    Match(Vec<(usize, u8)>),
    Arcs(Vec<ArcAt>),
}

struct Place {
    from: Tangle,
    to: Tangle,
    at: At,
}

fn host_port(phi: &[(usize, u8)], t: usize, k: u8) -> Port {
    Port::new(phi[t].0, (k + phi[t].1) % 4)
}

/// Maps a tangle component into the host starting from one crossing.
fn embed_component(d: &Diagram, t: &Tangle, comp: &[usize], start: (usize, u8)) -> Option<HashMap<usize, (usize, u8)>> {
    let mut phi = HashMap::new();
    phi.insert(comp[0], start);
    let mut stack = vec![comp[0]];
    while let Some(u) = stack.pop() {
        let (c, r) = phi[&u];
        for k in 0..4u8 {
            if let End::Arm(v, l) = t.arms[u][k as usize] {
                let q = d.nbr(Port::new(c, (k + r) % 4));
                let rv = (q.s + 4 - l) % 4;
                if rv % 2 != 0 {
                    return None;
                }
                match phi.get(&v) {
                    Some(&img) if img != (q.c, rv) => return None,
                    Some(_) => {}
                    None => {
                        phi.insert(v, (q.c, rv));
                        stack.push(v);
                    }
                }
            }
        }
    }
    Some(phi)
}

/// Full check of a crossing embedding, including axis flags and the reflection.
fn check_match(d: &Diagram, faces: &Faces, from: &Tangle, phi: &[(usize, u8)], paired: bool) -> bool {
    let n = from.len();
    let mut used = HashSet::new();
    for &(c, r) in phi {
        if c >= d.len() || r % 2 != 0 || !used.insert(c) {
            return false;
        }
    }
    for t in 0..n {
        for k in 0..4u8 {
            if let End::Arm(u, l) = from.arms[t][k as usize] {
                if d.nbr(host_port(phi, t, k)) != host_port(phi, u, l) {
                    return false;
                }
            }
        }
    }
    for region in from.regions() {
        let mut face = None;
        for side in region {
            if let Side::Corner(t, k) = side {
                let p = host_port(phi, t, k);
                let f = faces.corner(p.c, p.s);
                if face.is_some_and(|g| g != f) {
                    return false;
                }
                face = Some(f);
            }
        }
    }
    if d.rho.is_none() {
        return false;
    }
    if paired {
        if phi.iter().any(|&(c, _)| d.crossing(c).on_axis) {
            return false;
        }
        phi.iter().all(|&(c, _)| !used.contains(&d.rho(Port::new(c, 0)).unwrap().c))
    } else {
        if from.sym.is_none() {
            return false;
        }
        for t in 0..n {
            if d.crossing(phi[t].0).on_axis != from.on_axis[t] {
                return false;
            }
            for k in 0..4u8 {
                let (u, l) = from.rho[t][k as usize];
                if d.rho(host_port(phi, t, k)) != Some(host_port(phi, u, l)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Anchors of all candidate embeddings of `from`. Each still has to survive `realize`.
pub(super) fn candidates(d: &Diagram, from: &Tangle, paired: bool) -> Vec<Anchor> {
    if d.rho.is_none() {
        return Vec::new();
    }
    let comps = from.components();
    let arcs = from.arcs();
    if comps.is_empty() {
        return insertion_candidates(d, from, paired);
    }
    if !arcs.is_empty() {
        return Vec::new();
    }
    let faces = d.faces();
    let mut per_comp: Vec<Vec<HashMap<usize, (usize, u8)>>> = Vec::new();
    for comp in &comps {
        let mut found = Vec::new();
        for c in 0..d.len() {
            if !paired && d.crossing(c).on_axis != from.on_axis[comp[0]] {
                continue;
            }
            for r in [0u8, 2] {
                if let Some(m) = embed_component(d, from, comp, (c, r)) {
                    found.push(m);
                }
            }
        }
        if found.is_empty() {
            return Vec::new();
        }
        per_comp.push(found);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_comp.len()];
    loop {
        let mut phi = vec![(usize::MAX, 0u8); from.len()];
        for (ci, &i) in idx.iter().enumerate() {
            for (&t, &img) in &per_comp[ci][i] {
                phi[t] = img;
            }
        }
        if check_match(d, &faces, from, &phi, paired) {
            out.push(Anchor::Crossings(phi.iter().map(|&(c, r)| (d.crossing(c).id, r)).collect()));
        }
        // odometer over the component choices
        let mut j = 0;
        loop {
            if j == idx.len() {
                return out;
            }
            idx[j] += 1;
            if idx[j] < per_comp[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Whole,
    Tail,
    Mid,
    Head,
}

/// One step of a face boundary: a host edge and whether the face walk runs
/// along its canonical direction.
#[derive(Clone, Copy)]
struct Elem {
    edge: HostEdge,
    canonical: bool,
}

fn canonical_port(d: &Diagram, q: Port) -> (Port, bool) {
    let r = d.nbr(q);
    if q < r {
        (q, true)
    } else {
        (r, false)
    }
}

fn insertion_candidates(d: &Diagram, from: &Tangle, paired: bool) -> Vec<Anchor> {
    let faces = d.faces();
    let mut walks: Vec<Vec<(Elem, bool)>> = Vec::new();
    for f in 0..faces.count() {
        if !paired && !d.face_is_symmetric(&faces, f) {
            continue;
        }
        let w = faces.cycles[f]
            .iter()
            .map(|&q| {
                let (p0, canonical) = canonical_port(d, q);
                (Elem { edge: HostEdge::Port(p0), canonical }, d.edge_crosses_axis(q))
            })
            .collect();
        walks.push(w);
    }
    for (l, lp) in d.free_loops().iter().enumerate() {
        if lp.crosses_axis {
            walks.push((0..2).map(|s| (Elem { edge: HostEdge::Loop(l, s), canonical: true }, true)).collect());
        }
    }
    let mut out = Vec::new();
    for region in from.regions() {
        let arcs: Vec<(usize, usize)> = region
            .iter()
            .filter_map(|s| match *s {
                Side::Arc(i, j) => Some((i, j)),
                _ => None,
            })
            .collect();
        if arcs.len() != from.arcs().len() || region.iter().any(|s| matches!(s, Side::Corner(..))) {
            continue;
        }
        let fixed: Vec<bool> = arcs
            .iter()
            .map(|&(i, j)| !paired && from.sigma(i) == Some(j))
            .collect();
        for walk in &walks {
            let mut slots: Vec<(usize, Slot)> = Vec::new();
            for (e, &(_, axis)) in walk.iter().enumerate() {
                if axis {
                    slots.push((e, Slot::Tail));
                    if !paired {
                        slots.push((e, Slot::Mid));
                    }
                    slots.push((e, Slot::Head));
                } else {
                    slots.push((e, Slot::Whole));
                }
            }
            let mut pos = vec![0usize; arcs.len()];
            assign(&slots, &fixed, 0, &mut pos, &mut |pos: &[usize]| {
                out.push(Anchor::Arcs(place_arcs(d, walk, &slots, &arcs, pos)));
            });
        }
    }
    out
}

/// Enumerates nondecreasing unwrapped slot positions for the arcs in order.
fn assign(slots: &[(usize, Slot)], fixed: &[bool], j: usize, pos: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let l = slots.len();
    if j == pos.len() {
        emit(pos);
        return;
    }
    let range = if j == 0 { 0..l } else { pos[j - 1]..pos[0] + l + 1 };
    for u in range {
        let kind = slots[u % l].1;
        if (kind == Slot::Mid) != fixed[j] {
            continue;
        }
        if kind == Slot::Mid && pos[..j].iter().any(|p| p % l == u % l) {
            continue;
        }
        pos[j] = u;
        assign(slots, fixed, j + 1, pos, emit);
    }
}

fn place_arcs(d: &Diagram, walk: &[(Elem, bool)], slots: &[(usize, Slot)], arcs: &[(usize, usize)], pos: &[usize]) -> Vec<ArcPlace> {
    let l = slots.len();
    let first = pos[0];
    // physical order inside each slot along the walk
    let mut by_slot: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&j| {
        let wrapped = pos[j] >= first + l;
        (pos[j] % l, !wrapped && pos[j] % l == first % l, j)
    });
    for j in order {
        by_slot.entry(pos[j] % l).or_default().push(j);
    }
    let mut out = vec![None; arcs.len()];
    for (s, js) in by_slot {
        let (e, kind) = slots[s];
        let elem = walk[e].0;
        let m = js.len() as i32;
        let (lo, hi) = match kind {
            Slot::Whole => (0, 200),
            Slot::Tail => (0, 100),
            Slot::Head => (100, 200),
            Slot::Mid => (100, 100),
        };
        for (i, &j) in js.iter().enumerate() {
            let kt = if kind == Slot::Mid { 100 } else { lo + (hi - lo) * (i as i32 + 1) / (m + 1) };
            let (a, b) = arcs[j];
            let (key, near, far) = if elem.canonical { (kt, a, b) } else { (200 - kt, b, a) };
            let edge = match elem.edge {
                HostEdge::Port(p) => EdgeRef::Edge { id: d.crossing(p.c).id, slot: p.s },
                HostEdge::Loop(i, s) => EdgeRef::Loop { index: i, segment: s },
            };
            out[j] = Some(ArcPlace { edge, key, near, far });
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

fn resolve(d: &Diagram, from: &Tangle, anchor: &Anchor) -> Result<At, MoveError> {
    let mismatch = |m: &str| MoveError::SiteMismatch(m.to_string());
    match anchor {
        Anchor::Crossings(v) => {
            if v.len() != from.len() {
                return Err(mismatch("crossing count"));
            }
            let phi = v
                .iter()
                .map(|&(id, r)| d.index_of_id(id).map(|c| (c, r)).ok_or_else(|| mismatch("unknown crossing id")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(At::Match(phi))
        }
        Anchor::Arcs(v) => {
            if v.len() != from.arcs().len() || !from.is_empty() {
                return Err(mismatch("arc count"));
            }
            let mut out = Vec::new();
            for a in v {
                let edge = match a.edge {
                    EdgeRef::Edge { id, slot } => {
                        let c = d.index_of_id(id).ok_or_else(|| mismatch("unknown crossing id"))?;
                        let p = Port::new(c, slot % 4);
                        if d.nbr(p) < p {
                            return Err(mismatch("edge is not given by its smaller port"));
                        }
                        HostEdge::Port(p)
                    }
                    EdgeRef::Loop { index, segment } => {
                        if index >= d.free_loops().len() || segment > 1 {
                            return Err(mismatch("unknown free loop"));
                        }
                        HostEdge::Loop(index, segment)
                    }
                };
                if a.near >= from.points() || a.far >= from.points() || from.bnd[a.near] != End::Bnd(a.far) {
                    return Err(mismatch("arc endpoints"));
                }
                out.push(ArcAt { edge, key: a.key, near: a.near, far: a.far });
            }
            Ok(At::Arcs(out))
        }
    }
}

fn mirror(d: &Diagram, at: &At, k: usize) -> At {
    let rho = |p: Port| d.rho(p).expect("reflection data");
    let m = |i: usize| k - 1 - i;
    match at {
        At::Match(phi) => At::Match(
            phi.iter()
                .map(|&(c, r)| {
                    let q = rho(Port::new(c, r));
                    (q.c, q.s)
                })
                .collect(),
        ),
        At::Arcs(v) => At::Arcs(
            v.iter()
                .map(|a| match a.edge {
                    HostEdge::Port(p0) => {
                        let (a0, b0) = (rho(p0), rho(d.nbr(p0)));
                        if a0 < b0 {
                            ArcAt { edge: HostEdge::Port(a0), key: a.key, near: m(a.near), far: m(a.far) }
                        } else {
                            ArcAt { edge: HostEdge::Port(b0), key: 200 - a.key, near: m(a.far), far: m(a.near) }
                        }
                    }
                    HostEdge::Loop(l, s) => ArcAt { edge: HostEdge::Loop(l, s), key: 200 - a.key, near: m(a.far), far: m(a.near) },
                })
                .collect(),
        ),
    }
}

fn inner_of(e: End) -> Inner {
    match e {
        End::Arm(t, k) => Inner::Arm(t, k),
        End::Bnd(i) => Inner::Bnd(i),
    }
}

/// Rewrites `d` by replacing the embedded `from` side with `to`.
pub(super) fn realize(d: &Diagram, from: &Tangle, to: &Tangle, paired: bool, anchor: &Anchor) -> Result<Diagram, MoveError> {
    if d.rho.is_none() {
        return Err(MoveError::NoSymmetry);
    }
    let at = resolve(d, from, anchor)?;
    if let At::Match(phi) = &at {
        if !check_match(d, &d.faces(), from, phi, paired) {
            return Err(MoveError::SiteMismatch("template does not embed here".into()));
        }
    }
    let k = from.points();
    let mut places = Vec::new();
    if paired {
        let b = mirror(d, &at, k);
        places.push(Place { from: from.clone(), to: to.clone(), at });
        places.push(Place { from: from.reflected(), to: to.reflected(), at: b });
    } else {
        places.push(Place { from: from.clone(), to: to.clone(), at });
    }
    let mut ext: Vec<Vec<Option<Ext>>> = places.iter().map(|_| vec![None; k]).collect();
    let mut remove = vec![Vec::new(); places.len()];
    let mut remove_loops = Vec::new();
    // boundary ports of matched sites
    let mut bmap: HashMap<Port, (usize, usize)> = HashMap::new();
    let mut removed: HashSet<usize> = HashSet::new();
    for (pi, pl) in places.iter().enumerate() {
        if let At::Match(phi) = &pl.at {
            for &(c, _) in phi.iter() {
                if !removed.insert(c) {
                    return Err(MoveError::SiteMismatch("overlapping sites".into()));
                }
                remove[pi].push(c);
            }
            for i in 0..k {
                match pl.from.bnd[i] {
                    End::Arm(t, kk) => {
                        bmap.insert(host_port(phi, t, kk), (pi, i));
                    }
                    End::Bnd(_) => return Err(MoveError::SiteMismatch("mixed template side".into())),
                }
            }
        }
    }
    let mut on_edge: BTreeMap<HostEdge, Vec<(i32, usize, usize, usize)>> = BTreeMap::new();
    for (pi, pl) in places.iter().enumerate() {
        match &pl.at {
            At::Match(phi) => {
                for i in 0..k {
                    let End::Arm(t, kk) = pl.from.bnd[i] else { unreachable!() };
                    let o = d.nbr(host_port(phi, t, kk));
                    ext[pi][i] = Some(if let Some(&(pj, j)) = bmap.get(&o) {
                        Ext::Bnd(pj, j)
                    } else if removed.contains(&o.c) {
                        return Err(MoveError::SiteMismatch("site is not a disk".into()));
                    } else {
                        Ext::Port(o)
                    });
                }
            }
            At::Arcs(v) => {
                for a in v {
                    on_edge.entry(a.edge).or_default().push((a.key, pi, a.near, a.far));
                }
            }
        }
    }
    let mut loops: BTreeMap<usize, Vec<((u8, i32), usize, usize, usize)>> = BTreeMap::new();
    for (edge, mut v) in on_edge {
        v.sort_unstable();
        if v.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(MoveError::SiteMismatch("coincident arc positions".into()));
        }
        match edge {
            HostEdge::Port(p0) => {
                let mut prev = Ext::Port(p0);
                for &(_, pi, near, far) in &v {
                    ext[pi][near] = Some(prev);
                    if let Ext::Bnd(pj, j) = prev {
                        ext[pj][j] = Some(Ext::Bnd(pi, near));
                    }
                    prev = Ext::Bnd(pi, far);
                }
                let &(_, pi, _, far) = v.last().unwrap();
                ext[pi][far] = Some(Ext::Port(d.nbr(p0)));
            }
            HostEdge::Loop(l, s) => {
                loops.entry(l).or_default().extend(v.iter().map(|&(key, pi, n, f)| ((s, key), pi, n, f)));
            }
        }
    }
    for (l, mut v) in loops {
        v.sort_unstable();
        remove_loops.push(l);
        for i in 0..v.len() {
            let (_, pi, near, _) = v[i];
            let (_, pj, _, far) = v[(i + v.len() - 1) % v.len()];
            ext[pi][near] = Some(Ext::Bnd(pj, far));
            ext[pj][far] = Some(Ext::Bnd(pi, near));
        }
    }
    let mut patches = Vec::new();
    for (pi, pl) in places.iter().enumerate() {
        let ext: Vec<Ext> = ext[pi]
            .iter()
            .map(|e| e.ok_or_else(|| MoveError::SiteMismatch("boundary point left unattached".into())))
            .collect::<Result<_, _>>()?;
        let rho = if paired {
            PatchRho::Partner(1 - pi)
        } else {
            PatchRho::Within {
                arms: pl.to.rho.clone(),
                sigma: (0..k).map(|i| pl.to.sigma(i).expect("symmetric template")).collect(),
            }
        };
        patches.push(Patch {
            remove: remove[pi].clone(),
            remove_loops: if pi == 0 { remove_loops.clone() } else { Vec::new() },
            ext,
            inner: pl.to.bnd.iter().map(|&e| inner_of(e)).collect(),
            arms: pl.to.arms.iter().map(|row| row.map(inner_of)).collect(),
            on_axis: pl.to.on_axis.clone(),
            rho,
        });
    }
    let mut draft = Draft::from_diagram(d);
    draft.splice(&patches);
    let old = draft.old_axis_ranks();
    let mut out = draft.finish_reoriented();
    out.renumber_axis(&old);
    out.validate().map_err(|e| MoveError::Invalid(e.to_string()))?;
    let report = out.validate_symmetric_union();
    if !report.passed() {
        return Err(MoveError::Invalid(format!("{:?}", report.failures)));
    }
    Ok(out)
}

/// Closes a symmetric tangle by joining boundary points along `pairs`.
pub(super) fn closure(t: &Tangle, pairs: &[(usize, usize)]) -> Diagram {
    let k = t.points();
    let mut ext = vec![Ext::Bnd(0, 0); k];
    for &(i, j) in pairs {
        ext[i] = Ext::Bnd(0, j);
        ext[j] = Ext::Bnd(0, i);
    }
    let patch = Patch {
        remove: Vec::new(),
        remove_loops: Vec::new(),
        ext,
        inner: t.bnd.iter().map(|&e| inner_of(e)).collect(),
        arms: t.arms.iter().map(|row| row.map(inner_of)).collect(),
        on_axis: t.on_axis.clone(),
        rho: PatchRho::Within { arms: t.rho.clone(), sigma: (0..k).map(|i| t.sigma(i).expect("symmetric tangle")).collect() },
    };
    let mut draft = Draft::from_diagram(&Diagram::unlink(0, false));
    draft.splice(&[patch]);
    let mut d = draft.finish_reoriented();
    d.renumber_axis(&[]);
    d
}
