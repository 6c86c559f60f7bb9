//! Decomposition of the composite S4(m,n) and S2(±,n) moves into elementary moves.

use super::catalog::templates;
use super::site::closure;
use super::tangle::Tangle;
use super::{find_site_to, sites_with_results, apply_site, Direction, MoveError, MoveKind, MoveSite};
use crate::diagram::{canonical_form, Diagram};
use std::collections::{HashMap, HashSet};

pub type Step = MoveSite;

/// Largest |m|, |n| accepted by `expand_composite`.
pub const COMPOSITE_BOUND: i32 = 4;

/// A decomposition: the host pair it was computed on and the elementary steps.
#[derive(Clone, Debug)]
pub struct Script {
    pub start: Diagram,
    pub target: Diagram,
    pub steps: Vec<Step>,
}

/// Applies steps in order, returning every diagram along the way (start included).
pub fn run_script(start: &Diagram, steps: &[Step]) -> Result<Vec<Diagram>, MoveError> {
    let mut out = vec![start.clone()];
    for s in steps {
        let next = apply_site(out.last().unwrap(), s)?;
        out.push(next);
    }
    Ok(out)
}

/// Non-crossing perfect matchings of `k` points on a circle.
fn matchings(pts: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if pts.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (1..pts.len()).step_by(2) {
        for inside in matchings(&pts[1..j]) {
            for outside in matchings(&pts[j + 1..]) {
                let mut m = vec![(pts[0], pts[j])];
                m.extend(inside.iter().copied());
                m.extend(outside);
                out.push(m);
            }
        }
    }
    out
}

fn is_knot(d: &Diagram) -> bool {
    d.component_count() == 1 && d.validate().is_ok() && d.validate_symmetric_union().passed()
}

/// Closes both sides of a template with the same symmetric outer arcs so that
/// both become symmetric union knot diagrams.
pub fn close_pair(lhs: &Tangle, rhs: &Tangle) -> Option<(Diagram, Diagram)> {
    let k = lhs.points();
    let pts: Vec<usize> = (0..k).collect();
    for m in matchings(&pts) {
        let sym = m.iter().all(|&(i, j)| {
            let (a, b) = (lhs.sigma(i).unwrap(), lhs.sigma(j).unwrap());
            m.contains(&(a, b)) || m.contains(&(b, a))
        });
        if !sym {
            continue;
        }
        let (a, b) = (closure(lhs, &m), closure(rhs, &m));
        if is_knot(&a) && is_knot(&b) {
            return Some((a, b));
        }
    }
    None
}

fn check_bound(kind: MoveKind) -> Result<(), MoveError> {
    let (m, n) = match kind {
        MoveKind::S4mn(m, n) => (m, n),
        MoveKind::S2pmn(_, n) => (0, n),
        _ => return Err(MoveError::UnsupportedSigns(format!("{kind} is not composite"))),
    };
    if m.abs() > COMPOSITE_BOUND || n.abs() > COMPOSITE_BOUND {
        return Err(MoveError::OutOfBound(kind.to_string()));
    }
    Ok(())
}

/// Host diagrams for a composite kind: closures of its two sides.
pub fn composite_hosts(kind: MoveKind) -> Result<(Diagram, Diagram), MoveError> {
    check_bound(kind)?;
    let t = templates(kind).into_iter().next().expect("composite master");
    close_pair(&t.lhs, &t.rhs).ok_or_else(|| MoveError::NoDecomposition(format!("no symmetric closure of {kind}")))
}

/// Elementary script for a composite move, computed on its closed host.
pub fn expand_composite(kind: MoveKind) -> Result<Script, MoveError> {
    if let MoveKind::S2pmn(s, n) = kind {
        if s > 0 || n > 0 {
            return Err(MoveError::UnsupportedSigns(kind.to_string()));
        }
    }
    let (start, target) = composite_hosts(kind)?;
    let (steps, _) = between(&start, &target, kind)?;
    Ok(Script { start, target, steps })
}

/// Steps turning `a` into a diagram with the canonical form of `b`, where the
/// two differ by one `kind` move. Returns the steps and the final diagram.
fn between(a: &Diagram, b: &Diagram, kind: MoveKind) -> Result<(Vec<Step>, Diagram), MoveError> {
    let goal = canonical_form(b);
    let none = || MoveError::NoDecomposition(kind.to_string());
    match kind {
        MoveKind::S4mn(m, n) if m == 0 || n == 0 => chain_to(a, &goal, MoveKind::R2sym, Direction::Forward, 2).ok_or_else(none),
        MoveKind::S4mn(m, n) if m.abs() == 1 && n.abs() == 1 => single(a, &goal, MoveKind::S4),
        MoveKind::S4mn(m, n) => {
            let (sm, sn) = (m.signum(), n.signum());
            let (first, second) = if m.abs() > 1 {
                (MoveKind::S4mn(sm, n), MoveKind::S4mn(m - sm, n))
            } else {
                (MoveKind::S4mn(m, sn), MoveKind::S4mn(m, n - sn))
            };
            for (x, y) in [(first, second), (second, first)] {
                if let Some(r) = split_s4(a, b, &goal, x, y)? {
                    return Ok(r);
                }
            }
            Err(none())
        }
        MoveKind::S2pmn(_, 0) => chain_to(a, &goal, MoveKind::R1sym, Direction::Forward, 2).ok_or_else(none),
        MoveKind::S2pmn(_, n) if n.abs() == 1 => single(a, &goal, MoveKind::S2pm),
        MoveKind::S2pmn(s, n) if s < 0 && n < 0 => split_s2(a, b, &goal, n),
        MoveKind::S2pmn(..) => Err(MoveError::UnsupportedSigns(kind.to_string())),
        _ => single(a, &goal, kind),
    }
}

fn single(a: &Diagram, goal: &str, kind: MoveKind) -> Result<(Vec<Step>, Diagram), MoveError> {
    find_site_to(a, kind, Direction::Forward, goal)
        .map(|(s, d)| (vec![s], d))
        .ok_or_else(|| MoveError::NoDecomposition(kind.to_string()))
}

/// Up to `depth` moves of one kind and direction from `a` to `goal`.
fn chain_to(a: &Diagram, goal: &str, kind: MoveKind, dir: Direction, depth: usize) -> Option<(Vec<Step>, Diagram)> {
    let path = path_to(a, goal, kind, dir, depth)?;
    let end = path.last().map_or_else(|| a.clone(), |p| p.1.clone());
    Some((path.into_iter().map(|p| p.0).collect(), end))
}

pub(super) fn path_to(a: &Diagram, goal: &str, kind: MoveKind, dir: Direction, depth: usize) -> Option<Vec<(Step, Diagram)>> {
    if canonical_form(a) == goal {
        return Some(Vec::new());
    }
    if depth == 0 {
        return None;
    }
    let mut seen = HashSet::new();
    for (s, d) in sites_with_results(a, kind, dir) {
        if !seen.insert(canonical_form(&d)) {
            continue;
        }
        if let Some(mut rest) = path_to(&d, goal, kind, dir, depth - 1) {
            rest.insert(0, (s, d));
            return Some(rest);
        }
    }
    None
}

/// Replays a path found backwards (each entry reached from the next by a move
/// of `kind` in `dir`) forwards from `a`, using the opposite direction.
pub(super) fn undo_path(a: &Diagram, back: &[Diagram], kind: MoveKind, dir: Direction) -> Option<(Vec<Step>, Diagram)> {
    let mut cur = a.clone();
    let mut steps = Vec::new();
    for d in back.iter().rev() {
        let (s, next) = find_site_to(&cur, kind, dir.inverse(), &canonical_form(d))?;
        steps.push(s);
        cur = next;
    }
    Some((steps, cur))
}

/// S4(m,n) as symmetric R2 insertions, then `x`, then `y`: searched backwards from `b`.
fn split_s4(a: &Diagram, b: &Diagram, goal: &str, x: MoveKind, y: MoveKind) -> Result<Option<(Vec<Step>, Diagram)>, MoveError> {
    let start = canonical_form(a);
    for (_, c) in sites_with_results(b, y, Direction::Reverse) {
        for (_, bb) in sites_with_results(&c, x, Direction::Reverse) {
            // bb must reduce to a by removing bigons
            let Some(path) = path_to(&bb, &start, MoveKind::R2sym, Direction::Forward, 2) else { continue };
            // diagrams from bb down to just before a
            let mut back = vec![bb.clone()];
            back.extend(path.iter().take(path.len().saturating_sub(1)).map(|p| p.1.clone()));
            let Some((ins, cur)) = undo_path(a, &back, MoveKind::R2sym, Direction::Forward) else { continue };
            let mut steps = ins;
            let (s1, cur) = between(&cur, &c, x)?;
            steps.extend(s1);
            let (s2, cur) = between(&cur, b, y)?;
            steps.extend(s2);
            if canonical_form(&cur) != goal {
                continue;
            }
            return Ok(Some((steps, cur)));
        }
    }
    Ok(None)
}

/// Breadth-first tree of diagrams keyed by canonical form, recording the
/// move that first reached each one.
struct Tree {
    nodes: HashMap<String, Node>,
}

struct Node {
    parent: Option<String>,
    via: Option<(MoveKind, Direction)>,
    diagram: Diagram,
}

impl Tree {
    fn new(root: &Diagram) -> (Self, Vec<String>) {
        let key = canonical_form(root);
        let mut nodes = HashMap::new();
        nodes.insert(key.clone(), Node { parent: None, via: None, diagram: root.clone() });
        (Self { nodes }, vec![key])
    }

    /// Expands `frontier` by the given moves. The returned layer includes the
    /// old frontier when `keep` is set.
    fn grow(&mut self, frontier: &[String], moves: &[(MoveKind, Direction)], cap: usize, keep: bool) -> Vec<String> {
        let mut next = if keep { frontier.to_vec() } else { Vec::new() };
        for key in frontier {
            let d = self.nodes[key].diagram.clone();
            for &(kind, dir) in moves {
                for (_, r) in sites_with_results(&d, kind, dir) {
                    if r.len() > cap {
                        continue;
                    }
                    let k = canonical_form(&r);
                    if self.nodes.contains_key(&k) {
                        continue;
                    }
                    self.nodes.insert(k.clone(), Node { parent: Some(key.clone()), via: Some((kind, dir)), diagram: r });
                    next.push(k);
                }
            }
        }
        next
    }

    /// Edges from the root to `key`: the move and the diagram it reached.
    fn path(&self, key: &str) -> Vec<((MoveKind, Direction), Diagram)> {
        let mut out = Vec::new();
        let mut k = key.to_string();
        while let Some(node) = self.nodes.get(&k) {
            let (Some(p), Some(via)) = (&node.parent, node.via) else { break };
            out.push((via, node.diagram.clone()));
            k = p.clone();
        }
        out.reverse();
        out
    }
}

/// One `kind` move in direction `dir` from `a` to (the canonical form of) `b`,
/// expanded into elementary steps when the kind is composite.
fn step_to(a: &Diagram, b: &Diagram, kind: MoveKind, dir: Direction) -> Result<(Vec<Step>, Diagram), MoveError> {
    if !kind.is_composite() {
        return find_site_to(a, kind, dir, &canonical_form(b))
            .map(|(s, d)| (vec![s], d))
            .ok_or_else(|| MoveError::NoDecomposition(kind.to_string()));
    }
    if dir == Direction::Forward {
        return between(a, b, kind);
    }
    // expand b -> a, then walk it back from a
    let (steps, _) = between(b, a, kind)?;
    let seq = run_script(b, &steps)?;
    let mut cur = a.clone();
    let mut out = Vec::new();
    for i in (0..steps.len()).rev() {
        let (s, next) = find_site_to(&cur, steps[i].kind, steps[i].direction.inverse(), &canonical_form(&seq[i]))
            .ok_or_else(|| MoveError::NoDecomposition(format!("inverse of {}", steps[i].kind)))?;
        out.push(s);
        cur = next;
    }
    Ok((out, cur))
}

/// S2(-,n) for n <= -2. Forward from `a`: a symmetric R2 insertion, an S4 move
/// and a few off-axis moves. Backward from `b`: an S2 move, an S2(-,n+1) move and
/// off-axis moves. The two trees meet on canonical forms.
fn split_s2(a: &Diagram, b: &Diagram, goal: &str, n: i32) -> Result<(Vec<Step>, Diagram), MoveError> {
    use Direction::{Forward, Reverse};
    let none = || MoveError::NoDecomposition(format!("S2pmn(-1,{n})"));
    let s4 = if n + 1 == -1 { MoveKind::S4 } else { MoveKind::S4mn(-1, n + 1) };
    let cap = a.len().max(b.len()) + 12;
    let cheap = [(MoveKind::R3sym, Forward), (MoveKind::R3sym, Reverse), (MoveKind::R2sym, Forward), (MoveKind::R1sym, Forward)];

    let (mut back, root) = Tree::new(b);
    let m = back.grow(&root, &[(MoveKind::S2pm, Reverse)], cap, false);
    let m = back.grow(&m, &[(MoveKind::S2pmn(-1, n + 1), Reverse)], cap, false);
    let m = back.grow(&m, &[(MoveKind::R2sym, Forward), (MoveKind::R2sym, Reverse)], cap, true);
    let m: HashSet<String> = back.grow(&m, &[(MoveKind::R3sym, Forward), (MoveKind::R3sym, Reverse)], cap, true).into_iter().collect();

    let (mut fwd, root) = Tree::new(a);
    let l = fwd.grow(&root, &[(MoveKind::R2sym, Reverse)], cap, false);
    let mut layer = fwd.grow(&l, &[(s4, Reverse), (s4, Forward)], cap, false);
    let mut meet = None;
    for depth in 0..=2 {
        meet = layer.iter().find(|k| m.contains(*k)).cloned();
        if meet.is_some() || depth == 2 {
            break;
        }
        layer = fwd.grow(&layer, &cheap, cap, true);
    }
    let meet = meet.ok_or_else(none)?;

    let mut cur = a.clone();
    let mut steps = Vec::new();
    for ((kind, dir), target) in fwd.path(&meet) {
        let (s, next) = step_to(&cur, &target, kind, dir)?;
        steps.extend(s);
        cur = next;
    }
    // backward edges walked from the meeting point towards b
    let bpath = back.path(&meet);
    for i in (0..bpath.len()).rev() {
        let ((kind, dir), _) = bpath[i];
        let target = if i == 0 { b.clone() } else { bpath[i - 1].1.clone() };
        let (s, next) = step_to(&cur, &target, kind, dir.inverse())?;
        steps.extend(s);
        cur = next;
    }
    if canonical_form(&cur) != goal {
        return Err(none());
    }
    Ok((steps, cur))
}
