//! Symmetric move catalog as executable template rewrites.

mod catalog;
mod composite;
mod scramble;
mod site;
mod tangle;

pub use catalog::{axis_sign, s2_family, s4_family, templates, EquivClass, MoveKind, Template};
pub use composite::{close_pair, composite_hosts, expand_composite, run_script, Script, Step, COMPOSITE_BOUND};
pub use scramble::{form_hash, replay, replay_inverse, scramble, scramble_with, LogEntry};
pub use tangle::{End, Morse, Over, Side, SymmetryError, Tangle};

use crate::diagram::{canonical_form, Diagram};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Replace the left-hand side by the right-hand side.
    Forward,
    Reverse,
}

impl Direction {
    pub fn inverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("site mismatch: {0}")]
    SiteMismatch(String),
    #[error("rewrite produced an invalid diagram: {0}")]
    Invalid(String),
    #[error("unsupported sign combination: {0}")]
    UnsupportedSigns(String),
    #[error("{0} exceeds the composite bound")]
    OutOfBound(String),
    #[error("no decomposition found for {0}")]
    NoDecomposition(String),
    #[error("diagram carries no reflection data")]
    NoSymmetry,
}

/// Host edge referenced by an arc placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeRef {
    /// The edge leaving slot `slot` of the crossing with this id (its smaller end).
    Edge { id: u32, slot: u8 },
    /// Half `segment` of a free loop meeting the axis.
    Loop { index: usize, segment: u8 },
}

/// Where a crossingless arc of the template lands: on a host edge at
/// position `key` in 0..=200, with `near` the endpoint towards the edge start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcPlace {
    pub edge: EdgeRef,
    pub key: i32,
    pub near: usize,
    pub far: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Anchor {
    /// Host crossing id and frame rotation for every template crossing.
    Crossings(Vec<(u32, u8)>),
    /// Placement of every arc, for sides without crossings.
    Arcs(Vec<ArcPlace>),
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Crossings(v) => {
                let s: Vec<String> = v.iter().map(|(id, r)| format!("{id}.{r}")).collect();
                write!(f, "x{}", s.join(","))
            }
            Anchor::Arcs(v) => {
                let s: Vec<String> = v
                    .iter()
                    .map(|a| {
                        let e = match a.edge {
                            EdgeRef::Edge { id, slot } => format!("{id}.{slot}"),
                            EdgeRef::Loop { index, segment } => format!("L{index}.{segment}"),
                        };
                        format!("{e}@{}:{}>{}", a.key, a.near, a.far)
                    })
                    .collect();
                write!(f, "a{}", s.join(","))
            }
        }
    }
}

/// A location in a host diagram where a template side embeds. For paired
/// templates the anchor describes one copy; the other is its mirror image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    pub variant: usize,
    pub anchor: Anchor,
}

impl MoveSite {
    pub fn fingerprint(&self) -> String {
        format!("v{}:{}", self.variant, self.anchor)
    }
}

fn oriented(t: &Template, direction: Direction) -> (&tangle::Tangle, &tangle::Tangle) {
    match direction {
        Direction::Forward => (&t.lhs, &t.rhs),
        Direction::Reverse => (&t.rhs, &t.lhs),
    }
}

/// Sites for the left-hand side of every variant of `kind`.
pub fn enumerate_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    sites(d, kind, Direction::Forward)
}

/// Sites for one direction: where the side being removed embeds and the
/// rewrite yields a valid symmetric diagram.
pub fn sites(d: &Diagram, kind: MoveKind, direction: Direction) -> Vec<MoveSite> {
    sites_with_results(d, kind, direction).into_iter().map(|(s, _)| s).collect()
}

/// Sites together with the diagrams they produce. Embeddings that differ only
/// by a symmetry of the template (same host crossings, same result) are kept once.
pub fn sites_with_results(d: &Diagram, kind: MoveKind, direction: Direction) -> Vec<(MoveSite, Diagram)> {
    let all = all_sites(d, kind, direction);
    let mut seen = std::collections::HashSet::new();
    all.into_iter()
        .filter(|(s, r)| {
            let key = match &s.anchor {
                Anchor::Crossings(v) => {
                    let mut ids: Vec<u32> = v.iter().map(|p| p.0).collect();
                    ids.sort_unstable();
                    Some(ids)
                }
                Anchor::Arcs(_) => None,
            };
            key.is_none() || seen.insert((key, canonical_form(r)))
        })
        .collect()
}

fn all_sites(d: &Diagram, kind: MoveKind, direction: Direction) -> Vec<(MoveSite, Diagram)> {
    let ts = templates(kind);
    let per_variant = |v: usize| -> Vec<(MoveSite, Diagram)> {
        let t = &ts[v];
        let (from, to) = oriented(t, direction);
        site::candidates(d, from, t.paired)
            .into_iter()
            .filter_map(|anchor| {
                let out = site::realize(d, from, to, t.paired, &anchor).ok()?;
                Some((MoveSite { kind, direction, variant: v, anchor }, out))
            })
            .collect()
    };
    crate::par::map_collect(ts.len(), per_variant).into_iter().flatten().collect()
}

/// Rewrites `d` at `site`; `direction` must be the one the site was found for.
pub fn apply_move(d: &Diagram, kind: MoveKind, site: &MoveSite, direction: Direction) -> Result<Diagram, MoveError> {
    if site.kind != kind {
        return Err(MoveError::SiteMismatch(format!("site is for {}, not {kind}", site.kind)));
    }
    if site.direction != direction {
        return Err(MoveError::SiteMismatch(format!("site was found for the {:?} direction", site.direction)));
    }
    apply_site(d, site)
}

pub fn apply_site(d: &Diagram, site: &MoveSite) -> Result<Diagram, MoveError> {
    let ts = templates(site.kind);
    let t = ts.get(site.variant).ok_or_else(|| MoveError::SiteMismatch(format!("no variant {}", site.variant)))?;
    let (from, to) = oriented(t, site.direction);
    site::realize(d, from, to, t.paired, &site.anchor)
}

/// Finds the site with the given fingerprint and applies it.
pub fn apply_fingerprint(d: &Diagram, kind: MoveKind, direction: Direction, fingerprint: &str) -> Result<(MoveSite, Diagram), MoveError> {
    all_sites(d, kind, direction)
        .into_iter()
        .find(|(s, _)| s.fingerprint() == fingerprint)
        .ok_or_else(|| MoveError::SiteMismatch(format!("no {kind} site {fingerprint}")))
}

/// A site of `kind` in the given direction that turns `d` into a diagram
/// with canonical form `target`.
pub fn find_site_to(d: &Diagram, kind: MoveKind, direction: Direction, target: &str) -> Option<(MoveSite, Diagram)> {
    sites_with_results(d, kind, direction).into_iter().find(|(_, r)| canonical_form(r) == target)
}
