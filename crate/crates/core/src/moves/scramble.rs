//! Random move sequences within an equivalence class, with replayable logs.

use super::{apply_fingerprint, find_site_to, sites_with_results, Direction, EquivClass, MoveError, MoveKind};
use crate::config::default_caps;
use crate::diagram::{canonical_form, Diagram};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub kind: MoveKind,
    pub site: String,
    pub direction: Direction,
    /// Fingerprint of the site in the resulting diagram that undoes this move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
    /// FNV-1a hash of the canonical form before the move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub before: Option<String>,
}

pub fn form_hash(d: &Diagram) -> String {
    let h = canonical_form(d).bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    format!("{h:016x}")
}

/// Applies `length` random moves of the class, never growing past the default crossing budget.
pub fn scramble(d: &Diagram, seed: u64, length: usize, class: EquivClass) -> (Diagram, Vec<LogEntry>) {
    scramble_with(d, seed, length, class, default_caps().crossing_budget)
}

/// Like `scramble`, with moves that would exceed `budget` crossings never chosen.
pub fn scramble_with(d: &Diagram, seed: u64, length: usize, class: EquivClass, budget: usize) -> (Diagram, Vec<LogEntry>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut log = Vec::new();
    let mut options: Vec<(MoveKind, Direction)> = MoveKind::ELEMENTARY
        .iter()
        .filter(|k| k.allowed_in(class))
        .flat_map(|&k| [(k, Direction::Forward), (k, Direction::Reverse)])
        .collect();
    for _ in 0..length {
        options.shuffle(&mut rng);
        let mut done = false;
        for &(kind, dir) in &options {
            let mut found: Vec<_> = sites_with_results(&cur, kind, dir).into_iter().filter(|(_, r)| r.len() <= budget).collect();
            if found.is_empty() {
                continue;
            }
            found.sort_by_key(|(s, _)| s.fingerprint());
            let (site, next) = found.swap_remove(rand::Rng::gen_range(&mut rng, 0..found.len()));
            let before = canonical_form(&cur);
            let inverse = find_site_to(&next, kind, dir.inverse(), &before).map(|(s, _)| s.fingerprint());
            log.push(LogEntry { kind, site: site.fingerprint(), direction: dir, inverse, before: Some(form_hash(&cur)) });
            cur = next;
            done = true;
            break;
        }
        if !done {
            break;
        }
    }
    (cur, log)
}

/// Replays a log from its starting diagram.
pub fn replay(d: &Diagram, log: &[LogEntry]) -> Result<Diagram, MoveError> {
    let mut cur = d.clone();
    for e in log {
        cur = apply_fingerprint(&cur, e.kind, e.direction, &e.site)?.1;
    }
    Ok(cur)
}

/// Undoes a log from its final diagram. Undoing can renumber crossings, so a
/// recorded inverse site is only trusted when its result has the recorded hash.
pub fn replay_inverse(d: &Diagram, log: &[LogEntry]) -> Result<Diagram, MoveError> {
    let mut cur = d.clone();
    for e in log.iter().rev() {
        let back = e.direction.inverse();
        let by_site = e.inverse.as_deref().and_then(|fp| apply_fingerprint(&cur, e.kind, back, fp).ok()).map(|r| r.1);
        cur = match (by_site, e.before.as_deref()) {
            (Some(r), None) => r,
            (Some(r), Some(h)) if form_hash(&r) == h => r,
            (_, Some(h)) => sites_with_results(&cur, e.kind, back)
                .into_iter()
                .map(|(_, r)| r)
                .find(|r| form_hash(r) == h)
                .ok_or_else(|| MoveError::SiteMismatch(format!("no {} site undoes this entry", e.kind)))?,
            (None, None) => return Err(MoveError::SiteMismatch("log entry without inverse".into())),
        };
    }
    Ok(cur)
}
