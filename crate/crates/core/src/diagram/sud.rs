//! The SUD JSON format.

use super::{Crossing, Diagram, DiagramError, FreeLoop, Port};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SudFreeLoop {
    pub crosses_axis: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SudCrossing {
    pub id: u32,
    pub edges: [i64; 4],
    #[serde(default)]
    pub on_axis: bool,
    #[serde(default)]
    pub axis_index: Option<i64>,
    #[serde(default)]
    pub mirror_partner: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SudOrientation {
    pub edge: i64,
    pub from_crossing: u32,
    pub from_slot: u8,
}

/// Optional extension naming the unbounded face: the face on the right of the
/// edge leaving this slot.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SudPort {
    pub crossing: u32,
    pub slot: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct SudFile {
    #[serde(default)]
    pub free_loops: Vec<SudFreeLoop>,
    #[serde(default)]
    pub crossings: Vec<SudCrossing>,
    #[serde(default)]
    pub orientation: Vec<SudOrientation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<SudPort>,
}

fn perr(field: impl Into<String>, msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse { field: field.into(), msg: msg.into() }
}

impl Diagram {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let file: SudFile = serde_json::from_str(text)
            .map_err(|e| perr(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_sud(&file)
    }

    pub fn from_sud(file: &SudFile) -> Result<Self, DiagramError> {
        let n = file.crossings.len();
        let mut index: HashMap<u32, usize> = HashMap::new();
        for (i, x) in file.crossings.iter().enumerate() {
            if index.insert(x.id, i).is_some() {
                return Err(perr(format!("crossings[{i}].id"), format!("duplicate id {}", x.id)));
            }
        }
        // label -> occurrences in standard-convention slots
        let mut occ: BTreeMap<i64, Vec<Port>> = BTreeMap::new();
        for (i, x) in file.crossings.iter().enumerate() {
            for (k, &e) in x.edges.iter().enumerate() {
                occ.entry(e).or_default().push(Port::new(i, k as u8));
            }
        }
        for (e, v) in &occ {
            if v.len() != 2 {
                return Err(DiagramError::Validation(format!("edge {e} appears {} times", v.len())));
            }
        }
        // outgoing[p] = Some(true) when the edge leaves through p
        let mut outgoing: HashMap<Port, bool> = HashMap::new();
        let set = |p: Port, out: bool, outgoing: &mut HashMap<Port, bool>| -> Result<(), DiagramError> {
            match outgoing.insert(p, out) {
                Some(prev) if prev != out => Err(DiagramError::Validation(format!(
                    "orientation conflict at crossing {} slot {}",
                    file.crossings[p.c].id, p.s
                ))),
                _ => Ok(()),
            }
        };
        for (e, v) in &occ {
            let (a, b) = (v[0], v[1]);
            for (p, q) in [(a, b), (b, a)] {
                match p.s {
                    0 => {
                        set(p, false, &mut outgoing)?;
                        set(q, true, &mut outgoing)?;
                    }
                    2 => {
                        set(p, true, &mut outgoing)?;
                        set(q, false, &mut outgoing)?;
                    }
                    _ => {}
                }
            }
            let _ = e;
        }
        for (i, o) in file.orientation.iter().enumerate() {
            let c = *index
                .get(&o.from_crossing)
                .ok_or_else(|| perr(format!("orientation[{i}].from_crossing"), "unknown crossing"))?;
            if o.from_slot > 3 || file.crossings[c].edges[o.from_slot as usize] != o.edge {
                return Err(perr(format!("orientation[{i}]"), "edge not at the given slot"));
            }
            let p = Port::new(c, o.from_slot);
            let v = &occ[&o.edge];
            let q = if v[0] == p { v[1] } else { v[0] };
            set(p, true, &mut outgoing)?;
            set(q, false, &mut outgoing)?;
        }
        let mut crossings = Vec::with_capacity(n);
        for (i, x) in file.crossings.iter().enumerate() {
            let mut nbr = [Port::new(0, 0); 4];
            for k in 0..4u8 {
                let v = &occ[&x.edges[k as usize]];
                let me = Port::new(i, k);
                nbr[k as usize] = if v[0] == me { v[1] } else { v[0] };
            }
            let o1 = outgoing.get(&Port::new(i, 1)).copied();
            let o3 = outgoing.get(&Port::new(i, 3)).copied();
            let over_in = match (o1, o3) {
                (Some(false), _) | (_, Some(true)) => 1,
                (Some(true), _) | (_, Some(false)) => 3,
                (None, None) => {
                    return Err(DiagramError::Validation(format!("over-strand at crossing {} is unoriented", x.id)))
                }
            };
            if x.on_axis && x.axis_index.is_none() {
                return Err(perr(format!("crossings[{i}].axis_index"), "required for on-axis crossings"));
            }
            if !x.on_axis && x.axis_index.is_some() {
                return Err(perr(format!("crossings[{i}].axis_index"), "given for an off-axis crossing"));
            }
            let mirror = match x.mirror_partner {
                None => None,
                Some(pid) => Some(
                    *index.get(&pid).ok_or_else(|| perr(format!("crossings[{i}].mirror_partner"), "unknown crossing"))?,
                ),
            };
            crossings.push(Crossing {
                id: x.id,
                nbr,
                under_in: 0,
                over_in,
                on_axis: x.on_axis,
                axis_index: x.axis_index,
                mirror,
            });
        }
        for (i, x) in crossings.iter().enumerate() {
            for k in 0..4u8 {
                let p = Port::new(i, k);
                let q = x.nbr[k as usize];
                if x.is_in(k) == crossings[q.c].is_in(q.s) {
                    return Err(DiagramError::Validation(format!(
                        "edge {} is not oriented consistently (crossing {} slot {})",
                        file.crossings[i].edges[k as usize], x.id, p.s
                    )));
                }
            }
        }
        let outer_hint = match &file.outer_face {
            None => None,
            Some(sp) => {
                let c = *index.get(&sp.crossing).ok_or_else(|| perr("outer_face.crossing", "unknown crossing"))?;
                if sp.slot > 3 {
                    return Err(perr("outer_face.slot", "slot out of range"));
                }
                Some(Port::new(c, sp.slot))
            }
        };
        let mut d = Diagram {
            crossings,
            free_loops: file.free_loops.iter().map(|l| FreeLoop { crosses_axis: l.crosses_axis }).collect(),
            rho: None,
            outer_hint,
        };
        d.rho = d.derive_rho();
        d.validate()?;
        Ok(d)
    }

    /// Reflection on ports read off the standard frames: a mirror pair maps slot k
    /// to slot 2-k, an on-axis crossing maps k to 1-k (positive) or 3-k (negative).
    /// Requires the orientation to be reflection-reversing, as for symmetric unions.
    pub(crate) fn derive_rho(&self) -> Option<Vec<[Port; 4]>> {
        let mut r = vec![[Port::new(0, 0); 4]; self.len()];
        for (i, x) in self.crossings.iter().enumerate() {
            let (partner, offset) = if x.on_axis {
                (i, if x.sign() > 0 { 1 } else { 3 })
            } else {
                let m = x.mirror?;
                if self.crossings.get(m)?.mirror != Some(i) || m == i {
                    return None;
                }
                (m, 2)
            };
            let y = &self.crossings[partner];
            for k in 0..4u8 {
                // standard slot of k, reflected, back to frame slots of the partner
                let std = (k + 4 - x.under_in) % 4;
                let img = (offset + 4 - std) % 4;
                r[i][k as usize] = Port::new(partner, y.pd_slot(img));
            }
        }
        Some(r)
    }

    /// Serialisation: crossings by id, edges numbered 1.. along each component.
    pub fn to_sud(&self) -> SudFile {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&c| self.crossings[c].id);
        let mut rank = vec![0usize; self.len()];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r;
        }
        let key = |p: Port| (rank[p.c], self.crossings[p.c].pd_slot_inverse(p.s));
        let mut label: HashMap<Port, i64> = HashMap::new();
        let mut orientation = Vec::new();
        let mut comps = self.components().strands;
        for cyc in comps.iter_mut() {
            let start = (0..cyc.len()).min_by_key(|&i| key(cyc[i])).unwrap();
            cyc.rotate_left(start);
        }
        comps.sort_by_key(|cyc| key(cyc[0]));
        let mut next = 1i64;
        for cyc in &comps {
            for &p in cyc {
                label.insert(p, next);
                label.insert(self.nbr(p), next);
                orientation.push(SudOrientation {
                    edge: next,
                    from_crossing: self.crossings[p.c].id,
                    from_slot: self.crossings[p.c].pd_slot_inverse(p.s),
                });
                next += 1;
            }
        }
        orientation.sort_by_key(|o| o.edge);
        let crossings = order
            .iter()
            .map(|&c| {
                let x = &self.crossings[c];
                let edges = [0u8, 1, 2, 3].map(|k| label[&Port::new(c, x.pd_slot(k))]);
                SudCrossing {
                    id: x.id,
                    edges,
                    on_axis: x.on_axis,
                    axis_index: x.axis_index,
                    mirror_partner: x.mirror.map(|m| self.crossings[m].id),
                }
            })
            .collect();
        SudFile {
            free_loops: self.free_loops.iter().map(|l| SudFreeLoop { crosses_axis: l.crosses_axis }).collect(),
            crossings,
            orientation,
            outer_face: self.outer_hint.map(|p| SudPort {
                crossing: self.crossings[p.c].id,
                slot: self.crossings[p.c].pd_slot_inverse(p.s),
            }),
        }
    }

    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_sud()).expect("serialisable");
        s.push('\n');
        s
    }
}

impl Crossing {
    /// Standard-convention index of frame slot `s`.
    pub fn pd_slot_inverse(&self, s: u8) -> u8 {
        (s + 4 - self.under_in) % 4
    }
}
