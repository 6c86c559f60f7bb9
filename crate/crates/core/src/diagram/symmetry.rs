//! Symmetric-union checks.

use super::{Diagram, Port};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SymmetryFailure {
    /// Some off-axis crossing has no partner, or partners are not mutual.
    PairingNotInvolution { crossing: u32 },
    /// The reflection read off the frames is not a diagram automorphism.
    NotReflectionSymmetric { crossing: u32, slot: u8 },
    /// Mirror partners with equal signs.
    PairSameSign { a: u32, b: u32 },
    /// A component meets the axis in the wrong number of non-crossing points.
    AxisPoints { component: usize, points: usize },
}

impl fmt::Display for SymmetryFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PairingNotInvolution { crossing } => {
                write!(f, "(a) crossing {crossing}: mirror pairing is not a fixed-point-free involution")
            }
            Self::NotReflectionSymmetric { crossing, slot } => {
                write!(f, "(a) crossing {crossing} slot {slot}: reflection does not preserve the diagram")
            }
            Self::PairSameSign { a, b } => write!(f, "(b) mirror crossings {a} and {b} have the same sign"),
            Self::AxisPoints { component, points } => {
                write!(f, "(c) component {component} meets the axis in {points} non-crossing points")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub failures: Vec<SymmetryFailure>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Diagram {
    pub fn validate_symmetric_union(&self) -> SymmetryReport {
        let mut failures = Vec::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if x.on_axis {
                continue;
            }
            let ok = matches!(x.mirror, Some(m) if m != i && m < self.len() && self.crossings[m].mirror == Some(i) && !self.crossings[m].on_axis);
            if !ok {
                failures.push(SymmetryFailure::PairingNotInvolution { crossing: x.id });
            }
        }
        let Some(rho) = self.rho.as_ref() else {
            if failures.is_empty() && self.len() > 0 {
                failures.push(SymmetryFailure::PairingNotInvolution { crossing: self.crossings[0].id });
            }
            let comps = self.components();
            for (k, _) in comps.strands.iter().enumerate() {
                failures.push(SymmetryFailure::AxisPoints { component: k, points: 0 });
            }
            self.free_loop_failures(comps.strands.len(), &mut failures);
            return SymmetryReport { failures };
        };
        let r = |p: Port| rho[p.c][p.s as usize];
        let mut automorphism = true;
        for p in self.ports() {
            let ok = r(r(p)) == p && self.nbr(r(p)) == r(self.nbr(p)) && self.is_in(r(p)) != self.is_in(p);
            if !ok {
                automorphism = false;
                failures.push(SymmetryFailure::NotReflectionSymmetric {
                    crossing: self.crossings[p.c].id,
                    slot: self.crossings[p.c].pd_slot_inverse(p.s),
                });
            }
        }
        for (i, x) in self.crossings.iter().enumerate() {
            if let Some(m) = x.mirror {
                if i < m && m < self.len() && x.sign() == self.crossings[m].sign() {
                    failures.push(SymmetryFailure::PairSameSign { a: x.id, b: self.crossings[m].id });
                }
            }
        }
        if automorphism {
            let comps = self.components();
            for (k, cyc) in comps.strands.iter().enumerate() {
                let points = cyc.iter().filter(|&&p| self.edge_crosses_axis(p)).count();
                if points != 2 {
                    failures.push(SymmetryFailure::AxisPoints { component: k, points });
                }
            }
            self.free_loop_failures(comps.strands.len(), &mut failures);
        }
        SymmetryReport { failures }
    }

    fn free_loop_failures(&self, offset: usize, failures: &mut Vec<SymmetryFailure>) {
        for (k, l) in self.free_loops.iter().enumerate() {
            if !l.crosses_axis {
                failures.push(SymmetryFailure::AxisPoints { component: offset + k, points: 0 });
            }
        }
    }
}
