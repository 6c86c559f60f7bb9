//! Canonical forms for diagram identity up to reflection-equivariant planar isomorphism.
//!
//! Each piece is relabelled by a breadth-first walk from every possible root
//! (crossing and under-slot) and the smallest encoding wins. The reflection map
//! is part of the encoding, so the axis is respected without using axis_index.

use super::{Diagram, Port};
use std::fmt::Write;

fn encode_from(d: &Diagram, root: Port, oriented: bool, piece_len: usize) -> Vec<i64> {
    let n = d.len();
    let mut label = vec![usize::MAX; n];
    let mut frame = vec![0u8; n];
    let mut order = Vec::with_capacity(piece_len);
    label[root.c] = 0;
    frame[root.c] = root.s;
    order.push(root.c);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for k in 0..4u8 {
            let q = d.nbr(Port::new(x, (frame[x] + k) % 4));
            if label[q.c] == usize::MAX {
                label[q.c] = order.len();
                frame[q.c] = q.s;
                order.push(q.c);
            }
        }
    }
    let rel = |p: Port, label: &[usize]| -> (i64, i64) {
        match label[p.c] {
            usize::MAX => (-1, -1),
            l => (l as i64, ((p.s + 4 - frame[p.c]) % 4) as i64),
        }
    };
    let mut out = Vec::with_capacity(order.len() * 20);
    for &x in &order {
        let cx = &d.crossings[x];
        out.push((frame[x] % 2) as i64);
        out.push(cx.on_axis as i64);
        out.push(match cx.mirror {
            None => -2,
            Some(m) if label[m] == usize::MAX => -1,
            Some(m) => label[m] as i64,
        });
        for k in 0..4u8 {
            let p = Port::new(x, (frame[x] + k) % 4);
            let (a, b) = rel(d.nbr(p), &label);
            out.push(a);
            out.push(b);
            if let Some(r) = d.rho(p) {
                let (a, b) = rel(r, &label);
                out.push(a);
                out.push(b);
            }
            if oriented {
                out.push(d.is_in(p) as i64);
            }
        }
    }
    out
}

fn form(d: &Diagram, oriented: bool) -> String {
    let mut pieces: Vec<Vec<i64>> = d
        .pieces()
        .into_iter()
        .map(|piece| {
            let mut best: Option<Vec<i64>> = None;
            for &c in &piece {
                for s in [0u8, 2] {
                    let e = encode_from(d, Port::new(c, s), oriented, piece.len());
                    if best.as_ref().is_none_or(|b| e < *b) {
                        best = Some(e);
                    }
                }
            }
            best.unwrap()
        })
        .collect();
    pieces.sort();
    let mut loops: Vec<bool> = d.free_loops.iter().map(|l| l.crosses_axis).collect();
    loops.sort();
    let mut s = String::new();
    let _ = write!(s, "rho={};loops={:?};", d.rho.is_some(), loops);
    for p in pieces {
        s.push('[');
        for v in p {
            let _ = write!(s, "{v},");
        }
        s.push(']');
    }
    s
}

/// Canonical encoding ignoring orientation.
pub fn canonical_form(d: &Diagram) -> String {
    form(d, false)
}

/// Canonical encoding including orientation.
pub fn canonical_form_oriented(d: &Diagram) -> String {
    form(d, true)
}

/// Diagram identity: equal canonical forms.
pub fn same_diagram(a: &Diagram, b: &Diagram) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}
