//! Kauffman bracket and Jones polynomial.

use crate::algebra::{BiLaurent, Laurent};
use crate::config::{default_caps, Caps};
use crate::diagram::{Diagram, Port};
use crate::par;
use num_bigint::BigInt;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("state space too large: 2^{crossings} states exceeds the cap of {cap}")]
    StateSpaceTooLarge { crossings: usize, cap: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BracketEngine {
    /// Enumerate all 2^c smoothings; the reference definition.
    StateSum,
    /// Add crossings one at a time, tracking boundary matchings.
    #[default]
    Contraction,
}

/// One Kauffman state: bit k set means crossing k takes its B-smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketState {
    pub mask: u64,
    pub loops: usize,
}

/// delta = -A^2 - A^-2
pub fn loop_value() -> Laurent {
    Laurent::from_terms([(2, -1), (-2, -1)])
}

/// Slot pairs joined by a smoothing. The A-smoothing joins each under slot with
/// the next slot counterclockwise.
pub(crate) const A_PAIRS: [(u8, u8); 2] = [(0, 1), (2, 3)];
pub(crate) const B_PAIRS: [(u8, u8); 2] = [(1, 2), (3, 0)];

struct EdgeIndex {
    of_port: Vec<[u32; 4]>,
    count: usize,
}

fn edge_index(d: &Diagram) -> EdgeIndex {
    let n = d.len();
    let mut of_port = vec![[u32::MAX; 4]; n];
    let mut count = 0u32;
    for p in d.ports() {
        if of_port[p.c][p.s as usize] == u32::MAX {
            let q = d.nbr(p);
            of_port[p.c][p.s as usize] = count;
            of_port[q.c][q.s as usize] = count;
            count += 1;
        }
    }
    EdgeIndex { of_port, count: count as usize }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

fn loops_for(idx: &EdgeIndex, mask: u64, parent: &mut Vec<u32>) -> usize {
    parent.clear();
    parent.extend(0..idx.count as u32);
    let mut classes = idx.count;
    for (c, e) in idx.of_port.iter().enumerate() {
        let pairs = if mask >> c & 1 == 0 { A_PAIRS } else { B_PAIRS };
        for (a, b) in pairs {
            let (x, y) = (find(parent, e[a as usize]), find(parent, e[b as usize]));
            if x != y {
                parent[x as usize] = y;
                classes -= 1;
            }
        }
    }
    classes
}

/// Enumerates all states (for small diagrams and tests).
pub fn states(d: &Diagram) -> Vec<BracketState> {
    let c = d.len();
    assert!(c < 24, "explicit state listing is for small diagrams");
    let idx = edge_index(d);
    let mut parent = Vec::new();
    (0..1u64 << c)
        .map(|mask| BracketState {
            mask,
            loops: if c == 0 { 0 } else { loops_for(&idx, mask, &mut parent) } + d.free_loops().len(),
        })
        .collect()
}

fn bracket_state_sum(d: &Diagram, caps: &Caps) -> Result<Laurent, BracketError> {
    let c = d.len();
    if c >= 63 || (1u64 << c) > caps.bracket_states {
        return Err(BracketError::StateSpaceTooLarge { crossings: c, cap: caps.bracket_states });
    }
    let free = d.free_loops().len();
    if c == 0 {
        return Ok(loop_value().pow(free.saturating_sub(1) as u32));
    }
    let idx = edge_index(d);
    let width = idx.count + 1;
    // histogram[(number of B smoothings) * width + loops]
    let total = 1u64 << c;
    let block_bits = c.min(12);
    let blocks = (total >> block_bits) as usize;
    let hist = par::map_reduce(
        blocks,
        || vec![0u64; (c + 1) * width],
        |b| {
            let mut h = vec![0u64; (c + 1) * width];
            let mut parent = Vec::with_capacity(idx.count);
            let base = (b as u64) << block_bits;
            for mask in base..base + (1u64 << block_bits) {
                let l = loops_for(&idx, mask, &mut parent);
                h[mask.count_ones() as usize * width + l] += 1;
            }
            h
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let delta = loop_value();
    let mut powers = vec![Laurent::one()];
    for _ in 0..width + free {
        let next = powers.last().unwrap() * &delta;
        powers.push(next);
    }
    let mut out = Laurent::zero();
    for nb in 0..=c {
        for l in 1..width {
            let k = hist[nb * width + l];
            if k == 0 {
                continue;
            }
            let a_exp = c as i64 - 2 * nb as i64;
            let term = Laurent::monomial(BigInt::from(k), a_exp);
            out = &out + &(&term * &powers[l + free - 1]);
        }
    }
    Ok(out)
}

/// Dense Laurent polynomial in A with machine coefficients (ample for the crossing budget).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense {
    lo: i64,
    c: Vec<i128>,
}

impl Dense {
    fn one() -> Self {
        Self { lo: 0, c: vec![1] }
    }

    fn add_shifted(&mut self, o: &Dense, shift: i64, loops: usize) {
        // self += A^shift * delta^loops * o
        let mut t = Dense { lo: o.lo + shift, c: o.c.clone() };
        for _ in 0..loops {
            t = t.times_delta();
        }
        self.add(&t);
    }

    fn times_delta(&self) -> Dense {
        let mut c = vec![0i128; self.c.len() + 4];
        for (i, v) in self.c.iter().enumerate() {
            c[i] -= v;
            c[i + 4] -= v;
        }
        Dense { lo: self.lo - 2, c }
    }

    fn add(&mut self, o: &Dense) {
        if o.c.is_empty() {
            return;
        }
        if self.c.is_empty() {
            *self = o.clone();
            return;
        }
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.c.len() as i64).max(o.lo + o.c.len() as i64);
        let mut c = vec![0i128; (hi - lo) as usize];
        for (i, v) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += v;
        }
        for (i, v) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i] += v;
        }
        *self = Dense { lo, c };
    }

    fn to_laurent(&self) -> Laurent {
        Laurent::from_terms(self.c.iter().enumerate().map(|(i, v)| (self.lo + i as i64, BigInt::from(*v))))
    }
}

/// Greedy crossing order keeping the open boundary small.
fn contraction_order(d: &Diagram) -> Vec<usize> {
    let n = d.len();
    let mut added = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&c| !added[c])
            .max_by_key(|&c| (links[c], std::cmp::Reverse(c)))
            .unwrap();
        added[next] = true;
        order.push(next);
        for p in d.crossing(next).nbr {
            if !added[p.c] {
                links[p.c] += 1;
            }
        }
    }
    order
}

fn bracket_contraction(d: &Diagram) -> Laurent {
    let n = d.len();
    let free = d.free_loops().len();
    if n == 0 {
        return loop_value().pow(free.saturating_sub(1) as u32);
    }
    let order = contraction_order(d);
    let mut added = vec![false; n];
    // open ports, and states keyed by the partner index of each open port
    let mut open: Vec<Port> = Vec::new();
    let mut table: HashMap<Vec<u16>, Dense> = HashMap::new();
    table.insert(Vec::new(), Dense::one());
    for &x in &order {
        added[x] = true;
        let xs = d.crossing(x);
        // nodes: 0..open.len() are old open ports, then the four ports of x
        let m = open.len();
        let node_of_old: HashMap<Port, usize> = open.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut glue = vec![usize::MAX; m + 4];
        for s in 0..4usize {
            let q = xs.nbr[s];
            if q.c == x {
                glue[m + s] = m + q.s as usize;
            } else if let Some(&i) = node_of_old.get(&q) {
                glue[m + s] = i;
                glue[i] = m + s;
            }
        }
        let new_open: Vec<usize> = (0..m + 4).filter(|&v| glue[v] == usize::MAX).collect();
        let mut pos = vec![usize::MAX; m + 4];
        for (i, &v) in new_open.iter().enumerate() {
            pos[v] = i;
        }
        let mut next: HashMap<Vec<u16>, Dense> = HashMap::with_capacity(table.len() * 2);
        for (key, poly) in &table {
            for (pairs, shift) in [(A_PAIRS, 1i64), (B_PAIRS, -1i64)] {
                let mut arc = vec![usize::MAX; m + 4];
                for (i, &pi) in key.iter().enumerate() {
                    arc[i] = pi as usize;
                }
                for (a, b) in pairs {
                    arc[m + a as usize] = m + b as usize;
                    arc[m + b as usize] = m + a as usize;
                }
                let mut seen = vec![false; m + 4];
                let mut new_key = vec![0u16; new_open.len()];
                for &v in &new_open {
                    if seen[v] {
                        continue;
                    }
                    let mut cur = v;
                    seen[cur] = true;
                    loop {
                        let a = arc[cur];
                        seen[a] = true;
                        if glue[a] == usize::MAX {
                            new_key[pos[v]] = pos[a] as u16;
                            new_key[pos[a]] = pos[v] as u16;
                            break;
                        }
                        cur = glue[a];
                        seen[cur] = true;
                    }
                }
                let mut loops = 0;
                for v in 0..m + 4 {
                    if seen[v] {
                        continue;
                    }
                    loops += 1;
                    let mut cur = v;
                    while !seen[cur] {
                        seen[cur] = true;
                        let a = arc[cur];
                        seen[a] = true;
                        cur = glue[a];
                    }
                }
                next.entry(new_key).or_insert_with(|| Dense { lo: 0, c: Vec::new() }).add_shifted(poly, shift, loops);
            }
        }
        open = new_open
            .iter()
            .map(|&v| if v < m { open[v] } else { Port::new(x, (v - m) as u8) })
            .collect();
        table = next;
    }
    debug_assert!(open.is_empty());
    let total = table.remove(&Vec::new()).map(|p| p.to_laurent()).unwrap_or_default();
    // every closed loop was weighted by delta; the bracket normalises one loop to 1
    let mut out = divide_by_delta(&total);
    for _ in 0..free {
        out = &out * &loop_value();
    }
    out
}

fn divide_by_delta(p: &Laurent) -> Laurent {
    // p = (-A^-2)(1 + A^4) q, solved from the bottom
    let (lo, v) = p.dense();
    let mut q = vec![BigInt::from(0); v.len().saturating_sub(4)];
    for i in 0..q.len() {
        let mut x = v[i].clone();
        if i >= 4 {
            x -= &q[i - 4];
        }
        q[i] = x;
    }
    let q = Laurent::from_terms(q.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c)));
    let back = &q * &Laurent::from_terms([(0, 1), (4, 1)]);
    debug_assert_eq!(back, p.shift(0), "delta must divide the closed sum");
    (-q).shift(2)
}

pub fn kauffman_bracket(d: &Diagram) -> Result<Laurent, BracketError> {
    kauffman_bracket_with(d, BracketEngine::default(), &default_caps())
}

pub fn kauffman_bracket_with(d: &Diagram, engine: BracketEngine, caps: &Caps) -> Result<Laurent, BracketError> {
    match engine {
        BracketEngine::StateSum => bracket_state_sum(d, caps),
        BracketEngine::Contraction => Ok(bracket_contraction(d)),
    }
}

/// Jones polynomial as a polynomial in t^{1/2} (half-step exponents, s-exponent zero).
pub fn jones(d: &Diagram) -> Result<BiLaurent, BracketError> {
    jones_with(d, BracketEngine::default(), &default_caps())
}

pub fn jones_with(d: &Diagram, engine: BracketEngine, caps: &Caps) -> Result<BiLaurent, BracketError> {
    let br = kauffman_bracket_with(d, engine, caps)?;
    Ok(jones_from_bracket(&br, d.writhe().total()))
}

/// V = (-A)^{-3w} <D> with A = t^{-1/4}.
pub fn jones_from_bracket(br: &Laurent, writhe: i64) -> BiLaurent {
    let sign: i64 = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out = BiLaurent::zero();
    for (e, c) in br.terms() {
        let k = e - 3 * writhe;
        assert!(k % 2 == 0, "bracket exponent parity");
        out.add_term(0, -k / 2, c * sign);
    }
    out
}
