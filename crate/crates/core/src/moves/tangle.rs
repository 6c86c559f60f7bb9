//! Tangles: diagram fragments in a disk with numbered boundary points.
//!
//! Boundary points are numbered counterclockwise. Crossing arms use the same
//! frame convention as diagrams (slots counterclockwise, 0 and 2 under).
//! A symmetric tangle carries the reflection `i -> (sym - i) mod k` of its
//! boundary, from which the reflection on arms is derived.

use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Arm(usize, u8),
    Bnd(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    pub arms: Vec<[End; 4]>,
    pub bnd: Vec<End>,
    pub sym: Option<usize>,
    /// Reflection on arms; empty unless `sym` is set.
    pub rho: Vec<[(usize, u8); 4]>,
    pub on_axis: Vec<bool>,
}

/// Which strand of a crossing is over, in an upward-drawn picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    /// The strand from lower left to upper right.
    Rising,
    /// The strand from lower right to upper left.
    Falling,
}

/// Geometric arms of a crossing: SW, SE, NE, NW.
fn frame(over: Over) -> [usize; 4] {
    // frame slot -> geometric arm index
    match over {
        Over::Rising => [1, 2, 3, 0],
        Over::Falling => [0, 1, 2, 3],
    }
}

/// Builds a tangle slice by slice from bottom to top. Positions are the
/// strand ends crossing the current horizontal line, left to right.
pub struct Morse {
    labels: Labels,
    ends: Vec<u32>,
    bottom: Vec<u32>,
}

impl Morse {
    pub fn new(bottom: usize) -> Self {
        let mut labels = Labels::default();
        let ends: Vec<u32> = (0..bottom).map(|_| labels.fresh()).collect();
        Self { bottom: ends.clone(), labels, ends }
    }

    pub fn cup(mut self, i: usize) -> Self {
        let l = self.labels.fresh();
        self.ends.splice(i..i, [l, l]);
        self
    }

    pub fn cap(mut self, i: usize) -> Self {
        let a = self.ends[i];
        let b = self.ends[i + 1];
        self.labels.merge(a, b);
        self.ends.drain(i..i + 2);
        self
    }

    pub fn x(mut self, i: usize, over: Over) -> Self {
        let nw = self.labels.fresh();
        let ne = self.labels.fresh();
        let geo = [self.ends[i], self.ends[i + 1], ne, nw];
        let f = frame(over);
        self.labels.crossings.push(f.map(|g| geo[g]));
        self.ends[i] = nw;
        self.ends[i + 1] = ne;
        self
    }

    pub fn x_seq(mut self, ops: &[(usize, Over)]) -> Self {
        for &(i, o) in ops {
            self = self.x(i, o);
        }
        self
    }

    /// Closes the picture; the remaining ends become the top boundary.
    pub fn finish(self) -> Tangle {
        let mut bnd = self.bottom.clone();
        bnd.extend(self.ends.iter().rev());
        self.labels.build(&bnd)
    }
}

/// Edge labels, each used exactly twice; `merge` identifies two labels.
#[derive(Default, Clone)]
pub struct Labels {
    next: u32,
    parent: HashMap<u32, u32>,
    pub crossings: Vec<[u32; 4]>,
}

impl Labels {
    pub fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    fn find(&self, mut a: u32) -> u32 {
        while let Some(&p) = self.parent.get(&a) {
            a = p;
        }
        a
    }

    pub fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        assert_ne!(ra, rb, "closed loop inside a tangle");
        self.parent.insert(ra, rb);
    }

    pub fn cross(&mut self, labels: [u32; 4]) -> usize {
        self.crossings.push(labels);
        self.crossings.len() - 1
    }

    pub fn build(&self, bnd: &[u32]) -> Tangle {
        let mut occ: HashMap<u32, Vec<End>> = HashMap::new();
        for (i, &l) in bnd.iter().enumerate() {
            occ.entry(self.find(l)).or_default().push(End::Bnd(i));
        }
        for (c, x) in self.crossings.iter().enumerate() {
            for (k, &l) in x.iter().enumerate() {
                occ.entry(self.find(l)).or_default().push(End::Arm(c, k as u8));
            }
        }
        let mut adj: HashMap<End, End> = HashMap::new();
        for (l, v) in &occ {
            assert_eq!(v.len(), 2, "label {l} used {} times", v.len());
            adj.insert(v[0], v[1]);
            adj.insert(v[1], v[0]);
        }
        let n = self.crossings.len();
        let arms = (0..n).map(|c| std::array::from_fn(|k| adj[&End::Arm(c, k as u8)])).collect();
        let bnd = (0..bnd.len()).map(|i| adj[&End::Bnd(i)]).collect();
        Tangle { arms, bnd, sym: None, rho: Vec::new(), on_axis: vec![false; n] }
    }
}

/// One side of a region of a tangle, in the order met when the region is
/// traversed with it on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The corner between slots k and k+1 of a crossing.
    Corner(usize, u8),
    /// A crossingless arc, traversed from the first to the second boundary point.
    Arc(usize, usize),
    /// The boundary circle between point i and point i-1.
    Rim(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryError(pub String);

impl Tangle {
    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub fn points(&self) -> usize {
        self.bnd.len()
    }

    pub fn sigma(&self, i: usize) -> Option<usize> {
        let k = self.points();
        self.sym.map(|s| (s + 2 * k - i) % k)
    }

    /// Declares the boundary reflection and derives the reflection on arms.
    pub fn with_symmetry(mut self, sym: usize) -> Result<Self, SymmetryError> {
        self.sym = Some(sym % self.points().max(1));
        self.derive_rho()?;
        Ok(self)
    }

    fn derive_rho(&mut self) -> Result<(), SymmetryError> {
        let n = self.len();
        let err = |m: String| Err(SymmetryError(m));
        let mut rho: Vec<[Option<(usize, u8)>; 4]> = vec![[None; 4]; n];
        let mut queue: Vec<((usize, u8), (usize, u8))> = Vec::new();
        for i in 0..self.points() {
            let j = self.sigma(i).unwrap();
            match (self.bnd[i], self.bnd[j]) {
                (End::Arm(c, k), End::Arm(d, l)) => queue.push(((c, k), (d, l))),
                (End::Bnd(a), End::Bnd(b)) => {
                    if self.sigma(a) != Some(b) {
                        return err(format!("arc from {i} is not reflected onto the arc from {j}"));
                    }
                }
                _ => return err(format!("boundary points {i} and {j} differ in kind")),
            }
        }
        while let Some(((c, k), (d, l))) = queue.pop() {
            match rho[c][k as usize] {
                Some(v) if v == (d, l) => continue,
                Some(_) => return err(format!("conflicting reflection at crossing {c}")),
                None => {}
            }
            for r in 0..4u8 {
                let a = (c, (k + r) % 4);
                let b = (d, (l + 4 - r) % 4);
                match rho[a.0][a.1 as usize] {
                    Some(v) if v != b => return err(format!("reflection is not a rotation reversal at {c}")),
                    Some(_) => continue,
                    None => rho[a.0][a.1 as usize] = Some(b),
                }
                match (self.arms[a.0][a.1 as usize], self.arms[b.0][b.1 as usize]) {
                    (End::Arm(x, y), End::Arm(u, v)) => queue.push(((x, y), (u, v))),
                    (End::Bnd(p), End::Bnd(q)) => {
                        if self.sigma(p) != Some(q) {
                            return err(format!("boundary {p} does not reflect to {q}"));
                        }
                    }
                    _ => return err(format!("arm of crossing {c} reflects to a different kind")),
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        let mut on_axis = Vec::with_capacity(n);
        for (c, row) in rho.iter().enumerate() {
            let full: Option<Vec<(usize, u8)>> = row.iter().copied().collect();
            let Some(full) = full else {
                return err(format!("crossing {c} is not reached from the boundary"));
            };
            let arr = [full[0], full[1], full[2], full[3]];
            let d = arr[0].0;
            let fixed = d == c;
            // levels: swapped on the axis, kept for a mirror pair
            if fixed == (arr[0].1 % 2 == 0) {
                return err(format!("crossing {c} has the wrong levels for its reflection"));
            }
            on_axis.push(fixed);
            out.push(arr);
        }
        for (c, row) in out.iter().enumerate() {
            for (k, &(d, l)) in row.iter().enumerate() {
                if out[d][l as usize] != (c, k as u8) {
                    return err("reflection is not an involution".into());
                }
            }
        }
        self.rho = out;
        self.on_axis = on_axis;
        Ok(())
    }

    /// Exchanges over and under at every crossing.
    pub fn switched(&self) -> Self {
        // old slot k becomes new slot k-1
        let m = |e: End| match e {
            End::Arm(c, k) => End::Arm(c, (k + 3) % 4),
            b => b,
        };
        let arms = self.arms.iter().map(|row| std::array::from_fn(|j| m(row[(j + 1) % 4]))).collect();
        let mut t = Tangle { arms, bnd: self.bnd.iter().map(|&e| m(e)).collect(), sym: None, rho: Vec::new(), on_axis: self.on_axis.clone() };
        if let Some(s) = self.sym {
            t = t.with_symmetry(s).expect("switching keeps symmetry");
        }
        t
    }

    /// Planar reflection: reverses every rotation and the boundary order.
    pub fn reflected(&self) -> Self {
        let k = self.points();
        let m = |e: End| match e {
            End::Arm(c, s) => End::Arm(c, (4 - s) % 4),
            End::Bnd(i) => End::Bnd(k - 1 - i),
        };
        let arms = self.arms.iter().map(|row| std::array::from_fn(|j| m(row[(4 - j) % 4]))).collect();
        let bnd = (0..k).map(|i| m(self.bnd[k - 1 - i])).collect();
        let mut t = Tangle { arms, bnd, sym: None, rho: Vec::new(), on_axis: self.on_axis.clone() };
        if let Some(s) = self.sym {
            let s2 = (2 * k * 2 - 2 - s) % k;
            t = t.with_symmetry(s2).expect("reflection keeps symmetry");
        }
        t
    }

    /// Rotates the boundary numbering by `r` steps.
    pub fn rotated(&self, r: usize) -> Self {
        let k = self.points();
        let m = |e: End| match e {
            End::Bnd(i) => End::Bnd((i + r) % k),
            a => a,
        };
        let arms = self.arms.iter().map(|row| row.map(m)).collect();
        let mut bnd = vec![End::Bnd(0); k];
        for i in 0..k {
            bnd[(i + r) % k] = m(self.bnd[i]);
        }
        let mut t = Tangle { arms, bnd, sym: None, rho: Vec::new(), on_axis: self.on_axis.clone() };
        if let Some(s) = self.sym {
            t = t.with_symmetry(s + 2 * r).expect("rotation keeps symmetry");
        }
        t
    }

    /// Connected components of the crossing graph (arcs excluded).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[s] = id;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(c) = stack.pop() {
                comp.push(c);
                for e in self.arms[c] {
                    if let End::Arm(d, _) = e {
                        if label[d] == usize::MAX {
                            label[d] = id;
                            stack.push(d);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Arcs joining two boundary points directly, as (i, j) with i < j.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter_map(|i| match self.bnd[i] {
                End::Bnd(j) if i < j => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Regions of the disk. Each is listed with the region on the right.
    pub fn regions(&self) -> Vec<Vec<Side>> {
        // darts: crossing arms (c,k) and boundary points with three arms:
        // 0 inward, 1 rim towards i-1, 2 rim towards i+1
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Dart {
            X(usize, u8),
            B(usize, u8),
        }
        let k = self.points();
        let across = |d: Dart| -> Dart {
            match d {
                Dart::X(c, s) => match self.arms[c][s as usize] {
                    End::Arm(e, t) => Dart::X(e, t),
                    End::Bnd(i) => Dart::B(i, 0),
                },
                Dart::B(i, 0) => match self.bnd[i] {
                    End::Arm(e, t) => Dart::X(e, t),
                    End::Bnd(j) => Dart::B(j, 0),
                },
                Dart::B(i, 1) => Dart::B((i + k - 1) % k, 2),
                Dart::B(i, _) => Dart::B((i + 1) % k, 1),
            }
        };
        let next = |d: Dart| -> Dart {
            match across(d) {
                Dart::X(c, s) => Dart::X(c, (s + 1) % 4),
                Dart::B(i, s) => Dart::B(i, (s + 1) % 3),
            }
        };
        let mut darts: Vec<Dart> = Vec::new();
        for c in 0..self.len() {
            for s in 0..4 {
                darts.push(Dart::X(c, s));
            }
        }
        for i in 0..k {
            for s in 0..3 {
                darts.push(Dart::B(i, s));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &d0 in &darts {
            if seen.contains(&d0) {
                continue;
            }
            let mut sides = Vec::new();
            let mut outside = false;
            let mut d = d0;
            while seen.insert(d) {
                let e = next(d);
                match (d, e) {
                    (_, Dart::X(c, s)) => sides.push(Side::Corner(c, (s + 3) % 4)),
                    (Dart::B(i, 0), Dart::B(j, _)) => {
                        sides.push(Side::Arc(i, j));
                        sides.push(Side::Rim(j));
                    }
                    (Dart::B(_, 2), Dart::B(..)) => outside = true,
                    (_, Dart::B(j, 1)) => sides.push(Side::Rim(j)),
                    _ => {}
                }
                d = e;
            }
            if !outside {
                out.push(sides);
            }
        }
        out
    }
}
