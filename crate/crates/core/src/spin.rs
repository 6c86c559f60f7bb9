//! Potts-refined spin models: construction, axioms, medial graphs and partition functions.

use crate::config::{default_caps, Caps};
use crate::diagram::{Color, Coloring, Diagram, DiagramError};
use crate::par;
use num_complex::Complex;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

pub type Gaussian = Complex<i128>;
pub type C64 = Complex<f64>;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("xi branch must be in 0..4, got {0}")]
    InvalidBranch(u8),
    #[error("the exact backend needs n = 4 (got n = {0})")]
    NoExactBackend(usize),
    #[error("invalid spin model: {0}")]
    InvalidModel(String),
    #[error("state space too large: {size} evaluations exceeds the cap of {cap}")]
    StateSpaceTooLarge { size: u128, cap: u64 },
    #[error("partition function is not divisible by d^N")]
    NotDivisible,
    #[error("normalized value depends on the colouring: {0} vs {1}")]
    ColoringMismatch(String, String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Scalars a spin model can be evaluated over.
pub trait SpinScalar:
    Copy
    + Send
    + Sync
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn from_i64(v: i64) -> Self;
    fn div_exact(self, d: Self) -> Option<Self>;
    fn to_c64(self) -> C64;
    fn close(self, o: Self, tol: f64) -> bool;

    fn inv(self) -> Option<Self> {
        Self::one().div_exact(self)
    }

    fn powi(self, e: i64) -> Option<Self> {
        let b = if e < 0 { self.inv()? } else { self };
        let mut r = Self::one();
        for _ in 0..e.unsigned_abs() {
            r = r * b;
        }
        Some(r)
    }
}

impl SpinScalar for Gaussian {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Complex::new(v as i128, 0)
    }

    fn div_exact(self, d: Self) -> Option<Self> {
        let n = d.norm_sqr();
        if n == 0 {
            return None;
        }
        let p = self * d.conj();
        (p.re % n == 0 && p.im % n == 0).then(|| Complex::new(p.re / n, p.im / n))
    }

    fn to_c64(self) -> C64 {
        C64::new(self.re as f64, self.im as f64)
    }

    fn close(self, o: Self, _tol: f64) -> bool {
        self == o
    }
}

impl SpinScalar for C64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn div_exact(self, d: Self) -> Option<Self> {
        (d.norm_sqr() != 0.0).then(|| self / d)
    }

    fn to_c64(self) -> C64 {
        self
    }

    fn close(self, o: Self, tol: f64) -> bool {
        let scale = 1f64.max(self.norm()).max(o.norm());
        (self - o).norm() <= tol * scale
    }
}

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrix<S> {
    pub n: usize,
    pub data: Vec<S>,
}

impl<S: SpinScalar> SpinMatrix<S> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        Self { n, data: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn get(&self, a: usize, b: usize) -> S {
        self.data[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: S) {
        self.data[a * self.n + b] = v;
    }

    /// Entry-wise inverse, if every entry is invertible.
    pub fn hadamard_inverse(&self) -> Option<Self> {
        let data = self.data.iter().map(|x| x.inv()).collect::<Option<Vec<_>>>()?;
        Some(Self { n: self.n, data })
    }

    /// (-x^{-3}) I + x (J - I)
    pub fn potts(n: usize, x: S) -> Option<Self> {
        let diag = -x.powi(-3)?;
        Some(Self::from_fn(n, |a, b| if a == b { diag } else { x }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Debug)]
pub struct SpinModel<S> {
    pub n: usize,
    pub d: S,
    pub xi: S,
    pub w_plus: SpinMatrix<S>,
    pub w_minus: SpinMatrix<S>,
    pub v_plus: SpinMatrix<S>,
    pub v_minus: SpinMatrix<S>,
    pub tol: f64,
}

/// Result of an axiom check; `residual` is the largest absolute deviation seen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomCheck {
    pub passed: bool,
    pub residual: f64,
}

impl<S: SpinScalar> SpinModel<S> {
    /// Builds a model from W⁺; W⁻ is its Hadamard inverse and V± are the Potts matrices in ξ.
    pub fn from_w_plus(n: usize, d: S, xi: S, w_plus: SpinMatrix<S>, tol: f64) -> Result<Self, SpinError> {
        let bad = || SpinError::InvalidModel("matrix has a zero entry".into());
        let w_minus = w_plus.hadamard_inverse().ok_or_else(bad)?;
        let v_plus = SpinMatrix::potts(n, xi).ok_or_else(bad)?;
        let v_minus = SpinMatrix::potts(n, xi.inv().ok_or_else(bad)?).ok_or_else(bad)?;
        Ok(Self { n, d, xi, w_plus, w_minus, v_plus, v_minus, tol })
    }

    pub fn edge_matrix(&self, sign: i8, on_axis: bool) -> &SpinMatrix<S> {
        match (on_axis, sign > 0) {
            (true, true) => &self.v_plus,
            (true, false) => &self.v_minus,
            (false, true) => &self.w_plus,
            (false, false) => &self.w_minus,
        }
    }
}

fn dev<S: SpinScalar>(a: S, b: S) -> f64 {
    (a.to_c64() - b.to_c64()).norm()
}

/// W⁺ symmetric with nonzero entries and W⁺ ∘ W⁻ = J.
pub fn check_type_ii<S: SpinScalar>(m: &SpinModel<S>) -> AxiomCheck {
    let mut passed = true;
    let mut residual = 0f64;
    for a in 0..m.n {
        for b in 0..m.n {
            let w = m.w_plus.get(a, b);
            if w.is_zero() || !w.close(m.w_plus.get(b, a), m.tol) {
                passed = false;
            }
            let h = w * m.w_minus.get(a, b);
            residual = residual.max(dev(h, S::one()));
            passed &= h.close(S::one(), m.tol);
        }
    }
    AxiomCheck { passed, residual }
}

/// W⁺ Y_ab = d W⁻(a,b) Y_ab with Y_ab(x) = W⁺(x,a)/W⁺(x,b), checked after
/// clearing the denominators Π_x W⁺(x,b).
pub fn check_type_iii<S: SpinScalar>(m: &SpinModel<S>) -> AxiomCheck {
    let n = m.n;
    let w = &m.w_plus;
    let mut passed = true;
    let mut residual = 0f64;
    for a in 0..n {
        for b in 0..n {
            let y: Vec<S> = (0..n)
                .map(|x| (0..n).filter(|&z| z != x).fold(w.get(x, a), |acc, z| acc * w.get(z, b)))
                .collect();
            let k = m.d * m.w_minus.get(a, b);
            for x in 0..n {
                let lhs = (0..n).fold(S::zero(), |acc, z| acc + w.get(x, z) * y[z]);
                let rhs = k * y[x];
                residual = residual.max(dev(lhs, rhs));
                passed &= lhs.close(rhs, m.tol);
            }
        }
    }
    AxiomCheck { passed, residual }
}

fn float_xi(n: usize, d_sign: i8, branch: u8) -> (C64, C64) {
    let d = C64::new((n as f64).sqrt() * d_sign.signum() as f64, 0.0);
    let sq = (d * d - 4.0).sqrt();
    let xi2 = (-d + if branch & 1 == 0 { sq } else { -sq }) / 2.0;
    let xi = xi2.sqrt() * if branch & 2 == 0 { 1.0 } else { -1.0 };
    (d, xi)
}

/// Roots of ξ⁴ + dξ² + 1 for d = ±2 are ξ = ±i (d = 2) and ξ = ±1 (d = -2).
fn exact_xi(d_sign: i8, branch: u8) -> (Gaussian, Gaussian) {
    let d = Gaussian::new(2 * d_sign.signum() as i128, 0);
    let base = if d_sign > 0 { Gaussian::new(0, 1) } else { Gaussian::new(1, 0) };
    (d, if branch & 2 == 0 { base } else { -base })
}

fn finish_model<S: SpinScalar>(n: usize, d: S, xi: S, tol: f64) -> Result<SpinModel<S>, SpinError> {
    let bad = |m: &str| SpinError::InvalidModel(m.into());
    let xinv = xi.inv().ok_or_else(|| bad("xi is not invertible"))?;
    if !(-(xi * xi) - xinv * xinv).close(d, tol) {
        return Err(bad("d != -xi^2 - xi^-2"));
    }
    if !(d * d).close(S::from_i64(n as i64), tol) {
        return Err(bad("d^2 != n"));
    }
    let w = SpinMatrix::potts(n, xi).ok_or_else(|| bad("xi is not invertible"))?;
    let m = SpinModel::from_w_plus(n, d, xi, w, tol)?;
    if !check_type_ii(&m).passed {
        return Err(bad("type II relation fails"));
    }
    if !check_type_iii(&m).passed {
        return Err(bad("type III relation fails"));
    }
    Ok(m)
}

pub fn potts_exact(d_sign: i8, branch: u8) -> Result<SpinModel<Gaussian>, SpinError> {
    if branch > 3 {
        return Err(SpinError::InvalidBranch(branch));
    }
    let (d, xi) = exact_xi(d_sign, branch);
    finish_model(4, d, xi, 0.0)
}

pub fn potts_float(n: usize, d_sign: i8, branch: u8, tol: f64) -> Result<SpinModel<C64>, SpinError> {
    if branch > 3 {
        return Err(SpinError::InvalidBranch(branch));
    }
    if n < 2 {
        return Err(SpinError::InvalidModel(format!("need n >= 2, got {n}")));
    }
    let (d, xi) = float_xi(n, d_sign, branch);
    finish_model(n, d, xi, tol)
}

/// A Potts model on either backend.
#[derive(Clone, Debug)]
pub enum Model {
    Exact(SpinModel<Gaussian>),
    Float(SpinModel<C64>),
}

/// A computed spin-model value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpinValue {
    Exact(Gaussian),
    Float(C64),
}

impl SpinValue {
    pub fn to_c64(self) -> C64 {
        match self {
            SpinValue::Exact(z) => z.to_c64(),
            SpinValue::Float(z) => z,
        }
    }

    pub fn close(self, o: SpinValue, tol: f64) -> bool {
        match (self, o) {
            (SpinValue::Exact(a), SpinValue::Exact(b)) => a == b,
            _ => self.to_c64().close(o.to_c64(), tol),
        }
    }
}

impl fmt::Display for SpinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinValue::Exact(z) => write!(f, "{}{:+}i", z.re, z.im),
            SpinValue::Float(z) => {
                let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
                write!(f, "{:.12}{:+.12}i", clean(z.re), clean(z.im))
            }
        }
    }
}

/// Potts model with n states; the exact backend is the default for n = 4.
pub fn potts_model(n: usize, d_sign: i8, xi_branch: u8, backend: Option<Backend>, tol: f64) -> Result<Model, SpinError> {
    match backend.unwrap_or(if n == 4 { Backend::Exact } else { Backend::Float }) {
        Backend::Exact if n == 4 => Ok(Model::Exact(potts_exact(d_sign, xi_branch)?)),
        Backend::Exact => Err(SpinError::NoExactBackend(n)),
        Backend::Float => Ok(Model::Float(potts_float(n, d_sign, xi_branch, tol)?)),
    }
}

impl Model {
    pub fn n(&self) -> usize {
        match self {
            Model::Exact(m) => m.n,
            Model::Float(m) => m.n,
        }
    }

    pub fn tol(&self) -> f64 {
        match self {
            Model::Exact(_) => 0.0,
            Model::Float(m) => m.tol,
        }
    }

    pub fn check_type_ii(&self) -> AxiomCheck {
        match self {
            Model::Exact(m) => check_type_ii(m),
            Model::Float(m) => check_type_ii(m),
        }
    }

    pub fn check_type_iii(&self) -> AxiomCheck {
        match self {
            Model::Exact(m) => check_type_iii(m),
            Model::Float(m) => check_type_iii(m),
        }
    }

    pub fn normalized_i(&self, d: &Diagram) -> Result<SpinValue, SpinError> {
        self.normalized_i_with(d, &default_caps())
    }

    pub fn normalized_i_with(&self, d: &Diagram, caps: &Caps) -> Result<SpinValue, SpinError> {
        match self {
            Model::Exact(m) => normalized_i_with(m, d, SpinEngine::default(), caps).map(SpinValue::Exact),
            Model::Float(m) => normalized_i_with(m, d, SpinEngine::default(), caps).map(SpinValue::Float),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MedialEdge {
    pub crossing: usize,
    pub v: usize,
    pub w: usize,
    pub sign: i8,
    pub on_axis: bool,
}

/// Vertices are black faces (None for the disc bounded by a free loop).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedialGraph {
    pub vertices: Vec<Option<usize>>,
    pub edges: Vec<MedialEdge>,
}

impl MedialGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// An edge is positive when the black corners are those following the under-strand
/// slots counterclockwise (corners 0 and 2).
pub fn medial(d: &Diagram, c: &Coloring) -> MedialGraph {
    let mut vid = vec![usize::MAX; c.faces.count()];
    let mut vertices = Vec::new();
    for f in 0..c.faces.count() {
        if c.color[f] == Color::Black {
            vid[f] = vertices.len();
            vertices.push(Some(f));
        }
    }
    let edges = (0..d.len())
        .map(|x| {
            let positive = c.corner_color(x, 0) == Color::Black;
            let k = if positive { 0 } else { 1 };
            MedialEdge {
                crossing: x,
                v: vid[c.faces.corner(x, k)],
                w: vid[c.faces.corner(x, k + 2)],
                sign: if positive { 1 } else { -1 },
                on_axis: d.crossing(x).on_axis,
            }
        })
        .collect();
    vertices.extend(d.free_loops().iter().map(|_| None));
    MedialGraph { vertices, edges }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpinEngine {
    /// Direct sum over all n^N vertex labellings.
    Enumerate,
    /// Variable elimination over the medial graph.
    #[default]
    Eliminate,
}

fn sum_enumerate<S: SpinScalar>(m: &SpinModel<S>, g: &MedialGraph, caps: &Caps) -> Result<S, SpinError> {
    let n = m.n;
    let nv = g.vertex_count();
    let size = (n as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
    if size > caps.spin_evaluations as u128 {
        return Err(SpinError::StateSpaceTooLarge { size, cap: caps.spin_evaluations });
    }
    let size = size as usize;
    let mats: Vec<&SpinMatrix<S>> = g.edges.iter().map(|e| m.edge_matrix(e.sign, e.on_axis)).collect();
    const BLOCK: usize = 1 << 12;
    let blocks = size.div_ceil(BLOCK);
    Ok(par::map_reduce(
        blocks,
        S::zero,
        |blk| {
            let mut acc = S::zero();
            let mut sigma = vec![0usize; nv];
            for idx in blk * BLOCK..((blk + 1) * BLOCK).min(size) {
                let mut r = idx;
                for s in sigma.iter_mut() {
                    *s = r % n;
                    r /= n;
                }
                let term = g
                    .edges
                    .iter()
                    .zip(&mats)
                    .fold(S::one(), |t, (e, w)| t * w.get(sigma[e.v], sigma[e.w]));
                acc = acc + term;
            }
            acc
        },
        |a, b| a + b,
    ))
}

struct Factor<S> {
    vars: Vec<usize>,
    table: Vec<S>,
}

fn sum_eliminate<S: SpinScalar>(m: &SpinModel<S>, g: &MedialGraph, caps: &Caps) -> Result<S, SpinError> {
    let n = m.n;
    let nv = g.vertex_count();
    let mut factors: Vec<Factor<S>> = g
        .edges
        .iter()
        .map(|e| {
            let w = m.edge_matrix(e.sign, e.on_axis);
            if e.v == e.w {
                Factor { vars: vec![e.v], table: (0..n).map(|a| w.get(a, a)).collect() }
            } else {
                let (lo, hi) = (e.v.min(e.w), e.v.max(e.w));
                // index = a_lo + n * a_hi
                let table = (0..n * n).map(|k| {
                    let (al, ah) = (k % n, k / n);
                    if lo == e.v { w.get(al, ah) } else { w.get(ah, al) }
                });
                Factor { vars: vec![lo, hi], table: table.collect() }
            }
        })
        .collect();
    let mut scalar = S::one();
    let mut live: Vec<bool> = vec![true; nv];
    for _ in 0..nv {
        // variable whose elimination creates the smallest table
        let mut best: Option<(usize, usize)> = None;
        for x in (0..nv).filter(|&x| live[x]) {
            let mut scope: Vec<usize> = factors
                .iter()
                .filter(|f| f.vars.contains(&x))
                .flat_map(|f| f.vars.iter().copied())
                .collect();
            scope.sort_unstable();
            scope.dedup();
            if best.is_none_or(|(_, s)| scope.len() < s) {
                best = Some((x, scope.len()));
            }
        }
        let (x, _) = best.unwrap();
        live[x] = false;
        let (mine, rest): (Vec<Factor<S>>, Vec<Factor<S>>) = factors.into_iter().partition(|f| f.vars.contains(&x));
        factors = rest;
        if mine.is_empty() {
            scalar = scalar * S::from_i64(n as i64);
            continue;
        }
        let mut scope: Vec<usize> = mine.iter().flat_map(|f| f.vars.iter().copied()).collect();
        scope.sort_unstable();
        scope.dedup();
        let size = (n as u128).pow(scope.len() as u32);
        if size > caps.spin_evaluations as u128 {
            return Err(SpinError::StateSpaceTooLarge { size, cap: caps.spin_evaluations });
        }
        let xpos = scope.iter().position(|&v| v == x).unwrap();
        let out_vars: Vec<usize> = scope.iter().copied().filter(|&v| v != x).collect();
        let out_size = n.pow(out_vars.len() as u32);
        // strides of each factor variable inside the joint scope
        let maps: Vec<Vec<usize>> = mine
            .iter()
            .map(|f| f.vars.iter().map(|v| scope.iter().position(|s| s == v).unwrap()).collect())
            .collect();
        let table = par::map_collect(out_size, |oi| {
            let mut assign = vec![0usize; scope.len()];
            let mut r = oi;
            for (k, slot) in assign.iter_mut().enumerate() {
                if k == xpos {
                    continue;
                }
                *slot = r % n;
                r /= n;
            }
            let mut acc = S::zero();
            for a in 0..n {
                assign[xpos] = a;
                let mut t = S::one();
                for (f, map) in mine.iter().zip(&maps) {
                    let mut idx = 0;
                    for &p in map.iter().rev() {
                        idx = idx * n + assign[p];
                    }
                    t = t * f.table[idx];
                }
                acc = acc + t;
            }
            acc
        });
        if out_vars.is_empty() {
            scalar = scalar * table[0];
        } else {
            factors.push(Factor { vars: out_vars, table });
        }
    }
    Ok(scalar)
}

/// Unnormalized state sum Σ_σ Π_e M_e(σv, σw).
pub fn state_sum<S: SpinScalar>(m: &SpinModel<S>, g: &MedialGraph, engine: SpinEngine, caps: &Caps) -> Result<S, SpinError> {
    match engine {
        SpinEngine::Enumerate => sum_enumerate(m, g, caps),
        SpinEngine::Eliminate => sum_eliminate(m, g, caps),
    }
}

/// Z = d^{-N} Σ_σ Π_e M_e(σv, σw).
pub fn partition_z<S: SpinScalar>(m: &SpinModel<S>, g: &MedialGraph) -> Result<S, SpinError> {
    partition_z_with(m, g, SpinEngine::default(), &default_caps())
}

pub fn partition_z_with<S: SpinScalar>(
    m: &SpinModel<S>,
    g: &MedialGraph,
    engine: SpinEngine,
    caps: &Caps,
) -> Result<S, SpinError> {
    let sum = state_sum(m, g, engine, caps)?;
    let dn = m.d.powi(g.vertex_count() as i64).unwrap();
    sum.div_exact(dn).ok_or(SpinError::NotDivisible)
}

/// I = (-ξ^{-3})^{p - n} Z, where p and n count positive and negative axis crossings.
pub fn normalized_i_with_coloring<S: SpinScalar>(
    m: &SpinModel<S>,
    d: &Diagram,
    c: &Coloring,
    engine: SpinEngine,
    caps: &Caps,
) -> Result<S, SpinError> {
    let z = partition_z_with(m, &medial(d, c), engine, caps)?;
    let w = d.writhe();
    let unit = -m.xi.powi(-3).unwrap();
    Ok(unit.powi(w.axis()).unwrap() * z)
}

/// I with the default colouring; the inverted colouring is evaluated too and must agree.
pub fn normalized_i<S: SpinScalar>(m: &SpinModel<S>, d: &Diagram) -> Result<S, SpinError> {
    normalized_i_with(m, d, SpinEngine::default(), &default_caps())
}

pub fn normalized_i_with<S: SpinScalar>(m: &SpinModel<S>, d: &Diagram, engine: SpinEngine, caps: &Caps) -> Result<S, SpinError> {
    let c = d.chequerboard()?;
    let a = normalized_i_with_coloring(m, d, &c, engine, caps)?;
    let b = normalized_i_with_coloring(m, d, &c.inverted(), engine, caps)?;
    if !a.close(b, m.tol) {
        return Err(SpinError::ColoringMismatch(format!("{a:?}"), format!("{b:?}")));
    }
    Ok(a)
}
