//! The refined two-variable polynomial W by axis-skein expansion.

use crate::algebra::{s_loop, t_loop, BiLaurent, RatFunc};
use crate::bracket::{jones_with, BracketEngine, BracketError, A_PAIRS, B_PAIRS};
use crate::config::{default_caps, Caps};
use crate::diagram::{Diagram, Draft};
use crate::par;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefinedError {
    #[error("state space too large: {axis} axis crossings exceeds the cap of {cap}")]
    StateSpaceTooLarge { axis: usize, cap: usize },
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// Horizontal (0) or vertical (1) resolution of an axis crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Resolution {
    Horizontal = 0,
    Vertical = 1,
}

/// Slot pairs of the horizontal and vertical smoothings of an on-axis crossing.
/// The horizontal arcs cross the axis; with a reflection-reversing orientation
/// they form the oriented smoothing, which is the A-smoothing exactly when the
/// crossing is positive.
pub fn axis_smoothing(d: &Diagram, c: usize, r: Resolution) -> [(u8, u8); 2] {
    let positive = d.crossing(c).sign() > 0;
    match (r, positive) {
        (Resolution::Horizontal, true) | (Resolution::Vertical, false) => A_PAIRS,
        _ => B_PAIRS,
    }
}

/// Skein coefficient of one resolution: -s^{-1/2}, -s^{-1} at a positive crossing,
/// -s^{1/2}, -s at a negative one.
pub fn resolution_coefficient(sign: i32, r: Resolution) -> BiLaurent {
    let half_steps = match r {
        Resolution::Horizontal => 1,
        Resolution::Vertical => 2,
    };
    BiLaurent::monomial(-1, -sign as i64 * half_steps, 0)
}

#[derive(Clone, Debug)]
pub struct AxisResolutionState {
    /// One choice per axis crossing, in axis order.
    pub choices: Vec<Resolution>,
    pub coefficient: BiLaurent,
    pub diagram: Diagram,
}

/// Smooths the given on-axis crossings and re-orients the result.
pub fn resolve_crossings(d: &Diagram, picks: &[(usize, Resolution)]) -> Diagram {
    let mut draft = Draft::from_diagram(d);
    for &(c, r) in picks {
        assert!(d.crossing(c).on_axis, "only axis crossings are resolved here");
        draft.remove_join(c, axis_smoothing(d, c, r));
    }
    draft.finish_reoriented()
}

fn state(d: &Diagram, axis: &[usize], mask: u64) -> AxisResolutionState {
    let mut coefficient = BiLaurent::one();
    let mut choices = Vec::with_capacity(axis.len());
    let mut picks = Vec::with_capacity(axis.len());
    for (i, &c) in axis.iter().enumerate() {
        let r = if mask >> i & 1 == 0 { Resolution::Horizontal } else { Resolution::Vertical };
        coefficient = &coefficient * &resolution_coefficient(d.crossing(c).sign(), r);
        choices.push(r);
        picks.push((c, r));
    }
    AxisResolutionState { choices, coefficient, diagram: resolve_crossings(d, &picks) }
}

pub fn resolve_axis(d: &Diagram) -> Result<Vec<AxisResolutionState>, RefinedError> {
    resolve_axis_with(d, &default_caps())
}

pub fn resolve_axis_with(d: &Diagram, caps: &Caps) -> Result<Vec<AxisResolutionState>, RefinedError> {
    let axis = d.axis_crossings();
    if axis.len() > caps.axis_crossings {
        return Err(RefinedError::StateSpaceTooLarge { axis: axis.len(), cap: caps.axis_crossings });
    }
    Ok(par::map_collect(1usize << axis.len(), |m| state(d, &axis, m as u64)))
}

/// W for a diagram with no axis crossings: ((s^{1/2}+s^{-1/2})/(t^{1/2}+t^{-1/2}))^{n-1} V.
/// Returned as (numerator, power of the denominator).
fn base_value(d: &Diagram, engine: BracketEngine, caps: &Caps) -> Result<(BiLaurent, u32), BracketError> {
    let v = jones_with(d, engine, caps)?;
    let k = d.component_count().saturating_sub(1) as u32;
    Ok((&s_loop().pow(k) * &v, k))
}

pub fn refined_w(d: &Diagram) -> Result<RatFunc, RefinedError> {
    refined_w_with(d, BracketEngine::default(), &default_caps())
}

pub fn refined_w_with(d: &Diagram, engine: BracketEngine, caps: &Caps) -> Result<RatFunc, RefinedError> {
    let axis = d.axis_crossings();
    if axis.len() > caps.axis_crossings {
        return Err(RefinedError::StateSpaceTooLarge { axis: axis.len(), cap: caps.axis_crossings });
    }
    let terms: Vec<Result<(BiLaurent, u32), BracketError>> = par::map_collect(1usize << axis.len(), |m| {
        let st = state(d, &axis, m as u64);
        let (num, k) = base_value(&st.diagram, engine, caps)?;
        Ok((&st.coefficient * &num, k))
    });
    let terms: Vec<(BiLaurent, u32)> = terms.into_iter().collect::<Result<_, _>>()?;
    let top = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let q = t_loop();
    let mut num = BiLaurent::zero();
    for (p, k) in terms {
        num = &num + &(&p * &q.pow(top - k));
    }
    Ok(RatFunc::new(num, q.pow(top)).expect("nonzero denominator"))
}

/// Same value computed by expanding one axis crossing at a time.
pub fn refined_w_recursive(d: &Diagram) -> Result<RatFunc, RefinedError> {
    let axis = d.axis_crossings();
    let Some(&c) = axis.first() else {
        let (num, k) = base_value(d, BracketEngine::default(), &default_caps())?;
        return Ok(RatFunc::new(num, t_loop().pow(k)).unwrap());
    };
    let sign = d.crossing(c).sign();
    let mut out = RatFunc::zero();
    for r in [Resolution::Horizontal, Resolution::Vertical] {
        let sub = resolve_crossings(d, &[(c, r)]);
        let w = refined_w_recursive(&sub)?;
        out = &out + &(&RatFunc::from(resolution_coefficient(sign, r)) * &w);
    }
    Ok(out)
}

/// Coefficients of an axis-skein invariant and its values on the 2- and 3-component unlinks.
#[derive(Clone, Debug)]
pub struct SkeinCoefficients {
    pub a_plus: RatFunc,
    pub a_minus: RatFunc,
    pub b_plus: RatFunc,
    pub b_minus: RatFunc,
    pub u2: RatFunc,
    pub u3: RatFunc,
}

impl SkeinCoefficients {
    /// The coefficients of W.
    pub fn refined_jones() -> Self {
        let m = |a: i64| RatFunc::from(BiLaurent::monomial(-1, a, 0));
        let u2 = -s_loop();
        Self {
            a_plus: m(-1),
            a_minus: m(1),
            b_plus: m(-2),
            b_minus: m(2),
            u3: RatFunc::from(&u2 * &u2),
            u2: RatFunc::from(u2),
        }
    }

    /// The Potts coefficients with xi written as s^{1/2}, so d = -s - s^{-1}.
    pub fn potts_symbolic() -> Self {
        let m = |a: i64| RatFunc::from(BiLaurent::monomial(-1, a, 0));
        let d = BiLaurent::from_terms([((2, 0), -1), ((-2, 0), -1)]);
        Self {
            a_plus: m(-2),
            a_minus: m(2),
            b_plus: m(-4),
            b_minus: m(4),
            u2: RatFunc::from(d.pow(2)),
            u3: RatFunc::from(d.pow(3)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SkeinCheck {
    /// b+ b- - 1
    pub residual_b: RatFunc,
    /// (a+ b- + a- b+) u2 + a+ a- u3
    pub residual_u: RatFunc,
}

impl SkeinCheck {
    pub fn passed(&self) -> bool {
        self.residual_b.is_zero() && self.residual_u.is_zero()
    }
}

pub fn check_skein_conditions(c: &SkeinCoefficients) -> SkeinCheck {
    let residual_b = &(&c.b_plus * &c.b_minus) - &RatFunc::one();
    let mixed = &(&c.a_plus * &c.b_minus) + &(&c.a_minus * &c.b_plus);
    let residual_u = &(&mixed * &c.u2) + &(&(&c.a_plus * &c.a_minus) * &c.u3);
    SkeinCheck { residual_b, residual_u }
}
