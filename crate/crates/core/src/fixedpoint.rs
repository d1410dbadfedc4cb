//! Contraction admissibility, Picard iteration, and the fixed-point
//! conclusion harness.
//!
//! Three contraction conditions on a self-map `T` are supported, each
//! decided exactly by exhaustive sweep:
//!
//! * Banach-style: `m(Tx,Tx,Ty) <= k m(x,x,y)` for some `k` in `[0, 1)`.
//!   The sweep computes the extremal ratio `k*` over all ordered pairs.
//! * Kannan-style: `m(Tx,Tx,Ty) <= l [m(x,x,Tx) + m(y,y,Ty)]` for some
//!   `l` in `[0, 1/2)`, via the extremal ratio `l*`.
//! * Weak (comparison-function) style: `m(Tx,Ty,Tz) <= m(x,y,z) -
//!   phi(m(x,y,z))` for a [`PhiFunction`], checked on all ordered
//!   triples.
//!
//! Ratio conventions: a zero numerator contributes ratio 0 whatever the
//! denominator; a zero denominator under a positive numerator makes the
//! condition infeasible (no finite constant works) and is reported with
//! its own witness. Ties for the extremal ratio resolve to the
//! lexicographically first witness in declaration order, so reports are
//! deterministic.
//!
//! [`picard`] iterates the map from a start point until it hits an exact
//! fixed point, detects a cycle, or exhausts its budget.
//! [`contraction_harness`] ties everything together: for an admissible
//! contraction it certifies that exactly one fixed point exists, that
//! its self-distance vanishes, and that every Picard orbit reaches it.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::phi::PhiFunction;
use crate::space::{MapError, MsSpace, PointId, SelfMap, SpaceError};
use crate::topology::pair_gap_at;
use crate::value::{Rational, Value};

/// Errors from the fixed-point operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixedPointError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The three supported contraction conditions, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContractionKind {
    Banach,
    Kannan,
    Phi,
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractionKind::Banach => "banach",
            ContractionKind::Kannan => "kannan",
            ContractionKind::Phi => "phi",
        })
    }
}

/// A concrete contraction condition to test: the weak condition carries
/// its comparison function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contraction {
    Banach,
    Kannan,
    Phi(PhiFunction),
}

impl Contraction {
    pub fn kind(&self) -> ContractionKind {
        match self {
            Contraction::Banach => ContractionKind::Banach,
            Contraction::Kannan => ContractionKind::Kannan,
            Contraction::Phi(_) => ContractionKind::Phi,
        }
    }

    /// Runs the matching admissibility sweep.
    pub fn evaluate(
        &self,
        space: &MsSpace,
        map: &SelfMap,
    ) -> Result<ContractionReport, FixedPointError> {
        match self {
            Contraction::Banach => banach_constant(space, map),
            Contraction::Kannan => kannan_constant(space, map),
            Contraction::Phi(phi) => phi_check(space, map, phi),
        }
    }
}

/// Outcome of one admissibility sweep.
///
/// For the ratio conditions, `constant` is the extremal ratio (`k*` or
/// `l*`) and `witness` the lexicographically first pair attaining it;
/// `witness_sides` holds that pair's numerator and denominator. When a
/// pair has a zero denominator under a positive numerator the condition
/// is infeasible: `constant` and `witness` are absent and
/// `infeasible_witness` names the first such pair, with `witness_sides`
/// carrying its sides. For the weak condition, `witness` is the first
/// violating triple and `witness_sides` its two sides; an admissible
/// weak report carries no witness at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    pub kind: ContractionKind,
    pub admissible: bool,
    pub constant: Option<Rational>,
    pub witness: Option<Vec<PointId>>,
    pub witness_sides: Option<(Rational, Rational)>,
    pub infeasible_witness: Option<Vec<PointId>>,
}

fn ratio_sweep(
    space: &MsSpace,
    map: &SelfMap,
    kind: ContractionKind,
    threshold: Rational,
    denom: impl Fn(usize, usize) -> Rational,
) -> ContractionReport {
    let n = space.len();
    let mut best: Option<(Rational, [usize; 2], (Rational, Rational))> = None;
    let mut infeasible: Option<([usize; 2], (Rational, Rational))> = None;
    for x in 0..n {
        for y in 0..n {
            let num = space
                .value_at(map.apply_idx(x), map.apply_idx(x), map.apply_idx(y))
                .ratio()
                .clone();
            let den = denom(x, y);
            let ratio = if num.is_zero() {
                Rational::zero()
            } else if den.is_zero() {
                if infeasible.is_none() {
                    infeasible = Some(([x, y], (num, den)));
                }
                continue;
            } else {
                &num / &den
            };
            let better = match &best {
                None => true,
                Some((b, _, _)) => &ratio > b,
            };
            if better {
                best = Some((ratio, [x, y], (num, den)));
            }
        }
    }
    let witness_points = |w: &[usize; 2]| {
        w.iter()
            .map(|&i| space.point(i).clone())
            .collect::<Vec<_>>()
    };
    if let Some((w, sides)) = infeasible {
        return ContractionReport {
            kind,
            admissible: false,
            constant: None,
            witness: None,
            witness_sides: Some(sides),
            infeasible_witness: Some(witness_points(&w)),
        };
    }
    let (constant, w, sides) = best.expect("spaces are non-empty");
    ContractionReport {
        kind,
        admissible: constant < threshold,
        constant: Some(constant),
        witness: Some(witness_points(&w)),
        witness_sides: Some(sides),
        infeasible_witness: None,
    }
}

/// Extremal ratio `k*` of `m(Tx,Tx,Ty) / m(x,x,y)` over all ordered
/// pairs; admissible iff no infeasible pair and `k* < 1`.
pub fn banach_constant(
    space: &MsSpace,
    map: &SelfMap,
) -> Result<ContractionReport, FixedPointError> {
    map.check_space(space)?;
    Ok(ratio_sweep(
        space,
        map,
        ContractionKind::Banach,
        Rational::from_integer(1.into()),
        |x, y| space.value_at(x, x, y).ratio().clone(),
    ))
}

/// Extremal ratio `l*` of `m(Tx,Tx,Ty) / (m(x,x,Tx) + m(y,y,Ty))` over
/// all ordered pairs; admissible iff no infeasible pair and `l* < 1/2`.
pub fn kannan_constant(
    space: &MsSpace,
    map: &SelfMap,
) -> Result<ContractionReport, FixedPointError> {
    map.check_space(space)?;
    Ok(ratio_sweep(
        space,
        map,
        ContractionKind::Kannan,
        Rational::new(1.into(), 2.into()),
        |x, y| {
            space.value_at(x, x, map.apply_idx(x)).ratio()
                + space.value_at(y, y, map.apply_idx(y)).ratio()
        },
    ))
}

/// Checks `m(Tx,Ty,Tz) <= m(x,y,z) - phi(m(x,y,z))` on all ordered
/// triples; reports the lexicographically first violation.
pub fn phi_check(
    space: &MsSpace,
    map: &SelfMap,
    phi: &PhiFunction,
) -> Result<ContractionReport, FixedPointError> {
    map.check_space(space)?;
    let n = space.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = space
                    .value_at(map.apply_idx(x), map.apply_idx(y), map.apply_idx(z))
                    .ratio();
                let m = space.value_at(x, y, z);
                let rhs = m.ratio() - phi.eval(m).ratio();
                if lhs > &rhs {
                    return Ok(ContractionReport {
                        kind: ContractionKind::Phi,
                        admissible: false,
                        constant: None,
                        witness: Some(vec![
                            space.point(x).clone(),
                            space.point(y).clone(),
                            space.point(z).clone(),
                        ]),
                        witness_sides: Some((lhs.clone(), rhs)),
                        infeasible_witness: None,
                    });
                }
            }
        }
    }
    Ok(ContractionReport {
        kind: ContractionKind::Phi,
        admissible: true,
        constant: None,
        witness: None,
        witness_sides: None,
        infeasible_witness: None,
    })
}

/// How a Picard run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The orbit reached a point mapped to itself.
    Fixed,
    /// The orbit closed a cycle of length two or more; `entry` is the
    /// orbit position where the repeated point first appeared.
    Cycle { entry: usize },
    /// The iteration budget ran out first. Cannot happen when the
    /// budget is at least the point count.
    Budget,
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Fixed => f.write_str("fixed"),
            SolveOutcome::Cycle { .. } => f.write_str("cycle"),
            SolveOutcome::Budget => f.write_str("budget-exhausted"),
        }
    }
}

/// One Picard run: the orbit, how it ended, and per-step gap
/// diagnostics (`step_gaps[i]` is the pair gap between orbit element
/// `i+1` and element `i`; non-negative on a validated space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace {
    pub orbit: Vec<PointId>,
    pub outcome: SolveOutcome,
    /// Number of map applications performed.
    pub steps: usize,
    pub step_gaps: Vec<Rational>,
    pub fixed_point: Option<PointId>,
    /// Self-distance of the fixed point, when one was reached.
    pub self_distance_at_fix: Option<Value>,
}

/// Default iteration budget: four times the point count, comfortably
/// past the longest possible pre-periodic tail.
pub fn default_max_iter(space: &MsSpace) -> usize {
    4 * space.len()
}

/// Iterates `map` from `x0` until an exact fixed point, a detected
/// cycle, or `max_iter` applications. The start point always enters the
/// orbit; a start that is already fixed yields a two-element orbit
/// after one confirming application.
pub fn picard(
    space: &MsSpace,
    map: &SelfMap,
    x0: &PointId,
    max_iter: usize,
) -> Result<SolveTrace, FixedPointError> {
    map.check_space(space)?;
    let start = space.index_of(x0)?;

    let mut orbit_idx = vec![start];
    let mut first_seen = vec![usize::MAX; space.len()];
    first_seen[start] = 0;
    let mut step_gaps = Vec::new();
    let mut outcome = SolveOutcome::Budget;

    let mut cur = start;
    let mut steps = 0;
    while steps < max_iter {
        let next = map.apply_idx(cur);
        steps += 1;
        orbit_idx.push(next);
        step_gaps.push(pair_gap_at(space, next, cur));
        if next == cur {
            outcome = SolveOutcome::Fixed;
            break;
        }
        if first_seen[next] != usize::MAX {
            outcome = SolveOutcome::Cycle {
                entry: first_seen[next],
            };
            break;
        }
        first_seen[next] = orbit_idx.len() - 1;
        cur = next;
    }

    let fixed_point = match outcome {
        SolveOutcome::Fixed => Some(space.point(cur).clone()),
        _ => None,
    };
    let self_distance_at_fix = fixed_point.as_ref().map(|_| space.self_at(cur).clone());
    Ok(SolveTrace {
        orbit: orbit_idx.iter().map(|&i| space.point(i).clone()).collect(),
        outcome,
        steps,
        step_gaps,
        fixed_point,
        self_distance_at_fix,
    })
}

/// All points mapped to themselves, in declaration order.
pub fn enumerate_fixed_points(
    space: &MsSpace,
    map: &SelfMap,
) -> Result<Vec<PointId>, FixedPointError> {
    map.check_space(space)?;
    Ok((0..space.len())
        .filter(|&i| map.apply_idx(i) == i)
        .map(|i| space.point(i).clone())
        .collect())
}

/// Joint certificate for one (space, map, contraction) triple.
///
/// When the contraction is admissible, the harness checks three
/// conclusions: a unique fixed point exists, its self-distance is zero,
/// and Picard iteration from every start reaches it without cycling.
/// For the ratio conditions all three go into `conclusions_hold`; for
/// the weak condition the self-distance check is recorded here but kept
/// out of `conclusions_hold`, which claims only uniqueness plus
/// convergence. When the contraction is not admissible the conclusion
/// fields are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub report: ContractionReport,
    pub fixed_points: Vec<PointId>,
    pub unique_fixed_point: Option<PointId>,
    pub self_distance_zero: Option<bool>,
    pub picard_converges: Option<bool>,
    pub conclusions_hold: Option<bool>,
}

impl HarnessReport {
    pub fn admissible(&self) -> bool {
        self.report.admissible
    }
}

/// Evaluates the contraction and, if admissible, certifies the
/// fixed-point conclusions.
pub fn contraction_harness(
    space: &MsSpace,
    map: &SelfMap,
    contraction: &Contraction,
) -> Result<HarnessReport, FixedPointError> {
    let report = contraction.evaluate(space, map)?;
    let fixed_points = enumerate_fixed_points(space, map)?;
    if !report.admissible {
        return Ok(HarnessReport {
            report,
            fixed_points,
            unique_fixed_point: None,
            self_distance_zero: None,
            picard_converges: None,
            conclusions_hold: None,
        });
    }

    let unique_fixed_point = if fixed_points.len() == 1 {
        Some(fixed_points[0].clone())
    } else {
        None
    };
    let (self_distance_zero, picard_converges) = match &unique_fixed_point {
        None => (None, None),
        Some(u) => {
            let zero = space
                .self_distance(u)
                .expect("fixed point belongs to the space")
                .is_zero();
            let budget = default_max_iter(space);
            let converges = space.points().iter().all(|x0| {
                let trace =
                    picard(space, map, x0, budget).expect("start point belongs to the space");
                trace.outcome == SolveOutcome::Fixed && trace.fixed_point.as_ref() == Some(u)
            });
            (Some(zero), Some(converges))
        }
    };
    let conclusions_hold = Some(match contraction {
        Contraction::Phi(_) => unique_fixed_point.is_some() && picard_converges == Some(true),
        _ => {
            unique_fixed_point.is_some()
                && self_distance_zero == Some(true)
                && picard_converges == Some(true)
        }
    });
    Ok(HarnessReport {
        report,
        fixed_points,
        unique_fixed_point,
        self_distance_zero,
        picard_converges,
        conclusions_hold,
    })
}
