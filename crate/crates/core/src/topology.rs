//! Balls, convergence and Cauchy gap diagnostics, and the gap
//! continuity inequality.
//!
//! The central quantity is the pair gap `d(a, b) = m(a,a,b) -
//! min_self(a,a,b)`: the triple value at `(a,a,b)` minus the smaller of
//! the two self-distances. On a validated space it is non-negative (the
//! lower-bound axiom at that pattern) and symmetric in its arguments
//! (pair symmetry). Balls collect the points within a gap budget of the
//! center; sequence diagnostics track how the gap behaves along a
//! sequence. Limits cannot be decided from a finite prefix, so every
//! sequence verdict is a finite-prefix surrogate: exact constancy (or
//! exact vanishing) on the tail quarter of the prefix stands in for the
//! limit condition.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::space::{MsSpace, PointId, SpaceError};
use crate::value::{Rational, Value};

/// Errors from sequence diagnostics.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence must be non-empty")]
    Empty,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Finite-prefix surrogate verdicts for the sequence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every gap in the tail quarter is exactly zero.
    Converged,
    NotConverged,
    /// Both the pair gaps and the self-distance spreads are exactly
    /// constant over the tail-quarter pairs.
    CauchyLike,
    NotCauchyLike,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Converged | Verdict::CauchyLike)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Converged => "converged",
            Verdict::NotConverged => "not-converged",
            Verdict::CauchyLike => "cauchy-like",
            Verdict::NotCauchyLike => "not-cauchy-like",
        })
    }
}

/// Gap diagnostics along a sequence.
///
/// For a convergence profile, `gaps[n]` is `d(seq[n], limit)` and
/// `spread` is empty. For a Cauchy profile, `gaps` and `spread` run over
/// all index pairs `n < m` in lexicographic order: the pair gap
/// `d(seq[n], seq[m])` and the self-distance spread
/// `max_self - min_self` of the pattern `(seq[n], seq[n], seq[m])`.
/// Gaps are signed so that diagnostics stay honest on unvalidated
/// tables; on a validated space every entry is non-negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProfile {
    pub seq: Vec<PointId>,
    pub limit: Option<PointId>,
    pub gaps: Vec<Rational>,
    pub spread: Vec<Rational>,
    pub verdict: Verdict,
}

/// Pair gap `d(a, b) = m(a,a,b) - min_self(a,a,b)`, by point index.
pub fn pair_gap_at(space: &MsSpace, a: usize, b: usize) -> Rational {
    space.value_at(a, a, b).ratio() - space.min_self_at(a, a, b).ratio()
}

/// Closed ball: every point whose pair gap from the center is at most
/// `eta`, in declaration order. A radius of zero is allowed and yields
/// the points at gap exactly zero (always including the center).
pub fn ball(space: &MsSpace, center: &PointId, eta: &Value) -> Result<Vec<PointId>, SpaceError> {
    let c = space.index_of(center)?;
    let eta = eta.ratio();
    Ok((0..space.len())
        .filter(|&y| &pair_gap_at(space, c, y) <= eta)
        .map(|y| space.point(y).clone())
        .collect())
}

/// Number of elements in the tail quarter of a length-`len` prefix.
fn tail_len(len: usize) -> usize {
    len.div_ceil(4)
}

fn resolve_seq(space: &MsSpace, seq: &[PointId]) -> Result<Vec<usize>, SequenceError> {
    if seq.is_empty() {
        return Err(SequenceError::Empty);
    }
    seq.iter()
        .map(|p| space.index_of(p).map_err(SequenceError::from))
        .collect()
}

/// Gap profile of a sequence against a candidate limit: `gaps[n] =
/// d(seq[n], x)`. The verdict is `Converged` iff the tail quarter of the
/// gaps is identically zero (finite-prefix surrogate for the gap
/// vanishing in the limit).
pub fn convergence_gaps(
    space: &MsSpace,
    seq: &[PointId],
    x: &PointId,
) -> Result<GapProfile, SequenceError> {
    let idx = resolve_seq(space, seq)?;
    let xi = space.index_of(x)?;
    let gaps: Vec<Rational> = idx.iter().map(|&n| pair_gap_at(space, n, xi)).collect();
    let tail = &gaps[gaps.len() - tail_len(gaps.len())..];
    let verdict = if tail.iter().all(|g| g.is_zero()) {
        Verdict::Converged
    } else {
        Verdict::NotConverged
    };
    Ok(GapProfile {
        seq: seq.to_vec(),
        limit: Some(x.clone()),
        gaps,
        spread: Vec::new(),
        verdict,
    })
}

/// Pairwise gap profile of a sequence: for every index pair `n < m`, the
/// pair gap `d(seq[n], seq[m])` and the spread `max_self - min_self` of
/// the two self-distances. The verdict is `CauchyLike` iff both families
/// are exactly constant over the pairs drawn from the tail quarter
/// (vacuously constant when the tail has fewer than two elements).
pub fn cauchy_profile(space: &MsSpace, seq: &[PointId]) -> Result<GapProfile, SequenceError> {
    let idx = resolve_seq(space, seq)?;
    let len = idx.len();
    let mut gaps = Vec::new();
    let mut spread = Vec::new();
    for n in 0..len {
        for m in (n + 1)..len {
            gaps.push(pair_gap_at(space, idx[n], idx[m]));
            spread.push(
                space.max_self_at(idx[n], idx[n], idx[m]).ratio()
                    - space.min_self_at(idx[n], idx[n], idx[m]).ratio(),
            );
        }
    }

    let tail_start = len - tail_len(len);
    let mut tail_gaps = Vec::new();
    let mut tail_spread = Vec::new();
    for n in tail_start..len {
        for m in (n + 1)..len {
            tail_gaps.push(pair_gap_at(space, idx[n], idx[m]));
            tail_spread.push(
                space.max_self_at(idx[n], idx[n], idx[m]).ratio()
                    - space.min_self_at(idx[n], idx[n], idx[m]).ratio(),
            );
        }
    }
    let constant = |xs: &[Rational]| xs.windows(2).all(|w| w[0] == w[1]);
    let verdict = if constant(&tail_gaps) && constant(&tail_spread) {
        Verdict::CauchyLike
    } else {
        Verdict::NotCauchyLike
    };

    Ok(GapProfile {
        seq: seq.to_vec(),
        limit: None,
        gaps,
        spread,
        verdict,
    })
}

/// One evaluation of the gap continuity inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapContinuity {
    pub holds: bool,
    /// `|d(xp, yp) - d(x, y)|`
    pub lhs: Rational,
    /// `2 [ d(xp, x) + d(yp, y) ]`
    pub rhs: Rational,
}

/// Checks `|d(xp,yp) - d(x,y)| <= 2 [ d(xp,x) + d(yp,y) ]` for one
/// quadruple. On any space satisfying pair symmetry and the
/// quadrilateral axiom this holds for every quadruple: chaining the
/// quadrilateral bound `d(a,b) <= 2 d(a,t) + d(b,t)` through `x` and
/// then `y` bounds each side of the difference by the other plus the
/// right-hand side.
pub fn gap_continuity_check(
    space: &MsSpace,
    xp: &PointId,
    yp: &PointId,
    x: &PointId,
    y: &PointId,
) -> Result<GapContinuity, SpaceError> {
    Ok(gap_continuity_at(
        space,
        space.index_of(xp)?,
        space.index_of(yp)?,
        space.index_of(x)?,
        space.index_of(y)?,
    ))
}

fn gap_continuity_at(space: &MsSpace, xp: usize, yp: usize, x: usize, y: usize) -> GapContinuity {
    let mut lhs = pair_gap_at(space, xp, yp) - pair_gap_at(space, x, y);
    if lhs < Rational::zero() {
        lhs = -lhs;
    }
    let two = Rational::from_integer(2.into());
    let rhs = two * (pair_gap_at(space, xp, x) + pair_gap_at(space, yp, y));
    GapContinuity {
        holds: lhs <= rhs,
        lhs,
        rhs,
    }
}

/// Exhaustive gap continuity sweep over all ordered quadruples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    /// Lexicographically first failing quadruple `(xp, yp, x, y)`, if
    /// any.
    pub first_failure: Option<([PointId; 4], GapContinuity)>,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Evaluates the gap continuity inequality on all `n^4` quadruples.
pub fn gap_continuity_sweep(space: &MsSpace) -> SweepReport {
    let n = space.len();
    let mut checked = 0;
    let mut first_failure = None;
    for xp in 0..n {
        for yp in 0..n {
            for x in 0..n {
                for y in 0..n {
                    checked += 1;
                    if first_failure.is_none() {
                        let c = gap_continuity_at(space, xp, yp, x, y);
                        if !c.holds {
                            first_failure = Some((
                                [
                                    space.point(xp).clone(),
                                    space.point(yp).clone(),
                                    space.point(x).clone(),
                                    space.point(y).clone(),
                                ],
                                c,
                            ));
                        }
                    }
                }
            }
        }
    }
    SweepReport {
        checked,
        first_failure,
    }
}
