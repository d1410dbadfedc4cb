//! Exhaustive axiom checkers with exact violation witnesses.
//!
//! Two axiom families are covered: the four M_s-metric axioms (identity
//! iff, self-distance lower bound, pair symmetry, quadrilateral gap
//! inequality) and the four partial S-metric conditions (identity iff,
//! four-point inequality, self-distance minimality, pair symmetry).
//! Every check enumerates all ordered argument tuples and evaluates the
//! axiom in exact arithmetic; nothing is sampled.
//!
//! Reported violations carry a replayable witness: the named points,
//! looked up fresh in the table, reproduce the stored sides exactly and
//! falsify the axiom's comparison (see [`Violation::replay`]). Violation
//! lists are emitted in lexicographic witness order (by declaration
//! index) and, on a symmetric table, one canonical representative stands
//! for each orbit of argument permutations that denote the same
//! condition. The two sides are kept as signed rationals: the gap-based
//! right-hand sides can be negative on tables that also violate the
//! lower-bound axioms, and a non-negative type could not replay those
//! honestly.

use std::fmt;

use crate::space::{MsSpace, PointId};
use crate::value::{format_rational, Rational};

/// Violation lists are truncated at this many entries per axiom so
/// reports on badly broken tables stay bounded; `checks_performed` still
/// counts the full enumeration.
pub const MAX_VIOLATIONS_PER_AXIOM: usize = 1000;

/// Which axiom a violation falsifies.
///
/// `Ms1Strong` is the opt-in strengthened identity condition (all three
/// self-distances and the triple value coincide only for a constant
/// triple); it is not part of the base axiom set but needs its own label
/// so its witnesses replay against the right comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    Ms1,
    Ms2,
    Ms3,
    Ms4,
    Ms1Strong,
    PsI,
    PsII,
    PsIII,
    PsIV,
}

impl AxiomId {
    /// True for the M_s-metric axioms (including the strengthened
    /// identity variant).
    pub fn is_ms_family(self) -> bool {
        matches!(
            self,
            AxiomId::Ms1 | AxiomId::Ms2 | AxiomId::Ms3 | AxiomId::Ms4 | AxiomId::Ms1Strong
        )
    }

    /// True for the partial S-metric conditions.
    pub fn is_partial_s_family(self) -> bool {
        !self.is_ms_family()
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomId::Ms1 => "MS1",
            AxiomId::Ms2 => "MS2",
            AxiomId::Ms3 => "MS3",
            AxiomId::Ms4 => "MS4",
            AxiomId::Ms1Strong => "MS1-strong",
            AxiomId::PsI => "PS_i",
            AxiomId::PsII => "PS_ii",
            AxiomId::PsIII => "PS_iii",
            AxiomId::PsIV => "PS_iv",
        })
    }
}

/// One falsified axiom instance.
///
/// The sides per axiom (all exact):
///
/// * `MS1`, `PS_i`: witness `(x, y)`; lhs is the pair value `m(x,x,y)`,
///   rhs the self-distance `m(x,x,x)`. Violated when `x != y` yet both
///   self-distances and the pair value all coincide. Only this direction
///   of the iff can fail: for `x = y` every compared quantity is the
///   same table entry.
/// * `MS2`: witness `(x, y, z)`; lhs is the minimum self-distance, rhs
///   the triple value; violated when lhs > rhs.
/// * `MS3`, `PS_iv`: witness `(x, y)`; lhs is `m(x,x,y)`, rhs is
///   `m(y,y,x)`; violated when they differ.
/// * `MS4`: witness `(x, y, z, t)`; lhs is the gap
///   `m(x,y,z) - min_self(x,y,z)`, rhs the sum of the three pair gaps
///   toward `t`; violated when lhs > rhs.
/// * `MS1-strong`: witness `(x, y, z)`; lhs is the triple value, rhs the
///   common self-distance; violated when the points are not all equal
///   yet all three self-distances and the triple value coincide.
/// * `PS_ii`: witness `(x, y, z, t)`; lhs is `S(x,y,z)`, rhs is
///   `S(x,x,t) + S(y,y,t) + S(z,z,t) - S(t,t,t)`; violated when
///   lhs > rhs.
/// * `PS_iii`: witness `(x, y, z)`; lhs is the self-distance
///   `S(x,x,x)`, rhs the triple value `S(x,y,z)`; violated when
///   lhs > rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: AxiomId,
    pub witness: Vec<PointId>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Violation {
    /// Recomputes both sides from the table and re-evaluates the axiom's
    /// comparison. True iff the stored sides are reproduced exactly and
    /// the comparison is indeed violated. Returns false (rather than an
    /// error) when the witness does not belong to `space` or has the
    /// wrong arity for the axiom.
    pub fn replay(&self, space: &MsSpace) -> bool {
        let mut idx = Vec::with_capacity(self.witness.len());
        for p in &self.witness {
            match space.index_of(p) {
                Ok(i) => idx.push(i),
                Err(_) => return false,
            }
        }
        let expect = |lhs: Rational, rhs: Rational, violated: bool| {
            lhs == self.lhs && rhs == self.rhs && violated
        };
        let val = |i: usize, j: usize, k: usize| space.value_at(i, j, k).ratio().clone();
        let gap = |i: usize, j: usize, k: usize| val(i, j, k) - space.min_self_at(i, j, k).ratio();
        match (self.axiom, idx.as_slice()) {
            (AxiomId::Ms1 | AxiomId::PsI, &[x, y]) => {
                let lhs = val(x, x, y);
                let rhs = val(x, x, x);
                let violated = x != y && lhs == rhs && val(y, y, y) == rhs;
                expect(lhs, rhs, violated)
            }
            (AxiomId::Ms2, &[x, y, z]) => {
                let lhs = space.min_self_at(x, y, z).ratio().clone();
                let rhs = val(x, y, z);
                expect(lhs.clone(), rhs.clone(), lhs > rhs)
            }
            (AxiomId::Ms3 | AxiomId::PsIV, &[x, y]) => {
                let lhs = val(x, x, y);
                let rhs = val(y, y, x);
                expect(lhs.clone(), rhs.clone(), lhs != rhs)
            }
            (AxiomId::Ms4, &[x, y, z, t]) => {
                let lhs = gap(x, y, z);
                let rhs = gap(x, x, t) + gap(y, y, t) + gap(z, z, t);
                expect(lhs.clone(), rhs.clone(), lhs > rhs)
            }
            (AxiomId::Ms1Strong, &[x, y, z]) => {
                let lhs = val(x, y, z);
                let rhs = val(x, x, x);
                let violated =
                    !(x == y && y == z) && lhs == rhs && val(y, y, y) == rhs && val(z, z, z) == rhs;
                expect(lhs, rhs, violated)
            }
            (AxiomId::PsII, &[x, y, z, t]) => {
                let lhs = val(x, y, z);
                let rhs = val(x, x, t) + val(y, y, t) + val(z, z, t) - val(t, t, t);
                expect(lhs.clone(), rhs.clone(), lhs > rhs)
            }
            (AxiomId::PsIII, &[x, y, z]) => {
                let lhs = val(x, x, x);
                let rhs = val(x, y, z);
                expect(lhs.clone(), rhs.clone(), lhs > rhs)
            }
            _ => false,
        }
    }
}

/// `MS2 a a b 3 1`: axiom id, witness points, lhs, rhs.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        for p in &self.witness {
            write!(f, " {p}")?;
        }
        write!(
            f,
            " {} {}",
            format_rational(&self.lhs),
            format_rational(&self.rhs)
        )
    }
}

/// Outcome of one axiom-family sweep.
///
/// The boolean accessors are relative to the checks that were actually
/// run: a report produced by [`validate_ms`] contains no partial
/// S-metric violations, so [`ValidationReport::is_partial_s`] is only
/// meaningful on reports from [`check_partial_s`] or [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// All violations found, in lexicographic witness order per axiom,
    /// truncated at [`MAX_VIOLATIONS_PER_AXIOM`] each.
    pub violations: Vec<Violation>,
    /// Exact number of axiom-instance evaluations the sweep performed.
    pub checks_performed: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_ms(&self) -> bool {
        !self.violations.iter().any(|v| v.axiom.is_ms_family())
    }

    pub fn is_partial_s(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| v.axiom.is_partial_s_family())
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Options for [`validate_ms_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MsCheckOptions {
    /// Also run the strengthened identity condition: the three
    /// self-distances and the triple value may all coincide only when
    /// the three points are equal. This implies the base identity axiom
    /// but is not part of the axiom set, so it is off by default.
    pub strengthened_identity: bool,
}

/// Both family sweeps side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub ms: ValidationReport,
    pub partial_s: ValidationReport,
}

impl Classification {
    pub fn is_ms(&self) -> bool {
        self.ms.passed()
    }

    pub fn is_partial_s(&self) -> bool {
        self.partial_s.passed()
    }
}

struct Collector {
    violations: Vec<Violation>,
    in_axiom: usize,
}

impl Collector {
    fn new() -> Self {
        Collector {
            violations: Vec::new(),
            in_axiom: 0,
        }
    }

    fn next_axiom(&mut self) {
        self.in_axiom = 0;
    }

    fn push(
        &mut self,
        axiom: AxiomId,
        witness: &[usize],
        lhs: Rational,
        rhs: Rational,
        space: &MsSpace,
    ) {
        if self.in_axiom == MAX_VIOLATIONS_PER_AXIOM {
            return;
        }
        self.in_axiom += 1;
        self.violations.push(Violation {
            axiom,
            witness: witness.iter().map(|&i| space.point(i).clone()).collect(),
            lhs,
            rhs,
        });
    }
}

/// Identity iff: both self-distances and the pair value coincide exactly
/// when the two points are equal. Checked over all ordered pairs; on a
/// symmetric table the pairs `(x, y)` and `(y, x)` still denote distinct
/// conditions, since they compare against different multisets.
pub fn check_ms_axiom1(space: &MsSpace) -> Vec<Violation> {
    let mut c = Collector::new();
    sweep_identity_pairs(space, AxiomId::Ms1, &mut c);
    c.violations
}

fn sweep_identity_pairs(space: &MsSpace, axiom: AxiomId, c: &mut Collector) {
    let n = space.len();
    for x in 0..n {
        for y in 0..n {
            // For x == y all three quantities are the same table entry,
            // so the "if" direction cannot fail; only x != y with a
            // three-way coincidence violates the iff.
            if x == y {
                continue;
            }
            let sx = space.self_at(x);
            if sx == space.self_at(y) && sx == space.value_at(x, x, y) {
                c.push(
                    axiom,
                    &[x, y],
                    space.value_at(x, x, y).ratio().clone(),
                    sx.ratio().clone(),
                    space,
                );
            }
        }
    }
}

/// Lower bound: the minimum self-distance of the arguments never exceeds
/// the triple value. On a symmetric table one sorted representative
/// stands for all six argument orders.
pub fn check_ms_axiom2(space: &MsSpace) -> Vec<Violation> {
    let n = space.len();
    let mut c = Collector::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if space.symmetric() && !(x <= y && y <= z) {
                    continue;
                }
                let lhs = space.min_self_at(x, y, z);
                let rhs = space.value_at(x, y, z);
                if lhs > rhs {
                    c.push(
                        AxiomId::Ms2,
                        &[x, y, z],
                        lhs.ratio().clone(),
                        rhs.ratio().clone(),
                        space,
                    );
                }
            }
        }
    }
    c.violations
}

/// Pair symmetry: `m(x,x,y) = m(y,y,x)`. The pair `(y, x)` states the
/// same equality, so only `x < y` representatives are reported, in both
/// modes. A symmetric table can still violate this: the two sides live
/// in different multisets.
pub fn check_ms_axiom3(space: &MsSpace) -> Vec<Violation> {
    let mut c = Collector::new();
    sweep_pair_symmetry(space, AxiomId::Ms3, &mut c);
    c.violations
}

fn sweep_pair_symmetry(space: &MsSpace, axiom: AxiomId, c: &mut Collector) {
    let n = space.len();
    for x in 0..n {
        for y in (x + 1)..n {
            let lhs = space.value_at(x, x, y);
            let rhs = space.value_at(y, y, x);
            if lhs != rhs {
                c.push(
                    axiom,
                    &[x, y],
                    lhs.ratio().clone(),
                    rhs.ratio().clone(),
                    space,
                );
            }
        }
    }
}

/// Pair gap of `(i, j)`: `m(i,i,j) - min_self(i,i,j)`, precomputed for
/// the quadruple sweeps.
fn pair_gaps(space: &MsSpace) -> Vec<Vec<Rational>> {
    let n = space.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| space.value_at(i, i, j).ratio() - space.min_self_at(i, i, j).ratio())
                .collect()
        })
        .collect()
}

/// Quadrilateral gap inequality: the gap of `(x,y,z)` is at most the sum
/// of the pair gaps of `(x,t)`, `(y,t)`, `(z,t)`. Exhaustive over all
/// ordered quadruples; on a symmetric table one sorted `(x,y,z)`
/// representative stands for each permutation orbit (with `t` free).
pub fn check_ms_axiom4(space: &MsSpace) -> Vec<Violation> {
    let n = space.len();
    let g = pair_gaps(space);
    let mut c = Collector::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if space.symmetric() && !(x <= y && y <= z) {
                    continue;
                }
                let lhs = space.value_at(x, y, z).ratio() - space.min_self_at(x, y, z).ratio();
                // t both indexes the three gap rows and names the witness.
                #[allow(clippy::needless_range_loop)]
                for t in 0..n {
                    let rhs = &g[x][t] + &g[y][t] + &g[z][t];
                    if lhs > rhs {
                        c.push(AxiomId::Ms4, &[x, y, z, t], lhs.clone(), rhs, space);
                    }
                }
            }
        }
    }
    c.violations
}

fn check_ms_strengthened_identity(space: &MsSpace) -> Vec<Violation> {
    let n = space.len();
    let mut c = Collector::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if space.symmetric() && !(x <= y && y <= z) {
                    continue;
                }
                if x == y && y == z {
                    continue;
                }
                let sx = space.self_at(x);
                if sx == space.self_at(y) && sx == space.self_at(z) && sx == space.value_at(x, y, z)
                {
                    c.push(
                        AxiomId::Ms1Strong,
                        &[x, y, z],
                        space.value_at(x, y, z).ratio().clone(),
                        sx.ratio().clone(),
                        space,
                    );
                }
            }
        }
    }
    c.violations
}

fn enumeration_count(n: usize, arities: &[u32]) -> usize {
    arities.iter().map(|&a| n.pow(a)).sum()
}

/// Runs all four M_s axiom checks.
pub fn validate_ms(space: &MsSpace) -> ValidationReport {
    validate_ms_with(space, MsCheckOptions::default())
}

/// Runs all four M_s axiom checks, plus the strengthened identity
/// condition when enabled. `checks_performed` counts the ordered
/// enumeration behind each axiom (`n^2 + n^3 + n^2 + n^4`, plus `n^3`
/// for the strengthened condition); canonicalization on symmetric
/// tables reduces only which witnesses are reported, not what is
/// checked.
pub fn validate_ms_with(space: &MsSpace, options: MsCheckOptions) -> ValidationReport {
    let mut violations = check_ms_axiom1(space);
    violations.extend(check_ms_axiom2(space));
    violations.extend(check_ms_axiom3(space));
    violations.extend(check_ms_axiom4(space));
    let mut arities = vec![2, 3, 2, 4];
    if options.strengthened_identity {
        violations.extend(check_ms_strengthened_identity(space));
        arities.push(3);
    }
    ValidationReport {
        violations,
        checks_performed: enumeration_count(space.len(), &arities),
    }
}

/// Checks the four partial S-metric conditions: the identity iff, the
/// four-point inequality, self-distance minimality, and pair symmetry.
/// `checks_performed` is `n^2 + n^4 + n^3 + n^2`.
pub fn check_partial_s(space: &MsSpace) -> ValidationReport {
    let n = space.len();
    let mut c = Collector::new();

    sweep_identity_pairs(space, AxiomId::PsI, &mut c);
    c.next_axiom();

    // Four-point inequality, exhaustive over ordered quadruples, with
    // the same sorted-representative reduction as the gap inequality.
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if space.symmetric() && !(x <= y && y <= z) {
                    continue;
                }
                let lhs = space.value_at(x, y, z).ratio();
                for t in 0..n {
                    let rhs = space.value_at(x, x, t).ratio()
                        + space.value_at(y, y, t).ratio()
                        + space.value_at(z, z, t).ratio()
                        - space.self_at(t).ratio();
                    if lhs > &rhs {
                        c.push(AxiomId::PsII, &[x, y, z, t], lhs.clone(), rhs, space);
                    }
                }
            }
        }
    }
    c.next_axiom();

    // Self-distance minimality: S(x,x,x) <= S(x,y,z). The first argument
    // is distinguished, so only y and z may be canonicalized.
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if space.symmetric() && y > z {
                    continue;
                }
                let lhs = space.self_at(x);
                let rhs = space.value_at(x, y, z);
                if lhs > rhs {
                    c.push(
                        AxiomId::PsIII,
                        &[x, y, z],
                        lhs.ratio().clone(),
                        rhs.ratio().clone(),
                        space,
                    );
                }
            }
        }
    }
    c.next_axiom();

    sweep_pair_symmetry(space, AxiomId::PsIV, &mut c);

    ValidationReport {
        violations: c.violations,
        checks_performed: enumeration_count(n, &[2, 4, 3, 2]),
    }
}

/// Runs both family sweeps and pairs the reports.
pub fn classify(space: &MsSpace) -> Classification {
    Classification {
        ms: validate_ms(space),
        partial_s: check_partial_s(space),
    }
}

/// The gap `m(x,y,z) - min_self(x,y,z)` of a triple, by point index.
/// This is the quantity the quadrilateral axiom and the convergence
/// diagnostics are stated in.
pub fn triple_gap(space: &MsSpace, x: usize, y: usize, z: usize) -> Rational {
    space.value_at(x, y, z).ratio() - space.min_self_at(x, y, z).ratio()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::space::MsSpace;
    use crate::value::Value;

    fn names(v: &Violation) -> Vec<&str> {
        v.witness.iter().map(|p| p.as_str()).collect()
    }

    fn int(n: u64) -> Rational {
        Value::from_integer(n).into_ratio()
    }

    #[test]
    fn example1_satisfies_all_ms_axioms() {
        let s = builtins::example1();
        let report = validate_ms(&s);
        assert!(report.passed());
        assert!(report.is_ms());
        assert_eq!(report.checks_performed, 9 + 27 + 9 + 81);
    }

    #[test]
    fn example1_fails_self_distance_minimality() {
        let s = builtins::example1();
        let report = check_partial_s(&s);
        assert!(!report.passed());
        assert!(!report.is_partial_s());
        assert_eq!(report.checks_performed, 9 + 81 + 27 + 9);
        assert!(report.violations.iter().all(|v| v.axiom == AxiomId::PsIII));

        let first = report.first().unwrap();
        assert_eq!(first.axiom, AxiomId::PsIII);
        assert_eq!(names(first), ["1", "1", "3"]);
        assert_eq!(first.lhs, int(8));
        assert_eq!(first.rhs, int(7));

        // The canonical violation list, frozen: every (x, {y,z}) whose
        // self-distance exceeds the triple value, in lexicographic order.
        let got: Vec<(Vec<&str>, &Rational, &Rational)> = report
            .violations
            .iter()
            .map(|v| (names(v), &v.lhs, &v.rhs))
            .collect();
        let expect = [
            (vec!["1", "1", "3"], int(8), int(7)),
            (vec!["1", "2", "3"], int(8), int(6)),
            (vec!["1", "3", "3"], int(8), int(7)),
            (vec!["2", "1", "1"], int(9), int(8)),
            (vec!["2", "1", "2"], int(9), int(8)),
            (vec!["2", "1", "3"], int(9), int(6)),
            (vec!["2", "2", "3"], int(9), int(7)),
            (vec!["2", "3", "3"], int(9), int(7)),
        ];
        assert_eq!(got.len(), expect.len());
        for (g, e) in got.iter().zip(expect.iter()) {
            assert_eq!(g.0, e.0);
            assert_eq!(g.1, &e.1);
            assert_eq!(g.2, &e.2);
        }

        // The headline separation witness is present with its exact values.
        assert!(report
            .violations
            .iter()
            .any(|v| { names(v) == ["1", "2", "3"] && v.lhs == int(8) && v.rhs == int(6) }));
    }

    #[test]
    fn example1_classifies_as_ms_but_not_partial_s() {
        let c = classify(&builtins::example1());
        assert!(c.is_ms());
        assert!(!c.is_partial_s());
    }

    #[test]
    fn discrete_space_satisfies_both_families() {
        let c = classify(&builtins::discrete(3));
        assert!(c.is_ms());
        assert!(c.is_partial_s());
        let c4 = classify(&builtins::discrete(4));
        assert!(c4.is_ms() && c4.is_partial_s());
    }

    #[test]
    fn one_point_zero_space_satisfies_both_families() {
        let mut b = MsSpace::builder(true);
        b.add_point("x").unwrap();
        b.set("x", "x", "x", Value::zero()).unwrap();
        let s = b.build().unwrap();
        let c = classify(&s);
        assert!(c.is_ms() && c.is_partial_s());
        assert_eq!(c.ms.checks_performed, 1 + 1 + 1 + 1);
    }

    #[test]
    fn all_zero_two_point_space_violates_identity() {
        let mut b = MsSpace::builder(true);
        b.add_point("a").unwrap();
        b.add_point("b").unwrap();
        for (x, y, z) in [
            ("a", "a", "a"),
            ("a", "a", "b"),
            ("a", "b", "b"),
            ("b", "b", "b"),
        ] {
            b.set(x, y, z, Value::zero()).unwrap();
        }
        let s = b.build().unwrap();
        let v = check_ms_axiom1(&s);
        assert_eq!(v.len(), 2);
        assert_eq!(names(&v[0]), ["a", "b"]);
        assert_eq!(names(&v[1]), ["b", "a"]);
        assert_eq!(v[0].lhs, int(0));
        assert_eq!(v[0].rhs, int(0));
        assert!(v[0].replay(&s));
        assert!(!validate_ms(&s).is_ms());
    }

    #[test]
    fn lower_bound_violation_is_witnessed() {
        // Self-distances 3, pair values 1: the minimum self-distance
        // exceeds the pair values.
        let mut b = MsSpace::builder(true);
        b.add_point("a").unwrap();
        b.add_point("b").unwrap();
        b.set("a", "a", "a", Value::from_integer(3)).unwrap();
        b.set("b", "b", "b", Value::from_integer(3)).unwrap();
        b.set("a", "a", "b", Value::from_integer(1)).unwrap();
        b.set("a", "b", "b", Value::from_integer(1)).unwrap();
        let s = b.build().unwrap();

        let report = validate_ms(&s);
        assert!(!report.is_ms());
        let first = report.first().unwrap();
        assert_eq!(first.axiom, AxiomId::Ms2);
        assert_eq!(names(first), ["a", "a", "b"]);
        assert_eq!(first.lhs, int(3));
        assert_eq!(first.rhs, int(1));
        assert!(first.replay(&s));

        // The same table also fails self-distance minimality, so it is
        // neither kind of structure.
        let c = classify(&s);
        assert!(!c.is_ms());
        assert!(!c.is_partial_s());
        assert!(c
            .partial_s
            .violations
            .iter()
            .any(|v| v.axiom == AxiomId::PsIII));
    }

    #[test]
    fn pair_symmetry_can_fail_on_a_symmetric_table() {
        // The two sides of pair symmetry live in different multisets, so
        // a symmetric table does not get the axiom for free.
        let mut b = MsSpace::builder(true);
        b.add_point("a").unwrap();
        b.add_point("b").unwrap();
        b.set("a", "a", "a", Value::zero()).unwrap();
        b.set("b", "b", "b", Value::zero()).unwrap();
        b.set("a", "a", "b", Value::from_integer(1)).unwrap();
        b.set("a", "b", "b", Value::from_integer(2)).unwrap();
        let s = b.build().unwrap();

        let v = check_ms_axiom3(&s);
        assert_eq!(v.len(), 1);
        assert_eq!(names(&v[0]), ["a", "b"]);
        assert_eq!(v[0].lhs, int(1));
        assert_eq!(v[0].rhs, int(2));
        assert!(v[0].replay(&s));
        assert!(!validate_ms(&s).is_ms());
    }

    #[test]
    fn pair_symmetry_failure_in_strict_mode() {
        let mut b = MsSpace::builder(false);
        b.add_point("a").unwrap();
        b.add_point("b").unwrap();
        for i in ["a", "b"] {
            for j in ["a", "b"] {
                for k in ["a", "b"] {
                    let v = match (i, j, k) {
                        ("a", "a", "b") => 1,
                        ("b", "b", "a") => 2,
                        _ => 0,
                    };
                    b.set(i, j, k, Value::from_integer(v)).unwrap();
                }
            }
        }
        let s = b.build().unwrap();
        let v = check_ms_axiom3(&s);
        assert_eq!(v.len(), 1);
        assert_eq!(names(&v[0]), ["a", "b"]);
        assert_eq!(v[0].lhs, int(1));
        assert_eq!(v[0].rhs, int(2));
    }

    #[test]
    fn gap_inequality_example_quadruple() {
        let s = builtins::example1();
        // Gap of (1,2,3) is 6 - 5 = 1; the pair gaps toward 3 are
        // (7-5) + (7-5) + (5-5) = 4.
        assert_eq!(triple_gap(&s, 0, 1, 2), int(1));
        let g = triple_gap(&s, 0, 0, 2) + triple_gap(&s, 1, 1, 2) + triple_gap(&s, 2, 2, 2);
        assert_eq!(g, int(4));
        assert!(check_ms_axiom4(&s).is_empty());
    }

    #[test]
    fn strengthened_identity_is_stricter() {
        // Self-distances all 2, every pair value 3, the full triple 2:
        // the base axioms hold, the strengthened identity does not.
        let mut b = MsSpace::builder(true);
        for p in ["x", "y", "z"] {
            b.add_point(p).unwrap();
        }
        for p in ["x", "y", "z"] {
            b.set(p, p, p, Value::from_integer(2)).unwrap();
        }
        for (p, q) in [("x", "y"), ("x", "z"), ("y", "z")] {
            b.set(p, p, q, Value::from_integer(3)).unwrap();
            b.set(p, q, q, Value::from_integer(3)).unwrap();
        }
        b.set("x", "y", "z", Value::from_integer(2)).unwrap();
        let s = b.build().unwrap();

        assert!(validate_ms(&s).passed());
        let report = validate_ms_with(
            &s,
            MsCheckOptions {
                strengthened_identity: true,
            },
        );
        assert!(!report.passed());
        assert!(!report.is_ms());
        assert_eq!(report.checks_performed, 9 + 27 + 9 + 81 + 27);
        let v = report.first().unwrap();
        assert_eq!(v.axiom, AxiomId::Ms1Strong);
        assert_eq!(names(v), ["x", "y", "z"]);
        assert_eq!(v.lhs, int(2));
        assert_eq!(v.rhs, int(2));
        assert!(v.replay(&s));

        // The strengthened check passes where self-distances separate
        // the points.
        let e1 = validate_ms_with(
            &builtins::example1(),
            MsCheckOptions {
                strengthened_identity: true,
            },
        );
        assert!(e1.passed());
        assert_eq!(e1.checks_performed, 9 + 27 + 9 + 81 + 27);
    }

    #[test]
    fn four_point_inequality_detects_violations() {
        // Distinct points at value 5 but a far pair at 1 through t = c:
        // routing (a,b,c) through c costs 1 + 1 + 0 - 0 = 2 < 5.
        let mut b = MsSpace::builder(true);
        for p in ["a", "b", "c"] {
            b.add_point(p).unwrap();
        }
        for p in ["a", "b", "c"] {
            b.set(p, p, p, Value::zero()).unwrap();
        }
        for (p, q) in [("a", "b"), ("a", "c"), ("b", "c")] {
            b.set(p, p, q, Value::from_integer(1)).unwrap();
            b.set(p, q, q, Value::from_integer(1)).unwrap();
        }
        b.set("a", "b", "c", Value::from_integer(5)).unwrap();
        let s = b.build().unwrap();

        let report = check_partial_s(&s);
        let ps2: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.axiom == AxiomId::PsII)
            .collect();
        assert!(!ps2.is_empty());
        assert_eq!(names(ps2[0]), ["a", "b", "c", "a"]);
        assert_eq!(ps2[0].lhs, int(5));
        assert_eq!(ps2[0].rhs, int(2));
        assert!(ps2[0].replay(&s));
    }

    #[test]
    fn violation_lists_are_capped() {
        // An all-zero table on 33 points has 33 * 32 = 1056 identity
        // violations, which truncate to the cap; the checks counter
        // still reflects the full enumeration.
        let mut b = MsSpace::builder(true);
        for i in 0..33 {
            b.add_point(&format!("p{i:02}")).unwrap();
        }
        for i in 0..33 {
            for j in i..33 {
                for k in j..33 {
                    b.set(
                        &format!("p{i:02}"),
                        &format!("p{j:02}"),
                        &format!("p{k:02}"),
                        Value::zero(),
                    )
                    .unwrap();
                }
            }
        }
        let s = b.build().unwrap();
        let report = validate_ms(&s);
        let ms1 = report
            .violations
            .iter()
            .filter(|v| v.axiom == AxiomId::Ms1)
            .count();
        assert_eq!(ms1, MAX_VIOLATIONS_PER_AXIOM);
        assert_eq!(
            report.checks_performed,
            33 * 33 + 33usize.pow(3) + 33 * 33 + 33usize.pow(4)
        );
        // No other axiom fires on the all-zero table.
        assert_eq!(report.violations.len(), MAX_VIOLATIONS_PER_AXIOM);
    }

    #[test]
    fn replay_rejects_mismatched_witnesses() {
        let s = builtins::example1();
        let p = |id: &str| crate::space::PointId::new(id).unwrap();
        // A fabricated violation must not replay.
        let fake = Violation {
            axiom: AxiomId::Ms2,
            witness: vec![p("1"), p("2"), p("3")],
            lhs: int(9),
            rhs: int(6),
        };
        assert!(!fake.replay(&s));
        // Wrong arity.
        let short = Violation {
            axiom: AxiomId::Ms4,
            witness: vec![p("1"), p("2")],
            lhs: int(0),
            rhs: int(0),
        };
        assert!(!short.replay(&s));
        // Unknown point.
        let unknown = Violation {
            axiom: AxiomId::Ms3,
            witness: vec![p("1"), p("9")],
            lhs: int(0),
            rhs: int(0),
        };
        assert!(!unknown.replay(&s));
    }

    #[test]
    fn violation_display_is_one_line() {
        let s = builtins::example1();
        let report = check_partial_s(&s);
        let first = report.first().unwrap();
        assert_eq!(first.to_string(), "PS_iii 1 1 3 8 7");
    }
}
