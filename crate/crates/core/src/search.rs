//! Seeded, deterministic generation and search.
//!
//! Everything here is reproducible from a configuration alone: trial
//! `t` of a run with seed `s` uses its own substream seeded `s + t`
//! (wrapping), so trial outcomes are independent of scheduling and a
//! fixed configuration yields bit-identical results on every run.
//!
//! Generation draws a random symmetric table from a finite value grid
//! and then repairs it monotonically: violated inequalities are fixed
//! by raising table entries (never lowering), which cannot oscillate.
//! Raised values stay on the lattice spanned by the grid (sums and
//! differences of grid values), and every raise is by at least one
//! lattice step, so each trial's repair terminates; a raise that would
//! exceed the grid ceiling abandons the trial. Identity-axiom
//! violations are handled by rejection (a targeted repair would bias
//! self-distances): the repaired table is validated in full and the
//! trial redrawn on failure.
//!
//! The draw keys one value per unordered pair for both of the pair's
//! multiset patterns, so pair symmetry holds by construction; and a
//! repaired partial table gets the quadrilateral sweep as well, because
//! the partial conditions do not imply the quadrilateral axiom on their
//! own (see the module tests for a four-point counterexample).

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::axioms::{check_partial_s, validate_ms, Violation};
use crate::builtins::point_name;
use crate::fixedpoint::Contraction;
use crate::space::{MsSpace, SelfMap};
use crate::value::{Rational, Value};

/// Smallest supported generated-space size. One-point spaces are legal
/// spaces but degenerate generation targets.
pub const MIN_GEN_POINTS: usize = 2;
/// Largest supported generated-space size; keeps the per-trial repair
/// sweeps (O(n^4)) cheap enough for thousand-trial budgets.
pub const MAX_GEN_POINTS: usize = 16;

pub const DEFAULT_MAX_REPAIR_ROUNDS: usize = 50;
pub const DEFAULT_TRIALS: u64 = 1000;

/// Configuration errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("generated point count {0} out of range {MIN_GEN_POINTS}..={MAX_GEN_POINTS}")]
    InvalidPointCount(usize),
    #[error("value grid must be non-empty")]
    EmptyGrid,
}

/// The default draw grid: half-integers from 0 to 10.
pub fn default_value_grid() -> Vec<Value> {
    (0..=20).map(|k| Value::from_ratio(k, 2)).collect()
}

/// Generation parameters. Values drawn from `value_grid` index it
/// uniformly; repairs may land between grid values but never above the
/// grid maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    pub value_grid: Vec<Value>,
    pub max_repair_rounds: usize,
    pub trials: u64,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            seed,
            value_grid: default_value_grid(),
            max_repair_rounds: DEFAULT_MAX_REPAIR_ROUNDS,
            trials: DEFAULT_TRIALS,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if !(MIN_GEN_POINTS..=MAX_GEN_POINTS).contains(&self.n) {
            return Err(GenError::InvalidPointCount(self.n));
        }
        if self.value_grid.is_empty() {
            return Err(GenError::EmptyGrid);
        }
        Ok(())
    }

    fn ceiling(&self) -> Rational {
        self.value_grid
            .iter()
            .max()
            .expect("validated grid is non-empty")
            .ratio()
            .clone()
    }
}

/// A small, portable, splittable-style 64-bit generator: the state
/// advances by the golden-ratio increment and the output is the
/// variant-13 mix of the state. The algorithm is fixed forever; seeded
/// results are part of the reproducibility contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw below `bound` by reduction; the modulo bias
    /// is negligible for the tiny bounds used here (grid sizes and
    /// point counts). Panics if `bound` is zero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below requires a positive bound");
        self.next_u64() % bound
    }
}

/// Working table during generation: one self value per point, one
/// shared value per unordered pair (covering both of its multiset
/// patterns), one value per three-distinct-point multiset.
struct Draw {
    n: usize,
    selfs: Vec<Rational>,
    pairs: BTreeMap<[usize; 2], Rational>,
    triples: BTreeMap<[usize; 3], Rational>,
}

impl Draw {
    /// Draw order is part of the determinism contract: self values in
    /// point order, then pair values in lexicographic order, then
    /// triple values in lexicographic order.
    fn random(rng: &mut SplitMix64, n: usize, grid: &[Value]) -> Draw {
        let mut pick = || {
            grid[rng.next_below(grid.len() as u64) as usize]
                .ratio()
                .clone()
        };
        let selfs: Vec<Rational> = (0..n).map(|_| pick()).collect();
        let mut pairs = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.insert([i, j], pick());
            }
        }
        let mut triples = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    triples.insert([i, j, k], pick());
                }
            }
        }
        Draw {
            n,
            selfs,
            pairs,
            triples,
        }
    }

    fn pair(&self, a: usize, b: usize) -> &Rational {
        debug_assert_ne!(a, b);
        &self.pairs[&[a.min(b), a.max(b)]]
    }

    fn set_pair(&mut self, a: usize, b: usize, v: Rational) {
        self.pairs.insert([a.min(b), a.max(b)], v);
    }

    /// Value of the multiset `{x, y, z}`.
    fn value(&self, mut t: [usize; 3]) -> &Rational {
        t.sort_unstable();
        let [i, j, k] = t;
        if i == k {
            &self.selfs[i]
        } else if i == j || j == k {
            self.pair(i, k)
        } else {
            &self.triples[&[i, j, k]]
        }
    }

    fn min_self(&self, t: [usize; 3]) -> &Rational {
        t.iter()
            .map(|&p| &self.selfs[p])
            .min()
            .expect("three points")
    }

    fn max_self(&self, t: [usize; 3]) -> &Rational {
        t.iter()
            .map(|&p| &self.selfs[p])
            .max()
            .expect("three points")
    }

    /// Pair gap `m(p,p,t) - min(self_p, self_t)`; zero when `p == t`.
    fn gap(&self, p: usize, t: usize) -> Rational {
        if p == t {
            Rational::zero()
        } else {
            self.pair(p, t) - self.selfs[p].clone().min(self.selfs[t].clone())
        }
    }

    /// Raises every below-minimum entry up to the floor given by
    /// `floor_of` (the lower-bound repair for either axiom family).
    /// Floors are derived from self values, which are grid members, so
    /// this can never exceed the ceiling.
    fn raise_to_floor(&mut self, use_max: bool) -> bool {
        let mut changed = false;
        let keys: Vec<[usize; 2]> = self.pairs.keys().copied().collect();
        for [i, j] in keys {
            let floor = if use_max {
                self.max_self([i, i, j]).clone()
            } else {
                self.min_self([i, i, j]).clone()
            };
            if self.pairs[&[i, j]] < floor {
                self.pairs.insert([i, j], floor);
                changed = true;
            }
        }
        let keys: Vec<[usize; 3]> = self.triples.keys().copied().collect();
        for key in keys {
            let floor = if use_max {
                self.max_self(key).clone()
            } else {
                self.min_self(key).clone()
            };
            if self.triples[&key] < floor {
                self.triples.insert(key, floor);
                changed = true;
            }
        }
        changed
    }

    /// One quadrilateral repair sweep: for each violated quadruple,
    /// raises the smallest raisable right-hand-side pair entry by the
    /// exact deficit. Fails when a raise would pass the ceiling.
    fn repair_quadrilateral(&mut self, ceiling: &Rational) -> Result<bool, CeilingHit> {
        let n = self.n;
        let mut changed = false;
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    for t in 0..n {
                        // Entries may rise mid-sweep, so both sides are
                        // recomputed per quadruple.
                        let lhs = self.value([x, y, z]) - self.min_self([x, y, z]);
                        let rhs = self.gap(x, t) + self.gap(y, t) + self.gap(z, t);
                        if lhs > rhs {
                            self.raise_smallest_toward(&[x, y, z], t, lhs - rhs, ceiling)?;
                            changed = true;
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    /// One four-point-inequality repair sweep (`S(x,y,z) <= S(x,x,t) +
    /// S(y,y,t) + S(z,z,t) - S(t,t,t)`), same raising strategy.
    fn repair_four_point(&mut self, ceiling: &Rational) -> Result<bool, CeilingHit> {
        let n = self.n;
        let mut changed = false;
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    for t in 0..n {
                        let lhs = self.value([x, y, z]).clone();
                        let term = |p: usize| {
                            if p == t {
                                self.selfs[t].clone()
                            } else {
                                self.pair(p, t).clone()
                            }
                        };
                        let rhs = term(x) + term(y) + term(z) - &self.selfs[t];
                        if lhs > rhs {
                            self.raise_smallest_toward(&[x, y, z], t, lhs - rhs, ceiling)?;
                            changed = true;
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    /// Raises the smallest pair entry `{p, t}` with `p` drawn from the
    /// triple and `p != t`. A violated inequality always leaves at
    /// least one such `p`: were `x = y = z = t`, both sides reduce to
    /// quantities that cannot violate either inequality.
    fn raise_smallest_toward(
        &mut self,
        triple: &[usize; 3],
        t: usize,
        deficit: Rational,
        ceiling: &Rational,
    ) -> Result<(), CeilingHit> {
        let p = triple
            .iter()
            .copied()
            .filter(|&p| p != t)
            .min_by(|&a, &b| self.pair(a, t).cmp(self.pair(b, t)))
            .expect("violated inequality has a raisable term");
        let raised = self.pair(p, t) + deficit;
        if &raised > ceiling {
            return Err(CeilingHit);
        }
        self.set_pair(p, t, raised);
        Ok(())
    }

    fn materialize(&self) -> MsSpace {
        let mut b = MsSpace::builder(true);
        let names: Vec<String> = (0..self.n).map(point_name).collect();
        for name in &names {
            b.add_point(name).expect("generated ids are valid");
        }
        for i in 0..self.n {
            for j in i..self.n {
                for k in j..self.n {
                    let v = Value::new(self.value([i, j, k]).clone())
                        .expect("raised grid values stay non-negative");
                    b.set(&names[i], &names[j], &names[k], v)
                        .expect("canonical enumeration has no duplicates");
                }
            }
        }
        b.build().expect("canonical enumeration is total")
    }
}

struct CeilingHit;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Ms,
    PartialS,
}

/// One draw-repair-validate attempt. `None` means the trial was
/// abandoned (ceiling hit, repair budget exhausted, or final validation
/// failed).
fn try_gen(config: &GenConfig, trial: u64, target: Target) -> Option<MsSpace> {
    let mut rng = SplitMix64::new(config.seed.wrapping_add(trial));
    let mut draw = Draw::random(&mut rng, config.n, &config.value_grid);
    let ceiling = config.ceiling();

    let mut stable = false;
    for _ in 0..config.max_repair_rounds {
        let mut changed = false;
        match target {
            Target::Ms => {
                changed |= draw.raise_to_floor(false);
                changed |= draw.repair_quadrilateral(&ceiling).ok()?;
            }
            Target::PartialS => {
                changed |= draw.raise_to_floor(true);
                changed |= draw.repair_four_point(&ceiling).ok()?;
                changed |= draw.repair_quadrilateral(&ceiling).ok()?;
            }
        }
        if !changed {
            stable = true;
            break;
        }
    }
    if !stable {
        return None;
    }

    let space = draw.materialize();
    let sound = match target {
        Target::Ms => validate_ms(&space).passed(),
        Target::PartialS => validate_ms(&space).passed() && check_partial_s(&space).passed(),
    };
    sound.then_some(space)
}

/// Draws and repairs until a table passes the full quadrilateral-family
/// validation; `None` after `trials` failed attempts.
pub fn generate_ms_space(config: &GenConfig) -> Result<Option<MsSpace>, GenError> {
    config.validate()?;
    Ok((0..config.trials).find_map(|t| try_gen(config, t, Target::Ms)))
}

/// Draws and repairs until a table passes the partial conditions and
/// the quadrilateral family both; `None` after `trials` failed
/// attempts.
pub fn generate_partial_s_space(config: &GenConfig) -> Result<Option<MsSpace>, GenError> {
    config.validate()?;
    Ok((0..config.trials).find_map(|t| try_gen(config, t, Target::PartialS)))
}

/// A found separating instance: passes the quadrilateral family, fails
/// the partial conditions, with the first partial violation as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub space: MsSpace,
    pub witness: Violation,
    pub trial: u64,
}

/// Searches for a space that is valid under the quadrilateral family
/// but fails the partial conditions.
pub fn find_separating_space(config: &GenConfig) -> Result<Option<Separation>, GenError> {
    find_separating_space_with(config, |_| None)
}

/// Like [`find_separating_space`], with an injection seam: `inject` may
/// supply the candidate for a given trial index instead of the
/// generator (used to pin known instances in tests). Injected
/// candidates face the same validation gate as generated ones.
pub fn find_separating_space_with(
    config: &GenConfig,
    inject: impl Fn(u64) -> Option<MsSpace>,
) -> Result<Option<Separation>, GenError> {
    config.validate()?;
    for trial in 0..config.trials {
        let space = match inject(trial) {
            Some(s) if validate_ms(&s).passed() => s,
            Some(_) => continue,
            None => match try_gen(config, trial, Target::Ms) {
                Some(s) => s,
                None => continue,
            },
        };
        let report = check_partial_s(&space);
        if let Some(first) = report.violations.first() {
            return Ok(Some(Separation {
                witness: first.clone(),
                space,
                trial,
            }));
        }
    }
    Ok(None)
}

/// Searches for a self-map admissible under `contraction`: exhaustively
/// in image-vector order when the map space is small (`n^n <= 256`),
/// otherwise by seeded sampling with one substream per trial. Only the
/// seed and trial budget of `config` are used.
pub fn find_admissible_map(
    space: &MsSpace,
    contraction: &Contraction,
    config: &GenConfig,
) -> Option<SelfMap> {
    let n = space.len();
    let admissible = |image: Vec<usize>| -> Option<SelfMap> {
        let map = SelfMap::from_image(space, image).expect("image indices are in range");
        let ok = contraction
            .evaluate(space, &map)
            .expect("map was built for this space")
            .admissible;
        ok.then_some(map)
    };

    let exhaustive = n <= 8 && (n as u64).pow(n as u32) <= 256;
    if exhaustive {
        let mut image = vec![0usize; n];
        loop {
            if let Some(m) = admissible(image.clone()) {
                return Some(m);
            }
            // Odometer with the last position fastest.
            let mut pos = n;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                image[pos] += 1;
                if image[pos] < n {
                    break;
                }
                image[pos] = 0;
            }
        }
    } else {
        for trial in 0..config.trials {
            let mut rng = SplitMix64::new(config.seed.wrapping_add(trial));
            let image: Vec<usize> = (0..n).map(|_| rng.next_below(n as u64) as usize).collect();
            if let Some(m) = admissible(image) {
                return Some(m);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{classify, AxiomId};
    use crate::builtins;
    use crate::space::MsSpace;

    #[test]
    fn splitmix_matches_reference_vectors() {
        // Frozen from an independent implementation of the standard
        // algorithm.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(r.next_u64(), 0x06C45D188009454F);
        assert_eq!(r.next_u64(), 0xF88BB8A8724C81EC);

        let mut r = SplitMix64::new(42);
        assert_eq!(r.next_u64(), 13679457532755275413);
        assert_eq!(r.next_u64(), 2949826092126892291);
        assert_eq!(r.next_u64(), 5139283748462763858);

        let mut r = SplitMix64::new(u64::MAX);
        assert_eq!(r.next_u64(), 16490336266968443936);
        assert_eq!(r.next_u64(), 16834447057089888969);

        let mut r = SplitMix64::new(7);
        let below: Vec<u64> = (0..6).map(|_| r.next_below(21)).collect();
        assert_eq!(below, [9, 3, 0, 3, 19, 6]);
    }

    #[test]
    fn generated_spaces_validate() {
        let mut config = GenConfig::new(2, 11);
        config.value_grid = [0u64, 1, 2, 3]
            .iter()
            .map(|&k| Value::from_integer(k))
            .collect();
        let s = generate_ms_space(&config)
            .unwrap()
            .expect("small grid generates");
        assert!(validate_ms(&s).passed());
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[0].as_str(), "a");
        assert_eq!(s.points()[1].as_str(), "b");
    }

    #[test]
    fn generation_is_deterministic() {
        let config = GenConfig::new(4, 20260816);
        let a = generate_ms_space(&config).unwrap();
        let b = generate_ms_space(&config).unwrap();
        assert_eq!(a, b);
        let p = generate_partial_s_space(&config).unwrap();
        let q = generate_partial_s_space(&config).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn all_equal_grid_cannot_satisfy_identity() {
        let mut config = GenConfig::new(2, 5);
        config.value_grid = vec![Value::zero()];
        config.trials = 50;
        assert_eq!(generate_ms_space(&config).unwrap(), None);
    }

    #[test]
    fn partial_outputs_satisfy_both_families() {
        let config = GenConfig::new(3, 99);
        let s = generate_partial_s_space(&config)
            .unwrap()
            .expect("default grid generates");
        let c = classify(&s);
        assert!(c.is_ms());
        assert!(c.is_partial_s());
    }

    #[test]
    fn partial_conditions_do_not_imply_the_quadrilateral_axiom() {
        // Four points: self-distances 2, 2, 2, 3; every mixed multiset
        // valued 3 except {x,y,z} = 6. All four partial conditions
        // hold, yet the gap of (x,y,z) is 4 while routing through t
        // bounds it by 3. This is why the partial-table generator also
        // runs the quadrilateral repair.
        let mut b = MsSpace::builder(true);
        for p in ["x", "y", "z", "t"] {
            b.add_point(p).unwrap();
        }
        for p in ["x", "y", "z"] {
            b.set(p, p, p, Value::from_integer(2)).unwrap();
        }
        b.set("t", "t", "t", Value::from_integer(3)).unwrap();
        for (p, q) in [
            ("x", "y"),
            ("x", "z"),
            ("x", "t"),
            ("y", "z"),
            ("y", "t"),
            ("z", "t"),
        ] {
            b.set(p, p, q, Value::from_integer(3)).unwrap();
            b.set(p, q, q, Value::from_integer(3)).unwrap();
        }
        for tri in [("x", "y", "t"), ("x", "z", "t"), ("y", "z", "t")] {
            b.set(tri.0, tri.1, tri.2, Value::from_integer(3)).unwrap();
        }
        b.set("x", "y", "z", Value::from_integer(6)).unwrap();
        let s = b.build().unwrap();

        let ps = check_partial_s(&s);
        assert!(ps.passed(), "partial conditions hold: {:?}", ps.violations);
        let ms = validate_ms(&s);
        assert!(!ms.passed());
        // Lexicographically first failure: routing (x,y,z) through x
        // itself bounds the gap by 0 + 1 + 1.
        let v = ms.first().unwrap();
        assert_eq!(v.axiom, AxiomId::Ms4);
        let w: Vec<&str> = v.witness.iter().map(|p| p.as_str()).collect();
        assert_eq!(w, ["x", "y", "z", "x"]);
        assert_eq!(v.lhs, Value::from_integer(4).into_ratio());
        assert_eq!(v.rhs, Value::from_integer(2).into_ratio());
        // Routing through t is a failure too, the one that shows every
        // individual partial condition can hold while the gap bound fails.
        assert!(ms.violations.iter().any(|v| v
            .witness
            .iter()
            .map(|p| p.as_str())
            .collect::<Vec<_>>()
            == ["x", "y", "z", "t"]
            && v.lhs == Value::from_integer(4).into_ratio()
            && v.rhs == Value::from_integer(3).into_ratio()));
    }

    #[test]
    fn injected_instance_is_returned_with_its_witness() {
        let config = GenConfig::new(3, 1);
        let sep =
            find_separating_space_with(&config, |trial| (trial == 0).then(builtins::example1))
                .unwrap()
                .expect("injected instance separates");
        assert_eq!(sep.trial, 0);
        assert_eq!(sep.space, builtins::example1());
        assert_eq!(sep.witness.axiom, AxiomId::PsIII);
        let w: Vec<&str> = sep.witness.witness.iter().map(|p| p.as_str()).collect();
        assert_eq!(w, ["1", "1", "3"]);
        assert_eq!(sep.witness.lhs, Value::from_integer(8).into_ratio());
        assert_eq!(sep.witness.rhs, Value::from_integer(7).into_ratio());
        assert!(sep.witness.replay(&sep.space));
    }

    #[test]
    fn separating_search_succeeds_on_default_grid() {
        let mut config = GenConfig::new(3, 7);
        config.trials = 2000;
        let sep = find_separating_space(&config)
            .unwrap()
            .expect("separation within budget");
        let c = classify(&sep.space);
        assert!(c.is_ms());
        assert!(!c.is_partial_s());
        assert!(sep.witness.axiom.is_partial_s_family());
        assert!(sep.witness.replay(&sep.space));
    }

    #[test]
    fn admissible_map_search_on_two_point_space() {
        let s = builtins::two_point();
        let config = GenConfig::new(2, 0);
        let m = find_admissible_map(&s, &Contraction::Banach, &config)
            .expect("constant map to a is admissible");
        // Exhaustive order starts at the constant map to the first
        // point, which already works.
        assert_eq!(m.image(), &[0, 0]);
        let r = crate::fixedpoint::banach_constant(&s, &m).unwrap();
        assert!(r.admissible);
        assert_eq!(r.constant, Some(Rational::zero()));
    }

    #[test]
    fn no_admissible_map_without_a_zero_self_distance() {
        // Frozen by the first exhaustive run over all 27 self-maps: a
        // fixed point u of an admissible map needs m(u,u,u) = 0, and
        // every self-distance here is positive.
        let s = builtins::example1();
        let config = GenConfig::new(3, 0);
        assert!(find_admissible_map(&s, &Contraction::Banach, &config).is_none());
        assert!(find_admissible_map(&s, &Contraction::Kannan, &config).is_none());
        assert!(find_admissible_map(
            &s,
            &Contraction::Phi("linear:1/2".parse().unwrap()),
            &config
        )
        .is_none());
    }

    #[test]
    fn invalid_configs_error() {
        let config = GenConfig::new(1, 0);
        assert_eq!(
            generate_ms_space(&config).unwrap_err(),
            GenError::InvalidPointCount(1)
        );
        let config = GenConfig::new(17, 0);
        assert!(matches!(
            generate_partial_s_space(&config),
            Err(GenError::InvalidPointCount(17))
        ));
        let mut config = GenConfig::new(3, 0);
        config.value_grid.clear();
        assert_eq!(
            find_separating_space(&config).unwrap_err(),
            GenError::EmptyGrid
        );
    }
}
