//! Property-based checks of the public API: exactness, witness
//! integrity, generator soundness, and serialization round-trips.

use num_traits::Zero;
use proptest::prelude::*;

use msmetric_core::{
    ball, banach_constant, check_partial_s, classify, gap_continuity_sweep, generate_ms_space,
    generate_partial_s_space, kannan_constant, parse_instance, serialize_instance, validate_ms,
    GenConfig, MsSpace, Rational, SelfMap, Value,
};

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

fn multiset_count(n: usize) -> usize {
    n * (n + 1) * (n + 2) / 6
}

/// A completely unconstrained symmetric table over `n` points with
/// small integer entries: most are invalid, which is the point for
/// witness-integrity checks.
#[allow(clippy::needless_range_loop)] // i <= j <= k enumerates canonical multisets
fn raw_space(n: usize, entries: &[u8]) -> MsSpace {
    let mut b = MsSpace::builder(true);
    for name in &NAMES[..n] {
        b.add_point(name).unwrap();
    }
    let mut next = 0;
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = Value::from_integer(entries[next] as u64);
                next += 1;
                b.set(NAMES[i], NAMES[j], NAMES[k], v).unwrap();
            }
        }
    }
    b.build().unwrap()
}

fn raw_space_strategy() -> impl Strategy<Value = MsSpace> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0u8..=6, multiset_count(n))
            .prop_map(move |entries| raw_space(n, &entries))
    })
}

proptest! {
    /// Lookups are invariant under argument order in symmetric spaces.
    #[test]
    fn lookup_is_permutation_invariant(space in raw_space_strategy(), perm_seed in 0usize..6) {
        let n = space.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let base = space.value_at(i, j, k);
                    let (x, y, z) = match perm_seed {
                        0 => (i, j, k),
                        1 => (i, k, j),
                        2 => (j, i, k),
                        3 => (j, k, i),
                        4 => (k, i, j),
                        _ => (k, j, i),
                    };
                    prop_assert_eq!(base, space.value_at(x, y, z));
                }
            }
        }
    }

    /// Every reported violation replays against the space it came
    /// from: the sides stored in the witness are the recomputed sides.
    #[test]
    fn violations_replay_on_raw_tables(space in raw_space_strategy()) {
        for v in &validate_ms(&space).violations {
            prop_assert!(v.replay(&space), "stale witness {v}");
        }
        for v in &check_partial_s(&space).violations {
            prop_assert!(v.replay(&space), "stale witness {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every generated partial table also satisfies the quadrilateral
    /// family: the generator never emits one-family instances.
    #[test]
    fn generated_partial_tables_are_ms(n in 2usize..=6, seed in any::<u32>()) {
        let mut config = GenConfig::new(n, seed as u64);
        config.trials = 30;
        if let Some(space) = generate_partial_s_space(&config).unwrap() {
            let c = classify(&space);
            prop_assert!(c.is_ms());
            prop_assert!(c.is_partial_s());
        }
    }

    /// Generated quadrilateral-family tables validate, and the gap
    /// continuity inequality holds on all of them, for every quadruple.
    #[test]
    fn generated_spaces_validate_and_gaps_are_continuous(n in 2usize..=8, seed in any::<u32>()) {
        let mut config = GenConfig::new(n, seed as u64);
        config.trials = 30;
        if let Some(space) = generate_ms_space(&config).unwrap() {
            prop_assert!(validate_ms(&space).passed());
            let sweep = gap_continuity_sweep(&space);
            prop_assert!(sweep.all_hold(), "failure at {:?}", sweep.first_failure);
            prop_assert_eq!(sweep.checked, n * n * n * n);
        }
    }

    /// Closed balls contain their center and grow with the radius.
    #[test]
    fn balls_are_monotone(n in 2usize..=6, seed in any::<u32>(), r1 in 0u64..=10, r2 in 0u64..=10) {
        let mut config = GenConfig::new(n, seed as u64);
        config.trials = 30;
        if let Some(space) = generate_ms_space(&config).unwrap() {
            let (lo, hi) = (r1.min(r2), r1.max(r2));
            for p in space.points() {
                let small = ball(&space, p, &Value::from_ratio(lo, 2)).unwrap();
                let large = ball(&space, p, &Value::from_ratio(hi, 2)).unwrap();
                prop_assert!(small.contains(p));
                for q in &small {
                    prop_assert!(large.contains(q));
                }
            }
        }
    }

    /// The reported contraction constant is the exact maximum ratio:
    /// no pair exceeds it and the witness pair attains it.
    #[test]
    fn contraction_constants_are_extremal(
        n in 2usize..=4,
        seed in any::<u32>(),
        image_seed in any::<u32>(),
    ) {
        let mut config = GenConfig::new(n, seed as u64);
        config.trials = 30;
        let Some(space) = generate_ms_space(&config).unwrap() else { return Ok(()) };
        let image: Vec<usize> = (0..n)
            .map(|i| (image_seed as usize).wrapping_mul(31).wrapping_add(i * 7) % n)
            .collect();
        let map = SelfMap::from_image(&space, image).unwrap();

        for (report, den_of) in [
            (
                banach_constant(&space, &map).unwrap(),
                Box::new(|x: usize, y: usize| space.value_at(x, x, y).ratio().clone())
                    as Box<dyn Fn(usize, usize) -> Rational>,
            ),
            (
                kannan_constant(&space, &map).unwrap(),
                Box::new(|x: usize, y: usize| {
                    space.value_at(x, x, map.apply_idx(x)).ratio()
                        + space.value_at(y, y, map.apply_idx(y)).ratio()
                }),
            ),
        ] {
            let Some(k) = report.constant.clone() else { continue };
            let mut attained = false;
            for x in 0..n {
                for y in 0..n {
                    let num = space
                        .value_at(map.apply_idx(x), map.apply_idx(x), map.apply_idx(y))
                        .ratio()
                        .clone();
                    let den = den_of(x, y);
                    if den.is_zero() {
                        prop_assert!(num.is_zero(), "infeasible pair but constant reported");
                        continue;
                    }
                    let ratio = num / &den;
                    prop_assert!(ratio <= k, "pair ({x},{y}) exceeds the constant");
                    if ratio == k {
                        attained = true;
                    }
                }
            }
            prop_assert!(attained, "constant not attained by any pair");
        }
    }

    /// Serialization is the identity: parse(serialize(s)) == s, and the
    /// second serialization is byte-identical to the first.
    #[test]
    fn serialization_round_trips(n in 2usize..=6, seed in any::<u32>(), partial in any::<bool>()) {
        let mut config = GenConfig::new(n, seed as u64);
        config.trials = 30;
        let space = if partial {
            generate_partial_s_space(&config).unwrap()
        } else {
            generate_ms_space(&config).unwrap()
        };
        if let Some(space) = space {
            let text = serialize_instance(&space);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &space);
            prop_assert_eq!(serialize_instance(&back), text);
        }
    }

    /// A fixed configuration always produces the same instance.
    #[test]
    fn generation_is_deterministic(n in 2usize..=6, seed in any::<u32>()) {
        let config = GenConfig::new(n, seed as u64);
        prop_assert_eq!(generate_ms_space(&config).unwrap(), generate_ms_space(&config).unwrap());
    }
}

#[test]
fn spaces_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<MsSpace>();
    assert_send_sync::<SelfMap>();
    assert_send_sync::<msmetric_core::ValidationReport>();
}
