//! Built-in reference spaces used across tests, docs, and the CLI.

use crate::space::{MsSpace, MAX_POINTS};
use crate::value::Value;

/// Names for machine-generated points: single letters while they last,
/// then `p<index>`.
pub(crate) fn point_name(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("p{index}")
    }
}

/// The three-point space that satisfies all four M_s axioms yet fails
/// self-distance minimality (its self-distances 8 and 9 exceed the
/// mixed triple value 6), separating the two axiom families.
pub fn example1() -> MsSpace {
    let mut b = MsSpace::builder(true);
    for p in ["1", "2", "3"] {
        b.add_point(p).expect("static table is well-formed");
    }
    let entries: [(&str, &str, &str, u64); 10] = [
        ("1", "1", "1", 8),
        ("2", "2", "2", 9),
        ("3", "3", "3", 5),
        ("1", "1", "2", 8),
        ("1", "2", "2", 8),
        ("1", "1", "3", 7),
        ("1", "3", "3", 7),
        ("2", "2", "3", 7),
        ("2", "3", "3", 7),
        ("1", "2", "3", 6),
    ];
    for (x, y, z, v) in entries {
        b.set(x, y, z, Value::from_integer(v))
            .expect("static table is well-formed");
    }
    b.build().expect("static table is total")
}

/// The discrete table on `n` points: zero on constant triples, one
/// everywhere else. Satisfies both axiom families.
pub fn discrete(n: usize) -> MsSpace {
    assert!((1..=MAX_POINTS).contains(&n), "discrete size out of range");
    let mut b = MsSpace::builder(true);
    let names: Vec<String> = (0..n).map(point_name).collect();
    for name in &names {
        b.add_point(name).expect("generated ids are valid");
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = if i == j && j == k {
                    Value::zero()
                } else {
                    Value::one()
                };
                b.set(&names[i], &names[j], &names[k], v)
                    .expect("canonical enumeration has no duplicates");
            }
        }
    }
    b.build().expect("canonical enumeration is total")
}

/// Two points `a` and `b` with self-distances 0 and 2 and both mixed
/// values 2: a minimal valid structure whose constant map to `a` is
/// admissible under every supported contraction condition.
pub fn two_point() -> MsSpace {
    let mut b = MsSpace::builder(true);
    b.add_point("a").expect("static table is well-formed");
    b.add_point("b").expect("static table is well-formed");
    b.set("a", "a", "a", Value::zero()).unwrap();
    b.set("b", "b", "b", Value::from_integer(2)).unwrap();
    b.set("a", "a", "b", Value::from_integer(2)).unwrap();
    b.set("a", "b", "b", Value::from_integer(2)).unwrap();
    b.build().expect("static table is total")
}
