//! Finite candidate spaces and self-maps on them.
//!
//! An [`MsSpace`] is a finite point set together with a total assignment
//! of one [`Value`] to every argument triple. Construction makes no claim
//! that any axioms hold; the checkers in [`crate::axioms`] do that. In
//! symmetric mode (the default for the file format) the table is keyed by
//! the multiset `{x, y, z}`, so the assignment is invariant under
//! permuting the three arguments; in strict mode every ordered triple has
//! its own entry.
//!
//! Spaces are immutable once built and contain no interior mutability, so
//! sharing them read-only across threads is safe.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::value::Value;

/// Hard cap on the number of points in one space. Keeps the O(n^4)
/// axiom sweep bounded (about 17M checks at the cap).
pub const MAX_POINTS: usize = 64;

/// Errors from constructing or querying a space.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("invalid point id `{0}`: ids are non-empty tokens without whitespace or `#`")]
    InvalidPointId(String),
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
    #[error("a space must declare at least one point")]
    NoPoints,
    #[error("point count {0} exceeds the maximum of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("duplicate value entry for triple ({0} {1} {2})")]
    DuplicateEntry(PointId, PointId, PointId),
    #[error("missing value entry for triple ({0} {1} {2})")]
    MissingEntry(PointId, PointId, PointId),
}

/// An opaque point token. Ids are compared as strings; the *order* of
/// points in a space is their declaration order, not string order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(String);

impl PointId {
    /// Ids are non-empty, contain no whitespace, and no `#` (which would
    /// collide with comments in the file format).
    pub fn new(id: impl Into<String>) -> Result<Self, SpaceError> {
        let id = id.into();
        let ok = !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || c == '#');
        if ok {
            Ok(PointId(id))
        } else {
            Err(SpaceError::InvalidPointId(id))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointId({})", self.0)
    }
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn binom3(x: usize) -> usize {
    x * x.saturating_sub(1) * x.saturating_sub(2) / 6
}

/// Number of size-3 multisets over `n` points.
pub(crate) fn multiset_count(n: usize) -> usize {
    binom3(n + 2)
}

/// Rank of the sorted triple `i <= j <= k` among all size-3 multisets,
/// in lexicographic order of the sorted triple.
fn multiset_rank(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i <= j && j <= k);
    binom3(k + 2) + binom2(j + 1) + i
}

fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// A finite point set with a total value table over argument triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MsSpace {
    points: Vec<PointId>,
    index: BTreeMap<String, usize>,
    symmetric: bool,
    table: Vec<Value>,
}

impl MsSpace {
    pub fn builder(symmetric: bool) -> MsSpaceBuilder {
        MsSpaceBuilder {
            symmetric,
            points: Vec::new(),
            index: BTreeMap::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Points in declaration order. All canonical orderings (witnesses,
    /// balls, sweeps) follow this order.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &PointId {
        &self.points[idx]
    }

    /// Declaration index of a point id.
    pub fn index_of(&self, id: &PointId) -> Result<usize, SpaceError> {
        self.index_of_str(id.as_str())
    }

    pub fn index_of_str(&self, id: &str) -> Result<usize, SpaceError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.points.len();
        debug_assert!(i < n && j < n && k < n);
        if self.symmetric {
            let [a, b, c] = sort3([i, j, k]);
            multiset_rank(a, b, c)
        } else {
            (i * n + j) * n + k
        }
    }

    /// Table entry for the triple of point indices. Index-based fast path
    /// used by the sweeps; panics on out-of-range indices.
    pub fn value_at(&self, i: usize, j: usize, k: usize) -> &Value {
        &self.table[self.slot(i, j, k)]
    }

    /// Table entry for a triple of point ids.
    pub fn value(&self, x: &PointId, y: &PointId, z: &PointId) -> Result<&Value, SpaceError> {
        Ok(self.value_at(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    pub fn self_at(&self, i: usize) -> &Value {
        self.value_at(i, i, i)
    }

    /// The self-distance of a point, i.e. the entry at `(x, x, x)`.
    pub fn self_distance(&self, x: &PointId) -> Result<&Value, SpaceError> {
        Ok(self.self_at(self.index_of(x)?))
    }

    pub fn min_self_at(&self, i: usize, j: usize, k: usize) -> &Value {
        self.self_at(i).min(self.self_at(j)).min(self.self_at(k))
    }

    /// Minimum of the three self-distances of the arguments.
    pub fn min_self(&self, x: &PointId, y: &PointId, z: &PointId) -> Result<&Value, SpaceError> {
        Ok(self.min_self_at(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    pub fn max_self_at(&self, i: usize, j: usize, k: usize) -> &Value {
        self.self_at(i).max(self.self_at(j)).max(self.self_at(k))
    }

    /// Maximum of the three self-distances of the arguments.
    pub fn max_self(&self, x: &PointId, y: &PointId, z: &PointId) -> Result<&Value, SpaceError> {
        Ok(self.max_self_at(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    /// Number of stored table entries: `C(n+2, 3)` in symmetric mode,
    /// `n^3` in strict mode.
    pub fn table_len(&self) -> usize {
        self.table.len()
    }
}

/// Incremental constructor for [`MsSpace`]. Declare all points first,
/// then set every triple exactly once; `build` checks totality.
pub struct MsSpaceBuilder {
    symmetric: bool,
    points: Vec<PointId>,
    index: BTreeMap<String, usize>,
    // Key: canonical index triple (sorted in symmetric mode).
    entries: BTreeMap<[usize; 3], Value>,
}

impl MsSpaceBuilder {
    pub fn add_point(&mut self, id: &str) -> Result<&mut Self, SpaceError> {
        let id = PointId::new(id)?;
        if self.index.contains_key(id.as_str()) {
            return Err(SpaceError::DuplicatePoint(id.0));
        }
        if self.points.len() == MAX_POINTS {
            return Err(SpaceError::TooManyPoints(MAX_POINTS + 1));
        }
        self.index.insert(id.0.clone(), self.points.len());
        self.points.push(id);
        Ok(self)
    }

    fn resolve(&self, id: &str) -> Result<usize, SpaceError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))
    }

    fn key(&self, i: usize, j: usize, k: usize) -> [usize; 3] {
        if self.symmetric {
            sort3([i, j, k])
        } else {
            [i, j, k]
        }
    }

    pub fn set(&mut self, x: &str, y: &str, z: &str, v: Value) -> Result<&mut Self, SpaceError> {
        let key = self.key(self.resolve(x)?, self.resolve(y)?, self.resolve(z)?);
        if self.entries.insert(key, v).is_some() {
            return Err(SpaceError::DuplicateEntry(
                self.points[key[0]].clone(),
                self.points[key[1]].clone(),
                self.points[key[2]].clone(),
            ));
        }
        Ok(self)
    }

    pub fn build(self) -> Result<MsSpace, SpaceError> {
        let n = self.points.len();
        if n == 0 {
            return Err(SpaceError::NoPoints);
        }
        let mut entries = self.entries;
        let mut table = Vec::new();
        let mut take = |key: [usize; 3], points: &[PointId]| -> Result<Value, SpaceError> {
            entries.remove(&key).ok_or_else(|| {
                SpaceError::MissingEntry(
                    points[key[0]].clone(),
                    points[key[1]].clone(),
                    points[key[2]].clone(),
                )
            })
        };
        if self.symmetric {
            table.resize(multiset_count(n), Value::zero());
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        table[multiset_rank(i, j, k)] = take([i, j, k], &self.points)?;
                    }
                }
            }
        } else {
            table.reserve(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        table.push(take([i, j, k], &self.points)?);
                    }
                }
            }
        }
        Ok(MsSpace {
            points: self.points,
            index: self.index,
            symmetric: self.symmetric,
            table,
        })
    }
}

/// Errors from constructing or applying a self-map.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("unknown point id `{0}` in map")]
    UnknownPoint(String),
    #[error("point `{0}` is mapped more than once")]
    DuplicateMapping(String),
    #[error("point `{0}` has no mapping")]
    MissingMapping(String),
    #[error("map is over {got} points but the space has {expected}")]
    SpaceMismatch { expected: usize, got: usize },
}

/// A total map from a space's points to itself, stored as image indices
/// in declaration order. A `SelfMap` is only meaningful together with
/// the space it was built against; operations check the sizes agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelfMap {
    image: Vec<usize>,
}

impl SelfMap {
    /// Builds from `(from, to)` id pairs; every point of the space must
    /// appear exactly once as `from`.
    pub fn from_pairs(space: &MsSpace, pairs: &[(String, String)]) -> Result<Self, MapError> {
        let n = space.len();
        let mut image = vec![usize::MAX; n];
        for (from, to) in pairs {
            let f = space
                .index_of_str(from)
                .map_err(|_| MapError::UnknownPoint(from.clone()))?;
            let t = space
                .index_of_str(to)
                .map_err(|_| MapError::UnknownPoint(to.clone()))?;
            if image[f] != usize::MAX {
                return Err(MapError::DuplicateMapping(from.clone()));
            }
            image[f] = t;
        }
        if let Some(missing) = image.iter().position(|&t| t == usize::MAX) {
            return Err(MapError::MissingMapping(space.point(missing).to_string()));
        }
        Ok(SelfMap { image })
    }

    /// Builds from an image vector (`image[i]` is the index of the image
    /// of point `i`).
    pub fn from_image(space: &MsSpace, image: Vec<usize>) -> Result<Self, MapError> {
        if image.len() != space.len() {
            return Err(MapError::SpaceMismatch {
                expected: space.len(),
                got: image.len(),
            });
        }
        for &t in &image {
            if t >= space.len() {
                return Err(MapError::UnknownPoint(format!("#{t}")));
            }
        }
        Ok(SelfMap { image })
    }

    pub fn constant(space: &MsSpace, target: &PointId) -> Result<Self, MapError> {
        let t = space
            .index_of(target)
            .map_err(|_| MapError::UnknownPoint(target.to_string()))?;
        Ok(SelfMap {
            image: vec![t; space.len()],
        })
    }

    pub fn identity(space: &MsSpace) -> Self {
        SelfMap {
            image: (0..space.len()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn apply<'s>(&self, space: &'s MsSpace, x: &PointId) -> Result<&'s PointId, MapError> {
        self.check_space(space)?;
        let i = space
            .index_of(x)
            .map_err(|_| MapError::UnknownPoint(x.to_string()))?;
        Ok(space.point(self.image[i]))
    }

    /// Guards the index-based fast path: the map must have been built for
    /// a space of this size.
    pub fn check_space(&self, space: &MsSpace) -> Result<(), MapError> {
        if self.image.len() == space.len() {
            Ok(())
        } else {
            Err(MapError::SpaceMismatch {
                expected: space.len(),
                got: self.image.len(),
            })
        }
    }
}
