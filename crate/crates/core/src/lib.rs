//! Exact toolkit for finite M_s-metric structures.
//!
//! Everything here works over exact rational arithmetic; no floating point
//! is used anywhere in validation, analysis, or reporting. The crate is
//! organized around a few small layers:
//!
//! * [`value`]: exact non-negative rationals ([`Value`]) and the signed
//!   [`Rational`] alias used for derived quantities such as gaps.
//! * [`space`]: finite candidate spaces ([`MsSpace`]) mapping triples of
//!   points to values, plus self-maps ([`SelfMap`]) on them.
//! * [`axioms`]: exhaustive axiom checkers with exact violation witnesses,
//!   for both the M_s axioms and the partial S-metric axioms.
//! * [`topology`]: balls, convergence/Cauchy gap diagnostics, and the gap
//!   continuity inequality sweep.
//! * [`fixedpoint`]: contraction constants (Banach and Kannan ratios, the
//!   phi-weak condition), Picard iteration, and a harness that certifies
//!   the fixed-point conclusions for admissible contractions.
//! * [`search`]: seeded, deterministic instance generation and search.
//! * [`format`]: the line-oriented instance and map file formats.
//!
//! All sweeps are sequential and deterministic; spaces are immutable after
//! construction and safe to share across threads.

pub mod axioms;
pub mod builtins;
pub mod fixedpoint;
pub mod format;
pub mod phi;
pub mod search;
pub mod space;
pub mod topology;
pub mod value;

pub use axioms::{
    check_partial_s, classify, triple_gap, validate_ms, validate_ms_with, AxiomId, Classification,
    MsCheckOptions, ValidationReport, Violation,
};
pub use fixedpoint::{
    banach_constant, contraction_harness, default_max_iter, enumerate_fixed_points,
    kannan_constant, phi_check, picard, Contraction, ContractionKind, ContractionReport,
    FixedPointError, HarnessReport, SolveOutcome, SolveTrace,
};
pub use format::{parse_instance, parse_map_pairs, serialize_instance, serialize_map, ParseError};
pub use phi::{PhiError, PhiFamily, PhiFunction};
pub use search::{
    default_value_grid, find_admissible_map, find_separating_space, find_separating_space_with,
    generate_ms_space, generate_partial_s_space, GenConfig, GenError, Separation, SplitMix64,
};
pub use space::{MapError, MsSpace, PointId, SelfMap, SpaceError, MAX_POINTS};
pub use topology::{
    ball, cauchy_profile, convergence_gaps, gap_continuity_check, gap_continuity_sweep,
    pair_gap_at, GapContinuity, GapProfile, SequenceError, SweepReport, Verdict,
};
pub use value::{Rational, Value, ValueError};
