//! Rack and quandle colorings of surface-knot diagrams.
//!
//! A surface-knot diagram is described here combinatorially: a set of
//! *sheets* (the connected pieces left after cutting the projected surface
//! along its double-point curves), a list of *double relations* recording
//! how sheet colors must interact across double curves, optional *curve
//! edges* recording how colors change across distinguished simple closed
//! curves, and optional *branch markers*.
//!
//! The crate provides:
//!
//! * [`algebra`] — finite racks and quandles as operation tables: axiom
//!   checking, the kink map, associated quandles, connected components,
//!   built-in families, and exhaustive enumeration for small orders.
//! * [`presentation`] — the diagram presentation type with parsing,
//!   serialization, validation, sheet renaming, and layer contraction.
//! * [`coloring`] — a backtracking solver that counts and enumerates rack
//!   colorings of a presentation.
//! * [`transforms`] — the push-off construction, Alexander-style numbering
//!   of overlay sheets, the color transport maps between the two layers of
//!   an overlay, and the end-to-end count comparison between a rack and its
//!   associated quandle.
//! * [`moves`] — local move schemas (catalogued branch-free moves) and a
//!   verifier that checks a move preserves coloring counts fiberwise over
//!   every boundary assignment.

pub mod algebra;
pub mod coloring;
pub mod moves;
pub mod presentation;
pub mod transforms;

pub use algebra::{
    enumerate_racks, AlgebraError, AxiomReport, Family, KinkMap, KinkReport, RackTable,
};
pub use coloring::{
    check_coloring, count_colorings, count_colorings_with, enumerate_colorings,
    enumerate_colorings_with, Coloring, ColoringError, ConstraintKind, ConstraintViolation,
};
pub use moves::{
    catalog, satoh_discrimination, verify_move, MoveError, MoveReport, MoveSchema, SatohReport,
    SatohVerdict,
};
pub use presentation::{
    builtin_presentation, Curve, Double, Layer, ParentMap, Presentation, PresentationError,
    Violation, BUILTIN_PRESENTATIONS,
};
pub use transforms::{
    alexander_numbering, phi, phi_inverse, psi, psi_inverse, pushoff, theorem2_report,
    verify_witness, BijectionStatus, Numbering, NumberingOutcome, StripMap, Theorem2Report,
    TransformError, WalkStep, WitnessWalk,
};
