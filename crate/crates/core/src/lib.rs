//! Harder-Narasimhan filtrations for slope functions on admissible set
//! families valued in partially ordered sets.

pub mod engine;
pub mod family;
pub mod instances;
pub mod oracle;
pub mod poset;
pub mod slope;

pub use engine::{
    check_hn, classical_hn, destabilizer, hn_filtration, hn_polygon, is_semistable, EngineError, Filtration, HnReport,
    Mode, Trust,
};
pub use family::{AdmissibleFamily, AdmissiblePair, FamilyError, GroundSet, IntervalFamily, MemberId, Subset};
pub use poset::{LabelSet, Numeric, PosetError, PosetKind, PosetValue, ValuePoset};
pub use slope::{DegreeRankLabels, SlopeError, SlopeFunction, SlopeViolation, ValidationReport};
