//! Compiles ER models written in a modified notation into annotated
//! relational schemas, and reverses such schemas back into ER models.
//!
//! The pipeline is `er_text::parse_er` → `validate::validate_notation` →
//! `forward::transform_model` → `rds_text::emit_rds`; the way back is
//! `rds_text::parse_rds` → `reverse::reverse_transform` → `er_text::emit_er`.

pub mod ddl;
pub mod diagnostic;
pub mod er_text;
pub mod forward;
pub mod model;
pub mod rds_text;
pub mod reverse;
pub mod roundtrip;
pub mod validate;

pub use diagnostic::{Diagnostic, Location, RuleId, Severity};
pub use er_text::{emit_er, parse_er, ErSource};
pub use forward::{
    transform_model, SogPolicy, Step, TransformConfig, TransformError, TransformTrace,
};
pub use model::{
    Attribute, AttributeKind, CardinalityPair, ErModel, FkSuffix, Identifier, MaxCard, MinCard,
    RatioClass, RdsAttribute, RegularEntityType, Relation, RelationalSchema, RelationshipEndpoint,
    RelationshipType, Subtype, WeakEntityType,
};
pub use rds_text::{emit_rds, parse_rds, RdsSource};
pub use reverse::{classify_relations, normalize, reverse_transform, RelationKind, Reversal};
pub use roundtrip::{roundtrip, RoundTripReport};
pub use validate::validate_notation;
