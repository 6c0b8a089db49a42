//! ER model to annotated relational schema.
//!
//! Regular entity types are transformed first (REG), then the subtypes that
//! need a relation of their own (SUB). The remaining steps only append to or
//! add relations and run in a fixed order: 1:N relationship types (GNG), 1:1
//! subtype relationship types (SOG), multi-valued attributes (MVA) and weak
//! entity types (WAK), each in declaration order.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagnostic::{has_errors, Diagnostic};
use crate::model::{
    Attribute, AttributeKind, ErModel, FkSuffix, Identifier, ModelError, RatioClass, RdsAttribute,
    RegularEntityType, Relation, RelationalSchema, RelationshipType, Subtype, WeakEntityType,
};
use crate::validate::validate_notation_with;

/// How a 1:1 relationship type between a subtype and a regular entity type
/// picks the relation that receives the FK.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SogPolicy {
    /// The subtype's relation when it exists anyway, else the regular side.
    #[default]
    PreferSubtypeRelation,
    PreferRegularRelation,
    /// Relationship name to chosen participant. Relationships not listed
    /// fall back to [`SogPolicy::PreferSubtypeRelation`].
    Explicit(BTreeMap<Identifier, Identifier>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransformConfig {
    pub sog_policy: SogPolicy,
    /// Admit 1:N relationship types with subtype participants.
    pub extensions: bool,
}

impl TransformConfig {
    pub fn explicit<I>(choices: I) -> Self
    where
        I: IntoIterator<Item = (Identifier, Identifier)>,
    {
        TransformConfig {
            sog_policy: SogPolicy::Explicit(choices.into_iter().collect()),
            extensions: false,
        }
    }

    fn explicit_choice(&self, relationship: &Identifier) -> Option<&Identifier> {
        match &self.sog_policy {
            SogPolicy::Explicit(map) => map.get(relationship),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Reg,
    Sub,
    Gng,
    Sog,
    Mva,
    Wak,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Reg => "REG",
            Step::Sub => "SUB",
            Step::Gng => "GNG",
            Step::Sog => "SOG",
            Step::Mva => "MVA",
            Step::Wak => "WAK",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: Step,
    /// The ER element transformed, e.g. `Controls` or `Department.Location`.
    pub subject: String,
    /// The produced or modified relation, as it stood after the step.
    pub relation: Relation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransformTrace {
    pub entries: Vec<TraceEntry>,
}

impl TransformTrace {
    /// Replays the trace up to and including entry `upto`, rebuilding the
    /// schema as it stood at that point.
    pub fn schema_after(&self, upto: usize) -> RelationalSchema {
        let mut schema = RelationalSchema::default();
        for entry in self.entries.iter().take(upto + 1) {
            match schema.get_mut(&entry.relation.name) {
                Some(r) => *r = entry.relation.clone(),
                None => schema.relations.push(entry.relation.clone()),
            }
        }
        schema
    }

    /// The schema after the last entry of `step`, if the step ran at all.
    pub fn schema_after_step(&self, step: Step) -> Option<RelationalSchema> {
        let last = self.entries.iter().rposition(|e| e.step == step)?;
        Some(self.schema_after(last))
    }

    /// Steps in the order they ran.
    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        self.entries.iter().map(|e| e.step)
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                format!(
                    "{} {} -> {}\n",
                    e.step,
                    e.subject,
                    crate::rds_text::emit_relation(&e.relation)
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("model does not conform to the notation ({} error(s))", .0.iter().filter(|d| d.is_error()).count())]
    PrerequisiteFailed(Vec<Diagnostic>),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("relationship {relationship}: participant {participant} is a subtype; 1:N with subtypes needs extensions")]
    UnsupportedParticipant {
        relationship: Identifier,
        participant: Identifier,
    },
    #[error("relationship {relationship} is not handled by any supported step")]
    UnsupportedRelationship { relationship: Identifier },
    #[error("relation for supertype or owner {0} does not exist yet")]
    MissingSupertypeRelation(Identifier),
    #[error("relation {0} does not exist")]
    MissingRelation(Identifier),
    #[error("neither participant of relationship {0} has a relation")]
    NoChoosableRelation(Identifier),
    #[error("a relation named {0} already exists")]
    NameCollision(Identifier),
    #[error("relation {relation} already has an attribute {attribute}")]
    DuplicateAttribute {
        relation: Identifier,
        attribute: String,
    },
    #[error("--sog-choice {relationship}={participant}: {reason}")]
    InvalidChoice {
        relationship: Identifier,
        participant: Identifier,
        reason: &'static str,
    },
}

/// Step REG.
pub fn transform_regular(e: &RegularEntityType) -> Result<Relation, TransformError> {
    let pk = e.designated_key()?;
    let mut rel = Relation::new(e.name.clone());
    rel.attributes
        .push(RdsAttribute::underlined(pk.name.as_str()));
    for k in e.keys().filter(|k| k.name != pk.name) {
        rel.attributes
            .push(RdsAttribute::underlined(k.name.as_str()));
    }
    for a in e
        .attributes
        .iter()
        .filter(|a| a.kind == AttributeKind::Simple)
    {
        rel.attributes.push(RdsAttribute::plain(a.name.as_str()));
    }
    Ok(rel)
}

/// SUB conditions: an intrinsic attribute, the N-side of a 1:N relationship
/// type, or a 1:1 relationship type the configuration resolves to this
/// subtype's relation.
pub fn subtype_needs_relation(s: &Subtype, m: &ErModel, cfg: &TransformConfig) -> bool {
    let intrinsic = !s.attributes.is_empty();
    let n_side = m.participations(&s.name).any(|r| match r.ratio_class() {
        RatioClass::OneToMany { n_side } => r.endpoints[n_side].participant == s.name,
        _ => false,
    });
    let chosen_for_one_to_one = m.participations(&s.name).any(|r| {
        r.ratio_class() == RatioClass::OneToOne && cfg.explicit_choice(&r.name) == Some(&s.name)
    });
    intrinsic || n_side || chosen_for_one_to_one
}

/// Step SUB.
pub fn transform_subtype(
    s: &Subtype,
    schema: &RelationalSchema,
) -> Result<Relation, TransformError> {
    let pk = supertype_pk(&s.supertype, schema)?;
    let mut rel = Relation::new(s.name.clone());
    rel.attributes.push(RdsAttribute::underlined(pk.as_str()));
    for a in &s.attributes {
        rel.attributes.push(RdsAttribute::plain(a.name.as_str()));
    }
    Ok(rel)
}

fn supertype_pk(
    supertype: &Identifier,
    schema: &RelationalSchema,
) -> Result<Identifier, TransformError> {
    schema
        .get(supertype)
        .and_then(Relation::primary_key)
        .map(|a| a.name.clone())
        .ok_or_else(|| TransformError::MissingSupertypeRelation(supertype.clone()))
}

/// The name and prefix under which `participant`'s PK appears as an FK:
/// a subtype's PK is its supertype's, flagged with the subtype name.
fn fk_reference(
    participant: &Identifier,
    m: &ErModel,
    schema: &RelationalSchema,
) -> Result<(Identifier, Option<Identifier>), TransformError> {
    match m.subtype(participant) {
        Some(s) => Ok((supertype_pk(&s.supertype, schema)?, Some(s.name.clone()))),
        None => {
            let pk = schema
                .get(participant)
                .and_then(Relation::primary_key)
                .ok_or_else(|| TransformError::MissingRelation(participant.clone()))?;
            Ok((pk.name.clone(), None))
        }
    }
}

/// Appends an FK and the relationship's own attributes to `relation`.
fn append_fk(
    relation: &mut Relation,
    fk: RdsAttribute,
    attributes: &[Attribute],
) -> Result<(), TransformError> {
    let incoming = std::iter::once(fk).chain(
        attributes
            .iter()
            .map(|a| RdsAttribute::plain(a.name.as_str())),
    );
    for attr in incoming {
        let q = attr.qualified_name();
        if relation.contains(&q) {
            return Err(TransformError::DuplicateAttribute {
                relation: relation.name.clone(),
                attribute: q,
            });
        }
        relation.attributes.push(attr);
    }
    Ok(())
}

/// Step GNG. Returns the name of the modified relation (the N-side's).
pub fn transform_one_to_many(
    r: &RelationshipType,
    m: &ErModel,
    schema: &mut RelationalSchema,
    cfg: &TransformConfig,
) -> Result<Identifier, TransformError> {
    let RatioClass::OneToMany { n_side } = r.ratio_class() else {
        return Err(TransformError::UnsupportedRelationship {
            relationship: r.name.clone(),
        });
    };
    if !cfg.extensions {
        if let Some(ep) = r.endpoints.iter().find(|ep| m.is_subtype(&ep.participant)) {
            return Err(TransformError::UnsupportedParticipant {
                relationship: r.name.clone(),
                participant: ep.participant.clone(),
            });
        }
    }
    let near = &r.endpoints[n_side];
    let far = &r.endpoints[1 - n_side];
    let (fk_name, prefix) = fk_reference(&far.participant, m, schema)?;
    let suffix = FkSuffix {
        relationship: r.name.clone(),
        near_min: near.nearest.min,
        far_min: far.nearest.min,
        far_max: far.nearest.max,
    };
    let chosen = schema
        .get_mut(&near.participant)
        .ok_or_else(|| TransformError::MissingRelation(near.participant.clone()))?;
    append_fk(
        chosen,
        RdsAttribute::foreign_key(fk_name, prefix, suffix),
        &r.attributes,
    )?;
    Ok(chosen.name.clone())
}

/// Step SOG. Returns the name of the chosen (modified) relation.
pub fn transform_one_to_one_sub(
    r: &RelationshipType,
    m: &ErModel,
    schema: &mut RelationalSchema,
    cfg: &TransformConfig,
) -> Result<Identifier, TransformError> {
    if r.ratio_class() != RatioClass::OneToOne {
        return Err(TransformError::UnsupportedRelationship {
            relationship: r.name.clone(),
        });
    }
    let sub_side = match (
        m.is_subtype(&r.endpoints[0].participant),
        m.is_subtype(&r.endpoints[1].participant),
    ) {
        (true, false) => 0,
        (false, true) => 1,
        _ => {
            return Err(TransformError::UnsupportedRelationship {
                relationship: r.name.clone(),
            })
        }
    };
    let reg_side = 1 - sub_side;
    let preferred = match (cfg.explicit_choice(&r.name), &cfg.sog_policy) {
        (Some(p), _) => r
            .endpoint_index(p)
            .ok_or_else(|| TransformError::InvalidChoice {
                relationship: r.name.clone(),
                participant: p.clone(),
                reason: "not a participant of the relationship",
            })?,
        (None, SogPolicy::PreferRegularRelation) => reg_side,
        (None, _) => {
            if schema.contains(&r.endpoints[sub_side].participant) {
                sub_side
            } else {
                reg_side
            }
        }
    };
    let chosen_side = if schema.contains(&r.endpoints[preferred].participant) {
        preferred
    } else if schema.contains(&r.endpoints[1 - preferred].participant) {
        1 - preferred
    } else {
        return Err(TransformError::NoChoosableRelation(r.name.clone()));
    };
    let chosen = &r.endpoints[chosen_side];
    let other = &r.endpoints[1 - chosen_side];
    let (fk_name, prefix) = fk_reference(&other.participant, m, schema)?;
    let suffix = FkSuffix {
        relationship: r.name.clone(),
        near_min: chosen.nearest.min,
        far_min: other.nearest.min,
        far_max: other.nearest.max,
    };
    let relation = schema
        .get_mut(&chosen.participant)
        .ok_or_else(|| TransformError::MissingRelation(chosen.participant.clone()))?;
    append_fk(
        relation,
        RdsAttribute::foreign_key(fk_name, prefix, suffix),
        &r.attributes,
    )?;
    Ok(relation.name.clone())
}

/// Step MVA.
pub fn transform_multivalued(
    owner: &RegularEntityType,
    a: &Attribute,
    schema: &RelationalSchema,
) -> Result<Relation, TransformError> {
    if schema.contains(&a.name) {
        return Err(TransformError::NameCollision(a.name.clone()));
    }
    let pk = supertype_pk(&owner.name, schema)?;
    let mut rel = Relation::new(a.name.clone());
    rel.attributes.push(RdsAttribute::underlined(pk.as_str()));
    rel.attributes
        .push(RdsAttribute::underlined(a.name.as_str()));
    if rel.attributes[0].name == rel.attributes[1].name {
        return Err(TransformError::DuplicateAttribute {
            relation: rel.name.clone(),
            attribute: a.name.to_string(),
        });
    }
    Ok(rel)
}

/// Step WAK. The identifying relationship's name is not carried over.
pub fn transform_weak(
    w: &WeakEntityType,
    schema: &RelationalSchema,
) -> Result<Relation, TransformError> {
    if schema.contains(&w.name) {
        return Err(TransformError::NameCollision(w.name.clone()));
    }
    let pk = supertype_pk(&w.owner, schema)?;
    let mut rel = Relation::new(w.name.clone());
    rel.attributes.push(RdsAttribute::underlined(pk.as_str()));
    for (i, a) in std::iter::once(&w.partial_key)
        .chain(&w.attributes)
        .enumerate()
    {
        let attr = if i == 0 {
            RdsAttribute::underlined(a.name.as_str())
        } else {
            RdsAttribute::plain(a.name.as_str())
        };
        if rel.contains(&attr.qualified_name()) {
            return Err(TransformError::DuplicateAttribute {
                relation: rel.name.clone(),
                attribute: attr.qualified_name(),
            });
        }
        rel.attributes.push(attr);
    }
    Ok(rel)
}

fn check_config(m: &ErModel, cfg: &TransformConfig) -> Result<(), TransformError> {
    if let SogPolicy::Explicit(map) = &cfg.sog_policy {
        for (rel, participant) in map {
            let invalid = |reason| TransformError::InvalidChoice {
                relationship: rel.clone(),
                participant: participant.clone(),
                reason,
            };
            let r = m
                .relationship(rel)
                .ok_or_else(|| invalid("no such relationship type"))?;
            if !r.involves(participant) {
                return Err(invalid("not a participant of the relationship"));
            }
            if r.ratio_class() != RatioClass::OneToOne {
                return Err(invalid("only 1:1 relationship types have a side choice"));
            }
        }
    }
    Ok(())
}

fn push_new(schema: &mut RelationalSchema, rel: Relation) -> Result<(), TransformError> {
    if schema.contains(&rel.name) {
        return Err(TransformError::NameCollision(rel.name));
    }
    schema.relations.push(rel);
    Ok(())
}

/// Validates `m`, then runs every step. Relations appear in creation order.
pub fn transform_model(
    m: &ErModel,
    cfg: &TransformConfig,
) -> Result<(RelationalSchema, TransformTrace), TransformError> {
    let diags = validate_notation_with(m, cfg.extensions);
    if has_errors(&diags) {
        return Err(TransformError::PrerequisiteFailed(diags));
    }
    check_config(m, cfg)?;

    let mut schema = RelationalSchema::default();
    let mut trace = TransformTrace::default();
    let record = |trace: &mut TransformTrace, step, subject: String, rel: &Relation| {
        trace.entries.push(TraceEntry {
            step,
            subject,
            relation: rel.clone(),
        })
    };

    for e in &m.regular_entities {
        let rel = transform_regular(e)?;
        record(&mut trace, Step::Reg, e.name.to_string(), &rel);
        push_new(&mut schema, rel)?;
    }

    // Planned before any SUB runs, so condition (3) never depends on the
    // relations SUB itself creates.
    let planned: Vec<&Subtype> = m
        .subtypes
        .iter()
        .filter(|s| subtype_needs_relation(s, m, cfg))
        .collect();
    for s in planned {
        let rel = transform_subtype(s, &schema)?;
        record(&mut trace, Step::Sub, s.name.to_string(), &rel);
        push_new(&mut schema, rel)?;
    }

    for r in m
        .relationships
        .iter()
        .filter(|r| matches!(r.ratio_class(), RatioClass::OneToMany { .. }))
    {
        let modified = transform_one_to_many(r, m, &mut schema, cfg)?;
        record(
            &mut trace,
            Step::Gng,
            r.name.to_string(),
            schema.get(&modified).expect("modified relation"),
        );
    }
    for r in &m.relationships {
        match r.ratio_class() {
            RatioClass::OneToOne => {
                let modified = transform_one_to_one_sub(r, m, &mut schema, cfg)?;
                record(
                    &mut trace,
                    Step::Sog,
                    r.name.to_string(),
                    schema.get(&modified).expect("modified relation"),
                );
            }
            RatioClass::ManyToMany => {
                return Err(TransformError::UnsupportedRelationship {
                    relationship: r.name.clone(),
                })
            }
            RatioClass::OneToMany { .. } => {}
        }
    }

    for e in &m.regular_entities {
        for a in e
            .attributes
            .iter()
            .filter(|a| a.kind == AttributeKind::Multivalued)
        {
            let rel = transform_multivalued(e, a, &schema)?;
            record(
                &mut trace,
                Step::Mva,
                format!("{}.{}", e.name, a.name),
                &rel,
            );
            push_new(&mut schema, rel)?;
        }
    }

    for w in &m.weak_entities {
        let rel = transform_weak(w, &schema)?;
        record(&mut trace, Step::Wak, w.name.to_string(), &rel);
        push_new(&mut schema, rel)?;
    }

    debug_assert!(schema.invariant_violations().is_empty());
    Ok((schema, trace))
}
