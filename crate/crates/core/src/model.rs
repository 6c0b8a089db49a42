//! Domain types shared by every stage: the ER side (entity types,
//! subtypes, weak entity types, relationship types) and the relational side
//! (annotated relations and schemas).

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::diagnostic::{Diagnostic, Location, RuleId};

/// A name in the modified ER notation. Well-formed identifiers are ASCII
/// letters only and start with a capital (`StartDate`, `EmpNo`); the type
/// itself does not enforce this so that the validator can report violations
/// in programmatically built models.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(text: impl Into<String>) -> Self {
        Identifier(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_alphabetic(&self) -> bool {
        !self.0.is_empty() && self.0.chars().all(|c| c.is_ascii_alphabetic())
    }

    pub fn is_capitalized(&self) -> bool {
        self.0
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_uppercase())
    }

    /// The three-letter rule, read with `self` as a key name: the key starts
    /// with the first three letters of `entity` (its whole name when
    /// shorter), ignoring case.
    pub fn matches_prefix_of(&self, entity: &Identifier) -> bool {
        let head: String = entity
            .0
            .chars()
            .take(3)
            .collect::<String>()
            .to_ascii_lowercase();
        !head.is_empty() && self.0.to_ascii_lowercase().starts_with(&head)
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Identifier {
    fn from(s: &str) -> Self {
        Identifier::new(s)
    }
}

impl PartialEq<str> for Identifier {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Identifier {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttributeKind {
    Simple,
    Key,
    Multivalued,
    PartialKey,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Attribute {
    pub name: Identifier,
    pub kind: AttributeKind,
}

impl Attribute {
    pub fn new(name: impl Into<String>, kind: AttributeKind) -> Self {
        Attribute {
            name: Identifier::new(name),
            kind,
        }
    }

    pub fn simple(name: impl Into<String>) -> Self {
        Attribute::new(name, AttributeKind::Simple)
    }

    pub fn key(name: impl Into<String>) -> Self {
        Attribute::new(name, AttributeKind::Key)
    }

    pub fn multivalued(name: impl Into<String>) -> Self {
        Attribute::new(name, AttributeKind::Multivalued)
    }

    pub fn partial_key(name: impl Into<String>) -> Self {
        Attribute::new(name, AttributeKind::PartialKey)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularEntityType {
    pub name: Identifier,
    pub attributes: Vec<Attribute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("entity type {entity} has no key attribute sharing its first three letters")]
    NoDesignatedKey { entity: Identifier },
}

impl RegularEntityType {
    pub fn new(name: impl Into<String>, attributes: Vec<Attribute>) -> Self {
        RegularEntityType {
            name: Identifier::new(name),
            attributes,
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &Attribute> {
        self.attributes
            .iter()
            .filter(|a| a.kind == AttributeKind::Key)
    }

    /// All key attributes that satisfy the three-letter rule, in declaration order.
    pub fn designated_key_candidates(&self) -> Vec<&Attribute> {
        self.keys()
            .filter(|a| a.name.matches_prefix_of(&self.name))
            .collect()
    }

    /// The key attribute that becomes the relation's PK. When several keys
    /// qualify the first declared one wins.
    pub fn designated_key(&self) -> Result<&Attribute, ModelError> {
        self.designated_key_candidates()
            .into_iter()
            .next()
            .ok_or_else(|| ModelError::NoDesignatedKey {
                entity: self.name.clone(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subtype {
    pub name: Identifier,
    pub supertype: Identifier,
    /// Intrinsic attributes; Simple only.
    pub attributes: Vec<Attribute>,
}

impl Subtype {
    pub fn new(
        name: impl Into<String>,
        supertype: impl Into<String>,
        attributes: Vec<Attribute>,
    ) -> Self {
        Subtype {
            name: Identifier::new(name),
            supertype: Identifier::new(supertype),
            attributes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakEntityType {
    pub name: Identifier,
    pub owner: Identifier,
    pub identifying_relationship: Identifier,
    pub partial_key: Attribute,
    /// Remaining attributes; Simple only.
    pub attributes: Vec<Attribute>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinCard {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaxCard {
    One,
    Many,
}

impl fmt::Display for MinCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinCard::Zero => "0",
            MinCard::One => "1",
        })
    }
}

impl fmt::Display for MaxCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaxCard::One => "1",
            MaxCard::Many => "n",
        })
    }
}

/// The (min, max) pair written nearest to a participant: it bounds how many
/// relationship instances each instance of that participant takes part in.
/// `min <= max` holds for every value of the two domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CardinalityPair {
    pub min: MinCard,
    pub max: MaxCard,
}

impl CardinalityPair {
    pub const fn new(min: MinCard, max: MaxCard) -> Self {
        CardinalityPair { min, max }
    }
}

impl fmt::Display for CardinalityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationshipEndpoint {
    pub participant: Identifier,
    pub nearest: CardinalityPair,
}

impl RelationshipEndpoint {
    pub fn new(participant: impl Into<String>, min: MinCard, max: MaxCard) -> Self {
        RelationshipEndpoint {
            participant: Identifier::new(participant),
            nearest: CardinalityPair::new(min, max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioClass {
    OneToOne,
    /// `n_side` indexes the endpoint whose nearest pair has max 1.
    OneToMany {
        n_side: usize,
    },
    ManyToMany,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationshipType {
    pub name: Identifier,
    pub endpoints: [RelationshipEndpoint; 2],
    /// Simple only.
    pub attributes: Vec<Attribute>,
}

impl RelationshipType {
    pub fn ratio_class(&self) -> RatioClass {
        ratio_class(self)
    }

    pub fn involves(&self, participant: &Identifier) -> bool {
        self.endpoints.iter().any(|e| &e.participant == participant)
    }

    pub fn endpoint_index(&self, participant: &Identifier) -> Option<usize> {
        self.endpoints
            .iter()
            .position(|e| &e.participant == participant)
    }
}

pub fn ratio_class(rel: &RelationshipType) -> RatioClass {
    match (rel.endpoints[0].nearest.max, rel.endpoints[1].nearest.max) {
        (MaxCard::One, MaxCard::One) => RatioClass::OneToOne,
        (MaxCard::One, MaxCard::Many) => RatioClass::OneToMany { n_side: 0 },
        (MaxCard::Many, MaxCard::One) => RatioClass::OneToMany { n_side: 1 },
        (MaxCard::Many, MaxCard::Many) => RatioClass::ManyToMany,
    }
}

pub fn designated_key(entity: &RegularEntityType) -> Result<&Attribute, ModelError> {
    entity.designated_key()
}

/// What a name refers to inside an [`ErModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementRef<'a> {
    Regular(&'a RegularEntityType),
    Subtype(&'a Subtype),
    Weak(&'a WeakEntityType),
    Relationship(&'a RelationshipType),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ErModel {
    pub regular_entities: Vec<RegularEntityType>,
    pub subtypes: Vec<Subtype>,
    pub weak_entities: Vec<WeakEntityType>,
    pub relationships: Vec<RelationshipType>,
}

impl ErModel {
    pub fn regular(&self, name: &Identifier) -> Option<&RegularEntityType> {
        self.regular_entities.iter().find(|e| &e.name == name)
    }

    pub fn subtype(&self, name: &Identifier) -> Option<&Subtype> {
        self.subtypes.iter().find(|s| &s.name == name)
    }

    pub fn weak(&self, name: &Identifier) -> Option<&WeakEntityType> {
        self.weak_entities.iter().find(|w| &w.name == name)
    }

    pub fn relationship(&self, name: &Identifier) -> Option<&RelationshipType> {
        self.relationships.iter().find(|r| &r.name == name)
    }

    pub fn lookup(&self, name: &Identifier) -> Option<ElementRef<'_>> {
        self.regular(name)
            .map(ElementRef::Regular)
            .or_else(|| self.subtype(name).map(ElementRef::Subtype))
            .or_else(|| self.weak(name).map(ElementRef::Weak))
            .or_else(|| self.relationship(name).map(ElementRef::Relationship))
    }

    pub fn is_subtype(&self, name: &Identifier) -> bool {
        self.subtype(name).is_some()
    }

    pub fn participations<'a>(
        &'a self,
        name: &'a Identifier,
    ) -> impl Iterator<Item = &'a RelationshipType> + 'a {
        self.relationships.iter().filter(move |r| r.involves(name))
    }

    /// Structural invariants: global name uniqueness, reference resolution,
    /// attribute-kind placement and the per-element key requirements. These
    /// are independent of the notation rules checked by the validator.
    pub fn check_structure(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let err = |msg: String, path: String| {
            Diagnostic::error(RuleId::Struct, msg, Location::Element(path))
        };

        let mut seen = HashSet::new();
        let names = self
            .regular_entities
            .iter()
            .map(|e| (&e.name, format!("entity {}", e.name)))
            .chain(
                self.subtypes
                    .iter()
                    .map(|s| (&s.name, format!("subtype {}", s.name))),
            )
            .chain(
                self.weak_entities
                    .iter()
                    .map(|w| (&w.name, format!("weak {}", w.name))),
            )
            .chain(
                self.relationships
                    .iter()
                    .map(|r| (&r.name, format!("rel {}", r.name))),
            );
        for (name, path) in names {
            if !seen.insert(name.as_str()) {
                diags.push(err(format!("duplicate element name {name}"), path));
            }
        }
        for w in &self.weak_entities {
            if !seen.insert(w.identifying_relationship.as_str()) {
                diags.push(err(
                    format!(
                        "identifying relationship name {} of weak entity type {} is already in use",
                        w.identifying_relationship, w.name
                    ),
                    format!("weak {}", w.name),
                ));
            }
        }

        let check_attrs = |diags: &mut Vec<Diagnostic>,
                           attrs: &mut dyn Iterator<Item = &Attribute>,
                           path: &str,
                           allowed: &[AttributeKind]| {
            let mut local = HashSet::new();
            for a in attrs {
                if !local.insert(a.name.as_str()) {
                    diags.push(err(
                        format!("duplicate attribute {}", a.name),
                        format!("{path}.{}", a.name),
                    ));
                }
                if !allowed.contains(&a.kind) {
                    diags.push(err(
                        format!(
                            "attribute {} has kind {:?}, not allowed here",
                            a.name, a.kind
                        ),
                        format!("{path}.{}", a.name),
                    ));
                }
            }
        };

        for e in &self.regular_entities {
            let path = format!("entity {}", e.name);
            check_attrs(
                &mut diags,
                &mut e.attributes.iter(),
                &path,
                &[
                    AttributeKind::Key,
                    AttributeKind::Simple,
                    AttributeKind::Multivalued,
                ],
            );
            if e.keys().next().is_none() {
                diags.push(err(
                    format!("entity type {} has no key attribute", e.name),
                    path,
                ));
            }
        }
        for s in &self.subtypes {
            let path = format!("subtype {}", s.name);
            check_attrs(
                &mut diags,
                &mut s.attributes.iter(),
                &path,
                &[AttributeKind::Simple],
            );
            if self.regular(&s.supertype).is_none() {
                diags.push(err(
                    format!(
                        "supertype {} of subtype {} is not a regular entity type",
                        s.supertype, s.name
                    ),
                    path,
                ));
            }
        }
        for w in &self.weak_entities {
            let path = format!("weak {}", w.name);
            if w.partial_key.kind != AttributeKind::PartialKey {
                diags.push(err(
                    format!("weak entity type {} needs a partial key", w.name),
                    path.clone(),
                ));
            }
            check_attrs(
                &mut diags,
                &mut std::iter::once(&w.partial_key).chain(w.attributes.iter()),
                &path,
                &[AttributeKind::PartialKey, AttributeKind::Simple],
            );
            if w.attributes
                .iter()
                .any(|a| a.kind == AttributeKind::PartialKey)
            {
                diags.push(err(
                    format!("weak entity type {} has more than one partial key", w.name),
                    path.clone(),
                ));
            }
            if self.regular(&w.owner).is_none() {
                diags.push(err(
                    format!(
                        "owner {} of weak entity type {} is not a regular entity type",
                        w.owner, w.name
                    ),
                    path,
                ));
            }
        }
        for r in &self.relationships {
            let path = format!("rel {}", r.name);
            check_attrs(
                &mut diags,
                &mut r.attributes.iter(),
                &path,
                &[AttributeKind::Simple],
            );
            for ep in &r.endpoints {
                if self.regular(&ep.participant).is_none()
                    && self.subtype(&ep.participant).is_none()
                {
                    diags.push(err(
                        format!(
                            "participant {} of relationship {} is not a regular entity type or subtype",
                            ep.participant, r.name
                        ),
                        path.clone(),
                    ));
                }
            }
        }
        diags
    }
}

/// The bracketed `(Relationship, v2, v3, v4)` annotation carried by a
/// relationship-transforming FK.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FkSuffix {
    pub relationship: Identifier,
    /// Min of the pair nearest the entity whose relation holds the FK.
    pub near_min: MinCard,
    /// Min of the pair farthest from that entity.
    pub far_min: MinCard,
    /// Max of the pair farthest from that entity.
    pub far_max: MaxCard,
}

impl fmt::Display for FkSuffix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.relationship, self.near_min, self.far_min, self.far_max
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RdsAttribute {
    pub name: Identifier,
    pub underlined: bool,
    /// Subtype owning the referenced PK; only on FKs.
    pub prefix: Option<Identifier>,
    pub suffix: Option<FkSuffix>,
}

impl RdsAttribute {
    pub fn plain(name: impl Into<String>) -> Self {
        RdsAttribute {
            name: Identifier::new(name),
            underlined: false,
            prefix: None,
            suffix: None,
        }
    }

    pub fn underlined(name: impl Into<String>) -> Self {
        RdsAttribute {
            underlined: true,
            ..RdsAttribute::plain(name)
        }
    }

    pub fn foreign_key(name: Identifier, prefix: Option<Identifier>, suffix: FkSuffix) -> Self {
        RdsAttribute {
            name,
            underlined: false,
            prefix,
            suffix: Some(suffix),
        }
    }

    pub fn is_fk(&self) -> bool {
        self.suffix.is_some()
    }

    /// Prefix and name together; unique within a relation.
    pub fn qualified_name(&self) -> String {
        match &self.prefix {
            Some(p) => format!("{p}-{}", self.name),
            None => self.name.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: Identifier,
    pub attributes: Vec<RdsAttribute>,
}

impl Relation {
    pub fn new(name: Identifier) -> Self {
        Relation {
            name,
            attributes: Vec::new(),
        }
    }

    /// The PK proper: the first attribute.
    pub fn primary_key(&self) -> Option<&RdsAttribute> {
        self.attributes.first()
    }

    pub fn contains(&self, qualified: &str) -> bool {
        self.attributes
            .iter()
            .any(|a| a.qualified_name() == qualified)
    }

    pub fn underlined_count(&self) -> usize {
        self.attributes.iter().filter(|a| a.underlined).count()
    }

    /// Attribute-level invariants: prefix implies suffix, underlined implies
    /// no suffix, unique qualified names, at least one underlined attribute.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.attributes.is_empty() {
            out.push(format!("relation {} has no attributes", self.name));
        } else if self.underlined_count() == 0 {
            out.push(format!(
                "relation {} has no primary key attribute",
                self.name
            ));
        }
        let mut seen = HashSet::new();
        for a in &self.attributes {
            if a.prefix.is_some() && a.suffix.is_none() {
                out.push(format!(
                    "attribute {} of {} has a prefix but no bracketed suffix",
                    a.qualified_name(),
                    self.name
                ));
            }
            if a.underlined && a.suffix.is_some() {
                out.push(format!(
                    "underlined attribute {} of {} carries a suffix",
                    a.name, self.name
                ));
            }
            if !seen.insert(a.qualified_name()) {
                out.push(format!(
                    "duplicate attribute {} in {}",
                    a.qualified_name(),
                    self.name
                ));
            }
        }
        out
    }

    /// True when all underlined attributes precede all others; holds for
    /// every relation the forward transformer emits.
    pub fn keys_lead(&self) -> bool {
        let first_plain = self.attributes.iter().position(|a| !a.underlined);
        match first_plain {
            Some(i) => self.attributes[i..].iter().all(|a| !a.underlined),
            None => true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RelationalSchema {
    pub relations: Vec<Relation>,
}

impl RelationalSchema {
    pub fn get(&self, name: &Identifier) -> Option<&Relation> {
        self.relations.iter().find(|r| &r.name == name)
    }

    pub fn get_mut(&mut self, name: &Identifier) -> Option<&mut Relation> {
        self.relations.iter_mut().find(|r| &r.name == name)
    }

    pub fn contains(&self, name: &Identifier) -> bool {
        self.get(name).is_some()
    }

    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for r in &self.relations {
            if !seen.insert(r.name.as_str()) {
                out.push(format!("duplicate relation {}", r.name));
            }
            out.extend(r.invariant_violations());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: (&str, MinCard, MaxCard), b: (&str, MinCard, MaxCard)) -> RelationshipType {
        RelationshipType {
            name: "R".into(),
            endpoints: [
                RelationshipEndpoint::new(a.0, a.1, a.2),
                RelationshipEndpoint::new(b.0, b.1, b.2),
            ],
            attributes: vec![],
        }
    }

    #[test]
    fn ratio_class_examples() {
        let controls = rel(
            ("Department", MinCard::One, MaxCard::Many),
            ("Project", MinCard::One, MaxCard::One),
        );
        assert_eq!(ratio_class(&controls), RatioClass::OneToMany { n_side: 1 });
        let manages = rel(
            ("Manager", MinCard::One, MaxCard::One),
            ("Department", MinCard::One, MaxCard::One),
        );
        assert_eq!(ratio_class(&manages), RatioClass::OneToOne);
        let mn = rel(
            ("A", MinCard::One, MaxCard::Many),
            ("B", MinCard::One, MaxCard::Many),
        );
        assert_eq!(ratio_class(&mn), RatioClass::ManyToMany);
    }

    #[test]
    fn ratio_class_swap_symmetry() {
        let pairs = [
            (MinCard::Zero, MaxCard::One),
            (MinCard::One, MaxCard::One),
            (MinCard::Zero, MaxCard::Many),
            (MinCard::One, MaxCard::Many),
        ];
        for &(a0, a1) in &pairs {
            for &(b0, b1) in &pairs {
                let r = rel(("A", a0, a1), ("B", b0, b1));
                let mut swapped = r.clone();
                swapped.endpoints.swap(0, 1);
                match (ratio_class(&r), ratio_class(&swapped)) {
                    (RatioClass::OneToMany { n_side: x }, RatioClass::OneToMany { n_side: y }) => {
                        assert_eq!(x, 1 - y)
                    }
                    (x, y) => assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn designated_key_examples() {
        let employee = RegularEntityType::new(
            "Employee",
            vec![
                Attribute::key("EmpNo"),
                Attribute::simple("Name"),
                Attribute::simple("Address"),
                Attribute::simple("Salary"),
            ],
        );
        assert_eq!(designated_key(&employee).unwrap().name, "EmpNo");

        let department = RegularEntityType::new(
            "Department",
            vec![
                Attribute::key("DepNo"),
                Attribute::key("Name"),
                Attribute::simple("Field"),
            ],
        );
        assert_eq!(designated_key(&department).unwrap().name, "DepNo");

        let project = RegularEntityType::new("Project", vec![Attribute::key("Name")]);
        assert_eq!(
            designated_key(&project),
            Err(ModelError::NoDesignatedKey {
                entity: "Project".into()
            })
        );
    }

    #[test]
    fn designated_key_is_case_insensitive_and_first_wins() {
        let e = RegularEntityType::new(
            "Employee",
            vec![
                Attribute::key("Name"),
                Attribute::key("EMPcode"),
                Attribute::key("EmpNo"),
            ],
        );
        assert_eq!(e.designated_key().unwrap().name, "EMPcode");
        assert_eq!(e.designated_key_candidates().len(), 2);
    }

    #[test]
    fn prefix_rule_direction() {
        assert!(Identifier::new("DepNo").matches_prefix_of(&"Dependent".into()));
        assert!(Identifier::new("ENo").matches_prefix_of(&"E".into()));
        assert!(!Identifier::new("Em").matches_prefix_of(&"Employee".into()));
        assert!(!Identifier::new("SSN").matches_prefix_of(&"Employee".into()));
    }

    #[test]
    fn relation_invariants() {
        let mut bad = Relation::new("X".into());
        let mut a = RdsAttribute::underlined("A");
        a.suffix = Some(FkSuffix {
            relationship: "R".into(),
            near_min: MinCard::One,
            far_min: MinCard::One,
            far_max: MaxCard::One,
        });
        bad.attributes.push(a);
        let v = bad.invariant_violations();
        assert!(v.iter().any(|m| m.contains("carries a suffix")), "{v:?}");

        let mut prefixed = Relation::new("Y".into());
        prefixed.attributes.push(RdsAttribute::underlined("B"));
        let mut p = RdsAttribute::plain("EmpNo");
        p.prefix = Some("Manager".into());
        prefixed.attributes.push(p);
        assert!(prefixed.invariant_violations()[0].contains("prefix but no bracketed suffix"));
    }

    #[test]
    fn structure_catches_unresolved_and_duplicates() {
        let m = ErModel {
            regular_entities: vec![
                RegularEntityType::new("Employee", vec![Attribute::key("EmpNo")]),
                RegularEntityType::new("Employee", vec![Attribute::key("EmpNo")]),
            ],
            subtypes: vec![Subtype::new("Engineer", "Person", vec![])],
            ..Default::default()
        };
        let d = m.check_structure();
        assert_eq!(d.len(), 2, "{d:?}");
        assert!(d.iter().all(|d| d.rule == RuleId::Struct));
    }
}
