//! Relational schema back to ER model.
//!
//! Relations are classified by the shape of their leading attributes, FKs
//! are read back into relationship types through their bracketed suffixes
//! and prefixes, and multi-valued attributes are reattached to their owners.
//! The identifying relationship name of a weak entity type is not carried
//! by the schema and is regenerated as `<Weak>Of`.

use std::collections::{BTreeMap, HashMap};

use crate::diagnostic::{Diagnostic, Location, RuleId};
use crate::forward::TransformConfig;
use crate::model::{
    Attribute, AttributeKind, CardinalityPair, ErModel, Identifier, MaxCard, RatioClass,
    RdsAttribute, RegularEntityType, Relation, RelationalSchema, RelationshipEndpoint,
    RelationshipType, Subtype, WeakEntityType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    RegularEntity,
    SubtypeRel,
    MvaRel,
    WeakRel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedRelation {
    pub name: Identifier,
    pub kind: RelationKind,
    /// Supertype or owner regular relation; `None` for regular ones.
    pub owner: Option<Identifier>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classification {
    pub relations: Vec<ClassifiedRelation>,
    /// PK name of each regular entity relation to that relation's name.
    pk_owner: HashMap<Identifier, Identifier>,
    pub notes: Vec<Diagnostic>,
}

impl Classification {
    pub fn kind_of(&self, relation: &Identifier) -> Option<RelationKind> {
        self.get(relation).map(|c| c.kind)
    }

    pub fn get(&self, relation: &Identifier) -> Option<&ClassifiedRelation> {
        self.relations.iter().find(|c| &c.name == relation)
    }

    /// The regular entity relation whose PK is named `pk`.
    pub fn regular_with_pk(&self, pk: &Identifier) -> Option<&Identifier> {
        self.pk_owner.get(pk)
    }
}

fn reverse_error(relation: &Identifier, msg: String) -> Diagnostic {
    Diagnostic::error(
        RuleId::Reverse,
        msg,
        Location::Element(format!("relation {relation}")),
    )
}

fn is_bare(a: &RdsAttribute) -> bool {
    a.prefix.is_none() && a.suffix.is_none()
}

/// Assigns every relation a kind: regular entity relations by the
/// three-letter match between their leading PK and their name; the rest by
/// how many attributes are underlined after a leading regular PK.
pub fn classify_relations(s: &RelationalSchema) -> Result<Classification, Vec<Diagnostic>> {
    let mut c = Classification::default();
    let mut errors = Vec::new();

    for r in &s.relations {
        let Some(first) = r.attributes.first() else {
            continue;
        };
        if first.underlined && is_bare(first) && first.name.matches_prefix_of(&r.name) {
            if let Some(earlier) = c.pk_owner.get(&first.name) {
                c.notes.push(Diagnostic::warning(
                    RuleId::Reverse,
                    format!(
                        "{} starts with {} like the earlier regular relation {}; treated as dependent on {}",
                        r.name, first.name, earlier, earlier
                    ),
                    Location::Element(format!("relation {}", r.name)),
                ));
                continue;
            }
            c.pk_owner.insert(first.name.clone(), r.name.clone());
            c.relations.push(ClassifiedRelation {
                name: r.name.clone(),
                kind: RelationKind::RegularEntity,
                owner: None,
            });
        }
    }

    let mut dependents = Vec::new();
    for r in &s.relations {
        if c.get(&r.name).is_some() {
            continue;
        }
        let Some(first) = r.attributes.first() else {
            errors.push(reverse_error(
                &r.name,
                format!("relation {} has no attributes", r.name),
            ));
            continue;
        };
        let owner = match c.pk_owner.get(&first.name) {
            Some(o) if first.underlined && is_bare(first) => o.clone(),
            _ => {
                errors.push(reverse_error(
                    &r.name,
                    format!(
                        "cannot classify {}: its leading attribute {} is neither a PK sharing the relation's first three letters nor the PK of a regular entity relation",
                        r.name,
                        first.qualified_name()
                    ),
                ));
                continue;
            }
        };
        let underlined = r.underlined_count();
        let has_fk = r.attributes.iter().any(RdsAttribute::is_fk);
        let kind = match underlined {
            1 => Some(RelationKind::SubtypeRel),
            2 if r.attributes[1].underlined && !has_fk => {
                if r.attributes.len() == 2 && r.attributes[1].name == r.name {
                    Some(RelationKind::MvaRel)
                } else {
                    Some(RelationKind::WeakRel)
                }
            }
            _ => None,
        };
        match kind {
            Some(kind) => dependents.push(ClassifiedRelation {
                name: r.name.clone(),
                kind,
                owner: Some(owner),
            }),
            None => errors.push(reverse_error(
                &r.name,
                format!(
                    "cannot classify {}: {} underlined attribute(s){} after the PK of {}",
                    r.name,
                    underlined,
                    if has_fk { " and foreign keys" } else { "" },
                    owner
                ),
            )),
        }
    }
    c.relations.extend(dependents);
    // Keep schema order.
    let order: HashMap<&Identifier, usize> = s
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.name, i))
        .collect();
    c.relations.sort_by_key(|cr| order[&cr.name]);

    if errors.is_empty() {
        Ok(c)
    } else {
        Err(errors)
    }
}

/// One relationship type recovered from a suffixed FK.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretedFk {
    pub relationship: RelationshipType,
    /// Subtype named by the FK prefix, with its supertype.
    pub prefixed_subtype: Option<(Identifier, Identifier)>,
    /// Index one past the relationship's trailing attributes.
    pub end: usize,
}

/// Reads the FK at `index` of `rel` back into a relationship type. The near
/// participant is the entity `rel` stands for, the far one the owner of the
/// referenced PK (or the prefix subtype). The near pair's max is always 1;
/// the far pair is `(v3, v4)`.
pub fn interpret_fk(
    rel: &Relation,
    index: usize,
    ctx: &Classification,
) -> Result<InterpretedFk, Diagnostic> {
    let fk = &rel.attributes[index];
    let suffix = fk.suffix.as_ref().ok_or_else(|| {
        reverse_error(
            &rel.name,
            format!("{} is not a foreign key", fk.qualified_name()),
        )
    })?;
    let regular = ctx.regular_with_pk(&fk.name).ok_or_else(|| {
        reverse_error(
            &rel.name,
            format!(
                "dangling foreign key {} in {}: no regular entity relation has PK {}",
                fk.qualified_name(),
                rel.name,
                fk.name
            ),
        )
    })?;
    let (far, prefixed_subtype) = match &fk.prefix {
        Some(p) => (p.clone(), Some((p.clone(), regular.clone()))),
        None => (regular.clone(), None),
    };
    let mut end = index + 1;
    let mut attributes = Vec::new();
    while let Some(a) = rel.attributes.get(end) {
        if a.underlined || !is_bare(a) {
            break;
        }
        attributes.push(Attribute::simple(a.name.as_str()));
        end += 1;
    }
    Ok(InterpretedFk {
        relationship: RelationshipType {
            name: suffix.relationship.clone(),
            endpoints: [
                RelationshipEndpoint {
                    participant: rel.name.clone(),
                    nearest: CardinalityPair::new(suffix.near_min, MaxCard::One),
                },
                RelationshipEndpoint {
                    participant: far,
                    nearest: CardinalityPair::new(suffix.far_min, suffix.far_max),
                },
            ],
            attributes,
        },
        prefixed_subtype,
        end,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reversal {
    pub model: ErModel,
    /// Normalizations applied and positional tie-breaks taken.
    pub notes: Vec<Diagnostic>,
    /// For each 1:1 relationship type, the participant whose relation holds the FK.
    pub sog_choices: BTreeMap<Identifier, Identifier>,
    /// Whether a 1:N relationship type has a subtype participant.
    pub needs_extensions: bool,
}

impl Reversal {
    /// A configuration under which the recovered model transforms back
    /// into the input schema.
    pub fn config(&self) -> TransformConfig {
        TransformConfig {
            extensions: self.needs_extensions,
            ..TransformConfig::explicit(self.sog_choices.clone())
        }
    }
}

/// Leading underlined attributes become keys, then plain attributes up to
/// the first FK become simple attributes. Returns the index of the first FK.
fn leading_attributes(
    rel: &Relation,
    key_kind: Option<AttributeKind>,
) -> Result<(Vec<Attribute>, usize), Diagnostic> {
    let mut attrs = Vec::new();
    let mut in_keys = true;
    for (i, a) in rel.attributes.iter().enumerate() {
        if a.is_fk() {
            return Ok((attrs, i));
        }
        if a.underlined {
            if !in_keys {
                return Err(reverse_error(
                    &rel.name,
                    format!(
                        "underlined attribute {} follows a non-key attribute in {}",
                        a.name, rel.name
                    ),
                ));
            }
            if let Some(kind) = key_kind {
                attrs.push(Attribute::new(a.name.as_str(), kind));
            } else if i > 0 {
                return Err(reverse_error(
                    &rel.name,
                    format!("unexpected underlined attribute {} in {}", a.name, rel.name),
                ));
            }
        } else {
            in_keys = false;
            attrs.push(Attribute::simple(a.name.as_str()));
        }
    }
    Ok((attrs, rel.attributes.len()))
}

/// Reconstructs the ER model a transformer-produced schema came from.
pub fn reverse_transform(s: &RelationalSchema) -> Result<Reversal, Vec<Diagnostic>> {
    let violations = s.invariant_violations();
    if !violations.is_empty() {
        return Err(violations
            .into_iter()
            .map(|v| Diagnostic::error(RuleId::Struct, v, Location::Unknown))
            .collect());
    }
    let ctx = classify_relations(s)?;
    let mut notes = ctx.notes.clone();
    let mut errors = Vec::new();
    let mut model = ErModel::default();
    let mut multivalued: HashMap<Identifier, Vec<Attribute>> = HashMap::new();
    // Relation name to index of its first FK.
    let mut fk_start: Vec<(&Relation, usize)> = Vec::new();

    for c in &ctx.relations {
        let rel = s.get(&c.name).expect("classified relation exists");
        let owner = c.owner.clone();
        match c.kind {
            RelationKind::RegularEntity => {
                match leading_attributes(rel, Some(AttributeKind::Key)) {
                    Ok((attributes, first_fk)) => {
                        model.regular_entities.push(RegularEntityType {
                            name: rel.name.clone(),
                            attributes,
                        });
                        fk_start.push((rel, first_fk));
                    }
                    Err(d) => errors.push(d),
                }
            }
            RelationKind::SubtypeRel => match leading_attributes(rel, None) {
                Ok((attributes, first_fk)) => {
                    model.subtypes.push(Subtype {
                        name: rel.name.clone(),
                        supertype: owner.expect("subtype relation has a supertype"),
                        attributes,
                    });
                    fk_start.push((rel, first_fk));
                }
                Err(d) => errors.push(d),
            },
            RelationKind::MvaRel => {
                multivalued
                    .entry(owner.expect("MVA relation has an owner"))
                    .or_default()
                    .push(Attribute::multivalued(rel.name.as_str()));
            }
            RelationKind::WeakRel => {
                let identifying = Identifier::new(format!("{}Of", rel.name));
                notes.push(Diagnostic::note(
                    RuleId::Normalize,
                    format!(
                        "identifying relationship of weak entity type {} is not recorded in the schema; named {}",
                        rel.name, identifying
                    ),
                    Location::Element(format!("relation {}", rel.name)),
                ));
                model.weak_entities.push(WeakEntityType {
                    name: rel.name.clone(),
                    owner: owner.expect("weak relation has an owner"),
                    identifying_relationship: identifying,
                    partial_key: Attribute::partial_key(rel.attributes[1].name.as_str()),
                    attributes: rel.attributes[2..]
                        .iter()
                        .map(|a| Attribute::simple(a.name.as_str()))
                        .collect(),
                });
            }
        }
    }

    for e in &mut model.regular_entities {
        if let Some(mvas) = multivalued.remove(&e.name) {
            e.attributes.extend(mvas);
        }
    }

    let mut sog_choices = BTreeMap::new();
    let mut needs_extensions = false;
    let mut prefix_subtypes: Vec<Subtype> = Vec::new();
    for (rel, mut i) in fk_start {
        while i < rel.attributes.len() {
            let a = &rel.attributes[i];
            if !a.is_fk() {
                errors.push(reverse_error(
                    &rel.name,
                    format!(
                        "attribute {} in {} follows foreign keys but belongs to none",
                        a.qualified_name(),
                        rel.name
                    ),
                ));
                i += 1;
                continue;
            }
            let fk = match interpret_fk(rel, i, &ctx) {
                Ok(fk) => fk,
                Err(d) => {
                    errors.push(d);
                    i += 1;
                    continue;
                }
            };
            i = fk.end;
            if let Some((sub, supertype)) = &fk.prefixed_subtype {
                match model.subtype(sub).or_else(|| prefix_subtypes.iter().find(|s| &s.name == sub)) {
                    Some(existing) if &existing.supertype != supertype => errors.push(reverse_error(
                        &rel.name,
                        format!(
                            "prefix {sub} in {} implies supertype {supertype}, but {sub} is a subtype of {}",
                            rel.name, existing.supertype
                        ),
                    )),
                    Some(_) => {}
                    None if s.contains(sub) => errors.push(reverse_error(
                        &rel.name,
                        format!("prefix {sub} in {} names a relation that is not a subtype relation", rel.name),
                    )),
                    None => {
                        notes.push(Diagnostic::note(
                            RuleId::Normalize,
                            format!("subtype {sub} of {supertype} has no relation; recovered from the prefix in {}", rel.name),
                            Location::Element(format!("relation {}", rel.name)),
                        ));
                        prefix_subtypes.push(Subtype {
                            name: sub.clone(),
                            supertype: supertype.clone(),
                            attributes: vec![],
                        });
                    }
                }
            }
            let r = fk.relationship;
            if model.relationship(&r.name).is_some() {
                errors.push(reverse_error(
                    &rel.name,
                    format!(
                        "relationship {} is encoded by more than one foreign key",
                        r.name
                    ),
                ));
                continue;
            }
            match r.ratio_class() {
                RatioClass::OneToOne => {
                    sog_choices.insert(r.name.clone(), rel.name.clone());
                }
                _ => {
                    let is_sub = |p: &Identifier| {
                        ctx.kind_of(p) == Some(RelationKind::SubtypeRel)
                            || prefix_subtypes.iter().any(|s| &s.name == p)
                    };
                    if r.endpoints.iter().any(|e| is_sub(&e.participant)) {
                        needs_extensions = true;
                    }
                }
            }
            model.relationships.push(r);
        }
    }
    model.subtypes.extend(prefix_subtypes);

    if errors.is_empty() {
        errors.extend(model.check_structure().into_iter().map(|mut d| {
            d.rule = RuleId::Reverse;
            d
        }));
    }
    if errors.is_empty() {
        Ok(Reversal {
            model,
            notes,
            sog_choices,
            needs_extensions,
        })
    } else {
        Err(errors)
    }
}

/// Canonical form used to compare models across a round trip: weak entity
/// identifying relationships renamed `<Weak>Of`, regular entity attributes
/// ordered designated key, other keys, simple, multi-valued; relationship
/// endpoints ordered by participant; every element list sorted by name.
pub fn normalize(m: &ErModel) -> ErModel {
    let mut out = m.clone();
    for e in &mut out.regular_entities {
        let designated = e.designated_key().ok().map(|a| a.name.clone());
        let rank = |a: &Attribute| match a.kind {
            AttributeKind::Key if Some(&a.name) == designated.as_ref() => 0,
            AttributeKind::Key => 1,
            AttributeKind::Simple | AttributeKind::PartialKey => 2,
            AttributeKind::Multivalued => 3,
        };
        e.attributes.sort_by_key(rank);
    }
    for w in &mut out.weak_entities {
        w.identifying_relationship = Identifier::new(format!("{}Of", w.name));
    }
    for r in &mut out.relationships {
        r.endpoints
            .sort_by(|a, b| a.participant.cmp(&b.participant));
    }
    out.regular_entities.sort_by(|a, b| a.name.cmp(&b.name));
    out.subtypes.sort_by(|a, b| a.name.cmp(&b.name));
    out.weak_entities.sort_by(|a, b| a.name.cmp(&b.name));
    out.relationships.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn attr_list(attrs: &[Attribute]) -> String {
    let items: Vec<String> = attrs
        .iter()
        .map(|a| match a.kind {
            AttributeKind::Simple => a.name.to_string(),
            AttributeKind::Key => format!("key {}", a.name),
            AttributeKind::Multivalued => format!("multi {}", a.name),
            AttributeKind::PartialKey => format!("partial {}", a.name),
        })
        .collect();
    format!("[{}]", items.join(", "))
}

fn diff_list<T, F>(
    out: &mut Vec<String>,
    kind: &str,
    left: &[T],
    right: &[T],
    name: fn(&T) -> &Identifier,
    fields: F,
) where
    T: PartialEq,
    F: Fn(&T, &T) -> Vec<String>,
{
    let mut names: Vec<&Identifier> = left.iter().chain(right).map(name).collect();
    names.sort();
    names.dedup();
    for n in names {
        match (
            left.iter().find(|x| name(x) == n),
            right.iter().find(|x| name(x) == n),
        ) {
            (Some(_), None) => out.push(format!("{kind} {n}: only in expected")),
            (None, Some(_)) => out.push(format!("{kind} {n}: only in actual")),
            (Some(a), Some(b)) if a != b => {
                for f in fields(a, b) {
                    out.push(format!("{kind} {n}: {f}"));
                }
            }
            _ => {}
        }
    }
}

fn field<D: PartialEq + std::fmt::Display>(out: &mut Vec<String>, label: &str, a: D, b: D) {
    if a != b {
        out.push(format!("{label}: expected {a}, actual {b}"));
    }
}

/// Field-by-field differences between two models after normalization.
/// Empty when they are equal.
pub fn model_diff(expected: &ErModel, actual: &ErModel) -> Vec<String> {
    let (l, r) = (normalize(expected), normalize(actual));
    let mut out = Vec::new();
    diff_list(
        &mut out,
        "entity",
        &l.regular_entities,
        &r.regular_entities,
        |e| &e.name,
        |a, b| {
            let mut f = Vec::new();
            field(
                &mut f,
                "attributes",
                attr_list(&a.attributes),
                attr_list(&b.attributes),
            );
            f
        },
    );
    diff_list(
        &mut out,
        "subtype",
        &l.subtypes,
        &r.subtypes,
        |s| &s.name,
        |a, b| {
            let mut f = Vec::new();
            field(&mut f, "supertype", &a.supertype, &b.supertype);
            field(
                &mut f,
                "attributes",
                attr_list(&a.attributes),
                attr_list(&b.attributes),
            );
            f
        },
    );
    diff_list(
        &mut out,
        "weak",
        &l.weak_entities,
        &r.weak_entities,
        |w| &w.name,
        |a, b| {
            let mut f = Vec::new();
            field(&mut f, "owner", &a.owner, &b.owner);
            field(
                &mut f,
                "partial key",
                &a.partial_key.name,
                &b.partial_key.name,
            );
            field(
                &mut f,
                "attributes",
                attr_list(&a.attributes),
                attr_list(&b.attributes),
            );
            f
        },
    );
    diff_list(
        &mut out,
        "rel",
        &l.relationships,
        &r.relationships,
        |r| &r.name,
        |a, b| {
            let mut f = Vec::new();
            for i in 0..2 {
                let ep = |r: &RelationshipType| {
                    format!("{} {}", r.endpoints[i].participant, r.endpoints[i].nearest)
                };
                field(&mut f, &format!("endpoint {}", i + 1), ep(a), ep(b));
            }
            field(
                &mut f,
                "attributes",
                attr_list(&a.attributes),
                attr_list(&b.attributes),
            );
            f
        },
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::er_text::{parse_er, ErSource};
    use crate::model::MinCard;
    use crate::rds_text::{parse_rds, RdsSource};

    const COMPANY_RDS: &str = include_str!("../tests/data/company.rds");
    const COMPANY: &str = include_str!("../tests/data/company.er");

    fn rds(text: &str) -> RelationalSchema {
        parse_rds(&RdsSource::new("t.rds", text)).unwrap()
    }

    #[test]
    fn classifies_company_schema() {
        let c = classify_relations(&rds(COMPANY_RDS)).unwrap();
        use RelationKind::*;
        for (name, kind) in [
            ("Employee", RegularEntity),
            ("Project", RegularEntity),
            ("Department", RegularEntity),
            ("Engineer", SubtypeRel),
            ("Location", MvaRel),
            ("Dependent", WeakRel),
        ] {
            assert_eq!(c.kind_of(&name.into()), Some(kind), "{name}");
        }
        assert_eq!(
            c.get(&"Engineer".into()).unwrap().owner.as_ref().unwrap(),
            "Employee"
        );
        assert_eq!(
            c.get(&"Location".into()).unwrap().owner.as_ref().unwrap(),
            "Department"
        );
    }

    #[test]
    fn single_relation() {
        let c = classify_relations(&rds("E[_ENo_]")).unwrap();
        assert_eq!(c.kind_of(&"E".into()), Some(RelationKind::RegularEntity));
        let r = reverse_transform(&rds("E[_ENo_]")).unwrap();
        assert_eq!(
            r.model.regular_entities,
            vec![RegularEntityType::new("E", vec![Attribute::key("ENo")])]
        );
        assert!(r.model.relationships.is_empty() && r.notes.is_empty());
    }

    #[test]
    fn orphan_weak_relation() {
        let d = classify_relations(&rds("Dependent[_EmpNo_, _Name_, Sex, Relation]")).unwrap_err();
        assert_eq!(d[0].rule, RuleId::Reverse);
        assert!(d[0].message.contains("cannot classify Dependent"));
    }

    #[test]
    fn mismatched_second_name_reads_as_weak() {
        let c = classify_relations(&rds("Project[_ProNo_]\nMilestone[_ProNo_, _Title_]")).unwrap();
        assert_eq!(c.kind_of(&"Milestone".into()), Some(RelationKind::WeakRel));
    }

    #[test]
    fn positional_tie_break() {
        let c =
            classify_relations(&rds("Employee[_EmpNo_, Name]\nEmployer[_EmpNo_, Rank]")).unwrap();
        assert_eq!(
            c.kind_of(&"Employer".into()),
            Some(RelationKind::SubtypeRel)
        );
        assert_eq!(c.notes.len(), 1);
    }

    fn fk_of(line_text: &str, schema: &str, index: usize) -> InterpretedFk {
        let s = rds(schema);
        let c = classify_relations(&s).unwrap();
        let rel = s.get(&line_text.into()).unwrap();
        interpret_fk(rel, index, &c).unwrap()
    }

    #[test]
    fn interprets_controls() {
        let fk = fk_of("Project", COMPANY_RDS, 3);
        let r = fk.relationship;
        assert_eq!(r.name, "Controls");
        assert_eq!(r.ratio_class(), RatioClass::OneToMany { n_side: 0 });
        assert_eq!(r.endpoints[0].participant, "Project");
        assert_eq!(
            r.endpoints[0].nearest,
            CardinalityPair::new(MinCard::One, MaxCard::One)
        );
        assert_eq!(r.endpoints[1].participant, "Department");
        assert_eq!(
            r.endpoints[1].nearest,
            CardinalityPair::new(MinCard::One, MaxCard::Many)
        );
        assert!(r.attributes.is_empty());
    }

    #[test]
    fn interprets_manages_with_prefix() {
        let fk = fk_of("Department", COMPANY_RDS, 3);
        assert_eq!(fk.relationship.name, "Manages");
        assert_eq!(fk.relationship.endpoints[1].participant, "Manager");
        assert_eq!(fk.relationship.ratio_class(), RatioClass::OneToOne);
        assert_eq!(
            fk.relationship.attributes,
            vec![Attribute::simple("StartDate")]
        );
        assert_eq!(
            fk.prefixed_subtype,
            Some(("Manager".into(), "Employee".into()))
        );
    }

    #[test]
    fn interprets_consult() {
        let fk = fk_of("Engineer", COMPANY_RDS, 2);
        assert_eq!(fk.relationship.name, "Consult");
        assert_eq!(fk.relationship.endpoints[0].participant, "Engineer");
        assert_eq!(fk.relationship.endpoints[1].participant, "Project");
        assert_eq!(fk.relationship.attributes, vec![Attribute::simple("Hours")]);
        assert_eq!(fk.prefixed_subtype, None);
    }

    #[test]
    fn dangling_fk() {
        let s = rds("Project[_ProNo_, DivNo(Runs, 1, 1, n)]");
        let c = classify_relations(&s).unwrap();
        let d = interpret_fk(&s.relations[0], 1, &c).unwrap_err();
        assert!(d.message.contains("dangling"));
    }

    #[test]
    fn reverses_company_schema() {
        let r = reverse_transform(&rds(COMPANY_RDS)).unwrap();
        let company = parse_er(&ErSource::new("company.er", COMPANY)).unwrap();
        assert_eq!(model_diff(&company, &r.model), Vec::<String>::new());
        assert_eq!(normalize(&r.model), normalize(&company));
        assert_eq!(
            r.model.subtype(&"Manager".into()).unwrap().supertype,
            "Employee"
        );
        assert_eq!(
            r.sog_choices.get(&Identifier::from("Manages")).unwrap(),
            "Department"
        );
        assert_eq!(
            r.sog_choices.get(&Identifier::from("Consult")).unwrap(),
            "Engineer"
        );
        let norm: Vec<_> = r
            .notes
            .iter()
            .filter(|n| n.rule == RuleId::Normalize)
            .collect();
        assert_eq!(norm.len(), 2);
    }

    #[test]
    fn diff_reports_fields() {
        let company = parse_er(&ErSource::new("company.er", COMPANY)).unwrap();
        let mut changed = company.clone();
        changed.relationships[0].endpoints[0].nearest.min = MinCard::Zero;
        changed.subtypes.pop();
        let d = model_diff(&company, &changed);
        assert_eq!(d.len(), 2, "{d:?}");
        assert!(d.iter().any(|l| l.starts_with("rel Controls: endpoint 1")));
        assert!(d.iter().any(|l| l == "subtype Manager: only in expected"));
    }

    #[test]
    fn normalize_is_idempotent() {
        let company = parse_er(&ErSource::new("company.er", COMPANY)).unwrap();
        let once = normalize(&company);
        assert_eq!(normalize(&once), once);
    }
}
