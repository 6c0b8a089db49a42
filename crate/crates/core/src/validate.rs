//! Notation conformance checks that an ER model must pass before it can be
//! transformed.

use std::collections::HashMap;

use crate::diagnostic::{Diagnostic, Location, RuleId};
use crate::model::{ErModel, Identifier, RatioClass};

/// Diagnostics ordered by model position, then rule id.
/// Position, name, label, and whether the plural check applies.
type Named<'a> = ((usize, usize, usize), &'a Identifier, String, bool);

pub fn validate_notation(m: &ErModel) -> Vec<Diagnostic> {
    validate_notation_with(m, false)
}

/// As [`validate_notation`]; `extensions` admits 1:N relationship types with
/// subtype participants.
pub fn validate_notation_with(m: &ErModel, extensions: bool) -> Vec<Diagnostic> {
    let mut found: Vec<((usize, usize, usize), Diagnostic)> = Vec::new();
    let mut push = |pos: (usize, usize, usize), d: Diagnostic| found.push((pos, d));

    let structure = m.check_structure();
    if !structure.is_empty() {
        return structure;
    }

    // Names: every element, attribute and identifying relationship name.
    let mut named: Vec<Named> = Vec::new();
    for (i, e) in m.regular_entities.iter().enumerate() {
        named.push(((0, i, 0), &e.name, format!("entity {}", e.name), true));
        for (j, a) in e.attributes.iter().enumerate() {
            named.push((
                (0, i, j + 1),
                &a.name,
                format!("entity {}.{}", e.name, a.name),
                false,
            ));
        }
    }
    for (i, s) in m.subtypes.iter().enumerate() {
        named.push(((1, i, 0), &s.name, format!("subtype {}", s.name), true));
        for (j, a) in s.attributes.iter().enumerate() {
            named.push((
                (1, i, j + 1),
                &a.name,
                format!("subtype {}.{}", s.name, a.name),
                false,
            ));
        }
    }
    for (i, w) in m.weak_entities.iter().enumerate() {
        let path = format!("weak {}", w.name);
        named.push(((2, i, 0), &w.name, path.clone(), true));
        named.push(((2, i, 0), &w.identifying_relationship, path, false));
        for (j, a) in std::iter::once(&w.partial_key)
            .chain(&w.attributes)
            .enumerate()
        {
            named.push((
                (2, i, j + 1),
                &a.name,
                format!("weak {}.{}", w.name, a.name),
                false,
            ));
        }
    }
    for (i, r) in m.relationships.iter().enumerate() {
        named.push(((3, i, 0), &r.name, format!("rel {}", r.name), false));
        for (j, a) in r.attributes.iter().enumerate() {
            named.push((
                (3, i, j + 1),
                &a.name,
                format!("rel {}.{}", r.name, a.name),
                false,
            ));
        }
    }
    for (pos, name, path, is_entity_type) in named {
        if !name.is_alphabetic() {
            push(
                pos,
                Diagnostic::error(
                    RuleId::R2_5_2,
                    format!("name `{name}` must contain letters only"),
                    Location::Element(path.clone()),
                ),
            );
        }
        if !name.is_capitalized() {
            push(
                pos,
                Diagnostic::error(
                    RuleId::R2_5_1,
                    format!("name `{name}` must begin with an uppercase letter"),
                    Location::Element(path.clone()),
                ),
            );
        }
        if is_entity_type && looks_plural(name.as_str()) {
            push(
                pos,
                Diagnostic::warning(
                    RuleId::R2_5_1,
                    format!("entity type name `{name}` looks plural; names should be singular"),
                    Location::Element(path),
                ),
            );
        }
    }

    // Designated keys.
    let mut key_owner: HashMap<&str, &Identifier> = HashMap::new();
    for (i, e) in m.regular_entities.iter().enumerate() {
        let path = Location::Element(format!("entity {}", e.name));
        let candidates = e.designated_key_candidates();
        match candidates.as_slice() {
            [] => push(
                (0, i, 0),
                Diagnostic::error(
                    RuleId::R2_4_2,
                    format!(
                        "entity type {} has no key attribute whose first three letters match its name",
                        e.name
                    ),
                    path,
                ),
            ),
            [first, rest @ ..] => {
                if !rest.is_empty() {
                    push(
                        (0, i, 0),
                        Diagnostic::warning(
                            RuleId::R2_4_2,
                            format!(
                                "entity type {} has several keys matching its name; {} is used as the primary key",
                                e.name, first.name
                            ),
                            path.clone(),
                        ),
                    );
                }
                if let Some(other) = key_owner.insert(first.name.as_str(), &e.name) {
                    push(
                        (0, i, 0),
                        Diagnostic::error(
                            RuleId::Subset,
                            format!(
                                "designated key {} of {} is also the designated key of {}; foreign keys could not be resolved",
                                first.name, e.name, other
                            ),
                            path,
                        ),
                    );
                }
            }
        }
    }

    // Subtypes need an intrinsic attribute or a relationship.
    for (i, s) in m.subtypes.iter().enumerate() {
        if s.attributes.is_empty() && m.participations(&s.name).next().is_none() {
            push(
                (1, i, 0),
                Diagnostic::error(
                    RuleId::R2_2_1I,
                    format!(
                        "subtype {} has neither an intrinsic attribute nor a relationship type",
                        s.name
                    ),
                    Location::Element(format!("subtype {}", s.name)),
                ),
            );
        }
    }

    for (i, w) in m.weak_entities.iter().enumerate() {
        if w.attributes.is_empty() && w.partial_key.name == w.name {
            push(
                (2, i, 0),
                Diagnostic::error(
                    RuleId::Subset,
                    format!(
                        "weak entity type {} whose only attribute is a partial key of the same name is indistinguishable from a multi-valued attribute",
                        w.name
                    ),
                    Location::Element(format!("weak {}", w.name)),
                ),
            );
        }
    }

    // Supported relationship shapes.
    for (i, r) in m.relationships.iter().enumerate() {
        let loc = || Location::Element(format!("rel {}", r.name));
        let mut subset =
            |msg: String| push((3, i, 0), Diagnostic::error(RuleId::Subset, msg, loc()));
        let [a, b] = &r.endpoints;
        if a.participant == b.participant {
            subset(format!(
                "relationship {} is unary; unary relationship types are not supported",
                r.name
            ));
            continue;
        }
        let sub_a = m.subtype(&a.participant);
        let sub_b = m.subtype(&b.participant);
        let related_to_own_supertype = match (sub_a, sub_b) {
            (Some(s), None) => s.supertype == b.participant,
            (None, Some(s)) => s.supertype == a.participant,
            _ => false,
        };
        match r.ratio_class() {
            RatioClass::ManyToMany => subset(format!(
                "relationship {} is many-to-many; M:N relationship types are not supported",
                r.name
            )),
            RatioClass::OneToOne => match (sub_a.is_some(), sub_b.is_some()) {
                (false, false) => subset(format!(
                    "relationship {} is 1:1 between two regular entity types; not supported",
                    r.name
                )),
                (true, true) => subset(format!(
                    "relationship {} is 1:1 between two subtypes; not supported",
                    r.name
                )),
                _ => {}
            },
            RatioClass::OneToMany { .. } => {
                if (sub_a.is_some() || sub_b.is_some()) && !extensions {
                    subset(format!(
                        "relationship {} is 1:N with a subtype participant; only 1:N between regular entity types is supported",
                        r.name
                    ));
                }
            }
        }
        if related_to_own_supertype {
            subset(format!(
                "relationship {} joins a subtype with its own supertype; not supported",
                r.name
            ));
        }
    }

    found.sort_by(|(pa, da), (pb, db)| pa.cmp(pb).then(da.rule.cmp(&db.rule)));
    found.into_iter().map(|(_, d)| d).collect()
}

/// Singular-form heuristic: a trailing `s` not preceded by another `s`.
fn looks_plural(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    lower.ends_with('s') && !lower.ends_with("ss")
}
