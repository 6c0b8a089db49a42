//! Random models inside the reversible subset, shared by the integration tests.
//!
//! Every name is built on a fresh three-letter stem, so no key or attribute
//! accidentally passes the three-letter rule against a foreign relation, and
//! no FK collides with an attribute already in its holder.

#![allow(dead_code)]

use std::collections::HashSet;

use errds::{
    Attribute, ErModel, Identifier, MaxCard, MinCard, RegularEntityType, RelationshipEndpoint,
    RelationshipType, SogPolicy, Subtype, TransformConfig, WeakEntityType,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MAX_REGULAR: usize = 6;
pub const MAX_SUBTYPES: usize = 4;
pub const MAX_WEAK: usize = 3;
pub const MAX_RELATIONSHIPS: usize = 6;
pub const MAX_ATTRIBUTES: usize = 8;

const HEADS: &[u8] = b"BCDFGHJKLMNPRTVZ";
const VOWELS: &[u8] = b"aeiou";
const CODAS: &[u8] = b"bcdfgklmnprtvz";
const TAILS: &[&str] = &["a", "o", "en", "ar", "el", "um", "ix", "ot"];

#[derive(Default)]
struct Names {
    stems: HashSet<String>,
}

impl Names {
    fn stem(&mut self, rng: &mut impl Rng) -> String {
        loop {
            let s: String = [
                *HEADS.choose(rng).unwrap() as char,
                *VOWELS.choose(rng).unwrap() as char,
                *CODAS.choose(rng).unwrap() as char,
            ]
            .iter()
            .collect();
            if self.stems.insert(s.to_ascii_lowercase()) {
                return s;
            }
        }
    }

    fn word(&mut self, rng: &mut impl Rng) -> String {
        let stem = self.stem(rng);
        format!("{stem}{}", TAILS.choose(rng).unwrap())
    }
}

fn min(rng: &mut impl Rng) -> MinCard {
    if rng.gen() {
        MinCard::One
    } else {
        MinCard::Zero
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A model that validates without errors and survives the round trip.
pub fn random_model(rng: &mut impl Rng) -> ErModel {
    let mut names = Names::default();
    let mut m = ErModel::default();

    for _ in 0..rng.gen_range(1..=MAX_REGULAR) {
        let stem = names.stem(rng);
        let name = format!("{stem}{}", TAILS.choose(rng).unwrap());
        let mut attrs = vec![Attribute::key(format!("{stem}No"))];
        for _ in 1..rng.gen_range(1..=MAX_ATTRIBUTES) {
            let w = names.word(rng);
            attrs.push(match rng.gen_range(0..10) {
                0 => Attribute::key(w),
                1 | 2 => Attribute::multivalued(w),
                _ => Attribute::simple(w),
            });
        }
        attrs.shuffle(rng);
        m.regular_entities.push(RegularEntityType::new(name, attrs));
    }

    for _ in 0..rng.gen_range(0..=MAX_SUBTYPES) {
        let sup = m.regular_entities.choose(rng).unwrap().name.clone();
        let attrs = (0..rng.gen_range(0..=3))
            .map(|_| Attribute::simple(names.word(rng)))
            .collect();
        m.subtypes
            .push(Subtype::new(names.word(rng), sup.as_str(), attrs));
    }

    for _ in 0..rng.gen_range(0..=MAX_WEAK) {
        let owner = m.regular_entities.choose(rng).unwrap().name.clone();
        let name = names.word(rng);
        let attributes = (0..rng.gen_range(0..MAX_ATTRIBUTES))
            .map(|_| Attribute::simple(names.word(rng)))
            .collect();
        m.weak_entities.push(WeakEntityType {
            identifying_relationship: Identifier::new(names.word(rng)),
            partial_key: Attribute::partial_key(names.word(rng)),
            name: Identifier::new(name),
            owner,
            attributes,
        });
    }

    // 1:N only between distinct regulars; 1:1 only between a subtype and a
    // regular other than its supertype; at most one per pair.
    let mut pairs: Vec<(Identifier, Identifier, bool)> = Vec::new();
    for (i, a) in m.regular_entities.iter().enumerate() {
        for b in &m.regular_entities[i + 1..] {
            pairs.push((a.name.clone(), b.name.clone(), false));
        }
    }
    for s in &m.subtypes {
        for r in m.regular_entities.iter().filter(|r| r.name != s.supertype) {
            pairs.push((s.name.clone(), r.name.clone(), true));
        }
    }
    pairs.shuffle(rng);
    let n = rng.gen_range(0..=MAX_RELATIONSHIPS.min(pairs.len()));
    for (a, b, one_to_one) in pairs.into_iter().take(n) {
        let (amax, bmax) = if one_to_one {
            (MaxCard::One, MaxCard::One)
        } else if rng.gen() {
            (MaxCard::One, MaxCard::Many)
        } else {
            (MaxCard::Many, MaxCard::One)
        };
        let mut endpoints = [
            RelationshipEndpoint::new(a.as_str(), min(rng), amax),
            RelationshipEndpoint::new(b.as_str(), min(rng), bmax),
        ];
        if rng.gen() {
            endpoints.swap(0, 1);
        }
        let attributes = (0..rng.gen_range(0..=2))
            .map(|_| Attribute::simple(names.word(rng)))
            .collect();
        m.relationships.push(RelationshipType {
            name: Identifier::new(names.word(rng)),
            endpoints,
            attributes,
        });
    }

    // A subtype with neither attributes nor relationships leaves no trace.
    for i in 0..m.subtypes.len() {
        let name = m.subtypes[i].name.clone();
        if m.subtypes[i].attributes.is_empty() && m.participations(&name).next().is_none() {
            let w = names.word(rng);
            m.subtypes[i].attributes.push(Attribute::simple(w));
        }
    }
    m
}

/// Every configuration worth trying on `m`: both blanket policies and each
/// explicit assignment of sides to the 1:1 relationship types.
pub fn sog_configs(m: &ErModel) -> Vec<TransformConfig> {
    let one_to_one: Vec<&RelationshipType> = m
        .relationships
        .iter()
        .filter(|r| r.endpoints.iter().all(|e| e.nearest.max == MaxCard::One))
        .collect();
    let mut out = vec![
        TransformConfig::default(),
        TransformConfig {
            sog_policy: SogPolicy::PreferRegularRelation,
            extensions: false,
        },
    ];
    for bits in 0u32..(1 << one_to_one.len()) {
        out.push(TransformConfig::explicit(
            one_to_one.iter().enumerate().map(|(i, r)| {
                let side = ((bits >> i) & 1) as usize;
                (r.name.clone(), r.endpoints[side].participant.clone())
            }),
        ));
    }
    out
}
