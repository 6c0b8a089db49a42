mod common;

use errds::model::ratio_class;
use errds::validate::validate_notation_with;
use errds::{
    emit_er, emit_rds, normalize, parse_er, reverse_transform, transform_model, validate_notation,
    Diagnostic, ErModel, ErSource, RatioClass, RelationalSchema, RelationshipType, SogPolicy, Step,
    TransformConfig,
};
use proptest::prelude::*;

fn model() -> impl Strategy<Value = ErModel> {
    any::<u64>().prop_map(|seed| common::random_model(&mut common::rng(seed)))
}

fn model_and_config() -> impl Strategy<Value = (ErModel, TransformConfig)> {
    model().prop_flat_map(|m| {
        let cfgs = common::sog_configs(&m);
        (Just(m), proptest::sample::select(cfgs))
    })
}

/// The participant whose relation received the FK of `r`.
fn holder<'a>(r: &'a RelationshipType, s: &RelationalSchema) -> Option<(usize, &'a str)> {
    (0..2).find_map(|i| {
        let rel = s.get(&r.endpoints[i].participant)?;
        rel.attributes
            .iter()
            .any(|a| a.suffix.as_ref().is_some_and(|x| x.relationship == r.name))
            .then_some((i, r.endpoints[i].participant.as_str()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ratio_class_respects_endpoint_swap(m in model()) {
        for r in &m.relationships {
            let mut swapped = r.clone();
            swapped.endpoints.swap(0, 1);
            match (ratio_class(r), ratio_class(&swapped)) {
                (RatioClass::OneToMany { n_side: a }, RatioClass::OneToMany { n_side: b }) => {
                    prop_assert_eq!(a, 1 - b)
                }
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn generated_models_validate_with_unique_designated_keys(m in model()) {
        let diags = validate_notation(&m);
        prop_assert!(!diags.iter().any(Diagnostic::is_error), "{:?}", diags);
        prop_assert_eq!(&diags, &validate_notation(&m));
        for e in &m.regular_entities {
            prop_assert_eq!(e.designated_key_candidates().len(), 1);
        }
    }

    #[test]
    fn er_text_round_trips(m in model()) {
        let text = emit_er(&m);
        let back = parse_er(&ErSource::new("gen.er", text.as_str())).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(emit_er(&back), text);
    }

    #[test]
    fn trace_runs_steps_in_order((m, cfg) in model_and_config()) {
        let (_, trace) = transform_model(&m, &cfg).unwrap();
        let steps: Vec<Step> = trace.steps().collect();
        prop_assert!(steps.windows(2).all(|w| w[0] <= w[1]), "{:?}", steps);
    }

    #[test]
    fn transform_is_deterministic_and_respects_invariants((m, cfg) in model_and_config()) {
        let (a, _) = transform_model(&m, &cfg).unwrap();
        let (b, _) = transform_model(&m, &cfg).unwrap();
        prop_assert_eq!(emit_rds(&a), emit_rds(&b));
        prop_assert!(a.invariant_violations().is_empty(), "{:?}", a.invariant_violations());
    }

    #[test]
    fn suffix_prefix_and_placement((m, cfg) in model_and_config()) {
        let (s, _) = transform_model(&m, &cfg).unwrap();
        for r in &m.relationships {
            let (near, holder_name) = holder(r, &s).expect("every relationship leaves an FK");
            let far = 1 - near;
            let rel = s.get(&r.endpoints[near].participant).unwrap();
            let at = rel
                .attributes
                .iter()
                .position(|a| a.suffix.as_ref().is_some_and(|x| x.relationship == r.name))
                .unwrap();
            let fk = &rel.attributes[at];
            let suffix = fk.suffix.as_ref().unwrap();
            prop_assert_eq!(suffix.near_min, r.endpoints[near].nearest.min);
            prop_assert_eq!(suffix.far_min, r.endpoints[far].nearest.min);
            prop_assert_eq!(suffix.far_max, r.endpoints[far].nearest.max);
            if let RatioClass::OneToMany { n_side } = r.ratio_class() {
                prop_assert_eq!(n_side, near, "1:N FK not on the N side of {}", r.name);
            }

            let far_is_subtype = m.is_subtype(&r.endpoints[far].participant);
            prop_assert_eq!(fk.prefix.is_some(), far_is_subtype, "prefix law for {} in {}", r.name, holder_name);
            if far_is_subtype {
                prop_assert_eq!(fk.prefix.as_ref().unwrap(), &r.endpoints[far].participant);
            }

            let after: Vec<&str> = rel.attributes[at + 1..]
                .iter()
                .take(r.attributes.len())
                .map(|a| a.name.as_str())
                .collect();
            let own: Vec<&str> = r.attributes.iter().map(|a| a.name.as_str()).collect();
            prop_assert_eq!(after, own);
        }
    }

    #[test]
    fn bare_subtypes_get_no_relation((m, cfg) in model_and_config()) {
        let (s, _) = transform_model(&m, &cfg).unwrap();
        for sub in &m.subtypes {
            let needed = !sub.attributes.is_empty()
                || m.participations(&sub.name).any(|r| match (&cfg.sog_policy, r.ratio_class()) {
                    (SogPolicy::Explicit(map), RatioClass::OneToOne) => map.get(&r.name) == Some(&sub.name),
                    _ => false,
                });
            prop_assert_eq!(s.contains(&sub.name), needed, "subtype {}", sub.name);
        }
    }

    #[test]
    fn reversal_is_valid_and_converges((m, cfg) in model_and_config()) {
        let (s, _) = transform_model(&m, &cfg).unwrap();
        let r = reverse_transform(&s).unwrap();
        let diags = validate_notation_with(&r.model, r.needs_extensions);
        prop_assert!(!diags.iter().any(Diagnostic::is_error), "{:?}", diags);
        prop_assert_eq!(normalize(&r.model), normalize(&m));
        let (again, _) = transform_model(&r.model, &r.config()).unwrap();
        prop_assert_eq!(emit_rds(&again), emit_rds(&s));
    }
}
