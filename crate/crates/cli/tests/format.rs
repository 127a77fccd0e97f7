use equiab::format::{InputDoc, OptionsDoc};
use equiab::{from_json, parse_input, serialize_input, to_json, InputError};
use equiab_core::pipeline::{run_pipeline, PipelineOptions};
use equiab_core::Error;

const SAMPLE: &str = include_str!("../data/c3_and_torus.json");

#[test]
fn empty_orbit_list_is_valid() {
    let input = parse_input(r#"{"orbits": []}"#).unwrap();
    assert!(input.models.is_empty());
    let r = run_pipeline(&input.models, &PipelineOptions::default()).unwrap();
    assert_eq!(r.totals, Default::default());
    assert!(parse_input("{}").unwrap().models.is_empty());
}

#[test]
fn single_c3_record_round_trips() {
    let text = r#"{"orbits": [{"label": "c3", "slice_action": {"kind": "finite", "dim": 2,
        "generators": [[["0", "-1"], ["1", "-1"]]]}}]}"#;
    let input = parse_input(text).unwrap();
    assert_eq!(input.models.len(), 1);
    let again = parse_input(&serialize_input(&input.models, &input.options)).unwrap();
    assert_eq!(again, input);
}

#[test]
fn sample_round_trips() {
    let input = parse_input(SAMPLE).unwrap();
    assert_eq!(input.options.seed, Some(7));
    let text = serialize_input(&input.models, &input.options);
    assert_eq!(parse_input(&text).unwrap(), input);
    let doc: InputDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, InputDoc::from_models(&input.models, input.options.clone()));
}

#[test]
fn integers_and_fractions_are_accepted() {
    let text = r#"{"orbits": [{"label": "half", "slice_action": {"kind": "connected_lie", "dim": 2,
        "generators": [[[0, "-1/2"], ["2/4", 0]]]}}]}"#;
    let input = parse_input(text).unwrap();
    let out = serialize_input(&input.models, &OptionsDoc::default());
    assert!(out.contains("\"-1/2\"") && out.contains("\"1/2\""));
}

#[test]
fn report_round_trips() {
    let input = parse_input(SAMPLE).unwrap();
    let r = run_pipeline(&input.models, &input.pipeline_options()).unwrap();
    let doc = from_json(&to_json(&r)).unwrap();
    assert_eq!(doc, equiab::ReportDoc::from(&r));
    assert_eq!(doc.totals.complex_rank, 2);
    assert_eq!(doc.totals.quotient_real_rank, 1);
    assert_eq!(doc.totals.quotient_complex_rank, 1);
    for (o, d) in r.orbits.iter().zip(&doc.orbits) {
        assert_eq!(
            (o.algebra_dim, o.center_dim, o.commutator_dim, o.m, o.l),
            (d.algebra_dim, d.center_dim, d.commutator_dim, d.m, d.l)
        );
    }
    let kinds: Vec<_> = doc.summands.iter().map(|s| (s.orbit.as_str(), s.kind.as_str())).collect();
    assert!(kinds.contains(&("c3", "C")) && kinds.contains(&("circle", "quotient-R")));
}

fn invalid(text: &str) -> (String, Error) {
    match parse_input(text) {
        Err(InputError::Invalid { location, source }) => (location, source),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn rejections_carry_locations() {
    let (loc, e) = invalid(
        r#"{"orbits": [{"label": "x", "slice_action": {"kind": "finite", "dim": 2,
        "generators": [[["1", "1"], ["1", "1"]]]}}]}"#,
    );
    assert_eq!(loc, "orbits[0] (x).slice_action");
    assert_eq!(e, Error::SingularGenerator { index: 0 });

    let (loc, e) = invalid(
        r#"{"orbits": [{"label": "y", "slice_action": {"kind": "torus", "weights": [[1, 0]]}}]}"#,
    );
    assert_eq!(loc, "orbits[0] (y).slice_action");
    assert!(matches!(e, Error::FixedVector { .. }));

    let shape = parse_input(
        r#"{"orbits": [{"label": "z", "slice_action": {"kind": "finite", "dim": 2,
        "generators": [[["1"]]]}}]}"#,
    );
    assert!(matches!(shape, Err(InputError::Shape { ref location, .. }) if location == "orbits[0] (z).slice_action.generators[0]"));

    assert!(matches!(parse_input(r#"{"orbits": 3}"#), Err(InputError::Syntax(_))));
    assert!(matches!(parse_input(r#"{"orbits": [], "extra": 1}"#), Err(InputError::Syntax(_))));
    let bad = parse_input(
        r#"{"orbits": [{"label": "w", "slice_action": {"kind": "finite", "dim": 1,
        "generators": [[["1/0"]]]}}]}"#,
    );
    assert!(matches!(bad, Err(InputError::Syntax(_))));
}

#[test]
fn lie_data_must_be_consistent() {
    // h = span(e2) is not stable under a derivation that moves it.
    let (loc, e) = invalid(
        r#"{"orbits": [{"label": "v", "slice_action": {"kind": "finite", "dim": 1, "generators": [[[-1]]]},
        "isotropy_lie": {"dim": 3, "brackets": [[0, 1, 2, 1], [1, 2, 0, 1], [2, 0, 1, 1]],
                         "h": [[0, 0, 1]],
                         "derivations": [[[0, 0, 0], [0, 0, -1], [0, 1, 0]]]}}]}"#,
    );
    assert_eq!(loc, "orbits[0] (v).isotropy_lie");
    assert_eq!(e, Error::NotStable);
}
