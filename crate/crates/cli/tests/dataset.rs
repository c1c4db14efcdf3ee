use std::path::PathBuf;

use qdt_cli::dataset::{load, parse_csv, parse_json, LoadOptions};
use qdt_cli::CliError;
use qdt_core::QdtError;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/tversky1992.csv")
}

#[test]
fn fixture_has_four_cited_records_at_half_weight() {
    let file = load(&fixture(), LoadOptions::default()).unwrap();
    let labels: Vec<_> = file
        .records
        .iter()
        .map(|r| r.experiment.label.as_str())
        .collect();
    assert_eq!(labels, ["shafir", "croson", "li-taplin", "busemeyer"]);
    for r in &file.records {
        assert_eq!(r.experiment.q0, 0.5);
        assert!(r.experiment.observed_pk.is_some());
        assert!(
            r.source.as_deref().is_some_and(|s| !s.is_empty()),
            "{} has no source",
            r.experiment.label
        );
    }
    let shafir = file.get("shafir").unwrap();
    assert_eq!((shafir.experiment.p0, shafir.experiment.p1), (0.97, 0.84));
    assert_eq!(shafir.experiment.observed_pk, Some(0.63));
}

#[test]
fn out_of_range_probability_names_the_record() {
    let text = "label,p0,p1,q0,observed_pk\nfine,0.5,0.5,0.5,\nbad,1.2,0.5,0.5,\n";
    let err = parse_csv(text, "t.csv", LoadOptions::default()).unwrap_err();
    match &err {
        CliError::Invalid {
            label, at, source, ..
        } => {
            assert_eq!(label, "bad");
            assert_eq!(at, "line 3");
            assert!(matches!(source, QdtError::OutOfRange { name: "p0", .. }));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("`bad`"));
}

#[test]
fn observed_value_is_validated() {
    let text = "label,p0,p1,q0,observed_pk\nx,0.5,0.5,0.5,-0.1\n";
    assert!(matches!(
        parse_csv(text, "t.csv", LoadOptions::default()),
        Err(CliError::Invalid {
            source: QdtError::OutOfRange {
                name: "observed_pk",
                ..
            },
            ..
        })
    ));
}

#[test]
fn duplicate_labels_are_rejected() {
    let text = "label,p0,p1,q0,observed_pk\na,0.5,0.5,0.5,\nb,0.5,0.5,0.5,\na,0.1,0.2,0.5,\n";
    match parse_csv(text, "t.csv", LoadOptions::default()) {
        Err(CliError::DuplicateLabel {
            label,
            first,
            second,
            ..
        }) => {
            assert_eq!(label, "a");
            assert_eq!((first.as_str(), second.as_str()), ("line 2", "line 4"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn empty_inputs_give_empty_files() {
    assert!(parse_csv("", "e.csv", LoadOptions::default())
        .unwrap()
        .is_empty());
    assert!(parse_csv(
        "label,p0,p1,q0,observed_pk\n",
        "e.csv",
        LoadOptions::default()
    )
    .unwrap()
    .is_empty());
    assert!(parse_json("", "e.json", LoadOptions::default())
        .unwrap()
        .is_empty());
    assert!(parse_json("[]", "e.json", LoadOptions::default())
        .unwrap()
        .is_empty());
}

#[test]
fn header_must_match_exactly() {
    for header in [
        "label,p0,p1,observed_pk,q0",
        "label,p0,p1,q0",
        "Label,p0,p1,q0,observed_pk",
    ] {
        let text = format!("{header}\n");
        assert!(
            matches!(
                parse_csv(&text, "h.csv", LoadOptions::default()),
                Err(CliError::Parse { .. })
            ),
            "{header}"
        );
    }
}

#[test]
fn parse_errors_carry_line_and_field() {
    let text = "label,p0,p1,q0,observed_pk\nx,0.5,0.4,0.5,\ny,0.5,abc,0.5,\n";
    let msg = parse_csv(text, "f.csv", LoadOptions::default())
        .unwrap_err()
        .to_string();
    assert!(msg.contains("line 3") && msg.contains("`p1`"), "{msg}");
}

#[test]
fn blank_weight_takes_default_and_flag_overrides() {
    let text = "label,p0,p1,q0,observed_pk\na,0.5,0.4,,\nb,0.5,0.4,0.3,\n";
    let plain = parse_csv(text, "q.csv", LoadOptions::default()).unwrap();
    assert_eq!(plain.records[0].experiment.q0, 0.5);
    assert_eq!(plain.records[1].experiment.q0, 0.3);
    let forced = parse_csv(text, "q.csv", LoadOptions { q0: Some(0.8) }).unwrap();
    assert!(forced.records.iter().all(|r| r.experiment.q0 == 0.8));
}

#[test]
fn csv_round_trip_is_exact() {
    let third = 1.0 / 3.0;
    let awkward = 0.1 + 0.2;
    let text = format!(
        "# a: first source, with a comma\nlabel,p0,p1,q0,observed_pk\na,{third},{awkward},0.5,{}\nb,1e-300,1,0,\n",
        f64::EPSILON
    );
    let once = parse_csv(&text, "r.csv", LoadOptions::default()).unwrap();
    assert_eq!(once.records[0].experiment.p0, third);
    assert_eq!(
        once.records[0].source.as_deref(),
        Some("first source, with a comma")
    );
    let twice = parse_csv(&once.to_csv(), "r.csv", LoadOptions::default()).unwrap();
    assert_eq!(once, twice);
}

#[test]
fn json_round_trip_is_exact() {
    let file = load(&fixture(), LoadOptions::default()).unwrap();
    let json = file.to_json();
    let back = parse_json(&json, "r.json", LoadOptions::default()).unwrap();
    assert_eq!(file, back);
    let again = parse_csv(&back.to_csv(), "r.csv", LoadOptions::default()).unwrap();
    assert_eq!(file, again);
}

#[test]
fn json_uses_csv_field_names() {
    let json =
        r#"[{"label":"x","p0":0.9,"p1":0.1,"q0":null,"observed_pk":0.2,"source":"lab notes"}]"#;
    let file = parse_json(json, "x.json", LoadOptions::default()).unwrap();
    let r = &file.records[0];
    assert_eq!(
        (r.experiment.p0, r.experiment.p1, r.experiment.q0),
        (0.9, 0.1, 0.5)
    );
    assert_eq!(r.source.as_deref(), Some("lab notes"));
    assert!(matches!(
        parse_json(r#"[{"label":"x"}]"#, "x.json", LoadOptions::default()),
        Err(CliError::Parse { .. })
    ));
}
