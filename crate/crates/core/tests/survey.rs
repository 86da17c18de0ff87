use qutil_core::arl::{builtin_survey, render_report, survey_csv, ArlLevel, ScalingExpr, LEGEND};

const GOLDEN: &str = include_str!("golden/survey.csv");

#[test]
fn survey_csv_matches_golden() {
    assert_eq!(survey_csv(&builtin_survey(), None), GOLDEN);
}

#[test]
fn survey_rows_and_levels() {
    let survey = builtin_survey();
    let names: Vec<_> = survey.iter().map(|a| a.name.as_str()).collect();
    assert_eq!(
        names,
        ["VQE", "QRBM", "VarQiTE", "QK", "QVC", "Re-Uploading", "QCBM", "QNBM", "QCNN", "QGNN", "NISQ-TDA"]
    );
    let threes = survey.iter().filter(|a| a.level == ArlLevel::Arl3).count();
    assert_eq!(threes, 1);
}

#[test]
fn every_table_symbol_is_covered() {
    let survey = builtin_survey();
    let used: std::collections::BTreeSet<String> = survey
        .iter()
        .flat_map(|a| [&a.labels.circuits, &a.labels.depth, &a.labels.shots])
        .flat_map(|e| e.variables())
        .collect();
    for (sym, _) in LEGEND {
        let e = ScalingExpr::parse(&format!("O({sym})")).unwrap();
        assert!(e.legend().contains_key(sym));
        if sym != "ε" {
            assert!(used.contains(sym), "{sym} unused by survey");
        }
    }
    for sym in &used {
        assert!(LEGEND.iter().any(|(s, _)| s == sym));
    }
}

#[test]
fn json_round_trips() {
    let report = render_report(&builtin_survey(), None);
    let v: serde_json::Value = serde_json::from_str(&report.json).unwrap();
    let back: Vec<qutil_core::arl::ArlAssessment> = serde_json::from_value(v["assessments"].clone()).unwrap();
    assert_eq!(back, builtin_survey());
    assert_eq!(v["legend"].as_object().unwrap().len(), 15);
}
