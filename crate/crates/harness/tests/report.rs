use fourfold_core::surfaces::SurfaceTag;
use fourfold_harness::pipeline::{expected_entries, run_row, step_seed, Options, RowPlan};
use fourfold_harness::report::{to_json, Status};
use fourfold_harness::ExpectedFile;
use std::collections::BTreeSet;

fn plan(tag: &str) -> RowPlan {
    RowPlan::new(ExpectedFile::builtin().row(tag).unwrap()).unwrap()
}

#[test]
fn data_file_has_every_row() {
    let file = ExpectedFile::builtin();
    let tags: Vec<SurfaceTag> = file.rows.iter().map(|r| r.tag.parse().unwrap()).collect();
    assert_eq!(tags, SurfaceTag::ALL.to_vec());
    for r in &file.rows {
        for (name, _, cite) in expected_entries(r, &Options::default()) {
            assert!(!cite.is_empty(), "{} {name} has no citation", r.tag);
        }
    }
}

#[test]
fn every_expected_value_is_reported() {
    let p = plan("dP5");
    let opts = Options::default();
    let report = run_row(&p, &opts);
    let names: BTreeSet<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    for (name, _, _) in expected_entries(&p.expected, &opts) {
        assert!(names.contains(name.as_str()), "{name} missing");
    }
    for c in &report.checks {
        if c.status == Status::Skipped {
            assert!(c.note.is_some(), "{} skipped without reason", c.name);
        }
    }
    assert!(!report.failed());
}

#[test]
fn single_row_gives_one_record() {
    let report = run_row(&plan("scroll4"), &Options::default());
    let v: serde_json::Value = serde_json::from_str(&to_json(&[report])).unwrap();
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["row"], "scroll4");
    for key in ["prime", "seed", "checks"] {
        assert!(rows[0].get(key).is_some());
    }
    for c in rows[0]["checks"].as_array().unwrap() {
        for key in ["name", "expected", "computed", "status", "citation", "seconds"] {
            assert!(c.get(key).is_some(), "check lacks {key}");
        }
    }
}

#[test]
fn failed_row_keeps_diagnostics_and_seed() {
    let opts = Options { prime: 32004, seed: 99, ..Options::default() };
    let report = run_row(&plan("dP5"), &opts);
    assert!(report.failed());
    assert_eq!(report.seed, 99);
    assert!(report.checks.iter().any(|c| c.status == Status::Error && c.note.is_some()));
}

#[test]
fn replay_is_exact() {
    let opts = Options { seed: 5, with_inverse: true, ..Options::default() };
    let a = run_row(&plan("dP5"), &opts);
    let b = run_row(&plan("dP5"), &opts);
    let computed = |r: &fourfold_harness::RowReport| r.checks.iter().map(|c| c.computed.clone()).collect::<Vec<_>>();
    assert_eq!(computed(&a), computed(&b));
}

#[test]
fn step_seeds_differ() {
    assert_ne!(step_seed(1, "dP5", "fiber", 0), step_seed(1, "dP5", "fiber", 1));
    assert_ne!(step_seed(1, "dP5", "fiber", 0), step_seed(1, "scroll4", "fiber", 0));
    assert_eq!(step_seed(1, "dP5", "fiber", 0), step_seed(1, "dP5", "fiber", 0));
}
