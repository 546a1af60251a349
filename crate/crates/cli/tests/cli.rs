//! End-to-end tests of the model language and the binary's exit codes.

use std::path::PathBuf;
use std::process::Command;

use propcoh::harness::laws_harness;
use propcoh::model::{parse_model, render_model};
use propcoh::{check_text, CliError};
use propcoh_core::fincat::BaseName;

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn passing_corpus() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(models_dir())
        .expect("models directory ships with the repo")
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let name = p.file_name().unwrap().to_string_lossy().to_string();
            name.ends_with(".model") && name != "failing.model" && name != "malformed.model"
        })
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_parses_and_renders_identically() {
    let corpus = passing_corpus();
    assert!(
        corpus.len() >= 6,
        "the corpus ships at least six passing files"
    );
    for path in corpus {
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_model(&text).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        let rendered = render_model(&parsed.file);
        let reparsed = parse_model(&rendered)
            .unwrap_or_else(|e| panic!("{path:?} after render: {e}\n{rendered}"));
        assert_eq!(
            reparsed.file, parsed.file,
            "parse ∘ render must be the identity ({path:?})"
        );
    }
}

#[test]
fn corpus_passes_all_assertions() {
    for path in passing_corpus() {
        let text = std::fs::read_to_string(&path).unwrap();
        let report = check_text(&text).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        assert!(report.all_passed(), "{path:?}:\n{}", report.render_text());
    }
}

#[test]
fn json_report_has_the_documented_fields() {
    let text = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(prop P top)
(assert (holds P))
(assert (leq P bot))
";
    let report = check_text(text).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.render_json()).unwrap();
    let entries = json.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["status"], "PASS");
    assert_eq!(entries[1]["status"], "FAIL");
    for e in entries {
        for field in ["loc", "desc", "status", "detail"] {
            assert!(e.get(field).is_some(), "missing field {field}");
        }
    }
    assert!(entries[1]["detail"].as_str().unwrap().contains("witness"));
}

#[test]
fn scoping_rules_are_enforced() {
    let dup = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(prop P top)
(prop P bot)
";
    assert!(matches!(check_text(dup).unwrap_err(), CliError::Duplicate(p) if p == "P"));

    let unbound = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(assert (holds P))
(prop P top)
";
    assert!(matches!(check_text(unbound).unwrap_err(), CliError::Unbound(p) if p == "P"));

    let reserved = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(prop top bot)
";
    assert!(matches!(
        check_text(reserved).unwrap_err(),
        CliError::Invalid { .. }
    ));

    let two_contexts = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(context H (carriers (o (1))) (restrict))
";
    assert!(matches!(
        check_text(two_contexts).unwrap_err(),
        CliError::Invalid { .. }
    ));
}

#[test]
fn malformed_declarations_surface_core_reasons() {
    // Restriction not matching the composite on chain3.
    let bad = "\
(base chain3)
(context C
  (carriers (0 (c0 c1)) (1 (d)) (2 (e)))
  (restrict (m01 (d c0)) (m12 (e d)) (m02 (e c1))))
";
    match check_text(bad).unwrap_err() {
        CliError::Core(propcoh_core::Error::MalformedPresheaf(reason)) => {
            assert!(reason.contains("functorial"), "got: {reason}");
        }
        other => panic!("expected a malformed presheaf, got {other}"),
    }
}

#[test]
fn evaluation_errors_carry_the_assertion_location() {
    // A two-element fibre makes the type a non-proposition, so propext
    // on it is an evaluation error, not a FAIL.
    let text = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(type U (diagram
  (v (carriers (o (t))) (restrict))
  (e (carriers (o (e0 e1))) (restrict))
  (p (o (e0 t) (e1 t)))
  (f (o (0 t)))))
(assert (propext U U))
";
    match check_text(text).unwrap_err() {
        CliError::Eval { loc, source } => {
            assert_eq!(loc, "line 8");
            assert_eq!(source, propcoh_core::Error::NotAProposition);
        }
        other => panic!("expected an evaluation error, got {other}"),
    }
}

#[test]
fn harness_reports_are_reproducible() {
    let a = laws_harness(BaseName::Pt, 25, 99);
    let b = laws_harness(BaseName::Pt, 25, 99);
    assert_eq!(a.render_text(), b.render_text());
    assert_eq!(a.render_json(), b.render_json());
    assert!(a.all_passed());

    let c = laws_harness(BaseName::Pt, 25, 100);
    assert_eq!(c.entries().len(), a.entries().len());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_propcoh");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");

    let ok = run(&[
        "check",
        models_dir().join("heyting.model").to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));

    let fail = run(&[
        "check",
        models_dir().join("failing.model").to_str().unwrap(),
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&fail.stdout);
    assert!(stdout.contains("[FAIL]"));
    assert!(
        stdout.contains("left:"),
        "counterexample must be rendered:\n{stdout}"
    );

    let malformed = run(&[
        "check",
        models_dir().join("malformed.model").to_str().unwrap(),
    ]);
    assert_eq!(malformed.status.code(), Some(2));

    let missing = run(&["check", "/nonexistent.model"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown_demo = run(&["demo", "everything"]);
    assert_eq!(unknown_demo.status.code(), Some(2));

    let unknown_base = run(&["laws", "--base", "cube", "--cases", "1"]);
    assert_eq!(unknown_base.status.code(), Some(2));
}

#[test]
fn omega_from_file_uses_the_declared_base() {
    let bin = env!("CARGO_BIN_EXE_propcoh");
    let out = Command::new(bin)
        .args([
            "omega",
            "--file",
            models_dir().join("twoarrows.model").to_str().unwrap(),
            "--json",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Parallel arrows: sieves on b are {}, {u}, {v}, {u,v}, {id_b,u,v}.
    assert_eq!(rows[1]["object"], "b");
    assert_eq!(rows[1]["count"], 5);
}

#[test]
fn size_caps_are_enforced() {
    let text = "\
(base pt)
(context G (carriers (o (0 1 2 3 4 5))) (restrict))
";
    match check_text(text).unwrap_err() {
        CliError::Core(propcoh_core::Error::SizeLimitExceeded(msg)) => {
            assert!(msg.contains("limit is 5"), "got: {msg}");
        }
        other => panic!("expected a size limit error, got {other}"),
    }

    let universe_too_big = "\
(base pt)
(context G (carriers (o (0))) (restrict))
(type A (diagram
  (v (carriers (o (1 2 3 4 5))) (restrict))
  (e (carriers (o ())) (restrict))
  (p)
  (f (o (0 1)))))
";
    match check_text(universe_too_big).unwrap_err() {
        CliError::Core(propcoh_core::Error::SizeLimitExceeded(msg)) => {
            assert!(msg.contains("limit is 4"), "got: {msg}");
        }
        other => panic!("expected a size limit error, got {other}"),
    }
}

#[test]
fn binary_laws_run_passes_on_every_base() {
    let bin = env!("CARGO_BIN_EXE_propcoh");
    for base in ["pt", "arr", "span", "chain3"] {
        let out = Command::new(bin)
            .args(["laws", "--base", base, "--cases", "10", "--seed", "42"])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "base {base}");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert_eq!(stdout.matches("[PASS]").count(), 8, "eight law families:\n{stdout}");
        assert!(stdout.contains("summary: 8 passed, 0 failed"));
    }
}
