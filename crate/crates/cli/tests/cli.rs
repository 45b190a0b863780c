use std::collections::BTreeMap;
use std::path::PathBuf;

use instkit::{Status, ValidationReport};
use instkit_cli::{command_paths, run_command, write_report, Format, Outcome, CHECKER_COMMANDS};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    p.to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_command(args.iter().copied())
}

const CORE_SOURCES: &[&str] = &[
    include_str!("../../core/src/fincat.rs"),
    include_str!("../../core/src/institution.rs"),
    include_str!("../../core/src/pi_institution.rs"),
    include_str!("../../core/src/galois.rs"),
    include_str!("../../core/src/g_functor.rs"),
    include_str!("../../core/src/adjunction.rs"),
    include_str!("../../core/src/proplogic/translation.rs"),
];

#[test]
fn every_checker_has_exactly_one_command() {
    let mut checkers = Vec::new();
    for src in CORE_SOURCES {
        for line in src.lines() {
            if let Some(rest) = line.strip_prefix("pub fn check_") {
                let name = rest.split(['(', '<']).next().unwrap();
                checkers.push(format!("check_{name}"));
            }
        }
    }
    checkers.sort();
    let mut table: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (f, cmd) in CHECKER_COMMANDS {
        table.entry(f).or_default().push(cmd);
    }
    let listed: Vec<String> = table.keys().map(|s| s.to_string()).collect();
    assert_eq!(checkers, listed);
    let paths = command_paths();
    for (f, cmds) in &table {
        assert_eq!(cmds.len(), 1, "{f} is listed more than once");
        let known = paths
            .iter()
            .any(|p| cmds[0] == p || cmds[0].starts_with(&format!("{p} ")));
        assert!(known, "{f}: no command {}", cmds[0]);
    }
}

#[test]
fn command_table_is_complete() {
    let paths = command_paths();
    for group in [
        "check category",
        "check institution",
        "check pi",
        "check inst-comorphism",
        "check pi-comorphism",
        "check lemma1",
        "check galois",
        "apply",
        "adjunction unit",
        "adjunction transpose",
        "adjunction fg-identity",
        "adjunction universal",
        "adjunction counit",
        "logic build-institution",
        "logic build-pi",
        "logic check-morphism",
        "logic closure",
        "logic translate",
        "closure",
    ] {
        assert!(paths.iter().any(|p| p == group), "missing {group}");
    }
}

#[test]
fn check_twoval_passes() {
    let out = run(&["check", "institution", &fixture("twoval.inst.json")]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(out.stdout, "PASS (0 violations)\n");
}

#[test]
fn apply_f_then_check_pi_then_fg_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out_pi = dir.path().join("out.pi.json");
    let out_pi = out_pi.to_str().unwrap();
    let a = run(&["apply", "F", &fixture("twoval.inst.json"), "-o", out_pi]);
    assert_eq!(a.code, 0, "{a:?}");
    assert_eq!(run(&["check", "pi", out_pi]).code, 0);
    assert_eq!(run(&["adjunction", "fg-identity", out_pi]).code, 0);
    assert_eq!(
        std::fs::read_to_string(out_pi).unwrap(),
        std::fs::read_to_string(fixture("twoval.pi.json")).unwrap()
    );
}

#[test]
fn violations_exit_one() {
    let out = run(&["check", "pi", &fixture("incoherent.pi.json")]);
    assert_eq!(out.code, 1);
    assert!(
        out.stdout.starts_with("FAIL (1 violations)\ncoherence [h, []]"),
        "{}",
        out.stdout
    );
    let out = run(&["apply", "G", &fixture("incoherent.pi.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("preimage-closed"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["check", "institution"]).code, 2);
    assert_eq!(run(&["check", "institution", "/nonexistent.json"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["check", "institution", empty.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn resource_bounds_exit_three() {
    let out = run(&["check", "pi", &fixture("twoval.pi.json"), "--cap", "1"]);
    assert_eq!(out.code, 3);
    let out = run(&[
        "adjunction",
        "universal",
        &fixture("id-twoval.pi-comorphism.json"),
        &fixture("twoval.pi.json"),
        &fixture("twoval.inst.json"),
        "--bound",
        "2",
    ]);
    assert_eq!(out.code, 3);
}

#[test]
fn adjunction_commands() {
    let (h, j, i) = (
        fixture("id-twoval.pi-comorphism.json"),
        fixture("twoval.pi.json"),
        fixture("twoval.inst.json"),
    );
    assert_eq!(run(&["adjunction", "unit", &j]).code, 0);
    assert_eq!(run(&["adjunction", "counit", &fixture("rename.inst.json")]).code, 0);
    assert_eq!(run(&["adjunction", "universal", &h, &j, &i]).code, 0);
    let t = run(&["adjunction", "transpose", &h, &j, &i]);
    assert_eq!(t.code, 0);
    assert!(t.stdout.contains(r#""m1": "[\"a\"]""#), "{}", t.stdout);
    let swap = run(&[
        "adjunction",
        "universal",
        &fixture("swap-twoval.pi-comorphism.json"),
        &j,
        &i,
    ]);
    assert_eq!(swap.code, 1);
    assert!(swap.stdout.contains("no-transpose"));
}

#[test]
fn logic_commands() {
    let out = run(&["logic", "closure", &fixture("cpl1.logic.json"), "p"]);
    assert_eq!(out.stdout, "[\"p\",\"and(p,p)\"]\n");
    let out = run(&[
        "logic",
        "translate",
        &fixture("de-morgan.translation.json"),
        "and(p,q)",
        "--format",
        "json",
    ]);
    assert_eq!(out.stdout, "[\n  \"not(or(not(p),not(q)))\"\n]\n");
    let ok = run(&[
        "logic",
        "check-morphism",
        &fixture("de-morgan.translation.json"),
        &fixture("and-not.logic.json"),
        &fixture("or-not-3.logic.json"),
    ]);
    assert_eq!(ok.code, 0, "{ok:?}");
    let bad = run(&[
        "logic",
        "check-morphism",
        &fixture("and-to-or.translation.json"),
        &fixture("and-not.logic.json"),
        &fixture("or-not.logic.json"),
    ]);
    assert_eq!(bad.code, 1);
    assert!(bad
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with(r#"logic-morphism [["and(p,q)"], p]"#));
    let short = run(&[
        "logic",
        "check-morphism",
        &fixture("de-morgan.translation.json"),
        &fixture("and-not.logic.json"),
        &fixture("or-not.logic.json"),
    ]);
    assert_eq!(short.code, 3, "{short:?}");
}

#[test]
fn built_documents_check_clean() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("luk3.inst.json");
    let pi = dir.path().join("jf.pi.json");
    assert_eq!(
        run(&[
            "logic",
            "build-institution",
            &fixture("luk3.logic.json"),
            "-o",
            inst.to_str().unwrap()
        ])
        .code,
        0
    );
    assert_eq!(run(&["check", "institution", inst.to_str().unwrap()]).code, 0);
    assert_eq!(
        run(&[
            "logic",
            "build-pi",
            &fixture("renaming-flexible.fragment.json"),
            "-o",
            pi.to_str().unwrap()
        ])
        .code,
        0
    );
    assert_eq!(run(&["check", "pi", pi.to_str().unwrap()]).code, 0);
    assert_eq!(
        run(&["closure", pi.to_str().unwrap(), "L1", "p"]).stdout,
        "[\"p\",\"and(p,p)\"]\n"
    );
}

#[test]
fn generated_comorphisms_satisfy_lemma1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["generate", "comorphism", "--seed", "11", "-o", d]).code, 0);
    let f = |n: &str| dir.path().join(n).to_str().unwrap().to_owned();
    let args = [f("map.json"), f("src.json"), f("dst.json")];
    for cmd in ["lemma1", "inst-comorphism"] {
        let out = run(&["check", cmd, &args[0], &args[1], &args[2]]);
        assert_eq!(out.code, 0, "{cmd}: {out:?}");
    }
    let a = run(&["generate", "institution", "--seed", "3"]);
    let b = run(&["generate", "institution", "--seed", "3"]);
    assert_eq!(a, b);
    assert_ne!(a.stdout, run(&["generate", "institution", "--seed", "4"]).stdout);
}

#[test]
fn cap_flag_wins_over_environment() {
    let run_with_env = |extra: &[&str]| {
        std::process::Command::new(env!("CARGO_BIN_EXE_instkit"))
            .args(["check", "pi", &fixture("twoval.pi.json")])
            .args(extra)
            .env("INSTKIT_CAP", "1")
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run_with_env(&[]), Some(3));
    assert_eq!(run_with_env(&["--cap", "4"]), Some(0));
}

#[test]
fn reports_render_and_round_trip() {
    let empty = ValidationReport::new();
    assert_eq!(write_report(&empty, Format::Text), "PASS (0 violations)\n");
    let mut r = ValidationReport::new();
    r.push("extensivity", ["S0", "[\"a\"]"], "a is missing from C([\"a\"])");
    let text = write_report(&r, Format::Text);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("extensivity [S0, [\"a\"]]"));
    let back: ValidationReport = serde_json::from_str(&write_report(&r, Format::Json)).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.status, Status::Fail);
}

#[test]
fn document_output_goes_to_stdout_without_o() {
    let out = run(&["apply", "F", &fixture("twoval.inst.json")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, std::fs::read_to_string(fixture("twoval.pi.json")).unwrap());
    assert!(out.stderr.is_empty());
}
