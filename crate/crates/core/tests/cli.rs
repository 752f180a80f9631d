use std::process::{Command, Output};

use serde_json::Value;
use wmk::cli::{exit_code_for, VerifyReport, EXIT_INTERNAL, EXIT_PRECONDITION};
use wmk::stringy::{MassReport, StringyReport};
use wmk::Error;

fn wmk(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmk"))
        .args(args.split_whitespace())
        .env("WMK_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn field_of<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no line starting with {key:?} in\n{text}"))
        .trim()
}

#[test]
fn group_summaries() {
    let out = wmk("group --family cyclic-l --l 13 --r 3");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field_of(&text, "order:"), "39");
    assert_eq!(field_of(&text, "conjugacy classes:"), "7");
    assert_eq!(field_of(&text, "small:"), "true");

    let out = wmk("group --family sym-2 --r 2 --format json");
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["order"], 24);
    assert_eq!(json["conjugacy_classes"], 5);
    for c in json["stabilizer_centralizers"].as_array().unwrap() {
        assert_eq!(c["expected"], c["actual"], "{c}");
    }
}

#[test]
fn precondition_failures_exit_2() {
    let cases = [
        ("group --family cyclic-l --l 5 --r 4", "no e with e\u{b2}+e+1\u{2261}0 mod 5"),
        ("stringy --family cyclic-ll --l 5 --r 1", "q-1 \u{2209} 5\u{2124}"),
        ("group --family cyclic-ll --l 3 --r 1", "not a prime"),
        ("group --family cyclic-ll --l 4 --r 1", "not a prime"),
        ("group --family cyclic-ll --l 2 --r 13", "exceeds the supported maximum"),
        ("group --family sym-ll --l 2 --r 2", "use sym-2"),
        ("euler --family cyclic-ll --r 1", "--l is required"),
        ("mass --n 0", "positive"),
        ("group --family nope --r 1", "invalid value"),
        ("stringy --family sym-2", "--r"),
    ];
    for (args, needle) in cases {
        let out = wmk(args);
        assert_eq!(out.status.code(), Some(2), "{args}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{args}: {}", stderr(&out));
        assert!(stdout(&out).is_empty(), "{args}");
    }
}

#[test]
fn internal_errors_map_to_3() {
    let err = Error::NonPolynomialResult { denominator: "q - 1".into() };
    assert_eq!(exit_code_for(&err), EXIT_INTERNAL);
    assert_eq!(exit_code_for(&Error::Internal("x".into())), EXIT_INTERNAL);
    assert_eq!(exit_code_for(&Error::NoTwist { l: 5 }), EXIT_PRECONDITION);
}

#[test]
fn help_and_version_exit_0() {
    for args in ["--help", "--version", "stringy --help"] {
        let out = wmk(args);
        assert_eq!(out.status.code(), Some(0), "{args}");
        assert!(!stdout(&out).is_empty());
    }
}

#[test]
fn stringy_text_and_json_agree() {
    let cases = [
        ("--family cyclic-l --l 13 --r 3", "22653", "q^3 + 4*q^2 + 2*q", 7),
        ("--family cyclic-ll --l 2 --r 1", "54", "q^3 + 3*q^2", 4),
        ("--family sym-2 --r 2", "1224", "q^3 + 6*q^2 + q", 8),
        ("--family sym-ll --l 5 --r 4", "597456", "q^3 + 10*q^2 + 5*q", 16),
    ];
    for (family, value, poly, chi) in cases {
        let text = stdout(&wmk(&format!("stringy {family} --truncate 30")));
        assert_eq!(field_of(&text, "polynomial:"), poly);
        assert_eq!(field_of(&text, "value at q = ").split_once(": ").unwrap().1, value);
        assert_eq!(field_of(&text, "euler characteristic:"), chi.to_string());

        let out = wmk(&format!("stringy {family} --truncate 30 --format json"));
        assert_eq!(out.status.code(), Some(0));
        let report: StringyReport = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report.polynomial.to_string(), poly);
        assert_eq!(report.numeric_value.unwrap().to_string(), value);
        assert_eq!(report.euler_characteristic, chi);
        let t = report.truncated.unwrap();
        assert_eq!(field_of(&text, "partial sum (r <= 30):"), t.partial.to_string());
        assert_eq!(field_of(&text, "tail bound:"), t.tail_bound.to_string());
        let json: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["numeric_value"], value);
        assert!(json["polynomial"]["coeffs"]["3"] == "1");
    }
}

#[test]
fn symbolic_mode_has_no_value() {
    let out = wmk("stringy --family sym-ll --l 5 --r 4 --symbolic --format json");
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["numeric_value"].is_null());
    assert_eq!(json["polynomial"]["coeffs"], serde_json::json!({"1": "5", "2": "10", "3": "1"}));
    let text = stdout(&wmk("stringy --family sym-ll --l 5 --r 4 --symbolic"));
    assert_eq!(field_of(&text, "polynomial:"), "q^3 + 10*q^2 + 5*q");
    assert!(!text.contains("value at q"));
}

#[test]
fn euler_text_and_json_agree() {
    for (family, chi) in [("--family sym-ll --l 5 --r 4", 16), ("--family cyclic-ll --l 5 --r 4", 11)] {
        assert_eq!(stdout(&wmk(&format!("euler {family}"))).trim(), chi.to_string());
        let json: Value = serde_json::from_slice(&wmk(&format!("euler {family} --format json")).stdout).unwrap();
        assert_eq!(json["euler_characteristic"], chi);
    }
}

#[test]
fn mass_outputs() {
    let text = stdout(&wmk("mass --n 4"));
    assert_eq!(field_of(&text, "rhs:"), "1 + q^-1 + 2*q^-2 + q^-3");
    let out = wmk("mass --n 2 --r 2 --format json");
    assert_eq!(out.status.code(), Some(0));
    let report: MassReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.matches, Some(true));
    assert_eq!(report.rhs_value.as_ref().unwrap().to_string(), "10/9");
    assert_eq!(report.lhs_enumerated.as_ref().unwrap().to_string(), "10/9");
    let text = stdout(&wmk("mass --n 2 --r 2"));
    assert!(text.contains("10/9"), "{text}");
}

#[test]
fn verify_reports_every_check() {
    let out = wmk("verify --family cyclic-ll --l 2 --r 1 --level full --format json");
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed);
    let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for prefix in ["age-tallies", "artin-schreier", "assembly", "centralizers", "euler", "generator-pairs", "tame-strata", "truncation", "vandermonde"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "missing {prefix} in {names:?}");
    }

    let text = stdout(&wmk("verify --family sym-ll --l 5 --r 4"));
    let line = text.lines().find(|l| l.contains("age-tallies")).unwrap();
    assert!(line.starts_with("PASS") && line.contains("{0: 1, 1: 18, 2: 6}"), "{line}");
    assert!(text.lines().any(|l| l.starts_with("PASS s6-classes")));
    assert!(text.lines().any(|l| l.starts_with("PASS vandermonde")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_wmk"))
            .args("verify --family sym-2 --r 2 --format json".split_whitespace())
            .env("WMK_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
