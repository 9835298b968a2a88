//! End-to-end checks of the `knc` binary: wire formats, determinism,
//! exit codes, and the cache file.

use std::path::Path;
use std::process::{Command, Output};

use knc_cli::format::parse_arcs_line;

fn knc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn count_known_values() {
    let out = knc(&["count", "--k", "3", "--n", "12", "--class", "partial"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "99991");

    let out = knc(&["count", "--k", "3", "--n", "0", "--class", "partial"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = knc(&["count", "--k", "2", "--n", "6", "--class", "partial"]);
    assert_eq!(stdout(&out).trim(), "51");
}

#[test]
fn sample_lines_parse_and_respect_the_class() {
    let out = knc(&[
        "sample", "--k", "3", "--n", "2", "--class", "partial", "--count", "4", "--seed", "7",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        assert!(line == "2 |" || line == "2 | 1-2", "unexpected line {line:?}");
    }

    let out = knc(&[
        "sample", "--k", "3", "--n", "9", "--class", "structure", "--count", "20", "--seed", "3",
        "--verify",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let m = parse_arcs_line(line).expect("wire format parses back");
        assert_eq!(m.n(), 9);
        assert!(!m.has_one_arc());
        let mut sorted = m.arcs().to_vec();
        sorted.sort();
        assert_eq!(m.arcs(), &sorted[..]);
    }
}

#[test]
fn sample_output_is_byte_identical_across_runs() {
    let args = [
        "sample", "--k", "3", "--n", "12", "--class", "partial", "--count", "25", "--seed", "11",
    ];
    assert_eq!(stdout(&knc(&args)), stdout(&knc(&args)));

    let jobs = [
        "sample", "--k", "3", "--n", "12", "--class", "partial", "--count", "25", "--seed", "11",
        "--jobs", "3",
    ];
    assert_eq!(stdout(&knc(&jobs)), stdout(&knc(&jobs)));
}

#[test]
fn bracket_format_for_structures() {
    let out = knc(&[
        "sample", "--k", "3", "--n", "12", "--class", "structure", "--count", "1", "--seed", "1",
        "--format", "brackets",
    ]);
    assert!(out.status.success());
    let line = stdout(&out);
    let line = line.trim();
    assert_eq!(line.chars().count(), 12);
    assert!(!line.contains("()"), "structures have no 1-arcs: {line:?}");
    assert!(line.chars().all(|c| ".()[]{}<>".contains(c)));
}

#[test]
fn exit_codes() {
    // 0: success paths.
    assert!(knc(&["count", "--k", "3", "--n", "4", "--class", "matching"]).status.success());
    assert_eq!(knc(&["--help"]).status.code(), Some(0));

    // 1: usage errors.
    let out = knc(&["count", "--k", "9", "--n", "4", "--class", "partial"]);
    assert_eq!(out.status.code(), Some(1));
    let out = knc(&["count", "--k", "3", "--n", "4", "--class", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = knc(&["count", "--k", "3", "--n", "5000", "--class", "partial"]);
    assert_eq!(out.status.code(), Some(1));

    // Empty class (odd n for perfect matchings) is reported, nonzero exit.
    let out = knc(&["sample", "--k", "3", "--n", "5", "--class", "matching"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn size_guard_is_overridable() {
    let out = knc(&[
        "count", "--k", "2", "--n", "2500", "--class", "partial", "--max-n", "2500",
    ]);
    assert!(out.status.success());
    // Motzkin numbers grow below 3^n; sanity-check the digit count.
    let digits = stdout(&out).trim().len();
    assert!(digits > 1000 && digits < 1300, "got {digits} digits");
}

#[test]
fn cache_roundtrip_and_corruption_detection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3n10.star.cache");
    let cache_arg = path.to_str().unwrap();

    let fresh = knc(&[
        "count", "--k", "3", "--n", "10", "--class", "partial", "--cache", cache_arg,
    ]);
    assert!(fresh.status.success());
    assert_eq!(stdout(&fresh).trim(), "7990");
    assert!(path.exists());

    let cached = knc(&[
        "count", "--k", "3", "--n", "10", "--class", "partial", "--cache", cache_arg,
    ]);
    assert_eq!(stdout(&cached).trim(), "7990");

    // Selftest cross-checks an intact cache.
    let ok = knc(&["selftest", "--cache", cache_arg]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("cache-integrity: ok"));

    // Perturb one table entry; the layout still parses, so only the
    // recompute-and-compare suite can notice.
    corrupt_one_entry(&path);
    let bad = knc(&["selftest", "--cache", cache_arg]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("cache-integrity: FAIL"));
}

fn corrupt_one_entry(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let last = lines.last_mut().expect("cache has layers");
    let mut tokens: Vec<String> = last.split(' ').map(str::to_string).collect();
    let value: u64 = tokens.last().unwrap().parse().expect("decimal entry");
    *tokens.last_mut().unwrap() = (value + 1).to_string();
    *last = tokens.join(" ");
    std::fs::write(path, lines.join("\n") + "\n").unwrap();
}

#[test]
fn hist_conserves_mass() {
    let out = knc(&[
        "hist", "--k", "3", "--n", "6", "--class", "partial", "--count", "3000", "--seed", "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut classes = 0u64;
    let mut samples = 0u64;
    let mut mass = 0u64;
    let mut observed_classes = 0u64;
    for line in text.lines() {
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["classes", v] => classes = v.parse().unwrap(),
            ["samples", v] => samples = v.parse().unwrap(),
            [l, obs, _expected] if l.parse::<u64>().is_ok() => {
                let l: u64 = l.parse().unwrap();
                let obs: u64 = obs.parse().unwrap();
                mass += l * obs;
                observed_classes += obs;
            }
            _ => {}
        }
    }
    assert_eq!(classes, 75); // f_3^*(6)
    assert_eq!(samples, 3000);
    assert_eq!(mass, 3000);
    assert_eq!(observed_classes, classes);
}

#[test]
fn hist_guards_against_huge_classes() {
    let out = knc(&[
        "hist", "--k", "3", "--n", "40", "--class", "partial", "--count", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
