use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn catena(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catena")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The indented lines of a report section.
fn section(report: &str, key: &str) -> Vec<String> {
    report
        .lines()
        .skip_while(|l| *l != format!("{key}:"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| l.trim().to_string())
        .collect()
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(&format!("{key}: ")))
}

#[test]
fn tutte_of_the_four_point_line() {
    let out = catena(&["compute", path_str(&fixture("corpus/u2-4.txt")), "--what", "tutte"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("format: 1\nkind: report\n"));
    // Deletion-contraction by hand: T(U_{2,4}) = T(U_{1,3}) + T(U_{2,3})
    // = (x + y + y^2) + (x^2 + x + y).
    assert_eq!(field(&text, "tutte"), Some("x^2 + 2x + y^2 + 2y"));
    assert_eq!(field(&text, "route"), Some("subset-sum"));
}

#[test]
fn running_example_g_invariant_both_routes() {
    let expected = [
        "384 10101000",
        "2496 10110000",
        "1344 11001000",
        "7296 11010000",
        "28800 11100000",
    ];
    for file in ["fig1-M.txt", "fig1-N.txt"] {
        for flag in ["--force-bruteforce", "--force-catenary"] {
            let out = catena(&["compute", path_str(&fixture(file)), "--what", "ginv", flag]);
            assert_eq!(code(&out), 0, "{}", stderr(&out));
            let text = stdout(&out);
            assert_eq!(section(&text, "ginv"), expected, "{file} {flag}");
            assert_eq!(field(&text, "total"), Some("40320"));
        }
    }
}

#[test]
fn running_example_catenary_data() {
    let out = catena(&["compute", path_str(&fixture("fig1-M.txt")), "--what", "catenary"]);
    let lines = section(&stdout(&out), "catenary");
    for want in ["8 (0,1,1,6)", "4 (0,1,2,5)", "4 (0,1,3,4)", "4 (0,2,1,5)", "4 (0,2,2,4)"] {
        assert!(lines.iter().any(|l| l == want), "{want} missing from {lines:?}");
    }
}

#[test]
fn chains_and_iota_reports() {
    let out = catena(&["compute", path_str(&fixture("fig1-M.txt")), "--what", "chains"]);
    let lines = section(&stdout(&out), "chains");
    assert!(lines.contains(&"(): 8(0,1,1,6)".to_string()), "{lines:?}");
    assert!(lines.contains(&"({0,1}): 2(0,1,2,5) 2(0,2,1,5)".to_string()), "{lines:?}");
    let out = catena(&["compute", path_str(&fixture("fig1-M.txt")), "--what", "iota"]);
    let text = stdout(&out);
    assert_eq!(field(&text, "iota"), Some("4"));
    assert_eq!(field(&text, "identity"), Some("holds"));
}

#[test]
fn compare_exit_codes() {
    let (m, n) = (fixture("fig1-M.txt"), fixture("fig1-N.txt"));
    let cases = [
        (&m, &n, "ginv", 0, "equal"),
        (&m, &n, "catenary", 0, "equal"),
        (&m, &n, "tutte", 0, "equal"),
        (&m, &n, "config", 1, "unequal"),
        (&m, &m, "ginv", 0, "equal"),
        (&m, &m, "config", 0, "equal"),
    ];
    for (a, b, mode, status, verdict) in cases {
        let out = catena(&["compare", path_str(a), path_str(b), "--mode", mode]);
        assert_eq!(code(&out), status, "{mode}: {}", stderr(&out));
        assert_eq!(field(&stdout(&out), "verdict"), Some(verdict), "{mode}");
    }
    let u = fixture("corpus/u2-4.txt");
    let out = catena(&["compare", path_str(&m), path_str(&u), "--mode", "catenary"]);
    assert_eq!(code(&out), 1);
    assert!(!section(&stdout(&out), "differences").is_empty());
}

#[test]
fn example1_pair_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for (assign, path) in [("1,1", &a), ("1,2", &b)] {
        let out = catena(&[
            "generate", "example1", "--m", "2", "--sizes", "5,6", "--assign", assign, "--output",
            path_str(path),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.contains("\nn: 11\n"));
    let cat = catena(&["compare", path_str(&a), path_str(&b), "--mode", "catenary"]);
    assert_eq!(code(&cat), 0);
    let ginv = catena(&["compare", path_str(&a), path_str(&b), "--mode", "ginv"]);
    assert_eq!(code(&ginv), 0);
    assert_eq!(field(&stdout(&ginv), "route"), Some("catenary"));
    let config = catena(&["compare", path_str(&a), path_str(&b), "--mode", "config"]);
    assert_eq!(code(&config), 1);
}

#[test]
fn example3_and_example4_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out3 = dir.path().join("ex3");
    let out = catena(&["generate", "example3", "--m", "2", "--n", "2", "--block", "2", "--output", path_str(&out3)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(field(&stdout(&out), "n"), Some("12"));
    assert_eq!(field(&stdout(&out), "rank"), Some("3"));

    let out4 = dir.path().join("ex4");
    let out = catena(&["generate", "example4", "--block", "2", "--output", path_str(&out4)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(field(&stdout(&out), "n"), Some("24"));
    // The embedded pair spec is the shipped fixture.
    assert_eq!(
        fs::read_to_string(out4.join("example4-pair.txt")).unwrap(),
        fs::read_to_string(fixture("example4-pair.txt")).unwrap()
    );

    for (d, prefix) in [(&out3, "example3"), (&out4, "example4")] {
        let (p1, p2) = (d.join(format!("{prefix}-1.txt")), d.join(format!("{prefix}-2.txt")));
        let cat = catena(&["compare", path_str(&p1), path_str(&p2), "--mode", "catenary"]);
        assert_eq!(code(&cat), 0, "{prefix}");
        let tutte = catena(&["compare", path_str(&p1), path_str(&p2), "--mode", "tutte"]);
        assert_eq!(code(&tutte), 0, "{prefix}");
        let config = catena(&["compare", path_str(&p1), path_str(&p2), "--mode", "config"]);
        assert_eq!(code(&config), 1, "{prefix}");
    }
}

#[test]
fn paving_hypotheses_pass_and_fail() {
    let fixture_path = fixture("example4-pair.txt");
    let out = catena(&["verify", "paving-hypotheses", path_str(&fixture_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(field(&stdout(&out), "verdict"), Some("pass"));

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("identity.txt");
    let text = fs::read_to_string(&fixture_path).unwrap();
    assert!(text.contains("alpha1: (4 6)(5 7)\n"));
    fs::write(&broken, text.replace("alpha1: (4 6)(5 7)\n", "alpha1: ()\n")).unwrap();
    let out = catena(&["verify", "paving-hypotheses", path_str(&broken)]);
    assert_eq!(code(&out), 1);
    let results = section(&stdout(&out), "results");
    assert_eq!(
        results,
        ["example4: fail block 1: {0,1,4,5} maps to {0,1,4,5}, which is not in the matching block"]
    );
}

#[test]
fn lattice_extension_fixture_realizes_the_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = catena(&[
        "generate", "lattice-extension", "--input", path_str(&fixture("fig3-extension.txt")),
        "--output", path_str(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for (made, known) in [("fig3-1.txt", "fig1-M.txt"), ("fig3-2.txt", "fig1-N.txt")] {
        let out = catena(&[
            "compare", path_str(&dir.path().join(made)), path_str(&fixture(known)), "--mode", "config",
        ]);
        assert_eq!(code(&out), 0, "{made}");
    }
}

#[test]
fn verify_suites_on_the_corpus() {
    let corpus = fixture("corpus");
    for kind in ["axioms", "lemma31", "duality"] {
        let out = catena(&["verify", kind, path_str(&corpus)]);
        assert_eq!(code(&out), 0, "{kind}: {}{}", stdout(&out), stderr(&out));
        let results = section(&stdout(&out), "results");
        assert_eq!(results.len(), 9, "{kind}: {results:?}");
    }
    let out = catena(&["verify", "lemma31", path_str(&corpus)]);
    assert!(stdout(&out).contains("line-plus-coloop: not applicable"));
    let out = catena(&["verify", "chains", path_str(&fixture("fig1-M.txt")), path_str(&fixture("fig1-N.txt"))]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn axiom_violation_is_reported_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    let text = fs::read_to_string(fixture("fig1-M.txt")).unwrap();
    fs::write(&bad, text.replace("  3: 0 1 2 3 4 5 6 7", "  8: 0 1 2 3 4 5 6 7")).unwrap();
    let out = catena(&["verify", "axioms", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    let results = section(&stdout(&out), "results");
    assert!(results[0].starts_with("fig1-M: fail Z2"), "{results:?}");
    // Loading the same file for a computation is an error.
    let out = catena(&["compute", path_str(&bad), "--what", "tutte"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "format: 1\nkind: matroid\nn: 2\ncyclic-flats:\n  0:\n  1: 0 9\n").unwrap();
    let out = catena(&["compute", path_str(&bad), "--what", "ginv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 6: element 9 is outside 0..2"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let out = catena(&["compute", path_str(&dir.path().join("missing.txt")), "--what", "ginv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn failed_generation_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.txt");
    let out = catena(&[
        "generate", "example1", "--m", "2", "--sizes", "5,5", "--assign", "1,2", "--output",
        path_str(&target),
    ]);
    assert_eq!(code(&out), 2);
    assert!(!target.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0, "no temporary files left");
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let m = fixture("fig1-M.txt");
    let runs: Vec<String> = ["1", "3"]
        .iter()
        .flat_map(|t| {
            ["ginv", "catenary", "chains"].map(|what| {
                stdout(&catena(&["--threads", t, "compute", path_str(&m), "--what", what]))
            })
        })
        .collect();
    assert_eq!(runs[..3], runs[3..]);
}

#[test]
fn fixtures_are_canonical() {
    // A double dual reproduces the cyclic flats; the serializer writes them
    // in the same canonical order as the fixture.
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig1-M.txt", "fig1-N.txt"] {
        let once = dir.path().join("once.txt");
        let twice = dir.path().join("twice.txt");
        assert_eq!(code(&catena(&["generate", "dual", "--input", path_str(&fixture(name)), "--output", path_str(&once)])), 0);
        assert_eq!(code(&catena(&["generate", "dual", "--input", path_str(&once), "--output", path_str(&twice)])), 0);
        let body = |p: &Path| {
            fs::read_to_string(p).unwrap().lines().filter(|l| !l.starts_with("name:")).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(body(&twice), body(&fixture(name)), "{name}");
    }
}
