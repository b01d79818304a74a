use std::io::Write;
use std::process::{Command, Output};

fn bwtcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwtcat"))
        .args(args)
        .env_remove("BWTCAT_ORACLE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn transform_examples() {
    let o = bwtcat(&["transform", "catastrophic"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("bwt=tcciphrotaas runs=10\n"));
    let o = bwtcat(&["transform", "--dollar", "catastrophic"]);
    assert!(stdout(&o).starts_with("bwt=ctci$phrotaas runs=12\n"));
    let o = bwtcat(&["transform", "a"]);
    assert!(stdout(&o).starts_with("bwt=a runs=1\n"));
}

#[test]
fn transform_json_shape() {
    let o = bwtcat(&["--format", "json", "transform", "catastrophic"]);
    assert_eq!(
        stdout(&o),
        "{\"bwt\":\"tcciphrotaas\",\"runs\":10,\"rle\":[[\"t\",1],[\"c\",2],[\"i\",1],[\"p\",1],[\"h\",1],[\"r\",1],[\"o\",1],[\"t\",1],[\"a\",2],[\"s\",1]]}\n"
    );
}

#[test]
fn transform_reads_exact_bytes() {
    let mut f = tempfile();
    f.1.write_all(b"banana\n").unwrap();
    let path = f.0.to_str().unwrap();
    let raw = bwtcat(&["transform", "--input", path]);
    let trimmed = bwtcat(&["transform", "--input", path, "--trim"]);
    assert_ne!(raw.stdout, trimmed.stdout);
    assert!(stdout(&trimmed).starts_with("bwt=nnbaaa runs=3\n"));
    std::fs::remove_file(&f.0).unwrap();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("bwtcat-cli-{}", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn generate_examples() {
    assert_eq!(
        stdout(&bwtcat(&["generate", "fibonacci", "6"])),
        "abaababaabaab\n"
    );
    let o = bwtcat(&["generate", "wk", "6", "--stats"]);
    assert!(stdout(&o).ends_with("length=66 r=24 r_dollar=32\n"));
    assert_eq!(stdout(&bwtcat(&["generate", "central", "2"])), "\n");
    assert_eq!(
        stdout(&bwtcat(&["generate", "tfam", "3", "1"])),
        "ababbabbb\n"
    );
}

#[test]
fn edit_example() {
    let o = bwtcat(&[
        "edit",
        "abaababaabaab",
        "--op",
        "insert",
        "--pos",
        "6",
        "--char",
        "b",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("r: 2 -> 6\n"));
}

#[test]
fn scan_counts_effective_edits() {
    let o = bwtcat(&[
        "--format",
        "json",
        "scan",
        "ab",
        "--alphabet",
        "word-alphabet",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.iter().filter(|r| r["no_op"] == false).count(), 10);
}

#[test]
fn scan_is_identical_in_parallel() {
    let serial = bwtcat(&[
        "--format",
        "json",
        "scan",
        "abaababaabaab",
        "--alphabet",
        "word-alphabet-plus-fresh",
    ]);
    let parallel = bwtcat(&[
        "--format",
        "json",
        "scan",
        "abaababaabaab",
        "--alphabet",
        "word-alphabet-plus-fresh",
        "--parallel",
    ]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn verify_passes_and_exits_zero() {
    let o = bwtcat(&["verify", "--check", "wk.bwt", "--k", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("passed=18 failed=0"));
}

#[test]
fn verify_tfam_with_i() {
    let o = bwtcat(&["verify", "--check", "tfam", "--i", "5", "--k", "1..2"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn report_table_layout() {
    let o = bwtcat(&["--format", "tsv", "report", "table2", "--k", "7"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].starts_with("word\t$\ta$\taa$\ta^5b\ta^4b\ta^3b\taab\tab\tb$\tba\tbb$"));
    assert!(lines[0].ends_with("\tr"));
    let row = |label: &str| {
        lines
            .iter()
            .find(|l| l.starts_with(&format!("{label}\t")))
            .unwrap()
            .to_string()
    };
    assert!(row("w_k").ends_with("\t30"));
    assert!(row("w_k bb$").ends_with("\t39"));
    assert!(row("ŵ_k b").split('\t').collect::<Vec<_>>().len() == lines[0].split('\t').count());
}

#[test]
fn oracle_env_gives_identical_output() {
    let fast = bwtcat(&["--format", "json", "verify", "--k", "6..7"]);
    let naive = Command::new(env!("CARGO_BIN_EXE_bwtcat"))
        .args(["--format", "json", "verify", "--k", "6..7"])
        .env("BWTCAT_ORACLE", "1")
        .output()
        .unwrap();
    assert_eq!(code(&fast), 0);
    assert_eq!(fast.stdout, naive.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["transform"][..],
        &["transform", "ab", "--input", "x"],
        &["transform", "--dollar", "a$b"],
        &["transform", "--bogus", "ab"],
        &["generate", "wk", "5"],
        &["generate", "fibonacci", "3", "--directive", "1"],
        &["generate", "tfam", "3"],
        &["edit", "ab", "--op", "insert", "--pos", "9", "--char", "a"],
        &["edit", "ab", "--op", "insert", "--pos", "0"],
        &["verify", "--check", "nope"],
        &["verify", "--k", "x"],
        &["verify", "--check", "wk.bwt", "--k", "5"],
        &["report", "table2", "--k", "5"],
        &["scan", "a"],
    ] {
        let o = bwtcat(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn computation_errors_exit_one() {
    let o = bwtcat(&["transform", ""]);
    assert_eq!(code(&o), 1);
}
