use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const EXAMPLE: &str = "PPH-STRINGS v1\nsigma: a\npi: xyz\nxaxxx\nyaxx\nzaxx\nzyx\nyyy\nyayy\nxayy\nxzy\nyayxz\nxaxz\n";

fn pph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes the example strings and builds an index from them.
fn built(dir: &Path) -> PathBuf {
    let input = dir.join("example.txt");
    fs::write(&input, EXAMPLE).unwrap();
    let index = dir.join("example.idx");
    let o = pph(&["build", "--input", s(&input), "--output", s(&index)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    index
}

#[test]
fn build_prints_sizes_and_naive_matches_fast() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("example.txt");
    fs::write(&input, EXAMPLE).unwrap();
    let fast = dir.path().join("fast.idx");
    let naive = dir.path().join("naive.idx");
    let o = pph(&["build", "--input", s(&input), "--output", s(&fast)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("N=26 N_p=15"), "{}", stdout(&o));
    let o = pph(&["build", "--input", s(&input), "--output", s(&naive), "--naive"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(&fast).unwrap(), fs::read(&naive).unwrap());
}

#[test]
fn build_from_trie_format() {
    let dir = tempfile::tempdir().unwrap();
    let trie = dir.path().join("t.trie");
    fs::write(&trie, "PPH-TRIE v1\nsigma: a\npi: x\n2 1 x\n3 2 a\n4 1 a\nend 3 1\n").unwrap();
    let index = dir.path().join("t.idx");
    let o = pph(&["build", "--input", s(&trie), "--format", "trie", "--output", s(&index)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("N=4 N_p=4"));
    let o = pph(&["query", "--index", s(&index), "--pattern", "ax", "--expand"]);
    assert_eq!(stdout(&o), "s1 1\n");
}

#[test]
fn build_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.idx");
    assert_eq!(code(&pph(&["build", "--input", "/nonexistent/file", "--output", s(&out)])), 2);
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "PPH-STRINGS v1\nsigma: a\npi: x\naxq\n").unwrap();
    let o = pph(&["build", "--input", s(&bad), "--output", s(&out)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let cyclic = dir.path().join("cyclic.trie");
    fs::write(&cyclic, "PPH-TRIE v1\nsigma: a\npi: x\n2 2 a\n").unwrap();
    assert_eq!(code(&pph(&["build", "--input", s(&cyclic), "--format", "trie", "--output", s(&out)])), 2);
}

#[test]
fn query_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let index = built(dir.path());
    let ids = pph(&["query", "--index", s(&index), "--pattern", "azy"]);
    assert_eq!(code(&ids), 0);
    let ids: Vec<u32> = stdout(&ids).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(ids.len(), 2);
    assert!(ids[0] < ids[1]);

    let o = pph(&["query", "--index", s(&index), "--pattern", "azy", "--expand"]);
    assert_eq!(stdout(&o), "s10 2\ns9 2\n");
    let o = pph(&["query", "--index", s(&index), "--pattern", "azy", "--count-only"]);
    assert_eq!(stdout(&o), "2\n");
    let o = pph(&["query", "--index", s(&index), "--pattern", "xaxaxaxa", "--count-only"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "0\n"));
}

#[test]
fn query_errors() {
    let dir = tempfile::tempdir().unwrap();
    let index = built(dir.path());
    assert_eq!(code(&pph(&["query", "--index", s(&index), "--pattern", "abq"])), 2);
    assert_eq!(code(&pph(&["query", "--index", s(&index), "--pattern", ""])), 2);
    assert_eq!(code(&pph(&["query", "--index", "/nonexistent", "--pattern", "a"])), 2);

    let text = fs::read_to_string(&index).unwrap();
    let tampered = dir.path().join("tampered.idx");
    fs::write(&tampered, text.replacen("[mrp]\n1 1\n", "[mrp]\n1 2\n", 1)).unwrap();
    let o = pph(&["query", "--index", s(&tampered), "--pattern", "a"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
}

#[test]
fn query_patterns_from_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let index = built(dir.path());
    let mut child = Command::new(env!("CARGO_BIN_EXE_pph"))
        .args(["query", "--index", s(&index), "--pattern", "-", "--count-only"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"azy\n\nxax\na\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "# azy\n2\n# xax\n4\n# a\n5\n");
}

#[test]
fn verify_passes_and_is_seed_stable() {
    let a = pph(&["verify", "--samples", "30"]);
    assert_eq!(code(&a), 0);
    assert!(stdout(&a).starts_with("PASS"));
    let b = pph(&["verify", "--samples", "30"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = pph(&["verify", "--samples", "20", "--seed", "5", "--sigma-max", "2", "--pi-max", "3", "--len-max", "7"]);
    assert_eq!(code(&c), 0, "{}", stdout(&c));
}

#[test]
fn verify_reports_injected_fault() {
    let o = pph(&["verify", "--samples", "4", "--inject-fault"]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("mrp("), "{text}");
    assert!(text.contains("strings:"));
}

#[test]
fn export_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let index = built(dir.path());
    let dot = dir.path().join("heap.dot");
    assert_eq!(code(&pph(&["export", "--index", s(&index), "--what", "heap", "--output", s(&dot)])), 0);
    let text = fs::read_to_string(&dot).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("arrowhead=normalnormal")).count(), 4);
    let o = pph(&["export", "--index", s(&index), "--what", "trie", "--output", "-"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("[label=\"") && !l.contains("->")).count(), 26);
    assert_eq!(code(&pph(&["export", "--index", s(&index), "--what", "tree", "--output", "-"])), 1);

    let o = pph(&["stats", "--index", s(&index)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("N=26 N_p=15 ratio=0.577"));
}

#[test]
fn usage_exit_codes() {
    assert_eq!(code(&pph(&[])), 1);
    assert_eq!(code(&pph(&["frobnicate"])), 1);
    assert_eq!(code(&pph(&["query", "--pattern", "a"])), 1);
    assert_eq!(code(&pph(&["--help"])), 0);
    assert_eq!(code(&pph(&["--version"])), 0);
}
