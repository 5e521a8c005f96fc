use std::path::Path;
use std::process::{Command, Output};

fn glnq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glnq")).args(args).env_remove("GLNQ_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_summary() {
    let o = glnq(&["table", "--n", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("classes: 8"), "{s}");
    assert!(s.contains("degrees: [1, 1, 2, 2, 2, 3, 3, 4]"), "{s}");
    assert!(s.contains("splitting prime: 73"), "{s}");
}

#[test]
fn verify_main_and_crosscheck_pass() {
    let o = glnq(&["verify-main", "--n", "2", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("cuspidal case: holds (10 cuspidals)"));
    let o = glnq(&["verify-main", "--n", "3", "--q", "3", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = glnq(&["crosscheck", "--n", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("crosscheck passed"));
}

#[test]
fn json_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let o = glnq(&["--threads", threads, "--json", path.to_str().unwrap(), "verify-main", "--n", "2", "--q", "3"]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("1", "a.json");
    let b = run("4", "b.json");
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["config"]["command"], "verify-main");
    assert_eq!(doc["result"]["theorem_holds"], true);
    assert_eq!(doc["result"]["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn json_to_stdout() {
    let o = glnq(&["--json", "-", "psh-selfcheck", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let start = s.find('{').unwrap();
    let doc: serde_json::Value = serde_json::from_str(&s[start..]).unwrap();
    assert_eq!(doc["result"]["passed"], true);
}

fn cache_file(dir: &Path) -> std::path::PathBuf {
    dir.join("gl2_q3.json")
}

#[test]
fn corrupted_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = glnq(&["--cache", d, "table", "--n", "2", "--q", "3"]);
    assert!(stdout(&o).contains("cache: built"));
    let o = glnq(&["--cache", d, "table", "--n", "2", "--q", "3"]);
    assert!(stdout(&o).contains("cache: hit"));
    std::fs::write(cache_file(dir.path()), "{ not json").unwrap();
    let o = glnq(&["--cache", d, "table", "--n", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cache: rebuilt"));
    assert!(stdout(&o).contains("degrees: [1, 1, 2, 2, 2, 3, 3, 4]"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(glnq(&["bogus"]).status.code(), Some(2));
    assert_eq!(glnq(&["table", "--n", "2", "--q", "4"]).status.code(), Some(2));
    assert_eq!(glnq(&["table", "--n", "4", "--q", "3"]).status.code(), Some(2));
    assert_eq!(glnq(&["--max-order", "10", "table", "--n", "2", "--q", "3"]).status.code(), Some(2));
    assert_eq!(glnq(&["distinction", "--n", "2", "--q", "3", "--p", "3"]).status.code(), Some(2));
    assert_eq!(glnq(&["geom-check", "--n", "2", "--q", "3", "--p", "1", "--comp", "1,x"]).status.code(), Some(2));
}

#[test]
fn geom_check_finds_witnesses() {
    for q in ["3", "5"] {
        let o = glnq(&["geom-check", "--n", "2", "--q", q, "--p", "1", "--comp", "1,1"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("with a monomial witness"));
    }
}

#[test]
fn distinction_table() {
    let o = glnq(&["distinction", "--n", "2", "--q", "3", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theorem holds"));
}
