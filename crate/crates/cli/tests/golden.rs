use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cosetsat(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosetsat")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Golden {
    args: &'static [&'static str],
    code: i32,
    stdout: Option<&'static str>,
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("yes.inst", "group: 4\nt: 2\nxstar: (0) (0)\ngen: (1) (1)\n"),
        ("no.inst", "group: 4\nt: 2\nxstar: (1) (0)\ngen: (1) (1)\n"),
        ("good.cert", "cert: 1\n"),
        ("bad.cert", "cert: 2\n"),
        ("bad.inst", "group: 4\nt: 2\nxstar: (0)\n"),
        ("odd.sub", "# odd residues\n1\n3\n"),
        ("hard.inst", "group: 4\nt: 3\nxstar: (0) (1) (2)\ngen: (1) (1) (1)\ngen: (1) (2) (3)\ngen: (2) (2) (0)\n"),
    ];
    for (name, body) in files {
        fs::write(dir.path().join(name), body).unwrap();
    }
    dir
}

#[test]
fn golden_invocations() {
    let cases = [
        Golden {
            args: &["classify", "--group", "4", "--subset", "{0,1}"],
            code: 0,
            stdout: Some("NP-complete (S not a coset; |S|=2, d=1)\n"),
        },
        Golden { args: &["classify", "--group", "4", "--subset", "odd.sub"], code: 0, stdout: Some("InP (S is a coset: 1 + <2>)\n") },
        Golden { args: &["theta", "--group", "6", "--subset", "{1,2,4,5}"], code: 0, stdout: Some("{2,4}\n") },
        Golden { args: &["solve", "--instance", "yes.inst", "--subset", "{1,3}"], code: 0, stdout: Some("yes\ncert: 1\n") },
        Golden { args: &["solve", "--instance", "no.inst", "--subset", "{1,3}"], code: 1, stdout: Some("no\n") },
        Golden { args: &["oracle", "--instance", "yes.inst", "--subset", "{1,3}"], code: 0, stdout: Some("yes\ncert: 1\n") },
        Golden { args: &["oracle", "--instance", "hard.inst", "--subset", "{0,1}", "--budget", "1"], code: 3, stdout: Some("") },
        Golden {
            args: &["verify", "--instance", "yes.inst", "--subset", "{1,3}", "--cert", "good.cert"],
            code: 0,
            stdout: Some("valid\n"),
        },
        Golden {
            args: &["verify", "--instance", "yes.inst", "--subset", "{1,3}", "--cert", "bad.cert"],
            code: 1,
            stdout: Some("invalid\n"),
        },
        Golden { args: &["solve", "--instance", "bad.inst", "--subset", "{1,3}"], code: 2, stdout: Some("") },
        Golden {
            args: &["compile-hardness", "--group", "4", "--subset", "{1,3}", "--out", "p.txt"],
            code: 2,
            stdout: Some(""),
        },
        Golden {
            args: &["compile-hardness", "--group", "4", "--subset", "{0,1,2}", "--out", "p.txt", "--budget", "1"],
            code: 3,
            stdout: Some(""),
        },
    ];
    assert_eq!(cases.len(), 12);
    let dir = workspace();
    for case in &cases {
        let o = cosetsat(case.args, dir.path());
        assert_eq!(o.status.code(), Some(case.code), "{:?}: stderr {}", case.args, stderr(&o));
        if let Some(want) = case.stdout {
            assert_eq!(stdout(&o), want, "{:?}", case.args);
        }
        if case.code >= 2 {
            let err = stderr(&o);
            assert_eq!(err.lines().count(), 1, "{:?}: diagnostic should be one line, got {err:?}", case.args);
        }
    }
    assert!(!dir.path().join("p.txt").exists(), "no pipeline is written when the self-check is inconclusive");
}

#[test]
fn compile_apply_verify_roundtrip() {
    let dir = workspace();
    let p = dir.path();
    fs::write(p.join("k3.col"), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
    fs::write(p.join("k4.col"), "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
    fs::write(p.join("k3.colors"), "1 2 3\n").unwrap();

    let o = cosetsat(&["compile-hardness", "--group", "2,2", "--subset", "{(0,1),(1,0),(1,1)}", "--out", "pipe.txt"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = cosetsat(
        &["apply", "--pipeline", "pipe.txt", "--graph", "k3.col", "--out", "k3.inst", "--coloring", "k3.colors", "--cert-out", "k3.cert"],
        p,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let sub = "{(0,1),(1,0),(1,1)}";
    let o = cosetsat(&["verify", "--instance", "k3.inst", "--subset", sub, "--cert", "k3.cert"], p);
    assert_eq!(o.status.code(), Some(0));
    let o = cosetsat(&["oracle", "--instance", "k3.inst", "--subset", sub], p);
    assert_eq!(o.status.code(), Some(0));

    let o = cosetsat(&["apply", "--pipeline", "pipe.txt", "--graph", "k4.col", "--out", "k4.inst"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = cosetsat(&["solve", "--instance", "k4.inst", "--subset", sub], p);
    assert_eq!(o.status.code(), Some(1));

    // applying the same pipeline twice gives identical bytes
    let first = fs::read(p.join("k4.inst")).unwrap();
    cosetsat(&["apply", "--pipeline", "pipe.txt", "--graph", "k4.col", "--out", "k4.inst"], p);
    assert_eq!(fs::read(p.join("k4.inst")).unwrap(), first);
}

#[test]
fn apply_rejects_improper_coloring() {
    let dir = workspace();
    let p = dir.path();
    fs::write(p.join("k3.col"), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
    fs::write(p.join("bad.colors"), "1 1 2\n").unwrap();
    let o = cosetsat(&["compile-hardness", "--group", "4", "--subset", "{0,1}", "--out", "pipe.txt"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = cosetsat(&["apply", "--pipeline", "pipe.txt", "--graph", "k3.col", "--out", "x.inst", "--coloring", "bad.colors"], p);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_threads_certificate() {
    let dir = workspace();
    let p = dir.path();
    let o = cosetsat(
        &["reduce", "--step", "step: translate group=4 g=(1)", "--instance", "yes.inst", "--cert", "good.cert", "--out", "moved.inst", "--cert-out", "moved.cert"],
        p,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(p.join("moved.inst")).unwrap(), "group: 4\nt: 2\nxstar: (1) (1)\ngen: (1) (1)\n");
    let o = cosetsat(&["verify", "--instance", "moved.inst", "--subset", "{0,2}", "--cert", "moved.cert"], p);
    assert_eq!(o.status.code(), Some(0));
    let o = cosetsat(&["reduce", "--step", "step: translate group=5 g=(1)", "--instance", "yes.inst", "--out", "x.inst"], p);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_is_reproducible() {
    let dir = workspace();
    let p = dir.path();
    for kind in ["instance", "subset", "graph"] {
        let a = cosetsat(&["gen", "--seed", "42", "--kind", kind], p);
        let b = cosetsat(&["gen", "--seed", "42", "--kind", kind], p);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).starts_with("# seed: 42\n"));
    }
    let o = cosetsat(&["gen", "--seed", "5", "--out", "g.inst"], p);
    assert_eq!(o.status.code(), Some(0));
    let o = cosetsat(&["oracle", "--instance", "g.inst", "--subset", "{}"], p);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stderr(&o));
}

#[test]
fn selftest_passes() {
    let o = cosetsat(&["selftest"], Path::new("."));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
