//! Every `tests/golden/NAME.args` file holds one argument per line; the
//! expected stdout is `NAME.out` and a nonzero exit status, if any, is in
//! `NAME.code`. Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn cases() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut v: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    v.sort();
    v
}

fn run(args_file: &Path) -> (String, i32) {
    let args: Vec<String> = fs::read_to_string(args_file)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_hilbert"))
        .args(&args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    let cases = cases();
    assert!(!cases.is_empty());
    for case in &cases {
        let (stdout, code) = run(case);
        let out_file = case.with_extension("out");
        let code_file = case.with_extension("code");
        if update {
            fs::write(&out_file, &stdout).unwrap();
            if code == 0 {
                let _ = fs::remove_file(&code_file);
            } else {
                fs::write(&code_file, format!("{code}\n")).unwrap();
            }
            continue;
        }
        let expected = fs::read_to_string(&out_file).unwrap_or_default();
        let expected_code: i32 =
            fs::read_to_string(&code_file).map_or(0, |s| s.trim().parse().unwrap());
        if stdout != expected || code != expected_code {
            failures.push(format!(
                "{}: exit {code} (expected {expected_code})\n--- got ---\n{stdout}--- expected ---\n{expected}",
                case.display()
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for case in cases() {
        assert_eq!(run(&case), run(&case), "{}", case.display());
    }
}

#[test]
fn shipped_man_pages_are_current() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../man");
    let fresh = std::env::temp_dir().join(format!("hilbert-man-{}", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_hilbert"))
        .arg("man")
        .arg("--out-dir")
        .arg(&fresh)
        .status()
        .unwrap();
    assert!(status.success());
    let names = |d: &Path| {
        let mut v: Vec<_> = fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        v.sort();
        v
    };
    assert_eq!(
        names(&fresh),
        names(&shipped),
        "regenerate with `hilbert man --out-dir man`"
    );
    for name in names(&fresh) {
        let a = fs::read_to_string(fresh.join(&name)).unwrap();
        let b = fs::read_to_string(shipped.join(&name)).unwrap();
        assert_eq!(
            a, b,
            "{name:?} is stale; regenerate with `hilbert man --out-dir man`"
        );
    }
    fs::remove_dir_all(&fresh).unwrap();
}
