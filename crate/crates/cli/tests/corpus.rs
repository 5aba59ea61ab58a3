//! Runs every `corpus/*.args` file through the `avg` binary and compares the
//! output with the neighbouring `.golden` file. Set `UPDATE_GOLDEN=1` to
//! rewrite the goldens.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn cases() -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .map(|p| {
            let args = fs::read_to_string(&p)
                .unwrap()
                .lines()
                .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
                .map(str::to_string)
                .collect();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), args)
        })
        .collect();
    out.sort();
    out
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn run(args: &[String]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_avg"))
        .args(args)
        .current_dir(corpus_dir())
        .env_remove("AVG_SCALAR_DEFAULT")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        elapsed: start.elapsed(),
    }
}

fn render(r: &Run) -> String {
    let mut s = format!("exit: {}\n--- stdout\n{}", r.code, r.stdout);
    if !r.stderr.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&r.stderr);
    }
    s
}

#[test]
fn corpus_matches_goldens() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cases = cases();
    assert!(cases.len() >= 20, "corpus went missing");
    let mut mismatches = Vec::new();
    for (name, args) in &cases {
        let r = run(args);
        assert!(r.elapsed < Duration::from_secs(1), "{name} took {:?}", r.elapsed);
        let got = render(&r);
        let path = corpus_dir().join(format!("{name}.golden"));
        if update {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            mismatches.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

/// Keys every successful `--json` document must carry, per command.
fn required_keys(command: &str) -> &'static [&'static str] {
    match command {
        "decide" => &["hypothesis", "results", "all_hold"],
        "eval" => &["mode", "term", "value", "is_zero"],
        "verify" => &["dim", "scalar", "algebra", "operator"],
        "lie-induce" => &["outcome"],
        "lie-analyze" => &["averaging"],
        "chain" => &["x_count", "ideals"],
        "primary" => &["algebra", "operator", "averaging"],
        other => panic!("unknown command {other}"),
    }
}

fn check_schema(name: &str, v: &Value, code: i32) {
    if code == 2 {
        assert!(v["error"].is_string(), "{name}: error document expected");
        return;
    }
    let command = v["command"].as_str().unwrap_or_else(|| panic!("{name}: missing command"));
    for key in required_keys(command) {
        assert!(v.get(*key).is_some(), "{name}: missing `{key}`");
    }
    match command {
        "decide" => {
            for r in v["results"].as_array().unwrap() {
                let verdict = r["verdict"].as_str().unwrap();
                assert!(verdict == "holds" || verdict == "fails");
                assert_eq!(r["witness"].is_string(), verdict == "fails", "{name}");
            }
            assert_eq!(v["all_hold"].as_bool().unwrap(), code == 0);
        }
        "lie-induce" => {
            let outcome = v["outcome"].as_str().unwrap();
            assert!(["induced", "not_induced", "verification_failed"].contains(&outcome));
            if outcome == "induced" {
                assert!(v["t"].is_array() && v["operator"]["matrix"].is_array());
            }
        }
        "lie-analyze" if v["averaging"] == true => {
            for key in ["bracket", "derived_series", "lower_central_series", "nilpotency", "kernel", "bracket_span"] {
                assert!(v.get(key).is_some(), "{name}: missing `{key}`");
            }
        }
        "primary" => {
            assert!(v["algebra"]["mul"].is_array() && v["operator"]["matrix"].is_array());
        }
        _ => {}
    }
}

#[test]
fn json_output_follows_schema() {
    for (name, mut args) in cases() {
        args.push("--json".into());
        let r = run(&args);
        let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{name}: {e}\n{}", r.stdout));
        check_schema(&name, &v, r.code);
    }
}

#[test]
fn scalar_default_comes_from_the_environment() {
    let dir = std::env::temp_dir().join(format!("avg-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let alg = dir.join("one.json");
    let op = dir.join("op.json");
    fs::write(&alg, r#"{"dim": 1, "unit": ["1"], "mul": [[["1"]]]}"#).unwrap();
    fs::write(&op, r#"{"matrix": [["2"]]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_avg"))
        .args(["verify", alg.to_str().unwrap(), op.to_str().unwrap()])
        .env("AVG_SCALAR_DEFAULT", "Zmod:6")
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("over Zmod:6"), "{stdout}");
    fs::remove_dir_all(&dir).ok();
}
