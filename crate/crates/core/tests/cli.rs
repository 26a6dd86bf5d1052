use esli::constructors::named_small;
use esli::io::format::write_action;
use esli::io::{bundled_action, CayleyFile};
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn esli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esli")).args(args).env_remove("ESLI_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--report", "-"]);
    let o = esli(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json report"))
}

fn write_named(dir: &Path, name: &str) -> String {
    let p = dir.join(format!("{name}.cayley"));
    let f = CayleyFile { kind: "named".into(), semigroup: named_small(name).unwrap() };
    std::fs::write(&p, f.write()).unwrap();
    p.display().to_string()
}

#[test]
fn term_reduce_prints_the_normal_form() {
    let o = esli(&["term-reduce", "x(y^x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x");
    let o = esli(&["term-reduce", "(x^y)(x^z)(x'^x)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn term_equal_exit_codes() {
    assert_eq!(esli(&["term-equal", "(x^y)x", "x"]).status.code(), Some(0));
    let o = esli(&["term-equal", "x", "y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL equal"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(esli(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(esli(&["term-reduce", "x(("]).status.code(), Some(2));
    assert_eq!(esli(&["classify", "/nonexistent/file.cayley"]).status.code(), Some(2));
    assert_eq!(esli(&["embed-verify", "--prime-rule", "nope"]).status.code(), Some(2));
}

#[test]
fn derive_search_finds_the_five_step_chain() {
    let (code, r) = report(&["derive-search", "x(y^x)", "x"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"][0]["detail"]["steps"].as_array().unwrap().len(), 5);
    let (code, _) = report(&["derive-search", "x", "y", "--max-steps", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn classify_green_and_congruences() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = write_named(dir.path(), "B2");
    let (code, r) = report(&["classify", &b2]);
    assert_eq!(code, 0);
    assert_eq!(r["output"]["inverse"], Value::Bool(true));
    assert_eq!(r["output"]["order"], 5);
    let (_, r) = report(&["green", &b2]);
    assert_eq!(r["output"]["D"].as_array().unwrap().len(), 2);
    let (_, r) = report(&["congruences", &b2]);
    // B2 is congruence-free
    assert_eq!(r["output"].as_array().unwrap().len(), 2);
    let rect = write_named(dir.path(), "rect2x2");
    let out = dir.path().join("li.cong");
    let (code, r) = report(&["least-inv", &rect, "--check", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["output"]["classes"], 1);
    assert!(out.exists());
}

#[test]
fn constructors_write_cayley_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("m.rees");
    std::fs::write(&spec, "rees-matrix v1\ngroup Z2\ni 2\nlambda 2\np\n0 0\n0 1\n").unwrap();
    let out = dir.path().join("m.cayley");
    assert_eq!(esli(&["rees", spec.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.code(), Some(0));
    let (_, r) = report(&["classify", out.to_str().unwrap()]);
    assert_eq!(r["output"]["completely-simple"], Value::Bool(true));
    assert_eq!(r["output"]["order"], 8);

    let spec = dir.path().join("c.sslat");
    std::fs::write(&spec, "strong-semilattice v1\nsemilattice chain2\ncomponent 0 Z2\ncomponent 1 Z2\nhom 0 1 : 0 1\n")
        .unwrap();
    let o = esli(&["sslat", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let c = CayleyFile::parse(&stdout(&o)).unwrap();
    assert_eq!(c.semigroup.order(), 4);
    assert!(c.semigroup.is_inverse() && c.semigroup.is_completely_regular());

    let bad = dir.path().join("bad.rees");
    std::fs::write(&bad, "rees-matrix v1\ngroup chain2\ni 1\nlambda 1\np\n0\n").unwrap();
    assert_eq!(esli(&["rees", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn lsdp_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let act = dir.path().join("a.action");
    std::fs::write(&act, write_action(&bundled_action().unwrap())).unwrap();
    let out = dir.path().join("p.cayley");
    let theta = dir.path().join("p.cong");
    let o =
        esli(&["lsdp-build", act.to_str().unwrap(), "-o", out.to_str().unwrap(), "--theta", theta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (code, r) = report(&["lsdp-verify", act.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["verdicts"].as_array().unwrap().len(), 5);
    let (code, r) = report(&["hat-check", out.to_str().unwrap(), "--congruence", theta.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    let (code, r) = report(&["derived-build", out.to_str().unwrap(), "--congruence", theta.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["output"]["order"], 20);
}

#[test]
fn embed_verify_on_the_bundled_instance() {
    let (code, r) = report(&["embed-verify", "--seed", "7", "--trials", "500"]);
    assert_eq!(code, 0, "{}", r["verdicts"]);
    assert_eq!(r["seed"], 7);
    assert!(r["output"]["steps_lifted"].as_u64().unwrap() >= 10_000);
}

#[test]
fn embed_verify_is_deterministic_across_thread_counts_and_honours_the_seed_override() {
    let run = |jobs: &str, env_seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_esli"));
        c.args(["embed-verify", "--seed", "3", "--trials", "40", "--jobs", jobs, "--report", "-"]);
        match env_seed {
            Some(s) => c.env("ESLI_SEED", s),
            None => c.env_remove("ESLI_SEED"),
        };
        let mut v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["elapsed_ms"] = Value::Null;
        v["command"] = Value::Null;
        v
    };
    assert_eq!(run("1", None), run("3", None));
    let over = run("1", Some("11"));
    assert_eq!(over["seed"], 11);
    assert_ne!(over["output"]["kind_counts"], run("1", None)["output"]["kind_counts"]);
}

#[test]
fn embed_verify_under_the_alternative_prime_rule_reports_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(esli(&["corpus-gen", "--out", d]).status.code(), Some(0));
    let f = dir.path().join(format!("{}.cayley", esli::io::corpus::file_stem("lsdp[M(Z2;2,2;0001)xchain2#2]")));
    let f = f.to_str().unwrap();
    let base = ["embed-verify", f, "--trials", "60", "--seed", "7"];
    assert_eq!(esli(&base).status.code(), Some(0));
    let o = esli(&[&base[..], &["--prime-rule", "dagger-of-hat"]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL lifts-preserve-invariant"));
}

#[test]
fn corpus_gen_writes_a_readable_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["corpus-gen", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let files = r["output"].as_array().unwrap();
    assert!(files.len() >= 30);
    let index = std::fs::read_to_string(dir.path().join("index.txt")).unwrap();
    assert_eq!(index.lines().filter(|l| !l.starts_with('#')).count(), files.len());
    for f in files {
        let text = std::fs::read_to_string(dir.path().join(f.as_str().unwrap())).unwrap();
        CayleyFile::parse(&text).unwrap();
    }
}

#[test]
fn report_file_is_written_next_to_the_text_summary() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let o = esli(&["term-equal", "x(y^x)", "x", "--report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS equal"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(v["verdicts"][0]["pass"], Value::Bool(true));
}
