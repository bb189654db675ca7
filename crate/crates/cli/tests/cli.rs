use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_residua"))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data/corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> toml::Table {
    let doc: toml::Table = stdout(o).parse().expect("toml output");
    doc["report"].as_table().unwrap().clone()
}

#[test]
fn constants_for_nilpotent_closure() {
    let o = run(&["constants", "poly:nilpotent"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["m0"].as_integer(), Some(5));
    assert_eq!(r["n0"].as_integer(), Some(5));
    assert_eq!(r["beta"]["symbolic"].as_str(), Some("24^(1/3)"));
    assert!(r["gamma"].as_str().unwrap().starts_with("0.700265861"));
    assert_eq!(r["s0"]["name"].as_str(), Some("A5"));
}

#[test]
fn soluble_is_read_as_the_nilpotent_closure() {
    let r = report(&run(&["constants", "soluble"]));
    assert_eq!(r["class"].as_str(), Some("poly:nilpotent"));
    assert_eq!(r["alias_of"].as_str(), Some("soluble"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.toml");
    let w = corpus("S5wrC2.grp");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let o = bin()
            .args(["verify", "nilpotent"])
            .arg(&w)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        runs.push(std::fs::read(&out).unwrap());
    }
    let (x, y) = (&runs[0], &runs[1]);
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn residuals_and_radicals() {
    let r = report(&run(&[
        "residual",
        "--poly",
        "nilpotent",
        corpus("S5wrC2.grp").to_str().unwrap(),
    ]));
    assert_eq!(r["subgroup_order"].as_str(), Some("3600"));
    let r = report(&run(&[
        "residual",
        "soluble",
        corpus("S5.grp").to_str().unwrap(),
    ]));
    assert_eq!(r["subgroup_order"].as_str(), Some("60"));
    let r = report(&run(&[
        "radical",
        "nilpotent",
        corpus("S4.grp").to_str().unwrap(),
    ]));
    assert_eq!(r["subgroup_order"].as_str(), Some("4"));
    let r = report(&run(&[
        "radical",
        "--poly",
        "nilpotent",
        corpus("A5xC6.grp").to_str().unwrap(),
    ]));
    assert_eq!(r["subgroup_order"].as_str(), Some("6"));
}

#[test]
fn verify_skips_groups_with_nontrivial_radical() {
    let o = run(&[
        "verify",
        "poly:nilpotent",
        corpus("S4.grp").to_str().unwrap(),
        corpus("A5.grp").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["passed"].as_integer(), Some(1));
    assert_eq!(r["not_applicable"].as_integer(), Some(1));
    let groups = r["groups"].as_array().unwrap();
    assert_eq!(groups[0]["verdict"].as_str(), Some("hypothesis-not-met"));
    assert_eq!(groups[1]["verdict"].as_str(), Some("pass"));
}

#[test]
fn classify_reports_factors() {
    let r = report(&run(&["classify", corpus("S5wrC2.grp").to_str().unwrap()]));
    let f: Vec<&str> = r["composition_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(f, ["C2", "C2", "C2", "A5", "A5"]);
}

#[test]
fn sharpness_report() {
    let o = run(&["sharpness", "poly:nilpotent", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["converged"].as_bool(), Some(true));
    assert_eq!(r["gamma_sequence"].as_array().unwrap().len(), 10);
    let inst = &r["instance_checks"].as_array().unwrap()[0];
    assert_eq!(inst["residual_order"].as_integer(), Some(3600));
    assert_eq!(inst["radical_trivial"].as_bool(), Some(true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "degree = 3\ngenerators = [\"(1 2 4)\"]\n").unwrap();
    assert_eq!(
        run(&["classify", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["residual", "wobbly", corpus("S4.grp").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["constants", "all"]).status.code(), Some(2));
    let capped = run(&[
        "--element-cap",
        "100",
        "radical",
        "nilpotent",
        corpus("S5.grp").to_str().unwrap(),
    ]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(stdout(&capped).contains("exit_status = 3"));
    let o = bin()
        .env("RESIDUA_DATA", dir.path())
        .args(["constants", "poly:nilpotent"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
