use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quiverdim::quiver::parse_algebra;
use serde_json::Value;

const E1: &str =
    "algebra E1\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\n  a*b\nend\n";

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverdim"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("e1.bqa"), E1).unwrap();
    let out = run(
        dir.path(),
        &["family", "--n", "10", "--m", "1", "-o", "fam.bqa"],
    );
    assert!(out.status.success());
    dir
}

#[test]
fn family_file_round_trips() {
    let dir = setup();
    let text = fs::read_to_string(dir.path().join("fam.bqa")).unwrap();
    let spec = parse_algebra(&text).unwrap();
    assert_eq!(spec.serialize(), text);
    let stdout = run(dir.path(), &["family", "--n", "10", "--m", "1"]);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), text);
    assert_eq!(
        run(dir.path(), &["family", "--n", "7", "--m", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn analyze_family_and_e1() {
    let dir = setup();
    let r = json(&run(dir.path(), &["analyze", "fam.bqa"]));
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "tool_version",
        "algebra",
        "loewy",
        "quasi_uniform",
        "bounds",
        "resolutions",
        "checks",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(r["quasi_uniform"]["verdict"], "quasi_uniform_certified");
    assert_eq!(r["bounds"]["fpd_upper_bound"], "finite:3");
    assert_eq!(r["bounds"]["fpd_lower_bound"], 1);
    assert_eq!(r["algebra"]["strongly_connected"], true);
    assert_eq!(r["loewy"]["loewy_length"], 5);
    assert_eq!(
        r["checks"]["uniformized_fpd_zero"]["falsifications"],
        serde_json::json!([])
    );

    let r = json(&run(dir.path(), &["analyze", "e1.bqa"]));
    assert_eq!(r["quasi_uniform"]["verdict"], "quasi_uniform_certified");
    assert_eq!(r["bounds"]["fpd_upper_bound"], "finite:2");
}

#[test]
fn reports_are_deterministic() {
    let dir = setup();
    let a = run(dir.path(), &["analyze", "fam.bqa", "--seed", "7"]);
    let b = run(dir.path(), &["analyze", "fam.bqa", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["run"]["seed"], 7);
}

#[test]
fn exit_codes() {
    let dir = setup();
    fs::write(
        dir.path().join("bad.bqa"),
        "algebra X\nvertices 1 2\narrow a : 1 -> 3\nend\n",
    )
    .unwrap();
    let out = run(dir.path(), &["analyze", "bad.bqa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.bqa:3:"));
    fs::write(
        dir.path().join("cyc.bqa"),
        "algebra C\nvertices v\narrow x : v -> v\nend\n",
    )
    .unwrap();
    assert_eq!(
        run(dir.path(), &["analyze", "cyc.bqa"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(dir.path(), &["analyze", "missing.bqa"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(dir.path(), &["resolve", "e1.bqa", "--simple", "9"])
            .status
            .code(),
        Some(2)
    );
}

fn sequence(r: &Value) -> Vec<Vec<String>> {
    r["resolutions"][0]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            s["projectives"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap().to_string())
                .collect()
        })
        .collect()
}

#[test]
fn resolve_family_simples() {
    let dir = setup();
    let r = json(&run(
        dir.path(),
        &["resolve", "fam.bqa", "--op-simple", "1"],
    ));
    assert_eq!(sequence(&r), [["1"], ["2"], ["6"], ["7"]]);
    assert_eq!(r["resolutions"][0]["status"]["terminated"], 3);
    let r = json(&run(
        dir.path(),
        &["resolve", "fam.bqa", "--op-simple", "2"],
    ));
    assert_eq!(sequence(&r), [["2"], ["3"], ["7"], ["8"]]);
    let r = json(&run(
        dir.path(),
        &["resolve", "fam.bqa", "--simple", "1", "--cap", "30"],
    ));
    assert_eq!(r["resolutions"][0]["status"]["cap_reached"], 30);
    assert_eq!(r["resolutions"][0]["pd"], "at_least:30");
}

#[test]
fn uniformize_and_check_inclusion() {
    let dir = setup();
    let r = json(&run(
        dir.path(),
        &["uniformize", "e1.bqa", "-o", "star.bqa"],
    ));
    assert_eq!(r["checks"]["iota"]["kernel_dim"], 0);
    let star = parse_algebra(&fs::read_to_string(dir.path().join("star.bqa")).unwrap()).unwrap();
    let rels: Vec<String> = star
        .relations
        .iter()
        .map(|z| star.quiver.lincomb_string(z))
        .collect();
    assert!(rels.contains(&"u1^2".to_string()), "{rels:?}");
    assert_eq!(rels.len(), 3);

    let r = json(&run(dir.path(), &["check-hom", "star_iota.bqhom"]));
    assert_eq!(r["checks"]["radical_preserving"], true);
    assert_eq!(r["checks"]["kernel_dim"], 0);
    assert_eq!(r["checks"]["cover_preservation"]["S(1)"], true);
    let r = json(&run(dir.path(), &["check-hom", "star_pi.bqhom"]));
    assert_eq!(r["checks"]["kernel_dim"], 1);
}

#[test]
fn uniformize_family_inclusion_pd() {
    let dir = setup();
    let r = json(&run(dir.path(), &["uniformize", "fam.bqa"]));
    assert_eq!(r["algebra"]["dimension"], 67);
    assert_eq!(r["checks"]["iota"]["pd_right_target"], "finite:3");
    assert!(r["checks"]["uniformization"]
        .as_object()
        .unwrap()
        .values()
        .all(|v| v == true));
    assert!(dir.path().join("lambda_10_1_star.bqa").exists());
}

#[test]
fn oracle_compare_and_formats() {
    let dir = setup();
    let r = json(&run(dir.path(), &["oracle-compare", "e1.bqa"]));
    assert_eq!(r["checks"]["all_agree"], true);
    let md = run(dir.path(), &["analyze", "e1.bqa", "--format", "md"]);
    assert!(String::from_utf8(md.stdout)
        .unwrap()
        .starts_with("# quiverdim analyze"));
    let r = json(&run(dir.path(), &["analyze", "e1.bqa", "--field", "F7"]));
    assert_eq!(r["run"]["field"], "F7");
    assert_eq!(r["bounds"]["fpd_upper_bound"], "finite:2");
    let out = run(dir.path(), &["analyze", "e1.bqa", "-o", "report.json"]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(dir.path().join("report.json").exists());
}
