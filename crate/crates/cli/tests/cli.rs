use std::process::{Command, Output};

fn reflect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflect"))
        .args(args)
        .env_remove("REFLECT_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_k_is_deterministic_and_supported_on_sigma() {
    let args = ["build-k", "--n", "2", "--eps", "0", "--l", "2", "--x", "2"];
    let a = reflect(&args);
    let b = reflect(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dump: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = dump["labels"]["rows"].as_array().unwrap();
    let cols = dump["labels"]["cols"].as_array().unwrap();
    let entries = dump["entries"].as_array().unwrap();
    assert_eq!(entries.len(), cols.len());
    for e in entries {
        let (r, c) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        let src: Vec<u64> = cols[c][0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let dst: Vec<u64> = rows[r][0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        // σ for eps = 0 swaps the entries inside each pair (a_1 a_2)(a_3 a_4)
        assert_eq!(dst, vec![src[1], src[0], src[3], src[2]]);
    }
}

#[test]
fn dump_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        let o = reflect(&["build-r", "--l", "2", "--m", "1", "--x", "5", "--y", "2/7", "-o", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let parsed = reflect_core::dump::MatrixDump::from_json(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(parsed.to_json() + "\n", String::from_utf8(a).unwrap());
}

#[test]
fn verify_re_reports_scalar() {
    let o = reflect(&["verify-re", "--n", "2", "--l", "1", "--m", "1", "--x", "2", "--y", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("PASS reflection_equation"));
    assert!(out.contains("\"scalar\":\"1\""));
}

#[test]
fn verify_props_bw_passes() {
    let o = reflect(&["verify-props", "--suite", "bw", "--n", "2", "--lmax", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().count() > 10);
    assert!(out.lines().all(|l| l.starts_with("PASS bw")));
}

#[test]
fn reports_written_as_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_reflect"))
        .args(["verify-props", "--suite", "rank-c", "--lmax", "1"])
        .env("REFLECT_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify-props.json")).unwrap()).unwrap();
    let first = &json.as_array().unwrap()[0];
    assert_eq!(first["proposition"], "rank_c");
    assert_eq!(first["pass"], true);
    let csv_path = dir.path().join("r.csv");
    let o = reflect(&["probe-irreducible", "--format", "csv", "-o", csv_path.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(csv_path).unwrap();
    assert!(csv.starts_with("proposition,context,expected,computed,pass\n"));
    assert_eq!(csv.lines().count(), 17);
}

#[test]
fn seeded_points_are_reproducible() {
    let args = ["verify-ybe", "--kind", "rstarrr", "--random-points", "2", "--seed", "11"];
    let a = reflect(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, reflect(&args).stdout);
    assert_eq!(stdout(&a).lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(reflect(&["build-k", "--gamma", "1"]).status.code(), Some(3));
    assert_eq!(reflect(&["build-k", "--n", "1"]).status.code(), Some(3));
    assert_eq!(reflect(&["build-r", "--x", "0"]).status.code(), Some(3));
    assert_eq!(reflect(&["verify-ybe", "--random-points", "1"]).status.code(), Some(3));
    assert_eq!(reflect(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(reflect(&["q0", "--eps", "1"]).status.code(), Some(0));
    // gamma = (1, q^2) meets the existence condition, but K then has
    // negative powers of q and no q -> 0 limit
    assert_eq!(reflect(&["q0", "--gamma", "1,q^2"]).status.code(), Some(1));
}
