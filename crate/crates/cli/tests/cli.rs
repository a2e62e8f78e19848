use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use modrep_cli::ResultEnvelope;

const SL2_3: &str = r#"{"family": "sl2", "p": 3, "n": 1}"#;
const S3: &str = r#"{"modulus": 3, "dim": 2, "generators": [[[1, 1], [0, 1]], [[-1, 0], [0, 1]]]}"#;

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep")).env_remove("MODREP_CACHE_DIR").args(args).output().unwrap()
}

fn spec_file(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn envelope(out: &Output) -> ResultEnvelope {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ints(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn chartable_of_sl2_3() {
    let dir = TempDir::new().unwrap();
    let env = envelope(&modrep(&["chartable", "--spec", &spec_file(&dir, "g.json", SL2_3)]));
    assert_eq!(env.command, "chartable");
    assert_eq!(env.input_digest.len(), 64);
    let p = &env.payload;
    assert_eq!(p["degrees"], json!([1, 1, 1, 2, 2, 2, 3]));
    assert_eq!(p["group"]["order"], json!(24));
    let values = p["values"].as_array().unwrap();
    assert_eq!(values.len(), 7);
    for (row, d) in values.iter().zip(p["degrees"].as_array().unwrap()) {
        assert_eq!(row.as_array().unwrap().len(), 7);
        // class 0 is the identity
        assert_eq!(row[0], json!({"order": 1, "coords": [d]}));
    }
}

#[test]
fn trivial_group_has_table_one() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "g.json", r#"{"modulus": 2, "dim": 1, "generators": [[[1]]]}"#);
    let env = envelope(&modrep(&["chartable", "--spec", &spec]));
    assert_eq!(env.payload["values"], json!([[{"order": 1, "coords": [1]}]]));
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = spec_file(&dir, "bad.json", r#"{"family": "sl2", "p": 3,"#);
    assert_eq!(modrep(&["chartable", "--spec", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(modrep(&["chartable", "--spec", missing.to_str().unwrap()]).status.code(), Some(2));
    let good = spec_file(&dir, "g.json", S3);
    assert_eq!(modrep(&["cartan", "--spec", &good]).status.code(), Some(2));
    assert_eq!(modrep(&["cartan", "--spec", &good, "--p", "4"]).status.code(), Some(2));
    assert_eq!(modrep(&["tower", "--depth", "1", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(modrep(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cartan_of_s3() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "s3.json", S3);
    let p3 = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "3"])).payload;
    assert_eq!(ints(&p3["decomposition"]), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    assert_eq!(ints(&p3["cartan"]), vec![vec![2, 1], vec![1, 2]]);
    assert_eq!(p3["determinant"], json!(3));
    assert_eq!(p3["blocks"], json!([{"simples": [0, 1], "ordinary": [0, 1, 2]}]));
    // 5 ∤ |S₃|: every block is a defect-zero block and C is the identity
    let p5 = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "5"])).payload;
    assert_eq!(ints(&p5["cartan"]), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(p5["blocks"].as_array().unwrap().len(), 3);
}

#[test]
fn brauer_decomp_and_blocks_of_sl2_3() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "g.json", SL2_3);
    let bt = envelope(&modrep(&["brauertable", "--spec", &spec, "--p", "3"])).payload;
    assert_eq!(bt["dims"], json!([1, 2, 3]));
    assert_eq!(bt["field"]["degree"], json!(2));
    assert_eq!(bt["p_regular_classes"].as_array().unwrap().len(), 3);
    let d = envelope(&modrep(&["decomp", "--spec", &spec, "--p", "3"])).payload;
    assert_eq!(ints(&d["decomposition"]).len(), 7);
    let b = envelope(&modrep(&["blocks", "--spec", &spec, "--p", "3"])).payload;
    assert_eq!(b["block_of_simple"], json!([0, 1, 2]));
    // 𝔽₃ already splits SL₂(𝔽₃) in characteristic 3
    let c9 = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "3"])).payload;
    let c3 = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "3", "--field-degree", "1"])).payload;
    assert_eq!(c3["cartan"], c9["cartan"]);
    // but 𝔽₂ does not split C₃: its 2-dimensional simple is not absolutely irreducible
    let cyclic = spec_file(&dir, "c3.json", r#"{"modulus": 2, "dim": 2, "generators": [[[0, 1], [1, 1]]]}"#);
    let small = modrep(&["cartan", "--spec", &cyclic, "--p", "2", "--field-degree", "1"]);
    assert_eq!(small.status.code(), Some(3), "{}", String::from_utf8_lossy(&small.stderr));
    let split = envelope(&modrep(&["cartan", "--spec", &cyclic, "--p", "2"])).payload;
    assert_eq!(split["field"]["degree"], json!(2));
    assert_eq!(ints(&split["cartan"]), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "g.json", SL2_3);
    let cache = dir.path().join("cache");
    let args = ["cartan", "--spec", &spec, "--p", "3", "--cache-dir", cache.to_str().unwrap()];
    let first = envelope(&modrep(&args));
    let second = envelope(&modrep(&args));
    assert!(!first.timing.cache_hit);
    assert!(second.timing.cache_hit);
    assert_eq!(first.payload_bytes(), second.payload_bytes());
    assert_eq!(first.input_digest, second.input_digest);
    // uncached and with another meataxe seed
    let fresh = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "3"]));
    assert_eq!(fresh.payload_bytes(), first.payload_bytes());
    let reseeded = envelope(&modrep(&["cartan", "--spec", &spec, "--p", "3", "--seed", "11"]));
    assert_ne!(reseeded.input_digest, first.input_digest);
    assert_eq!(reseeded.payload_bytes(), first.payload_bytes());
}

#[test]
fn corrupted_cache_is_recomputed() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "g.json", S3);
    let cache = dir.path().join("cache");
    let args = ["cartan", "--spec", &spec, "--p", "3", "--cache-dir", cache.to_str().unwrap()];
    let first = envelope(&modrep(&args));
    let entry = cache.join(format!("{}.json", first.input_digest));
    assert!(entry.exists());
    std::fs::write(&entry, "{\"payload\": [[2, 1").unwrap();
    let again = envelope(&modrep(&args));
    assert!(!again.timing.cache_hit);
    assert_eq!(again.payload_bytes(), first.payload_bytes());
    // and the entry was rewritten
    assert!(envelope(&modrep(&args)).timing.cache_hit);
}

#[test]
fn cache_dir_from_environment_and_json_out() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "g.json", S3);
    let cache = dir.path().join("env-cache");
    let out_file = dir.path().join("out.json");
    let status = Command::new(env!("CARGO_BIN_EXE_modrep"))
        .env("MODREP_CACHE_DIR", &cache)
        .args(["chartable", "--spec", &spec, "--json-out", out_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let env: ResultEnvelope = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(env.payload["degrees"], json!([1, 1, 2]));
    assert!(cache_has(&cache, &env.input_digest));
}

fn cache_has(dir: &Path, digest: &str) -> bool {
    dir.join(format!("{digest}.json")).exists()
}

#[test]
fn tower_outputs() {
    let just_c1 = envelope(&modrep(&["tower", "--n-max", "1"])).payload;
    assert_eq!(just_c1["cartans"].as_array().unwrap().len(), 1);
    assert_eq!(just_c1["cartans"][0]["determinant"], json!(9));

    let full = envelope(&modrep(&["tower", "--depth", "2", "--n-max", "3"])).payload;
    let perm: Vec<usize> = serde_json::from_value(full["reference_permutation"].clone()).unwrap();
    assert_eq!(perm.len(), 3);
    assert_eq!(full["cartans"][2]["determinant"], json!(3i64.pow(16)));
    assert_eq!(full["level_orders"], json!([24, 648]));

    let s3 = envelope(&modrep(&["tower", "--family", "s3", "--n-max", "2"])).payload;
    assert_eq!(ints(&s3["cartans"][1]["matrix"]), vec![vec![2, 1], vec![1, 2]]);
    assert_eq!(s3["reference_permutation"], Value::Null);
}

#[test]
fn determinants_beyond_2_pow_53_are_strings() {
    let env = envelope(&modrep(&["tower", "--n-max", "6"])).payload;
    // det C₆ = 3³⁷ > 2⁵³
    assert_eq!(env["cartans"][5]["determinant"], json!(num_bigint::BigInt::from(3).pow(37).to_string()));
}

#[test]
fn non_uniform_tower_exits_3() {
    let out = modrep(&["tower", "--p", "2", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sections 1 and 2"));
}

#[test]
fn verify_reports_entry_level_diff() {
    let ok = modrep(&["verify-paper-example"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).ends_with("PASS\n"));

    let bad = modrep(&["verify-paper-example", "--inject", "c2,0,1,-1"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.contains("entry (0, 1): expected 17, computed 18"), "{text}");
    assert_eq!(modrep(&["verify-paper-example", "--inject", "c2,5,1,-1"]).status.code(), Some(2));
}
