//! End-to-end runs of the command line: exit codes, schemas, cache.

use std::path::Path;

use jsonschema::JSONSchema;
use serde_json::{json, Value};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ptl(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ptl").chain(args.iter().copied());
    let code = ptl::cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn ptl_cached(dir: &Path, args: &[&str]) -> Run {
    let mut v = vec!["--cache-dir", dir.to_str().unwrap()];
    v.extend_from_slice(args);
    ptl(&v)
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/v1").join(format!("{name}.schema.json"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&v).unwrap()
}

fn assert_valid(name: &str, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{name}: not JSON ({e}): {text}"));
    let s = schema(name);
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{name}: schema violations {msgs:?} in {text}");
    }
    v
}

#[test]
fn typed_solve_examples() {
    let r = ptl(&["--no-cache", "typed", "solve", "--n", "2", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = assert_valid("typed-solve", &r.out);
    assert_eq!(v["family"], "D");
    assert_eq!(v["n"], 2);
    assert_eq!(v["display_series"], "1");

    let r = ptl(&["--no-cache", "typed", "solve", "--n-max", "8", "--format", "json"]);
    let v = assert_valid("typed-solve", &r.out);
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[6]["dual_weights"]["-20"], 2);

    let r = ptl(&["--no-cache", "typed", "solve", "--n-max", "6", "--format", "latex"]);
    assert!(r.out.contains(r"$h(\mathsf{HP}_0(\mathcal{O}_{{\Bbb C}^{2n}}^{D_n});t^{\frac{1}{4}})$"));
    assert!(r.out.contains("6 & $1 + t + 2t^2 + 2t^3$ \\\\"));
    assert_eq!(r.out.lines().filter(|l| l.contains(" & $") && !l.starts_with("$n$")).count(), 5);

    let r = ptl(&["--no-cache", "typed", "solve", "--n", "8", "--weight", "-20", "--format", "csv"]);
    assert_eq!(r.out, "n,dual_weight,dim\n8,-20,2\n");
}

#[test]
fn counts_and_compare() {
    let r = ptl(&["counts", "multipartitions", "--n", "5", "--i", "1"]);
    assert_eq!((r.code, r.out.as_str()), (0, "7\n"));
    let r = ptl(&["counts", "p", "--n-max", "6", "--i", "2", "--format", "json"]);
    assert_valid("counts", &r.out);
    let r = ptl(&["counts", "hh0", "--family", "D", "--n", "6", "--brute", "--format", "json"]);
    let v = assert_valid("counts", &r.out);
    assert_eq!(v["value"], 6);
    let r = ptl(&["counts", "p-prime", "--n", "8", "--i", "5", "--multipartition", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("n,i,reading,value\n8,5,multipartition,"));

    let r = ptl(&["--no-cache", "compare", "hp0-hh0", "--family", "D", "--n-max", "6", "--format", "json"]);
    let v = assert_valid("compare", &r.out);
    assert_eq!(v["verdict"], "equal");
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["hp0"], row["hh0"]);
    }
    let r = ptl(&["--no-cache", "compare", "hp0-hh0", "--family", "D", "--n-max", "8", "--format", "json"]);
    assert_eq!(assert_valid("compare", &r.out)["verdict"], "proper");
}

#[test]
fn other_json_outputs_match_schemas() {
    let r = ptl(&["--no-cache", "hp0", "brute", "--group", "hyperoctahedral", "--n", "2", "--max-degree", "8", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = assert_valid("hp0-table", &r.out);
    assert_eq!(v["dims"], json!({"0":1,"1":0,"2":0,"3":0,"4":1,"5":0,"6":0,"7":0,"8":0}));

    let r = ptl(&["hp0", "aminus", "--n", "2", "--max-degree", "4", "--format", "json"]);
    assert_eq!(assert_valid("hp0-aminus", &r.out)["pass"], true);

    let r = ptl(&["--no-cache", "typed", "families", "--n", "8", "--format", "json"]);
    assert_eq!(assert_valid("typed-families", &r.out)["extra_weights"], json!([-20]));

    for args in [
        vec!["strata", "symmetric-power", "--n", "4", "--format", "json"],
        vec!["strata", "kleinian", "--n", "3", "--m", "2", "--format", "json"],
        vec!["--no-cache", "strata", "type-d", "--n", "5", "--format", "json"],
    ] {
        let r = ptl(&args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.err);
        assert_valid("strata", &r.out);
    }

    let r = ptl(&["series", "burgers", "--x0", "2", "--order", "6", "--format", "json"]);
    assert_eq!(assert_valid("series-burgers", &r.out)["residual"], "0");
    let r = ptl(&["series", "burgers", "--h0", "0,4,3,-1/2", "--order", "5", "--t-order", "3", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(assert_valid("series-burgers", &r.out)["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(ptl(&["--help"]).code, 0);
    assert_eq!(ptl(&["--version"]).code, 0);
    assert_eq!(ptl(&["typed", "solve", "--n", "2", "--bogus"]).code, 2);
    assert_eq!(ptl(&["typed", "solve"]).code, 2);
    assert_eq!(ptl(&["--format", "xml", "counts", "p", "--n", "3", "--i", "1"]).code, 2);
    assert_eq!(ptl(&["--prime", "12", "cache", "path"]).code, 2);
    assert_eq!(ptl(&["--workers", "0", "cache", "path"]).code, 2);
    assert_eq!(ptl(&["--no-cache", "typed", "solve", "--n", "4", "--weight", "-2"]).code, 2);
    assert_eq!(ptl(&["counts", "p", "--n", "3", "--i", "5"]).code, 2);
    assert_eq!(ptl(&["series", "burgers", "--x0", "0"]).code, 2);
    assert_eq!(ptl(&["strata", "kleinian", "--n", "2", "--m", "1", "--format", "latex"]).code, 2);

    let r = ptl(&[
        "--no-cache", "hp0", "brute", "--group", "hyperoctahedral", "--n", "2", "--max-degree", "12",
        "--max-columns", "12", "--format", "json",
    ]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("guardrail"));
    let v = assert_valid("hp0-table", &r.out);
    assert!(v["truncated"]["reason"].as_str().unwrap().contains("limit is 12"));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["typed", "solve", "--n-max", "9", "--format", "json"],
        vec!["typed", "solve", "--n-max", "9", "--format", "latex"],
        vec!["typed", "solve", "--n", "8", "--weight", "-20"],
        vec!["typed", "families", "--n", "8"],
        vec!["hp0", "brute", "--group", "demihyperoctahedral", "--n", "3", "--max-degree", "8", "--format", "csv"],
        vec!["compare", "hp0-hh0", "--family", "D", "--n-max", "8"],
        vec!["strata", "type-d", "--n", "6", "--format", "json"],
    ];
    let cold: Vec<String> = commands.iter().map(|c| ptl_cached(dir.path(), c).out).collect();
    assert!(ptl_cached(dir.path(), &["cache", "list"]).out.lines().count() > 1);
    let warm: Vec<String> = commands.iter().map(|c| ptl_cached(dir.path(), c).out).collect();
    assert_eq!(cold, warm);
    let r = ptl_cached(dir.path(), &["cache", "list", "--format", "json"]);
    assert_valid("cache-list", &r.out);
    let r = ptl_cached(dir.path(), &["cache", "verify"]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn corrupt_cache_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["typed", "solve", "--n", "8", "--format", "json"];
    let cold = ptl_cached(dir.path(), &args);
    assert_eq!(cold.code, 0);

    // A consistent checksum over a wrong kernel: caught by re-verification.
    let typed = dir.path().join("typed");
    let mut tampered = false;
    for entry in std::fs::read_dir(&typed).unwrap() {
        let path = entry.unwrap().path();
        let mut rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        if rec["key"]["len"] != 3 {
            continue;
        }
        let kernel = rec["payload"]["kernel"].as_array_mut().unwrap();
        let first = kernel[0].as_array_mut().unwrap();
        first[0][1] = json!("12345");
        let payload = rec["payload"].to_string();
        rec["checksum"] = json!(sha_hex(payload.as_bytes()));
        std::fs::write(&path, rec.to_string()).unwrap();
        tampered = true;
    }
    assert!(tampered);
    let r = ptl_cached(dir.path(), &args);
    assert_eq!(r.code, 4, "{}", r.err);
    assert!(r.err.contains("typed component (n=8, len=3)"), "{}", r.err);

    // A broken checksum.
    let r = ptl_cached(dir.path(), &["cache", "clear"]);
    assert_eq!(r.code, 0);
    ptl_cached(dir.path(), &args);
    let path = std::fs::read_dir(&typed).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"rows\":", "\"rows\":1", 1)).unwrap();
    assert_eq!(ptl_cached(dir.path(), &args).code, 4);
    assert_eq!(ptl_cached(dir.path(), &["cache", "verify"]).code, 4);
    assert_eq!(ptl_cached(dir.path(), &["cache", "clear"]).code, 0);
    assert_eq!(ptl_cached(dir.path(), &args).out, cold.out);
}

fn sha_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
