use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_totfree"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("totfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float in report: {n}"),
        Value::Array(items) => items.iter().for_each(assert_no_floats),
        Value::Object(map) => map.values().for_each(assert_no_floats),
        _ => {}
    }
}

fn braid4() -> PathBuf {
    let out = run(&["generate", "braid", "4"]);
    assert!(out.status.success());
    scratch("braid4.txt", &String::from_utf8(out.stdout).unwrap())
}

const PRODUCT: &str =
    "dim 3\nhyperplane 1 0 0\nhyperplane 0 1 0\nhyperplane 1 -1 0\nhyperplane 0 0 1\n";
const TRIANGLE: &str = "dim 2\nhyperplane 1 0\nhyperplane 0 1\nhyperplane 1 -1\n";

#[test]
fn strict_braid_exits_three_with_k0() {
    let path = braid4();
    let out = run(&["totally-free", "--strict", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["command"], "totally-free");
    assert_eq!(v["result"]["verdict"], "NotTotallyFree");
    assert_eq!(v["result"]["witness"]["k0"], 9);
    assert_eq!(
        v["result"]["witness"]["certificate"]["theorem"],
        "LMP2>GMP2max"
    );
    assert_eq!(v["result"]["witness"]["certificate_verified"], true);
    assert_no_floats(&v);

    let out = run(&["totally-free", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn product_is_totally_free() {
    let path = scratch("product.txt", PRODUCT);
    let out = run(&["totally-free", "--json", "--strict", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "TotallyFree");
    assert_eq!(v["result"]["factor_ranks"], serde_json::json!([2, 1]));
    assert_eq!(
        v["input_summary"],
        serde_json::json!({"dim": 3, "n": 4, "rank": 3})
    );
}

#[test]
fn empty_body_has_no_factors() {
    let path = scratch("empty.txt", "dim 3\n");
    let v = json(&run(&["totally-free", "--json", path.to_str().unwrap()]));
    assert_eq!(v["result"]["verdict"], "TotallyFree");
    assert_eq!(v["result"]["factor_ranks"], serde_json::json!([]));
}

#[test]
fn analyze_reports_census() {
    let path = braid4();
    let out = run(&["analyze", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["input_summary"]["rank"], 3);
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["rank2_flats"]["count"], 7);
    assert_eq!(v["result"]["verdict"]["verdict"], "NotTotallyFree");

    let path = scratch(
        "boolean3.txt",
        "dim 3\nhyperplane 1 0 0\nhyperplane 0 1 0\nhyperplane 0 0 1\n",
    );
    let v = json(&run(&["analyze", "--json", path.to_str().unwrap()]));
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["verdict"]["verdict"], "TotallyFree");
}

#[test]
fn duplicate_hyperplane_names_both_lines() {
    let path = scratch(
        "dup.txt",
        "dim 2\nhyperplane 1 0\nhyperplane 0 1\nhyperplane 2 0\n",
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["totally-free", "/nonexistent/arrangement.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exponents_of_triangle_and_boolean() {
    let path = scratch("tri.txt", TRIANGLE);
    let v = json(&run(&[
        "exponents",
        "--json",
        "--mult",
        "2,2,2",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["exponents"], serde_json::json!([3, 3]));
    let saito = &v["result"]["factors"][0]["saito"];
    assert_eq!(saito["verified"], true);
    assert_no_floats(&v);

    let path = scratch(
        "bool.txt",
        "dim 3\nhyperplane 1 0 0 mult 3\nhyperplane 0 1 0 mult 1\nhyperplane 0 0 1 mult 2\n",
    );
    let v = json(&run(&["exponents", "--json", path.to_str().unwrap()]));
    assert_eq!(v["result"]["exponents"], serde_json::json!([1, 2, 3]));

    let v = json(&run(&["exponents", "--json", braid4().to_str().unwrap()]));
    assert_eq!(v["result"]["verdict"], "NotTotallyFree");
    assert!(v["result"].get("exponents").is_none());
}

#[test]
fn lmp2_outcomes() {
    let path = braid4();
    let p = path.to_str().unwrap();
    let v = json(&run(&["lmp2", "--json", p]));
    assert_eq!(v["result"]["lmp2"], 11);
    assert_eq!(v["result"]["gmp2_max"], 12);
    assert_eq!(v["result"]["outcome"], "inconclusive");

    let v = json(&run(&["lmp2", "--json", "--mult", "1,9,9,9,9,1", p]));
    assert!(v["result"]["lmp2"].as_u64().unwrap() >= 486);
    assert_eq!(v["result"]["gmp2_max"], 481);
    assert_eq!(v["result"]["certificate"]["theorem"], "LMP2>GMP2max");
    assert_no_floats(&v);

    let tri = scratch("tri2.txt", TRIANGLE);
    let v = json(&run(&["lmp2", "--json", tri.to_str().unwrap()]));
    assert_eq!(v["result"]["lmp2"], 2);
    assert_eq!(v["result"]["outcome"], "inconclusive");
}

#[test]
fn witness_on_braids() {
    let v = json(&run(&["witness", "--json", braid4().to_str().unwrap()]));
    let r = &v["result"];
    assert_eq!(r["circuit_by_induction"].as_array().unwrap().len(), 4);
    assert_eq!(r["circuit_by_search"].as_array().unwrap().len(), 4);
    assert_eq!(r["circuit_check"]["gap"], "2/3");
    assert_eq!(r["k0"], 9);
    assert_eq!(r["multiplicity"].as_array().unwrap().len(), 6);

    let out = run(&["generate", "braid", "5"]);
    let s5 = scratch("braid5.txt", &String::from_utf8(out.stdout).unwrap());
    let v = json(&run(&["witness", "--json", s5.to_str().unwrap()]));
    assert_eq!(
        v["result"]["circuit_by_induction"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    assert_eq!(v["result"]["circuit_check"]["gap"], "5/8");
    assert_eq!(v["result"]["k0"], 31);
    assert_no_floats(&v);

    let b3 = scratch(
        "b3.txt",
        "dim 3\nhyperplane 1 0 0\nhyperplane 0 1 0\nhyperplane 0 0 1\n",
    );
    let out = run(&["witness", b3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("no irreducible factor of rank >= 3"));
}

#[test]
fn generate_round_trips_and_is_seeded() {
    let first = run(&["generate", "product", "(braid 3)", "(boolean 1)"]);
    assert!(first.status.success());
    let text = String::from_utf8(first.stdout).unwrap();
    let parsed = totfree::arrangement::parse_arrangement(&text).unwrap();
    assert_eq!((parsed.arrangement.dim(), parsed.arrangement.len()), (4, 4));

    let a = run(&["generate", "generic", "6", "3", "--seed", "42"]);
    let b = run(&["generate", "generic", "6", "3", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let reparsed = totfree::arrangement::parse_arrangement(&text)
        .unwrap()
        .arrangement;
    let direct = totfree::cli::generate::generic(6, 3, 42).unwrap();
    assert_eq!(reparsed, direct);

    assert_eq!(
        run(&["generate", "generic", "6", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["generate", "hexagon", "3"]).status.code(), Some(1));
}

#[test]
fn saito_verify_examples() {
    let xy = scratch("xy.txt", "dim 2\nhyperplane 1 0\nhyperplane 0 1\n");
    let good = scratch("good.basis", "component 1: x1\n\ncomponent 2: x2\n");
    let v = json(&run(&[
        "saito-verify",
        "--json",
        "--basis",
        good.to_str().unwrap(),
        xy.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["verified"], true);

    let bad = scratch("bad.basis", "component 1: x1\n\ncomponent 1: x1\n");
    let v = json(&run(&[
        "saito-verify",
        "--json",
        "--basis",
        bad.to_str().unwrap(),
        xy.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["verified"], false);
    assert_eq!(v["result"]["determinant"], "0");

    let tri = scratch("tri3.txt", TRIANGLE);
    let basis = scratch(
        "tri.basis",
        "# euler\ncomponent 1: x1\ncomponent 2: x2\n\ncomponent 1: x1^2\ncomponent 2: x2^2\n",
    );
    let v = json(&run(&[
        "saito-verify",
        "--json",
        "--basis",
        basis.to_str().unwrap(),
        tri.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["verified"], true);
    assert_eq!(v["result"]["determinant"], "-x1^2*x2 + x1*x2^2");
    assert_eq!(v["result"]["constant"], "-1/1");

    let malformed = scratch("malformed.basis", "component 1 x1\n");
    let out = run(&[
        "saito-verify",
        "--basis",
        malformed.to_str().unwrap(),
        tri.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn human_output_is_aligned_text() {
    let path = scratch("product2.txt", PRODUCT);
    let out = run(&["totally-free", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict             TotallyFree"), "{text}");
    assert!(text.contains("criterion           product of rank <= 2 factors"));
}
