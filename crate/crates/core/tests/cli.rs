use serde_json::Value;

use qloop::cli::run;
use qloop::ymono::poly_from_json;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("qloop").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let (code, out, err) = call(&v);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn verify_l1_succeeds() {
    let (code, out, _) = call(&["verify", "l1", "--type", "A2"]);
    assert_eq!(code, 0);
    assert!(out.contains("7/7 cases pass"));
    let v = json(&["verify", "l1", "--type", "A2"]);
    assert_eq!(v["all_pass"], Value::Bool(true));
    let e = &v["entries"][0];
    assert!(e["case"].is_string() && e["pass"].is_boolean());
    assert_eq!(poly_from_json(&e["lhs"]).unwrap(), poly_from_json(&e["rhs"]).unwrap());
}

#[test]
fn d4_fundamental_as_json() {
    let v = json(&["qchar", "fundamental", "--type", "D4", "--node", "3", "--shift", "0"]);
    let p = poly_from_json(&v).unwrap();
    assert_eq!(p.len(), 28);
    assert_eq!(p.coefficient_sum(), 29.into());
    let (_, text, _) = call(&["qchar", "fundamental", "--type", "D4", "--node", "3", "--shift", "0"]);
    assert!(text.contains("28 monomials, dimension 29"));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["qchar", "fundamental", "--type", "F4", "--node", "1", "--shift", "0"],
        vec!["qchar", "fundamental", "--type", "A3", "--node", "1", "--shift", "1"],
        vec!["qchar", "fundamental", "--type", "A3", "--node", "7", "--shift", "0"],
        vec!["sl2", "factor", "--monomial", "not json"],
        vec!["sl2", "ybe", "--u", "4/9", "--v", "1/2", "--q", "2/3"],
        vec!["rep", "euler", "--type", "A2", "--beta", "1,1", "--nu", "1"],
        vec!["cluster", "fpoly", "--type", "A2", "--beta", "2,2"],
        vec!["qchar", "factor", "--type", "A3", "--monomial", "[[1,4,1]]"],
        vec!["nonsense"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_with_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn cap_exceeded_is_a_failure() {
    let (code, _, err) = call(&["cluster", "enumerate", "--type", "A2", "--level", "5", "--cap", "50"]);
    assert_eq!(code, 1);
    assert!(err.contains("cap"));
}

#[test]
fn cluster_enumeration_json_lists_ids_and_a_table() {
    let v = json(&["cluster", "enumerate", "--type", "A3", "--level", "1"]);
    assert_eq!(v["clusters"].as_array().unwrap().len(), 14);
    let table = v["variables"].as_object().unwrap();
    assert_eq!(table.len(), 9);
    for entry in table.values() {
        assert!(entry["denominator"].is_array() && entry["g"].is_array() && entry["F"]["terms"].is_array());
    }
}

#[test]
fn remaining_commands_run() {
    for args in [
        vec!["sl2", "kr", "--k", "3", "--s", "-2"],
        vec!["sl2", "factor", "--monomial", "[[1,0,1],[1,2,1],[1,6,1]]"],
        vec!["sl2", "ybe", "--u", "3/2", "--v", "-5/7", "--q", "2/3"],
        vec!["rep", "roots", "--type", "D4"],
        vec!["rep", "euler", "--type", "D4", "--beta", "1,1,2,1", "--nu", "0,0,1,0"],
        vec!["qchar", "standard", "--type", "A2", "--w", "[[1,0,1],[2,1,1]]"],
        vec!["qchar", "kr", "--type", "A2", "--node", "1", "--k", "2", "--shift", "0"],
        vec!["qchar", "trunc", "--type", "A2", "--monomial", "[[1,0,2],[2,3,1]]"],
        vec!["qchar", "factor", "--type", "A3", "--monomial", "[[1,0,1],[2,3,1],[3,0,1]]"],
        vec!["cluster", "fpoly", "--type", "A3", "--beta", "1,1,1"],
        vec!["cluster", "fpoly", "--type", "A2", "--level", "2", "--beta", "1,1,0,0"],
        vec!["cluster", "classify", "--type", "A2", "--level", "2"],
        vec!["verify", "tsystem", "--type", "A2", "--k-max", "2"],
        vec!["verify", "iota", "--type", "A2", "--level", "2"],
    ] {
        for format in ["text", "json", "latex"] {
            let mut a = args.clone();
            a.extend(["--format", format]);
            let (code, out, err) = call(&a);
            assert_eq!(code, 0, "{a:?}: {err}");
            assert!(!out.trim().is_empty());
            if format == "json" {
                serde_json::from_str::<Value>(&out).unwrap();
            }
        }
    }
}

#[test]
fn euler_report_carries_the_interpolation_data() {
    let v = json(&["rep", "euler", "--type", "D4", "--beta", "1,1,2,1", "--nu", "0,0,1,0"]);
    assert_eq!(v["euler"], serde_json::json!(2));
    let primes = v["primes"].as_array().unwrap();
    let counts = v["counts"].as_array().unwrap();
    for (p, c) in primes.iter().zip(counts) {
        assert_eq!(c.as_u64().unwrap(), p.as_u64().unwrap() + 1);
    }
}

#[test]
fn latex_output_for_polynomials() {
    let (_, out, _) = call(&["sl2", "kr", "--k", "1", "--s", "0", "--format", "latex"]);
    assert_eq!(out.trim(), "Y_{1,0} + Y_{1,2}^{-1}");
}
