use contractad::cli::{parse_bound, run, Outcome};

fn go(args: &str) -> Outcome {
    run(std::iter::once("contractad").chain(args.split_whitespace()))
}

fn json(args: &str) -> serde_json::Value {
    let o = go(&format!("{args} --format json"));
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn dims_of_gclie_on_c4() {
    let o = go("dims --preset gcLie --graph C4 --order graphpermlex");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().last(), Some("3"));
    let j = json("dims --preset gcLie --graph C4 --order graphpermlex");
    assert_eq!(j["schema"], "1");
    assert_eq!(j["command"], "dims");
    assert_eq!(j["results"]["dimension"], 3);
    assert_eq!(j["inputs"]["order"], "graphpermlex");
    assert_eq!(j["certificates"]["normal_equals_dimension"], true);
}

#[test]
fn pbw_check_lists_all_components() {
    let j = json("pbw-check --preset gcLie --order graphpermlex");
    assert_eq!(j["results"].as_array().unwrap().len(), 38);
    let o = go("pbw-check --preset gcLie --order graphpermlex");
    let status = o.stdout.lines().last().unwrap();
    assert_eq!(o.code, if status == "PASS" { 0 } else { 1 });
    assert_eq!(j["status"], status);
}

#[test]
fn koszul_euler_flags_rst() {
    let o = go("koszul-euler --dual RST --graph C4");
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL"));
    let j = json("koszul-euler --dual RST --graph C4");
    assert_eq!(j["results"]["euler"], -4);
    assert_eq!(j["results"]["dual_dimension"], 4);
    let ok = go("koszul-euler --dual gcCom --graph K4");
    assert_eq!(ok.code, 0);
    assert!(ok.stdout.ends_with("PASS\n"));
    assert_eq!(go("koszul-euler --dual gcLie --graph C4 --primal model").code, 2);
}

#[test]
fn orlik_solomon_verbs() {
    let j = json("os hilbert --graph K4");
    assert_eq!(j["results"], serde_json::json!([1, 6, 11, 6]));
    let j = json("os nbc --graph edges:1-2,1-4,2-3,2-4,3-4 --degree 3");
    assert_eq!(j["results"].as_array().unwrap().len(), 4);
    let o = go("pairing --graph K4");
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("PASS\n"));
    assert_eq!(go("os pairing --graph C5").code, 0);
    assert_eq!(go("os nbc --graph K3").code, 2);
    assert_eq!(go("os nbc --graph P3 --degree 1 --edge-order 2-3,1-2").code, 0);
    assert_eq!(go("os nbc --graph P3 --degree 1 --edge-order 1-3").code, 2);
}

#[test]
fn bar_homology_table() {
    let j = json("bar-homology --preset gcCom --graph C4");
    assert_eq!(j["results"]["ranks"], serde_json::json!([3, 0, 0]));
    assert_eq!(j["results"]["dims"], serde_json::json!([10, 8, 1]));
    assert_eq!(go("bar-homology --preset gcGerst --graph K3").code, 2);
}

#[test]
fn graphs_and_normal_monomials() {
    let j = json("graphs --n 4");
    assert_eq!(j["results"].as_array().unwrap().len(), 6);
    let a = go("graphs --n 5 --sample 7 --seed 42");
    let b = go("graphs --n 5 --sample 7 --seed 42");
    assert_eq!(a, b);
    assert_ne!(a.stdout, go("graphs --n 5 --sample 7 --seed 43").stdout);
    let j = json("normal-monomials --preset gcGerst --graph K3");
    assert_eq!(j["results"]["count"], 6);
    let by: Vec<u64> = j["results"]["by_degree"].as_array().unwrap().iter().map(|x| x["count"].as_u64().unwrap()).collect();
    assert_eq!(by, vec![1, 3, 2]);
}

#[test]
fn gb_uses_the_bound_flag() {
    let j = json("gb --preset gcLie --bound 3,2");
    assert_eq!(j["inputs"]["bound"], serde_json::json!([3, 2]));
    assert!(!j["results"].as_array().unwrap().is_empty());
    assert_eq!(parse_bound(Some("5,4")).unwrap(), (5, 4));
    assert!(parse_bound(Some("5")).is_err());
    assert_eq!(go("gb --preset gcLie --bound x,2").code, 2);
}

#[test]
fn csv_output() {
    let o = go("os hilbert --graph P3 --format csv");
    assert_eq!(o.stdout, "degree,dimension\n0,1\n1,2\n2,1\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in ["", "dims --graph C4", "dims --preset gcLie --graph diamond", "frobnicate", "dims --preset nope --graph P3"] {
        let o = go(args);
        assert_eq!(o.code, 2, "{args}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let bad_order = go("dims --preset gcLie --graph C4 --order quantum");
    assert_eq!(bad_order.code, 2);
    assert!(bad_order.stderr.contains("two generators"));
    assert_eq!(go("--help").code, 0);
}

#[test]
fn output_is_deterministic() {
    for args in ["pbw-check --preset gcGerst --format json", "gb --preset gcCom --bound 4,3 --format json"] {
        assert_eq!(go(args).stdout, go(args).stdout);
    }
}
