use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use eqob::complex::{orbit_join, DEFAULT_CELL_BUDGET};
use eqob::group::{coset_gset, dihedral_group, Subgroup};
use eqob::homology::{parse_constant, TabulatedSystem};
use serde_json::Value;

fn eqob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqob")).args(args).env_remove("EQOB_BUDGET").output().expect("run eqob")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = eqob(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn euler_example() {
    let v = json(&["euler", "--group", "C6", "--rep", "xi^1 + xi^2"]);
    assert_eq!(v["euler"], serde_json::json!({"mod_n": 2}));
    assert_eq!(v["nonzero"], true);
    assert_eq!(v["schema"], "eqob/v1");
}

#[test]
fn tverberg_examples() {
    let v = json(&["tverberg", "--group", "C8", "--N", "7", "--d", "1"]);
    assert_eq!((v["verdict"].as_str(), v["threshold"].as_u64()), (Some("PrimePowerRegime"), Some(14)));
    let v = json(&["tverberg", "--group", "D15", "--N", "100", "--d", "3"]);
    assert_eq!(v["verdict"], "MapExists");
    assert_eq!(v["citation"], "dihedral_tverberg_maps");
    let v = json(&["tverberg", "--group", "C6", "--N", "10", "--d", "1"]);
    assert_eq!(v["citation"], "cyclic_tverberg_maps");
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--group", "C6", "--rep", "xi^2 + 2*sigma"]);
    assert_eq!(v["verdict"], "AntiBorsukUlam");
    assert!(v["fixed_dims"].as_array().unwrap().iter().all(|f| f["fixed_dim"].as_u64().unwrap() > 0));
    let v = json(&["classify", "--group", "C9", "--rep", "2*xi^3"]);
    assert_eq!((v["verdict"].as_str(), v["prime_power"].as_u64()), (Some("SullivanObstructed"), Some(9)));
    let v = json(&["classify", "--group", "D15", "--rep", "sigma + xihat^3"]);
    assert_eq!(v["verdict"], "OutOfPaperScope");
}

#[test]
fn verify_cohehdn_example() {
    let v = json(&["verify-cohehdn", "--n", "3", "--coeff", "Z/5", "--max-i", "4"]);
    assert_eq!(v["all_isomorphic"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["i"].as_u64().unwrap()).collect::<Vec<_>>(), vec![2, 3, 4]);
    for r in rows {
        assert_eq!(r["vanishing_predicted"], true);
        assert_eq!(r["vanishing_holds"], true);
    }
}

#[test]
fn group_cohomology_methods() {
    for method in ["milnor", "periodic", "resolution"] {
        let v = json(&["group-cohomology", "--group", "C4", "--max-i", "4", "--method", method]);
        let torsion: Vec<Value> = v["degrees"].as_array().unwrap().iter().map(|d| d["torsion"].clone()).collect();
        assert_eq!(torsion, vec![serde_json::json!([]), serde_json::json!([]), serde_json::json!([4]), serde_json::json!([]), serde_json::json!([4])], "{method}");
    }
}

#[test]
fn cohomology_and_join_info() {
    let v = json(&["cohomology", "--group", "D3", "--coeff", "Z/5", "--max-i", "4"]);
    assert_eq!(v["skeleton"], 6);
    assert_eq!(v["space"], "y-cosets");
    for d in &v["degrees"].as_array().unwrap()[1..] {
        assert_eq!((d["rank"].as_u64(), d["torsion"].as_array().unwrap().len()), (Some(0), 0));
    }
    let v = json(&["join-info", "--group", "C6", "--skeleton", "3"]);
    assert_eq!(v["simplices"], serde_json::json!([18, 108, 216]));
    assert_eq!(v["orbits"], serde_json::json!([3, 18, 36]));
    let v = json(&["join-info", "--group", "D3", "--skeleton", "2", "--full"]);
    assert_eq!(v["complex"]["orbits"][0].as_array().unwrap().len(), 2);
}

#[test]
fn tabulated_coefficients_from_file() {
    let g = Arc::new(dihedral_group(3));
    let y = g.generator("y").unwrap();
    let set = coset_gset(g.clone(), &Subgroup::generated(&g, &[y])).unwrap();
    let x = orbit_join(&set, 5, DEFAULT_CELL_BUDGET).unwrap();
    let sys = TabulatedSystem::tabulate(&parse_constant(g, "Z/4").unwrap(), &x).unwrap();
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("z4_on_d3.json");
    std::fs::write(&path, serde_json::to_string_pretty(&sys.to_json()).unwrap()).unwrap();
    let arg = format!("@{}", path.display());
    let from_file = json(&["cohomology", "--group", "D3", "--coeff", &arg, "--max-i", "3"]);
    let constant = json(&["cohomology", "--group", "D3", "--coeff", "Z/4", "--max-i", "3"]);
    assert_eq!(from_file["degrees"], constant["degrees"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["fixed-points", "--group", "D15", "--rep", "xihat^3 + xihat^5", "--json"];
    let a = eqob(&args);
    let b = eqob(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 3] = [
        (&["euler", "--group", "C6", "--rep", "xi^1 + xi^2", "--json"], "euler_c6.json"),
        (&["classify", "--group", "C12", "--rep", "xi^4 + 2*sigma", "--json"], "classify_c12.json"),
        (&["join-info", "--group", "D3", "--skeleton", "2", "--full", "--json"], "join_d3_k2.json"),
    ];
    for (args, file) in cases {
        let out = eqob(args);
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(file), "{file}");
    }
}

#[test]
fn validation_errors_exit_two_and_name_the_flag() {
    let cases: [(&[&str], &str); 6] = [
        (&["euler", "--group", "C6", "--rep", "xi^^2"], "--rep"),
        (&["euler", "--group", "C6", "--rep", "1 + xi"], "--rep"),
        (&["euler", "--group", "Q8", "--rep", "xi"], "--group"),
        (&["group-cohomology", "--group", "C3", "--method", "bogus"], "--method"),
        (&["cohomology", "--group", "C3", "--coeff", "Z/x"], "--coeff"),
        (&["verify-cohehdn", "--n", "4", "--coeff", "Z"], "--n"),
    ];
    for (args, flag) in cases {
        let out = eqob(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(eqob(&["euler", "--group", "C6", "--rep", "xi", "--bogus"]).status.code(), Some(2));
    assert_eq!(eqob(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn budget_errors_exit_one() {
    let out = eqob(&["join-info", "--group", "C6", "--skeleton", "3", "--max-cells", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));
    let out = Command::new(env!("CARGO_BIN_EXE_eqob"))
        .args(["join-info", "--group", "C6", "--skeleton", "3"])
        .env("EQOB_BUDGET", "cells=100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = eqob(&["group-cohomology", "--group", "C3", "--max-i", "8", "--method", "resolution", "--max-depth", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--max-depth"));
}
