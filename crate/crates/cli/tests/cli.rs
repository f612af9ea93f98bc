use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn dp2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = dp2(&full);
    let v = serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn config(a: [&str; 2], b: [&str; 2], f: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "[arrangement]\nprime = 13\ng = 2\nn = 2\nm = 0\n\
         a_factors = [\"{}\", \"{}\"]\nb_factors = [\"{}\", \"{}\"]\nf = \"{f}\"\n",
        a[0], a[1], b[0], b[1]
    )
    .unwrap();
    file
}

#[test]
fn lines_lists_all_curves() {
    for case in ["nonsquare", "square-d"] {
        let (v, code) = json(&["lines", "--case", case]);
        assert_eq!(code, 0);
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["curves"].as_array().unwrap().len(), 56);
        let m = v["matrices"]["intersection"].as_array().unwrap();
        assert_eq!(m.len(), 56);
        assert!(m.iter().all(|r| r.as_array().unwrap().len() == 56));
        assert_eq!(v["det"].as_i64().unwrap().abs(), 1);
        assert_eq!(
            v["vectors"]["kappa"],
            serde_json::json!([-1, -1, -1, -1, -1, -1, -1, 3])
        );
    }
}

#[test]
fn text_output_ends_with_verdict() {
    let o = dp2(&["lines", "--case", "nonsquare"]);
    let text = stdout(&o);
    assert!(text.contains("56 exceptional curves"));
    assert!(text.trim_end().ends_with("verdict: pass"));
}

#[test]
fn galois_matches_reference() {
    for case in ["nonsquare", "square-d"] {
        let (v, code) = json(&["galois", "--case", case]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 0);
        assert!(v["relations"]
            .as_object()
            .unwrap()
            .values()
            .all(|x| x == true));
    }
    let (v, _) = json(&["galois", "--case", "square-d"]);
    assert_eq!(v["relations"]["iota_sqrt_d = iota_a^2 iota_b^2"], true);
}

#[test]
fn invariants_square_d() {
    let (v, code) = json(&["invariants", "--case", "square-d"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(
        v["vectors"]["mu"],
        serde_json::json!([0, 0, 0, 0, 0, 0, -1, 1])
    );
    assert_eq!(v["orbit_index"], "2");
}

#[test]
fn invariants_nonsquare_is_kappa() {
    let (v, code) = json(&["invariants", "--case", "nonsquare"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 1);
    // ℤκ, up to the sign of the basis vector
    let basis = v["matrices"]["invariant_basis"].clone();
    assert!(
        basis == serde_json::json!([[-1, -1, -1, -1, -1, -1, -1, 3]])
            || basis == serde_json::json!([[1, 1, 1, 1, 1, 1, 1, -3]]),
        "{basis}"
    );
}

#[test]
fn invalid_case_is_usage_error() {
    assert_eq!(dp2(&["lines", "--case", "bogus"]).status.code(), Some(2));
    assert_eq!(dp2(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_bundled_example() {
    let (v, code) = json(&["verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["equation"]["bidegree"], serde_json::json!([8, 4]));
    assert_eq!(v["normalization"]["d"], "1");
    assert_eq!(v["residues"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_family() {
    let (v, code) = json(&["verify", "--family-q", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["parameters"]["m"], 2);
    assert_eq!(v["equation"]["bidegree"], serde_json::json!([10, 4]));
}

#[test]
fn verify_negative_controls() {
    let controls = [
        (
            "i",
            config(["x+4*z", "x-3*z"], ["x+4*z", "y-3*z"], "(x+y)^2"),
        ),
        ("ii", config(["x", "y"], ["x+y", "y-5*z"], "(x+y+z)^2")),
        (
            "iii",
            config(["x+4*z", "x-3*z"], ["y+4*z", "y-3*z"], "(x+4*z)*(x+y)"),
        ),
        (
            "iv",
            config(["x+4*z", "x-3*z"], ["y+4*z", "y-3*z"], "(x-y)*(x+y+z)"),
        ),
        (
            "v",
            config(["x+4*z", "x-3*z"], ["y+4*z", "y-3*z"], "3*z*(x+y+z)"),
        ),
    ];
    for (cond, file) in &controls {
        let path = file.path().to_str().unwrap();
        let (v, code) = json(&["verify", "--config", path]);
        assert_eq!(code, 1, "({cond})");
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["conditions"][cond], false, "({cond})");
        assert!(
            v["witnesses"]
                .as_array()
                .unwrap()
                .iter()
                .any(|w| w["condition"] == *cond),
            "({cond}) has no witness: {v}"
        );
    }
}

#[test]
fn config_errors_report_lines() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "[arrangement]\nprime = 13\ng = 2\nn = 2\na = \"x^2+x*z+z^2\"\nb = \"y^2+y*z+z^2\"\nf = \"(x+y\"\n").unwrap();
    let o = dp2(&["verify", "--config", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 7"));

    let o = dp2(&["verify", "--config", "/nonexistent/arrangement.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn residues() {
    let (v, code) = json(&[
        "residue",
        "--A",
        "x+4*z",
        "--B",
        "y^2+y*z+z^2",
        "--at",
        "x+4*z",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["trivial"], false);
    assert_eq!(v["v_a"], 1);

    let (v, _) = json(&["residue", "--A", "x", "--B", "y", "--at", "x+y+z"]);
    assert_eq!(v["trivial"], true);
    assert_eq!((v["v_a"].as_i64(), v["v_b"].as_i64()), (Some(0), Some(0)));

    let (v, _) = json(&["residue", "--A", "x+y", "--B", "x+y", "--at", "x+y"]);
    assert_eq!(v["trivial"], true);
    assert_eq!(v["sign"], -1);

    let (v, _) = json(&["residue", "--A", "x", "--B", "y", "--at", "z"]);
    assert_eq!(v["centre"], "z");
}

#[test]
fn residue_parse_error() {
    let o = dp2(&["residue", "--A", "x+", "--B", "y", "--at", "x"]);
    assert_eq!(o.status.code(), Some(2));
}
