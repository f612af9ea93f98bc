use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<R>(f: impl FnOnce(&Bound<'_, PyModule>) -> R) -> R {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "dp2").unwrap();
        dp2::dp2(&m).unwrap();
        f(&m)
    })
}

fn run(code: &str) {
    with_module(|m| {
        let py = m.py();
        let globals = pyo3::types::PyDict::new(py);
        globals.set_item("dp2", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None)
            .unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn picard_model_from_python() {
    run(r#"
m = dp2.PicardModel("square-d")
assert m.case == "square-d"
assert len(m.curves()) == 56
assert sorted(m.generators()) == ["iota_a", "iota_b", "iota_sqrt_d"]
inv = m.invariants()
assert inv["rank"] == 2 and inv["mu"] == [0, 0, 0, 0, 0, 0, -1, 1], inv
"#);
}

#[test]
fn arrangement_from_python() {
    run(r#"
a = dp2.Arrangement.example()
assert a.prime == 13 and a.parameters == (2, 2, 0)
r = a.verify()
assert r["passed"] and r["d"] == "1" and len(r["residues"]) == 4
assert a.family(6).parameters == (2, 2, 4)
try:
    dp2.Arrangement.from_config("[arrangement]\nprime = 13\n")
except ValueError as e:
    assert "line" in str(e)
else:
    raise AssertionError("incomplete config accepted")
"#);
}

#[test]
fn residue_from_python() {
    run(r#"
r = dp2.residue("x", "y", "z")
assert (r["v_a"], r["v_b"]) == (-1, -1), r
assert dp2.residue("x+4*z", "y^2+y*z+z^2", "x+4*z")["trivial"] is False
"#);
}
