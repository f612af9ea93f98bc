use std::path::Path;

use dp2_core::brauer_residue::{residue_report, DivisorialValuation, ResidueError, SymbolClass};
use dp2_core::dp2geom::{GaloisGenerator, GeomError, PicClass, PicardModel, SurfaceCase};
use dp2_core::exactalg::IntMatrix;
use dp2_core::galois_lattice::{invariant_report_with, LatticeError};
use dp2_core::golden::{diff_matrices, Golden};
use dp2_core::polyring::{parse, Domain, PlanePoint};
use dp2_core::refvar::{
    family_member, parse_config_with_prime, verify as verify_arrangement, ArrangementConfig,
    ConfigError, Witness, EXAMPLE_CONFIG,
};
use serde_json::{json, Map, Value};

use crate::report::{CliError, Report, Verdict};

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Residue(r) => r.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ResidueError> for CliError {
    fn from(e: ResidueError) -> Self {
        match e {
            ResidueError::ResidueUndefined(_) => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn rows_json(m: &IntMatrix) -> Value {
    json!(m.to_i64_rows().expect("small entries"))
}

fn class_json(c: &PicClass) -> Value {
    json!(c.to_i64())
}

fn matrix_text(m: &IntMatrix) -> Vec<String> {
    m.to_i64_rows()
        .expect("small entries")
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>())
        .collect()
}

fn point_json(p: &PlanePoint) -> Value {
    json!(p)
}

fn build(case: SurfaceCase) -> Result<PicardModel, CliError> {
    PicardModel::build(case).map_err(|e| match e {
        GeomError::AmbiguousTangency(..) => CliError::Failed(format!(
            "diagnostic: {e}; the curve pair could not be resolved"
        )),
        other => other.into(),
    })
}

pub fn lines(case: SurfaceCase) -> Result<Report, CliError> {
    let model = build(case)?;
    let mut r = Report::new("lines", Some(case.to_string()));
    let det = model
        .gram()
        .determinant()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let det = i64::try_from(&det).expect("small determinant");

    r.line(format!(
        "{} exceptional curves ({case})",
        model.curves().len()
    ));
    let mut curves = Vec::new();
    for (c, cls) in model.curves().iter().zip(model.classes()) {
        r.line(format!("  {}  class {cls}", c.equation_string(case)));
        curves.push(json!({
            "label": c.label.to_string(),
            "equation": c.equation_string(case),
            "class": class_json(cls),
        }));
    }
    r.line("intersection matrix (rows and columns in the order above):");
    for row in model.intersection_matrix() {
        r.line(format!(
            "  {}",
            row.iter()
                .map(|x| format!("{x:>2}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    r.line("Gram matrix of the basis:");
    for row in matrix_text(model.gram()) {
        r.line(format!("  {row}"));
    }
    r.line(format!("det G = {det}, |det G| = {}", det.abs()));
    r.line(format!("kappa = {}", model.anticanonical()));
    r.fail_unless(det.abs() == 1 && model.curves().len() == 56);

    r.matrices
        .insert("intersection".into(), json!(model.intersection_matrix()));
    r.matrices.insert("gram".into(), rows_json(model.gram()));
    r.vectors
        .insert("kappa".into(), class_json(model.anticanonical()));
    r.extra.insert("curves".into(), Value::Array(curves));
    r.extra.insert("det".into(), json!(det));
    Ok(r)
}

pub fn galois(case: SurfaceCase) -> Result<Report, CliError> {
    let model = build(case)?;
    let golden = Golden::bundled();
    let gens = case.generators();
    let mut r = Report::new("galois", Some(case.to_string()));

    r.line(format!(
        "action table ({case}); columns: {}",
        gens.iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let mut tables = Map::new();
    let mut table_mismatches = 0;
    let images: Vec<Vec<_>> = gens
        .iter()
        .map(|&g| {
            model
                .curves()
                .iter()
                .map(|c| model.apply_galois(g, c.label))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    for (i, c) in model.curves().iter().enumerate() {
        let row: Vec<String> = images.iter().map(|col| col[i].to_string()).collect();
        r.line(format!(
            "  {:<14} {}",
            c.label.to_string(),
            row.iter()
                .map(|s| format!("{s:<14}"))
                .collect::<String>()
                .trim_end()
        ));
    }
    for (g, col) in gens.iter().zip(&images) {
        let mut t = Map::new();
        for (c, img) in model.curves().iter().zip(col) {
            t.insert(c.label.to_string(), json!(img.to_string()));
            if let Some(row) = golden.action(case, *g) {
                let expected = row.image(c.label);
                if expected != *img {
                    table_mismatches += 1;
                    r.witnesses.push(json!({
                        "kind": "table",
                        "generator": g.name(),
                        "curve": c.label.to_string(),
                        "expected": expected.to_string(),
                        "actual": img.to_string(),
                    }));
                }
            }
        }
        tables.insert(g.name().into(), Value::Object(t));
    }
    r.line(format!(
        "table entries differing from the reference: {table_mismatches}"
    ));
    r.fail_unless(table_mismatches == 0);

    let mats: Vec<IntMatrix> = gens
        .iter()
        .map(|&g| model.galois_matrix(g))
        .collect::<Result<_, _>>()?;
    for (g, m) in gens.iter().zip(&mats) {
        r.line(format!("{g} (column j = image of v_j):"));
        for row in matrix_text(m) {
            r.line(format!("  {row}"));
        }
        r.matrices.insert(g.name().into(), rows_json(m));
        match golden.matrix(case, *g) {
            Some(expected) => {
                let diff = diff_matrices(&expected, m);
                if diff.is_empty() {
                    r.line("  matches the reference matrix");
                } else {
                    let transposed = diff_matrices(&expected, &m.transpose()).is_empty();
                    r.line(format!(
                        "  {} cells differ from the reference{}",
                        diff.len(),
                        if transposed {
                            " (transpose mismatch)"
                        } else {
                            ""
                        }
                    ));
                    for d in &diff {
                        r.line(format!(
                            "    ({}, {}): expected {}, got {}",
                            d.row, d.col, d.expected, d.actual
                        ));
                        r.witnesses.push(json!({
                            "kind": "matrix",
                            "generator": g.name(),
                            "row": d.row,
                            "col": d.col,
                            "expected": d.expected.to_string(),
                            "actual": d.actual.to_string(),
                            "transpose_mismatch": transposed,
                        }));
                    }
                    r.fail_unless(false);
                }
            }
            None => r.line("  no reference matrix"),
        }
    }

    let id = IntMatrix::identity(8);
    let gram = model.gram();
    let kappa = model.anticanonical();
    let mut relations = Map::new();
    let mut check = |r: &mut Report, name: String, ok: bool| {
        r.line(format!("  [{}] {name}", if ok { "ok" } else { "FAILED" }));
        r.fail_unless(ok);
        relations.insert(name, json!(ok));
    };
    r.line("relations:");
    for (g, m) in gens.iter().zip(&mats) {
        check(
            &mut r,
            format!("{}^T G {} = G", g.name(), g.name()),
            &(&m.transpose() * gram) * m == *gram,
        );
        check(&mut r, format!("{}^4 = I", g.name()), m.pow(4) == id);
        check(
            &mut r,
            format!("{} fixes kappa", g.name()),
            m.mul_vec(kappa.coords()) == kappa.0,
        );
    }
    let commute = mats.iter().all(|a| mats.iter().all(|b| a * b == b * a));
    check(&mut r, "generators commute".into(), commute);
    if case == SurfaceCase::SquareD {
        let get = |g: GaloisGenerator| &mats[gens.iter().position(|&x| x == g).expect("generator")];
        let (a, b, s) = (
            get(GaloisGenerator::IotaA),
            get(GaloisGenerator::IotaB),
            get(GaloisGenerator::IotaSqrtD),
        );
        check(
            &mut r,
            "iota_sqrt_d = iota_a^2 iota_b^2".into(),
            *s == &a.pow(2) * &b.pow(2),
        );
    }
    r.extra.insert("tables".into(), Value::Object(tables));
    r.extra.insert("relations".into(), Value::Object(relations));
    Ok(r)
}

pub fn invariants(case: SurfaceCase, bound: usize) -> Result<Report, CliError> {
    let model = build(case)?;
    let inv = invariant_report_with(&model, bound)?;
    let mut r = Report::new("invariants", Some(case.to_string()));
    r.line(format!("Galois group order {} ({case})", inv.group_order));
    r.line(format!("invariant sublattice: rank {}", inv.rank));
    let basis: Vec<Vec<i64>> = inv
        .invariant
        .basis_vectors()
        .iter()
        .map(|v| PicClass(v.clone()).to_i64())
        .collect();
    for v in &basis {
        r.line(format!("  {}", PicClass::from_i64(v)));
    }
    r.line(format!("kappa = {}", inv.kappa));
    r.vectors.insert("kappa".into(), class_json(&inv.kappa));
    match &inv.mu {
        Some(mu) => {
            r.line(format!("mu = {mu}"));
            r.vectors.insert("mu".into(), class_json(mu));
        }
        None => r.line("mu: none (rank is not 2)"),
    }
    r.matrices.insert("invariant_basis".into(), json!(basis));
    r.line(format!("{} orbits on the 56 curves:", inv.orbits.len()));
    let mut orbits = Vec::new();
    for o in &inv.orbits {
        let sum = o.iter().try_fold(PicClass::from_i64(&[0; 8]), |acc, &l| {
            model.class_of(l).map(|c| acc.add(c))
        })?;
        let names: Vec<String> = o.iter().map(|l| l.to_string()).collect();
        r.line(format!("  {{{}}} sum {sum}", names.join(", ")));
        orbits.push(json!({ "curves": names, "sum": class_json(&sum) }));
    }
    let index = inv.orbit_index.as_ref().map(|i| i.to_string());
    r.line(format!(
        "index of orbit sums + Z kappa in the invariants: {}",
        index.as_deref().unwrap_or("infinite")
    ));
    if let Some(inside) = inv.mu_in_orbit_sums {
        r.line(format!("mu in the orbit-sum lattice: {inside}"));
    }
    for w in &inv.warnings {
        r.line(format!("warning: {w}"));
        r.witnesses.push(json!({ "kind": "warning", "message": w }));
    }
    r.extra.insert("rank".into(), json!(inv.rank));
    r.extra.insert("group_order".into(), json!(inv.group_order));
    r.extra.insert("orbits".into(), Value::Array(orbits));
    r.extra.insert("orbit_index".into(), json!(index));
    r.extra
        .insert("mu_in_orbit_sums".into(), json!(inv.mu_in_orbit_sums));
    Ok(r)
}

fn load_config(
    config: Option<&Path>,
    family_q: Option<u32>,
    prime: Option<u64>,
) -> Result<ArrangementConfig, CliError> {
    let text = match config {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => EXAMPLE_CONFIG.to_string(),
    };
    let cfg = parse_config_with_prime(&text, prime)?;
    Ok(match family_q {
        Some(q) => family_member(q, &cfg)?,
        None => cfg,
    })
}

fn witness_json(condition: &str, w: &Witness) -> Value {
    let mut v = json!({ "condition": condition, "text": w.to_string() });
    let m = v.as_object_mut().expect("object");
    match w {
        Witness::ProportionalPair { i, j } => {
            m.insert("lines".into(), json!([i + 1, j + 1]));
        }
        Witness::ConcurrentTriple { i, j, k, point } => {
            m.insert("lines".into(), json!([i + 1, j + 1, k + 1]));
            m.insert("point".into(), json!(point));
        }
        Witness::LineInF { i } => {
            m.insert("lines".into(), json!([i + 1]));
        }
        Witness::VanishingPoint { i, j, point } => {
            m.insert("lines".into(), json!([i + 1, j + 1]));
            m.insert("point".into(), point_json(point));
        }
        Witness::OddPart {
            odd_kernel,
            exponents,
        } => {
            m.insert("odd_kernel".into(), json!(odd_kernel));
            m.insert("exponents".into(), json!(exponents));
        }
    }
    v
}

pub fn verify(
    config: Option<&Path>,
    family_q: Option<u32>,
    prime: Option<u64>,
) -> Result<Report, CliError> {
    let cfg = load_config(config, family_q, prime)?;
    let v = verify_arrangement(&cfg)?;
    let mut r = Report::new("verify", None);
    let p = cfg.field.modulus();
    r.line(format!(
        "arrangement over F_{p}: g = {}, n = {}, m = {}{}",
        cfg.g,
        cfg.n,
        cfg.m,
        cfg.q.map_or(String::new(), |q| format!(", q = {q}"))
    ));
    for (i, l) in cfg.lines().enumerate() {
        let side = if i < cfg.a_factors.len() { "A" } else { "B" };
        r.line(format!("  l{} = {l}  ({side})", i + 1));
    }
    r.line(format!("  f = {}", cfg.f));

    r.line("conditions:");
    let mut conditions = Map::new();
    for c in &v.conditions.results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        r.line(format!(
            "  [{tag}] {} {}",
            c.condition,
            c.condition.statement()
        ));
        for w in &c.witnesses {
            r.line(format!("         witness: {w}"));
            if !c.passed {
                r.witnesses.push(witness_json(c.condition.roman(), w));
            }
        }
        if let Some(n) = &c.note {
            r.line(format!("         note: {n}"));
        }
        conditions.insert(c.condition.roman().into(), json!(c.passed));
    }

    let eq = &v.equation;
    r.line(format!("equation: {}", eq.symbolic));
    r.line(format!(
        "  bidegree ({}, {}) {}; {} terms over F_{p}",
        eq.bidegree.0,
        eq.bidegree.1,
        if eq.bidegree_ok {
            "verified on every monomial"
        } else {
            "NOT homogeneous"
        },
        eq.poly.num_terms()
    ));

    r.line("residues of (A, B):");
    let mut residues = Vec::new();
    for c in &v.alpha.residues {
        r.line(format!(
            "  along {} ({} side): v(A) = {}, v(B) = {}, residue {} {} expected, {}",
            c.line,
            c.side,
            c.v_a,
            c.v_b,
            c.residue,
            if c.matches_expected {
                "matches"
            } else {
                "DOES NOT match"
            },
            if c.nontrivial {
                "nontrivial"
            } else {
                "TRIVIAL"
            }
        ));
        residues.push(json!({
            "line": c.line.to_string(),
            "side": c.side.to_string(),
            "v_a": c.v_a,
            "v_b": c.v_b,
            "residue": c.residue.to_string(),
            "expected": c.expected.to_string(),
            "matches_expected": c.matches_expected,
            "nontrivial": c.nontrivial,
        }));
    }
    r.line(format!(
        "  ABC with C = AB z^m (AB+F): square {}, class equals that of AB+F: {}",
        v.alpha.abc_is_square, v.alpha.abc_class_is_ab_plus_f
    ));

    r.line("local cases:");
    let mut local = Vec::new();
    for c in &v.local.checks {
        let tag = if c.passed { "ok" } else { "FAILED" };
        r.line(format!(
            "  [{tag}] case {} at {}: {}",
            c.case, c.subject, c.detail
        ));
        local.push(
            json!({ "case": c.case, "subject": c.subject, "passed": c.passed, "detail": c.detail }),
        );
    }

    let n = &v.normalization;
    r.line(format!(
        "local form: e1 = {}, e2 = {}, 6g+m = {} mod 4, d = {}; exponent check {}, identity {}",
        n.e1, n.e2, n.six_g_plus_m_mod4, n.d, n.exponent_ok, n.identity_ok
    ));
    r.line(format!("  note: {}", n.note));

    r.verdict = Verdict::from_bool(v.passed());
    r.extra.insert("prime".into(), json!(p));
    r.extra.insert(
        "parameters".into(),
        json!({ "g": cfg.g, "n": cfg.n, "m": cfg.m, "q": cfg.q }),
    );
    r.extra
        .insert("conditions".into(), Value::Object(conditions));
    r.extra.insert(
        "equation".into(),
        json!({
            "symbolic": eq.symbolic,
            "polynomial": eq.poly.to_string(),
            "bidegree": [eq.bidegree.0, eq.bidegree.1],
            "bidegree_ok": eq.bidegree_ok,
            "e1": eq.e1,
            "e2": eq.e2,
            "terms": eq.poly.num_terms(),
        }),
    );
    r.extra.insert("residues".into(), Value::Array(residues));
    r.extra
        .insert("abc_is_square".into(), json!(v.alpha.abc_is_square));
    r.extra.insert("local".into(), Value::Array(local));
    r.extra.insert(
        "normalization".into(),
        json!({
            "e1": n.e1,
            "e2": n.e2,
            "six_g_plus_m_mod4": n.six_g_plus_m_mod4,
            "d": n.d.to_string(),
            "exponent_ok": n.exponent_ok,
            "identity_ok": n.identity_ok,
            "note": n.note,
        }),
    );
    Ok(r)
}

pub fn residue(a: &str, b: &str, at: &str, prime: u64) -> Result<Report, CliError> {
    let dom = Domain::plane(prime).map_err(|e| CliError::Usage(e.to_string()))?;
    let poly =
        |name: &str, s: &str| parse(s, &dom).map_err(|e| CliError::Usage(format!("--{name}: {e}")));
    let symbol = SymbolClass::new(poly("A", a)?, poly("B", b)?)?;
    let v = DivisorialValuation::new(&poly("at", at)?)?;
    let rep = residue_report(&symbol, &v)?;
    let trivial = rep.class.is_trivial();
    let sign = rep.class.sign_exponent.rem_euclid(2);

    let mut r = Report::new("residue", None);
    r.line(format!(
        "symbol ({}, {}) over F_{prime}, valuation {v}",
        symbol.a, symbol.b
    ));
    r.line(format!("v(A) = {}, v(B) = {}", rep.v_a, rep.v_b));
    r.line(format!(
        "sign (-1)^(v(A) v(B)) = {}",
        if sign == 0 { 1 } else { -1 }
    ));
    r.line(format!("representative {}", rep.class.representative));
    r.line(format!("restricted to the centre {}", rep.class.restricted));
    r.line(format!(
        "residue is {} modulo squares and constants",
        if trivial { "trivial" } else { "nontrivial" }
    ));
    r.extra.insert("prime".into(), json!(prime));
    r.extra
        .insert("centre".into(), json!(v.centre().to_string()));
    r.extra.insert("v_a".into(), json!(rep.v_a));
    r.extra.insert("v_b".into(), json!(rep.v_b));
    r.extra
        .insert("sign".into(), json!(if sign == 0 { 1 } else { -1 }));
    r.extra.insert(
        "representative".into(),
        json!(rep.class.representative.to_string()),
    );
    r.extra
        .insert("restricted".into(), json!(rep.class.restricted.to_string()));
    r.extra.insert("trivial".into(), json!(trivial));
    Ok(r)
}
