//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#![allow(clippy::needless_range_loop)]

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use liewedge_core::catalog;
use liewedge_core::derivations::{
    build_classified, classify_from_derivation, conformal_derivation, decompose_heis_derivation, derivation_algebra,
    detect_3grading, inner_derivations, is_beta_compatible, Derivation,
};
use liewedge_core::linalg::{self, int, rat};
use liewedge_core::spindler::{
    antisymmetric_commutant, has_no_probe_eigenvalue, psi_g, sharp, sp_of_beta, sp_of_beta_via_psi, standard_omega,
};
use liewedge_core::{parse_rat, LieAlgebra, Mat, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liewedge")).args(args).output().expect("binary runs")
}

fn cli_report(args: &[&str]) -> Result<(i32, Value), String> {
    let out = cli(args);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: no report ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, v))
}

fn verdict(r: &Value, id: &str) -> String {
    r["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["id"] == id))
        .map_or("missing".into(), |c| c["verdict"].as_str().unwrap_or("?").to_string())
}

fn failing(r: &Value) -> Vec<String> {
    r["checks"]
        .as_array()
        .map(|cs| {
            cs.iter().filter(|c| c["verdict"] != "pass").map(|c| format!("{}={}", c["id"], c["verdict"])).collect()
        })
        .unwrap_or_default()
}

// Dense reference elimination, independent of the library's echelon code.

fn nullity(mut rows: Vec<Vec<Rat>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for c in 0..ncols {
            rows[rank][c] = &rows[rank][c] / &pivot;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &rows[rank][c] * &factor;
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    ncols - rank
}

fn dense_bracket(g: &LieAlgebra, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let n = g.dim();
    let mut out = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += &x[i] * &y[j] * g.constant(i, j, k);
            }
        }
    }
    out
}

fn oracle_der_dim(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let e = |i: usize| linalg::unit_vec(n, i);
    let mut columns = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut d = Mat::zeros(n, n);
            d[(a, b)] = Rat::one();
            let mut col = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let lhs = d.mul_vec(&dense_bracket(g, &e(i), &e(j)));
                    let r1 = dense_bracket(g, &d.col(i), &e(j));
                    let r2 = dense_bracket(g, &e(i), &d.col(j));
                    col.extend((0..n).map(|k| &lhs[k] - &r1[k] - &r2[k]));
                }
            }
            columns.push(col);
        }
    }
    let rows = (0..columns[0].len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    nullity(rows, n * n)
}

fn oracle_inner_dim(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut flat = vec![Rat::zero(); n * n];
            for c in 0..n {
                for (r, x) in dense_bracket(g, &linalg::unit_vec(n, i), &linalg::unit_vec(n, c)).into_iter().enumerate()
                {
                    flat[r * n + c] = x;
                }
            }
            flat
        })
        .collect();
    n * n - nullity(rows, n * n)
}

fn oracle_eigen_dim(m: &Mat, lambda: &Rat) -> usize {
    let n = m.rows();
    let rows = (0..n)
        .map(|r| (0..n).map(|c| if r == c { &m[(r, c)] - lambda } else { m[(r, c)].clone() }).collect())
        .collect();
    nullity(rows, n)
}

fn catalog_names() -> Vec<String> {
    let mut names = vec!["sl2".to_string(), "ex318".into(), "oscillator".into()];
    for n in 1..=catalog::MAX_DIM_V / 2 {
        for base in ["sp2n", "heis", "jacobi", "ex319"] {
            names.push(format!("{base}({n})"));
        }
    }
    names
}

fn spindler_soundness() -> Outcome {
    let names = catalog_names();
    for name in &names {
        let entry = catalog::get(name).map_err(|e| format!("{name}: {e}"))?;
        let checks = entry.self_checks();
        for c in &checks {
            ensure(c.passed, || format!("{name}: {} failed ({})", c.id, c.detail))?;
        }
        for id in ["spindler.jacobi-identity", "spindler.center-closed-form", "spindler.derived-closed-form"] {
            ensure(checks.iter().any(|c| c.id == id), || format!("{name}: {id} not run"))?;
        }
    }
    Ok(format!("{} entries, Jacobi identity and closed forms exact", names.len()))
}

fn derivation_dimensions() -> Outcome {
    let heis = catalog::get("heis(1)").unwrap().algebra;
    let der = derivation_algebra(&heis.g);
    let oracle = oracle_der_dim(&heis.g);
    ensure(der.len() == 6 && oracle == 6, || format!("dim der(heis) = {}, oracle {oracle}", der.len()))?;
    for (i, m) in der.iter().enumerate() {
        let d = Derivation::new(&heis.g, m.clone()).map_err(|e| format!("heis basis {i}: {e}"))?;
        let blocks = decompose_heis_derivation(&heis, &d).map_err(|e| format!("heis basis {i}: {e}"))?;
        ensure(is_beta_compatible(&blocks.d_v, &blocks.d_z, &heis.data.beta), || {
            format!("heis basis {i}: blocks not beta-compatible")
        })?;
    }
    let jac = catalog::get("jacobi(1)").unwrap().algebra;
    let der = derivation_algebra(&jac.g);
    let inner = inner_derivations(&jac.g);
    let (od, oi) = (oracle_der_dim(&jac.g), oracle_inner_dim(&jac.g));
    ensure(der.len() == 6 && od == 6, || format!("dim der(hsp) = {}, oracle {od}", der.len()))?;
    ensure(inner.len() == 5 && oi == 5, || format!("dim ad(hsp) = {}, oracle {oi}", inner.len()))?;
    let conf = conformal_derivation(&jac, &int(1));
    ensure(!linalg::in_span(&inner, conf.flatten()), || "conformal derivation is inner".into())?;
    let mut all = inner.clone();
    all.push(conf.flatten().to_vec());
    let flat: Vec<_> = der.iter().map(|m| m.flatten().to_vec()).collect();
    ensure(linalg::same_span(&all, &flat, 36), || "inner + conformal does not fill der".into())?;
    Ok("heis 6 (oracle 6), hsp 6 = 5 inner + conformal".into())
}

fn classification_round_trip() -> Outcome {
    let expected = [("jacobi(1)", (1, 2, 3)), ("jacobi(2)", (3, 6, 6)), ("ex318", (3, 3, 3)), ("ex319(2)", (3, 4, 3))];
    let mut seen = Vec::new();
    for (name, dims) in expected {
        let entry = catalog::get(name).unwrap();
        let s = &entry.algebra;
        let gd = entry.grading.as_ref().ok_or(format!("{name}: no grading"))?;
        let (c, d, _) =
            build_classified(s, gd.h.clone(), gd.d_v.clone(), gd.d_z.clone()).map_err(|e| format!("{name}: {e}"))?;
        let grading = detect_3grading(&s.g, &d).ok_or(format!("{name}: no grading detected"))?;
        let m = d.matrix();
        let oracle = (oracle_eigen_dim(m, &int(-1)), oracle_eigen_dim(m, &int(0)), oracle_eigen_dim(m, &int(1)));
        ensure(grading.dims() == oracle && oracle == dims, || {
            format!("{name}: dims {:?}, oracle {oracle:?}, expected {dims:?}", grading.dims())
        })?;
        let back = classify_from_derivation(s, &d).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == c, || format!("{name}: round trip differs"))?;
        ensure(c.center_decomposition(s).holds(), || format!("{name}: z decomposition fails"))?;
        ensure(is_beta_compatible(&c.d_v, &c.d_z, &s.data.beta), || format!("{name}: not beta-compatible"))?;
        let (code, r) = cli_report(&["classify", "--input", &format!("catalog:{name}")])?;
        ensure(code == 0, || format!("{name}: classify exit {code}, {:?}", failing(&r)))?;
        seen.push(format!("{name} {dims:?}"));
    }
    let s = catalog::get("jacobi(1)").unwrap().algebra;
    let tau = s.data.rho_of(&[rat(1, 2), int(0), int(0)]).scale(&int(2));
    ensure(tau == Mat::diag(&[int(1), int(-1)]), || "tau_V differs from diag(1, -1)".into())?;
    Ok(seen.join(", "))
}

fn non_degeneration() -> Outcome {
    let floor = Rat::new(1.into(), num_bigint::BigInt::from(2u8).pow(40));
    let mut total = 0;
    for name in ["jacobi(1)", "jacobi(2)", "ex318"] {
        let (code, r) = cli_report(&["cone-span", "--input", &format!("catalog:{name}")])?;
        ensure(code == 0, || format!("{name}: exit {code}, {:?}", failing(&r)))?;
        let q = catalog::get(name).unwrap().query().unwrap().unwrap();
        let certs = r["certificates"].as_array().ok_or("no certificates")?;
        ensure(certs.len() == 2, || format!("{name}: {} certificates", certs.len()))?;
        for cert in certs {
            let parse = |v: &Value| -> Result<Vec<Rat>, String> {
                v.as_array()
                    .ok_or("not an array")?
                    .iter()
                    .map(|x| x.as_str().and_then(parse_rat).ok_or_else(|| format!("bad rational {x}")))
                    .collect()
            };
            for eps in parse(&cert["epsilons"])? {
                ensure(eps >= floor, || format!("{name}: epsilon {eps} below 2^-40"))?;
            }
            let points: Vec<Vec<Rat>> =
                cert["points"].as_array().unwrap().iter().map(parse).collect::<Result<_, _>>()?;
            let subspace: Vec<Vec<Rat>> =
                cert["subspace"].as_array().unwrap().iter().map(parse).collect::<Result<_, _>>()?;
            for p in &points {
                ensure(q.in_cone(p), || format!("{name}: certificate point outside the cone"))?;
                total += 1;
            }
            let n = q.algebra().g.dim();
            ensure(
                linalg::rank_of(&points, n) == subspace.len() && linalg::span_contains(&subspace, &points, n),
                || format!("{name}: points do not span the eigenspace"),
            )?;
        }
    }
    // The +1 witness of jacobi(1) is E + z, which maps to v -> 1/2 v_2^2 + 1:
    // a single positive square in the coordinate of V_{-1} plus f(z) = 1.
    let (_, r) = cli_report(&["cone-span", "--input", "catalog:jacobi(1)"])?;
    let poly = &r["summary"]["witness_polynomial.plus"];
    let expected = serde_json::json!({
        "quadratic": [["0", "0"], ["0", "1/2"]],
        "linear": ["0", "0"],
        "constant": "1",
    });
    ensure(*poly == expected, || format!("jacobi(1) +1 witness polynomial is {poly}"))?;
    Ok(format!("{total} certificate points re-validated; jacobi(1) +1 witness is 1/2 v_2^2 + 1"))
}

fn solvable_no_go() -> Outcome {
    let (code, r) = cli_report(&["no-go", "--input", "catalog:oscillator"])?;
    ensure(code == 0, || format!("exit {code}, {:?}", failing(&r)))?;
    for id in ["no-go.solvable", "no-go.center-in-derived", "no-go.nilradical-cone-central", "no-go.only-zero-survives"]
    {
        ensure(verdict(&r, id) == "pass", || format!("{id}: {}", verdict(&r, id)))?;
    }
    let entry = catalog::get("oscillator").unwrap();
    let basis = derivation_algebra(&entry.algebra.g);
    let expected = 5usize.pow(basis.len() as u32);
    ensure(r["summary"]["candidates"] == expected, || format!("candidates {}", r["summary"]["candidates"]))?;
    ensure(r["summary"]["survivors"] == serde_json::json!([0]), || format!("survivors {}", r["summary"]["survivors"]))?;
    Ok(format!("{expected} candidates from a {}-dimensional der(g); only D = 0 survives", basis.len()))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let entries = (0..n * n).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=6))).collect();
    Mat::from_flat(n, n, entries)
}

fn symplectic_machinery() -> Outcome {
    let entry = catalog::get("ex318").unwrap();
    let beta = &entry.algebra.data.beta;
    let sp = sp_of_beta(4, beta);
    let mut rows = Vec::new();
    for b in beta {
        for p in 0..4 {
            for q in 0..4 {
                let mut row = vec![Rat::zero(); 16];
                for k in 0..4 {
                    row[k * 4 + p] += &b[(k, q)];
                    row[k * 4 + q] += &b[(p, k)];
                }
                rows.push(row);
            }
        }
    }
    let oracle = nullity(rows, 16);
    ensure(sp.len() == 6 && oracle == 6, || format!("dim sp(V, beta) = {}, oracle {oracle}", sp.len()))?;
    ensure(sp.iter().all(|x| x.block(0, 2, 2, 2).is_zero() && x.block(2, 2, 0, 2).is_zero()), || {
        "sp(V, beta) is not block diagonal".into()
    })?;
    let f = entry.functional.clone().unwrap();
    ensure(psi_g(&f, &f, beta).map_err(|e| e.to_string())? == Mat::identity(4), || "Psi_f is not the identity".into())?;
    for g in [vec![int(1), int(0)], vec![int(0), int(1)]] {
        let psi = psi_g(&g, &f, beta).map_err(|e| e.to_string())?;
        ensure(sp.iter().all(|x| psi.commutator(x).is_zero()), || format!("Psi_{g:?} does not commute"))?;
    }
    let via = sp_of_beta_via_psi(4, &f, beta).map_err(|e| e.to_string())?;
    let flat = |v: &[Mat]| v.iter().map(|m| m.flatten().to_vec()).collect::<Vec<_>>();
    ensure(linalg::same_span(&flat(&sp), &flat(&via), 16), || "centralizer description differs".into())?;

    let omega = standard_omega(2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mats: Vec<Mat> = (0..100).map(|_| random_matrix(&mut rng, 4)).collect();
    for (i, x) in mats.iter().enumerate() {
        let y = &mats[(i + 1) % mats.len()];
        let sx = sharp(x, &omega).map_err(|e| e.to_string())?;
        ensure(sharp(&sx, &omega).unwrap() == *x, || format!("sharp not involutive on sample {i}"))?;
        let sy = sharp(y, &omega).unwrap();
        ensure(sharp(&(x * y), &omega).unwrap() == &sy * &sx, || {
            format!("sharp not anti-multiplicative on sample {i}")
        })?;
    }

    let mut probed = 0;
    for name in ["jacobi(1)", "jacobi(2)", "jacobi(3)", "ex318", "ex319(2)", "ex319(3)"] {
        let e = catalog::get(name).unwrap();
        let q = e.query().unwrap().unwrap();
        for x in antisymmetric_commutant(&e.algebra.data.rho, q.omega()) {
            ensure(has_no_probe_eigenvalue(&x), || format!("{name}: real probe eigenvalue"))?;
            probed += 1;
        }
    }
    Ok(format!("sp dim 6 block diagonal, Psi checks exact, sharp on 100 samples, {probed} commutant elements probed"))
}

fn negative_controls() -> Outcome {
    let input = fixture("jacobi1.json");
    let (code, r) = cli_report(&["classify", "--input", &input, "--derivation", &fixture("conformal.json")])?;
    ensure(code == 1 && verdict(&r, "grading.three-grading") == "fail", || {
        format!("conformal derivation not rejected: exit {code}")
    })?;
    let detail = r["checks"].as_array().unwrap().iter().find(|c| c["id"] == "grading.three-grading").unwrap()["detail"]
        .as_str()
        .unwrap()
        .to_string();
    ensure(detail.contains("other eigenvalues 2"), || format!("detail `{detail}` does not name eigenvalue 2"))?;

    let (code, r) = cli_report(&["classify", "--input", &input, "--derivation", &fixture("h_zero.json")])?;
    ensure(code == 1, || format!("h = 0 accepted: exit {code}"))?;
    ensure(
        verdict(&r, "classification.condition-3") == "fail"
            && verdict(&r, "classification.condition-1") == "pass"
            && verdict(&r, "classification.condition-2") == "pass",
        || format!("h = 0: {:?}", failing(&r)),
    )?;

    let (code, r) = cli_report(&["cone-span", "--input", &fixture("jacobi1_boundary.json")])?;
    ensure(code == 1 && verdict(&r, "cones.span.plus") == "inconclusive", || {
        format!("boundary witness: exit {code}, {:?}", failing(&r))
    })?;
    Ok("eigenvalue 2 rejected, h = 0 fails condition 3, boundary witness inconclusive".into())
}

fn suite() -> Vec<Vec<String>> {
    let mut runs: Vec<Vec<String>> = Vec::new();
    let mut add = |args: &[&str]| runs.push(args.iter().map(|s| s.to_string()).collect());
    for name in ["sl2", "sp2n(2)", "heis(2)", "jacobi(1)", "jacobi(2)", "ex318", "oscillator", "ex319(2)"] {
        add(&["catalog", name]);
    }
    let sl2 = fixture("sl2.json");
    let jac = fixture("jacobi1.json");
    let heis = fixture("heis1.json");
    add(&["build", "--input", &sl2]);
    add(&["build", "--input", "catalog:ex318"]);
    add(&["derivations", "--input", &heis]);
    add(&["derivations", "--input", "catalog:jacobi(1)"]);
    add(&["classify", "--input", "catalog:ex319(2)"]);
    add(&["classify", "--input", &jac, "--derivation", &fixture("h_zero.json")]);
    for name in ["jacobi(1)", "jacobi(2)", "ex318"] {
        add(&["cone-span", "--input", &format!("catalog:{name}")]);
    }
    add(&["cone-span", "--input", &fixture("jacobi1_boundary.json")]);
    add(&["no-go", "--input", "catalog:oscillator"]);
    runs
}

fn without_timing(bytes: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(bytes);
    text.lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect::<Vec<_>>().join("\n").into_bytes()
}

fn determinism() -> Outcome {
    let runs = suite();
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (cli(&args), cli(&args));
        ensure(a.status.code() == b.status.code(), || format!("{args:?}: exit codes differ"))?;
        ensure(!a.stdout.is_empty(), || format!("{args:?}: empty report"))?;
        ensure(without_timing(&a.stdout) == without_timing(&b.stdout), || format!("{args:?}: reports differ"))?;
    }
    Ok(format!("{} reports byte-identical across two runs", runs.len()))
}

type Criterion = (u8, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "Spindler soundness", spindler_soundness),
        (2, "derivation-algebra dimensions", derivation_dimensions),
        (3, "classification round-trip", classification_round_trip),
        (4, "non-degeneration", non_degeneration),
        (5, "solvable no-go", solvable_no_go),
        (6, "symplectic machinery", symplectic_machinery),
        (7, "negative controls", negative_controls),
        (8, "determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail} [{ms} ms]"),
            Err(reason) => {
                println!("FAIL criterion {n} ({name}): {reason} [{ms} ms]");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        println!("acceptance: {} of 8 criteria failed: {failed:?}", failed.len());
        std::process::exit(1);
    }
    println!("acceptance: all 8 criteria pass");
}
