//! The verification pipelines behind each subcommand.

use liewedge_core::catalog;
use liewedge_core::cones::{certify_span, witness_3grading, ConeQuery};
use liewedge_core::derivations::{
    self, build_classified, classify_from_derivation, condition_checks, decompose_heis_derivation, grading_of,
    ClassifiedDerivation, ConditionCheck, Derivation, Grading3, NoGoOutcome,
};
use liewedge_core::linalg;
use liewedge_core::spindler::SpindlerAlgebra;
use liewedge_core::{Error as CoreError, LieAlgebra, SpanVerdict, SymplecticForm};
use serde_json::{json, Value};

use crate::input::{DerivationInput, Problem, Subject};
use crate::report::{self, CertificateRecord, Report, Verdict};
use crate::CliError;

/// Derivation bases larger than this need explicit no-go candidates.
pub const MAX_SCAN_BASIS: usize = 6;

fn invalid(path: &str, message: impl ToString) -> CliError {
    CliError::Validation { path: path.to_string(), message: message.to_string() }
}

fn spindler<'a>(p: &'a Problem, pipeline: &str) -> Result<&'a SpindlerAlgebra, CliError> {
    match &p.subject {
        Subject::Spindler(s) => Ok(s),
        Subject::Plain(_) => Err(invalid("spindler", format!("`{pipeline}` needs Spindler data"))),
    }
}

fn query(p: &Problem, s: &SpindlerAlgebra) -> Result<ConeQuery, CliError> {
    let f = p.functional.clone().ok_or_else(|| invalid("functional", "missing functional"))?;
    if f.len() != s.basis.dim_z {
        return Err(invalid("functional", format!("expected {} entries, found {}", s.basis.dim_z, f.len())));
    }
    ConeQuery::new(s.clone(), f).map_err(|e| invalid("functional", e))
}

fn describe(r: &mut Report, g: &LieAlgebra) {
    r.put("dim", g.dim());
    r.put("labels", g.labels().to_vec());
    r.put("center", report::vectors(&g.center()));
    r.put("derived_subalgebra", report::vectors(&g.derived_subalgebra()));
    r.put("solvable", g.is_solvable());
    r.put("nilpotent", g.is_nilpotent());
}

fn describe_blocks(r: &mut Report, s: &SpindlerAlgebra) {
    let cb = s.basis;
    r.put("blocks", json!({ "dim_v": cb.dim_v, "dim_z": cb.dim_z, "dim_l": cb.dim_l }));
}

fn spindler_checks(r: &mut Report, s: &SpindlerAlgebra, p: &Problem) {
    let g = &s.g;
    let n = g.dim();
    r.check_bool("spindler.jacobi-identity", g.check_jacobi().is_ok(), format!("all basis triples of dim {n}"));
    r.check_bool(
        "spindler.center-closed-form",
        linalg::same_span(&g.center(), &s.data.center_closed_form(), n),
        format!("dim z(g) = {}", g.center().len()),
    );
    r.check_bool(
        "spindler.derived-closed-form",
        linalg::same_span(&g.derived_subalgebra(), &s.data.derived_closed_form(), n),
        format!("dim [g,g] = {}", g.derived_subalgebra().len()),
    );
    r.check_bool("spindler.metadata", g.check_metadata().is_ok(), "");
    if !p.torus.is_empty() {
        match s.data.check_effective_torus(&p.torus) {
            Ok(ok) => r.check_bool("spindler.effective-torus", ok, format!("{} torus elements", p.torus.len())),
            Err(e) => r.check("spindler.effective-torus", Verdict::Fail, e.to_string()),
        }
    }
    if let Some(f) = &p.functional {
        match SymplecticForm::new(&s.data, f.clone()) {
            Ok(form) => {
                r.check("spindler.symplectic-functional", Verdict::Pass, "f o beta is nondegenerate");
                if let Some(x) = &p.convex_x {
                    r.check_bool("spindler.convex-type", s.data.check_convex_type(&form, x), "");
                }
                if let Ok(q) = ConeQuery::new(s.clone(), f.clone()) {
                    let defect = q.phi_homomorphism_defect();
                    let detail = defect.map_or(String::new(), |(i, j)| format!("fails on ({i}, {j})"));
                    r.check_bool("cones.phi-homomorphism", defect.is_none(), detail);
                }
            }
            Err(e) => r.check("spindler.symplectic-functional", Verdict::Fail, e.to_string()),
        }
    }
}

pub fn build(p: &Problem) -> Report {
    let mut r = Report::new("build", &p.source);
    describe(&mut r, p.subject.lie());
    match &p.subject {
        Subject::Plain(_) => match &p.deferred_jacobi {
            Some(Ok(())) => r.check("algebra.jacobi-identity", Verdict::Pass, "deferred check over all basis triples"),
            Some(Err(e)) => r.check("algebra.jacobi-identity", Verdict::Fail, e.to_string()),
            None => r.check("algebra.jacobi-identity", Verdict::Pass, "validated at construction"),
        },
        Subject::Spindler(s) => {
            describe_blocks(&mut r, s);
            r.put("warnings", s.data.warnings());
            spindler_checks(&mut r, s, p);
        }
    }
    r
}

pub fn derivations(p: &Problem) -> Report {
    let mut r = Report::new("derivations", &p.source);
    let g = p.subject.lie();
    let n = g.dim();
    let basis = derivations::derivation_algebra(g);
    let inner = derivations::inner_derivations(g);
    r.put("dim_der", basis.len());
    r.put("dim_inner", inner.len());
    r.put("dim_outer", basis.len() - inner.len());
    r.put("basis", Value::from(basis.iter().map(report::matrix).collect::<Vec<_>>()));
    let bad = basis.iter().position(|m| Derivation::new(g, m.clone()).is_err());
    r.check_bool(
        "derivations.basis-valid",
        bad.is_none(),
        bad.map_or(format!("{} basis elements", basis.len()), |i| format!("basis element {i} fails")),
    );
    let flat: Vec<_> = basis.iter().map(|m| m.flatten().to_vec()).collect();
    let missing = (0..n).find(|&i| !linalg::in_span(&flat, derivations::inner(g, &linalg::unit_vec(n, i)).flatten()));
    r.check_bool(
        "derivations.inner-contained",
        missing.is_none(),
        missing.map_or(String::new(), |i| format!("ad({}) is outside", g.labels()[i])),
    );
    if let Subject::Spindler(s) = &p.subject {
        if s.basis.dim_l == 0 {
            let failures: Vec<String> = basis
                .iter()
                .enumerate()
                .filter_map(|(i, m)| {
                    let d = Derivation::new(g, m.clone()).ok()?;
                    decompose_heis_derivation(s, &d).err().map(|e| format!("{i}: {e}"))
                })
                .collect();
            r.check_bool("derivations.heisenberg-blocks", failures.is_empty(), failures.join("; "));
        }
    }
    r
}

fn condition_id(c: &ConditionCheck) -> String {
    match c.condition {
        Some(k) => format!("classification.condition-{k}"),
        None => "classification.beta-compatible".into(),
    }
}

fn record_conditions(r: &mut Report, checks: &[ConditionCheck]) -> bool {
    for c in checks {
        match &c.outcome {
            Ok(()) => r.check(condition_id(c), Verdict::Pass, ""),
            Err(e) => r.check(condition_id(c), Verdict::Fail, e.clone()),
        }
    }
    checks.iter().all(|c| c.outcome.is_ok())
}

fn record_grading(r: &mut Report, g: &LieAlgebra, d: &Derivation) -> Option<Grading3> {
    match grading_of(g, d) {
        Ok(grading) => {
            let (m, z, p) = grading.dims();
            r.put("grading_dims", json!({ "minus": m, "zero": z, "plus": p }));
            r.check("grading.three-grading", Verdict::Pass, format!("dims (g-1, g0, g1) = ({m}, {z}, {p})"));
            Some(grading)
        }
        Err(e) => {
            r.check("grading.three-grading", Verdict::Fail, e.to_string());
            None
        }
    }
}

fn leibniz(r: &mut Report, g: &LieAlgebra, m: liewedge_core::Mat) -> Option<Derivation> {
    match Derivation::new(g, m) {
        Ok(d) => {
            r.check("derivation.leibniz", Verdict::Pass, "");
            Some(d)
        }
        Err(e) => {
            r.check("derivation.leibniz", Verdict::Fail, e.to_string());
            None
        }
    }
}

/// Runs the classification checks and returns the classified data when all
/// of them pass.
fn classify_into(
    r: &mut Report,
    s: &SpindlerAlgebra,
    input: &DerivationInput,
) -> Result<Option<(ClassifiedDerivation, Derivation, Grading3)>, CliError> {
    let c = match input {
        DerivationInput::Classified { h, d_v, d_z } => {
            let c = ClassifiedDerivation { h: h.clone(), d_v: d_v.clone(), d_z: d_z.clone() };
            let checks = condition_checks(s, &c).map_err(|e| invalid("derivation", e))?;
            if !record_conditions(r, &checks) {
                return Ok(None);
            }
            c
        }
        DerivationInput::Matrix(m) => {
            let Some(d) = leibniz(r, &s.g, m.clone()) else {
                return Ok(None);
            };
            if record_grading(r, &s.g, &d).is_none() {
                return Ok(None);
            }
            match classify_from_derivation(s, &d) {
                Ok(c) => {
                    r.check("classification.adapted-presentation", Verdict::Pass, "");
                    let checks = condition_checks(s, &c).map_err(|e| invalid("derivation", e))?;
                    record_conditions(r, &checks);
                    c
                }
                Err(e) => {
                    let id = match e.condition {
                        Some(k) => format!("classification.condition-{k}"),
                        None => "classification.adapted-presentation".into(),
                    };
                    r.check(id, Verdict::Fail, e.reason);
                    return Ok(None);
                }
            }
        }
    };
    let (c, d, grading) = match build_classified(s, c.h, c.d_v, c.d_z) {
        Ok(t) => t,
        Err(e) => {
            let id = match e {
                CoreError::NotADerivation(_) => "derivation.leibniz",
                _ => "grading.three-grading",
            };
            r.check(id, Verdict::Fail, e.to_string());
            return Ok(None);
        }
    };
    if matches!(input, DerivationInput::Classified { .. }) {
        r.check("derivation.leibniz", Verdict::Pass, "");
        record_grading(r, &s.g, &d);
    }
    r.put("h", report::texts(&c.h));
    r.put("d_v", report::matrix(&c.d_v));
    r.put("d_z", report::matrix(&c.d_z));
    let back = classify_from_derivation(s, &d);
    r.check_bool(
        "classification.round-trip",
        back.as_ref().is_ok_and(|b| *b == c),
        back.err().map_or(String::new(), |e| e.to_string()),
    );
    let z = c.center_decomposition(s);
    r.check_bool(
        "classification.center-decomposition",
        z.holds(),
        format!("dims {} + {} + {} of {}", z.plus.len(), z.minus.len(), z.mixed.len(), z.dim_z),
    );
    Ok(Some((c, d, grading)))
}

fn required_derivation(p: &Problem) -> Result<&DerivationInput, CliError> {
    p.derivation.as_ref().ok_or_else(|| invalid("derivation", "missing derivation"))
}

pub fn classify(p: &Problem) -> Result<Report, CliError> {
    let mut r = Report::new("classify", &p.source);
    let input = required_derivation(p)?;
    match &p.subject {
        Subject::Spindler(s) => {
            describe_blocks(&mut r, s);
            classify_into(&mut r, s, input)?;
        }
        Subject::Plain(g) => {
            let DerivationInput::Matrix(m) = input else {
                return Err(invalid("derivation", "classified form needs Spindler data"));
            };
            if let Some(d) = leibniz(&mut r, g, m.clone()) {
                record_grading(&mut r, g, &d);
            }
        }
    }
    Ok(r)
}

fn side_name(side: i8) -> &'static str {
    if side > 0 {
        "plus"
    } else {
        "minus"
    }
}

pub fn cone_span(p: &Problem, max_halvings: u32) -> Result<Report, CliError> {
    let mut r = Report::new("cone-span", &p.source);
    let s = spindler(p, "cone-span")?;
    let q = query(p, s)?;
    let input = required_derivation(p)?;
    let witnesses = [
        (1i8, p.plus.as_ref().ok_or_else(|| invalid("witnesses.plus", "missing witness"))?),
        (-1i8, p.minus.as_ref().ok_or_else(|| invalid("witnesses.minus", "missing witness"))?),
    ];
    describe_blocks(&mut r, s);
    r.put("max_halvings", max_halvings);
    let defect = q.phi_homomorphism_defect();
    r.check_bool("cones.phi-homomorphism", defect.is_none(), "");
    let Some((c, _, grading)) = classify_into(&mut r, s, input)? else {
        return Ok(r);
    };
    for (side, w) in witnesses {
        let name = side_name(side);
        let y = match witness_3grading(&q, &grading, &c, side, &w.jordan_units, w.central.as_deref()) {
            Ok(y) => y,
            Err(e) => {
                r.check(format!("cones.witness.{name}"), Verdict::Fail, e.to_string());
                continue;
            }
        };
        let poly = q.polynomial(y.coords());
        r.put(
            &format!("witness_polynomial.{name}"),
            json!({
                "quadratic": report::matrix(&poly.q),
                "linear": report::texts(&poly.linear),
                "constant": report::text(&poly.constant),
            }),
        );
        r.check(format!("cones.witness.{name}"), Verdict::Pass, format!("in g_{side}(D)"));
        match certify_span(&q, grading.side(side), y.coords(), max_halvings) {
            Ok(SpanVerdict::Certified(cert)) => {
                let deepest = cert.halvings().into_iter().max().unwrap_or(0);
                r.check(
                    format!("cones.span.{name}"),
                    Verdict::Pass,
                    format!("dim {}, smallest eps 2^-{deepest}", cert.subspace.len()),
                );
                r.check_bool(format!("cones.revalidate.{name}"), cert.revalidate(&q), "all points re-checked exactly");
                r.certificates.push(CertificateRecord::new(side, &cert));
            }
            Ok(SpanVerdict::Inconclusive { direction }) => r.check(
                format!("cones.span.{name}"),
                Verdict::Inconclusive,
                format!("no eps >= 2^-{max_halvings} for direction {direction}"),
            ),
            Err(e) => r.check(format!("cones.span.{name}"), Verdict::Fail, e.to_string()),
        }
    }
    Ok(r)
}

pub fn no_go(p: &Problem) -> Result<Report, CliError> {
    let mut r = Report::new("no-go", &p.source);
    let s = spindler(p, "no-go")?;
    let q = query(p, s)?;
    let g = &s.g;
    describe_blocks(&mut r, s);
    let abelian = s.data.l.derived_subalgebra().is_empty();
    let solvable = g.is_solvable();
    let center_in_derived = linalg::span_contains(&g.derived_subalgebra(), &g.center(), g.dim());
    r.check_bool("no-go.abelian-reductive-part", abelian, "");
    r.check_bool("no-go.solvable", solvable, "");
    r.check_bool("no-go.center-in-derived", center_in_derived, "");
    if !(abelian && solvable && center_in_derived) {
        return Ok(r);
    }
    r.check_bool(
        "no-go.nilradical-cone-central",
        q.cone_in_nilradical_is_central(),
        "decided on the affine polynomials of V + z(g)",
    );
    let candidates = match &p.candidates {
        Some(c) => c.clone(),
        None => {
            let basis = derivations::derivation_algebra(g);
            r.put("dim_der", basis.len());
            if basis.len() > MAX_SCAN_BASIS {
                return Err(invalid(
                    "derivation.candidates",
                    format!("derivation algebra has dim {}; supply explicit candidates", basis.len()),
                ));
            }
            derivations::rescaled_combinations(&basis)
        }
    };
    let scan = derivations::solvable_no_go_scan(&q, &candidates).map_err(|e| invalid("spindler", e))?;
    let mut counts = std::collections::BTreeMap::new();
    for o in &scan.outcomes {
        let key = match o {
            NoGoOutcome::NotADerivation => "not_a_derivation",
            NoGoOutcome::NoGrading(_) => "no_grading",
            NoGoOutcome::ZeroSurvivor => "zero",
            NoGoOutcome::SpanFails { .. } => "span_fails",
            NoGoOutcome::Unresolved(_) => "unresolved",
        };
        *counts.entry(key).or_insert(0usize) += 1;
    }
    let survivors = scan.survivors();
    r.put("candidates", candidates.len());
    r.put("outcomes", json!(counts));
    r.put("survivors", survivors.clone());
    let nonzero: Vec<usize> = survivors.iter().copied().filter(|&i| !candidates[i].is_zero()).collect();
    r.check_bool(
        "no-go.only-zero-survives",
        nonzero.is_empty(),
        if nonzero.is_empty() {
            format!("{} of {} candidates survive, all zero", survivors.len(), candidates.len())
        } else {
            format!("nonzero survivors {nonzero:?}")
        },
    );
    Ok(r)
}

pub fn catalog(name: Option<&str>) -> Result<Report, CliError> {
    let Some(name) = name else {
        let mut r = Report::new("catalog", "catalog:");
        r.put("names", catalog::names());
        return Ok(r);
    };
    let entry = catalog::get(name).map_err(|e| invalid("name", e))?;
    let mut r = Report::new("catalog", &format!("catalog:{}", entry.name));
    r.put("name", entry.name.clone());
    r.put("dim", entry.algebra.g.dim());
    r.put("labels", entry.algebra.g.labels().to_vec());
    describe_blocks(&mut r, &entry.algebra);
    r.put("tube_type", entry.tube_type);
    if let Some(f) = &entry.functional {
        r.put("functional", report::texts(f));
    }
    if let Some(x) = &entry.convex_x {
        r.put("convex_x", report::texts(x));
    }
    r.put("torus", report::vectors(&entry.torus));
    for c in entry.self_checks() {
        r.check_bool(c.id, c.passed, c.detail);
    }
    Ok(r)
}
