use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use hopfdiff::actions::{
    crossed_hom_properties, crossed_hom_witness, derived_action, derived_module_structure,
    graph_hopf_iso, graph_of, smash_product, validate_action, ActionData, CrossedHom,
};
use hopfdiff::catalog;
use hopfdiff::diffops::{
    check_diff_module_bialgebra, check_diffop, ckmm_instance_check, diff_to_endo,
    extend_diff_smash, rota_baxter_inverse, rota_baxter_witness, star, DiffError, DiffFailure,
    DiffOp,
};
use hopfdiff::exactlin::{Mat, Rat};
use hopfdiff::free::{
    ckmm_truncated_instance, diffop_from_hom, lyndon_dims, mm_instance_check, FreeLie,
    GradedTruncation, PairCheck,
};
use hopfdiff::hopf::{grouplikes, primitives, skew_primitives, validate_hopf, FinDimHopf, LinMap};
use hopfdiff::lie::LieAction;
use hopfdiff::sample::{crossed_agreement_suite, diffop_agreement_suite};
use hopfdiff::solver::{
    classify_diffops, verify_against_published, BranchStatus, Certificate, ClassificationResult,
    Route, SearchPlan,
};

use crate::formats::{
    mat_rows, parse_word, read_json, strs, to_text, ActionFile, AlgebraFile, AlgebraRef,
    ExpectedFile, GroupFile, LieFile, OperatorFile, PhiFile, PlanFile,
};
use crate::{CatalogCommand, CliError, Command, FreeLieCommand, Outcome};

/// Maps sampled per `--seed` run.
pub const SAMPLES: usize = 60;

pub fn verb(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Grouplikes(_) => "grouplikes",
        Command::Primitives(_) => "primitives",
        Command::SkewPrimitives(_) => "skew-primitives",
        Command::CheckDiffop { .. } => "check-diffop",
        Command::CheckCrossedHom { .. } => "check-crossed-hom",
        Command::ClassifyDiffops { .. } => "classify-diffops",
        Command::Smash { .. } => "smash",
        Command::Graph { .. } => "graph",
        Command::MonoidTable { .. } => "monoid-table",
        Command::RotaBaxter { .. } => "rota-baxter",
        Command::ExtendSmashDiff { .. } => "extend-smash-diff",
        Command::FreeLie { command } => match command {
            FreeLieCommand::LyndonDims(_) => "free-lie lyndon-dims",
            FreeLieCommand::DiffopFromHom { .. } => "free-lie diffop-from-hom",
            FreeLieCommand::MmCheck { .. } => "free-lie mm-check",
        },
        Command::CkmmCheck { .. } => "ckmm-check",
        Command::Catalog { command } => match command {
            CatalogCommand::List => "catalog list",
            CatalogCommand::Export { .. } => "catalog export",
        },
    }
}

pub fn execute(c: Command) -> Result<Outcome, CliError> {
    match c {
        Command::Validate { algebra, action } => match (algebra, action) {
            (Some(a), _) => validate(&*load_algebra(&a)?),
            (None, Some(a)) => validate_action_cmd(&load_action(&a)?),
            (None, None) => Err(input("give --algebra or --action")),
        },
        Command::Grouplikes(a) => grouplikes_cmd(&*load_algebra(&a.algebra)?),
        Command::Primitives(a) => primitives_cmd(&*load_algebra(&a.algebra)?),
        Command::SkewPrimitives(a) => skew_cmd(&*load_algebra(&a.algebra)?),
        Command::CheckDiffop {
            algebra,
            operator,
            seed,
        } => {
            let h = load_algebra(&algebra.algebra)?;
            match (operator, seed) {
                (Some(op), _) => check_diffop_cmd(&load_endo(&op, &h)?),
                (None, Some(seed)) => diffop_suite_cmd(&h, seed),
                (None, None) => Err(input("give --operator or --seed")),
            }
        }
        Command::CheckCrossedHom {
            action,
            operator,
            seed,
        } => {
            let a = load_action(&action)?;
            match (operator, seed) {
                (Some(op), _) => check_crossed_cmd(&a, &load_map(&op, a.acting(), a.target())?),
                (None, Some(seed)) => crossed_suite_cmd(&a, seed),
                (None, None) => Err(input("give --operator or --seed")),
            }
        }
        Command::ClassifyDiffops {
            algebra,
            plan,
            bijective_only,
            expected,
            out,
        } => {
            let h = load_algebra(&algebra.algebra)?;
            let plan = load_plan(&h, plan.as_deref())?;
            classify_cmd(&plan, bijective_only, expected.as_deref(), out.as_deref())
        }
        Command::Smash { action, out } => smash_cmd(&load_action(&action)?, out.as_deref()),
        Command::Graph { action, operator } => {
            let a = load_action(&action)?;
            let pi = load_map(&operator, a.acting(), a.target())?;
            graph_cmd(&a, &pi)
        }
        Command::MonoidTable { algebra, plan } => {
            let h = load_algebra(&algebra.algebra)?;
            monoid_cmd(&load_plan(&h, plan.as_deref())?)
        }
        Command::RotaBaxter {
            algebra,
            operator,
            out,
        } => {
            let h = load_algebra(&algebra.algebra)?;
            rota_baxter_cmd(&load_endo(&operator, &h)?, out.as_deref())
        }
        Command::ExtendSmashDiff {
            action,
            operator,
            out,
        } => {
            let a = load_action(&action)?;
            let [dh, dk] = operator.as_slice() else {
                return Err(input("give --operator twice: target first, then acting"));
            };
            let dh = load_endo(dh, a.target())?;
            let dk = load_endo(dk, a.acting())?;
            extend_cmd(&a, &dh, &dk, out.as_deref())
        }
        Command::FreeLie { command } => match command {
            FreeLieCommand::LyndonDims(f) => lyndon_cmd(f.generators, f.budget),
            FreeLieCommand::DiffopFromHom { free, operator } => {
                diffop_from_hom_cmd(free.generators, free.budget, &read_json(&operator)?)
            }
            FreeLieCommand::MmCheck { free, operator } => {
                mm_cmd(free.generators, free.budget, &read_json(&operator)?)
            }
        },
        Command::CkmmCheck {
            algebra,
            operator,
            budget,
        } => match (algebra, budget) {
            (Some(a), _) => {
                let h = load_algebra(&a)?;
                ckmm_cmd(&h, operator.as_deref())
            }
            (None, Some(n)) => ckmm_trunc_cmd(n),
            (None, None) => Err(input("give --algebra or --budget")),
        },
        Command::Catalog { command } => match command {
            CatalogCommand::List => Ok(catalog_list()),
            CatalogCommand::Export { out } => catalog_export(&out),
        },
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn outcome(ok: bool, report: Value, summary: impl Into<String>) -> Result<Outcome, CliError> {
    Ok(Outcome {
        ok,
        report,
        summary: summary.into(),
    })
}

// ---- loading ----

pub fn load_algebra(spec: &str) -> Result<Arc<FinDimHopf>, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let file: AlgebraFile = read_json(path)?;
        return Ok(Arc::new(file.to_hopf()?));
    }
    catalog::hopf(spec)
        .map(Arc::new)
        .map_err(|_| input(format!("`{spec}` is neither a file nor a catalog algebra")))
}

pub fn load_action(spec: &str) -> Result<ActionData, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let file: ActionFile = read_json(path)?;
        return file.to_action();
    }
    match spec {
        "inversion" => Ok(catalog::inversion_action()),
        _ => Err(input(format!(
            "`{spec}` is neither a file nor a catalog action"
        ))),
    }
}

/// Operator file, or a named map on a single algebra.
pub fn load_endo(spec: &str, h: &Arc<FinDimHopf>) -> Result<LinMap, CliError> {
    match spec {
        "id" => Ok(LinMap::identity(h)),
        "unit-counit" => Ok(LinMap::unit_counit(h, h)),
        "antipode" => Ok(LinMap::antipode(h)),
        _ => load_map(spec, h, h),
    }
}

pub fn load_map(
    spec: &str,
    domain: &Arc<FinDimHopf>,
    codomain: &Arc<FinDimHopf>,
) -> Result<LinMap, CliError> {
    if spec == "unit-counit" {
        return Ok(LinMap::unit_counit(domain, codomain));
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(input(format!("operator `{spec}` is not a file")));
    }
    let file: OperatorFile = read_json(path)?;
    file.to_map(domain, codomain)
}

/// Plan file, or the catalog plan when `h` is a catalog algebra.
pub fn load_plan(h: &Arc<FinDimHopf>, path: Option<&Path>) -> Result<SearchPlan, CliError> {
    if let Some(p) = path {
        let file: PlanFile = read_json(p)?;
        return file.to_plan(h);
    }
    match catalog::hopf(h.name()) {
        Ok(c) if c == **h => catalog::plan(h).map_err(err),
        _ => Err(input(format!(
            "`{}` is not a catalog algebra; give --plan",
            h.name()
        ))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

// ---- report pieces ----

fn operator_json(f: &LinMap) -> Value {
    let h = f.codomain();
    let images: Vec<String> = (0..f.domain().dim())
        .map(|i| format!("{} ↦ {}", f.domain().label(i), h.format(&f.image(i))))
        .collect();
    json!({ "matrix": mat_rows(f.matrix()), "images": images })
}

fn labels(h: &FinDimHopf, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| h.label(i).to_string()).collect()
}

fn pair_json(p: &PairCheck) -> Value {
    json!({ "checked": p.checked, "skipped": p.skipped, "witness": p.witness })
}

fn failure_json(h: &FinDimHopf, f: &DiffFailure) -> Value {
    match f {
        DiffFailure::NotEndo => json!({ "kind": "not-endomorphism" }),
        DiffFailure::NotCoalgebraHom(i) => {
            json!({ "kind": "not-coalgebra-map", "witness": [h.label(*i)] })
        }
        DiffFailure::Identity(x, y) => {
            json!({ "kind": "difference-identity", "witness": [h.label(*x), h.label(*y)] })
        }
    }
}

// ---- commands ----

fn validate(h: &FinDimHopf) -> Result<Outcome, CliError> {
    let rep = validate_hopf(h);
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({ "axiom": c.axiom.name(), "passes": c.witness.is_none(), "witness": c.witness }))
        .collect();
    let ok = rep.passes();
    let summary = match rep.failures().next() {
        None => format!("{}: all Hopf axioms hold", h.name()),
        Some(f) => format!(
            "{}: {} fails at {:?}",
            h.name(),
            f.axiom,
            f.witness.as_deref().unwrap_or(&[])
        ),
    };
    outcome(
        ok,
        json!({ "algebra": AlgebraRef::of(h), "dim": h.dim(), "passes": ok, "checks": checks }),
        summary,
    )
}

fn validate_action_cmd(a: &ActionData) -> Result<Outcome, CliError> {
    let bialgebra = a.acting().is_cocommutative();
    let rep = validate_action(a, bialgebra);
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|(ax, w)| json!({ "axiom": ax.name(), "passes": w.is_none(), "witness": w }))
        .collect();
    let ok = rep.passes();
    let summary = match rep.first_failure() {
        None => format!(
            "action of {} on {}: all axioms hold",
            a.acting().name(),
            a.target().name()
        ),
        Some((ax, w)) => format!("action fails {} at {w:?}", ax.name()),
    };
    outcome(
        ok,
        json!({
            "acting": AlgebraRef::of(a.acting()),
            "target": AlgebraRef::of(a.target()),
            "module_bialgebra_checked": bialgebra,
            "passes": ok,
            "checks": checks,
        }),
        summary,
    )
}

fn grouplikes_cmd(h: &FinDimHopf) -> Result<Outcome, CliError> {
    let g = grouplikes(h).map_err(err)?;
    let summary = format!(
        "{}: {} group-like basis elements ({})",
        h.name(),
        g.indices.len(),
        if g.complete {
            "complete"
        } else {
            "basis elements only"
        }
    );
    outcome(
        true,
        json!({
            "algebra": AlgebraRef::of(h),
            "indices": g.indices,
            "labels": labels(h, &g.indices),
            "complete": g.complete,
        }),
        summary,
    )
}

fn primitives_cmd(h: &FinDimHopf) -> Result<Outcome, CliError> {
    let p = primitives(h);
    let vectors: Vec<Vec<String>> = p.iter().map(|v| strs(v)).collect();
    let summary = format!("{}: primitive space of dimension {}", h.name(), p.len());
    outcome(
        true,
        json!({ "algebra": AlgebraRef::of(h), "dimension": p.len(), "basis": vectors }),
        summary,
    )
}

fn skew_cmd(h: &FinDimHopf) -> Result<Outcome, CliError> {
    let g = grouplikes(h).map_err(err)?;
    let mut pairs = Vec::new();
    let mut nontrivial = 0;
    for (a, ga) in g.indices.iter().zip(&g.elements) {
        for (b, gb) in g.indices.iter().zip(&g.elements) {
            let basis = skew_primitives(h, ga, gb).map_err(err)?;
            // g − h always lies in the space; anything beyond it is nontrivial
            let trivial = usize::from(a != b);
            nontrivial += basis.len().saturating_sub(trivial);
            pairs.push(json!({
                "g": h.label(*a),
                "h": h.label(*b),
                "dimension": basis.len(),
                "basis": basis.iter().map(|v| h.format(v)).collect::<Vec<_>>(),
            }));
        }
    }
    outcome(
        true,
        json!({ "algebra": AlgebraRef::of(h), "pairs": pairs }),
        format!(
            "{}: {} nontrivial skew-primitive dimensions",
            h.name(),
            nontrivial
        ),
    )
}

fn check_diffop_cmd(d: &LinMap) -> Result<Outcome, CliError> {
    let h = d.domain();
    match check_diffop(d) {
        Ok(op) => outcome(
            true,
            json!({
                "algebra": AlgebraRef::of(h),
                "is_diffop": true,
                "bijective": op.is_bijective(),
                "operator": operator_json(d),
            }),
            format!("{}: difference operator", h.name()),
        ),
        Err(f) => outcome(
            false,
            json!({
                "algebra": AlgebraRef::of(h),
                "is_diffop": false,
                "failure": failure_json(h, &f),
                "operator": operator_json(d),
            }),
            format!("{}: not a difference operator: {f}", h.name()),
        ),
    }
}

fn diffop_suite_cmd(h: &Arc<FinDimHopf>, seed: u64) -> Result<Outcome, CliError> {
    let t = diffop_agreement_suite(h, SAMPLES, seed).map_err(err)?;
    let ok = t.disagreements.is_empty();
    let summary = format!(
        "{}: {} sampled coalgebra maps, {} difference operators, {} disagreements",
        h.name(),
        t.maps,
        t.positive,
        t.disagreements.len()
    );
    outcome(
        ok,
        json!({
            "algebra": AlgebraRef::of(h),
            "seed": seed,
            "maps": t.maps,
            "positive": t.positive,
            "disagreements": t.disagreements,
        }),
        summary,
    )
}

fn check_crossed_cmd(a: &ActionData, pi: &LinMap) -> Result<Outcome, CliError> {
    let base =
        json!({ "acting": AlgebraRef::of(a.acting()), "target": AlgebraRef::of(a.target()) });
    let mut report = base;
    let m = report.as_object_mut().expect("object");
    m.insert("operator".into(), operator_json(pi));
    if let Some((x, y)) = crossed_hom_witness(pi, a) {
        m.insert("is_crossed_hom".into(), false.into());
        let k = a.acting();
        m.insert("witness".into(), json!([k.label(x), k.label(y)]));
        return outcome(
            false,
            report,
            format!(
                "not a crossed homomorphism at ({}, {})",
                k.label(x),
                k.label(y)
            ),
        );
    }
    m.insert("is_crossed_hom".into(), true.into());
    let c = CrossedHom::verify(pi.clone(), a.clone()).map_err(err)?;
    let props = crossed_hom_properties(&c).map_err(err)?;
    m.insert(
        "properties".into(),
        json!({
            "preserves_unit": props.preserves_unit,
            "antipode_left_witness": props.antipode_left,
            "antipode_right_witness": props.antipode_right,
            "convolution_inverse": props.convolution_inverse,
        }),
    );
    let mut ok = props.all_hold();
    if a.acting().is_cocommutative() {
        let derived = derived_action(&c);
        m.insert(
            "derived_action".into(),
            match &derived {
                Ok(d) => json!({
                    "verified": true,
                    "grouplikes_checked": d.grouplikes_checked,
                    "primitives_checked": d.primitives_checked,
                }),
                Err(e) => json!({ "verified": false, "error": e.to_string() }),
            },
        );
        ok &= derived.is_ok();
    }
    outcome(ok, report, "crossed homomorphism".to_string())
}

fn crossed_suite_cmd(a: &ActionData, seed: u64) -> Result<Outcome, CliError> {
    let t = crossed_agreement_suite(a, SAMPLES, seed).map_err(err)?;
    let ok = t.disagreements.is_empty() && t.graph_iso_failures.is_empty();
    let summary = format!(
        "{} sampled maps, {} crossed homomorphisms, {} graph isomorphisms, {} disagreements",
        t.maps,
        t.positive,
        t.graph_isos,
        t.disagreements.len() + t.graph_iso_failures.len()
    );
    outcome(
        ok,
        json!({
            "acting": AlgebraRef::of(a.acting()),
            "target": AlgebraRef::of(a.target()),
            "seed": seed,
            "maps": t.maps,
            "positive": t.positive,
            "graph_isos": t.graph_isos,
            "disagreements": t.disagreements,
            "graph_iso_failures": t.graph_iso_failures,
        }),
        summary,
    )
}

fn route_json(r: &Route) -> Value {
    match r {
        Route::None => json!({ "kind": "none" }),
        Route::Linear => json!({ "kind": "linear" }),
        Route::GroupAlgebraQuadratic { q, r } => {
            json!({ "kind": "group-algebra-quadratic", "q": strs(q), "r": strs(r) })
        }
        Route::PerCharacter => json!({ "kind": "per-character" }),
        Route::Elimination => json!({ "kind": "elimination" }),
    }
}

fn status_json(s: &BranchStatus) -> Value {
    match s {
        BranchStatus::Pruned(why) => json!({ "kind": "pruned", "reason": why }),
        BranchStatus::Empty(why) => json!({ "kind": "empty", "reason": why }),
        BranchStatus::Solved => json!({ "kind": "solved" }),
        BranchStatus::Residual(sys) => json!({ "kind": "residual", "system": sys }),
    }
}

fn classification_json(plan: &SearchPlan, r: &ClassificationResult) -> Value {
    let h = plan.target();
    let gl = plan.grouplike_indices();
    let certificate = match &r.certificate {
        Certificate::Complete => json!({ "status": "complete" }),
        Certificate::Partial(res) => json!({ "status": "partial", "residuals": res }),
    };
    let branches: Vec<Value> = r
        .branches
        .iter()
        .map(|b| {
            let restriction: Vec<String> = b
                .restriction
                .iter()
                .map(|&g| h.label(gl[g]).to_string())
                .collect();
            json!({
                "restriction": restriction,
                "status": status_json(&b.status),
                "route": route_json(&b.route),
                "intermediate": b.intermediate,
                "survivors": b.survivors,
                "notes": b.notes,
            })
        })
        .collect();
    let operators: Vec<Value> = r
        .operators
        .iter()
        .map(|d| {
            let mut v = operator_json(d.map());
            v.as_object_mut()
                .expect("object")
                .insert("bijective".into(), d.is_bijective().into());
            v
        })
        .collect();
    json!({
        "algebra": AlgebraRef::of(h),
        "certificate": certificate,
        "operators": operators,
        "branches": branches,
    })
}

fn classify_cmd(
    plan: &SearchPlan,
    bijective_only: bool,
    expected: Option<&Path>,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let h = plan.target();
    let start = Instant::now();
    let result = classify_diffops(plan, bijective_only).map_err(err)?;
    let elapsed = start.elapsed();
    let mut report = classification_json(plan, &result);
    let m = report.as_object_mut().expect("object");
    m.insert("bijective_only".into(), bijective_only.into());
    // wall-clock time would break byte-identical reports; it goes to stderr
    let solved = result
        .branches
        .iter()
        .filter(|b| b.status == BranchStatus::Solved)
        .count();
    m.insert(
        "timing".into(),
        json!({
            "branches": result.branches.len(),
            "branches_solved": solved,
            "candidates": result.branches.iter().map(|b| b.intermediate.unwrap_or(0)).sum::<usize>(),
        }),
    );
    let mut ok = true;
    let mut summary = format!(
        "{}: {} operators, certificate {}",
        h.name(),
        result.operators.len(),
        if result.certificate.is_complete() {
            "complete"
        } else {
            "partial"
        }
    );
    if let Some(p) = expected {
        let file: ExpectedFile = read_json(p)?;
        let tables = file.to_tables(h)?;
        let diff = verify_against_published(&result, &tables);
        ok = diff.is_equal();
        let entries: Vec<Value> = diff
            .entries
            .iter()
            .map(|e| {
                json!({
                    "table": e.table,
                    "column": h.label(e.column),
                    "row": h.label(e.row),
                    "expected": e.expected.to_string(),
                    "computed": e.computed.to_string(),
                })
            })
            .collect();
        m.insert(
            "expected".into(),
            json!({
                "equal": ok,
                "matched": diff.matched,
                "missing": diff.missing,
                "unexpected": diff.unexpected,
                "entries": entries,
            }),
        );
        summary.push_str(&if ok {
            format!("; matches all {} expected tables", tables.len())
        } else {
            format!(
                "; mismatch: missing {:?}, {} unexpected",
                diff.missing,
                diff.unexpected.len()
            )
        });
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
        for (i, d) in result.operators.iter().enumerate() {
            write_file(
                &dir.join(format!("{}.op{}.json", h.name(), i + 1)),
                &to_text(&OperatorFile::from_map(d.map())),
            )?;
        }
    }
    summary.push_str(&format!(" ({:.2}s)", elapsed.as_secs_f64()));
    outcome(ok, report, summary)
}

fn smash_cmd(a: &ActionData, out: Option<&Path>) -> Result<Outcome, CliError> {
    let rep = validate_action(a, true);
    if let Some((ax, w)) = rep.first_failure() {
        return outcome(
            false,
            json!({ "passes": false, "action_failure": { "axiom": ax.name(), "witness": w } }),
            format!("not a module bialgebra: {} fails at {w:?}", ax.name()),
        );
    }
    match smash_product(a) {
        Ok(s) => {
            if let Some(p) = out {
                write_file(p, &to_text(&AlgebraFile::from_hopf(&s)))?;
            }
            outcome(
                true,
                json!({ "passes": true, "algebra": AlgebraRef::of(&s), "dim": s.dim(), "basis": s.basis() }),
                format!("{}: Hopf algebra of dimension {}", s.name(), s.dim()),
            )
        }
        Err(e) => outcome(
            false,
            json!({ "passes": false, "error": e.to_string() }),
            e.to_string(),
        ),
    }
}

fn graph_cmd(a: &ActionData, pi: &LinMap) -> Result<Outcome, CliError> {
    let g = graph_of(pi, a).map_err(err)?;
    let module = derived_module_structure(pi, a).map_err(err)?;
    let mut report = json!({
        "acting": AlgebraRef::of(a.acting()),
        "target": AlgebraRef::of(a.target()),
        "graph_dim": g.basis.len(),
        "is_subalgebra": g.is_subalgebra(),
        "escape": g.escape,
        "derived_module": module.is_module(),
        "derived_module_witness": module.witness,
    });
    let mut ok = g.is_subalgebra();
    if ok && a.acting().is_cocommutative() {
        let c = CrossedHom::verify(pi.clone(), a.clone()).map_err(err)?;
        let iso = graph_hopf_iso(&c);
        report.as_object_mut().expect("object").insert(
            "hopf_iso".into(),
            match &iso {
                Ok(_) => json!({ "verified": true }),
                Err(e) => json!({ "verified": false, "error": e.to_string() }),
            },
        );
        ok &= iso.is_ok();
    }
    let summary = if g.is_subalgebra() {
        format!("graph of dimension {} is a subalgebra", g.basis.len())
    } else {
        format!("graph leaves the subalgebra at {:?}", g.escape)
    };
    outcome(ok, report, summary)
}

fn monoid_cmd(plan: &SearchPlan) -> Result<Outcome, CliError> {
    let h = plan.target();
    if !h.is_cocommutative() {
        return Err(input(format!("`{}` is not cocommutative", h.name())));
    }
    let ops = classify_diffops(plan, false).map_err(err)?.operators;
    let find = |d: &DiffOp| ops.iter().position(|e| e == d);
    let mut table = vec![vec![None; ops.len()]; ops.len()];
    let mut closed = true;
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            match star(a, b) {
                Ok(ab) => table[i][j] = find(&ab),
                Err(DiffError::StarFormulasDisagree(col)) => {
                    return outcome(
                        false,
                        json!({ "formulas_agree": false, "pair": [i, j], "column": h.label(col) }),
                        "the two ⋆ formulas disagree",
                    );
                }
                Err(e) => return Err(err(e)),
            }
            closed &= table[i][j].is_some();
        }
    }
    let unit_op = check_diffop(&LinMap::unit_counit(h, h))
        .ok()
        .and_then(|u| find(&u));
    let unital = unit_op
        .is_some_and(|u| (0..ops.len()).all(|i| table[u][i] == Some(i) && table[i][u] == Some(i)));
    let associative = closed
        && (0..ops.len()).all(|i| {
            (0..ops.len()).all(|j| {
                (0..ops.len()).all(|k| {
                    let ij = table[i][j].expect("closed");
                    let jk = table[j][k].expect("closed");
                    table[ij][k] == table[i][jk]
                })
            })
        });
    // D ↦ D∗id carries ⋆ to composition
    let endos: Vec<LinMap> = ops
        .iter()
        .map(|d| diff_to_endo(d.map()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let transport = closed
        && endos.iter().all(LinMap::is_hopf_hom)
        && (0..ops.len()).all(|i| {
            (0..ops.len()).all(|j| {
                endos[i].compose(&endos[j]).ok().as_ref()
                    == Some(&endos[table[i][j].expect("closed")])
            })
        });
    let ok = closed && unital && associative && transport;
    outcome(
        ok,
        json!({
            "algebra": AlgebraRef::of(h),
            "operators": ops.iter().map(|d| operator_json(d.map())).collect::<Vec<_>>(),
            "table": table,
            "unit": unit_op,
            "closed": closed,
            "unital": unital,
            "associative": associative,
            "formulas_agree": true,
            "transport_to_endomorphisms": transport,
        }),
        format!(
            "{}: {} operators, monoid {}",
            h.name(),
            ops.len(),
            if ok { "verified" } else { "check failed" }
        ),
    )
}

fn rota_baxter_cmd(d: &LinMap, out: Option<&Path>) -> Result<Outcome, CliError> {
    let h = d.domain();
    let op = match check_diffop(d) {
        Ok(op) => op,
        Err(f) => {
            return outcome(
                false,
                json!({ "algebra": AlgebraRef::of(h), "failure": failure_json(h, &f) }),
                format!("not a difference operator: {f}"),
            )
        }
    };
    match rota_baxter_inverse(&op) {
        Ok(rb) => {
            if let Some(p) = out {
                write_file(p, &to_text(&OperatorFile::from_map(&rb.operator)))?;
            }
            let ok = rota_baxter_witness(&rb.operator).is_none() && rb.round_trip == op;
            outcome(
                ok,
                json!({
                    "algebra": AlgebraRef::of(h),
                    "rota_baxter": operator_json(&rb.operator),
                    "round_trip": rb.round_trip == op,
                }),
                "Rota–Baxter operator verified".to_string(),
            )
        }
        Err(DiffError::Singular) => outcome(
            false,
            json!({ "algebra": AlgebraRef::of(h), "failure": { "kind": "singular" } }),
            "operator is not bijective",
        ),
        Err(e) => outcome(
            false,
            json!({ "algebra": AlgebraRef::of(h), "failure": { "kind": "verification", "error": e.to_string() } }),
            e.to_string(),
        ),
    }
}

fn extend_cmd(
    a: &ActionData,
    dh: &LinMap,
    dk: &LinMap,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let (h, k) = (a.target(), a.acting());
    let dh = check_diffop(dh).map_err(|f| input(format!("target operator: {f}")))?;
    let dk = check_diffop(dk).map_err(|f| input(format!("acting operator: {f}")))?;
    let m = match check_diff_module_bialgebra(&dh, &dk, a) {
        Ok(m) => m,
        Err(DiffError::IdentityFails(w)) => {
            let (x, y) = (k.label(w[0]), h.label(w[1]));
            return outcome(
                false,
                json!({ "compatible": false, "witness": [x, y] }),
                format!("incompatible pair, witness ({x}, {y})"),
            );
        }
        Err(e) => return Err(err(e)),
    };
    let ext = extend_diff_smash(&m).map_err(err)?;
    if let Some(p) = out {
        write_file(p, &to_text(&OperatorFile::from_map(ext.op.map())))?;
    }
    outcome(
        true,
        json!({
            "compatible": true,
            "smash": AlgebraRef::of(&ext.smash),
            "operator": operator_json(ext.op.map()),
        }),
        format!("extended to a difference operator on {}", ext.smash.name()),
    )
}

fn lyndon_cmd(k: usize, n: usize) -> Result<Outcome, CliError> {
    let d = lyndon_dims(k, n).map_err(err)?;
    outcome(
        d.agree(),
        json!({ "generators": k, "budget": n, "lyndon": d.lyndon, "primitive": d.primitive, "agree": d.agree() }),
        format!("Lyndon {:?}, primitives {:?}", d.lyndon, d.primitive),
    )
}

fn combination(t: &GradedTruncation, c: &[(String, String)]) -> Result<Vec<Rat>, CliError> {
    let mut v = t.zero();
    for (w, q) in c {
        let key = parse_word(w)?;
        let i = t
            .index_of_key(&key)
            .ok_or_else(|| input(format!("word `{w}` is not in the basis of {}", t.name())))?;
        v[i] += &crate::formats::rat(q)?;
    }
    Ok(v)
}

fn diffop_from_hom_cmd(k: usize, n: usize, phi: &PhiFile) -> Result<Outcome, CliError> {
    if phi.action.is_some() {
        return Err(input("`action` is not used by diffop-from-hom"));
    }
    if phi.images.len() != k {
        return Err(input(format!("φ needs {k} images")));
    }
    let tv = Arc::new(GradedTruncation::tensor(k, n).map_err(err)?);
    let images = phi
        .images
        .iter()
        .map(|c| combination(&tv, c))
        .collect::<Result<Vec<_>, _>>()?;
    let d = diffop_from_hom(&tv, &images).map_err(err)?;
    let shown: Vec<String> = (0..tv.dim())
        .map(|i| format!("{} ↦ {}", tv.label(i), tv.format(&d.map.image(i))))
        .collect();
    let ok = d.pairs.passes() && d.round_trip;
    outcome(
        ok,
        json!({
            "generators": k,
            "budget": n,
            "matrix": mat_rows(d.map.matrix()),
            "images": shown,
            "identity": pair_json(&d.pairs),
            "round_trip": d.round_trip,
        }),
        format!(
            "difference operator on TV≤{n}: identity {}",
            if ok { "holds" } else { "fails" }
        ),
    )
}

fn mm_cmd(k: usize, n: usize, phi: &PhiFile) -> Result<Outcome, CliError> {
    let fl = FreeLie::new(k, n).map_err(err)?;
    let lie = fl.lie();
    let action = match phi.action.as_deref() {
        Some("adjoint") => LieAction::adjoint(lie),
        Some("trivial") | None => LieAction::trivial(lie, lie),
        Some(other) => return Err(input(format!("unknown action `{other}`"))),
    };
    let d = lie.dim();
    if phi.images.len() != d {
        return Err(input(format!("π needs {d} images, one per Lyndon word")));
    }
    let mut pi = Mat::zeros(d, d);
    for (j, c) in phi.images.iter().enumerate() {
        for (w, q) in c {
            let key = parse_word(w)?;
            let i = fl
                .words()
                .iter()
                .position(|u| *u == key)
                .ok_or_else(|| input(format!("`{w}` is not a Lyndon word of degree ≤ {n}")))?;
            pi[(i, j)] += &crate::formats::rat(q)?;
        }
    }
    let rep = mm_instance_check(&fl, &pi, &action).map_err(err)?;
    let ok = rep.passes();
    outcome(
        ok,
        json!({
            "generators": k,
            "budget": n,
            "restriction_ok": rep.restriction_ok,
            "coalgebra_witness": rep.coalgebra_witness,
            "candidate": pair_json(&rep.candidate),
            "unique": rep.uniqueness.unique(),
            "uniqueness_stages": rep.uniqueness.stages,
            "club": pair_json(&rep.club),
            "diagram": pair_json(&rep.diagram),
            "scope": rep.scope,
            "passes": ok,
        }),
        format!("extension check {}", if ok { "passes" } else { "fails" }),
    )
}

fn ckmm_cmd(h: &Arc<FinDimHopf>, operator: Option<&str>) -> Result<Outcome, CliError> {
    let ops: Vec<DiffOp> = match operator {
        Some(op) => {
            vec![check_diffop(&load_endo(op, h)?).map_err(|f| input(format!("operator: {f}")))?]
        }
        None => {
            classify_diffops(&load_plan(h, None)?, false)
                .map_err(err)?
                .operators
        }
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for d in &ops {
        let rep = ckmm_instance_check(d).map_err(err)?;
        ok &= rep.holds();
        rows.push(json!({
            "operator": operator_json(d.map()),
            "group_order": rep.group_order,
            "primitive_dim": rep.primitive_dim,
            "restriction": rep.restriction.images,
            "restriction_is_group_diffop": rep.restriction_is_group_diffop,
            "reconstruction_matches": rep.reconstruction_matches,
            "holds": rep.holds(),
        }));
    }
    outcome(
        ok,
        json!({ "algebra": AlgebraRef::of(h), "instances": rows, "holds": ok }),
        format!(
            "{}: {} operators checked, {}",
            h.name(),
            ops.len(),
            if ok { "all hold" } else { "failure" }
        ),
    )
}

fn ckmm_trunc_cmd(n: usize) -> Result<Outcome, CliError> {
    let rep = ckmm_truncated_instance(n).map_err(err)?;
    let ok = rep.holds();
    outcome(
        ok,
        json!({
            "budget": rep.budget,
            "compatible": pair_json(&rep.compatible),
            "rejected_pair": rep.rejected_pair,
            "coalgebra_ok": rep.coalgebra_ok,
            "pairs": pair_json(&rep.pairs),
            "group_restriction": rep.group_restriction,
            "group_restriction_ok": rep.group_restriction_ok,
            "primitive_scalar": rep.primitive_scalar.as_ref().map(Rat::to_string),
            "primitive_restriction_ok": rep.primitive_restriction_ok,
            "holds": ok,
        }),
        format!(
            "truncated instance at N = {n}: {}",
            if ok { "holds" } else { "fails" }
        ),
    )
}

fn catalog_list() -> Outcome {
    Outcome {
        ok: true,
        report: json!({
            "groups": catalog::GROUP_NAMES,
            "hopf": catalog::HOPF_NAMES,
            "lie": catalog::LIE_NAMES,
            "actions": ["inversion"],
            "plans": catalog::HOPF_NAMES,
            "expected": ["H4", "H8"],
        }),
        summary: "catalog entries listed".into(),
    }
}

/// File names written by `catalog export`, relative to the output directory.
pub fn export_files() -> Vec<String> {
    let mut names = Vec::new();
    for g in catalog::GROUP_NAMES {
        names.push(format!("group-{g}.json"));
    }
    for l in catalog::LIE_NAMES {
        names.push(format!("lie-{l}.json"));
    }
    for h in catalog::HOPF_NAMES {
        names.push(format!("{h}.json"));
        names.push(format!("{h}.plan.json"));
    }
    names.push("H4.expected".into());
    names.push("H8.expected".into());
    names.push("action-inversion.json".into());
    names
}

fn catalog_export(dir: &PathBuf) -> Result<Outcome, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Result<(), CliError> {
        write_file(&dir.join(&name), &text)?;
        written.push(name);
        Ok(())
    };
    for g in catalog::GROUP_NAMES {
        put(
            format!("group-{g}.json"),
            to_text(&GroupFile::from_group(&catalog::group(g).map_err(err)?)),
        )?;
    }
    for l in catalog::LIE_NAMES {
        put(
            format!("lie-{l}.json"),
            to_text(&LieFile::from_lie(&catalog::lie(l).map_err(err)?)),
        )?;
    }
    for name in catalog::HOPF_NAMES {
        let h = Arc::new(catalog::hopf(name).map_err(err)?);
        put(format!("{name}.json"), to_text(&AlgebraFile::from_hopf(&h)))?;
        put(
            format!("{name}.plan.json"),
            to_text(&PlanFile::from_plan(&catalog::plan(&h).map_err(err)?)),
        )?;
        if let Some(tables) = catalog::published_tables(&h) {
            put(
                format!("{name}.expected"),
                to_text(&ExpectedFile::from_tables(&h, &tables)),
            )?;
        }
    }
    put(
        "action-inversion.json".into(),
        to_text(&ActionFile::from_action(&catalog::inversion_action())),
    )?;
    written.sort();
    let n = written.len();
    outcome(
        true,
        json!({ "files": written }),
        format!("{n} files written to {}", dir.display()),
    )
}
