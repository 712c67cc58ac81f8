use serde::Serialize;
use serde_json::{json, Value};

use scrollsmith::algebra::{Field, Fp};
use scrollsmith::cubic::{
    discriminant, fano_deformation_dim, find_containing_cubics, scroll_points, search_cubics,
    selfint_from_double_points, unirational_degree, CubicForm, CubicHit,
};
use scrollsmith::dims::h0_hirzebruch;
use scrollsmith::reference::Expected;
use scrollsmith::scroll::{singular_pairs, ProjectionJson, ScrollSpec};
use scrollsmith::Result;

use crate::certificate::{Stage, Status};

fn z_names() -> Vec<String> {
    (0..6).map(|i| format!("z{i}")).collect()
}

fn form_json(f: &CubicForm<Fp>) -> Value {
    json!({ "rendered": f.poly().render(&z_names()), "terms": f.to_json() })
}

fn hit_json(hit: &CubicHit<Fp>) -> Value {
    json!({
        "candidate": hit.candidate,
        "combination": hit.combination.iter().map(|c| c.to_decimal()).collect::<Vec<_>>(),
        "form": form_json(&hit.form),
        "classification": hit.classification,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Deformation {
    pub rank: usize,
    pub dim: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Invariants {
    pub degree: i64,
    pub double_points: i64,
    pub selfint: i64,
    pub discriminant: i64,
    pub rho: String,
}

/// Headline numbers of one prime section.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub prime: u32,
    pub singular_pairs: usize,
    pub distinct_points: usize,
    pub cubics_dim: usize,
    pub smooth_cubic: bool,
    pub singular_cubic: bool,
    pub deformation: Option<Deformation>,
    pub invariants: Option<Invariants>,
    #[serde(skip)]
    pub unknowns: usize,
    #[serde(skip)]
    pub equations: usize,
}

/// Runs every verification stage modulo `p`. Errors inside a stage become
/// failed stages; only reading `Λ` itself can abort the section.
pub fn verify_prime(lambda: &ProjectionJson, p: u32, seed: u64) -> Result<(Summary, Vec<Stage>)> {
    let pm = lambda.to_prime(p)?;
    let mut stages = Vec::new();
    let mut summary = Summary {
        prime: p,
        singular_pairs: 0,
        distinct_points: 0,
        cubics_dim: 0,
        smooth_cubic: false,
        singular_cubic: false,
        deformation: None,
        invariants: None,
        unknowns: 0,
        equations: 0,
    };
    let at = Some(p);

    if let Err(e) = pm.require_full_rank() {
        stages.push(Stage::failed("projection", at, e.to_string()));
        return Ok((summary, stages));
    }
    stages.push(Stage::new("projection", at, Status::Pass, json!({ "digest": pm.digest() })));

    match singular_pairs(&pm) {
        Ok(rep) => {
            summary.singular_pairs = rep.pair_count;
            summary.distinct_points = rep.distinct_points;
            let clean = rep.tangent_clearance && rep.degenerate_pairs.is_empty();
            let status = if clean { Status::Pass } else { Status::Fail };
            let mut stage = Stage::new("singular_pairs", at, status, serde_json::to_value(&rep).unwrap());
            if !clean {
                stage.message = Some(format!(
                    "tangent clearance {} with {} degenerate pairs",
                    rep.tangent_clearance,
                    rep.degenerate_pairs.len()
                ));
            }
            stages.push(stage);
        }
        Err(e) => stages.push(Stage::failed("singular_pairs", at, e.to_string())),
    }

    let basis = find_containing_cubics(&pm);
    summary.cubics_dim = basis.len();
    let status = if basis.is_empty() { Status::Fail } else { Status::Pass };
    stages.push(Stage::new(
        "cubics",
        at,
        status,
        json!({ "dimension": basis.len(), "basis": basis.iter().map(form_json).collect::<Vec<_>>() }),
    ));

    let search = if basis.is_empty() {
        None
    } else {
        match scroll_points(&pm).and_then(|hints| search_cubics(&basis, &hints, seed)) {
            Ok(s) => Some(s),
            Err(e) => {
                stages.push(Stage::failed("cubic_search", at, e.to_string()));
                None
            }
        }
    };
    let smooth = search.as_ref().and_then(|s| s.smooth.clone());
    let singular = search.as_ref().and_then(|s| s.singular.clone());
    summary.smooth_cubic = smooth.is_some();
    summary.singular_cubic = singular.is_some();
    let examined = search.as_ref().map_or(0, |s| s.candidates_examined);
    match &smooth {
        Some(hit) => stages.push(Stage::new("smooth_cubic", at, Status::Pass, hit_json(hit))),
        None => stages.push(Stage::failed(
            "smooth_cubic",
            at,
            format!("no smooth member among {examined} candidates"),
        )),
    }
    match &singular {
        Some(hit) => stages.push(Stage::new("singular_cubic", at, Status::Pass, hit_json(hit))),
        None => {
            let mut s = Stage::new("singular_cubic", at, Status::Info, Value::Null);
            s.message = Some(format!("no singular member among {examined} candidates"));
            stages.push(s);
        }
    }

    if let Some(hit) = &smooth {
        match fano_deformation_dim(&pm, &hit.form) {
            Ok(rep) => {
                summary.deformation = Some(Deformation {
                    rank: rep.rank,
                    dim: rep.dimension,
                });
                summary.unknowns = rep.unknowns;
                summary.equations = rep.equations;
                stages.push(Stage::new("deformation", at, Status::Pass, serde_json::to_value(&rep).unwrap()));
            }
            Err(e) => stages.push(Stage::failed("deformation", at, e.to_string())),
        }
    }

    let spec = pm.spec();
    let degree = spec.degree() as i64;
    let r = summary.singular_pairs as i64;
    match selfint_from_double_points(degree, r) {
        Ok(s) => {
            let inv = Invariants {
                degree,
                double_points: r,
                selfint: s,
                discriminant: discriminant(degree, s),
                rho: unirational_degree(degree, 0, s).ratio().to_string(),
            };
            stages.push(Stage::new("invariants", at, Status::Info, serde_json::to_value(&inv).unwrap()));
            summary.invariants = Some(inv);
        }
        Err(e) => {
            let mut s = Stage::new("invariants", at, Status::Info, Value::Null);
            s.message = Some(e.to_string());
            stages.push(s);
        }
    }
    Ok((summary, stages))
}

/// Compares a prime section with the known values of the bundled example.
pub fn expectation_stage(summary: &Summary, spec: &ScrollSpec, expected: &Expected) -> Stage {
    let mut checks = Vec::new();
    let mut check = |name: &str, want: i64, got: Option<i64>| {
        checks.push(json!({ "check": name, "expected": want, "found": got, "ok": got == Some(want) }));
    };
    // cubics upstairs: 3H = 3g + 3u·f on F_m
    let h0_upstairs = h0_hirzebruch(spec.m() as i64, 3, 3 * spec.u() as i64).ok();
    let h0_scroll = h0_upstairs.map(|h| h - summary.singular_pairs as i64);
    check("pair_count", expected.pair_count as i64, Some(summary.singular_pairs as i64));
    check("distinct_points", expected.distinct_points as i64, Some(summary.distinct_points as i64));
    check("cubics_dim", expected.cubics as i64, Some(summary.cubics_dim as i64));
    check("h0_upstairs", expected.h0_upstairs, h0_upstairs);
    check("h0_scroll", expected.h0_scroll, h0_scroll);
    check("cubics_from_h0", expected.cubics as i64, h0_scroll.map(|h| 56 - h));
    check("smooth_cubic", 1, Some(summary.smooth_cubic as i64));
    check("singular_cubic", 1, Some(summary.singular_cubic as i64));
    let def = summary.deformation.as_ref();
    let deformation_known = def.is_some();
    check(
        "deformation_unknowns",
        expected.deformation_unknowns as i64,
        deformation_known.then_some(summary.unknowns as i64),
    );
    check(
        "deformation_equations",
        expected.deformation_equations as i64,
        deformation_known.then_some(summary.equations as i64),
    );
    check("deformation_rank", expected.deformation_rank as i64, def.map(|d| d.rank as i64));
    check("deformation_dim", expected.deformation_dim, def.map(|d| d.dim));
    let inv = summary.invariants.as_ref();
    check("selfint", expected.selfint, inv.map(|i| i.selfint));
    check("discriminant", expected.discriminant, inv.map(|i| i.discriminant));
    check("rho", expected.rho, inv.and_then(|i| i.rho.parse().ok()));

    let failed: Vec<String> = checks
        .iter()
        .filter(|c| c["ok"] == false)
        .map(|c| c["check"].as_str().unwrap().to_string())
        .collect();
    let mut stage = Stage::new(
        "expectations",
        Some(summary.prime),
        if failed.is_empty() { Status::Pass } else { Status::Fail },
        json!({ "checks": checks }),
    );
    if !failed.is_empty() {
        stage.message = Some(format!("mismatch in {}", failed.join(", ")));
    }
    stage
}
