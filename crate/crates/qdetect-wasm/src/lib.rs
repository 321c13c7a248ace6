//! Browser-facing bindings for the detector library.
//!
//! Every export takes primitives or a string and returns a JSON string;
//! failures come back in-band as `{"error": "..."}`. Keeping JsValue out of
//! the signatures lets the same functions run as plain Rust on the host, so
//! the integration tests need no wasm runtime.

use wasm_bindgen::prelude::wasm_bindgen;

use qdetect::detection::{
    classical_roc, coordinates, helstrom_spectrum, mixed_operating_point, mixed_region,
    pure_region_in_computational_basis, quantum_operating_point, quantum_roc_curve,
    DetectorParams, OperatingPoint,
};
use qdetect::ranker::{compare, estimate, parse_units, Estimator, TrainingSet, UnitRecord};

/// Sampling density for the curves embedded in ranking reports.
const REPORT_GRID: usize = 201;

fn error_json(msg: impl AsRef<str>) -> String {
    serde_json::json!({ "error": msg.as_ref() }).to_string()
}

fn point_json(p: &OperatingPoint) -> serde_json::Value {
    serde_json::json!({ "size": p.size, "power": p.power })
}

/// Detector summary for one parameter triple: spectrum, acceptance regions,
/// and both operating points. Degenerate parameters still return a report,
/// with the spectrum-derived fields set to null.
#[wasm_bindgen]
pub fn detect_report(p0: f64, p1: f64, lambda: f64) -> String {
    let params = match DetectorParams::new(p0, p1, lambda) {
        Ok(p) => p,
        Err(e) => return error_json(e.to_string()),
    };
    let sol = helstrom_spectrum(&params);
    let coords = coordinates(&params).ok();
    let report = serde_json::json!({
        "params": { "p0": params.p0(), "p1": params.p1(), "lambda": params.lambda() },
        "overlap": sol.overlap(),
        "eta0": sol.eta0(),
        "eta1": sol.eta1(),
        "big_r": sol.big_r(),
        "degenerate": sol.is_degenerate(),
        "mixed_region": format!("{:?}", mixed_region(&params).choice()),
        "pure_region": format!("{:?}", pure_region_in_computational_basis(&params).choice()),
        "classical_point": point_json(&mixed_operating_point(&params)),
        "quantum_point": quantum_operating_point(&params).ok().map(|p| point_json(&p)),
        "coordinates": coords.map(|c| serde_json::json!({
            "x00_sq": c.x00_sq(),
            "x01_sq": c.x01_sq(),
            "x10_sq": c.x10_sq(),
            "x11_sq": c.x11_sq(),
        })),
    });
    report.to_string()
}

/// Both ROC curves on a uniform grid (plus the envelope vertex sizes), as
/// rows of `{size, classical, quantum}`.
#[wasm_bindgen]
pub fn roc_points(p0: f64, p1: f64, grid: u32) -> String {
    if grid < 2 {
        return error_json(format!("grid = {grid} must be at least 2"));
    }
    let params = match DetectorParams::new(p0, p1, 1.0) {
        Ok(p) => p,
        Err(e) => return error_json(e.to_string()),
    };
    let envelope = classical_roc(&params);
    let quantum = quantum_roc_curve(&params, grid as usize);
    let rows: Vec<serde_json::Value> = quantum
        .points()
        .iter()
        .map(|pt| {
            serde_json::json!({
                "size": pt.size,
                "classical": envelope.eval(pt.size),
                "quantum": pt.power,
            })
        })
        .collect();
    serde_json::json!({
        "params": { "p0": params.p0(), "p1": params.p1() },
        "rows": rows,
    })
    .to_string()
}

/// Ranks the units of a CSV (header `unit_id,feature,label`) under both
/// detectors and reports rankings, operating points, and disagreements.
/// Labeled rows train the estimator; unlabeled rows are scored only.
#[wasm_bindgen]
pub fn rank_units(csv: &str, lambda: f64, estimator: &str, smoothing: f64) -> String {
    let estimator = match estimator {
        "likelihood" => Estimator::Likelihood,
        "example-compat" => Estimator::ExampleCompat,
        other => {
            return error_json(format!(
                "unknown estimator {other:?}: expected \"likelihood\" or \"example-compat\""
            ))
        }
    };
    if csv.trim().is_empty() {
        return error_json("empty training set");
    }
    let units = match parse_units(csv.as_bytes()) {
        Ok(u) => u,
        Err(e) => return error_json(e.to_string()),
    };
    let labeled: Vec<UnitRecord> =
        units.iter().filter(|u| u.label().is_some()).cloned().collect();
    let est = match TrainingSet::new(labeled).and_then(|ts| estimate(&ts, estimator, smoothing)) {
        Ok(e) => e,
        Err(e) => return error_json(e.to_string()),
    };
    match compare(&units, &est, lambda, REPORT_GRID) {
        Ok(report) => serde_json::to_string(&report)
            .unwrap_or_else(|e| error_json(format!("serialization failed: {e}"))),
        Err(e) => error_json(e.to_string()),
    }
}
