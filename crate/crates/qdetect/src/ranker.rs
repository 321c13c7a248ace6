//! Ingestion of labeled binary-feature records, relative-frequency parameter
//! estimation, and ranking of units under the set-based and subspace-based
//! discriminants, with a side-by-side comparison report.

use std::io;

use serde::Serialize;

use crate::detection::{
    classical_roc, discriminant, mixed_operating_point, quantum_operating_point,
    quantum_roc_curve, reweighted_densities, DetectorParams, OperatingPoint, RocCurve,
};
use crate::qspace::{mixture, Projector};
use crate::{Error, Result};

/// One information unit: an identifier, whether the feature occurs in it,
/// and (for training data) whether the unit is useful.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitRecord {
    unit_id: String,
    feature: bool,
    label: Option<bool>,
}

impl UnitRecord {
    pub fn new(unit_id: impl Into<String>, feature: bool, label: Option<bool>) -> Self {
        UnitRecord { unit_id: unit_id.into(), feature, label }
    }

    pub fn unit_id(&self) -> &str {
        &self.unit_id
    }

    pub fn feature(&self) -> bool {
        self.feature
    }

    pub fn label(&self) -> Option<bool> {
        self.label
    }
}

/// Non-empty collection of fully labeled records.
#[derive(Clone, Debug)]
pub struct TrainingSet {
    records: Vec<UnitRecord>,
}

impl TrainingSet {
    pub fn new(records: Vec<UnitRecord>) -> Result<TrainingSet> {
        if records.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        if let Some(r) = records.iter().find(|r| r.label.is_none()) {
            return Err(Error::MissingLabel { unit_id: r.unit_id.clone() });
        }
        Ok(TrainingSet { records })
    }

    pub fn records(&self) -> &[UnitRecord] {
        &self.records
    }
}

/// The two readings of the training frequencies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    /// Class-conditional feature likelihoods: p_c is the share of
    /// feature-present units among units labeled c. Matches the detection
    /// model, where p_i is the feature probability under hypothesis i.
    Likelihood,
    /// Feature-conditional usefulness: p_f is the share of useful units
    /// among units whose feature value is f (p1 read off feature-present
    /// units, p0 off feature-absent ones).
    ExampleCompat,
}

/// Contingency table of a training set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub present_useful: u64,
    pub present_useless: u64,
    pub absent_useful: u64,
    pub absent_useless: u64,
}

impl Counts {
    pub fn useful(&self) -> u64 {
        self.present_useful + self.absent_useful
    }

    pub fn useless(&self) -> u64 {
        self.present_useless + self.absent_useless
    }

    pub fn present(&self) -> u64 {
        self.present_useful + self.present_useless
    }

    pub fn absent(&self) -> u64 {
        self.absent_useful + self.absent_useless
    }
}

/// Estimated hypothesis probabilities, with the estimator and smoothing that
/// produced them and the raw counts they came from.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EstimationResult {
    pub p0: f64,
    pub p1: f64,
    pub estimator: Estimator,
    pub smoothing: f64,
    pub counts: Counts,
}

/// Tallies the feature/label contingency table.
pub fn contingency(ts: &TrainingSet) -> Counts {
    let mut c = Counts { present_useful: 0, present_useless: 0, absent_useful: 0, absent_useless: 0 };
    for r in ts.records() {
        let useful = r.label().expect("training sets are fully labeled");
        match (r.feature(), useful) {
            (true, true) => c.present_useful += 1,
            (true, false) => c.present_useless += 1,
            (false, true) => c.absent_useful += 1,
            (false, false) => c.absent_useless += 1,
        }
    }
    c
}

/// Relative-frequency estimation with additive smoothing:
/// (count + smoothing) / (total + 2*smoothing) per conditioning class.
/// Smoothing 0 reproduces the exact count ratios; a zero denominator with
/// smoothing 0 is an error.
pub fn estimate(ts: &TrainingSet, estimator: Estimator, smoothing: f64) -> Result<EstimationResult> {
    if !(smoothing >= 0.0 && smoothing.is_finite()) {
        return Err(Error::OutOfRange { name: "smoothing", value: smoothing });
    }
    let counts = contingency(ts);
    let ratio = |num: u64, den: u64, side: &'static str| -> Result<f64> {
        if den == 0 && smoothing == 0.0 {
            return Err(Error::EmptyClass { side });
        }
        Ok((num as f64 + smoothing) / (den as f64 + 2.0 * smoothing))
    };
    let (p0, p1) = match estimator {
        Estimator::Likelihood => (
            ratio(counts.present_useless, counts.useless(), "useless")?,
            ratio(counts.present_useful, counts.useful(), "useful")?,
        ),
        Estimator::ExampleCompat => (
            ratio(counts.absent_useful, counts.absent(), "feature-absent")?,
            ratio(counts.present_useful, counts.present(), "feature-present")?,
        ),
    };
    Ok(EstimationResult { p0, p1, estimator, smoothing, counts })
}

/// Which discriminant scores the units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Diagonal mixtures: scores are outcome-frequency differences.
    Classical,
    /// Reweighted pure densities: scores are the detector eigenvalues.
    Quantum,
}

/// One scored unit. Accepted exactly when the score is strictly positive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedEntry {
    pub unit_id: String,
    pub score: f64,
    pub accepted: bool,
}

/// Units sorted by score descending, ties broken by unit id ascending, so
/// identical inputs always produce byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedList {
    entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn new(mut entries: Vec<RankedEntry>) -> RankedList {
        entries.sort_by(|x, y| {
            y.score.total_cmp(&x.score).then_with(|| x.unit_id.cmp(&y.unit_id))
        });
        RankedList { entries }
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    /// Unit ids of accepted entries, in ranked order.
    pub fn accepted_ids(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.accepted)
            .map(|e| e.unit_id.as_str())
            .collect()
    }
}

/// Scores each unit by the discriminant of its feature axis under the chosen
/// mode's densities. Labels on the scored units are ignored.
pub fn score_units(
    units: &[UnitRecord],
    est: &EstimationResult,
    lambda: f64,
    mode: Mode,
) -> Result<RankedList> {
    let params = DetectorParams::new(est.p0, est.p1, lambda)?;
    let (rho0, rho1) = match mode {
        Mode::Classical => (mixture(params.p0())?, mixture(params.p1())?),
        Mode::Quantum => reweighted_densities(&params)?,
    };
    let entries = units
        .iter()
        .map(|u| {
            let axis = if u.feature() { Projector::present() } else { Projector::absent() };
            let score = discriminant(&rho1, &rho0, lambda, &axis)?;
            Ok(RankedEntry { unit_id: u.unit_id().to_string(), score, accepted: score > 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankedList::new(entries))
}

/// Side-by-side result of ranking the same units both ways.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub params: DetectorParams,
    pub classical: RankedList,
    pub quantum: RankedList,
    pub classical_point: OperatingPoint,
    pub quantum_point: OperatingPoint,
    pub classical_curve: RocCurve,
    pub quantum_curve: RocCurve,
    /// Unit ids accepted by exactly one of the two rankers, ascending.
    pub disagreements: Vec<String>,
    /// True when the acceptance sets differ.
    pub rankings_differ: bool,
}

/// Ranks the units under both discriminants and reports operating points,
/// ROC curves (the quantum one sampled on `grid` sizes), the acceptance
/// disagreement set, and whether the rankings differ.
pub fn compare(
    units: &[UnitRecord],
    est: &EstimationResult,
    lambda: f64,
    grid: usize,
) -> Result<ComparisonReport> {
    let params = DetectorParams::new(est.p0, est.p1, lambda)?;
    let classical = score_units(units, est, lambda, Mode::Classical)?;
    let quantum = score_units(units, est, lambda, Mode::Quantum)?;
    // The two lists order the same units differently, so match by id.
    let mut disagreements: Vec<String> = classical
        .entries()
        .iter()
        .filter(|c| {
            quantum
                .entries()
                .iter()
                .find(|q| q.unit_id == c.unit_id)
                .is_some_and(|q| q.accepted != c.accepted)
        })
        .map(|c| c.unit_id.clone())
        .collect();
    disagreements.sort();
    disagreements.dedup();
    let rankings_differ = !disagreements.is_empty();
    Ok(ComparisonReport {
        params,
        classical_point: mixed_operating_point(&params),
        quantum_point: quantum_operating_point(&params)?,
        classical_curve: classical_roc(&params),
        quantum_curve: quantum_roc_curve(&params, grid),
        classical,
        quantum,
        disagreements,
        rankings_differ,
    })
}

/// Reads records in the training CSV format: header `unit_id,feature,label`,
/// comma-separated UTF-8, feature and label in {0,1}, label optionally empty
/// for units that are to be scored rather than trained on. Malformed rows
/// report their 1-based line number.
pub fn parse_units<R: io::Read>(reader: R) -> Result<Vec<UnitRecord>> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    {
        let headers = csv_reader.headers().map_err(csv_error)?;
        let expected = ["unit_id", "feature", "label"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expected {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header unit_id,feature,label, got {:?}", got.join(",")),
            });
        }
    }
    let mut units = Vec::new();
    for row in csv_reader.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 3 {
            return Err(Error::Parse { line, msg: format!("expected 3 fields, got {}", row.len()) });
        }
        let unit_id = row[0].to_string();
        if unit_id.is_empty() {
            return Err(Error::Parse { line, msg: "empty unit_id".into() });
        }
        let feature = parse_bit(&row[1], "feature", line)?;
        let label = match &row[2] {
            "" => None,
            s => Some(parse_bit(s, "label", line)?),
        };
        units.push(UnitRecord::new(unit_id, feature, label));
    }
    Ok(units)
}

fn parse_bit(s: &str, field: &str, line: u64) -> Result<bool> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(Error::Parse { line, msg: format!("{field} must be 0 or 1, got {s:?}") }),
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = match e.position() {
        Some(p) => p.line(),
        None => 0,
    };
    Error::Parse { line, msg: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, feature: u8, label: u8) -> UnitRecord {
        UnitRecord::new(id, feature == 1, Some(label == 1))
    }

    /// Ten units, five with the feature; three of those useful, plus one
    /// useful unit without the feature.
    fn example_training() -> TrainingSet {
        TrainingSet::new(vec![
            record("u1", 1, 1),
            record("u2", 1, 1),
            record("u3", 1, 1),
            record("u4", 1, 0),
            record("u5", 1, 0),
            record("u6", 0, 1),
            record("u7", 0, 0),
            record("u8", 0, 0),
            record("u9", 0, 0),
            record("u10", 0, 0),
        ])
        .unwrap()
    }

    #[test]
    fn training_set_validation() {
        assert!(matches!(TrainingSet::new(vec![]), Err(Error::EmptyTrainingSet)));
        let r = UnitRecord::new("x", true, None);
        assert!(matches!(
            TrainingSet::new(vec![r]),
            Err(Error::MissingLabel { .. })
        ));
    }

    #[test]
    fn estimate_example_compat() {
        let est = estimate(&example_training(), Estimator::ExampleCompat, 0.0).unwrap();
        assert_eq!(est.p1, 0.6);
        assert_eq!(est.p0, 0.2);
        assert_eq!(est.counts.present_useful, 3);
        assert_eq!(est.counts.absent_useful, 1);
    }

    #[test]
    fn estimate_likelihood() {
        let est = estimate(&example_training(), Estimator::Likelihood, 0.0).unwrap();
        assert_eq!(est.p1, 0.75);
        assert_eq!(est.p0, 1.0 / 3.0);
    }

    #[test]
    fn estimate_smoothing_rescues_missing_class() {
        let ts = TrainingSet::new(vec![record("a", 1, 1), record("b", 0, 1)]).unwrap();
        assert!(matches!(
            estimate(&ts, Estimator::Likelihood, 0.0),
            Err(Error::EmptyClass { side: "useless" })
        ));
        let est = estimate(&ts, Estimator::Likelihood, 1.0).unwrap();
        assert_eq!(est.p0, 0.5);
        assert!(est.p1 > 0.0 && est.p1 < 1.0);
    }

    #[test]
    fn estimate_smoothing_recovers_frequencies_in_the_limit() {
        let ts = example_training();
        let exact = estimate(&ts, Estimator::Likelihood, 0.0).unwrap();
        let tiny = estimate(&ts, Estimator::Likelihood, 1e-12).unwrap();
        assert!((exact.p0 - tiny.p0).abs() <= 1e-12);
        assert!((exact.p1 - tiny.p1).abs() <= 1e-12);
    }

    #[test]
    fn score_units_divergent_params() {
        // Estimation result pinned directly: all feature-absent units useful.
        let est = EstimationResult {
            p0: 1.0,
            p1: 0.7,
            estimator: Estimator::ExampleCompat,
            smoothing: 0.0,
            counts: Counts {
                present_useful: 7,
                present_useless: 3,
                absent_useful: 2,
                absent_useless: 0,
            },
        };
        let units = vec![
            UnitRecord::new("has", true, None),
            UnitRecord::new("lacks", false, None),
        ];
        let classical = score_units(&units, &est, 0.5, Mode::Classical).unwrap();
        assert!(classical.entries().iter().all(|e| e.accepted));
        let quantum = score_units(&units, &est, 0.5, Mode::Quantum).unwrap();
        assert_eq!(quantum.accepted_ids(), vec!["has"]);
        // Quantum scores are the detector eigenvalues.
        assert!((quantum.entries()[0].score - 0.710_977_222_864_644_3).abs() <= 1e-10);
        assert!((quantum.entries()[1].score + 0.21097722286464432).abs() <= 1e-10);
    }

    #[test]
    fn score_units_example_params_agree() {
        let est = estimate(&example_training(), Estimator::ExampleCompat, 0.0).unwrap();
        let units: Vec<UnitRecord> = example_training().records().to_vec();
        let classical = score_units(&units, &est, 1.0, Mode::Classical).unwrap();
        let quantum = score_units(&units, &est, 1.0, Mode::Quantum).unwrap();
        let expect = vec!["u1", "u2", "u3", "u4", "u5"];
        assert_eq!(classical.accepted_ids(), expect);
        assert_eq!(quantum.accepted_ids(), expect);
        // Power at the accepted region: quantum above classical.
        assert!((quantum.entries()[0].score - (0.704_988_805_276_465_8 - 0.295_011_194_723_534_2)).abs() <= 1e-10);
    }

    #[test]
    fn score_units_identical_hypotheses_flatten() {
        let est = EstimationResult {
            p0: 0.4,
            p1: 0.4,
            estimator: Estimator::Likelihood,
            smoothing: 0.0,
            counts: Counts {
                present_useful: 2,
                present_useless: 3,
                absent_useful: 3,
                absent_useless: 2,
            },
        };
        let units = vec![
            UnitRecord::new("x", true, None),
            UnitRecord::new("y", false, None),
        ];
        for mode in [Mode::Classical, Mode::Quantum] {
            let ranked = score_units(&units, &est, 2.0, mode).unwrap();
            assert!(ranked.entries().iter().all(|e| !e.accepted));
        }
        // Degenerate at lambda 1: quantum scoring refuses.
        assert!(matches!(
            score_units(&units, &est, 1.0, Mode::Quantum),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn ranked_list_orders_and_breaks_ties() {
        let list = RankedList::new(vec![
            RankedEntry { unit_id: "b".into(), score: 0.5, accepted: true },
            RankedEntry { unit_id: "a".into(), score: 0.5, accepted: true },
            RankedEntry { unit_id: "c".into(), score: 0.9, accepted: true },
            RankedEntry { unit_id: "d".into(), score: -0.1, accepted: false },
        ]);
        let ids: Vec<&str> = list.entries().iter().map(|e| e.unit_id.as_str()).collect();
        assert_eq!(ids, vec!["c", "a", "b", "d"]);
    }

    #[test]
    fn compare_reports_divergence() {
        let est = EstimationResult {
            p0: 1.0,
            p1: 0.7,
            estimator: Estimator::ExampleCompat,
            smoothing: 0.0,
            counts: Counts {
                present_useful: 7,
                present_useless: 3,
                absent_useful: 2,
                absent_useless: 0,
            },
        };
        let units = vec![
            UnitRecord::new("has", true, None),
            UnitRecord::new("lacks", false, None),
        ];
        let report = compare(&units, &est, 0.5, 101).unwrap();
        assert!(report.rankings_differ);
        assert_eq!(report.disagreements, vec!["lacks".to_string()]);
    }

    #[test]
    fn compare_example_params_agree() {
        let ts = example_training();
        let est = estimate(&ts, Estimator::ExampleCompat, 0.0).unwrap();
        let report = compare(ts.records(), &est, 1.0, 101).unwrap();
        assert!(!report.rankings_differ);
        assert!(report.disagreements.is_empty());
        assert_eq!(report.classical_point.size, 0.2);
        assert_eq!(report.classical_point.power, 0.6);
        assert!((report.quantum_point.size - 0.295_011_194_723_534_2).abs() <= 1e-12);
        assert!((report.quantum_point.power - 0.704_988_805_276_465_8).abs() <= 1e-12);
    }

    #[test]
    fn compare_identical_hypotheses_agree() {
        let est = EstimationResult {
            p0: 0.4,
            p1: 0.4,
            estimator: Estimator::Likelihood,
            smoothing: 0.0,
            counts: Counts {
                present_useful: 2,
                present_useless: 3,
                absent_useful: 3,
                absent_useless: 2,
            },
        };
        let units = vec![UnitRecord::new("x", true, None)];
        let report = compare(&units, &est, 2.0, 11).unwrap();
        assert!(!report.rankings_differ);
    }

    #[test]
    fn parse_units_round_trip() {
        let csv = "unit_id,feature,label\nu1,1,1\nu2,0,\nu3,1,0\n";
        let units = parse_units(csv.as_bytes()).unwrap();
        assert_eq!(units.len(), 3);
        assert_eq!(units[0], UnitRecord::new("u1", true, Some(true)));
        assert_eq!(units[1], UnitRecord::new("u2", false, None));
        assert_eq!(units[2], UnitRecord::new("u3", true, Some(false)));
    }

    #[test]
    fn parse_units_reports_lines() {
        let csv = "unit_id,feature,label\nu1,1,1\nu2,2,0\n";
        match parse_units(csv.as_bytes()) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("feature"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let csv = "id,feature,label\nu1,1,1\n";
        assert!(matches!(parse_units(csv.as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
