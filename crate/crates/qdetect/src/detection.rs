//! The two binary detectors. The set-based (classical) detector compares
//! outcome frequencies of the diagonal mixtures and accepts on a subset of
//! basis outcomes. The subspace-based (quantum) detector diagonalizes
//! rho1 - lambda*rho0 for the superposed pure states and accepts on the span
//! of eigenvectors with positive eigenvalues, which is the measurement that
//! maximizes detection power at every false-alarm size.

use serde::Serialize;

use crate::qspace::{
    born, overlap, pure_density, spectral_decompose, Density, Hermitian2, Projector,
};
use crate::{Error, Result};

/// Eigenvalues and table comparisons within this distance of zero count as
/// ties; a spread below it means the detector matrix has no usable spectrum.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Hypothesis-pair description: feature probability p0 under the null, p1
/// under the alternative, and the positive threshold lambda weighting the
/// null in the detector matrix rho1 - lambda*rho0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetectorParams {
    p0: f64,
    p1: f64,
    lambda: f64,
}

impl DetectorParams {
    pub fn new(p0: f64, p1: f64, lambda: f64) -> Result<Self> {
        for (name, value) in [("p0", p0), ("p1", p1)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange { name, value });
            }
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::BadLambda(lambda));
        }
        Ok(DetectorParams { p0, p1, lambda })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// The four possible acceptance decisions over a two-outcome space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// Empty region: never accept.
    Never,
    /// Accept exactly when the feature does not occur.
    AcceptOnAbsent,
    /// Accept exactly when the feature occurs.
    AcceptOnPresent,
    /// Whole space: always accept.
    Always,
}

/// An acceptance decision together with the concrete projector it denotes
/// (zero, one of the two rank-one axes, or the identity) in whichever basis
/// the detector lives.
#[derive(Clone, Debug)]
pub struct RegionOfAcceptance {
    choice: Region,
    projector: Projector,
}

impl RegionOfAcceptance {
    pub fn choice(&self) -> Region {
        self.choice
    }

    pub fn projector(&self) -> &Projector {
        &self.projector
    }
}

/// (size, power) pair: false-alarm probability and detection probability of
/// a detector at one operating condition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub size: f64,
    pub power: f64,
}

/// Spectrum of the detector matrix rho1 - lambda*rho0 for the pure
/// hypothesis states, plus the derived acceptance region.
///
/// Invariants: eta0 + eta1 = 1 - lambda (the trace), eta1 - eta0 = 2R,
/// q0*q1 = 0 and q0 + q1 = I. When the hypotheses coincide at lambda = 1 the
/// matrix vanishes; `degenerate` is set and the region is Never.
#[derive(Clone, Debug)]
pub struct HelstromSolution {
    eta0: f64,
    eta1: f64,
    big_r: f64,
    overlap: f64,
    q0: Projector,
    q1: Projector,
    region: RegionOfAcceptance,
    degenerate: bool,
}

impl HelstromSolution {
    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    /// Half the eigenvalue spread: sqrt((1-lambda)^2/4 + lambda(1-X^2)).
    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    /// Fidelity X^2 of the two hypothesis states.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// Eigenprojector of the smaller eigenvalue eta0.
    pub fn q0(&self) -> &Projector {
        &self.q0
    }

    /// Eigenprojector of the larger eigenvalue eta1.
    pub fn q1(&self) -> &Projector {
        &self.q1
    }

    /// Span of the positive-eigenvalue eigenvectors.
    pub fn region(&self) -> &RegionOfAcceptance {
        &self.region
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

/// Squared-coordinate table of the two hypothesis states in the detector
/// eigenbasis, per the closed-form parameterization in terms of eta1 and the
/// overlap. Row i holds the coordinates of state i on (eta0, eta1); each row
/// is normalized by construction. Signs are taken non-negative.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoordinateMatrix {
    x00: f64,
    x01: f64,
    x10: f64,
    x11: f64,
}

impl CoordinateMatrix {
    pub fn x00(&self) -> f64 {
        self.x00
    }

    pub fn x01(&self) -> f64 {
        self.x01
    }

    pub fn x10(&self) -> f64 {
        self.x10
    }

    pub fn x11(&self) -> f64 {
        self.x11
    }

    pub fn x00_sq(&self) -> f64 {
        self.x00 * self.x00
    }

    pub fn x01_sq(&self) -> f64 {
        self.x01 * self.x01
    }

    pub fn x10_sq(&self) -> f64 {
        self.x10 * self.x10
    }

    pub fn x11_sq(&self) -> f64 {
        self.x11 * self.x11
    }
}

/// Piecewise-linear ROC curve: vertices with strictly increasing sizes and
/// non-decreasing power, ending at (1, 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RocCurve {
    points: Vec<OperatingPoint>,
}

impl RocCurve {
    pub fn new(points: Vec<OperatingPoint>) -> Result<RocCurve> {
        if points.is_empty() {
            return Err(Error::BadRoc("no points".into()));
        }
        for w in points.windows(2) {
            if w[1].size <= w[0].size {
                return Err(Error::BadRoc(format!(
                    "sizes not strictly increasing at {} -> {}",
                    w[0].size, w[1].size
                )));
            }
            if w[1].power < w[0].power {
                return Err(Error::BadRoc(format!(
                    "power decreases at size {}",
                    w[1].size
                )));
            }
        }
        let last = points.last().expect("nonempty");
        if points[0].size != 0.0 || last.size != 1.0 || last.power != 1.0 {
            return Err(Error::BadRoc("endpoints must be (0, .) and (1, 1)".into()));
        }
        Ok(RocCurve { points })
    }

    pub fn points(&self) -> &[OperatingPoint] {
        &self.points
    }

    /// Power at the given size by linear interpolation between vertices.
    pub fn eval(&self, size: f64) -> f64 {
        let pts = &self.points;
        if size <= pts[0].size {
            return pts[0].power;
        }
        if size >= pts[pts.len() - 1].size {
            return pts[pts.len() - 1].power;
        }
        let i = pts.partition_point(|p| p.size <= size) - 1;
        let (a, b) = (pts[i], pts[i + 1]);
        let t = (size - a.size) / (b.size - a.size);
        a.power + t * (b.power - a.power)
    }
}

/// Value of tr((rho1 - lambda*rho0) e): positive exactly when `e` belongs in
/// the region of acceptance of the detector built from these densities.
pub fn discriminant(rho1: &Density, rho0: &Density, lambda: f64, e: &Projector) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::BadLambda(lambda));
    }
    let m = rho1.matrix().sub(&rho0.matrix().scale(lambda));
    let p = e.matrix();
    Ok(m.a() * p.a() + m.d() * p.d() + 2.0 * (m.b() * p.b().conj()).re)
}

/// Diagonalizes rho1 - lambda*rho0 for the superposed hypothesis states.
/// Eigenvalues come from the closed form eta = (1-lambda)/2 -/+ R; the
/// eigenprojectors from the generic 2x2 decomposition. The acceptance region
/// is the span of strictly positive eigenvalues.
pub fn helstrom_spectrum(params: &DetectorParams) -> HelstromSolution {
    let x2 = overlap(params.p0, params.p1).expect("params validated");
    let lambda = params.lambda;
    let big_r = (0.25 * (1.0 - lambda) * (1.0 - lambda) + lambda * (1.0 - x2)).sqrt();
    let half_trace = 0.5 * (1.0 - lambda);
    if big_r <= DEGENERACY_TOL {
        // rho1 - rho0 = 0: every direction is an eigenvector, nothing to
        // accept on. Projectors still resolve the identity.
        return HelstromSolution {
            eta0: half_trace,
            eta1: half_trace,
            big_r,
            overlap: x2,
            q0: Projector::identity(),
            q1: Projector::zero(),
            region: RegionOfAcceptance { choice: Region::Never, projector: Projector::zero() },
            degenerate: true,
        };
    }
    let eta0 = half_trace - big_r;
    let eta1 = half_trace + big_r;
    let rho1 = pure_density(params.p1).expect("params validated");
    let rho0 = pure_density(params.p0).expect("params validated");
    let m = rho1.matrix().sub(&rho0.matrix().scale(lambda));
    let spectrum = spectral_decompose(&m);
    let (q0, q1) = match spectrum.pairs() {
        [(_, lo), (_, hi)] => (*lo, *hi),
        // Spread above tolerance but below the spectral cutoff cannot happen:
        // both use the same radius. Kept total for safety.
        _ => (Projector::identity(), Projector::zero()),
    };
    let choice = region_choice(eta1, eta0);
    let projector = match choice {
        Region::Never => Projector::zero(),
        Region::AcceptOnAbsent => q0,
        Region::AcceptOnPresent => q1,
        Region::Always => Projector::identity(),
    };
    HelstromSolution {
        eta0,
        eta1,
        big_r,
        overlap: x2,
        q0,
        q1,
        region: RegionOfAcceptance { choice, projector },
        degenerate: false,
    }
}

/// Shared tie logic for both detectors' region tables. Strict positivity
/// admits an axis into the region; zero values stay out, except that a tie in
/// both comparisons resolves to the larger region (accept everything).
fn region_choice(d_present: f64, d_absent: f64) -> Region {
    if d_present.abs() <= DEGENERACY_TOL && d_absent.abs() <= DEGENERACY_TOL {
        return Region::Always;
    }
    match (d_present > DEGENERACY_TOL, d_absent > DEGENERACY_TOL) {
        (true, true) => Region::Always,
        (true, false) => Region::AcceptOnPresent,
        (false, true) => Region::AcceptOnAbsent,
        (false, false) => Region::Never,
    }
}

/// Acceptance region of the set-based detector on the diagonal mixtures:
/// sign pattern of p1 - lambda*p0 (admit the present axis) and
/// (1-p1) - lambda*(1-p0) (admit the absent axis).
pub fn mixed_region(params: &DetectorParams) -> RegionOfAcceptance {
    let d_present = params.p1 - params.lambda * params.p0;
    let d_absent = (1.0 - params.p1) - params.lambda * (1.0 - params.p0);
    let choice = region_choice(d_present, d_absent);
    RegionOfAcceptance { choice, projector: computational_projector(choice) }
}

fn computational_projector(choice: Region) -> Projector {
    match choice {
        Region::Never => Projector::zero(),
        Region::AcceptOnAbsent => Projector::absent(),
        Region::AcceptOnPresent => Projector::present(),
        Region::Always => Projector::identity(),
    }
}

/// Canonical operating point of the set-based detector, accepting on the
/// present axis: size p0, power p1.
pub fn mixed_operating_point(params: &DetectorParams) -> OperatingPoint {
    OperatingPoint { size: params.p0, power: params.p1 }
}

/// Operating point of the set-based detector for a given acceptance choice.
pub fn operating_point_for(params: &DetectorParams, choice: Region) -> OperatingPoint {
    match choice {
        Region::Never => OperatingPoint { size: 0.0, power: 0.0 },
        Region::AcceptOnAbsent => {
            OperatingPoint { size: 1.0 - params.p0, power: 1.0 - params.p1 }
        }
        Region::AcceptOnPresent => OperatingPoint { size: params.p0, power: params.p1 },
        Region::Always => OperatingPoint { size: 1.0, power: 1.0 },
    }
}

/// Operating point of the subspace detector: size (eta1 - (1-X^2)) / 2R and
/// power (eta1 + lambda(1-X^2)) / 2R, both in [0, 1] for all valid params.
pub fn quantum_operating_point(params: &DetectorParams) -> Result<OperatingPoint> {
    let sol = helstrom_spectrum(params);
    if sol.degenerate {
        return Err(degenerate(params));
    }
    let sep = 1.0 - sol.overlap;
    let size = (sol.eta1 - sep) / (2.0 * sol.big_r);
    let power = (sol.eta1 + params.lambda * sep) / (2.0 * sol.big_r);
    Ok(OperatingPoint { size: size.clamp(0.0, 1.0), power: power.clamp(0.0, 1.0) })
}

fn degenerate(params: &DetectorParams) -> Error {
    Error::Degenerate { p0: params.p0, p1: params.p1, lambda: params.lambda }
}

/// Maximum detection power of the subspace detector at false-alarm size q0,
/// for hypothesis states with the given overlap (fidelity):
/// (sqrt(q0 X^2) + sqrt((1-q0)(1-X^2)))^2 up to q0 = X^2, then 1.
pub fn quantum_roc(q0: f64, overlap: f64) -> f64 {
    if q0 > overlap {
        return 1.0;
    }
    let x = (q0 * overlap).max(0.0).sqrt() + ((1.0 - q0) * (1.0 - overlap)).max(0.0).sqrt();
    (x * x).clamp(0.0, 1.0)
}

/// The four deterministic operating points of the set-based detector, one
/// per acceptance choice: (0,0), (p0,p1), (1-p0,1-p1), (1,1).
pub fn classical_points(params: &DetectorParams) -> [OperatingPoint; 4] {
    [
        OperatingPoint { size: 0.0, power: 0.0 },
        OperatingPoint { size: params.p0, power: params.p1 },
        OperatingPoint { size: 1.0 - params.p0, power: 1.0 - params.p1 },
        OperatingPoint { size: 1.0, power: 1.0 },
    ]
}

/// Upper concave envelope of the four deterministic points: the boundary
/// achievable by randomizing between set-based detectors (the optimal
/// classical ROC). Dominated and collinear points are dropped.
pub fn classical_roc(params: &DetectorParams) -> RocCurve {
    let mut pts: Vec<OperatingPoint> = classical_points(params).to_vec();
    pts.sort_by(|a, b| a.size.total_cmp(&b.size).then(a.power.total_cmp(&b.power)));
    pts.dedup_by(|next, prev| {
        // Same size: the later (higher-power) point wins.
        if next.size == prev.size {
            prev.power = next.power;
            true
        } else {
            false
        }
    });
    let mut hull: Vec<OperatingPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.size - o.size) * (p.power - o.power)
                - (a.power - o.power) * (p.size - o.size);
            // Non-right turn: the middle vertex is on or under the chord.
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    RocCurve::new(hull).expect("envelope construction keeps the curve valid")
}

/// Closed-form squared coordinates of the hypothesis states in the detector
/// eigenbasis, parameterized by eta1 and the overlap: row i has denominator
/// (1 -/+ eta1)^2 + X^2 and numerators X^2 (on eta0) and (1 -/+ eta1)^2
/// (on eta1), so each row sums to one exactly.
pub fn coordinates(params: &DetectorParams) -> Result<CoordinateMatrix> {
    let sol = helstrom_spectrum(params);
    if sol.degenerate {
        return Err(degenerate(params));
    }
    let x2 = sol.overlap;
    let row = |shift: f64| -> (f64, f64) {
        let sq = shift * shift;
        let den = sq + x2;
        if den == 0.0 {
            // Orthogonal states with eta1 = 1: state 0 lies on the eta0 axis.
            (1.0, 0.0)
        } else {
            ((x2 / den).sqrt(), (sq / den).sqrt())
        }
    };
    let (x00, x01) = row(1.0 - sol.eta1);
    let (x10, x11) = row(1.0 + sol.eta1);
    Ok(CoordinateMatrix { x00, x01, x10, x11 })
}

/// Hypothesis densities rewritten in the detector eigenbasis: pure states
/// whose feature probabilities are the eigenbasis coordinates of the
/// originals on eta1, i.e. the operating-point size (state 0) and power
/// (state 1). Born probabilities of the present axis under these densities
/// reproduce the operating point.
pub fn reweighted_densities(params: &DetectorParams) -> Result<(Density, Density)> {
    let point = quantum_operating_point(params)?;
    let sigma0 = pure_density(point.size).expect("size in [0,1]");
    let sigma1 = pure_density(point.power).expect("power in [0,1]");
    Ok((sigma0, sigma1))
}

/// Acceptance region of the subspace detector read in the computational
/// basis of the reweighted densities. The region table on the eigenbasis
/// coordinates reduces to the sign pattern of the eigenvalues:
/// x11^2 - lambda*x01^2 = eta1 and (1-x11^2) - lambda*(1-x01^2) = eta0.
/// At full overlap with lambda = 1 both comparisons tie and the tie rule
/// yields Always.
pub fn pure_region_in_computational_basis(params: &DetectorParams) -> RegionOfAcceptance {
    let sol = helstrom_spectrum(params);
    let choice = if sol.degenerate {
        Region::Always
    } else {
        region_choice(sol.eta1, sol.eta0)
    };
    RegionOfAcceptance { choice, projector: computational_projector(choice) }
}

/// Result of sampling both ROC curves on a grid: the largest amount by which
/// the classical envelope exceeds the quantum curve (negative when the
/// quantum curve stays strictly above), where it happens, and the interior
/// size where the two come closest (the touch point; the shared (1,1)
/// endpoint is excluded).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DominanceReport {
    pub grid: usize,
    pub max_shortfall: f64,
    pub worst_size: f64,
    pub touch_size: f64,
    pub touch_gap: f64,
    pub passed: bool,
}

/// Grid sizes on [0, 1] with the two classical vertex sizes inserted so the
/// exact-touch rows appear verbatim.
pub(crate) fn roc_grid(params: &DetectorParams, grid: usize) -> Vec<f64> {
    let n = grid.max(2);
    let mut sizes: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    sizes.push(params.p0);
    sizes.push(1.0 - params.p0);
    sizes.sort_by(f64::total_cmp);
    sizes.dedup();
    sizes
}

/// Samples the quantum ROC against the classical envelope on a uniform grid
/// (vertex sizes inserted) and reports the worst shortfall. The subspace
/// detector dominates: the report passes when no sampled size falls more
/// than 1e-9 below the envelope.
pub fn dominance_check(params: &DetectorParams, grid: usize) -> DominanceReport {
    let x2 = overlap(params.p0, params.p1).expect("params validated");
    let envelope = classical_roc(params);
    let mut max_shortfall = f64::NEG_INFINITY;
    let mut worst_size = 0.0;
    let mut touch_gap = f64::INFINITY;
    let mut touch_size = 0.0;
    for size in roc_grid(params, grid) {
        let q = quantum_roc(size, x2);
        let c = envelope.eval(size);
        let shortfall = c - q;
        if shortfall > max_shortfall {
            max_shortfall = shortfall;
            worst_size = size;
        }
        if size > 0.0 && size < 1.0 && shortfall.abs() < touch_gap {
            touch_gap = shortfall.abs();
            touch_size = size;
        }
    }
    DominanceReport {
        grid: grid.max(2),
        max_shortfall,
        worst_size,
        touch_size,
        touch_gap,
        passed: max_shortfall <= 1e-9,
    }
}

/// Residuals of the eigenbasis identities: the Born probability of the
/// larger eigenprojector under each hypothesis state equals the operating
/// point, |<eta1|phi1>|^2 = power and |<eta1|phi0>|^2 = size.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BasisRelationReport {
    pub power_residual: f64,
    pub size_residual: f64,
    pub passed: bool,
}

pub fn basis_relation_check(params: &DetectorParams) -> Result<BasisRelationReport> {
    let sol = helstrom_spectrum(params);
    if sol.degenerate {
        return Err(degenerate(params));
    }
    let point = quantum_operating_point(params)?;
    let rho1 = pure_density(params.p1).expect("params validated");
    let rho0 = pure_density(params.p0).expect("params validated");
    let power_residual = (born(&rho1, &sol.q1) - point.power).abs();
    let size_residual = (born(&rho0, &sol.q1) - point.size).abs();
    Ok(BasisRelationReport {
        power_residual,
        size_residual,
        passed: power_residual <= 1e-10 && size_residual <= 1e-10,
    })
}

/// Frobenius norm of the commutator [Q1, P_present]. Nonzero whenever the
/// detector eigenbasis is not aligned with the computational basis: the
/// subspace region then has no reading as a subset of outcomes.
pub fn incompatibility_norm(params: &DetectorParams) -> Result<f64> {
    let sol = helstrom_spectrum(params);
    if sol.degenerate {
        return Err(degenerate(params));
    }
    let q = sol.q1.matrix().to_matrix();
    let p = Projector::present().matrix().to_matrix();
    Ok(q.mul(&p).sub(&p.mul(&q)).frobenius_norm())
}

/// Detector matrix rho1 - lambda*rho0 over the pure states, exposed so
/// independent oracles can re-derive the spectrum from raw entries.
pub fn detector_matrix(params: &DetectorParams) -> Hermitian2 {
    let rho1 = pure_density(params.p1).expect("params validated");
    let rho0 = pure_density(params.p0).expect("params validated");
    rho1.matrix().sub(&rho0.matrix().scale(params.lambda))
}

/// Samples the quantum ROC on the same grid `dominance_check` uses, as a
/// polyline. Powers are monotonized against ulp-level wobble so the curve
/// type's invariants hold.
pub fn quantum_roc_curve(params: &DetectorParams, grid: usize) -> RocCurve {
    let x2 = overlap(params.p0, params.p1).expect("params validated");
    let mut pts = Vec::new();
    let mut prev = 0.0f64;
    for size in roc_grid(params, grid) {
        prev = quantum_roc(size, x2).max(prev);
        pts.push(OperatingPoint { size, power: prev });
    }
    RocCurve::new(pts).expect("grid sizes are strictly increasing")
}
