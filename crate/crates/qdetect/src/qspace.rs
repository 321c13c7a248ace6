//! Exact algebra of the binary quantum probability space: kets, 2x2 Hermitian
//! matrices, projectors, densities, Born-rule probabilities, closed-form
//! spectral decomposition, and the interference bookkeeping that separates a
//! superposition from the corresponding mixture.
//!
//! Coordinate convention, used by every module: the first coordinate of a
//! vector pairs with matrix entry (0,0) and carries the "feature present"
//! basis state, i.e. |1> = (1, 0)^T and |0> = (0, 1)^T. A state with feature
//! probability p therefore has sqrt(p) in its first coordinate.

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Absolute tolerance for structural invariants: unit norm, unit trace,
/// idempotency, positive semidefiniteness. Closed-form 2x2 algebra loses at
/// most a few ulps, so anything past this is a real violation.
pub const STRUCTURAL_TOL: f64 = 1e-12;

/// Unconstrained complex 2-vector. `c0` is the first coordinate (the |1>
/// component), `c1` the second (the |0> component).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector2 {
    pub c0: C64,
    pub c1: C64,
}

impl Vector2 {
    pub fn new(c0: C64, c1: C64) -> Self {
        Vector2 { c0, c1 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    /// Hermitian inner product <self|other>, conjugate-linear in `self`.
    pub fn inner(&self, other: &Vector2) -> C64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    pub fn sub(&self, other: &Vector2) -> Vector2 {
        Vector2::new(self.c0 - other.c0, self.c1 - other.c1)
    }

    pub fn scale(&self, s: C64) -> Vector2 {
        Vector2::new(self.c0 * s, self.c1 * s)
    }
}

/// Unit-norm state vector. |c0|^2 + |c1|^2 = 1 within [`STRUCTURAL_TOL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ket(Vector2);

impl Ket {
    /// Builds a ket from coordinates, rejecting non-unit input.
    pub fn new(c0: C64, c1: C64) -> Result<Ket> {
        let v = Vector2::new(c0, c1);
        let n = v.norm_sq();
        if (n - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::NotUnit { norm_sq: n });
        }
        Ok(Ket(v))
    }

    /// Real-coordinate convenience constructor.
    pub fn from_reals(c0: f64, c1: f64) -> Result<Ket> {
        Ket::new(C64::new(c0, 0.0), C64::new(c1, 0.0))
    }

    /// Normalizes a nonzero vector into a ket. Used internally where the
    /// direction is already known to be well defined.
    pub(crate) fn normalized(v: Vector2) -> Ket {
        let n = v.norm_sq().sqrt();
        Ket(v.scale(C64::new(1.0 / n, 0.0)))
    }

    /// First coordinate: the amplitude on |1> (feature present).
    pub fn c0(&self) -> C64 {
        self.0.c0
    }

    /// Second coordinate: the amplitude on |0> (feature absent).
    pub fn c1(&self) -> C64 {
        self.0.c1
    }

    /// Amplitude of the |1> basis state (alias of the first coordinate).
    pub fn amp1(&self) -> C64 {
        self.0.c0
    }

    /// Amplitude of the |0> basis state (alias of the second coordinate).
    pub fn amp0(&self) -> C64 {
        self.0.c1
    }

    pub fn as_vector(&self) -> &Vector2 {
        &self.0
    }

    /// <self|other>.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.0.inner(&other.0)
    }
}

/// General complex 2x2 matrix; the working type for products, which do not
/// stay Hermitian (e.g. E0*E1 and commutators).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    pub e00: C64,
    pub e01: C64,
    pub e10: C64,
    pub e11: C64,
}

impl Matrix2 {
    pub fn new(e00: C64, e01: C64, e10: C64, e11: C64) -> Self {
        Matrix2 { e00, e01, e10, e11 }
    }

    pub fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Matrix2::new(z, z, z, z)
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            self.e00 * o.e00 + self.e01 * o.e10,
            self.e00 * o.e01 + self.e01 * o.e11,
            self.e10 * o.e00 + self.e11 * o.e10,
            self.e10 * o.e01 + self.e11 * o.e11,
        )
    }

    pub fn sub(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            self.e00 - o.e00,
            self.e01 - o.e01,
            self.e10 - o.e10,
            self.e11 - o.e11,
        )
    }

    pub fn trace(&self) -> C64 {
        self.e00 + self.e11
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.e00.norm_sqr() + self.e01.norm_sqr() + self.e10.norm_sqr() + self.e11.norm_sqr())
            .sqrt()
    }

    /// self*x for a plain coordinate vector.
    pub fn apply(&self, x: &Vector2) -> Vector2 {
        Vector2::new(
            self.e00 * x.c0 + self.e01 * x.c1,
            self.e10 * x.c0 + self.e11 * x.c1,
        )
    }
}

/// 2x2 Hermitian matrix stored as its free parameters: real diagonal (a, d)
/// and upper off-diagonal b; entry (1,0) is conj(b) by construction, so the
/// type cannot represent a non-Hermitian value and its eigenvalues are real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hermitian2 {
    a: f64,
    d: f64,
    b: C64,
}

impl Hermitian2 {
    pub fn new(a: f64, d: f64, b: C64) -> Self {
        Hermitian2 { a, d, b }
    }

    pub fn zero() -> Self {
        Hermitian2::new(0.0, 0.0, C64::new(0.0, 0.0))
    }

    pub fn identity() -> Self {
        Hermitian2::new(1.0, 1.0, C64::new(0.0, 0.0))
    }

    /// Entry (0,0).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Entry (1,1).
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Entry (0,1).
    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b.norm_sqr()
    }

    pub fn add(&self, o: &Hermitian2) -> Hermitian2 {
        Hermitian2::new(self.a + o.a, self.d + o.d, self.b + o.b)
    }

    pub fn sub(&self, o: &Hermitian2) -> Hermitian2 {
        Hermitian2::new(self.a - o.a, self.d - o.d, self.b - o.b)
    }

    pub fn scale(&self, s: f64) -> Hermitian2 {
        Hermitian2::new(self.a * s, self.d * s, self.b * s)
    }

    pub fn to_matrix(&self) -> Matrix2 {
        Matrix2::new(
            C64::new(self.a, 0.0),
            self.b,
            self.b.conj(),
            C64::new(self.d, 0.0),
        )
    }

    /// Eigenvalue midpoint (a+d)/2.
    pub(crate) fn eig_mean(&self) -> f64 {
        0.5 * (self.a + self.d)
    }

    /// Eigenvalue half-spread sqrt(((a-d)/2)^2 + |b|^2); the eigenvalues are
    /// mean -/+ radius.
    pub(crate) fn eig_radius(&self) -> f64 {
        (0.5 * (self.a - self.d)).hypot(self.b.norm())
    }
}

/// Trace-one positive-semidefinite Hermitian matrix; encodes a state, pure if
/// rank one, mixed otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Density(Hermitian2);

impl Density {
    pub fn new(m: Hermitian2) -> Result<Density> {
        let trace = m.trace();
        let min_eig = m.eig_mean() - m.eig_radius();
        if (trace - 1.0).abs() > STRUCTURAL_TOL || min_eig < -STRUCTURAL_TOL {
            return Err(Error::NotDensity { trace, min_eig });
        }
        Ok(Density(m))
    }

    pub fn matrix(&self) -> &Hermitian2 {
        &self.0
    }
}

/// Idempotent Hermitian matrix with trace equal to its rank; encodes an event
/// as a subspace. Rank 0 and 2 are the impossible and the sure event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projector {
    m: Hermitian2,
    rank: u8,
}

impl Projector {
    pub fn new(m: Hermitian2) -> Result<Projector> {
        let mm = m.to_matrix();
        let defect = mm.mul(&mm).sub(&mm).frobenius_norm();
        let trace = m.trace();
        let rank = trace.round();
        if defect > STRUCTURAL_TOL || (trace - rank).abs() > STRUCTURAL_TOL || !(0.0..=2.0).contains(&rank) {
            return Err(Error::NotProjector { defect, trace });
        }
        Ok(Projector { m, rank: rank as u8 })
    }

    /// Projector onto the zero subspace (never observed).
    pub fn zero() -> Projector {
        Projector { m: Hermitian2::zero(), rank: 0 }
    }

    /// Projector onto the whole space (always observed).
    pub fn identity() -> Projector {
        Projector { m: Hermitian2::identity(), rank: 2 }
    }

    /// Basis projector onto |1>: feature present.
    pub fn present() -> Projector {
        Projector { m: Hermitian2::new(1.0, 0.0, C64::new(0.0, 0.0)), rank: 1 }
    }

    /// Basis projector onto |0>: feature absent.
    pub fn absent() -> Projector {
        Projector { m: Hermitian2::new(0.0, 1.0, C64::new(0.0, 0.0)), rank: 1 }
    }

    pub(crate) fn rank1_unchecked(m: Hermitian2) -> Projector {
        Projector { m, rank: 1 }
    }

    pub fn matrix(&self) -> &Hermitian2 {
        &self.m
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// The orthogonal complement I - self.
    pub fn complement(&self) -> Projector {
        Projector {
            m: Hermitian2::identity().sub(&self.m),
            rank: 2 - self.rank,
        }
    }
}

/// Eigen-pairs of a Hermitian matrix: distinct eigenvalues in ascending
/// order, each with the projector onto its eigenspace. Projectors are
/// mutually orthogonal and resolve the identity, and the eigenvalue-weighted
/// projector sum reconstructs the decomposed matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pairs: Vec<(f64, Projector)>,
}

impl Spectrum {
    pub fn pairs(&self) -> &[(f64, Projector)] {
        &self.pairs
    }

    /// True when the eigenvalues coincide and the spectrum collapsed to a
    /// single rank-2 pair.
    pub fn is_degenerate(&self) -> bool {
        self.pairs.len() == 1
    }
}

/// State with feature probability p: coordinates (sqrt(p), sqrt(1-p)).
pub fn ket_from_probability(p: f64) -> Result<Ket> {
    check_probability("p", p)?;
    Ok(Ket(Vector2::new(
        C64::new(p.sqrt(), 0.0),
        C64::new((1.0 - p).sqrt(), 0.0),
    )))
}

/// Rank-one projector |k><k| onto the given state.
pub fn projector_of(k: &Ket) -> Projector {
    let m = Hermitian2::new(k.c0().norm_sqr(), k.c1().norm_sqr(), k.c0() * k.c1().conj());
    Projector::rank1_unchecked(m)
}

/// Born probability trace(rho * e) of observing event `e` in state `rho`.
/// Analytically in [0, 1]; the few ulps of dust a closed-form trace can pick
/// up are clipped so downstream consumers always see a probability.
pub fn born(rho: &Density, e: &Projector) -> f64 {
    let r = rho.matrix();
    let p = e.matrix();
    // tr(RP) for Hermitian R, P is real: diagonal terms plus 2*Re(b_R * conj(b_P)).
    let t = r.a() * p.a() + r.d() * p.d() + 2.0 * (r.b() * p.b().conj()).re;
    t.clamp(0.0, 1.0)
}

/// Diagonal density diag(p, 1-p): the mixture that assigns probability p to
/// feature presence with no interference.
pub fn mixture(p: f64) -> Result<Density> {
    check_probability("p", p)?;
    Ok(Density(Hermitian2::new(p, 1.0 - p, C64::new(0.0, 0.0))))
}

/// Rank-one density of the superposed state with feature probability p;
/// off-diagonal entries sqrt(p(1-p)).
pub fn pure_density(p: f64) -> Result<Density> {
    let k = ket_from_probability(p)?;
    Ok(Density(*projector_of(&k).matrix()))
}

/// Closed-form eigendecomposition. Coincident eigenvalues (within
/// [`STRUCTURAL_TOL`]) collapse to a single rank-2 identity pair, which keeps
/// the orthogonality and reconstruction invariants intact.
pub fn spectral_decompose(m: &Hermitian2) -> Spectrum {
    let mean = m.eig_mean();
    let rad = m.eig_radius();
    if rad <= STRUCTURAL_TOL {
        return Spectrum { pairs: vec![(mean, Projector::identity())] };
    }
    let eta1 = mean + rad;
    // Eigenvector for eta1 from the rows of (m - eta1*I); of the two closed
    // forms, the one with the larger norm is numerically stable (their norms
    // cannot both be small: they add to at least the spread).
    let v_a = Vector2::new(m.b(), C64::new(eta1 - m.a(), 0.0));
    let v_b = Vector2::new(C64::new(eta1 - m.d(), 0.0), m.b().conj());
    let v = if v_a.norm_sq() >= v_b.norm_sq() { v_a } else { v_b };
    let e1 = projector_of(&Ket::normalized(v));
    let e0 = e1.complement();
    Spectrum { pairs: vec![(mean - rad, e0), (eta1, e1)] }
}

/// Squared inner product (fidelity) of the two superposed states with feature
/// probabilities p0 and p1: (sqrt(p0 p1) + sqrt((1-p0)(1-p1)))^2.
pub fn overlap(p0: f64, p1: f64) -> Result<f64> {
    check_probability("p0", p0)?;
    check_probability("p1", p1)?;
    let x = (p0 * p1).sqrt() + ((1.0 - p0) * (1.0 - p1)).sqrt();
    Ok(x * x)
}

/// Decomposition of an observation probability into its classical part and
/// the interference excess. `total = classical + interference` holds exactly:
/// both terms of the expanded square are computed separately and `total` is
/// their sum, so the identity survives rounding.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InterferenceParts {
    /// |<observed|state>|^2, assembled as classical + interference.
    pub total: f64,
    /// Sum of per-coordinate probability products, the mixture value.
    pub classical: f64,
    /// 2|s0||o0||s1||o1| cos(theta), theta the phase of
    /// s0 * conj(o0) * conj(s1) * o1.
    pub interference: f64,
}

/// Splits |<observed|state>|^2 into the classical term and the interference
/// term. Indices refer to coordinates: s0, o0 are the first coordinates.
pub fn interference(state: &Ket, observed: &Ket) -> InterferenceParts {
    let x = state.c0() * observed.c0().conj();
    let y = state.c1() * observed.c1().conj();
    let classical = state.c0().norm_sqr() * observed.c0().norm_sqr()
        + state.c1().norm_sqr() * observed.c1().norm_sqr();
    let cross = 2.0 * (x * y.conj()).re;
    InterferenceParts { total: classical + cross, classical, interference: cross }
}

/// Projection a*x of a state onto the subspace of `a`: the unique closest
/// point of the subspace, not necessarily unit norm.
pub fn project_onto(a: &Projector, x: &Ket) -> Vector2 {
    a.matrix().to_matrix().apply(x.as_vector())
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange { name, value: p });
    }
    Ok(())
}
