//! Constructors for the trine state families and their measurement families.
//!
//! Conventions used throughout the crate:
//!
//! - trine index `b` runs over 0, 1, 2 with azimuths 0, +2pi/3, -2pi/3;
//! - `alpha` in [0, 1] is the squared z-component of a lifted trine, so
//!   `alpha = 0` is planar and `alpha = 1/3` is the orthogonal triple;
//! - POVM elements are stored as `(weight, unit vector)` pairs, meaning the
//!   operator `weight * v v^T`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::fp;
use crate::linalg::{LinalgError, Matrix, ProbDist, StateVector, SymMatrix};

/// Completeness tolerance for POVMs and partial measurements.
pub const COMPLETENESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleError {
    Domain { what: &'static str, value: f64 },
    /// One of the two algebraic validity conditions on a triple family failed.
    Constraint { which: &'static str, value: f64 },
    /// Completeness residual too large.
    Incomplete { residual: f64 },
    Mixed(String),
}

impl fmt::Display for EnsembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleError::Domain { what, value } => {
                write!(f, "domain error: {what} (value {value})")
            }
            EnsembleError::Constraint { which, value } => {
                write!(f, "validity constraint violated: {which} = {value}")
            }
            EnsembleError::Incomplete { residual } => {
                write!(f, "operators do not sum to identity (residual {residual})")
            }
            EnsembleError::Mixed(s) => write!(f, "{s}"),
        }
    }
}

impl core::error::Error for EnsembleError {}

impl From<LinalgError> for EnsembleError {
    fn from(e: LinalgError) -> Self {
        EnsembleError::Mixed(format!("{e}"))
    }
}

/// A prior-weighted list of pure states, all of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub states: Vec<StateVector>,
    pub priors: ProbDist,
}

impl Ensemble {
    pub fn new(states: Vec<StateVector>, priors: ProbDist) -> Result<Self, EnsembleError> {
        if states.is_empty() {
            return Err(EnsembleError::Domain { what: "empty ensemble", value: 0.0 });
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(EnsembleError::Mixed(format!(
                "states of mixed dimension (expected {dim})"
            )));
        }
        if priors.len() != states.len() {
            return Err(EnsembleError::Mixed(format!(
                "{} states but {} priors",
                states.len(),
                priors.len()
            )));
        }
        Ok(Self { states, priors })
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Same states with different priors.
    pub fn with_priors(&self, priors: ProbDist) -> Result<Self, EnsembleError> {
        Self::new(self.states.clone(), priors)
    }
}

/// A weighted rank-1 projector list summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<(f64, StateVector)>,
}

impl Povm {
    pub fn new(elements: Vec<(f64, StateVector)>) -> Result<Self, EnsembleError> {
        if elements.is_empty() {
            return Err(EnsembleError::Domain { what: "empty POVM", value: 0.0 });
        }
        let dim = elements[0].1.dim();
        for (w, v) in &elements {
            if *w < -1e-15 {
                return Err(EnsembleError::Domain { what: "negative POVM weight", value: *w });
            }
            if v.dim() != dim {
                return Err(EnsembleError::Mixed(format!(
                    "POVM vectors of mixed dimension (expected {dim})"
                )));
            }
        }
        let residual = completeness_residual(&elements, dim);
        if residual > COMPLETENESS_TOL {
            return Err(EnsembleError::Incomplete { residual });
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[(f64, StateVector)] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].1.dim()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
}

/// Largest absolute entry of (sum_j w_j v_j v_j^T - I).
pub fn completeness_residual(elements: &[(f64, StateVector)], dim: usize) -> f64 {
    let mut acc = SymMatrix::zeros(dim);
    for (w, v) in elements {
        acc.add_scaled(*w, &SymMatrix::outer(v));
    }
    acc.max_abs_diff(&SymMatrix::identity(dim))
}

/// A list of real matrices A_i with sum_i A_i^T A_i = I: a partial measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<Matrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<Matrix>) -> Result<Self, EnsembleError> {
        if operators.is_empty() {
            return Err(EnsembleError::Domain { what: "empty Kraus set", value: 0.0 });
        }
        let dim = operators[0].dim();
        if operators.iter().any(|a| a.dim() != dim) {
            return Err(EnsembleError::Mixed(format!(
                "operators of mixed dimension (expected {dim})"
            )));
        }
        let mut acc = SymMatrix::zeros(dim);
        for a in &operators {
            acc.add_scaled(1.0, &a.gram());
        }
        let residual = acc.max_abs_diff(&SymMatrix::identity(dim));
        if residual > COMPLETENESS_TOL {
            return Err(EnsembleError::Incomplete { residual });
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }
}

/// The lifted trine state T_b(alpha) in dimension 3.
pub fn trine_state(alpha: f64, b: usize) -> Result<StateVector, EnsembleError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(EnsembleError::Domain { what: "alpha outside [0,1]", value: alpha });
    }
    assert!(b < 3, "trine index out of range");
    let planar = fp::sqrt(1.0 - alpha);
    let z = fp::sqrt(alpha);
    let theta = trine_azimuth(b);
    Ok(StateVector::normalized(&[planar * fp::cos(theta), planar * fp::sin(theta), z])?)
}

fn trine_azimuth(b: usize) -> f64 {
    match b {
        0 => 0.0,
        1 => 2.0 * PI / 3.0,
        _ => -2.0 * PI / 3.0,
    }
}

/// The three lifted trines with uniform priors.
pub fn lifted_trines(alpha: f64) -> Result<Ensemble, EnsembleError> {
    let states = (0..3).map(|b| trine_state(alpha, b)).collect::<Result<Vec<_>, _>>()?;
    Ensemble::new(states, ProbDist::uniform(3))
}

/// The planar trines as two-dimensional states, uniform priors.
pub fn planar_trines() -> Ensemble {
    let states: Vec<StateVector> = (0..3)
        .map(|b| {
            let th = trine_azimuth(b);
            StateVector::new(&[fp::cos(th), fp::sin(th)]).expect("unit by construction")
        })
        .collect();
    Ensemble::new(states, ProbDist::uniform(3)).expect("valid by construction")
}

/// The uniform-prior-optimal planar POVM: weight 2/3 on the line
/// perpendicular to each trine.
pub fn planar_antitrine_povm() -> Povm {
    let elements = (0..3)
        .map(|b| {
            let th = trine_azimuth(b) + PI / 2.0;
            let v = StateVector::new(&[fp::cos(th), fp::sin(th)]).expect("unit");
            (2.0 / 3.0, v)
        })
        .collect();
    Povm::new(elements).expect("complete by construction")
}

/// Member b of the symmetric projector triple at colatitude-like angle `phi`
/// and azimuth offset `theta`.
pub fn triple_vector(phi: f64, theta: f64, b: usize) -> StateVector {
    assert!(b < 3, "triple index out of range");
    let az = theta + trine_azimuth(b);
    StateVector::normalized(&[fp::cos(phi) * fp::cos(az), fp::cos(phi) * fp::sin(az), fp::sin(phi)])
        .expect("unit by construction")
}

/// Member b of the symmetric von Neumann basis V(theta).
pub fn vn_basis_vector(theta: f64, b: usize) -> StateVector {
    let phi = fp::asin(1.0 / fp::sqrt(3.0));
    triple_vector(phi, theta, b)
}

fn check_triple_constraints(ps: &[f64], phis: &[f64]) -> Result<(), EnsembleError> {
    let sum_p: f64 = ps.iter().sum();
    if (sum_p - 1.0).abs() > COMPLETENESS_TOL {
        return Err(EnsembleError::Constraint { which: "sum of triple weights", value: sum_p });
    }
    let sum_ps2: f64 = ps
        .iter()
        .zip(phis)
        .map(|(p, phi)| {
            let s = fp::sin(*phi);
            p * s * s
        })
        .sum();
    if (sum_ps2 - 1.0 / 3.0).abs() > COMPLETENESS_TOL {
        return Err(EnsembleError::Constraint {
            which: "sum of weight * sin^2(phi)",
            value: sum_ps2,
        });
    }
    Ok(())
}

/// A POVM made of symmetric triples: component (p, phi, theta) contributes
/// the three elements p * P_b(phi, theta) P_b(phi, theta)^T.
///
/// Valid iff the weights sum to 1 and sum_i p_i sin^2(phi_i) = 1/3; the error
/// names whichever condition failed.
pub fn triple_povm(components: &[(f64, f64, f64)]) -> Result<Povm, EnsembleError> {
    if components.is_empty() {
        return Err(EnsembleError::Domain { what: "no components", value: 0.0 });
    }
    let ps: Vec<f64> = components.iter().map(|c| c.0).collect();
    let phis: Vec<f64> = components.iter().map(|c| c.1).collect();
    check_triple_constraints(&ps, &phis)?;
    let mut elements = Vec::with_capacity(3 * components.len());
    for &(p, phi, theta) in components {
        if p < 0.0 {
            return Err(EnsembleError::Domain { what: "negative component weight", value: p });
        }
        for b in 0..3 {
            elements.push((p, triple_vector(phi, theta, b)));
        }
    }
    Povm::new(elements)
}

/// Diagonal partial-measurement operator M(phi).
pub fn partial_operator(phi: f64) -> Matrix {
    let c = fp::sqrt(1.5) * fp::cos(phi);
    let s = fp::sqrt(3.0) * fp::sin(phi);
    Matrix::diagonal(&[c, c, s]).expect("3x3")
}

/// The partial measurement with operators sqrt(p_i) M(phi_i).
///
/// Validity requires the same two constraints as [`triple_povm`].
pub fn partial_measurement(components: &[(f64, f64)]) -> Result<KrausSet, EnsembleError> {
    if components.is_empty() {
        return Err(EnsembleError::Domain { what: "no components", value: 0.0 });
    }
    let ps: Vec<f64> = components.iter().map(|c| c.0).collect();
    let phis: Vec<f64> = components.iter().map(|c| c.1).collect();
    check_triple_constraints(&ps, &phis)?;
    let mut ops = Vec::with_capacity(components.len());
    for &(p, phi) in components {
        if p < 0.0 {
            return Err(EnsembleError::Domain { what: "negative component weight", value: p });
        }
        let root = fp::sqrt(p);
        let m = partial_operator(phi);
        let mut rows = [[0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = root * m.entry(i, j);
            }
        }
        ops.push(Matrix::from_rows(&[&rows[0], &rows[1], &rows[2]])?);
    }
    KrausSet::new(ops)
}

/// Trine height after the partial measurement branch with angle `phi`.
pub fn lifted_alpha_after(alpha: f64, phi: f64) -> f64 {
    let s2 = fp::sin(phi) * fp::sin(phi);
    let c2 = 1.0 - s2;
    alpha * s2 / (alpha * s2 + 0.5 * (1.0 - alpha) * c2)
}

/// Branch probability of the partial measurement component (p, phi).
pub fn branch_probability(alpha: f64, p: f64, phi: f64) -> f64 {
    let s2 = fp::sin(phi) * fp::sin(phi);
    3.0 * p * (alpha * s2 + 0.5 * (1.0 - alpha) * (1.0 - s2))
}

/// Member b of the von Neumann basis Q(beta).
pub fn q_basis_vector(beta: f64, b: usize) -> StateVector {
    let rb = fp::sqrt(beta);
    let r1 = fp::sqrt(1.0 - beta);
    let inv = 1.0 / fp::sqrt(2.0);
    match b {
        0 => StateVector::normalized(&[rb, 0.0, r1]),
        1 => StateVector::normalized(&[-inv * r1, inv, inv * rb]),
        _ => StateVector::normalized(&[-inv * r1, -inv, inv * rb]),
    }
    .expect("unit by construction")
}

/// The three-outcome von Neumann measurement Q(beta).
pub fn q_measurement(beta: f64) -> Result<Povm, EnsembleError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(EnsembleError::Domain { what: "beta outside [0,1]", value: beta });
    }
    Povm::new((0..3).map(|b| (1.0, q_basis_vector(beta, b))).collect())
}

/// Two-outcome measurement that either projects a height-`alpha` trine into
/// the plane (probability 1 - alpha/gamma) or lifts it to height `gamma`
/// (probability alpha/gamma). Both operators are diagonal and z-preserving.
pub fn lift_or_project(alpha: f64, gamma: f64) -> Result<KrausSet, EnsembleError> {
    if !(alpha > 0.0 && alpha <= gamma && gamma < 1.0) {
        return Err(EnsembleError::Domain {
            what: "need 0 < alpha <= gamma < 1",
            value: alpha,
        });
    }
    let t2 = alpha * (1.0 - gamma) / (gamma * (1.0 - alpha));
    let t = fp::sqrt(t2);
    let s = fp::sqrt(1.0 - t2);
    let lift = Matrix::diagonal(&[t, t, 1.0])?;
    let project = Matrix::diagonal(&[s, s, 0.0])?;
    KrausSet::new(alloc::vec![lift, project])
}

/// The three unit vectors each perpendicular to two of the trines T(alpha).
pub fn discrimination_vectors(alpha: f64) -> Result<[StateVector; 3], EnsembleError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(EnsembleError::Domain { what: "alpha outside [0,1)", value: alpha });
    }
    let denom = fp::sqrt(1.0 + 3.0 * alpha);
    let ra = fp::sqrt(alpha);
    let r3a = fp::sqrt(3.0 * alpha);
    let rz = fp::sqrt(1.0 - alpha);
    let d0 = StateVector::normalized(&[2.0 * ra / denom, 0.0, rz / denom])?;
    let d1 = StateVector::normalized(&[-ra / denom, r3a / denom, rz / denom])?;
    let d2 = StateVector::normalized(&[-ra / denom, -r3a / denom, rz / denom])?;
    Ok([d0, d1, d2])
}

/// The four-outcome first measurement of the simple adaptive protocol:
/// scaled projectors onto the discrimination vectors plus a scaled projection
/// onto the plane. Requires alpha <= 1/3.
pub fn first_protocol_kraus(alpha: f64) -> Result<KrausSet, EnsembleError> {
    if !(0.0..=1.0 / 3.0).contains(&alpha) {
        return Err(EnsembleError::Domain { what: "alpha outside [0,1/3]", value: alpha });
    }
    let ds = discrimination_vectors(alpha)?;
    let cd = fp::sqrt(1.0 + 3.0 * alpha) / fp::sqrt(3.0 * (1.0 - alpha));
    let cp = fp::sqrt(1.0 - 3.0 * alpha) / fp::sqrt(1.0 - alpha);
    let mut ops: Vec<Matrix> = ds.iter().map(|d| Matrix::scaled_projector(cd, d)).collect();
    ops.push(Matrix::diagonal(&[cp, cp, 0.0])?);
    KrausSet::new(ops)
}

/// Optimal two-outcome basis for discriminating the planar trine pair
/// (a, b), returned as in-plane vectors in dimension 3.
pub fn pair_optimal_basis(a: usize, b: usize) -> (StateVector, StateVector) {
    assert!(a < 3 && b < 3 && a != b, "need two distinct trine indices");
    let bisector = 0.5 * (trine_azimuth(a) + trine_azimuth(b));
    // The two azimuths differ by +-2pi/3, so the midpoint formula needs the
    // wrap fixed up for the (0,1)/(0,2) pairs vs (1,2).
    let bis = if (trine_azimuth(a) - trine_azimuth(b)).abs() > PI {
        bisector + PI
    } else {
        bisector
    };
    let mk = |az: f64| {
        StateVector::normalized(&[fp::cos(az), fp::sin(az), 0.0]).expect("unit")
    };
    (mk(bis + PI / 4.0), mk(bis - PI / 4.0))
}
