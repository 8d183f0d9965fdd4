//! Mutual information, channel capacity, accessible-information closed forms
//! and derivative diagnostics.
//!
//! Channels are row-stochastic matrices: row i is the outcome distribution
//! for input i. All information quantities are in bits.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ensembles::{Ensemble, Povm};
use crate::fp;
use crate::linalg::{self, LinalgError, ProbDist, StateVector, SymMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum InfoError {
    Domain { what: &'static str, value: f64 },
    DimensionMismatch { detail: String },
    /// Blahut-Arimoto did not reach the tolerance within the iteration cap.
    NonConvergence { iterations: usize, gap: f64 },
    /// A prior-derivative direction must sum to zero.
    DirectionNotBalanced { sum: f64 },
}

impl fmt::Display for InfoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoError::Domain { what, value } => write!(f, "domain error: {what} ({value})"),
            InfoError::DimensionMismatch { detail } => write!(f, "dimension mismatch: {detail}"),
            InfoError::NonConvergence { iterations, gap } => {
                write!(f, "no convergence after {iterations} iterations (gap {gap})")
            }
            InfoError::DirectionNotBalanced { sum } => {
                write!(f, "derivative direction sums to {sum}, expected 0")
            }
        }
    }
}

impl core::error::Error for InfoError {}

impl From<LinalgError> for InfoError {
    fn from(e: LinalgError) -> Self {
        InfoError::DimensionMismatch { detail: format!("{e}") }
    }
}

/// Row-stochastic transition matrix of a discrete memoryless channel.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<f64>>,
    n_out: usize,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, InfoError> {
        if rows.is_empty() {
            return Err(InfoError::Domain { what: "no rows", value: 0.0 });
        }
        let n_out = rows[0].len();
        if n_out == 0 {
            return Err(InfoError::Domain { what: "no outputs", value: 0.0 });
        }
        for row in &rows {
            if row.len() != n_out {
                return Err(InfoError::DimensionMismatch {
                    detail: format!("ragged rows: {} vs {}", row.len(), n_out),
                });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > linalg::PROB_SUM_TOL {
                return Err(InfoError::Domain { what: "row does not sum to 1", value: sum });
            }
            if row.iter().any(|&q| q < -1e-12 || q.is_nan()) {
                return Err(InfoError::Domain { what: "negative transition probability", value: 0.0 });
            }
        }
        Ok(Self { rows, n_out })
    }

    pub fn n_in(&self) -> usize {
        self.rows.len()
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// New channel with outputs `a` and `b` merged (summed).
    pub fn merge_outputs(&self, a: usize, b: usize) -> TransitionMatrix {
        assert!(a < self.n_out && b < self.n_out && a != b);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(self.n_out - 1);
                for (j, &q) in row.iter().enumerate() {
                    if j == b {
                        continue;
                    }
                    out.push(if j == a { q + row[b] } else { q });
                }
                out
            })
            .collect();
        TransitionMatrix { rows, n_out: self.n_out - 1 }
    }
}

/// Outcome of a capacity computation.
#[derive(Debug, Clone)]
pub struct ChannelResult {
    pub capacity: f64,
    pub optimal_priors: ProbDist,
    pub iterations: usize,
}

/// The classical channel induced by measuring each ensemble state:
/// entry (i, j) = w_j * |<v_j | state_i>|^2.
pub fn induced_channel(e: &Ensemble, m: &Povm) -> Result<TransitionMatrix, InfoError> {
    if e.dim() != m.dim() {
        return Err(InfoError::DimensionMismatch {
            detail: format!("ensemble dim {} vs POVM dim {}", e.dim(), m.dim()),
        });
    }
    let rows = e
        .states
        .iter()
        .map(|s| m.elements().iter().map(|(w, v)| w * v.overlap2(s)).collect())
        .collect();
    TransitionMatrix::new(rows)
}

/// Mutual information between the input (with the given priors) and the
/// channel output: output entropy minus conditional output entropy.
pub fn mutual_information(priors: &ProbDist, t: &TransitionMatrix) -> Result<f64, InfoError> {
    if priors.len() != t.n_in() {
        return Err(InfoError::DimensionMismatch {
            detail: format!("{} priors vs {} inputs", priors.len(), t.n_in()),
        });
    }
    let mut info = 0.0;
    for j in 0..t.n_out() {
        let out_j: f64 = (0..t.n_in()).map(|i| priors.get(i) * t.prob(i, j)).sum();
        info -= fp::xlog2x(out_j);
    }
    for i in 0..t.n_in() {
        let p = priors.get(i);
        if p == 0.0 {
            continue;
        }
        for j in 0..t.n_out() {
            info += p * fp::xlog2x(t.prob(i, j));
        }
    }
    Ok(info.max(0.0))
}

/// Default iteration cap for [`blahut_arimoto`].
pub const BA_MAX_ITERATIONS: usize = 100_000;

/// Channel capacity by alternating maximization over input priors.
///
/// Stops when the sup-log ratio gap max_i D_i - sum_i r_i D_i drops below
/// `tol`, which sandwiches the capacity to within `tol`.
pub fn blahut_arimoto(t: &TransitionMatrix, tol: f64) -> Result<ChannelResult, InfoError> {
    blahut_arimoto_with(t, tol, BA_MAX_ITERATIONS)
}

pub fn blahut_arimoto_with(
    t: &TransitionMatrix,
    tol: f64,
    max_iterations: usize,
) -> Result<ChannelResult, InfoError> {
    let n_in = t.n_in();
    let n_out = t.n_out();
    let mut r: Vec<f64> = alloc::vec![1.0 / n_in as f64; n_in];
    let mut d = alloc::vec![0.0f64; n_in];
    let mut out = alloc::vec![0.0f64; n_out];

    for iter in 1..=max_iterations {
        for o in out.iter_mut() {
            *o = 0.0;
        }
        for (i, ri) in r.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += ri * t.prob(i, j);
            }
        }
        // D_i = sum_j q_ij log2(q_ij / out_j), the per-input divergence.
        let mut sup = f64::NEG_INFINITY;
        let mut lower = 0.0;
        for i in 0..n_in {
            let mut di = 0.0;
            for j in 0..n_out {
                let q = t.prob(i, j);
                if q > 0.0 && out[j] > 0.0 {
                    di += q * fp::log2(q / out[j]);
                }
            }
            d[i] = di;
            sup = sup.max(di);
            lower += r[i] * di;
        }
        if sup - lower <= tol {
            let capacity = lower.max(0.0);
            // Renormalize away accumulated rounding before validating.
            let total: f64 = r.iter().sum();
            for ri in r.iter_mut() {
                *ri = (*ri / total).clamp(0.0, 1.0);
            }
            let correction: f64 = 1.0 - r.iter().sum::<f64>();
            r[0] += correction;
            return Ok(ChannelResult {
                capacity,
                optimal_priors: ProbDist::new(&r)?,
                iterations: iter,
            });
        }
        let mut norm = 0.0;
        for (ri, di) in r.iter_mut().zip(&d) {
            *ri *= fp::exp2(di - sup);
            norm += *ri;
        }
        for ri in r.iter_mut() {
            *ri /= norm;
        }
    }
    Err(InfoError::NonConvergence { iterations: max_iterations, gap: f64::NAN })
}

/// Accessible information of two pure states with squared overlap `kappa`,
/// priors (p, 1-p): H(p) - H(1/2 + (1/2) sqrt(1 - 4 kappa p (1-p))).
pub fn two_state_accessible_info(kappa: f64, p: f64) -> Result<f64, InfoError> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(InfoError::Domain { what: "kappa outside [0,1]", value: kappa });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(InfoError::Domain { what: "p outside [0,1]", value: p });
    }
    let root = fp::sqrt((1.0 - 4.0 * kappa * p * (1.0 - p)).max(0.0));
    let h_prior = linalg::binary_entropy(p).expect("checked");
    let h_cond = linalg::binary_entropy((0.5 + 0.5 * root).min(1.0)).expect("in range");
    Ok((h_prior - h_cond).max(0.0))
}

/// Holevo chi of a pure-state ensemble: the von Neumann entropy of the
/// average density matrix, in bits.
pub fn holevo_chi(e: &Ensemble) -> f64 {
    let mut rho = SymMatrix::zeros(e.dim());
    for (s, &p) in e.states.iter().zip(e.priors.as_slice()) {
        rho.add_scaled(p, &SymMatrix::outer(s));
    }
    let evals = linalg::sym_eigenvalues(&rho);
    -evals.iter().map(|&l| fp::xlog2x(l.max(0.0))).sum::<f64>()
}

/// Per-projector contribution to the prior derivative of the mutual
/// information, for POVM element w |v><v| (the weight factors out).
pub fn projector_prior_derivative(
    e: &Ensemble,
    direction: &[f64],
    v: &StateVector,
) -> f64 {
    let q: Vec<f64> = e.states.iter().map(|s| v.overlap2(s)).collect();
    let u: f64 = e.priors.as_slice().iter().zip(&q).map(|(p, qi)| p * qi).sum();
    let du: f64 = direction.iter().zip(&q).map(|(dp, qi)| dp * qi).sum();
    let first = if u > 0.0 {
        -du * fp::log2(u)
    } else if du == 0.0 {
        0.0
    } else {
        // The information grows without bound when mass first flows onto a
        // projector that currently sees none.
        return f64::INFINITY * du.signum();
    };
    let second: f64 = direction
        .iter()
        .zip(&q)
        .map(|(dp, &qi)| if qi > 0.0 { dp * qi * fp::log2(qi) } else { 0.0 })
        .sum();
    first + second
}

/// Derivative of the mutual information along a zero-sum prior direction,
/// with the measurement held fixed.
pub fn prior_derivative(e: &Ensemble, m: &Povm, direction: &[f64]) -> Result<f64, InfoError> {
    if direction.len() != e.len() {
        return Err(InfoError::DimensionMismatch {
            detail: format!("{} direction entries vs {} states", direction.len(), e.len()),
        });
    }
    let sum: f64 = direction.iter().sum();
    if sum.abs() > 1e-12 {
        return Err(InfoError::DirectionNotBalanced { sum });
    }
    Ok(m.elements()
        .iter()
        .map(|(w, v)| w * projector_prior_derivative(e, direction, v))
        .sum())
}

/// The canonical probing direction: raise the first prior at unit rate while
/// lowering the other two equally.
pub const CANONICAL_DIRECTION: [f64; 3] = [1.0, -0.5, -0.5];
