//! Small dense real linear algebra and entropy primitives.
//!
//! Everything lives in dimension 2 or 3 and is stored inline, so the types
//! are `Copy` and allocation-free. Entropies are in bits unless a function
//! says otherwise.

use alloc::vec::Vec;
use core::fmt;

use crate::fp;

/// Tolerance for the unit-norm invariant of [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for probability distributions summing to one.
pub const PROB_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Argument outside its mathematical domain.
    Domain { what: &'static str, value: f64 },
    /// Dimension is not 2 or 3, or two objects disagree on dimension.
    Dimension { expected: usize, got: usize },
    /// Vector norm too far from 1.
    NotNormalized { norm: f64 },
    /// Matrix entries are not symmetric as stored.
    NotSymmetric,
    /// Weights do not form a probability distribution.
    InvalidDistribution { detail: &'static str, value: f64 },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Domain { what, value } => {
                write!(f, "domain error: {what} (value {value})")
            }
            LinalgError::Dimension { expected, got } => {
                write!(f, "dimension error: expected {expected}, got {got}")
            }
            LinalgError::NotNormalized { norm } => {
                write!(f, "vector is not unit norm (norm {norm})")
            }
            LinalgError::NotSymmetric => write!(f, "matrix is not symmetric"),
            LinalgError::InvalidDistribution { detail, value } => {
                write!(f, "invalid probability distribution: {detail} ({value})")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// A real unit vector in dimension 2 or 3 (a pure state, or a projector axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    coords: [f64; 3],
    dim: usize,
}

impl StateVector {
    /// Builds a state vector, enforcing dimension 2 or 3 and unit norm.
    pub fn new(coords: &[f64]) -> Result<Self, LinalgError> {
        let dim = coords.len();
        if dim != 2 && dim != 3 {
            return Err(LinalgError::Dimension { expected: 3, got: dim });
        }
        let norm2: f64 = coords.iter().map(|c| c * c).sum();
        let norm = fp::sqrt(norm2);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(LinalgError::NotNormalized { norm });
        }
        let mut buf = [0.0; 3];
        buf[..dim].copy_from_slice(coords);
        Ok(Self { coords: buf, dim })
    }

    /// Builds a state vector by normalizing `coords`. Errors on (near-)zero input.
    pub fn normalized(coords: &[f64]) -> Result<Self, LinalgError> {
        let dim = coords.len();
        if dim != 2 && dim != 3 {
            return Err(LinalgError::Dimension { expected: 3, got: dim });
        }
        let norm2: f64 = coords.iter().map(|c| c * c).sum();
        if norm2 < 1e-300 {
            return Err(LinalgError::NotNormalized { norm: 0.0 });
        }
        let inv = 1.0 / fp::sqrt(norm2);
        let mut buf = [0.0; 3];
        for (b, c) in buf.iter_mut().zip(coords) {
            *b = c * inv;
        }
        Ok(Self { coords: buf, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    /// Coordinate `i`; zero beyond the stored dimension.
    pub(crate) fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    /// Euclidean inner product. Panics if dimensions differ.
    pub fn dot(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim, other.dim, "state vectors of different dimension");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// |<self|other>|^2.
    pub fn overlap2(&self, other: &StateVector) -> f64 {
        let d = self.dot(other);
        d * d
    }

    /// Angle between the lines spanned by the two vectors, in [0, pi/2].
    pub fn line_angle(&self, other: &StateVector) -> f64 {
        fp::acos(self.dot(other).abs().min(1.0))
    }
}

/// A 2x2 or 3x3 real symmetric matrix, stored dense.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix {
    m: [[f64; 3]; 3],
    dim: usize,
}

impl SymMatrix {
    /// Builds from rows, requiring `entry(i,j) == entry(j,i)` exactly as stored.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim != 2 && dim != 3 {
            return Err(LinalgError::Dimension { expected: 3, got: dim });
        }
        let mut m = [[0.0; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(LinalgError::Dimension { expected: dim, got: row.len() });
            }
            m[i][..dim].copy_from_slice(row);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if m[i][j] != m[j][i] {
                    return Err(LinalgError::NotSymmetric);
                }
            }
        }
        Ok(Self { m, dim })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: [[0.0; 3]; 3], dim }
    }

    pub fn identity(dim: usize) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            s.m[i][i] = 1.0;
        }
        s
    }

    /// The rank-1 projector v v^T.
    pub fn outer(v: &StateVector) -> Self {
        let dim = v.dim();
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                s.m[i][j] = v.coord(i) * v.coord(j);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    /// self += w * other. Panics on dimension mismatch.
    pub fn add_scaled(&mut self, w: f64, other: &SymMatrix) {
        assert_eq!(self.dim, other.dim, "matrices of different dimension");
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.m[i][j] += w * other.m[i][j];
            }
        }
    }

    pub fn scaled(&self, w: f64) -> Self {
        let mut s = *self;
        for i in 0..s.dim {
            for j in 0..s.dim {
                s.m[i][j] *= w;
            }
        }
        s
    }

    /// <v| self |v>. Panics on dimension mismatch.
    pub fn quadratic_form(&self, v: &StateVector) -> f64 {
        assert_eq!(self.dim, v.dim(), "matrix/vector dimension mismatch");
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += v.coord(i) * self.m[i][j] * v.coord(j);
            }
        }
        acc
    }

    /// Largest |self[i][j] - other[i][j]|.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrices of different dimension");
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.m[i][i]).sum()
    }

    /// Symmetric square root via eigendecomposition. Negative eigenvalues
    /// within the numerical floor are clamped to zero.
    pub fn sqrt(&self) -> SymMatrix {
        let (vals, vecs) = eigh(self);
        let mut out = SymMatrix::zeros(self.dim);
        for k in 0..self.dim {
            let lam = vals[k].max(0.0);
            let s = fp::sqrt(lam);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    out.m[i][j] += s * vecs[i][k] * vecs[j][k];
                }
            }
        }
        out
    }

    /// Matrix product self * other, symmetrized storage not assumed (returns dense).
    pub(crate) fn mul_raw(&self, other: &SymMatrix) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out[i][j] += self.m[i][k] * other.m[k][j];
                }
            }
        }
        out
    }
}

/// A general (not necessarily symmetric) real d x d matrix, d = 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix {
    a: [[f64; 3]; 3],
    dim: usize,
}

impl Matrix {
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim != 2 && dim != 3 {
            return Err(LinalgError::Dimension { expected: 3, got: dim });
        }
        let mut a = [[0.0; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(LinalgError::Dimension { expected: dim, got: row.len() });
            }
            a[i][..dim].copy_from_slice(row);
        }
        Ok(Self { a, dim })
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self, LinalgError> {
        let dim = entries.len();
        if dim != 2 && dim != 3 {
            return Err(LinalgError::Dimension { expected: 3, got: dim });
        }
        let mut a = [[0.0; 3]; 3];
        for (i, e) in entries.iter().enumerate() {
            a[i][i] = *e;
        }
        Ok(Self { a, dim })
    }

    /// w * v v^T as a general matrix.
    pub fn scaled_projector(w: f64, v: &StateVector) -> Self {
        let dim = v.dim();
        let mut a = [[0.0; 3]; 3];
        for i in 0..dim {
            for j in 0..dim {
                a[i][j] = w * v.coord(i) * v.coord(j);
            }
        }
        Self { a, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.a[i][j]
    }

    /// A^T A as a symmetric matrix.
    pub fn gram(&self) -> SymMatrix {
        let mut s = SymMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = 0.0;
                for k in 0..self.dim {
                    acc += self.a[k][i] * self.a[k][j];
                }
                s.m[i][j] = acc;
            }
        }
        s
    }

    /// Applies the matrix to a (not necessarily unit) coordinate vector.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim, "matrix/vector dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.a[i][j] * v[j]).sum())
            .collect()
    }

    /// Applies to a state vector; returns (outcome probability, post state).
    /// The probability is |A v|^2 and the post state is A v normalized.
    pub fn apply_to_state(&self, v: &StateVector) -> (f64, Option<StateVector>) {
        let w = self.apply(v.coords());
        let norm2: f64 = w.iter().map(|c| c * c).sum();
        if norm2 < 1e-300 {
            (0.0, None)
        } else {
            (norm2, Some(StateVector::normalized(&w).expect("nonzero")))
        }
    }
}

/// A probability distribution: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    w: Vec<f64>,
}

impl ProbDist {
    pub fn new(weights: &[f64]) -> Result<Self, LinalgError> {
        for &p in weights {
            if !(0.0..=1.0 + 1e-15).contains(&p) || p.is_nan() {
                return Err(LinalgError::InvalidDistribution {
                    detail: "weight outside [0,1]",
                    value: p,
                });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(LinalgError::InvalidDistribution { detail: "sum != 1", value: sum });
        }
        Ok(Self { w: weights.to_vec() })
    }

    pub fn uniform(n: usize) -> Self {
        Self { w: alloc::vec![1.0 / n as f64; n] }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.w[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }
}

/// Binary Shannon entropy in bits, with 0 log 0 = 0.
pub fn binary_entropy(x: f64) -> Result<f64, LinalgError> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(LinalgError::Domain { what: "binary_entropy argument", value: x });
    }
    Ok(-fp::xlog2x(x) - fp::xlog2x(1.0 - x))
}

/// Shannon entropy of a distribution, in bits.
pub fn shannon_entropy(d: &ProbDist) -> f64 {
    entropy_bits(d.as_slice())
}

/// Entropy of a raw nonnegative slice (no normalization check), in bits.
pub(crate) fn entropy_bits(w: &[f64]) -> f64 {
    -w.iter().map(|&p| fp::xlog2x(p)).sum::<f64>()
}

/// All eigenvalues of a symmetric matrix, ascending.
///
/// 2x2 uses the closed form; 3x3 uses cyclic Jacobi sweeps, which for these
/// sizes converges to machine precision in a handful of sweeps.
pub fn sym_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let (mut vals, _) = eigh(m);
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    vals
}

/// Eigendecomposition (values unsorted, columns of `vecs` are eigenvectors).
pub(crate) fn eigh(m: &SymMatrix) -> (Vec<f64>, [[f64; 3]; 3]) {
    let dim = m.dim;
    if dim == 2 {
        let (a, b, c) = (m.m[0][0], m.m[0][1], m.m[1][1]);
        let half_tr = 0.5 * (a + c);
        let d = fp::sqrt(0.25 * (a - c) * (a - c) + b * b);
        let l0 = half_tr - d;
        let l1 = half_tr + d;
        // Eigenvector for l1: (b, l1 - a) unless degenerate.
        let mut vecs = [[0.0; 3]; 3];
        if d < 1e-300 {
            vecs[0][0] = 1.0;
            vecs[1][1] = 1.0;
        } else {
            let (vx, vy) = if b.abs() > (l1 - a).abs() {
                (b, l1 - a)
            } else if (l1 - c).abs() > 0.0 || b != 0.0 {
                (l1 - c, b)
            } else {
                (1.0, 0.0)
            };
            let n = fp::sqrt(vx * vx + vy * vy);
            let (ux, uy) = if n > 0.0 { (vx / n, vy / n) } else { (1.0, 0.0) };
            vecs[0][1] = ux;
            vecs[1][1] = uy;
            vecs[0][0] = -uy;
            vecs[1][0] = ux;
        }
        return (alloc::vec![l0, l1], vecs);
    }

    // Cyclic Jacobi for the 3x3 case.
    let mut a = m.m;
    let mut v = [[0.0; 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..64 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off < 1e-28 {
            break;
        }
        for p in 0..2 {
            for q in (p + 1)..3 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + fp::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / fp::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..3 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..3 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    (alloc::vec![a[0][0], a[1][1], a[2][2]], v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn binary_entropy_examples() {
        assert_close(binary_entropy(0.5).unwrap(), 1.0, 1e-15);
        assert_close(binary_entropy(0.0).unwrap(), 0.0, 0.0);
        assert_close(binary_entropy(1.0).unwrap(), 0.0, 0.0);
        // Crossover of the optimal two-state measurement on a planar trine pair.
        let x = 0.5 - 3.0f64.sqrt() / 4.0;
        assert_close(binary_entropy(x).unwrap(), 0.35458, 1e-5);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn shannon_entropy_examples() {
        let u = ProbDist::new(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert_close(shannon_entropy(&u), crate::LOG2_3, 1e-12);
        let d = ProbDist::new(&[1.0, 0.0, 0.0]).unwrap();
        assert_close(shannon_entropy(&d), 0.0, 0.0);
    }

    #[test]
    fn prob_dist_validation() {
        assert!(ProbDist::new(&[0.6, 0.5]).is_err());
        assert!(ProbDist::new(&[-0.1, 1.1]).is_err());
        assert!(ProbDist::new(&[0.25, 0.75]).is_ok());
    }

    #[test]
    fn state_vector_validation() {
        assert!(StateVector::new(&[1.0, 0.0]).is_ok());
        assert!(StateVector::new(&[1.0, 1.0]).is_err());
        assert!(StateVector::new(&[1.0]).is_err());
        assert!(StateVector::new(&[0.5, 0.5, 0.5, 0.5]).is_err());
    }

    #[test]
    fn eigenvalues_identity() {
        let eye = SymMatrix::identity(3);
        let vals = sym_eigenvalues(&eye);
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigenvalues_2x2() {
        let m = SymMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let vals = sym_eigenvalues(&m);
        assert_close(vals[0], 1.0, 1e-12);
        assert_close(vals[1], 3.0, 1e-12);
    }

    #[test]
    fn average_trine_density_matrix_is_diagonal() {
        // rho(alpha) = (1/3) sum_b |T_b><T_b| has eigenvalues
        // {(1-alpha)/2, (1-alpha)/2, alpha}: the off-diagonal sums cancel by
        // the threefold symmetry.
        for &alpha in &[0.0, 0.03, 0.2, 1.0 / 3.0, 0.8] {
            let mut rho = SymMatrix::zeros(3);
            for b in 0..3 {
                let t = crate::ensembles::trine_state(alpha, b).unwrap();
                rho.add_scaled(1.0 / 3.0, &SymMatrix::outer(&t));
            }
            let vals = sym_eigenvalues(&rho);
            let mut expect = vec![(1.0 - alpha) / 2.0, (1.0 - alpha) / 2.0, alpha];
            expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (got, want) in vals.iter().zip(&expect) {
                assert_close(*got, *want, 1e-10);
            }
        }
    }

    #[test]
    fn trine_projector_sum_minimum_eigenvalue() {
        // sum_b |T_b><T_b| = 3 rho(alpha); its minimum eigenvalue is
        // min(3 alpha, 3(1-alpha)/2).
        for &alpha in &[0.01, 0.05, 0.3, 0.5, 0.9] {
            let mut s = SymMatrix::zeros(3);
            for b in 0..3 {
                let t = crate::ensembles::trine_state(alpha, b).unwrap();
                s.add_scaled(1.0, &SymMatrix::outer(&t));
            }
            let vals = sym_eigenvalues(&s);
            let want = (3.0 * alpha).min(1.5 * (1.0 - alpha));
            assert_close(vals[0], want, 1e-10);
        }
    }

    #[test]
    fn matrix_gram_and_apply() {
        let a = Matrix::diagonal(&[2.0, 0.5, 1.0]).unwrap();
        let g = a.gram();
        assert_close(g.entry(0, 0), 4.0, 0.0);
        assert_close(g.entry(1, 1), 0.25, 0.0);
        let v = StateVector::new(&[0.0, 0.0, 1.0]).unwrap();
        let (p, post) = a.apply_to_state(&v);
        assert_close(p, 1.0, 1e-15);
        assert_close(post.unwrap().coord(2), 1.0, 1e-15);
    }

    #[test]
    fn sym_sqrt_squares_back() {
        let m = SymMatrix::from_rows(&[&[2.0, 0.3, 0.0], &[0.3, 1.0, 0.1], &[0.0, 0.1, 0.5]])
            .unwrap();
        let r = m.sqrt();
        let sq = r.mul_raw(&r);
        for i in 0..3 {
            for j in 0..3 {
                assert_close(sq[i][j], m.entry(i, j), 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn binary_entropy_symmetric(x in 0.0f64..=1.0) {
            let a = binary_entropy(x).unwrap();
            let b = binary_entropy(1.0 - x).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn shannon_entropy_bounded(raw in proptest::collection::vec(1e-6f64..1.0, 2..5)) {
            let sum: f64 = raw.iter().sum();
            let w: alloc::vec::Vec<f64> = raw.iter().map(|x| x / sum).collect();
            let d = ProbDist::new(&w).unwrap();
            let h = shannon_entropy(&d);
            prop_assert!(h >= -1e-12);
            prop_assert!(h <= crate::fp::log2(w.len() as f64) + 1e-12);
        }

        #[test]
        fn psd_sums_have_nonnegative_eigenvalues(
            seeds in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.0f64..2.0), 1..6)
        ) {
            let mut s = SymMatrix::zeros(3);
            for (x, y, z, w) in seeds {
                let v = StateVector::normalized(&[x + 0.01, y - 0.5, z - 0.5]).unwrap();
                s.add_scaled(w, &SymMatrix::outer(&v));
            }
            let vals = sym_eigenvalues(&s);
            prop_assert!(vals[0] >= -1e-10);
        }

        #[test]
        fn eigenvalues_match_trace(
            a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
            d in -2.0f64..2.0, e in -2.0f64..2.0, f in -2.0f64..2.0
        ) {
            let m = SymMatrix::from_rows(&[&[a, b, c], &[b, d, e], &[c, e, f]]).unwrap();
            let vals = sym_eigenvalues(&m);
            let sum: f64 = vals.iter().sum();
            prop_assert!((sum - m.trace()).abs() < 1e-10);
        }
    }
}
