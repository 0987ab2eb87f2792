//! Dense complex matrix kernel.
//!
//! `CMat` wraps a column-major `nalgebra` matrix and adds the handful of
//! operations the rest of the crate needs: Kronecker products, partial trace
//! and partial transpose over an arbitrary [`SubsystemShape`], Hermitian
//! eigendecomposition, PSD square roots and von Neumann entropy.
//!
//! Tolerance ladder used throughout:
//!
//! | constant              | value  | meaning                                        |
//! |-----------------------|--------|------------------------------------------------|
//! | [`HERMITIAN_TOL`]     | 1e-12  | max entry of `M - M^dag` (scaled by `max|M|`)  |
//! | [`EIG_CLAMP_TOL`]     | 1e-10  | eigenvalues above `-tol` are numerical zero    |
//! | [`INVALID_EIG_TOL`]   | 1e-8   | eigenvalues below `-tol` reject the state      |

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const EIG_CLAMP_TOL: f64 = 1e-10;
pub const INVALID_EIG_TOL: f64 = 1e-8;
pub const TRACE_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat(DMatrix<C64>);

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMat(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMat(DMatrix::from_fn(rows, cols, f))
    }

    /// Builds a matrix from entries given in row-major order.
    pub fn from_row_major(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(CMat(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { re(diag[i]) } else { C64::new(0.0, 0.0) })
    }

    /// Outer product `|v><v|`.
    pub fn projector(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn as_inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        CMat(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        CMat(self.0.transpose())
    }

    pub fn scale(&self, s: C64) -> Self {
        CMat(&self.0 * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()));
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |M - M^dag|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.rows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol * self.max_abs().max(1.0)
    }

    /// `(M + M^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        CMat((&self.0 + self.0.adjoint()) * re(0.5))
    }

    /// Trace norm `||M||_1` of a Hermitian matrix.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(herm_eig(self)?.values.iter().map(|v| v.abs()).sum())
    }

    /// Commutator `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &CMat) -> Self {
        &(self * other) - &(other * self)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut C64 {
        &mut self.0[idx]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        CMat(&self.0 * &rhs.0)
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        CMat(&self.0 + &rhs.0)
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        CMat(&self.0 - &rhs.0)
    }
}

/// Local dimensions of a composite system, e.g. `[2, 2]` for two qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ShapeMismatch(format!("invalid local dimensions {dims:?}")));
        }
        Ok(SubsystemShape { dims })
    }

    pub fn qubits(n: usize) -> Self {
        SubsystemShape { dims: vec![2; n] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    fn check(&self, m: &CMat) -> Result<()> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        if m.rows() != self.total() {
            return Err(Error::ShapeMismatch(format!(
                "matrix dimension {} does not match subsystem dims {:?}",
                m.rows(),
                self.dims
            )));
        }
        Ok(())
    }

    /// Mixed-radix digits of `index`, most significant subsystem first.
    fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (k, &d) in self.dims.iter().enumerate().rev() {
            out[k] = index % d;
            index /= d;
        }
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    CMat(a.0.kronecker(&b.0))
}

/// Kronecker product of a sequence of factors.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a CMat>) -> CMat {
    factors.into_iter().fold(CMat::identity(1), |acc, f| kron(&acc, f))
}

/// Reduced matrix on the subsystems listed in `keep` (0-based, any order;
/// the result keeps them in ascending order).
pub fn partial_trace(m: &CMat, shape: &SubsystemShape, keep: &[usize]) -> Result<CMat> {
    shape.check(m)?;
    let n_sub = shape.dims.len();
    if keep.is_empty() {
        return Err(Error::ShapeMismatch("keep set must be nonempty".into()));
    }
    let mut kept = vec![false; n_sub];
    for &k in keep {
        if k >= n_sub {
            return Err(Error::ShapeMismatch(format!("subsystem {k} out of range for {n_sub}")));
        }
        kept[k] = true;
    }
    let out_dim: usize = (0..n_sub).filter(|&k| kept[k]).map(|k| shape.dims[k]).product();
    let dim = shape.total();

    // Per-index split into (kept part, traced part).
    let mut digits = vec![0usize; n_sub];
    let split: Vec<(usize, usize)> = (0..dim)
        .map(|i| {
            shape.digits(i, &mut digits);
            let (mut k_idx, mut t_idx) = (0usize, 0usize);
            for s in 0..n_sub {
                if kept[s] {
                    k_idx = k_idx * shape.dims[s] + digits[s];
                } else {
                    t_idx = t_idx * shape.dims[s] + digits[s];
                }
            }
            (k_idx, t_idx)
        })
        .collect();

    let mut out = CMat::zeros(out_dim, out_dim);
    for j in 0..dim {
        let (kj, tj) = split[j];
        for i in 0..dim {
            let (ki, ti) = split[i];
            if ti == tj {
                out[(ki, kj)] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Transposes subsystem `sub` of `m`.
pub fn partial_transpose(m: &CMat, shape: &SubsystemShape, sub: usize) -> Result<CMat> {
    shape.check(m)?;
    let n_sub = shape.dims.len();
    if sub >= n_sub {
        return Err(Error::ShapeMismatch(format!("subsystem {sub} out of range for {n_sub}")));
    }
    let stride: usize = shape.dims[sub + 1..].iter().product();
    let d = shape.dims[sub];
    let dim = shape.total();
    let local = |i: usize| (i / stride) % d;
    let mut out = CMat::zeros(dim, dim);
    for j in 0..dim {
        let lj = local(j);
        for i in 0..dim {
            let li = local(i);
            // swap the local digit of `sub` between row and column
            let ni = i - li * stride + lj * stride;
            let nj = j - lj * stride + li * stride;
            out[(ni, nj)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermEig {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMat,
}

impl HermEig {
    pub fn reconstruct(&self) -> CMat {
        self.reconstruct_with(|x| x)
    }

    /// `V f(Λ) V^dag`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let v = &self.vectors.0;
        let mut scaled = v.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let s = re(f(lambda));
            for i in 0..n {
                scaled[(i, k)] *= s;
            }
        }
        CMat(scaled * v.adjoint())
    }
}

pub fn herm_eig(m: &CMat) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let eig = m.hermitian_part().0.symmetric_eigen();
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn herm_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let mut values: Vec<f64> = m.hermitian_part().0.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Principal square root of a PSD matrix. Eigenvalues in `[-1e-8, 0)` are
/// clamped to zero; anything more negative is rejected.
pub fn psd_sqrt(m: &CMat) -> Result<CMat> {
    let eig = herm_eig(m)?;
    let min = eig.values[0];
    if min < -INVALID_EIG_TOL {
        return Err(Error::InvalidState(format!("negative eigenvalue {min:e} under square root")));
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()))
}

/// Checks Hermiticity, unit trace and positivity.
pub fn validate_density(m: &CMat) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    let values = herm_eigenvalues(m)?;
    if values[0] < -INVALID_EIG_TOL {
        return Err(Error::InvalidState(format!("minimum eigenvalue {:e} is negative", values[0])));
    }
    Ok(())
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
/// Entries below the clamp tolerance count as zero.
pub fn shannon_bits(probs: &[f64]) -> f64 {
    probs.iter().filter(|&&p| p > EIG_CLAMP_TOL).map(|&p| -p * p.log2()).sum()
}

/// `S(rho) = -tr rho log2 rho`.
pub fn von_neumann_entropy(rho: &CMat) -> Result<f64> {
    validate_density(rho)?;
    let values = herm_eigenvalues(rho)?;
    let s = shannon_bits(&values);
    let max = (rho.rows() as f64).log2();
    Ok(s.clamp(0.0, max))
}

pub mod pauli {
    //! Single-qubit Pauli matrices.
    use super::{c, re, CMat};

    pub fn identity() -> CMat {
        CMat::identity(2)
    }

    pub fn x() -> CMat {
        CMat::from_fn(2, 2, |i, j| if i != j { re(1.0) } else { re(0.0) })
    }

    pub fn y() -> CMat {
        CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => re(0.0),
        })
    }

    pub fn z() -> CMat {
        CMat::from_real_diag(&[1.0, -1.0])
    }

    /// `[sigma_x, sigma_y, sigma_z]`.
    pub fn all() -> [CMat; 3] {
        [x(), y(), z()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        CMat::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        random_mat(rng, n).hermitian_part()
    }

    fn random_density(rng: &mut ChaCha8Rng, n: usize) -> CMat {
        let g = random_mat(rng, n);
        let p = &g * &g.adjoint();
        let tr = p.trace().re;
        p.scale_re(1.0 / tr).hermitian_part()
    }

    fn phi_plus() -> CMat {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        CMat::projector(&[re(s), re(0.0), re(0.0), re(s)])
    }

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&CMat::identity(2), &CMat::identity(2)), CMat::identity(4));
        let zi = kron(&pauli::z(), &CMat::identity(2));
        assert_eq!(zi, CMat::from_real_diag(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b, cc) = (random_mat(&mut rng, 2), random_mat(&mut rng, 2), random_mat(&mut rng, 2));
        let left = kron(&kron(&a, &b), &cc);
        let right = kron(&a, &kron(&b, &cc));
        assert!(left.max_abs_diff(&right) < 1e-13);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_density(&mut rng, 2);
        let b = random_density(&mut rng, 2);
        let ab = kron(&a, &b);
        let shape = SubsystemShape::qubits(2);
        assert!(partial_trace(&ab, &shape, &[0]).unwrap().max_abs_diff(&a) < 1e-14);
        assert!(partial_trace(&ab, &shape, &[1]).unwrap().max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let red = partial_trace(&phi_plus(), &SubsystemShape::qubits(2), &[0]).unwrap();
        assert!(red.max_abs_diff(&CMat::identity(2).scale_re(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shape = SubsystemShape::new(vec![2, 3, 2]).unwrap();
        for _ in 0..10 {
            let m = random_density(&mut rng, 12);
            for keep in [&[0][..], &[1], &[2], &[0, 2], &[1, 2]] {
                let red = partial_trace(&m, &shape, keep).unwrap();
                assert!((red.trace() - m.trace()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn partial_trace_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_density(&mut rng, 16);
        let shape4 = SubsystemShape::qubits(4);
        // trace {3,4} then {2}  ==  trace {2,3,4}
        let step1 = partial_trace(&m, &shape4, &[0, 1]).unwrap();
        let step2 = partial_trace(&step1, &SubsystemShape::qubits(2), &[0]).unwrap();
        let direct = partial_trace(&m, &shape4, &[0]).unwrap();
        assert!(step2.max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_shapes() {
        let m = CMat::identity(4);
        assert!(partial_trace(&m, &SubsystemShape::qubits(3), &[0]).is_err());
        assert!(partial_trace(&m, &SubsystemShape::qubits(2), &[]).is_err());
        assert!(partial_trace(&m, &SubsystemShape::qubits(2), &[2]).is_err());
    }

    #[test]
    fn partial_transpose_of_product_and_bell() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_density(&mut rng, 2);
        let b = random_density(&mut rng, 2);
        let shape = SubsystemShape::qubits(2);
        let pt = partial_transpose(&kron(&a, &b), &shape, 1).unwrap();
        assert!(pt.max_abs_diff(&kron(&a, &b.transpose())) < 1e-15);
        assert!(herm_eigenvalues(&pt).unwrap()[0] > -1e-12);

        let vals = herm_eigenvalues(&partial_transpose(&phi_plus(), &shape, 1).unwrap()).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let shape = SubsystemShape::qubits(2);
        for _ in 0..20 {
            let m = random_mat(&mut rng, 4);
            for sub in 0..2 {
                let twice = partial_transpose(&partial_transpose(&m, &shape, sub).unwrap(), &shape, sub).unwrap();
                assert!(twice.max_abs_diff(&m) < 1e-14);
            }
            let h = random_hermitian(&mut rng, 4);
            let pt = partial_transpose(&h, &shape, 1).unwrap();
            assert!(pt.is_hermitian(1e-14));
            assert!((pt.trace() - h.trace()).norm() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let e = herm_eig(&CMat::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
        let e = herm_eig(&pauli::x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = random_hermitian(&mut rng, 16);
            let e = herm_eig(&m).unwrap();
            assert!(e.reconstruct().max_abs_diff(&m) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = e.values.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = CMat::from_row_major(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn psd_sqrt_examples() {
        let q = psd_sqrt(&CMat::identity(4).scale_re(0.25)).unwrap();
        assert!(q.max_abs_diff(&CMat::identity(4).scale_re(0.5)) < 1e-15);
        let q = psd_sqrt(&CMat::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!(q.max_abs_diff(&CMat::from_real_diag(&[2.0, 3.0])) < 1e-14);
        assert!(matches!(psd_sqrt(&CMat::from_real_diag(&[1.0, -1e-6])), Err(Error::InvalidState(_))));
        // tiny negative noise is clamped
        assert!(psd_sqrt(&CMat::from_real_diag(&[1.0, -1e-11])).is_ok());
    }

    #[test]
    fn psd_sqrt_squares_back_and_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let m = random_density(&mut rng, 8);
            let s = psd_sqrt(&m).unwrap();
            assert!((&s * &s).max_abs_diff(&m) < 1e-9);
            assert!(s.commutator(&m).max_abs() < 1e-9);
        }
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&phi_plus()).unwrap().abs() < 1e-12);
        assert!((von_neumann_entropy(&CMat::identity(4).scale_re(0.25)).unwrap() - 2.0).abs() < 1e-14);
        let werner = CMat::from_real_diag(&[0.7, 0.1, 0.1, 0.1]);
        // independent scalar evaluation
        let expected = -(0.7f64 * 0.7f64.log2() + 3.0 * 0.1 * 0.1f64.log2());
        assert!((expected - 1.3568).abs() < 5e-5);
        assert!((von_neumann_entropy(&werner).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn entropy_rejects_invalid_states() {
        assert!(von_neumann_entropy(&CMat::from_real_diag(&[0.6, 0.6])).is_err());
        assert!(von_neumann_entropy(&CMat::from_real_diag(&[1.2, -0.2])).is_err());
    }
}
