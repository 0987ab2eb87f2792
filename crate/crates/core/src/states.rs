//! Two-qubit states in the canonical `{x, y, T}` form,
//!
//! `rho = 1/4 [ I + sum_i x_i s_i⊗I + sum_i y_i I⊗s_i + sum_ij t_ij s_i⊗s_j ]`,
//!
//! the Werner-like and Bell-diagonal families, and random-state samplers.

use std::sync::OnceLock;

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{self, kron, pauli, CMat, SubsystemShape, C64};

/// Canonical two-qubit parameters: local Bloch vectors `x` (qubit A) and `y`
/// (qubit B), and the correlation matrix `t[(i, j)] = tr(rho s_i⊗s_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochState {
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl BlochState {
    pub fn new(x: Vector3<f64>, y: Vector3<f64>, t: Matrix3<f64>) -> Self {
        BlochState { x, y, t }
    }

    pub fn maximally_mixed() -> Self {
        BlochState::new(Vector3::zeros(), Vector3::zeros(), Matrix3::zeros())
    }

    /// `|Phi+> = (|00> + |11>)/sqrt 2`.
    pub fn phi_plus() -> Self {
        BlochState::new(Vector3::zeros(), Vector3::zeros(), Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0)))
    }

    /// `{a x, a y, b T}`.
    pub fn scaled(&self, local: f64, corr: f64) -> Self {
        BlochState::new(self.x * local, self.y * local, self.t * corr)
    }

    pub fn max_abs_diff(&self, other: &BlochState) -> f64 {
        let dx = (self.x - other.x).amax();
        let dy = (self.y - other.y).amax();
        let dt = (self.t - other.t).amax();
        dx.max(dy).max(dt)
    }

    /// Density matrix without a positivity check.
    pub fn density_unchecked(&self) -> CMat {
        let basis = pauli_products();
        let mut rho = CMat::identity(4);
        for i in 0..3 {
            rho = &rho + &basis[i + 1][0].scale_re(self.x[i]);
            rho = &rho + &basis[0][i + 1].scale_re(self.y[i]);
            for j in 0..3 {
                rho = &rho + &basis[i + 1][j + 1].scale_re(self.t[(i, j)]);
            }
        }
        rho.scale_re(0.25)
    }

    /// `||x|| <= 1`, `||y|| <= 1` and a PSD reconstruction.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e-12;
        if self.x.norm() > 1.0 + tol || self.y.norm() > 1.0 + tol {
            return Err(Error::InvalidState(format!(
                "Bloch vector norm exceeds 1 (|x| = {}, |y| = {})",
                self.x.norm(),
                self.y.norm()
            )));
        }
        qmat::validate_density(&self.density_unchecked())
    }
}

/// Reconstructs the 4x4 density matrix, rejecting non-PSD parameter sets.
pub fn bloch_to_density(s: &BlochState) -> Result<CMat> {
    s.validate()?;
    Ok(s.density_unchecked())
}

/// Pauli expectation values of a two-qubit density matrix.
pub fn density_to_bloch(rho: &CMat) -> Result<BlochState> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::ShapeMismatch(format!("expected a 4x4 density matrix, got {}x{}", rho.rows(), rho.cols())));
    }
    qmat::validate_density(rho)?;
    Ok(bloch_unchecked(rho))
}

/// `s_a ⊗ s_b` for `a, b` in `0..4`, index 0 being the identity.
fn pauli_products() -> &'static [[CMat; 4]; 4] {
    static BASIS: OnceLock<[[CMat; 4]; 4]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let single = [CMat::identity(2), pauli::x(), pauli::y(), pauli::z()];
        std::array::from_fn(|a| std::array::from_fn(|b| kron(&single[a], &single[b])))
    })
}

pub(crate) fn bloch_unchecked(rho: &CMat) -> BlochState {
    let basis = pauli_products();
    let expect = |a: usize, b: usize| -> f64 {
        let op = &basis[a][b];
        // tr(rho op) without forming the product
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += rho[(i, j)] * op[(j, i)];
            }
        }
        acc.re
    };
    let mut x = Vector3::zeros();
    let mut y = Vector3::zeros();
    let mut t = Matrix3::zeros();
    for i in 0..3 {
        x[i] = expect(i + 1, 0);
        y[i] = expect(0, i + 1);
        for j in 0..3 {
            t[(i, j)] = expect(i + 1, j + 1);
        }
    }
    BlochState { x, y, t }
}

/// `Tr[rho^2] = (1 + |x|^2 + |y|^2 + ||T||_F^2) / 4`.
pub fn purity(s: &BlochState) -> f64 {
    0.25 * (1.0 + s.x.norm_squared() + s.y.norm_squared() + s.t.norm_squared())
}

/// Reduced state of qubit B (the receiver side).
pub fn marginal_b(rho: &CMat) -> Result<CMat> {
    qmat::partial_trace(rho, &SubsystemShape::qubits(2), &[1])
}

/// Mixture of `alpha|00> + beta|11>` with white noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerLikeParams {
    p: f64,
    alpha2: f64,
}

impl WernerLikeParams {
    pub fn new(p: f64, alpha2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(format!("p = {p} must lie in [0, 1]")));
        }
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(Error::ParameterOutOfRange(format!("alpha2 = {alpha2} must lie in [0, 1]")));
        }
        Ok(WernerLikeParams { p, alpha2 })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn beta2(&self) -> f64 {
        1.0 - self.alpha2
    }

    /// `alpha * beta`, taking both amplitudes real and non-negative.
    pub fn alpha_beta(&self) -> f64 {
        (self.alpha2 * self.beta2()).max(0.0).sqrt()
    }
}

/// `x = y = (0, 0, p(a^2 - b^2))`, `T = diag(2p ab, -2p ab, p)`.
pub fn werner_like(params: WernerLikeParams) -> BlochState {
    let WernerLikeParams { p, alpha2 } = params;
    let z = p * (alpha2 - (1.0 - alpha2));
    let ab = params.alpha_beta();
    let x = Vector3::new(0.0, 0.0, z);
    BlochState::new(x, x, Matrix3::from_diagonal(&Vector3::new(2.0 * p * ab, -2.0 * p * ab, p)))
}

/// Bell-diagonal state with correlation matrix `diag(c1, c2, c3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalParams {
    c: [f64; 3],
}

/// Slack allowed on `lambda_mn >= 0` so exact boundary points survive rounding.
const LAMBDA_TOL: f64 = 1e-12;

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = [c1, c2, c3];
        if let Some(bad) = c.iter().find(|v| !(-1.0..=1.0).contains(*v)) {
            return Err(Error::ParameterOutOfRange(format!("correlation coefficient {bad} outside [-1, 1]")));
        }
        let lambdas = bell_lambdas(c);
        if let Some(min) = lambdas.iter().copied().reduce(f64::min) {
            if min < -LAMBDA_TOL {
                return Err(Error::InvalidState(format!(
                    "Bell-diagonal eigenvalue {min:.6} is negative for c = ({c1}, {c2}, {c3})"
                )));
            }
        }
        Ok(BellDiagonalParams { c })
    }

    pub fn c(&self) -> [f64; 3] {
        self.c
    }

    /// `lambda_mn = 1/4 [1 + (-1)^m c1 - (-1)^(m+n) c2 + (-1)^n c3]`,
    /// ordered `(m, n) = (0,0), (0,1), (1,0), (1,1)`.
    pub fn lambdas(&self) -> [f64; 4] {
        bell_lambdas(self.c)
    }

    /// `tr T`.
    pub fn gamma(&self) -> f64 {
        self.c.iter().sum()
    }
}

pub(crate) fn bell_lambdas(c: [f64; 3]) -> [f64; 4] {
    let sign = |k: u32| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut out = [0.0; 4];
    for m in 0..2u32 {
        for n in 0..2u32 {
            out[(2 * m + n) as usize] = 0.25 * (1.0 + sign(m) * c[0] - sign(m + n) * c[1] + sign(n) * c[2]);
        }
    }
    out
}

pub fn bell_diagonal(params: BellDiagonalParams) -> BlochState {
    let [c1, c2, c3] = params.c;
    BlochState::new(Vector3::zeros(), Vector3::zeros(), Matrix3::from_diagonal(&Vector3::new(c1, c2, c3)))
}

/// Random-state ensembles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Sampler {
    /// `rho = G G^dag / tr(G G^dag)` with `G` a 4xK complex Ginibre matrix and
    /// K drawn uniformly from 1..=8. K = 4 is the plain Hilbert-Schmidt
    /// measure; mixing over K covers purities from near 1/4 up to pure states.
    #[default]
    HilbertSchmidt,
    /// Uniform `x`, `y` in the unit ball and `T` in `[-1, 1]^9`, shrunk by a
    /// common uniform factor, rejected until the reconstruction is PSD.
    BlochRejection,
}

pub const MAX_ENVIRONMENT_DIM: usize = 8;

pub fn sample_random_state<R: Rng + ?Sized>(rng: &mut R, sampler: Sampler) -> BlochState {
    match sampler {
        Sampler::HilbertSchmidt => sample_induced(rng),
        Sampler::BlochRejection => sample_bloch_rejection(rng),
    }
}

/// Deterministic sample for a given seed.
pub fn sample_with_seed(seed: u64, sampler: Sampler) -> BlochState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_random_state(&mut rng, sampler)
}

fn sample_induced<R: Rng + ?Sized>(rng: &mut R) -> BlochState {
    let k = rng.random_range(1..=MAX_ENVIRONMENT_DIM);
    let mut g = CMat::zeros(4, k);
    for i in 0..4 {
        for j in 0..k {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            g[(i, j)] = C64::new(a, b);
        }
    }
    let p = &g * &g.adjoint();
    let tr = p.trace().re;
    let rho = p.scale_re(1.0 / tr).hermitian_part();
    bloch_unchecked(&rho)
}

fn sample_ball<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if v.norm_squared() <= 1.0 {
            return v;
        }
    }
}

fn sample_bloch_rejection<R: Rng + ?Sized>(rng: &mut R) -> BlochState {
    loop {
        let s: f64 = rng.random_range(0.0..=1.0);
        let x = sample_ball(rng) * s;
        let y = sample_ball(rng) * s;
        let t = Matrix3::from_fn(|_, _| rng.random_range(-1.0..=1.0)) * s;
        let state = BlochState::new(x, y, t);
        if let Ok(values) = qmat::herm_eigenvalues(&state.density_unchecked()) {
            if values[0] >= 0.0 {
                return state;
            }
        }
    }
}
