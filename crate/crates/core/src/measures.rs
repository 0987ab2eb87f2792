//! Entanglement detection and the figures of merit used to score a
//! broadcast: teleportation fidelity, dense-coding capacity and Uhlmann
//! fidelity.

use crate::error::{Error, Result};
use crate::qmat::{
    herm_eigenvalues, partial_transpose, psd_sqrt, validate_density, von_neumann_entropy, CMat, SubsystemShape,
    EIG_CLAMP_TOL,
};
use crate::states::{marginal_b, BlochState};

/// Threshold below which the smallest partial-transpose eigenvalue signals
/// entanglement.
pub const PPT_TOL: f64 = EIG_CLAMP_TOL;

const FIDELITY_EIG_FLOOR: f64 = 1e-14;

/// Best teleportation fidelity reachable without entanglement.
pub const CLASSICAL_TF: f64 = 2.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparabilityVerdict {
    pub min_pt_eigenvalue: f64,
    pub inseparable: bool,
}

impl SeparabilityVerdict {
    fn from_min(min_pt_eigenvalue: f64) -> Self {
        SeparabilityVerdict { min_pt_eigenvalue, inseparable: min_pt_eigenvalue < -PPT_TOL }
    }
}

/// Peres–Horodecki test on a two-qubit state, transposing qubit 2. Exact for
/// 2⊗2.
pub fn ppt_verdict(rho: &CMat) -> Result<SeparabilityVerdict> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::ShapeMismatch(format!("PPT test needs a 4x4 matrix, got {}x{}", rho.rows(), rho.cols())));
    }
    validate_density(rho)?;
    let pt = partial_transpose(rho, &SubsystemShape::qubits(2), 1)?;
    let min = herm_eigenvalues(&pt.hermitian_part())?[0];
    Ok(SeparabilityVerdict::from_min(min))
}

/// PPT verdict from Bloch components.
pub fn ppt_verdict_bloch(s: &BlochState) -> Result<SeparabilityVerdict> {
    ppt_verdict(&s.density_unchecked())
}

/// `TF = 1/2 [1 + 1/3 sum_i sqrt(u_i)]` with `u_i` the eigenvalues of
/// `T^T T`, i.e. the singular values of `T`.
pub fn teleportation_fidelity(s: &BlochState) -> Result<f64> {
    s.validate()?;
    Ok(tf_unchecked(s))
}

pub(crate) fn tf_unchecked(s: &BlochState) -> f64 {
    let sv: f64 = s.t.singular_values().iter().sum();
    0.5 * (1.0 + sv / 3.0)
}

/// Mixed-state dense-coding capacity variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DcFormula {
    /// `1 + S(rho_B) - S(rho_AB)`.
    #[default]
    Unclamped,
    /// `max(1, 1 + S(rho_B) - S(rho_AB))`: never worse than sending one
    /// qubit without the shared state.
    Clamped,
}

impl DcFormula {
    pub const ALL: [DcFormula; 2] = [DcFormula::Unclamped, DcFormula::Clamped];

    pub fn name(self) -> &'static str {
        match self {
            DcFormula::Unclamped => "unclamped",
            DcFormula::Clamped => "clamped",
        }
    }

    pub fn apply(self, raw: f64) -> f64 {
        match self {
            DcFormula::Unclamped => raw,
            DcFormula::Clamped => raw.max(1.0),
        }
    }
}

/// Dense-coding capacity in bits; the receiver holds qubit 2.
pub fn dense_coding_capacity(rho: &CMat, f: DcFormula) -> Result<f64> {
    validate_density(rho)?;
    let s_b = von_neumann_entropy(&marginal_b(rho)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(f.apply(1.0 + s_b - s_ab))
}

/// Uhlmann fidelity `tr sqrt(sqrt(rho) sigma sqrt(rho))`.
pub fn uhlmann_fidelity(rho: &CMat, sigma: &CMat) -> Result<f64> {
    if rho.rows() != sigma.rows() || rho.cols() != sigma.cols() {
        return Err(Error::ShapeMismatch(format!(
            "fidelity between {}x{} and {}x{}",
            rho.rows(),
            rho.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    validate_density(rho)?;
    validate_density(sigma)?;
    let s = psd_sqrt(rho)?;
    let inner = (&(&s * sigma) * &s).hermitian_part();
    // eigenvalues at the decomposition noise floor would be inflated by the root
    let f: f64 = herm_eigenvalues(&inner)?.iter().map(|&l| if l > FIDELITY_EIG_FLOOR { l.sqrt() } else { 0.0 }).sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Which power of the Uhlmann fidelity is reported as the broadcasting
/// fidelity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FbConvention {
    /// `tr sqrt(...)`.
    #[default]
    Root,
    /// `(tr sqrt(...))^2`.
    Squared,
}

impl FbConvention {
    pub const ALL: [FbConvention; 2] = [FbConvention::Root, FbConvention::Squared];

    pub fn name(self) -> &'static str {
        match self {
            FbConvention::Root => "root",
            FbConvention::Squared => "squared",
        }
    }

    pub fn apply(self, root: f64) -> f64 {
        match self {
            FbConvention::Root => root,
            FbConvention::Squared => root * root,
        }
    }
}

/// Fidelity between the input and a broadcast output pair.
pub fn broadcast_fidelity(input: &BlochState, output: &BlochState, fb: FbConvention) -> Result<f64> {
    let f = uhlmann_fidelity(&input.density_unchecked(), &output.density_unchecked())?;
    Ok(fb.apply(f))
}

/// `TF(input) - TF(output)`.
pub fn delta_tf(input: &BlochState, output: &BlochState) -> Result<f64> {
    Ok(teleportation_fidelity(input)? - teleportation_fidelity(output)?)
}

/// `DC(input) - DC(output)`.
pub fn delta_dc(input: &BlochState, output: &BlochState, f: DcFormula) -> Result<f64> {
    Ok(dense_coding_capacity(&input.density_unchecked(), f)? - dense_coding_capacity(&output.density_unchecked(), f)?)
}
