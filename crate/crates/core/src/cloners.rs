//! Optimal universal cloning machines as explicit isometries.
//!
//! Qubit labelling follows the broadcasting setups:
//!
//! * **local**: each party clones its own qubit with a 1→2 machine. Qubits 1
//!   and 2 are the originals held by A and B, qubit 3 is A's copy and qubit 4
//!   is B's copy. The desired pairs are `(1,4)` and `(2,3)`, the side pairs
//!   `(1,3)` and `(2,4)`.
//! * **nonlocal**: one 1→N machine acts on the 4-dimensional two-qubit
//!   system. Copy `k` occupies qubits `(2k-1, 2k)`, so the desired pairs are
//!   `(1,2)` and `(3,4)` and the side pairs `(1,3)` and `(2,4)`.
//!
//! The nonlocal output is permutation symmetric over copies, so it is held
//! in an occupation-number basis over the four product states
//! `psi_1..psi_4 = |00>, |01>, |10>, |11>`: the copies register has
//! `C(N+3, 3)` states and the machine register `C(N+2, 3)`. Machine states
//! for different inputs live in one shared basis, so cross terms between
//! input columns are exact. Reduced states are obtained from a precomputed
//! linear map onto the two-copy marginal; the full output density matrix is
//! never formed.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::qmat::{kron, partial_trace, CMat, SubsystemShape, C64};
use crate::states::{bloch_unchecked, BlochState};

/// Reduced pair states produced by one cloning run.
#[derive(Clone, Debug, PartialEq)]
pub struct CloneOutput {
    /// `rho~14` (local) or `rho~12` (nonlocal).
    pub desired_pair: BlochState,
    /// `rho~23` (local) or `rho~34` (nonlocal).
    pub desired_pair_alt: BlochState,
    /// `rho~13`: A's two output qubits.
    pub side_pair_a: BlochState,
    /// `rho~24`: B's two output qubits.
    pub side_pair_b: BlochState,
    pub shrink: ShrinkDiagnostics,
}

/// Least-squares ratios of the desired pair to the input; `None` when the
/// corresponding input component vanishes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShrinkDiagnostics {
    pub local: Option<f64>,
    pub correlation: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClonerKind {
    Local,
    Nonlocal,
}

impl ClonerKind {
    pub fn name(self) -> &'static str {
        match self {
            ClonerKind::Local => "local",
            ClonerKind::Nonlocal => "nonlocal",
        }
    }
}

/// Runs the requested cloner.
pub fn clone_state(rho: &BlochState, kind: ClonerKind, n_copies: usize) -> Result<CloneOutput> {
    match kind {
        ClonerKind::Local => {
            LocalClonerSpec::new(n_copies)?;
            local_clone(rho)
        }
        ClonerKind::Nonlocal => nonlocal_clone(rho, n_copies),
    }
}

// ---------------------------------------------------------------------------
// local 1 -> 2 machine

/// Single-qubit 1→N machine. Broadcasting only uses N = 2: for larger N the
/// nonlocal output pairs of two local machines are always separable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalClonerSpec {
    n_copies: usize,
}

impl LocalClonerSpec {
    pub fn new(n_copies: usize) -> Result<Self> {
        if n_copies != 2 {
            return Err(Error::Unsupported(format!("local cloning broadcasts only with 2 copies (got {n_copies})")));
        }
        Ok(LocalClonerSpec { n_copies })
    }

    pub fn n_copies(&self) -> usize {
        self.n_copies
    }

    /// `alpha_j = sqrt(2(N - j) / (N(N + 1)))`, `j = 0..N`.
    pub fn amplitudes(&self) -> Vec<f64> {
        qubit_amplitudes(self.n_copies)
    }

    /// Isometry `C^2 -> (C^2)^{⊗N} ⊗ (C^2)^{⊗(N-1)}`; row index is
    /// `copies * 2^(N-1) + machine`, the original qubit being the most
    /// significant copy.
    pub fn isometry(&self) -> CMat {
        qubit_cloner_isometry(self.n_copies)
    }
}

fn qubit_amplitudes(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..n).map(|j| (2.0 * (nf - j as f64) / (nf * (nf + 1.0))).sqrt()).collect()
}

/// Normalised symmetric state of `len` qubits with `downs` of them in |1>.
fn dicke(len: usize, downs: usize) -> Vec<f64> {
    let dim = 1usize << len;
    let mut v = vec![0.0; dim];
    let members: Vec<usize> = (0..dim).filter(|b| b.count_ones() as usize == downs).collect();
    let amp = 1.0 / (members.len() as f64).sqrt();
    for b in members {
        v[b] = amp;
    }
    v
}

fn qubit_cloner_isometry(n: usize) -> CMat {
    let alpha = qubit_amplitudes(n);
    let machine_dim = 1usize << (n - 1);
    let mut v = CMat::zeros((1usize << n) * machine_dim, 2);
    for j in 0..n {
        let machine = dicke(n - 1, j);
        // |up> -> sum_j alpha_j |(N-j) up, j down> ⊗ M_j
        let up_branch = dicke(n, j);
        // |down> -> sum_j alpha_{N-1-j} |(N-1-j) up, (j+1) down> ⊗ M_j
        let down_branch = dicke(n, j + 1);
        for (ci, (&u, &d)) in up_branch.iter().zip(&down_branch).enumerate() {
            for (mi, &m) in machine.iter().enumerate() {
                let row = ci * machine_dim + mi;
                v[(row, 0)] += C64::new(alpha[j] * u * m, 0.0);
                v[(row, 1)] += C64::new(alpha[n - 1 - j] * d * m, 0.0);
            }
        }
    }
    v
}

fn local_isometry_pair() -> &'static CMat {
    static PAIR: OnceLock<CMat> = OnceLock::new();
    PAIR.get_or_init(|| {
        let v = qubit_cloner_isometry(2);
        kron(&v, &v)
    })
}

/// Applies `U_A ⊗ U_B` (1→2 each) and returns the four output pairs.
pub fn local_clone(rho: &BlochState) -> Result<CloneOutput> {
    rho.validate()?;
    let w = local_isometry_pair();
    let out = &(w * &rho.density_unchecked()) * &w.adjoint();
    // register order: [A orig (1), A copy (3), A machine, B orig (2), B copy (4), B machine]
    let shape = SubsystemShape::qubits(6);
    let pair = |keep: [usize; 2]| -> Result<BlochState> {
        Ok(bloch_unchecked(&partial_trace(&out, &shape, &keep)?.hermitian_part()))
    };
    let desired_pair = pair([0, 4])?;
    let desired_pair_alt = pair([1, 3])?;
    let side_pair_a = pair([0, 1])?;
    let side_pair_b = pair([3, 4])?;
    let shrink = diagnostics(&desired_pair, rho);
    Ok(CloneOutput { desired_pair, desired_pair_alt, side_pair_a, side_pair_b, shrink })
}

// ---------------------------------------------------------------------------
// nonlocal 1 -> N machine

pub const MIN_NONLOCAL_COPIES: usize = 2;
pub const MAX_NONLOCAL_COPIES: usize = 5;
const MODES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonlocalClonerSpec {
    n_copies: usize,
}

impl NonlocalClonerSpec {
    pub fn new(n_copies: usize) -> Result<Self> {
        if !(MIN_NONLOCAL_COPIES..=MAX_NONLOCAL_COPIES).contains(&n_copies) {
            return Err(Error::Unsupported(format!(
                "nonlocal cloning supports {MIN_NONLOCAL_COPIES}..={MAX_NONLOCAL_COPIES} copies (got {n_copies})"
            )));
        }
        Ok(NonlocalClonerSpec { n_copies })
    }

    pub fn n_copies(&self) -> usize {
        self.n_copies
    }

    /// Number of ways to place `j` error states among the three basis states
    /// other than the input (multisets of size `j` from 3 labels).
    pub fn error_configurations(j: usize) -> usize {
        (j + 1) * (j + 2) / 2
    }

    /// `alpha_j = (N - j) n_j / sum_k (N - k) n_k`: probability of `j`
    /// errors among the N output copies.
    pub fn error_probabilities(&self) -> Vec<f64> {
        let n = self.n_copies;
        let weights: Vec<f64> = (0..n).map(|j| ((n - j) * Self::error_configurations(j)) as f64).collect();
        let total: f64 = weights.iter().sum();
        weights.iter().map(|w| w / total).collect()
    }

    /// Single-copy shrink factor `(N + 4) / (5N)` of the optimal universal
    /// cloner in dimension 4.
    pub fn shrink_factor(&self) -> f64 {
        let n = self.n_copies as f64;
        (n + 4.0) / (5.0 * n)
    }
}

/// Occupation-number basis of `particles` bosons in four modes.
#[derive(Clone, Debug)]
pub struct OccupationBasis {
    particles: usize,
    states: Vec<[u8; MODES]>,
    index: HashMap<[u8; MODES], usize>,
}

impl OccupationBasis {
    pub fn new(particles: usize) -> Self {
        let mut states = Vec::new();
        let p = particles as u8;
        for a in (0..=p).rev() {
            for b in (0..=p - a).rev() {
                for c in (0..=p - a - b).rev() {
                    states.push([a, b, c, p - a - b - c]);
                }
            }
        }
        let index = states.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        OccupationBasis { particles, states, index }
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, k: usize) -> [u8; MODES] {
        self.states[k]
    }

    pub fn index_of(&self, occ: &[u8; MODES]) -> Option<usize> {
        self.index.get(occ).copied()
    }
}

/// One nonzero entry of an isometry column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub copies: usize,
    pub machine: usize,
    pub amplitude: f64,
    /// Number of copies not in the input basis state.
    pub errors: usize,
}

/// Sparse column map `psi_i -> sum amplitude |copies> ⊗ |machine>`.
#[derive(Clone, Debug)]
pub struct SparseIsometry {
    spec: NonlocalClonerSpec,
    pub copies: OccupationBasis,
    pub machine: OccupationBasis,
    pub columns: [Vec<Branch>; MODES],
}

impl SparseIsometry {
    pub fn spec(&self) -> NonlocalClonerSpec {
        self.spec
    }

    /// `<v_i | v_k>` for the four input columns.
    pub fn gram(&self) -> [[f64; MODES]; MODES] {
        let mut g = [[0.0; MODES]; MODES];
        for (i, col_i) in self.columns.iter().enumerate() {
            let lookup: HashMap<(usize, usize), f64> =
                col_i.iter().map(|b| ((b.copies, b.machine), b.amplitude)).collect();
            for (k, col_k) in self.columns.iter().enumerate() {
                g[i][k] =
                    col_k.iter().filter_map(|b| lookup.get(&(b.copies, b.machine)).map(|a| a * b.amplitude)).sum();
            }
        }
        g
    }

    /// Total weight of branches with `j` errors, per input column.
    pub fn error_weights(&self, column: usize) -> Vec<f64> {
        let mut w = vec![0.0; self.spec.n_copies];
        for b in &self.columns[column] {
            w[b.errors] += b.amplitude * b.amplitude;
        }
        w
    }
}

/// Builds the 1→N nonlocal machine. For input `psi_i` and `j` errors, every
/// multiset `E` of `j` states drawn from the other three basis states gives
/// the branch `|(N-j) psi_i, E> ⊗ |(N-1-j) psi_i, E>` with amplitude
/// `sqrt(alpha_j / n_j)`.
pub fn build_nonlocal_isometry(spec: NonlocalClonerSpec) -> SparseIsometry {
    let n = spec.n_copies;
    let copies = OccupationBasis::new(n);
    let machine = OccupationBasis::new(n - 1);
    let alpha = spec.error_probabilities();
    let columns = std::array::from_fn(|input| {
        let mut branches = Vec::new();
        for (j, &alpha_j) in alpha.iter().enumerate() {
            let amplitude = (alpha_j / NonlocalClonerSpec::error_configurations(j) as f64).sqrt();
            for errors in OccupationBasis::new(j).states.iter().filter(|e| e[input] == 0) {
                let mut c_occ = *errors;
                let mut m_occ = *errors;
                c_occ[input] = (n - j) as u8;
                m_occ[input] = (n - 1 - j) as u8;
                branches.push(Branch {
                    copies: copies.index_of(&c_occ).expect("copies occupation in basis"),
                    machine: machine.index_of(&m_occ).expect("machine occupation in basis"),
                    amplitude,
                    errors: j,
                });
            }
        }
        branches
    });
    SparseIsometry { spec, copies, machine, columns }
}

/// Nonlocal cloner with its precomputed two-copy marginal map.
#[derive(Clone, Debug)]
pub struct NonlocalCloner {
    isometry: SparseIsometry,
    /// `marginal[i][k] = Tr_{copies 3..N, machine} V|psi_i><psi_k|V^dag`,
    /// a 16x16 operator on copies 1 and 2.
    marginal: Vec<CMat>,
}

impl NonlocalCloner {
    pub fn new(spec: NonlocalClonerSpec) -> Self {
        let isometry = build_nonlocal_isometry(spec);
        let marginal = two_copy_marginal_map(&isometry);
        NonlocalCloner { isometry, marginal }
    }

    /// Shared instance per copy count.
    pub fn cached(n_copies: usize) -> Result<&'static NonlocalCloner> {
        static CACHE: [OnceLock<NonlocalCloner>; MAX_NONLOCAL_COPIES - MIN_NONLOCAL_COPIES + 1] =
            [const { OnceLock::new() }; MAX_NONLOCAL_COPIES - MIN_NONLOCAL_COPIES + 1];
        let spec = NonlocalClonerSpec::new(n_copies)?;
        Ok(CACHE[n_copies - MIN_NONLOCAL_COPIES].get_or_init(|| NonlocalCloner::new(spec)))
    }

    pub fn isometry(&self) -> &SparseIsometry {
        &self.isometry
    }

    /// Reduced state of the first two copies (qubits 1..4), from a 4x4 input.
    pub fn two_copy_state(&self, rho: &CMat) -> CMat {
        let mut out = CMat::zeros(16, 16);
        for i in 0..MODES {
            for k in 0..MODES {
                let w = rho[(i, k)];
                if w.norm() == 0.0 {
                    continue;
                }
                out = &out + &self.marginal[i * MODES + k].scale(w);
            }
        }
        out.hermitian_part()
    }
}

/// `sqrt(mult(n - e_a - e_b) / mult(n))` for an `N`-particle occupation,
/// i.e. the amplitude of `|a>|b>` on the first two particles.
fn pair_amplitudes(occ: &[u8; MODES]) -> Vec<(usize, usize, [u8; MODES], f64)> {
    let total: u32 = occ.iter().map(|&x| x as u32).sum();
    let norm = (total * (total - 1)) as f64;
    let mut out = Vec::new();
    for a in 0..MODES {
        for b in 0..MODES {
            let weight =
                if a == b { occ[a] as u32 * (occ[a] as u32).saturating_sub(1) } else { occ[a] as u32 * occ[b] as u32 };
            if weight == 0 {
                continue;
            }
            let mut rest = *occ;
            rest[a] -= 1;
            rest[b] -= 1;
            out.push((a, b, rest, (weight as f64 / norm).sqrt()));
        }
    }
    out
}

fn two_copy_marginal_map(iso: &SparseIsometry) -> Vec<CMat> {
    let pairs: Vec<_> = (0..iso.copies.len()).map(|k| pair_amplitudes(&iso.copies.state(k))).collect();
    let by_machine: Vec<HashMap<usize, &Branch>> =
        iso.columns.iter().map(|col| col.iter().map(|b| (b.machine, b)).collect()).collect();

    let mut maps = Vec::with_capacity(MODES * MODES);
    for i in 0..MODES {
        for machines_k in &by_machine {
            let mut m = CMat::zeros(16, 16);
            for bi in &iso.columns[i] {
                // the machine register is traced: only equal machine states pair up
                let Some(bk) = machines_k.get(&bi.machine) else { continue };
                let w = bi.amplitude * bk.amplitude;
                for &(a, b, ref rest, ca) in &pairs[bi.copies] {
                    for &(a2, b2, ref rest2, cb) in &pairs[bk.copies] {
                        if rest == rest2 {
                            m[(a * MODES + b, a2 * MODES + b2)] += C64::new(w * ca * cb, 0.0);
                        }
                    }
                }
            }
            maps.push(m);
        }
    }
    maps
}

/// Applies the nonlocal 1→N machine and returns the output pairs.
pub fn nonlocal_clone(rho: &BlochState, n_copies: usize) -> Result<CloneOutput> {
    let cloner = NonlocalCloner::cached(n_copies)?;
    rho.validate()?;
    let two = cloner.two_copy_state(&rho.density_unchecked());
    // qubit order: [A of copy 1 (1), B of copy 1 (2), A of copy 2 (3), B of copy 2 (4)]
    let shape = SubsystemShape::qubits(4);
    let pair = |keep: [usize; 2]| -> Result<BlochState> {
        Ok(bloch_unchecked(&partial_trace(&two, &shape, &keep)?.hermitian_part()))
    };
    let desired_pair = pair([0, 1])?;
    let desired_pair_alt = pair([2, 3])?;
    let side_pair_a = pair([0, 2])?;
    let side_pair_b = pair([1, 3])?;
    let shrink = diagnostics(&desired_pair, rho);
    Ok(CloneOutput { desired_pair, desired_pair_alt, side_pair_a, side_pair_b, shrink })
}

// ---------------------------------------------------------------------------
// shrink factors

const ZERO_COMPONENT: f64 = 1e-24;

/// Least-squares ratio of the output local Bloch vectors to the input ones.
pub fn local_shrink(output: &BlochState, input: &BlochState) -> Result<f64> {
    let denom = input.x.norm_squared() + input.y.norm_squared();
    if denom < ZERO_COMPONENT {
        return Err(Error::UndefinedRatio("local Bloch vector"));
    }
    Ok((output.x.dot(&input.x) + output.y.dot(&input.y)) / denom)
}

/// Least-squares ratio of the output correlation matrix to the input one.
pub fn correlation_shrink(output: &BlochState, input: &BlochState) -> Result<f64> {
    let denom = input.t.norm_squared();
    if denom < ZERO_COMPONENT {
        return Err(Error::UndefinedRatio("correlation matrix"));
    }
    Ok(output.t.dot(&input.t) / denom)
}

/// `(eta_x, eta_T)` of a clone output relative to its input.
pub fn shrink_factors(out: &CloneOutput, input: &BlochState) -> Result<(f64, f64)> {
    Ok((local_shrink(&out.desired_pair, input)?, correlation_shrink(&out.desired_pair, input)?))
}

fn diagnostics(desired: &BlochState, input: &BlochState) -> ShrinkDiagnostics {
    ShrinkDiagnostics { local: local_shrink(desired, input).ok(), correlation: correlation_shrink(desired, input).ok() }
}
