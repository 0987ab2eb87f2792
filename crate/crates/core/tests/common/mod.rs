//! Brute-force reference implementations shared by the integration tests.
//! Everything here works in the full tensor space with plain nalgebra
//! matrices and does not call into the crate's cloner internals.
#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};

pub type C = Complex<f64>;
pub type M = DMatrix<C>;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All mode sequences of length `len` over `modes` labels.
fn sequences(len: usize, modes: usize) -> Vec<Vec<usize>> {
    (0..modes.pow(len as u32))
        .map(|mut idx| {
            let mut s = vec![0; len];
            for k in (0..len).rev() {
                s[k] = idx % modes;
                idx /= modes;
            }
            s
        })
        .collect()
}

fn occupation(seq: &[usize]) -> [usize; 4] {
    let mut occ = [0; 4];
    for &m in seq {
        occ[m] += 1;
    }
    occ
}

/// Normalised symmetric tensor state with the given occupations, indexed
/// big-endian over the sequence (first particle most significant).
pub fn symmetric_state(occ: [usize; 4]) -> Vec<f64> {
    let len: usize = occ.iter().sum();
    let seqs = sequences(len, 4);
    let members: Vec<usize> = seqs.iter().enumerate().filter(|(_, s)| occupation(s) == occ).map(|(k, _)| k).collect();
    let amp = 1.0 / (members.len() as f64).sqrt();
    let mut v = vec![0.0; seqs.len()];
    for k in members {
        v[k] = amp;
    }
    v
}

/// Every occupation of `len` particles over the modes other than `skip`.
fn error_multisets(len: usize, skip: usize) -> Vec<[usize; 4]> {
    let mut set = BTreeMap::new();
    for s in sequences(len, 4) {
        if s.iter().all(|&m| m != skip) {
            set.insert(occupation(&s), ());
        }
    }
    set.into_keys().collect()
}

/// The 1→N universal cloner in dimension 4 expanded into
/// `(C^4)^{⊗N} ⊗ (C^4)^{⊗(N-1)}`: column `i` is
/// `sum_j sqrt(alpha_j / n_j) sum_E |(N-j) i, E> ⊗ |(N-1-j) i, E>`.
pub fn nonlocal_tensor_isometry(n: usize) -> M {
    let weights: Vec<f64> = (0..n).map(|j| ((n - j) * binomial(j + 2, 2)) as f64).collect();
    let total: f64 = weights.iter().sum();
    let copies_dim = 4usize.pow(n as u32);
    let machine_dim = 4usize.pow(n as u32 - 1);
    let mut v = M::zeros(copies_dim * machine_dim, 4);
    for i in 0..4 {
        for (j, weight) in weights.iter().enumerate() {
            let errors = error_multisets(j, i);
            assert_eq!(errors.len(), binomial(j + 2, 2));
            let amp = (weight / total / errors.len() as f64).sqrt();
            for e in errors {
                let mut c_occ = e;
                let mut m_occ = e;
                c_occ[i] += n - j;
                m_occ[i] += n - 1 - j;
                let cv = symmetric_state(c_occ);
                let mv = symmetric_state(m_occ);
                for (ci, &a) in cv.iter().enumerate().filter(|(_, a)| **a != 0.0) {
                    for (mi, &b) in mv.iter().enumerate().filter(|(_, b)| **b != 0.0) {
                        v[(ci * machine_dim + mi, i)] += C::new(amp * a * b, 0.0);
                    }
                }
            }
        }
    }
    v
}

/// Reduced state of the first two copies (16x16) after applying `v` to the
/// 4x4 input `rho`.
pub fn two_copy_reduction(v: &M, rho: &M) -> M {
    let rest = v.nrows() / 16;
    let out = v * rho * v.adjoint();
    let mut red = M::zeros(16, 16);
    for a in 0..16 {
        for b in 0..16 {
            let mut s = C::new(0.0, 0.0);
            for r in 0..rest {
                s += out[(a * rest + r, b * rest + r)];
            }
            red[(a, b)] = s;
        }
    }
    red
}

/// Keeps qubits `keep` (ascending) of an `n`-qubit operator.
pub fn keep_qubits(m: &M, n: usize, keep: &[usize]) -> M {
    let dim_k = 1usize << keep.len();
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let compose = |kept: usize, rest: usize| -> usize {
        let mut idx = 0;
        for (pos, &q) in keep.iter().enumerate() {
            let bit = (kept >> (keep.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (rest >> (traced.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        idx
    };
    let mut out = M::zeros(dim_k, dim_k);
    for a in 0..dim_k {
        for b in 0..dim_k {
            let mut s = C::new(0.0, 0.0);
            for r in 0..(1usize << traced.len()) {
                s += m[(compose(a, r), compose(b, r))];
            }
            out[(a, b)] = s;
        }
    }
    out
}

pub fn max_abs_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Splits `[0, 1]` into `k` equal steps.
pub fn unit_grid(k: usize) -> impl Iterator<Item = f64> {
    (0..=k).map(move |i| i as f64 / k as f64)
}
