//! Entanglement broadcasting through optimal universal cloning.
//!
//! Two-qubit states are represented in the canonical Bloch form
//! `rho = 1/4 [I + x.sigma ⊗ I + I ⊗ y.sigma + sum T_ij sigma_i ⊗ sigma_j]`,
//! cloned with local (1→2 per qubit) or nonlocal (1→N on the pair)
//! machines, and scored by inseparability, teleportation fidelity, dense
//! coding capacity and broadcasting fidelity.

pub mod broadcast;
pub mod cli;
pub mod cloners;
pub mod error;
pub mod measures;
pub mod qmat;
pub mod reference;
pub mod reproduce;
pub mod states;

pub use error::{Error, Result};
