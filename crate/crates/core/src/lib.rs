//! Quantum Lakshmibai-Seshadri paths and the level-zero path crystals they
//! model, together with the parabolic quantum Bruhat graph that governs them.

pub mod config;
pub mod crystal;
pub mod error;
pub mod io;
pub mod rational;
pub mod rootsys;
pub mod path;
pub mod qbg;
pub mod qls;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
