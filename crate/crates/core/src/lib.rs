//! Exact symbolic tools for third-order Hamiltonian operators of
//! differential-geometric type and the systems of hydrodynamic type they
//! govern.

pub mod catalog;
pub mod diffvar;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod monge;
pub mod pipeline;
pub mod poly;
pub mod segre;
pub mod verify;

pub use error::{Error, Result};
