//! Numerics for the sign distribution of Hardy's Z-function.

pub mod dd;
pub mod error;
pub mod gamma;
pub mod means;
pub mod measure;
pub mod mollify;
pub mod paircorr;
pub mod quad;
pub mod zeros;
pub mod zfunc;

mod par;

pub use error::{Error, Result};
pub use zfunc::{chi_half, theta, z_eval, zeta_em, zeta_truncated, CriticalPoint, ScanConfig};
