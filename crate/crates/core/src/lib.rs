//! Asymptotic secret key rates for entanglement-based continuous-variable
//! QKD with heterodyne detection, built on two-mode squeezed vacuum and its
//! photon-subtracted and zero-photon-catalysed variants, under mode-mismatch
//! noise, fibre loss, detector inefficiency and ancilla photon loss.
//!
//! The pipeline is `source CM → +δ on the diagonal → channel → rates`:
//!
//! ```
//! use cvkey::{ChannelParams, MismatchParams, ResourceKind, ResourceSpec};
//!
//! let r = cvkey::resources::r_from_cosh2r(50.0)?;
//! let spec = ResourceSpec::new(ResourceKind::Tmsv, r, 0.9)?;
//! let ch = ChannelParams::new(15.0, 1.0, 0.95)?;
//! let rate = cvkey::secret_key_rate(&spec, &MismatchParams::direct(0.01), &ch)?;
//! assert!(rate.key_rate > 0.0);
//! # Ok::<(), cvkey::Error>(())
//! ```
// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod keyrate;
pub mod resources;

pub use channel::ChannelParams;
pub use error::{Error, NoKey, Result};
pub use gaussian::{OneModeCM, TwoModeCM};
pub use keyrate::{secret_key_rate, RateBreakdown};
pub use resources::{MismatchParams, ResourceKind, ResourceSpec};
