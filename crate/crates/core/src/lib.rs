//! Reed-Muller codes over GF(2) under a `(d, inf)` run-length-limited input
//! constraint.
//!
//! * [`gf2`]: packed bit vectors and dense binary matrices.
//! * [`rm`]: `RM(m, r)` generators, evaluation points and order selection.
//! * [`rll`]: constraint checks, exact counts, noiseless capacity and an
//!   enumerative coder.
//! * [`ordering`]: coordinate orderings and run-based dimension bounds.
//! * [`subcode`]: the explicit linear RLL subcode and an exhaustive oracle.
//! * [`coset`]: constrained transmission over cosets of a permuted RM code.
//! * [`channel`]: BEC/BSC models and Monte-Carlo estimators.
//! * [`experiments`]: the computations behind the command-line tool.

pub mod channel;
pub mod coset;
pub mod error;
pub mod experiments;
pub mod gf2;
pub mod ordering;
pub mod rll;
pub mod rm;
pub mod subcode;

pub use channel::{ChannelModel, ChannelObservation, Symbol};
pub use coset::{CosetPlan, CosetTransmission, DecodeOutcome};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BitWord, Solution};
pub use ordering::{Ordering, RunProfile};
pub use rll::{EnumerativeCoder, RllSpec};
pub use rm::RmCode;
pub use subcode::RllSubcode;
