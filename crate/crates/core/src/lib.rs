// `!(x > 0.0)` guards are written that way so NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod distributions;
pub mod error;
pub mod fgm;
pub mod montecarlo;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod stats;
pub mod weights;

pub use asymptotics::{AsymptoticEstimate, ModelSpec};
pub use distributions::{Family, Marginal};
pub use error::{Error, Result};
pub use fgm::FgmPair;
pub use weights::WeightModel;
