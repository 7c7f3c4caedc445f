//! Relative majorisation: Lorenz curves, the Blackwell test, channel
//! witnesses, embeddings into uniform pairs and rational approximants.

mod approx;
mod embed;
pub mod extension;
mod lorenz;
pub mod simplex;

pub use approx::{rational_lower_approx, rational_upper_approx};
pub use embed::{channel_witness, dilution_channel, embed_blocks, embed_to_uniform, equivalent_to_uniform_blocks};
pub use lorenz::{lorenz_curve, ratio_order, relatively_majorises, LorenzCurve};
