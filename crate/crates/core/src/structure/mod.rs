//! Regular sequences, algebraic independence, the decomposition of a tuple
//! into a tuple of high ν, and the transfer of projective dimension along a
//! polynomial subalgebra.

mod decompose;
mod regular;
mod transfer;

pub use decompose::{decompose_to_high_nu, Decomposition, ThresholdFunction};
pub use regular::{chain_rule_holds, is_regular_sequence, jacobian_independent, regular_sequence_report, RegularSequenceReport};
pub use transfer::{outer_ring, pd_transfer, PdTransfer, SubalgebraPresentation};
