//! Exact finite-volume computations by occupation-count combinatorics.
//!
//! The mean-field Hamiltonian depends on a configuration only through its
//! counts, so sums over `3^N` configurations collapse to sums over count
//! vectors weighted by multinomial coefficients. Everything is accumulated
//! in log space.

pub mod counts;
pub mod evolved;
pub mod gibbs;
pub mod probe;

pub use counts::CountState;
pub use evolved::{
    curie_weiss_law, evolved_conditional, evolved_conditional_law, evolved_log_weights,
    first_layer_law, hole_marginal,
};
pub use gibbs::{
    empirical_law, empirical_log_law, law_modes, log_partition_function, partition_function,
    partition_function_enumerated, rate_function,
};
pub use probe::{badness_probe, probe_counts, ProbeRow, ProbeVerdict, DEFAULT_SHIFT_COEFF};
