//! Interval sandwich core and the exact boxicity search built on it.

pub mod boxicity;
pub mod sandwich;

pub use boxicity::{
    boxicity_upper_from_parts, exact_boxicity, refute_boxicity_at_most, search_box_representation,
    BoxicityCertificate, BoxicityOutcome, CertificateKind, RefuteOutcome, SolverConfig,
};
pub use sandwich::{interval_sandwich, satisfies, SandwichInstance};
