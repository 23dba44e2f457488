//! Recognition of {a,b,c}-modular matrices: the nondegeneracy probe, gcd
//! reduction, the two-block decomposition, the {a,b,0} test and the full
//! recognition procedure.

mod certificate;
mod decompose;
mod detset;
mod modular;
mod probe;
mod recognize;
mod reduce;

pub use certificate::{int_json, AbzCertificate};
pub use decompose::{decompose_ab0, DecomposeOutcome, Decomposition};
pub use detset::DetSet;
pub use modular::{test_ab0_modular, ModularityVerdict};
pub use probe::{nondegenerate_probe, probe_row_bound, ProbeOutcome};
pub use recognize::{recognize, RecognitionOutcome};
pub(crate) use recognize::minor_off_prime;
pub use reduce::{gcd_reduce, normalize_gcd, GcdNormalized, GcdReduction};
