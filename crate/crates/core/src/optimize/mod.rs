//! Exact integer programming over matrices with few distinct subdeterminants.

mod bip;
mod instance;
mod lp;
mod milp;
mod reduction;
mod solve;

pub use bip::{bip_solve, ip_lexicographic, IpOutcome};
pub use instance::{Instance, InequalityProblem};
pub use lp::{lp_solve_exact, LpOutcome, TightSet};
pub use milp::{milp_single_integer, MilpOutcome, TuSplit};
pub use reduction::{jacobi_check, standard_to_inequality, AffineMap, InequalityIP, Reduction, StandardIP};
pub use solve::{solve_inequality, solve_standard, AtLeastFourCertificate, SolveOutcome, SolveReport};
