//! Exact enumeration toolkit for permutations avoiding flat partially
//! ordered patterns (POPs).
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, symmetries, sums and the six statistics
//!   (asc, des, lmax, rmax, lmin, rmin).
//! * [`patterns`]: POPs, occurrence testing, separability and the block
//!   decomposition of separable permutations around their maximum.
//! * [`enumerator`]: exhaustive enumeration of avoider classes with exact
//!   joint-distribution polynomials.
//! * [`banded`]: counting permutations with bounded displacement, minimal
//!   linear recurrences and k-Fibonacci numbers.
//! * [`gfseries`]: sparse multivariate polynomials, truncated series,
//!   rational generating functions and the functional-equation solver.
//! * [`verify`]: claim registry that cross-checks every closed form against
//!   brute force.

pub mod banded;
pub mod enumerator;
pub mod gfseries;
pub mod patterns;
pub mod perm;
pub mod verify;

pub use banded::{banded_count, banded_sequence, find_recurrence, kfib, BandedSpec, Recurrence};
pub use enumerator::{avoiders, count_avoiders, distribution, series_bruteforce, AvoiderQuery, EnumOptions};
pub use gfseries::{expand_rational, load_theorem_gf, solve_system, MultiPoly, RationalGF, Var, XPoly, XSeries};
pub use patterns::{Decomposition, Pop};
pub use perm::{Permutation, StatVector};
