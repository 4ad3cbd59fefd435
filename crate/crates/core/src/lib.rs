//! Oscillatory sums over the nontrivial zeros of ζ, their value
//! distributions, and the prime-side identities they satisfy.

pub mod arith;
pub mod error;
pub mod explicit;
pub mod goldbach;
pub mod mfunction;
pub mod quad;
pub mod series;
pub mod specfun;
pub mod sum;
pub mod verify;
pub mod zeros;

pub use arith::ArithTables;
pub use error::{Error, Result};
pub use series::{make_zeta_pair, SpectralPair, TruncatedValue, ZetaKind};
pub use specfun::Constants;
pub use zeros::ZeroTable;
pub use explicit::{ExplicitEval, HKind};
pub use goldbach::{C2Estimate, GoldbachSummary};
pub use mfunction::MFunctionDensity;
pub use verify::{EmpiricalDistribution, GramReport};
