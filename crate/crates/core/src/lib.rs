//! Entanglement of formation for bipartite mixed states, computed from
//! optimal pure-state decompositions.
//!
//! The crate is layered bottom-up:
//!
//! - [`numlin`]: dense complex linear algebra (Hermitian eigensystems, Schmidt
//!   coefficients, partial trace and transpose, Kronecker products).
//! - [`states`]: constructors for the state families handled here, twirling and
//!   the Werner mixing channel, and ensemble/density conversion.
//! - [`entanglement`]: entropies, Wootters' two-qubit formula, closed-form EOF
//!   values and cost/distillable gaps.
//! - [`odfam`]: optimal decompositions for each family, composition of OD
//!   families under tensor products, and verification of claimed ODs.
//! - [`oracle`]: a brute-force convex-roof minimizer over the Stiefel manifold of
//!   decomposition isometries, used to corroborate every analytic value.
//!
//! All entropies are in bits (ebits). Composite indices are A-major:
//! `|a, b>` lives at `a * dB + b`.
//!
//! With the default `parallel` feature, oracle restarts are fanned out over a
//! rayon pool; without it (or with [`oracle::Execution::Serial`]) they run
//! sequentially. Both paths return identical results for the same seed.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entanglement;
pub mod error;
pub mod numlin;
pub mod odfam;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use numlin::{BipartiteDims, CMatrix, CVector, Subsystem, C64};
pub use states::{BipartiteDensity, FamilyParams, PureKet, WeightedEnsemble};
