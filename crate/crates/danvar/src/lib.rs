//! Exact symbolic toolkit for Danielewski varieties.
//!
//! The crate builds the hypersurfaces `x1^m1 ... xn^mn z = Q(x, y)` as
//! principal additive-group bundles over the affine n-space with an r-fold
//! system of coordinate hyperplanes, and provides:
//!
//! * exact sparse (Laurent) polynomial arithmetic over the rationals with a
//!   canonical term order, parser and printer ([`poly`]);
//! * coordinate rings with unique normal forms, Laurent embedding and
//!   membership decisions ([`ring`]);
//! * Čech cocycle bookkeeping, the separated/affine decision procedure,
//!   coboundary tests, pole signatures and a restricted orbit search
//!   ([`cocycle`]);
//! * locally nilpotent derivations: exponential flows, degree functions,
//!   bounded kernels and action-axiom checks ([`lnd`]);
//! * weight filtrations, the homogenized ring, associated graded
//!   derivations and bounded evidence for the Makar-Limanov invariant
//!   ([`ml`]);
//! * constructive cylinder isomorphisms `X x C ~ X' x C` emitted as
//!   self-contained, independently recheckable certificates ([`cancel`]);
//! * a thin command-line front end over JSON job files ([`cli`]).
//!
//! Everything is computed over `Q` with arbitrary-precision rationals; no
//! floating point is used anywhere.

pub mod cancel;
pub mod cli;
pub mod cocycle;
pub mod error;
pub mod json;
pub mod linalg;
pub mod lnd;
pub mod ml;
pub mod poly;
pub mod ring;

pub use cancel::{build_iso, coboundary_solve, recheck, Caps, IsoCertificate, IsoOutcome};
pub use cocycle::{
    affineness, coboundary_test, pole_signature, restricted_orbit_test, second_fibration,
    sigma_cocycle, Affineness, BaseScheme, Cocycle, PoleSignature,
};
pub use error::{Error, Result};
pub use lnd::{
    action_axioms_check, canonical_derivation, certify_nilpotent, deg, exponential,
    kernel2_bounded, kernel_bounded, Derivation,
};
pub use ml::{
    admissible_weight, graded_derivation, homogeneous_lnd_search, ml_upper_bound, GradedDerivation,
    HomogenizedRing,
};
pub use poly::{parse, Context, Degree, Poly, Var, Weights};
pub use ring::{Hypersurface, Membership, RingElement, SigmaFamily, SpecialFiber};
