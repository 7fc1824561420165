//! Twisted generalized Reed–Solomon codes over GF(q²), their Hermitian hulls,
//! combinatorial hull bounds and the entanglement-assisted quantum codes
//! they yield.

pub mod agcons;
pub mod eaqecc;
pub mod error;
pub mod galois;
pub mod hullbound;
pub mod io;
pub mod lincode;
pub mod matrix;

pub use agcons::{EvalSet, Family, TwistedAgCode};
pub use eaqecc::{classify_mds, derive_eaqecc, derive_pair, ghw_shorten, propagate, reduce_hull, EaqeccParams};
pub use error::{Error, Result};
pub use galois::{Elem, FieldCtx};
pub use hullbound::{compute_l, compute_n, ell_closed_form, hull_report, HullReport};
pub use io::CodeDocument;
pub use lincode::{Budget, LinearCode};
pub use matrix::Mat;
