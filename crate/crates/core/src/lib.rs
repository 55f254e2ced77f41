//! Exact toolkit for sets of subspaces with constant intersection dimension
//! (SCIDs) over finite fields: arithmetic in `F_q` and its extensions,
//! canonical subspaces, SCID analysis, upper bounds on `dim S + dim I`,
//! explicit constructions, and a brute-force search oracle.

pub mod bounds;
pub mod cert;
pub mod construct;
pub mod gf;
pub mod linalg;
pub mod par;
pub mod scid;
pub mod search;
pub mod spectrum;

pub use bounds::{best_bound, check_family, BoundReport, ScidParams, Sharpness};
pub use construct::{Construction, ConstructionKind, ConstructionTrace};
pub use gf::{Element, Field};
pub use linalg::{Matrix, QuotientMap, Subspace};
pub use par::Execution;
pub use scid::{analyze, verify_scid, ScidReport, SubspaceFamily};
pub use search::{gaussian_binomial, max_sum_bruteforce, SearchResult};
