//! Boolean nearest neighbor (BNN) representations of Boolean functions.
//!
//! A BNN representation is a pair `(P, N)` of disjoint sets of Boolean
//! prototype vectors. A vector is a model when its strictly nearest
//! prototype (under Hamming distance) is positive, and a non-model when it is
//! negative. This crate places that language in the knowledge compilation
//! map:
//!
//! - [`bits`]: Boolean vectors and hypercube geometry.
//! - [`rep`]: the representation type, evaluation, negation and validation.
//! - [`queries`]: CO, VA, IM, CE, ME plus exhaustive EQ/SE/CT oracles.
//! - [`transforms`]: conditioning and forgetting via recompilation.
//! - [`compile`]: MODS to BNN and BNN to BDD compilers.
//! - [`analysis`]: connected-component lower bounds and minimal-size search.
//! - [`families`]: witness families and hardness-reduction generators.
//! - [`formats`]: text formats for every value above.
//!
//! ```
//! use bnnkc_core::{queries, BnnRep, Term};
//!
//! let maj3 = BnnRep::parse_lists(3, &["111"], &["000"]).unwrap();
//! let t: Term = "1 2".parse().unwrap();
//! assert!(queries::im(&maj3, &t).unwrap());
//! ```

pub mod analysis;
pub mod bits;
pub mod compile;
mod error;
pub mod families;
pub mod formats;
pub mod queries;
pub mod rep;
pub mod reproduce;
pub mod sample;
pub mod transforms;

pub use bits::BoolVec;
pub use compile::{Bdd, Edge};
pub use error::{Error, Result};
pub use families::{Cnf3, Graph};
pub use queries::{Clause, Literal, Term};
pub use rep::{BnnRep, FunctionTable, Limits};
