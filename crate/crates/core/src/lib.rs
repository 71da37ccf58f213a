//! Machine-checking toolkit for approximation, Scott and Lawson topologies and
//! ideal convergence on dcpos.
//!
//! Two backends share the [`Dcpo`] interface: [`FiniteDomain`] for explicit
//! finite posets, and [`ExampleOne`], the dcpo `N ∪ {a, top}` represented
//! symbolically.

pub mod bits;
pub mod convergence;
pub mod corpus;
pub mod dcpo;
pub mod domain;
pub mod error;
pub mod example_one;
pub mod oracle;
pub mod par;
pub mod poset;
pub mod rudin;
pub mod suites;
pub mod topology;
pub mod waybelow;

pub use bits::ElemSet;
pub use dcpo::Dcpo;
pub use domain::FiniteDomain;
pub use error::{Error, Result};
pub use example_one::{ExampleOne, OneElem, OneSet};
pub use par::Exec;
pub use poset::{FinitePoset, PosetSpec};
pub use waybelow::Approximation;
