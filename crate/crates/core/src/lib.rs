//! Finite universally combinable resource theories: validation, the induced
//! resource order, monotone constructions (yield/cost, pull-backs,
//! contractions, convex-geometric), translations between theories,
//! k-distinguishability theories, informativeness comparisons, and seeded
//! generators for all of the above.
//!
//! A theory is a finite carrier with a commutative, set-valued combination
//! operation `⊠`, a distinguished set of free resources closed under
//! combination, and a nonempty neutral subset of the free resources whose
//! combination with any `r` yields exactly `{r}`. The derived order
//! `r ≽ s ⇔ s ∈ free ⊠ r` is what every monotone construction respects.

pub mod convex;
pub mod dist;
pub mod dot;
pub mod error;
pub mod gen;
pub mod inform;
pub mod io;
pub mod monotone;
pub mod order;
pub mod preorder;
pub mod rational;
pub mod set;
pub mod theory;
pub mod translate;

pub use error::{Error, Result};
pub use monotone::{MonotoneFn, PartialValuation};
pub use order::OrderedResources;
pub use preorder::FinitePreorder;
pub use rational::ExtRational;
pub use set::ResourceSet;
pub use theory::{ResourceTheory, ValidationReport};
