pub mod laurent;
pub mod morphism;
pub mod pairs;
pub mod quiver;
pub mod seed;

pub use laurent::{LaurentError, LaurentPoly, Monomial, Var};
pub use quiver::IceQuiver;
pub use seed::{CanonicalSeed, EnumerationLimits, ExtMatrix, MutationClass, Seed, SeedError, Symmetrizer};
