//! Graded commutative algebra engine: exact coefficient fields, weighted
//! polynomial rings, Groebner bases for twisted free modules, subquotient
//! module algebra, free resolutions, Ext/Tor, associated primes, v-numbers,
//! and the asymptotic v-function sweep machinery.

pub mod error;
pub mod gb;
pub mod gmod;
pub mod gring;
pub mod homology;
pub mod poly;
pub mod resolve;
pub mod scalars;
pub mod sweep;
pub mod vnum;

pub use error::{AlgebraError, Result};
pub use gb::{FreeModule, GroebnerBasis, ModuleVector};
pub use gmod::{ExtInt, GradedMap, GradedPiece, SubquotientModule};
pub use gring::{GradedRing, HomogeneousIdeal};
pub use homology::{ThreeTermComplex, UVWPackage};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use resolve::FreeResolution;
pub use scalars::{Field, FieldElem};
pub use sweep::{ArtinReesEstimate, LinearFit, VFamily, VFunctionReport};
pub use vnum::{PrimeCandidate, VRecord};
