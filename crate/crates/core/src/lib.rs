//! Exact computer algebra for quotients of path algebras of finite quivers.
//!
//! The crate is organized around a pipeline:
//!
//! * [`paths`] — quivers, directed paths, weight functions, and admissible
//!   well-orders on the path set.
//! * [`coefficients`] — exact scalar domains: rationals, prime fields, and
//!   sparse multivariate polynomials over them.
//! * [`elements`] — linear combinations of paths, tips, uniformity, simple
//!   and complete reduction, tip-reduction of sets, overlap relations.
//! * [`groebner`] — Buchberger-style completion with overlap relations,
//!   reduced bases, ideal membership, associated monomial ideals.
//! * [`monomial`] — combinatorics of a monomial quotient: nontips and their
//!   recognizing automaton, dimension, Hilbert series, Cartan matrix.
//! * [`variety`] — tail spaces, symbolic generators, and the polynomial
//!   equations cutting out the deformation space of algebras that share a
//!   fixed tip set, together with graded, pinned, and admissible variants.
//! * [`resolution`] — overlap chains, Betti tables, global-dimension bounds
//!   and the Cartan determinant report for the monomial quotient.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod coefficients;
pub mod elements;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod paths;
pub mod resolution;
pub mod variety;

pub use coefficients::{FieldValue, Polynomial, VarTable};
pub use elements::Element;
pub use error::Error;
pub use groebner::{CompletionCaps, CompletionStatus, GroebnerBasis};
pub use monomial::MonomialData;
pub use paths::{Path, PathOrder, Quiver, WeightFunction};
pub use variety::{AlgebraPoint, TailSpace, VarietyPresentation};
