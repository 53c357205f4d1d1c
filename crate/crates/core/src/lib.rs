//! Graded matrix factorizations of `f = prod_i (x + s_i q)`.
//!
//! The crate builds the rank-one factorizations `F_I`, computes morphism
//! spaces in the homotopy category by exact graded linear algebra over the
//! rationals, and checks exceptional collections, mutations and the Serre
//! functor on top of that.
//!
//! Layers, bottom up:
//!
//! - [`poly`], [`parse`], [`linalg`]: exact scalars, polynomials, matrices.
//! - [`params`], [`mf`], [`stab`]: parameters, factorizations and functors.
//! - [`morphism`], [`hom`], [`oracle`]: morphisms and Hom spaces.
//! - [`canonical`], [`collection`], [`iso`], [`mutation`], [`generation`]:
//!   the category-level checks.

pub mod canonical;
pub mod collection;
pub mod generation;
pub mod hom;
pub mod iso;
pub mod linalg;
pub mod mf;
pub mod morphism;
pub mod mutation;
pub mod oracle;
pub mod params;
pub mod parse;
pub mod poly;
pub mod polymat;
pub mod report;
pub mod stab;
pub mod subset;

/// Exact rational scalar, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub use collection::{check_collection, exceptional_collection, is_exceptional, CollectionReport};
pub use hom::{hom_basis, hom_dim, is_nullhomotopic, spectrum, twist_window, HomTable, Spectrum};
pub use generation::{verify_generation, GenerationReport};
pub use iso::{iso_equivalent, IsoVerdict};
pub use linalg::Matrix;
pub use mf::GradedMF;
pub use morphism::{Homotopy, MFMorphism};
pub use mutation::{left_mutation_step, serre_check, SerreReport};
pub use params::DeformationParams;
pub use parse::{parse_rational, poly_parse, ParseError};
pub use poly::{Poly, Twist};
pub use polymat::PolyMatrix;
pub use subset::SubsetIndex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("repeated root s_{i} = s_{j}: the parameter is not generic and the singularity is not isolated")]
    DuplicateRoot { i: usize, j: usize },
    #[error("parameters are not generic: {0}")]
    NonGeneric(String),
    #[error("roots sum to {0}, expected 0")]
    NonzeroSum(Rational),
    #[error("subset must be proper and nonempty")]
    EmptyOrFullSubset,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("objects are factorizations of different polynomials")]
    MismatchedPotential,
    #[error("factorization is not reduced")]
    NotReduced,
    #[error("expected a rank one factorization, got rank {0}")]
    RankNotOne(usize),
    #[error("q0 does not split into the linear factors x + s_i q")]
    UnrecognizedFactor,
    #[error("f is not g1*h1 + g2*h2")]
    DecompositionMismatch,
    #[error("g1, g2 is not a regular sequence")]
    NotRegularSequence,
    #[error("invalid factorization: {0}")]
    InvalidMF(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("subset relation violated: {0}")]
    SubsetRelation(String),
    #[error("isomorphism could not be decided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
}

pub type Result<T> = std::result::Result<T, Error>;
