//! Exact computation over finite categories.
//!
//! A [`FinCategory`] is given by its full composition table. On top of it the
//! crate computes set-valued functors, categories of elements, weighted
//! limits and colimits, ends and coends, pointwise Kan extensions, the Cauchy
//! completion in its several presentations, profunctor composition and Day
//! convolution. Every search is exhaustive and bounded by a size cap (see
//! [`with_size_cap`]).

pub mod cap;
pub mod catalog;
pub mod category;
pub mod cones;
pub mod cauchy;
pub mod elements;
pub mod ends;
pub mod error;
pub mod extend;
pub mod functor;
pub mod kan;
pub mod limits;
pub mod day;
pub mod profunctor;
pub(crate) mod search;
pub mod set;
pub mod setfunctor;

pub use cap::{size_cap, with_size_cap, DEFAULT_CAP};
pub use category::{opposite, product, validate_category, CategoryBuilder, FinCategory, Mor, Obj, RawCategory};
pub use error::{Error, LawViolation, Result};
pub use functor::{FunctorData, FunctorNat};
pub use set::{FinFunction, FinSet};
pub use setfunctor::{hom_functor, NatTransformation, SetFunctor, Variance};
