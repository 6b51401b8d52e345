//! Exact polynomial differential forms on standard simplices: Whitney elementary forms,
//! simplex integration, and two constructions of the simplicial contraction of `Ω_•` onto
//! the Whitney forms, together with mechanical checks of the identities relating them.

pub mod context;
pub mod contraction;
pub mod derham;
pub mod error;
pub mod form;
pub mod simplex;
pub mod text;
pub mod verify;

pub use context::{GroupKind, VariableContext, VariableGroup};
pub use error::{Error, Result};
pub use form::{DifferentialForm, Exterior, Monomial, Rational, RawTerm};
pub use simplex::SimplicialMap;
pub use text::{parse_form, parse_form_in};
