pub mod cache;
pub mod dump;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod lincomb;
pub mod module;
pub mod positivity;
pub mod word;

pub use error::{Error, Result};
pub use laurent::{Coeff, LaurentPoly, QPoly};
pub use word::{CoxeterSpec, Gen, TwistedInvolution, Word};
