//! Finite determinacy and Milnor algebra invariants of isolated hypersurface
//! singularities, computed with exact rational linear algebra on jet spaces.

pub mod combinatorics;
pub mod determinacy;
pub mod error;
pub mod exactla;
pub mod frontend;
pub mod invariants;
pub mod jetspace;
pub mod poly;
pub mod sharpness;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly, Rational, WeightSystem};
