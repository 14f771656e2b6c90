//! Exact computer algebra for the W₃ vertex operator algebra of central
//! charge 6/5: normal forms in the vacuum module, singular vectors, the Zhu
//! algebra and its spectrum, C₂-quotient relations, and q-series characters
//! of the twenty irreducible modules.

pub mod engine;
pub mod error;
pub mod exactnum;
pub mod ideal;
pub mod qseries;
pub mod reference;
pub mod singular;
pub mod verify;
pub mod zhu;

pub use error::{Error, Result};
pub use exactnum::{QuadRat, Rat};
