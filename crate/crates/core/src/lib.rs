//! p-torsion Brauer classes of `k((t))` in characteristic `p`, represented by
//! differential forms.

pub mod error;
pub mod brauer;
pub mod forms;
pub mod laurent;
pub mod residue;
pub mod ring;
pub mod sample;
pub mod surface;
pub mod swan;
pub mod witt;

pub use error::{Error, Result};
