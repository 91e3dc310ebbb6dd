//! Small named structures and categories used by the tests, the acceptance
//! suite and the command line.

mod categories;
mod structures;

pub use categories::*;
pub use structures::*;
