pub mod abundancy;
pub mod arith;
pub mod corpus;
pub mod error;
pub mod even_perfect;
pub mod interval;
pub mod opn;
pub mod ratio;
pub mod report;

pub use error::{Error, Result};
