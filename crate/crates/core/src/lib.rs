pub mod connection;
pub mod diffop;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod matrix;
pub mod moduli;
pub mod numint;
pub mod qseries;

pub use error::{Error, Result};
