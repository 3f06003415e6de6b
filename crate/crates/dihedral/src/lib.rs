//! Exact arithmetic for quadratic extension towers of Q_p and the
//! distinction verdicts of the dihedral GL(2) representations they carry.

pub mod chars;
pub mod cli;
pub mod cyclo;
pub mod distinction;
pub mod epsilon;
pub mod error;
pub mod fieldspec;
pub mod oracle;
pub mod padic;
pub mod tower;
pub mod verify;
