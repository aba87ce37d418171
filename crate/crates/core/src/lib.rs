//! Index algebra, Ohno sums and high-precision multiple zeta values.

pub mod index;
pub mod mzv;
pub mod ohno;
pub mod verify;
