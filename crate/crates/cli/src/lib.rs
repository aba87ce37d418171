pub mod expr;
pub mod values;
