pub mod funcmodel;
pub mod numeric;
pub mod series;
pub mod growth;
pub mod nevanlinna;
pub mod diffops;
pub mod polygon;
pub mod parse;
pub mod harness;
