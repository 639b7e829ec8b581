pub mod complexity;
mod decimal;
pub mod diagram;
pub mod error;
pub mod families;
pub mod homology;
pub mod map;
pub mod reduction;
pub mod report;
pub mod surface;
