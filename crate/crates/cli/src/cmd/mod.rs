pub mod bench;
pub mod compile;
pub mod score;
pub mod survey;
pub mod sweep;
