pub mod construct;
pub mod curve;
pub mod exact;
pub mod factor;
pub mod ff;
pub mod poly;
pub mod progression;
pub mod search;
