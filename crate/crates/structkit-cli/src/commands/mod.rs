pub mod align;
pub mod convert;
pub mod demo;
pub mod evaluate;
pub mod mix;
