pub mod levy;
pub mod stream;
