//! Structure theory and maximal subalgebras of finite-dimensional associative
//! algebras over Q and prime fields, in exact arithmetic.

pub mod algebra;
pub mod error;
pub mod exactla;
pub mod extensions;
pub mod maximal;
pub mod module;
pub mod poly;
pub mod presentations;
pub mod structure;

pub use error::{Error, Result};
