//! Exact sup-completions of order complete vector lattices.
//!
//! The ground lattice `X` is realized inside continuous functions on the
//! Cantor space `K`; its sup-completion is the cone of continuous
//! `[-inf, +inf]`-valued functions on `K` that dominate some element of `X`.
//! Everything is computed with exact rationals.

pub mod axioms;
pub mod cli;
pub mod error;
pub mod extreal;
pub mod func;
pub mod iso;
pub mod stone;
pub mod supcomp;
pub mod syntax;

pub use error::{Certificate, Error, Result};
pub use extreal::ExtReal;
pub use func::TreeFn;
pub use supcomp::{Model, SupElement};
