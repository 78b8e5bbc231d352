//! Exact q-characters of quantum loop algebra modules in simply-laced types,
//! cross-checked against cluster algebras.
//!
//! [`preproj`] computes q-characters from Euler characteristics of quiver
//! Grassmannians of preprojective modules; [`cluster`] mutates seeds and
//! extracts F-polynomials; [`engine`] compares the two at level one and runs
//! the T-system. Arithmetic is exact throughout.
//!
//! ```
//! use qloop::preproj::fundamental_qchar;
//! use qloop::ymono::CartanData;
//!
//! let p = fundamental_qchar(&CartanData::parse("A3").unwrap(), 1, 0).unwrap();
//! assert_eq!(p.len(), 4);
//! ```

pub mod cli;
pub mod cluster;
pub mod engine;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod preproj;
pub mod quiverrep;
pub mod sl2;
pub mod ymono;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/monomials.md")]
    mod monomials {}
    #[doc = include_str!("../../../book/src/sl2.md")]
    mod sl2 {}
    #[doc = include_str!("../../../book/src/grassmannians.md")]
    mod grassmannians {}
    #[doc = include_str!("../../../book/src/preprojective.md")]
    mod preprojective {}
    #[doc = include_str!("../../../book/src/clusters.md")]
    mod clusters {}
    #[doc = include_str!("../../../book/src/level-one.md")]
    mod level_one {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
