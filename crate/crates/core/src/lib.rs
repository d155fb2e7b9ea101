//! Exact symbolic toolkit for multilinear brackets on coordinate charts:
//! rational and Gaussian-rational scalars, sparse polynomials and rational
//! functions, exact linear algebra, multivector fields and differential
//! forms, bracket verification, Lie-algebra structure analysis, and chart
//! and matrix Lie groups.

pub mod catalog;
pub mod chart;
pub mod check;
pub mod error;
pub mod forms;
pub mod group;
pub mod liealg;
pub mod matgroup;
pub mod matrix;
pub mod multivector;
pub mod nambu;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod seeded;

pub use error::{Error, Result};
