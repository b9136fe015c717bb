//! Exact symbolic computation with finite Lie conformal and left-symmetric
//! conformal algebras: axiom checks, representations, tensor equations,
//! O-operators, Gel'fand-Dorfman bialgebras and coefficient algebras.

pub mod catalog;
pub mod coeff;
pub mod conformal;
pub mod error;
pub mod gdquad;
pub mod json;
pub mod operators;
pub mod parse;
pub mod poly;
pub mod reps;
pub mod report;
pub mod tensor;

pub use conformal::{ConformalAlgebra, Element, Kind, LambdaElement, Table};
pub use error::{Error, Result};
pub use poly::{Monomial, Poly, Rational, Var, VarTable};
pub use report::{Check, Report, Residual};
