//! Exact symbolic verification of strong connections on cotensor products
//! of graded λ-commutation *-algebras.

pub mod algebra;
pub mod bundle;
pub mod comodule;
pub mod connection;
pub mod cotensor;
pub mod error;
pub mod exec;
pub mod formulas;
pub mod parse;
pub mod presets;
pub mod report;
pub mod scalar;
pub mod suites;

pub use algebra::{AlgebraElement, AlgebraPresentation, Monomial, PresentationBuilder, PresentationId};
pub use comodule::{CoactionSpec, Grading, GroupCoalgebraElement, SlotEntry, SlotKind, TensorElement};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use report::{CheckResult, Report, Status};
pub use scalar::{LaurentScalar, UnitMonomial};
