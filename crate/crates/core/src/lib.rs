//! Exact verification engine for Hom-coalgebra structures.

pub mod cli;
pub mod comodules;
pub mod constructions;
pub mod field;
pub mod io;
pub mod search;
pub mod structures;
pub mod tensor;

pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar, Zp};
pub use tensor::{LegPermutation, Space, TensorMap};

pub type QTensorMap = TensorMap<Rationals>;
pub type FpTensorMap = TensorMap<PrimeField>;
