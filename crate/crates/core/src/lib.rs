//! Exact computations with Verma gliders over chains of classical Lie
//! algebras: root data, matrix models, embeddings and their embedding
//! elements, PBW arithmetic in enveloping algebras, glider verification and
//! classification, and nilpotent orbits reached by embedding elements.

pub mod embedding;
pub mod error;
pub mod glider;
pub mod linalg;
pub mod orbits;
pub mod partition;
pub mod rational;
pub mod realization;
pub mod roots;
pub mod uea;

pub use error::{Error, Result};
pub use linalg::RationalMatrix;
pub use partition::Partition;
pub use rational::Rational;
pub use roots::{AlgebraKind, Family, Root, RootSystem, Weight};
