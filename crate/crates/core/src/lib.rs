//! Distance-two and injective list coloring of sparse graphs.

pub mod classify;
pub mod colorer;
pub mod configurations;
pub mod density;
pub mod discharging;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod rational;

pub use graph::{Graph, GraphError};
pub use rational::Rational;
