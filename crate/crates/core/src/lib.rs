//! Tableaux rewriting: column diagrams, string data structures, jeu de taquin and
//! ribbon rewriting, crystals and monoid congruences.

pub mod congruence;
pub mod corpus;
pub mod crystal;
pub mod diagrams;
pub mod error;
pub mod jdt;
pub mod rbt;
pub mod rewriting;
pub mod structures;
pub mod words;

pub use diagrams::{Column, Diagram, Flag, GluingMap, Placed};
pub use error::{Error, Result};
pub use structures::Sds;
pub use words::{Alphabet, Letter, Weight, Word};
