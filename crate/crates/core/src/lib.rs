//! Synthesis of minimal-quantifier-rank first-order sentences separating
//! positive from negative strings over successor structures, driven by the
//! combinatorial characterization of Ehrenfeucht-Fraisse games on strings.
//!
//! The crate exposes the string statistics (free occurrences, multiplicity,
//! scattering), the game similarity measure and winner predicates, the two
//! formula representations (macro templates with closed-form quantifier
//! ranks and the core first-order syntax they expand into), the
//! per-pair distinguishability sets, and the synthesis pipeline with
//! optional disjunct minimization.

pub mod cli;
pub mod distinguish;
pub mod efgame;
pub mod error;
pub mod formulas;
pub mod semantics;
pub mod strings;
pub mod synthesis;

pub use error::{Error, Result};
pub use formulas::{CoreFormula, MacroFormula};
pub use strings::{Alphabet, StringStructure};
pub use synthesis::{Hypothesis, Sample};
