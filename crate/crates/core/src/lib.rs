//! Computational toolkit for the three-dimensional Rauzy fractal attached to the
//! Pisot unit root of `x^4 - x^3 - x^2 - x - 1`.
//!
//! [`quartic`] holds exact arithmetic in `Z[α]` and the embedding into `ℝ × ℂ`.
//! [`expansions`] covers admissible digit words, greedy β-expansions and α-series
//! values. [`automaton`] builds the 35-state automaton recognising pairs of equal
//! α-expansions; [`exclusion`], [`witness`] and [`annexe`] certify it against the
//! transcribed reference diagram. [`boundary`] describes the 18 neighbour regions
//! and the graph-directed IFS of the boundary. [`render`], [`tiling`] and
//! [`verify`] back the `rauzy4` binary.

pub mod annexe;
pub mod automaton;
pub mod boundary;
pub(crate) mod dyadic;
pub mod exclusion;
pub mod expansions;
pub mod interval;
pub mod quartic;
pub mod render;
pub mod tiling;
pub mod verify;
pub mod witness;

pub use automaton::{Automaton, DigitPair, Edge, PairWord, State};
pub use expansions::{DigitString, EventuallyPeriodicWord};
pub use quartic::{EmbeddedPoint, RootData, ZAlpha};
