//! Admissible weights of unitrivalent graphs under the level-k quantum
//! Clebsch–Gordan condition, the flip action of `H₁(Γ; Z₂)` on them, the
//! twisted first cohomology with coefficients in `(C^×)^{QCG}`, external edge
//! cocycles, their monomial representations, and restriction along graph
//! factorizations.
//!
//! All values are exact: weights are doubled integers and cochain values are
//! roots of unity represented as elements of Q/Z.

pub mod circle;
pub mod cohomology;
pub mod error;
pub mod external;
pub mod f2;
pub mod factorization;
pub mod graph;
pub mod io;
pub mod representation;
pub mod space;
pub mod suite;
pub mod weights;

pub use circle::CircleValue;
pub use error::{Error, Result};
pub use graph::{Cycle, Graph};
pub use space::WeightSpace;
pub use weights::{Level, Orbit, WeightVector};
