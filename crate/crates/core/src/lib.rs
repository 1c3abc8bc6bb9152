//! Combinatorics of right-angled ideal polyhedral decompositions, their standard square
//! complexes and hyperplanes, and exact hyperboloid-model checks of canonical tilings.

pub mod augmented;
pub mod cellkit;
pub mod checkering;
pub mod fixtures;
pub mod hyperplanes;
pub mod lorentz;
pub mod polyhedra;
pub mod squares;
pub mod surfaces;

pub use augmented::{AugError, AugmentedLinkModel, Parity};
pub use cellkit::{CellError, Decomposition, FacePairing, FaceRef, Polyhedron, QuotientComplex};
pub use checkering::{CheckerError, Checkering, Color};
pub use hyperplanes::{HyperplaneError, HyperplaneSystem, PathologyReport, SpecialVerdict};
pub use lorentz::{LorentzError, QuadExt, TilingSpec};
pub use polyhedra::PolyError;
pub use squares::{SquareComplex, SquareError};
pub use surfaces::{FlatSurface, SurfaceError};
