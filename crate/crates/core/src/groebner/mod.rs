//! Groebner bases of submodules of free modules, and the linear algebra built
//! on them: normal forms, syzygies, lifting, homology and Q-dimensions.

mod basis;
mod ops;
mod presentation;
mod vector;

pub use basis::{Budget, GroebnerBasis};
pub use ops::{annihilator, homology, intersect, lift, reduce_entries, same_image, syzygies, Augmented, Lift};
pub use presentation::{count_standard_monomials, ModulePresentation, QDim};
