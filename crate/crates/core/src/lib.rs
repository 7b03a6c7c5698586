//! An executable calculus for categories enriched in a finite commutative
//! unital quantale.
//!
//! The library implements, at finite scale, the bicategory of enriched
//! categories and modules (profunctors) over such a quantale: module
//! composition as a join of tensors, the `(-)_*`/`(-)^*` embedding with its
//! adjunctions, collages and coslices, sieve pushouts with their
//! Beck-Chevalley equality, homodularity checks for base-change
//! pseudofunctors, the free monad on an endomodule (a Kleene star relative to
//! a hom matrix), and the Int construction with its duality. Because the
//! hom-categories are posets, every canonical isomorphism collapses to a
//! decidable equality of matrices, and each law is checked by a seeded suite
//! backed by an independent oracle where one exists.
//!
//! A parallel backend enriched in finite sets ([`set`]) computes genuine
//! coends as union-find quotients; it is the non-posetal sanity anchor for
//! the composition, adjunction and collage formulas.

pub mod category;
pub mod collage;
pub mod doc;
pub mod gen;
pub mod homodular;
pub mod int;
pub mod module;
pub mod quantale;
pub mod report;
pub mod set;
pub mod suite;

pub use category::{QCategory, QFunctor};
pub use module::QModule;
pub use quantale::{Elem, QMatrix, Quantale};
