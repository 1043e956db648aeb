//! Oka's groups `G(p;q;r)` and the fundamental groups of generic fiber-type
//! plane curve complements.
//!
//! - [`words`]: words, presentations, the presentation grammar.
//! - [`oka`]: presentations, closed-form invariants, canonical forms and the
//!   isomorphism test for `G(p;q;r)`.
//! - [`abelian`]: Smith normal form and abelian invariants.
//! - [`finquot`]: finite groups and homomorphism counting.
//! - [`fibertype`]: pencil data to groups.
//! - [`cli`]: the `oka-groups` command-line driver.

pub mod abelian;
pub mod cli;
pub mod fibertype;
pub mod finquot;
pub mod oka;
pub mod words;

pub use abelian::{abelian_invariants, relation_matrix, smith_normal_form, AbelianInvariants, IntegerMatrix};
pub use fibertype::{
    add_generic_fiber, oka_join_example, orbifold_group, pi1_generic_fibers, pi1_with_special_fiber,
    validate_pencil, GroupAnswer, OrbifoldSpec, PencilSpec, SpecialFiber,
};
pub use finquot::{count_homomorphisms, hom_spectrum, FiniteGroup, HomSpectrum, TargetRegistry};
pub use oka::{
    canonical_form, free_product_to_oka, is_isomorphic, oka_presentation, simplified_presentation, structure,
    CanonicalOkaForm, OkaParams, SimplifiedParams, StructureReport,
};
pub use words::{free_product_presentation, parse_presentation, print_presentation, Presentation, Word};
