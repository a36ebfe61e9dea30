//! Conjugation racks of finite groups and the topology of their subrack posets.
//!
//! The pipeline for one conjugacy class `C` of a finite group `G`:
//!
//! 1. [`group`]: build and validate `G`, list its classes, form `H = ⟨C⟩`.
//! 2. [`rack`]: the conjugation quandle on `C` and its `H`-orbits.
//! 3. [`poset`]: every subrack of `C` by Next-Closure, the Hasse diagram, and
//!    the orbit-union closure operator.
//! 4. [`complex`]: the order complex of the proper part of the poset.
//! 5. [`homology`]: reduced integral homology via Smith normal form.
//! 6. [`verify`]: per-class verdicts for the p-group statements.

pub mod bitset;
pub mod catalog;
pub mod complex;
pub mod formats;
pub mod group;
pub mod homology;
pub mod poset;
pub mod rack;
pub mod verify;

pub use bitset::BitSet;
pub use complex::{order_complex, EulerCharacteristic, OrderComplex};
pub use group::{ConjClass, FiniteGroup, GroupError, PGroup, Permutation, Subgroup};
pub use homology::{is_homology_sphere, reduced_homology, HomologyProfile};
pub use poset::{enumerate_subracks, PhiImage, PosetError, SubrackPoset};
pub use rack::{conjugation_rack, orbit_decomposition, OrbitDecomposition, Rack, RackError};
pub use verify::{verify_group, ClassReport, GroupReport, Verdict, VerifyOptions};
