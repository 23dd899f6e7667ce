//! Boundary saddle levels of functions on surfaces with boundary.
//!
//! A saddle level whose critical point lies on the boundary is recorded as a
//! chord diagram. This crate counts and enumerates such diagrams, turns them
//! into band surfaces to read off Euler characteristic, orientability and
//! boundary circles, and classifies the diagrams carrying optimal functions
//! (one minimum, one maximum, one saddle).
//!
//! ```
//! use atomforge::{build_atom, ChordDiagram};
//!
//! let d: ChordDiagram = "k=5;chords=1-4,2-5;base=pos".parse().unwrap();
//! let closed = build_atom(&d).close_up().unwrap();
//! assert_eq!(closed.invariants().genus(), Some(1));
//! ```

pub mod classify;
pub mod counting;
pub mod diagram;
pub mod enumeration;
pub mod localmodel;
pub mod parallel;
pub mod render;
pub mod surface;

pub use classify::{
    canonical_form, canonical_form_in, classify, classify_with, is_optimal_diagram,
    standard_substitution, ClassCatalog, ClassifyError, Mode, SymmetryGroup,
};
pub use counting::{count_atoms_pformula, count_atoms_recurrence, CountingError};
pub use diagram::{parse_diagram, ChordDiagram, DiagramError, GluingSubstitution, Sign};
pub use enumeration::{enumerate_diagrams, Colorings};
pub use localmodel::{build_local_model, zero_rays, LocalModel};
pub use surface::{build_atom, find_full_ways, BandSurface, SurfaceError, SurfaceInvariants};
