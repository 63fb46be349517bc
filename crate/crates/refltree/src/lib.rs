//! Finite-stage realizations of reflection trees of graphs and the
//! boundary machinery of right-angled Coxeter groups with graph nerves.
//!
//! The crate is organized around five subsystems:
//!
//! * [`graph`] — topological graphs in their natural cell structure,
//!   splittings, blocks and the symbolic dense-amalgam classification;
//! * [`pw`] — exact-rational metric graphs and piecewise-affine maps
//!   between them (the engine shared by every kind of bonding map);
//! * [`reflection`] — blow-ups, finite stages of the standard and
//!   violated reflection inverse systems, bonding maps and the
//!   stage-isomorphism construction between them;
//! * [`xgraph`] — X-graphs, X-blow-ups, finite-horizon validation of
//!   null/dense blow-up sequences and good quotients;
//! * [`davis`] / [`induced`] — right-angled Coxeter group word machinery,
//!   Cayley balls of the Coxeter-Davis complex, spherical-link shadows,
//!   branch-locus filtrations, and the induced boundary sequence they
//!   drive.

pub mod error;
pub mod num;

pub mod graph;
pub mod pw;
pub mod reflection;
pub mod xgraph;
pub mod davis;
pub mod induced;
pub mod corpus;

pub use error::{Error, Result};
pub use num::Q;
