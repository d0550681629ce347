//! Exact computation of the generalized triangle inequalities that cut out the
//! cone of chamber-valued side lengths of closed polygons in a rank-2
//! (dihedral) Coxeter geometry.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactreal`]: the real cyclotomic field Q(cos pi/m) with certified sign
//!   determination (interval refinement over an exactly isolated generator,
//!   never a floating-point fallback);
//! - [`coxeter`]: the dihedral group I2(m) acting on direction indices mod 2m,
//!   plus the exact apartment model (Gram matrix, unit vectors, matrices);
//! - [`functionals`]: the linear functionals attached to direction tuples, the
//!   wall-set combinatorics that select the inequality system, and both
//!   enumeration routes (definition filter and closed-form construction);
//! - [`lp`] / [`cone`]: exact rational-field linear programming with
//!   certificates, cone membership, irredundancy, Fourier-Motzkin projection,
//!   and double-description extreme rays;
//! - [`polygonlab`]: apartment polygons, chamber-valued side lengths, opening
//!   and accordion-folding maps, and billiard-path straightening.
//!
//! Everything here is deterministic and allocation-only (`no_std` + `alloc`);
//! IO, file formats, sampling oracles, and the CLI live in the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cone;
pub mod coxeter;
pub mod functionals;
pub mod lp;
pub mod polygonlab;
pub mod exactreal;
