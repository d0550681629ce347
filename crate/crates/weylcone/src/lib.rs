//! IO and sampling companion to `weylcone-core`.
//!
//! The core crate is `no_std` and purely exact; this crate adds the parts
//! that want an operating system or floating point: JSON (de)serialization of
//! inequality systems and field elements, randomized sampling oracles used to
//! cross-check the exact cone (Hermitian-matrix spectra and random apartment
//! polygons), and the `weylcone` command-line binary.

pub mod jsonio;
pub mod oracles;
