//! Distinguishing colourings of finite graphs.
//!
//! A vertex or edge colouring is *distinguishing* when the identity is the
//! only automorphism preserving it. This crate checks such colourings (plain
//! or proper), reduces them to irreducible ones by merging colour classes,
//! computes the four distinguishing parameters exactly for small graphs, and
//! builds verified irreducible colourings of double stars and double cliques.
//!
//! ```
//! use distcolour::colouring::{is_distinguishing, VertexColouring};
//! use distcolour::graph::{gen_standard, Family};
//!
//! let p3 = gen_standard(Family::Path, 3).unwrap();
//! assert!(is_distinguishing(&p3, &VertexColouring::from_values(&[0, 0, 1])).unwrap());
//! assert!(!is_distinguishing(&p3, &VertexColouring::from_values(&[0, 1, 0])).unwrap());
//! ```

pub mod aut;
pub mod cert;
pub mod cli;
pub mod colouring;
pub mod doublestar;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod params;
pub mod perm;
pub mod reduction;

pub use error::{Error, Result};
