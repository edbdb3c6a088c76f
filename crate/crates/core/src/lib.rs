//! Certified computations with heights of algebraic numbers.
//!
//! An [`AlgebraicNumber`] is an irreducible primitive integer polynomial with
//! a box isolating one of its nonzero roots. On top of exact arithmetic with
//! such numbers the crate provides
//!
//! * the absolute logarithmic Weil height as a certified interval
//!   ([`heights`]),
//! * conjugates over a number field, the quantities `W_k`, `V_k` and power
//!   and Capelli tests ([`fields`]),
//! * finitely generated subgroups of the multiplicative group and the height
//!   relative to them ([`subgroup`], [`relheight`]),
//! * explicit Lehmer-type lower bounds ([`bounds`]).
//!
//! All real quantities are intervals with dyadic endpoints and outward
//! rounding; precision doubles until the requested width is reached or the
//! caller's ceiling is exhausted.
//!
//! ```
//! use lehmer_core::heights::{default_tol, weil_height};
//! use lehmer_core::literal::parse_number;
//!
//! let phi = parse_number("poly:[-1,-1,1];box:1,2,0,0", 1 << 16).unwrap();
//! let h = weil_height(&phi, &default_tol(), 1 << 16).unwrap();
//! assert!((h.mid_f64() - 0.2406059125).abs() < 1e-9);
//! ```

pub mod algnum;
pub mod corpus;
pub mod bounds;
pub mod cyclotomic;
pub mod dyadic;
pub mod error;
pub mod factor;
pub mod fields;
pub mod heights;
pub mod interval;
pub mod literal;
pub mod modp;
pub mod poly;
pub mod relheight;
pub mod resultant;
pub mod roots;
pub mod subgroup;

pub use algnum::AlgebraicNumber;
pub use error::{Error, Result};
