//! Exact decision procedure for norms from even K-groups of number fields.
//!
//! Given a number field F, a finite extension L/F and an element of K₂(F)
//! written as a product of Steinberg symbols, decide whether it is the norm
//! of an element of K₂(L). The only obstruction lives at the real places of F
//! that have no real place of L above them, and is read off from the signs of
//! the symbol entries there. For K₂ₙ the obstruction group is computed for
//! every n.
//!
//! ```
//! use k2norm::exact_arith::Polynomial;
//! use k2norm::k_theory_norm::{is_norm, SteinbergSymbol, SymbolProduct};
//! use k2norm::number_field::NumberField;
//! use k2norm::relative_ext::make_relative_extension;
//!
//! let q = NumberField::rationals();
//! let y2_plus_1 = Polynomial::new(vec![q.from_int(1), q.from_int(0), q.from_int(1)]);
//! let qi = make_relative_extension(&q, y2_plus_1).unwrap();
//! let s = SteinbergSymbol::new(q.from_int(-1), q.from_int(-1)).unwrap();
//! let verdict = is_norm(&qi, &SymbolProduct::single(s), 1).unwrap();
//! assert!(!verdict.is_norm);
//! ```

pub mod cli_io;
pub mod error;
pub mod exact_arith;
pub mod k_theory_norm;
pub mod number_field;
pub mod real_roots;
pub mod relative_ext;

pub use error::{Error, Result};
