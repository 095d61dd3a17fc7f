//! Verification toolkit for single-valued polylogarithms on Grassmann
//! configuration spaces.
//!
//! The crate has two halves that meet in the verification harness:
//!
//! * an exact half — scalar arithmetic over ℚ, ℚ(√d) and 𝔽_p ([`field`]),
//!   general-position configurations and their orbit quotients ([`config`]),
//!   formal chains with boundary, alternation and the cone homotopy
//!   ([`chain`]), integer homology of the coinvariant complex ([`homology`]),
//!   symbols in Milnor K-theory with a tame-symbol oracle ([`milnor`]) and a
//!   symbolic dlog wedge-form engine ([`logform`]);
//! * a numeric half — arbitrary-precision complex arithmetic, polylogarithms
//!   and the single-valued functions D_m built from them ([`numeric`]), plus
//!   sampling harnesses that check the functional equation, skew symmetry,
//!   the cocycle property and a Dedekind zeta special value ([`harness`]).
//!
//! Machine-readable reports shared by the harnesses and the CLI live in
//! [`report`].

pub mod arith;
pub mod chain;
pub mod config;
pub mod field;
pub mod harness;
pub mod homology;
pub mod logform;
pub mod milnor;
pub mod numeric;
pub mod report;
