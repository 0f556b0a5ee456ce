//! Computably presented equivalence relations on the natural numbers and the
//! category they form under computable, equivalence-preserving maps.
//!
//! Infinite objects are always observed through a finite window: a stage `s`
//! of their approximation and a bound `n` on the universe. Every checker
//! reports what holds inside that window and nothing more.

pub mod category;
pub mod constructions;
pub mod funlang;
pub mod rel;
