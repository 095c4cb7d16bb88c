//! Presentations, Reidemeister–Schreier rewriting, coset enumeration and
//! classification invariants for virtual complex reflection groups of rank
//! two.
//!
//! The parent J-group `J(k, n, m) = ⟨s, t, u | s^k = t^n = u^m = 1,
//! stu = tus = ust⟩` contains, for `gcd(n, m) = 1`, the normal subgroup
//! `W_b^c(k, bn, cm)` generated by the conjugates of `s`, `t^n` and `u^m`.
//! [`families::vcrg_presentation`] writes down a presentation of it on
//! generators `x1…xn, y, z`; the other modules check such presentations
//! on finite instances and compute invariants that still work when the
//! group is infinite.

pub mod abelian;
pub mod analysis;
pub mod classify;
pub mod coset;
pub mod error;
pub mod families;
pub mod perm;
pub mod presentation;
pub mod rewriting;
pub mod tietze;
pub mod word;

pub use error::{Error, Result};
pub use families::{TriangleParams, VcrgParams};
pub use presentation::{Chain, Format, Presentation};
pub use word::{GenId, Word};
