//! Exact-arithmetic engine for non-abelian Čech cocycles in the T-duality
//! 2-groups over finite nerves.

pub mod cocycle;
pub mod crossed;
pub mod dualize;
pub mod io;
pub mod linalg;
pub mod nerve;
pub mod poincare;
pub mod sample;
pub mod scalars;
