//! Degree bounds for ground fields of arithmetic hyperbolic reflection groups.
//!
//! Everything here is pure computation over `f64`, exact big integers and an
//! arbitrary-precision recheck path; there is no IO. The crate is `no_std`
//! and only needs `alloc`.
//!
//! * [`cyclotomic`]: totients, norms of `4 sin^2(pi/l)`, discriminants of
//!   `F_l = Q(cos 2pi/l)` and of the composita `F_{k,s}`.
//! * [`bounds`]: the norm bound (method B), the least-solution bound
//!   (method A), exceptionality tests and the threshold solvers.
//! * [`pentagon`]: right-angled hyperbolic pentagon equations and the
//!   extremum of the Gram product.
//! * [`campaigns`]: per-family scans and the aggregate bound.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod campaigns;
pub mod cyclotomic;
mod error;
pub mod pentagon;
pub mod precise;

pub use error::{Error, Result};

/// `(sqrt 5 - 1)^5`, the negated minimum of the right-angled pentagon Gram product.
pub const GAMMA0: f64 = 2.885_438_199_983_175_7;

pub(crate) mod math {
    pub use libm::{cos, floor, log, sin, sqrt};

    pub fn ln(x: f64) -> f64 {
        log(x)
    }

    pub fn pow(x: f64, y: f64) -> f64 {
        libm::pow(x, y)
    }
}
