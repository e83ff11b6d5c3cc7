//! Lower bounds for partial list colorings, end to end.
//!
//! Given a graph `G` on `n` vertices whose list chromatic number is at most
//! `s`, and an assignment of color lists of size `t < s` to its vertices,
//! at least `q_{s,t} * n` of the vertices can always be properly colored
//! from their lists, where `q_{s,t}` in `(0, 1)` is the unique root of
//! `f_{s,t}(x) = 1 - x - [1 - (1-x)/(s-t)]^t`.  Since `q_{s,t} > (6/7)(t/s)`,
//! this pins the partial list coloring number `lambda_t` above `(6/7)(tn/s)`.
//!
//! The crate makes every ingredient of that statement executable:
//!
//! * [`analytic`] — certified computation of `q_{s,t}`, the integer
//!   polynomial `u^t f_{s,t}`, the `6/7` bound, and ratio scans;
//! * [`graph`] — small simple graphs, DIMACS I/O, standard families,
//!   and the degeneracy bound;
//! * [`coloring`] — list assignments and partial colorings with JSON I/O
//!   and a violation-reporting validator;
//! * [`exact`] — exhaustive solvers for small instances: list coloring,
//!   maximum partial coloring, `s`-choosability, the list chromatic number
//!   `chi_ell`, and the partial list coloring number `lambda_t`;
//! * [`scheme`] — the random partition scheme behind the bound and its
//!   derandomization by conditional expectations, which *constructs* a
//!   partial coloring of at least `ceil(q * n)` vertices.

pub mod analytic;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod scheme;

pub use error::{Error, Result};
