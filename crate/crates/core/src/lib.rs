//! Exact computations around representations of finite quivers.
//!
//! The centerpiece is an arbitrary-precision implementation of Hua's formula
//! for the polynomials a_{Q,alpha}(q) counting absolutely indecomposable
//! representations over F_q ([`kac`]), together with:
//!
//! - root-system combinatorics on dimension vectors ([`quiver`]),
//! - truncated multivariate q-series with plethystic Log/Exp ([`qseries`]),
//! - enumeration of dimension-vector classes on the universal abelian
//!   covering quiver and verification of the identity
//!   a_{Q,alpha}(1) = sum over classes of a(1) ([`covering`]),
//! - spanning-tree and cover-thin counting with asymptotics ([`trees`]),
//! - independent brute-force ground truth over small finite fields and
//!   colored-tree enumerations ([`oracle`]).
//!
//! All representation-theoretic quantities are computed exactly; floating
//! point appears only in the asymptotic-bound report.

pub mod covering;
pub mod error;
pub mod kac;
pub mod oracle;
pub mod qseries;
pub mod quiver;
pub mod trees;

pub use error::{Error, Result};
