//! Exact arithmetic substrate: integer partitions, polynomials and rational
//! functions in q, and truncated multivariate series with the plethystic
//! Log/Exp pair. No floating point anywhere in this module.

mod partition;
mod qpoly;
mod qrat;
mod xseries;

pub use partition::{b_poly, hua_pairing, partitions_of, Partition};
pub use qpoly::QPolynomial;
pub use qrat::QRational;
pub use xseries::XSeries;
