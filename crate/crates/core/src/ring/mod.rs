//! Coefficient fields, monomials, monomial orders and sparse polynomials.

mod field;
mod monomial;
mod poly;

pub use field::{Coeff, FieldSpec};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use poly::{Homogeneity, Polynomial, Ring, RingContext, Term};

pub(crate) use poly::{check_same, same_ring};
