//! Exact continued fraction expansion of real algebraic numbers.

mod algebraic;
mod convergents;
mod expand;
mod interval;
mod numspec;
mod poly;

pub use algebraic::{floor_of_root, isolate_root, squarefree_part, AlgebraicNumber};
pub use convergents::{
    approximation_error, approximation_error_with_depth, convergents, ConvergentSequence,
    ErrorEnclosure, DEFAULT_TAIL_DEPTH, ENCLOSURE_RELATIVE_WIDTH,
};
pub(crate) use convergents::complete_quotient_bounds;
pub use expand::{cf_expand, CFExpansion, LagrangeExpander};
pub use interval::{cf_from_interval, decimal_oracle};
pub use numspec::{parse_decimal, IntValue, NumberSpec};
pub use poly::IntegerPolynomial;
