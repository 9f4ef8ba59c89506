//! Exact arithmetic for the exceptional Jordan algebra of 3×3 Hermitian
//! matrices over the integral Cayley numbers.
//!
//! Layers, bottom to top:
//!
//! * [`exactnum`]: rationals, residue rings, Laurent polynomials, truncated
//!   series, formal special values.
//! * [`cayley`]: octonions in the integral α-basis.
//! * [`jordan`]: Jordan elements, determinant, cross product, group generators.
//! * [`padic`]: elementary divisors by explicit reduction.
//! * [`density`]: local densities β_p, α_p, group orders, the mass formula.
//! * [`siegel`]: the local Siegel series polynomial and its symmetrization.
//! * [`genfun`]: λ_p, the local Rankin–Selberg series H_p, residue algebra.
//! * [`lift`]: Hecke data and Fourier coefficients of the lift.
//! * [`lvalue`]: numerical symmetric-square L-values and the period.
//! * [`census`]: exhaustive rank census of J(F_2).
//! * [`selftest`]: the acceptance checks, shared by the test suite and the CLI.

pub mod cayley;
pub mod census;
pub mod density;
pub mod error;
pub mod exactnum;
pub mod genfun;
pub mod jordan;
pub mod lift;
pub mod lvalue;
pub mod padic;
pub mod selftest;
pub mod siegel;
pub mod util;

pub use cayley::Octonion;
pub use error::{Error, Result};
pub use exactnum::{LaurentPoly, Rational, SpecialValue, TruncSeries, Zmod};
pub use jordan::{Generator, GeneratorWord, JordanElement};
pub use padic::ElemDivisors;
