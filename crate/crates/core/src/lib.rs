//! Exact local invariants of elliptic curves over complete discretely valued
//! fields, and the trace formula relating the motivic Serre invariant to the
//! tame monodromy.
//!
//! The arithmetic core is generic over the valued field ([`localfield::LocalField`])
//! and, for Laurent backends, over the coefficient scalar
//! ([`scalar::CoeffField`]). The aliases below fix the supported instances.

pub mod error;
pub mod expr;
pub mod kodairadb;
pub mod localfield;
pub mod motivic;
pub mod pipeline;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod snc;
pub mod tate;
pub mod weierstrass;

pub use error::{Error, Result};
pub use localfield::{FieldSpec, LaurentFp, LaurentQ, LocalField, Padic, Valuation};
pub use pipeline::{AnyCurve, Report};
pub use tate::{KodairaType, ReductionClass};

/// Rational function in `t` over Q, the elements of `laurent:Q`.
pub type RatFuncQ = ratfunc::RatFunc<num_rational::BigRational>;
/// Rational function in `t` over a prime field, the elements of `laurent:F<p>`.
pub type RatFuncFp = ratfunc::RatFunc<scalar::Fp>;

pub type PadicModel = weierstrass::WeierstrassModel<Padic>;
pub type LaurentQModel = weierstrass::WeierstrassModel<LaurentQ>;
pub type LaurentFpModel = weierstrass::WeierstrassModel<LaurentFp>;

pub type PadicInvariants = tate::LocalInvariants<Padic>;
pub type LaurentQInvariants = tate::LocalInvariants<LaurentQ>;
pub type LaurentFpInvariants = tate::LocalInvariants<LaurentFp>;
