//! Exact arithmetic for monomial subalgebras of `R[x, y]` whose generating
//! monomials have bounded slope, and machine-checkable certificates that no
//! finite subset of such a subalgebra generates all of it.
//!
//! A monomial `x^a y^b` with `a >= 1` is summarized by its *slope* `b/a`.
//! Slopes behave like mediants under multiplication: the slope of a product
//! is `Σb_i / Σa_i`, which never exceeds the largest factor slope. This
//! crate builds everything on that single exact inequality:
//!
//! * [`exponents`] — arbitrary-precision exponent pairs and slopes, with
//!   total ordering by cross-multiplication (never floating point);
//! * [`family`] — the slope-bounded generating families: arbitrary finite
//!   sets, the vertical family `{(1, n) : n >= 0}`, and consecutive
//!   Fibonacci pairs `{(f_odd, f_even)}` whose slopes climb toward the
//!   golden ratio without reaching it;
//! * [`monoid`] — membership and factorizations in the additive monoid of
//!   exponent pairs a family generates, via a bit-packed reachability
//!   search, plus an independent brute-force oracle;
//! * [`poly`] — sparse polynomials over pluggable coefficient rings
//!   (arbitrary-precision integers, integers mod `m`), reduced termwise to
//!   monoid membership;
//! * [`certificate`] — for families whose slope supremum is never attained,
//!   certificates that any given finite generator set misses some family
//!   element, with an exact standalone verifier and escalation chains that
//!   defeat each prefix of the family in turn.
//!
//! All queries are decided exactly over arbitrary-precision integers;
//! irrational slope suprema (such as the golden ratio) are handled through
//! integer inequalities rather than approximation.
//!
//! ```
//! use nonfg_core::{
//!     construct_witness_from_generators, verify_certificate, DeepCheck,
//!     ExponentPair, GeneratorSet, LambdaFamily,
//! };
//!
//! let fam = LambdaFamily::vertical();
//! let gens = GeneratorSet::new([
//!     ExponentPair::new(1u32, 0u32).unwrap(),
//!     ExponentPair::new(1u32, 1u32).unwrap(),
//!     ExponentPair::new(1u32, 2u32).unwrap(),
//! ])
//! .unwrap();
//!
//! // No finite generator set reaches the whole family: here (1,3) escapes.
//! let cert = construct_witness_from_generators(&fam, &gens).unwrap();
//! assert_eq!(cert.witness().to_string(), "(1,3)");
//! assert!(verify_certificate(&cert, DeepCheck::Run).pass);
//! ```

pub mod certificate;
pub mod exponents;
pub mod family;
pub mod monoid;
pub mod poly;

pub use certificate::{
    construct_witness, construct_witness_from_generators, escalation_chain, verify_certificate,
    Certificate, CertificateError, CheckResult, DeepCheck, VerificationReport,
    CERTIFICATE_VERSION,
};
pub use exponents::{parse_decimal, ExponentError, ExponentPair, Monomial, Slope};
pub use family::{fibonacci, FamilyError, HypothesisReport, LambdaFamily};
pub use monoid::{
    factorizations, fits_search_budget, member, member_bruteforce, Factorization, GeneratorSet,
    MonoidError, BRUTE_FORCE_MAX_X,
};
pub use poly::{
    extract_mstar, in_subalgebra, CoefficientRing, Integers, MStarResult, Modular, PolyError,
    SparsePoly, TermFactorization,
};
