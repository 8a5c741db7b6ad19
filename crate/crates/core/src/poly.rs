//! Sparse bivariate polynomials over pluggable coefficient rings, and the
//! reduction of subalgebra membership to monoid membership.
//!
//! # Termwise membership
//!
//! Distinct monomials are linearly independent over every commutative
//! coefficient ring: a finite sum `Σ c_i · x^{a_i} y^{b_i}` with distinct
//! exponent pairs is zero only when every `c_i` is zero. Products of
//! monomials are monomials, so any polynomial combination of monomials from
//! a family produces terms whose exponents are sums of family exponents.
//! Consequently a polynomial `f` lies in the subalgebra generated by a
//! monomial family iff **each** non-constant term of `f` has its exponent
//! pair in the additive monoid generated by the family's exponents —
//! necessity from linear independence, sufficiency because each
//! representable term is a product of family monomials and sums of
//! representable terms are representable. [`in_subalgebra`] implements
//! exactly this reduction, factoring each term over the finite slice of the
//! family that fits inside the term's exponent box.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exponents::{parse_decimal, ExponentPair, Monomial};
use crate::family::LambdaFamily;
use crate::monoid::{member, GeneratorSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigUint),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial {poly_index} is not in the subalgebra: term {term} does not factor over the family")]
    NotInSubalgebra { poly_index: usize, term: Monomial },
}

/// A commutative ring of polynomial coefficients. Elements are kept in a
/// canonical form chosen by the ring, so `==` on elements is ring equality.
pub trait CoefficientRing: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Eq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Canonical image of an arbitrary-precision integer (the parser's view
    /// of a coefficient literal).
    fn embed_integer(&self, n: &BigInt) -> Self::Elem;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

/// Arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl CoefficientRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::from(1)
    }

    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }

    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }

    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }

    fn embed_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// Integers modulo a fixed modulus `m >= 2`; elements are reduced
/// representatives in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modular {
    modulus: BigUint,
}

impl Modular {
    pub fn new(modulus: impl Into<BigUint>) -> Result<Self, PolyError> {
        let modulus = modulus.into();
        if modulus < BigUint::from(2u32) {
            return Err(PolyError::ModulusTooSmall(modulus));
        }
        Ok(Modular { modulus })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }
}

impl CoefficientRing for Modular {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::from(1u32)
    }

    fn add(&self, x: &BigUint, y: &BigUint) -> BigUint {
        (x + y) % &self.modulus
    }

    fn neg(&self, x: &BigUint) -> BigUint {
        if x.is_zero() {
            BigUint::zero()
        } else {
            &self.modulus - x
        }
    }

    fn mul(&self, x: &BigUint, y: &BigUint) -> BigUint {
        (x * y) % &self.modulus
    }

    fn embed_integer(&self, n: &BigInt) -> BigUint {
        let m = BigInt::from(self.modulus.clone());
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_biguint().expect("reduced representative is nonnegative")
    }
}

/// A polynomial in `x` and `y` with finitely many terms, stored as a map
/// from exponent pair to nonzero coefficient. The zero polynomial is the
/// empty map. Unlike family elements, term exponents may have `a = 0`
/// (constants and pure `y` powers exist in the ambient ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<R: CoefficientRing> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoefficientRing> SparsePoly<R> {
    pub fn zero(ring: R) -> Self {
        SparsePoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, value: R::Elem) -> Self {
        Self::from_terms(ring, [(Monomial::origin(), value)])
    }

    /// The single term `coefficient * x^a * y^b`, normalized.
    pub fn term(ring: R, coefficient: R::Elem, exponents: Monomial) -> Self {
        Self::from_terms(ring, [(exponents, coefficient)])
    }

    /// Builds a polynomial by summing the given terms; duplicate exponent
    /// pairs accumulate, zero coefficients are dropped.
    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            let entry = match acc.remove(&m) {
                Some(existing) => ring.add(&existing, &c),
                None => c,
            };
            if !ring.is_zero(&entry) {
                acc.insert(m, entry);
            }
        }
        SparsePoly { ring, terms: acc }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The support of the polynomial, in increasing exponent order.
    pub fn monomials_of(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    fn require_same_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "polynomial operands use different coefficient rings: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.require_same_ring(other);
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.require_same_ring(other);
        let products = self.terms.iter().flat_map(|(m, c)| {
            other.terms.iter().map(move |(n, d)| {
                (
                    Monomial::new(m.a() + n.a(), m.b() + n.b()),
                    self.ring.mul(c, d),
                )
            })
        });
        Self::from_terms(self.ring.clone(), products.collect::<Vec<_>>())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(m, d)| (m.clone(), self.ring.mul(c, d))),
        )
    }

    /// Parses the textual format `c*x^a*y^b + c*x^a*y^b + ...`: every term
    /// spells out its coefficient and both exponents, coefficients are
    /// arbitrary-precision integers (optionally signed, canonicalized by the
    /// ring), exponents are nonnegative decimal integers. The zero
    /// polynomial is written `0*x^0*y^0`.
    pub fn parse(ring: R, text: &str) -> Result<Self, PolyError> {
        let mut terms = Vec::new();
        for raw in text.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(PolyError::Parse(format!(
                    "empty term in {text:?}; terms are separated by '+'"
                )));
            }
            let mut parts = term.split('*');
            let (coef, xpart, ypart) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(c), Some(x), Some(y), None) => (c.trim(), x.trim(), y.trim()),
                _ => {
                    return Err(PolyError::Parse(format!(
                        "term {term:?} is not of the form c*x^a*y^b"
                    )))
                }
            };
            let coefficient: BigInt = coef.parse().map_err(|_| {
                PolyError::Parse(format!("invalid integer coefficient {coef:?} in term {term:?}"))
            })?;
            let a = parse_exponent(xpart, 'x', term)?;
            let b = parse_exponent(ypart, 'y', term)?;
            terms.push((Monomial::new(a, b), ring.embed_integer(&coefficient)));
        }
        Ok(Self::from_terms(ring, terms))
    }

    /// Renders in the same format [`parse`](Self::parse) accepts.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0*x^0*y^0".to_owned();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{}*x^{}*y^{}", c, m.a(), m.b()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn parse_exponent(part: &str, variable: char, term: &str) -> Result<BigUint, PolyError> {
    let body = part
        .strip_prefix(variable)
        .and_then(|rest| rest.strip_prefix('^'))
        .ok_or_else(|| {
            PolyError::Parse(format!(
                "expected {variable}^<exponent> in term {term:?}, found {part:?}"
            ))
        })?;
    parse_decimal(body).map_err(|_| {
        PolyError::Parse(format!(
            "exponent of {variable} in term {term:?} must be a nonnegative decimal integer, found {body:?}"
        ))
    })
}

/// One term's factorization into family elements: the term's exponent pair
/// and the (family element, multiplicity) parts the canonical rule chose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermFactorization {
    pub term: Monomial,
    pub parts: Vec<(ExponentPair, BigUint)>,
}

/// Outcome of a subalgebra membership test: whether the polynomial lies in
/// the subalgebra, which family elements suffice to rebuild it, how each
/// term factors, and — on failure — which terms obstruct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MStarResult {
    pub inside: bool,
    /// Union of the family elements used across all term factorizations,
    /// sorted; empty when the polynomial is a constant (or zero).
    pub generating_monomials: Vec<ExponentPair>,
    /// One entry per non-constant term, in term order, when `inside`.
    pub term_factorizations: Vec<TermFactorization>,
    /// Support exponents that do not factor over the family; nonempty iff
    /// `inside` is false.
    pub failing_terms: Vec<Monomial>,
}

/// Decides whether `f` lies in the subalgebra generated (over the
/// coefficient ring adjoined with nothing else) by the family's monomials.
///
/// Each non-constant term `x^A y^B` is tested for membership in the additive
/// monoid generated by the family elements inside the `[0..A] x [0..B]` box
/// — the only elements that can participate in a factorization. The chosen
/// factorization per term is the canonical one from [`member`]
/// (lexicographically smallest multiplicity vector over the box slice in
/// canonical generator order); e.g. `x^2 y^5` over the family
/// `{(1,n) : n >= 0}` factors as `(1,2) + (1,3)`.
pub fn in_subalgebra<R: CoefficientRing>(f: &SparsePoly<R>, fam: &LambdaFamily) -> MStarResult {
    let mut generating = BTreeSet::new();
    let mut term_factorizations = Vec::new();
    let mut failing_terms = Vec::new();

    for exponents in f.monomials_of() {
        if exponents.is_origin() {
            continue; // constants lie in every subalgebra containing the ring
        }
        let slice = fam.elements_within(exponents.a(), exponents.b());
        let factorization = GeneratorSet::new(slice)
            .ok()
            .and_then(|gens| member(&gens, &exponents).map(|f| (gens, f)));
        match factorization {
            Some((gens, fact)) => {
                let parts: Vec<(ExponentPair, BigUint)> = fact
                    .parts(&gens)
                    .into_iter()
                    .map(|(g, c)| (g.clone(), c.clone()))
                    .collect();
                generating.extend(parts.iter().map(|(g, _)| g.clone()));
                term_factorizations.push(TermFactorization {
                    term: exponents,
                    parts,
                });
            }
            None => failing_terms.push(exponents),
        }
    }

    MStarResult {
        inside: failing_terms.is_empty(),
        generating_monomials: generating.into_iter().collect(),
        term_factorizations,
        failing_terms,
    }
}

/// Unions the generating monomials of every polynomial in `polys` into one
/// generator set sufficient to rebuild them all. An empty union (no input,
/// or constants only) yields the singleton `{(1,0)}`, which every family
/// contains, so the result is always a valid nonempty generator set.
pub fn extract_mstar<R: CoefficientRing>(
    polys: &[SparsePoly<R>],
    fam: &LambdaFamily,
) -> Result<GeneratorSet, PolyError> {
    let mut union = BTreeSet::new();
    for (poly_index, f) in polys.iter().enumerate() {
        let result = in_subalgebra(f, fam);
        if let Some(term) = result.failing_terms.first() {
            return Err(PolyError::NotInSubalgebra {
                poly_index,
                term: term.clone(),
            });
        }
        union.extend(result.generating_monomials);
    }
    if union.is_empty() {
        union.insert(ExponentPair::new(1u32, 0u32).expect("x-exponent is 1"));
    }
    Ok(GeneratorSet::new(union).expect("union is nonempty by construction"))
}
