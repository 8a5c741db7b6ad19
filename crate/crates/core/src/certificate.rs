//! Certificates that a finite generator set fails to generate a family's
//! whole monomial subalgebra, with an independent verifier.
//!
//! The argument a certificate captures is purely about slopes. The slope of
//! a product of monomials is a mediant of the factors' slopes, so it never
//! exceeds the largest factor slope: anything built from generators with
//! slopes at most `beta` again has slope at most `beta`. For a family whose
//! slopes approach but never attain their supremum, some family element has
//! slope strictly above `beta` — that element is the witness, and it cannot
//! lie in the subring generated by the given generators. Because every
//! finite generator set pins down such a finite `beta`, no finite set
//! generates the full subalgebra; [`escalation_chain`] materializes that
//! quantifier as runnable evidence, one certificate per prefix of the
//! family's enumeration.
//!
//! Verification deliberately re-derives nothing from the construction code:
//! it rechecks the claimed enumeration index, the slope bounds, and family
//! membership of the generators, using only exact integer arithmetic. An
//! optional deep check additionally confirms by dynamic programming that the
//! witness has no factorization over the generators.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exponents::{parse_decimal, ExponentPair, Monomial, Slope};
use crate::family::LambdaFamily;
use crate::monoid::{member, GeneratorSet};
use crate::poly::{extract_mstar, CoefficientRing, PolyError, SparsePoly};

/// Format tag embedded in every serialized certificate; the verifier
/// rejects documents carrying any other version.
pub const CERTIFICATE_VERSION: &str = "nonfg-cert/1";

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("theorem not applicable: sup attained — the {family} family contains an element of maximal slope, so no family element can exceed every generator slope")]
    TheoremNotApplicable { family: String },
    #[error(transparent)]
    NotInSubalgebra(#[from] PolyError),
    #[error("generator {generator} does not belong to the {family} family")]
    GeneratorOutsideFamily {
        generator: ExponentPair,
        family: String,
    },
    #[error("unsupported certificate version {found:?}, expected {CERTIFICATE_VERSION:?}")]
    UnsupportedVersion { found: String },
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
}

/// A self-contained, machine-checkable claim: within `family`, the monomial
/// `witness` (sitting at `witness_in_family_index` in the canonical
/// enumeration) lies outside the subring generated by `generators`, because
/// every generator slope is at most `beta` while the witness slope strictly
/// exceeds it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateWire", into = "CertificateWire")]
pub struct Certificate {
    family: LambdaFamily,
    generators: GeneratorSet,
    beta: Slope,
    witness: ExponentPair,
    witness_in_family_index: BigUint,
    created_from: Option<Vec<String>>,
}

impl Certificate {
    pub fn family(&self) -> &LambdaFamily {
        &self.family
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn beta(&self) -> &Slope {
        &self.beta
    }

    pub fn witness(&self) -> &ExponentPair {
        &self.witness
    }

    pub fn witness_in_family_index(&self) -> &BigUint {
        &self.witness_in_family_index
    }

    pub fn created_from(&self) -> Option<&[String]> {
        self.created_from.as_deref()
    }

    /// Compact JSON encoding. Deterministic: field order is fixed, generator
    /// sets are canonically sorted, and all integers are decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization cannot fail")
    }

    /// Pretty-printed JSON encoding, equally deterministic.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    /// Parses a certificate, rejecting unsupported format versions before
    /// attempting to interpret the remaining fields.
    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        #[derive(Deserialize)]
        struct VersionProbe {
            version: String,
        }
        let probe: VersionProbe = serde_json::from_str(text)?;
        if probe.version != CERTIFICATE_VERSION {
            return Err(CertificateError::UnsupportedVersion {
                found: probe.version,
            });
        }
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateWire {
    version: String,
    family: LambdaFamily,
    generators: GeneratorSet,
    beta: Slope,
    witness: ExponentPair,
    witness_in_family_index: String,
    created_from: Option<Vec<String>>,
}

impl TryFrom<CertificateWire> for Certificate {
    type Error = String;

    fn try_from(wire: CertificateWire) -> Result<Self, String> {
        if wire.version != CERTIFICATE_VERSION {
            return Err(format!(
                "unsupported certificate version {:?}, expected {CERTIFICATE_VERSION:?}",
                wire.version
            ));
        }
        let witness_in_family_index = parse_decimal(&wire.witness_in_family_index)
            .map_err(|e| format!("witness_in_family_index: {e}"))?;
        Ok(Certificate {
            family: wire.family,
            generators: wire.generators,
            beta: wire.beta,
            witness: wire.witness,
            witness_in_family_index,
            created_from: wire.created_from,
        })
    }
}

impl From<Certificate> for CertificateWire {
    fn from(cert: Certificate) -> CertificateWire {
        CertificateWire {
            version: CERTIFICATE_VERSION.to_owned(),
            family: cert.family,
            generators: cert.generators,
            beta: cert.beta,
            witness: cert.witness,
            witness_in_family_index: cert.witness_in_family_index.to_string(),
            created_from: cert.created_from,
        }
    }
}

fn ensure_applicable(fam: &LambdaFamily) -> Result<(), CertificateError> {
    if fam.hypothesis_check().theorem_applies {
        Ok(())
    } else {
        Err(CertificateError::TheoremNotApplicable {
            family: fam.kind_name().to_owned(),
        })
    }
}

/// Shared tail of certificate construction: `gens` is already known to be a
/// subset of an applicable family.
fn assemble(
    fam: &LambdaFamily,
    generators: GeneratorSet,
    created_from: Option<Vec<String>>,
) -> Certificate {
    let beta = generators.max_slope();
    // Every generator is a family element, so beta stays strictly below the
    // family's slope supremum and a first element exceeding it must exist.
    let (witness_in_family_index, witness) = fam
        .exceed_slope(&beta)
        .expect("max generator slope lies below the family's slope supremum");
    Certificate {
        family: fam.clone(),
        generators,
        beta,
        witness,
        witness_in_family_index,
        created_from,
    }
}

/// Builds the non-generation certificate for the subring generated by the
/// polynomials `polys` inside the family's subalgebra: extracts the finitely
/// many family monomials sufficient to rebuild every input, takes `beta` as
/// their maximal slope, and selects the first family element whose slope
/// exceeds `beta` as witness.
///
/// Fails when the family's slope supremum is attained (finite families) or
/// when some polynomial is not in the subalgebra to begin with.
pub fn construct_witness<R: CoefficientRing>(
    fam: &LambdaFamily,
    polys: &[SparsePoly<R>],
) -> Result<Certificate, CertificateError> {
    ensure_applicable(fam)?;
    let generators = extract_mstar(polys, fam)?;
    let created_from = Some(polys.iter().map(SparsePoly::render).collect());
    Ok(assemble(fam, generators, created_from))
}

/// Like [`construct_witness`], but starts from the extracted generator set
/// directly. Every generator must be an element of the family.
pub fn construct_witness_from_generators(
    fam: &LambdaFamily,
    generators: &GeneratorSet,
) -> Result<Certificate, CertificateError> {
    ensure_applicable(fam)?;
    for g in generators.generators() {
        if !fam.elements_within(g.a(), g.b()).contains(g) {
            return Err(CertificateError::GeneratorOutsideFamily {
                generator: g.clone(),
                family: fam.kind_name().to_owned(),
            });
        }
    }
    Ok(assemble(fam, generators.clone(), None))
}

/// Whether [`verify_certificate`] should also re-run the membership search
/// to confirm the witness has no factorization over the generators. The
/// slope checks already imply this; the deep check cross-validates the
/// independent membership implementation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeepCheck {
    Skip,
    Run,
}

/// A single verifier check with its outcome and a human-readable account.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of verifying one certificate: the individual checks in the order
/// they ran, and the conjunction of their outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Verifies a certificate using only the claims it carries; total on
/// arbitrary (possibly tampered) certificates. The checks:
///
/// 1. `witness-at-index` — the family's canonical enumeration holds the
///    witness at the claimed index;
/// 2. `generator-slopes-bounded` — every generator slope is at most `beta`;
/// 3. `witness-slope-exceeds` — the witness slope strictly exceeds `beta`;
/// 4. `generators-in-family` — every generator is an element of the family;
/// 5. (only with [`DeepCheck::Run`]) `witness-not-generated` — the
///    membership search finds no factorization of the witness.
///
/// All comparisons are exact cross-multiplications of arbitrary-precision
/// integers; nothing is ever rounded.
pub fn verify_certificate(cert: &Certificate, deep: DeepCheck) -> VerificationReport {
    let mut checks = Vec::new();

    let at_index = cert
        .family
        .occurs_at(&cert.witness_in_family_index, &cert.witness);
    checks.push(CheckResult {
        name: "witness-at-index",
        pass: at_index,
        detail: if at_index {
            format!(
                "enumeration of the {} family has {} at index {}",
                cert.family.kind_name(),
                cert.witness,
                cert.witness_in_family_index
            )
        } else {
            format!(
                "enumeration of the {} family does not have {} at index {}",
                cert.family.kind_name(),
                cert.witness,
                cert.witness_in_family_index
            )
        },
    });

    let offender = cert
        .generators
        .generators()
        .iter()
        .find(|g| g.slope() > cert.beta);
    checks.push(CheckResult {
        name: "generator-slopes-bounded",
        pass: offender.is_none(),
        detail: match offender {
            None => format!(
                "all {} generator slopes are at most {}",
                cert.generators.len(),
                cert.beta
            ),
            Some(g) => format!(
                "generator {} has slope {} exceeding beta {}",
                g,
                g.slope(),
                cert.beta
            ),
        },
    });

    let witness_slope = cert.witness.slope();
    let exceeds = witness_slope > cert.beta;
    checks.push(CheckResult {
        name: "witness-slope-exceeds",
        pass: exceeds,
        detail: if exceeds {
            format!(
                "witness slope {} strictly exceeds beta {}",
                witness_slope, cert.beta
            )
        } else {
            format!(
                "witness slope {} does not strictly exceed beta {}",
                witness_slope, cert.beta
            )
        },
    });

    let stranger = cert
        .generators
        .generators()
        .iter()
        .find(|g| !cert.family.elements_within(g.a(), g.b()).contains(g));
    checks.push(CheckResult {
        name: "generators-in-family",
        pass: stranger.is_none(),
        detail: match stranger {
            None => format!(
                "all {} generators belong to the {} family",
                cert.generators.len(),
                cert.family.kind_name()
            ),
            Some(g) => format!(
                "generator {} does not belong to the {} family",
                g,
                cert.family.kind_name()
            ),
        },
    });

    if deep == DeepCheck::Run {
        let factorization = member(&cert.generators, &Monomial::from(&cert.witness));
        checks.push(CheckResult {
            name: "witness-not-generated",
            pass: factorization.is_none(),
            detail: match factorization {
                None => format!(
                    "membership search confirms {} has no factorization over the generators",
                    cert.witness
                ),
                Some(f) => format!(
                    "witness {} factors as {}",
                    cert.witness,
                    f.render(&cert.generators)
                ),
            },
        });
    }

    let pass = checks.iter().all(|c| c.pass);
    VerificationReport { checks, pass }
}

/// One certificate per prefix of the family's canonical enumeration: the
/// `i`-th certificate (for `i = 1..=k`) takes the first `i` elements as
/// generators and finds a witness beyond them. Witness indices strictly
/// increase along the chain, exhibiting that no finite prefix — and, since
/// any finite generator set is covered by a prefix's slope bound, no finite
/// set at all — generates the whole subalgebra.
pub fn escalation_chain(
    fam: &LambdaFamily,
    k: usize,
) -> Result<Vec<Certificate>, CertificateError> {
    ensure_applicable(fam)?;
    let prefix = fam.enumerate(k);
    let mut chain = Vec::with_capacity(k);
    for i in 1..=prefix.len() {
        let generators = GeneratorSet::new(prefix[..i].iter().cloned())
            .expect("prefix of an enumeration is nonempty");
        chain.push(assemble(fam, generators, None));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Integers;

    fn pair(a: u64, b: u64) -> ExponentPair {
        ExponentPair::new(a, b).unwrap()
    }

    fn int_polys(texts: &[&str]) -> Vec<SparsePoly<Integers>> {
        texts
            .iter()
            .map(|t| SparsePoly::parse(Integers, t).unwrap())
            .collect()
    }

    fn slope(n: u64, d: u64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn vertical_polynomials_yield_first_gap_witness() {
        let polys = int_polys(&["1*x^1*y^0", "1*x^1*y^1", "1*x^1*y^2"]);
        let cert = construct_witness(&LambdaFamily::vertical(), &polys).unwrap();
        assert_eq!(cert.beta(), &slope(2, 1));
        assert_eq!(cert.witness(), &pair(1, 3));
        assert_eq!(cert.witness_in_family_index(), &BigUint::from(3u32));
        assert_eq!(
            cert.created_from().unwrap(),
            &["1*x^1*y^0".to_owned(), "1*x^1*y^1".into(), "1*x^1*y^2".into()]
        );
        let report = verify_certificate(&cert, DeepCheck::Run);
        assert!(report.pass, "{:#?}", report.checks);
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn fibonacci_polynomials_yield_cross_multiplied_witness() {
        let polys = int_polys(&["1*x^1*y^0", "1*x^1*y^1", "1*x^2*y^3", "1*x^5*y^8"]);
        let cert = construct_witness(&LambdaFamily::fibonacci(), &polys).unwrap();
        // beta = 8/5; (13,21) exceeds it because 21*5 = 105 > 104 = 8*13
        assert_eq!(cert.beta(), &slope(8, 5));
        assert_eq!(cert.witness(), &pair(13, 21));
        assert_eq!(cert.witness_in_family_index(), &BigUint::from(4u32));
        assert!(verify_certificate(&cert, DeepCheck::Run).pass);
    }

    #[test]
    fn finite_families_are_rejected() {
        let fam = LambdaFamily::finite(vec![pair(1, 0), pair(1, 1)]).unwrap();
        let err = construct_witness(&fam, &int_polys(&["1*x^1*y^0"])).unwrap_err();
        assert!(matches!(
            err,
            CertificateError::TheoremNotApplicable { .. }
        ));
        assert!(err.to_string().starts_with("theorem not applicable"));
    }

    #[test]
    fn outside_polynomial_is_propagated() {
        let err =
            construct_witness(&LambdaFamily::vertical(), &int_polys(&["1*x^0*y^1"])).unwrap_err();
        assert!(matches!(err, CertificateError::NotInSubalgebra(_)));
    }

    #[test]
    fn generator_entry_point_matches_examples() {
        let gens = GeneratorSet::new([pair(1, 0), pair(1, 1), pair(1, 2)]).unwrap();
        let cert =
            construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap();
        assert_eq!(cert.beta(), &slope(2, 1));
        assert_eq!(cert.witness(), &pair(1, 3));
        assert!(cert.created_from().is_none());

        let lone = GeneratorSet::new([pair(1, 0)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::fibonacci(), &lone).unwrap();
        assert_eq!(cert.beta(), &Slope::zero());
        assert_eq!(cert.witness(), &pair(1, 1));
        assert_eq!(cert.witness_in_family_index(), &BigUint::from(1u32));
    }

    #[test]
    fn foreign_generators_are_rejected() {
        let gens = GeneratorSet::new([pair(2, 1)]).unwrap();
        let err =
            construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap_err();
        assert_eq!(
            err.to_string(),
            "generator (2,1) does not belong to the vertical family"
        );
    }

    #[test]
    fn construction_is_deterministic() {
        let polys = int_polys(&["1*x^1*y^1 + 2*x^1*y^0", "1*x^2*y^3"]);
        let a = construct_witness(&LambdaFamily::fibonacci(), &polys).unwrap();
        let b = construct_witness(&LambdaFamily::fibonacci(), &polys).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_json_pretty(), b.to_json_pretty());
    }

    #[test]
    fn json_round_trip_and_version_tag() {
        let gens = GeneratorSet::new([pair(1, 0), pair(1, 1)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap();
        let json = cert.to_json();
        assert!(json.starts_with(r#"{"version":"nonfg-cert/1","#));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back, DeepCheck::Run).pass);
    }

    #[test]
    fn unknown_versions_are_rejected_distinctly() {
        let gens = GeneratorSet::new([pair(1, 0)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap();
        let json = cert.to_json().replace("nonfg-cert/1", "nonfg-cert/2");
        match Certificate::from_json(&json) {
            Err(CertificateError::UnsupportedVersion { found }) => {
                assert_eq!(found, "nonfg-cert/2")
            }
            other => panic!("expected UnsupportedVersion, got {other:?}"),
        }
        // stray fields are malformed, not merely unsupported
        let json = cert.to_json().replace("\"created_from\":null", "\"created_from\":null,\"extra\":1");
        assert!(matches!(
            Certificate::from_json(&json),
            Err(CertificateError::Json(_))
        ));
    }

    fn tampered(cert: &Certificate, mutate: impl FnOnce(&mut serde_json::Value)) -> Certificate {
        let mut value: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        mutate(&mut value);
        Certificate::from_json(&value.to_string()).unwrap()
    }

    #[test]
    fn tampered_witness_fails_strict_excess() {
        let gens = GeneratorSet::new([pair(1, 0), pair(1, 1), pair(1, 2)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap();
        let bad = tampered(&cert, |v| {
            v["witness"] = serde_json::json!(["1", "2"]);
        });
        let report = verify_certificate(&bad, DeepCheck::Skip);
        assert!(!report.pass);
        // slope 2/1 equals beta 2/1: equality is not strict excess
        assert!(!report.check("witness-slope-exceeds").unwrap().pass);
    }

    #[test]
    fn tampered_beta_fails_strict_excess() {
        let gens = GeneratorSet::new([pair(1, 0), pair(1, 1), pair(1, 2)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::vertical(), &gens).unwrap();
        let bad = tampered(&cert, |v| {
            v["beta"] = serde_json::json!({"numerator": "3", "denominator": "1"});
        });
        let report = verify_certificate(&bad, DeepCheck::Skip);
        assert!(!report.pass);
        assert!(!report.check("witness-slope-exceeds").unwrap().pass);
        // the other slope checks still hold on this tampering
        assert!(report.check("generator-slopes-bounded").unwrap().pass);
        assert!(report.check("generators-in-family").unwrap().pass);
    }

    #[test]
    fn tampered_index_fails_enumeration_check() {
        let gens = GeneratorSet::new([pair(1, 0)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::fibonacci(), &gens).unwrap();
        let bad = tampered(&cert, |v| {
            v["witness_in_family_index"] = serde_json::json!("7");
        });
        let report = verify_certificate(&bad, DeepCheck::Skip);
        assert!(!report.pass);
        assert!(!report.check("witness-at-index").unwrap().pass);
    }

    #[test]
    fn tampered_generators_fail_family_membership() {
        let gens = GeneratorSet::new([pair(1, 0), pair(1, 1)]).unwrap();
        let cert = construct_witness_from_generators(&LambdaFamily::fibonacci(), &gens).unwrap();
        let bad = tampered(&cert, |v| {
            v["generators"] = serde_json::json!([["1", "0"], ["1", "2"]]);
        });
        let report = verify_certificate(&bad, DeepCheck::Skip);
        assert!(!report.pass);
        assert!(!report.check("generators-in-family").unwrap().pass);
    }

    #[test]
    fn escalation_chain_examples() {
        let vertical = escalation_chain(&LambdaFamily::vertical(), 3).unwrap();
        let witnesses: Vec<_> = vertical.iter().map(|c| c.witness().clone()).collect();
        assert_eq!(witnesses, vec![pair(1, 1), pair(1, 2), pair(1, 3)]);

        let fib = escalation_chain(&LambdaFamily::fibonacci(), 3).unwrap();
        let witnesses: Vec<_> = fib.iter().map(|c| c.witness().clone()).collect();
        assert_eq!(witnesses, vec![pair(1, 1), pair(2, 3), pair(5, 8)]);

        let single = escalation_chain(&LambdaFamily::fibonacci(), 1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].generators().generators(), &[pair(1, 0)][..]);
        assert_eq!(single[0].witness(), &pair(1, 1));
    }

    #[test]
    fn escalation_chain_indices_strictly_increase() {
        for fam in [LambdaFamily::vertical(), LambdaFamily::fibonacci()] {
            let chain = escalation_chain(&fam, 6).unwrap();
            assert_eq!(chain.len(), 6);
            for (i, cert) in chain.iter().enumerate() {
                assert!(
                    cert.witness_in_family_index() >= &BigUint::from(i + 1),
                    "witness must lie beyond the generating prefix"
                );
                assert!(verify_certificate(cert, DeepCheck::Skip).pass);
            }
            for w in chain.windows(2) {
                assert!(w[0].witness_in_family_index() < w[1].witness_in_family_index());
            }
        }
    }

    #[test]
    fn escalation_chain_requires_applicable_family() {
        let fam = LambdaFamily::finite(vec![pair(1, 0)]).unwrap();
        assert!(matches!(
            escalation_chain(&fam, 2),
            Err(CertificateError::TheoremNotApplicable { .. })
        ));
        assert!(escalation_chain(&LambdaFamily::vertical(), 0)
            .unwrap()
            .is_empty());
    }
}
