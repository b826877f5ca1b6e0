//! Serializable evidence for positive verdicts, and its replay.
//!
//! Replay never searches: it recomputes the claimed finite sets and asks the
//! base system (or integer arithmetic) a bounded number of questions.

use std::fmt;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forcing::{box_expansion, chain};
use crate::group::{
    DivisibilityGroup, Elem, FinSubset, GroupDescriptor, PreorderedGroup, ZdElement, ZdGroup,
};
use crate::number_ring::FieldElement;
use crate::regularisation::{
    prufer_check_targets, replay_positive, replay_separator, sign_vectors, signed_steps,
};
use crate::systems::{meet_leq, DedekindSystem, MinimalSystem, SystemOfIdeals};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: DeserializeOwned + Ord"))]
pub enum ForceCertificate<E> {
    /// Nested `T_{x_1} ... T_{x_n}` with one depth per level.
    T {
        x: Vec<E>,
        k: Vec<usize>,
        chain: FinSubset<E>,
        base_system: String,
    },
    /// `U_x`: depth and chain for `T_x` then for `T_{-x}`.
    U {
        x: E,
        k: [usize; 2],
        chain: [FinSubset<E>; 2],
        base_system: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorenzenBranch {
    pub signs: Vec<i8>,
    pub ks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: DeserializeOwned + Ord"))]
pub struct LorenzenCertificate<E> {
    pub xs: Vec<E>,
    pub branches: Vec<LorenzenBranch>,
    pub base_system: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: DeserializeOwned + Ord"))]
pub enum Certificate<E> {
    /// The base system proves the claim as is.
    Base {
        base_system: String,
    },
    Force(ForceCertificate<E>),
    Lorenzen(LorenzenCertificate<E>),
    Prufer {
        #[serde(rename = "B")]
        witness: FinSubset<E>,
    },
    /// Nonnegative integers with `sum n_i c_i + sum m_j p_j = 0`, `n != 0`.
    Cone {
        #[serde(with = "crate::json::int_vec")]
        n: Vec<BigInt>,
        #[serde(with = "crate::json::int_vec")]
        m: Vec<BigInt>,
    },
    /// A refutation: `lambda(p_j) >= 0` and `lambda(c_i) > 0`.
    Separator {
        #[serde(with = "crate::json::int_vec")]
        lambda: Vec<BigInt>,
    },
}

impl<E> Certificate<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Base { .. } => "base",
            Certificate::Force(ForceCertificate::T { .. }) => "force/T",
            Certificate::Force(ForceCertificate::U { .. }) => "force/U",
            Certificate::Lorenzen(_) => "lorenzen",
            Certificate::Prufer { .. } => "prufer",
            Certificate::Cone { .. } => "cone",
            Certificate::Separator { .. } => "separator",
        }
    }

    /// Separators certify refutations; everything else certifies a claim.
    pub fn is_refutation(&self) -> bool {
        matches!(self, Certificate::Separator { .. })
    }
}

impl<E> From<ForceCertificate<E>> for Certificate<E> {
    fn from(c: ForceCertificate<E>) -> Self {
        Certificate::Force(c)
    }
}

impl<E> From<LorenzenCertificate<E>> for Certificate<E> {
    fn from(c: LorenzenCertificate<E>) -> Self {
        Certificate::Lorenzen(c)
    }
}

/// `A |> t` for every `t` in `b`. Entailment claims `A |- B` are stated as
/// `A - B |> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: DeserializeOwned + Ord"))]
#[serde(deny_unknown_fields)]
pub struct Claim<E> {
    #[serde(rename = "A")]
    pub a: FinSubset<E>,
    pub b: FinSubset<E>,
}

/// A self-contained certificate document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: DeserializeOwned + Ord"))]
pub struct CertificateFile<E> {
    pub group: GroupDescriptor,
    pub system: String,
    pub claim: Claim<E>,
    pub certificate: Certificate<E>,
}

/// Why a certificate failed replay, naming the failing part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub part: String,
    pub reason: String,
}

impl Rejection {
    fn new(part: impl Into<String>, reason: impl Into<String>) -> Self {
        Rejection {
            part: part.into(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.part, self.reason)
    }
}

fn check(
    ok: bool,
    part: &str,
    reason: impl FnOnce() -> String,
) -> std::result::Result<(), Rejection> {
    if ok {
        Ok(())
    } else {
        Err(Rejection::new(part, reason()))
    }
}

fn signs_label(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| if s > 0 { '+' } else { '-' })
        .collect()
}

/// Replays everything except cone and separator payloads against `s`.
pub fn verify_with_system<S: SystemOfIdeals + ?Sized>(
    s: &S,
    claim: &Claim<Elem<S::Group>>,
    cert: &Certificate<Elem<S::Group>>,
) -> std::result::Result<(), Rejection> {
    let g = s.group();
    let a = &claim.a;
    let targets = &claim.b;
    let system_matches = |name: &str| {
        check(name == s.name(), "base_system", || {
            format!(
                "certificate names `{name}` but the claim is about `{}`",
                s.name()
            )
        })
    };
    match cert {
        Certificate::Base { base_system } => {
            system_matches(base_system)?;
            check(meet_leq(s, a, targets), "base", || {
                format!("{} does not prove {a} |> {targets}", s.name())
            })
        }
        Certificate::Force(ForceCertificate::T {
            x,
            k,
            chain: claimed,
            base_system,
        }) => {
            system_matches(base_system)?;
            check(!x.is_empty() && x.len() == k.len(), "T", || {
                "need one depth per forcing element".into()
            })?;
            let expanded = box_expansion(g, a, x, k);
            check(expanded == *claimed, "T.chain", || {
                format!("expected {expanded}")
            })?;
            check(meet_leq(s, claimed, targets), "T", || {
                format!("{} does not prove {claimed} |> {targets}", s.name())
            })
        }
        Certificate::Force(ForceCertificate::U {
            x,
            k,
            chain: claimed,
            base_system,
        }) => {
            system_matches(base_system)?;
            for (i, (step, label)) in [(x.clone(), "+"), (g.neg(x), "-")].into_iter().enumerate() {
                let part = format!("U branch {label}");
                let expanded = chain(g, a, &step, k[i]);
                check(expanded == claimed[i], &part, || {
                    format!("chain mismatch, expected {expanded}")
                })?;
                check(meet_leq(s, &claimed[i], targets), &part, || {
                    format!(
                        "depth {} chain {} does not prove {targets}",
                        k[i], claimed[i]
                    )
                })?;
            }
            Ok(())
        }
        Certificate::Lorenzen(LorenzenCertificate {
            xs,
            branches,
            base_system,
        }) => {
            system_matches(base_system)?;
            let expected = sign_vectors(xs.len());
            let mut listed: Vec<&Vec<i8>> = branches.iter().map(|b| &b.signs).collect();
            listed.sort();
            let mut wanted: Vec<&Vec<i8>> = expected.iter().collect();
            wanted.sort();
            check(listed == wanted, "lorenzen", || {
                format!(
                    "need exactly one branch per sign vector of length {}",
                    xs.len()
                )
            })?;
            for br in branches {
                let part = format!("lorenzen branch {}", signs_label(&br.signs));
                check(br.ks.len() == xs.len(), &part, || {
                    "one depth per forcing element".into()
                })?;
                let steps = signed_steps(g, xs, &br.signs);
                let expanded = box_expansion(g, a, &steps, &br.ks);
                check(meet_leq(s, &expanded, targets), &part, || {
                    format!(
                        "depths {:?} give {expanded}, which does not prove {targets}",
                        br.ks
                    )
                })?;
            }
            Ok(())
        }
        Certificate::Prufer { witness } => check(
            prufer_check_targets(s, a, targets, witness),
            "prufer",
            || format!("(A - t) + {witness} is not <= {witness} for some target"),
        ),
        Certificate::Cone { .. } | Certificate::Separator { .. } => Err(Rejection::new(
            cert.kind(),
            "cone certificates need a Z^d group",
        )),
    }
}

/// Replays a cone or separator payload for the claim `C |> 0`.
pub fn verify_cone(
    g: &ZdGroup,
    claim: &Claim<ZdElement>,
    cert: &Certificate<ZdElement>,
) -> std::result::Result<(), Rejection> {
    let zero = FinSubset::singleton(g.zero());
    check(claim.b == zero, cert.kind(), || {
        "cone certificates are stated for the target 0".into()
    })?;
    match cert {
        Certificate::Cone { n, m } => check(replay_positive(g, &claim.a, n, m), "cone", || {
            "sum n_i c_i + sum m_j p_j is not 0 with n, m >= 0 and n != 0".into()
        }),
        Certificate::Separator { lambda } => {
            check(replay_separator(g, &claim.a, lambda), "separator", || {
                "lambda is not >= 0 on the generators and > 0 on every element".into()
            })
        }
        _ => unreachable!("only cone payloads are routed here"),
    }
}

/// Outcome of verifying a certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub valid: bool,
    pub certificate: String,
    /// `true` when the certificate asserts a refutation rather than a claim.
    pub refutation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejection: Option<Rejection>,
}

fn outcome<E>(cert: &Certificate<E>, r: std::result::Result<(), Rejection>) -> VerifyOutcome {
    VerifyOutcome {
        valid: r.is_ok(),
        certificate: cert.kind().to_string(),
        refutation: cert.is_refutation(),
        rejection: r.err(),
    }
}

fn verify_zd(file: &CertificateFile<ZdElement>) -> Result<VerifyOutcome> {
    let g = match file.group.build()? {
        crate::group::AnyGroup::Zd(g) => g,
        crate::group::AnyGroup::Divisibility(_) => {
            unreachable!("descriptor kind checked by caller")
        }
    };
    g.validate_subset(&file.claim.a)?;
    g.validate_subset(&file.claim.b)?;
    let r = match &file.certificate {
        c @ (Certificate::Cone { .. } | Certificate::Separator { .. }) => {
            verify_cone(&g, &file.claim, c)
        }
        c => match file.system.as_str() {
            "sm" => verify_with_system(&MinimalSystem::new(g), &file.claim, c),
            other => {
                return Err(Error::UnknownSystem(format!(
                    "{other} is not available on Z^d"
                )))
            }
        },
    };
    Ok(outcome(&file.certificate, r))
}

fn verify_field(file: &CertificateFile<FieldElement>) -> Result<VerifyOutcome> {
    let g = match file.group.build()? {
        crate::group::AnyGroup::Divisibility(g) => g,
        crate::group::AnyGroup::Zd(_) => unreachable!("descriptor kind checked by caller"),
    };
    g.validate_subset(&file.claim.a)?;
    g.validate_subset(&file.claim.b)?;
    let r = match file.system.as_str() {
        "sm" => verify_with_system(&MinimalSystem::new(g), &file.claim, &file.certificate),
        "dedekind" => verify_with_system(&DedekindSystem::new(g), &file.claim, &file.certificate),
        other => return Err(Error::UnknownSystem(other.to_string())),
    };
    Ok(outcome(&file.certificate, r))
}

/// Parses and replays a certificate document. Parse and schema problems are
/// errors; a well-formed certificate that fails replay is an invalid outcome.
pub fn verify_json(text: &str) -> Result<VerifyOutcome> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let group_value = value
        .get("group")
        .ok_or_else(|| Error::Parse("missing `group`".into()))?;
    let group: GroupDescriptor = serde_json::from_value(group_value.clone())
        .map_err(|e| Error::Parse(format!("group: {e}")))?;
    match group {
        GroupDescriptor::ConeZd { .. } | GroupDescriptor::DiscreteZ => {
            let file: CertificateFile<ZdElement> =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            verify_zd(&file)
        }
        GroupDescriptor::Divisibility { .. } => {
            let file: CertificateFile<FieldElement> =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            verify_field(&file)
        }
    }
}

/// Helper for building documents from a group and a system name.
pub fn certificate_file<G: PreorderedGroup>(
    g: &G,
    system: &str,
    a: FinSubset<Elem<G>>,
    b: FinSubset<Elem<G>>,
    certificate: Certificate<Elem<G>>,
) -> CertificateFile<Elem<G>> {
    CertificateFile {
        group: g.descriptor(),
        system: system.to_string(),
        claim: Claim { a, b },
        certificate,
    }
}

/// Keeps the divisibility group type reachable for downstream generic code.
pub type FieldCertificateFile = CertificateFile<Elem<DivisibilityGroup>>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::{u_force, Budget, Verdict};

    fn int(v: i64) -> ZdElement {
        ZdElement::scalar(v)
    }

    fn set(v: &[i64]) -> FinSubset<ZdElement> {
        FinSubset::new(v.iter().map(|&x| int(x))).unwrap()
    }

    fn exa1_u_file() -> CertificateFile<ZdElement> {
        let g = ZdGroup::cone(1, vec![int(60)]).unwrap();
        let s = MinimalSystem::new(g.clone());
        let Verdict::Holds(c) = u_force(&s, &int(1), &set(&[-1]), &set(&[0]), &Budget::new(64, 1))
        else {
            panic!("holds");
        };
        certificate_file(&g, "sm", set(&[-1]), set(&[0]), c.into())
    }

    #[test]
    fn u_certificate_round_trip() {
        let file = exa1_u_file();
        let json = serde_json::to_string_pretty(&file).unwrap();
        assert!(json.contains("\"type\": \"force\""));
        assert!(json.contains("\"op\": \"U\""));
        let out = verify_json(&json).unwrap();
        assert!(out.valid, "{out:?}");
    }

    #[test]
    fn tampered_depth_is_rejected() {
        let mut file = exa1_u_file();
        if let Certificate::Force(ForceCertificate::U { k, chain: ch, .. }) = &mut file.certificate
        {
            k[0] = 58;
            let g = ZdGroup::cone(1, vec![int(60)]).unwrap();
            ch[0] = chain(&g, &set(&[-1]), &int(1), 58);
        }
        let out = verify_json(&serde_json::to_string(&file).unwrap()).unwrap();
        assert!(!out.valid);
        assert_eq!(out.rejection.unwrap().part, "U branch +");
    }

    #[test]
    fn malformed_documents() {
        assert!(verify_json("").is_err());
        assert!(verify_json("{}").is_err());
        assert!(verify_json(r#"{"group":{"kind":"discrete-z"},"system":"sm"}"#).is_err());
    }

    #[test]
    fn cone_certificate() {
        let g = ZdGroup::cone(1, vec![int(60)]).unwrap();
        let file = certificate_file(
            &g,
            "sm",
            set(&[-1]),
            set(&[0]),
            Certificate::Cone {
                n: vec![60.into()],
                m: vec![1.into()],
            },
        );
        assert!(
            verify_json(&serde_json::to_string(&file).unwrap())
                .unwrap()
                .valid
        );
        let bad = CertificateFile {
            certificate: Certificate::Cone {
                n: vec![59.into()],
                m: vec![1.into()],
            },
            ..file
        };
        assert!(
            !verify_json(&serde_json::to_string(&bad).unwrap())
                .unwrap()
                .valid
        );
    }
}
