//! Verdicts and replayable largeness certificates.

use serde::{Deserialize, Serialize};

use crate::coset::{rs_presentation, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
use crate::fox::{alexander_polynomial, default_simplify_cap};
use crate::intmat::{abelian_invariants, AbelianInvariants};
use crate::presentation::{Chi, Presentation};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Status {
    LargeCertified,
    Unknown,
}

/// Replayable evidence of largeness.
///
/// Certificates embed full replay data (coset tables, χ, prime) so a verdict
/// can be audited without rerunning any search.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum Certificate {
    /// The group admits a presentation of deficiency at least 2, reached from
    /// the input by Tietze moves.
    DeficiencyAtLeastTwo { presentation: Presentation },
    /// The Alexander polynomial of the terminal subgroup vanishes relative to
    /// `chi`: identically over the integers when `prime` is absent, or mod p.
    ///
    /// `subgroup_chain` descends from the input presentation; each table lies
    /// over the presentation derived from the previous entry. When the chain
    /// is nonempty, `derived_presentation` records the (deterministic)
    /// rewritten-and-simplified presentation of the terminal subgroup that
    /// `chi` refers to; otherwise `chi` refers to the input presentation.
    AlexanderVanishes {
        subgroup_chain: Vec<CosetTable>,
        derived_presentation: Option<Presentation>,
        chi: Chi,
        prime: Option<u64>,
    },
    /// A finite-index subgroup whose abelianization needs at least 3
    /// generators; valid only for 2-generator 1-relator height-1 groups.
    HeightOneBigAbelianization {
        subgroup: CosetTable,
        invariants: AbelianInvariants,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DeficiencyAtLeastTwo { .. } => "DeficiencyAtLeastTwo",
            Certificate::AlexanderVanishes { .. } => "AlexanderVanishes",
            Certificate::HeightOneBigAbelianization { .. } => "HeightOneBigAbelianization",
        }
    }
}

/// Scan record for one inspected finite-index subgroup.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SubgroupScan {
    pub index: usize,
    pub invariants: AbelianInvariants,
}

/// Scan record for one transitive finite permutation image.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ImageScan {
    pub degree: usize,
    pub order: usize,
    pub abelian: bool,
    pub metabelian: bool,
    pub metacyclic: bool,
}

/// Search-budget report attached to every verdict.
#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct Evidence {
    pub max_index: usize,
    pub max_cosets: usize,
    pub perm_degree: usize,
    pub chi_set: Vec<Vec<i64>>,
    pub subgroup_scans: Vec<SubgroupScan>,
    pub image_scans: Vec<ImageScan>,
    pub observations: Vec<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn large(certificate: Certificate, evidence: Evidence) -> Self {
        Verdict {
            status: Status::LargeCertified,
            certificate: Some(certificate),
            evidence,
        }
    }

    pub fn unknown(evidence: Evidence) -> Self {
        Verdict {
            status: Status::Unknown,
            certificate: None,
            evidence,
        }
    }
}

/// Outcome of replaying a certificate; `ok` is the verdict and `reasons`
/// explains any failure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub ok: bool,
    pub reasons: Vec<String>,
}

impl CertificateCheck {
    fn pass() -> Self {
        CertificateCheck {
            ok: true,
            reasons: Vec::new(),
        }
    }

    fn fail(reason: String) -> Self {
        CertificateCheck {
            ok: false,
            reasons: vec![reason],
        }
    }
}

/// Independently replays a certificate against the input presentation: every
/// recorded table re-verifies by coset enumeration and the terminal condition
/// (deficiency / zero Δ / abelian invariants) is recomputed from scratch.
pub fn check_certificate(p: &Presentation, cert: &Certificate) -> CertificateCheck {
    match cert {
        Certificate::DeficiencyAtLeastTwo { presentation } => {
            if presentation.deficiency() < 2 {
                return CertificateCheck::fail(format!(
                    "recorded presentation has deficiency {}",
                    presentation.deficiency()
                ));
            }
            if presentation != p
                && abelian_invariants(presentation) != abelian_invariants(p)
            {
                return CertificateCheck::fail(
                    "recorded presentation has a different abelianization than the input".into(),
                );
            }
            CertificateCheck::pass()
        }
        Certificate::AlexanderVanishes {
            subgroup_chain,
            derived_presentation,
            chi,
            prime,
        } => {
            let mut current = p.clone();
            for (level, table) in subgroup_chain.iter().enumerate() {
                if table.presentation() != &current {
                    return CertificateCheck::fail(format!(
                        "chain level {}: table presentation does not match the derived one",
                        level
                    ));
                }
                if let Err(e) = table.validate() {
                    return CertificateCheck::fail(format!(
                        "chain level {}: invalid table: {}",
                        level, e
                    ));
                }
                let re = match todd_coxeter(
                    &current,
                    table.subgroup_generators(),
                    DEFAULT_MAX_COSETS,
                ) {
                    Ok(t) => t,
                    Err(e) => {
                        return CertificateCheck::fail(format!(
                            "chain level {}: re-enumeration failed: {}",
                            level, e
                        ))
                    }
                };
                if &re != table {
                    return CertificateCheck::fail(format!(
                        "chain level {}: re-enumeration disagrees with the recorded table",
                        level
                    ));
                }
                let rs = match rs_presentation(table) {
                    Ok(rs) => rs,
                    Err(e) => {
                        return CertificateCheck::fail(format!(
                            "chain level {}: rewriting failed: {}",
                            level, e
                        ))
                    }
                };
                current = rs.presentation.simplify(default_simplify_cap());
            }
            if !subgroup_chain.is_empty() {
                match derived_presentation {
                    Some(dp) if dp == &current => {}
                    Some(_) => {
                        return CertificateCheck::fail(
                            "derived presentation does not replay identically".into(),
                        )
                    }
                    None => {
                        return CertificateCheck::fail(
                            "certificate with subgroup chain lacks the derived presentation".into(),
                        )
                    }
                }
            }
            if let Err(e) = chi.validate(&current) {
                return CertificateCheck::fail(format!("chi invalid on terminal group: {}", e));
            }
            if !chi.is_surjective() {
                return CertificateCheck::fail("chi is not surjective".into());
            }
            let delta = match alexander_polynomial(&current, chi) {
                Ok(d) => d,
                Err(e) => return CertificateCheck::fail(format!("Δ recomputation failed: {}", e)),
            };
            match prime {
                None => {
                    if delta.is_zero() {
                        CertificateCheck::pass()
                    } else {
                        CertificateCheck::fail(format!("Δ = {} is not identically zero", delta))
                    }
                }
                Some(pr) => {
                    if !is_prime_u64(*pr) {
                        return CertificateCheck::fail(format!("{} is not prime", pr));
                    }
                    if delta.reduce_mod(*pr).is_zero() {
                        CertificateCheck::pass()
                    } else {
                        CertificateCheck::fail(format!(
                            "Δ = {} does not vanish mod {}",
                            delta, pr
                        ))
                    }
                }
            }
        }
        Certificate::HeightOneBigAbelianization {
            subgroup,
            invariants,
        } => {
            if p.gen_count() != 2 || p.relators().len() != 1 {
                return CertificateCheck::fail(
                    "height-1 certificate requires a 2-generator 1-relator presentation".into(),
                );
            }
            match crate::onerelator::relator_height_candidates(p) {
                Ok(hs) if hs.iter().any(|h| h.height == 1) => {}
                _ => {
                    return CertificateCheck::fail(
                        "relator is not of height 1 in any computed zero-sum basis".into(),
                    )
                }
            }
            if subgroup.presentation() != p {
                return CertificateCheck::fail(
                    "subgroup table is not over the input presentation".into(),
                );
            }
            if let Err(e) = subgroup.validate() {
                return CertificateCheck::fail(format!("invalid table: {}", e));
            }
            let re = match todd_coxeter(p, subgroup.subgroup_generators(), DEFAULT_MAX_COSETS) {
                Ok(t) => t,
                Err(e) => return CertificateCheck::fail(format!("re-enumeration failed: {}", e)),
            };
            if &re != subgroup {
                return CertificateCheck::fail(
                    "re-enumeration disagrees with the recorded table".into(),
                );
            }
            let rs = match rs_presentation(subgroup) {
                Ok(rs) => rs,
                Err(e) => return CertificateCheck::fail(format!("rewriting failed: {}", e)),
            };
            let inv = abelian_invariants(&rs.presentation);
            if &inv != invariants {
                return CertificateCheck::fail(format!(
                    "recomputed invariants {} differ from recorded {}",
                    inv, invariants
                ));
            }
            if inv.min_generators() < 3 {
                return CertificateCheck::fail(format!(
                    "abelianization needs only {} generators",
                    inv.min_generators()
                ));
            }
            CertificateCheck::pass()
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
