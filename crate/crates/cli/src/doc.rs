//! JSON documents for verdicts and reports.

use largeness_core::coset::CosetTable;
use largeness_core::error::{Error, Result};
use largeness_core::intmat::AbelianInvariants;
use largeness_core::presentation::{Chi, Presentation};
use largeness_core::verdict::{Certificate, Evidence, ImageScan, Status, Verdict};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct Versions {
    pub largeness: String,
    pub format: u32,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            largeness: env!("CARGO_PKG_VERSION").to_string(),
            format: FORMAT_VERSION,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CertDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_tables: Option<Vec<CosetTable>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_presentation: Option<Presentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian_invariants: Option<AbelianInvariants>,
}

impl CertDoc {
    pub fn from_certificate(cert: &Certificate) -> CertDoc {
        match cert {
            Certificate::DeficiencyAtLeastTwo { presentation } => CertDoc {
                kind: cert.kind().to_string(),
                presentation: Some(presentation.clone()),
                chi: None,
                prime: None,
                subgroup_tables: None,
                derived_presentation: None,
                abelian_invariants: None,
            },
            Certificate::AlexanderVanishes {
                subgroup_chain,
                derived_presentation,
                chi,
                prime,
            } => CertDoc {
                kind: cert.kind().to_string(),
                presentation: None,
                chi: Some(chi.values().to_vec()),
                prime: *prime,
                subgroup_tables: Some(subgroup_chain.clone()),
                derived_presentation: derived_presentation.clone(),
                abelian_invariants: None,
            },
            Certificate::HeightOneBigAbelianization {
                subgroup,
                invariants,
            } => CertDoc {
                kind: cert.kind().to_string(),
                presentation: None,
                chi: None,
                prime: None,
                subgroup_tables: Some(vec![subgroup.clone()]),
                derived_presentation: None,
                abelian_invariants: Some(invariants.clone()),
            },
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        match self.kind.as_str() {
            "DeficiencyAtLeastTwo" => Ok(Certificate::DeficiencyAtLeastTwo {
                presentation: self
                    .presentation
                    .clone()
                    .ok_or_else(|| Error::Invalid("missing presentation".into()))?,
            }),
            "AlexanderVanishes" => Ok(Certificate::AlexanderVanishes {
                subgroup_chain: self.subgroup_tables.clone().unwrap_or_default(),
                derived_presentation: self.derived_presentation.clone(),
                chi: Chi::new(
                    self.chi
                        .clone()
                        .ok_or_else(|| Error::Invalid("missing chi".into()))?,
                ),
                prime: self.prime,
            }),
            "HeightOneBigAbelianization" => {
                let tables = self
                    .subgroup_tables
                    .clone()
                    .ok_or_else(|| Error::Invalid("missing subgroup table".into()))?;
                let subgroup = tables
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Invalid("empty subgroup table list".into()))?;
                Ok(Certificate::HeightOneBigAbelianization {
                    subgroup,
                    invariants: self
                        .abelian_invariants
                        .clone()
                        .ok_or_else(|| Error::Invalid("missing abelian invariants".into()))?,
                })
            }
            k => Err(Error::Invalid(format!("unknown certificate kind `{}`", k))),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SubgroupScanDoc {
    pub index: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ScansDoc {
    pub subgroups: Vec<SubgroupScanDoc>,
    pub images: Vec<ImageScan>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EvidenceDoc {
    pub max_index: usize,
    pub max_cosets: usize,
    pub perm_degree: usize,
    pub chi_set: Vec<Vec<i64>>,
    pub scans: ScansDoc,
    pub observations: Vec<String>,
}

impl EvidenceDoc {
    pub fn from_evidence(e: &Evidence) -> EvidenceDoc {
        EvidenceDoc {
            max_index: e.max_index,
            max_cosets: e.max_cosets,
            perm_degree: e.perm_degree,
            chi_set: e.chi_set.clone(),
            scans: ScansDoc {
                subgroups: e
                    .subgroup_scans
                    .iter()
                    .map(|s| SubgroupScanDoc {
                        index: s.index,
                        rank: s.invariants.rank,
                        torsion: s.invariants.torsion.iter().map(|t| t.to_string()).collect(),
                    })
                    .collect(),
                images: e.image_scans.clone(),
            },
            observations: e.observations.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct VerdictDoc {
    pub status: String,
    pub certificate: Option<CertDoc>,
    pub evidence: EvidenceDoc,
    pub seed: Option<u64>,
    pub versions: Versions,
    pub input_presentation: String,
}

impl VerdictDoc {
    pub fn new(p: &Presentation, v: &Verdict, seed: Option<u64>) -> VerdictDoc {
        VerdictDoc {
            status: match v.status {
                Status::LargeCertified => "LargeCertified".to_string(),
                Status::Unknown => "Unknown".to_string(),
            },
            certificate: v.certificate.as_ref().map(CertDoc::from_certificate),
            evidence: EvidenceDoc::from_evidence(&v.evidence),
            seed,
            versions: Versions::current(),
            input_presentation: largeness_core::text::presentation_to_string(p),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CensusReport {
    pub length: usize,
    pub bound: i64,
    pub samples: usize,
    pub certified_large: usize,
    pub unknown: usize,
    pub certified_large_fraction: f64,
    pub unknown_fraction: f64,
    pub certificate_histogram: std::collections::BTreeMap<String, usize>,
    pub seed: u64,
    pub versions: Versions,
}
