//! Top-level analysis dispatch: deficiency fast path, the height-1 driver for
//! 2-generator 1-relator presentations, and the generic Howie/low-index path.

use crate::coset::rs_presentation;
use crate::error::{Error, Result};
use crate::fox::{default_simplify_cap, howie_large_test};
use crate::intmat::abelian_invariants;
use crate::lowindex::low_index_subgroups;
use crate::onerelator::{height1_largeness_driver, DriverBudget};
use crate::presentation::{Chi, Presentation};
use crate::verdict::{Certificate, Evidence, SubgroupScan, Verdict};

/// Declared candidate set for the generic path: primitive integer vectors
/// with entries in [-2, 2], modulo sign (first nonzero entry positive),
/// validated against the relators, capped at 200.
pub fn chi_candidates(p: &Presentation, cap: usize) -> Vec<Chi> {
    let m = p.gen_count();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut vals = vec![-2i64; m];
    'outer: loop {
        let candidate = || -> Option<Chi> {
            let first_nonzero = vals.iter().find(|&&v| v != 0)?;
            if *first_nonzero < 0 {
                return None;
            }
            let g = vals
                .iter()
                .fold(0i64, |acc, &v| num_integer::Integer::gcd(&acc, &v));
            if g != 1 {
                return None;
            }
            let chi = Chi::new(vals.clone());
            chi.validate(p).ok()?;
            Some(chi)
        }();
        if let Some(chi) = candidate {
            out.push(chi);
            if out.len() >= cap {
                return out;
            }
        }
        // odometer over [-2, 2]^m
        for i in (0..m).rev() {
            if vals[i] < 2 {
                vals[i] += 1;
                continue 'outer;
            }
            vals[i] = -2;
        }
        return out;
    }
}

const CHI_CAP: usize = 200;

/// Analyzes a presentation for largeness, returning a replayable verdict.
pub fn analyze(p: &Presentation, budget: &DriverBudget) -> Result<Verdict> {
    // deficiency fast path, before and after elimination-based simplification
    if p.deficiency() >= 2 {
        return Ok(Verdict::large(
            Certificate::DeficiencyAtLeastTwo {
                presentation: p.clone(),
            },
            Evidence::default(),
        ));
    }
    let simplified = p.simplify(default_simplify_cap());
    if simplified.deficiency() >= 2 {
        return Ok(Verdict::large(
            Certificate::DeficiencyAtLeastTwo {
                presentation: simplified,
            },
            Evidence::default(),
        ));
    }

    // height-1 driver when applicable
    if p.gen_count() == 2 && p.relators().len() == 1 {
        match height1_largeness_driver(p, budget) {
            Ok(v) => return Ok(v),
            Err(Error::HeightNotOne(_)) => {}
            Err(e) => return Err(e),
        }
    }

    // generic path: Howie over the chi candidate set, then a low-index scan
    let mut evidence = Evidence {
        max_index: budget.max_index,
        max_cosets: budget.max_cosets,
        perm_degree: 0,
        ..Evidence::default()
    };
    let candidates = chi_candidates(p, CHI_CAP);
    evidence.chi_set = candidates.iter().map(|c| c.values().to_vec()).collect();
    for chi in &candidates {
        if let Some(cert) = howie_large_test(p, chi)? {
            return Ok(Verdict::large(cert, evidence));
        }
    }
    for table in low_index_subgroups(p, budget.max_index)? {
        if table.index() == 1 {
            continue;
        }
        let rs = rs_presentation(&table)?;
        let derived = rs.presentation.simplify(default_simplify_cap());
        let inv = abelian_invariants(&derived);
        evidence.subgroup_scans.push(SubgroupScan {
            index: table.index(),
            invariants: inv,
        });
        for chi in chi_candidates(&derived, CHI_CAP) {
            match howie_large_test(&derived, &chi) {
                Ok(Some(cert)) => {
                    // lift the certificate through the subgroup
                    let lifted = match cert {
                        Certificate::AlexanderVanishes { chi, prime, .. } => {
                            Certificate::AlexanderVanishes {
                                subgroup_chain: vec![table],
                                derived_presentation: Some(derived),
                                chi,
                                prime,
                            }
                        }
                        other => other,
                    };
                    return Ok(Verdict::large(lifted, evidence));
                }
                Ok(None) => {}
                Err(Error::Resource(msg)) => {
                    evidence
                        .observations
                        .push(format!("skipped a minor computation: {}", msg));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    evidence.observations.push(format!(
        "no vanishing Alexander polynomial found for {} chi candidates and subgroups to index {}",
        candidates.len(),
        budget.max_index
    ));
    Ok(Verdict::unknown(evidence))
}
