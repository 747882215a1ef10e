//! Height machinery for 2-generator 1-relator presentations, the height-1
//! largeness driver, HNN and Higman constructions, finite-image scanning and
//! the brute-force order-lemma checker.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coset::rs_presentation;
use crate::error::{Error, Result};
use crate::fox::smallest_prime_factor;
use crate::intmat::abelian_invariants;
use crate::laurent::LaurentPoly;
use crate::lowindex::low_index_subgroups;
use crate::perm::{perm_compose, perm_order, Perm, PermGroup};
use crate::presentation::{Chi, Presentation};
use crate::verdict::{Certificate, Evidence, ImageScan, SubgroupScan, Verdict};
use crate::word::Word;

/// A zero-exponent-sum word rewritten over the letters `a_i = t^i a t^-i`,
/// normalized so the smallest subscript is 0 and the representative is
/// canonical under cyclic permutation and inversion.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HeightData {
    /// Canonical sequence of `(subscript, exponent)` runs.
    pub rewritten: Vec<(i64, i64)>,
    pub min_sub: i64,
    pub max_sub: i64,
    pub height: i64,
    /// Defined when `height == 1`: the relator has the form
    /// `t a^i1 t^-1 a^i2 ... t a^i(2k-1) t^-1 a^i(2k)`.
    pub length_k: Option<usize>,
    pub exponents: Option<Vec<i64>>,
}

fn exp_key(e: i64) -> (bool, i64) {
    (e < 0, e.abs())
}

fn seq_key(seq: &[(i64, i64)]) -> Vec<(i64, bool, i64)> {
    seq.iter()
        .map(|&(s, e)| {
            let (neg, mag) = exp_key(e);
            (s, neg, mag)
        })
        .collect()
}

fn shift_to_zero(seq: &mut [(i64, i64)]) {
    if let Some(min) = seq.iter().map(|&(s, _)| s).min() {
        for p in seq.iter_mut() {
            p.0 -= min;
        }
    }
}

/// Rewrites a cyclically reduced word with zero `t`-exponent sum over the
/// letters `a_i = t^i a t^-i`.
pub fn moldavanskii_rewrite(w: &Word, a: usize, t: usize) -> Result<HeightData> {
    let ts = w.exponent_sum(t);
    if ts != 0 {
        return Err(Error::NonzeroStableSum(ts));
    }
    for &(g, _) in w.runs() {
        if g != a && g != t {
            return Err(Error::Invalid(
                "word must involve only the two distinguished generators".into(),
            ));
        }
    }
    let (core, _) = w.cyclic_reduce();
    let mut seq: Vec<(i64, i64)> = Vec::new();
    let mut level: i64 = 0;
    for &(g, e) in core.runs() {
        if g == t {
            level += e;
        } else {
            seq.push((level, e));
        }
    }
    debug_assert_eq!(level, 0);
    if seq.is_empty() {
        return Ok(HeightData {
            rewritten: Vec::new(),
            min_sub: 0,
            max_sub: 0,
            height: 0,
            length_k: None,
            exponents: None,
        });
    }
    let height = seq.iter().map(|&(s, _)| s).max().unwrap()
        - seq.iter().map(|&(s, _)| s).min().unwrap();

    // candidates: all rotations of the run sequence and of its inverse,
    // subscripts shifted so the minimum is 0
    let mut candidates: Vec<Vec<(i64, i64)>> = Vec::new();
    let r = seq.len();
    let inverse: Vec<(i64, i64)> = seq.iter().rev().map(|&(s, e)| (s, -e)).collect();
    for base in [&seq, &inverse] {
        for k in 0..r {
            let mut rot: Vec<(i64, i64)> = base[k..].iter().chain(&base[..k]).copied().collect();
            shift_to_zero(&mut rot);
            candidates.push(rot);
        }
    }
    if height == 1 {
        // Eq.-(2) form: subscripts alternate 1, 0 starting with 1
        candidates.retain(|c| c[0].0 == 1);
    }
    let canonical = candidates
        .into_iter()
        .min_by_key(|c| seq_key(c))
        .expect("height-1 cyclic words always admit a subscript-1 start");

    let (length_k, exponents) = if height == 1 {
        debug_assert!(canonical.len() % 2 == 0);
        debug_assert!(canonical
            .iter()
            .enumerate()
            .all(|(i, &(s, _))| s == i64::from(i % 2 == 0)));
        (
            Some(canonical.len() / 2),
            Some(canonical.iter().map(|&(_, e)| e).collect()),
        )
    } else {
        (None, None)
    };
    Ok(HeightData {
        min_sub: 0,
        max_sub: height,
        height,
        length_k,
        exponents,
        rewritten: canonical,
    })
}

/// A basis of the 2-generator free group in which the relator has zero
/// exponent sum in the distinguished letter.
#[derive(Clone, Debug)]
pub struct ZeroSumCandidate {
    /// Rebased presentation (same group).
    pub presentation: Presentation,
    /// Generator playing `t` in the rebased presentation.
    pub t_index: usize,
    /// The corresponding homomorphism onto Z on the *original* generators.
    pub chi: Chi,
    pub height: HeightData,
}

/// Rebases a 2-generator 1-relator presentation so the relator has zero
/// exponent sum in one letter. With first Betti number 2 both letters
/// qualify and both candidates are returned; with Betti number 1 a single
/// Euclid-derived rebase is returned.
pub fn zero_exponent_basis(p: &Presentation) -> Result<Vec<ZeroSumCandidate>> {
    if p.gen_count() != 2 || p.relators().len() != 1 {
        return Err(Error::Invalid(
            "height analysis requires a 2-generator 1-relator presentation".into(),
        ));
    }
    let r = &p.relators()[0];
    if r.is_identity() {
        return Err(Error::Invalid("empty relator".into()));
    }
    let sx = r.exponent_sum(0);
    let sy = r.exponent_sum(1);
    let mut out = Vec::new();
    if sx == 0 && sy == 0 {
        for t_index in [0usize, 1usize] {
            let a = 1 - t_index;
            let mut chi_vals = vec![0i64; 2];
            chi_vals[t_index] = 1;
            let chi = Chi::new(chi_vals);
            let height = moldavanskii_rewrite(r, a, t_index)?;
            out.push(ZeroSumCandidate {
                presentation: p.clone(),
                t_index,
                chi,
                height,
            });
        }
        return Ok(out);
    }
    // primitive chi orthogonal to the exponent vector, normalized by Euclid
    let g = num_integer::Integer::gcd(&sx, &sy);
    let chi = Chi::new(vec![sy / g, -sx / g]);
    let (q, t_index, chi2, _) = p.abelianized_chi_basis(&chi)?;
    debug_assert_eq!(chi2.values()[t_index], 1);
    let a = 1 - t_index;
    let height = moldavanskii_rewrite(&q.relators()[0], a, t_index)?;
    out.push(ZeroSumCandidate {
        presentation: q,
        t_index,
        chi,
        height,
    });
    Ok(out)
}

/// Heights of the relator over each computed zero-sum basis.
pub fn relator_height_candidates(p: &Presentation) -> Result<Vec<HeightData>> {
    Ok(zero_exponent_basis(p)?.into_iter().map(|c| c.height).collect())
}

/// Closed-form Alexander polynomial of a height-1 relator:
/// `(i1 + i3 + ... + i(2k-1)) t + (i2 + ... + i(2k))`, canonical.
pub fn height1_alexander(h: &HeightData) -> Result<LaurentPoly> {
    if h.height != 1 {
        return Err(Error::HeightNotOne(h.height));
    }
    let exps = h.exponents.as_ref().expect("height 1 carries exponents");
    let c: i64 = exps.iter().step_by(2).sum();
    let d: i64 = exps.iter().skip(1).step_by(2).sum();
    let mut out = LaurentPoly::zero();
    out.add_term(1, BigInt::from(c));
    out.add_term(0, BigInt::from(d));
    Ok(out.canonical())
}

/// Budgets for the largeness drivers.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DriverBudget {
    pub max_index: usize,
    pub max_cosets: usize,
    pub max_perm_degree: usize,
}

impl Default for DriverBudget {
    fn default() -> Self {
        DriverBudget {
            max_index: 8,
            max_cosets: crate::coset::DEFAULT_MAX_COSETS,
            max_perm_degree: 5,
        }
    }
}

/// Largeness driver for height-1 presentations.
///
/// Pipeline: content test on the closed-form Alexander polynomial (Howie
/// certificate), then a low-index scan for a subgroup whose abelianization
/// needs at least 3 generators, otherwise Unknown with scan evidence. The
/// driver never claims non-largeness.
pub fn height1_largeness_driver(p: &Presentation, budget: &DriverBudget) -> Result<Verdict> {
    let candidates = zero_exponent_basis(p)?;
    let candidate = candidates
        .iter()
        .find(|c| c.height.height == 1)
        .ok_or_else(|| {
            Error::HeightNotOne(candidates.iter().map(|c| c.height.height).min().unwrap_or(0))
        })?;
    let mut evidence = Evidence {
        max_index: budget.max_index,
        max_cosets: budget.max_cosets,
        perm_degree: budget.max_perm_degree,
        chi_set: vec![candidate.chi.values().to_vec()],
        ..Evidence::default()
    };

    // (i) content test on the closed form
    let delta = height1_alexander(&candidate.height)?;
    if delta.is_zero() {
        evidence
            .observations
            .push("alexander polynomial identically zero".into());
        return Ok(Verdict::large(
            Certificate::AlexanderVanishes {
                subgroup_chain: Vec::new(),
                derived_presentation: None,
                chi: candidate.chi.clone(),
                prime: None,
            },
            evidence,
        ));
    }
    let content = delta.content();
    if let Some(prime) = smallest_prime_factor(&content) {
        evidence
            .observations
            .push(format!("alexander polynomial {} has content {}", delta, content));
        return Ok(Verdict::large(
            Certificate::AlexanderVanishes {
                subgroup_chain: Vec::new(),
                derived_presentation: None,
                chi: candidate.chi.clone(),
                prime: Some(prime),
            },
            evidence,
        ));
    }

    // (ii) low-index scan for d(H/H') >= 3
    let tables = low_index_subgroups(p, budget.max_index)?;
    for table in tables {
        let rs = rs_presentation(&table)?;
        let inv = abelian_invariants(&rs.presentation);
        evidence.subgroup_scans.push(SubgroupScan {
            index: table.index(),
            invariants: inv.clone(),
        });
        if inv.min_generators() >= 3 {
            return Ok(Verdict::large(
                Certificate::HeightOneBigAbelianization {
                    subgroup: table,
                    invariants: inv,
                },
                evidence,
            ));
        }
    }

    // (iii) unknown, with finite-image evidence
    evidence.image_scans = finite_image_scan(p, budget.max_perm_degree)?;
    if evidence.image_scans.iter().all(|s| s.metacyclic) {
        evidence
            .observations
            .push("all scanned finite images metacyclic (dichotomy-consistent)".into());
    }
    evidence.observations.push(format!(
        "no subgroup of index <= {} has d(H/H') >= 3",
        evidence.max_index
    ));
    Ok(Verdict::unknown(evidence))
}

/// The HNN extension `<a, s | w(a, s a s^-1)>` of `<a, t | w>`, replacing
/// every `t` by `s a s^-1`. Under the height-1 Alexander transform,
/// `c t + d` becomes `c + d`.
pub fn hnn_conjugate_extension(p: &Presentation) -> Result<Presentation> {
    if p.gen_count() != 2 || p.relators().len() != 1 {
        return Err(Error::Invalid(
            "HNN conjugate extension requires <a, t | w>".into(),
        ));
    }
    let w = &p.relators()[0];
    let ts = w.exponent_sum(1);
    if ts != 0 {
        return Err(Error::NonzeroStableSum(ts));
    }
    // a stays generator 0, s is generator 1; t -> s a s^-1
    let images = vec![
        Word::generator(0),
        Word::from_runs([(1i64, 1i64), (0, 1), (1, -1)].map(|(g, e)| (g as usize, e))),
    ];
    let relator = w.substitute(&images);
    let a_name = p.names()[0].clone();
    let s_name = if a_name == "s" { "s1".to_string() } else { "s".to_string() };
    Presentation::new(vec![a_name, s_name], vec![relator])
}

/// The Higman-style relator `v^k w^m v^-k w^-n`, cyclically reduced.
pub fn higman_relator(w: &Word, v: &Word, k: i64, m: i64, n: i64) -> Word {
    let vk = v.pow(k);
    vk.multiply(&w.pow(m))
        .multiply(&vk.inverse())
        .multiply(&w.pow(-n))
        .cyclic_reduce()
        .0
}

/// As [`higman_relator`], but when `require_unit_gap` is set the
/// proabelian-preserving hypothesis `|m - n| = 1` is enforced.
pub fn higman_relator_checked(
    w: &Word,
    v: &Word,
    k: i64,
    m: i64,
    n: i64,
    require_unit_gap: bool,
) -> Result<Word> {
    if require_unit_gap && (m - n).abs() != 1 {
        return Err(Error::Invalid(format!(
            "proabelian-preserving construction needs |m - n| = 1, got m = {}, n = {}",
            m, n
        )));
    }
    Ok(higman_relator(w, v, k, m, n))
}

/// Enumerates all transitive permutation representations of degree at most
/// `max_degree` (the coset actions of the low-index subgroups) and classifies
/// each finite image.
pub fn finite_image_scan(p: &Presentation, max_degree: usize) -> Result<Vec<ImageScan>> {
    const DEGREE_GUARD: usize = 8;
    if max_degree > DEGREE_GUARD {
        return Err(Error::DegreeGuard(max_degree, DEGREE_GUARD));
    }
    let mut out = Vec::new();
    for table in low_index_subgroups(p, max_degree)? {
        let degree = table.index();
        let gens: Vec<Perm> = (0..p.gen_count())
            .map(|g| (0..degree).map(|q| table.action(g, q)).collect())
            .collect();
        let group = PermGroup::generate(degree, &gens, factorial_cap(degree))?;
        out.push(ImageScan {
            degree,
            order: group.order(),
            abelian: group.is_abelian(),
            metabelian: group.is_metabelian()?,
            metacyclic: group.is_metacyclic(),
        });
    }
    Ok(out)
}

fn factorial_cap(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

/// A violation of the order lemma, were one to exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderLemmaCounterexample {
    pub g: Perm,
    pub h: Perm,
    pub k: i64,
    pub m: i64,
    pub n: i64,
    pub order: usize,
}

/// Exhaustively searches a finite permutation group for `g, h` of equal order
/// with `h^k g^m h^-k = g^n` and `|m - n| = 1`; any such order must be 1, so
/// the search is expected to return None.
pub fn verify_order_lemma(
    degree: usize,
    generators: &[Perm],
    k_max: i64,
    mn_max: i64,
) -> Result<Option<OrderLemmaCounterexample>> {
    const ORDER_GUARD: usize = 10_000;
    let group = PermGroup::generate(degree, generators, ORDER_GUARD)?;
    let orders: Vec<usize> = group.elements.iter().map(perm_order).collect();
    for (gi, g) in group.elements.iter().enumerate() {
        if orders[gi] == 1 {
            continue;
        }
        // powers of g up to mn_max
        let mut g_pows: Vec<Perm> = Vec::with_capacity(mn_max as usize + 1);
        g_pows.push(crate::perm::perm_identity(degree));
        for _ in 0..mn_max {
            let next = perm_compose(g_pows.last().unwrap(), g);
            g_pows.push(next);
        }
        for (hi, h) in group.elements.iter().enumerate() {
            if orders[hi] != orders[gi] {
                continue;
            }
            let mut hk = h.clone();
            for k in 1..=k_max {
                let hk_inv = crate::perm::perm_inverse(&hk);
                for m in 1..=mn_max {
                    for n in [m - 1, m + 1] {
                        if n < 1 || n > mn_max {
                            continue;
                        }
                        let conj = perm_compose(&perm_compose(&hk_inv, &g_pows[m as usize]), &hk);
                        if conj == g_pows[n as usize] {
                            return Ok(Some(OrderLemmaCounterexample {
                                g: g.clone(),
                                h: h.clone(),
                                k,
                                m,
                                n,
                                order: orders[gi],
                            }));
                        }
                    }
                }
                hk = perm_compose(&hk, h);
            }
        }
    }
    Ok(None)
}
