//! Fox calculus and Alexander polynomials relative to a homomorphism onto Z.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{laurent_det, LaurentPoly};
use crate::presentation::{Chi, Presentation};
use crate::verdict::{is_prime_u64, Certificate};
use crate::word::Word;

/// Relator-length growth cap used by the deterministic simplification pass
/// that certificates replay.
pub fn default_simplify_cap() -> u64 {
    4
}

/// Fox derivative ∂w/∂g evaluated under the ring map sending each generator
/// `x` to `t^χ(x)`.
///
/// Satisfies ∂(uv)/∂g = ∂u/∂g + t^χ(u)·∂v/∂g, ∂g/∂g = 1 and
/// ∂(g^-1)/∂g = -t^(-χ(g)). A run `g^e` with χ(g) = 0 contributes a single
/// term, so high powers cost by run count, not letter count.
pub fn fox_derivative_eval(w: &Word, g: usize, chi: &Chi) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut prefix: i64 = 0;
    for &(h, e) in w.runs() {
        if h == g {
            let c = chi.values()[g];
            if c == 0 {
                acc.add_term(prefix, BigInt::from(e));
            } else if e > 0 {
                for k in 0..e {
                    acc.add_term(prefix + k * c, BigInt::one());
                }
            } else {
                for k in 1..=(-e) {
                    acc.add_term(prefix - k * c, -BigInt::one());
                }
            }
        }
        prefix += e * chi.values()[h];
    }
    acc
}

/// The Alexander matrix of `p` relative to a normalized χ (χ(t) = 1, other
/// generators 0): rows are relators, columns the non-`t` generators.
fn alexander_matrix(p: &Presentation, chi: &Chi, t_index: usize) -> Vec<Vec<LaurentPoly>> {
    let cols: Vec<usize> = (0..p.gen_count()).filter(|&g| g != t_index).collect();
    p.relators()
        .iter()
        .map(|r| {
            cols.iter()
                .map(|&g| fox_derivative_eval(r, g, chi))
                .collect()
        })
        .collect()
}

/// Alexander polynomial Δ relative to χ, in canonical form.
///
/// The presentation is rebased so χ becomes the indicator of one generator,
/// the Fox matrix over the remaining generators is assembled, and the highest
/// common factor of its maximal minors is returned (a single determinant in
/// the deficiency-1 case).
pub fn alexander_polynomial(p: &Presentation, chi: &Chi) -> Result<LaurentPoly> {
    chi.validate(p)?;
    if !chi.is_surjective() {
        return Err(Error::InvalidChi("chi must be surjective".into()));
    }
    let (q, t_index, chi2, _) = p.abelianized_chi_basis(chi)?;
    let m = q.gen_count();
    let n = q.relators().len();
    if m == 1 {
        // kernel of χ is trivial; its module has the empty presentation
        return Ok(LaurentPoly::one());
    }
    if n < m - 1 {
        return Ok(LaurentPoly::zero());
    }
    let matrix = alexander_matrix(&q, &chi2, t_index);
    if n == m - 1 {
        return Ok(laurent_det(&matrix).canonical());
    }
    if m > 12 {
        return Err(Error::Resource(format!(
            "minor enumeration capped at 12 generators, presentation has {}",
            m
        )));
    }
    // gcd over all (m-1) x (m-1) minors
    let mut gcd = LaurentPoly::zero();
    let mut rows: Vec<usize> = (0..m - 1).collect();
    loop {
        let sub: Vec<Vec<LaurentPoly>> = rows.iter().map(|&i| matrix[i].clone()).collect();
        let d = laurent_det(&sub);
        if !d.is_zero() {
            gcd = if gcd.is_zero() { d } else { gcd.gcd(&d) };
            if gcd.canonical() == LaurentPoly::one() {
                return Ok(LaurentPoly::one());
            }
        }
        // next combination
        let k = m - 1;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(gcd.canonical());
            }
            i -= 1;
            if rows[i] != i + n - k {
                break;
            }
        }
        rows[i] += 1;
        for j in i + 1..k {
            rows[j] = rows[j - 1] + 1;
        }
    }
}

/// Mod-p Alexander polynomial for deficiency-1 presentations: the integer Δ
/// reduced coefficientwise, in canonical (monic) form.
pub fn alexander_mod_p(p: &Presentation, chi: &Chi, prime: u64) -> Result<LaurentPoly> {
    if p.deficiency() != 1 {
        return Err(Error::Invalid(format!(
            "mod-p reduction is asserted only for deficiency 1, got {}",
            p.deficiency()
        )));
    }
    if !is_prime_u64(prime) {
        return Err(Error::Invalid(format!("{} is not prime", prime)));
    }
    let delta = alexander_polynomial(p, chi)?;
    Ok(delta.reduce_mod(prime).canonical())
}

/// Smallest prime factor found by trial division.
pub fn smallest_prime_factor(n: &BigInt) -> Option<u64> {
    if n.abs() <= BigInt::one() {
        return None;
    }
    let n = n.abs();
    let mut d = BigInt::from(2u64);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            return d.to_string().parse().ok();
        }
        if d > limit {
            return None;
        }
        d += 1;
    }
    // n itself is prime
    n.to_string().parse().ok()
}

/// Howie's criterion: a certificate when Δ vanishes over the integers, or
/// when a prime divides its content (so the mod-p polynomial vanishes).
pub fn howie_large_test(p: &Presentation, chi: &Chi) -> Result<Option<Certificate>> {
    let delta = alexander_polynomial(p, chi)?;
    if delta.is_zero() {
        return Ok(Some(Certificate::AlexanderVanishes {
            subgroup_chain: Vec::new(),
            derived_presentation: None,
            chi: chi.clone(),
            prime: None,
        }));
    }
    let content = delta.content();
    if let Some(prime) = smallest_prime_factor(&content) {
        return Ok(Some(Certificate::AlexanderVanishes {
            subgroup_chain: Vec::new(),
            derived_presentation: None,
            chi: chi.clone(),
            prime: Some(prime),
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_presentation, parse_word};

    fn chi_at(vals: &[i64]) -> Chi {
        Chi::new(vals.to_vec())
    }

    #[test]
    fn fox_base_rules() {
        let names: Vec<String> = vec!["a".into(), "t".into()];
        let w = parse_word("a", &names).unwrap();
        let chi = chi_at(&[0, 1]);
        assert_eq!(fox_derivative_eval(&w, 0, &chi), LaurentPoly::one());
        // BS relator t a^m t^-1 a^-n -> m t - n
        let w = parse_word("t a^3 t^-1 a^-5", &names).unwrap();
        let d = fox_derivative_eval(&w, 0, &chi);
        assert_eq!(d, LaurentPoly::from_pairs(&[(1, 3), (0, -5)]));
        // Baumslag-Gersten relator, derivative in a: t + 1 - t - 1 - 1 = -1
        let w = parse_word("t a t^-1 a t a^-1 t^-1 a^-2", &names).unwrap();
        let d = fox_derivative_eval(&w, 0, &chi);
        assert_eq!(d, LaurentPoly::constant(BigInt::from(-1)));
    }

    #[test]
    fn alexander_bs() {
        let p = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        let chi = chi_at(&[0, 1]);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        assert_eq!(delta, LaurentPoly::from_pairs(&[(1, 2), (0, -3)]));
    }

    #[test]
    fn alexander_t_minus_2_group() {
        let p = parse_presentation("< a, t | t a^2 t^-1 a^-1 t a^-1 t^-1 a^-1 >").unwrap();
        let chi = chi_at(&[0, 1]);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        assert_eq!(delta, LaurentPoly::from_pairs(&[(1, 1), (0, -2)]));
    }

    #[test]
    fn alexander_zero_for_rank2_center() {
        let p = parse_presentation("< a, b, t | [t, a], [t, b] >").unwrap();
        let chi = chi_at(&[1, 0, 0]);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        assert!(delta.is_zero());
    }

    #[test]
    fn mod_p_examples() {
        let chi = chi_at(&[0, 1]);
        let bs24 = parse_presentation("< a, t | t a^2 t^-1 a^-4 >").unwrap();
        assert!(alexander_mod_p(&bs24, &chi, 2).unwrap().is_zero());
        let bs23 = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        let r = alexander_mod_p(&bs23, &chi, 2).unwrap();
        assert_eq!(r, LaurentPoly::one().reduce_mod(2));
        // deficiency != 1 rejected
        let free = parse_presentation("< a, b | >").unwrap();
        assert!(alexander_mod_p(&free, &chi_at(&[0, 1]), 2).is_err());
    }

    #[test]
    fn howie_examples() {
        let chi = chi_at(&[0, 1]);
        let bs24 = parse_presentation("< a, t | t a^2 t^-1 a^-4 >").unwrap();
        match howie_large_test(&bs24, &chi).unwrap() {
            Some(Certificate::AlexanderVanishes { prime, .. }) => assert_eq!(prime, Some(2)),
            other => panic!("expected mod-2 certificate, got {:?}", other),
        }
        let bs23 = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        assert!(howie_large_test(&bs23, &chi).unwrap().is_none());
        let comm = parse_presentation("< a, b, t | [t, a], [t, b] >").unwrap();
        match howie_large_test(&comm, &chi_at(&[1, 0, 0])).unwrap() {
            Some(Certificate::AlexanderVanishes { prime: None, .. }) => {}
            other => panic!("expected integer-zero certificate, got {:?}", other),
        }
    }

    #[test]
    fn product_rule_holds() {
        let names: Vec<String> = vec!["a".into(), "t".into()];
        let u = parse_word("t a^2 t^-1", &names).unwrap();
        let v = parse_word("a^-1 t a", &names).unwrap();
        let chi = chi_at(&[0, 1]);
        for g in 0..2 {
            let lhs = fox_derivative_eval(&u.multiply(&v), g, &chi);
            let tu = LaurentPoly::monomial(BigInt::one(), chi.eval(&u));
            let rhs = fox_derivative_eval(&u, g, &chi).add(&tu.mul(&fox_derivative_eval(&v, g, &chi)));
            assert_eq!(lhs, rhs);
        }
    }
}
