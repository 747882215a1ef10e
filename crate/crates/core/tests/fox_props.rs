//! Fox-calculus identities and the closed-form cross-checks for Alexander
//! polynomials.

use largeness_core::fox::{alexander_polynomial, fox_derivative_eval};
use largeness_core::intmat::abelian_invariants;
use largeness_core::laurent::LaurentPoly;
use largeness_core::onerelator::{height1_alexander, moldavanskii_rewrite};
use largeness_core::presentation::{Chi, Presentation};
use largeness_core::word::Word;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    Word::from_runs((0..len).map(|_| {
        (
            rng.gen_range(0..rank),
            *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap(),
        )
    }))
}

#[test]
fn product_rule_on_500_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let rank = 3;
    let chi = Chi::new(vec![1, -1, 2]);
    for _ in 0..500 {
        let lu = rng.gen_range(0..6);
        let u = random_word(&mut rng, rank, lu);
        let lv = rng.gen_range(0..6);
        let v = random_word(&mut rng, rank, lv);
        for g in 0..rank {
            let lhs = fox_derivative_eval(&u.multiply(&v), g, &chi);
            let shift = LaurentPoly::monomial(BigInt::one(), chi.eval(&u));
            let rhs =
                fox_derivative_eval(&u, g, &chi).add(&shift.mul(&fox_derivative_eval(&v, g, &chi)));
            assert_eq!(lhs, rhs, "product rule failed for {:?} * {:?}", u, v);
        }
    }
}

#[test]
fn fundamental_identity_on_500_random_words() {
    // sum_g (dw/dg)(t^chi(g) - 1) = t^chi(w) - 1
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rank = 3;
    let chi = Chi::new(vec![1, 0, -2]);
    for _ in 0..500 {
        let lw = rng.gen_range(0..8);
        let w = random_word(&mut rng, rank, lw);
        let mut lhs = LaurentPoly::zero();
        for g in 0..rank {
            let factor = LaurentPoly::monomial(BigInt::one(), chi.values()[g])
                .sub(&LaurentPoly::one());
            lhs = lhs.add(&fox_derivative_eval(&w, g, &chi).mul(&factor));
        }
        let rhs = LaurentPoly::monomial(BigInt::one(), chi.eval(&w)).sub(&LaurentPoly::one());
        assert_eq!(lhs, rhs, "fundamental identity failed for {:?}", w);
    }
}

fn height1_presentation(exponents: &[i64]) -> Presentation {
    let mut w = Word::identity();
    for pair in exponents.chunks(2) {
        w = w
            .multiply(&Word::generator(1))
            .multiply(&Word::generator_pow(0, pair[0]))
            .multiply(&Word::generator_pow(1, -1))
            .multiply(&Word::generator_pow(0, pair[1]));
    }
    Presentation::new(vec!["a".into(), "t".into()], vec![w]).unwrap()
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let r = rng.gen_range(0..2 * bound);
    if r < bound {
        r - bound
    } else {
        r - bound + 1
    }
}

#[test]
fn height1_closed_formula_matches_fox_on_200_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let chi = Chi::new(vec![0, 1]);
    for _ in 0..200 {
        let k = rng.gen_range(1..4usize);
        let exponents: Vec<i64> = (0..2 * k).map(|_| nonzero(&mut rng, 4)).collect();
        let p = height1_presentation(&exponents);
        let h = moldavanskii_rewrite(&p.relators()[0], 0, 1).unwrap();
        assert_eq!(h.height, 1);
        let closed = height1_alexander(&h).unwrap();
        let fox = alexander_polynomial(&p, &chi).unwrap();
        assert_eq!(closed, fox, "closed formula disagrees for {:?}", exponents);
        // and directly against the exponent sums
        let c: i64 = exponents.iter().step_by(2).sum();
        let d: i64 = exponents.iter().skip(1).step_by(2).sum();
        assert_eq!(closed, LaurentPoly::from_pairs(&[(1, c), (0, d)]).canonical());
    }
}

#[test]
fn delta_at_one_is_torsion_order_when_beta1_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 40 {
        let k = rng.gen_range(1..3usize);
        let exponents: Vec<i64> = (0..2 * k).map(|_| nonzero(&mut rng, 4)).collect();
        let p = height1_presentation(&exponents);
        let inv = abelian_invariants(&p);
        if inv.rank != 1 {
            continue;
        }
        checked += 1;
        let chi = Chi::new(vec![0, 1]);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        assert_eq!(
            delta.eval_at_one().abs(),
            inv.torsion_order(),
            "Δ(1) mismatch for {:?}",
            exponents
        );
    }
}

#[test]
fn delta_invariant_under_rotation_inversion_and_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let chi = Chi::new(vec![0, 1]);
    for _ in 0..40 {
        let k = rng.gen_range(1..3usize);
        let exponents: Vec<i64> = (0..2 * k).map(|_| nonzero(&mut rng, 3)).collect();
        let p = height1_presentation(&exponents);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        // rotations and inversion of the relator present the same group
        let r = &p.relators()[0];
        for rot in 0..r.length() {
            let rotated = r.rotate_letters(rot);
            let q = Presentation::new(p.names().to_vec(), vec![rotated]).unwrap();
            assert_eq!(alexander_polynomial(&q, &chi).unwrap(), delta);
        }
        let q = Presentation::new(p.names().to_vec(), vec![r.inverse()]).unwrap();
        assert_eq!(alexander_polynomial(&q, &chi).unwrap(), delta);
        // introduce a redundant generator b = a^2 and eliminate-compare
        let mut relators: Vec<Word> = p
            .relators()
            .iter()
            .map(|w| w.map_generators(|g| g + 1))
            .collect();
        // b a^-2 with b = generator 0
        relators.push(Word::from_runs([(0usize, 1i64), (1, -2)]));
        let big = Presentation::new(
            vec!["b".into(), "a".into(), "t".into()],
            relators,
        )
        .unwrap();
        let chi3 = Chi::new(vec![0, 0, 1]);
        assert_eq!(alexander_polynomial(&big, &chi3).unwrap(), delta);
        let eliminated = big.eliminate_generator(0, big.relators().len() - 1).unwrap();
        assert_eq!(alexander_polynomial(&eliminated, &chi).unwrap(), delta);
    }
}

#[test]
fn known_alexander_polynomials() {
    // BS(m, n) -> m t - n for the stated pairs, and the t - 2 group
    let chi = Chi::new(vec![0, 1]);
    for (m, n) in [(1i64, 2i64), (2, 3), (2, 4), (6, 9)] {
        let p = height1_presentation(&[m, -n]);
        let delta = alexander_polynomial(&p, &chi).unwrap();
        assert_eq!(
            delta,
            LaurentPoly::from_pairs(&[(1, m), (0, -n)]),
            "BS({}, {})",
            m,
            n
        );
    }
    let p = height1_presentation(&[2, -1, -1, -1]);
    assert_eq!(
        alexander_polynomial(&p, &chi).unwrap(),
        LaurentPoly::from_pairs(&[(1, 1), (0, -2)])
    );
}
