//! Property tests for Smith normal form, abelian invariants and
//! characteristic polynomials.

use largeness_core::intmat::{
    abelian_invariants, char_poly, invariants_of_matrix, smith_normal_form, IntMatrix,
};
use largeness_core::intpoly::IntPoly;
use largeness_core::presentation::Presentation;
use largeness_core::word::Word;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng as _;

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
            .prop_map(IntMatrix::from_rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_decomposition_holds(m in matrix_strategy(6)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        prop_assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        // diagonal, nonnegative, divisibility chain
        let steps = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..steps).map(|k| s.d[(k, k)].clone()).collect();
        for d in &diag {
            prop_assert!(!d.is_negative());
        }
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        // recomputing the SNF of D returns D
        let again = smith_normal_form(&s.d);
        prop_assert_eq!(again.d, s.d);
    }

    #[test]
    fn snf_invariants_stable_under_permutation(
        m in matrix_strategy(5),
        seed in 0u64..1000,
    ) {
        let r = m.rows();
        let c = m.cols();
        // permute rows and columns by adjacent swaps driven by the seed bits
        let mut m2 = m.clone();
        let mut bits = seed;
        for i in 0..r.saturating_sub(1) {
            if bits & 1 == 1 {
                for j in 0..c {
                    let a = m2[(i, j)].clone();
                    m2[(i, j)] = m2[(i + 1, j)].clone();
                    m2[(i + 1, j)] = a;
                }
            }
            bits >>= 1;
        }
        for j in 0..c.saturating_sub(1) {
            if bits & 1 == 1 {
                for i in 0..r {
                    let a = m2[(i, j)].clone();
                    m2[(i, j)] = m2[(i, j + 1)].clone();
                    m2[(i, j + 1)] = a;
                }
            }
            bits >>= 1;
        }
        prop_assert_eq!(
            invariants_of_matrix(&m, c),
            invariants_of_matrix(&m2, c)
        );
    }
}

fn random_word(rng: &mut rand_chacha::ChaCha8Rng, rank: usize, len: usize) -> Word {
    Word::from_runs((0..len).map(|_| {
        (
            rng.gen_range(0..rank),
            if rng.gen_bool(0.5) { 1i64 } else { -1 },
        )
    }))
}

#[test]
fn abelian_invariants_stable_under_consequence_relators() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let rank = rng.gen_range(2..4usize);
        let nrel = rng.gen_range(1..3usize);
        let relators: Vec<Word> = (0..nrel)
            .map(|_| {
                let len = rng.gen_range(2..6);
                random_word(&mut rng, rank, len)
            })
            .collect();
        let p = match Presentation::new(Presentation::default_names(rank), relators.clone()) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p.relators().is_empty() {
            continue;
        }
        // a product of conjugates of existing relators
        let mut consequence = Word::identity();
        for _ in 0..rng.gen_range(1..3) {
            let r = &p.relators()[rng.gen_range(0..p.relators().len())];
            let conj_len = rng.gen_range(0..4);
            let conj = random_word(&mut rng, rank, conj_len);
            let signed = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
            consequence = consequence.multiply(&signed.conjugate_by(&conj));
        }
        let mut extended = p.relators().to_vec();
        extended.push(consequence);
        let q = Presentation::new(p.names().to_vec(), extended).unwrap();
        assert_eq!(abelian_invariants(&p), abelian_invariants(&q));
    }
}

#[test]
fn abelian_invariants_stable_under_elimination() {
    // BS(2,3) built with a redundant generator
    let p = largeness_core::text::parse_presentation("< a, b, t | b a^-2, t b t^-1 a^-3 >").unwrap();
    let q = p.eliminate_generator(1, 0).unwrap();
    assert_eq!(abelian_invariants(&p), abelian_invariants(&q));
}

#[test]
fn char_poly_matches_cofactor_oracle() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(1..5usize);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-4i64..=4)).collect())
            .collect();
        let m = IntMatrix::from_rows(rows.clone());
        let p = char_poly(&m).unwrap();
        assert_eq!(p, charpoly_cofactor(&rows));
        assert!(p.is_monic());
    }
}

/// Independent oracle: expand det(tI - M) by cofactors over Z[t].
fn charpoly_cofactor(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    // entries of tI - M as IntPoly
    let entries: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        IntPoly::from_i64(&[-m[i][j], 1])
                    } else {
                        IntPoly::from_i64(&[-m[i][j]])
                    }
                })
                .collect()
        })
        .collect();
    det_poly(&entries)
}

fn det_poly(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::from_i64(&[1]);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = IntPoly::zero();
    for j in 0..n {
        let minor: Vec<Vec<IntPoly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det_poly(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.add(&term.neg())
        };
    }
    acc
}

#[test]
fn xyz_automorphism_char_poly() {
    // x -> y, y -> z, z -> xy abelianizes to a matrix with char poly t^3 - t - 1
    let f = largeness_core::freebycyclic::example_xyz_automorphism();
    let p = char_poly(&f.abelianized_matrix()).unwrap();
    assert_eq!(p, IntPoly::from_i64(&[-1, -1, 0, 1]));
}
