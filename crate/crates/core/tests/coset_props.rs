//! Cross-validation of the coset engine: Reidemeister–Schreier bookkeeping,
//! the exhaustive low-index oracle, enumeration invariances and Betti-number
//! monotonicity in finite covers.

use largeness_core::coset::{intersect, rs_presentation, todd_coxeter};
use largeness_core::error::Error;
use largeness_core::intmat::abelian_invariants;
use largeness_core::lowindex::low_index_subgroups;
use largeness_core::presentation::Presentation;
use largeness_core::text::{parse_presentation, parse_word};
use largeness_core::word::Word;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    Word::from_runs((0..len).map(|_| {
        (
            rng.gen_range(0..rank),
            if rng.gen_bool(0.5) { 1i64 } else { -1 },
        )
    }))
}

#[test]
fn rs_deficiency_one_preservation_on_50_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut tested = 0;
    while tested < 50 {
        let rank = rng.gen_range(2..4usize);
        let relators: Vec<Word> = (0..rank - 1)
            .map(|_| {
                let len = rng.gen_range(2..7);
                random_word(&mut rng, rank, len)
            })
            .collect();
        let p = match Presentation::new(Presentation::default_names(rank), relators) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p.deficiency() != 1 {
            continue;
        }
        let tables = match low_index_subgroups(&p, 3) {
            Ok(t) => t,
            Err(_) => continue,
        };
        for table in tables {
            let rs = rs_presentation(&table).unwrap();
            // raw Euler characteristic bookkeeping: generators - relators = 1
            assert_eq!(
                rs.raw_generator_count as i64 - rs.raw_relator_count as i64,
                1,
                "raw RS counts broken at index {}",
                table.index()
            );
            // the emitted presentation only drops trivial relators
            assert_eq!(rs.presentation.deficiency(), 1 + rs.trivial_relators as i64);
            tested += 1;
        }
    }
}

#[test]
fn beta1_never_decreases_in_finite_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut tested = 0;
    while tested < 25 {
        let rank = 2;
        let relators: Vec<Word> = (0..1)
            .map(|_| {
                let len = rng.gen_range(2..8);
                random_word(&mut rng, rank, len)
            })
            .collect();
        let p = match Presentation::new(Presentation::default_names(rank), relators) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p.relators().is_empty() {
            continue;
        }
        let base_rank = abelian_invariants(&p).rank;
        let tables = match low_index_subgroups(&p, 4) {
            Ok(t) => t,
            Err(_) => continue,
        };
        for table in tables {
            let rs = rs_presentation(&table).unwrap();
            let cover_rank = abelian_invariants(&rs.presentation).rank;
            assert!(
                cover_rank >= base_rank,
                "beta1 dropped from {} to {} at index {}",
                base_rank,
                cover_rank,
                table.index()
            );
            tested += 1;
        }
    }
}

/// Exhaustive oracle: conjugacy classes of index-exactly-k subgroups of a
/// 2-generator presentation = orbits of transitive relator-respecting pairs
/// of permutations under simultaneous conjugation.
fn classes_by_brute_force(p: &Presentation, k: usize) -> usize {
    assert_eq!(p.gen_count(), 2);
    let perms = all_permutations(k);
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for pa in &perms {
        for pb in &perms {
            if !transitive(pa, pb, k) {
                continue;
            }
            if !p.relators().iter().all(|r| {
                (0..k).all(|start| trace(r, pa, pb, start) == start)
            }) {
                continue;
            }
            // reduce by simultaneous conjugation
            let canon = perms
                .iter()
                .map(|c| {
                    let ci = inverse(c);
                    (conjugate(pa, c, &ci), conjugate(pb, c, &ci))
                })
                .min()
                .unwrap();
            if !found.contains(&canon) {
                found.push(canon);
            }
        }
    }
    found.len()
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

fn conjugate(p: &[usize], c: &[usize], ci: &[usize]) -> Vec<usize> {
    // c^-1 p c as a right action on points
    (0..p.len()).map(|x| c[p[ci[x]]]).collect()
}

fn transitive(pa: &[usize], pb: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in [pa, pb] {
            for y in [p[x], inverse(p)[x]] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
    }
    count == k
}

fn trace(w: &Word, pa: &[usize], pb: &[usize], start: usize) -> usize {
    let ia = inverse(pa);
    let ib = inverse(pb);
    let mut x = start;
    for (g, s) in w.letters() {
        x = match (g, s > 0) {
            (0, true) => pa[x],
            (0, false) => ia[x],
            (1, true) => pb[x],
            (1, false) => ib[x],
            _ => unreachable!(),
        };
    }
    x
}

#[test]
fn low_index_matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut cases = 0;
    while cases < 12 {
        let nrel = rng.gen_range(0..2usize);
        let relators: Vec<Word> = (0..nrel)
            .map(|_| {
                let len = rng.gen_range(2..6);
                random_word(&mut rng, 2, len)
            })
            .collect();
        let p = match Presentation::new(vec!["a".into(), "b".into()], relators) {
            Ok(p) => p,
            Err(_) => continue,
        };
        cases += 1;
        let tables = low_index_subgroups(&p, 4).unwrap();
        for k in 1..=4usize {
            let ours = tables.iter().filter(|t| t.index() == k).count();
            let brute = classes_by_brute_force(&p, k);
            assert_eq!(ours, brute, "class count at index {} for {:?}", k, p);
        }
    }
}

#[test]
fn todd_coxeter_invariances() {
    let p = parse_presentation("< x, y | x^2, y^3, (x y)^2 >").unwrap();
    let g1 = parse_word("x", p.names()).unwrap();
    let g2 = parse_word("x y x^-1", p.names()).unwrap();
    let a = todd_coxeter(&p, &[g1.clone(), g2.clone()], 1000).unwrap();
    let b = todd_coxeter(&p, &[g2.clone(), g1.clone()], 1000).unwrap();
    assert_eq!(a.index(), b.index());
    // replacing g2 by g1 g2 preserves the subgroup
    let c = todd_coxeter(&p, &[g1.clone(), g1.multiply(&g2)], 1000).unwrap();
    assert_eq!(a, c);
}

#[test]
fn intersect_matches_fiber_oracle() {
    // in the quaternion-ish presentation, intersect two subgroups and verify
    // membership agrees with the pairwise trace
    let p = parse_presentation("< x, y | x^4, y^4, x y x y^-1, x^2 y^2 >").unwrap();
    let t1 = todd_coxeter(&p, &[parse_word("x", p.names()).unwrap()], 1000).unwrap();
    let t2 = todd_coxeter(&p, &[parse_word("y", p.names()).unwrap()], 1000).unwrap();
    let both = intersect(&t1, &t2).unwrap();
    both.validate().unwrap();
    // elements of the intersection fix coset 0 in both tables
    for w in both.subgroup_generators() {
        assert_eq!(t1.trace(0, w), 0);
        assert_eq!(t2.trace(0, w), 0);
    }
    // and the index is the orbit size of the diagonal action
    let mut pairs = std::collections::BTreeSet::new();
    let mut stack = vec![(0usize, 0usize)];
    pairs.insert((0usize, 0usize));
    while let Some((a, b)) = stack.pop() {
        for g in 0..p.gen_count() {
            for next in [
                (t1.action(g, a), t2.action(g, b)),
                (
                    t1.trace(a, &Word::generator_pow(g, -1)),
                    t2.trace(b, &Word::generator_pow(g, -1)),
                ),
            ] {
                if pairs.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    assert_eq!(both.index(), pairs.len());
}

#[test]
fn schreier_generators_replay_every_emitted_table() {
    let p = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
    for table in low_index_subgroups(&p, 4).unwrap() {
        let again = todd_coxeter(&p, table.subgroup_generators(), 100_000).unwrap();
        assert_eq!(&again, &table);
        table.validate().unwrap();
    }
}

#[test]
fn quotient_map_preimage_preserves_index() {
    // theta: (A * B) x| Z -> B x| Z kills the invariant block; the preimage
    // of an index-k subgroup has index k because theta is surjective
    use largeness_core::coset::preimage;
    use largeness_core::freebycyclic::example_xyz_automorphism;
    let f = example_xyz_automorphism();
    let doubled = f.double();
    let p_g = doubled.mapping_torus().unwrap();
    let p_gq = f.mapping_torus().unwrap();
    let gens: Vec<Word> = ["x", "y", "z^2", "z x z^-1", "z y z^-1", "z t^-7"]
        .iter()
        .map(|s| parse_word(s, p_gq.names()).unwrap())
        .collect();
    let witness = todd_coxeter(&p_gq, &gens, 1_000_000).unwrap();
    assert_eq!(witness.index(), 14);
    let mut theta: Vec<Word> = Vec::new();
    for i in 0..6 {
        if i < 3 {
            theta.push(Word::identity());
        } else {
            theta.push(Word::generator(i - 3));
        }
    }
    theta.push(Word::generator(3)); // t -> t
    let back = preimage(&p_g, &theta, &witness).unwrap();
    assert_eq!(back.index(), 14);
}

#[test]
fn coset_limit_is_a_resource_error() {
    let p = parse_presentation("< a, b | >").unwrap();
    match todd_coxeter(&p, &[], 100) {
        Err(Error::CosetLimit(_)) => {}
        other => panic!("expected resource error, got {:?}", other.map(|t| t.index())),
    }
}
