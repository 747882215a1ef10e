//! Group presentations, deficiency, generator elimination and χ-homomorphisms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// A finite presentation: named generators plus relator words.
///
/// Relators are kept freely and cyclically reduced; relators that reduce to the
/// identity are dropped on construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = names.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(Error::Invalid(format!(
                        "relator uses generator index {} but presentation has {} generators",
                        g, n
                    )));
                }
            }
            let (core, _) = r.cyclic_reduce();
            if !core.is_identity() {
                reduced.push(core);
            }
        }
        Ok(Presentation {
            names,
            relators: reduced,
        })
    }

    /// Free group on `names` (no relators).
    pub fn free(names: Vec<String>) -> Self {
        Presentation {
            names,
            relators: Vec::new(),
        }
    }

    /// Default generator names x1..xn (x, y, z for rank up to 3).
    pub fn default_names(rank: usize) -> Vec<String> {
        if rank <= 3 {
            ["x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=rank).map(|i| format!("x{}", i)).collect()
        }
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Number of generators minus number of relators.
    pub fn deficiency(&self) -> i64 {
        self.names.len() as i64 - self.relators.len() as i64
    }

    /// Relator exponent-sum matrix rows (one per relator).
    pub fn exponent_rows(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_vector(self.gen_count()))
            .collect()
    }

    /// Eliminates generator `g` using relator `r`, which must contain `g` in a
    /// single run with exponent ±1. The relator is solved for `g` and the
    /// solution substituted throughout; relators that become trivial are
    /// dropped.
    pub fn eliminate_generator(&self, g: usize, r: usize) -> Result<Presentation> {
        if g >= self.gen_count() || r >= self.relators.len() {
            return Err(Error::Invalid("generator or relator index out of range".into()));
        }
        let rel = &self.relators[r];
        let occurrences = rel.occurrences(g);
        if occurrences != 1 {
            return Err(Error::NotEliminable {
                gen: g,
                relator: r,
                why: format!("generator occurs in {} runs, need exactly 1", occurrences),
            });
        }
        let run_idx = rel.runs().iter().position(|&(h, _)| h == g).unwrap();
        let (_, e) = rel.runs()[run_idx];
        if e.abs() != 1 {
            return Err(Error::NotEliminable {
                gen: g,
                relator: r,
                why: format!("generator occurs with exponent {}", e),
            });
        }
        // rotate so the g-run leads: rel ~ g^e u  =>  g = u^-e
        let before: u64 = rel.runs()[..run_idx].iter().map(|&(_, x)| x.unsigned_abs()).sum();
        let rotated = rel.rotate_letters(before);
        debug_assert_eq!(rotated.runs()[0], (g, e));
        let tail = Word::from_runs(rotated.runs()[1..].iter().copied());
        let replacement = if e == 1 { tail.inverse() } else { tail };
        debug_assert!(!replacement.uses_generator(g));

        let mut images: Vec<Word> = (0..self.gen_count()).map(Word::generator).collect();
        images[g] = replacement;
        let mut names = self.names.clone();
        names.remove(g);
        let remap = |h: usize| if h > g { h - 1 } else { h };
        let mut relators = Vec::new();
        for (i, rel2) in self.relators.iter().enumerate() {
            if i == r {
                continue;
            }
            let s = rel2.substitute(&images).map_generators(remap);
            relators.push(s);
        }
        Presentation::new(names, relators)
    }

    /// Repeatedly eliminates generators that occur exactly once in some
    /// relator. A candidate elimination is skipped if it would grow any
    /// relator beyond `cap` times its current length. Returns the simplified
    /// presentation together with, for each surviving generator, its index in
    /// `self`.
    pub fn simplify_track(&self, cap: u64) -> (Presentation, Vec<usize>) {
        let mut p = self.clone();
        let mut origin: Vec<usize> = (0..self.gen_count()).collect();
        'outer: loop {
            // prefer the shortest usable relator, then the lowest generator
            let mut candidates: Vec<(u64, usize, usize)> = Vec::new();
            for (ri, rel) in p.relators.iter().enumerate() {
                for &(g, e) in rel.runs() {
                    if e.abs() == 1 && rel.occurrences(g) == 1 {
                        candidates.push((rel.length(), ri, g));
                    }
                }
            }
            candidates.sort();
            for (_, ri, g) in candidates {
                let next = match p.eliminate_generator(g, ri) {
                    Ok(q) => q,
                    Err(_) => continue,
                };
                let grew_too_much = next
                    .relators
                    .iter()
                    .any(|rel| rel.length() > cap * self.max_relator_length().max(1));
                if grew_too_much {
                    continue;
                }
                origin.remove(g);
                p = next;
                continue 'outer;
            }
            return (p, origin);
        }
    }

    pub fn simplify(&self, cap: u64) -> Presentation {
        self.simplify_track(cap).0
    }

    fn max_relator_length(&self) -> u64 {
        self.relators.iter().map(|r| r.length()).max().unwrap_or(0)
    }

    /// Rewrites the presentation on a new free basis so that `chi` becomes the
    /// indicator of a single generator. Returns the rebased presentation, the
    /// index of the distinguished generator `t`, the normalized χ and the move
    /// log of the basis changes.
    pub fn abelianized_chi_basis(&self, chi: &Chi) -> Result<(Presentation, usize, Chi, Vec<BasisMove>)> {
        chi.validate(self)?;
        if !chi.is_surjective() {
            return Err(Error::InvalidChi(format!(
                "values {:?} have gcd != 1",
                chi.values()
            )));
        }
        let mut relators = self.relators.clone();
        let mut vals = chi.values().to_vec();
        let mut moves: Vec<BasisMove> = Vec::new();

        loop {
            let nonzero: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] != 0).collect();
            if nonzero.len() == 1 && vals[nonzero[0]].abs() == 1 {
                break;
            }
            // pivot: smallest |value|
            let &i = nonzero
                .iter()
                .min_by_key(|&&i| (vals[i].abs(), i))
                .expect("surjective chi has a nonzero value");
            let &j = nonzero
                .iter()
                .find(|&&j| j != i)
                .expect("single nonzero value of gcd 1 is ±1");
            let q = vals[j] / vals[i];
            let mv = BasisMove::ReplaceMulPow {
                target: j,
                by: i,
                power: -q,
            };
            mv.apply_to_relators(&mut relators);
            vals[j] -= q * vals[i];
            moves.push(mv);
        }
        let t_index = (0..vals.len()).find(|&i| vals[i] != 0).unwrap();
        if vals[t_index] == -1 {
            let mv = BasisMove::Invert { target: t_index };
            mv.apply_to_relators(&mut relators);
            vals[t_index] = 1;
            moves.push(mv);
        }
        let p = Presentation::new(self.names.clone(), relators)?;
        Ok((p, t_index, Chi::new(vals), moves))
    }
}

/// An elementary change of free basis, acting on presentations by rewriting
/// relators over the new generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisMove {
    /// New generator `y_target = x_target * x_by^power`.
    ReplaceMulPow {
        target: usize,
        by: usize,
        power: i64,
    },
    /// New generator `y_target = x_target^-1`.
    Invert { target: usize },
}

impl BasisMove {
    /// Rewrites a word in the old generators over the new ones.
    pub fn rewrite(&self, w: &Word) -> Word {
        match *self {
            BasisMove::ReplaceMulPow { target, by, power } => {
                // x_target = y_target * y_by^(-power)
                let mut out = Word::identity();
                for &(g, e) in w.runs() {
                    if g == target {
                        let x = Word::generator(target).multiply(&Word::generator_pow(by, -power));
                        out = out.multiply(&x.pow(e));
                    } else {
                        out = out.multiply(&Word::generator_pow(g, e));
                    }
                }
                out
            }
            BasisMove::Invert { target } => Word::from_runs(
                w.runs()
                    .iter()
                    .map(|&(g, e)| if g == target { (g, -e) } else { (g, e) }),
            ),
        }
    }

    fn apply_to_relators(&self, relators: &mut [Word]) {
        for r in relators.iter_mut() {
            *r = self.rewrite(r).cyclic_reduce().0;
        }
    }

    /// The image of each old generator as a word in the new generators;
    /// composing these over a move log yields the basis-change automorphism.
    pub fn generator_images(&self, rank: usize) -> Vec<Word> {
        let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
        match *self {
            BasisMove::ReplaceMulPow { target, by, power } => {
                images[target] =
                    Word::generator(target).multiply(&Word::generator_pow(by, -power));
            }
            BasisMove::Invert { target } => {
                images[target] = Word::generator_pow(target, -1);
            }
        }
        images
    }
}

/// A homomorphism to the integers, given by its values on the generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Chi {
    values: Vec<i64>,
}

impl Chi {
    pub fn new(values: Vec<i64>) -> Self {
        Chi { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// χ of a word: the weighted exponent sum.
    pub fn eval(&self, w: &Word) -> i64 {
        w.runs().iter().map(|&(g, e)| self.values[g] * e).sum()
    }

    /// Checks that χ vanishes on every relator of `p`.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        if self.values.len() != p.gen_count() {
            return Err(Error::InvalidChi(format!(
                "chi has {} values for {} generators",
                self.values.len(),
                p.gen_count()
            )));
        }
        for (i, r) in p.relators().iter().enumerate() {
            let s = self.eval(r);
            if s != 0 {
                return Err(Error::InvalidChi(format!(
                    "does not vanish on relator {} (weighted sum {})",
                    i, s
                )));
            }
        }
        Ok(())
    }

    /// Surjective onto the integers: gcd of the values is 1.
    pub fn is_surjective(&self) -> bool {
        let g = self.values.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        g == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_presentation;

    #[test]
    fn deficiency_counts() {
        let p = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        assert_eq!(p.deficiency(), 1);
        let free2 = parse_presentation("< a, b | >").unwrap();
        assert_eq!(free2.deficiency(), 2);
    }

    #[test]
    fn eliminate_bs23() {
        // eliminate b from <a,b,t | b a^-2, t b t^-1 a^-3> -> <a,t | t a^2 t^-1 a^-3>
        let p = parse_presentation("< a, b, t | b a^-2, t b t^-1 a^-3 >").unwrap();
        let q = p.eliminate_generator(1, 0).unwrap();
        let bs23 = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        assert_eq!(q, bs23);
    }

    #[test]
    fn eliminate_rejects_double_occurrence() {
        let p = parse_presentation("< a, b | a b a b >").unwrap();
        assert!(matches!(
            p.eliminate_generator(0, 0),
            Err(Error::NotEliminable { .. })
        ));
    }

    #[test]
    fn chi_validation() {
        let p = parse_presentation("< x, y | x y x y^-1 >").unwrap();
        // relator sums: x: 2, y: 0
        assert!(Chi::new(vec![1, 2]).validate(&p).is_err());
        let chi = Chi::new(vec![0, 1]);
        chi.validate(&p).unwrap();
        assert!(chi.is_surjective());
        assert!(!Chi::new(vec![2, 4]).is_surjective());
    }

    #[test]
    fn chi_basis_already_normalized() {
        let p = parse_presentation("< x, y | x y x y^-1 >").unwrap();
        let (q, t, chi2, moves) = p.abelianized_chi_basis(&Chi::new(vec![0, 1])).unwrap();
        assert_eq!(t, 1);
        assert_eq!(chi2.values(), &[0, 1]);
        assert!(moves.is_empty());
        assert_eq!(q, p);
    }

    #[test]
    fn chi_basis_euclid() {
        let p = Presentation::free(vec!["x".into(), "y".into()]);
        let (q, t, chi2, moves) = p.abelianized_chi_basis(&Chi::new(vec![2, 3])).unwrap();
        assert_eq!(chi2.values().iter().filter(|&&v| v != 0).count(), 1);
        assert_eq!(chi2.values()[t], 1);
        assert!(!moves.is_empty());
        assert_eq!(q.gen_count(), 2);
    }

    #[test]
    fn chi_basis_rejects_nonsurjective() {
        let p = Presentation::free(vec!["x".into(), "y".into()]);
        assert!(p.abelianized_chi_basis(&Chi::new(vec![2, 4])).is_err());
    }

    #[test]
    fn deficiency_invariant_under_elimination() {
        let p = parse_presentation("< a, b, t | b a^-2, t b t^-1 a^-3 >").unwrap();
        let q = p.eliminate_generator(1, 0).unwrap();
        assert_eq!(p.deficiency(), q.deficiency());
    }
}
