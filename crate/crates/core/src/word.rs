//! Freely reduced words in a free group.
//!
//! A word is stored run-length compressed: a sequence of `(generator, exponent)`
//! runs where adjacent runs have distinct generators and no exponent is zero.
//! The empty sequence is the identity. Generator indices are presentation-scoped;
//! names live in [`crate::presentation::Presentation`].

use serde::{Deserialize, Serialize};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    runs: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Word { runs: vec![(g, 1)] }
    }

    pub fn generator_pow(g: usize, e: i64) -> Self {
        if e == 0 {
            Word::identity()
        } else {
            Word { runs: vec![(g, e)] }
        }
    }

    /// Builds a freely reduced word from arbitrary runs.
    pub fn from_runs<I: IntoIterator<Item = (usize, i64)>>(runs: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in runs {
            w.push_run(g, e);
        }
        w
    }

    fn push_run(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(&(lg, le)) = self.runs.last() {
            if lg == g {
                self.runs.pop();
                let s = le + e;
                if s != 0 {
                    self.runs.push((g, s));
                }
                return;
            }
        }
        self.runs.push((g, e));
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total letter count, i.e. the sum of |exponent| over runs.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Largest generator index appearing, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.runs.iter().map(|&(g, _)| g).max()
    }

    pub fn uses_generator(&self, g: usize) -> bool {
        self.runs.iter().any(|&(h, _)| h == g)
    }

    /// Number of runs of generator `g`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.runs.iter().filter(|&&(h, _)| h == g).count()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 || self.is_identity() {
            return Word::identity();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = base.clone();
        for _ in 1..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Conjugate `self` by `c`, returning `c self c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.multiply(self).multiply(&c.inverse())
    }

    /// Commutator `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.multiply(other)
            .multiply(&self.inverse())
            .multiply(&other.inverse())
    }

    /// Sum of exponents of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.runs
            .iter()
            .filter(|&&(h, _)| h == g)
            .map(|&(_, e)| e)
            .sum()
    }

    /// Exponent-sum vector over `gen_count` generators.
    pub fn exponent_vector(&self, gen_count: usize) -> Vec<i64> {
        let mut v = vec![0i64; gen_count];
        for &(g, e) in &self.runs {
            v[g] += e;
        }
        v
    }

    /// Cyclic reduction: returns `(core, conjugator)` with
    /// `self = conjugator * core * conjugator^-1` and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core = self.clone();
        let mut conj = Word::identity();
        loop {
            if core.runs.len() < 2 {
                return (core, conj);
            }
            let (fg, fe) = core.runs[0];
            let (lg, le) = *core.runs.last().unwrap();
            if fg != lg {
                return (core, conj);
            }
            if fe + le == 0 {
                conj = conj.multiply(&Word::generator_pow(fg, fe));
                core.runs.remove(0);
                core.runs.pop();
            } else {
                // g^fe M g^le with fe+le != 0: conjugating by g^fe leaves M g^(fe+le)
                conj = conj.multiply(&Word::generator_pow(fg, fe));
                let s = fe + le;
                let mut runs: Vec<(usize, i64)> = core.runs[1..core.runs.len() - 1].to_vec();
                runs.push((fg, s));
                return (Word { runs }, conj);
            }
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.runs.first(), self.runs.last()) {
            (Some(&(f, _)), Some(&(l, _))) => self.runs.len() == 1 || f != l,
            _ => true,
        }
    }

    /// Rotates a cyclically reduced word left by `k` letters.
    pub fn rotate_letters(&self, k: u64) -> Word {
        let n = self.length();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let letters: Vec<(usize, i64)> = self.letters().collect();
        let mut out = Word::identity();
        for &(g, s) in letters[k as usize..].iter().chain(&letters[..k as usize]) {
            out.push_run(g, s);
        }
        out
    }

    /// Iterates single letters as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            let s = e.signum();
            (0..e.unsigned_abs()).map(move |_| (g, s))
        })
    }

    /// Substitutes `images[g]` for each generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.runs {
            out = out.multiply(&images[g].pow(e));
        }
        out
    }

    /// Substitutes with indices shifted: generator `g` maps to `images[g]` when
    /// present, otherwise to itself under `remap`.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_runs(self.runs.iter().map(|&(g, e)| (f(g), e)))
    }

    /// Deletes all runs of generators for which `kill` returns true, then reduces.
    pub fn delete_generators(&self, kill: impl Fn(usize) -> bool) -> Word {
        Word::from_runs(self.runs.iter().filter(|&&(g, _)| !kill(g)).copied())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "g{}", g)?;
            } else {
                write!(f, "g{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(runs: &[(usize, i64)]) -> Word {
        Word::from_runs(runs.iter().copied())
    }

    #[test]
    fn free_reduction() {
        // a a^-1 -> identity
        assert!(w(&[(0, 1), (0, -1)]).is_identity());
        // (a t)(t^-1 b) -> a b
        let u = w(&[(0, 1), (1, 1)]);
        let v = w(&[(1, -1), (2, 1)]);
        assert_eq!(u.multiply(&v), w(&[(0, 1), (2, 1)]));
        // a^2 * a^3 = a^5
        assert_eq!(
            Word::generator_pow(0, 2).multiply(&Word::generator_pow(0, 3)),
            Word::generator_pow(0, 5)
        );
    }

    #[test]
    fn inverse_cancels() {
        let u = w(&[(1, 1), (0, 2), (1, -1), (0, -1)]);
        assert!(u.multiply(&u.inverse()).is_identity());
    }

    #[test]
    fn cyclic_reduce_conjugate() {
        // t a t^-1 -> (a, t)
        let u = w(&[(1, 1), (0, 1), (1, -1)]);
        let (core, conj) = u.cyclic_reduce();
        assert_eq!(core, Word::generator(0));
        assert_eq!(conj, Word::generator(1));
        // already cyclically reduced words are fixed
        let v = w(&[(1, 1), (0, 2), (1, -1), (0, -1)]);
        let (core, conj) = v.cyclic_reduce();
        assert_eq!(core, v);
        assert!(conj.is_identity());
        let c = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert_eq!(c.cyclic_reduce().0, c);
    }

    #[test]
    fn cyclic_reduce_merges_end_runs() {
        // a t a: cyclically reduced already (first/last same gen but no cancellation)
        let u = w(&[(0, 1), (1, 1), (0, 1)]);
        let (core, conj) = u.cyclic_reduce();
        assert_eq!(conj.multiply(&core).multiply(&conj.inverse()), u);
        assert!(core.is_cyclically_reduced());
        assert_eq!(core, w(&[(1, 1), (0, 2)]));
    }

    #[test]
    fn exponent_sums() {
        // t^6 a t^-4 a^-1 t^-2 a^-1, sums: t -> 0, a -> -1
        let u = w(&[(1, 6), (0, 1), (1, -4), (0, -1), (1, -2), (0, -1)]);
        assert_eq!(u.exponent_sum(1), 0);
        assert_eq!(u.exponent_sum(0), -1);
        assert_eq!(Word::identity().exponent_sum(3), 0);
    }

    #[test]
    fn rotation_is_cyclic() {
        let u = w(&[(0, 2), (1, 1), (0, -1), (1, -1)]);
        let r = u.rotate_letters(1);
        assert_eq!(r, w(&[(0, 1), (1, 1), (0, -1), (1, -1), (0, 1)]));
        assert_eq!(r.length(), u.length());
        assert_eq!(r.rotate_letters(u.length() - 1), u);
    }
}
