//! Free-group endomorphisms, mapping tori, doubling, and restriction/quotient
//! of automorphisms along an invariant free factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::nielsen::{reduce_to_basis, NielsenMove};
use crate::presentation::Presentation;
use crate::word::Word;

/// An endomorphism of the rank-`rank` free group, given by generator images.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FreeEndomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl FreeEndomorphism {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Invalid(format!(
                "{} images for rank {}",
                images.len(),
                rank
            )));
        }
        for w in &images {
            if let Some(g) = w.max_generator() {
                if g >= rank {
                    return Err(Error::Invalid(format!(
                        "image uses generator {} outside rank {}",
                        g, rank
                    )));
                }
            }
        }
        Ok(FreeEndomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeEndomorphism {
            rank,
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self` after `other`: x ↦ self(other(x)).
    pub fn compose(&self, other: &FreeEndomorphism) -> FreeEndomorphism {
        assert_eq!(self.rank, other.rank);
        FreeEndomorphism {
            rank: self.rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    pub fn power(&self, k: usize) -> FreeEndomorphism {
        let mut out = FreeEndomorphism::identity(self.rank);
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Column `j` is the abelianized image of generator `j`.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let n = self.rank;
        let mut rows = vec![vec![0i64; n]; n];
        for (j, w) in self.images.iter().enumerate() {
            for (i, v) in w.exponent_vector(n).into_iter().enumerate() {
                rows[i][j] = v;
            }
        }
        IntMatrix::from_rows(rows)
    }

    /// Decides whether the endomorphism is an automorphism by Nielsen-reducing
    /// the image tuple; on success the move log yields the inverse.
    ///
    /// The abelianized determinant is a necessary pre-filter; the tuple is a
    /// basis exactly when reduction reaches a permuted, possibly inverted,
    /// generator tuple.
    pub fn is_automorphism(&self) -> Option<FreeEndomorphism> {
        if self.rank == 0 {
            return Some(self.clone());
        }
        let det = self.abelianized_matrix().det().ok()?;
        if *det.magnitude() != num_bigint::BigUint::from(1u32) {
            return None;
        }
        let (moves, sp) = reduce_to_basis(&self.images, self.rank)?;
        // tuple moves are precompositions with elementary automorphisms:
        // phi o e1 o ... o ek = sigma, so phi^-1 = e1 o ... o ek o sigma^-1
        let mut inverse_images: Vec<Word> = Vec::with_capacity(self.rank);
        let mut sigma_inv: Vec<Word> = vec![Word::identity(); self.rank];
        for (i, &g) in sp.perm.iter().enumerate() {
            sigma_inv[g] = Word::generator_pow(i, sp.signs[i]);
        }
        for l in 0..self.rank {
            let mut w = sigma_inv[l].clone();
            for mv in moves.iter().rev() {
                w = apply_elementary(mv, &w, self.rank);
            }
            inverse_images.push(w);
        }
        let inverse = FreeEndomorphism {
            rank: self.rank,
            images: inverse_images,
        };
        debug_assert_eq!(self.compose(&inverse), FreeEndomorphism::identity(self.rank));
        debug_assert_eq!(inverse.compose(self), FreeEndomorphism::identity(self.rank));
        Some(inverse)
    }

    /// Mapping torus `F_n ⋊ Z`: generators x1..xn plus the stable letter t,
    /// one relator `t x_i t^-1 α(x_i)^-1` per generator.
    pub fn mapping_torus(&self) -> Result<Presentation> {
        if self.is_automorphism().is_none() {
            return Err(Error::NotAutomorphism(
                "mapping torus requires an automorphism".into(),
            ));
        }
        let n = self.rank;
        let mut names = Presentation::default_names(n);
        names.push("t".to_string());
        let t = Word::generator(n);
        let relators: Vec<Word> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                t.multiply(&Word::generator(i))
                    .multiply(&t.inverse())
                    .multiply(&img.inverse())
            })
            .collect();
        Presentation::new(names, relators)
    }

    /// Rank-2n map acting as `self` on the first block and as the
    /// index-shifted copy on the second.
    pub fn double(&self) -> FreeEndomorphism {
        let n = self.rank;
        let mut images = self.images.clone();
        images.extend(
            self.images
                .iter()
                .map(|w| w.map_generators(|g| g + n)),
        );
        FreeEndomorphism {
            rank: 2 * n,
            images,
        }
    }

    /// Splits along the invariant free factor on the first `split` generators:
    /// returns the restriction and the quotient map (letters of the factor
    /// deleted). The quotient of an automorphism is again one; a failure there
    /// is an internal error.
    pub fn restriction_and_quotient(
        &self,
        split: usize,
    ) -> Result<(FreeEndomorphism, FreeEndomorphism)> {
        if split == 0 || split >= self.rank {
            return Err(Error::Invalid(format!(
                "split {} must be strictly between 0 and rank {}",
                split, self.rank
            )));
        }
        for (i, w) in self.images[..split].iter().enumerate() {
            if let Some(g) = w.max_generator() {
                if g >= split {
                    return Err(Error::Invalid(format!(
                        "image of generator {} leaves the invariant factor",
                        i
                    )));
                }
            }
        }
        let restricted = FreeEndomorphism {
            rank: split,
            images: self.images[..split].to_vec(),
        };
        let quotient_images: Vec<Word> = self.images[split..]
            .iter()
            .map(|w| {
                w.delete_generators(|g| g < split)
                    .map_generators(|g| g - split)
            })
            .collect();
        let quotient = FreeEndomorphism {
            rank: self.rank - split,
            images: quotient_images,
        };
        if quotient.is_automorphism().is_none() {
            return Err(Error::Internal(
                "quotient of an automorphism failed the automorphism test".into(),
            ));
        }
        Ok((restricted, quotient))
    }
}

/// Applies the elementary automorphism corresponding to a Nielsen move to a
/// word by substitution.
fn apply_elementary(mv: &NielsenMove, w: &Word, rank: usize) -> Word {
    let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
    match *mv {
        NielsenMove::RightMul { target, by, inv } => {
            let f = Word::generator_pow(by, if inv { -1 } else { 1 });
            images[target] = Word::generator(target).multiply(&f);
        }
        NielsenMove::LeftMul { target, by, inv } => {
            let f = Word::generator_pow(by, if inv { -1 } else { 1 });
            images[target] = f.multiply(&Word::generator(target));
        }
        NielsenMove::Invert { target } => {
            images[target] = Word::generator_pow(target, -1);
        }
    }
    w.substitute(&images)
}

/// The rank-3 automorphism x -> y, y -> z, z -> xy: its mapping torus is
/// word hyperbolic with a PV characteristic polynomial.
pub fn example_xyz_automorphism() -> FreeEndomorphism {
    FreeEndomorphism::new(
        3,
        vec![
            Word::generator(1),
            Word::generator(2),
            Word::generator(0).multiply(&Word::generator(1)),
        ],
    )
    .unwrap()
}
