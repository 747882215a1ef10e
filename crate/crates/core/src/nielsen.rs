//! Nielsen reduction of word tuples and basis recognition.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::Word;

/// One elementary Nielsen transformation on a tuple.
///
/// `RightMul { target: i, by: j, inv }` replaces `w_i` with `w_i * w_j^(±1)`,
/// `LeftMul` multiplies on the left, `Invert` replaces `w_i` with its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NielsenMove {
    RightMul { target: usize, by: usize, inv: bool },
    LeftMul { target: usize, by: usize, inv: bool },
    Invert { target: usize },
}

impl NielsenMove {
    pub fn apply(&self, tuple: &mut [Word]) {
        match *self {
            NielsenMove::RightMul { target, by, inv } => {
                let f = if inv {
                    tuple[by].inverse()
                } else {
                    tuple[by].clone()
                };
                tuple[target] = tuple[target].multiply(&f);
            }
            NielsenMove::LeftMul { target, by, inv } => {
                let f = if inv {
                    tuple[by].inverse()
                } else {
                    tuple[by].clone()
                };
                tuple[target] = f.multiply(&tuple[target]);
            }
            NielsenMove::Invert { target } => {
                tuple[target] = tuple[target].inverse();
            }
        }
    }
}

/// Replays a move log from scratch.
pub fn replay(tuple: &[Word], moves: &[NielsenMove]) -> Vec<Word> {
    let mut t = tuple.to_vec();
    for m in moves {
        m.apply(&mut t);
    }
    t
}

#[derive(Clone, Debug)]
pub struct NielsenReduction {
    pub tuple: Vec<Word>,
    pub moves: Vec<NielsenMove>,
    /// Positions holding the identity in the reduced tuple.
    pub identity_positions: Vec<usize>,
}

fn total_length(tuple: &[Word]) -> u64 {
    tuple.iter().map(|w| w.length()).sum()
}

/// Finds the first elementary multiplication that strictly shortens the tuple.
fn find_decreasing_move(tuple: &[Word]) -> Option<NielsenMove> {
    for i in 0..tuple.len() {
        if tuple[i].is_identity() {
            continue;
        }
        for j in 0..tuple.len() {
            if i == j || tuple[j].is_identity() {
                continue;
            }
            for &inv in &[false, true] {
                let f = if inv {
                    tuple[j].inverse()
                } else {
                    tuple[j].clone()
                };
                if tuple[i].multiply(&f).length() < tuple[i].length() {
                    return Some(NielsenMove::RightMul {
                        target: i,
                        by: j,
                        inv,
                    });
                }
                if f.multiply(&tuple[i]).length() < tuple[i].length() {
                    return Some(NielsenMove::LeftMul {
                        target: i,
                        by: j,
                        inv,
                    });
                }
            }
        }
    }
    None
}

/// Nielsen-reduces a tuple of words in the rank-`rank` free group.
///
/// The result admits no elementary Nielsen move that strictly decreases total
/// length, the move log replays the transformation exactly, and total length
/// never increases at any step.
pub fn nielsen_reduce(tuple: &[Word], rank: usize) -> Result<NielsenReduction> {
    for w in tuple {
        if let Some(g) = w.max_generator() {
            if g >= rank {
                return Err(Error::Invalid(format!(
                    "word uses generator {} outside rank {}",
                    g, rank
                )));
            }
        }
    }
    let mut t = tuple.to_vec();
    let mut moves = Vec::new();
    while let Some(m) = find_decreasing_move(&t) {
        m.apply(&mut t);
        moves.push(m);
    }
    let identity_positions = t
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_identity())
        .map(|(i, _)| i)
        .collect();
    Ok(NielsenReduction {
        tuple: t,
        moves,
        identity_positions,
    })
}

/// A tuple that is a signed permutation of the rank-`n` basis:
/// `perm[i]` is the generator at position `i`, `signs[i]` its exponent sign.
#[derive(Clone, Debug)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
}

fn as_signed_permutation(tuple: &[Word], rank: usize) -> Option<SignedPermutation> {
    if tuple.len() != rank {
        return None;
    }
    let mut perm = vec![usize::MAX; rank];
    let mut signs = vec![0i64; rank];
    let mut seen = vec![false; rank];
    for (i, w) in tuple.iter().enumerate() {
        let runs = w.runs();
        if runs.len() != 1 || runs[0].1.abs() != 1 {
            return None;
        }
        let (g, e) = runs[0];
        if seen[g] {
            return None;
        }
        seen[g] = true;
        perm[i] = g;
        signs[i] = e;
    }
    Some(SignedPermutation { perm, signs })
}

const PLATEAU_CAP: usize = 20_000;

/// Reduces `tuple` to a signed permutation of the basis if it is one, returning
/// the full move log. Strictly decreasing moves are preferred; when the greedy
/// reduction stalls above length `rank`, the (finite) plateau of tuples
/// reachable by length-preserving moves is searched for an exit.
pub fn reduce_to_basis(tuple: &[Word], rank: usize) -> Option<(Vec<NielsenMove>, SignedPermutation)> {
    if tuple.len() != rank {
        return None;
    }
    let mut t = tuple.to_vec();
    let mut moves: Vec<NielsenMove> = Vec::new();
    loop {
        while let Some(m) = find_decreasing_move(&t) {
            m.apply(&mut t);
            moves.push(m);
        }
        if let Some(sp) = as_signed_permutation(&t, rank) {
            return Some((moves, sp));
        }
        if total_length(&t) <= rank as u64 {
            // minimal-length but not a signed permutation: not a basis
            return None;
        }
        // breadth-first search over the plateau of equal-length tuples
        let mut visited: BTreeSet<Vec<Word>> = BTreeSet::new();
        visited.insert(t.clone());
        let mut frontier: Vec<(Vec<Word>, Vec<NielsenMove>)> = vec![(t.clone(), Vec::new())];
        let mut exit: Option<(Vec<Word>, Vec<NielsenMove>)> = None;
        'search: while let Some((cur, path)) = frontier.pop() {
            for i in 0..rank {
                for j in 0..rank {
                    if i == j {
                        continue;
                    }
                    for &inv in &[false, true] {
                        for m in [
                            NielsenMove::RightMul { target: i, by: j, inv },
                            NielsenMove::LeftMul { target: i, by: j, inv },
                        ] {
                            let mut next = cur.clone();
                            m.apply(&mut next);
                            let mut p = path.clone();
                            p.push(m);
                            if total_length(&next) < total_length(&cur) {
                                exit = Some((next, p));
                                break 'search;
                            }
                            if total_length(&next) == total_length(&cur)
                                && visited.len() < PLATEAU_CAP
                                && visited.insert(next.clone())
                            {
                                frontier.push((next, p));
                            }
                        }
                    }
                }
            }
        }
        match exit {
            Some((next, path)) => {
                t = next;
                moves.extend(path);
            }
            None => return None,
        }
    }
}
