//! Small permutation groups by exhaustive closure: enough for classifying
//! low-degree finite images and for brute-force order searches.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    // apply a first, then b
    a.iter().map(|&x| b[x]).collect()
}

pub fn perm_inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn perm_order(a: &Perm) -> usize {
    let id = perm_identity(a.len());
    let mut p = a.clone();
    let mut k = 1;
    while p != id {
        p = perm_compose(&p, a);
        k += 1;
    }
    k
}

/// A finite permutation group with its full (sorted) element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
}

impl PermGroup {
    /// Closes the generators under composition. `max_order` guards runaway
    /// groups.
    pub fn generate(degree: usize, generators: &[Perm], max_order: usize) -> Result<PermGroup> {
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(perm_identity(degree));
        let mut frontier: Vec<Perm> = vec![perm_identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = perm_compose(&p, g);
                if set.insert(q.clone()) {
                    if set.len() > max_order {
                        return Err(Error::OrderGuard(set.len(), max_order));
                    }
                    frontier.push(q);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators: generators.to_vec(),
            elements: set.into_iter().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if perm_compose(a, b) != perm_compose(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Derived subgroup: generated by all commutators of elements.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms: BTreeSet<Perm> = BTreeSet::new();
        for a in &self.elements {
            for b in &self.elements {
                let c = perm_compose(
                    &perm_compose(a, b),
                    &perm_compose(&perm_inverse(a), &perm_inverse(b)),
                );
                comms.insert(c);
            }
        }
        let gens: Vec<Perm> = comms.into_iter().collect();
        PermGroup::generate(self.degree, &gens, self.order())
    }

    pub fn is_metabelian(&self) -> Result<bool> {
        let d = self.derived_subgroup()?;
        let dd = d.derived_subgroup()?;
        Ok(dd.order() == 1)
    }

    /// Metacyclic: has a cyclic normal subgroup with cyclic quotient, found by
    /// direct search over cyclic subgroups.
    pub fn is_metacyclic(&self) -> bool {
        let n = self.order();
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        for g in &self.elements {
            let cyc = cyclic_subgroup(g);
            let mut sorted = cyc.clone();
            sorted.sort();
            if !seen.insert(sorted.clone()) {
                continue;
            }
            let csize = cyc.len();
            if n % csize != 0 {
                continue;
            }
            let quotient_order = n / csize;
            if !self.is_normal_subset(&sorted) {
                continue;
            }
            if quotient_order == 1 {
                return true;
            }
            // quotient cyclic iff some coset has order = quotient_order
            let in_sub = |p: &Perm| sorted.binary_search(p).is_ok();
            for h in &self.elements {
                let mut power = h.clone();
                let mut k = 1usize;
                while !in_sub(&power) {
                    power = perm_compose(&power, h);
                    k += 1;
                }
                if k == quotient_order {
                    return true;
                }
            }
        }
        false
    }

    fn is_normal_subset(&self, sorted_subgroup: &[Perm]) -> bool {
        for g in &self.generators {
            let gi = perm_inverse(g);
            for s in sorted_subgroup {
                let conj = perm_compose(&perm_compose(&gi, s), g);
                if sorted_subgroup.binary_search(&conj).is_err() {
                    return false;
                }
            }
        }
        true
    }
}

fn cyclic_subgroup(g: &Perm) -> Vec<Perm> {
    let mut out = vec![perm_identity(g.len())];
    let mut p = g.clone();
    while p != perm_identity(g.len()) {
        out.push(p.clone());
        p = perm_compose(&p, g);
    }
    out
}
