//! Low-index subgroup enumeration by depth-first extension of partial coset
//! tables with deduction-queue relator propagation and first-in-class pruning.

use std::collections::VecDeque;

use crate::coset::{table_from_permutations, CosetTable};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

fn inv_col(c: usize) -> usize {
    c ^ 1
}

struct Search {
    ncols: usize,
    max_index: usize,
    /// `rotations[c]`: every cyclic rotation of every relator whose first
    /// column is `c`; a new edge only needs scans of these from its source.
    rotations: Vec<Vec<Vec<usize>>>,
    table: Vec<Vec<Option<usize>>>,
    /// undo log of (coset, col) cells that were set
    trail: Vec<(usize, usize)>,
    /// freshly set edges awaiting relator scans
    queue: VecDeque<(usize, usize)>,
    found: Vec<Vec<Vec<Option<usize>>>>,
}

enum Scan {
    Ok,
    Contradiction,
    Deduce(usize, usize, usize),
}

impl Search {
    fn set(&mut self, q: usize, c: usize, t: usize) {
        debug_assert!(self.table[q][c].is_none());
        debug_assert!(self.table[t][inv_col(c)].is_none());
        self.table[q][c] = Some(t);
        self.trail.push((q, c));
        self.table[t][inv_col(c)] = Some(q);
        self.trail.push((t, inv_col(c)));
        self.queue.push_back((q, c));
    }

    fn undo_to(&mut self, mark: usize, cosets: usize) {
        while self.trail.len() > mark {
            let (q, c) = self.trail.pop().unwrap();
            self.table[q][c] = None;
        }
        self.table.truncate(cosets);
    }

    fn scan(&self, start: usize, cols: &[usize]) -> Scan {
        let mut f = start;
        let mut i = 0usize;
        while i < cols.len() {
            match self.table[f][cols[i]] {
                Some(t) => {
                    f = t;
                    i += 1;
                }
                None => break,
            }
        }
        if i == cols.len() {
            return if f == start {
                Scan::Ok
            } else {
                Scan::Contradiction
            };
        }
        let mut b = start;
        let mut j = cols.len();
        while j > i {
            match self.table[b][inv_col(cols[j - 1])] {
                Some(t) => {
                    b = t;
                    j -= 1;
                }
                None => break,
            }
        }
        if j == i {
            // both scans cover the word; mismatched middles collide
            if f == b {
                Scan::Ok
            } else {
                Scan::Contradiction
            }
        } else if j == i + 1 {
            Scan::Deduce(f, cols[i], b)
        } else {
            Scan::Ok
        }
    }

    /// Drains the deduction queue, scanning only relator rotations through
    /// each new edge. Returns false on contradiction.
    fn propagate(&mut self) -> bool {
        while let Some((q, c)) = self.queue.pop_front() {
            let t = match self.table[q][c] {
                Some(t) => t,
                None => continue,
            };
            for (start, col) in [(q, c), (t, inv_col(c))] {
                for ri in 0..self.rotations[col].len() {
                    let cols = std::mem::take(&mut self.rotations[col][ri]);
                    let result = self.scan(start, &cols);
                    self.rotations[col][ri] = cols;
                    match result {
                        Scan::Ok => {}
                        Scan::Contradiction => {
                            self.queue.clear();
                            return false;
                        }
                        Scan::Deduce(f, dc, b) => self.set(f, dc, b),
                    }
                }
            }
        }
        true
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        for q in 0..self.table.len() {
            for c in 0..self.ncols {
                if self.table[q][c].is_none() {
                    return Some((q, c));
                }
            }
        }
        None
    }

    /// Relabeling of the complete table standardized from `base`.
    fn standardized_from(&self, base: usize) -> Option<Vec<Vec<usize>>> {
        let n = self.table.len();
        let mut label = vec![usize::MAX; n];
        let mut order = vec![base];
        label[base] = 0;
        let mut next = 1usize;
        let mut i = 0usize;
        while i < order.len() {
            let q = order[i];
            for c in 0..self.ncols {
                let t = self.table[q][c]?;
                if label[t] == usize::MAX {
                    label[t] = next;
                    order.push(t);
                    next += 1;
                }
            }
            i += 1;
        }
        if next != n {
            return None;
        }
        let mut out = vec![vec![0usize; self.ncols]; n];
        for q in 0..n {
            for c in 0..self.ncols {
                out[label[q]][c] = label[self.table[q][c].unwrap()];
            }
        }
        Some(out)
    }

    /// Complete tables are kept only when no base change yields a
    /// lexicographically smaller table (one representative per conjugacy
    /// class).
    fn is_canonical(&self) -> bool {
        let current = match self.standardized_from(0) {
            Some(t) => t,
            None => return false,
        };
        for base in 1..self.table.len() {
            if let Some(other) = self.standardized_from(base) {
                if other < current {
                    return false;
                }
            }
        }
        true
    }

    /// Partial canonicity: if relabeling the table from some other base is
    /// already lexicographically smaller on the defined prefix, no completion
    /// of this node can be canonical. Comparison stops at the first position
    /// undefined on either side.
    fn partial_prune(&self) -> bool {
        (1..self.table.len()).any(|base| self.relabel_smaller_prefix(base))
    }

    fn relabel_smaller_prefix(&self, base: usize) -> bool {
        let n = self.table.len();
        let mut label = vec![usize::MAX; n];
        let mut order = vec![base];
        label[base] = 0;
        let mut next = 1usize;
        let mut i = 0usize;
        while i < order.len() {
            let q = order[i];
            for c in 0..self.ncols {
                let t = match self.table[q][c] {
                    Some(t) => t,
                    None => return false,
                };
                let cur = match self.table.get(i).and_then(|row| row[c]) {
                    Some(v) => v,
                    None => return false,
                };
                let rel = if label[t] == usize::MAX {
                    label[t] = next;
                    order.push(t);
                    next += 1;
                    next - 1
                } else {
                    label[t]
                };
                if rel < cur {
                    return true;
                }
                if rel > cur {
                    return false;
                }
            }
            i += 1;
        }
        false
    }

    fn recurse(&mut self) {
        if self.partial_prune() {
            return;
        }
        let (q, c) = match self.first_undefined() {
            Some(x) => x,
            None => {
                if self.is_canonical() {
                    self.found.push(self.table.clone());
                }
                return;
            }
        };
        let k = self.table.len();
        for t in 0..k {
            if self.table[t][inv_col(c)].is_some() {
                continue;
            }
            let mark = self.trail.len();
            self.set(q, c, t);
            if self.propagate() {
                self.recurse();
            }
            self.undo_to(mark, k);
        }
        if k < self.max_index {
            let mark = self.trail.len();
            self.table.push(vec![None; self.ncols]);
            self.set(q, c, k);
            if self.propagate() {
                self.recurse();
            }
            self.undo_to(mark, k);
        }
    }
}

/// Enumerates one standardized coset table per conjugacy class of subgroups of
/// index at most `max_index`, in lexicographic order of (index, table).
pub fn low_index_subgroups(p: &Presentation, max_index: usize) -> Result<Vec<CosetTable>> {
    if max_index < 1 {
        return Err(Error::Invalid("max_index must be at least 1".into()));
    }
    let m = p.gen_count();
    let mut rotations: Vec<Vec<Vec<usize>>> = vec![Vec::new(); 2 * m];
    for r in p.relators() {
        let cols: Vec<usize> = r
            .letters()
            .map(|(g, s)| 2 * g + usize::from(s < 0))
            .collect();
        for k in 0..cols.len() {
            let rot: Vec<usize> = cols[k..].iter().chain(&cols[..k]).copied().collect();
            rotations[rot[0]].push(rot);
        }
    }
    let mut search = Search {
        ncols: 2 * m,
        max_index,
        rotations,
        table: vec![vec![None; 2 * m]],
        trail: Vec::new(),
        queue: VecDeque::new(),
        found: Vec::new(),
    };
    search.recurse();
    let mut tables = search.found;
    tables.sort_by_key(|t| (t.len(), flatten(t)));
    tables
        .into_iter()
        .map(|t| {
            let n = t.len();
            let mut perms = vec![vec![0usize; n]; m];
            let mut perms_inv = vec![vec![0usize; n]; m];
            for q in 0..n {
                for g in 0..m {
                    perms[g][q] = t[q][2 * g].unwrap();
                    perms_inv[g][q] = t[q][2 * g + 1].unwrap();
                }
            }
            let table = table_from_permutations(p, &perms, &perms_inv)?;
            table.validate()?;
            Ok(table)
        })
        .collect()
}

fn flatten(t: &[Vec<Option<usize>>]) -> Vec<usize> {
    t.iter()
        .flat_map(|row| row.iter().map(|x| x.unwrap()))
        .collect()
}
