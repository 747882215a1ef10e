//! Todd–Coxeter coset enumeration, Schreier transversals, Reidemeister–Schreier
//! subgroup presentations, intersections and homomorphism preimages.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Completed, standardized coset table: the action of the generators on the
/// right cosets of a finite-index subgroup.
///
/// Cosets are numbered in order of first appearance in a row-major scan of the
/// table, columns ordered `g0, g0^-1, g1, g1^-1, ...`; coset 0 is the
/// subgroup itself. Two tables compare equal when they have the same origin
/// presentation and the same action (the recorded subgroup generators are a
/// witness, not part of the identity).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup_generators: Vec<Word>,
    /// `action[g][q]` is the coset `q * g`.
    action: Vec<Vec<usize>>,
    /// `action_inv[g][q]` is the coset `q * g^-1`.
    action_inv: Vec<Vec<usize>>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.action == other.action
    }
}

impl Eq for CosetTable {}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.action.first().map_or(1, |col| col.len())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    pub fn action(&self, gen: usize, coset: usize) -> usize {
        self.action[gen][coset]
    }

    /// Table of the whole group (index 1).
    pub fn whole_group(p: &Presentation) -> CosetTable {
        let m = p.gen_count();
        CosetTable {
            presentation: p.clone(),
            subgroup_generators: (0..m).map(Word::generator).collect(),
            action: vec![vec![0]; m],
            action_inv: vec![vec![0]; m],
        }
    }

    pub fn trace(&self, start: usize, w: &Word) -> usize {
        let mut q = start;
        for (g, s) in w.letters() {
            q = if s > 0 {
                self.action[g][q]
            } else {
                self.action_inv[g][q]
            };
        }
        q
    }

    /// Re-verifies every type invariant: total bijective columns, relators
    /// acting trivially from every coset, subgroup generators fixing coset 0,
    /// and standardized numbering.
    pub fn validate(&self) -> Result<()> {
        let n = self.index();
        let m = self.presentation.gen_count();
        if self.action.len() != m || self.action_inv.len() != m {
            return Err(Error::Internal("wrong number of columns".into()));
        }
        for g in 0..m {
            let mut seen = vec![false; n];
            for q in 0..n {
                let t = self.action[g][q];
                if t >= n || seen[t] {
                    return Err(Error::Internal(format!("column {} is not a bijection", g)));
                }
                seen[t] = true;
                if self.action_inv[g][t] != q {
                    return Err(Error::Internal(format!(
                        "column {} inverse mismatch at {}",
                        g, q
                    )));
                }
            }
        }
        for (i, r) in self.presentation.relators().iter().enumerate() {
            for q in 0..n {
                if self.trace(q, r) != q {
                    return Err(Error::Internal(format!(
                        "relator {} does not act trivially from coset {}",
                        i, q
                    )));
                }
            }
        }
        for (i, w) in self.subgroup_generators.iter().enumerate() {
            if self.trace(0, w) != 0 {
                return Err(Error::Internal(format!(
                    "subgroup generator {} moves coset 0",
                    i
                )));
            }
        }
        // standardization: first appearances in row-major scan are increasing
        let mut next = 1usize;
        for q in 0..n {
            for c in 0..2 * m {
                let t = self.column(c)[q];
                if t == next {
                    next += 1;
                } else if t > next {
                    return Err(Error::Internal("table is not standardized".into()));
                }
            }
        }
        if next != n {
            return Err(Error::Internal("table is not transitive".into()));
        }
        Ok(())
    }

    fn column(&self, c: usize) -> &[usize] {
        if c % 2 == 0 {
            &self.action[c / 2]
        } else {
            &self.action_inv[c / 2]
        }
    }

    /// Schreier transversal read off the standardized table: `reps[q]` carries
    /// coset 0 to coset q; `tree[q]` is the discovering edge of `q`.
    fn schreier_tree(&self) -> (Vec<Word>, Vec<Option<(usize, usize)>>) {
        let n = self.index();
        let m = self.presentation.gen_count();
        let mut reps: Vec<Word> = vec![Word::identity(); n];
        let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut next = 1usize;
        for q in 0..n {
            for c in 0..2 * m {
                let t = self.column(c)[q];
                if t == next {
                    tree[t] = Some((q, c));
                    let letter = if c % 2 == 0 {
                        Word::generator(c / 2)
                    } else {
                        Word::generator_pow(c / 2, -1)
                    };
                    reps[t] = reps[q].multiply(&letter);
                    next += 1;
                }
            }
        }
        (reps, tree)
    }

    /// Is the forward edge `q --g--> target` part of the Schreier tree?
    fn is_tree_edge(tree: &[Option<(usize, usize)>], q: usize, g: usize, t: usize) -> bool {
        tree[t] == Some((q, 2 * g)) || tree[q] == Some((t, 2 * g + 1))
    }

    /// One Schreier generator per non-tree edge, in row-major order.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let (reps, tree) = self.schreier_tree();
        let n = self.index();
        let m = self.presentation.gen_count();
        let mut out = Vec::new();
        for q in 0..n {
            for g in 0..m {
                let t = self.action[g][q];
                if !Self::is_tree_edge(&tree, q, g, t) {
                    let w = reps[q]
                        .multiply(&Word::generator(g))
                        .multiply(&reps[t].inverse());
                    out.push(w);
                }
            }
        }
        out
    }

    /// Rewrites a word lying in the subgroup over the Schreier generators
    /// (indices match `schreier_generators`).
    pub fn schreier_rewrite(&self, w: &Word) -> Result<Word> {
        let (_, tree) = self.schreier_tree();
        let n = self.index();
        let m = self.presentation.gen_count();
        // non-tree edge (q, g) -> schreier index
        let mut edge_index = vec![vec![None; m]; n];
        let mut k = 0usize;
        for q in 0..n {
            for g in 0..m {
                let t = self.action[g][q];
                if !Self::is_tree_edge(&tree, q, g, t) {
                    edge_index[q][g] = Some(k);
                    k += 1;
                }
            }
        }
        let mut out = Word::identity();
        let mut q = 0usize;
        for (g, s) in w.letters() {
            if s > 0 {
                if let Some(i) = edge_index[q][g] {
                    out = out.multiply(&Word::generator(i));
                }
                q = self.action[g][q];
            } else {
                let prev = self.action_inv[g][q];
                if let Some(i) = edge_index[prev][g] {
                    out = out.multiply(&Word::generator_pow(i, -1));
                }
                q = prev;
            }
        }
        if q != 0 {
            return Err(Error::Invalid(
                "word does not lie in the subgroup of the table".into(),
            ));
        }
        Ok(out)
    }
}

/// Raw Reidemeister–Schreier output. `raw_relator_count` includes relators
/// that rewrote to the identity (they are not stored in the presentation).
#[derive(Clone, Debug)]
pub struct RsOutput {
    pub presentation: Presentation,
    /// For each subgroup generator, its expression as a word of the origin group.
    pub schreier_words: Vec<Word>,
    pub raw_generator_count: usize,
    pub raw_relator_count: usize,
    pub trivial_relators: usize,
}

/// Presentation of the subgroup of `t` on its Schreier generators, with
/// relators obtained by rewriting each relator of the origin presentation from
/// each coset.
pub fn rs_presentation(t: &CosetTable) -> Result<RsOutput> {
    let schreier_words = t.schreier_generators();
    let names: Vec<String> = (1..=schreier_words.len())
        .map(|i| format!("s{}", i))
        .collect();
    let n = t.index();
    let p = t.presentation();
    let (reps, _) = t.schreier_tree();
    let mut relators = Vec::new();
    let mut trivial = 0usize;
    for q in 0..n {
        for rel in p.relators() {
            let conj = rel.conjugate_by(&reps[q]);
            let rewritten = t.schreier_rewrite(&conj)?;
            if rewritten.is_identity() {
                trivial += 1;
            }
            relators.push(rewritten);
        }
    }
    let raw_relator_count = relators.len();
    let presentation = Presentation::new(names, relators)?;
    Ok(RsOutput {
        raw_generator_count: schreier_words.len(),
        raw_relator_count,
        trivial_relators: trivial,
        presentation,
        schreier_words,
    })
}

// --- Todd-Coxeter enumeration ---

fn inv_col(c: usize) -> usize {
    c ^ 1
}

fn word_cols(w: &Word) -> Vec<usize> {
    w.letters()
        .map(|(g, s)| 2 * g + usize::from(s < 0))
        .collect()
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    dead_queue: VecDeque<usize>,
    live: usize,
    max_cosets: usize,
}

impl Enumerator {
    fn new(ncols: usize, max_cosets: usize) -> Self {
        Enumerator {
            ncols,
            table: vec![vec![None; ncols]],
            parent: vec![0],
            dead_queue: VecDeque::new(),
            live: 1,
            max_cosets,
        }
    }

    fn rep(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            let gp = self.parent[self.parent[a]];
            self.parent[a] = gp;
            a = gp;
        }
        a
    }

    fn is_live(&self, a: usize) -> bool {
        self.parent[a] == a
    }

    fn new_coset(&mut self) -> Result<usize> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::CosetLimit(self.max_cosets));
        }
        let id = self.table.len();
        self.table.push(vec![None; self.ncols]);
        self.parent.push(id);
        self.live += 1;
        Ok(id)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        self.live -= 1;
        self.dead_queue.push_back(kill);
    }

    fn process_coincidences(&mut self) {
        while let Some(e) = self.dead_queue.pop_front() {
            for c in 0..self.ncols {
                let t = match self.table[e][c].take() {
                    Some(t) => t,
                    None => continue,
                };
                if self.table[t][inv_col(c)] == Some(e) {
                    self.table[t][inv_col(c)] = None;
                }
                let e1 = self.rep(e);
                let t1 = self.rep(t);
                match self.table[e1][c] {
                    Some(u) => self.merge(u, t1),
                    None => match self.table[t1][inv_col(c)] {
                        Some(u) => self.merge(u, e1),
                        None => {
                            self.table[e1][c] = Some(t1);
                            self.table[t1][inv_col(c)] = Some(e1);
                        }
                    },
                }
            }
        }
    }

    fn set(&mut self, a: usize, c: usize, b: usize) {
        match self.table[a][c] {
            Some(u) => self.merge(u, b),
            None => match self.table[b][inv_col(c)] {
                Some(u) => self.merge(u, a),
                None => {
                    self.table[a][c] = Some(b);
                    self.table[b][inv_col(c)] = Some(a);
                }
            },
        }
        self.process_coincidences();
    }

    /// Scans `cols` from `start` and fills gaps with new cosets, closing the
    /// final edge by deduction or coincidence.
    fn scan_and_fill(&mut self, start: usize, cols: &[usize]) -> Result<()> {
        if cols.is_empty() {
            return Ok(());
        }
        loop {
            let s = self.rep(start);
            // forward scan
            let mut f = s;
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
                if f != s {
                    self.merge(f, s);
                    self.process_coincidences();
                }
                return Ok(());
            }
            // backward scan from the end of the word
            let mut b = s;
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
                // both scans reached position i: the cosets must coincide
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                // the forward edge at position i exists now; rescan
            } else if j == i + 1 {
                // single gap: deduction closes the word
                self.set(f, cols[i], b);
            } else {
                let n = self.new_coset()?;
                self.set(f, cols[i], n);
            }
        }
    }
}

/// Runs coset enumeration for the subgroup generated by `gens`, returning the
/// completed standardized table. Deterministic for fixed inputs; exceeding
/// `max_cosets` live rows is a resource error, never a mathematical claim.
pub fn todd_coxeter(p: &Presentation, gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let m = p.gen_count();
    for w in gens.iter().chain(p.relators()) {
        if let Some(g) = w.max_generator() {
            if g >= m {
                return Err(Error::Invalid("word outside presentation generators".into()));
            }
        }
    }
    let mut e = Enumerator::new(2 * m, max_cosets);
    let rel_cols: Vec<Vec<usize>> = p.relators().iter().map(word_cols).collect();
    for w in gens {
        e.scan_and_fill(0, &word_cols(w))?;
    }
    let mut q = 0usize;
    while q < e.table.len() {
        if e.is_live(q) {
            for cols in &rel_cols {
                e.scan_and_fill(q, cols)?;
                if !e.is_live(q) {
                    break;
                }
            }
            // totalize the row so generators outside relators get defined
            if e.is_live(q) {
                for c in 0..2 * m {
                    if e.is_live(q) && e.table[q][c].is_none() {
                        let n = e.new_coset()?;
                        e.set(q, c, n);
                    }
                }
            }
        }
        q += 1;
    }
    let table = finish(p, gens.to_vec(), e)?;
    table.validate()?;
    Ok(table)
}

/// Compacts and standardizes a completed enumeration.
fn finish(p: &Presentation, gens: Vec<Word>, mut e: Enumerator) -> Result<CosetTable> {
    let m = p.gen_count();
    let total = e.table.len();
    // compact: live cosets in increasing order
    let mut compact = vec![usize::MAX; total];
    let mut live_rows: Vec<usize> = Vec::new();
    for q in 0..total {
        if e.is_live(q) {
            compact[q] = live_rows.len();
            live_rows.push(q);
        }
    }
    let n = live_rows.len();
    let mut fwd = vec![vec![usize::MAX; n]; m];
    let mut bwd = vec![vec![usize::MAX; n]; m];
    for (new_q, &old_q) in live_rows.iter().enumerate() {
        for g in 0..m {
            let t = e.table[old_q][2 * g]
                .ok_or_else(|| Error::Internal("incomplete table".into()))?;
            let t = e.rep(t);
            fwd[g][new_q] = compact[t];
            let t = e.table[old_q][2 * g + 1]
                .ok_or_else(|| Error::Internal("incomplete table".into()))?;
            let t = e.rep(t);
            bwd[g][new_q] = compact[t];
        }
    }
    // standardize: BFS renumbering in row-major scan order
    let col = |c: usize, q: usize| -> usize {
        if c % 2 == 0 {
            fwd[c / 2][q]
        } else {
            bwd[c / 2][q]
        }
    };
    let mut label = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    label[0] = 0;
    order.push(0);
    let mut next = 1usize;
    let mut i = 0usize;
    while i < order.len() {
        let q = order[i];
        for c in 0..2 * m {
            let t = col(c, q);
            if label[t] == usize::MAX {
                label[t] = next;
                order.push(t);
                next += 1;
            }
        }
        i += 1;
    }
    if next != n {
        return Err(Error::Internal("table is not transitive".into()));
    }
    let mut action = vec![vec![0usize; n]; m];
    let mut action_inv = vec![vec![0usize; n]; m];
    for q in 0..n {
        for g in 0..m {
            action[g][label[q]] = label[fwd[g][q]];
            action_inv[g][label[q]] = label[bwd[g][q]];
        }
    }
    Ok(CosetTable {
        presentation: p.clone(),
        subgroup_generators: gens,
        action,
        action_inv,
    })
}

/// Builds a standardized table directly from complete generator permutations
/// (the orbit of coset 0 must be everything and relators must act trivially).
pub(crate) fn table_from_permutations(
    p: &Presentation,
    perms: &[Vec<usize>],
    perms_inv: &[Vec<usize>],
) -> Result<CosetTable> {
    let m = p.gen_count();
    let n = perms.first().map_or(1, |v| v.len());
    let col = |c: usize, q: usize| -> usize {
        if c % 2 == 0 {
            perms[c / 2][q]
        } else {
            perms_inv[c / 2][q]
        }
    };
    let mut label = vec![usize::MAX; n];
    let mut order = vec![0usize];
    label[0] = 0;
    let mut next = 1usize;
    let mut i = 0usize;
    while i < order.len() {
        let q = order[i];
        for c in 0..2 * m {
            let t = col(c, q);
            if label[t] == usize::MAX {
                label[t] = next;
                order.push(t);
                next += 1;
            }
        }
        i += 1;
    }
    if next != n {
        return Err(Error::Internal("action is not transitive".into()));
    }
    let mut action = vec![vec![0usize; n]; m];
    let mut action_inv = vec![vec![0usize; n]; m];
    for q in 0..n {
        for g in 0..m {
            action[g][label[q]] = label[perms[g][q]];
            action_inv[g][label[q]] = label[perms_inv[g][q]];
        }
    }
    let mut t = CosetTable {
        presentation: p.clone(),
        subgroup_generators: Vec::new(),
        action,
        action_inv,
    };
    t.subgroup_generators = t.schreier_generators();
    Ok(t)
}

/// Intersection of two subgroups over the same presentation via the reachable
/// fiber product. The defining generators of the result are its Schreier
/// generators.
pub fn intersect(t1: &CosetTable, t2: &CosetTable) -> Result<CosetTable> {
    if t1.presentation() != t2.presentation() {
        return Err(Error::Invalid(
            "intersection requires the same origin presentation".into(),
        ));
    }
    let m = t1.presentation().gen_count();
    let n1 = t1.index();
    let mut ids: std::collections::HashMap<(usize, usize), usize> = Default::default();
    let mut pairs: Vec<(usize, usize)> = vec![(0, 0)];
    ids.insert((0, 0), 0);
    let mut i = 0usize;
    while i < pairs.len() {
        let (a, b) = pairs[i];
        for c in 0..2 * m {
            let (na, nb) = if c % 2 == 0 {
                (t1.action[c / 2][a], t2.action[c / 2][b])
            } else {
                (t1.action_inv[c / 2][a], t2.action_inv[c / 2][b])
            };
            if !ids.contains_key(&(na, nb)) {
                ids.insert((na, nb), pairs.len());
                pairs.push((na, nb));
            }
        }
        i += 1;
    }
    let n = pairs.len();
    debug_assert!(n <= n1 * t2.index());
    let mut perms = vec![vec![0usize; n]; m];
    let mut perms_inv = vec![vec![0usize; n]; m];
    for (q, &(a, b)) in pairs.iter().enumerate() {
        for g in 0..m {
            perms[g][q] = ids[&(t1.action[g][a], t2.action[g][b])];
            perms_inv[g][q] = ids[&(t1.action_inv[g][a], t2.action_inv[g][b])];
        }
    }
    let t = table_from_permutations(t1.presentation(), &perms, &perms_inv)?;
    t.validate()?;
    Ok(t)
}

/// Preimage of the subgroup of `tq` under the homomorphism `theta` from the
/// group of `p_sub` to the group of `tq.presentation()`, given by generator
/// images. Every relator of `p_sub` must act trivially through `theta` on all
/// cosets of `tq`.
pub fn preimage(p_sub: &Presentation, theta: &[Word], tq: &CosetTable) -> Result<CosetTable> {
    if theta.len() != p_sub.gen_count() {
        return Err(Error::InconsistentMap(format!(
            "{} generator images for {} generators",
            theta.len(),
            p_sub.gen_count()
        )));
    }
    let nq = tq.index();
    let m = p_sub.gen_count();
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(m);
    for w in theta {
        let perm: Vec<usize> = (0..nq).map(|q| tq.trace(q, w)).collect();
        let mut seen = vec![false; nq];
        for &t in &perm {
            if seen[t] {
                return Err(Error::InconsistentMap(
                    "generator image does not act bijectively".into(),
                ));
            }
            seen[t] = true;
        }
        perms.push(perm);
    }
    let mut perms_inv = vec![vec![0usize; nq]; m];
    for g in 0..m {
        for q in 0..nq {
            perms_inv[g][perms[g][q]] = q;
        }
    }
    // relators of p_sub must act trivially everywhere
    for (i, r) in p_sub.relators().iter().enumerate() {
        for q in 0..nq {
            let mut cur = q;
            for (g, s) in r.letters() {
                cur = if s > 0 {
                    perms[g][cur]
                } else {
                    perms_inv[g][cur]
                };
            }
            if cur != q {
                return Err(Error::InconsistentMap(format!(
                    "relator {} of the domain moves coset {}",
                    i, q
                )));
            }
        }
    }
    // restrict to the orbit of coset 0
    let mut label = vec![usize::MAX; nq];
    let mut orbit = vec![0usize];
    label[0] = 0;
    let mut i = 0usize;
    while i < orbit.len() {
        let q = orbit[i];
        for g in 0..m {
            for t in [perms[g][q], perms_inv[g][q]] {
                if label[t] == usize::MAX {
                    label[t] = orbit.len();
                    orbit.push(t);
                }
            }
        }
        i += 1;
    }
    let n = orbit.len();
    let mut sub_perms = vec![vec![0usize; n]; m];
    let mut sub_perms_inv = vec![vec![0usize; n]; m];
    for (q, &old) in orbit.iter().enumerate() {
        for g in 0..m {
            sub_perms[g][q] = label[perms[g][old]];
            sub_perms_inv[g][q] = label[perms_inv[g][old]];
        }
    }
    let t = table_from_permutations(p_sub, &sub_perms, &sub_perms_inv)?;
    t.validate()?;
    Ok(t)
}
