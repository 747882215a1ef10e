//! Exact integer matrices: Smith normal form, abelian invariants,
//! characteristic polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::presentation::Presentation;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero());
                    a[idx(i, j)] = q;
                }
            }
            for i in k + 1..n {
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        Ok(a[idx(n - 1, n - 1)].clone() * sign)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form: returns `(D, U, V)` with `U M V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries and `d1 | d2 | ...`.
///
/// Pivoting picks the smallest nonzero magnitude (then lowest position), which
/// makes the decomposition deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for k in 0..steps {
        'pivot: loop {
            // smallest nonzero |entry| in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some(b) => {
                            if a[(i, j)].abs() < a[b].abs() {
                                Some((i, j))
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let (pi, pj) = match best {
                Some(p) => p,
                None => break 'pivot,
            };
            if pi != k {
                swap_rows(&mut a, k, pi);
                swap_rows(&mut u, k, pi);
            }
            if pj != k {
                swap_cols(&mut a, k, pj);
                swap_cols(&mut v, k, pj);
            }
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = rounded_div(&a[(i, k)], &a[(k, k)]);
                if !q.is_zero() {
                    row_sub(&mut a, i, k, &q);
                    row_sub(&mut u, i, k, &q);
                }
                if !a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = rounded_div(&a[(k, j)], &a[(k, k)]);
                if !q.is_zero() {
                    col_sub(&mut a, j, k, &q);
                    col_sub(&mut v, j, k, &q);
                }
                if !a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot must divide the whole trailing submatrix for the chain
            let pivot = a[(k, k)].clone();
            let mut offender: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[(i, j)] % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    row_add(&mut a, k, i);
                    row_add(&mut u, k, i);
                }
                None => break 'pivot,
            }
        }
    }
    // normalize signs
    for k in 0..steps {
        if a[(k, k)].is_negative() {
            negate_row(&mut a, k);
            negate_row(&mut u, k);
        }
    }
    SmithNormalForm { d: a, u, v }
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    for c in 0..m.cols() {
        let tmp = m[(i, c)].clone();
        m[(i, c)] = m[(j, c)].clone();
        m[(j, c)] = tmp;
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for r in 0..m.rows() {
        let tmp = m[(r, i)].clone();
        m[(r, i)] = m[(r, j)].clone();
        m[(r, j)] = tmp;
    }
}

fn row_sub(m: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for c in 0..m.cols() {
        let s = q * &m[(k, c)];
        m[(i, c)] -= s;
    }
}

fn col_sub(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for r in 0..m.rows() {
        let s = q * &m[(r, k)];
        m[(r, j)] -= s;
    }
}

fn row_add(m: &mut IntMatrix, i: usize, j: usize) {
    for c in 0..m.cols() {
        let s = m[(j, c)].clone();
        m[(i, c)] += s;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols() {
        let x = -m[(i, c)].clone();
        m[(i, c)] = x;
    }
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient with |a - qb| minimized keeps entries small
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Invariants of a finitely generated abelian group: free rank plus the
/// torsion divisor chain (entries ≥ 2, each dividing the next).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("C{}", d)).collect();
        for _ in 0..self.rank {
            parts.push("Z".to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Abelianization invariants: cokernel of the relator exponent-sum matrix.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m = IntMatrix::from_rows(p.exponent_rows());
    invariants_of_matrix(&m, p.gen_count())
}

/// Invariants of `Z^cols / rowspan(m)`.
pub fn invariants_of_matrix(m: &IntMatrix, cols: usize) -> AbelianInvariants {
    if m.rows() == 0 {
        return AbelianInvariants {
            rank: cols,
            torsion: Vec::new(),
        };
    }
    let snf = smith_normal_form(m);
    let mut nonzero = 0usize;
    let mut torsion = Vec::new();
    for k in 0..m.rows().min(m.cols()) {
        let d = &snf.d[(k, k)];
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if *d > BigInt::one() {
            torsion.push(d.clone());
        }
    }
    AbelianInvariants {
        rank: cols - nonzero,
        torsion,
    }
}

/// Basis of the integer kernel lattice `{v : M v = 0}`, read off the column
/// transform of the Smith normal form.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let cols = m.cols();
    if m.rows() == 0 {
        return (0..cols)
            .map(|k| {
                (0..cols)
                    .map(|i| if i == k { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
    }
    let snf = smith_normal_form(m);
    let steps = m.rows().min(cols);
    let mut rank = 0usize;
    for k in 0..steps {
        if !snf.d[(k, k)].is_zero() {
            rank += 1;
        }
    }
    (rank..cols)
        .map(|k| (0..cols).map(|i| snf.v[(i, k)].clone()).collect())
        .collect()
}

/// Monic characteristic polynomial of a square integer matrix, computed by the
/// Faddeev–LeVerrier recurrence (all divisions are exact).
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    // p(t) = t^n + c_1 t^(n-1) + ... + c_n
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut ak = m.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| ak[(i, i)].clone()).sum();
        let (c, r) = num_integer::Integer::div_rem(&(-tr), &BigInt::from(k as i64));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = ak;
            for i in 0..n {
                shifted[(i, i)] += &c;
            }
            ak = m.mul(&shifted);
        }
    }
    Ok(IntPoly::new(coeffs))
}
