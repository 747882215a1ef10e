//! Single-variable Laurent polynomials with exact integer or mod-p
//! coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::intpoly::IntPoly;

/// Laurent polynomial. `modulus` attaches a prime field; coefficients are then
/// kept in `[1, p-1]` (zeros are never stored).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
    modulus: Option<u64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus: None,
        }
    }

    pub fn zero_mod(p: u64) -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus: Some(p),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentPoly {
            coeffs,
            modulus: None,
        }
    }

    /// The monomial `c * t^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly {
            coeffs,
            modulus: None,
        }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut out = LaurentPoly::zero();
        for &(e, c) in pairs {
            out.add_term(e, BigInt::from(c));
        }
        out
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn normalize_coeff(&self, c: BigInt) -> BigInt {
        match self.modulus {
            None => c,
            Some(p) => {
                let p = BigInt::from(p);
                let r = c % &p;
                if r.is_negative() {
                    r + p
                } else {
                    r
                }
            }
        }
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        let c = self.normalize_coeff(c);
        if c.is_zero() {
            return;
        }
        let sum = self.coeffs.remove(&e).unwrap_or_else(BigInt::zero) + c;
        let v = self.normalize_coeff(sum);
        if !v.is_zero() {
            self.coeffs.insert(e, v);
        }
    }

    fn assert_compatible(&self, other: &LaurentPoly) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed-modulus Laurent arithmetic"
        );
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus: self.modulus,
        };
        for (&e, c) in &self.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut out = LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus: self.modulus,
        };
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus: self.modulus,
        };
        for (&e, a) in &self.coeffs {
            out.add_term(e, a * c);
        }
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    /// Value at `t = 1`: the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Gcd of the integer coefficients (zero polynomial has content 0).
    pub fn content(&self) -> BigInt {
        assert!(self.modulus.is_none(), "content over a prime field");
        self.coeffs
            .values()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c))
    }

    /// Canonical form under units: the lowest exponent is shifted to 0; over
    /// the integers the sign is fixed by a positive leading coefficient, over
    /// a prime field the polynomial is made monic.
    pub fn canonical(&self) -> LaurentPoly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let min = *self.coeffs.keys().next().unwrap();
        let mut out = self.shift(-min);
        match self.modulus {
            None => {
                let lead = out.coeffs.values().next_back().unwrap();
                if lead.is_negative() {
                    out = out.neg();
                }
            }
            Some(p) => {
                let lead = out.coeffs.values().next_back().unwrap().clone();
                let inv = mod_inverse(&lead, p);
                out = out.scale(&inv);
            }
        }
        out
    }

    /// Coefficientwise reduction mod `p`, keeping exponents.
    pub fn reduce_mod(&self, p: u64) -> LaurentPoly {
        assert!(self.modulus.is_none());
        let mut out = LaurentPoly::zero_mod(p);
        for (&e, c) in &self.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    /// Shifts into an ordinary integer polynomial; returns the shift applied.
    pub fn to_int_poly(&self) -> (IntPoly, i64) {
        if self.coeffs.is_empty() {
            return (IntPoly::zero(), 0);
        }
        let min = *self.coeffs.keys().next().unwrap();
        let max = *self.coeffs.keys().next_back().unwrap();
        let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
        for (&e, c) in &self.coeffs {
            v[(e - min) as usize] = c.clone();
        }
        (IntPoly::new(v), min)
    }

    pub fn from_int_poly(p: &IntPoly, shift: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(k as i64 + shift, c.clone());
        }
        out
    }

    /// Gcd over `Z[t^±1]` in canonical form.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        assert!(self.modulus.is_none() && other.modulus.is_none());
        let (a, _) = self.to_int_poly();
        let (b, _) = other.to_int_poly();
        LaurentPoly::from_int_poly(&a.gcd(&b), 0).canonical()
    }

    /// Exact division in the Laurent ring; the divisor must divide exactly.
    pub fn div_exact(&self, d: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(d);
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return self.clone();
        }
        assert!(
            self.modulus.is_none(),
            "exact division implemented over the integers"
        );
        let (a, sa) = self.to_int_poly();
        let (b, sb) = d.to_int_poly();
        LaurentPoly::from_int_poly(&a.div_exact(&b), sa - sb)
    }
}

fn mod_inverse(a: &BigInt, p: u64) -> BigInt {
    // p is prime: a^(p-2) mod p
    let p = BigInt::from(p);
    a.modpow(&(&p - 2), &p)
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else {
                let var = if e == 1 {
                    "t".to_string()
                } else {
                    format!("t^{}", e)
                };
                if mag.is_one() {
                    write!(f, "{}", var)?;
                } else {
                    write!(f, "{}{}", mag, var)?;
                }
            }
        }
        if let Some(p) = self.modulus {
            write!(f, " (mod {})", p)?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix of integer Laurent polynomials by
/// fraction-free elimination. An all-zero row or column short-circuits to 0.
pub fn laurent_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    for row in m {
        if row.iter().all(|x| x.is_zero()) {
            return LaurentPoly::zero();
        }
    }
    for j in 0..n {
        if m.iter().all(|row| row[j].is_zero()) {
            return LaurentPoly::zero();
        }
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev);
            }
        }
        for i in k + 1..n {
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        // 2t - 3 is already canonical (leading coefficient positive)
        let p = LaurentPoly::from_pairs(&[(1, 2), (0, -3)]);
        assert_eq!(p.canonical(), p);
        // -2t + 3 canonicalizes to 2t - 3
        assert_eq!(p.neg().canonical(), p);
        // t^-1 - 2t^-2 shifts to t - 2... times the sign rule
        let q = LaurentPoly::from_pairs(&[(-1, 1), (-2, -2)]);
        assert_eq!(q.canonical(), LaurentPoly::from_pairs(&[(1, 1), (0, -2)]));
    }

    #[test]
    fn mod_p_reduction() {
        let p = LaurentPoly::from_pairs(&[(1, 2), (0, -4)]);
        assert!(p.reduce_mod(2).is_zero());
        let q = LaurentPoly::from_pairs(&[(1, 2), (0, -3)]);
        let r = q.reduce_mod(2).canonical();
        assert_eq!(r, LaurentPoly::one().reduce_mod(2));
        // t - 2 mod 3 = t + 1
        let s = LaurentPoly::from_pairs(&[(1, 1), (0, -2)]).reduce_mod(3);
        assert_eq!(s.coeff(0), BigInt::from(1));
        assert_eq!(s.coeff(1), BigInt::from(1));
    }

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::from_pairs(&[(0, 1), (1, 1)]);
        let b = LaurentPoly::from_pairs(&[(0, -1), (1, 1)]);
        assert_eq!(a.mul(&b), LaurentPoly::from_pairs(&[(0, -1), (2, 1)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn content_and_gcd() {
        let p = LaurentPoly::from_pairs(&[(1, 2), (0, -4)]);
        assert_eq!(p.content(), BigInt::from(2));
        let a = LaurentPoly::from_pairs(&[(0, -1), (2, 1)]); // t^2-1
        let b = LaurentPoly::from_pairs(&[(0, 1), (1, 1)]); // t+1
        assert_eq!(a.gcd(&b), b.canonical());
    }

    #[test]
    fn determinant() {
        let t = LaurentPoly::from_pairs(&[(1, 1)]);
        let one = LaurentPoly::one();
        let z = LaurentPoly::zero();
        // det [[t, 1], [0, t]] = t^2
        let d = laurent_det(&[vec![t.clone(), one.clone()], vec![z.clone(), t.clone()]]);
        assert_eq!(d, LaurentPoly::from_pairs(&[(2, 1)]));
        // zero column
        let d = laurent_det(&[vec![z.clone(), one.clone()], vec![z.clone(), t.clone()]]);
        assert!(d.is_zero());
    }
}
