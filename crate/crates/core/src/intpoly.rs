//! Dense integer polynomials, gcd, and exact real-root counting via Sturm
//! chains over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial with coefficients stored lowest degree first.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigInt::from(k as u64 + 1))
                .collect(),
        )
    }

    /// Reversed polynomial `t^deg * p(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c))
    }

    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `d` (`lc(d)^(deg gap + 1) * self mod d`).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let lead = r.leading().unwrap().clone();
            // r = lc*r - lead * t^shift * d
            let mut out = vec![BigInt::zero(); dr + 1];
            for (k, c) in r.coeffs.iter().enumerate() {
                out[k] = c * &lc;
            }
            for (k, c) in d.coeffs.iter().enumerate() {
                out[k + shift] -= c * &lead;
            }
            r = IntPoly::new(out);
        }
        r
    }

    /// Primitive gcd, normalized with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.positive_leading();
        }
        if other.is_zero() {
            return self.positive_leading();
        }
        let content = num_integer::Integer::gcd(&self.content(), &other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.positive_leading().scale(&content)
    }

    fn positive_leading(&self) -> IntPoly {
        match self.leading() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact quotient; panics in debug builds if the division is not exact.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        let lc = d.leading().unwrap();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let (c, rem) = num_integer::Integer::div_rem(r.leading().unwrap(), lc);
            debug_assert!(rem.is_zero(), "non-exact polynomial division");
            let shift = dr - dd;
            q[shift] = c.clone();
            let mut out = r.coeffs.clone();
            for (k, dc) in d.coeffs.iter().enumerate() {
                out[k + shift] -= dc * &c;
            }
            r = IntPoly::new(out);
        }
        debug_assert!(r.is_zero(), "non-exact polynomial division (remainder)");
        IntPoly::new(q)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "t{}", if k == 1 { String::new() } else { format!("^{}", k) })?;
            } else {
                write!(f, "{}t{}", mag, if k == 1 { String::new() } else { format!("^{}", k) })?;
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for Sturm sequences, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    fn trim(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        RatPoly { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let lead = r.last().unwrap() / d.leading().unwrap();
            let shift = r.len() - 1 - dd;
            for (k, c) in d.coeffs.iter().enumerate() {
                let s = c * &lead;
                r[k + shift] -= s;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        RatPoly::trim(r)
    }

    /// Sign of the polynomial at +∞ (`dir = +1`) or −∞ (`dir = -1`).
    fn sign_at_infinity(&self, dir: i8) -> i8 {
        match self.leading() {
            None => 0,
            Some(lc) => {
                let base = if lc.is_negative() { -1i8 } else { 1i8 };
                if dir > 0 || self.degree().unwrap() % 2 == 0 {
                    base
                } else {
                    -base
                }
            }
        }
    }

    fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    }
}

/// Generalized Sturm chain of `(s0, s1)`: each term is minus the remainder of
/// the two before it.
pub fn sturm_chain(s0: &RatPoly, s1: &RatPoly) -> Vec<RatPoly> {
    let mut chain = Vec::new();
    if !s0.is_zero() {
        chain.push(s0.clone());
    }
    if !s1.is_zero() {
        chain.push(s1.clone());
    }
    while chain.len() >= 2 {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg = RatPoly::trim(r.coeffs.iter().map(|c| -c).collect());
        chain.push(neg);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Sign-variation count of the chain at −∞ minus at +∞. For a Sturm chain of
/// `(p, p')` this is the number of distinct real roots of `p`.
pub fn variation_difference_at_infinity(chain: &[RatPoly]) -> i64 {
    let vm = variations(chain.iter().map(|p| p.sign_at_infinity(-1)));
    let vp = variations(chain.iter().map(|p| p.sign_at_infinity(1)));
    vm as i64 - vp as i64
}

/// Number of distinct real roots of a squarefree-or-not integer polynomial.
pub fn count_real_roots(p: &IntPoly) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        _ => {
            // Sturm needs a squarefree input
            let sf = p.div_exact(&p.gcd(&p.derivative()));
            let rp = RatPoly::from_int(&sf);
            let chain = sturm_chain(&rp, &RatPoly::from_int(&sf.derivative()));
            variation_difference_at_infinity(&chain).max(0) as usize
        }
    }
}

/// Number of distinct real roots in the open interval `(a, b)`.
pub fn count_real_roots_between(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        _ => {
            let sf = p.div_exact(&p.gcd(&p.derivative()));
            let rp = RatPoly::from_int(&sf);
            let chain = sturm_chain(&rp, &RatPoly::from_int(&sf.derivative()));
            let va = variations(chain.iter().map(|q| q.sign_at(a)));
            let vb = variations(chain.iter().map(|q| q.sign_at(b)));
            let mut n = (va as i64 - vb as i64).max(0) as usize; // roots in (a, b]
            if rp.eval(b).is_zero() {
                n = n.saturating_sub(1);
            }
            n
        }
    }
}

/// Cauchy index of `numer/denom` over the whole real line: the number of
/// jumps from −∞ to +∞ minus the jumps from +∞ to −∞, computed as the
/// variation difference of the generalized Sturm chain of `(denom, numer)`.
pub fn cauchy_index(numer: &RatPoly, denom: &RatPoly) -> i64 {
    if numer.is_zero() || denom.is_zero() {
        return 0;
    }
    let chain = sturm_chain(denom, numer);
    variation_difference_at_infinity(&chain)
}
