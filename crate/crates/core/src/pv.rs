//! Exact PV-polynomial test: a monic integer polynomial with exactly one root
//! of modulus greater than one and none on the unit circle.
//!
//! Roots on the circle are excluded exactly (a circle root forces a common
//! factor with the reversed polynomial, and circle roots correspond to real
//! roots of the gcd of the Cayley-transformed real and imaginary parts).
//! Roots inside the open disk are then counted by an exact winding number:
//! the boundary curve is rationally parametrized and the argument change is a
//! Cauchy index computed with Sturm chains.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intpoly::{cauchy_index, count_real_roots, IntPoly, RatPoly};

/// Real and imaginary parts of `(1 - iu)^n p((1+iu)/(1-iu))` as integer
/// polynomials in `u`; the parameter runs over the unit circle minus `z = -1`.
fn cayley_parts(p: &IntPoly) -> (IntPoly, IntPoly) {
    let n = p.degree().expect("nonzero polynomial");
    // powers of (1 + iu) and (1 - iu) as (re, im) pairs
    let one = IntPoly::from_i64(&[1]);
    let u = IntPoly::from_i64(&[0, 1]);
    let mut plus: Vec<(IntPoly, IntPoly)> = vec![(one.clone(), IntPoly::zero())];
    let mut minus: Vec<(IntPoly, IntPoly)> = vec![(one.clone(), IntPoly::zero())];
    for k in 0..n {
        let (re, im) = &plus[k];
        plus.push((re.add(&im.mul(&u).neg()), im.add(&re.mul(&u))));
        let (re, im) = &minus[k];
        minus.push((re.add(&im.mul(&u)), im.add(&re.mul(&u).neg())));
    }
    let mut re_total = IntPoly::zero();
    let mut im_total = IntPoly::zero();
    for (k, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let (pre, pim) = &plus[k];
        let (mre, mim) = &minus[n - k];
        // (pre + i pim)(mre + i mim) * a
        let re = pre.mul(mre).add(&pim.mul(mim).neg()).scale(a);
        let im = pre.mul(mim).add(&pim.mul(mre)).scale(a);
        re_total = re_total.add(&re);
        im_total = im_total.add(&im);
    }
    (re_total, im_total)
}

/// Number of roots of `p` strictly inside the unit circle, assuming none lie
/// on it: the winding number of `p` along the circle.
fn roots_inside_unit_circle(p: &IntPoly) -> Result<usize> {
    let n = p.degree().expect("nonzero polynomial") as i64;
    let (re, im) = cayley_parts(p);
    // endpoint contribution of atan(Q/P) at ±infinity, in units of pi
    let atan_diff: i64 = match (re.degree(), im.degree()) {
        (_, None) => 0,
        (None, Some(_)) => 0,
        (Some(dp), Some(dq)) => {
            if dq > dp && (dq - dp) % 2 == 1 {
                let s = im.leading().unwrap().sign() * re.leading().unwrap().sign();
                match s {
                    num_bigint::Sign::Plus => 1,
                    num_bigint::Sign::Minus => -1,
                    num_bigint::Sign::NoSign => 0,
                }
            } else {
                0
            }
        }
    };
    let index = cauchy_index(&RatPoly::from_int(&im), &RatPoly::from_int(&re));
    let delta_arg = atan_diff - index; // in units of pi
    let twice_winding = delta_arg + n;
    if twice_winding % 2 != 0 || twice_winding < 0 || twice_winding > 2 * n {
        return Err(Error::Internal(format!(
            "winding computation out of range: delta_arg {} for degree {}",
            delta_arg, n
        )));
    }
    Ok((twice_winding / 2) as usize)
}

/// Does the polynomial have a root on the unit circle? Exact.
pub fn has_root_on_unit_circle(p: &IntPoly) -> bool {
    let one = BigInt::from(1);
    let minus_one = BigInt::from(-1);
    if p.eval(&one).is_zero() || p.eval(&minus_one).is_zero() {
        return true;
    }
    // a circle root is a common root with the reversed polynomial
    let g = p.gcd(&p.reversed());
    match g.degree() {
        None | Some(0) => false,
        Some(_) => {
            // circle roots of p are real roots of gcd(Re, Im) of the Cayley parts
            let (re, im) = cayley_parts(p);
            let common = re.gcd(&im);
            count_real_roots(&common) > 0
        }
    }
}

/// PV test for a monic integer polynomial: no root on the unit circle and
/// exactly one root (with multiplicity) of modulus greater than one.
pub fn is_pv_polynomial(p: &IntPoly) -> Result<bool> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Invalid("PV test requires degree >= 1".into())),
    };
    if !p.is_monic() {
        return Err(Error::Invalid("PV test requires a monic polynomial".into()));
    }
    if has_root_on_unit_circle(p) {
        return Ok(false);
    }
    let inside = roots_inside_unit_circle(p)?;
    Ok(n - inside == 1)
}
