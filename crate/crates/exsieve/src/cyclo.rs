//! Cyclotomic polynomial evaluation and the structured q-expression algebra
//! used for group orders, point counts and per-case polynomials.
//!
//! Orders are kept as products q^N * prod (q^d - s)^mult with optional
//! gcd-corrections like 1/gcd(3, q - eps); evaluation is exact and
//! integrality is asserted where the catalog contract requires it.

use crate::arith::{factor, PrimePower, DEFAULT_FACTOR_BUDGET};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Mutex;

/// Twist sign: q^d - Sign. `Plus` means q^d - 1, `Minus` means q^d + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn val(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_val(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Moebius function, memoized per process.
pub fn moebius(n: u64) -> i64 {
    static MEMO: Lazy<Mutex<HashMap<u64, i64>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(&v) = MEMO.lock().unwrap().get(&n) {
        return v;
    }
    let f = factor(&BigUint::from(n), DEFAULT_FACTOR_BUDGET)
        .full()
        .expect("moebius argument within trial range");
    let mut mu = 1i64;
    for (_, m) in &f.pairs {
        if *m > 1 {
            mu = 0;
            break;
        }
        mu = -mu;
    }
    MEMO.lock().unwrap().insert(n, mu);
    mu
}

/// Phi_n(q), the n-th cyclotomic polynomial at an integer q >= 2, computed as
/// prod_{d | n} (q^d - 1)^{mu(n/d)} with exact division.
pub fn phi(n: u64, q: &BigUint) -> BigUint {
    assert!(n >= 1 && *q >= BigUint::from(2u32));
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let qi = BigInt::from(q.clone());
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let term = qi.pow(d as u32) - BigInt::one();
        match moebius(n / d) {
            1 => num *= &term,
            -1 => den *= &term,
            _ => {}
        }
    }
    let (quo, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "cyclotomic division must be exact");
    quo.to_biguint().expect("Phi_n(q) is positive")
}

/// Write q^n - sign as a product of cyclotomic values: the Phi_d(q) for
/// d | n (sign = +1), or for d | 2n with d not dividing n (sign = -1).
pub fn factor_q_power(n: u64, q: &BigUint, sign: Sign) -> Vec<(u64, BigUint)> {
    let idx: Vec<u64> = match sign {
        Sign::Plus => (1..=n).filter(|d| n % d == 0).collect(),
        Sign::Minus => (1..=2 * n).filter(|d| 2 * n % d == 0 && n % d != 0).collect(),
    };
    idx.into_iter().map(|d| (d, phi(d, q))).collect()
}

/// One (q^d - s)^mult factor; negative mult puts the factor in the denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFactor {
    pub d: u32,
    pub sign: Sign,
    pub mult: i32,
}

/// Position of a gcd-correction in the expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GcdPos {
    #[serde(rename = "num")]
    Numerator,
    #[serde(rename = "den")]
    Denominator,
}

/// gcd(c, q - sign*1) correction; for twisted families the sign tracks the
/// twist epsilon and is resolved at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdCorrection {
    pub c: u32,
    pub sign: GcdSign,
    pub pos: GcdPos,
}

/// Sign inside a gcd-correction: fixed, or the twist of the enclosing row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GcdSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "eps")]
    Twist,
}

/// A structured product  scalar_num/scalar_den * q^N * prod (q^d - s)^mult
/// with gcd-corrections; exactly evaluable at any admissible q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpr {
    #[serde(default = "one_u64", skip_serializing_if = "is_one_u64")]
    pub scalar_num: u64,
    #[serde(default = "one_u64", skip_serializing_if = "is_one_u64")]
    pub scalar_den: u64,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub qpow: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<QFactor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gcds: Vec<GcdCorrection>,
}

fn one_u64() -> u64 {
    1
}
fn is_one_u64(v: &u64) -> bool {
    *v == 1
}
fn is_zero_u32(v: &u32) -> bool {
    *v == 0
}

impl QExpr {
    pub fn one() -> Self {
        QExpr {
            scalar_num: 1,
            scalar_den: 1,
            qpow: 0,
            factors: vec![],
            gcds: vec![],
        }
    }

    /// scalar * q^qpow * prod of (d, sign, mult) factors.
    pub fn new(scalar_num: u64, scalar_den: u64, qpow: u32, factors: &[(u32, i64, i32)]) -> Self {
        let mut fs: Vec<QFactor> = factors
            .iter()
            .map(|&(d, s, m)| QFactor {
                d,
                sign: Sign::from_val(s),
                mult: m,
            })
            .collect();
        fs.sort_by_key(|f| (f.d, f.sign.val()));
        QExpr {
            scalar_num,
            scalar_den,
            qpow,
            factors: fs,
            gcds: vec![],
        }
    }

    pub fn with_gcd(mut self, c: u32, sign: GcdSign, pos: GcdPos) -> Self {
        self.gcds.push(GcdCorrection { c, sign, pos });
        self
    }

    /// Exact rational evaluation as (numerator, denominator), not reduced.
    fn eval_parts(&self, q: &BigUint, twist: Option<Sign>) -> (BigUint, BigUint) {
        let mut num = BigUint::from(self.scalar_num) * q.pow(self.qpow);
        let mut den = BigUint::from(self.scalar_den);
        for f in &self.factors {
            let qd = q.pow(f.d);
            let val = match f.sign {
                Sign::Plus => &qd - BigUint::one(),
                Sign::Minus => &qd + BigUint::one(),
            };
            let p = val.pow(f.mult.unsigned_abs());
            if f.mult >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        for g in &self.gcds {
            let s = match g.sign {
                GcdSign::Plus => Sign::Plus,
                GcdSign::Minus => Sign::Minus,
                GcdSign::Twist => twist.expect("gcd-correction needs a twist to resolve"),
            };
            let qs = match s {
                Sign::Plus => q - BigUint::one(),
                Sign::Minus => q + BigUint::one(),
            };
            let val = BigUint::from(g.c).gcd(&qs);
            match g.pos {
                GcdPos::Numerator => num *= val,
                GcdPos::Denominator => den *= val,
            }
        }
        (num, den)
    }

    /// Evaluate where the result is contractually an integer; panics hard with
    /// the offending context otherwise (catalog integrity error).
    pub fn eval_int(&self, q: &BigUint, twist: Option<Sign>) -> BigUint {
        let (num, den) = self.eval_parts(q, twist);
        let (quo, rem) = num.div_rem(&den);
        assert!(
            rem.is_zero(),
            "q-expression is not integral at q = {q}: {self:?}"
        );
        quo
    }

    pub fn eval_at(&self, q: &PrimePower, twist: Option<Sign>) -> BigUint {
        self.eval_int(&q.q, twist)
    }

    /// Exact rational evaluation reduced to lowest terms.
    pub fn eval_rational(&self, q: &BigUint, twist: Option<Sign>) -> (BigUint, BigUint) {
        let (num, den) = self.eval_parts(q, twist);
        let g = num.gcd(&den);
        (num / &g, den / &g)
    }

    /// Formal product of two expressions (gcd lists concatenate).
    pub fn mul(&self, other: &QExpr) -> QExpr {
        let mut out = self.clone();
        out.scalar_num *= other.scalar_num;
        out.scalar_den *= other.scalar_den;
        out.qpow += other.qpow;
        for f in &other.factors {
            if let Some(e) = out
                .factors
                .iter_mut()
                .find(|g| g.d == f.d && g.sign == f.sign)
            {
                e.mult += f.mult;
            } else {
                out.factors.push(f.clone());
            }
        }
        out.factors.retain(|f| f.mult != 0);
        out.factors.sort_by_key(|f| (f.d, f.sign.val()));
        out.gcds.extend(other.gcds.iter().cloned());
        out
    }
}

/// An integer polynomial in one variable, lowest degree first, with an
/// optional twist-dependent variant: coefficient i of `eps_coeffs` is
/// multiplied by eps before being added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub name: String,
    pub coeffs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eps_coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(name: &str, coeffs: &[i64]) -> Self {
        Poly {
            name: name.to_string(),
            coeffs: coeffs.to_vec(),
            eps_coeffs: vec![],
        }
    }

    pub fn with_eps(name: &str, coeffs: &[i64], eps_coeffs: &[i64]) -> Self {
        Poly {
            name: name.to_string(),
            coeffs: coeffs.to_vec(),
            eps_coeffs: eps_coeffs.to_vec(),
        }
    }

    /// Horner evaluation of coeffs + eps*eps_coeffs at integer q.
    pub fn eval(&self, q: &BigInt, eps: i64) -> BigInt {
        let n = self.coeffs.len().max(self.eps_coeffs.len());
        let mut acc = BigInt::zero();
        for i in (0..n).rev() {
            acc *= q;
            let c = self.coeffs.get(i).copied().unwrap_or(0)
                + eps * self.eps_coeffs.get(i).copied().unwrap_or(0);
            acc += BigInt::from(c);
        }
        acc
    }

    /// Power-sum evaluation, used as the cross-check route against Horner.
    pub fn eval_direct(&self, q: &BigInt, eps: i64) -> BigInt {
        let n = self.coeffs.len().max(self.eps_coeffs.len());
        let mut acc = BigInt::zero();
        for i in 0..n {
            let c = self.coeffs.get(i).copied().unwrap_or(0)
                + eps * self.eps_coeffs.get(i).copied().unwrap_or(0);
            acc += BigInt::from(c) * q.pow(i as u32);
        }
        acc
    }

    pub fn eval_abs(&self, q: &BigUint, eps: i64) -> BigUint {
        self.eval(&BigInt::from(q.clone()), eps)
            .abs()
            .to_biguint()
            .unwrap()
    }

    pub fn eval_u(&self, q: &BigUint, eps: i64) -> Option<BigUint> {
        self.eval(&BigInt::from(q.clone()), eps).to_biguint()
    }
}

/// Evaluate a product of Phi_n(q) powers (negative exponents divide, exactly).
pub fn phi_product(parts: &[(u64, i32)], q: &BigUint) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for &(n, m) in parts {
        let v = phi(n, q).pow(m.unsigned_abs());
        if m >= 0 {
            num *= v;
        } else {
            den *= v;
        }
    }
    let (quo, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Phi-product not integral");
    quo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn phi_small_values() {
        assert_eq!(phi(1, &b(2)), b(1));
        assert_eq!(phi(6, &b(2)), b(3));
        assert_eq!(phi(12, &b(3)), b(73));
    }

    #[test]
    fn phi_product_telescopes() {
        // prod_{d | n} Phi_d(q) = q^n - 1
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let qb = b(q);
            for n in 1u64..=60 {
                let mut prod = BigUint::one();
                for d in 1..=n {
                    if n % d == 0 {
                        prod *= phi(d, &qb);
                    }
                }
                assert_eq!(prod, qb.pow(n as u32) - BigUint::one(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn phi_at_primes() {
        // Phi_p(q) = (q^p - 1)/(q - 1) for p prime
        for p in [2u64, 3, 5, 7, 11, 13] {
            for q in [2u64, 3, 5, 9] {
                let qb = b(q);
                let want = (qb.pow(p as u32) - BigUint::one()) / (b(q) - BigUint::one());
                assert_eq!(phi(p, &qb), want);
            }
        }
    }

    #[test]
    fn factor_q_power_products() {
        let parts = factor_q_power(6, &b(2), Sign::Plus);
        let idx: Vec<u64> = parts.iter().map(|(d, _)| *d).collect();
        assert_eq!(idx, vec![1, 2, 3, 6]);
        let prod: BigUint = parts.iter().map(|(_, v)| v.clone()).product();
        assert_eq!(prod, b(63));

        assert_eq!(factor_q_power(1, &b(7), Sign::Plus), vec![(1, b(6))]);

        // 3^9 + 1 = 19684 = 4 * 7 * 703
        let parts = factor_q_power(9, &b(3), Sign::Minus);
        assert_eq!(
            parts,
            vec![(2, b(4)), (6, b(7)), (18, b(703))]
        );
        let prod: BigUint = parts.iter().map(|(_, v)| v.clone()).product();
        assert_eq!(prod, b(19684));
    }

    #[test]
    fn qexpr_eval() {
        // (q^6 - 1)/(q - 1) at q = 2 is the G2 parabolic point count 63
        let v = QExpr::new(1, 1, 0, &[(6, 1, 1), (1, 1, -1)]);
        assert_eq!(v.eval_int(&b(2), None), b(63));
        // |G2(q)| = q^6 (q^6 - 1)(q^2 - 1) at q = 3
        let g2 = QExpr::new(1, 1, 6, &[(6, 1, 1), (2, 1, 1)]);
        assert_eq!(g2.eval_int(&b(3), None), b(4245696));
        assert_eq!(&g2.eval_int(&b(3), None) / &b(12096u64), b(351));
        // |2B2(q)| = q^2 (q^2 + 1)(q - 1) at q = 8
        let sz = QExpr::new(1, 1, 2, &[(2, -1, 1), (1, 1, 1)]);
        assert_eq!(sz.eval_int(&b(8), None), b(29120));
        assert_eq!(&sz.eval_int(&b(8), None) / &b(52u64), b(560));
    }

    #[test]
    fn qexpr_gcd_twist() {
        // 1/gcd(3, q - eps): the E6 center correction
        let e = QExpr::new(1, 1, 0, &[(9, 1, 1)]).with_gcd(3, GcdSign::Twist, GcdPos::Denominator);
        // q = 4, eps = +: gcd(3,3) = 3 divides 4^9-1 = 262143
        assert_eq!(e.eval_int(&b(4), Some(Sign::Plus)), b(262143 / 3));
        // q = 4, eps = -: gcd(3,5) = 1
        let e2 = QExpr::new(1, 1, 0, &[(9, -1, 1)]).with_gcd(3, GcdSign::Twist, GcdPos::Denominator);
        assert_eq!(e2.eval_int(&b(4), Some(Sign::Minus)), b(262145));
    }

    #[test]
    fn qexpr_multiplicative() {
        let a = QExpr::new(2, 1, 3, &[(2, 1, 1)]);
        let c = QExpr::new(1, 1, 1, &[(2, 1, -1), (4, -1, 2)]);
        let prod = a.mul(&c);
        for q in [2u64, 3, 5] {
            let qb = b(q);
            assert_eq!(
                prod.eval_int(&qb, None),
                a.eval_int(&qb, None) * c.eval_int(&qb, None) / (qb.pow(2) - BigUint::one())
                    * (qb.pow(2) - BigUint::one())
                    / BigUint::one()
            );
            let (an, ad) = a.eval_rational(&qb, None);
            let (cn, cd) = c.eval_rational(&qb, None);
            let (pn, pd) = prod.eval_rational(&qb, None);
            assert_eq!(an * cn * &pd, pn * ad * cd);
        }
    }

    #[test]
    fn poly_horner_matches_direct() {
        let p = Poly::with_eps("h", &[10, 10, 2, -6, -4, 1, 1], &[0, 10, 0, -6, 0, 1, 0]);
        for q in [2i64, 3, 7, 13] {
            for eps in [1i64, -1] {
                let qb = BigInt::from(q);
                assert_eq!(p.eval(&qb, eps), p.eval_direct(&qb, eps));
            }
        }
    }
}
