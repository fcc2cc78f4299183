//! Subdegree data: exact sets (the G2/SL3(q).2 action), divisor-of data
//! (|H:K| values for the maximal-rank pairs), the unique p-power subdegree
//! flag for parabolic actions, and stated divisors used by single lemmas.

use crate::arith::PrimePower;
use crate::cyclo::Sign;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// One piece of subdegree information, already evaluated at a concrete q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubdegreeDatum {
    /// The complete multiset of nontrivial subdegrees: (degree, multiplicity).
    ExactSet {
        label: String,
        degrees: Vec<(BigUint, BigUint)>,
    },
    /// Subdegrees divide |H:K| for the named K.
    DivisorOf { label: String, value: BigUint },
    /// A unique p-power subdegree exists (parabolic actions); k | lambda * |v-1|_p.
    UniquePPower,
    /// A lemma-stated divisor, e.g. k | lambda (q^3 - eps 1) for G2/SL3^eps.
    StatedDivisor { label: String, value: BigUint },
}

/// The subdegrees of G2(q) on the cosets of SL3(q).2 (untwisted case only):
///   q^2(q^3-1)        with multiplicity (q - 3 + delta_{p2})/2,
///   q^2(q^3-1)/2      with multiplicity 1 - delta_{p2},
///   (q^3-1)(q^2-1)    once,
///   2(q^3-1)          once.
/// Entries with zero multiplicity are dropped.
pub fn g2_sl3_plus_exact_set(q: &PrimePower) -> Vec<(BigUint, BigUint)> {
    let one = BigUint::one();
    let qq = &q.q;
    let q3m1 = qq.pow(3) - &one;
    let d2: u32 = if q.p_u64() == 2 { 1 } else { 0 };
    let mut out = Vec::new();
    let m1 = qq + BigUint::from(d2) - BigUint::from(3u32);
    if (&m1 % 2u32).is_zero() {
        let m1 = m1 / 2u32;
        if !m1.is_zero() {
            out.push((qq.pow(2) * &q3m1, m1));
        }
    }
    if d2 == 0 {
        out.push((qq.pow(2) * &q3m1 / 2u32, one.clone()));
    }
    out.push((&q3m1 * (qq.pow(2) - &one), one.clone()));
    out.push((BigUint::from(2u32) * &q3m1, one));
    out
}

/// Sum of degree*multiplicity over the Prop-3.3 exact set; equals v - 1
/// with v = q^3(q^3+1)/2 for every prime power q (tested exactly).
pub fn g2_sl3_plus_sum(q: &PrimePower) -> BigUint {
    g2_sl3_plus_exact_set(q)
        .iter()
        .map(|(d, m)| d * m)
        .sum()
}

/// Subdegree data for (family cell, subgroup) pairs with catalog coverage.
/// `eps` is the subgroup twist where it matters.
pub fn subdegree_data(
    family: crate::catalog::families::Family,
    subgroup: &str,
    q: &PrimePower,
    eps: Option<Sign>,
) -> Vec<SubdegreeDatum> {
    use crate::catalog::families::Family::*;
    let one = BigUint::one();
    let qq = &q.q;
    match (family, subgroup) {
        // Prop 3.3 exact set is untwisted-only; the twisted form has only the
        // stated divisor k | lambda (q^3 + 1).
        (G2, "SL3:2") => {
            let mut v = vec![SubdegreeDatum::ExactSet {
                label: "g2-sl3+".into(),
                degrees: g2_sl3_plus_exact_set(q),
            }];
            v.push(SubdegreeDatum::StatedDivisor {
                label: "q^3-1".into(),
                value: qq.pow(3) - &one,
            });
            v
        }
        (G2, "SU3:2") => vec![SubdegreeDatum::StatedDivisor {
            label: "q^3+1".into(),
            value: qq.pow(3) + &one,
        }],
        // Table 1, F4 rows: H of type D4 has K = G2(q) (q > 2) and A3^eps(q);
        // H of type 3D4 has K = G2(q) (q > 2) and A2^eps(q). Values are |H:K|.
        (F4, "D4.S3") => {
            let mut out = Vec::new();
            let h = BigUint::from(6u32)
                * qq.pow(12)
                * (qq.pow(6) - &one)
                * (qq.pow(4) - &one).pow(2)
                * (qq.pow(2) - &one);
            if qq > &BigUint::from(2u32) {
                let g2 = qq.pow(6) * (qq.pow(6) - &one) * (qq.pow(2) - &one);
                out.push(SubdegreeDatum::DivisorOf {
                    label: "G2(q)".into(),
                    value: &h / &g2,
                });
            }
            for s in [Sign::Plus, Sign::Minus] {
                if (qq, s) == (&BigUint::from(2u32), Sign::Minus) {
                    continue;
                }
                let q3s = match s {
                    Sign::Plus => qq.pow(3) - &one,
                    Sign::Minus => qq.pow(3) + &one,
                };
                let qs = match s {
                    Sign::Plus => qq - &one,
                    Sign::Minus => qq + &one,
                };
                let d = BigUint::from(4u32).gcd(&qs);
                let a3 = qq.pow(6) * (qq.pow(2) - &one) * &q3s * (qq.pow(4) - &one) / &d;
                out.push(SubdegreeDatum::DivisorOf {
                    label: format!("A3{}(q)", if s == Sign::Plus { "+" } else { "-" }),
                    value: &h / &a3,
                });
            }
            out
        }
        (F4, "3D4.3") => {
            let mut out = Vec::new();
            let h = BigUint::from(3u32)
                * qq.pow(12)
                * (qq.pow(8) + qq.pow(4) + &one)
                * (qq.pow(6) - &one)
                * (qq.pow(2) - &one);
            if qq > &BigUint::from(2u32) {
                let g2 = qq.pow(6) * (qq.pow(6) - &one) * (qq.pow(2) - &one);
                out.push(SubdegreeDatum::DivisorOf {
                    label: "G2(q)".into(),
                    value: &h / &g2,
                });
            }
            for s in [Sign::Plus, Sign::Minus] {
                let q3s = match s {
                    Sign::Plus => qq.pow(3) - &one,
                    Sign::Minus => qq.pow(3) + &one,
                };
                let qs = match s {
                    Sign::Plus => qq - &one,
                    Sign::Minus => qq + &one,
                };
                let d = BigUint::from(3u32).gcd(&qs);
                let a2 = qq.pow(3) * &q3s * (qq.pow(2) - &one) / &d;
                out.push(SubdegreeDatum::DivisorOf {
                    label: format!("A2{}(q)", if s == Sign::Plus { "+" } else { "-" }),
                    value: &h / &a2,
                });
            }
            out
        }
        // parabolic rows with the unique p-power subdegree (Lemma 2.3 /
        // Remark 2.4); the caller gates which lines carry it.
        (_, "parabolic-p-power") => vec![SubdegreeDatum::UniquePPower],
        _ => {
            let _ = eps;
            vec![]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime_powers_up_to;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn prop33_pinned_sets() {
        // q = 3 (odd): multiplicity of q^2(q^3-1) is 0; set {117, 208, 52}
        let set = g2_sl3_plus_exact_set(&PrimePower::new(3, 1));
        let degs: Vec<u64> = set.iter().map(|(d, _)| d.try_into().unwrap()).collect();
        assert_eq!(degs, vec![117, 208, 52]);
        // q = 4 (even): {1008, 945, 126}
        let set = g2_sl3_plus_exact_set(&PrimePower::new(2, 2));
        let degs: Vec<u64> = set.iter().map(|(d, _)| d.try_into().unwrap()).collect();
        assert_eq!(degs, vec![1008, 945, 126]);
    }

    #[test]
    fn prop33_sum_identity() {
        // sum of subdegrees = v - 1 = q^3(q^3+1)/2 - 1 for all prime powers in [3, 50]
        for q in prime_powers_up_to(50) {
            if q.q < b(3) {
                continue;
            }
            let v = &q.q.pow(3) * (q.q.pow(3) + BigUint::one()) / 2u32;
            assert_eq!(g2_sl3_plus_sum(&q), v - BigUint::one(), "q = {}", q.q);
        }
    }

    #[test]
    fn f4_d4_divisor_values() {
        // Table 1: F4(q), H of type D4, K = G2(q): |H:K| = 6 q^6 (q^4-1)^2
        let q = PrimePower::new(3, 1);
        let data = subdegree_data(crate::catalog::families::Family::F4, "D4.S3", &q, None);
        match &data[0] {
            SubdegreeDatum::DivisorOf { value, .. } => {
                assert_eq!(*value, BigUint::from(6u32) * b(729) * b(80) * b(80));
            }
            _ => panic!("expected divisor-of"),
        }
    }
}
