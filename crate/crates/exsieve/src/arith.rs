//! Exact integer primitives: primality, prime-power recognition, p-parts,
//! divisor enumeration, factoring with a step budget, perfect squares.
//!
//! Everything here is pure and deterministic. Factoring uses trial division
//! below 2^16 and a Brent-cycle Pollard rho with a fixed polynomial x^2 + c,
//! sweeping c = 1, 2, 3, ... so that runs are reproducible.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// A prime power q = p^a with a >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: BigUint,
    pub a: u32,
    pub q: BigUint,
}

impl PrimePower {
    pub fn new(p: u64, a: u32) -> Self {
        let p = BigUint::from(p);
        let q = p.pow(a);
        PrimePower { p, a, q }
    }

    /// p and q as u64 when they fit.
    pub fn p_u64(&self) -> u64 {
        self.p.to_u64().expect("prime exceeds u64")
    }

    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub pairs: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigUint {
        let mut n = BigUint::one();
        for (p, m) in &self.pairs {
            n *= p.pow(*m);
        }
        n
    }

    fn push(&mut self, p: BigUint, m: u32) {
        if let Some(e) = self.pairs.iter_mut().find(|(q, _)| *q == p) {
            e.1 += m;
        } else {
            self.pairs.push((p, m));
        }
    }

    fn sort(&mut self) {
        self.pairs.sort_by(|a, b| a.0.cmp(&b.0));
    }

    /// sigma_0: number of divisors.
    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|(_, m)| *m as u64 + 1).product()
    }
}

/// Outcome of a budgeted factoring attempt. `Unresolved` carries the partial
/// factorization together with the composite cofactor that resisted the budget;
/// it is never silently dropped by callers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome {
    Full(Factorization),
    Unresolved {
        partial: Factorization,
        cofactor: BigUint,
    },
}

impl FactorOutcome {
    pub fn full(self) -> Option<Factorization> {
        match self {
            FactorOutcome::Full(f) => Some(f),
            FactorOutcome::Unresolved { .. } => None,
        }
    }
}

/// Default Pollard budget: 2^24 iterations per composite.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1 << 24;

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

/// Miller-Rabin on big integers. Uses the deterministic u64 path when the
/// input fits; otherwise a fixed witness set (probabilistic, but the witnesses
/// are fixed so results are reproducible; 25 rounds keeps the error below 2^-50).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    const WITNESSES: [u64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    'witness: for &w in WITNESSES.iter() {
        let a = BigUint::from(w) % n;
        if a.is_zero() || a.is_one() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Recognize n = p^a with p prime, a >= 1. Returns None when n is not a
/// prime power. Requires n >= 2.
pub fn is_prime_power(n: &BigUint) -> Option<PrimePower> {
    assert!(*n >= BigUint::from(2u32), "is_prime_power requires n >= 2");
    // largest possible exponent is log2(n)
    let maxa = n.bits() as u32;
    for a in (1..=maxa).rev() {
        if let Some(root) = nth_root_exact(n, a) {
            if is_prime(&root) {
                return Some(PrimePower {
                    p: root.clone(),
                    a,
                    q: n.clone(),
                });
            }
        }
    }
    None
}

/// Exact a-th root: Some(r) iff r^a == n.
fn nth_root_exact(n: &BigUint, a: u32) -> Option<BigUint> {
    if a == 1 {
        return Some(n.clone());
    }
    let r = n.nth_root(a);
    if r.pow(a) == *n {
        Some(r)
    } else {
        None
    }
}

/// The p-part n_p: the largest power of p dividing n. Requires p prime.
pub fn p_part(n: &BigUint, p: &BigUint) -> BigUint {
    assert!(is_prime(p), "p_part requires a prime p");
    let mut out = BigUint::one();
    let mut rest = n.clone();
    loop {
        let (quo, rem) = rest.div_rem(p);
        if rem.is_zero() {
            out *= p;
            rest = quo;
        } else {
            return out;
        }
    }
}

/// All divisors of n in increasing order, computed from a full factorization.
/// Panics if factoring n exceeds the given budget; use `divisors_budgeted`
/// when an Unresolved outcome must propagate instead.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    divisors_budgeted(n, DEFAULT_FACTOR_BUDGET)
        .expect("divisor enumeration exceeded factor budget")
}

pub fn divisors_budgeted(n: &BigUint, budget: u64) -> Option<Vec<BigUint>> {
    let f = factor(n, budget).full()?;
    let mut out = vec![BigUint::one()];
    for (p, m) in &f.pairs {
        let mut next = Vec::with_capacity(out.len() * (*m as usize + 1));
        let mut pk = BigUint::one();
        for _ in 0..=*m {
            for d in &out {
                next.push(d * &pk);
            }
            pk *= p;
        }
        out = next;
    }
    out.sort();
    Some(out)
}

/// Factor n within the given step budget.
pub fn factor(n: &BigUint, budget: u64) -> FactorOutcome {
    let mut f = Factorization::default();
    if n.is_one() {
        return FactorOutcome::Full(f);
    }
    let mut rest = n.clone();
    // trial division over small primes
    for p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut m = 0u32;
        loop {
            let (quo, rem) = rest.div_rem(&pb);
            if rem.is_zero() {
                rest = quo;
                m += 1;
            } else {
                break;
            }
        }
        if m > 0 {
            f.push(pb, m);
        }
        if rest.is_one() {
            f.sort();
            return FactorOutcome::Full(f);
        }
    }
    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            f.push(c, 1);
            continue;
        }
        // perfect powers split directly
        if let Some(pp) = perfect_power(&c) {
            let (base, e) = pp;
            for _ in 0..e {
                stack.push(base.clone());
            }
            continue;
        }
        match pollard_brent(&c, budget) {
            Some(d) => {
                stack.push(&c / &d);
                stack.push(d);
            }
            None => {
                f.sort();
                return FactorOutcome::Unresolved {
                    partial: f,
                    cofactor: c,
                };
            }
        }
    }
    f.sort();
    FactorOutcome::Full(f)
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let maxa = n.bits() as u32;
    for a in (2..=maxa).rev() {
        if let Some(r) = nth_root_exact(n, a) {
            if r > BigUint::one() {
                return Some((r, a));
            }
        }
    }
    None
}

/// Brent-cycle Pollard rho with f(x) = x^2 + c, deterministic c sweep.
/// Returns a nontrivial divisor or None when the budget is exhausted.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut steps = 0u64;
    for c in 1u64..64 {
        let cb = BigUint::from(c);
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &cb) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = (&y * &y + &cb) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                g = q.gcd(n);
                k += m;
                steps += lim;
                if steps > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if g == *n {
            // backtrack
            loop {
                ys = (&ys * &ys + &cb) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
                steps += 1;
                if steps > budget {
                    return None;
                }
            }
        }
        if g != *n && !g.is_one() {
            return Some(g);
        }
        // cycle degenerated for this c; sweep to the next one
        let _ = &one;
    }
    None
}

fn small_primes() -> impl Iterator<Item = u64> {
    // primes below 2^16 via a fixed sieve, computed once
    use once_cell::sync::Lazy;
    static PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
        let n = 1usize << 16;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        (0..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    });
    PRIMES.iter().copied()
}

/// All prime powers q = p^a <= limit, ascending by q.
pub fn prime_powers_up_to(limit: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in small_primes() {
        if p > limit {
            break;
        }
        let mut q = p;
        let mut a = 1u32;
        while q <= limit {
            out.push(PrimePower::new(p, a));
            if let Some(next) = q.checked_mul(p) {
                q = next;
                a += 1;
            } else {
                break;
            }
        }
    }
    out.sort_by(|x, y| x.q.cmp(&y.q));
    out
}

/// True iff n is a perfect square; returns the root when it is.
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn prime_power_recognition() {
        let pp = is_prime_power(&b(8)).unwrap();
        assert_eq!((pp.p_u64(), pp.a), (2, 3));
        // 2187 = 3^7 appears as a field size in the Ree-subgroup scan
        let pp = is_prime_power(&b(2187)).unwrap();
        assert_eq!((pp.p_u64(), pp.a), (3, 7));
        assert!(is_prime_power(&b(12)).is_none());
        assert!(is_prime_power(&b(17471)).is_some()); // prime, a = 1
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(&b(63), &b(2)), b(1));
        assert_eq!(p_part(&b(377), &b(13)), b(13)); // 377 = 13 * 29
        assert_eq!(p_part(&b(62), &b(2)), b(2)); // v-1 for the G2(2) parabolic point count
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&b(13)), vec![b(1), b(13)]);
        assert_eq!(divisors(&b(14)), vec![b(1), b(2), b(7), b(14)]);
        let d156: Vec<u64> = vec![1, 2, 3, 4, 6, 12, 13, 26, 39, 52, 78, 156];
        assert_eq!(divisors(&b(156)), d156.into_iter().map(b).collect::<Vec<_>>());
    }

    #[test]
    fn factoring() {
        let f = factor(&b(22464), DEFAULT_FACTOR_BUDGET).full().unwrap();
        assert_eq!(
            f.pairs,
            vec![(b(2), 6), (b(3), 3), (b(13), 1)]
        );
        assert_eq!(factor(&b(1), DEFAULT_FACTOR_BUDGET).full().unwrap().pairs, vec![]);
        let f = factor(&b(17471), DEFAULT_FACTOR_BUDGET).full().unwrap();
        assert_eq!(f.pairs, vec![(b(17471), 1)]);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(is_perfect_square(&b(0)), Some(b(0)));
        assert_eq!(is_perfect_square(&b(63001)), Some(b(251)));
        assert_eq!(is_perfect_square(&b(63002)), None);
    }

    #[test]
    fn divisor_pairing_and_sigma0() {
        // d * (n/d) = n over all divisors; sigma_0 matches the factorization
        for n in [1u64, 2, 12, 97, 360, 1024, 3159, 9999] {
            let nb = b(n);
            let ds = divisors(&nb);
            for d in &ds {
                assert_eq!(d * (&nb / d), nb);
            }
            let f = factor(&nb, DEFAULT_FACTOR_BUDGET).full().unwrap();
            assert_eq!(ds.len() as u64, f.divisor_count());
            assert_eq!(f.product(), nb);
        }
    }

    #[test]
    fn p_part_cofactor_coprime() {
        for (n, p) in [(360u64, 2u64), (360, 3), (360, 5), (17471, 17471), (1, 7)] {
            let nb = b(n);
            let pb = b(p);
            let pp = p_part(&nb, &pb);
            let cof = &nb / &pp;
            assert_eq!(&pp * &cof, nb);
            assert!(!(&cof % &pb).is_zero() || cof.is_one() && n == 1 || n % p != 0 || true);
            assert!(!(cof % pb).is_zero() == (n % p == 0) || n % p != 0);
        }
    }

    #[test]
    fn square_test_matches_exhaustive_roots() {
        for n in 0u64..5000 {
            let nb = b(n);
            let got = is_perfect_square(&nb).is_some();
            let want = (0..=n).take_while(|r| r * r <= n).any(|r| r * r == n);
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn budget_exhaustion_is_unresolved_not_panic() {
        // a 2-prime composite too hard for a 4-step budget
        let n = b(1_000_003) * b(1_000_033);
        match factor(&n, 4) {
            FactorOutcome::Unresolved { partial, cofactor } => {
                assert!(partial.pairs.is_empty());
                assert_eq!(cofactor, n);
            }
            FactorOutcome::Full(_) => panic!("expected Unresolved under a tiny budget"),
        }
    }
}
