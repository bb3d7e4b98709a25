//! Exact group orders kept in factored form.

use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;

/// A positive integer stored as a map prime -> exponent.  The empty map is 1.
///
/// Multiplication adds exponents; equality is exact.  Used for predicted
/// orders and for comparing them against orders computed from stabilizer
/// chains.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u64>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_u128(n as u128)
    }

    pub fn from_u128(n: u128) -> Self {
        assert!(n > 0, "factored integers are positive");
        let mut factors = BTreeMap::new();
        for (p, e) in factor_u128(n) {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredInteger { factors }
    }

    pub fn from_prime_power(p: u64, e: u64) -> Self {
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        FactoredInteger { factors }
    }

    pub fn mul_assign(&mut self, other: &FactoredInteger) {
        for (&p, &e) in &other.factors {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn pow(&self, e: u64) -> FactoredInteger {
        if e == 0 {
            return FactoredInteger::one();
        }
        FactoredInteger {
            factors: self.factors.iter().map(|(&p, &k)| (p, k * e)).collect(),
        }
    }

    /// Exact quotient; `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &FactoredInteger) -> Option<FactoredInteger> {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let have = factors.get_mut(&p)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                factors.remove(&p);
            }
        }
        Some(FactoredInteger { factors })
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for (&p, &e) in &self.factors {
            let base = BigUint::from(p);
            let mut left = e;
            // BigUint::pow takes u32; split very large exponents.
            while left > 0 {
                let chunk = left.min(u32::MAX as u64) as u32;
                acc *= base.pow(chunk);
                left -= chunk as u64;
            }
        }
        acc
    }

    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.factors.iter().map(|(&p, &e)| (p, e)).collect()
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.factors {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factor a positive integer; returns (prime, exponent) pairs.
pub fn factor_u128(mut n: u128) -> Vec<(u64, u64)> {
    assert!(n > 0);
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n % p as u128 == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p as u128;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            *out.entry(m as u64).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.into_iter().collect()
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // m stays well below 2^64 sqrt bound in practice, but be safe.
    if let (Ok(a64), Ok(b64), Ok(m64)) = (u64::try_from(a), u64::try_from(b), u64::try_from(m)) {
        ((a64 as u128 * b64 as u128) % m64 as u128) as u128
    } else {
        // Schoolbook double-and-add for oversized moduli.
        let mut r: u128 = 0;
        let mut a = a % m;
        let mut b = b;
        while b > 0 {
            if b & 1 == 1 {
                r = (r + a) % m;
            }
            a = (a << 1) % m;
            b >>= 1;
        }
        r
    }
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r: u128 = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // Deterministic Miller-Rabin bases for < 3.3e24.
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c: u128 = 1;
    loop {
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        while d == 1 {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_empty_map() {
        assert!(FactoredInteger::one().is_one());
        assert_eq!(FactoredInteger::one().to_biguint(), BigUint::from(1u32));
        assert_eq!(FactoredInteger::from_u64(1), FactoredInteger::one());
    }

    #[test]
    fn factor_small() {
        assert_eq!(factor_u128(51840), vec![(2, 7), (3, 4), (5, 1)]);
        assert_eq!(factor_u128(25920), vec![(2, 6), (3, 4), (5, 1)]);
        assert_eq!(factor_u128(728), vec![(2, 3), (7, 1), (13, 1)]);
    }

    #[test]
    fn factor_large_prime() {
        // 2^61 - 1 is prime.
        let p = (1u128 << 61) - 1;
        assert_eq!(factor_u128(p), vec![(p as u64, 1)]);
    }

    #[test]
    fn mul_adds_exponents() {
        let a = FactoredInteger::from_u64(12);
        let b = FactoredInteger::from_u64(18);
        assert_eq!(a.mul(&b), FactoredInteger::from_u64(216));
    }

    #[test]
    fn pow_and_div() {
        let a = FactoredInteger::from_u64(60).pow(40);
        let b = FactoredInteger::from_u64(60).pow(39);
        assert_eq!(a.checked_div(&b), Some(FactoredInteger::from_u64(60)));
        assert_eq!(b.checked_div(&a), None);
    }

    #[test]
    fn display_factored() {
        assert_eq!(FactoredInteger::from_u64(25920).to_string(), "2^6·3^4·5");
        assert_eq!(FactoredInteger::one().to_string(), "1");
    }
}
