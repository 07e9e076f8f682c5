//! Small-integer primality helpers and an incremental prime sieve.

/// Primes below a moving limit. The limit grows by doubling, each step
/// sieving only the new segment `[old_limit, new_limit)` with the primes
/// already known.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    primes: Vec<u64>,
    limit: u64,
}

impl Default for PrimeSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeSieve {
    pub fn new() -> Self {
        let mut sieve = PrimeSieve {
            primes: Vec::new(),
            limit: 2,
        };
        sieve.extend_to(64);
        sieve
    }

    pub fn with_limit(limit: u64) -> Self {
        let mut sieve = Self::new();
        sieve.extend_to(limit);
        sieve
    }

    /// Every prime strictly below this value is known.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn extend_to(&mut self, new_limit: u64) {
        while self.limit < new_limit {
            let next = new_limit.min(self.limit.saturating_mul(2));
            self.sieve_segment(next);
        }
    }

    pub fn grow(&mut self) {
        let next = self.limit.saturating_mul(2);
        self.extend_to(next);
    }

    fn sieve_segment(&mut self, hi: u64) {
        let lo = self.limit;
        let mut composite = vec![false; (hi - lo) as usize];
        // hi <= 2 * lo, so every p with p * p < hi is already in `primes`.
        for &p in &self.primes {
            let sq = p * p;
            if sq >= hi {
                break;
            }
            let mut m = sq.max(lo.div_ceil(p) * p);
            while m < hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        self.primes.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        self.limit = hi;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut p = 3;
    while p <= n / p {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 2;
    }
    n
}

pub fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n > 1 {
        if is_prime(n) {
            return true;
        }
        let p = smallest_factor(n);
        n /= p;
        if n.is_multiple_of(p) {
            return false;
        }
    }
    true
}

/// `n = p^e` with `p` prime and `e >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if is_prime(n) {
        return true;
    }
    let p = smallest_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}
