//! The sequence of primes `p_0 = 2, p_1 = 3, ...`, grown on demand.

use std::sync::{OnceLock, RwLock};

fn cache() -> &'static RwLock<Vec<u64>> {
    static CACHE: OnceLock<RwLock<Vec<u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]))
}

/// The `i`-th prime, zero-based.
pub fn nth(i: usize) -> u64 {
    {
        let primes = cache().read().expect("prime cache poisoned");
        if let Some(&p) = primes.get(i) {
            return p;
        }
    }
    let mut primes = cache().write().expect("prime cache poisoned");
    let mut candidate = *primes.last().unwrap() + 2;
    while primes.len() <= i {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 2;
    }
    primes[i]
}

/// Zero-based position of `p` in the prime sequence, if `p` is prime.
pub fn index_of(p: u64) -> Option<usize> {
    if p < 2 {
        return None;
    }
    let mut i = 0;
    loop {
        let q = nth(i);
        if q == p {
            return Some(i);
        }
        if q > p {
            return None;
        }
        i += 1;
    }
}
