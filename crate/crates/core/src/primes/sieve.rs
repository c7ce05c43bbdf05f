use alloc::vec;
use alloc::vec::Vec;

use crate::arith::isqrt;

/// Odd numbers per segment; 32K flags keeps one segment in L1.
const SEGMENT_ODDS: usize = 1 << 15;

/// Streaming segmented sieve of Eratosthenes over odd numbers.
///
/// Yields every prime `<= limit` in increasing order. Memory is
/// `O(sqrt(limit) + SEGMENT_ODDS)`.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    limit: u64,
    base: Vec<u64>,
    next_multiple: Vec<u64>,
    segment: Vec<bool>,
    seg_lo: u64,
    seg_len: usize,
    pos: usize,
    started: bool,
}

impl PrimeStream {
    pub fn new(limit: u64) -> Self {
        let root = isqrt(limit);
        let base: Vec<u64> = simple_sieve(root).into_iter().filter(|&p| p > 2).collect();
        let next_multiple = base.iter().map(|&p| p * p).collect();
        PrimeStream {
            limit,
            base,
            next_multiple,
            segment: vec![false; SEGMENT_ODDS],
            seg_lo: 1,
            seg_len: 0,
            pos: 0,
            started: false,
        }
    }

    /// Sieve the next block of odd numbers starting at `seg_lo`.
    fn fill_segment(&mut self) -> bool {
        if self.seg_lo > self.limit {
            return false;
        }
        let span = (self.limit - self.seg_lo) / 2 + 1;
        self.seg_len = span.min(SEGMENT_ODDS as u64) as usize;
        let seg_hi = self.seg_lo + 2 * self.seg_len as u64; // exclusive
        let flags = &mut self.segment[..self.seg_len];
        flags.fill(true);
        for (q, next) in self.base.iter().zip(self.next_multiple.iter_mut()) {
            if *next >= seg_hi {
                // base primes are increasing, so later squares are beyond too
                if q * q >= seg_hi {
                    break;
                }
                continue;
            }
            let mut m = *next;
            while m < seg_hi {
                flags[((m - self.seg_lo) / 2) as usize] = false;
                m += 2 * q;
            }
            *next = m;
        }
        if self.seg_lo == 1 {
            flags[0] = false; // 1 is not prime
        }
        self.pos = 0;
        true
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.started {
            self.started = true;
            if self.limit >= 2 {
                return Some(2);
            }
        }
        loop {
            while self.pos < self.seg_len {
                let i = self.pos;
                self.pos += 1;
                if self.segment[i] {
                    return Some(self.seg_lo + 2 * i as u64);
                }
            }
            if self.seg_len > 0 {
                self.seg_lo += 2 * self.seg_len as u64;
                self.seg_len = 0;
            }
            if !self.fill_segment() {
                return None;
            }
        }
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= limit`, strictly increasing.
pub fn rational_primes(limit: u64) -> Vec<u64> {
    PrimeStream::new(limit).collect()
}

/// Linear sieve of smallest prime factors; entry 0 and 1 are 0.
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = p as usize * i;
            if p > si || m > limit {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}
