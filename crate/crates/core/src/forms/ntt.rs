//! Number-theoretic transform over word-sized primes, used to square long
//! integer power series modulo several primes.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{pow_mod, prime_divisors};

/// NTT-friendly primes below `2^31`, each with `2^23 | p − 1`.
pub const NTT_PRIMES: [u32; 5] = [
    998_244_353,
    167_772_161,
    469_762_049,
    754_974_721,
    2_013_265_921,
];

/// Largest transform length supported by every prime in [`NTT_PRIMES`].
pub const MAX_TRANSFORM_LEN: usize = 1 << 23;

/// Montgomery arithmetic modulo an odd prime `p < 2^31`, with `R = 2^32`.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    p: u32,
    p_neg_inv: u32,
    r2: u32,
}

impl Montgomery {
    pub fn new(p: u32) -> Self {
        assert!(p % 2 == 1 && p < (1 << 31));
        // Newton iteration for p^{-1} mod 2^32
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = (1u64 << 32) % p as u64;
        Montgomery {
            p,
            p_neg_inv: inv.wrapping_neg(),
            r2: ((r * r) % p as u64) as u32,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline(always)]
    fn reduce(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn to_mont(&self, a: u32) -> u32 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u32) -> u32 {
        self.reduce(a as u64)
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

fn primitive_root(p: u32) -> u32 {
    let p64 = p as u64;
    let factors = prime_divisors(p64 - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| pow_mod(g as u64, (p64 - 1) / q, p64) != 1)
        })
        .expect("prime modulus has a primitive root")
}

/// Precomputed transform of one power-of-two length modulo one prime.
pub struct Transform {
    ctx: Montgomery,
    len: usize,
    roots: Vec<u32>,
    inv_roots: Vec<u32>,
    inv_len: u32,
}

impl Transform {
    pub fn new(p: u32, len: usize) -> Self {
        assert!(len.is_power_of_two() && len >= 2);
        assert!(
            (p as usize - 1).is_multiple_of(len),
            "length does not divide p − 1"
        );
        let ctx = Montgomery::new(p);
        let g = ctx.to_mont(primitive_root(p));
        let w = ctx.pow(g, (p as u64 - 1) / len as u64);
        let w_inv = ctx.pow(w, p as u64 - 2);
        // roots[len/2 + j] = w_len^j arranged per stage: stage of size m
        // uses roots[m/2 .. m] = powers of the primitive m-th root
        let build = |base: u32| {
            let mut table = vec![0u32; len];
            let mut m = len;
            let mut root = base;
            while m >= 2 {
                let half = m / 2;
                let mut cur = ctx.to_mont(1);
                for j in 0..half {
                    table[half + j] = cur;
                    cur = ctx.mul(cur, root);
                }
                root = ctx.mul(root, root);
                m /= 2;
            }
            table
        };
        Transform {
            ctx,
            len,
            roots: build(w),
            inv_roots: build(w_inv),
            inv_len: ctx.pow(ctx.to_mont(len as u32), p as u64 - 2),
        }
    }

    pub fn context(&self) -> &Montgomery {
        &self.ctx
    }

    fn butterflies(&self, a: &mut [u32], roots: &[u32]) {
        let ctx = self.ctx;
        let n = self.len;
        // decimation in frequency, natural order in, bit-reversed out
        let mut m = n;
        while m >= 2 {
            let half = m / 2;
            let tw = &roots[half..m];
            for block in a.chunks_exact_mut(m) {
                let (lo, hi) = block.split_at_mut(half);
                for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                    let u = *x;
                    let v = *y;
                    *x = ctx.add(u, v);
                    *y = ctx.mul(ctx.sub(u, v), w);
                }
            }
            m /= 2;
        }
    }

    fn butterflies_inverse(&self, a: &mut [u32], roots: &[u32]) {
        let ctx = self.ctx;
        let n = self.len;
        // decimation in time, bit-reversed in, natural order out
        let mut m = 2;
        while m <= n {
            let half = m / 2;
            let tw = &roots[half..m];
            for block in a.chunks_exact_mut(m) {
                let (lo, hi) = block.split_at_mut(half);
                for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                    let u = *x;
                    let v = ctx.mul(*y, w);
                    *x = ctx.add(u, v);
                    *y = ctx.sub(u, v);
                }
            }
            m *= 2;
        }
    }

    /// Squares a series given in Montgomery form, truncated to `keep` terms.
    pub fn square_truncated(&self, series: &[u32], keep: usize) -> Vec<u32> {
        assert!(
            2 * series.len() <= self.len + 1,
            "transform too short for a linear square"
        );
        let mut a = vec![0u32; self.len];
        a[..series.len()].copy_from_slice(series);
        self.butterflies(&mut a, &self.roots);
        for x in a.iter_mut() {
            *x = self.ctx.mul(*x, *x);
        }
        self.butterflies_inverse(&mut a, &self.inv_roots);
        a.truncate(keep);
        for x in a.iter_mut() {
            *x = self.ctx.mul(*x, self.inv_len);
        }
        a
    }

    /// Cyclic product of two length-`len` sequences in Montgomery form.
    pub fn multiply_cyclic(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut fa = vec![0u32; self.len];
        let mut fb = vec![0u32; self.len];
        fa[..a.len()].copy_from_slice(a);
        fb[..b.len()].copy_from_slice(b);
        self.butterflies(&mut fa, &self.roots);
        self.butterflies(&mut fb, &self.roots);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = self.ctx.mul(*x, *y);
        }
        self.butterflies_inverse(&mut fa, &self.inv_roots);
        for x in fa.iter_mut() {
            *x = self.ctx.mul(*x, self.inv_len);
        }
        fa
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip_and_mul() {
        for &p in &NTT_PRIMES {
            let ctx = Montgomery::new(p);
            for (a, b) in [
                (0u32, 5u32),
                (1, 1),
                (p - 1, p - 1),
                (123_456_789 % p, 987_654 % p),
            ] {
                let prod = ((a as u64 * b as u64) % p as u64) as u32;
                let m = ctx.mul(ctx.to_mont(a), ctx.to_mont(b));
                assert_eq!(ctx.from_mont(m), prod);
            }
        }
    }

    #[test]
    fn every_prime_supports_max_len() {
        for &p in &NTT_PRIMES {
            assert!(crate::arith::is_prime(p as u64));
            assert_eq!((p as usize - 1) % MAX_TRANSFORM_LEN, 0);
        }
    }

    #[test]
    fn cyclic_product_matches_schoolbook() {
        let p = NTT_PRIMES[0];
        let len = 16;
        let t = Transform::new(p, len);
        let ctx = *t.context();
        let a: Vec<u32> = (0..len as u32).map(|i| i * i + 3).collect();
        let b: Vec<u32> = (0..len as u32).map(|i| 7 * i + 1).collect();
        let am: Vec<u32> = a.iter().map(|&x| ctx.to_mont(x)).collect();
        let bm: Vec<u32> = b.iter().map(|&x| ctx.to_mont(x)).collect();
        let got: Vec<u32> = t
            .multiply_cyclic(&am, &bm)
            .iter()
            .map(|&x| ctx.from_mont(x))
            .collect();
        for k in 0..len {
            let mut s = 0u64;
            for i in 0..len {
                s += a[i] as u64 * b[(k + len - i) % len] as u64;
            }
            assert_eq!(got[k] as u64, s % p as u64);
        }
    }
}
