use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::iter::Peekable;
use core::ops::{Mul, Sub};

use serde::{Deserialize, Serialize};

use super::sieve::PrimeStream;
use crate::arith::{is_prime, isqrt, jacobi, pow_mod};
use crate::{Error, Result};

/// `re + im·i` in `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn norm(self) -> u64 {
        (self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128) as u64
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    /// The four unit multiples `g, i·g, −g, −i·g`.
    pub fn associates(self) -> [GaussianInt; 4] {
        let GaussianInt { re, im } = self;
        [
            GaussianInt::new(re, im),
            GaussianInt::new(-im, re),
            GaussianInt::new(-re, -im),
            GaussianInt::new(im, -re),
        ]
    }

    /// `self ≡ 1 mod (1+i)³`, i.e. `re` odd, `im` even and `re + im ≡ 1 mod 4`.
    pub fn is_primary(self) -> bool {
        self.re.rem_euclid(2) == 1
            && self.im.rem_euclid(2) == 0
            && (self.re + self.im).rem_euclid(4) == 1
    }

    /// The unique primary associate; `None` when the norm is even.
    pub fn primary_associate(self) -> Option<GaussianInt> {
        if self.norm().is_multiple_of(2) {
            return None;
        }
        self.associates().into_iter().find(|g| g.is_primary())
    }

    /// Divisibility `self | other` in `Z[i]`.
    pub fn divides(self, other: GaussianInt) -> bool {
        let n = self.norm() as i128;
        if n == 0 {
            return other.norm() == 0;
        }
        let q = other * self.conj();
        (q.re as i128) % n == 0 && (q.im as i128) % n == 0
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A nonzero prime ideal of `Z[i]`, stored by a primary generator (odd norm)
/// or by `1+i` for the ramified prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianIdeal {
    pub norm: u64,
    pub generator: GaussianInt,
    pub splitting: Splitting,
}

impl GaussianIdeal {
    /// The rational prime below this ideal.
    pub fn rational_prime(&self) -> u64 {
        match self.splitting {
            Splitting::Inert => isqrt(self.norm),
            _ => self.norm,
        }
    }

    /// Inertia degree: 2 for inert ideals, 1 otherwise.
    pub fn degree(&self) -> u32 {
        match self.splitting {
            Splitting::Inert => 2,
            _ => 1,
        }
    }

    pub fn conj(&self) -> GaussianIdeal {
        GaussianIdeal {
            generator: match self.splitting {
                Splitting::Split => self.generator.conj(),
                _ => self.generator,
            },
            ..*self
        }
    }
}

/// Writes a prime `p ≡ 1 mod 4` as `a² + b²` with `a` odd, `b` even, both
/// positive.
///
/// Takes a square root `r` of `−1` mod `p` and runs the Euclidean algorithm
/// on `(p, r)` until the remainder drops below `√p`.
pub fn cornacchia_two_squares(p: u64) -> Result<(u64, u64)> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::NotSplit(p));
    }
    let nonresidue = (2..p)
        .find(|&c| jacobi(c as i64, p) == -1)
        .expect("odd prime has a quadratic nonresidue");
    let r = pow_mod(nonresidue, (p - 1) / 4, p);
    let root = isqrt(p);
    let (mut a, mut b) = (p, r);
    while b > root {
        let t = a % b;
        a = b;
        b = t;
    }
    let x = b;
    let y2 = p - x * x;
    let y = isqrt(y2);
    debug_assert_eq!(y * y, y2);
    Ok(if x % 2 == 1 { (x, y) } else { (y, x) })
}

/// Streams the prime ideals of `Z[i]` with norm `<= limit` in increasing
/// norm. Conjugate ideals above a split prime are adjacent, with the
/// generator of positive imaginary part first.
#[derive(Debug, Clone)]
pub struct IdealStream {
    primes: Peekable<PrimeStream>,
    limit: u64,
    odd_only: bool,
    pending_inert: VecDeque<u64>,
    buffered: Option<GaussianIdeal>,
}

impl IdealStream {
    pub fn new(limit: u64, odd_only: bool) -> Self {
        IdealStream {
            primes: PrimeStream::new(limit).peekable(),
            limit,
            odd_only,
            pending_inert: VecDeque::new(),
            buffered: None,
        }
    }

    fn inert(q: u64) -> GaussianIdeal {
        let generator = GaussianInt::new(q as i64, 0)
            .primary_associate()
            .expect("odd norm");
        GaussianIdeal {
            norm: q * q,
            generator,
            splitting: Splitting::Inert,
        }
    }
}

impl Iterator for IdealStream {
    type Item = GaussianIdeal;

    fn next(&mut self) -> Option<GaussianIdeal> {
        if let Some(ideal) = self.buffered.take() {
            return Some(ideal);
        }
        loop {
            if let Some(&q) = self.pending_inert.front() {
                let due = match self.primes.peek() {
                    Some(&p) => q * q < p,
                    None => true,
                };
                if due {
                    self.pending_inert.pop_front();
                    return Some(Self::inert(q));
                }
            }
            let p = self.primes.next()?;
            if p == 2 {
                if self.odd_only {
                    continue;
                }
                return Some(GaussianIdeal {
                    norm: 2,
                    generator: GaussianInt::new(1, 1),
                    splitting: Splitting::Ramified,
                });
            }
            if p % 4 == 3 {
                if p.saturating_mul(p) <= self.limit {
                    self.pending_inert.push_back(p);
                }
                continue;
            }
            let (a, b) = cornacchia_two_squares(p).expect("p ≡ 1 mod 4 is prime");
            let g = GaussianInt::new(a as i64, b as i64)
                .primary_associate()
                .expect("odd norm");
            let (first, second) = if g.im > 0 {
                (g, g.conj())
            } else {
                (g.conj(), g)
            };
            let make = |generator| GaussianIdeal {
                norm: p,
                generator,
                splitting: Splitting::Split,
            };
            self.buffered = Some(make(second));
            return Some(make(first));
        }
    }
}

/// All prime ideals of norm `<= limit`, sorted by norm (see [`IdealStream`]).
pub fn gaussian_ideals_by_norm(limit: u64, odd_only: bool) -> Vec<GaussianIdeal> {
    IdealStream::new(limit, odd_only).collect()
}
