//! Arithmetic in Z/pZ and the constants of the norm-one group {a² − v·b² ≡ 1}.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModpError {
    #[error("p = 2 is not supported; the parametrization needs an odd prime")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// An odd prime with the constants used by every other module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeContext {
    pub p: u32,
    /// Nonsquare in the quadratic form x² − v·y².
    pub v: u32,
    /// Smallest nonsquare, present when p ≡ 1 mod 4.
    pub u: Option<u32>,
    /// Lexicographically smallest generator of the norm-one group.
    pub a0: u32,
    pub b0: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the context for an odd prime.
pub fn make_context(p: u64) -> Result<PrimeContext, ModpError> {
    if p == 2 {
        return Err(ModpError::EvenPrime);
    }
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(ModpError::NotPrime(p));
    }
    let p = p as u32;
    let (v, u) = if p % 4 == 3 {
        (p - 1, None)
    } else {
        let u = (2..p)
            .find(|&x| !is_square(x, p))
            .expect("every odd prime has a nonsquare");
        ((p - u) % p, Some(u))
    };
    let mut ctx = PrimeContext { p, v, u, a0: 1, b0: 0 };
    let (a0, b0) = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter(|&(a, b)| ctx.is_norm_one(a, b))
        .find(|&(a, b)| ctx.norm_order(a, b) == p + 1)
        .expect("the norm-one group is cyclic of order p+1");
    ctx.a0 = a0;
    ctx.b0 = b0;
    Ok(ctx)
}

fn is_square(x: u32, p: u32) -> bool {
    let x = x % p;
    (0..p).any(|y| (y as u64 * y as u64) % p as u64 == x as u64)
}

impl PrimeContext {
    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + self.p as u64 - (y % self.p) as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        (self.p - x % self.p) % self.p
    }

    /// Reduces a signed integer into 0..p.
    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Maps a residue to its symmetric representative in (−p/2, p/2].
    #[inline]
    pub fn signed(&self, x: u32) -> i64 {
        let x = x % self.p;
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        let x = x % self.p;
        if x == 0 {
            return None;
        }
        Some(self.pow(x, self.p - 2))
    }

    pub fn pow(&self, x: u32, mut e: u32) -> u32 {
        let mut base = x % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Q(a, b) = a² − v·b² mod p.
    pub fn quad_form(&self, a: u32, b: u32) -> u32 {
        self.sub(self.mul(a, a), self.mul(self.v, self.mul(b, b)))
    }

    pub fn is_norm_one(&self, a: u32, b: u32) -> bool {
        self.quad_form(a, b) == 1
    }

    /// (a,b)·(a',b') = (aa' + v·bb', ab' + a'b).
    pub fn norm_mul(&self, x: (u32, u32), y: (u32, u32)) -> (u32, u32) {
        (
            self.add(self.mul(x.0, y.0), self.mul(self.v, self.mul(x.1, y.1))),
            self.add(self.mul(x.0, y.1), self.mul(y.0, x.1)),
        )
    }

    fn norm_order(&self, a: u32, b: u32) -> u32 {
        let mut x = (a, b);
        let mut k = 1;
        while x != (1, 0) {
            x = self.norm_mul(x, (a, b));
            k += 1;
        }
        k
    }
}

/// The cyclic orbit (a0,b0)^0, (a0,b0)^1, …, (a0,b0)^p.
pub fn norm_one_group(ctx: &PrimeContext) -> Vec<(u32, u32)> {
    let g = (ctx.a0, ctx.b0);
    let mut out = Vec::with_capacity(ctx.p as usize + 1);
    let mut x = (1 % ctx.p, 0);
    for _ in 0..=ctx.p {
        out.push(x);
        x = ctx.norm_mul(x, g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_norm_one(p: u32, v: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                if (a * a + p * p - (v * b * b) % p) % p == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn p3_constants() {
        let ctx = make_context(3).unwrap();
        assert_eq!(ctx.v, 2);
        assert_eq!(ctx.u, None);
        assert_eq!((ctx.a0, ctx.b0), (0, 1));
        let mut found = brute_norm_one(3, 2);
        found.sort();
        assert_eq!(found, vec![(0, 1), (0, 2), (1, 0), (2, 0)]);
    }

    #[test]
    fn p5_constants() {
        let ctx = make_context(5).unwrap();
        assert_eq!(ctx.u, Some(2));
        assert_eq!(ctx.v, 3);
        assert_eq!(norm_one_group(&ctx).len(), 6);
    }

    #[test]
    fn p7_orbit_matches_brute_force() {
        let ctx = make_context(7).unwrap();
        let mut orbit = norm_one_group(&ctx);
        assert_eq!(orbit.len(), 8);
        orbit.sort();
        assert_eq!(orbit, brute_norm_one(7, ctx.v));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_context(2), Err(ModpError::EvenPrime));
        assert_eq!(make_context(9), Err(ModpError::NotPrime(9)));
        assert_eq!(make_context(1), Err(ModpError::NotPrime(1)));
    }

    #[test]
    fn small_primes_are_cyclic_with_nonsquare_v() {
        for p in (3..=31u64).filter(|&p| is_prime(p)) {
            let ctx = make_context(p).unwrap();
            let orbit = norm_one_group(&ctx);
            let mut sorted = orbit.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), ctx.p as usize + 1, "p = {p}");
            assert_eq!(sorted, brute_norm_one(ctx.p, ctx.v));
            for x in 0..ctx.p {
                assert_ne!(ctx.mul(x, x), ctx.v, "v is a square mod {p}");
            }
        }
    }
}
