//! Polynomial arithmetic over prime fields Z/p for word-sized p.
//!
//! Supports the modular gcd fast path and the distinct-degree /
//! equal-degree factorization steps behind integer factorization. Primes are
//! kept below 2^31 so coefficient products fit in u64 without overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::intpoly::IntPoly;

pub const MAX_PRIME: u64 = 1 << 31;

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn powm(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn invm(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    powm(a, p - 2, p)
}

/// Dense polynomial over Z/p, low-to-high, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl ZpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        assert!(p >= 2 && p < MAX_PRIME);
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ZpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        ZpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ZpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ZpPoly { p, c: vec![0, 1] }
    }

    pub fn from_int(p: u64, f: &IntPoly) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| {
                let mut r = a.mod_floor(&pb);
                if r.is_negative() {
                    r += &pb;
                }
                r.to_u64().unwrap()
            })
            .collect();
        ZpPoly::new(p, c)
    }

    /// Lift with coefficients in the symmetric range (-p/2, p/2].
    pub fn to_int_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&a| {
                    if a > half {
                        BigInt::from(a) - BigInt::from(self.p)
                    } else {
                        BigInt::from(a)
                    }
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        ZpPoly::new(
            self.p,
            (0..n)
                .map(|k| addm(self.coeff(k), rhs.coeff(k), self.p))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        ZpPoly::new(
            self.p,
            (0..n)
                .map(|k| subm(self.coeff(k), rhs.coeff(k), self.p))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        ZpPoly::new(self.p, out)
    }

    pub fn mul_scalar(&self, s: u64) -> Self {
        ZpPoly::new(self.p, self.c.iter().map(|&a| mulm(a, s, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.mul_scalar(invm(self.leading(), self.p))
    }

    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero mod p");
        if self.c.len() < rhs.c.len() {
            return (ZpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let linv = invm(rhs.leading(), p);
        let mut r = self.c.clone();
        let dq = self.c.len() - rhs.c.len();
        let mut q = vec![0u64; dq + 1];
        for k in (0..=dq).rev() {
            let top = r[k + rhs.c.len() - 1];
            if top == 0 {
                continue;
            }
            let f = mulm(top, linv, p);
            q[k] = f;
            for (j, &b) in rhs.c.iter().enumerate() {
                r[k + j] = subm(r[k + j], mulm(f, b, p), p);
            }
        }
        (ZpPoly::new(p, q), ZpPoly::new(p, r))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.divrem(rhs).1
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` monic with `s*self + t*rhs = g`.
    pub fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let linv = invm(r0.leading(), p);
        (r0.mul_scalar(linv), s0.mul_scalar(linv), t0.mul_scalar(linv))
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return ZpPoly::zero(self.p);
        }
        ZpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| mulm(a, (k as u64) % self.p, self.p))
                .collect(),
        )
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut acc = ZpPoly::one(self.p);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// `self^e mod modulus` for an arbitrarily large exponent given in bits
    /// (most significant first).
    pub fn pow_mod_bits(&self, bits: &[bool], modulus: &Self) -> Self {
        let mut acc = ZpPoly::one(self.p);
        let base = self.rem(modulus);
        for &bit in bits {
            acc = acc.mul(&acc).rem(modulus);
            if bit {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = addm(mulm(acc, x, self.p), a, self.p);
        }
        acc
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// returns `(d, product-of-degree-d-factors)` pairs with d ascending.
pub fn distinct_degree(f: &ZpPoly) -> Vec<(usize, ZpPoly)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = ZpPoly::x(p);
    let mut d = 0usize;
    while f.degree() >= 1 {
        d += 1;
        if 2 * d > f.degree() {
            // remainder is irreducible
            out.push((f.degree(), f.clone()));
            break;
        }
        h = h.pow_mod(p as u128, &f);
        let g = h.sub(&ZpPoly::x(p)).gcd(&f);
        if g.degree() >= 1 {
            out.push((d, g.clone()));
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting: factor a monic squarefree
/// product of irreducibles all of degree `d`. Deterministically seeded so
/// factorizations are reproducible run to run.
pub fn equal_degree(f: &ZpPoly, d: usize) -> Vec<ZpPoly> {
    let p = f.p;
    if f.degree() == d {
        return vec![f.monic()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(
        0x5eed_1234_u64 ^ (p << 8) ^ (f.degree() as u64) ^ ((d as u64) << 32),
    );
    // exponent (p^d - 1)/2 as bits, most significant first
    let exp = (num_bigint::BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    let bits: Vec<bool> = (0..exp.bits()).rev().map(|i| exp.bit(i)).collect();
    loop {
        let w = ZpPoly::new(
            p,
            (0..f.degree())
                .map(|_| rng.gen_range(0..p))
                .collect::<Vec<_>>(),
        );
        if w.degree() < 1 {
            continue;
        }
        let g0 = w.gcd(f);
        let split = if g0.degree() >= 1 && g0.degree() < f.degree() {
            Some(g0)
        } else {
            let e = w.pow_mod_bits(&bits, f).sub(&ZpPoly::one(p));
            let g = e.gcd(f);
            if g.degree() >= 1 && g.degree() < f.degree() {
                Some(g)
            } else {
                None
            }
        };
        if let Some(g) = split {
            let h = f.divrem(&g).0;
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h, d));
            return out;
        }
    }
}

/// Factor a monic squarefree polynomial over Z/p into monic irreducibles,
/// sorted for determinism.
pub fn factor_squarefree_modp(f: &ZpPoly) -> Vec<ZpPoly> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f) {
        out.extend(equal_degree(&g, d));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.c.cmp(&b.c)));
    out
}

/// Primes usable for modular algorithms, in a fixed order.
pub fn prime_stream() -> impl Iterator<Item = u64> {
    // start beyond tiny primes so random leading coefficients rarely vanish
    const START: u64 = 1_000_003;
    (START..).filter(|&n| is_prime_u64(n))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for 64-bit range
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modular gcd over Q with rational reconstruction avoided: the gcd of the
/// primitive parts is computed mod several primes, combined by CRT on the
/// scaled candidate `lc * monic_gcd`, and verified by exact trial division.
/// Falls back to the remainder-sequence gcd when unlucky primes pile up.
pub fn gcd_modular(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() || g.is_zero() {
        return f.gcd_prs(g);
    }
    let fp = f.sign_primitive().expect("nonzero").1;
    let gp = g.sign_primitive().expect("nonzero").1;
    if fp.is_one() || gp.is_one() {
        return IntPoly::one();
    }
    // gcd of leading coefficients bounds the leading coefficient of the gcd
    let lc_gcd = fp.leading().gcd(&gp.leading());
    // coefficient bound: |gcd| coefficients divide into Landau-Mignotte range
    let bound = landau_mignotte(&fp, &gp, &lc_gcd);
    let mut primes = prime_stream();
    let mut crt: Option<(BigInt, BigInt, Vec<BigInt>)> = None; // (modulus, _, coeffs)
    let mut best_deg = usize::MAX;
    let mut last_lift: Option<Vec<BigInt>> = None;
    let mut attempts = 0;
    while attempts < 64 {
        attempts += 1;
        let p = primes.next().unwrap();
        let pb = BigInt::from(p);
        if (fp.leading() % &pb).is_zero() || (gp.leading() % &pb).is_zero() {
            continue;
        }
        let a = ZpPoly::from_int(p, &fp);
        let b = ZpPoly::from_int(p, &gp);
        let d = a.gcd(&b);
        if d.degree() == 0 {
            return IntPoly::one();
        }
        if d.degree() > best_deg {
            continue; // unlucky prime
        }
        let scaled = d.monic().mul_scalar(
            ZpPoly::from_int(p, &IntPoly::constant(lc_gcd.clone())).coeff(0),
        );
        if d.degree() < best_deg {
            best_deg = d.degree();
            crt = None;
            last_lift = None;
        }
        let coeffs: Vec<BigInt> = (0..=best_deg).map(|k| BigInt::from(scaled.coeff(k))).collect();
        crt = Some(match crt {
            None => (pb.clone(), BigInt::zero(), coeffs),
            Some((m, _, old)) => {
                // combine residues mod m and mod p
                let m1 = &m * &pb;
                let minv = mod_inverse(&m, &pb);
                let mut merged = Vec::with_capacity(old.len());
                for (a_m, a_p) in old.iter().zip(coeffs.iter()) {
                    let diff = ((a_p - a_m) % &pb + &pb) % &pb;
                    let t = (&diff * &minv) % &pb;
                    merged.push((a_m + &m * t) % &m1);
                }
                (m1, BigInt::zero(), merged)
            }
        });
        let (m, _, coeffs) = crt.as_ref().unwrap();
        let half: BigInt = m >> 1;
        let lifted: Vec<BigInt> = coeffs
            .iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect();
        // verify as soon as the lift stabilizes across two primes (typical
        // gcds have coefficients far below the worst-case bound), or once
        // the modulus provably covers the Landau-Mignotte range
        let stable = last_lift.as_deref() == Some(&lifted[..]);
        let covered = *m > &bound * 2;
        last_lift = Some(lifted.clone());
        if stable || covered {
            let candidate = IntPoly::new(lifted);
            if candidate.is_zero() {
                continue;
            }
            let candidate = match candidate.sign_primitive() {
                Ok((_, p, _)) => p,
                Err(_) => continue,
            };
            if fp.exact_div(&candidate).is_some() && gp.exact_div(&candidate).is_some() {
                return candidate;
            }
            // verification failed: keep adding primes; if degree was wrong the
            // best_deg machinery will correct it on a luckier prime
        }
    }
    f.gcd_prs(g)
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    ((e.x % p) + p) % p
}

/// Landau-Mignotte style bound on the coefficients of any common divisor.
fn landau_mignotte(f: &IntPoly, g: &IntPoly, lc_gcd: &BigInt) -> BigInt {
    let n = f.deg_or_zero().min(g.deg_or_zero()) as u32;
    let norm = f.sum_abs_coeff().min(g.sum_abs_coeff());
    (BigInt::from(1) << n) * norm * lc_gcd.abs()
}

/// Public gcd entry point: modular fast path with exact verification.
pub fn gcd_q(f: &IntPoly, g: &IntPoly) -> IntPoly {
    gcd_modular(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let p = 1_000_003;
        assert_eq!(mulm(invm(7, p), 7, p), 1);
        assert_eq!(powm(2, p - 1, p), 1);
    }

    #[test]
    fn divrem_mod_p() {
        let p = 101;
        let f = ZpPoly::new(p, vec![1, 0, 0, 1]); // x^3 + 1
        let g = ZpPoly::new(p, vec![1, 1]); // x + 1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, ZpPoly::new(p, vec![1, 100, 1])); // x^2 - x + 1
    }

    #[test]
    fn xgcd_identity() {
        let p = 97;
        let f = ZpPoly::new(p, vec![1, 2, 1]); // (x+1)^2
        let g = ZpPoly::new(p, vec![2, 3, 1]); // (x+1)(x+2)
        let (d, s, t) = f.xgcd(&g);
        assert_eq!(d, ZpPoly::new(p, vec![1, 1]));
        let combo = s.mul(&f).add(&t.mul(&g));
        assert_eq!(combo, d);
    }

    #[test]
    fn factor_modp_reconstructs() {
        let p = 17;
        // x^4 + 1 over F_17 splits into quadratics or linears; just check product
        let f = ZpPoly::new(p, vec![1, 0, 0, 0, 1]).monic();
        let factors = factor_squarefree_modp(&f);
        let mut prod = ZpPoly::one(p);
        for q in &factors {
            assert_eq!(q.leading(), 1);
            prod = prod.mul(q);
        }
        assert_eq!(prod, f);
        assert!(factors.len() >= 2);
    }

    #[test]
    fn modular_gcd_matches_prs() {
        let a = IntPoly::from_i64(&[1, 1]);
        let c = IntPoly::from_i64(&[1, 0, 1]);
        let f = a.mul(&c).mul(&IntPoly::from_i64(&[-2, 1]));
        let g = a.mul(&c).mul(&IntPoly::from_i64(&[7, 5]));
        assert_eq!(gcd_q(&f, &g), f.gcd_prs(&g));
        assert_eq!(gcd_q(&f, &g), a.mul(&c));
        // coprime pair
        let u = IntPoly::from_i64(&[1, 3, 1]);
        let v = IntPoly::from_i64(&[2, 0, 0, 1]);
        assert_eq!(gcd_q(&u, &v), IntPoly::one());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1_000_004));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64((1 << 31) - 1));
    }
}
