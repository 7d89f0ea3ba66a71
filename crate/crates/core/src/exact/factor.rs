//! Factorization of integer polynomials into irreducibles over Q.
//!
//! Pipeline: squarefree decomposition, reduction mod a good small prime,
//! distinct/equal-degree factorization there, quadratic Hensel lifting of the
//! modular factors, and subset recombination with exact trial division. The
//! polynomial is monicized first (`F(y) = lc^(n-1) f(y/lc)`) so every modular
//! division in the lift is by a monic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::intpoly::{IntPoly, RatPoly};
use crate::exact::modp::{factor_squarefree_modp, ZpPoly};

/// Degree ceiling for exact factorization. Inputs beyond this are refused
/// with a capacity error rather than silently taking unbounded time.
pub const FACTOR_DEGREE_CAP: usize = 64;

/// A complete factorization `sign * content * prod f_i^(m_i)` with each
/// `f_i` primitive, positive-leading, irreducible over Q, sorted by degree
/// then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Reassemble the original polynomial.
    pub fn product(&self) -> IntPoly {
        let mut out = IntPoly::constant(BigInt::from(self.sign) * &self.content);
        for (f, m) in &self.factors {
            out = out.mul(&f.pow(*m));
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a nonzero integer polynomial into irreducibles over Q.
pub fn factor(f: &IntPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::domain("factorization of the zero polynomial"));
    }
    if f.deg_or_zero() > FACTOR_DEGREE_CAP {
        return Err(Error::capacity(format!(
            "factorization degree {} exceeds the supported cap {}",
            f.deg_or_zero(),
            FACTOR_DEGREE_CAP
        )));
    }
    let (sign, content, parts) = f.squarefree_decomposition()?;
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (g, mult) in parts {
        for irr in factor_squarefree_primitive(&g) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_graded(&b.0));
    // squarefree parts are pairwise coprime, so no merging is needed, but a
    // defensive merge keeps the invariant obvious
    let mut merged: Vec<(IntPoly, u32)> = Vec::new();
    for (p, m) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += m;
                continue;
            }
        }
        merged.push((p, m));
    }
    Ok(Factorization {
        sign,
        content,
        factors: merged,
    })
}

/// True when `f` is irreducible over Q (degree >= 1 and a single factor).
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.deg_or_zero() == 0 {
        return Ok(false);
    }
    if let Some(v) = irreducible_screen(f) {
        return Ok(v);
    }
    Ok(factor(f)?.is_irreducible())
}

/// Cheap irreducibility decision by modular degree patterns; `None` when the
/// screen is inconclusive and a full factorization is required.
///
/// For any prime not dividing the leading coefficient, a factor of `f` over Z
/// reduces to a factor of `f mod p` of the same degree, so the achievable
/// factor degrees of `f` lie in the subset sums of the modular factor
/// degrees. If the intersection over a few primes contains no proper degree,
/// `f` is irreducible. Only primes with squarefree reduction are used.
pub fn irreducible_screen(f: &IntPoly) -> Option<bool> {
    let n = f.deg_or_zero();
    if n == 0 || n > 120 {
        return None;
    }
    if n == 1 {
        return Some(true);
    }
    // a vanishing constant term means x divides
    if f.coeff(0).is_zero() {
        return Some(false);
    }
    // rational root +-1 is the common reducible case in scan corpora
    if f.eval_big(&BigInt::one()).is_zero() || f.eval_big(&BigInt::from(-1)).is_zero() {
        return Some(false);
    }
    let mut mask: u128 = !0;
    let mut used = 0;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
        if (f.leading() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ZpPoly::from_int(p, f);
        if fp.degree() != n {
            continue;
        }
        let d = fp.derivative();
        if fp.gcd(&d).degree() != 0 {
            continue; // not squarefree mod p; degree multiset is awkward here
        }
        let mut bits: u128 = 1;
        for (deg, prod) in crate::exact::modp::distinct_degree(&fp) {
            let count = prod.degree() / deg;
            for _ in 0..count {
                bits |= bits << deg;
            }
        }
        mask &= bits;
        used += 1;
        // proper factor degrees all excluded?
        let proper = mask & (((1u128 << n) - 2) & !1u128);
        if proper == 0 {
            return Some(true);
        }
        if used >= 3 {
            break;
        }
    }
    None
}

/// Factor a primitive, squarefree, positive-leading polynomial of degree >= 1
/// into primitive positive-leading irreducibles.
fn factor_squarefree_primitive(g: &IntPoly) -> Vec<IntPoly> {
    debug_assert!(g.deg_or_zero() >= 1);
    let mut out = Vec::new();
    let mut g = g.clone();
    // peel off a factor of x (squarefree, so at most one)
    if g.coeff(0).is_zero() {
        out.push(IntPoly::var());
        g = g.shift_down(1).expect("constant term vanished");
        if g.is_constant() {
            return out;
        }
    }
    if g.deg_or_zero() == 1 {
        out.push(g);
        return out;
    }
    if irreducible_screen(&g) == Some(true) {
        out.push(g);
        return out;
    }

    // monicize: F(y) = a^(n-1) g(y/a) with a = lc(g) > 0, so the
    // coefficient of y^k is g_k * a^(n-1-k) and the top one is exactly 1
    let a = g.leading();
    let n = g.deg_or_zero();
    let monic = {
        let mut tmp = vec![BigInt::zero(); n + 1];
        tmp[n] = BigInt::one();
        let mut power = BigInt::one();
        for k in (0..n).rev() {
            tmp[k] = g.coeff(k) * &power;
            power *= &a;
        }
        IntPoly::new(tmp)
    };
    assert!(monic.leading().is_one());

    let monic_factors = factor_monic_squarefree(&monic);
    for h in monic_factors {
        let back = h.scale_arg(&a);
        let prim = back.primitive_part().expect("nonzero factor");
        out.push(prim);
    }
    out.sort_by(|x, y| x.cmp_graded(y));
    out
}

/// Zassenhaus factorization of a monic squarefree integer polynomial.
fn factor_monic_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg_or_zero();
    // choose a prime with squarefree reduction and few modular factors
    let mut best: Option<(u64, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_ODD_PRIMES {
        let fp = ZpPoly::from_int(p, f);
        if fp.degree() != n {
            continue; // cannot happen for monic f, but keep the guard
        }
        if fp.gcd(&fp.derivative()).degree() != 0 {
            continue;
        }
        let factors = factor_squarefree_modp(&fp.monic());
        tried += 1;
        if factors.len() == 1 {
            return vec![f.clone()];
        }
        let better = match &best {
            None => true,
            Some((_, b)) => factors.len() < b.len(),
        };
        if better {
            best = Some((p, factors));
        }
        if tried >= 4 {
            break;
        }
    }
    let (p, modular) = best.expect("a squarefree polynomial has good primes");

    // lift precision: p^k must exceed twice the factor coefficient bound
    let bound = mignotte_bound(f);
    let target: BigInt = &bound * 2 + 1;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk = &pk * p;
    }
    let lifted = hensel_tree(f, &modular, p, &pk);
    recombine(f, lifted, &pk)
}

const SMALL_ODD_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
];

/// Mignotte-style bound on coefficients of any monic factor of monic `f`:
/// `2^n * ||f||_2`.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm2 = sq.sqrt() + 1;
    (BigInt::one() << f.deg_or_zero()) * norm2
}

// --- arithmetic mod an arbitrary modulus M (a prime power here) ---

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce_mod(&a.mul(b), m)
}

/// Division by a monic polynomial with coefficients reduced mod `m`.
fn divrem_monic_mod(f: &IntPoly, g: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(g.leading().is_one());
    let dg = g.deg_or_zero();
    let mut r: Vec<BigInt> = f.coeffs().to_vec();
    if r.len() < dg + 1 {
        return (IntPoly::zero(), reduce_mod(f, m));
    }
    let dq = r.len() - (dg + 1);
    let mut q = vec![BigInt::zero(); dq + 1];
    for kk in (0..=dq).rev() {
        let top = r[kk + dg].mod_floor(m);
        if top.is_zero() {
            r[kk + dg] = BigInt::zero();
            continue;
        }
        for (j, b) in g.coeffs().iter().enumerate() {
            let t = (&top * b).mod_floor(m);
            r[kk + j] = (&r[kk + j] - t).mod_floor(m);
        }
        q[kk] = top;
    }
    (
        IntPoly::new(q),
        IntPoly::new(r.into_iter().map(|c| c.mod_floor(m)).collect()),
    )
}

/// One quadratic Hensel step: given `f = g*h (mod m)` with Bezout data
/// `s*g + t*h = 1 (mod m)`, produce the same data mod `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = reduce_mod(&f.sub(&g.mul(h)), &m2);
    let (q, r) = divrem_monic_mod(&mul_mod(s, &e, &m2), h, &m2);
    let h1 = reduce_mod(&h.add(&r), &m2);
    let g1 = {
        let cand = reduce_mod(&g.add(&mul_mod(t, &e, &m2)).add(&mul_mod(&q, g, &m2)), &m2);
        // the updated cofactor must stay at the same degree; recover it by
        // monic division to keep the step self-checking
        if cand.deg_or_zero() == g.deg_or_zero() {
            cand
        } else {
            let (gq, grem) = divrem_monic_mod(&reduce_mod(f, &m2), &h1, &m2);
            debug_assert!(grem.is_zero(), "lifted cofactor must divide exactly");
            gq
        }
    };
    // refresh the Bezout pair
    let b = reduce_mod(
        &mul_mod(s, &g1, &m2).add(&mul_mod(t, &h1, &m2)).sub(&IntPoly::one()),
        &m2,
    );
    let (c, d) = divrem_monic_mod(&mul_mod(s, &b, &m2), &h1, &m2);
    let s1 = reduce_mod(&s.sub(&d), &m2);
    let t1 = reduce_mod(&t.sub(&mul_mod(t, &b, &m2)).sub(&mul_mod(&c, &g1, &m2)), &m2);
    (g1, h1, s1, t1)
}

/// Lift the modular factorization of a monic squarefree `f` to mod `pk`,
/// recursively splitting the factor list in halves.
fn hensel_tree(f: &IntPoly, modular: &[ZpPoly], p: u64, pk: &BigInt) -> Vec<IntPoly> {
    if modular.len() == 1 {
        return vec![reduce_mod(f, pk)];
    }
    let mid = modular.len() / 2;
    let (left, right) = modular.split_at(mid);
    let g0 = left
        .iter()
        .fold(ZpPoly::one(p), |acc, q| acc.mul(q));
    let h0 = right
        .iter()
        .fold(ZpPoly::one(p), |acc, q| acc.mul(q));
    let (one, s0, t0) = g0.xgcd(&h0);
    debug_assert_eq!(one.degree(), 0);
    let mut g = g0.to_int_symmetric();
    let mut h = h0.to_int_symmetric();
    let mut s = s0.to_int_symmetric();
    let mut t = t0.to_int_symmetric();
    // make representatives canonical in [0, p)
    let mut m = BigInt::from(p);
    g = reduce_mod(&g, &m);
    h = reduce_mod(&h, &m);
    s = reduce_mod(&s, &m);
    t = reduce_mod(&t, &m);
    while &m < pk {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
        g = g1;
        h = h1;
        s = s1;
        t = t1;
    }
    // m >= pk: all congruences hold mod pk as well
    g = reduce_mod(&g, pk);
    h = reduce_mod(&h, pk);
    debug_assert_eq!(reduce_mod(&f.sub(&g.mul(&h)), pk), IntPoly::zero());
    let mut out = hensel_tree(&g, left, p, pk);
    out.extend(hensel_tree(&h, right, p, pk));
    out
}

/// Subset recombination: find the true monic integer factors of `f` among
/// products of the lifted modular factors.
fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut remaining = f.clone();
    let mut active: Vec<IntPoly> = lifted;
    let mut out: Vec<IntPoly> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= active.len() {
        let mut combo = Combinations::new(active.len(), size);
        while let Some(idx) = combo.next() {
            let mut prod = IntPoly::one();
            for &i in idx {
                prod = mul_mod(&prod, &active[i], pk);
            }
            let candidate = symmetric_mod(&prod, pk);
            if candidate.deg_or_zero() > remaining.deg_or_zero() {
                continue;
            }
            // constant-term screen: for monic factors the constant term must
            // divide the remaining constant term
            let c0 = candidate.constant_term();
            let r0 = remaining.constant_term();
            if !r0.is_zero() && !c0.is_zero() && !(&r0 % &c0).is_zero() {
                continue;
            }
            if let Some(q) = remaining.exact_div(&candidate) {
                out.push(candidate);
                remaining = q;
                let keep: Vec<IntPoly> = active
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !idx.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                active = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.deg_or_zero() > 0 {
        out.push(remaining);
    }
    out.sort_by(|a, b| a.cmp_graded(b));
    out
}

/// Plain lexicographic combination generator over `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.n - k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}

/// Minimal polynomial of `alpha^n` given the minimal polynomial of `alpha`.
///
/// The resultant `Res_x(f(x), x^n - y)` equals `lc(f)^n * prod_i (alpha_i^n - y)`,
/// and every `alpha_i^n` is conjugate to `alpha^n`, so the resultant is a
/// constant times a power of the minimal polynomial; the squarefree part
/// recovers it exactly. Computed by evaluation at integer points followed by
/// interpolation.
pub fn power_minpoly(f: &IntPoly, n: u32) -> Result<IntPoly> {
    let d = f
        .degree()
        .ok_or_else(|| Error::domain("minimal polynomial must be nonzero"))?;
    if d == 0 {
        return Err(Error::domain("minimal polynomial must have positive degree"));
    }
    if d > FACTOR_DEGREE_CAP {
        return Err(Error::capacity(format!(
            "degree {} exceeds the supported cap {}",
            d, FACTOR_DEGREE_CAP
        )));
    }
    if !is_irreducible(f)? {
        return Err(Error::domain(
            "power_minpoly requires an irreducible input polynomial",
        ));
    }
    if n == 0 {
        return Ok(IntPoly::from_i64(&[-1, 1]));
    }
    if n == 1 {
        return Ok(f.sign_primitive()?.1);
    }
    // evaluate y -> j: Res_x(f(x), x^n - j)
    let mut points = Vec::with_capacity(d + 1);
    for j in 0..=d as i64 {
        let xn_minus_j = IntPoly::monomial(BigInt::one(), n as usize)
            .add(&IntPoly::constant(BigInt::from(-j)));
        let r = f.resultant(&xn_minus_j);
        points.push((
            BigRational::from_integer(BigInt::from(j)),
            BigRational::from_integer(r),
        ));
    }
    let interp = lagrange_interpolate(&points);
    let (_, int_poly) = interp.clear_denominators();
    if int_poly.is_zero() {
        return Err(Error::domain("resultant vanished identically"));
    }
    let rad = int_poly.radical()?;
    Ok(rad)
}

fn lagrange_interpolate(points: &[(BigRational, BigRational)]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RatPoly::new(vec![BigRational::one()]);
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&RatPoly::new(vec![-xj.clone(), BigRational::one()]));
            denom *= xi - xj;
        }
        acc = acc.add(&basis.mul_scalar(&(yi / denom)));
    }
    acc
}
