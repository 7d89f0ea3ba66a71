//! Elements of the rational function field Q(T).
//!
//! Every nonzero element is kept in the canonical shape
//! `scalar * num / den` with `scalar` a nonzero rational, `num` and `den`
//! coprime primitive positive-leading integer polynomials. That shape makes
//! the place decompositions immediate: the p-adic data of the element is the
//! p-adic data of `scalar` (Gauss's lemma), and the order at an irreducible
//! polynomial is read off `num` and `den`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::intpoly::IntPoly;
use crate::exact::modp::gcd_q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    scalar: BigRational,
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Build `f / g`, reducing to canonical form. `g` must be nonzero.
    pub fn new(f: &IntPoly, g: &IntPoly) -> Result<RatFunc> {
        if g.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        if f.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (sf, fp, cf) = f.sign_primitive()?;
        let (sg, gp, cg) = g.sign_primitive()?;
        let d = gcd_q(&fp, &gp);
        let num = fp.exact_div(&d).expect("gcd divides numerator");
        let den = gp.exact_div(&d).expect("gcd divides denominator");
        let mut scalar = BigRational::new(cf, cg);
        if sf != sg {
            scalar = -scalar;
        }
        Ok(RatFunc { scalar, num, den })
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            scalar: BigRational::zero(),
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> RatFunc {
        if q.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            scalar: q,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(f: &IntPoly) -> RatFunc {
        RatFunc::new(f, &IntPoly::one()).expect("denominator one")
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational scalar `c` of the canonical form.
    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    /// Primitive positive-leading numerator polynomial.
    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    /// Primitive positive-leading denominator polynomial.
    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Integer-polynomial pair `(a, b)` with `self = a / b`, contents folded
    /// back in (not necessarily primitive).
    pub fn as_int_pair(&self) -> (IntPoly, IntPoly) {
        let a = self.num.mul_scalar(self.scalar.numer());
        let b = self.den.mul_scalar(self.scalar.denom());
        (a, b)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            scalar: -self.scalar.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(RatFunc {
            scalar: self.scalar.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying
        let d1 = gcd_q(&self.num, &rhs.den);
        let d2 = gcd_q(&rhs.num, &self.den);
        let num = self
            .num
            .exact_div(&d1)
            .unwrap()
            .mul(&rhs.num.exact_div(&d2).unwrap());
        let den = self
            .den
            .exact_div(&d2)
            .unwrap()
            .mul(&rhs.den.exact_div(&d1).unwrap());
        RatFunc {
            scalar: &self.scalar * &rhs.scalar,
            num,
            den,
        }
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        let (a1, b1) = self.as_int_pair();
        let (a2, b2) = rhs.as_int_pair();
        let num = a1.mul(&b2).add(&a2.mul(&b1));
        let den = b1.mul(&b2);
        RatFunc::new(&num, &den).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Order of vanishing at the closed point cut out by the irreducible
    /// polynomial `fx`: multiplicity in the numerator minus multiplicity in
    /// the denominator. Errors on the zero element.
    pub fn ord_at(&self, fx: &IntPoly) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::domain("order of the zero element"));
        }
        if fx.deg_or_zero() == 0 {
            return Err(Error::domain("order at a constant polynomial"));
        }
        Ok(poly_multiplicity(&self.num, fx) as i64 - poly_multiplicity(&self.den, fx) as i64)
    }

    /// Evaluate at a rational point; errors on a pole.
    pub fn eval_rational(&self, t: &BigRational) -> Result<BigRational> {
        let dv = self.den.eval_rational(t);
        if dv.is_zero() {
            return Err(Error::Pole(format!("pole at T = {t}")));
        }
        Ok(&self.scalar * self.num.eval_rational(t) / dv)
    }

    /// Degree of numerator minus degree of denominator (the order of pole at
    /// infinity); errors on zero.
    pub fn degree_balance(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::domain("degree of the zero element"));
        }
        Ok(self.num.deg_or_zero() as i64 - self.den.deg_or_zero() as i64)
    }

    /// Canonical parseable rendering `(a)/(b)` over integers. Parentheses
    /// are dropped only where operator precedence keeps the value intact.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (a, b) = self.as_int_pair();
        let num_s = a.render(var);
        if b.is_one() {
            return num_s;
        }
        let den_s = b.render(var);
        // numerator: a single monomial needs no parentheses before `/`
        let num_atom = a.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        // denominator: only a bare positive constant or a monic power of the
        // variable survives unparenthesized after `/`
        let den_atom = (b.is_constant() && !b.leading().is_negative())
            || (b.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && b.leading().is_one());
        let num_w = if num_atom { num_s } else { format!("({num_s})") };
        let den_w = if den_atom { den_s } else { format!("({den_s})") };
        format!("{num_w}/{den_w}")
    }
}

/// Multiplicity of the irreducible `fx` in `f` (0 when coprime).
pub fn poly_multiplicity(f: &IntPoly, fx: &IntPoly) -> u32 {
    if f.is_zero() || fx.deg_or_zero() == 0 {
        return 0;
    }
    let mut m = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.exact_div(fx) {
        m += 1;
        cur = q;
        if cur.is_constant() {
            break;
        }
    }
    m
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("T"))
    }
}
