//! Sparse Laurent polynomials in `q` with rational coefficients.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Int;

type Terms<T> = SmallVec<[(i64, Ratio<T>); 2]>;

/// A finite sum `Σ c_e q^e`, stored as `(e, c)` pairs sorted by exponent
/// with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<T: Int> {
    terms: Terms<T>,
}

impl<T: Int> Default for Laurent<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Int> Laurent<T> {
    pub fn zero() -> Self {
        Laurent { terms: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Ratio::one(), 0)
    }

    pub fn constant(c: Ratio<T>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Ratio<T>, exp: i64) -> Self {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((exp, c));
        }
        Laurent { terms }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, Ratio<T>)>>(it: I) -> Self {
        let mut raw: Terms<T> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if raw.len() > 1 {
            raw.sort_by_key(|(e, _)| *e);
            let mut merged: Terms<T> = SmallVec::with_capacity(raw.len());
            for (e, c) in raw {
                match merged.last_mut() {
                    Some((le, lc)) if *le == e => {
                        *lc = lc.clone() + c;
                        if lc.is_zero() {
                            merged.pop();
                        }
                    }
                    _ => merged.push((e, c)),
                }
            }
            raw = merged;
        }
        Laurent { terms: raw }
    }

    /// Dense coefficients `c_0, c_1, ...` of an ordinary polynomial.
    pub fn from_dense(coeffs: Vec<Ratio<T>>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, c)))
    }

    pub fn terms(&self) -> &[(i64, Ratio<T>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no `q`-dependence.
    pub fn as_constant(&self) -> Option<Ratio<T>> {
        match self.terms.as_slice() {
            [] => Some(Ratio::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of the highest power.
    pub fn leading(&self) -> Option<&Ratio<T>> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: i64) -> Ratio<T> {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Ratio::zero(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Ratio<T>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out: Terms<T> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    a[i].1.clone() - b[j].1.clone()
                } else {
                    a[i].1.clone() + b[j].1.clone()
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Laurent { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let mut raw: Vec<(i64, Ratio<T>)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                raw.push((ea + eb, ca.clone() * cb.clone()));
            }
        }
        Self::from_terms(raw)
    }

    /// Splits off the lowest power: `self = q^k * p` with `p(0) != 0`.
    pub fn strip_low(&self) -> (i64, Self) {
        match self.low() {
            None => (0, Self::zero()),
            Some(k) => (k, self.shift(-k)),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    fn to_dense(&self) -> Vec<Ratio<T>> {
        debug_assert!(self.low().is_none_or(|l| l >= 0), "dense form needs a polynomial");
        let mut out = vec![Ratio::zero(); self.high().map_or(0, |h| h as usize + 1)];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    /// Euclidean division of ordinary polynomials (all exponents `>= 0`).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.to_dense();
        let mut r = self.to_dense();
        let dd = d.len() - 1;
        if r.len() < d.len() {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d[dd].recip();
        let mut quot = vec![Ratio::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = r[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (t, dt) in d.iter().enumerate() {
                if !dt.is_zero() {
                    r[k + t] = r[k + t].clone() - c.clone() * dt.clone();
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (Self::from_dense(quot), Self::from_dense(r))
    }

    /// Division by a monic polynomial with integer coefficients (constant
    /// term first). No coefficient denominators are introduced.
    pub fn div_rem_monic(&self, divisor: &[i64]) -> (Self, Self) {
        let dd = divisor.len() - 1;
        debug_assert_eq!(divisor[dd], 1);
        let mut r = self.to_dense();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let div: Vec<Ratio<T>> = divisor.iter().map(|&c| Ratio::from_integer(super::int::<T>(c))).collect();
        let mut quot = vec![Ratio::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (t, dt) in div.iter().enumerate().take(dd) {
                if !dt.is_zero() {
                    r[k + t] = r[k + t].clone() - c.clone() * dt.clone();
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (Self::from_dense(quot), Self::from_dense(r))
    }

    /// Exact quotient; panics (debug) if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// `self` divided by its rational content, leading coefficient positive:
    /// a primitive polynomial with integer coefficients.
    pub fn primitive_part(&self) -> Self {
        let mut g = T::zero();
        let mut l = T::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Self::zero();
        }
        let mut content = Ratio::new(g, l);
        if self.leading().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        self.scale(&content.recip())
    }

    /// Monic greatest common divisor of two ordinary polynomials.
    ///
    /// Remainders are kept primitive over the integers, which keeps
    /// coefficient growth in check for machine-word coefficient types.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
        while !b.is_zero() {
            if b.high() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Substitutes `q = 1`.
    pub fn eval_at_one(&self) -> Ratio<T> {
        self.terms.iter().fold(Ratio::zero(), |acc, (_, c)| acc + c.clone())
    }
}
