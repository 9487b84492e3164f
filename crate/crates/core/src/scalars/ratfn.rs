//! Rational functions in `q` over the rationals.

use num_rational::Ratio;
use num_traits::Zero;
use smallvec::SmallVec;

use super::cyclotomic::{phi_coeffs, totient};
use super::laurent::Laurent;
use super::Int;

/// A denominator `Π Φ_d^{k_d} · G`.
///
/// Every denominator the algebra produces is a product of factors
/// `q^x - 1`, so cyclotomic factors are tracked by index and cancelled by
/// exact monic division. `G` collects whatever is left: monic, nonzero
/// constant term, degree `>= 1`, and free of cyclotomic factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Den<T: Int> {
    cyc: SmallVec<[(u32, u32); 4]>,
    rest: Option<Laurent<T>>,
}

impl<T: Int> Den<T> {
    fn is_one(&self) -> bool {
        self.cyc.is_empty() && self.rest.is_none()
    }

    /// The cyclotomic factors `(d, k)` meaning `Φ_d^k`, by increasing `d`.
    pub fn cyclotomic_factors(&self) -> &[(u32, u32)] {
        &self.cyc
    }

    pub fn residual(&self) -> Option<&Laurent<T>> {
        self.rest.as_ref()
    }

    /// The denominator multiplied out.
    pub fn expand(&self) -> Laurent<T> {
        let mut p = self.rest.clone().unwrap_or_else(Laurent::one);
        for &(d, k) in &self.cyc {
            let phi = phi_poly::<T>(d);
            for _ in 0..k {
                p = p.mul(&phi);
            }
        }
        p
    }

    fn merge_mul(&self, other: &Self) -> Self {
        let mut cyc: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        let (a, b) = (&self.cyc, &other.cyc);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                cyc.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                cyc.push(b[j]);
                j += 1;
            } else {
                cyc.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        let rest = match (&self.rest, &other.rest) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (Some(r), Some(s)) => Some(r.mul(s)),
        };
        Den { cyc, rest }
    }
}

fn phi_poly<T: Int>(d: u32) -> Laurent<T> {
    super::cyclotomic::cyclotomic_polynomial(d)
}

/// Divides out `Φ_d` as often as possible (at most `limit` times),
/// returning the number of factors removed.
fn strip_phi<T: Int>(p: &mut Laurent<T>, d: u32, limit: u32) -> u32 {
    let phi = phi_coeffs(d);
    let mut removed = 0;
    while removed < limit {
        if p.high().is_none_or(|h| (h as usize) < phi.len() - 1) {
            break;
        }
        let (q, r) = p.div_rem_monic(&phi);
        if !r.is_zero() {
            break;
        }
        *p = q;
        removed += 1;
    }
    removed
}

/// Splits a polynomial with nonzero constant term into its cyclotomic
/// factors and a cyclotomic-free remainder (same leading coefficient).
fn factor_cyclotomic<T: Int>(p: &Laurent<T>) -> (SmallVec<[(u32, u32); 4]>, Laurent<T>) {
    let mut rest = p.clone();
    let mut cyc = SmallVec::new();
    // Fast path for q^N - c: only binomials q^N - 1 factor over Φ_d, d | N.
    let terms = rest.terms();
    if terms.len() == 2 && terms[0].0 == 0 && terms[0].1 == -terms[1].1.clone() {
        let n = terms[1].0 as u32;
        let lc = terms[1].1.clone();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                cyc.push((d, 1));
            }
        }
        return (cyc, Laurent::constant(lc));
    }
    let deg = rest.high().unwrap_or(0) as u32;
    let mut d = 1;
    // totient(d) >= sqrt(d/2), so larger orders cannot divide.
    while deg > 0 && d <= 2 * deg * deg + 2 {
        let remaining = rest.high().unwrap_or(0) as u32;
        if remaining == 0 {
            break;
        }
        if totient(d) <= remaining {
            let k = strip_phi(&mut rest, d, u32::MAX);
            if k > 0 {
                cyc.push((d, k));
            }
        }
        d += 1;
    }
    (cyc, rest)
}

/// A reduced fraction `num / den`.
///
/// Canonical form: `den` is `None` when the value is a Laurent polynomial;
/// otherwise it is a monic ordinary polynomial of degree `>= 1` with a
/// nonzero constant term, coprime to `num`, held in factored form. Powers
/// of `q` always live in the numerator, so equal values have identical
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<T: Int> {
    num: Laurent<T>,
    den: Option<Box<Den<T>>>,
}

impl<T: Int> Default for RatFn<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Int> From<Laurent<T>> for RatFn<T> {
    fn from(num: Laurent<T>) -> Self {
        RatFn { num, den: None }
    }
}

impl<T: Int> RatFn<T> {
    pub fn zero() -> Self {
        RatFn { num: Laurent::zero(), den: None }
    }

    pub fn one() -> Self {
        RatFn { num: Laurent::one(), den: None }
    }

    pub fn constant(c: Ratio<T>) -> Self {
        Laurent::constant(c).into()
    }

    pub fn num(&self) -> &Laurent<T> {
        &self.num
    }

    pub fn den(&self) -> Option<&Den<T>> {
        self.den.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_none() && self.num.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent<T>> {
        match self.den {
            None => Some(&self.num),
            Some(_) => None,
        }
    }

    pub fn as_constant(&self) -> Option<Ratio<T>> {
        self.as_laurent().and_then(Laurent::as_constant)
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: Laurent<T>, den: Laurent<T>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (k, den) = den.strip_low();
        let (cyc, rest) = factor_cyclotomic(&den);
        let lc = rest.leading().expect("nonzero").recip();
        let num = num.shift(-k).scale(&lc);
        let rest = rest.scale(&lc);
        let rest = if rest.is_one() { None } else { Some(rest) };
        Self::cancel(num, Den { cyc, rest })
    }

    /// Removes common factors between `num` and a monic `den`.
    fn cancel(num: Laurent<T>, mut den: Den<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFn { num, den: None };
        }
        let (k, mut p) = num.strip_low();
        let mut cyc: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for &(d, e) in &den.cyc {
            let removed = strip_phi(&mut p, d, e);
            if removed < e {
                cyc.push((d, e - removed));
            }
        }
        den.cyc = cyc;
        if let Some(g) = den.rest.take() {
            let c = Laurent::gcd(&p, &g);
            if c.is_one() {
                den.rest = Some(g);
            } else {
                p = p.div_exact(&c);
                let g = g.div_exact(&c);
                den.rest = if g.is_one() { None } else { Some(g) };
            }
        }
        let num = p.shift(k);
        if den.is_one() {
            RatFn { num, den: None }
        } else {
            RatFn { num, den: Some(Box::new(den)) }
        }
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Ratio<T>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn shift(&self, k: i64) -> Self {
        RatFn { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.den, &other.den) {
            (None, None) => self.num.add(&other.num).into(),
            (Some(a), Some(b)) if a == b => Self::cancel(self.num.add(&other.num), (**a).clone()),
            (None, Some(b)) => {
                // a + c/b = (ab + c)/b is already reduced.
                let num = self.num.mul(&b.expand()).add(&other.num);
                if num.is_zero() {
                    Self::zero()
                } else {
                    RatFn { num, den: other.den.clone() }
                }
            }
            (Some(_), None) => other.add(self),
            (Some(a), Some(b)) => {
                let (lcm, fa, fb) = lcm_cofactors(a, b);
                let num = self.num.mul(&fa).add(&other.num.mul(&fb));
                Self::cancel(num, lcm)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&other.num);
        match (&self.den, &other.den) {
            (None, None) => num.into(),
            (Some(a), None) | (None, Some(a)) => Self::cancel(num, (**a).clone()),
            (Some(a), Some(b)) => Self::cancel(num, a.merge_mul(b)),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let den = self.den.as_deref().map_or_else(Laurent::one, Den::expand);
        Some(Self::new(den, self.num.clone()))
    }

    /// Substitutes `q = 1`; `None` if the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<Ratio<T>> {
        let n = self.num.eval_at_one();
        match &self.den {
            None => Some(n),
            Some(d) => {
                let d = d.expand().eval_at_one();
                if d.is_zero() {
                    None
                } else {
                    Some(n / d)
                }
            }
        }
    }
}

/// `lcm(a, b)` together with the cofactors `lcm / a` and `lcm / b`.
fn lcm_cofactors<T: Int>(a: &Den<T>, b: &Den<T>) -> (Den<T>, Laurent<T>, Laurent<T>) {
    let mut cyc: SmallVec<[(u32, u32); 4]> = SmallVec::new();
    let mut fa = Laurent::one();
    let mut fb = Laurent::one();
    let pow = |d: u32, k: u32| -> Laurent<T> {
        let phi = phi_poly::<T>(d);
        let mut p = Laurent::one();
        for _ in 0..k {
            p = p.mul(&phi);
        }
        p
    };
    let (x, y) = (&a.cyc, &b.cyc);
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            cyc.push(x[i]);
            fb = fb.mul(&pow(x[i].0, x[i].1));
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            cyc.push(y[j]);
            fa = fa.mul(&pow(y[j].0, y[j].1));
            j += 1;
        } else {
            let (d, ka, kb) = (x[i].0, x[i].1, y[j].1);
            cyc.push((d, ka.max(kb)));
            if ka < kb {
                fa = fa.mul(&pow(d, kb - ka));
            } else if kb < ka {
                fb = fb.mul(&pow(d, ka - kb));
            }
            i += 1;
            j += 1;
        }
    }
    let rest = match (&a.rest, &b.rest) {
        (None, None) => None,
        (Some(r), None) => {
            fb = fb.mul(r);
            Some(r.clone())
        }
        (None, Some(s)) => {
            fa = fa.mul(s);
            Some(s.clone())
        }
        (Some(r), Some(s)) => {
            let g = Laurent::gcd(r, s);
            let sr = s.div_exact(&g);
            let rs = r.div_exact(&g);
            fa = fa.mul(&sr);
            fb = fb.mul(&rs);
            Some(r.mul(&sr))
        }
    };
    (Den { cyc, rest }, fa, fb)
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    type R = RatFn<i64>;
    type L = Laurent<i64>;

    fn poly(cs: &[i64]) -> L {
        L::from_dense(cs.iter().map(|&c| Ratio::from_integer(c)).collect())
    }

    #[test]
    fn fraction_reduces_to_polynomial() {
        let v = R::new(poly(&[-1, 0, 1]), poly(&[-1, 1]));
        assert_eq!(v, R::from(poly(&[1, 1])));
    }

    #[test]
    fn q_powers_move_to_numerator() {
        // 1 / (q^2 - q) = q^-1 / (q - 1)
        let v = R::new(L::one(), poly(&[0, -1, 1]));
        assert_eq!(v.num(), &L::monomial(Ratio::one(), -1));
        assert_eq!(v.den().unwrap().expand(), poly(&[-1, 1]));
    }

    #[test]
    fn sum_of_fractions_cancels() {
        let a = R::new(L::one(), poly(&[-1, 1]));
        let b = R::new(poly(&[0, 1]), poly(&[-1, 1]));
        // 1/(q-1) - q/(q-1) = -1
        assert_eq!(a.sub(&b), R::constant(Ratio::from_integer(-1)));
        let c = a.mul(&R::from(poly(&[-1, 1])));
        assert!(c.is_one());
    }

    #[test]
    fn denominators_factor_over_cyclotomics() {
        // q^6 - 1 = Φ1 Φ2 Φ3 Φ6
        let v = R::new(L::one(), poly(&[-1, 0, 0, 0, 0, 0, 1]));
        let d = v.den().unwrap();
        assert_eq!(d.cyclotomic_factors(), &[(1, 1), (2, 1), (3, 1), (6, 1)]);
        assert!(d.residual().is_none());
        // (q^2 + 3)(q + 1) keeps q^2 + 3 as residual
        let w = R::new(L::one(), poly(&[3, 3, 1, 1]));
        let d = w.den().unwrap();
        assert_eq!(d.cyclotomic_factors(), &[(2, 1)]);
        assert_eq!(d.residual(), Some(&poly(&[3, 0, 1])));
    }

    #[test]
    fn mixed_denominators_add() {
        // 1/(q-1) + 1/(q+1) = 2q/(q^2-1)
        let a = R::new(L::one(), poly(&[-1, 1]));
        let b = R::new(L::one(), poly(&[1, 1]));
        let expect = R::new(poly(&[0, 2]), poly(&[-1, 0, 1]));
        assert_eq!(a.add(&b), expect);
        // 1/(q^2+3) - 1/(q^2+3) = 0 through the residual path
        let c = R::new(L::one(), poly(&[3, 0, 1]));
        assert!(c.sub(&c).is_zero());
        let e = R::new(L::one(), poly(&[-1, 1])).add(&c);
        assert_eq!(e.mul(&R::from(poly(&[-1, 1]))).mul(&R::from(poly(&[3, 0, 1]))), R::from(poly(&[2, 1, 1])));
    }
}
