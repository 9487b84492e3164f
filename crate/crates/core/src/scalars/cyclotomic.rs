//! Residue arithmetic in `Q[q] / Φ_ℓ(q)`.

use std::cell::RefCell;
use std::rc::Rc;

use num_rational::Ratio;
use num_traits::Zero;

use super::laurent::Laurent;
use super::Int;

/// The cyclotomic field of order `ℓ`, with `q^j mod Φ_ℓ` tabulated for
/// `0 <= j < ℓ` so that any Laurent polynomial reduces in one pass.
#[derive(Debug)]
pub struct Cyclotomic<T: Int> {
    ell: u32,
    phi: Laurent<T>,
    powers: Vec<Laurent<T>>,
}

thread_local! {
    static PHI_TABLE: RefCell<Vec<Option<Rc<[i64]>>>> = const { RefCell::new(Vec::new()) };
}

/// Integer coefficients (constant term first) of the cyclotomic polynomial
/// `Φ_d`, memoized per thread. Computed as `(q^d - 1) / Π Φ_e` over the
/// proper divisors `e` of `d`; every division is exact and monic.
pub fn phi_coeffs(d: u32) -> Rc<[i64]> {
    assert!(d >= 1, "cyclotomic order must be positive");
    if let Some(p) = PHI_TABLE.with(|t| t.borrow().get(d as usize).cloned().flatten()) {
        return p;
    }
    let mut p = vec![0i64; d as usize + 1];
    p[0] = -1;
    p[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            let div = phi_coeffs(e);
            let dd = div.len() - 1;
            let mut quot = vec![0i64; p.len() - dd];
            for k in (0..quot.len()).rev() {
                let c = p[k + dd];
                quot[k] = c;
                if c != 0 {
                    for (t, &dt) in div.iter().enumerate() {
                        p[k + t] -= c * dt;
                    }
                }
            }
            debug_assert!(p[..dd].iter().all(|&c| c == 0));
            p = quot;
        }
    }
    let rc: Rc<[i64]> = p.into();
    PHI_TABLE.with(|t| {
        let mut t = t.borrow_mut();
        if t.len() <= d as usize {
            t.resize(d as usize + 1, None);
        }
        t[d as usize] = Some(rc.clone());
    });
    rc
}

/// Euler's totient, the degree of `Φ_d`.
pub fn totient(d: u32) -> u32 {
    let (mut n, mut out) = (d, d);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `Φ_ℓ` as a polynomial.
pub fn cyclotomic_polynomial<T: Int>(ell: u32) -> Laurent<T> {
    let c = phi_coeffs(ell);
    Laurent::from_terms(
        c.iter()
            .enumerate()
            .map(|(e, &v)| (e as i64, Ratio::from_integer(super::int::<T>(v)))),
    )
}

impl<T: Int> Cyclotomic<T> {
    pub fn new(ell: u32) -> Self {
        let phi = cyclotomic_polynomial::<T>(ell);
        let deg = phi.high().expect("nonzero") as usize;
        let mut powers = Vec::with_capacity(ell as usize);
        let mut cur = Laurent::one();
        for _ in 0..ell {
            powers.push(cur.clone());
            cur = cur.shift(1);
            if cur.high() == Some(deg as i64) {
                cur = cur.div_rem(&phi).1;
            }
        }
        Cyclotomic { ell, phi, powers }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn phi(&self) -> &Laurent<T> {
        &self.phi
    }

    pub fn degree(&self) -> usize {
        self.phi.high().expect("nonzero") as usize
    }

    /// `q^k` as a residue.
    pub fn q_pow(&self, k: i64) -> &Laurent<T> {
        &self.powers[k.rem_euclid(self.ell as i64) as usize]
    }

    pub fn is_reduced(&self, p: &Laurent<T>) -> bool {
        p.low().is_none_or(|l| l >= 0) && p.high().is_none_or(|h| (h as usize) < self.degree())
    }

    /// Reduces an arbitrary Laurent polynomial modulo `Φ_ℓ`.
    pub fn reduce(&self, p: &Laurent<T>) -> Laurent<T> {
        if self.is_reduced(p) {
            return p.clone();
        }
        let mut raw = Vec::new();
        for (e, c) in p.terms() {
            for (f, d) in self.q_pow(*e).terms() {
                raw.push((*f, c.clone() * d.clone()));
            }
        }
        Laurent::from_terms(raw)
    }

    pub fn mul(&self, a: &Laurent<T>, b: &Laurent<T>) -> Laurent<T> {
        self.reduce(&a.mul(b))
    }

    /// Image of a residue under the Galois automorphism `q -> q^k`.
    pub fn conjugate(&self, a: &Laurent<T>, k: i64) -> Laurent<T> {
        let mut raw = Vec::new();
        for (e, c) in a.terms() {
            for (f, d) in self.q_pow(e * k).terms() {
                raw.push((*f, c.clone() * d.clone()));
            }
        }
        Laurent::from_terms(raw)
    }

    /// Inverse of a nonzero residue, as the product of its nontrivial
    /// Galois conjugates divided by its norm. Everything stays in integer
    /// arithmetic up to the final division, so coefficients do not blow up
    /// the way Euclidean remainder sequences over Q do.
    pub fn inverse(&self, a: &Laurent<T>) -> Option<Laurent<T>> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let ell = self.ell as i64;
        let mut prod = Laurent::one();
        for k in 2..ell {
            if num_integer::gcd(k, ell) == 1 {
                prod = self.mul(&prod, &self.conjugate(&a, k));
            }
        }
        let norm = self.mul(&a, &prod).as_constant().expect("norm lies in Q");
        debug_assert!(!norm.is_zero(), "cyclotomic field has no zero divisors");
        Some(prod.scale(&norm.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(p: &Laurent<i64>) -> Vec<i64> {
        let h = p.high().unwrap();
        (0..=h).map(|e| p.coeff(e).to_integer()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(dense(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(dense(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(dense(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(dense(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(dense(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(dense(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn powers_wrap() {
        let f = Cyclotomic::<i64>::new(4);
        assert!(f.q_pow(4).is_one());
        assert_eq!(f.q_pow(2), &Laurent::constant(Ratio::from_integer(-1)));
        assert_eq!(f.q_pow(-1), &Laurent::monomial(Ratio::from_integer(-1), 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Cyclotomic::<i64>::new(6);
        let a = Laurent::from_terms([(0, Ratio::from_integer(2)), (1, Ratio::from_integer(1))]);
        let inv = f.inverse(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one());
    }
}
