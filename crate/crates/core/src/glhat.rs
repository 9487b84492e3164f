//! The centrally extended matrix algebra `gl_r(C_q) ⊕ Σ C c(n) ⊕ C c_y`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qtorus::{monomial_mul, TorusElement};
use crate::scalars::format::{join_terms, term};
use crate::scalars::{Int, QField, QScalar};

/// Which central cocycle the bracket uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Cocycle {
    #[default]
    Standard,
    /// Test fixture: the `c(n)` term enters with the wrong sign whenever the
    /// contracted unit matrices are off-diagonal.
    FlipOffDiagonal,
}

/// Smallest matrix index for size `r`: `0..=2N` for odd sizes, `1..=2N`
/// for even ones.
pub fn first_index(r: usize) -> i64 {
    if r % 2 == 1 {
        0
    } else {
        1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlHatElement<T: Int = i64> {
    r: usize,
    matrix: BTreeMap<(i64, i64), TorusElement<T>>,
    c: BTreeMap<i64, QScalar<T>>,
    cy: QScalar<T>,
}

impl<T: Int> GlHatElement<T> {
    pub fn zero(r: usize) -> Self {
        GlHatElement { r, matrix: BTreeMap::new(), c: BTreeMap::new(), cy: QScalar::zero() }
    }

    pub fn size(&self) -> usize {
        self.r
    }

    fn check_index(&self, i: i64, j: i64) -> Result<()> {
        let lo = first_index(self.r);
        let hi = lo + self.r as i64 - 1;
        if i < lo || i > hi || j < lo || j > hi {
            return Err(Error::IndexOutOfRange { i, j, size: self.r });
        }
        Ok(())
    }

    /// `e_ij(t)`.
    pub fn unit(r: usize, i: i64, j: i64, t: TorusElement<T>) -> Result<Self> {
        let mut out = Self::zero(r);
        out.check_index(i, j)?;
        if !t.is_zero() {
            out.matrix.insert((i, j), t);
        }
        Ok(out)
    }

    /// `coeff · c(n)`; `n` must lie in `Λ(q)`.
    pub fn central(r: usize, n: i64, coeff: QScalar<T>, f: &QField<T>) -> Result<Self> {
        if !f.in_lambda(n) {
            return Err(Error::InvalidKindForSeries(format!("c[{n}] requires {n} in Λ(q)")));
        }
        let mut out = Self::zero(r);
        out.add_c(n, &coeff);
        Ok(out)
    }

    pub fn central_y(r: usize, coeff: QScalar<T>) -> Self {
        let mut out = Self::zero(r);
        out.cy = coeff;
        out
    }

    pub fn entry(&self, i: i64, j: i64) -> TorusElement<T> {
        self.matrix.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &TorusElement<T>)> {
        self.matrix.iter()
    }

    pub fn c_part(&self) -> &BTreeMap<i64, QScalar<T>> {
        &self.c
    }

    pub fn cy_part(&self) -> &QScalar<T> {
        &self.cy
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_empty() && self.c.is_empty() && self.cy.is_zero()
    }

    /// The element with its central coordinates dropped.
    pub fn matrix_part(&self) -> Self {
        GlHatElement { r: self.r, matrix: self.matrix.clone(), c: BTreeMap::new(), cy: QScalar::zero() }
    }

    pub fn add_entry(&mut self, i: i64, j: i64, t: &TorusElement<T>) {
        if t.is_zero() {
            return;
        }
        let sum = self.entry(i, j).add(t);
        if sum.is_zero() {
            self.matrix.remove(&(i, j));
        } else {
            self.matrix.insert((i, j), sum);
        }
    }

    fn add_monomial(&mut self, i: i64, j: i64, e: (i64, i64), c: &QScalar<T>) {
        if c.is_zero() {
            return;
        }
        let slot = self.matrix.entry((i, j)).or_default();
        slot.add_term(e, c);
        if slot.is_zero() {
            self.matrix.remove(&(i, j));
        }
    }

    fn add_c(&mut self, n: i64, v: &QScalar<T>) {
        if v.is_zero() {
            return;
        }
        let slot = self.c.entry(n).or_default();
        *slot += v;
        if slot.is_zero() {
            self.c.remove(&n);
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.r != other.r {
            return Err(Error::SizeMismatch(self.r, other.r));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    fn add_assign(&mut self, other: &Self) {
        for ((i, j), t) in &other.matrix {
            self.add_entry(*i, *j, t);
        }
        for (n, v) in &other.c {
            self.add_c(*n, v);
        }
        self.cy += &other.cy;
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &QScalar<T>) -> Self {
        let mut out = Self::zero(self.r);
        if s.is_zero() {
            return out;
        }
        for ((i, j), t) in &self.matrix {
            out.add_entry(*i, *j, &t.scale(s));
        }
        for (n, v) in &self.c {
            out.add_c(*n, &(v * s));
        }
        out.cy = &self.cy * s;
        out
    }

    /// `Σ s_k A_k`.
    pub fn combine<'a, I>(r: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (QScalar<T>, &'a Self)>,
    {
        let mut out = Self::zero(r);
        for (s, a) in items {
            out.check_size(a)?;
            out.add_assign(&a.scale(&s));
        }
        Ok(out)
    }

    pub fn trace(&self) -> TorusElement<T> {
        let mut t = TorusElement::zero();
        for ((i, j), v) in &self.matrix {
            if i == j {
                t = t.add(v);
            }
        }
        t
    }

    pub fn bracket(&self, other: &Self, f: &QField<T>) -> Result<Self> {
        self.bracket_with(other, f, Cocycle::Standard)
    }

    /// The bracket, expanded over unit matrices with monomial entries:
    ///
    /// `[e_ij(x^m y^n), e_kl(x^p y^s)] = δ_jk q^{np} e_il(x^{m+p} y^{n+s})
    ///   - δ_il q^{ms} e_kj(x^{m+p} y^{n+s})
    ///   + m q^{np} δ_jk δ_il δ_{m+p,0} [n+s ∈ Λ] c(n+s)
    ///   + n q^{np} δ_jk δ_il δ_{m+p,0} δ_{n+s,0} c_y`.
    pub fn bracket_with(&self, other: &Self, f: &QField<T>, cocycle: Cocycle) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::zero(self.r);
        for (&(i, j), ta) in &self.matrix {
            for (&(k, l), tb) in &other.matrix {
                if j != k && i != l {
                    continue;
                }
                for (&(m, n), ca) in ta.terms() {
                    for (&(p, s), cb) in tb.terms() {
                        let ab = ca * cb;
                        let (_, e) = monomial_mul((m, n), (p, s));
                        if j == k {
                            out.add_monomial(i, l, e, &f.mul_qpow(&ab, n * p));
                        }
                        if i == l {
                            out.add_monomial(k, j, e, &-f.mul_qpow(&ab, m * s));
                        }
                        if j == k && i == l && m + p == 0 {
                            let w = f.mul_qpow(&ab, n * p);
                            if f.in_lambda(n + s) {
                                let mut v = w.scale_int(m);
                                if cocycle == Cocycle::FlipOffDiagonal && i != j {
                                    v = -v;
                                }
                                out.add_c(n + s, &v);
                            }
                            if n + s == 0 {
                                out.cy += &w.scale_int(n);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "matrix": self.matrix.iter().map(|((i, j), t)| json!([i, j, t.to_string()])).collect::<Vec<_>>(),
            "c": self.c.iter().map(|(n, v)| json!([n, v.to_string()])).collect::<Vec<_>>(),
            "cy": self.cy.to_string(),
        })
    }
}

impl<T: Int> fmt::Display for GlHatElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for ((i, j), t) in &self.matrix {
            terms.push((false, format!("E[{i},{j}]({t})")));
        }
        for (n, v) in &self.c {
            terms.push(term(v, &format!("c[{n}]")));
        }
        if !self.cy.is_zero() {
            terms.push(term(&self.cy, "cy"));
        }
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    type G = GlHatElement<i64>;
    type E = TorusElement<i64>;

    #[test]
    fn central_terms() {
        let f = QField::<i64>::generic();
        let a = G::unit(2, 1, 1, E::xy(1, 0)).unwrap();
        let b = G::unit(2, 1, 1, E::xy(-1, 0)).unwrap();
        assert_eq!(a.bracket(&b, &f).unwrap(), G::central(2, 0, f.one(), &f).unwrap());
        let a = G::unit(2, 1, 1, E::xy(0, 1)).unwrap();
        let b = G::unit(2, 1, 1, E::xy(0, -1)).unwrap();
        assert_eq!(a.bracket(&b, &f).unwrap(), G::central_y(2, f.one()));
    }

    #[test]
    fn off_diagonal_pair() {
        let f = QField::<i64>::generic();
        let a = G::unit(2, 1, 2, E::xy(1, 0)).unwrap();
        let b = G::unit(2, 2, 1, E::xy(-1, 0)).unwrap();
        let expect = G::combine(
            2,
            [
                (f.one(), &G::unit(2, 1, 1, E::one()).unwrap()),
                (f.int(-1), &G::unit(2, 2, 2, E::one()).unwrap()),
                (f.one(), &G::central(2, 0, f.one(), &f).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(a.bracket(&b, &f).unwrap(), expect);
        assert_eq!(expect.to_string(), "E[1,1](1) + E[2,2](-1) + c[0]");
    }

    #[test]
    fn index_and_size_checks() {
        assert!(G::unit(3, 0, 0, E::xy(0, 1)).is_ok());
        assert!(matches!(G::unit(2, 0, 0, E::one()), Err(Error::IndexOutOfRange { .. })));
        assert!(G::unit(2, 1, 1, E::zero()).unwrap().is_zero());
        let f = QField::<i64>::generic();
        let a = G::unit(2, 1, 1, E::one()).unwrap();
        let b = G::unit(3, 1, 1, E::one()).unwrap();
        assert_eq!(a.bracket(&b, &f), Err(Error::SizeMismatch(2, 3)));
    }

    #[test]
    fn combine_and_trace() {
        let f = QField::<i64>::generic();
        let a = G::unit(2, 1, 2, E::xy(1, 0)).unwrap();
        assert!(G::combine(2, [(f.one(), &a), (f.int(-1), &a)]).unwrap().is_zero());
        assert_eq!(G::combine(2, [(f.int(2), &a)]).unwrap(), G::unit(2, 1, 2, E::monomial((1, 0), f.int(2))).unwrap());
        assert!(a.trace().is_zero());
        let d = G::unit(2, 1, 1, E::xy(1, 0)).unwrap().add(&G::unit(2, 2, 2, E::xy(0, 1)).unwrap()).unwrap();
        assert_eq!(d.trace(), E::xy(1, 0).add(&E::xy(0, 1)));
        let json = d.to_json();
        assert_eq!(json["matrix"][0], json!([1, 1, "x"]));
    }

    fn unit_strategy(r: usize) -> impl Strategy<Value = (i64, i64, i64, i64)> {
        let lo = first_index(r);
        let hi = lo + r as i64 - 1;
        (lo..=hi, lo..=hi, -3i64..=3, -3i64..=3)
    }

    proptest! {
        #[test]
        fn antisymmetry_and_trace(a in unit_strategy(4), b in unit_strategy(4), ell in 0u32..=4) {
            let f = if ell == 0 { QField::<i64>::generic() } else { QField::root(ell) };
            let x = G::unit(4, a.0, a.1, E::xy(a.2, a.3)).unwrap();
            let y = G::unit(4, b.0, b.1, E::xy(b.2, b.3)).unwrap();
            let xy = x.bracket(&y, &f).unwrap();
            let yx = y.bracket(&x, &f).unwrap();
            prop_assert!(xy.add(&yx).unwrap().is_zero());
            prop_assert!(x.bracket(&x, &f).unwrap().is_zero());
            prop_assert!(xy.trace().in_commutator_subspace(&f));
            let c = G::central(4, 0, f.one(), &f).unwrap();
            prop_assert!(c.bracket(&x, &f).unwrap().is_zero());
        }
    }
}
