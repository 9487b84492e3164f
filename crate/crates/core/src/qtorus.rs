//! The quantum torus `C_q`: Laurent polynomials in `x`, `y` with
//! `y x = q x y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::format::{join_terms, term};
use crate::scalars::{Int, QField, QScalar};
use crate::text::{self, Expr, ExprKind};

/// Exponent pair `(m, n)` of the monomial `x^m y^n`.
pub type Exp = (i64, i64);

/// A finite combination `Σ c_{m,n} x^m y^n` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusElement<T: Int = i64> {
    terms: BTreeMap<Exp, QScalar<T>>,
}

impl<T: Int> Default for TorusElement<T> {
    fn default() -> Self {
        Self::zero()
    }
}

/// `x^m y^n · x^p y^s = q^{np} x^{m+p} y^{n+s}`; returns the power of `q`
/// and the product exponent.
pub fn monomial_mul(a: Exp, b: Exp) -> (i64, Exp) {
    (a.1 * b.0, (a.0 + b.0, a.1 + b.1))
}

/// `bar(x^m y^n) = q^{-mn} x^m y^{-n}`, as a `q` power and exponent.
pub fn monomial_bar(a: Exp) -> (i64, Exp) {
    (-a.0 * a.1, (a.0, -a.1))
}

impl<T: Int> TorusElement<T> {
    pub fn zero() -> Self {
        TorusElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial((0, 0), QScalar::one())
    }

    pub fn monomial(e: Exp, c: QScalar<T>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TorusElement { terms }
    }

    /// `x^m y^n` with coefficient 1.
    pub fn xy(m: i64, n: i64) -> Self {
        Self::monomial((m, n), QScalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, QScalar<T>)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &QScalar<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> QScalar<T> {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exp, c: &QScalar<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TorusElement { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, c: &QScalar<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn mul(&self, other: &Self, f: &QField<T>) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (k, e) = monomial_mul(*a, *b);
                out.add_term(e, &f.mul_qpow(&(ca * cb), k));
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self, f: &QField<T>) -> Self {
        self.mul(other, f).sub(&other.mul(self, f))
    }

    /// The anti-involution fixing `x` and sending `y` to `y^{-1}`.
    pub fn bar(&self, f: &QField<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let (k, b) = monomial_bar(*e);
            (b, f.mul_qpow(c, k))
        }))
    }

    /// The decomposition into `bar`-symmetric and `bar`-antisymmetric parts.
    pub fn sym_split(&self, f: &QField<T>) -> (Self, Self) {
        let half = f.frac(1, 2);
        let b = self.bar(f);
        (self.add(&b).scale(&half), self.sub(&b).scale(&half))
    }

    /// Membership in `[C_q, C_q]`, spanned by the monomials `x^m y^n` with
    /// `m` or `n` outside `Λ(q)`.
    pub fn in_commutator_subspace(&self, f: &QField<T>) -> bool {
        self.terms.keys().all(|&(m, n)| !f.in_lambda(m) || !f.in_lambda(n))
    }

    pub fn parse(src: &str, f: &QField<T>) -> Result<Self> {
        Self::eval(&text::parse(src)?, f)
    }

    pub fn eval(e: &Expr, f: &QField<T>) -> Result<Self> {
        match &e.kind {
            ExprKind::Ident(name) if name == "x" => Ok(Self::xy(1, 0)),
            ExprKind::Ident(name) if name == "y" => Ok(Self::xy(0, 1)),
            ExprKind::Int(_) | ExprKind::Ident(_) => Ok(Self::monomial((0, 0), f.eval(e)?)),
            ExprKind::Neg(a) => Ok(Self::eval(a, f)?.neg()),
            ExprKind::Add(a, b) => Ok(Self::eval(a, f)?.add(&Self::eval(b, f)?)),
            ExprKind::Sub(a, b) => Ok(Self::eval(a, f)?.sub(&Self::eval(b, f)?)),
            ExprKind::Mul(a, b) => Ok(Self::eval(a, f)?.mul(&Self::eval(b, f)?, f)),
            ExprKind::Div(a, b) => {
                let d = Self::eval(b, f)?;
                let s = match d.terms.iter().next() {
                    None => return Err(Error::DivisionByZero),
                    Some((&(0, 0), c)) if d.len() == 1 => c.clone(),
                    _ => return Err(Error::syntax(b.pos, "can only divide by a scalar")),
                };
                Ok(Self::eval(a, f)?.scale(&s.checked_inv()?))
            }
            ExprKind::Pow(a, k) => {
                let base = Self::eval(a, f)?;
                match (base.terms.iter().next(), base.len()) {
                    (Some((&(m, n), c)), 1) if c.is_one() && (m == 0 || n == 0) => {
                        Ok(Self::xy(m * k, n * k))
                    }
                    (Some((&(0, 0), c)), 1) => Ok(Self::monomial((0, 0), c.pow(*k)?)),
                    _ if *k >= 0 => {
                        let mut acc = Self::one();
                        for _ in 0..*k {
                            acc = acc.mul(&base, f);
                        }
                        Ok(acc)
                    }
                    _ => Err(Error::syntax(e.pos, "negative power of a non-monomial")),
                }
            }
            ExprKind::Gen { .. } | ExprKind::Ket(_) => {
                Err(Error::syntax(e.pos, "expected a torus expression"))
            }
        }
    }
}

fn monomial_text(m: i64, n: i64) -> String {
    let part = |v: &str, k: i64| match k {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{k}")),
    };
    [part("x", m), part("y", n)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

impl<T: Int> fmt::Display for TorusElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(&(m, n), c)| term(c, &monomial_text(m, n)));
        f.write_str(&join_terms(terms))
    }
}
