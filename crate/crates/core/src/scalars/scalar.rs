//! Scalars `base + rad2·√2` and the coefficient field they live in.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::cyclotomic::Cyclotomic;
use super::laurent::Laurent;
use super::ratfn::RatFn;
use super::Int;
use crate::error::{Error, Result};
use crate::text::{self, Expr, ExprKind};

/// How the formal parameter `q` is specialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    /// `q` transcendental: scalars are rational functions and `Λ(q) = {0}`.
    Generic,
    /// `q` a primitive `ℓ`-th root of unity: `Λ(q) = ℓZ`.
    RootOfUnity(u32),
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Generic => write!(f, "generic"),
            QMode::RootOfUnity(l) => write!(f, "root:{l}"),
        }
    }
}

impl FromStr for QMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "generic" {
            return Ok(QMode::Generic);
        }
        let order = s
            .strip_prefix("root:")
            .and_then(|l| l.parse::<u32>().ok())
            .filter(|&l| l >= 1)
            .ok_or_else(|| Error::InvalidConfig(format!("bad q mode '{s}' (use generic or root:L with L >= 1)")))?;
        Ok(QMode::RootOfUnity(order))
    }
}

/// An exact scalar `base + rad2·√2`.
///
/// In root-of-unity mode both components are residues modulo `Φ_ℓ`, kept
/// as polynomials of degree below `deg Φ_ℓ`; the shared ring handle travels
/// with the value so that products can be reduced without a context.
/// Constants need no ring and mix freely with either mode.
#[derive(Clone)]
pub struct QScalar<T: Int = i64> {
    base: RatFn<T>,
    rad2: Option<Box<RatFn<T>>>,
    ring: Option<Arc<Cyclotomic<T>>>,
}

impl<T: Int> PartialEq for QScalar<T> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.rad2 == other.rad2
    }
}

impl<T: Int> Eq for QScalar<T> {}

impl<T: Int> Hash for QScalar<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.rad2.hash(state);
    }
}

impl<T: Int> fmt::Debug for QScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl<T: Int> Default for QScalar<T> {
    fn default() -> Self {
        Self::zero()
    }
}

fn join_ring<T: Int>(a: &Option<Arc<Cyclotomic<T>>>, b: &Option<Arc<Cyclotomic<T>>>) -> Option<Arc<Cyclotomic<T>>> {
    match (a, b) {
        (Some(r), _) | (None, Some(r)) => Some(r.clone()),
        (None, None) => None,
    }
}

fn mul_base<T: Int>(ring: &Option<Arc<Cyclotomic<T>>>, x: &RatFn<T>, y: &RatFn<T>) -> RatFn<T> {
    match ring {
        Some(r) => {
            let (a, b) = (x.as_laurent().expect("residue"), y.as_laurent().expect("residue"));
            r.mul(a, b).into()
        }
        None => x.mul(y),
    }
}

impl<T: Int> QScalar<T> {
    pub fn zero() -> Self {
        QScalar { base: RatFn::zero(), rad2: None, ring: None }
    }

    pub fn one() -> Self {
        Self::from_ratio(Ratio::one())
    }

    pub fn from_ratio(c: Ratio<T>) -> Self {
        QScalar { base: RatFn::constant(c), rad2: None, ring: None }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(Ratio::from_integer(super::int::<T>(n)))
    }

    /// `n / d` as a constant.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_ratio(Ratio::new(super::int::<T>(n), super::int::<T>(d)))
    }

    fn with(base: RatFn<T>, rad2: RatFn<T>, ring: Option<Arc<Cyclotomic<T>>>) -> Self {
        let rad2 = if rad2.is_zero() { None } else { Some(Box::new(rad2)) };
        QScalar { base, rad2, ring }
    }

    pub fn base(&self) -> &RatFn<T> {
        &self.base
    }

    pub fn rad2(&self) -> RatFn<T> {
        self.rad2.as_deref().cloned().unwrap_or_default()
    }

    pub fn has_rad2(&self) -> bool {
        self.rad2.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.rad2.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.rad2.is_none()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_ratio(&self) -> Option<Ratio<T>> {
        if self.rad2.is_some() {
            return None;
        }
        self.base.as_constant()
    }

    pub fn scale(&self, c: &Ratio<T>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar {
            base: self.base.scale(c),
            rad2: self.rad2.as_ref().map(|r| Box::new(r.scale(c))),
            ring: self.ring.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        match k {
            1 => self.clone(),
            -1 => -self,
            _ => self.scale(&Ratio::from_integer(super::int::<T>(k))),
        }
    }

    fn mul_qpow_in(&self, k: i64, ring: &Option<Arc<Cyclotomic<T>>>) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match ring {
            None => QScalar {
                base: self.base.shift(k),
                rad2: self.rad2.as_ref().map(|r| Box::new(r.shift(k))),
                ring: None,
            },
            Some(r) => {
                let red = |x: &RatFn<T>| -> RatFn<T> {
                    r.reduce(&x.as_laurent().expect("residue").shift(k)).into()
                };
                Self::with(red(&self.base), self.rad2.as_deref().map(red).unwrap_or_default(), ring.clone())
            }
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let ring = join_ring(&self.ring, &other.ring);
        let base = if negate { self.base.sub(&other.base) } else { self.base.add(&other.base) };
        let rad2 = match (&self.rad2, &other.rad2) {
            (None, None) => RatFn::zero(),
            (Some(a), None) => (**a).clone(),
            (None, Some(b)) => {
                if negate {
                    b.neg()
                } else {
                    (**b).clone()
                }
            }
            (Some(a), Some(b)) => {
                if negate {
                    a.sub(b)
                } else {
                    a.add(b)
                }
            }
        };
        Self::with(base, rad2, ring)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_ratio() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_ratio() {
            return other.scale(&c);
        }
        let ring = join_ring(&self.ring, &other.ring);
        let mut base = mul_base(&ring, &self.base, &other.base);
        let mut rad2 = RatFn::zero();
        if let Some(b) = &other.rad2 {
            rad2 = mul_base(&ring, &self.base, b);
        }
        if let Some(a) = &self.rad2 {
            rad2 = rad2.add(&mul_base(&ring, a, &other.base));
            if let Some(b) = &other.rad2 {
                let two = Ratio::from_integer(super::int::<T>(2));
                base = base.add(&mul_base(&ring, a, b).scale(&two));
            }
        }
        Self::with(base, rad2, ring)
    }

    /// Inverse of a nonzero base-field element.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.rad2.is_some() {
            return Err(Error::DivisorNotInBaseField(self.to_string()));
        }
        let base = match &self.ring {
            Some(r) => r
                .inverse(self.base.as_laurent().expect("residue"))
                .ok_or(Error::DivisionByZero)?
                .into(),
            None => self.base.recip().ok_or(Error::DivisionByZero)?,
        };
        Ok(QScalar { base, rad2: None, ring: self.ring.clone() })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let b = if k < 0 { self.checked_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &b;
        }
        Ok(acc)
    }
}

impl<T: Int> Neg for &QScalar<T> {
    type Output = QScalar<T>;

    fn neg(self) -> QScalar<T> {
        QScalar {
            base: self.base.neg(),
            rad2: self.rad2.as_ref().map(|r| Box::new(r.neg())),
            ring: self.ring.clone(),
        }
    }
}

impl<T: Int> Neg for QScalar<T> {
    type Output = QScalar<T>;

    fn neg(self) -> QScalar<T> {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<T: Int> $tr<&QScalar<T>> for &QScalar<T> {
            type Output = QScalar<T>;
            fn $m(self, rhs: &QScalar<T>) -> QScalar<T> {
                $body(self, rhs)
            }
        }
        impl<T: Int> $tr<QScalar<T>> for QScalar<T> {
            type Output = QScalar<T>;
            fn $m(self, rhs: QScalar<T>) -> QScalar<T> {
                $body(&self, &rhs)
            }
        }
        impl<T: Int> $tr<&QScalar<T>> for QScalar<T> {
            type Output = QScalar<T>;
            fn $m(self, rhs: &QScalar<T>) -> QScalar<T> {
                $body(&self, rhs)
            }
        }
        impl<T: Int> $tr<QScalar<T>> for &QScalar<T> {
            type Output = QScalar<T>;
            fn $m(self, rhs: QScalar<T>) -> QScalar<T> {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &QScalar<T>, b: &QScalar<T>| a.add_impl(b, false));
binop!(Sub, sub, |a: &QScalar<T>, b: &QScalar<T>| a.add_impl(b, true));
binop!(Mul, mul, |a: &QScalar<T>, b: &QScalar<T>| a.mul_impl(b));

impl<T: Int> AddAssign<&QScalar<T>> for QScalar<T> {
    fn add_assign(&mut self, rhs: &QScalar<T>) {
        *self = self.add_impl(rhs, false);
    }
}

impl<T: Int> SubAssign<&QScalar<T>> for QScalar<T> {
    fn sub_assign(&mut self, rhs: &QScalar<T>) {
        *self = self.add_impl(rhs, true);
    }
}

impl<T: Int> Zero for QScalar<T> {
    fn zero() -> Self {
        QScalar::zero()
    }

    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl<T: Int> One for QScalar<T> {
    fn one() -> Self {
        QScalar::one()
    }
}

/// The coefficient field for one `q`-mode: the factory for every
/// mode-dependent scalar.
#[derive(Clone, Debug)]
pub struct QField<T: Int = i64> {
    mode: QMode,
    ring: Option<Arc<Cyclotomic<T>>>,
}

impl<T: Int> QField<T> {
    pub fn new(mode: QMode) -> Self {
        let ring = match mode {
            QMode::Generic => None,
            QMode::RootOfUnity(l) => {
                assert!(l >= 1, "root of unity order must be positive");
                Some(Arc::new(Cyclotomic::new(l)))
            }
        };
        QField { mode, ring }
    }

    pub fn generic() -> Self {
        Self::new(QMode::Generic)
    }

    pub fn root(ell: u32) -> Self {
        Self::new(QMode::RootOfUnity(ell))
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn zero(&self) -> QScalar<T> {
        QScalar::zero()
    }

    pub fn one(&self) -> QScalar<T> {
        QScalar::one()
    }

    pub fn int(&self, n: i64) -> QScalar<T> {
        QScalar::from_int(n)
    }

    pub fn frac(&self, n: i64, d: i64) -> QScalar<T> {
        QScalar::frac(n, d)
    }

    /// Embeds a Laurent polynomial, reducing it in root-of-unity mode.
    pub fn laurent(&self, p: Laurent<T>) -> QScalar<T> {
        let base = match &self.ring {
            Some(r) => r.reduce(&p).into(),
            None => p.into(),
        };
        QScalar { base, rad2: None, ring: self.ring.clone() }
    }

    pub fn q(&self) -> QScalar<T> {
        self.q_pow(1)
    }

    /// `q^k`; in root-of-unity mode the exponent is reduced mod `ℓ`.
    pub fn q_pow(&self, k: i64) -> QScalar<T> {
        match &self.ring {
            Some(r) => QScalar { base: r.q_pow(k).clone().into(), rad2: None, ring: self.ring.clone() },
            None => QScalar {
                base: Laurent::monomial(Ratio::one(), k).into(),
                rad2: None,
                ring: None,
            },
        }
    }

    /// `q^k · s`.
    pub fn mul_qpow(&self, s: &QScalar<T>, k: i64) -> QScalar<T> {
        s.mul_qpow_in(k, &self.ring)
    }

    pub fn sqrt2(&self) -> QScalar<T> {
        QScalar { base: RatFn::zero(), rad2: Some(Box::new(RatFn::one())), ring: self.ring.clone() }
    }

    /// The eigenvalue `√2/2` of the zero mode `e(0)` on the vacuum.
    pub fn lambda(&self) -> QScalar<T> {
        self.sqrt2().scale(&Ratio::new(super::int::<T>(1), super::int::<T>(2)))
    }

    /// Whether `q^n = 1`.
    pub fn in_lambda(&self, n: i64) -> bool {
        match self.mode {
            QMode::Generic => n == 0,
            QMode::RootOfUnity(l) => n.rem_euclid(l as i64) == 0,
        }
    }

    /// `(q^{mx} - 1) / (q^x - 1)`, read as `m` when `q^x = 1`.
    ///
    /// Off `Λ(q)` the quotient is the finite geometric sum, so it is
    /// assembled directly as a Laurent polynomial.
    pub fn geometric_ratio(&self, m: i64, x: i64) -> QScalar<T> {
        if self.in_lambda(x) {
            return self.int(m);
        }
        let one = Ratio::<T>::one();
        let p = if m >= 0 {
            Laurent::from_terms((0..m).map(|t| (x * t, one.clone())))
        } else {
            Laurent::from_terms((0..-m).map(|t| (m * x + x * t, -one.clone())))
        };
        self.laurent(p)
    }

    /// `½ (q^x + 1) (q^{mx} - 1) / (q^x - 1)` with the same convention.
    pub fn half_theta_sum(&self, m: i64, x: i64) -> QScalar<T> {
        let half = Ratio::new(super::int::<T>(1), super::int::<T>(2));
        let factor = self.laurent(Laurent::from_terms([(x, half.clone()), (0, half)]));
        &factor * &self.geometric_ratio(m, x)
    }

    /// `½ (q^n + 1) / (q^n - 1)`, the shift carried by the modified
    /// zero-mode operators. `None` when `q^n = 1`.
    pub fn correction(&self, n: i64) -> Option<QScalar<T>> {
        if self.in_lambda(n) {
            return None;
        }
        let half = Ratio::new(super::int::<T>(1), super::int::<T>(2));
        let one = Ratio::<T>::one();
        let num = Laurent::from_terms([(n, half.clone()), (0, half)]);
        let den = Laurent::from_terms([(n, one.clone()), (0, -one)]);
        Some(match &self.ring {
            None => QScalar { base: RatFn::new(num, den), rad2: None, ring: None },
            Some(_) => {
                let d = self.laurent(den).checked_inv().expect("q^n != 1");
                &self.laurent(num) * &d
            }
        })
    }

    /// Brings a scalar built elsewhere (e.g. a mode-free constant) into
    /// this field.
    pub fn embed(&self, s: &QScalar<T>) -> Result<QScalar<T>> {
        let conv = |x: &RatFn<T>| -> Result<QScalar<T>> {
            let num = self.laurent(x.num().clone());
            match x.den() {
                None => Ok(num),
                Some(d) => num.checked_div(&self.laurent(d.expand())),
            }
        };
        let base = conv(&s.base)?;
        match &s.rad2 {
            None => Ok(base),
            Some(r) => Ok(&base + &(&conv(r)? * &self.sqrt2())),
        }
    }

    pub fn parse(&self, src: &str) -> Result<QScalar<T>> {
        self.eval(&text::parse(src)?)
    }

    /// Evaluates a parsed expression over `q` and `r2`.
    pub fn eval(&self, e: &Expr) -> Result<QScalar<T>> {
        match &e.kind {
            ExprKind::Int(s) => {
                let v = <T as num_traits::Num>::from_str_radix(s, 10)
                    .map_err(|_| Error::syntax(e.pos, format!("bad integer literal {s}")))?;
                Ok(QScalar::from_ratio(Ratio::from_integer(v)))
            }
            ExprKind::Ident(name) => match name.as_str() {
                "q" => Ok(self.q()),
                "r2" => Ok(self.sqrt2()),
                _ => Err(Error::syntax(e.pos, format!("unknown symbol '{name}' in scalar"))),
            },
            ExprKind::Neg(a) => Ok(-self.eval(a)?),
            ExprKind::Add(a, b) => Ok(self.eval(a)? + self.eval(b)?),
            ExprKind::Sub(a, b) => Ok(self.eval(a)? - self.eval(b)?),
            ExprKind::Mul(a, b) => Ok(self.eval(a)? * self.eval(b)?),
            ExprKind::Div(a, b) => self.eval(a)?.checked_div(&self.eval(b)?),
            ExprKind::Pow(a, k) => {
                if matches!(&a.kind, ExprKind::Ident(n) if n == "q") {
                    return Ok(self.q_pow(*k));
                }
                self.eval(a)?.pow(*k)
            }
            ExprKind::Gen { .. } | ExprKind::Ket(_) => {
                Err(Error::syntax(e.pos, "expected a scalar expression"))
            }
        }
    }
}

impl<T: Int> fmt::Display for QScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::scalar(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = QScalar<i64>;

    #[test]
    fn basic_arithmetic() {
        let f = QField::<i64>::generic();
        assert_eq!(f.q() + f.one(), f.parse("q+1").unwrap());
        assert_eq!(f.sqrt2() * f.sqrt2(), f.int(2));
        let a = f.q_pow(2) - f.one();
        let b = f.q() - f.one();
        assert_eq!(a.checked_div(&b).unwrap(), f.q() + f.one());
    }

    #[test]
    fn division_errors() {
        let f = QField::<i64>::generic();
        assert_eq!(f.one().checked_div(&S::zero()), Err(Error::DivisionByZero));
        assert!(matches!(f.one().checked_div(&f.sqrt2()), Err(Error::DivisorNotInBaseField(_))));
    }

    #[test]
    fn root_of_unity_powers() {
        let f = QField::<i64>::root(4);
        assert!(f.q_pow(4).is_one());
        assert_eq!(f.q_pow(2), f.int(-1));
        assert_eq!(f.q_pow(3), -f.q());
        assert!(f.in_lambda(8) && !f.in_lambda(2));
        let g = QField::<i64>::generic();
        assert_eq!(g.q_pow(3), g.q() * g.q() * g.q());
        assert!(g.in_lambda(0) && !g.in_lambda(5));
        assert!(QField::<i64>::root(3).in_lambda(6));
    }

    #[test]
    fn geometric_ratio_convention() {
        let f = QField::<i64>::generic();
        assert_eq!(f.geometric_ratio(3, 0), f.int(3));
        assert_eq!(f.geometric_ratio(2, 1), f.q() + f.one());
        assert!(f.geometric_ratio(0, 7).is_zero());
        let r = f.geometric_ratio(-3, 2);
        let lhs = &r * &(f.q_pow(2) - f.one());
        assert_eq!(lhs, f.q_pow(-6) - f.one());
    }

    #[test]
    fn half_theta_sum_examples() {
        let f = QField::<i64>::generic();
        let expect = (f.q() + f.one()) * (f.q() + f.one()) * f.frac(1, 2);
        assert_eq!(f.half_theta_sum(2, 1), expect);
        assert!(f.half_theta_sum(0, 4).is_zero());
        let r = QField::<i64>::root(3);
        assert_eq!(r.half_theta_sum(5, 3), r.int(5));
    }

    #[test]
    fn correction_in_root_mode_matches_generic_formula() {
        let r = QField::<i64>::root(5);
        let c = r.correction(2).unwrap();
        let lhs = &c * &(r.q_pow(2) - r.one());
        assert_eq!(lhs, (r.q_pow(2) + r.one()) * r.frac(1, 2));
        assert!(r.correction(10).is_none());
    }
}
