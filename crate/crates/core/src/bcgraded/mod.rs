//! The BC_N-graded algebras of types B, C and D: labeled root-space
//! generators, their matrix realizations, and closed-form brackets.

mod closed;
mod matrix;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::format::{join_terms, term};
use crate::scalars::{Int, QField, QScalar};
use crate::text::{self, Expr, ExprKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesType {
    B,
    C,
    D,
}

impl FromStr for SeriesType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(SeriesType::B),
            "c" => Ok(SeriesType::C),
            "d" => Ok(SeriesType::D),
            _ => Err(Error::InvalidConfig(format!("unknown series '{s}' (expected b, c or d)"))),
        }
    }
}

impl fmt::Display for SeriesType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesType::B => "b",
            SeriesType::C => "c",
            SeriesType::D => "d",
        })
    }
}

/// A series together with its rank `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    pub ty: SeriesType,
    pub n: u32,
}

impl Series {
    pub fn new(ty: SeriesType, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("rank N must be positive".into()));
        }
        Ok(Series { ty, n })
    }

    pub fn b(n: u32) -> Self {
        Series { ty: SeriesType::B, n }
    }

    pub fn c(n: u32) -> Self {
        Series { ty: SeriesType::C, n }
    }

    pub fn d(n: u32) -> Self {
        Series { ty: SeriesType::D, n }
    }

    /// `-1` for C, `+1` for D and B.
    pub fn rho(&self) -> i64 {
        match self.ty {
            SeriesType::C => -1,
            SeriesType::B | SeriesType::D => 1,
        }
    }

    /// Matrix size of the ambient `gl_r`.
    pub fn size(&self) -> usize {
        match self.ty {
            SeriesType::B => 2 * self.n as usize + 1,
            _ => 2 * self.n as usize,
        }
    }

    pub fn is_b(&self) -> bool {
        self.ty == SeriesType::B
    }

    /// Rejects labels whose kind or species indices do not fit the series.
    pub fn check(&self, l: &Label) -> Result<()> {
        if matches!(l.kind, Kind::E | Kind::Es | Kind::E0) && !self.is_b() {
            return Err(Error::InvalidKindForSeries(format!("{l} exists only in series b")));
        }
        let used = match l.kind {
            Kind::F | Kind::G | Kind::H => 2,
            Kind::E | Kind::Es => 1,
            _ => 0,
        };
        let idx = [l.i, l.j];
        if idx[..used].iter().any(|&v| v == 0 || v > self.n) {
            return Err(Error::InvalidKindForSeries(format!("{l}: species index outside 1..={}", self.n)));
        }
        Ok(())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.n)
    }
}

/// Generator families. The order here is the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    F,
    G,
    H,
    E,
    Es,
    E0,
    C,
    Cy,
}

impl Kind {
    pub const ALL: [Kind; 8] = [Kind::F, Kind::G, Kind::H, Kind::E, Kind::Es, Kind::E0, Kind::C, Kind::Cy];

    pub fn name(self) -> &'static str {
        match self {
            Kind::F => "f",
            Kind::G => "g",
            Kind::H => "h",
            Kind::E => "e",
            Kind::Es => "es",
            Kind::E0 => "e0",
            Kind::C => "c",
            Kind::Cy => "cy",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn is_central(self) -> bool {
        matches!(self, Kind::C | Kind::Cy)
    }
}

/// A labeled generator with unit coefficient. Unused fields are zero:
/// `e`, `es` ignore `j`; `e0` ignores `i`, `j`; `c` keeps only `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub kind: Kind,
    pub i: u32,
    pub j: u32,
    pub m: i64,
    pub n: i64,
}

impl Label {
    pub fn f(i: u32, j: u32, m: i64, n: i64) -> Self {
        Label { kind: Kind::F, i, j, m, n }
    }

    pub fn g(i: u32, j: u32, m: i64, n: i64) -> Self {
        Label { kind: Kind::G, i, j, m, n }
    }

    pub fn h(i: u32, j: u32, m: i64, n: i64) -> Self {
        Label { kind: Kind::H, i, j, m, n }
    }

    pub fn e(i: u32, m: i64, n: i64) -> Self {
        Label { kind: Kind::E, i, j: 0, m, n }
    }

    pub fn es(i: u32, m: i64, n: i64) -> Self {
        Label { kind: Kind::Es, i, j: 0, m, n }
    }

    pub fn e0(m: i64, n: i64) -> Self {
        Label { kind: Kind::E0, i: 0, j: 0, m, n }
    }

    pub fn c(n: i64) -> Self {
        Label { kind: Kind::C, i: 0, j: 0, m: 0, n }
    }

    pub fn cy() -> Self {
        Label { kind: Kind::Cy, i: 0, j: 0, m: 0, n: 0 }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Label { kind, i, j, m, n } = *self;
        let k = kind.name();
        match kind {
            Kind::F | Kind::G | Kind::H => write!(f, "{k}[{i},{j};{m},{n}]"),
            Kind::E | Kind::Es => write!(f, "{k}[{i};{m},{n}]"),
            Kind::E0 => write!(f, "{k}[{m},{n}]"),
            Kind::C => write!(f, "c[{n}]"),
            Kind::Cy => f.write_str("cy"),
        }
    }
}

/// Weight of a generator under the Cartan elements `h_i`, as coefficients
/// of `ε_1, ..., ε_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    /// The eigenvalue on `h_i = e_ii - e_{N+i,N+i}`.
    pub fn at(&self, i: u32) -> i64 {
        self.0[i as usize - 1]
    }
}

pub fn weight_of(l: &Label, rank: u32) -> Weight {
    let mut w = vec![0i64; rank as usize];
    let mut bump = |idx: u32, by: i64| {
        if idx >= 1 && idx <= rank {
            w[idx as usize - 1] += by;
        }
    };
    match l.kind {
        Kind::F => {
            bump(l.i, 1);
            bump(l.j, -1);
        }
        Kind::G => {
            bump(l.i, 1);
            bump(l.j, 1);
        }
        Kind::H => {
            bump(l.i, -1);
            bump(l.j, -1);
        }
        Kind::E => bump(l.i, 1),
        Kind::Es => bump(l.i, -1),
        Kind::E0 | Kind::C | Kind::Cy => {}
    }
    Weight(w)
}

/// A finite linear combination of labeled generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<T: Int = i64> {
    terms: BTreeMap<Label, QScalar<T>>,
}

impl<T: Int> Default for Combination<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Int> Combination<T> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn single(l: Label, c: QScalar<T>) -> Self {
        let mut out = Self::zero();
        out.add_term(l, &c);
        out
    }

    pub fn gen(l: Label) -> Self {
        Self::single(l, QScalar::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &QScalar<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: &Label) -> QScalar<T> {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · l` with no canonicalization.
    pub fn add_term(&mut self, l: Label, c: &QScalar<T>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(l).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(*l, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Combination { terms: self.terms.iter().map(|(l, c)| (*l, -c)).collect() }
    }

    pub fn scale(&self, s: &QScalar<T>) -> Self {
        let mut out = Self::zero();
        for (l, c) in &self.terms {
            out.add_term(*l, &(c * s));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(l, c)| json!({ "gen": l.to_string(), "coeff": c.to_string() })).collect(),
        )
    }
}

impl<T: Int> fmt::Display for Combination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.terms.iter().map(|(l, c)| term(c, &l.to_string()))))
    }
}

/// One of the three graded algebras over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct Algebra<T: Int = i64> {
    series: Series,
    field: QField<T>,
}

impl<T: Int> Algebra<T> {
    pub fn new(series: Series, field: QField<T>) -> Self {
        Algebra { series, field }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn field(&self) -> &QField<T> {
        &self.field
    }

    pub fn rho(&self) -> i64 {
        self.series.rho()
    }

    /// Validates a label against the series and `Λ(q)`.
    pub fn check(&self, l: &Label) -> Result<()> {
        self.series.check(l)?;
        if l.kind == Kind::C && !self.field.in_lambda(l.n) {
            return Err(Error::InvalidKindForSeries(format!("c[{}] requires {} in Λ(q)", l.n, l.n)));
        }
        Ok(())
    }

    pub fn check_all(&self, x: &Combination<T>) -> Result<()> {
        x.terms().try_for_each(|(l, _)| self.check(l))
    }

    /// Rewrites `c · l` onto a canonical label using
    /// `g_ij(m,n) = -ρ q^{-mn} g_ji(m,-n)` (likewise `h`) and
    /// `e0(m,n) = -q^{-mn} e0(m,-n)`. Returns `None` for labels that
    /// realize to zero.
    pub fn canonicalize(&self, l: &Label, c: &QScalar<T>) -> Option<(Label, QScalar<T>)> {
        if c.is_zero() {
            return None;
        }
        let f = &self.field;
        let flip = |sign: i64, l2: Label| Some((l2, f.mul_qpow(&c.scale_int(sign), -l.m * l.n)));
        match l.kind {
            Kind::G | Kind::H => {
                let rho = self.rho();
                if l.i > l.j || (l.i == l.j && l.n < 0) {
                    flip(-rho, Label { i: l.j, j: l.i, n: -l.n, ..*l })
                } else if l.i == l.j && l.n == 0 && rho == 1 {
                    None
                } else {
                    Some((*l, c.clone()))
                }
            }
            Kind::E0 => match l.n {
                0 => None,
                n if n < 0 => flip(-1, Label::e0(l.m, -n)),
                _ => Some((*l, c.clone())),
            },
            _ => Some((*l, c.clone())),
        }
    }

    pub fn is_canonical(&self, l: &Label) -> bool {
        matches!(self.canonicalize(l, &QScalar::one()), Some((l2, c)) if l2 == *l && c.is_one())
    }

    pub fn canonical(&self, x: &Combination<T>) -> Combination<T> {
        let mut out = Combination::zero();
        for (l, c) in x.terms() {
            if let Some((l2, c2)) = self.canonicalize(l, c) {
                out.add_term(l2, &c2);
            }
        }
        out
    }

    /// Parses generator text such as `((q+1)/2)*g[1,2;0,-1] - cy` without
    /// canonicalizing.
    pub fn parse_raw(&self, src: &str) -> Result<Combination<T>> {
        let e = text::parse(src)?;
        let out = self.eval(&e)?;
        self.check_all(&out)?;
        Ok(out)
    }

    /// Parses and canonicalizes.
    pub fn parse(&self, src: &str) -> Result<Combination<T>> {
        Ok(self.canonical(&self.parse_raw(src)?))
    }

    fn eval(&self, e: &Expr) -> Result<Combination<T>> {
        if !mentions_generator(e) {
            return Err(Error::syntax(e.pos, "expected a generator such as f[1,2;0,0]"));
        }
        match &e.kind {
            ExprKind::Gen { name, groups } => Ok(Combination::gen(label_from(name, groups, e.pos)?)),
            ExprKind::Ident(name) if name == "cy" => Ok(Combination::gen(Label::cy())),
            ExprKind::Neg(a) => Ok(self.eval(a)?.neg()),
            ExprKind::Add(a, b) => Ok(self.eval(a)?.add(&self.eval(b)?)),
            ExprKind::Sub(a, b) => Ok(self.eval(a)?.sub(&self.eval(b)?)),
            ExprKind::Mul(a, b) => match (mentions_generator(a), mentions_generator(b)) {
                (false, true) => Ok(self.eval(b)?.scale(&self.field.eval(a)?)),
                (true, false) => Ok(self.eval(a)?.scale(&self.field.eval(b)?)),
                _ => Err(Error::syntax(e.pos, "product of two generators")),
            },
            ExprKind::Div(a, b) if !mentions_generator(b) => {
                Ok(self.eval(a)?.scale(&self.field.eval(b)?.checked_inv()?))
            }
            _ => Err(Error::syntax(e.pos, "not a linear combination of generators")),
        }
    }
}

fn mentions_generator(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Gen { .. } => true,
        ExprKind::Ident(n) => n == "cy",
        ExprKind::Int(_) | ExprKind::Ket(_) => false,
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => mentions_generator(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            mentions_generator(a) || mentions_generator(b)
        }
    }
}

fn label_from(name: &str, groups: &[Vec<Expr>], pos: usize) -> Result<Label> {
    let kind = Kind::from_name(name).ok_or_else(|| Error::syntax(pos, format!("unknown generator '{name}'")))?;
    let ints = |g: &Vec<Expr>| g.iter().map(Expr::as_int).collect::<Result<Vec<i64>>>();
    let shape: Vec<Vec<i64>> = groups.iter().map(ints).collect::<Result<_>>()?;
    let dims: Vec<usize> = shape.iter().map(Vec::len).collect();
    let species = |v: i64| {
        u32::try_from(v).map_err(|_| Error::syntax(pos, format!("species index {v} must be positive")))
    };
    let bad = || Error::syntax(pos, format!("wrong argument shape for '{name}'"));
    Ok(match kind {
        Kind::F | Kind::G | Kind::H if dims == [2, 2] => Label {
            kind,
            i: species(shape[0][0])?,
            j: species(shape[0][1])?,
            m: shape[1][0],
            n: shape[1][1],
        },
        Kind::E | Kind::Es if dims == [1, 2] => {
            Label { kind, i: species(shape[0][0])?, j: 0, m: shape[1][0], n: shape[1][1] }
        }
        Kind::E0 if dims == [2] => Label::e0(shape[0][0], shape[0][1]),
        Kind::C if dims == [1] => Label::c(shape[0][0]),
        _ => return Err(bad()),
    })
}

#[cfg(test)]
mod tests;
