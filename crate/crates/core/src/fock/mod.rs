//! Fock modules for the Clifford/Weyl algebras generated by `a_i(m)`,
//! `a_i^*(m)` and, for series B, the extra Clifford generators `e(m)`.

mod ops;

use std::fmt;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::bcgraded::Series;
use crate::error::{Error, Result};
use crate::scalars::{Int, QField, QScalar};
use crate::text::{self, Expr, ExprKind};

pub use ops::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    A,
    As,
    E,
}

impl SymKind {
    pub fn name(self) -> &'static str {
        match self {
            SymKind::A => "a",
            SymKind::As => "as",
            SymKind::E => "e",
        }
    }
}

/// A mode of one of the generating fields. `species` is 0 for `e`.
/// The derived order (kind, species, mode) is the canonical order of
/// creation symbols inside a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub kind: SymKind,
    pub species: u32,
    pub mode: i64,
}

impl Sym {
    pub fn a(i: u32, mode: i64) -> Self {
        Sym { kind: SymKind::A, species: i, mode }
    }

    pub fn a_star(i: u32, mode: i64) -> Self {
        Sym { kind: SymKind::As, species: i, mode }
    }

    pub fn e(mode: i64) -> Self {
        Sym { kind: SymKind::E, species: 0, mode }
    }

    /// `a(m <= 0)`, `a*(m < 0)` and `e(m < 0)` create; `e(0)` is neither.
    pub fn is_creation(&self) -> bool {
        match self.kind {
            SymKind::A => self.mode <= 0,
            SymKind::As | SymKind::E => self.mode < 0,
        }
    }

    pub fn is_zero_mode_e(&self) -> bool {
        self.kind == SymKind::E && self.mode == 0
    }

    pub fn is_annihilation(&self) -> bool {
        !self.is_creation() && !self.is_zero_mode_e()
    }

    /// The symbol whose ρ-bracket with `self` is nonzero.
    pub fn partner(&self) -> Sym {
        let kind = match self.kind {
            SymKind::A => SymKind::As,
            SymKind::As => SymKind::A,
            SymKind::E => SymKind::E,
        };
        Sym { kind, species: self.species, mode: -self.mode }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymKind::E => write!(f, "e[{}]", self.mode),
            k => write!(f, "{}[{};{}]", k.name(), self.species, self.mode),
        }
    }
}

/// A basis state: creation symbols in canonical order applied to the
/// vacuum, with occupation counts (always 1 for fermions).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct State(SmallVec<[(Sym, u32); 6]>);

impl State {
    pub fn vacuum() -> Self {
        State(SmallVec::new())
    }

    pub fn items(&self) -> &[(Sym, u32)] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    /// Total particle number.
    pub fn particles(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    /// Largest absolute mode present, 0 for the vacuum.
    pub fn max_mode(&self) -> i64 {
        self.0.iter().map(|(s, _)| s.mode.abs()).max().unwrap_or(0)
    }

    pub fn count(&self, s: &Sym) -> u32 {
        self.0.binary_search_by(|(x, _)| x.cmp(s)).map_or(0, |p| self.0[p].1)
    }

    pub fn to_json(&self, bosonic: bool) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|(s, k)| {
                    if bosonic {
                        json!([s.kind.name(), s.species, s.mode, k])
                    } else {
                        json!([s.kind.name(), s.species, s.mode])
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("|0>");
        }
        f.write_str("|")?;
        for (x, (s, k)) in self.0.iter().enumerate() {
            if x > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        f.write_str(">")
    }
}

/// A finite combination of basis states with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector<T: Int = i64> {
    terms: FxHashMap<State, QScalar<T>>,
}

impl<T: Int> FockVector<T> {
    pub fn zero() -> Self {
        FockVector { terms: FxHashMap::default() }
    }

    pub fn basis(s: State) -> Self {
        let mut out = Self::zero();
        out.terms.insert(s, QScalar::one());
        out
    }

    pub fn vacuum() -> Self {
        Self::basis(State::vacuum())
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

    pub fn coeff(&self, s: &State) -> QScalar<T> {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&State, &QScalar<T>)> {
        self.terms.iter()
    }

    /// Terms in canonical state order.
    pub fn sorted_terms(&self) -> Vec<(&State, &QScalar<T>)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, s: State, c: &QScalar<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &QScalar<T>) {
        if k.is_zero() {
            return;
        }
        for (s, c) in &other.terms {
            self.add_term(s.clone(), &(c * k));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &QScalar::from_int(-1));
        out
    }

    pub fn scale(&self, k: &QScalar<T>) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn to_json(&self, bosonic: bool) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(s, c)| json!({ "state": s.to_json(bosonic), "coeff": c.to_string() }))
                .collect(),
        )
    }
}

impl<T: Int> fmt::Display for FockVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (x, (s, c)) in terms.into_iter().enumerate() {
            let text = c.to_string();
            let flipped = (-c).to_string();
            let (neg, mag) = if text.starts_with('-') && !flipped.starts_with('-') {
                (true, flipped)
            } else {
                (false, text)
            };
            match (x, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag == "1" {
                write!(f, "{s}")?;
            } else if needs_parens(&mag) {
                write!(f, "({mag}) * {s}")?;
            } else {
                write!(f, "{mag} * {s}")?;
            }
        }
        Ok(())
    }
}

/// Whether a coefficient has a top-level sum that must be bracketed.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    let b = s.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' if depth == 0 => return true,
            b'-' if depth == 0 && i > 0 && b[i - 1] != b'^' => return true,
            _ => {}
        }
    }
    false
}

/// The Fock module attached to a series: fermionic for D and B (with the
/// extra `e` field for B), bosonic for C.
#[derive(Clone, Debug)]
pub struct FockSpace<T: Int = i64> {
    series: Series,
    field: QField<T>,
}

impl<T: Int> FockSpace<T> {
    pub fn new(series: Series, field: QField<T>) -> Self {
        FockSpace { series, field }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn field(&self) -> &QField<T> {
        &self.field
    }

    /// `+1` for fermions, `-1` for bosons.
    pub fn rho(&self) -> i64 {
        self.series.rho()
    }

    pub fn is_bosonic(&self) -> bool {
        self.rho() == -1
    }

    pub fn check_sym(&self, s: &Sym) -> Result<()> {
        let ok = match s.kind {
            SymKind::E => self.series.is_b() && s.species == 0,
            _ => s.species >= 1 && s.species <= self.series.n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSymbolForContext(format!("{s} in series {}", self.series)))
        }
    }

    /// Every basis state whose symbols have `|mode| <= cutoff`, with at most
    /// `cutoff` particles and (for bosons) occupancies at most `cutoff`.
    pub fn truncated_basis(&self, cutoff: u32) -> Vec<State> {
        let c = cutoff as i64;
        let mut syms = Vec::new();
        for i in 1..=self.series.n {
            for mode in -c..=c {
                syms.push(Sym::a(i, mode));
                syms.push(Sym::a_star(i, mode));
            }
        }
        if self.series.is_b() {
            syms.extend((-c..=c).map(Sym::e));
        }
        syms.retain(|s| s.is_creation());
        syms.sort();
        let max_occ = if self.is_bosonic() { cutoff } else { 1 };
        let mut out = Vec::new();
        let mut cur: SmallVec<[(Sym, u32); 6]> = SmallVec::new();
        fn go(
            syms: &[Sym],
            from: usize,
            left: u32,
            max_occ: u32,
            cur: &mut SmallVec<[(Sym, u32); 6]>,
            out: &mut Vec<State>,
        ) {
            out.push(State(cur.clone()));
            if left == 0 {
                return;
            }
            for x in from..syms.len() {
                for k in 1..=max_occ.min(left) {
                    cur.push((syms[x], k));
                    go(syms, x + 1, left - k, max_occ, cur, out);
                    cur.pop();
                }
            }
        }
        go(&syms, 0, cutoff, max_occ, &mut cur, &mut out);
        out
    }

    /// Parses a state such as `vacuum`, `|0>`, `|a[1;0] as[2;-1] e[-1]>`
    /// or a combination `2*|a[1;-1]> - q*|0>`.
    pub fn parse_vector(&self, src: &str) -> Result<FockVector<T>> {
        if src.trim() == "vacuum" {
            return Ok(FockVector::vacuum());
        }
        self.eval_vector(&text::parse(src)?)
    }

    fn eval_vector(&self, e: &Expr) -> Result<FockVector<T>> {
        match &e.kind {
            ExprKind::Ket(items) => self.eval_ket(items),
            ExprKind::Ident(n) if n == "vacuum" => Ok(FockVector::vacuum()),
            ExprKind::Neg(a) => Ok(self.eval_vector(a)?.scale(&QScalar::from_int(-1))),
            ExprKind::Add(a, b) => Ok(self.eval_vector(a)?.add(&self.eval_vector(b)?)),
            ExprKind::Sub(a, b) => Ok(self.eval_vector(a)?.sub(&self.eval_vector(b)?)),
            ExprKind::Mul(a, b) => {
                if mentions_ket(b) && !mentions_ket(a) {
                    Ok(self.eval_vector(b)?.scale(&self.field.eval(a)?))
                } else if mentions_ket(a) && !mentions_ket(b) {
                    Ok(self.eval_vector(a)?.scale(&self.field.eval(b)?))
                } else {
                    Err(Error::syntax(e.pos, "expected scalar * state"))
                }
            }
            _ => Err(Error::syntax(e.pos, "expected a state such as |a[1;0]>")),
        }
    }

    fn eval_ket(&self, items: &[(Expr, u32)]) -> Result<FockVector<T>> {
        let mut v = FockVector::vacuum();
        let mut syms = Vec::new();
        for (item, count) in items {
            if matches!(item.kind, ExprKind::Int(ref s) if s == "0") && items.len() == 1 {
                return Ok(v);
            }
            let s = parse_sym(item)?;
            self.check_sym(&s)?;
            if !s.is_creation() {
                return Err(Error::InvalidSymbolForContext(format!("{s} is not a creation symbol")));
            }
            for _ in 0..*count {
                syms.push(s);
            }
        }
        // |s1 s2 ... sk> means s1 s2 ... sk |0>.
        for s in syms.iter().rev() {
            v = self.apply_gen(s, &v)?;
        }
        Ok(v)
    }
}

fn mentions_ket(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Ket(_) => true,
        ExprKind::Ident(n) => n == "vacuum",
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => mentions_ket(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            mentions_ket(a) || mentions_ket(b)
        }
        _ => false,
    }
}

/// `a[i;m]`, `as[i;m]` or `e[m]`.
pub fn parse_sym(e: &Expr) -> Result<Sym> {
    let ExprKind::Gen { name, groups } = &e.kind else {
        return Err(Error::syntax(e.pos, "expected a[i;m], as[i;m] or e[m]"));
    };
    let ints: Vec<Vec<i64>> =
        groups.iter().map(|g| g.iter().map(Expr::as_int).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let dims: Vec<usize> = ints.iter().map(Vec::len).collect();
    let species = |v: i64| u32::try_from(v).map_err(|_| Error::syntax(e.pos, "species must be positive"));
    match (name.as_str(), dims.as_slice()) {
        ("a", [1, 1]) => Ok(Sym::a(species(ints[0][0])?, ints[1][0])),
        ("as", [1, 1]) => Ok(Sym::a_star(species(ints[0][0])?, ints[1][0])),
        ("e", [1]) => Ok(Sym::e(ints[0][0])),
        _ => Err(Error::syntax(e.pos, format!("unknown field symbol '{name}'"))),
    }
}
