//! Structure constants: brackets of labeled generators written back in
//! terms of labeled generators and central elements.

use crate::error::Result;
use crate::scalars::{Int, QScalar};

use super::{Algebra, Combination, Kind, Label};

/// Accumulates a canonical combination.
struct Acc<'a, T: Int> {
    alg: &'a Algebra<T>,
    out: Combination<T>,
}

impl<T: Int> Acc<'_, T> {
    /// `sign · q^k · l`.
    fn put(&mut self, sign: i64, k: i64, l: Label) {
        let c = self.alg.field.q_pow(k).scale_int(sign);
        self.put_scaled(c, l);
    }

    fn put_scaled(&mut self, c: QScalar<T>, l: Label) {
        if let Some((l2, c2)) = self.alg.canonicalize(&l, &c) {
            self.out.add_term(l2, &c2);
        }
    }

    /// `c · (c(k) + c(-k))` when `k ∈ Λ(q)`.
    fn central_pair(&mut self, k: i64, c: QScalar<T>) {
        if self.alg.field.in_lambda(k) {
            self.out.add_term(Label::c(k), &c);
            self.out.add_term(Label::c(-k), &c);
        }
    }
}

/// Position in the dispatch order; brackets are written out for pairs in
/// ascending order and obtained by antisymmetry otherwise.
fn rank(k: Kind) -> u8 {
    match k {
        Kind::G => 0,
        Kind::F => 1,
        Kind::H => 2,
        Kind::E => 3,
        Kind::Es => 4,
        Kind::E0 => 5,
        Kind::C | Kind::Cy => 6,
    }
}

impl<T: Int> Algebra<T> {
    /// `[a, b]` from the closed-form structure constants, canonicalized.
    pub fn closed_bracket(&self, a: &Label, b: &Label) -> Result<Combination<T>> {
        self.check(a)?;
        self.check(b)?;
        if a.kind.is_central() || b.kind.is_central() {
            return Ok(Combination::zero());
        }
        if rank(a.kind) > rank(b.kind) {
            return Ok(self.ordered(b, a).neg());
        }
        Ok(self.ordered(a, b))
    }

    /// Bilinear extension of [`Algebra::closed_bracket`].
    pub fn closed_bracket_comb(&self, x: &Combination<T>, y: &Combination<T>) -> Result<Combination<T>> {
        let mut out = Combination::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out = out.add(&self.closed_bracket(a, b)?.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }

    fn ordered(&self, a: &Label, b: &Label) -> Combination<T> {
        use Kind::*;
        let rho = self.rho();
        let f = &self.field;
        let mut acc = Acc { alg: self, out: Combination::zero() };
        let (i, j, m, n) = (a.i, a.j, a.m, a.n);
        let (k, l, p, s) = (b.i, b.j, b.m, b.n);
        let mp = m + p;
        match (a.kind, b.kind) {
            (G, G) | (H, H) | (G, E) | (G, E0) | (F, E0) | (H, Es) | (H, E0) => {}
            (G, F) => {
                if i == l {
                    acc.put(-1, m * s, Label::g(k, j, mp, n + s));
                }
                if j == l {
                    acc.put(rho, (s - n) * m, Label::g(k, i, mp, s - n));
                }
            }
            (G, H) => {
                if i == k {
                    acc.put(-1, -n * mp, Label::f(j, l, mp, s - n));
                }
                if j == k {
                    acc.put(rho, n * p, Label::f(i, l, mp, n + s));
                }
                if i == l {
                    acc.put(rho, -(m * n + n * p + p * s), Label::f(j, k, mp, -(n + s)));
                }
                if j == l {
                    acc.put(-1, (n - s) * p, Label::f(i, k, mp, n - s));
                }
                if mp == 0 {
                    if j == k && i == l {
                        acc.central_pair(n + s, f.q_pow(n * p).scale_int(rho * m));
                    }
                    if i == k && j == l {
                        acc.central_pair(n - s, f.int(-m));
                    }
                }
            }
            (F, F) => {
                if j == k {
                    acc.put(1, n * p, Label::f(i, l, mp, n + s));
                }
                if i == l {
                    acc.put(-1, s * m, Label::f(k, j, mp, n + s));
                }
                if mp == 0 && j == k && i == l {
                    acc.central_pair(n + s, f.q_pow(n * p).scale_int(m));
                }
            }
            (F, H) => {
                if i == k {
                    acc.put(-1, -n * mp, Label::h(j, l, mp, s - n));
                }
                if i == l {
                    acc.put(-1, m * s, Label::h(k, j, mp, n + s));
                }
            }
            (G, Es) => {
                if i == k {
                    acc.put(-1, -n * mp, Label::e(j, mp, s - n));
                }
                if j == k {
                    acc.put(1, n * p, Label::e(i, mp, n + s));
                }
            }
            (F, E) => {
                if j == k {
                    acc.put(1, n * p, Label::e(i, mp, n + s));
                }
            }
            (F, Es) => {
                if i == k {
                    acc.put(-1, -n * mp, Label::es(j, mp, s - n));
                }
            }
            (H, E) => {
                if j == k {
                    acc.put(1, n * p, Label::es(i, mp, n + s));
                }
                if i == k {
                    acc.put(-1, -n * mp, Label::es(j, mp, s - n));
                }
            }
            (E, E) => acc.put(1, m * (s - n), Label::g(k, i, mp, s - n)),
            (Es, Es) => acc.put(1, m * (s - n), Label::h(k, i, mp, s - n)),
            (E, Es) => {
                if i == k {
                    acc.put(-1, -n * mp, Label::e0(mp, s - n));
                }
                acc.put(-1, p * (n - s), Label::f(i, k, mp, n - s));
                if i == k && mp == 0 {
                    acc.central_pair(n - s, f.int(-m));
                }
            }
            (E, E0) => {
                acc.put(1, n * p, Label::e(i, mp, n + s));
                acc.put(-1, p * (n - s), Label::e(i, mp, n - s));
            }
            (Es, E0) => {
                acc.put(1, n * p, Label::es(i, mp, n + s));
                acc.put(-1, p * (n - s), Label::es(i, mp, n - s));
            }
            (E0, E0) => {
                acc.put(1, n * p, Label::e0(mp, n + s));
                acc.put(-1, s * m, Label::e0(mp, n + s));
                acc.put(1, m * (s - n), Label::e0(mp, s - n));
                acc.put(-1, -n * mp, Label::e0(mp, s - n));
                if mp == 0 {
                    acc.central_pair(n + s, f.q_pow(n * p).scale_int(m));
                    acc.central_pair(n - s, f.int(-m));
                }
            }
            _ => unreachable!("pairs are dispatched in ascending order"),
        }
        acc.out
    }

    /// Canonical generator labels with species in `1..=N` and exponents in
    /// the given ranges, central elements excluded.
    pub fn canonical_labels(&self, ms: std::ops::RangeInclusive<i64>, ns: std::ops::RangeInclusive<i64>) -> Vec<Label> {
        let big = self.series.n;
        let mut out = Vec::new();
        for m in ms {
            for n in ns.clone() {
                for i in 1..=big {
                    for j in 1..=big {
                        out.push(Label::f(i, j, m, n));
                        out.push(Label::g(i, j, m, n));
                        out.push(Label::h(i, j, m, n));
                    }
                    if self.series.is_b() {
                        out.push(Label::e(i, m, n));
                        out.push(Label::es(i, m, n));
                    }
                }
                if self.series.is_b() {
                    out.push(Label::e0(m, n));
                }
            }
        }
        out.retain(|l| self.is_canonical(l));
        out.sort();
        out
    }

    /// Closed brackets of every unordered pair of canonical labels in range.
    pub fn structure_table(
        &self,
        ms: std::ops::RangeInclusive<i64>,
        ns: std::ops::RangeInclusive<i64>,
    ) -> Result<Vec<(Label, Label, Combination<T>)>> {
        let labels = self.canonical_labels(ms, ns);
        let mut rows = Vec::new();
        for (x, a) in labels.iter().enumerate() {
            for b in &labels[x..] {
                rows.push((*a, *b, self.closed_bracket(a, b)?));
            }
        }
        Ok(rows)
    }
}
