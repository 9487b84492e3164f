//! Actions of field modes, normal-ordered pairs, quadratic operators and
//! the representation map on Fock vectors.

use num_rational::Ratio;
use smallvec::SmallVec;

use crate::bcgraded::{Combination, Kind, Label};
use crate::error::{Error, Result};
use crate::scalars::{Int, QScalar};

use super::{FockSpace, FockVector, State, Sym, SymKind};

/// How far past the minimal support the quadratic sums are taken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Window {
    pub extra: i64,
}

/// A coefficient of the form `r · λ^lam` with `r` rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Mono {
    r: Ratio<i64>,
    lam: bool,
}

impl Mono {
    fn int(v: i64) -> Self {
        Mono { r: Ratio::from_integer(v), lam: false }
    }

    fn mul(self, o: Mono) -> Mono {
        let mut r = self.r * o.r;
        if self.lam && o.lam {
            r /= 2;
        }
        Mono { r, lam: self.lam != o.lam }
    }
}

type Terms = SmallVec<[(Mono, State); 4]>;

impl<T: Int> FockSpace<T> {
    fn mono_scalar(&self, c: &QScalar<T>, qpow: i64, m: Mono) -> QScalar<T> {
        let r = Ratio::new(crate::scalars::int::<T>(*m.r.numer()), crate::scalars::int::<T>(*m.r.denom()));
        let mut x = self.field.mul_qpow(c, qpow).scale(&r);
        if m.lam {
            x = &x * &self.field.lambda();
        }
        x
    }

    /// `(-ρ)^k`: the sign picked up moving a mode past `k` others.
    fn pass_sign(&self, k: u32) -> i64 {
        if self.rho() == 1 && k % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// One mode acting on one basis state.
    fn gen_on_state(&self, g: &Sym, st: &State, out: &mut Terms) {
        let items = &st.0;
        if g.is_zero_mode_e() {
            let sign = if st.particles() % 2 == 1 { -1 } else { 1 };
            out.push((Mono { r: Ratio::from_integer(sign), lam: true }, st.clone()));
            return;
        }
        if g.is_creation() {
            match items.binary_search_by(|(x, _)| x.cmp(g)) {
                Ok(p) => {
                    if self.is_bosonic() {
                        let mut v = items.clone();
                        v[p].1 += 1;
                        out.push((Mono::int(1), State(v)));
                    }
                }
                Err(p) => {
                    let before: u32 = items[..p].iter().map(|(_, k)| k).sum();
                    let mut v = items.clone();
                    v.insert(p, (*g, 1));
                    out.push((Mono::int(self.pass_sign(before)), State(v)));
                }
            }
            return;
        }
        let partner = g.partner();
        let Ok(p) = items.binary_search_by(|(x, _)| x.cmp(&partner)) else {
            return;
        };
        // {g, partner}_ρ: ρ for a against a*, 1 for a* against a and e against e.
        let bracket = match g.kind {
            SymKind::A => self.rho(),
            SymKind::As | SymKind::E => 1,
        };
        let before: u32 = items[..p].iter().map(|(_, k)| k).sum();
        let k = items[p].1;
        let mut v = items.clone();
        if k == 1 {
            v.remove(p);
        } else {
            v[p].1 -= 1;
        }
        out.push((Mono::int(self.pass_sign(before) * bracket * k as i64), State(v)));
    }

    /// `x (y st)`.
    fn product_on_state(&self, x: &Sym, y: &Sym, st: &State, scale: Mono, out: &mut Terms) {
        let mut first = Terms::new();
        self.gen_on_state(y, st, &mut first);
        for (c1, s1) in first {
            let mut second = Terms::new();
            self.gen_on_state(x, &s1, &mut second);
            for (c2, s2) in second {
                out.push((scale.mul(c1).mul(c2), s2));
            }
        }
    }

    /// `:u w:` on a basis state, by the three-way split on modes.
    fn normal_pair_on_state(&self, u: &Sym, w: &Sym, st: &State, out: &mut Terms) {
        let rho = self.rho();
        if w.mode > u.mode {
            self.product_on_state(u, w, st, Mono::int(1), out);
        } else if w.mode < u.mode {
            self.product_on_state(w, u, st, Mono::int(-rho), out);
        } else {
            let half = Mono { r: Ratio::new(1, 2), lam: false };
            self.product_on_state(u, w, st, half, out);
            self.product_on_state(w, u, st, half.mul(Mono::int(-rho)), out);
        }
    }

    pub fn vacuum(&self) -> FockVector<T> {
        FockVector::vacuum()
    }

    pub fn apply_gen(&self, g: &Sym, v: &FockVector<T>) -> Result<FockVector<T>> {
        self.check_sym(g)?;
        let mut out = FockVector::zero();
        let mut buf = Terms::new();
        for (st, c) in v.terms() {
            buf.clear();
            self.gen_on_state(g, st, &mut buf);
            for (m, s) in buf.drain(..) {
                out.add_term(s, &self.mono_scalar(c, 0, m));
            }
        }
        Ok(out)
    }

    /// Applies `g_1 g_2 ... g_k` (rightmost first).
    pub fn apply_word(&self, word: &[Sym], v: &FockVector<T>) -> Result<FockVector<T>> {
        let mut out = v.clone();
        for g in word.iter().rev() {
            out = self.apply_gen(g, &out)?;
        }
        Ok(out)
    }

    pub fn apply_normal_pair(&self, u: &Sym, w: &Sym, v: &FockVector<T>) -> Result<FockVector<T>> {
        self.check_sym(u)?;
        self.check_sym(w)?;
        let mut out = FockVector::zero();
        let mut buf = Terms::new();
        for (st, c) in v.terms() {
            buf.clear();
            self.normal_pair_on_state(u, w, st, &mut buf);
            for (m, s) in buf.drain(..) {
                out.add_term(s, &self.mono_scalar(c, 0, m));
            }
        }
        Ok(out)
    }

    /// The two field modes making up the `s`-th summand of a quadratic
    /// operator: `Σ_s q^{-ns} :u(m-s) w(s):`.
    fn pair_at(&self, l: &Label, s: i64) -> (Sym, Sym) {
        let m = l.m;
        match l.kind {
            Kind::F => (Sym::a(l.i, m - s), Sym::a_star(l.j, s)),
            Kind::G => (Sym::a(l.i, m - s), Sym::a(l.j, s)),
            Kind::H => (Sym::a_star(l.i, m - s), Sym::a_star(l.j, s)),
            Kind::E => (Sym::a(l.i, m - s), Sym::e(s)),
            Kind::Es => (Sym::a_star(l.i, m - s), Sym::e(s)),
            Kind::E0 => (Sym::e(m - s), Sym::e(s)),
            Kind::C | Kind::Cy => unreachable!("central labels are not quadratic operators"),
        }
    }

    fn check_quadratic(&self, l: &Label) -> Result<()> {
        if l.kind.is_central() {
            return Err(Error::InvalidKindForSeries(format!("{l} is not a quadratic operator")));
        }
        self.series.check(l)
    }

    /// The unmodified quadratic operator of `l` applied to `v`.
    pub fn apply_quadratic(&self, l: &Label, v: &FockVector<T>) -> Result<FockVector<T>> {
        self.apply_quadratic_in(l, v, Window::default())
    }

    /// As [`FockSpace::apply_quadratic`], summing over
    /// `|s| <= D + |m| + 1 + extra` with `D` the largest occupied mode.
    /// Outside `|s| <= D + |m| + 1` every summand vanishes.
    pub fn apply_quadratic_in(&self, l: &Label, v: &FockVector<T>, w: Window) -> Result<FockVector<T>> {
        self.check_quadratic(l)?;
        let mut out = FockVector::zero();
        let mut buf = Terms::new();
        for (st, c) in v.terms() {
            let bound = st.max_mode() + l.m.abs() + 1 + w.extra;
            for s in -bound..=bound {
                let (x, y) = self.pair_at(l, s);
                buf.clear();
                self.normal_pair_on_state(&x, &y, st, &mut buf);
                for (m, s2) in buf.drain(..) {
                    out.add_term(s2, &self.mono_scalar(c, -l.n * s, m));
                }
            }
        }
        Ok(out)
    }

    /// The scalar by which the modified operator differs from the
    /// quadratic one: `F_ii(0,n) = f_ii(0,n) - ρ·½(q^n+1)/(q^n-1)` and
    /// `E_0(0,n) = e_0(0,n) - ½(q^n+1)/(q^n-1)` for `n ∉ Λ(q)`.
    pub fn modification(&self, l: &Label) -> Option<QScalar<T>> {
        let applies = match l.kind {
            Kind::F => l.i == l.j && l.m == 0,
            Kind::E0 => l.m == 0,
            _ => false,
        };
        if !applies {
            return None;
        }
        let corr = self.field.correction(l.n)?;
        Some(if l.kind == Kind::F { corr.scale_int(self.rho()) } else { corr })
    }

    pub fn apply_modified(&self, l: &Label, v: &FockVector<T>) -> Result<FockVector<T>> {
        self.apply_modified_in(l, v, Window::default())
    }

    pub fn apply_modified_in(&self, l: &Label, v: &FockVector<T>, w: Window) -> Result<FockVector<T>> {
        let mut out = self.apply_quadratic_in(l, v, w)?;
        if let Some(k) = self.modification(l) {
            out.add_scaled(v, &-k);
        }
        Ok(out)
    }

    /// The image of `c(n)`: `ρ/2` (which is `½` for series B).
    pub fn central_value(&self) -> QScalar<T> {
        QScalar::frac(self.rho(), 2)
    }

    /// `π(x) v`: generators act by their modified operators, `c(n)` by
    /// `ρ/2`, `c_y` by zero.
    pub fn pi_apply(&self, x: &Combination<T>, v: &FockVector<T>) -> Result<FockVector<T>> {
        let mut out = FockVector::zero();
        for (l, c) in x.terms() {
            self.series.check(l)?;
            match l.kind {
                Kind::C => {
                    if !self.field.in_lambda(l.n) {
                        return Err(Error::InvalidKindForSeries(format!("c[{}] requires {} in Λ(q)", l.n, l.n)));
                    }
                    out.add_scaled(v, &(c * &self.central_value()));
                }
                Kind::Cy => {}
                _ => out.add_scaled(&self.apply_modified(l, v)?, c),
            }
        }
        Ok(out)
    }
}
