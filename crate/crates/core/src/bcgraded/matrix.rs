//! Matrix realizations inside `gl_r(C_q)` and the `*` involution.

use crate::error::{Error, Result};
use crate::glhat::GlHatElement;
use crate::qtorus::{monomial_bar, TorusElement};
use crate::scalars::{Int, QScalar};

use super::{Algebra, Combination, Kind, Label};

impl<T: Int> Algebra<T> {
    fn mono(&self, m: i64, n: i64, sign: i64) -> TorusElement<T> {
        TorusElement::monomial((m, n), QScalar::from_int(sign))
    }

    /// `sign · bar(x^m y^n)`.
    fn bar_mono(&self, m: i64, n: i64, sign: i64) -> TorusElement<T> {
        let (k, e) = monomial_bar((m, n));
        TorusElement::monomial(e, self.field.q_pow(k).scale_int(sign))
    }

    /// The explicit matrix of one labeled generator.
    pub fn realize_label(&self, l: &Label) -> Result<GlHatElement<T>> {
        self.check(l)?;
        let r = self.series.size();
        let big = self.series.n as i64;
        let rho = self.rho();
        let (i, j, m, n) = (l.i as i64, l.j as i64, l.m, l.n);
        let mut out = GlHatElement::zero(r);
        let mut put = |a: i64, b: i64, t: TorusElement<T>| out.add_entry(a, b, &t);
        match l.kind {
            Kind::F => {
                put(i, j, self.mono(m, n, 1));
                put(big + j, big + i, self.bar_mono(m, n, -1));
            }
            Kind::G => {
                put(i, big + j, self.mono(m, n, 1));
                put(j, big + i, self.bar_mono(m, n, -rho));
            }
            Kind::H => {
                put(big + i, j, self.mono(m, n, rho));
                put(big + j, i, self.bar_mono(m, n, -1));
            }
            Kind::E => {
                put(i, 0, self.mono(m, n, 1));
                put(0, big + i, self.bar_mono(m, n, -1));
            }
            Kind::Es => {
                put(big + i, 0, self.mono(m, n, 1));
                put(0, i, self.bar_mono(m, n, -1));
            }
            Kind::E0 => {
                put(0, 0, self.mono(m, n, 1));
                put(0, 0, self.bar_mono(m, n, -1));
            }
            Kind::C => return GlHatElement::central(r, n, QScalar::one(), &self.field),
            Kind::Cy => return Ok(GlHatElement::central_y(r, QScalar::one())),
        }
        Ok(out)
    }

    pub fn realize(&self, x: &Combination<T>) -> Result<GlHatElement<T>> {
        let mut out = GlHatElement::zero(self.series.size());
        for (l, c) in x.terms() {
            out = out.add(&self.realize_label(l)?.scale(c))?;
        }
        Ok(out)
    }

    /// `h_i = e_ii - e_{N+i,N+i}`.
    pub fn cartan(&self, i: u32) -> GlHatElement<T> {
        let big = self.series.n as i64;
        let mut out = GlHatElement::zero(self.series.size());
        out.add_entry(i as i64, i as i64, &TorusElement::one());
        out.add_entry(big + i as i64, big + i as i64, &TorusElement::one().neg());
        out
    }

    /// The partner index under `G` and the sign of the corresponding entry
    /// `G_{partner(b), b}`; `G^{-1}` uses the sign at the row instead.
    fn partner(&self, a: i64) -> (i64, i64) {
        let big = self.series.n as i64;
        if self.series.is_b() && a == 0 {
            (0, 1)
        } else if a <= big {
            (a + big, self.rho())
        } else {
            (a - big, 1)
        }
    }

    /// `A^* = G^{-1} bar(A)^t G` on the matrix part.
    pub fn star(&self, a: &GlHatElement<T>) -> Result<GlHatElement<T>> {
        if a.size() != self.series.size() {
            return Err(Error::SizeMismatch(a.size(), self.series.size()));
        }
        let mut out = GlHatElement::zero(a.size());
        for (&(i, j), t) in a.entries() {
            // A_{ij} lands at (partner(j), partner(i)), weighted by
            // G^{-1}_{row, i} G_{j, col}.
            let (row, _) = self.partner(j);
            let (col, _) = self.partner(i);
            let ginv = self.inverse_sign(row);
            let (_, gsign) = self.partner(col);
            out.add_entry(row, col, &t.bar(&self.field).scale(&QScalar::from_int(ginv * gsign)));
        }
        Ok(out)
    }

    /// Sign of `G^{-1}_{a, partner(a)}`.
    fn inverse_sign(&self, a: i64) -> i64 {
        let big = self.series.n as i64;
        if self.series.is_b() && a == 0 {
            1
        } else if a <= big {
            self.rho()
        } else {
            1
        }
    }

    /// Whether `A^* = -A` and `tr A` lies in `[C_q, C_q]`. Central
    /// coordinates are unconstrained.
    pub fn is_member(&self, a: &GlHatElement<T>) -> Result<bool> {
        let s = self.star(a)?;
        let skew = s.add(&a.matrix_part())?.is_zero();
        Ok(skew && a.trace().in_commutator_subspace(&self.field))
    }
}
