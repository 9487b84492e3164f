use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bcgraded::{weight_of, Algebra, Kind, Label};
use crate::error::Result;
use crate::glhat::{first_index, Cocycle, GlHatElement};
use crate::qtorus::TorusElement;
use crate::scalars::{QField, QScalar};

use super::{Interval, Mutation, Run, SuiteConfig, SuiteId};

type F = QField<i64>;
type S = QScalar<i64>;

/// `θ(k)`: 1 above zero, ½ at zero, 0 below.
fn theta(k: i64) -> S {
    match k.signum() {
        1 => S::one(),
        0 => S::frac(1, 2),
        _ => S::zero(),
    }
}

/// `Σ_t q^{-xt} (θ(-2t) - θ(-2m-2t))`, summed term by term over a window
/// that contains every nonzero summand.
fn theta_sum_brute(f: &F, m: i64, x: i64) -> S {
    let w = m.abs() + 2;
    let mut out = S::zero();
    for t in -w..=w {
        let d = theta(-2 * t) - theta(-2 * m - 2 * t);
        out += &(&f.q_pow(-x * t) * &d);
    }
    out
}

pub(super) fn theta_sum(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let f = F::new(cfg.qmode);
    for m in cfg.ranges.theta_m.iter() {
        for x in cfg.ranges.theta_x.iter() {
            let lhs = theta_sum_brute(&f, m, x);
            let rhs = f.half_theta_sum(m, x);
            run.check("theta-sum", || format!("m={m} x={x}"), &lhs, &rhs);
        }
    }
    Ok(())
}

fn coeff(rng: &mut ChaCha8Rng, f: &F) -> S {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    f.q_pow(rng.gen_range(-2..=2)).scale_int(c)
}

fn monomial(rng: &mut ChaCha8Rng, f: &F, r: Interval) -> TorusElement<i64> {
    let e = (rng.gen_range(r.iter()), rng.gen_range(r.iter()));
    TorusElement::monomial(e, coeff(rng, f))
}

pub(super) fn torus_axioms(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let f = F::new(cfg.qmode);
    let mut rng = cfg.rng();
    let r = cfg.ranges.exponents;
    let x = TorusElement::xy(1, 0);
    let y = TorusElement::xy(0, 1);
    run.check("yx = q xy", String::new, &y.mul(&x, &f), &x.mul(&y, &f).scale(&f.q()));
    for _ in 0..cfg.trials {
        let (a, b, c) = (monomial(&mut rng, &f, r), monomial(&mut rng, &f, r), monomial(&mut rng, &f, r));
        let params = || format!("a={a} b={b} c={c}");
        let lhs = a.mul(&b, &f).mul(&c, &f);
        let rhs = a.mul(&b.mul(&c, &f), &f);
        run.check("associativity", params, &lhs, &rhs);
        let lhs = a.mul(&b, &f).bar(&f);
        let rhs = b.bar(&f).mul(&a.bar(&f), &f);
        run.check("bar reverses products", params, &lhs, &rhs);
        run.check("bar is an involution", params, &a.bar(&f).bar(&f), &a);
        let lhs = a.add(&b).bar(&f);
        run.check("bar is additive", params, &lhs, &a.bar(&f).add(&b.bar(&f)));
        let comm = a.commutator(&b, &f);
        run.check("commutators are in [C_q, C_q]", params, &comm.in_commutator_subspace(&f), &true);
    }
    Ok(())
}

impl super::Checkable for bool {
    fn diff(&self, _: &Self) -> String {
        String::new()
    }
}

fn x_degree(t: &TorusElement<i64>) -> i64 {
    t.terms().next().map_or(0, |(e, _)| e.0)
}

fn unit(r: usize, i: i64, j: i64, t: TorusElement<i64>) -> GlHatElement<i64> {
    GlHatElement::unit(r, i, j, t).expect("indices drawn in range")
}

pub(super) fn jacobi(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let f = F::new(cfg.qmode);
    let mut rng = cfg.rng();
    let r = cfg.series.size();
    let lo = first_index(r);
    let hi = lo + r as i64 - 1;
    let ex = cfg.ranges.exponents;
    let cocycle = match cfg.mutation {
        Some(Mutation::FlipCentralSign) => Cocycle::FlipOffDiagonal,
        _ => Cocycle::Standard,
    };
    let br = |a: &GlHatElement<i64>, b: &GlHatElement<i64>| a.bracket_with(b, &f, cocycle);
    for _ in 0..cfg.trials {
        let (i, j, k) = (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
        let ta = monomial(&mut rng, &f, ex);
        let tb = monomial(&mut rng, &f, ex);
        let a = unit(r, i, j, ta.clone());
        // Half the triples close up into a cycle i -> j -> k -> i with total
        // x-degree zero, where the central terms live.
        let (b, c) = if rng.gen_bool(0.5) {
            let t = TorusElement::monomial((-x_degree(&ta) - x_degree(&tb), rng.gen_range(ex.iter())), coeff(&mut rng, &f));
            (unit(r, j, k, tb), unit(r, k, i, t))
        } else {
            let b = unit(r, rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), tb);
            (b, unit(r, rng.gen_range(lo..=hi), rng.gen_range(lo..=hi), monomial(&mut rng, &f, ex)))
        };
        let j1 = br(&br(&a, &b)?, &c)?;
        let j2 = br(&br(&b, &c)?, &a)?;
        let j3 = br(&br(&c, &a)?, &b)?;
        let sum = j1.add(&j2)?.add(&j3)?;
        run.check("jacobi", || format!("a={a} b={b} c={c}"), &sum, &GlHatElement::zero(r));
    }
    Ok(())
}

/// Every label of the given kind, canonical or not, with species in
/// `1..=N` and exponents in `r`.
fn labels_of_kind(kind: Kind, big: u32, r: Interval) -> Vec<Label> {
    let mut out = Vec::new();
    for m in r.iter() {
        for n in r.iter() {
            match kind {
                Kind::F | Kind::G | Kind::H => {
                    for i in 1..=big {
                        for j in 1..=big {
                            out.push(Label { kind, i, j, m, n });
                        }
                    }
                }
                Kind::E | Kind::Es => out.extend((1..=big).map(|i| Label { kind, i, j: 0, m, n })),
                Kind::E0 => out.push(Label::e0(m, n)),
                Kind::C | Kind::Cy => {}
            }
        }
    }
    out
}

/// Closed-form brackets against the bracket of the matrix realizations,
/// for every pair of kinds (each unordered pair once) over the full grid.
pub(super) fn closed_forms(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let f = F::new(cfg.qmode);
    let alg = Algebra::new(cfg.series, f.clone());
    let kinds: &[Kind] = if cfg.suite == SuiteId::Props12 {
        &[Kind::G, Kind::F, Kind::H, Kind::E, Kind::Es, Kind::E0]
    } else {
        &[Kind::G, Kind::F, Kind::H]
    };
    let groups: Vec<Vec<(Label, GlHatElement<i64>)>> = kinds
        .iter()
        .map(|&k| {
            labels_of_kind(k, cfg.series.n, cfg.ranges.exponents)
                .into_iter()
                .map(|l| alg.realize_label(&l).map(|x| (l, x)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (x, ga) in groups.iter().enumerate() {
        for gb in &groups[x..] {
            for (a, ra) in ga {
                for (b, rb) in gb {
                    let id = format!("[{}, {}]", a.kind.name(), b.kind.name());
                    let closed = alg.closed_bracket(a, b)?;
                    let lhs = alg.realize(&closed)?;
                    let rhs = ra.bracket(rb, &f)?;
                    run.check(&id, || format!("a={a} b={b} closed={closed}"), &lhs, &rhs);
                }
            }
        }
    }
    Ok(())
}

pub(super) fn grading(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let f = F::new(cfg.qmode);
    let alg = Algebra::new(cfg.series, f.clone());
    let r = cfg.ranges.exponents;
    for l in alg.canonical_labels(r.iter(), r.iter()) {
        let x = alg.realize_label(&l)?;
        let w = weight_of(&l, cfg.series.n);
        for i in 1..=cfg.series.n {
            let lhs = alg.cartan(i).bracket(&x, &f)?;
            let rhs = x.scale(&S::from_int(w.at(i)));
            run.check(&format!("[h_i, {}]", l.kind.name()), || format!("i={i} x={l}"), &lhs, &rhs);
        }
    }
    Ok(())
}
