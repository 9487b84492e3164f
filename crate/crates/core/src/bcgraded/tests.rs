use super::*;
use crate::glhat::GlHatElement;
use crate::scalars::QMode;
use crate::qtorus::TorusElement;

type A = Algebra<i64>;

fn alg(s: Series) -> A {
    Algebra::new(s, QField::generic())
}

/// Every label of every kind with species in `1..=N` and exponents in
/// `-1..=1`, canonical or not.
fn all_labels(a: &A) -> Vec<Label> {
    let big = a.series().n;
    let mut out = Vec::new();
    for m in -1..=1 {
        for n in -1..=1 {
            for i in 1..=big {
                for j in 1..=big {
                    out.extend([Label::f(i, j, m, n), Label::g(i, j, m, n), Label::h(i, j, m, n)]);
                }
                if a.series().is_b() {
                    out.extend([Label::e(i, m, n), Label::es(i, m, n)]);
                }
            }
            if a.series().is_b() {
                out.push(Label::e0(m, n));
            }
        }
    }
    out
}

#[test]
fn star_on_units() {
    let a = alg(Series::d(1));
    let e12 = GlHatElement::unit(2, 1, 2, TorusElement::one()).unwrap();
    assert_eq!(a.star(&e12).unwrap(), e12);
    let x = GlHatElement::unit(2, 1, 2, TorusElement::xy(1, 0)).unwrap();
    assert!(!a.is_member(&x).unwrap());
    assert!(a.is_member(&a.cartan(1)).unwrap());
}

#[test]
fn generators_are_skew_and_star_is_involutive() {
    for s in [Series::b(2), Series::c(2), Series::d(2)] {
        for f in [QField::generic(), QField::root(3)] {
            let a = Algebra::new(s, f);
            for l in all_labels(&a) {
                let x = a.realize_label(&l).unwrap();
                assert_eq!(a.star(&x).unwrap(), x.scale(&QScalar::from_int(-1)), "{s} {l}");
                assert_eq!(a.star(&a.star(&x).unwrap()).unwrap(), x);
            }
        }
    }
}

#[test]
fn realize_examples() {
    let d = alg(Series::d(2));
    assert!(d.realize_label(&Label::g(1, 1, 0, 0)).unwrap().is_zero());
    let f12 = d.realize_label(&Label::f(1, 2, 1, 1)).unwrap();
    assert_eq!(f12.entry(1, 2), TorusElement::xy(1, 1));
    assert_eq!(f12.entry(4, 3).to_string(), "-q^-1*x*y^-1");
    let b = alg(Series::b(1));
    assert!(b.realize_label(&Label::e0(0, 0)).unwrap().is_zero());
    assert!(matches!(d.realize_label(&Label::e(1, 0, 0)), Err(Error::InvalidKindForSeries(_))));
    let t = d.realize_label(&Label::f(1, 1, 1, 1)).unwrap().trace();
    assert_eq!(t.to_string(), "x*y - q^-1*x*y^-1");
}

#[test]
fn canonicalize_respects_realization() {
    for s in [Series::b(2), Series::c(2), Series::d(2)] {
        for f in [QField::generic(), QField::root(4)] {
            let a = Algebra::new(s, f);
            for l in all_labels(&a) {
                let raw = Combination::gen(l);
                let canon = a.canonical(&raw);
                assert_eq!(a.realize(&canon).unwrap(), a.realize(&raw).unwrap(), "{s} {l}");
                for (l2, _) in canon.terms() {
                    assert!(a.is_canonical(l2));
                }
            }
        }
    }
}

#[test]
fn canonical_examples() {
    let d = alg(Series::d(2));
    let c = d.canonical(&Combination::gen(Label::g(2, 1, 1, 2)));
    assert_eq!(c.to_string(), "-q^-2*g[1,2;1,-2]");
    let cc = alg(Series::c(2)).canonical(&Combination::gen(Label::g(2, 1, 1, 2)));
    assert_eq!(cc.to_string(), "q^-2*g[1,2;1,-2]");
    assert!(d.canonical(&Combination::gen(Label::g(1, 1, 3, 0))).is_zero());
    assert!(!alg(Series::c(2)).canonical(&Combination::gen(Label::g(1, 1, 3, 0))).is_zero());
    assert!(alg(Series::b(1)).canonical(&Combination::gen(Label::e0(2, 0))).is_zero());
}

#[test]
fn weights() {
    assert_eq!(weight_of(&Label::f(1, 2, 0, 0), 3), Weight(vec![1, -1, 0]));
    assert_eq!(weight_of(&Label::g(1, 1, 0, 0), 3), Weight(vec![2, 0, 0]));
    assert_eq!(weight_of(&Label::es(2, 0, 0), 3), Weight(vec![0, -1, 0]));
    assert_eq!(weight_of(&Label::f(2, 2, 0, 0), 2), Weight(vec![0, 0]));
}

#[test]
fn grading() {
    for s in [Series::b(2), Series::c(2), Series::d(2)] {
        let a = alg(s);
        for l in all_labels(&a) {
            let x = a.realize_label(&l).unwrap();
            for i in 1..=s.n {
                let lhs = a.cartan(i).bracket(&x, a.field()).unwrap();
                let w = weight_of(&l, s.n).at(i);
                assert_eq!(lhs, x.scale(&QScalar::from_int(w)), "{s} h{i} {l}");
            }
        }
    }
}

#[test]
fn closed_bracket_examples() {
    let d = alg(Series::d(2));
    let out = d.closed_bracket(&Label::f(1, 2, 1, 0), &Label::f(2, 1, -1, 0)).unwrap();
    assert_eq!(out.to_string(), "f[1,1;0,0] - f[2,2;0,0] + 2*c[0]");
    assert!(d.closed_bracket(&Label::g(1, 2, 1, 1), &Label::g(2, 2, 0, 1)).unwrap().is_zero());
    let b = alg(Series::b(1));
    let out = b.closed_bracket(&Label::e(1, 0, 0), &Label::es(1, 0, 0)).unwrap();
    assert_eq!(out.to_string(), "-f[1,1;0,0]");
}

fn cross_check(a: &A) {
    let labels = all_labels(a);
    for x in &labels {
        let rx = a.realize_label(x).unwrap();
        for y in &labels {
            let closed = a.closed_bracket(x, y).unwrap();
            let direct = rx.bracket(&a.realize_label(y).unwrap(), a.field()).unwrap();
            assert_eq!(
                a.realize(&closed).unwrap(),
                direct,
                "{} [{x}, {y}]: closed {closed} vs direct {direct}",
                a.series()
            );
        }
    }
}

#[test]
fn closed_brackets_match_matrices() {
    for s in [Series::b(2), Series::c(2), Series::d(2)] {
        for mode in [QMode::Generic, QMode::RootOfUnity(1), QMode::RootOfUnity(2)] {
            cross_check(&Algebra::new(s, QField::new(mode)));
        }
    }
}

#[test]
fn generator_text() {
    let d = alg(Series::d(2));
    let x = d.parse_raw("((q^2-1)/(q+1))*g[1,1;0,2] - cy").unwrap();
    assert_eq!(x.len(), 2);
    assert_eq!(x.to_string(), "(q-1)*g[1,1;0,2] - cy");
    assert_eq!(d.parse("g[2,1;1,2]").unwrap().to_string(), "-q^-2*g[1,2;1,-2]");
    let f = d.parse("f[1,2;3,-1]").unwrap();
    assert_eq!(f.coeff(&Label::f(1, 2, 3, -1)), QScalar::one());
    assert!(d.parse("e0[1,1]").is_err());
    assert!(d.parse("c[3]").is_err());
    assert!(d.parse("f[1,3;0,0]").is_err());
    assert!(matches!(d.parse("f[1,2;0"), Err(Error::Syntax { .. })));
    let b = alg(Series::b(2));
    let y = b.parse("es[1;0,1] + 2*e0[1,-1] - (1/2)*c[0]").unwrap();
    assert_eq!(b.parse(&y.to_string()).unwrap(), y);
}
