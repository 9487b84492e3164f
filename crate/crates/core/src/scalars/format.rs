//! Text rendering of scalars: `[-][content*]P[/(D)]` with `P`, `D`
//! primitive integer polynomials in `q`.

use num_rational::Ratio;
use num_traits::{One, Signed};

use super::laurent::Laurent;
use super::ratfn::RatFn;
use super::scalar::QScalar;
use super::Int;

/// Splits `p = c · P` with `P` primitive over the integers and a positive
/// leading coefficient.
fn primitive<T: Int>(p: &Laurent<T>) -> (Ratio<T>, Vec<(i64, T)>) {
    let mut g = T::zero();
    let mut l = T::one();
    for (_, c) in p.terms() {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    let mut content = Ratio::new(g, l);
    if p.leading().is_some_and(|c| c.is_negative()) {
        content = -content;
    }
    let ints = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let v = c.clone() / content.clone();
            debug_assert!(v.is_integer());
            (*e, v.to_integer())
        })
        .collect();
    (content, ints)
}

fn poly_text<T: Int>(terms: &[(i64, T)]) -> String {
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if *e == 0 {
            out.push_str(&a.to_string());
            continue;
        }
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        if *e == 1 {
            out.push('q');
        } else {
            out.push_str(&format!("q^{e}"));
        }
    }
    out
}

fn coeff_text<T: Int>(a: &Ratio<T>) -> String {
    if a.is_integer() {
        a.to_integer().to_string()
    } else {
        format!("({}/{})", a.numer(), a.denom())
    }
}

pub fn ratfn<T: Int>(r: &RatFn<T>) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let (c, p) = primitive(r.num());
    let (content, den) = match r.den() {
        None => (c, None),
        Some(d) => {
            let (k, dp) = primitive(&d.expand());
            (c / k, Some(dp))
        }
    };
    let neg = content.is_negative();
    let a = content.abs();
    let sign = if neg { "-" } else { "" };
    let single = p.len() == 1 && p[0].1.is_one();
    let mut out = String::from(sign);
    match den {
        None if single && p[0].0 == 0 => {
            if a.is_integer() {
                out.push_str(&a.to_integer().to_string());
            } else {
                out.push_str(&format!("{}/{}", a.numer(), a.denom()));
            }
        }
        None if single => {
            if !a.is_one() {
                out.push_str(&coeff_text(&a));
                out.push('*');
            }
            out.push_str(&poly_text(&p));
        }
        None => {
            if a.is_one() {
                if neg {
                    out.push_str(&format!("({})", poly_text(&p)));
                } else {
                    out.push_str(&poly_text(&p));
                }
            } else {
                out.push_str(&format!("{}*({})", coeff_text(&a), poly_text(&p)));
            }
        }
        Some(d) => {
            if !a.is_one() {
                out.push_str(&coeff_text(&a));
                out.push('*');
            }
            if single || p.len() == 1 {
                out.push_str(&poly_text(&p));
            } else {
                out.push_str(&format!("({})", poly_text(&p)));
            }
            out.push_str(&format!("/({})", poly_text(&d)));
        }
    }
    out
}

pub fn scalar<T: Int>(s: &QScalar<T>) -> String {
    let base = s.base();
    if !s.has_rad2() {
        return ratfn(base);
    }
    let r = s.rad2();
    let rad = match r.as_constant() {
        Some(c) if c.is_one() => "r2".to_string(),
        Some(c) if c == -Ratio::<T>::one() => "-r2".to_string(),
        Some(c) => {
            let sign = if c.is_negative() { "-" } else { "" };
            format!("{sign}{}*r2", coeff_text(&c.abs()))
        }
        None => format!("({})*r2", ratfn(&r)),
    };
    if base.is_zero() {
        return rad;
    }
    match rad.strip_prefix('-') {
        Some(rest) => format!("{} - {rest}", ratfn(base)),
        None => format!("{} + {rad}", ratfn(base)),
    }
}

/// Renders `coeff * atom` as a signed term: `(negative, magnitude)`.
///
/// Rational coefficients print bare (`3*atom`, `(1/2)*atom`, or just `atom`);
/// anything else is parenthesized. An empty `atom` stands for the unit.
pub fn term<T: Int>(coeff: &QScalar<T>, atom: &str) -> (bool, String) {
    let join = |c: String| -> String {
        if atom.is_empty() {
            c
        } else {
            format!("{c}*{atom}")
        }
    };
    if let Some(c) = coeff.as_ratio() {
        let neg = c.is_negative();
        let a = c.abs();
        if a.is_one() {
            return (neg, if atom.is_empty() { "1".into() } else { atom.to_string() });
        }
        if atom.is_empty() {
            let t = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            return (neg, t);
        }
        return (neg, join(coeff_text(&a)));
    }
    let text = scalar(coeff);
    let (neg, body) = match text.strip_prefix('-') {
        Some(_) => {
            let flipped = scalar(&-coeff);
            if flipped.starts_with('-') {
                (false, text)
            } else {
                (true, flipped)
            }
        }
        None => (false, text),
    };
    let b = body.as_bytes();
    let simple = b.iter().enumerate().all(|(i, &c)| {
        c.is_ascii_alphanumeric() || c == b'^' || c == b'*' || (c == b'-' && i > 0 && b[i - 1] == b'^')
    });
    if simple {
        (neg, join(body))
    } else {
        (neg, join(format!("({body})")))
    }
}

/// Joins signed terms as `a + b - c`; the empty sum prints as `0`.
pub fn join_terms<I: IntoIterator<Item = (bool, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (k, (neg, t)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::scalars::QField;

    fn roundtrip(f: &QField<i64>, src: &str, expect: &str) {
        let v = f.parse(src).unwrap();
        let shown = v.to_string();
        assert_eq!(shown, expect, "printing {src}");
        assert_eq!(f.parse(&shown).unwrap(), v, "reparsing {shown}");
    }

    #[test]
    fn canonical_printing() {
        let f = QField::generic();
        roundtrip(&f, "q + 1", "q+1");
        roundtrip(&f, "-(q+1)/(2*q-2)", "-(1/2)*(q+1)/(q-1)");
        roundtrip(&f, "(q^2+1)/(q-1) + 3*r2", "(q^2+1)/(q-1) + 3*r2");
        roundtrip(&f, "r2/2", "(1/2)*r2");
        roundtrip(&f, "-r2", "-r2");
        roundtrip(&f, "(q+1)^2/2", "(1/2)*(q^2+2*q+1)");
        roundtrip(&f, "q^-6", "q^-6");
        roundtrip(&f, "-3/4", "-3/4");
        roundtrip(&f, "1/(q^2-q)", "q^-1/(q-1)");
        roundtrip(&f, "-q-1", "-(q+1)");
        roundtrip(&f, "2 - q*r2", "2 + (-q)*r2");
        roundtrip(&f, "0*q", "0");
    }

    #[test]
    fn root_mode_printing() {
        let f = QField::root(3);
        roundtrip(&f, "q^2", "-(q+1)");
        roundtrip(&f, "q^3", "1");
    }
}
