//! Exact coefficient arithmetic: rational functions in a formal `q`, or a
//! cyclotomic field when `q` is a root of unity, extended by `√2`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub mod cyclotomic;
pub mod format;
pub mod laurent;
pub mod ratfn;
pub mod scalar;

pub use cyclotomic::Cyclotomic;
pub use laurent::Laurent;
pub use ratfn::RatFn;
pub use scalar::{QField, QMode, QScalar};

/// Integer types usable as coefficient numerators and denominators.
pub trait Int:
    num_integer::Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: num_integer::Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub(crate) fn int<T: Int>(n: i64) -> T {
    T::from_i64(n).expect("every coefficient type holds an i64")
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type Recipe = (Vec<(i64, i64)>, Vec<(i64, i64)>, i64);

    fn scalar_strategy() -> impl Strategy<Value = Recipe> {
        (
            prop::collection::vec((-4i64..=4, -5i64..=5), 0..4),
            prop::collection::vec((0i64..=3, -5i64..=5), 0..3),
            -2i64..=2,
        )
    }

    fn numerator<T: Int>(f: &QField<T>, recipe: &Recipe) -> QScalar<T> {
        let mut num = QScalar::zero();
        for &(e, c) in &recipe.0 {
            num = num + f.q_pow(e).scale_int(c);
        }
        num
    }

    /// `num / den + r·√2` with an arbitrary polynomial denominator.
    fn build<T: Int>(f: &QField<T>, recipe: &Recipe) -> QScalar<T> {
        let mut den = f.q_pow(1) + f.int(3);
        for &(e, c) in &recipe.1 {
            den = den + f.q_pow(e).scale_int(c);
        }
        let num = numerator(f, recipe);
        let base = num.checked_div(&den).unwrap_or(num);
        base + f.sqrt2().scale_int(recipe.2)
    }

    /// Like [`build`], but dividing only by factors `q^x - 1`, the shape of
    /// every denominator the algebra itself produces.
    fn build_cyclotomic<T: Int>(f: &QField<T>, recipe: &Recipe) -> QScalar<T> {
        let mut v = numerator(f, recipe);
        for &(e, _) in &recipe.1 {
            if !f.in_lambda(e + 1) {
                v = v.checked_div(&(f.q_pow(e + 1) - f.one())).unwrap();
            }
        }
        v + f.sqrt2().scale_int(recipe.2)
    }

    fn modes() -> impl Strategy<Value = QMode> {
        prop_oneof![
            Just(QMode::Generic),
            (1u32..=12).prop_map(QMode::RootOfUnity),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(mode in modes(), a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
            let f = QField::<BigInt>::new(mode);
            let b_rad = f.sqrt2().scale_int(b.2);
            let (a, b, c) = (build(&f, &a), build(&f, &b), build(&f, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            let bb = &b - &b_rad;
            if !bb.is_zero() {
                let inv = bb.checked_inv().unwrap();
                prop_assert!((&bb * &inv).is_one());
            }
        }

        #[test]
        fn text_roundtrip(mode in modes(), a in scalar_strategy()) {
            let f = QField::<BigInt>::new(mode);
            let a = build(&f, &a);
            let shown = a.to_string();
            prop_assert_eq!(f.parse(&shown).unwrap(), a);
        }

        #[test]
        fn geometric_ratio_clears_denominator(mode in modes(), m in -6i64..=6, x in -5i64..=5) {
            let f = QField::<i64>::new(mode);
            prop_assume!(!f.in_lambda(x));
            let lhs = &f.geometric_ratio(m, x) * &(f.q_pow(x) - f.one());
            prop_assert_eq!(lhs, f.q_pow(m * x) - f.one());
        }

        #[test]
        fn machine_and_big_integers_agree(mode in modes(), a in scalar_strategy(), b in scalar_strategy()) {
            let f = QField::<i64>::new(mode);
            let g = QField::<BigInt>::new(mode);
            let (sa, sb) = (build_cyclotomic(&f, &a), build_cyclotomic(&f, &b));
            let (ba, bb) = (build_cyclotomic(&g, &a), build_cyclotomic(&g, &b));
            prop_assert_eq!((&sa * &sb).to_string(), (&ba * &bb).to_string());
            prop_assert_eq!((&sa + &sb).to_string(), (&ba + &bb).to_string());
        }
    }
}
