use super::*;
use crate::bcgraded::Algebra;
use crate::scalars::QField;

fn cfg(suite: SuiteId, series: Series) -> SuiteConfig {
    let mut c = SuiteConfig::new(suite, series, QMode::Generic);
    c.trials = 5;
    c.cutoff = 2;
    c.ranges.exponents = Interval::new(-1, 1);
    c
}

#[test]
fn suite_names_round_trip() {
    for id in SuiteId::ALL {
        assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
    }
    assert!(matches!("lemma-9.9".parse::<SuiteId>(), Err(Error::InvalidConfig(_))));
}

#[test]
fn config_validation() {
    assert!(run_suite(&cfg(SuiteId::Props12, Series::d(2))).is_err());
    assert!(run_suite(&cfg(SuiteId::Theorem21, Series::b(2))).is_err());
    let mut c = cfg(SuiteId::ThetaSum, Series::d(2));
    c.trials = 0;
    assert!(run_suite(&c).is_err());
    let mut c = cfg(SuiteId::Grading, Series::d(2));
    c.mutation = Some(Mutation::FlipCentralSign);
    assert!(run_suite(&c).is_err());
}

#[test]
fn small_runs_pass() {
    let runs = [
        (SuiteId::ThetaSum, Series::d(2)),
        (SuiteId::TorusAxioms, Series::d(2)),
        (SuiteId::Jacobi, Series::b(2)),
        (SuiteId::Props11, Series::c(1)),
        (SuiteId::Props12, Series::b(1)),
        (SuiteId::Grading, Series::b(3)),
        (SuiteId::Lemma21, Series::c(2)),
        (SuiteId::Lemma22, Series::d(2)),
        (SuiteId::Lemma23, Series::b(2)),
        (SuiteId::Props2x, Series::b(1)),
        (SuiteId::Theorem21, Series::c(1)),
        (SuiteId::Theorem22, Series::b(1)),
    ];
    for (id, s) in runs {
        let r = run_suite(&cfg(id, s)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checked > 0, "{id}");
    }
}

#[test]
fn reports_are_deterministic() {
    let c = cfg(SuiteId::Props2x, Series::d(2));
    let a = run_suite(&c).unwrap();
    let b = run_suite(&c).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    let json = a.to_json();
    for key in ["suite", "series", "qmode", "n", "cutoff", "checked", "failures", "elapsed_ms"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn mutations_are_detected() {
    let mut c = cfg(SuiteId::Jacobi, Series::d(2));
    c.trials = 200;
    c.mutation = Some(Mutation::FlipCentralSign);
    let r = run_suite(&c).unwrap();
    assert!(!r.passed());
    assert!(!r.failures[0].diff.is_empty());

    let mut c = cfg(SuiteId::Theorem21, Series::d(1));
    c.trials = 40;
    c.mutation = Some(Mutation::DropCorrection);
    assert!(!run_suite(&c).unwrap().passed());
}

#[test]
fn scalar_terms_are_antisymmetric() {
    let f = QField::<i64>::generic();
    for rho in [1, -1] {
        for m in -2..=2 {
            for (n, s) in [(0, 1), (1, 1), (-2, 1), (2, 0)] {
                let pairs = [
                    (Label::g(1, 2, m, n), Label::h(2, 1, -m, s)),
                    (Label::f(1, 2, m, n), Label::f(2, 1, -m, s)),
                    (Label::e(1, m, n), Label::es(1, -m, s)),
                    (Label::e0(m, n), Label::e0(-m, s)),
                ];
                for (x, y) in pairs {
                    assert_eq!(prop_scalar(&f, rho, &x, &y), -prop_scalar(&f, rho, &y, &x), "{x} {y}");
                }
            }
        }
    }
}

#[test]
fn table_rendering() {
    let alg = Algebra::new(Series::d(2), QField::<i64>::generic());
    let rows = alg.structure_table(0..=0, 0..=0).unwrap();
    let text = render_table(&rows);
    assert!(text.contains("[f[1,2;0,0], f[2,1;0,0]] = f[1,1;0,0] - f[2,2;0,0]"), "{text}");
    let hh: Vec<&str> = text.lines().filter(|l| l.starts_with("[h") && l.contains(", h[")).collect();
    assert!(!hh.is_empty());
    for line in hh {
        assert!(line.ends_with("= 0"), "{line}");
    }
}
