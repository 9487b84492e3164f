use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bcgraded::{Algebra, Combination, Kind, Label};
use crate::error::Result;
use crate::fock::{FockSpace, FockVector, State, Sym};
use crate::scalars::{Int, QField, QScalar};

use super::{Mutation, Run, SuiteConfig};

type F = QField<i64>;
type S = QScalar<i64>;
type V = FockVector<i64>;
type Word = Vec<Sym>;

/// `[op, w_1 ... w_k] = Σ c · word`, an identity between operators on the
/// Fock module.
struct ModeIdentity {
    id: &'static str,
    op: Label,
    word: Word,
    rhs: Vec<(S, Word)>,
}

struct Builder<'a> {
    f: &'a F,
    rhs: Vec<(S, Word)>,
}

impl Builder<'_> {
    /// Adds `sign · q^e · word` when `on`.
    fn add(&mut self, on: bool, sign: i64, e: i64, word: Word) -> &mut Self {
        if on {
            self.rhs.push((self.f.q_pow(e).scale_int(sign), word));
        }
        self
    }

    fn take(&mut self) -> Vec<(S, Word)> {
        std::mem::take(&mut self.rhs)
    }
}

#[derive(Clone, Copy, Debug)]
struct Params {
    i: u32,
    j: u32,
    k: u32,
    l: u32,
    m: i64,
    n: i64,
    p: i64,
    s: i64,
}

impl Params {
    fn draw(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Self {
        let big = cfg.series.n;
        let r = cfg.ranges.exponents;
        let mut e = || rng.gen_range(r.iter());
        let (m, n, p, s) = (e(), e(), e(), e());
        let mut idx = || rng.gen_range(1..=big);
        let (i, j, k, l) = (idx(), idx(), idx(), idx());
        Params { i, j, k, l, m, n, p, s }
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let Params { i, j, k, l, m, n, p, s } = self;
        write!(f, "i={i} j={j} k={k} l={l} m={m} n={n} p={p} s={s}")
    }
}

fn a(i: u32, m: i64) -> Sym {
    Sym::a(i, m)
}

fn a_s(i: u32, m: i64) -> Sym {
    Sym::a_star(i, m)
}

fn e(m: i64) -> Sym {
    Sym::e(m)
}

/// Commutators of `f`, `g`, `h` with one or two field modes.
fn lemma_22_identities(f: &F, rho: i64, x: Params) -> Vec<ModeIdentity> {
    let Params { i, j, k, l, m, n, p, s } = x;
    let mut b = Builder { f, rhs: Vec::new() };
    let (g, fl, h) = (Label::g(i, j, m, n), Label::f(i, j, m, n), Label::h(i, j, m, n));
    let mut out = Vec::new();
    let mut push = |id, op, word, rhs| out.push(ModeIdentity { id, op, word, rhs });

    push("[g_ij, a_k]", g, vec![a(k, p)], Vec::new());
    b.add(i == k, -1, -n * (m + p), vec![a(j, m + p)]).add(j == k, rho, n * p, vec![a(i, m + p)]);
    push("[g_ij, a*_k]", g, vec![a_s(k, p)], b.take());
    push("[g_ij, a_k a_l]", g, vec![a(k, p), a(l, s)], Vec::new());
    b.add(i == l, -1, -n * (m + s), vec![a(k, p), a(j, m + s)]);
    b.add(j == l, rho, n * s, vec![a(k, p), a(i, m + s)]);
    push("[g_ij, a_k a*_l]", g, vec![a(k, p), a_s(l, s)], b.take());
    b.add(i == k, -1, -n * (m + p), vec![a(j, m + p), a_s(l, s)]);
    b.add(j == k, rho, n * p, vec![a(i, m + p), a_s(l, s)]);
    b.add(i == l, -1, -n * (m + s), vec![a_s(k, p), a(j, m + s)]);
    b.add(j == l, rho, n * s, vec![a_s(k, p), a(i, m + s)]);
    push("[g_ij, a*_k a*_l]", g, vec![a_s(k, p), a_s(l, s)], b.take());

    b.add(j == k, 1, n * p, vec![a(i, m + p)]);
    push("[f_ij, a_k]", fl, vec![a(k, p)], b.take());
    b.add(i == k, -1, -n * (m + p), vec![a_s(j, m + p)]);
    push("[f_ij, a*_k]", fl, vec![a_s(k, p)], b.take());
    b.add(j == k, 1, n * p, vec![a(i, m + p), a_s(l, s)]);
    b.add(i == l, -1, -n * (m + s), vec![a(k, p), a_s(j, m + s)]);
    push("[f_ij, a_k a*_l]", fl, vec![a(k, p), a_s(l, s)], b.take());
    b.add(i == k, -1, -n * (m + p), vec![a_s(j, m + p), a_s(l, s)]);
    b.add(i == l, -1, -n * (m + s), vec![a_s(k, p), a_s(j, m + s)]);
    push("[f_ij, a*_k a*_l]", fl, vec![a_s(k, p), a_s(l, s)], b.take());

    push("[h_ij, a*_k]", h, vec![a_s(k, p)], Vec::new());
    push("[h_ij, a*_k a*_l]", h, vec![a_s(k, p), a_s(l, s)], Vec::new());
    out
}

/// Commutators involving the `e` field, with `ρ = 1`.
fn lemma_23_identities(f: &F, x: Params) -> Vec<ModeIdentity> {
    let Params { i, j, k, m, n, p, s, .. } = x;
    let mut b = Builder { f, rhs: Vec::new() };
    let (g, fl, h) = (Label::g(i, j, m, n), Label::f(i, j, m, n), Label::h(i, j, m, n));
    let (ei, esi, e0) = (Label::e(i, m, n), Label::es(i, m, n), Label::e0(m, n));
    let mut out = Vec::new();
    let mut push = |id, op, word, rhs| out.push(ModeIdentity { id, op, word, rhs });

    push("[g_ij, a_k e]", g, vec![a(k, p), e(s)], Vec::new());
    push("[g_ij, e e]", g, vec![e(p), e(s)], Vec::new());
    b.add(i == k, -1, -n * (m + p), vec![a(j, m + p), e(s)]).add(j == k, 1, n * p, vec![a(i, m + p), e(s)]);
    push("[g_ij, a*_k e]", g, vec![a_s(k, p), e(s)], b.take());

    b.add(j == k, 1, n * p, vec![a(i, m + p), e(s)]);
    push("[f_ij, a_k e]", fl, vec![a(k, p), e(s)], b.take());
    b.add(i == k, -1, -n * (m + p), vec![a_s(j, m + p), e(s)]);
    push("[f_ij, a*_k e]", fl, vec![a_s(k, p), e(s)], b.take());
    push("[f_ij, e e]", fl, vec![e(p), e(s)], Vec::new());

    b.add(j == k, 1, n * p, vec![a_s(i, m + p), e(s)]);
    b.add(i == k, -1, -n * (m + p), vec![a_s(j, m + p), e(s)]);
    push("[h_ij, a_k e]", h, vec![a(k, p), e(s)], b.take());
    push("[h_ij, a*_k e]", h, vec![a_s(k, p), e(s)], Vec::new());
    push("[h_ij, e e]", h, vec![e(p), e(s)], Vec::new());

    push("[e_i, a_k]", ei, vec![a(k, p)], Vec::new());
    b.add(i == k, -1, -n * (m + p), vec![e(m + p)]);
    push("[e_i, a*_k]", ei, vec![a_s(k, p)], b.take());
    b.add(true, 1, n * p, vec![a(i, m + p)]);
    push("[e_i, e]", ei, vec![e(p)], b.take());
    b.add(true, 1, n * s, vec![a(k, p), a(i, m + s)]);
    push("[e_i, a_k e]", ei, vec![a(k, p), e(s)], b.take());
    b.add(i == k, -1, -n * (m + p), vec![e(m + p), e(s)]);
    b.add(true, 1, n * s, vec![a_s(k, p), a(i, m + s)]);
    push("[e_i, a*_k e]", ei, vec![a_s(k, p), e(s)], b.take());
    b.add(true, 1, n * p, vec![a(i, m + p), e(s)]);
    b.add(true, 1, n * s, vec![e(p), a(i, m + s)]);
    push("[e_i, e e]", ei, vec![e(p), e(s)], b.take());

    push("[e*_i, a*_k]", esi, vec![a_s(k, p)], Vec::new());
    b.add(true, 1, n * p, vec![a_s(i, m + p)]);
    push("[e*_i, e]", esi, vec![e(p)], b.take());
    b.add(true, 1, n * s, vec![a_s(k, p), a_s(i, m + s)]);
    push("[e*_i, a*_k e]", esi, vec![a_s(k, p), e(s)], b.take());
    b.add(true, 1, n * p, vec![a_s(i, m + p), e(s)]);
    b.add(true, 1, n * s, vec![e(p), a_s(i, m + s)]);
    push("[e*_i, e e]", esi, vec![e(p), e(s)], b.take());

    b.add(true, 1, n * p, vec![e(m + p)]).add(true, -1, -n * (m + p), vec![e(m + p)]);
    push("[e_0, e]", e0, vec![e(p)], b.take());
    b.add(true, 1, n * p, vec![e(m + p), e(s)]).add(true, -1, -n * (m + p), vec![e(m + p), e(s)]);
    b.add(true, 1, n * s, vec![e(p), e(m + s)]).add(true, -1, -n * (m + s), vec![e(p), e(m + s)]);
    push("[e_0, e e]", e0, vec![e(p), e(s)], b.take());
    out
}

fn render_word(w: &[Sym]) -> String {
    w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_mode_identity(fs: &FockSpace<i64>, basis: &[State], id: &ModeIdentity, x: Params, run: &mut Run) -> Result<()> {
    for st in basis {
        let v = V::basis(st.clone());
        let xw = fs.apply_quadratic(&id.op, &fs.apply_word(&id.word, &v)?)?;
        let wx = fs.apply_word(&id.word, &fs.apply_quadratic(&id.op, &v)?)?;
        let lhs = xw.sub(&wx);
        let mut rhs = V::zero();
        for (c, w) in &id.rhs {
            rhs.add_scaled(&fs.apply_word(w, &v)?, c);
        }
        run.check(id.id, || format!("{x} op={} word={} v={st}", id.op, render_word(&id.word)), &lhs, &rhs);
    }
    Ok(())
}

fn space(cfg: &SuiteConfig) -> (FockSpace<i64>, Vec<State>) {
    let fs = FockSpace::new(cfg.series, F::new(cfg.qmode));
    let basis = fs.truncated_basis(cfg.cutoff);
    (fs, basis)
}

pub(super) fn lemma_21(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let (fs, basis) = space(cfg);
    let f = fs.field().clone();
    let rho = fs.rho();
    let mut rng = cfg.rng();
    for _ in 0..cfg.trials {
        let x = Params::draw(&mut rng, cfg);
        let (i, j, m, n) = (x.i, x.j, x.m, x.n);
        for (id, l, swapped) in [
            ("g_ij(m,n) = -rho q^-mn g_ji(m,-n)", Label::g(i, j, m, n), Label::g(j, i, m, -n)),
            ("h_ij(m,n) = -rho q^-mn h_ji(m,-n)", Label::h(i, j, m, n), Label::h(j, i, m, -n)),
        ] {
            let k = f.q_pow(-m * n).scale_int(-rho);
            for st in &basis {
                let v = V::basis(st.clone());
                let lhs = fs.apply_quadratic(&l, &v)?;
                let rhs = fs.apply_quadratic(&swapped, &v)?.scale(&k);
                run.check(id, || format!("{l} v={st}"), &lhs, &rhs);
            }
        }
    }
    Ok(())
}

pub(super) fn lemma_22(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let (fs, basis) = space(cfg);
    let mut rng = cfg.rng();
    for _ in 0..cfg.trials {
        let x = Params::draw(&mut rng, cfg);
        for id in lemma_22_identities(fs.field(), fs.rho(), x) {
            check_mode_identity(&fs, &basis, &id, x, run)?;
        }
    }
    Ok(())
}

pub(super) fn lemma_23(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let (fs, basis) = space(cfg);
    let mut rng = cfg.rng();
    for _ in 0..cfg.trials {
        let x = Params::draw(&mut rng, cfg);
        for id in lemma_23_identities(fs.field(), x) {
            check_mode_identity(&fs, &basis, &id, x, run)?;
        }
    }
    Ok(())
}

/// The scalar part of the commutator of two (unmodified) quadratic
/// operators, with `T(m, x) = ½(q^x + 1)(q^{mx} - 1)/(q^x - 1)`:
///
/// * `[g_ij(m,n), h_kl(p,s)]`: `δ_{m+p,0} (-ρ δ_ik δ_jl T(m, s-n) + δ_jk δ_il q^{np} T(m, n+s))`
/// * `[f_ij(m,n), f_kl(p,s)]`: `ρ δ_jk δ_il δ_{m+p,0} q^{np} T(m, n+s)`
/// * `[e_i(m,n), e*_k(p,s)]`: `-δ_ik δ_{m+p,0} T(m, s-n)`
/// * `[e_0(m,n), e_0(p,s)]`: `δ_{m+p,0} (q^{np} T(m, n+s) - T(m, s-n))`
///
/// and zero for every other pair of kinds.
pub fn prop_scalar<T: Int>(f: &QField<T>, rho: i64, x: &Label, y: &Label) -> QScalar<T> {
    use Kind::*;
    let (i, j, m, n) = (x.i, x.j, x.m, x.n);
    let (k, l, p, s) = (y.i, y.j, y.m, y.n);
    if m + p != 0 {
        return QScalar::zero();
    }
    let t = |x| f.half_theta_sum(m, x);
    match (x.kind, y.kind) {
        (G, H) => {
            let mut out = QScalar::zero();
            if i == k && j == l {
                out = out - t(s - n).scale_int(rho);
            }
            if j == k && i == l {
                out = out + f.mul_qpow(&t(n + s), n * p);
            }
            out
        }
        (F, F) if j == k && i == l => f.mul_qpow(&t(n + s), n * p).scale_int(rho),
        (E, Es) if i == k => -t(s - n),
        (E0, E0) => f.mul_qpow(&t(n + s), n * p) - t(s - n),
        (H, G) | (Es, E) => -prop_scalar(f, rho, y, x),
        _ => QScalar::zero(),
    }
}

/// A random label of the given kind; `m` is forced when given.
fn draw_label(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, kind: Kind, m: Option<i64>) -> Label {
    let x = Params::draw(rng, cfg);
    let m = m.unwrap_or(x.m);
    match kind {
        Kind::E | Kind::Es => Label { kind, i: x.i, j: 0, m, n: x.n },
        Kind::E0 => Label::e0(m, x.n),
        _ => Label { kind, i: x.i, j: x.j, m, n: x.n },
    }
}

fn kinds(cfg: &SuiteConfig) -> &'static [Kind] {
    if cfg.series.is_b() {
        &[Kind::G, Kind::F, Kind::H, Kind::E, Kind::Es, Kind::E0]
    } else {
        &[Kind::G, Kind::F, Kind::H]
    }
}

/// Draws a pair whose degrees cancel half of the time, so that scalar
/// terms are exercised.
fn draw_pair(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, ka: Kind, kb: Kind) -> (Label, Label) {
    let x = draw_label(rng, cfg, ka, None);
    let forced = if rng.gen_bool(0.5) { Some(-x.m) } else { None };
    (x, draw_label(rng, cfg, kb, forced))
}

pub(super) fn props_2x(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let (fs, basis) = space(cfg);
    let alg = Algebra::new(cfg.series, fs.field().clone());
    let rho = fs.rho();
    let mut rng = cfg.rng();
    let ks = kinds(cfg);
    for (xa, &ka) in ks.iter().enumerate() {
        for &kb in &ks[xa..] {
            let id = format!("[{}, {}]", ka.name(), kb.name());
            for _ in 0..cfg.trials {
                let (x, y) = draw_pair(&mut rng, cfg, ka, kb);
                let bracket = alg.closed_bracket(&x, &y)?;
                let scalar = prop_scalar(fs.field(), rho, &x, &y);
                for st in &basis {
                    let v = V::basis(st.clone());
                    let xy = fs.apply_quadratic(&x, &fs.apply_quadratic(&y, &v)?)?;
                    let yx = fs.apply_quadratic(&y, &fs.apply_quadratic(&x, &v)?)?;
                    let lhs = xy.sub(&yx);
                    let mut rhs = v.scale(&scalar);
                    for (l, c) in bracket.terms() {
                        if !l.kind.is_central() {
                            rhs.add_scaled(&fs.apply_quadratic(l, &v)?, c);
                        }
                    }
                    run.check(&id, || format!("x={x} y={y} v={st} scalar={scalar}"), &lhs, &rhs);
                }
            }
        }
    }
    Ok(())
}

/// `π(x) v`, optionally with the modification shifts removed.
fn pi(fs: &FockSpace<i64>, x: &Combination<i64>, v: &V, mutation: Option<Mutation>) -> Result<V> {
    let mut out = fs.pi_apply(x, v)?;
    if mutation == Some(Mutation::DropCorrection) {
        for (l, c) in x.terms() {
            if let Some(k) = fs.modification(l) {
                out.add_scaled(v, &(c * &k));
            }
        }
    }
    Ok(out)
}

pub(super) fn homomorphism(cfg: &SuiteConfig, run: &mut Run) -> Result<()> {
    let (fs, basis) = space(cfg);
    let alg = Algebra::new(cfg.series, fs.field().clone());
    let mutation = cfg.mutation;
    let r = cfg.ranges.exponents;
    let labels = alg.canonical_labels(r.iter(), r.iter());
    let mut rng = cfg.rng();
    let commutator = |x: &Combination<i64>, y: &Combination<i64>, v: &V| -> Result<V> {
        let xy = pi(&fs, x, &pi(&fs, y, v, mutation)?, mutation)?;
        let yx = pi(&fs, y, &pi(&fs, x, v, mutation)?, mutation)?;
        Ok(xy.sub(&yx))
    };

    let f1 = Combination::gen(Label::f(1, 1, 1, 0));
    let f2 = Combination::gen(Label::f(1, 1, -1, 0));
    let cy = Combination::gen(Label::cy());
    let rho = S::from_int(fs.rho());
    for st in &basis {
        let v = V::basis(st.clone());
        run.check("[F_11(1,0), F_11(-1,0)] = rho", || format!("v={st}"), &commutator(&f1, &f2, &v)?, &v.scale(&rho));
        run.check("pi(c_y) = 0", || format!("v={st}"), &pi(&fs, &cy, &v, mutation)?, &V::zero());
    }

    for _ in 0..cfg.trials {
        let x = labels[rng.gen_range(0..labels.len())];
        let partners: Vec<&Label> = if rng.gen_bool(0.5) {
            labels.iter().filter(|l| l.m == -x.m).collect()
        } else {
            labels.iter().collect()
        };
        let y = *partners[rng.gen_range(0..partners.len())];
        let bracket = alg.closed_bracket(&x, &y)?;
        let (cx, cy) = (Combination::gen(x), Combination::gen(y));
        for st in &basis {
            let v = V::basis(st.clone());
            let lhs = pi(&fs, &bracket, &v, mutation)?;
            let rhs = commutator(&cx, &cy, &v)?;
            run.check("pi([x, y]) = [pi(x), pi(y)]", || format!("x={x} y={y} [x,y]={bracket} v={st}"), &lhs, &rhs);
        }
    }
    Ok(())
}
