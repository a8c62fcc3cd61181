//! Seeded random generators for circuits, fractions and relations, used by
//! the property tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Field, Poly, RatFunc, Rational};
use crate::denotational::AffineRelation;
use crate::syntax::{ids, par, par_all, seq, trace, Circuit};

/// Which generators a random circuit may use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Palette {
    /// copy, discard, add, zero, scalar, reg, one: left-to-right flow only.
    Forward,
    /// Forward and mirrored linear generators, no `one`/`coone`.
    Linear,
    /// Everything.
    Full,
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub palette: Palette,
    /// Upper bound on the number of wires in any layer.
    pub max_wires: usize,
    pub layers: usize,
    pub scalars: Vec<Rational>,
}

impl GenConfig {
    pub fn new(palette: Palette) -> Self {
        GenConfig {
            palette,
            max_wires: 4,
            layers: 3,
            scalars: vec![
                Rational::from(2),
                Rational::from(-1),
                Rational::new(1, 2),
                Rational::from(3),
            ],
        }
    }
}

fn scalar<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Rational {
    cfg.scalars
        .choose(rng)
        .cloned()
        .unwrap_or_else(|| Rational::from(2))
}

/// A generator with left arity `k` (0, 1 or 2) drawn from the palette.
/// `grow` allows generators with more right than left ports.
fn pick<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, k: usize, grow: bool) -> Option<Circuit> {
    use Circuit::*;
    let mut options: Vec<Circuit> = match k {
        0 => vec![Zero, One, CoDiscard],
        1 => vec![
            Id,
            Id,
            Discard,
            Scalar(scalar(rng, cfg)),
            Reg,
            Reg,
            Copy,
            CoZero,
            CoOne,
            CoScalar(scalar(rng, cfg)),
            CoReg,
            CoAdd,
        ],
        _ => vec![Add, Add, Sym, CoCopy],
    };
    options.retain(|g| {
        let allowed = match cfg.palette {
            Palette::Forward => matches!(
                g,
                Copy | Discard | Add | Zero | Scalar(_) | Reg | One | Id | Sym
            ),
            Palette::Linear => !matches!(g, One | CoOne),
            Palette::Full => true,
        };
        let s = g.sort().expect("generator");
        allowed && (grow || s.right <= s.left)
    });
    options.choose(rng).cloned()
}

/// One parallel layer over `w` wires.
fn layer<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, w: usize) -> Circuit {
    let mut parts = Vec::new();
    let mut width = 0;
    let mut i = 0;
    while i < w {
        let grow = width + (w - i) < cfg.max_wires;
        let k = if w - i >= 2 && rng.gen_bool(0.35) {
            2
        } else {
            1
        };
        let g = pick(rng, cfg, k, grow)
            .or_else(|| pick(rng, cfg, 1, grow))
            .unwrap_or(Circuit::Id);
        i += g.sort().expect("generator").left;
        width += g.sort().expect("generator").right;
        parts.push(g);
    }
    if width < cfg.max_wires && rng.gen_bool(if w == 0 { 0.9 } else { 0.15 }) {
        if let Some(g) = pick(rng, cfg, 0, true) {
            let at = rng.gen_range(0..=parts.len());
            parts.insert(at, g);
        }
    }
    par_all(parts)
}

fn right_arity(c: &Circuit) -> usize {
    c.sort().expect("generated circuits are sorted").right
}

/// Extend `c` until it has exactly `m` right ports.
fn adapt<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, mut c: Circuit, m: usize) -> Circuit {
    use Circuit::*;
    loop {
        let w = right_arity(&c);
        let fix = if w > m {
            let merge = match (w >= 2, cfg.palette) {
                (true, Palette::Forward) => [Add, Discard].choose(rng).cloned(),
                (true, _) => [Add, CoCopy, Discard].choose(rng).cloned(),
                (false, _) => Some(Discard),
            }
            .expect("nonempty");
            let k = merge.sort().expect("generator").left;
            par(merge, ids(w - k))
        } else if w < m {
            let g = if w == 0 {
                pick(rng, cfg, 0, true).expect("constants exist")
            } else if rng.gen_bool(0.3) {
                return seq(c, par(ids(w), adapt_from_zero(rng, cfg, m - w)));
            } else {
                match cfg.palette {
                    Palette::Forward => Copy,
                    _ => [Copy, CoAdd].choose(rng).cloned().expect("nonempty"),
                }
            };
            let k = g.sort().expect("generator").left;
            par(g, ids(w - k))
        } else {
            return c;
        };
        c = seq(c, fix);
    }
}

fn adapt_from_zero<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, m: usize) -> Circuit {
    par_all((0..m).map(|_| pick(rng, cfg, 0, true).expect("constants exist")))
}

/// A layered circuit of sort `(n, m)`.
pub fn layered<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, n: usize, m: usize) -> Circuit {
    let mut c = ids(n);
    for _ in 0..cfg.layers {
        let w = right_arity(&c);
        c = seq(c, layer(rng, cfg, w));
    }
    adapt(rng, cfg, c, m)
}

/// A circuit built from the forward generators and feedback through a
/// register, of sort `(n, m)` with at most `max_registers` registers.
pub fn signal_flow<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    max_registers: usize,
) -> Circuit {
    let cfg = GenConfig {
        layers: 2,
        ..GenConfig::new(Palette::Forward)
    };
    loop {
        let c = signal_flow_term(rng, &cfg, n, m, 2);
        if c.registers() <= max_registers {
            return c;
        }
    }
}

fn signal_flow_term<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &GenConfig,
    n: usize,
    m: usize,
    depth: usize,
) -> Circuit {
    let roll: f64 = rng.gen();
    if depth > 0 && roll < 0.4 {
        let inner = signal_flow_term(rng, cfg, n + 1, m + 1, depth - 1);
        trace(&inner).expect("inner sort has room for feedback")
    } else if depth > 0 && roll < 0.6 {
        let mid = rng.gen_range(1..=cfg.max_wires.min(3));
        seq(
            signal_flow_term(rng, cfg, n, mid, depth - 1),
            signal_flow_term(rng, cfg, mid, m, depth - 1),
        )
    } else {
        layered(rng, cfg, n, m)
    }
}

/// A circuit over the full palette of sort `(n, m)` with at most
/// `max_registers` registers.
pub fn affine_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    palette: Palette,
    n: usize,
    m: usize,
    max_registers: usize,
) -> Circuit {
    let cfg = GenConfig::new(palette);
    loop {
        let c = layered(rng, &cfg, n, m);
        if c.registers() <= max_registers {
            return c;
        }
    }
}

/// A sortable term of random shape, for syntax round trips.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R) -> Circuit {
    let n = rng.gen_range(0..=3);
    let m = rng.gen_range(0..=3);
    let cfg = GenConfig {
        layers: rng.gen_range(1..=4),
        ..GenConfig::new(Palette::Full)
    };
    let c = layered(rng, &cfg, n, m);
    if rng.gen_bool(0.2) {
        Circuit::par(c, Circuit::Empty)
    } else {
        c
    }
}

/// Small rational: numerator in `-bound..=bound`, denominator in `1..=bound`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Poly<Rational> {
    let d = rng.gen_range(0..=max_degree);
    Poly::new((0..=d).map(|_| small_rational(rng, 3)).collect())
}

/// A random fraction; `rational` forces a denominator with nonzero constant term.
pub fn random_fraction<R: Rng + ?Sized>(rng: &mut R, max_degree: usize, rational: bool) -> RatFunc {
    loop {
        let num = random_poly(rng, max_degree);
        let mut den = random_poly(rng, max_degree);
        if rational && den.coeff(0).is_zero() {
            den = den + Poly::one();
        }
        if let Ok(f) = RatFunc::new(num, den) {
            if !rational || f.is_rational() {
                return f;
            }
        }
    }
}

/// A relation cut out by `rows` random constraints with entries from `sample`.
pub fn random_relation<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    left: usize,
    right: usize,
    rows: usize,
    mut sample: impl FnMut(&mut R) -> F,
) -> AffineRelation<F> {
    let rows = (0..rows)
        .map(|_| (0..=left + right).map(|_| sample(rng)).collect())
        .collect();
    AffineRelation::from_constraints(left, right, rows).expect("row widths match")
}
