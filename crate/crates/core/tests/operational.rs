use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfc_core::algebra::{laurent_expand, Gf, RatFunc, Rational};
use sfc_core::analysis::{realisable, PortPartition, DEFAULT_PORT_CAP};
use sfc_core::denotational::{dsem, AffineRelation};
use sfc_core::gen::{affine_circuit, random_fraction, signal_flow, Palette};
use sfc_core::operational::{
    agreement_start, check_agreement, run, run_function, solve_run, step, AgreementError, Machine,
    NetState, ReachableSet, RunError,
};
use sfc_core::syntax::{parse, Circuit};

type G3 = Gf<3>;
type States = HashSet<Vec<G3>>;

fn cube(k: usize) -> Vec<Vec<G3>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                G3::elements().map(move |e| {
                    let mut p = p.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

fn points(g: &AffineRelation<G3>) -> States {
    cube(g.right())
        .into_iter()
        .filter(|z| g.contains_point(z))
        .collect()
}

fn values(rng: &mut ChaCha8Rng, k: usize) -> Vec<G3> {
    if rng.gen_bool(0.5) {
        vec![G3::new(0); k]
    } else {
        (0..k).map(|_| G3::new(rng.gen_range(0..3))).collect()
    }
}

/// Macrostates of `c ; d` computed from the two machines separately, by
/// trying every value on the shared boundary.
fn explicit_seq(
    mc: &Machine<G3>,
    md: &Machine<G3>,
    clock: i64,
    states: &States,
    u: &[G3],
    w: &[G3],
) -> States {
    let rc = mc.registers();
    let mut next = HashSet::new();
    for s in states {
        let (sc, sd) = s.split_at(rc);
        for v in cube(mc.right()) {
            let left = points(&mc.successors(clock, sc, u, &v).unwrap());
            if left.is_empty() {
                continue;
            }
            let right = points(&md.successors(clock, sd, &v, w).unwrap());
            for a in &left {
                for b in &right {
                    next.insert([a.as_slice(), b].concat());
                }
            }
        }
    }
    next
}

fn explicit_par(
    mc: &Machine<G3>,
    md: &Machine<G3>,
    clock: i64,
    states: &States,
    u: &[G3],
    w: &[G3],
) -> States {
    let rc = mc.registers();
    let (u1, u2) = u.split_at(mc.left());
    let (w1, w2) = w.split_at(mc.right());
    let mut next = HashSet::new();
    for s in states {
        let (sc, sd) = s.split_at(rc);
        let left = points(&mc.successors(clock, sc, u1, w1).unwrap());
        let right = points(&md.successors(clock, sd, u2, w2).unwrap());
        for a in &left {
            for b in &right {
                next.insert([a.as_slice(), b].concat());
            }
        }
    }
    next
}

fn small(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Circuit {
    affine_circuit(rng, Palette::Full, n, m, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_composites_match_their_parts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m, l) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (c, d) = (small(&mut rng, n, m), small(&mut rng, m, l));
        let (mc, md) = (Machine::<G3>::compile(&c).unwrap(), Machine::<G3>::compile(&d).unwrap());
        let sequential = rng.gen_bool(0.5);
        let (whole, left, right) = if sequential {
            (Circuit::seq(c.clone(), d.clone()), n, l)
        } else {
            (Circuit::par(c.clone(), d.clone()), n + m, m + l)
        };
        let start = -rng.gen_range(0..3);
        let mut set = ReachableSet::initial(Machine::<G3>::compile(&whole).unwrap(), start);
        let mut explicit: States = [vec![G3::new(0); mc.registers() + md.registers()]].into();
        for _ in 0..5 {
            let (u, w) = (values(&mut rng, left), values(&mut rng, right));
            let clock = set.clock;
            explicit = if sequential {
                explicit_seq(&mc, &md, clock, &explicit, &u, &w)
            } else {
                explicit_par(&mc, &md, clock, &explicit, &u, &w)
            };
            let alive = set.advance(&u, &w).unwrap();
            prop_assert_eq!(alive, !explicit.is_empty());
            prop_assert_eq!(points(&set.states), explicit.clone(), "{} at clock {}", whole, clock);
            if !alive {
                break;
            }
        }
    }

    #[test]
    fn idle_steps_are_always_possible(seed in any::<u64>(), t in -10i64..0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let c = affine_circuit(&mut rng, Palette::Full, n, m, 5);
        let mut s = NetState::<Rational>::compile(&c, t).unwrap();
        let zeros = |k| vec![Rational::from(0); k];
        while s.clock < 0 {
            let r = step(&s, &zeros(n), &zeros(m)).unwrap();
            prop_assert!(r.is_feasible(), "{} idle at {}", c, s.clock);
            // the zero state is among the successors
            s = s.advance(zeros(s.machine.registers()));
        }
    }

    #[test]
    fn solving_agrees_with_checking(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let c = affine_circuit(&mut rng, Palette::Full, n, m, 3);
        let start = -rng.gen_range(0..3);
        let lefts: Vec<Vec<Rational>> = (0..6)
            .map(|_| (0..n).map(|_| Rational::from(rng.gen_range(-2..=2))).collect())
            .collect();
        let solved = solve_run(&c, start, &lefts).unwrap();
        let ticks = solved.trajectory.steps.clone();
        // a determined prefix is accepted by some run
        prop_assert!(sfc_core::operational::run_existential(&c, start, &ticks).is_ok());
        if solved.failure.is_none() {
            prop_assert_eq!(ticks.len(), lefts.len());
        }
    }

    #[test]
    fn realised_maps_drive_the_simulation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let c = signal_flow(&mut rng, n, m, 4);
        let report = realisable(&c, DEFAULT_PORT_CAP).unwrap();
        prop_assert!(report.realisable && report.hat_agrees);
        prop_assert_eq!(report.partition, Some(PortPartition::standard(n, m)));
        let map = report.map.unwrap();
        let u: Vec<RatFunc> = (0..n).map(|_| random_fraction(&mut rng, 2, true)).collect();
        let windows: Vec<_> = u.iter().map(|p| laurent_expand(p, 0, 20)).collect();
        let out = run_function(&c, &windows, 20).unwrap();
        for (o, p) in out.iter().zip(map.apply(&u)) {
            prop_assert_eq!(o, &laurent_expand(&p, 0, 20));
        }
    }
}

#[test]
fn coreg_needs_a_head_start() {
    let c = parse("one ; coreg").unwrap();
    let q = Rational::from;
    assert_eq!(run(&c, 0, &[(vec![], vec![q(1)])]), Err(RunError::Stuck(0)));
    let ticks: Vec<_> = (0..6)
        .map(|i| (vec![], vec![q(i64::from(i == 0))]))
        .collect();
    let t = run(&c, -1, &ticks).unwrap();
    assert_eq!(
        t.rights(0),
        ticks.iter().map(|(_, r)| r[0].clone()).collect::<Vec<_>>()
    );
    // any other emission at -1 blocks the pulse at 0
    assert_eq!(
        run(&c, -1, &[(vec![], vec![q(2)]), (vec![], vec![q(0)])]),
        Err(RunError::Stuck(0))
    );
}

#[test]
fn registers_are_numbered_left_to_right() {
    let c = parse("reg + (scalar(2) ; reg)").unwrap();
    let m = Machine::<Rational>::compile(&c).unwrap();
    let q = Rational::from;
    let next = m
        .successors(0, &[q(0), q(0)], &[q(1), q(3)], &[q(0), q(0)])
        .unwrap();
    assert_eq!(next.point(), Some(vec![q(1), q(6)]));
    let f = |s: &str| s.parse::<RatFunc>().unwrap();
    assert!(dsem(&c)
        .unwrap()
        .contains(&[f("1"), f("1")], &[f("x"), f("2*x")])
        .unwrap());
}

const CORPUS: &[&str] = &[
    "(codiscard ; copy) + id ; id + (add ; copy) ; id + reg + id ; (cocopy ; discard) + id",
    "one ; coreg",
    "one ; cozero",
    "reg ; coreg",
    "coreg ; reg",
    "one + id ; add",
    "copy ; reg + scalar(1/2) ; add",
    "coadd ; coreg + id",
    "codiscard",
    "one ; copy ; coreg + discard",
    "empty",
];

#[test]
fn corpus_members_replay_as_trajectories() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for text in CORPUS {
        let c = parse(text).unwrap();
        let g = dsem(&c).unwrap();
        let Some(p) = g.particular_solution() else {
            continue;
        };
        let basis = g.direction_basis().unwrap();
        for _ in 0..5 {
            let mut z = p.clone();
            for d in &basis {
                let k = random_fraction(&mut rng, 1, false);
                for (zi, di) in z.iter_mut().zip(d) {
                    *zi = zi.clone() + k.clone() * di.clone();
                }
            }
            let v = z.split_off(g.left());
            assert!(
                check_agreement(&c, &z, &v, 24).unwrap(),
                "{text} on {z:?}, {v:?}"
            );
        }
    }
}

#[test]
fn agreement_examples() {
    let f = |s: &str| s.parse::<RatFunc>().unwrap();
    let lp = parse(CORPUS[0]).unwrap();
    assert!(check_agreement(&lp, &[f("1")], &[f("1/(1 - x)")], 32).unwrap());
    let one_coreg = parse("one ; coreg").unwrap();
    assert!(check_agreement(&one_coreg, &[], &[f("1/x")], 16).unwrap());
    assert_eq!(agreement_start(&one_coreg, &[], &[f("1/x")]), -3);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10 {
        let p = random_fraction(&mut rng, 2, true);
        assert!(check_agreement(
            &Circuit::Id,
            std::slice::from_ref(&p),
            std::slice::from_ref(&p),
            32
        )
        .unwrap());
    }
    let wrong = check_agreement(&Circuit::Id, &[f("1")], &[f("2")], 8);
    assert_eq!(wrong, Err(AgreementError::NotMember));
}
