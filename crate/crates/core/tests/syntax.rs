use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfc_core::algebra::{Field, Poly, RatFunc};
use sfc_core::denotational::{dsem, equiv, AffineMap, AffineRelation};
use sfc_core::gen::{affine_circuit, random_poly, random_term, Palette};
use sfc_core::syntax::{
    eliminate_coone, fraction_to_circuit, hat, ids, matrix_to_circuit, par, parse, permutation,
    seq, single_one_form, Circuit, MatrixOverPoly, Sort,
};

fn circuit(seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=2);
    let m = rng.gen_range(0..=2);
    affine_circuit(&mut rng, Palette::Full, n, m, 4)
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>()) {
        let c = random_term(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = c.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn mirror_denotes_the_converse(seed in any::<u64>()) {
        let c = circuit(seed);
        prop_assert_eq!(dsem(&c.mirror()).unwrap(), dsem(&c).unwrap().converse());
        prop_assert_eq!(c.mirror().mirror(), c);
    }

    #[test]
    fn normal_forms_keep_the_denotation(seed in any::<u64>()) {
        let c = circuit(seed);
        let g = dsem(&c).unwrap();
        let no_coone = eliminate_coone(&c);
        prop_assert_eq!(no_coone.count(&|g| *g == Circuit::CoOne), 0);
        prop_assert_eq!(dsem(&no_coone).unwrap(), g.clone());

        let single = single_one_form(&c).unwrap();
        prop_assert_eq!(single.count(&|g| *g == Circuit::One), 1);
        prop_assert_eq!(single.count(&|g| *g == Circuit::CoOne), 0);
        prop_assert_eq!(dsem(&single).unwrap(), g.clone());

        // feeding the constant back into the hat recovers the circuit
        let h = hat(&c).unwrap();
        prop_assert!(h.is_linear());
        let s = c.sort().unwrap();
        prop_assert_eq!(h.sort().unwrap(), Sort::new(s.left + 1, s.right));
        prop_assert_eq!(dsem(&seq(par(Circuit::One, ids(s.left)), h)).unwrap(), g);
    }

    #[test]
    fn matrices_denote_their_graph(seed in any::<u64>(), rows in 0usize..3, cols in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<Vec<Poly<_>>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(0.3) { Poly::zero() } else { random_poly(&mut rng, 2) }).collect())
            .collect();
        let m = MatrixOverPoly::new(entries.clone(), cols);
        let c = matrix_to_circuit(&m);
        prop_assert_eq!(c.sort().unwrap(), Sort::new(cols, rows));
        let map = AffineMap {
            inputs: cols,
            a: entries.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect(),
            b: vec![RatFunc::zero(); rows],
        };
        prop_assert_eq!(dsem(&c).unwrap(), AffineRelation::graph(&map));
    }

    #[test]
    fn fractions_denote_themselves(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sfc_core::gen::random_fraction(&mut rng, 2, false);
        let g = dsem(&fraction_to_circuit(&p)).unwrap();
        prop_assert_eq!(g.point(), Some(vec![p]));
    }

    #[test]
    fn permutations_compose(perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let c = permutation(&perm);
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        prop_assert!(equiv(&seq(c, permutation(&inverse)), &ids(4)).unwrap());
    }
}

#[test]
fn worked_parses() {
    assert_eq!(
        parse("one ; cozero").unwrap(),
        Circuit::seq(Circuit::One, Circuit::CoZero)
    );
    let c = parse("(copy + id) ; (id + add)").unwrap();
    assert_eq!(
        c,
        Circuit::seq(
            Circuit::par(Circuit::Copy, Circuit::Id),
            Circuit::par(Circuit::Id, Circuit::Add)
        )
    );
    let e = parse("copy ; copy").unwrap_err().to_string();
    assert!(e.contains('2') && e.contains('1'), "{e}");
}
