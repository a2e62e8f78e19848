use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;

use modrep::arith::{make_field, CyclotomicNumber, FiniteField, Rational};
use modrep::cde::{cartan_matrix, check_cartan, ModularData};
use modrep::characters::{
    brauer_character, decompose, default_field_degree, dixon_character_table, BrauerCharacterTable, ClassFunction,
};
use modrep::group::{generate_group, sl2_over, FiniteGroup, ResidueMatrix, DEFAULT_CAP};
use modrep::linalg::{int_matpow, IntMatrix};
use modrep::meataxe::{chop, hom_dim, Representation};

fn s3() -> Arc<FiniteGroup> {
    let gens = [ResidueMatrix::new(3, 2, &[1, 1, 0, 1]).unwrap(), ResidueMatrix::new(3, 2, &[-1, 0, 0, 1]).unwrap()];
    Arc::new(generate_group(&gens, 100).unwrap())
}

fn cyclic(n: u32) -> Arc<FiniteGroup> {
    Arc::new(generate_group(&[ResidueMatrix::new(n, 2, &[1, 1, 0, 1]).unwrap()], 100).unwrap())
}

/// Small groups exercised by every property, with the primes to test them at.
fn test_groups() -> Vec<(Arc<FiniteGroup>, Vec<u32>)> {
    vec![
        (cyclic(3), vec![2, 3]),
        (s3(), vec![2, 3]),
        (Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap()), vec![2, 3]),
        (Arc::new(sl2_over(2, 2, DEFAULT_CAP).unwrap()), vec![2, 3]),
        (Arc::new(sl2_over(5, 1, DEFAULT_CAP).unwrap()), vec![5]),
    ]
}

fn field_for(g: &FiniteGroup, p: u32) -> Arc<FiniteField> {
    Arc::new(make_field(p, default_field_degree(g, p), None).unwrap())
}

#[test]
fn character_tables_are_orthogonal() {
    for (g, _) in test_groups() {
        let t = dixon_character_table(g.clone()).unwrap();
        assert_eq!(t.len(), g.conjugacy_classes().len());
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), g.order() as u64);
        for d in t.degrees() {
            assert_eq!(g.order() as u64 % d, 0);
        }
        for a in 0..t.len() {
            for b in 0..t.len() {
                let ip = t.inner_product(t.row(a), t.row(b)).unwrap();
                assert_eq!(ip, Rational::from_integer(BigInt::from((a == b) as i64)));
            }
        }
    }
}

#[test]
fn modular_invariants_on_all_test_groups() {
    for (g, primes) in test_groups() {
        for p in primes {
            let f = field_for(&g, p);
            let data = ModularData::compute(g.clone(), f, 0).unwrap();
            let cc = g.conjugacy_classes();
            assert_eq!(data.brauer.len(), cc.p_regular_classes(p).len(), "|G| = {}, p = {p}", g.order());
            check_cartan(&data.cartan, p).unwrap();
            assert!(data.blocks.respects_zero_pattern(&data.cartan));
            for s in data.brauer.simples() {
                assert_eq!(hom_dim(s, s).unwrap(), 1);
            }
            if !(g.order() as u32).is_multiple_of(p) {
                assert_eq!(data.cartan, IntMatrix::identity(data.brauer.len()));
            }
        }
    }
}

#[test]
fn s3_dual_pipeline() {
    let t = modrep::tower::s3_tower();
    let f3 = Arc::new(make_field(3, 1, None).unwrap());
    let s3 = t.level(2).unwrap().clone();
    let data = ModularData::compute(s3, f3.clone(), 0).unwrap();
    assert_eq!(*data.decomposition.matrix(), IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]));
    let cde_route = cartan_matrix(&data.decomposition).unwrap();
    assert_eq!(cde_route, IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 2]]));
    assert_eq!(data.blocks.len(), 1);

    let c2 = ModularData::compute(t.level(1).unwrap().clone(), f3, 0).unwrap();
    assert_eq!(c2.cartan, IntMatrix::identity(2));
    let bt = t.inflate_table(&c2.brauer, 2).unwrap();
    let b = t.b_matrix(1, &bt).unwrap();
    assert_eq!(b.mul(&c2.cartan), cde_route);
    // both pipelines index simples the same way
    assert_eq!(bt.fingerprints(), data.brauer.fingerprints());
}

#[test]
fn s3_conjugation_module_character() {
    let t = modrep::tower::s3_tower();
    let f3 = Arc::new(make_field(3, 1, None).unwrap());
    let x = t.section_module(1, f3.clone()).unwrap();
    let s3 = t.level(2).unwrap();
    let classes = s3.conjugacy_classes().p_regular_classes(3);
    let triv = Representation::trivial(s3.clone(), f3);
    let chi = brauer_character(&x.tensor(&triv).unwrap(), &classes).unwrap();
    let expected = ClassFunction::new(classes.clone(), vec![CyclotomicNumber::from_int(3), CyclotomicNumber::from_int(1)]);
    assert_eq!(chi, expected);
    assert_eq!(chi, t.section_brauer_character(1, &classes).unwrap());
}

#[test]
fn conjugation_module_on_sl2_9_kernel() {
    let t = modrep::tower::build_tower(3, 2, DEFAULT_CAP).unwrap();
    let f9 = Arc::new(make_field(3, 2, None).unwrap());
    let x = t.section_module(1, f9.clone()).unwrap();
    assert_eq!(x.dim(), 27);
    let triv = Representation::trivial(t.level(2).unwrap().clone(), f9);
    let r = chop(&x.tensor(&triv).unwrap(), 0).unwrap();
    assert_eq!(r.total_dim(), 27);
}

fn sl2_3_modules() -> &'static Vec<Representation> {
    static M: OnceLock<Vec<Representation>> = OnceLock::new();
    M.get_or_init(|| {
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let f9 = Arc::new(make_field(3, 2, None).unwrap());
        let v = Representation::natural(g.clone(), f9.clone()).unwrap();
        let t = Representation::trivial(g.clone(), f9.clone());
        vec![
            v.clone(),
            v.tensor(&v).unwrap(),
            v.tensor(&v).unwrap().tensor(&v).unwrap(),
            v.direct_sum(&t).unwrap().dual(),
            Representation::regular(g, f9),
        ]
    })
}

fn sl2_3_table() -> &'static BrauerCharacterTable {
    static T: OnceLock<BrauerCharacterTable> = OnceLock::new();
    T.get_or_init(|| {
        let g = sl2_3_modules()[0].group().clone();
        BrauerCharacterTable::compute(g, sl2_3_modules()[0].field().clone(), 0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn chop_is_seed_independent(seed in 1u64..1_000_000, which in 0usize..5) {
        let m = &sl2_3_modules()[which];
        let a = chop(m, 0).unwrap();
        let b = chop(m, seed).unwrap();
        prop_assert_eq!(a.fingerprints(), b.fingerprints());
        prop_assert_eq!(b.total_dim(), m.dim());
    }

    #[test]
    fn brauer_character_is_additive_and_multiplicative(i in 0usize..5, j in 0usize..3) {
        let mods = sl2_3_modules();
        let a = &mods[i.min(3)];
        let b = &mods[j];
        let classes = a.group().conjugacy_classes().p_regular_classes(3);
        let ca = brauer_character(a, &classes).unwrap();
        let cb = brauer_character(b, &classes).unwrap();
        prop_assert_eq!(brauer_character(&a.direct_sum(b).unwrap(), &classes).unwrap(), ca.add(&cb).unwrap());
        prop_assert_eq!(brauer_character(&a.tensor(b).unwrap(), &classes).unwrap(), ca.mul(&cb).unwrap());
    }

    #[test]
    fn decompose_recovers_coefficients(coeffs in proptest::collection::vec(-20i64..20, 3)) {
        let bt = sl2_3_table();
        let rows = bt.rows();
        let mut target = ClassFunction::constant(bt.classes().to_vec(), 0);
        for (c, r) in coeffs.iter().zip(&rows) {
            target = target.add(&r.scale(&Rational::from_integer(BigInt::from(*c)))).unwrap();
        }
        let got = decompose(&target, &rows).unwrap();
        let want: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn matpow_is_repeated_multiplication(entries in proptest::collection::vec(-3i64..4, 9), n in 0u64..7) {
        let m = IntMatrix::from_vec(3, 3, entries.into_iter().map(BigInt::from).collect());
        let mut expected = IntMatrix::identity(3);
        for _ in 0..n {
            expected = expected.mul(&m);
        }
        prop_assert_eq!(int_matpow(&m, n), expected);
    }
}
