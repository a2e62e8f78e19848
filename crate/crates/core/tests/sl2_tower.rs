use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use modrep::arith::{make_field, FiniteField, Rational, Rationals};
use modrep::cde::{
    apply_d, apply_e, block_partition, block_pullback, pairing, pairing_ordinary, Basis, GrothendieckVector, ModularData,
};
use modrep::group::{reduction_map, DEFAULT_CAP};
use modrep::linalg::{self, int_det, IntMatrix};
use modrep::meataxe::{chop, hom_dim};
use modrep::tower::{build_tower, find_simultaneous_permutation, sl2_closed_form, tower_cartan, TowerDescriptor};

fn f9() -> Arc<FiniteField> {
    static F: OnceLock<Arc<FiniteField>> = OnceLock::new();
    F.get_or_init(|| Arc::new(make_field(3, 2, None).unwrap())).clone()
}

fn tower2() -> &'static TowerDescriptor {
    static T: OnceLock<TowerDescriptor> = OnceLock::new();
    T.get_or_init(|| build_tower(3, 2, DEFAULT_CAP).unwrap())
}

fn g1_data() -> &'static ModularData {
    static D: OnceLock<ModularData> = OnceLock::new();
    D.get_or_init(|| ModularData::compute(tower2().level(1).unwrap().clone(), f9(), 0).unwrap())
}

fn g2_data() -> &'static ModularData {
    static D: OnceLock<ModularData> = OnceLock::new();
    D.get_or_init(|| ModularData::compute(tower2().level(2).unwrap().clone(), f9(), 0).unwrap())
}

fn b1() -> &'static IntMatrix {
    static B: OnceLock<IntMatrix> = OnceLock::new();
    B.get_or_init(|| {
        let t = tower2();
        let bt = t.inflate_table(&g1_data().brauer, 2).unwrap();
        t.b_matrix(1, &bt).unwrap()
    })
}

fn rows(r: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
}

fn published_c1() -> IntMatrix {
    IntMatrix::diag(&[3, 1, 3])
}

fn published_b() -> IntMatrix {
    rows(&[&[9, 18, 0], &[6, 21, 0], &[0, 0, 27]])
}

fn published_c2() -> IntMatrix {
    rows(&[&[27, 18, 0], &[18, 21, 0], &[0, 0, 81]])
}

fn published_c3() -> IntMatrix {
    rows(&[&[567, 540, 0], &[540, 549, 0], &[0, 0, 2187]])
}

/// The one relabeling of our simples that matches every published matrix.
fn reference_permutation() -> Vec<usize> {
    let c1 = &g1_data().cartan;
    find_simultaneous_permutation(&[c1, b1()], &[&published_c1(), &published_b()]).expect("C₁ and B match")
}

#[test]
fn g1_cartan_matrix() {
    let data = g1_data();
    assert_eq!(data.characters.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
    assert_eq!(data.brauer.dims(), vec![1, 2, 3]);
    assert_eq!(data.decomposition.matrix().rows(), 7);
    assert!(find_simultaneous_permutation(&[&data.cartan], &[&published_c1()]).is_some());
    // the Steinberg character reduces to the 3-dimensional simple
    let st = GrothendieckVector::unit(Basis::Ordinary, 7, 6);
    assert_eq!(apply_d(&st, &data.decomposition).unwrap(), GrothendieckVector::from_i64(Basis::Simple, &[0, 0, 1]));
    // p-blocks of SL₂(𝔽₃): every simple is alone in its block
    assert_eq!(data.blocks.len(), 3);
}

#[test]
fn g2_cartan_matches_recursion() {
    let perm = reference_permutation();
    let c2 = &g2_data().cartan;
    assert_eq!(c2.permuted(&perm), published_c2());
    assert_eq!(g2_data().brauer.dims(), vec![1, 2, 3]);
    // C(G₂) = B·C(G₁) with B from the section character
    assert_eq!(&b1().mul(&g1_data().cartan), c2);
}

#[test]
fn b_equals_c2_times_c1_inverse() {
    let c1_inv = linalg::inverse(&Rationals, &g1_data().cartan.to_rational()).unwrap();
    let product = g2_data().cartan.to_rational().mul(&Rationals, &c1_inv);
    assert_eq!(IntMatrix::try_from_rational(&product).unwrap(), *b1());
    assert_eq!(b1().permuted(&reference_permutation()), published_b());
}

#[test]
fn published_order_is_by_dimension_1_3_2() {
    // Σ_S dim(S)·B[S][T] = 27·dim(T) pins the dimensions behind the published B
    let b = published_b().to_rational();
    let shifted = b.transpose().sub(&Rationals, &linalg::Matrix::identity(&Rationals, 3).scale(&Rationals, &Rational::from_integer(27.into())));
    let kernel = linalg::kernel_basis(&Rationals, &shifted);
    assert_eq!(kernel.len(), 2);
    // the first two coordinates are forced into the ratio 1 : 3
    for v in &kernel {
        assert_eq!(&v[1], &(&v[0] * Rational::from_integer(3.into())));
    }
    let dims = g1_data().brauer.dims();
    let perm = reference_permutation();
    let mut published_dims = vec![0; 3];
    for (ours, &theirs) in perm.iter().enumerate() {
        published_dims[theirs] = dims[ours];
    }
    assert_eq!(published_dims, vec![1, 3, 2]);
}

#[test]
fn recursion_and_closed_form() {
    let perm = reference_permutation();
    let c1 = published_c1();
    let b = published_b();
    assert_eq!(tower_cartan(&g1_data().cartan, b1(), 2).unwrap().permuted(&perm), published_c2());
    assert_eq!(tower_cartan(&g1_data().cartan, b1(), 3).unwrap().permuted(&perm), published_c3());
    for n in 1..=8u32 {
        let (closed, det) = sl2_closed_form(n).unwrap();
        let rec = tower_cartan(&c1, &b, n as u64).unwrap();
        assert_eq!(rec, closed, "n = {n}");
        assert_eq!(int_det(&rec), det);
        assert_eq!(det, BigInt::from(3).pow(7 * n - 5));
    }
}

#[test]
fn blocks_of_g2() {
    let data = g2_data();
    let blocks = data.blocks.simple_blocks();
    assert_eq!(blocks.len(), 2);
    // the principal block holds the trivial and the 3-dimensional simple
    assert_eq!(blocks[0], vec![0, 2]);
    assert_eq!(blocks[1], vec![1]);
    assert!(data.blocks.respects_zero_pattern(&data.cartan));
    assert!(data.blocks.respects_zero_pattern(b1()));
    let alpha = reduction_map(tower2().level(2).unwrap().clone(), tower2().level(1).unwrap().clone(), 3).unwrap();
    let g1 = g1_data();
    let pull = block_pullback(&alpha, &g1.brauer, &g1.blocks, &data.brauer, &data.blocks).unwrap();
    assert_eq!(pull, vec![0, 1, 0]);
}

#[test]
fn brauer_reciprocity() {
    for data in [g1_data(), g2_data()] {
        let d = &data.decomposition;
        let (k, l) = (d.num_ordinary(), d.num_simples());
        for s in 0..l {
            let ps = GrothendieckVector::unit(Basis::Projective, l, s);
            let eps = apply_e(&ps, d).unwrap();
            for chi in 0..k {
                let x = GrothendieckVector::unit(Basis::Ordinary, k, chi);
                assert_eq!(pairing(&ps, &apply_d(&x, d).unwrap()).unwrap(), pairing_ordinary(&eps, &x).unwrap());
            }
        }
    }
}

#[test]
fn simples_are_absolutely_irreducible() {
    for data in [g1_data(), g2_data()] {
        for s in data.brauer.simples() {
            assert_eq!(hom_dim(s, s).unwrap(), 1);
        }
        assert_eq!(data.brauer.len(), data.brauer.classes().len());
    }
}

#[test]
fn chop_cross_checks_b_columns() {
    let t = tower2();
    let x = t.section_module(1, f9()).unwrap();
    let bt = t.inflate_table(&g1_data().brauer, 2).unwrap();
    for (col, simple) in bt.simples().iter().enumerate() {
        let r = chop(&x.tensor(simple).unwrap(), 0).unwrap();
        assert_eq!(r.total_dim(), 27 * simple.dim());
        for (row, fp) in bt.fingerprints().iter().enumerate() {
            assert_eq!(BigInt::from(r.multiplicity(fp)), *b1().get(row, col), "B[{row}][{col}]");
        }
    }
}

#[test]
fn block_pullback_from_trivial_group() {
    let g1 = g1_data();
    let one = modrep::group::generate_group(&[modrep::group::ResidueMatrix::identity(3, 2)], 10).unwrap();
    let one = Arc::new(one);
    let to_one = modrep::group::QuotientMap::from_fn(g1.brauer.group().clone(), one.clone(), |m| {
        modrep::group::ResidueMatrix::identity(m.modulus(), 2)
    })
    .unwrap();
    let trivial = ModularData::compute(one, f9(), 0).unwrap();
    let pull = block_pullback(&to_one, &trivial.brauer, &trivial.blocks, &g1.brauer, &g1.blocks).unwrap();
    assert_eq!(pull, vec![g1.blocks.block_of_simple(0)]);
    assert_eq!(block_partition(&trivial.decomposition).len(), 1);
}
