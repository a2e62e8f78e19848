use std::sync::Arc;

use modrep::arith::make_field;
use modrep::characters::BrauerCharacterTable;
use modrep::group::DEFAULT_CAP;
use modrep::tower::build_tower;

#[test]
fn p_power_map_and_equal_b_matrices() {
    let t = build_tower(3, 3, DEFAULT_CAP).unwrap();
    assert_eq!(t.level(3).unwrap().order(), 17496);
    let witness = t.verify_uniform(1).unwrap();
    assert_eq!(witness.len(), 27);

    let f9 = Arc::new(make_field(3, 2, None).unwrap());
    let base = BrauerCharacterTable::compute(t.level(1).unwrap().clone(), f9, 0).unwrap();
    let b12 = t.b_matrix(1, &t.inflate_table(&base, 2).unwrap()).unwrap();
    let b23 = t.b_matrix(2, &t.inflate_table(&base, 3).unwrap()).unwrap();
    assert_eq!(b12, b23);
}

#[test]
fn sl2_mod_2_is_not_uniform_at_the_bottom() {
    // SL₂(ℤ₂) is not uniform at level 1: its first congruence kernel is not powerful
    let t = build_tower(2, 3, DEFAULT_CAP).unwrap();
    assert!(t.verify_uniform(1).is_err());
}
