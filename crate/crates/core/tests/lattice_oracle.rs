mod common;

use common::{box_points, lattice, lattice_oracle_run, rank, BoxLattice};
use mackey::intlat::{internal_direct_sum, lattice_intersect, lattice_sum};

#[test]
fn random_instances_agree_with_point_enumeration() {
    for seed in [1, 2] {
        let failures = lattice_oracle_run(seed, 300);
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }
}

#[test]
fn oracle_sanity() {
    let o = BoxLattice::generated(1, 9, &[vec![4], vec![6]]);
    let got: Vec<i64> = box_points(1, 9)
        .into_iter()
        .filter(|p| o.contains(p))
        .map(|p| p[0])
        .collect();
    assert_eq!(got, [-8, -6, -4, -2, 0, 2, 4, 6, 8]);
    let o = BoxLattice::generated(2, 9, &[vec![5, 5], vec![4, 5]]);
    assert!(o.contains(&[1, 0]));
    assert!(!o.contains(&[0, 1]));
    assert!(o.contains(&[0, 5]));
    assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]), 2);
    assert_eq!(rank(&[]), 0);
}

#[test]
fn small_examples() {
    let (a, b) = (lattice(1, &[vec![4]]), lattice(1, &[vec![6]]));
    assert_eq!(lattice_sum(&a, &b).unwrap().to_string(), "2Z");
    assert_eq!(lattice_intersect(&a, &b).unwrap().to_string(), "12Z");
    let v = internal_direct_sum(
        &[lattice(1, &[vec![3]]), lattice(1, &[vec![6]])],
        &lattice(1, &[vec![3]]),
    )
    .unwrap();
    assert!(v.sum_equal);
    assert!(!v.direct);
    let v = internal_direct_sum(
        &[lattice(2, &[vec![1, 0]]), lattice(2, &[vec![0, 1]])],
        &lattice(2, &[vec![1, 0], vec![0, 1]]),
    )
    .unwrap();
    assert!(v.sum_equal && v.direct);
}
