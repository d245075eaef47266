mod common;

use common::{brute_force_subgroups, group_oracle_run, table, TEST_GROUPS};

#[test]
fn subgroups_cosets_and_index_sums() {
    for spec in TEST_GROUPS.iter().chain(&["C4", "C8", "D3", "A4", "D6"]) {
        let failures = group_oracle_run(spec);
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }
}

#[test]
fn subgroup_counts() {
    for (spec, count) in [
        ("C1", 1),
        ("C2", 2),
        ("C6", 4),
        ("S3", 6),
        ("D4", 10),
        ("Q8", 6),
        ("C8", 4),
    ] {
        let t = table(spec);
        assert_eq!(t.len(), count, "{spec}");
        assert_eq!(brute_force_subgroups(t.group()).len(), count, "{spec}");
    }
    assert_eq!(table("A4").len(), 10);
    assert_eq!(table("S4").len(), 30);
}
