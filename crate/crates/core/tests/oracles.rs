mod common;

use cuspforge_core::arith::{delta_d, divisors, subgroup_generated, units, DeltaSubgroup};
use cuspforge_core::cusps::{atlas, width_and_stabilizer_sign};
use cuspforge_core::genus::{g0, genus_delta};
use cuspforge_core::{GroupTag, Level};

fn lv(n: u64) -> Level {
    Level::new(n).unwrap()
}

fn residues(delta: &DeltaSubgroup) -> Vec<u64> {
    let n = delta.level().get();
    delta.elements().iter().map(|&a| a % n).collect()
}

fn assert_matches_oracle(level: Level, delta: &DeltaSubgroup) {
    let ours = genus_delta(level, delta).unwrap();
    let oracle = common::genus_by_cosets(level.get(), &residues(delta));
    let n = level.get();
    assert_eq!(ours.mu, (oracle.mu as i64).into(), "mu at N={n} {:?}", delta.elements());
    assert_eq!(ours.nu2, (oracle.nu2 as i64).into(), "nu2 at N={n}");
    assert_eq!(ours.nu3, (oracle.nu3 as i64).into(), "nu3 at N={n}");
    assert_eq!(ours.nu_inf, (oracle.nu_inf as i64).into(), "nu_inf at N={n}");
    assert_eq!(ours.g as i64, oracle.g, "g at N={n}");
}

#[test]
fn genus_of_intermediate_curves_matches_cosets() {
    for n in 2..=60u64 {
        let level = lv(n);
        for u in units(level) {
            assert_matches_oracle(level, &subgroup_generated(level, &[u as i64]).unwrap());
        }
        for d in divisors(n) {
            assert_matches_oracle(level, &delta_d(level, d).unwrap());
        }
    }
}

#[test]
fn g0_matches_cosets() {
    for n in 1..=150u64 {
        assert_eq!(g0(lv(n)) as i64, common::g0_oracle(n), "N={n}");
    }
    for (n, g) in [(27, 1), (32, 1), (36, 1), (44, 4), (64, 3), (81, 4)] {
        assert_eq!(g0(lv(n)), g, "N={n}");
    }
}

#[test]
fn widths_sum_to_the_index() {
    for n in 2..=100u64 {
        let level = lv(n);
        let mut groups = vec![
            (GroupTag::Gamma1, DeltaSubgroup::plus_minus_one(level)),
            (GroupTag::Gamma0, DeltaSubgroup::full(level)),
        ];
        for d in divisors(n) {
            let dd = delta_d(level, d).unwrap();
            groups.push((GroupTag::delta(level, dd.clone()).unwrap(), dd));
        }
        for (group, delta) in groups {
            let oracle = common::genus_by_cosets(n, &residues(&delta));
            let cusps = atlas(level, &group);
            assert_eq!(cusps.len() as u64, oracle.nu_inf, "cusp count N={n} {}", group.name());
            let total: u64 = cusps
                .cusps()
                .iter()
                .map(|c| width_and_stabilizer_sign(level, &group, c).unwrap().0)
                .sum();
            assert_eq!(total, oracle.mu, "sum of widths N={n} {}", group.name());
        }
    }
}
