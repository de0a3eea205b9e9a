use std::f64::consts::PI;

use num_traits::One;
use proptest::prelude::*;
use spherepack_core::exact::{rat, to_f64, RationalMatrix};
use spherepack_core::lattice::{
    construct_named, dual, enumerate_shells, enumerate_shells_with, packing_density, Lattice,
    NamedLattice, ShellOptions,
};

fn table(l: &Lattice, max: i64) -> Vec<(String, u64)> {
    enumerate_shells(l, &rat(max))
        .unwrap()
        .into_iter()
        .map(|s| (s.norm_sq.to_string(), s.count))
        .collect()
}

/// Product of elementary integer row operations, hence unimodular.
fn unimodular(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 1..8).prop_map(move |ops| {
        let mut m = RationalMatrix::identity(n);
        for (i, j, k, swap) in ops {
            if swap {
                m.swap_rows(i, j);
            } else if i != j {
                for c in 0..n {
                    let v = &m[(j, c)] * rat(k);
                    m[(i, c)] += v;
                }
            }
        }
        m
    })
}

const ALL_NAMED: [NamedLattice; 12] = [
    NamedLattice::Z(1),
    NamedLattice::Z(4),
    NamedLattice::A(1),
    NamedLattice::A(2),
    NamedLattice::A(3),
    NamedLattice::D(3),
    NamedLattice::D(4),
    NamedLattice::D(5),
    NamedLattice::E6,
    NamedLattice::E7,
    NamedLattice::E8,
    NamedLattice::Hexagonal,
];

#[test]
fn even_lattices_have_even_integral_grams() {
    for name in ALL_NAMED {
        let l = construct_named(name).unwrap();
        if l.is_even() {
            let g = l.gram();
            for i in 0..l.dim() {
                assert!(g[(i, i)].is_integer() && g[(i, i)].to_integer() % 2 == 0.into());
                for j in 0..l.dim() {
                    assert!(g[(i, j)].is_integer());
                }
            }
        }
    }
    for name in [NamedLattice::A(5), NamedLattice::D(6), NamedLattice::E6, NamedLattice::E7, NamedLattice::E8] {
        assert!(construct_named(name).unwrap().is_even(), "{name}");
    }
}

#[test]
fn dual_discriminants_are_reciprocal() {
    for name in ALL_NAMED {
        let l = construct_named(name).unwrap();
        assert!((l.discriminant() * dual(&l).unwrap().discriminant()).is_one(), "{name}");
    }
}

#[test]
fn a3_and_d3_have_the_same_shells() {
    let a3 = construct_named(NamedLattice::A(3)).unwrap();
    let d3 = construct_named(NamedLattice::D(3)).unwrap();
    assert_eq!(table(&a3, 16), table(&d3, 16));
}

#[test]
fn e8_is_self_dual_by_shells() {
    let e8 = construct_named(NamedLattice::E8).unwrap();
    assert_eq!(table(&e8, 10), table(&dual(&e8).unwrap(), 10));
}

#[test]
fn both_e8_presentations_agree() {
    let a = construct_named(NamedLattice::E8).unwrap();
    let b = construct_named(NamedLattice::E8FromD8).unwrap();
    assert_eq!(table(&a, 8), table(&b, 8));
    assert_eq!(b.discriminant(), &rat(1));
}

#[test]
fn e8_roots_split_into_integer_and_half_integer() {
    let e8 = construct_named(NamedLattice::E8).unwrap();
    let opts = ShellOptions { representatives: true, ..Default::default() };
    let shells = enumerate_shells_with(e8.gram(), &rat(2), &opts).unwrap();
    let reps = shells[1].representatives.as_ref().unwrap();
    let (mut integer, mut half) = (0, 0);
    for r in reps {
        let v = e8.to_ambient(r);
        if v.iter().all(|x| x.is_integer()) {
            integer += 2;
        } else {
            assert!(v.iter().all(|x| !x.is_integer()));
            half += 2;
        }
    }
    assert_eq!((integer, half), (112, 128));
}

#[test]
fn d3_density() {
    let d3 = construct_named(NamedLattice::D(3)).unwrap();
    let want = PI / 18f64.sqrt();
    assert!(((packing_density(&d3).unwrap() - want) / want).abs() < 1e-12);
}

#[test]
fn named_densities() {
    let cases = [
        (NamedLattice::Z(2), PI / 4.0),
        (NamedLattice::A(2), PI / (2.0 * 3f64.sqrt())),
        (NamedLattice::E8, PI.powi(4) / 384.0),
    ];
    for (name, want) in cases {
        let got = packing_density(&construct_named(name).unwrap()).unwrap();
        assert!(((got - want) / want).abs() < 1e-12, "{name}: {got} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shells_survive_unimodular_changes_small(
        which in 0usize..6,
        t in (1usize..=4).prop_flat_map(unimodular),
    ) {
        let names = [NamedLattice::Z(4), NamedLattice::A(4), NamedLattice::D(4), NamedLattice::A(3), NamedLattice::D(3), NamedLattice::A(2)];
        let l = construct_named(names[which]).unwrap();
        prop_assume!(t.rows() == l.dim());
        let m = l.change_basis(&t).unwrap();
        prop_assert_eq!(table(&l, 8), table(&m, 8));
    }

    #[test]
    fn shells_survive_unimodular_changes_e8(t in unimodular(8)) {
        let l = construct_named(NamedLattice::E8).unwrap();
        let m = l.change_basis(&t).unwrap();
        prop_assert_eq!(table(&l, 4), table(&m, 4));
    }

    #[test]
    fn shell_counts_are_even(which in 0usize..12) {
        let l = construct_named(ALL_NAMED[which]).unwrap();
        for s in enumerate_shells(&l, &rat(6)).unwrap().into_iter().skip(1) {
            prop_assert_eq!(s.count % 2, 0);
            prop_assert!(to_f64(&s.norm_sq) > 0.0);
        }
    }
}
