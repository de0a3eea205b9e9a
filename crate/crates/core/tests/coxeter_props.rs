use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use spherepack_core::coxeter::{
    coxeter_element, coxeter_matrix_element, cyclotomic_poly, eta_realization, floor_toward_zero,
    matrix_order, reflect, reflection_matrix, simple_root_coordinates, CyclotomicInt, RootSystem,
};
use spherepack_core::exact::{rat, RationalMatrix};

fn halve(r: &[i64; 8]) -> Vec<BigRational> {
    RootSystem::root_rational(r)
}

#[test]
fn simple_reflections_permute_the_roots() {
    let rs = RootSystem::e8();
    let roots: Vec<Vec<BigRational>> = rs.roots().iter().map(halve).collect();
    for s in rs.simple_roots() {
        let a = halve(s);
        for r in &roots {
            assert!(roots.contains(&reflect(&a, r).unwrap()));
        }
        let m = reflection_matrix(&a).unwrap();
        assert_eq!(m.mul(&m).unwrap(), RationalMatrix::identity(8));
    }
}

#[test]
fn roots_split_into_positive_and_negative() {
    let rs = RootSystem::e8();
    let (mut pos, mut neg) = (0, 0);
    for r in rs.roots() {
        let c = simple_root_coordinates(&halve(r)).unwrap();
        assert!(c.iter().all(|x| x.is_integer()));
        if c.iter().all(|x| !x.is_negative()) {
            pos += 1;
        } else {
            assert!(c.iter().all(|x| !x.is_positive()));
            neg += 1;
        }
    }
    assert_eq!((pos, neg), (120, 120));
}

#[test]
fn coxeter_element_has_order_thirty() {
    let c = coxeter_element().unwrap();
    assert_eq!(matrix_order(&c.matrix, 100).unwrap(), 30);
    assert_eq!(c.char_poly, cyclotomic_poly(30).unwrap().into_iter().rev().collect::<Vec<_>>());
}

#[test]
fn matrix_elements_are_rounded_cosines() {
    let rs = RootSystem::e8();
    let c = coxeter_element().unwrap();
    let v = halve(&rs.simple_roots()[4]);
    let mut w = vec![rat(0); 8];
    w[7] = rat(2);
    for (vec, scale) in [(&v, 2.0), (&w, 4.0)] {
        let got = coxeter_matrix_element(&c, vec, vec).unwrap();
        for (i, g) in got.iter().enumerate() {
            let want = floor_toward_zero(scale * (PI * i as f64 / 15.0).cos());
            assert_eq!(g, &rat(want), "scale {scale}, power {i}");
        }
    }
}

#[test]
fn every_eta_realization_is_e8() {
    for m in [20, 24, 30] {
        for scale in [2, 4] {
            let e = eta_realization(m, scale).unwrap();
            assert!(e.verification.passed(), "m={m} scale={scale}: {:?}", e.verification);
            assert_eq!(e.verification.root_count, 240);
        }
    }
}

#[test]
fn cyclotomic_degrees() {
    // deg Ψ_m = φ(m)
    for m in 1..200usize {
        let phi = (1..=m).filter(|k| num_integer::gcd(*k, m) == 1).count();
        assert_eq!(cyclotomic_poly(m).unwrap().len() - 1, phi, "{m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_by_zeta_is_an_isometry(
        which in 0usize..6,
        a in prop::array::uniform8(-3i64..=3),
        b in prop::array::uniform8(-3i64..=3),
    ) {
        let (m, scale) = [(20, 2), (20, 4), (24, 2), (24, 4), (30, 2), (30, 4)][which];
        let e = eta_realization(m, scale).unwrap();
        let x = CyclotomicInt::new(m, a).unwrap();
        let y = CyclotomicInt::new(m, b).unwrap();
        prop_assert_eq!(x.mul_zeta().inner(&y.mul_zeta(), &e.gram), x.inner(&y, &e.gram));
        let mut z = x.clone();
        for _ in 0..m {
            z = z.mul_zeta();
        }
        prop_assert_eq!(z, x);
    }

    #[test]
    fn coxeter_element_is_an_isometry(i in 0usize..240, j in 0usize..240) {
        let rs = RootSystem::e8();
        let c = coxeter_element().unwrap();
        let (u, v) = (halve(&rs.roots()[i]), halve(&rs.roots()[j]));
        let apply = |x: &[BigRational]| -> Vec<BigRational> {
            (0..8).map(|r| (0..8).map(|k| &c.matrix[(r, k)] * &x[k]).fold(BigRational::zero(), |s, t| s + t)).collect()
        };
        let dot = |x: &[BigRational], y: &[BigRational]| -> BigRational {
            x.iter().zip(y).map(|(p, q)| p * q).fold(BigRational::zero(), |s, t| s + t)
        };
        prop_assert_eq!(dot(&apply(&u), &apply(&v)), dot(&u, &v));
    }
}
