use lensstring::*;
use proptest::prelude::*;

/// `(n, m)` with `m | n`, the setting where exponents may be read mod `n`.
fn ring() -> impl Strategy<Value = (u32, u64)> {
    (2u32..=12).prop_flat_map(|n| {
        let divisors: Vec<u64> = (2..=n as u64)
            .filter(|d| (n as u64).is_multiple_of(*d))
            .collect();
        (Just(n), prop::sample::select(divisors))
    })
}

fn poly_in(n: u32, m: u64) -> impl Strategy<Value = CyclicPoly> {
    prop::collection::vec(0..m as i64, n as usize)
        .prop_map(move |c| CyclicPoly::new(n, m, c).unwrap())
}

fn poly_pair() -> impl Strategy<Value = (CyclicPoly, CyclicPoly)> {
    ring().prop_flat_map(|(n, m)| (poly_in(n, m), poly_in(n, m)))
}

fn lens_space(max_n: u32) -> impl Strategy<Value = LensPair> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let units: Vec<i64> = (1..n as i64)
                .filter(|&k| gcd(k as u64, n as u64) == 1)
                .collect();
            (Just(n), prop::sample::select(units))
        })
        .prop_map(|(n, k)| LensPair::new(n, k).unwrap())
}

fn space_and_component(max_n: u32) -> impl Strategy<Value = (LensPair, u32)> {
    lens_space(max_n).prop_flat_map(|s| (Just(s), 1..s.n()))
}

/// `Σ_{i ≠ 0, l} t^i t2^{l-i}`.
fn sigma(n: u32, l: u32, c: i64) -> BiForm {
    BiForm::from_terms(
        n,
        n as u64,
        (1..n as i64)
            .filter(|&i| i != l as i64)
            .map(|i| (i, l as i64 - i, c)),
    )
}

/// Every `v` with `u v = 1`, by enumeration.
fn brute_force_inverse(u: &CyclicPoly) -> Option<CyclicPoly> {
    let (n, m) = (u.n(), u.modulus());
    let total = (m as usize).pow(n);
    (0..total).find_map(|mut idx| {
        let coeffs: Vec<i64> = (0..n)
            .map(|_| {
                let c = (idx % m as usize) as i64;
                idx /= m as usize;
                c
            })
            .collect();
        let v = CyclicPoly::new(n, m, coeffs).unwrap();
        (poly_mul(u, &v).unwrap() == CyclicPoly::one(n, m)).then_some(v)
    })
}

proptest! {
    #[test]
    fn leibniz((u, v) in poly_pair()) {
        let lhs = de_rham(&poly_mul(&u, &v).unwrap());
        let rhs = de_rham(&u).mul_poly(&v).unwrap().add(&de_rham(&v).mul_poly(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_matches_enumeration(
        u in (2u32..=4, 2u64..=5).prop_flat_map(|(n, m)| poly_in(n, m))
    ) {
        match (invert_unit(&u), brute_force_inverse(&u)) {
            (Ok(inv), Some(expected)) => prop_assert_eq!(inv, expected),
            (Err(Error::NotInvertible(_)), None) => {}
            (got, expected) => prop_assert!(false, "{u}: {got:?} vs {expected:?}"),
        }
    }

    #[test]
    fn dlog_is_additive_on_units(
        (u, v) in poly_pair().prop_filter("units", |(u, v)| {
            invert_unit(u).is_ok() && invert_unit(v).is_ok()
        })
    ) {
        let uv = poly_mul(&u, &v).unwrap();
        let lhs = dennis_dlog(&uv).unwrap();
        let rhs = dennis_dlog(&u).unwrap().add(&dennis_dlog(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_commutes_with_de_rham(
        (p, s) in ring().prop_flat_map(|(n, m)| {
            let units: Vec<i64> = (1..n as i64).filter(|&s| gcd(s as u64, n as u64) == 1).collect();
            (poly_in(n, m), prop::sample::select(units))
        })
    ) {
        prop_assert_eq!(substitute_pushforward(&de_rham(&p), s).unwrap(), de_rham(&p.substitute(s)));
    }

    #[test]
    fn coproduct_is_homogeneous_and_symmetric((s, l) in space_and_component(24), m in 0i64..60) {
        let b = coproduct_rho(&s, RhoClass::new(l, m)).unwrap();
        for ((i, j), _) in b.terms() {
            prop_assert_eq!((i + j) % s.n(), l);
        }
        prop_assert_eq!(b.swap(), b);
    }

    #[test]
    fn m_shift_adds_kernel_direction((s, l) in space_and_component(24), m in 0i64..60) {
        let shifted = coproduct_rho(&s, RhoClass::new(l, m)).unwrap();
        let base = coproduct_rho(&s, RhoClass::new(l, 0)).unwrap();
        let c = m * s.r() as i64;
        prop_assert_eq!(shifted, base.add(&sigma(s.n(), l, c)).unwrap());
    }

    #[test]
    fn kernel_coproduct_is_linear_in_n_l((s, l) in space_and_component(24), n_l in 0i64..40) {
        let got = k_family_coproduct(&s, l as i64, n_l).unwrap();
        let c = s.r() as i64 * (n_l - 1) * l as i64;
        prop_assert_eq!(got, sigma(s.n(), l, c));
    }

    #[test]
    fn cobracket_values_are_antisymmetric((s, l) in space_and_component(24), m in 0i64..30) {
        prop_assert!(cobracket_pi_y(&s, l as i64, m).unwrap().is_antisymmetric());
        prop_assert!(cobracket_k_family(&s, l as i64).unwrap().is_antisymmetric());
    }

    #[test]
    fn bialgebra_rhs_is_bilinear(
        (s, lx, ly) in lens_space(24).prop_flat_map(|s| (Just(s), 1..s.n(), 1..s.n())),
        a in -5i64..5,
        b in -5i64..5,
    ) {
        let x = EqClass::pi_y(&s, lx as i64, 0).unwrap();
        let y = EqClass::pi_y(&s, ly as i64, 0).unwrap();
        let cx = cobracket_pi_y(&s, lx as i64, 0).unwrap();
        let cy = cobracket_pi_y(&s, ly as i64, 0).unwrap();
        let scaled = |p: &EqTensorPair, c: i64| EqTensorPair { left: p.left.scale(c), swapped: p.swapped.scale(c) };
        let base_x = bialgebra_rhs_from(&s, &x, &y, &cx, &EqTensorPair::antisymmetrize(EqTensor::zero(s.n()))).unwrap();
        let base_y = bialgebra_rhs_from(&s, &x, &y, &EqTensorPair::antisymmetrize(EqTensor::zero(s.n())), &cy).unwrap();
        let combined = bialgebra_rhs_from(&s, &x, &y, &scaled(&cx, a), &scaled(&cy, b)).unwrap();
        prop_assert_eq!(combined, base_x.scale(a).add(&base_y.scale(b)));
        prop_assert!(bialgebra_lhs(&s, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn ad_kills_torsion_classes((s, l) in space_and_component(24)) {
        let x = EqClass::pi_y(&s, l as i64, 0).unwrap();
        for p in 1..s.n() as i64 {
            if let Ok(a) = EqClass::alpha(&s, p) {
                prop_assert!(ad_apply(&s, &x, &a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn json_round_trips((s, l) in space_and_component(24), m in 0i64..20) {
        let b = coproduct_rho(&s, RhoClass::new(l, m)).unwrap();
        let back: BiForm = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        prop_assert_eq!(back, b);
        let pair = cobracket_pi_y(&s, l as i64, m).unwrap();
        let back: EqTensorPair = serde_json::from_str(&serde_json::to_string(&pair).unwrap()).unwrap();
        prop_assert_eq!(back, pair);
    }

    #[test]
    fn poly_json_round_trips(p in ring().prop_flat_map(|(n, m)| poly_in(n, m))) {
        let back: CyclicPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn classification_relations_up_to_thirty() {
    for n in 2..=30u32 {
        let units: Vec<i64> = (1..n as i64)
            .filter(|&k| gcd(k as u64, n as u64) == 1)
            .collect();
        for &k in &units {
            assert!(homotopy_equivalent(n, k, k).unwrap());
            assert!(homeomorphic(n, k, k).unwrap());
            for &k2 in &units {
                let he = homotopy_equivalent(n, k, k2).unwrap();
                let ho = homeomorphic(n, k, k2).unwrap();
                assert_eq!(he, homotopy_equivalent(n, k2, k).unwrap());
                assert_eq!(ho, homeomorphic(n, k2, k).unwrap());
                assert!(!ho || he, "n={n} k={k} k2={k2}");
            }
        }
    }
}

#[test]
fn search_is_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search_smallest(16, Convention::GeneratorSum).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn trivial_torsion_leaves_cobrackets_unchanged() {
    for n in [5u32, 9, 12] {
        for k in 1..n as i64 {
            let Ok(s) = LensPair::new(n, k) else { continue };
            let f = LensMap::identity(s);
            for l in 1..n as i64 {
                let r = transform_check(&f, l).unwrap();
                assert!(r.correction.is_zero() && r.agrees);
            }
        }
    }
}
