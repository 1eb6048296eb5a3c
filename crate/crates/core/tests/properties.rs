use incidence_operad::deform::{
    from_witt, gauge_equivalent, random_mc, random_witt, to_witt, witt_coboundary, Gauge,
};
use incidence_operad::gsiso::GsMap;
use incidence_operad::hochschild::{hh_dims, HochschildComplex};
use incidence_operad::numkit::{frac, Rat, TruncSeries, WittElem};
use incidence_operad::opcore::{brace, circle, GradedElem};
use incidence_operad::poset::{samples, ChainMode, Nerve, Poset};
use incidence_operad::simplicial::{
    cohomology_representatives, simp_cohomology_dims, SimplicialOperad,
};
use incidence_operad::suites::{random_elem, rng_for};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn witt(order: usize) -> impl Strategy<Value = WittElem> {
    proptest::collection::vec(small_rat(), order)
        .prop_map(move |tail| WittElem::from_tail(order, tail))
}

fn witt_pair() -> impl Strategy<Value = (WittElem, WittElem)> {
    (1usize..=6).prop_flat_map(|n| (witt(n), witt(n)))
}

/// Random posets on up to five elements: relations only go from lower to
/// higher index, so the closure is always antisymmetric.
fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, bits)| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((labels[i].clone(), labels[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(&labels, &pairs)
                .unwrap()
                .with_name("random")
        })
}

fn named_poset() -> impl Strategy<Value = Poset> {
    prop_oneof![
        Just(samples::chain(3)),
        Just(samples::diamond()),
        Just(samples::crown4()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_is_a_homomorphism((a, b) in witt_pair()) {
        let lhs = a.mul(&b).unwrap().log();
        let rhs = a.log().add(&b.log()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_inverts_log(a in (1usize..=6).prop_flat_map(witt)) {
        prop_assert_eq!(WittElem::exp(&a.log()).unwrap(), a);
    }

    #[test]
    fn witt_group_laws((a, b) in witt_pair()) {
        let one = WittElem::one(a.order());
        prop_assert_eq!(a.mul(&a.inv()).unwrap(), one.clone());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        let ab = a.value().mul(b.value()).unwrap();
        prop_assert_eq!(ab.coeff(0), &Rat::from_integer(1.into()));
    }

    #[test]
    fn series_exp_is_additive_to_multiplicative(
        (x, y) in (1usize..=6).prop_flat_map(|n| {
            let tail = move || proptest::collection::vec(small_rat(), n)
                .prop_map(move |c| TruncSeries::from_coeffs(n, std::iter::once(Rat::from_integer(0.into())).chain(c)));
            (tail(), tail())
        })
    ) {
        let lhs = x.add(&y).unwrap().exp().unwrap();
        let rhs = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_characteristic_matches_betti(p in random_poset()) {
        let nerve = Nerve::new(p.clone());
        let top = p.len() - 1;
        let betti = simp_cohomology_dims(&nerve, top, ChainMode::Strict);
        let weak = simp_cohomology_dims(&nerve, top.min(2), ChainMode::Weak);
        prop_assert_eq!(&betti[..weak.len()], &weak[..]);
        let chains: i64 = (0..=top)
            .map(|n| (if n % 2 == 0 { 1 } else { -1 }) * p.chains(n, ChainMode::Strict).len() as i64)
            .sum();
        let euler: i64 = betti.iter().enumerate()
            .map(|(n, &b)| (if n % 2 == 0 { 1 } else { -1 }) * b as i64)
            .sum();
        prop_assert_eq!(chains, euler);
    }

    #[test]
    fn relative_hochschild_matches_simplicial_in_low_degree(p in random_poset()) {
        let simp = simp_cohomology_dims(&Nerve::new(p.clone()), 1, ChainMode::Weak);
        let rel = hh_dims(&p, 1, HochschildComplex::Relative).unwrap();
        prop_assert_eq!(simp, rel);
    }

    #[test]
    fn phi_is_a_linear_bijection(p in named_poset(), degree in 0usize..=3, seed in any::<u64>()) {
        let map = GsMap::new(&p);
        let mut rng = rng_for(seed, 0);
        let f = random_elem(&map.simplicial, degree, &mut rng);
        let g = random_elem(&map.simplicial, degree, &mut rng);
        let h = random_elem(&map.relative, degree, &mut rng);
        prop_assert_eq!(map.phi_inv(&map.phi(&f)), f.clone());
        prop_assert_eq!(map.phi(&map.phi_inv(&h)), h);
        prop_assert_eq!(map.phi(&(&f + &g)), &map.phi(&f) + &map.phi(&g));
        prop_assert_eq!(map.phi(&f).arity(), degree);
    }

    #[test]
    fn empty_brace_and_circle_linearity(p in named_poset(), seed in any::<u64>()) {
        let op = SimplicialOperad::new(p);
        let mut rng = rng_for(seed, 1);
        let f = random_elem(&op, 2, &mut rng);
        let g = random_elem(&op, 1, &mut rng);
        let h = random_elem(&op, 1, &mut rng);
        prop_assert_eq!(brace(&op, &f, &[]).unwrap(), f.clone());
        let lhs = circle(&op, &f, &(&g + &h)).unwrap();
        let rhs = &circle(&op, &f, &g).unwrap() + &circle(&op, &f, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(circle(&op, &GradedElem::zero(0), &GradedElem::zero(0)).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gauge_equivalence_is_an_equivalence_relation(order in 1usize..=2, seed in any::<u64>()) {
        let op = SimplicialOperad::new(samples::boundary_simplex(3));
        let nerve = op.nerve();
        let classes = cohomology_representatives(&op, 2);
        let mut rng = rng_for(seed, 2);
        let e1 = random_mc(&op, &classes, order, &mut rng);
        let twist = |w: &incidence_operad::deform::WittCochain, rng: &mut _| {
            let phi = random_witt(nerve, 1, order, rng);
            from_witt(&witt_coboundary(nerve, &phi).unwrap().mul(w).unwrap()).unwrap()
        };
        let e2 = twist(&to_witt(nerve, &e1), &mut rng);
        let e3 = twist(&to_witt(nerve, &e2), &mut rng);

        let witness = |a, b| match gauge_equivalent(&op, a, b).unwrap() {
            Gauge::Equivalent(w) => w,
            Gauge::NotEquivalent => panic!("twisted elements must be equivalent"),
        };
        let w11 = witness(&e1, &e1);
        prop_assert!(witt_coboundary(nerve, &w11).unwrap().is_one());
        let w12 = witness(&e1, &e2);
        let w21 = witness(&e2, &e1);
        prop_assert!(witt_coboundary(nerve, &w12.mul(&w21).unwrap()).unwrap().is_one());
        let w23 = witness(&e2, &e3);
        let composed = w12.mul(&w23).unwrap();
        let lhs = witt_coboundary(nerve, &composed).unwrap().mul(&to_witt(nerve, &e3)).unwrap();
        prop_assert_eq!(lhs, to_witt(nerve, &e1));
        let _ = witness(&e1, &e3);
    }
}
