//! Property tests across the algebraic modules.

mod common;

use common::*;
use diffalg::basefield::{
    antiderivative_in_field, rf_derive, smallest_exponential_index, Poly, RatFunc, Rational,
};
use diffalg::cli::parse::{parse_diffpoly, parse_ratfunc};
use diffalg::cli::print;
use diffalg::diffpoly::{dp_derive, dp_order, in_general_ideal, is_reduced, ritt_reduce, DerivVar, DiffPoly, Irreducibility, Monomial};
use diffalg::galois::{
    antiderivative_extension_operator, classify_antiderivative_extension, classify_exponential_extension,
    descriptor_dimension, descriptor_trdeg, no_smaller_index, GaloisDescriptor,
};
use diffalg::matgroup::{
    catalog_group, descriptor_to_matrix_group, gl_invariance_trials, group_closure_sample_check, group_contains,
    identity_component_dimension, random_invertible, random_member, GroupLabel,
};
use diffalg::odeseries::{fundamental_system_series, ode_residual, series_expand, series_wronskian, TruncatedSeries};
use diffalg::par::Exec;
use diffalg::wronskian::{
    apply_constant_matrix, dependence_certificate, ode_from_fundamental_system, wronskian, FundamentalSystem,
    LinearODE,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(4), poly_strategy(3).prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(|(n, d)| RatFunc::normalize(n, d).unwrap())
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn constant_matrix<R: Rng>(g: &mut R, n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..n).map(|_| q(rand_coeff(g, 5))).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rf_derive_is_a_derivation(f in ratfunc_strategy(), g in ratfunc_strategy()) {
        prop_assert_eq!(rf_derive(&f.mul(&g)), f.mul(&rf_derive(&g)).add(&g.mul(&rf_derive(&f))));
        prop_assert_eq!(rf_derive(&f.add(&g)), rf_derive(&f).add(&rf_derive(&g)));
    }

    #[test]
    fn constants_are_exactly_rationals(f in ratfunc_strategy(), c in rational_strategy()) {
        prop_assert!(rf_derive(&RatFunc::constant(c.clone())).is_zero());
        prop_assert!(rf_derive(&RatFunc::constant(c).in_rational_functions()).is_zero());
        if rf_derive(&f).is_zero() {
            prop_assert!(f.num().degree().unwrap_or(0) == 0 && f.den().degree() == Some(0));
        }
    }

    #[test]
    fn antiderivatives_differentiate_back(f in ratfunc_strategy(), a in ratfunc_strategy()) {
        // derivatives always have an antiderivative in K
        let fp = rf_derive(&f);
        let b = antiderivative_in_field(&fp).expect("a derivative is integrable in K");
        prop_assert_eq!(rf_derive(&b), fp.clone());
        prop_assert!(b.sub(&f).is_constant());
        if let Some(b) = antiderivative_in_field(&a) {
            prop_assert_eq!(rf_derive(&b), a);
        }
    }

    #[test]
    fn derivatives_classify_trivially(f in ratfunc_strategy()) {
        let fp = rf_derive(&f);
        match classify_antiderivative_extension(&fp) {
            GaloisDescriptor::Trivial { witness } => prop_assert_eq!(rf_derive(&witness), fp),
            other => prop_assert!(false, "derivative classified as {:?}", other),
        }
    }

    #[test]
    fn exponential_index_matches_residue_oracle(
        poles in prop::collection::btree_set(-4i64..=4, 1..=3),
        residues in prop::collection::vec((-6i64..=6, 1i64..=4), 3),
    ) {
        let mut a = RatFunc::from_int(0).in_rational_functions();
        for (alpha, (rn, rd)) in poles.iter().zip(&residues) {
            let lin = RatFunc::from_poly(Poly::from_ints(&[-alpha, 1]));
            a = a.add(&lin.recip().unwrap().scale(&Rational::new((*rn).into(), (*rd).into())));
        }
        let oracle = exponential_index_oracle(&a);
        let got = smallest_exponential_index(&a);
        if a.is_zero() {
            prop_assert_eq!(got.map(|(n, _)| n), Some(1));
        } else {
            let (n, beta) = got.clone().expect("simple rational poles always give an index");
            let (on, obeta) = oracle.expect("oracle applies");
            prop_assert_eq!(n, on);
            prop_assert!(beta.div(&obeta).unwrap().is_constant());
            prop_assert_eq!(rf_derive(&beta), a.mul(&beta).scale(&q(n as i64)));
            prop_assert!(no_smaller_index(&a, n));
            let d = classify_exponential_extension(&a);
            match (&d, n) {
                (GaloisDescriptor::Trivial { witness }, 1) => prop_assert_eq!(rf_derive(witness), a.mul(witness)),
                (GaloisDescriptor::CyclicOfOrder { n: dn, beta: db }, _) => {
                    prop_assert_eq!(*dn, n);
                    prop_assert_eq!(rf_derive(db), a.mul(db).scale(&q(n as i64)));
                }
                _ => prop_assert!(false, "unexpected {:?}", d),
            }
            prop_assert_eq!(descriptor_dimension(&d), descriptor_trdeg(&d));
        }
    }

    #[test]
    fn cyclic_witnesses_on_random_input(a in ratfunc_strategy()) {
        let d = classify_exponential_extension(&a);
        if let GaloisDescriptor::CyclicOfOrder { n, beta } = &d {
            prop_assert_eq!(rf_derive(beta), a.mul(beta).scale(&q(*n as i64)));
            prop_assert!(no_smaller_index(&a, *n));
        }
        prop_assert_eq!(descriptor_dimension(&d), descriptor_trdeg(&d));
        let di = classify_antiderivative_extension(&a);
        prop_assert_eq!(descriptor_dimension(&di), descriptor_trdeg(&di));
        prop_assert_eq!(
            identity_component_dimension(&descriptor_to_matrix_group(&d)).unwrap(),
            descriptor_dimension(&d)
        );
    }

    #[test]
    fn ratfunc_round_trip(f in ratfunc_strategy()) {
        prop_assert_eq!(parse_ratfunc(&print::ratfunc(&f)).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_derive_is_a_derivation(seed in any::<u64>()) {
        let mut g = rng(seed);
        let m = g.gen_range(1..=2);
        let p = rand_diffpoly(&mut g, m, 2, 2, 3);
        let r = rand_diffpoly(&mut g, m, 2, 2, 3);
        prop_assert_eq!(dp_derive(&p.mul(&r)), p.mul(&dp_derive(&r)).add(&dp_derive(&p).mul(&r)));
        prop_assert_eq!(dp_derive(&p.add(&r)), dp_derive(&p).add(&dp_derive(&r)));
    }

    #[test]
    fn derivative_raises_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p = rand_diffpoly(&mut g, 2, 3, 2, 3);
        for i in 0..2 {
            if let Some(o) = dp_order(&p, i).filter(|&o| o >= 0) {
                prop_assert_eq!(dp_order(&p.derive(), i), Some(o + 1));
            }
        }
    }

    #[test]
    fn reduction_certificate_and_separant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p = loop {
            let p = rand_diffpoly(&mut g, 1, 2, 3, 3);
            if p.order(0).is_some_and(|o| o >= 0) {
                break p;
            }
        };
        let order = p.order(0).unwrap() as usize;
        let qq = rand_diffpoly(&mut g, 1, order + 1, 2, 3);
        let red = ritt_reduce(&qq, &p, 0).unwrap();
        prop_assert_eq!(red.expand(&qq, &p, 0).unwrap(), red.remainder.clone());
        prop_assert!(red.verify(&qq, &p, 0).unwrap());
        prop_assert!(is_reduced(&red.remainder, &p, 0).unwrap());

        // a polynomial never divides its separant
        let s = p.separant(0).unwrap();
        let leader = p.leader(0).unwrap();
        prop_assert!(!s.is_zero());
        prop_assert!(s.degree_in(leader) < p.degree_in(leader));
        if p.irreducibility(0) == Irreducibility::Irreducible {
            prop_assert!(!in_general_ideal(&s, &p, 0).unwrap());
        }
        // the ideal contains P and its derivatives
        prop_assert!(in_general_ideal(&p.derive(), &p, 0).unwrap());
    }

    #[test]
    fn diffpoly_round_trip(seed in any::<u64>()) {
        let mut g = rng(seed);
        let m = g.gen_range(1..=3);
        let p = rand_diffpoly(&mut g, m, 4, 3, 4);
        prop_assert_eq!(parse_diffpoly(&print::diffpoly(&p)).unwrap().with_indeterminates(m), p);
    }

    #[test]
    fn transform_law_and_special_linear_bridge(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let u: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 3, 2, 9)).collect();
        let c = constant_matrix(&mut g, n);
        let wu = wronskian(&u).unwrap();
        let wcu = wronskian(&apply_constant_matrix(&u, &c).unwrap()).unwrap();
        prop_assert_eq!(wcu.clone(), wu.scale(&det_rational(&c)));
        if !wu.is_zero() {
            let sl = catalog_group(GroupLabel::SpecialLinear, n).unwrap();
            let member = group_contains(&sl, &diffalg::matgroup::ConstMatrix::new(c).unwrap()).unwrap();
            prop_assert_eq!(member, wcu == wu);
        }
        // scaling one element scales the Wronskian
        let lambda = q(rand_coeff(&mut g, 7));
        let mut scaled = u.clone();
        scaled[0] = scaled[0].scale(&lambda);
        prop_assert_eq!(wronskian(&scaled).unwrap(), wu.scale(&lambda));
    }

    #[test]
    fn wronskian_vanishes_iff_dependent(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let mut fs: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 4, 2, 9)).collect();
        if g.gen_bool(0.5) {
            let mut comb = RatFunc::from_int(0).in_rational_functions();
            for f in &fs[..n - 1] {
                comb = comb.add(&f.scale(&q(rand_coeff(&mut g, 3))));
            }
            fs[n - 1] = comb;
        }
        // oracle: clear denominators, then rank of the coefficient matrix
        let common = fs.iter().fold(Poly::one(), |acc, f| {
            let gcd = acc.gcd(f.den());
            (&acc * f.den()).exact_div(&gcd)
        });
        let polys: Vec<Poly> = fs.iter().map(|f| f.num() * &common.exact_div(f.den())).collect();
        let dependent = rank(coefficient_rows(&polys)) < n;
        prop_assert_eq!(wronskian(&fs).unwrap().is_zero(), dependent);
        match dependence_certificate(&fs) {
            Some(c) => {
                prop_assert!(dependent);
                let first = c.iter().find(|x| !x.is_zero()).cloned();
                prop_assert_eq!(first, Some(Rational::one()));
                let sum = fs.iter().zip(&c).fold(RatFunc::from_int(0), |acc, (f, ci)| acc.add(&f.scale(ci)));
                prop_assert!(sum.is_zero());
            }
            None => prop_assert!(!dependent),
        }
    }

    #[test]
    fn ode_from_fundamental_system_annihilates(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let u: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 3, 1, 6)).collect();
        let Ok(fs) = FundamentalSystem::new(u.clone()) else { return Ok(()) };
        let ode = ode_from_fundamental_system(&fs).unwrap();
        for ui in &u {
            prop_assert!(ode.apply(ui).is_zero());
        }
        let c = random_invertible(n, &mut g);
        for v in apply_constant_matrix(&u, c.entries()).unwrap() {
            prop_assert!(ode.apply(&v).is_zero());
        }
    }

    #[test]
    fn series_solutions_and_abel(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let t0 = q(g.gen_range(-3..=3));
        let coeffs: Vec<RatFunc> = (0..n).map(|_| rand_ratfunc(&mut g, 3, 2, 5)).collect();
        prop_assume!(coeffs.iter().all(|a| !a.den().eval(&t0).is_zero()));
        let precision = 12;
        let ode = LinearODE::new(coeffs.clone()).unwrap();
        let sols = fundamental_system_series(&ode, &t0, precision).unwrap();
        for s in &sols {
            prop_assert!(ode_residual(&ode, s).unwrap().is_zero());
        }
        let w = series_wronskian(&sols).unwrap();
        prop_assert!(w.coeff(0).is_one());
        // W' = −a₁·W through the precision of W'
        let dw = w.derive().unwrap();
        let a1 = series_expand(&coeffs[0], &t0, precision).unwrap();
        let rhs = a1.mul(&w).neg().truncate(dw.precision());
        prop_assert_eq!(dw, rhs);
    }

    #[test]
    fn additive_case_series_cross_check(seed in any::<u64>()) {
        let mut g = rng(seed);
        // a = c/(t − α) + f′ with c ≠ 0 has no antiderivative in K
        let alpha = g.gen_range(-3i64..=3);
        let c = q(g.gen_range(1..=5));
        let f = rand_ratfunc(&mut g, 2, 1, 4);
        let a = RatFunc::from_poly(Poly::from_ints(&[-alpha, 1])).recip().unwrap().scale(&c).add(&f.derive());
        prop_assert_eq!(classify_antiderivative_extension(&a), GaloisDescriptor::AdditiveGroup);
        let t0 = q(g.gen_range(-6..=6));
        prop_assume!(!a.den().eval(&t0).is_zero() && !a.num().eval(&t0).is_zero());
        let precision = 10;
        let op = antiderivative_extension_operator(&a).unwrap();
        let u = series_expand(&a, &t0, precision).unwrap().integrate(Rational::zero());
        let one = TruncatedSeries::constant(Rational::one(), t0.clone(), precision);
        prop_assert!(ode_residual(&op, &one).unwrap().is_zero());
        prop_assert!(ode_residual(&op, &u).unwrap().is_zero());
        // the second fundamental solution is u normalized to unit slope
        let sols = fundamental_system_series(&op, &t0, precision).unwrap();
        let slope = a.eval(&t0).unwrap();
        prop_assert_eq!(sols[1].clone(), u.truncate(precision).scale(&slope.recip()));
    }
}

#[test]
fn dimension_consistency_for_general_linear() {
    for n in 1..=4 {
        let d = GaloisDescriptor::FullGeneralLinear { n };
        assert_eq!(descriptor_dimension(&d), descriptor_trdeg(&d));
        assert_eq!(identity_component_dimension(&descriptor_to_matrix_group(&d)).unwrap(), n * n);
    }
}

#[test]
fn catalog_dimensions_match_descriptors() {
    let descriptors = [
        GaloisDescriptor::Trivial { witness: RatFunc::t() },
        GaloisDescriptor::AdditiveGroup,
        GaloisDescriptor::MultiplicativeGroup,
        GaloisDescriptor::CyclicOfOrder { n: 3, beta: RatFunc::t() },
        GaloisDescriptor::FullGeneralLinear { n: 3 },
    ];
    let mut labels = Vec::new();
    for d in &descriptors {
        let g = descriptor_to_matrix_group(d);
        assert_eq!(identity_component_dimension(&g).unwrap(), descriptor_dimension(d));
        labels.push(g.label().unwrap());
    }
    assert_eq!(
        labels,
        [
            GroupLabel::RootsOfUnity(1),
            GroupLabel::UnipotentGa,
            GroupLabel::DiagonalGm,
            GroupLabel::RootsOfUnity(3),
            GroupLabel::GeneralLinear
        ]
    );
}

#[test]
fn catalog_groups_are_closed_on_samples() {
    let mut g = rng(77);
    for (label, n) in [
        (GroupLabel::GeneralLinear, 2),
        (GroupLabel::SpecialLinear, 2),
        (GroupLabel::SpecialLinear, 3),
        (GroupLabel::UnipotentGa, 2),
        (GroupLabel::DiagonalGm, 1),
        (GroupLabel::RootsOfUnity(2), 1),
        (GroupLabel::RootsOfUnity(5), 1),
    ] {
        let group = catalog_group(label, n).unwrap();
        let samples: Vec<_> = (0..100).map(|_| random_member(&group, &mut g).unwrap()).collect();
        assert!(group_closure_sample_check(&group, &samples).unwrap(), "{label:?} not closed");
    }
}

#[test]
fn gl_witness_holds_on_fifty_trials() {
    for n in [2, 3] {
        let results = gl_invariance_trials(Exec::Parallel, n, 50, 1234).unwrap();
        assert!(results.iter().all(|&ok| ok), "n = {n}");
    }
}

#[test]
fn parallel_and_sequential_trials_agree() {
    assert_eq!(
        gl_invariance_trials(Exec::Parallel, 2, 8, 5).unwrap(),
        gl_invariance_trials(Exec::Sequential, 2, 8, 5).unwrap()
    );
}

#[test]
fn derivation_variables_print_in_rank_order() {
    let p = DiffPoly::from_terms(
        [
            (Monomial::var(DerivVar::new(0, 3)), RatFunc::from_int(1)),
            (Monomial::var(DerivVar::new(0, 0)), RatFunc::t()),
        ],
        1,
    );
    assert_eq!(print::diffpoly(&p), "x^(3) + t*x");
}
