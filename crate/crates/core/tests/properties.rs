use ddpoly_core::cli::{Input, InputDocument, Table};
use ddpoly_core::dde::{generate, recover_pairs, step, CoefficientPair};
use ddpoly_core::integrating_factor::{boundary_zeros, classify, exact_log_derivative, ExtReal, QuadSurd};
use ddpoly_core::polycore::{interlaces, InterlaceVerdict, Poly};
use proptest::prelude::*;
use rug::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rational::from((n, d)))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != 0)
}

/// `A` of degree 0..2 with rational roots, `B` of degree at most 1.
fn pair() -> impl Strategy<Value = CoefficientPair<Rational>> {
    let a = prop_oneof![
        (nonzero(), rational(), rational()).prop_map(|(c, r1, r2)| Poly::from_roots(&[r1, r2]).scale(&c)),
        (nonzero(), rational()).prop_map(|(c, r)| Poly::from_roots(&[r]).scale(&c)),
        nonzero().prop_map(Poly::constant),
    ];
    let b = (rational(), rational()).prop_map(|(b0, b1)| Poly::new(vec![b0, b1]));
    (a, b).prop_map(|(a, b)| CoefficientPair::new(a, b).unwrap())
}

fn projective_zero_count(zeros: &[ExtReal]) -> usize {
    let finite = zeros.iter().filter(|z| matches!(z, ExtReal::Finite(_))).count();
    finite + usize::from(zeros.len() > finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classification_ignores_common_scaling(p in pair(), c in nonzero()) {
        let scaled = CoefficientPair::new(p.a().scale(&c), p.b().scale(&c)).unwrap();
        let (k1, k2) = (classify(&p).unwrap(), classify(&scaled).unwrap());
        prop_assert_eq!(k1.case, k2.case);
        prop_assert_eq!(k1.form.to_string(), k2.form.to_string());
    }

    #[test]
    fn k_vanishes_at_most_twice_projectively(p in pair()) {
        let k = classify(&p).unwrap();
        let spec = boundary_zeros(&k);
        prop_assert!(projective_zero_count(&spec.zeros_of_k) <= 2, "{} {:?}", p, spec.zeros_of_k);
    }

    #[test]
    fn exact_log_derivative_is_b_over_a(p in pair(), x in rational()) {
        let k = classify(&p).unwrap();
        let ax = k.a.eval(&x);
        prop_assume!(ax != 0);
        let want = QuadSurd::rational(k.b.eval(&x) / ax);
        prop_assert_eq!(exact_log_derivative(&k, &x), Some(want));
    }

    #[test]
    fn recovered_pairs_reproduce_the_sequence(b0 in nonzero(), pairs in prop::collection::vec(pair(), 6)) {
        let mut table = vec![CoefficientPair::new(Poly::zero(), Poly::new(vec![Rational::from(1), b0])).unwrap()];
        table.extend(pairs);
        let seq = generate(&table, 6).unwrap();
        prop_assume!(seq.regular_prefix() + 1 == seq.polys.len() && seq.polys.iter().skip(2).all(|p| p.is_squarefree()));
        let recovered = recover_pairs(&seq.polys).unwrap().unwrap();
        for (n, pair) in recovered.iter().enumerate() {
            prop_assert_eq!(&step(&seq.polys[n], pair).poly, &seq.polys[n + 1]);
        }
    }

    #[test]
    fn sequence_documents_round_trip(rows in prop::collection::vec(prop::collection::vec(rational(), 1..6), 1..6)) {
        let doc = InputDocument {
            sequence: Some(rows.iter().map(|r| r.iter().map(|c| ddpoly_core::cli::document::ScalarText::Text(c.to_string())).collect()).collect()),
            ..Default::default()
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back = InputDocument::parse(&text, "p").unwrap();
        prop_assert_eq!(&back, &doc);
        let Input::Sequence(Table::Rational(polys)) = back.resolve().unwrap() else {
            return Err(TestCaseError::fail("not a rational sequence"));
        };
        for (p, r) in polys.iter().zip(&rows) {
            prop_assert_eq!(p, &Poly::new(r.clone()));
        }
    }

    #[test]
    fn a_real_rooted_polynomial_interlaces_its_derivative(roots in prop::collection::btree_set(-40i64..=40, 2..8)) {
        let roots: Vec<Rational> = roots.into_iter().map(Rational::from).collect();
        let p = Poly::from_roots(&roots);
        let r = interlaces(&p.derivative(), &p).unwrap();
        prop_assert_eq!(r.verdict, InterlaceVerdict::Strict);
    }
}
