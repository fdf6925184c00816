//! Cross-checks of the Groebner/Hilbert infrastructure against brute-force
//! linear algebra that never consults leading terms.

mod common;

use common::{hilbert_oracle, member_oracle, random_monomial_ideal, seeded_rng, span_dim_oracle};
use gradua_core::gb::{self, FreeModule};
use gradua_core::gmod::SubquotientModule;
use gradua_core::gring::GradedRing;
use gradua_core::scalars::Field;
use rand::Rng;

fn build(vars: &[(&str, i64)], field: Field, quotient: &[&str]) -> GradedRing {
    GradedRing::build(vars, field, quotient).unwrap()
}

#[test]
fn graded_pieces_match_linear_algebra_on_worked_modules() {
    let r = build(&[("x", 1), ("y", 1)], Field::Rationals, &["x*y"]);
    let ambient = FreeModule::new(r.base().clone(), vec![0]);
    let mk = |gens: &[&str], rels: &[&str]| {
        let u = gens.iter().map(|s| ambient.single(0, r.base().parse(s).unwrap())).collect();
        let v = rels.iter().map(|s| ambient.single(0, r.base().parse(s).unwrap())).collect();
        SubquotientModule::new(r.clone(), ambient.clone(), u, v).unwrap()
    };
    let modules = [
        mk(&["1"], &[]),
        mk(&["y"], &["y^4"]),
        mk(&["x", "y^2"], &["x", "y^3"]),
        mk(&["1"], &["x", "y^5"]),
        mk(&["x"], &["x"]),
    ];
    for m in &modules {
        for n in 0..=8 {
            assert_eq!(
                m.dim_at(n),
                hilbert_oracle(m, n),
                "dimension mismatch at degree {n} for {m}"
            );
        }
    }
}

#[test]
fn membership_matches_rank_oracle_over_f101() {
    let f = Field::prime(101).unwrap();
    let r = build(&[("x", 1), ("y", 1), ("z", 1)], f, &[]);
    let fm = FreeModule::new(r.base().clone(), vec![0]);
    let mut rng = seeded_rng(0xfeed);
    for trial in 0..10 {
        let ideal = random_monomial_ideal(&mut rng, &r, 2, 3);
        let gens: Vec<_> = ideal.gens().iter().map(|g| fm.single(0, g.clone())).collect();
        let gbasis = gb::groebner(&fm, &gens).unwrap();
        assert!(gb::buchberger_holds(&gbasis));
        for d in 1..=6i64 {
            for mono in r.base().monomials_of_degree(d) {
                let v = fm.single(0, r.base().monomial(mono));
                let fast = gb::member(&fm, &v, &gbasis);
                let slow = member_oracle(&fm, &v, &gens);
                assert_eq!(fast, slow, "membership disagreement in trial {trial} degree {d}");
            }
        }
    }
}

#[test]
fn hilbert_functions_of_random_ideals_match_oracle_over_f101() {
    let f = Field::prime(101).unwrap();
    let r = build(&[("x", 1), ("y", 1), ("z", 1)], f, &[]);
    let mut rng = seeded_rng(0xbeef);
    for _ in 0..10 {
        let count = rng.gen_range(1..=3);
        let ideal = random_monomial_ideal(&mut rng, &r, count, 6);
        let m = SubquotientModule::cyclic(&r, &ideal).unwrap();
        for n in 0..=6 {
            assert_eq!(m.dim_at(n), hilbert_oracle(&m, n));
        }
    }
}

#[test]
fn syzygies_are_exact_and_degreewise_complete() {
    let q = build(&[("x", 1), ("y", 1)], Field::Rationals, &[]);
    let fm = FreeModule::new(q.base().clone(), vec![0]);
    let mut rng = seeded_rng(0xabcd);
    for _ in 0..6 {
        let count = rng.gen_range(2..=3);
        let gens: Vec<_> = (0..count)
            .map(|_| fm.single(0, q.base().monomial(common::random_monomial(&mut rng, &q, 3))))
            .collect();
        let (sfm, syz) = gb::syzygies(&fm, &gens).unwrap();
        // exactness of every output
        for s in &syz {
            let mut acc = fm.zero_vector();
            for (t, g) in gens.iter().enumerate() {
                acc = fm.add(&acc, &fm.mul_poly(g, &s.comps()[t]));
            }
            assert!(acc.is_zero());
        }
        // degreewise completeness: dim of the syzygy span at degree n equals
        // (number of products) - rank of the presentation matrix
        for n in 0..=6i64 {
            let mut products = 0usize;
            for g in &gens {
                let d = fm.degree(g).unwrap().unwrap();
                products += q.base().monomials_of_degree(n - d).len();
            }
            let image_rank = span_dim_oracle(&fm, &gens, n);
            let expected_kernel = products - image_rank;
            assert_eq!(
                span_dim_oracle(&sfm, &syz, n),
                expected_kernel,
                "syzygy dimension at degree {n}"
            );
        }
    }
}

#[test]
fn normal_form_is_idempotent_on_random_elements() {
    let q = build(&[("x", 1), ("y", 1)], Field::Rationals, &[]);
    let fm = FreeModule::new(q.base().clone(), vec![0]);
    let mut rng = seeded_rng(0x1234);
    for _ in 0..8 {
        let ideal = random_monomial_ideal(&mut rng, &q, 2, 3);
        let gens: Vec<_> = ideal.gens().iter().map(|g| fm.single(0, g.clone())).collect();
        let gbasis = gb::groebner(&fm, &gens).unwrap();
        for d in 1..=5i64 {
            // a dense homogeneous element of degree d
            let poly = q
                .base()
                .monomials_of_degree(d)
                .into_iter()
                .enumerate()
                .map(|(i, m)| (m, q.base().field().from_i64(i as i64 + 1)))
                .collect();
            let v = fm.single(0, q.base().from_terms(poly));
            let nf = gb::normal_form(&fm, &v, gbasis.elements());
            assert_eq!(gb::normal_form(&fm, &nf, gbasis.elements()), nf);
        }
    }
}

#[test]
fn resolutions_of_random_monomial_modules_are_exact() {
    let q = build(&[("x", 1), ("y", 1), ("z", 1)], Field::Rationals, &[]);
    let mut rng = seeded_rng(0x5150);
    for _ in 0..4 {
        let ideal = random_monomial_ideal(&mut rng, &q, 2, 3);
        let m = SubquotientModule::cyclic(&q, &ideal).unwrap();
        let res = gradua_core::resolve::free_resolution(&m, 5, true).unwrap();
        assert!(res.complete(), "Hilbert syzygy theorem bounds the length");
        assert!(res.length() <= 4, "pd <= 3 over three variables");
        assert!(res.composites_vanish());
        assert!(res.entries_in_irrelevant_ideal());
        for k in 1..res.maps().len() {
            assert!(res.homology_at(k).unwrap().is_zero(), "exactness at step {k}");
        }
    }
}
