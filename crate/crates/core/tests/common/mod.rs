//! Randomized property suites shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use wittmaps::commpoly::{Monomial, Poly, RingMap};
use wittmaps::envelope::{EnvElement, FreeElement, Mode, PBWMonomial, Straightener, Strategy as Rewrite};
use wittmaps::scalars::{excluded_factors, ExactMatrix, Field, RatFunc, Rational, UniPoly};
use wittmaps::twisted::{algebra_r, algebra_s, algebra_s_hat, TwistedAlgebra};

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish(name: &str, r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (unipoly(2), unipoly(2).prop_filter("nonzero", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatFunc::new(n, d).expect("nonzero denominator"))
}

fn axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.clone() + b, b.clone() + a);
    prop_assert_eq!((a.clone() + b) + c, a.clone() + &(b.clone() + c));
    prop_assert_eq!(a.clone() * b, b.clone() * a);
    prop_assert_eq!((a.clone() * b) * c, a.clone() * &(b.clone() * c));
    prop_assert_eq!(a.clone() * &(b.clone() + c), a.clone() * b + &(a.clone() * c));
    prop_assert_eq!(a.clone() - a, F::zero());
    prop_assert_eq!(a.clone() * &F::one(), a.clone());
    if !a.is_zero() {
        prop_assert_eq!(a.clone() * &a.inv().unwrap(), F::one());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    finish("rationals", r.run(&(rational(), rational(), rational()), |(a, b, c)| axioms(&a, &b, &c)))?;
    finish("Q(a)", r.run(&(ratfunc(), ratfunc(), ratfunc()), |(a, b, c)| axioms(&a, &b, &c)))
}

/// Random homogeneous element of degree `deg` spanned by the allowed monomials.
fn homogeneous(alg: &Arc<TwistedAlgebra<Rational>>, deg: i64) -> BoxedStrategy<Poly<Rational>> {
    let mons = alg.piece_monomials(deg).expect("piece");
    let ring = alg.carrier().clone();
    let n = mons.len();
    prop::collection::vec((0..n, -5i64..=5), 1..=4)
        .prop_map(move |terms| {
            Poly::from_terms(&ring, terms.into_iter().map(|(i, c)| (mons[i], Rational::from_integer(c.into()))))
                .expect("monomials in ring")
        })
        .boxed()
}

fn triple(alg: Arc<TwistedAlgebra<Rational>>) -> impl Strategy<Value = (Poly<Rational>, Poly<Rational>, Poly<Rational>)> {
    (0i64..=3, 0i64..=3, 0i64..=3)
        .prop_flat_map(move |(d1, d2, d3)| (homogeneous(&alg, d1), homogeneous(&alg, d2), homogeneous(&alg, d3)))
}

pub fn twisted_associativity(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    for alg in [algebra_s::<Rational>(), algebra_r::<Rational>()] {
        let a = alg.clone();
        finish(alg.name(), r.run(&triple(alg.clone()), |(f, g, h)| {
            let left = a.mul(&a.mul(&f, &g).unwrap(), &h).unwrap();
            let right = a.mul(&f, &a.mul(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            Ok(())
        }))?;
    }
    // Laurent version: homogeneous pieces with v^{-1} allowed.
    let sh = algebra_s_hat::<Rational>();
    let ring = sh.carrier().clone();
    let lau = (prop::collection::vec((0i32..=2, -2i32..=2, 0i32..=2, -3i64..=3), 1..=3))
        .prop_map(move |ts| {
            let d0 = ts[0].0 + ts[0].1 + ts[0].2;
            Poly::from_terms(
                &ring,
                ts.iter().map(|&(x, y, z, c)| {
                    let y = y + (d0 - (x + y + z));
                    (Monomial::from_exps(&[x, y, z]), Rational::from_integer(c.into()))
                }),
            )
            .unwrap()
        });
    let a = sh.clone();
    finish("S^", r.run(&(lau.clone(), lau.clone(), lau), |(f, g, h)| {
        let left = a.mul(&a.mul(&f, &g).unwrap(), &h).unwrap();
        let right = a.mul(&f, &a.mul(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    }))
}

pub fn straightening_confluence(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    finish("confluence", r.run(&prop::collection::vec(-3i64..=6, 0..=7), |w| {
        let left = Straightener::with_strategy(Mode::Witt, Rewrite::Leftmost).word(&w).unwrap();
        let right = Straightener::with_strategy(Mode::Witt, Rewrite::Rightmost).word(&w).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    }))
}

fn env_element(mode: Mode) -> impl Strategy<Value = EnvElement<Rational>> {
    let lo = if mode == Mode::Witt { -3 } else { 1 };
    prop::collection::vec((prop::collection::vec(lo..=5i64, 0..=3), rational()), 0..=3).prop_map(move |ts| {
        ts.into_iter().fold(EnvElement::zero(mode), |acc, (ix, c)| {
            acc.add(&EnvElement::monomial(mode, PBWMonomial::new(ix), c).unwrap()).unwrap()
        })
    })
}

pub fn bracket_identities(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let gens = (-2i64..=4, -2i64..=4, -2i64..=4);
    finish("jacobi", r.run(&gens, |(i, j, k)| {
        let g = |n| EnvElement::<Rational>::gen(Mode::Witt, n).unwrap();
        let (x, y, z) = (g(i), g(j), g(k));
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().neg());
        let jac = x
            .bracket(&y.bracket(&z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
            .unwrap();
        prop_assert!(jac.is_zero());
        Ok(())
    }))?;
    finish("associativity", r.run(&(env_element(Mode::Witt), env_element(Mode::Witt), env_element(Mode::Witt)), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        Ok(())
    }))
}

fn poly_s() -> impl Strategy<Value = Poly<Rational>> {
    poly_s_bounded(3, 4)
}

fn poly_s_bounded(max_exp: i32, max_terms: usize) -> impl Strategy<Value = Poly<Rational>> {
    let ring = algebra_s::<Rational>().carrier().clone();
    prop::collection::vec((0..=max_exp, 0..=max_exp, 0..=max_exp, rational()), 0..=max_terms).prop_map(move |ts| {
        Poly::from_terms(&ring, ts.into_iter().map(|(a, b, c, q)| (Monomial::from_exps(&[a, b, c]), q))).unwrap()
    })
}

fn poly_k() -> impl Strategy<Value = Poly<RatFunc>> {
    let ring = algebra_r::<RatFunc>().carrier().clone();
    prop::collection::vec((0i32..=3, -1i32..=3, ratfunc()), 0..=3).prop_map(move |ts| {
        Poly::from_terms(&ring, ts.into_iter().map(|(a, b, q)| (Monomial::from_exps(&[a, b.max(0)]), q))).unwrap()
    })
}

fn free_element() -> impl Strategy<Value = FreeElement<Rational>> {
    prop::collection::vec((prop::collection::vec(1u8..=2, 0..=4), rational()), 0..=3).prop_map(|ts| {
        ts.into_iter().fold(FreeElement::zero(), |acc, (w, c)| {
            let word = w.iter().fold(FreeElement::constant(c), |m, &l| m.mul(&FreeElement::letter(l).unwrap()));
            acc.add(&word)
        })
    })
}

pub fn round_trips(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let ring = algebra_s::<Rational>().carrier().clone();
    finish("poly", r.run(&poly_s(), |p| {
        prop_assert_eq!(Poly::parse(&ring, &p.to_string()).unwrap(), p);
        Ok(())
    }))?;
    let kring = algebra_r::<RatFunc>().carrier().clone();
    finish("poly over Q(a)", r.run(&poly_k(), |p| {
        prop_assert_eq!(Poly::parse(&kring, &p.to_string()).unwrap(), p);
        Ok(())
    }))?;
    for mode in [Mode::WPlus, Mode::Witt] {
        finish("env", r.run(&env_element(mode), |e| {
            prop_assert_eq!(EnvElement::parse(&e.to_string(), mode).unwrap(), e);
            Ok(())
        }))?;
    }
    finish("free", r.run(&free_element(), |f| {
        prop_assert_eq!(FreeElement::parse(&f.to_string()).unwrap(), f);
        Ok(())
    }))
}

pub fn ring_map_homomorphism(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let ring = algebra_s::<Rational>().carrier().clone();
    let strat = (poly_s_bounded(2, 3), poly_s_bounded(2, 3), prop::collection::vec(poly_s_bounded(1, 3), 3));
    finish("ring map", r.run(&strat, |(f, g, images)| {
        let m = RingMap::new(&ring, &ring, images).unwrap();
        prop_assert_eq!(m.apply(&f.mul(&g).unwrap()).unwrap(), m.apply(&f).unwrap().mul(&m.apply(&g).unwrap()).unwrap());
        prop_assert_eq!(m.apply(&f.add(&g).unwrap()).unwrap(), m.apply(&f).unwrap().add(&m.apply(&g).unwrap()).unwrap());
        Ok(())
    }))
}

pub fn specialized_rank(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let entry = (unipoly(1), prop::bool::weighted(0.3)).prop_map(|(p, zero)| {
        if zero {
            RatFunc::from_poly(UniPoly::zero())
        } else {
            RatFunc::from_poly(p)
        }
    });
    let strat = (prop::collection::vec(entry, 12), rational());
    finish("specialized rank", r.run(&strat, |(entries, a0)| {
        let m = ExactMatrix::new(3, 4, entries).unwrap();
        let excluded = excluded_factors(&m.fraction_free_pivots());
        prop_assume!(excluded.iter().all(|f| f.eval(&a0) != Rational::default()));
        let spec = m.map(|x| x.eval(&a0)).unwrap();
        prop_assert_eq!(spec.rank(), m.rank());
        Ok(())
    }))
}
