//! Randomized invariants of the SL_q(2) calculus.

use std::sync::OnceLock;

use proptest::prelude::*;

use qdc::algebra::{AlgebraElement, Word};
use qdc::calculus::{Calculus, F00Choice};
use qdc::forms::FormElement;
use qdc::session::{Session, SessionConfig, Value};
use qdc::Scalar;

fn session() -> &'static Session {
    static S: OnceLock<Session> = OnceLock::new();
    S.get_or_init(|| Session::open(SessionConfig::default()).unwrap())
}

fn calc() -> &'static Calculus {
    &session().calc
}

fn words() -> &'static [Word] {
    static W: OnceLock<Vec<Word>> = OnceLock::new();
    W.get_or_init(|| calc().qg().normal_words(2))
}

/// Up to three terms `c q^k w` with w a normal word of degree <= 2.
fn arb_element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0usize..64, -3i64..4, -1i32..2), 1..4).prop_map(|terms| {
        let mut a = AlgebraElement::zero();
        for (w, c, k) in terms {
            a.add_term(words()[w % words().len()].clone(), Scalar::from_int(c) * Scalar::q_pow(k));
        }
        a
    })
}

fn arb_form(grade: usize) -> impl Strategy<Value = FormElement> {
    let dim = calc().exterior().dim(grade);
    prop::collection::vec(prop::option::weighted(0.5, arb_element()), dim).prop_map(move |cs| FormElement {
        grade,
        coeffs: cs.into_iter().map(|c| c.unwrap_or_else(AlgebraElement::zero)).collect(),
    })
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn product_is_associative(a in arb_element(), b in arb_element(), c in arb_element()) {
        let qg = calc().qg();
        prop_assert_eq!(qg.mul(&qg.mul(&a, &b), &c), qg.mul(&a, &qg.mul(&b, &c)));
    }

    #[test]
    fn coproduct_is_multiplicative(a in arb_element(), b in arb_element()) {
        let qg = calc().qg();
        prop_assert_eq!(qg.coproduct(&qg.mul(&a, &b)), qg.tensor_mul(&qg.coproduct(&a), &qg.coproduct(&b)));
    }

    #[test]
    fn d_is_a_derivation(a in arb_element(), b in arb_element()) {
        let c = calc();
        let (qg, ext) = (c.qg(), c.exterior());
        let lhs = c.d_algebra(&qg.mul(&a, &b))?;
        let rhs = ext.right_mul(qg, &c.d_algebra(&a)?, &b)?.add(&ext.left_mul(qg, &a, &c.d_algebra(&b)?))?;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_matches_vector_fields(a in arb_element()) {
        let c = calc();
        prop_assert_eq!(c.expand_d_in_basis(&a)?, c.chi_convolve(&a));
    }

    #[test]
    fn d_squares_to_zero(x in arb_form(1)) {
        let c = calc();
        prop_assert!(c.d(&c.d(&x)?)?.is_zero());
    }

    #[test]
    fn split_differentials_anticommute(x in arb_form(1)) {
        let c = calc();
        let s = c.split(&x, F00Choice::Trace)?;
        let anti = c.delta(&s.partial, F00Choice::Trace)?.add(&c.partial(&s.delta)?)?;
        prop_assert!(anti.is_zero());
        prop_assert!(c.partial(&s.partial)?.is_zero());
    }

    #[test]
    fn wedge_is_associative(x in arb_form(1), y in arb_form(1), z in arb_form(1)) {
        let c = calc();
        prop_assert_eq!(c.wedge(&c.wedge(&x, &y)?, &z)?, c.wedge(&x, &c.wedge(&y, &z)?)?);
    }

    #[test]
    fn right_action_is_associative(x in arb_form(1), a in arb_element(), b in arb_element()) {
        let c = calc();
        let (qg, ext) = (c.qg(), c.exterior());
        prop_assert_eq!(ext.right_mul(qg, &ext.right_mul(qg, &x, &a)?, &b)?, ext.right_mul(qg, &x, &qg.mul(&a, &b))?);
    }

    #[test]
    fn rendered_forms_parse_back(a in arb_element(), b in arb_element()) {
        let s = session();
        let x = s.calc.wedge(&s.calc.d_algebra(&a)?, &s.calc.d_algebra(&b)?)?;
        let v = Value::Form(x.clone());
        let back = s.eval_str(&s.render(&v))?;
        let back = match back {
            Value::Form(f) => f,
            Value::Alg(z) => { prop_assert!(z.is_zero() && x.is_zero()); return Ok(()); }
        };
        prop_assert_eq!(back, x);
    }
}

#[test]
fn canonical_element_squares_to_zero() {
    let c = calc();
    let x = c.canonical_element();
    assert!(c.wedge(&x, &x).unwrap().is_zero());
}

#[test]
fn counit_choice_has_no_delta() {
    let c = calc();
    let a = c.exterior().scalar_form(c.qg().gen(1, 1).unwrap());
    assert!(c.delta(&a, F00Choice::Counit).unwrap().is_zero());
    assert!(!c.delta(&a, F00Choice::Trace).unwrap().is_zero());
}
