use std::sync::Arc;

use hopfcross::catalog::{half_sign_element, sweedler4};
use hopfcross::factor::BraidedDouble;
use hopfcross::linmap::compose;
use hopfcross::qt::{braided_analogue, check_qt, same_structure, verify_braided, QTElement, Role};
use hopfcross::repro::braided_double_of_sweedler_double;
use hopfcross::solve::invert;
use hopfcross::Field;

mod common;

#[test]
fn xi_is_identity_when_v_equals_r() {
    let h = Arc::new(sweedler4(Field::Rational).unwrap());
    let p = QTElement::new(Role::P, h.clone(), h.clone(), half_sign_element(&h)).unwrap();
    let q = QTElement::new(Role::Q, h.clone(), h.clone(), half_sign_element(&h)).unwrap();
    let r = QTElement::unit(Role::R, h.clone(), h.clone());
    let u = QTElement::unit(Role::U, h.clone(), h.clone());
    let v = QTElement::unit(Role::V, h.clone(), h.clone());
    let bd = BraidedDouble::new(p, q, r, u, v).unwrap();
    let (xi, xib) = bd.xi_explicit().unwrap();
    assert!(xi.is_identity());
    assert!(xib.is_identity());
    let proj = bd.xi_by_projection().unwrap();
    assert_eq!(proj.reshape(xi.domain().clone(), xi.codomain().clone()).unwrap(), xi);
}

#[test]
fn braided_double_of_the_drinfeld_double() {
    let bd = braided_double_of_sweedler_double().unwrap();
    let (xi, xib) = bd.xi_explicit().unwrap();
    assert!(compose(&xi, &xib).unwrap().is_identity());
    assert!(invert(&xi).is_ok());
    let proj = bd.xi_by_projection().unwrap();
    assert_eq!(proj.reshape(xi.domain().clone(), xi.codomain().clone()).unwrap(), xi);
    for b in [&bd.a_braided, &bd.h_braided] {
        let rep = verify_braided(b);
        assert!(rep.all_passed(), "{rep}");
    }
    let f = bd.cofactorise().unwrap();
    assert!(f.report.all_passed(), "{}", f.report);
}

#[test]
fn composite_element_matches_the_term_by_term_expansion() {
    let bd = braided_double_of_sweedler_double().unwrap();
    let expanded = common::expand_rb(&bd);
    assert_eq!(expanded.nnz(), bd.rd.value.nnz());
    assert_eq!(expanded, bd.rd.value);
    let rep = check_qt(&bd.d, &bd.rd.value);
    assert!(rep.all_passed(), "{rep}");
}

/// The braided groups induced along the projections are the transmutations of the legs.
#[test]
fn induced_braided_groups_are_the_transmuted_legs() {
    let bd = braided_double_of_sweedler_double().unwrap();
    for (x, b) in [(&bd.p, &bd.a_braided), (&bd.q, &bd.h_braided)] {
        let a = x.left.clone();
        let r = QTElement::with_inverse(Role::R, a.clone(), a, x.value.clone(), x.inverse.clone()).unwrap();
        let own = braided_analogue(&r.left, &r).unwrap();
        assert_eq!(same_structure(&b.data, &own.data), None);
    }
}
