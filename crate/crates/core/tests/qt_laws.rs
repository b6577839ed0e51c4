use std::sync::Arc;

use proptest::prelude::*;

use hopfcross::catalog::{group_algebra_c2, half_sign_element, sweedler4, sweedler_r};
use hopfcross::cross::drinfeld_double;
use hopfcross::hopf::{co_opposite, dual_hopf, HopfData};
use hopfcross::linmap::compose;
use hopfcross::qt::{
    adjoint_action, braided_analogue, braiding_axioms, braiding_is_symmetric, check_qt, check_weak_r, compose_rd,
    cw_membership, is_triangular, module_braiding, same_structure, transmute, verify_braided, Module, QTElement, Role,
};
use hopfcross::{Field, LinMap, Scalar, Shape, SparseTensor};

fn h4() -> Arc<HopfData> {
    Arc::new(sweedler4(Field::Rational).unwrap())
}

fn c2() -> Arc<HopfData> {
    Arc::new(group_algebra_c2(Field::Rational).unwrap())
}

fn qt(h: &Arc<HopfData>, value: SparseTensor) -> QTElement {
    QTElement::new(Role::R, h.clone(), h.clone(), value).unwrap()
}

fn unit(h: &Arc<HopfData>) -> QTElement {
    QTElement::unit(Role::R, h.clone(), h.clone())
}

/// Every (algebra, R) pair in the catalog that passes check_qt.
fn quasitriangular_pairs() -> Vec<(Arc<HopfData>, QTElement)> {
    let h = h4();
    let c = c2();
    let (_, b) = drinfeld_double(&h).unwrap();
    let d = b.left.clone();
    vec![
        (h.clone(), qt(&h, half_sign_element(&h))),
        (h.clone(), qt(&h, sweedler_r(&h, &Scalar::ratio(3, 2)))),
        (c.clone(), unit(&c)),
        (c.clone(), qt(&c, half_sign_element(&c))),
        (d, b),
    ]
}

#[test]
fn catalog_pairs_are_quasitriangular() {
    for (h, r) in quasitriangular_pairs() {
        let rep = check_qt(&h, &r.value);
        assert!(rep.all_passed(), "{}: {rep}", h.name);
    }
}

#[test]
fn unit_element_is_not_quasitriangular_on_sweedler() {
    let h = h4();
    let rep = check_qt(&h, &unit(&h).value);
    let c = rep.get("R·Δ(h) = Δ^op(h)·R").unwrap();
    assert!(!c.passed);
    assert!(c.witness.as_deref().unwrap().ends_with("h = x"), "{rep}");
}

#[test]
fn triangularity_matches_symmetry_of_the_braiding() {
    for (h, r) in quasitriangular_pairs() {
        let reg = Module::regular(&h);
        assert_eq!(
            is_triangular(&h, &r),
            braiding_is_symmetric(&r, &reg, &reg).unwrap(),
            "{} with {}",
            h.name,
            r.role
        );
    }
    let c = c2();
    assert!(is_triangular(&c, &unit(&c)));
    assert!(is_triangular(&c, &qt(&c, half_sign_element(&c))));
    let (_, b) = drinfeld_double(&h4()).unwrap();
    assert!(!is_triangular(&b.left.clone(), &b));
}

/// R_t·R_t computed term by term on the four group elements.
#[test]
fn sign_element_squares_to_one_by_hand() {
    let c = c2();
    let r = half_sign_element(&c);
    // (a,b)·(c,d) = (a+c, b+d) in C2×C2, coefficients ½,½,½,−½ on (0,0),(0,1),(1,0),(1,1)
    let half = Scalar::ratio(1, 2);
    let coef = [[half.clone(), half.clone()], [half.clone(), -half]];
    let mut sq = vec![vec![Scalar::zero(); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    sq[a ^ x][b ^ y] += &(&coef[a][b] * &coef[x][y]);
                }
            }
        }
    }
    assert_eq!(sq, vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);
    assert_eq!(r.flip(), r);
}

#[test]
fn braidings_satisfy_hexagons_and_yang_baxter() {
    for (h, r) in quasitriangular_pairs() {
        let reg = Module::regular(&h);
        let rep = braiding_axioms(&r, &reg, &reg, &reg).unwrap();
        assert!(rep.all_passed(), "{}: {rep}", h.name);
        let ad = Module::adjoint(&h).unwrap();
        let rep = braiding_axioms(&r, &ad, &reg, &ad).unwrap();
        assert!(rep.all_passed(), "{} (adjoint): {rep}", h.name);
    }
}

#[test]
fn unit_r_braids_by_the_plain_swap() {
    let c = c2();
    let reg = Module::regular(&c);
    let c_vw = module_braiding(&c, &unit(&c), &reg, &reg).unwrap();
    assert_eq!(c_vw, LinMap::swap(&c.space, &c.space));
}

#[test]
fn adjoint_action_by_hand() {
    let h = h4();
    let ad = adjoint_action(&h).unwrap();
    let act = |a: &str, b: &str| ad.apply(&h.element(a).outer(&h.element(b)).reshape(h.shape2()).unwrap()).unwrap();
    for b in ["1", "g", "x", "gx"] {
        assert_eq!(act("1", b), h.element(b));
    }
    // gxg = g(−gx) = −x
    assert_eq!(act("g", "x"), h.element("x").neg());
    // x·S(1) + g·S(x) = x + g(−gx) = 0
    assert!(act("x", "1").is_zero());
}

fn canonical_in_dual_tensor_h4() -> (Arc<HopfData>, Arc<HopfData>, SparseTensor) {
    let h = h4();
    let a = Arc::new(co_opposite(&dual_hopf(&h).unwrap()).unwrap());
    let s = h.antipode_map().unwrap();
    let shape = Shape::new(vec![a.space.clone(), h.space.clone()]);
    let mut r = SparseTensor::zero(shape);
    for i in 0..h.dim() {
        r = r.add(&a.basis(i).outer(&s.apply(&h.basis(i)).unwrap())).unwrap();
    }
    (a, h, r)
}

#[test]
fn weak_r_matrices() {
    let (a, h, r) = canonical_in_dual_tensor_h4();
    assert!(check_weak_r(&a, &h, &r).all_passed());
    assert!(check_weak_r(&h, &h, &unit(&h).value).all_passed());

    // 1⊗1 + 1⊗x: (Δ⊗id) gives 1⊗1⊗x once, R13R23 twice; (id⊗Δ) misses 1⊗x⊗x
    let bad = unit(&h).value.add(&h.one().outer(&h.element("x"))).unwrap();
    let rep = check_weak_r(&h, &h, &bad);
    assert!(!rep.passed("(Δ_A⊗id)R = R13R23"));
    assert!(!rep.passed("(id⊗Δ_H)R = R13R12"));
    assert!(rep.passed("R is invertible"));
}

#[test]
fn central_weak_r_matrices() {
    let c = c2();
    assert!(cw_membership(&h4(), &h4(), &h4().one().outer(&h4().one())));
    assert!(cw_membership(&c, &c, &half_sign_element(&c)));
    // (Δ⊗id)(g⊗g) = g⊗g⊗g but R13R23 = g⊗g⊗1
    let gg = c.element("g").outer(&c.element("g"));
    assert!(!cw_membership(&c, &c, &gg));
    let (_, b) = drinfeld_double(&h4()).unwrap();
    let d = b.left.clone();
    assert!(check_weak_r(&d, &d, &b.value).all_passed());
    assert!(!cw_membership(&d, &d, &b.value));
}

#[test]
fn all_unit_composite_is_the_unit() {
    let h = h4();
    let one = unit(&h);
    let d = hopfcross::cross::weak_r_double(&one).unwrap();
    let d = Arc::new(d.hopf);
    let rd = compose_rd(&d, &one, &one, &one, &one, &one).unwrap();
    assert_eq!(rd.value, d.one().outer(&d.one()));
}

#[test]
fn transmutation_outputs_are_braided_bialgebras() {
    for (h, r) in quasitriangular_pairs() {
        let b = braided_analogue(&h, &r).unwrap();
        let rep = verify_braided(&b);
        assert!(rep.all_passed(), "{}: {rep}", h.name);
        assert_eq!(b.data.counit, h.counit);
        assert_eq!(b.data.m, h.m);
    }
}

#[test]
fn trivial_r_transmutes_to_the_same_coproduct() {
    let c = c2();
    let b = transmute(&c, &LinMap::identity(c.shape()), &c, &unit(&c)).unwrap();
    assert_eq!(same_structure(&b.data, &c), None);
}

#[test]
fn braided_double_coproduct_differs_from_the_ordinary_one() {
    let (_, b) = drinfeld_double(&h4()).unwrap();
    let d = b.left.clone();
    let bb = braided_analogue(&d, &b).unwrap();
    assert_ne!(bb.data.cm, d.cm);
    assert!(same_structure(&bb.data, &d).unwrap().starts_with("Δ"));
}

#[test]
fn verify_braided_rejects_broken_structures() {
    let (_, b) = drinfeld_double(&h4()).unwrap();
    let d = b.left.clone();
    let good = braided_analogue(&d, &b).unwrap();

    let mut plain_coproduct = good.clone();
    plain_coproduct.data.cm = d.cm.clone();
    assert!(!verify_braided(&plain_coproduct).all_passed());

    let mut plain_antipode = good.clone();
    plain_antipode.data.antipode = d.antipode.clone();
    assert!(!verify_braided(&plain_antipode).all_passed());

    let mut scaled_counit = good;
    scaled_counit.data.counit = d.counit.scale(&Scalar::from_i64(2));
    assert!(!verify_braided(&scaled_counit).all_passed());
}

#[test]
fn transmutation_refuses_non_morphisms() {
    let h = h4();
    let r = qt(&h, half_sign_element(&h));
    let twice = LinMap::identity(h.shape()).scale(&Scalar::from_i64(2));
    assert!(transmute(&h, &twice, &h, &r).is_err());
}

#[test]
fn module_braiding_refuses_non_modules() {
    let h = h4();
    let r = qt(&h, half_sign_element(&h));
    let zero = LinMap::zero(Shape::new(vec![h.space.clone(), h.space.clone()]), h.shape());
    match Module::new(h.clone(), h.shape(), zero) {
        Err(_) => {}
        Ok(m) => assert!(module_braiding(&h, &r, &m, &m).is_err()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sweedler_family_is_triangular(n in -6i64..=6, d in 1i64..=4) {
        let h = h4();
        let r = qt(&h, sweedler_r(&h, &Scalar::ratio(n, d)));
        prop_assert!(check_qt(&h, &r.value).all_passed());
        prop_assert!(is_triangular(&h, &r));
        let reg = Module::regular(&h);
        prop_assert!(braiding_is_symmetric(&r, &reg, &reg).unwrap());
        let c = module_braiding(&h, &r, &reg, &reg).unwrap();
        prop_assert!(compose(&c, &c).unwrap().is_identity());
    }
}
