use std::sync::Arc;

use proptest::prelude::*;

use hopfcross::catalog::sweedler4;
use hopfcross::linmap::{compose, tensor};
use hopfcross::solve::{invert, rank, solve};
use hopfcross::{Field, LinMap, Scalar, Shape, Space};

fn shape(name: &str, n: usize) -> Shape {
    Shape::of(&Space::numbered(name, n))
}

type Entries = Vec<(u64, u64, i64, i64)>;

fn entries(rows: u64, cols: u64) -> impl Strategy<Value = Entries> {
    prop::collection::vec((0..rows, 0..cols, -3i64..=3, 1i64..=3), 0..10)
}

fn build(dom: &Shape, cod: &Shape, es: &Entries) -> LinMap {
    LinMap::from_entries(
        dom.clone(),
        cod.clone(),
        es.iter().map(|&(i, j, n, d)| (i, j, Scalar::ratio(n, d))),
    )
    .unwrap()
}

fn dims() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..4, 1usize..4, 1usize..4, 1usize..4)
}

proptest! {
    #[test]
    fn composition_is_associative(
        (a, b, c, d) in dims(),
        seed in (entries(3, 3), entries(3, 3), entries(3, 3)),
    ) {
        let (sa, sb, sc, sd) = (shape("A", a), shape("B", b), shape("C", c), shape("D", d));
        let clip = |es: &Entries, r: usize, k: usize| -> Entries {
            es.iter().copied().filter(|&(i, j, _, _)| (i as usize) < r && (j as usize) < k).collect()
        };
        let f = build(&sa, &sb, &clip(&seed.0, b, a));
        let g = build(&sb, &sc, &clip(&seed.1, c, b));
        let h = build(&sc, &sd, &clip(&seed.2, d, c));
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interchange_law(
        f in entries(2, 3), f2 in entries(3, 2),
        g in entries(3, 2), g2 in entries(2, 2),
    ) {
        let (a, b, c) = (shape("A", 3), shape("B", 2), shape("C", 3));
        let (x, y, z) = (shape("X", 2), shape("Y", 3), shape("Z", 2));
        let f = build(&a, &b, &f);
        let f2 = build(&b, &c, &f2);
        let g = build(&x, &y, &g);
        let g2 = build(&y, &z, &g2);
        let left = compose(&tensor(&f, &g), &tensor(&f2, &g2)).unwrap();
        let right = tensor(&compose(&f, &f2).unwrap(), &compose(&g, &g2).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn swap_is_natural(f in entries(2, 3), g in entries(3, 2)) {
        let (a, b, x, y) = (shape("A", 3), shape("B", 2), shape("X", 2), shape("Y", 3));
        let f = build(&a, &b, &f);
        let g = build(&x, &y, &g);
        let left = compose(&tensor(&f, &g), &LinMap::swap_shapes(&b, &y)).unwrap();
        let right = compose(&LinMap::swap_shapes(&a, &x), &tensor(&g, &f)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn solved_inverse_is_a_left_inverse(es in entries(3, 3)) {
        let s = shape("V", 3);
        let f = build(&s, &s, &es);
        match solve(&f, &LinMap::identity(s.clone())) {
            Ok(g) => {
                prop_assert!(compose(&f, &g).unwrap().is_identity());
                prop_assert_eq!(rank(&f), 3);
            }
            Err(_) => prop_assert!(rank(&f) < 3),
        }
    }
}

#[test]
fn swap_is_natural_on_catalog_maps() {
    let h = Arc::new(sweedler4(Field::Rational).unwrap());
    let maps = [
        h.m.clone(),
        h.cm.clone(),
        h.unit.clone(),
        h.counit.clone(),
        h.antipode_map().unwrap().clone(),
    ];
    for f in &maps {
        for g in &maps {
            let left = compose(&tensor(f, g), &LinMap::swap_shapes(f.codomain(), g.codomain())).unwrap();
            let right = compose(&LinMap::swap_shapes(f.domain(), g.domain()), &tensor(g, f)).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn antipode_inverse_by_elimination() {
    let h = sweedler4(Field::Rational).unwrap();
    let s = h.antipode_map().unwrap();
    let sinv = invert(s).unwrap();
    assert!(compose(s, &sinv).unwrap().is_identity());
    assert!(compose(&sinv, s).unwrap().is_identity());
}
