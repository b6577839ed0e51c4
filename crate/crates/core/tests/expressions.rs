use proptest::prelude::*;

use hopfcross::expr::{evaluate, parse, Environment, Expr, Node};
use hopfcross::Error;

mod common;

use common::{env_with_braiding, h4};

const NAMES: [&str; 6] = ["m", "cm", "S", "f'", "g_2", "id"];
const SPACES: [&str; 3] = ["H", "V", "k"];

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop::sample::select(&NAMES[..]).prop_map(Expr::name),
        prop::sample::select(&SPACES[..]).prop_map(|s| Expr::new(Node::Id(s.to_string()))),
        (prop::sample::select(&SPACES[..]), prop::sample::select(&SPACES[..]))
            .prop_map(|(a, b)| Expr::new(Node::Swap(a.to_string(), b.to_string()))),
        (prop::sample::select(&SPACES[..]), prop::sample::select(&SPACES[..]))
            .prop_map(|(a, b)| Expr::new(Node::Braid(a.to_string(), b.to_string()))),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|xs| Expr::new(Node::Compose(xs))),
            prop::collection::vec(inner, 2..4).prop_map(|xs| Expr::new(Node::Tensor(xs))),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(e in tree()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn parser_never_panics(text in "[a-z;*()\\[\\], \n']{0,40}") {
        let _ = parse(&text);
    }
}

#[test]
fn evaluation_matches_direct_composition_on_random_expressions() {
    if let Err(e) = common::random_expressions_agree(100, 20) {
        panic!("{e}");
    }
}

#[test]
fn interchange_law_through_the_evaluator() {
    let (_, env) = env_with_braiding();
    let cases = [
        ("(m * S) ; (S * cu)", "(m ; S) * (S ; cu)"),
        ("(cm * u) ; (swap[H,H] * S)", "(cm ; swap[H,H]) * (u ; S)"),
        ("(braid[V,V] * id[H]) ; (m * S)", "(braid[V,V] ; m) * (id[H] ; S)"),
    ];
    for (a, b) in cases {
        let x = evaluate(&parse(a).unwrap(), &env).unwrap();
        let y = evaluate(&parse(b).unwrap(), &env).unwrap();
        assert_eq!(x, y, "{a} vs {b}");
    }
}

#[test]
fn hopf_identities_as_expressions() {
    let (h, env) = env_with_braiding();
    let ev = |s: &str| evaluate(&parse(s).unwrap(), &env).unwrap();
    let unit_counit = ev("cu ; u");
    assert_eq!(ev("cm ; (S * id[H]) ; m"), unit_counit);
    assert_eq!(ev("cm ; (id[H] * S) ; m"), unit_counit);
    assert!(ev("(coev * id[H]) ; (id[H] * ev)").is_identity());
    assert!(ev("S ; Sinv").is_identity());
    assert_eq!(ev("m ; S"), ev("swap[H,H] ; (S * S) ; m"));
    assert_eq!(ev("braid[V,V]").domain(), &h.shape2());
}

#[test]
fn shape_errors_name_the_offending_node() {
    let (_, env) = env_with_braiding();
    match evaluate(&parse("cm ;\n  cu").unwrap(), &env) {
        Err(Error::Shape { node, line, column, message }) => {
            assert_eq!(node, "cu");
            assert_eq!((line, column), (2, 3));
            assert!(message.contains("expects"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn braid_needs_an_ambient_structure() {
    let env = Environment::for_algebra(&h4()).unwrap();
    assert!(matches!(
        evaluate(&parse("braid[H,H]").unwrap(), &env),
        Err(Error::Shape { .. })
    ));
}

#[test]
fn unbound_names_report_their_position() {
    let (_, env) = env_with_braiding();
    match evaluate(&parse("m ; (S * nope)").unwrap(), &env) {
        Err(Error::Unbound { name, line, column }) => {
            assert_eq!(name, "nope");
            assert_eq!((line, column), (1, 10));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(evaluate(&parse("id[W]").unwrap(), &env), Err(Error::Unbound { .. })));
}

#[test]
fn rebinding_is_refused() {
    let (h, mut env) = env_with_braiding();
    assert!(matches!(env.bind("m", h.m.clone()), Err(Error::Schema(_))));
    assert!(matches!(env.bind_space("H", h.shape()), Err(Error::Schema(_))));
    env.bind("mult", h.m.clone()).unwrap();
    assert_eq!(evaluate(&parse("mult").unwrap(), &env).unwrap(), h.m);
}
