#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfcross::catalog::{half_sign_element, sweedler4};
use hopfcross::expr::{evaluate, parse, Environment, Expr, Node};
use hopfcross::factor::BraidedDouble;
use hopfcross::linmap::{compose, tensor};
use hopfcross::qt::{module_braiding, Module, QTElement, Role};
use hopfcross::{Field, HopfData, LinMap, Scalar, SparseTensor};

pub fn h4() -> Arc<HopfData> {
    Arc::new(sweedler4(Field::Rational).unwrap())
}

/// H4 with R_0 bound, so `braid[V,V]` is available.
pub fn env_with_braiding() -> (Arc<HopfData>, Environment) {
    let h = h4();
    let r = QTElement::new(Role::R, h.clone(), h.clone(), half_sign_element(&h)).unwrap();
    let env = Environment::for_algebra(&h).unwrap().with_quasitriangular(r).unwrap();
    (h, env)
}

/// Expressions paired with the map they should denote, built directly from the maps.
pub struct Pool {
    items: Vec<(Expr, LinMap)>,
}

impl Pool {
    pub fn leaves(h: &Arc<HopfData>, env: &Environment) -> Pool {
        let mut items: Vec<(Expr, LinMap)> = env
            .map_names()
            .map(|n| (Expr::name(n), env.map(n).unwrap().clone()))
            .collect();
        let hs = h.shape();
        items.push((Expr::new(Node::Id("H".into())), LinMap::identity(hs.clone())));
        items.push((Expr::new(Node::Swap("H".into(), "H".into())), LinMap::swap(&h.space, &h.space)));
        let r = QTElement::new(Role::R, h.clone(), h.clone(), half_sign_element(h)).unwrap();
        let reg = Module::regular(h);
        let c = module_braiding(h, &r, &reg, &reg).unwrap();
        items.push((Expr::new(Node::Braid("V".into(), "V".into())), c));
        Pool { items }
    }

    pub fn grow(&mut self, rng: &mut ChaCha8Rng) -> Option<(Expr, LinMap)> {
        let (a, fa) = self.items.choose(rng)?.clone();
        let made = if rng.gen_bool(0.5) {
            let (b, fb) = self.items.choose(rng)?.clone();
            if fa.domain().total() * fb.domain().total() > 256 || fa.codomain().total() * fb.codomain().total() > 256 {
                return None;
            }
            (a.tensor(b), tensor(&fa, &fb))
        } else {
            let next: Vec<&(Expr, LinMap)> = self.items.iter().filter(|(_, g)| g.domain() == fa.codomain()).collect();
            let (b, fb) = (*next.choose(rng)?).clone();
            (a.then(b), compose(&fa, &fb).unwrap())
        };
        if made.0.size() > 12 {
            return None;
        }
        self.items.push(made.clone());
        Some(made)
    }
}

/// Prints `count` random expressions, parses and evaluates them, and compares against the
/// map assembled directly. Returns the first disagreement.
pub fn random_expressions_agree(count: usize, seed: u64) -> Result<(), String> {
    let (h, env) = env_with_braiding();
    let mut pool = Pool::leaves(&h, &env);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < count {
        let Some((e, expected)) = pool.grow(&mut rng) else { continue };
        let text = e.to_string();
        let parsed = parse(&text).map_err(|err| format!("{text}: {err}"))?;
        let got = evaluate(&parsed, &env).map_err(|err| format!("{text}: {err}"))?;
        if got != expected {
            return Err(format!("{text} evaluates differently"));
        }
        checked += 1;
    }
    Ok(())
}

fn terms(t: &SparseTensor, n: u64) -> Vec<(u64, u64, Scalar)> {
    t.entries().iter().map(|(f, c)| (f / n, f % n, c.clone())).collect()
}

fn product(alg: &HopfData, xs: [u64; 3]) -> Vec<(u64, Scalar)> {
    let t = alg.mul(&alg.mul(&alg.basis(xs[0] as usize), &alg.basis(xs[1] as usize)), &alg.basis(xs[2] as usize));
    t.entries().to_vec()
}

/// R_B = Σ R′P′U′ ⊗ Q′R̄″V″ ⊗ P″R̄′V′ ⊗ R″Q″U″ expanded sum by sum over the terms of the six
/// factors, one leg product at a time.
pub fn expand_rb(bd: &BraidedDouble) -> SparseTensor {
    let (a, h) = (&bd.r.left, &bd.r.right);
    let (na, nh) = (a.dim() as u64, h.dim() as u64);
    let r = terms(&bd.r.value, nh);
    let rbar = terms(&bd.r.inverse, nh);
    let p = terms(&bd.p.value, na);
    let q = terms(&bd.q.value, nh);
    let u = terms(&bd.u.value, nh);
    let v = terms(&bd.v.value, nh);
    let mut acc: BTreeMap<u64, Scalar> = BTreeMap::new();
    for (r1, r2, cr) in &r {
        for (p1, p2, cp) in &p {
            for (q1, q2, cq) in &q {
                for (b1, b2, cb) in &rbar {
                    for (u1, u2, cu) in &u {
                        for (v1, v2, cv) in &v {
                            let c = &(&(&(&(cr * cp) * cq) * cb) * cu) * cv;
                            let l1 = product(a, [*r1, *p1, *u1]);
                            let l2 = product(h, [*q1, *b2, *v2]);
                            let l3 = product(a, [*p2, *b1, *v1]);
                            let l4 = product(h, [*r2, *q2, *u2]);
                            for (i1, c1) in &l1 {
                                for (i2, c2) in &l2 {
                                    for (i3, c3) in &l3 {
                                        for (i4, c4) in &l4 {
                                            let f = ((i1 * nh + i2) * na + i3) * nh + i4;
                                            let k = &(&(&(&c * c1) * c2) * c3) * c4;
                                            *acc.entry(f).or_insert_with(Scalar::zero) += &k;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let entries = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    SparseTensor::new(bd.d.shape2(), entries).unwrap()
}
