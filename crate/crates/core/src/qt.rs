//! Quasitriangular structures, weak R-matrices, module braidings and transmutation.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{bialgebra_morphism_witness, element_inverse, leading_inputs, times_basis, HopfData, Legs};
use crate::linmap::{apply_columns_at, chain, compose, tensor, LinMap};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::Shape;
use crate::tensor::{Accum, SparseTensor};

/// What an element of a tensor square stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    R,
    P,
    Q,
    U,
    V,
    /// The canonical element of a Drinfeld double.
    Canonical,
    /// The composite R-matrix of a double built from a weak R-matrix.
    Composite,
    Other,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::R => "R",
            Role::P => "P",
            Role::Q => "Q",
            Role::U => "U",
            Role::V => "V",
            Role::Canonical => "[b]",
            Role::Composite => "R_D",
            Role::Other => "r",
        };
        f.write_str(s)
    }
}

/// An invertible element of `left ⊗ right` together with its inverse.
#[derive(Clone, Debug)]
pub struct QTElement {
    pub role: Role,
    pub left: Arc<HopfData>,
    pub right: Arc<HopfData>,
    pub value: SparseTensor,
    pub inverse: SparseTensor,
}

fn carrier(left: &HopfData, right: &HopfData) -> Shape {
    Shape::new(vec![left.space.clone(), right.space.clone()])
}

fn check_carrier(left: &HopfData, right: &HopfData, t: &SparseTensor) -> Result<()> {
    let c = carrier(left, right);
    if t.shape() != &c {
        return Err(Error::Dimension {
            left: t.shape().to_string(),
            right: c.to_string(),
        });
    }
    Ok(())
}

/// Inverse in `left ⊗ right`: tries `(S⊗id)r` first, then solves.
fn invert_pair(left: &HopfData, right: &HopfData, value: &SparseTensor) -> Result<SparseTensor> {
    let legs = Legs::new(vec![left, right]);
    let one = legs.one();
    if let Some(s) = &left.antipode {
        let cand = s.apply_at(value, 0)?;
        if legs.mul(&cand, value) == one && legs.mul(value, &cand) == one {
            return Ok(cand);
        }
    }
    element_inverse(value, &[left, right])
}

impl QTElement {
    pub fn new(
        role: Role,
        left: Arc<HopfData>,
        right: Arc<HopfData>,
        value: SparseTensor,
    ) -> Result<QTElement> {
        check_carrier(&left, &right, &value)?;
        let inverse = invert_pair(&left, &right, &value)?;
        Ok(QTElement {
            role,
            left,
            right,
            value,
            inverse,
        })
    }

    /// Uses a known inverse after checking both products.
    pub fn with_inverse(
        role: Role,
        left: Arc<HopfData>,
        right: Arc<HopfData>,
        value: SparseTensor,
        inverse: SparseTensor,
    ) -> Result<QTElement> {
        check_carrier(&left, &right, &value)?;
        check_carrier(&left, &right, &inverse)?;
        let legs = Legs::new(vec![&left, &right]);
        let one = legs.one();
        if legs.mul(&value, &inverse) != one || legs.mul(&inverse, &value) != one {
            return Err(Error::NotInvertible(format!("given inverse of {role} is wrong")));
        }
        Ok(QTElement {
            role,
            left,
            right,
            value,
            inverse,
        })
    }

    /// 1⊗1.
    pub fn unit(role: Role, left: Arc<HopfData>, right: Arc<HopfData>) -> QTElement {
        let value = left.one().outer(&right.one());
        QTElement {
            role,
            inverse: value.clone(),
            left,
            right,
            value,
        }
    }

    pub fn legs(&self) -> Legs<'_> {
        Legs::new(vec![&self.left, &self.right])
    }

    /// `(left index, right index, coefficient)` for each stored entry.
    pub fn terms(&self) -> Vec<(u64, u64, Scalar)> {
        split_terms(&self.value, self.right.dim() as u64)
    }

    pub fn inverse_terms(&self) -> Vec<(u64, u64, Scalar)> {
        split_terms(&self.inverse, self.right.dim() as u64)
    }

    pub fn flip(&self) -> SparseTensor {
        self.value.flip()
    }

    pub fn is_unit(&self) -> bool {
        self.value == self.left.one().outer(&self.right.one())
    }
}

fn split_terms(t: &SparseTensor, n: u64) -> Vec<(u64, u64, Scalar)> {
    t.entries().iter().map(|(f, c)| (f / n, f % n, c.clone())).collect()
}

fn differ(lhs: &SparseTensor, rhs: &SparseTensor) -> Option<String> {
    lhs.first_difference(rhs).map(|l| format!("sides differ at {l}"))
}

/// Checks (Δ⊗id)R = R13R23, (id⊗Δ)R = R13R12, R·Δ(h) = Δ^op(h)·R and invertibility.
pub fn check_qt(h: &HopfData, r: &SparseTensor) -> Report {
    let mut rep = Report::new();
    if r.shape() != &h.shape2() {
        rep.fail("R lies in H⊗H", format!("shape {} instead of {}", r.shape(), h.shape2()));
        return rep;
    }
    let l3 = Legs::power(h, 3);
    let r13 = l3.embed(r, &[0, 2]);
    let r23 = l3.embed(r, &[1, 2]);
    let r12 = l3.embed(r, &[0, 1]);
    let lhs = h.cm.apply_at(r, 0).expect("shape checked");
    rep.record("(Δ⊗id)R = R13R23", differ(&lhs, &l3.mul(&r13, &r23)));
    let lhs = h.cm.apply_at(r, 1).expect("shape checked");
    rep.record("(id⊗Δ)R = R13R12", differ(&lhs, &l3.mul(&r13, &r12)));

    let l2 = Legs::power(h, 2);
    let mut w = None;
    for (xl, x) in leading_inputs(h) {
        let d = h.comul(&x);
        if l2.mul(r, &d) != l2.mul(&d.flip(), r) {
            w = Some(format!("R·Δ(h) ≠ Δ^op(h)·R at h = {xl}"));
            break;
        }
    }
    rep.record("R·Δ(h) = Δ^op(h)·R", w);
    rep.record("R is invertible", invert_pair(h, h, r).err().map(|e| e.to_string()));
    rep
}

/// Whether R21·R = 1⊗1.
pub fn is_triangular(h: &HopfData, r: &QTElement) -> bool {
    let l2 = Legs::power(h, 2);
    l2.mul(&r.flip(), &r.value) == l2.one()
}

/// Checks the weak R-matrix identities (Δ_A⊗id)R = R13R23 and (id⊗Δ_H)R = R13R12 and
/// invertibility in the algebra A⊗H.
pub fn check_weak_r(a: &HopfData, h: &HopfData, r: &SparseTensor) -> Report {
    let mut rep = Report::new();
    let c = carrier(a, h);
    if r.shape() != &c {
        rep.fail("R lies in A⊗H", format!("shape {} instead of {c}", r.shape()));
        return rep;
    }
    let aah = Legs::new(vec![a, a, h]);
    let lhs = a.cm.apply_at(r, 0).expect("shape checked");
    let rhs = aah.mul(&aah.embed(r, &[0, 2]), &aah.embed(r, &[1, 2]));
    rep.record("(Δ_A⊗id)R = R13R23", differ(&lhs, &rhs));
    let ahh = Legs::new(vec![a, h, h]);
    let lhs = h.cm.apply_at(r, 1).expect("shape checked");
    let rhs = ahh.mul(&ahh.embed(r, &[0, 2]), &ahh.embed(r, &[0, 1]));
    rep.record("(id⊗Δ_H)R = R13R12", differ(&lhs, &rhs));
    rep.record("R is invertible", invert_pair(a, h, r).err().map(|e| e.to_string()));
    rep
}

/// Whether `u` is a weak R-matrix lying in the centre of A⊗H.
pub fn cw_membership(a: &HopfData, h: &HopfData, u: &SparseTensor) -> bool {
    if !check_weak_r(a, h, u).all_passed() {
        return false;
    }
    let legs = Legs::new(vec![a, h]);
    let left = (0..a.dim()).map(|i| a.basis(i).outer(&h.one()));
    let right = (0..h.dim()).map(|j| a.one().outer(&h.basis(j)));
    left.chain(right)
        .all(|x| legs.mul(u, &x) == legs.mul(&x, u))
}

/// R_D = Σ R′P′U′ ⊗ Q′R̄″V″ ⊗ P″R̄′V′ ⊗ R″Q″U″ in D⊗D, D carried by A⊗H.
///
/// `p` is on A⊗A, `q` on H⊗H and `r`, `u`, `v` on A⊗H; R̄ is the inverse of `r`.
pub fn compose_rd(
    d: &Arc<HopfData>,
    p: &QTElement,
    q: &QTElement,
    r: &QTElement,
    u: &QTElement,
    v: &QTElement,
) -> Result<QTElement> {
    let a = &r.left;
    let h = &r.right;
    let legs = Legs::new(vec![a, h, a, h]);
    for (name, x, l, rt) in [("P", p, a, a), ("Q", q, h, h), ("U", u, a, h), ("V", v, a, h)] {
        if x.left.space != l.space || x.right.space != rt.space {
            return Err(Error::Dimension {
                left: format!("{name} on {}⊗{}", x.left.space.name(), x.right.space.name()),
                right: format!("{}⊗{}", l.space.name(), rt.space.name()),
            });
        }
    }
    if d.dim() != a.dim() * h.dim() {
        return Err(Error::Dimension {
            left: format!("D of dimension {}", d.dim()),
            right: format!("{}⊗{}", a.space.name(), h.space.name()),
        });
    }
    let factors = [
        legs.embed(&r.value, &[0, 3]),
        legs.embed(&p.value, &[0, 2]),
        legs.embed(&q.value, &[1, 3]),
        legs.embed(&r.inverse, &[2, 1]),
        legs.embed(&u.value, &[0, 3]),
        legs.embed(&v.value, &[2, 1]),
    ];
    let refs: Vec<&SparseTensor> = factors.iter().collect();
    let value = legs.mul_all(&refs).reshape(d.shape2())?;
    QTElement::new(Role::Composite, d.clone(), d.clone(), value)
}

/// ad(h⊗b) = Σ h1·b·S(h2).
pub fn adjoint_action(h: &HopfData) -> Result<LinMap> {
    let s = h.antipode_map()?;
    let n = h.dim() as u64;
    Ok(LinMap::from_fn(h.shape2(), h.shape(), |f| {
        let (x, b) = (f / n, f % n);
        let mut acc = Accum::new();
        for (ij, c) in h.cm.col(x) {
            let (i, j) = (ij / n, ij % n);
            for (k, e) in h.m.col(i * n + b) {
                let ce = c * e;
                for (l, sv) in s.col(j) {
                    let cs = &ce * sv;
                    for (q, d) in h.m.col(k * n + l) {
                        acc.add(*q, &cs * d);
                    }
                }
            }
        }
        acc.finish(h.shape())
    }))
}

#[derive(Clone, Debug)]
enum Action {
    Map(LinMap),
    Tensor(Box<Module>, Box<Module>),
}

/// A left module over a Hopf algebra; tensor products act through Δ without being materialized.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<HopfData>,
    carrier: Shape,
    action: Action,
}

impl Module {
    /// `action: H⊗V → V`, with V given by `carrier`.
    pub fn new(algebra: Arc<HopfData>, carrier: Shape, action: LinMap) -> Result<Module> {
        let dom = algebra.shape().concat(&carrier);
        if action.domain() != &dom || action.codomain() != &carrier {
            return Err(Error::Dimension {
                left: format!("{} → {}", action.domain(), action.codomain()),
                right: format!("{dom} → {carrier}"),
            });
        }
        Ok(Module {
            algebra,
            carrier,
            action: Action::Map(action),
        })
    }

    pub fn regular(h: &Arc<HopfData>) -> Module {
        Module {
            algebra: h.clone(),
            carrier: h.shape(),
            action: Action::Map(h.m.clone()),
        }
    }

    pub fn adjoint(h: &Arc<HopfData>) -> Result<Module> {
        Ok(Module {
            algebra: h.clone(),
            carrier: h.shape(),
            action: Action::Map(adjoint_action(h)?),
        })
    }

    /// The same space acted on through an algebra map `f: along → algebra`.
    pub fn pullback(&self, f: &LinMap, along: &Arc<HopfData>) -> Result<Module> {
        if f.domain() != &along.shape() || f.codomain() != &self.algebra.shape() {
            return Err(Error::Dimension {
                left: format!("{} → {}", f.domain(), f.codomain()),
                right: format!("{} → {}", along.shape(), self.algebra.shape()),
            });
        }
        let action = match &self.action {
            Action::Map(m) => {
                let pre = tensor(f, &LinMap::identity(self.carrier.clone()));
                Action::Map(compose(&pre, m)?)
            }
            Action::Tensor(l, r) => {
                Action::Tensor(Box::new(l.pullback(f, along)?), Box::new(r.pullback(f, along)?))
            }
        };
        Ok(Module {
            algebra: along.clone(),
            carrier: self.carrier.clone(),
            action,
        })
    }

    /// V⊗W with h acting as Σ h1▷v ⊗ h2▷w.
    pub fn tensor(&self, o: &Module) -> Result<Module> {
        if self.algebra.space != o.algebra.space {
            return Err(Error::Dimension {
                left: self.algebra.space.name().to_string(),
                right: o.algebra.space.name().to_string(),
            });
        }
        Ok(Module {
            algebra: self.algebra.clone(),
            carrier: self.carrier.concat(&o.carrier),
            action: Action::Tensor(Box::new(self.clone()), Box::new(o.clone())),
        })
    }

    pub fn algebra(&self) -> &Arc<HopfData> {
        &self.algebra
    }

    pub fn carrier(&self) -> &Shape {
        &self.carrier
    }

    /// e_h ▷ e_v.
    pub fn act_basis(&self, h: u64, v: u64) -> SparseTensor {
        match &self.action {
            Action::Map(m) => {
                let f = h * self.carrier.total() + v;
                SparseTensor::from_sorted(self.carrier.clone(), m.col(f).to_vec())
            }
            Action::Tensor(l, r) => {
                let n = self.algebra.dim() as u64;
                let nr = r.carrier.total();
                let (vl, vr) = (v / nr, v % nr);
                let mut acc = Accum::new();
                for (ij, c) in self.algebra.cm.col(h) {
                    let (i, j) = (ij / n, ij % n);
                    let x = l.act_basis(i, vl);
                    if x.is_zero() {
                        continue;
                    }
                    let y = r.act_basis(j, vr);
                    for (p, a) in x.entries() {
                        let ca = c * a;
                        for (q, b) in y.entries() {
                            acc.add(p * nr + q, &ca * b);
                        }
                    }
                }
                acc.finish(self.carrier.clone())
            }
        }
    }

    /// x ▷ v for arbitrary elements.
    pub fn act(&self, x: &SparseTensor, v: &SparseTensor) -> SparseTensor {
        let mut acc = Accum::new();
        for (h, c) in x.entries() {
            for (f, d) in v.entries() {
                let cd = c * d;
                for (i, e) in self.act_basis(*h, *f).entries() {
                    acc.add(*i, &cd * e);
                }
            }
        }
        acc.finish(self.carrier.clone())
    }

    /// The action as a map H⊗V → V.
    pub fn action_map(&self) -> LinMap {
        match &self.action {
            Action::Map(m) => m.clone(),
            Action::Tensor(..) => {
                let nv = self.carrier.total();
                LinMap::from_fn(
                    self.algebra.shape().concat(&self.carrier),
                    self.carrier.clone(),
                    |f| self.act_basis(f / nv, f % nv),
                )
            }
        }
    }

    /// Checks 1▷v = v and (hk)▷v = h▷(k▷v); tensor products are checked factorwise.
    pub fn axiom_witness(&self) -> Option<String> {
        match &self.action {
            Action::Tensor(l, r) => l.axiom_witness().or_else(|| r.axiom_witness()),
            Action::Map(_) => {
                let h = &self.algebra;
                let n = h.dim() as u64;
                let nv = self.carrier.total();
                let one = h.one();
                for v in 0..nv {
                    let e = SparseTensor::basis_flat(self.carrier.clone(), v);
                    if self.act(&one, &e) != e {
                        return Some(format!("1▷v ≠ v at v = {}", self.carrier.labels_of(v).join("⊗")));
                    }
                }
                for (xl, x) in leading_inputs(h) {
                    for k in 0..n {
                        let ik = SparseTensor::from_sorted(h.shape(), times_basis(h, &x, k));
                        for v in 0..nv {
                            let kv = self.act_basis(k, v);
                            let lhs = self.act(&ik, &SparseTensor::basis_flat(self.carrier.clone(), v));
                            let rhs = self.act(&x, &kv);
                            if lhs != rhs {
                                return Some(format!(
                                    "(hk)▷v ≠ h▷(k▷v) at ({xl}, {}, {})",
                                    h.label(k),
                                    self.carrier.labels_of(v).join("⊗")
                                ));
                            }
                        }
                    }
                }
                None
            }
        }
    }
}

/// c_{V,W}(v⊗w) = Σ R″▷w ⊗ R′▷v, evaluated on demand with cached basis images.
pub struct Crossing<'a> {
    terms: Vec<(u64, u64, Scalar)>,
    v: &'a Module,
    w: &'a Module,
    domain: Shape,
    codomain: Shape,
    memo: RefCell<HashMap<u64, Rc<SparseTensor>>>,
}

impl<'a> Crossing<'a> {
    pub fn new(r: &QTElement, v: &'a Module, w: &'a Module) -> Result<Crossing<'a>> {
        for m in [v, w] {
            if m.algebra.space != r.left.space || m.algebra.space != r.right.space {
                return Err(Error::Dimension {
                    left: format!("module over {}", m.algebra.space.name()),
                    right: format!("R on {}⊗{}", r.left.space.name(), r.right.space.name()),
                });
            }
        }
        Ok(Crossing {
            terms: r.terms(),
            v,
            w,
            domain: v.carrier.concat(&w.carrier),
            codomain: w.carrier.concat(&v.carrier),
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn domain(&self) -> &Shape {
        &self.domain
    }

    pub fn codomain(&self) -> &Shape {
        &self.codomain
    }

    /// Image of the basis vector with flat index `f` of V⊗W.
    pub fn basis(&self, f: u64) -> Rc<SparseTensor> {
        if let Some(t) = self.memo.borrow().get(&f) {
            return t.clone();
        }
        let nw = self.w.carrier.total();
        let nv = self.v.carrier.total();
        let (vi, wi) = (f / nw, f % nw);
        let mut acc = Accum::new();
        for (i, j, c) in &self.terms {
            let y = self.w.act_basis(*j, wi);
            if y.is_zero() {
                continue;
            }
            let x = self.v.act_basis(*i, vi);
            for (p, a) in y.entries() {
                let ca = c * a;
                for (q, b) in x.entries() {
                    acc.add(p * nv + q, &ca * b);
                }
            }
        }
        let t = Rc::new(acc.finish(self.codomain.clone()));
        self.memo.borrow_mut().insert(f, t.clone());
        t
    }

    pub fn apply(&self, t: &SparseTensor) -> Result<SparseTensor> {
        self.apply_at(t, 0)
    }

    /// Applies the crossing to the legs of `t` starting at `leg`.
    pub fn apply_at(&self, t: &SparseTensor, leg: usize) -> Result<SparseTensor> {
        apply_columns_at(t, leg, &self.domain, &self.codomain, |j| (*self.basis(j)).clone())
    }

    pub fn materialize(&self) -> LinMap {
        LinMap::from_fn(self.domain.clone(), self.codomain.clone(), |j| (*self.basis(j)).clone())
    }
}

fn same_space(h: &HopfData, r: &QTElement) -> Result<()> {
    if r.left.space != h.space || r.right.space != h.space {
        return Err(Error::Dimension {
            left: format!("R on {}⊗{}", r.left.space.name(), r.right.space.name()),
            right: format!("{}⊗{}", h.space.name(), h.space.name()),
        });
    }
    Ok(())
}

/// The braiding C^R between two modules, as a map V⊗W → W⊗V.
pub fn module_braiding(h: &HopfData, r: &QTElement, v: &Module, w: &Module) -> Result<LinMap> {
    same_space(h, r)?;
    for m in [v, w] {
        if let Some(wit) = m.axiom_witness() {
            return Err(Error::Morphism(format!("not a module: {wit}")));
        }
    }
    Ok(Crossing::new(r, v, w)?.materialize())
}

/// Hexagon identities, Yang–Baxter and naturality of C^R on three modules.
pub fn braiding_axioms(r: &QTElement, u: &Module, v: &Module, w: &Module) -> Result<Report> {
    let mut rep = Report::new();
    let id = |m: &Module| LinMap::identity(m.carrier.clone());
    let c = |x: &Module, y: &Module| -> Result<LinMap> { Ok(Crossing::new(r, x, y)?.materialize()) };
    let c_uv = c(u, v)?;
    let c_uw = c(u, w)?;
    let c_vw = c(v, w)?;
    let uv = u.tensor(v)?;
    let vw = v.tensor(w)?;

    let lhs = c(&uv, w)?;
    let rhs = chain(&[&tensor(&id(u), &c_vw), &tensor(&c_uw, &id(v))])?;
    rep.record(
        "hexagon: c(U⊗V, W) = (c(U,W)⊗id)(id⊗c(V,W))",
        lhs.first_difference(&rhs).map(|p| format!("at {p:?}")),
    );
    let lhs = c(u, &vw)?;
    let rhs = chain(&[&tensor(&c_uv, &id(w)), &tensor(&id(v), &c_uw)])?;
    rep.record(
        "hexagon: c(U, V⊗W) = (id⊗c(U,W))(c(U,V)⊗id)",
        lhs.first_difference(&rhs).map(|p| format!("at {p:?}")),
    );

    let lhs = chain(&[
        &tensor(&c_uv, &id(w)),
        &tensor(&id(v), &c_uw),
        &tensor(&c_vw, &id(u)),
    ])?;
    let rhs = chain(&[
        &tensor(&id(u), &c_vw),
        &tensor(&c_uw, &id(v)),
        &tensor(&id(w), &c_uv),
    ])?;
    rep.record(
        "Yang–Baxter",
        lhs.first_difference(&rhs).map(|p| format!("at {p:?}")),
    );

    // naturality against the action: c(h▷(v⊗w)) = h▷c(v⊗w)
    let h = &u.algebra;
    let cr = Crossing::new(r, u, v)?;
    let vu = v.tensor(u)?;
    let mut wit = None;
    'nat: for (xl, x) in leading_inputs(h) {
        for f in 0..uv.carrier.total() {
            let lhs = cr.apply(&uv.act(&x, &SparseTensor::basis_flat(uv.carrier.clone(), f)))?;
            let rhs = vu.act(&x, &cr.basis(f));
            if lhs != rhs {
                wit = Some(format!("at h = {xl}, basis {}", uv.carrier.labels_of(f).join("⊗")));
                break 'nat;
            }
        }
    }
    rep.record("c(U,V) is a module map", wit);
    Ok(rep)
}

/// Whether c(W,V)∘c(V,W) = id.
pub fn braiding_is_symmetric(r: &QTElement, v: &Module, w: &Module) -> Result<bool> {
    let there = Crossing::new(r, v, w)?.materialize();
    let back = Crossing::new(r, w, v)?.materialize();
    Ok(compose(&there, &back)?.is_identity())
}

/// A bialgebra in the category of modules over a quasitriangular Hopf algebra.
#[derive(Clone, Debug)]
pub struct BraidedHopfData {
    /// Product and unit of the underlying algebra; braided coproduct and antipode.
    pub data: HopfData,
    pub ambient: Arc<HopfData>,
    pub r: QTElement,
    /// How the ambient algebra acts on `data.space`.
    pub module: Module,
}

impl BraidedHopfData {
    pub fn crossing(&self) -> Crossing<'_> {
        Crossing::new(&self.r, &self.module, &self.module).expect("checked at construction")
    }

    pub fn braided_antipode(&self) -> &LinMap {
        self.data.antipode.as_ref().expect("transmutation has an antipode")
    }
}

/// Transmutation B(H₁, f, H): the algebra H with
/// Δ_B(b) = Σ b1·S(f(R″)) ⊗ f(R′)▷b2 and S_B(b) = Σ f(R″)·S(f(R′)▷b), ▷ the adjoint action.
pub fn transmute(
    h1: &Arc<HopfData>,
    f: &LinMap,
    h: &Arc<HopfData>,
    r1: &QTElement,
) -> Result<BraidedHopfData> {
    if let Some(w) = bialgebra_morphism_witness(f, h1, h) {
        return Err(Error::Morphism(w));
    }
    same_space(h1, r1)?;
    let s = h.antipode_map()?;
    let ad = adjoint_action(h)?;
    let n = h.dim() as u64;
    let images: Vec<(SparseTensor, SparseTensor, SparseTensor, Scalar)> = r1
        .terms()
        .into_iter()
        .map(|(i, j, c)| {
            let fl = f.column(i);
            let fr = f.column(j);
            let sfr = s.apply(&fr).expect("shape");
            (fl, fr, sfr, c)
        })
        .collect();
    let ad_by = |x: &SparseTensor, b: u64| -> SparseTensor {
        let mut acc = Accum::new();
        for (k, c) in x.entries() {
            for (q, e) in ad.col(k * n + b) {
                acc.add(*q, c * e);
            }
        }
        acc.finish(h.shape())
    };
    // W(b) = Σ S(f(R″)) ⊗ f(R′)▷b
    let ws: Vec<SparseTensor> = (0..n)
        .map(|b| {
            let mut acc = Accum::new();
            for (fl, _, sfr, c) in &images {
                let y = ad_by(fl, b);
                for (p, a) in sfr.entries() {
                    let ca = c * a;
                    for (q, e) in y.entries() {
                        acc.add(p * n + q, &ca * e);
                    }
                }
            }
            acc.finish(h.shape2())
        })
        .collect();
    let cm = LinMap::from_fn(h.shape(), h.shape2(), |b| {
        let mut acc = Accum::new();
        for (ij, c) in h.cm.col(b) {
            let (b1, b2) = (ij / n, ij % n);
            for (kl, e) in ws[b2 as usize].entries() {
                let (k, l) = (kl / n, kl % n);
                let ce = c * e;
                for (q, d) in h.m.col(b1 * n + k) {
                    acc.add(q * n + l, &ce * d);
                }
            }
        }
        acc.finish(h.shape2())
    });
    let sb = LinMap::from_fn(h.shape(), h.shape(), |b| {
        let mut acc = Accum::new();
        for (fl, fr, _, c) in &images {
            let y = s.apply(&ad_by(fl, b)).expect("shape");
            for (q, e) in h.mul(fr, &y).entries() {
                acc.add(*q, c * e);
            }
        }
        acc.finish(h.shape())
    });
    let data = HopfData::new(
        format!("B({}, {})", h1.name, h.name),
        h.field,
        h.space.clone(),
        h.m.clone(),
        h.unit.clone(),
        cm,
        h.counit.clone(),
        Some(sb),
    )?
    .inherit_generators(h);
    let adj = Module {
        algebra: h.clone(),
        carrier: h.shape(),
        action: Action::Map(ad),
    };
    let module = if Arc::ptr_eq(h1, h) && f.is_identity() {
        adj
    } else {
        adj.pullback(f, h1)?
    };
    Ok(BraidedHopfData {
        data,
        ambient: h1.clone(),
        r: r1.clone(),
        module,
    })
}

/// The braided group analogue H̲ = B(H, id, H).
pub fn braided_analogue(h: &Arc<HopfData>, r: &QTElement) -> Result<BraidedHopfData> {
    let mut b = transmute(h, &LinMap::identity(h.shape()), h, r)?;
    b.data.name = format!("{} (braided)", h.name);
    Ok(b)
}

/// Product of the braided tensor square: (x1⊗x2)(y1⊗y2) = x1·c(x2⊗y1)·y2.
pub fn braided_square_mul(
    h: &HopfData,
    c: &Crossing<'_>,
    x: &SparseTensor,
    y: &SparseTensor,
) -> SparseTensor {
    let n = h.dim() as u64;
    let mut acc = Accum::new();
    for (fx, cx) in x.entries() {
        let (x1, x2) = (fx / n, fx % n);
        for (fy, cy) in y.entries() {
            let (y1, y2) = (fy / n, fy % n);
            let cxy = cx * cy;
            let cr = c.basis(x2 * n + y1);
            for (kl, e) in cr.entries() {
                let (k, l) = (kl / n, kl % n);
                let left = h.m.col(x1 * n + k);
                if left.is_empty() {
                    continue;
                }
                let right = h.m.col(l * n + y2);
                let ce = &cxy * e;
                for (p, d1) in left {
                    let cd = &ce * d1;
                    for (q, d2) in right {
                        acc.add(p * n + q, &cd * d2);
                    }
                }
            }
        }
    }
    acc.finish(h.shape2())
}

/// z ↦ Δ(x)·z in the braided tensor square, through y1 ↦ Δ(x)(y1⊗1) computed once per y1.
struct DeltaTimes<'a> {
    h: &'a HopfData,
    cross: &'a Crossing<'a>,
    dx: Vec<(u64, u64, Scalar)>,
    memo: RefCell<HashMap<u64, Rc<Vec<(u64, u64, Scalar)>>>>,
}

impl<'a> DeltaTimes<'a> {
    fn new(h: &'a HopfData, cross: &'a Crossing<'a>, dx: &SparseTensor) -> DeltaTimes<'a> {
        let n = h.dim() as u64;
        DeltaTimes {
            h,
            cross,
            dx: dx.entries().iter().map(|(f, c)| (f / n, f % n, c.clone())).collect(),
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Σ x1·k ⊗ l over c(x2⊗y1) = Σ k⊗l.
    fn first_leg(&self, y1: u64) -> Rc<Vec<(u64, u64, Scalar)>> {
        if let Some(v) = self.memo.borrow().get(&y1) {
            return v.clone();
        }
        let n = self.h.dim() as u64;
        let mut acc = Accum::new();
        for (x1, x2, c) in &self.dx {
            for (kl, e) in self.cross.basis(x2 * n + y1).entries() {
                let (k, l) = (kl / n, kl % n);
                let ce = c * e;
                for (p, d) in self.h.m.col(x1 * n + k) {
                    acc.add(p * n + l, &ce * d);
                }
            }
        }
        let v: Rc<Vec<(u64, u64, Scalar)>> =
            Rc::new(acc.into_sorted().into_iter().map(|(f, c)| (f / n, f % n, c)).collect());
        self.memo.borrow_mut().insert(y1, v.clone());
        v
    }

    fn apply(&self, z: &SparseTensor) -> SparseTensor {
        let n = self.h.dim() as u64;
        let mut acc = Accum::new();
        for (f, c) in z.entries() {
            let (y1, y2) = (f / n, f % n);
            for (p, l, e) in self.first_leg(y1).iter() {
                let ce = c * e;
                for (q, d) in self.h.m.col(l * n + y2) {
                    acc.add(p * n + q, &ce * d);
                }
            }
        }
        acc.finish(self.h.shape2())
    }
}

/// Braided bialgebra and Hopf axioms, plus compatibility of the structure maps with the action.
pub fn verify_braided(b: &BraidedHopfData) -> Report {
    let mut rep = Report::new();
    let h = &b.data;
    let amb = &b.ambient;
    let n = h.dim() as u64;
    let one = h.one();

    rep.record("module axioms", b.module.axiom_witness());

    let deltas: Vec<SparseTensor> = (0..n).map(|i| h.comul(&h.basis(i as usize))).collect();
    let mut w = None;
    for i in 0..n {
        let d = &deltas[i as usize];
        if h.cm.apply_at(d, 0).unwrap() != h.cm.apply_at(d, 1).unwrap() {
            w = Some(format!("at {}", h.label(i)));
            break;
        }
    }
    rep.record("coassociativity", w);
    for (name, leg) in [("counit: (ε⊗id)Δ = id", 0), ("counit: (id⊗ε)Δ = id", 1)] {
        let mut w = None;
        for i in 0..n {
            let got = h.counit.apply_at(&deltas[i as usize], leg).unwrap().reshape(h.shape()).unwrap();
            if got != h.basis(i as usize) {
                w = Some(format!("at {}", h.label(i)));
                break;
            }
        }
        rep.record(name, w);
    }

    let cross = b.crossing();
    let mut w = None;
    'law: for (xl, x) in leading_inputs(h) {
        let by_x = DeltaTimes::new(h, &cross, &h.comul(&x));
        for j in 0..n {
            let prod = SparseTensor::from_sorted(h.shape(), times_basis(h, &x, j));
            let lhs = h.comul(&prod);
            if lhs != by_x.apply(&deltas[j as usize]) {
                w = Some(format!("Δ(xy) ≠ Δ(x)Δ(y) at ({xl}, {})", h.label(j)));
                break 'law;
            }
        }
    }
    rep.record("braided bialgebra: Δ(xy) = Δ(x)Δ(y)", w);
    rep.record(
        "braided bialgebra: Δ(1) = 1⊗1",
        (h.comul(&one) != one.outer(&one)).then(|| "Δ(1) ≠ 1⊗1".to_string()),
    );
    let eps = h.counit_values();
    let mut w = None;
    'eps: for (xl, x) in leading_inputs(h) {
        let ex = h.eps(&x);
        for j in 0..n {
            let prod = SparseTensor::from_sorted(h.shape(), times_basis(h, &x, j));
            if h.eps(&prod) != &ex * &eps[j as usize] {
                w = Some(format!("at ({xl}, {})", h.label(j)));
                break 'eps;
            }
        }
    }
    rep.record("braided bialgebra: ε(xy) = ε(x)ε(y)", w);

    if let Some(s) = &h.antipode {
        for (name, leg) in [("braided antipode: m(S⊗id)Δ = ηε", 0), ("braided antipode: m(id⊗S)Δ = ηε", 1)] {
            let mut w = None;
            for i in 0..n {
                let t = s.apply_at(&deltas[i as usize], leg).unwrap();
                if h.m.apply(&t).unwrap() != one.scale(&eps[i as usize]) {
                    w = Some(format!("at {}", h.label(i)));
                    break;
                }
            }
            rep.record(name, w);
        }
    }

    // structure maps commute with the action
    let m2 = b.module.tensor(&b.module).expect("same algebra");
    let gens = leading_inputs(amb);
    let mut w = None;
    'dm: for (al, a) in &gens {
        for j in 0..n {
            let lhs = h.comul(&b.module.act(a, &h.basis(j as usize)));
            let rhs = m2.act(a, &deltas[j as usize]);
            if lhs != rhs {
                w = Some(format!("at ({al}, {})", h.label(j)));
                break 'dm;
            }
        }
    }
    rep.record("Δ is a module map", w);
    let mut w = None;
    'mm: for (al, a) in &gens {
        for f in 0..n * n {
            let prod = SparseTensor::from_sorted(h.shape(), h.m.col(f).to_vec());
            let lhs = b.module.act(a, &prod);
            let acted = m2.act(a, &SparseTensor::basis_flat(h.shape2(), f));
            let rhs = h.m.apply(&acted).unwrap();
            if lhs != rhs {
                w = Some(format!("at ({al}, {})", h.shape2().labels_of(f).join("⊗")));
                break 'mm;
            }
        }
    }
    rep.record("m is a module map", w);
    if let Some(s) = &h.antipode {
        let mut w = None;
        'sm: for (al, a) in &gens {
            for j in 0..n {
                let lhs = s.apply(&b.module.act(a, &h.basis(j as usize))).unwrap();
                let rhs = b.module.act(a, &s.column(j));
                if lhs != rhs {
                    w = Some(format!("at ({al}, {})", h.label(j)));
                    break 'sm;
                }
            }
        }
        rep.record("S is a module map", w);
    }
    rep
}

/// First structure map on which two Hopf data differ, comparing raw coefficients.
pub fn same_structure(x: &HopfData, y: &HopfData) -> Option<String> {
    let pairs: [(&str, &LinMap, &LinMap); 4] = [
        ("m", &x.m, &y.m),
        ("unit", &x.unit, &y.unit),
        ("Δ", &x.cm, &y.cm),
        ("ε", &x.counit, &y.counit),
    ];
    for (name, a, b) in pairs {
        if a.domain().total() != b.domain().total() || a.codomain().total() != b.codomain().total() {
            return Some(format!("{name}: sizes differ"));
        }
        let b = b.reshape(a.domain().clone(), a.codomain().clone()).ok()?;
        if let Some((i, j)) = a.first_difference(&b) {
            return Some(format!(
                "{name} differs at ({}, {})",
                a.codomain().labels_of(i).join("⊗"),
                a.domain().labels_of(j).join("⊗")
            ));
        }
    }
    match (&x.antipode, &y.antipode) {
        (Some(a), Some(b)) => {
            let b = b.reshape(a.domain().clone(), a.codomain().clone()).ok()?;
            a.first_difference(&b).map(|(i, j)| {
                format!("S differs at ({}, {})", a.codomain().labels_of(i)[0], a.domain().labels_of(j)[0])
            })
        }
        (None, None) => None,
        _ => Some("only one side has an antipode".into()),
    }
}
