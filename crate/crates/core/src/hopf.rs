use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linmap::{chain, compose, tensor, LinMap};
use crate::report::Report;
use crate::scalar::{Field, Scalar};
use crate::solve::{invert, solve, Echelon};
use crate::space::{Shape, Space};
use crate::tensor::{Accum, SparseTensor};

/// Structure maps of a finite-dimensional bialgebra, with optional antipode.
///
/// Equality compares the structure maps, name and field; a recorded generating set is ignored.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub name: String,
    pub field: Field,
    pub space: Arc<Space>,
    /// H⊗H → H
    pub m: LinMap,
    /// k → H
    pub unit: LinMap,
    /// H → H⊗H
    pub cm: LinMap,
    /// H → k
    pub counit: LinMap,
    /// H → H
    pub antipode: Option<LinMap>,
    generators: Option<Vec<SparseTensor>>,
}

impl PartialEq for HopfData {
    fn eq(&self, o: &HopfData) -> bool {
        self.name == o.name
            && self.field == o.field
            && self.space == o.space
            && self.m == o.m
            && self.unit == o.unit
            && self.cm == o.cm
            && self.counit == o.counit
            && self.antipode == o.antipode
    }
}

impl Eq for HopfData {}

impl HopfData {
    /// Checks that every structure map has the right shape.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        space: Arc<Space>,
        m: LinMap,
        unit: LinMap,
        cm: LinMap,
        counit: LinMap,
        antipode: Option<LinMap>,
    ) -> Result<HopfData> {
        let h = Shape::of(&space);
        let hh = Shape::power(&space, 2);
        let k = Shape::unit();
        let expect = |what: &str, f: &LinMap, d: &Shape, c: &Shape| -> Result<()> {
            if f.domain() != d || f.codomain() != c {
                return Err(Error::Dimension {
                    left: format!("{what}: {} → {}", f.domain(), f.codomain()),
                    right: format!("{d} → {c}"),
                });
            }
            Ok(())
        };
        expect("m", &m, &hh, &h)?;
        expect("unit", &unit, &k, &h)?;
        expect("cm", &cm, &h, &hh)?;
        expect("counit", &counit, &h, &k)?;
        if let Some(s) = &antipode {
            expect("antipode", s, &h, &h)?;
        }
        Ok(HopfData {
            name: name.into(),
            field,
            space,
            m,
            unit,
            cm,
            counit,
            antipode,
            generators: None,
        })
    }

    /// Records elements that generate the algebra, after checking that they do.
    pub fn with_generators(mut self, gens: Vec<SparseTensor>) -> Result<HopfData> {
        if let Some(g) = gens.iter().find(|g| g.shape() != &self.shape()) {
            return Err(Error::Dimension {
                left: g.shape().to_string(),
                right: self.shape().to_string(),
            });
        }
        let got = generated_dim(&self, &gens);
        if got != self.dim() {
            return Err(Error::Missing(format!(
                "{} elements generate a {got}-dimensional subalgebra of {}",
                gens.len(),
                self.name
            )));
        }
        self.generators = Some(gens);
        Ok(self)
    }

    /// Keeps the generating set of `from`, which must have the same product and unit.
    pub(crate) fn inherit_generators(mut self, from: &HopfData) -> HopfData {
        if self.m == from.m && self.unit == from.unit {
            self.generators = from.generators.clone();
        }
        self
    }

    /// Elements generating the algebra: the recorded set, else basis elements chosen greedily.
    pub fn generator_elements(&self) -> Vec<SparseTensor> {
        match &self.generators {
            Some(g) => g.clone(),
            None => algebra_generators(self).into_iter().map(|i| self.basis(i as usize)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn shape(&self) -> Shape {
        Shape::of(&self.space)
    }

    pub fn shape2(&self) -> Shape {
        Shape::power(&self.space, 2)
    }

    pub fn basis(&self, i: usize) -> SparseTensor {
        SparseTensor::basis(self.shape(), &[i])
    }

    pub fn element(&self, label: &str) -> SparseTensor {
        let i = self
            .space
            .index_of(label)
            .unwrap_or_else(|| panic!("no basis element {label} in {}", self.name));
        self.basis(i)
    }

    pub fn one(&self) -> SparseTensor {
        self.unit.column(0)
    }

    pub fn mul(&self, x: &SparseTensor, y: &SparseTensor) -> SparseTensor {
        Legs::new(vec![self]).mul(x, y)
    }

    pub fn comul(&self, x: &SparseTensor) -> SparseTensor {
        self.cm.apply(x).expect("element shape")
    }

    pub fn eps(&self, x: &SparseTensor) -> Scalar {
        self.counit.apply(x).expect("element shape").get(0)
    }

    pub fn antipode_map(&self) -> Result<&LinMap> {
        self.antipode
            .as_ref()
            .ok_or_else(|| Error::Missing(format!("{} has no antipode", self.name)))
    }

    pub fn s(&self, x: &SparseTensor) -> Result<SparseTensor> {
        self.antipode_map()?.apply(x)
    }

    /// S⁻¹ by matrix inversion.
    pub fn antipode_inverse(&self) -> Result<LinMap> {
        invert(self.antipode_map()?).map_err(|_| {
            Error::NotInvertible(format!("antipode of {} is singular", self.name))
        })
    }

    /// Counit values on the basis, as a functional vector.
    pub fn counit_values(&self) -> Vec<Scalar> {
        (0..self.dim() as u64).map(|j| self.counit.get(0, j)).collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> HopfData {
        self.name = name.into();
        self
    }

    pub fn label(&self, i: u64) -> &str {
        self.space.label(i as usize)
    }
}

/// The tensor-product algebra of several algebras, acting on sparse tensors leg by leg.
pub struct Legs<'a> {
    algs: Vec<&'a HopfData>,
    shape: Shape,
    dims: Vec<u64>,
}

impl<'a> Legs<'a> {
    pub fn new(algs: Vec<&'a HopfData>) -> Legs<'a> {
        let shape = Shape::new(algs.iter().map(|a| a.space.clone()).collect());
        let dims = shape.dims();
        Legs { algs, shape, dims }
    }

    pub fn power(h: &'a HopfData, n: usize) -> Legs<'a> {
        Legs::new(vec![h; n])
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn one(&self) -> SparseTensor {
        let mut t = SparseTensor::scalar(Scalar::one());
        for a in &self.algs {
            t = t.outer(&a.one());
        }
        t
    }

    pub fn mul(&self, x: &SparseTensor, y: &SparseTensor) -> SparseTensor {
        debug_assert!(x.shape() == &self.shape && y.shape() == &self.shape);
        let k = self.algs.len();
        let ys: Vec<(Vec<usize>, &Scalar)> = y
            .entries()
            .iter()
            .map(|(f, c)| (self.shape.split(*f), c))
            .collect();
        let mut acc = Accum::new();
        let mut cols: Vec<&[(u64, Scalar)]> = vec![&[]; k];
        for (fx, cx) in x.entries() {
            let xi = self.shape.split(*fx);
            'pairs: for (yi, cy) in &ys {
                for l in 0..k {
                    let n = self.dims[l] as usize;
                    let c = self.algs[l].m.col((xi[l] * n + yi[l]) as u64);
                    if c.is_empty() {
                        continue 'pairs;
                    }
                    cols[l] = c;
                }
                let c0 = cx * *cy;
                cartesian(&cols, &self.dims, &c0, &mut acc);
            }
        }
        acc.finish(self.shape.clone())
    }

    pub fn mul_all(&self, xs: &[&SparseTensor]) -> SparseTensor {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Places the legs of `t` at `positions`, with units on the remaining legs.
    pub fn embed(&self, t: &SparseTensor, positions: &[usize]) -> SparseTensor {
        let k = self.algs.len();
        assert_eq!(t.shape().len(), positions.len());
        let others: Vec<usize> = (0..k).filter(|l| !positions.contains(l)).collect();
        let mut full = t.clone();
        for &o in &others {
            full = full.outer(&self.algs[o].one());
        }
        let mut perm = vec![0; k];
        for (q, &p) in positions.iter().enumerate() {
            perm[p] = q;
        }
        for (r, &o) in others.iter().enumerate() {
            perm[o] = positions.len() + r;
        }
        full.permute(&perm)
    }

    /// Applies Δ to one leg, producing two legs in its place.
    pub fn comul_leg(&self, t: &SparseTensor, leg: usize) -> SparseTensor {
        self.algs[leg].cm.apply_at(t, leg).expect("leg shape")
    }
}

fn cartesian(cols: &[&[(u64, Scalar)]], dims: &[u64], c0: &Scalar, acc: &mut Accum) {
    fn go(cols: &[&[(u64, Scalar)]], dims: &[u64], l: usize, idx: u64, c: &Scalar, acc: &mut Accum) {
        if l == cols.len() {
            acc.add_ref(idx, c);
            return;
        }
        for (i, e) in cols[l] {
            let c2 = c * e;
            go(cols, dims, l + 1, idx * dims[l] + i, &c2, acc);
        }
    }
    if cols.len() == 1 {
        for (i, e) in cols[0] {
            acc.add(*i, c0 * e);
        }
        return;
    }
    go(cols, dims, 0, 0, c0, acc);
}

fn labels(h: &HopfData, idx: &[u64]) -> String {
    idx.iter()
        .map(|i| h.label(*i).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// x·e_j as sorted entries.
pub(crate) fn times_basis(h: &HopfData, x: &SparseTensor, j: u64) -> Vec<(u64, Scalar)> {
    let n = h.dim() as u64;
    if let [(i, c)] = x.entries() {
        if c.is_one() {
            return h.m.col(i * n + j).to_vec();
        }
    }
    let mut acc = Accum::new();
    for (i, c) in x.entries() {
        for (k, e) in h.m.col(i * n + j) {
            acc.add(*k, c * e);
        }
    }
    acc.into_sorted()
}

/// Dimension of the subalgebra generated by `gens`.
pub fn generated_dim(h: &HopfData, gens: &[SparseTensor]) -> usize {
    let n = h.dim() as u64;
    let mut ech = Echelon::new();
    let mut frontier: Vec<Vec<(u64, Scalar)>> = Vec::new();
    if let Some(r) = ech.insert(h.one().entries(), None) {
        frontier.push(r);
    }
    while let Some(w) = frontier.pop() {
        for g in gens {
            let mut acc = Accum::new();
            for (i, c) in g.entries() {
                for (j, d) in &w {
                    let cd = c * d;
                    for (k, e) in h.m.col(i * n + j) {
                        acc.add(*k, &cd * e);
                    }
                }
            }
            if let Some(r) = ech.insert(&acc.into_sorted(), None) {
                frontier.push(r);
            }
        }
    }
    ech.rank()
}

/// A set of basis elements generating `h` as an algebra, chosen greedily in index order.
///
/// The subalgebra is computed as the span of left-nested words applied to 1.
pub fn algebra_generators(h: &HopfData) -> Vec<u64> {
    let n = h.dim() as u64;
    let mut ech = Echelon::new();
    let mut span: Vec<Vec<(u64, Scalar)>> = Vec::new();
    let mut done: Vec<usize> = Vec::new();
    let mut gens: Vec<u64> = Vec::new();
    if let Some(r) = ech.insert(h.one().entries(), None) {
        span.push(r);
        done.push(0);
    }
    let left_mul = |g: u64, w: &[(u64, Scalar)]| -> Vec<(u64, Scalar)> {
        let mut acc = Accum::new();
        for (j, c) in w {
            for (k, e) in h.m.col(g * n + j) {
                acc.add(*k, c * e);
            }
        }
        acc.into_sorted()
    };
    for b in 0..n {
        if ech.rank() as u64 == n {
            break;
        }
        if ech.contains(&[(b, Scalar::one())]) {
            continue;
        }
        gens.push(b);
        let mut k = 0;
        while k < span.len() {
            while done[k] < gens.len() {
                let v = left_mul(gens[done[k]], &span[k]);
                done[k] += 1;
                if let Some(r) = ech.insert(&v, None) {
                    span.push(r);
                    done.push(0);
                }
            }
            k += 1;
        }
    }
    gens
}

const FULL_CHECK_DIM: usize = 16;

/// Elements whose products with everything must be checked to cover an identity
/// that is closed under multiplication: the whole basis for small algebras, else generators.
/// Each comes with a label for witnesses.
pub(crate) fn leading_inputs(h: &HopfData) -> Vec<(String, SparseTensor)> {
    if h.dim() <= FULL_CHECK_DIM {
        (0..h.dim()).map(|i| (h.label(i as u64).to_string(), h.basis(i))).collect()
    } else {
        h.generator_elements()
            .into_iter()
            .map(|g| {
                let l = match g.entries() {
                    [(i, c)] if c.is_one() => h.label(*i).to_string(),
                    _ => g.to_string(),
                };
                (l, g)
            })
            .collect()
    }
}

/// Runs every Hopf algebra axiom exactly and reports failures with basis witnesses.
///
/// Above 16 dimensions, associativity and multiplicativity of Δ and ε are
/// checked on (generator, basis) inputs, which is equivalent given the
/// generators span the algebra.
pub fn verify_hopf(h: &HopfData) -> Report {
    let mut r = Report::new();
    let n = h.dim() as u64;
    let one = h.one();

    let mut w = None;
    for i in 0..n {
        let e = h.basis(i as usize);
        if h.mul(&one, &e) != e {
            w = Some(format!("1·{} ≠ {}", h.label(i), h.label(i)));
            break;
        }
    }
    let left_unit = w.is_none();
    r.record("unit: 1·x = x", w);
    let mut w = None;
    for i in 0..n {
        let e = h.basis(i as usize);
        if h.mul(&e, &one) != e {
            w = Some(format!("{}·1 ≠ {}", h.label(i), h.label(i)));
            break;
        }
    }
    let right_unit = w.is_none();
    r.record("unit: x·1 = x", w);

    let firsts: Vec<(String, SparseTensor)> = if h.dim() <= FULL_CHECK_DIM || !(left_unit && right_unit) {
        (0..n).map(|i| (h.label(i).to_string(), h.basis(i as usize))).collect()
    } else {
        leading_inputs(h)
    };

    // associativity on (first, j, k)
    let mut w = None;
    'assoc: for (xl, x) in &firsts {
        for j in 0..n {
            let xj = times_basis(h, x, j);
            for k in 0..n {
                let mut lhs = Accum::new();
                for (p, c) in &xj {
                    for (q, e) in h.m.col(p * n + k) {
                        lhs.add(*q, c * e);
                    }
                }
                let mut rhs = Accum::new();
                for (p, c) in h.m.col(j * n + k) {
                    for (q, e) in times_basis(h, x, *p) {
                        rhs.add(q, c * &e);
                    }
                }
                if lhs.into_sorted() != rhs.into_sorted() {
                    w = Some(format!("(x·y)·z ≠ x·(y·z) at ({xl}, {})", labels(h, &[j, k])));
                    break 'assoc;
                }
            }
        }
    }
    r.record("associativity", w);

    let hh = Legs::power(h, 2);
    let hhh_shape = Shape::power(&h.space, 3);
    let mut w = None;
    for i in 0..n {
        let d = h.comul(&h.basis(i as usize));
        let l = h.cm.apply_at(&d, 0).unwrap();
        let rr = h.cm.apply_at(&d, 1).unwrap();
        debug_assert!(l.shape() == &hhh_shape);
        if l != rr {
            w = Some(format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ at {}", h.label(i)));
            break;
        }
    }
    r.record("coassociativity", w);

    let mut w = None;
    for i in 0..n {
        let e = h.basis(i as usize);
        let d = h.comul(&e);
        let l = h.counit.apply_at(&d, 0).unwrap().reshape(h.shape()).unwrap();
        if l != e {
            w = Some(format!("(ε⊗id)Δ ≠ id at {}", h.label(i)));
            break;
        }
    }
    r.record("counit: (ε⊗id)Δ = id", w);
    let mut w = None;
    for i in 0..n {
        let e = h.basis(i as usize);
        let d = h.comul(&e);
        let l = h.counit.apply_at(&d, 1).unwrap().reshape(h.shape()).unwrap();
        if l != e {
            w = Some(format!("(id⊗ε)Δ ≠ id at {}", h.label(i)));
            break;
        }
    }
    r.record("counit: (id⊗ε)Δ = id", w);

    // bialgebra compatibility
    let deltas: Vec<SparseTensor> = (0..n).map(|i| h.comul(&h.basis(i as usize))).collect();
    let mut w = None;
    'bialg: for (xl, x) in &firsts {
        let dx = h.comul(x);
        for j in 0..n {
            let prod = SparseTensor::from_sorted(h.shape(), times_basis(h, x, j));
            let lhs = h.comul(&prod);
            let rhs = hh.mul(&dx, &deltas[j as usize]);
            if lhs != rhs {
                w = Some(format!("Δ(xy) ≠ Δ(x)Δ(y) at ({xl}, {})", h.label(j)));
                break 'bialg;
            }
        }
    }
    r.record("bialgebra: Δ(xy) = Δ(x)Δ(y)", w);
    let w = if h.comul(&one) != hh.one() {
        Some("Δ(1) ≠ 1⊗1".to_string())
    } else {
        None
    };
    r.record("bialgebra: Δ(1) = 1⊗1", w);
    let eps = h.counit_values();
    let mut w = None;
    'eps: for (xl, x) in &firsts {
        let ex = h.eps(x);
        for j in 0..n {
            let prod = SparseTensor::from_sorted(h.shape(), times_basis(h, x, j));
            if h.eps(&prod) != &ex * &eps[j as usize] {
                w = Some(format!("ε(xy) ≠ ε(x)ε(y) at ({xl}, {})", h.label(j)));
                break 'eps;
            }
        }
    }
    r.record("bialgebra: ε(xy) = ε(x)ε(y)", w);
    let w = if !h.eps(&one).is_one() {
        Some("ε(1) ≠ 1".to_string())
    } else {
        None
    };
    r.record("bialgebra: ε(1) = 1", w);

    if let Some(s) = &h.antipode {
        for (name, left) in [("antipode: m(S⊗id)Δ = ηε", true), ("antipode: m(id⊗S)Δ = ηε", false)] {
            let mut w = None;
            for i in 0..n {
                let leg = if left { 0 } else { 1 };
                let t = s.apply_at(&deltas[i as usize], leg).unwrap();
                let got = h.m.apply(&t).unwrap();
                let want = one.scale(&eps[i as usize]);
                if got != want {
                    w = Some(format!("fails at {}", h.label(i)));
                    break;
                }
            }
            r.record(name, w);
        }
    }
    r
}

/// `m_dst ∘ (f⊗g) ∘ Δ_src`.
pub fn convolution(f: &LinMap, g: &LinMap, src: &HopfData, dst: &HopfData) -> Result<LinMap> {
    let fg = tensor(f, g);
    chain(&[&src.cm, &fg, &dst.m])
}

/// The convolution inverse of `f: src → dst`, by solving `f * g = ηε`.
pub fn convolution_inverse_map(f: &LinMap, src: &HopfData, dst: &HopfData) -> Result<LinMap> {
    if f.domain() != &src.shape() || f.codomain() != &dst.shape() {
        return Err(Error::Dimension {
            left: format!("{} → {}", f.domain(), f.codomain()),
            right: format!("{} → {}", src.shape(), dst.shape()),
        });
    }
    let ns = src.dim() as u64;
    let nd = dst.dim() as u64;
    let hom = Shape::of(&Space::numbered("Hom", (ns * nd) as usize));
    // unknown g has entry (k, l) = coefficient of e_k in g(e_l), flat index l*nd + k
    let op = LinMap::from_fn(hom.clone(), hom.clone(), |u| {
        let (l0, k0) = (u / nd, u % nd);
        let mut acc = Accum::new();
        for l in 0..ns {
            for (ab, c) in src.cm.col(l) {
                let (a, b) = (ab / ns, ab % ns);
                if b != l0 {
                    continue;
                }
                for (p, e) in f.col(a) {
                    for (q, d) in dst.m.col(p * nd + k0) {
                        acc.add(l * nd + q, &(c * e) * d);
                    }
                }
            }
        }
        acc.finish(hom.clone())
    });
    let target = LinMap::vector(
        &SparseTensor::new(
            hom.clone(),
            (0..ns)
                .flat_map(|l| {
                    let e = src.counit.get(0, l);
                    dst.unit
                        .col(0)
                        .iter()
                        .map(move |(q, u)| (l * nd + q, &e * u))
                        .collect::<Vec<_>>()
                })
                .collect(),
        )?,
    );
    let sol = solve(&op, &target)
        .map_err(|_| Error::NotInvertible("map is not convolution-invertible".to_string()))?
        .column(0);
    let mut entries = Vec::new();
    for (u, c) in sol.entries() {
        entries.push((u % nd, u / nd, c.clone()));
    }
    let g = LinMap::from_entries(src.shape(), dst.shape(), entries)?;
    let check = convolution(&g, f, src, dst)?;
    let ue = compose(&src.counit, &dst.unit)?;
    if check != ue {
        return Err(Error::NotInvertible("left and right convolution inverses differ".into()));
    }
    Ok(g)
}

/// The inverse of `r` in the tensor-product algebra of `algs`, by solving `r·x = 1`.
pub fn element_inverse(r: &SparseTensor, algs: &[&HopfData]) -> Result<SparseTensor> {
    let legs = Legs::new(algs.to_vec());
    if r.shape() != legs.shape() {
        return Err(Error::Dimension {
            left: r.shape().to_string(),
            right: legs.shape().to_string(),
        });
    }
    let total = legs.shape().total();
    if total > 1 << 14 {
        return Err(Error::TooLarge(format!(
            "left multiplication on {} ({total} dims)",
            legs.shape()
        )));
    }
    let shape = legs.shape().clone();
    let op = LinMap::from_fn(shape.clone(), shape.clone(), |j| {
        legs.mul(r, &SparseTensor::basis_flat(shape.clone(), j))
    });
    let target = LinMap::vector(&legs.one());
    let inv = solve(&op, &target)
        .map_err(|_| Error::NotInvertible(format!("element of {shape} is not invertible")))?
        .column(0)
        .reshape(shape)?;
    if legs.mul(&inv, r) != legs.one() {
        return Err(Error::NotInvertible("left and right inverses differ".into()));
    }
    Ok(inv)
}

/// Hopf dual on the dual basis: product is the transpose of Δ, coproduct the transpose of m.
pub fn dual_hopf(h: &HopfData) -> Result<HopfData> {
    let s = h.antipode_map()?;
    let d = h.space.dual();
    let one = Shape::of(&d);
    let two = Shape::power(&d, 2);
    let k = Shape::unit();
    HopfData::new(
        format!("{}*", h.name),
        h.field,
        d,
        h.cm.transpose_to(two.clone(), one.clone())?,
        h.counit.transpose_to(k.clone(), one.clone())?,
        h.m.transpose_to(one.clone(), two)?,
        h.unit.transpose_to(one.clone(), k)?,
        Some(s.transpose_to(one.clone(), one)?),
    )
}

/// Same coalgebra, opposite product; antipode S⁻¹.
pub fn opposite(h: &HopfData) -> Result<HopfData> {
    let sw = LinMap::swap(&h.space, &h.space);
    let s = match &h.antipode {
        Some(_) => Some(h.antipode_inverse()?),
        None => None,
    };
    Ok(HopfData {
        name: format!("{}^op", h.name),
        m: compose(&sw, &h.m)?,
        antipode: s,
        ..h.clone()
    })
}

/// Same algebra, opposite coproduct; antipode S⁻¹.
pub fn co_opposite(h: &HopfData) -> Result<HopfData> {
    let sw = LinMap::swap(&h.space, &h.space);
    let s = match &h.antipode {
        Some(_) => Some(h.antipode_inverse()?),
        None => None,
    };
    Ok(HopfData {
        name: format!("{}^cop", h.name),
        cm: compose(&h.cm, &sw)?,
        antipode: s,
        ..h.clone()
    })
}

/// Evaluation and coevaluation between a space and its dual.
#[derive(Clone, Debug)]
pub struct DualityPair {
    pub primal: Arc<Space>,
    pub dual: Arc<Space>,
    /// H*⊗H → k
    pub ev: LinMap,
    /// k → H⊗H*
    pub coev: LinMap,
}

impl DualityPair {
    pub fn new(primal: Arc<Space>, dual: Arc<Space>) -> Result<DualityPair> {
        if primal.dim() != dual.dim() {
            return Err(Error::Dimension {
                left: primal.name().to_string(),
                right: dual.name().to_string(),
            });
        }
        let n = primal.dim() as u64;
        let ev = LinMap::from_entries(
            Shape::new(vec![dual.clone(), primal.clone()]),
            Shape::unit(),
            (0..n).map(|i| (0, i * n + i, Scalar::one())),
        )?;
        let coev = LinMap::from_entries(
            Shape::unit(),
            Shape::new(vec![primal.clone(), dual.clone()]),
            (0..n).map(|i| (i * n + i, 0, Scalar::one())),
        )?;
        Ok(DualityPair {
            primal,
            dual,
            ev,
            coev,
        })
    }

    /// (id_H⊗ev)(coev⊗id_H) and (ev⊗id_H*)(id_H*⊗coev).
    pub fn snakes(&self) -> (LinMap, LinMap) {
        let idh = LinMap::identity_on(&self.primal);
        let idd = LinMap::identity_on(&self.dual);
        let a = chain(&[&tensor(&self.coev, &idh), &tensor(&idh, &self.ev)]).unwrap();
        let b = chain(&[&tensor(&idd, &self.coev), &tensor(&self.ev, &idd)]).unwrap();
        (a, b)
    }

    pub fn snakes_hold(&self) -> bool {
        let (a, b) = self.snakes();
        a.is_identity() && b.is_identity()
    }
}

pub fn make_duality(h: &HopfData) -> DualityPair {
    DualityPair::new(h.space.clone(), h.space.dual()).unwrap()
}

/// Whether `f: a → b` preserves products, unit, coproducts and counit. Returns a witness on failure.
pub fn bialgebra_morphism_witness(f: &LinMap, a: &HopfData, b: &HopfData) -> Option<String> {
    if f.domain() != &a.shape() || f.codomain() != &b.shape() {
        return Some(format!(
            "shape {} → {} instead of {} → {}",
            f.domain(),
            f.codomain(),
            a.shape(),
            b.shape()
        ));
    }
    let n = a.dim() as u64;
    if f.apply(&a.one()).unwrap() != b.one() {
        return Some("f(1) ≠ 1".into());
    }
    let images: Vec<SparseTensor> = (0..n).map(|i| f.column(i)).collect();
    for (xl, x) in leading_inputs(a) {
        let fx = f.apply(&x).unwrap();
        for j in 0..n {
            let prod = SparseTensor::from_sorted(a.shape(), times_basis(a, &x, j));
            if f.apply(&prod).unwrap() != b.mul(&fx, &images[j as usize]) {
                return Some(format!("f(xy) ≠ f(x)f(y) at ({xl}, {})", a.label(j)));
            }
        }
    }
    let ff = tensor(f, f);
    for i in 0..n {
        let lhs = ff.apply(&a.comul(&a.basis(i as usize))).unwrap();
        let rhs = b.comul(&images[i as usize]);
        if lhs != rhs {
            return Some(format!("(f⊗f)Δ ≠ Δf at {}", a.label(i)));
        }
        if a.eps(&a.basis(i as usize)) != b.eps(&images[i as usize]) {
            return Some(format!("ε f ≠ ε at {}", a.label(i)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> HopfData {
        // k[C2] built by hand
        let sp = Space::new("C", vec!["1".into(), "g".into()]).unwrap();
        let h = Shape::of(&sp);
        let hh = Shape::power(&sp, 2);
        let m = LinMap::from_entries(
            hh.clone(),
            h.clone(),
            (0..4u64).map(|ij| ((ij / 2) ^ (ij % 2), ij, Scalar::one())),
        )
        .unwrap();
        let unit = LinMap::vector(&SparseTensor::basis(h.clone(), &[0]));
        let cm = LinMap::from_entries(h.clone(), hh, [(0, 0, Scalar::one()), (3, 1, Scalar::one())]).unwrap();
        let counit = LinMap::functional(&sp, &[Scalar::one(), Scalar::one()]);
        let s = LinMap::identity(h);
        HopfData::new("C", Field::Rational, sp, m, unit, cm, counit, Some(s)).unwrap()
    }

    #[test]
    fn tiny_passes() {
        let r = verify_hopf(&tiny());
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn generators_of_group_algebra() {
        assert_eq!(algebra_generators(&tiny()), vec![1]);
    }

    #[test]
    fn element_inverse_of_grouplike() {
        let h = tiny();
        let gg = SparseTensor::basis(h.shape2(), &[1, 1]);
        assert_eq!(element_inverse(&gg, &[&h, &h]).unwrap(), gg);
    }

    #[test]
    fn embed_places_legs() {
        let h = tiny();
        let legs = Legs::power(&h, 3);
        let t = SparseTensor::basis(h.shape2(), &[1, 1]);
        let e = legs.embed(&t, &[2, 0]);
        assert_eq!(e, SparseTensor::basis(Shape::power(&h.space, 3), &[1, 0, 1]));
    }
}
