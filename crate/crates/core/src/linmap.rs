use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::{Shape, Space};
use crate::tensor::{Accum, SparseTensor};

const MAX_DOMAIN: u64 = 1 << 26;

pub type Column = Vec<(u64, Scalar)>;

/// A sparse linear map between tensor powers, stored by columns.
///
/// Column `j` holds the image of the `j`-th flat basis vector of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: Shape,
    codomain: Shape,
    cols: Vec<Column>,
}

fn dim_err(a: &Shape, b: &Shape) -> Error {
    Error::Dimension {
        left: a.to_string(),
        right: b.to_string(),
    }
}

impl LinMap {
    /// Builds a map from the image of every domain basis vector.
    pub fn from_fn<F>(domain: Shape, codomain: Shape, mut f: F) -> LinMap
    where
        F: FnMut(u64) -> SparseTensor,
    {
        let n = domain.total();
        assert!(n <= MAX_DOMAIN, "domain {domain} too large to materialize");
        let cols = (0..n)
            .map(|j| {
                let t = f(j);
                debug_assert!(t.shape() == &codomain, "column shape mismatch");
                t.into_entries()
            })
            .collect();
        LinMap {
            domain,
            codomain,
            cols,
        }
    }

    /// Like [`LinMap::from_fn`] but the closure may fail.
    pub fn try_from_fn<F>(domain: Shape, codomain: Shape, mut f: F) -> Result<LinMap>
    where
        F: FnMut(u64) -> Result<SparseTensor>,
    {
        let n = domain.total();
        if n > MAX_DOMAIN {
            return Err(Error::TooLarge(format!("domain {domain}")));
        }
        let mut cols = Vec::with_capacity(n as usize);
        for j in 0..n {
            let t = f(j)?;
            if t.shape() != &codomain {
                return Err(dim_err(t.shape(), &codomain));
            }
            cols.push(t.into_entries());
        }
        Ok(LinMap {
            domain,
            codomain,
            cols,
        })
    }

    /// Builds a map from `(codomain index, domain index, coefficient)` triples; duplicates add up.
    pub fn from_entries(
        domain: Shape,
        codomain: Shape,
        entries: impl IntoIterator<Item = (u64, u64, Scalar)>,
    ) -> Result<LinMap> {
        let n = domain.total();
        let m = codomain.total();
        if n > MAX_DOMAIN {
            return Err(Error::TooLarge(format!("domain {domain}")));
        }
        let mut accs: Vec<Accum> = (0..n).map(|_| Accum::new()).collect();
        for (i, j, c) in entries {
            if i >= m || j >= n {
                return Err(Error::Dimension {
                    left: format!("entry ({i}, {j})"),
                    right: format!("{domain} → {codomain}"),
                });
            }
            accs[j as usize].add(i, c);
        }
        let cols = accs.into_iter().map(|a| a.into_sorted()).collect();
        Ok(LinMap {
            domain,
            codomain,
            cols,
        })
    }

    pub fn zero(domain: Shape, codomain: Shape) -> LinMap {
        let n = domain.total();
        LinMap {
            domain,
            codomain,
            cols: vec![Vec::new(); n as usize],
        }
    }

    pub fn identity(shape: Shape) -> LinMap {
        let n = shape.total();
        LinMap {
            domain: shape.clone(),
            codomain: shape,
            cols: (0..n).map(|j| vec![(j, Scalar::one())]).collect(),
        }
    }

    pub fn identity_on(space: &Arc<Space>) -> LinMap {
        LinMap::identity(Shape::of(space))
    }

    /// The leg permutation `x_0⊗…⊗x_{n-1} ↦ x_{perm[0]}⊗…⊗x_{perm[n-1]}`.
    pub fn permutation(shape: &Shape, perm: &[usize]) -> LinMap {
        let codomain = shape.permuted(perm);
        LinMap::from_fn(shape.clone(), codomain.clone(), |j| {
            let idx = shape.split(j);
            let p: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
            SparseTensor::basis(codomain.clone(), &p)
        })
    }

    /// The plain twist `U⊗V → V⊗U`, for blocks of legs.
    pub fn swap_shapes(u: &Shape, v: &Shape) -> LinMap {
        let nu = u.total();
        let nv = v.total();
        let domain = u.concat(v);
        let codomain = v.concat(u);
        let cols = (0..nu * nv)
            .map(|j| {
                let (a, b) = (j / nv, j % nv);
                vec![(b * nu + a, Scalar::one())]
            })
            .collect();
        LinMap {
            domain,
            codomain,
            cols,
        }
    }

    /// The plain twist `U⊗V → V⊗U`.
    pub fn swap(u: &Arc<Space>, v: &Arc<Space>) -> LinMap {
        LinMap::swap_shapes(&Shape::of(u), &Shape::of(v))
    }

    /// A linear functional `V → k` from its values on the basis.
    pub fn functional(space: &Arc<Space>, values: &[Scalar]) -> LinMap {
        assert_eq!(values.len(), space.dim());
        LinMap {
            domain: Shape::of(space),
            codomain: Shape::unit(),
            cols: values
                .iter()
                .map(|c| if c.is_zero() { vec![] } else { vec![(0, c.clone())] })
                .collect(),
        }
    }

    /// The map `k → V` sending 1 to `v`.
    pub fn vector(v: &SparseTensor) -> LinMap {
        LinMap {
            domain: Shape::unit(),
            codomain: v.shape().clone(),
            cols: vec![v.entries().to_vec()],
        }
    }

    pub fn domain(&self) -> &Shape {
        &self.domain
    }

    pub fn codomain(&self) -> &Shape {
        &self.codomain
    }

    pub fn col(&self, j: u64) -> &[(u64, Scalar)] {
        &self.cols[j as usize]
    }

    pub fn column(&self, j: u64) -> SparseTensor {
        SparseTensor::from_sorted(self.codomain.clone(), self.cols[j as usize].clone())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// All nonzero `(codomain index, domain index, coefficient)` entries, sorted by (codomain, domain).
    pub fn entries(&self) -> Vec<(u64, u64, Scalar)> {
        let mut v: Vec<(u64, u64, Scalar)> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, c)| (*i, j as u64, c.clone())))
            .collect();
        v.sort_by_key(|e| (e.0, e.1));
        v
    }

    pub fn get(&self, i: u64, j: u64) -> Scalar {
        let col = &self.cols[j as usize];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => col[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c[0].0 == j as u64 && c[0].1.is_one())
    }

    /// Same matrix, other (equal-size) shapes.
    pub fn reshape(&self, domain: Shape, codomain: Shape) -> Result<LinMap> {
        if domain.total() != self.domain.total() {
            return Err(dim_err(&self.domain, &domain));
        }
        if codomain.total() != self.codomain.total() {
            return Err(dim_err(&self.codomain, &codomain));
        }
        Ok(LinMap {
            domain,
            codomain,
            cols: self.cols.clone(),
        })
    }

    pub fn apply(&self, t: &SparseTensor) -> Result<SparseTensor> {
        if t.shape() != &self.domain {
            return Err(dim_err(&self.domain, t.shape()));
        }
        let mut acc = Accum::new();
        for (j, c) in t.entries() {
            for (i, e) in &self.cols[*j as usize] {
                acc.add(*i, c * e);
            }
        }
        Ok(acc.finish(self.codomain.clone()))
    }

    /// Applies the map to the legs `leg..leg + domain.len()` of `t`.
    pub fn apply_at(&self, t: &SparseTensor, leg: usize) -> Result<SparseTensor> {
        let k = self.domain.len();
        let shape = t.shape();
        if leg + k > shape.len() || shape.slice(leg..leg + k) != self.domain {
            return Err(Error::Dimension {
                left: format!("{} at leg {leg}", self.domain),
                right: shape.to_string(),
            });
        }
        let mid = self.domain.total();
        let suf = shape.span(leg + k..shape.len());
        let cod = self.codomain.total();
        let mut acc = Accum::new();
        for (f, c) in t.entries() {
            let p = f / (mid * suf);
            let m = (f / suf) % mid;
            let s = f % suf;
            for (i, e) in &self.cols[m as usize] {
                acc.add((p * cod + i) * suf + s, c * e);
            }
        }
        Ok(acc.finish(shape.with_replaced(leg..leg + k, &self.codomain)))
    }

    /// `next ∘ self`: first `self`, then `next`.
    pub fn then(&self, next: &LinMap) -> Result<LinMap> {
        compose(self, next)
    }

    pub fn add(&self, o: &LinMap) -> Result<LinMap> {
        self.combine(o, &Scalar::one())
    }

    pub fn sub(&self, o: &LinMap) -> Result<LinMap> {
        self.combine(o, &Scalar::from_i64(-1))
    }

    fn combine(&self, o: &LinMap, s: &Scalar) -> Result<LinMap> {
        if self.domain != o.domain {
            return Err(dim_err(&self.domain, &o.domain));
        }
        if self.codomain != o.codomain {
            return Err(dim_err(&self.codomain, &o.codomain));
        }
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let ta = SparseTensor::from_sorted(self.codomain.clone(), a.clone());
                let tb = SparseTensor::from_sorted(self.codomain.clone(), b.clone()).scale(s);
                ta.add(&tb).unwrap().into_entries()
            })
            .collect();
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        })
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, v)| (*i, v * s))
                    .filter(|e| !e.1.is_zero())
                    .collect()
            })
            .collect();
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols,
        }
    }

    /// The transpose, with the given (dual) shapes as its domain and codomain.
    pub fn transpose_to(&self, domain: Shape, codomain: Shape) -> Result<LinMap> {
        if domain.total() != self.codomain.total() {
            return Err(dim_err(&self.codomain, &domain));
        }
        if codomain.total() != self.domain.total() {
            return Err(dim_err(&self.domain, &codomain));
        }
        let entries = self.entries().into_iter().map(|(i, j, c)| (j, i, c));
        LinMap::from_entries(domain, codomain, entries)
    }

    /// First index where two maps of equal shape differ, as `(codomain, domain)`.
    pub fn first_difference(&self, o: &LinMap) -> Option<(u64, u64)> {
        for (j, (a, b)) in self.cols.iter().zip(&o.cols).enumerate() {
            if a != b {
                let ta = SparseTensor::from_sorted(self.codomain.clone(), a.clone());
                let tb = SparseTensor::from_sorted(self.codomain.clone(), b.clone());
                let d = ta.sub(&tb).unwrap();
                return Some((d.entries()[0].0, j as u64));
            }
        }
        None
    }
}

/// Applies a map given column by column to legs `leg..leg + domain.len()` of `t`.
///
/// Used for maps too large to materialize; `col(j)` must return the image of basis vector `j`.
pub fn apply_columns_at<F>(
    t: &SparseTensor,
    leg: usize,
    domain: &Shape,
    codomain: &Shape,
    mut col: F,
) -> Result<SparseTensor>
where
    F: FnMut(u64) -> SparseTensor,
{
    let k = domain.len();
    let shape = t.shape();
    if leg + k > shape.len() || &shape.slice(leg..leg + k) != domain {
        return Err(Error::Dimension {
            left: format!("{domain} at leg {leg}"),
            right: shape.to_string(),
        });
    }
    let mid = domain.total();
    let suf = shape.span(leg + k..shape.len());
    let cod = codomain.total();
    let mut acc = Accum::new();
    for (f, c) in t.entries() {
        let p = f / (mid * suf);
        let m = (f / suf) % mid;
        let s = f % suf;
        for (i, e) in col(m).entries() {
            acc.add((p * cod + i) * suf + s, c * e);
        }
    }
    Ok(acc.finish(shape.with_replaced(leg..leg + k, codomain)))
}

/// `g ∘ f`, i.e. first `f` then `g`.
pub fn compose(f: &LinMap, g: &LinMap) -> Result<LinMap> {
    if f.codomain != g.domain {
        return Err(dim_err(&f.codomain, &g.domain));
    }
    let cols = f
        .cols
        .iter()
        .map(|col| {
            let mut acc = Accum::new();
            for (k, c) in col {
                for (i, e) in &g.cols[*k as usize] {
                    acc.add(*i, c * e);
                }
            }
            acc.into_sorted()
        })
        .collect();
    Ok(LinMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        cols,
    })
}

/// Kronecker product `f ⊗ g` with left-factor-major indexing.
pub fn tensor(f: &LinMap, g: &LinMap) -> LinMap {
    let nd = g.domain.total();
    let nc = g.codomain.total();
    let domain = f.domain.concat(&g.domain);
    let codomain = f.codomain.concat(&g.codomain);
    let total = domain.total();
    assert!(total <= MAX_DOMAIN, "domain {domain} too large to materialize");
    let cols = (0..total)
        .map(|j| {
            let (a, b) = (j / nd, j % nd);
            let mut col = Vec::with_capacity(f.cols[a as usize].len() * g.cols[b as usize].len());
            for (i, x) in &f.cols[a as usize] {
                for (k, y) in &g.cols[b as usize] {
                    col.push((i * nc + k, x * y));
                }
            }
            col
        })
        .collect();
    LinMap {
        domain,
        codomain,
        cols,
    }
}

/// `f_1 ⊗ … ⊗ f_n`.
pub fn tensor_all(maps: &[&LinMap]) -> LinMap {
    let mut acc = LinMap::identity(Shape::unit());
    for m in maps {
        acc = tensor(&acc, m);
    }
    acc
}

/// Composes a chain, first map first.
pub fn chain(maps: &[&LinMap]) -> Result<LinMap> {
    let mut it = maps.iter();
    let mut acc = (*it.next().expect("empty chain")).clone();
    for m in it {
        acc = compose(&acc, m)?;
    }
    Ok(acc)
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} → {}", self.domain, self.codomain)?;
        for (i, j, c) in self.entries() {
            let cl = self.codomain.labels_of(i).join("⊗");
            let dl = self.domain.labels_of(j).join("⊗");
            let cl = if cl.is_empty() { "1".to_string() } else { cl };
            let dl = if dl.is_empty() { "1".to_string() } else { dl };
            writeln!(f, "  [{cl}] <- [{dl}] : {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize) -> Arc<Space> {
        Space::numbered(format!("V{n}"), n)
    }

    #[test]
    fn identity_composes() {
        let s = Shape::of(&sp(4));
        let id = LinMap::identity(s);
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn tensor_of_identities() {
        let id2 = LinMap::identity_on(&sp(2));
        let t = tensor(&id2, &id2);
        assert!(t.is_identity());
        assert_eq!(t.domain().total(), 4);
    }

    #[test]
    fn swap_twice_is_identity() {
        let a = sp(2);
        let b = sp(3);
        let s = LinMap::swap(&a, &b);
        let back = LinMap::swap(&b, &a);
        assert!(compose(&s, &back).unwrap().is_identity());
    }

    #[test]
    fn swap_with_unit_is_identity() {
        let v = sp(3);
        let s = LinMap::swap_shapes(&Shape::unit(), &Shape::of(&v));
        assert!(s.is_identity());
    }

    #[test]
    fn apply_at_middle_leg() {
        let a = sp(2);
        let b = sp(3);
        let shape = Shape::new(vec![a.clone(), b.clone(), a.clone()]);
        let t = SparseTensor::basis(shape, &[1, 2, 0]);
        let f = LinMap::from_fn(Shape::of(&b), Shape::of(&a), |j| {
            SparseTensor::basis(Shape::of(&a), &[(j % 2) as usize])
        });
        let r = f.apply_at(&t, 1).unwrap();
        assert_eq!(r.shape().len(), 3);
        assert_eq!(r.entries(), &[(Shape::power(&a, 3).flatten(&[1, 0, 0]), Scalar::one())]);
    }

    #[test]
    fn mismatched_compose_names_shapes() {
        let f = LinMap::identity_on(&sp(2));
        let g = LinMap::identity_on(&sp(3));
        match compose(&f, &g) {
            Err(Error::Dimension { left, right }) => {
                assert_eq!(left, "V2");
                assert_eq!(right, "V3");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
