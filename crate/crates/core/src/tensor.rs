use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::Shape;

/// Sums coefficients by flat index, then prunes zeros.
#[derive(Default)]
pub struct Accum {
    map: HashMap<u64, Scalar>,
}

impl Accum {
    pub fn new() -> Accum {
        Accum::default()
    }

    pub fn add(&mut self, idx: u64, c: Scalar) {
        match self.map.get_mut(&idx) {
            Some(v) => *v += &c,
            None => {
                self.map.insert(idx, c);
            }
        }
    }

    pub fn add_ref(&mut self, idx: u64, c: &Scalar) {
        match self.map.get_mut(&idx) {
            Some(v) => *v += c,
            None => {
                self.map.insert(idx, c.clone());
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn into_sorted(self) -> Vec<(u64, Scalar)> {
        let mut v: Vec<(u64, Scalar)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    pub fn finish(self, shape: Shape) -> SparseTensor {
        SparseTensor {
            shape,
            entries: self.into_sorted(),
        }
    }
}

/// An element of a tensor product of based spaces, stored sparsely.
///
/// Entries are sorted by flat index and never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    shape: Shape,
    entries: Vec<(u64, Scalar)>,
}

impl SparseTensor {
    pub fn new(shape: Shape, entries: Vec<(u64, Scalar)>) -> Result<SparseTensor> {
        let total = shape.total();
        let mut acc = Accum::new();
        for (i, c) in entries {
            if i >= total {
                return Err(Error::Dimension {
                    left: format!("index {i}"),
                    right: format!("shape {shape} of size {total}"),
                });
            }
            acc.add(i, c);
        }
        Ok(acc.finish(shape))
    }

    pub(crate) fn from_sorted(shape: Shape, entries: Vec<(u64, Scalar)>) -> SparseTensor {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseTensor { shape, entries }
    }

    pub fn zero(shape: Shape) -> SparseTensor {
        SparseTensor {
            shape,
            entries: Vec::new(),
        }
    }

    /// The scalar 1 in the empty tensor power k.
    pub fn scalar(c: Scalar) -> SparseTensor {
        let entries = if c.is_zero() { vec![] } else { vec![(0, c)] };
        SparseTensor {
            shape: Shape::unit(),
            entries,
        }
    }

    pub fn basis(shape: Shape, idx: &[usize]) -> SparseTensor {
        let f = shape.flatten(idx);
        SparseTensor::basis_flat(shape, f)
    }

    pub fn basis_flat(shape: Shape, f: u64) -> SparseTensor {
        assert!(f < shape.total(), "basis index out of range");
        SparseTensor {
            shape,
            entries: vec![(f, Scalar::one())],
        }
    }

    /// Builds from labelled entries, one label per leg.
    pub fn from_labels(shape: Shape, terms: &[(&[&str], Scalar)]) -> Result<SparseTensor> {
        let mut entries = Vec::with_capacity(terms.len());
        for (labels, c) in terms {
            if labels.len() != shape.len() {
                return Err(Error::Dimension {
                    left: format!("{} labels", labels.len()),
                    right: format!("shape {shape}"),
                });
            }
            let mut idx = Vec::with_capacity(labels.len());
            for (k, l) in labels.iter().enumerate() {
                let s = shape.space(k);
                idx.push(s.index_of(l).ok_or_else(|| {
                    Error::Schema(format!("unknown label {l:?} in space {}", s.name()))
                })?);
            }
            entries.push((shape.flatten(&idx), c.clone()));
        }
        SparseTensor::new(shape, entries)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries(&self) -> &[(u64, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u64, Scalar)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, f: u64) -> Scalar {
        match self.entries.binary_search_by_key(&f, |e| e.0) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn get_labels(&self, labels: &[&str]) -> Scalar {
        let idx: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(k, l)| self.shape.space(k).index_of(l).expect("unknown label"))
            .collect();
        self.get(self.shape.flatten(&idx))
    }

    fn check_same(&self, o: &SparseTensor) -> Result<()> {
        if self.shape != o.shape {
            return Err(Error::Dimension {
                left: self.shape.to_string(),
                right: o.shape.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &SparseTensor) -> Result<SparseTensor> {
        self.check_same(o)?;
        Ok(self.merge(o, false))
    }

    pub fn sub(&self, o: &SparseTensor) -> Result<SparseTensor> {
        self.check_same(o)?;
        Ok(self.merge(o, true))
    }

    fn merge(&self, o: &SparseTensor, negate: bool) -> SparseTensor {
        let mut out = Vec::with_capacity(self.entries.len() + o.entries.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.entries;
        let b = &o.entries;
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                if i < a.len() && a[i].0 == b[j].0 {
                    let s = &a[i].1 + &c;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                } else {
                    out.push((b[j].0, c));
                }
                j += 1;
            }
        }
        SparseTensor::from_sorted(self.shape.clone(), out)
    }

    pub fn scale(&self, c: &Scalar) -> SparseTensor {
        if c.is_zero() {
            return SparseTensor::zero(self.shape.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|(i, v)| (*i, v * c))
            .filter(|e| !e.1.is_zero())
            .collect();
        SparseTensor::from_sorted(self.shape.clone(), entries)
    }

    pub fn neg(&self) -> SparseTensor {
        self.scale(&Scalar::from_i64(-1))
    }

    /// x ⊗ y.
    pub fn outer(&self, o: &SparseTensor) -> SparseTensor {
        let n = o.shape.total();
        let mut entries = Vec::with_capacity(self.entries.len() * o.entries.len());
        for (i, a) in &self.entries {
            for (j, b) in &o.entries {
                let c = a * b;
                if !c.is_zero() {
                    entries.push((i * n + j, c));
                }
            }
        }
        SparseTensor::from_sorted(self.shape.concat(&o.shape), entries)
    }

    /// Reorders legs: leg `k` of the result is leg `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        assert_eq!(perm.len(), self.shape.len());
        let shape = self.shape.permuted(perm);
        let mut entries: Vec<(u64, Scalar)> = self
            .entries
            .iter()
            .map(|(f, c)| {
                let idx = self.shape.split(*f);
                let p: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
                (shape.flatten(&p), c.clone())
            })
            .collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseTensor::from_sorted(shape, entries)
    }

    /// Exchanges the two legs of a 2-leg tensor.
    pub fn flip(&self) -> SparseTensor {
        self.permute(&[1, 0])
    }

    /// Reinterprets the same flat indices under another shape of equal size.
    pub fn reshape(&self, shape: Shape) -> Result<SparseTensor> {
        if shape.total() != self.shape.total() {
            return Err(Error::Dimension {
                left: self.shape.to_string(),
                right: shape.to_string(),
            });
        }
        Ok(SparseTensor::from_sorted(shape, self.entries.clone()))
    }

    /// Evaluates a product of per-leg functionals, each given by its values on the basis.
    pub fn pair(&self, functionals: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(functionals.len(), self.shape.len());
        let mut total = Scalar::zero();
        for (f, c) in &self.entries {
            let idx = self.shape.split(*f);
            let mut t = c.clone();
            for (k, &i) in idx.iter().enumerate() {
                t = &t * &functionals[k][i];
                if t.is_zero() {
                    break;
                }
            }
            total += &t;
        }
        total
    }

    /// Labels of the first index where two tensors of equal shape differ.
    pub fn first_difference(&self, o: &SparseTensor) -> Option<String> {
        if self.shape != o.shape {
            return Some(format!("shapes {} and {}", self.shape, o.shape));
        }
        let d = self.sub(o).ok()?;
        d.entries().first().map(|(f, _)| {
            let l = self.shape.labels_of(*f);
            if l.is_empty() {
                "scalar".to_string()
            } else {
                l.join("⊗")
            }
        })
    }

    /// Entries with per-leg labels, in index order.
    pub fn labelled(&self) -> Vec<(Vec<String>, Scalar)> {
        self.entries
            .iter()
            .map(|(f, c)| (self.shape.labels_of(*f), c.clone()))
            .collect()
    }
}

impl fmt::Display for SparseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (labels, c)) in self.labelled().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let basis = if labels.is_empty() {
                "1".to_string()
            } else {
                labels.join("⊗")
            };
            write!(f, "({c})·{basis}")?;
        }
        Ok(())
    }
}
