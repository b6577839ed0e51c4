use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite-dimensional vector space with a labelled basis.
#[derive(Debug)]
pub struct Space {
    name: String,
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Space {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Result<Arc<Space>> {
        let name = name.into();
        if labels.is_empty() {
            return Err(Error::Schema(format!("space {name} has no basis")));
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate basis label {l:?} in space {name}"
                )));
            }
        }
        Ok(Arc::new(Space {
            name,
            labels,
            lookup,
        }))
    }

    /// A space whose basis is labelled `0..dim`.
    pub fn numbered(name: impl Into<String>, dim: usize) -> Arc<Space> {
        Space::new(name, (0..dim).map(|i| i.to_string()).collect()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    /// The dual space with basis `e_<label>`.
    pub fn dual(&self) -> Arc<Space> {
        let labels = self.labels.iter().map(|l| dual_label(l)).collect();
        Space::new(dual_name(&self.name), labels).unwrap()
    }

    /// A single space whose basis is the product basis of `parts`, left factor major.
    pub fn product(name: impl Into<String>, parts: &[&Space]) -> Arc<Space> {
        let mut labels = vec![String::new()];
        for (k, p) in parts.iter().enumerate() {
            let mut next = Vec::with_capacity(labels.len() * p.dim());
            for l in &labels {
                for q in p.labels() {
                    let q = if q.contains('⊗') {
                        format!("({q})")
                    } else {
                        q.clone()
                    };
                    if k == 0 {
                        next.push(q);
                    } else {
                        next.push(format!("{l}⊗{q}"));
                    }
                }
            }
            labels = next;
        }
        Space::new(name, labels).unwrap()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Arc<Space> {
        Space::new(name, self.labels.clone()).unwrap()
    }
}

fn dual_label(l: &str) -> String {
    if l.len() == 1 || l.chars().all(|c| c.is_alphanumeric()) {
        format!("e_{l}")
    } else {
        format!("e_({l})")
    }
}

fn dual_name(n: &str) -> String {
    if let Some(base) = n.strip_suffix('*') {
        format!("{base}**")
    } else {
        format!("{n}*")
    }
}

impl PartialEq for Space {
    fn eq(&self, o: &Space) -> bool {
        std::ptr::eq(self, o) || (self.name == o.name && self.labels == o.labels)
    }
}

impl Eq for Space {}

/// An ordered list of spaces, the index set of a tensor power.
///
/// Multi-indices flatten left-factor-major: the first leg is most significant.
#[derive(Clone, Debug, Default)]
pub struct Shape(Vec<Arc<Space>>);

impl Shape {
    pub fn new(spaces: Vec<Arc<Space>>) -> Shape {
        Shape(spaces)
    }

    pub fn unit() -> Shape {
        Shape(Vec::new())
    }

    pub fn of(space: &Arc<Space>) -> Shape {
        Shape(vec![space.clone()])
    }

    pub fn power(space: &Arc<Space>, n: usize) -> Shape {
        Shape(vec![space.clone(); n])
    }

    pub fn spaces(&self) -> &[Arc<Space>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn space(&self, leg: usize) -> &Arc<Space> {
        &self.0[leg]
    }

    pub fn dims(&self) -> Vec<u64> {
        self.0.iter().map(|s| s.dim() as u64).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|s| s.dim() as u64).product()
    }

    /// Number of flat indices spanned by the legs in `r`.
    pub fn span(&self, r: Range<usize>) -> u64 {
        self.0[r].iter().map(|s| s.dim() as u64).product()
    }

    pub fn flatten(&self, idx: &[usize]) -> u64 {
        debug_assert_eq!(idx.len(), self.0.len());
        let mut f = 0u64;
        for (s, &i) in self.0.iter().zip(idx) {
            debug_assert!(i < s.dim());
            f = f * s.dim() as u64 + i as u64;
        }
        f
    }

    pub fn split(&self, mut f: u64) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, s) in self.0.iter().enumerate().rev() {
            let d = s.dim() as u64;
            out[k] = (f % d) as usize;
            f /= d;
        }
        out
    }

    pub fn concat(&self, o: &Shape) -> Shape {
        let mut v = self.0.clone();
        v.extend(o.0.iter().cloned());
        Shape(v)
    }

    pub fn slice(&self, r: Range<usize>) -> Shape {
        Shape(self.0[r].to_vec())
    }

    pub fn with_replaced(&self, r: Range<usize>, by: &Shape) -> Shape {
        let mut v = self.0[..r.start].to_vec();
        v.extend(by.0.iter().cloned());
        v.extend(self.0[r.end..].iter().cloned());
        Shape(v)
    }

    pub fn permuted(&self, perm: &[usize]) -> Shape {
        Shape(perm.iter().map(|&p| self.0[p].clone()).collect())
    }

    /// Human-readable labels of a flat index, one per leg.
    pub fn labels_of(&self, f: u64) -> Vec<String> {
        self.split(f)
            .into_iter()
            .zip(&self.0)
            .map(|(i, s)| s.label(i).to_string())
            .collect()
    }
}

impl PartialEq for Shape {
    fn eq(&self, o: &Shape) -> bool {
        self.0.len() == o.0.len() && self.0.iter().zip(&o.0).all(|(a, b)| a == b)
    }
}

impl Eq for Shape {}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("k");
        }
        let names: Vec<&str> = self.0.iter().map(|s| s.name()).collect();
        f.write_str(&names.join("⊗"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_is_left_major() {
        let a = Space::numbered("A", 2);
        let b = Space::numbered("B", 3);
        let s = Shape::new(vec![a, b]);
        assert_eq!(s.flatten(&[1, 0]), 3);
        assert_eq!(s.flatten(&[0, 2]), 2);
        assert_eq!(s.split(5), vec![1, 2]);
        assert_eq!(s.total(), 6);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Space::new("X", vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn product_labels() {
        let a = Space::new("A", vec!["1".into(), "g".into()]).unwrap();
        let p = Space::product("AA", &[&a, &a]);
        assert_eq!(p.labels(), &["1⊗1", "1⊗g", "g⊗1", "g⊗g"]);
        let pp = Space::product("P", &[&p, &a]);
        assert_eq!(pp.label(3), "(1⊗g)⊗g");
    }
}
