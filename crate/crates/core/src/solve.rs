use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linmap::{compose, LinMap};
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

type Vector = BTreeMap<u64, Scalar>;

fn axpy(v: &mut Vector, c: &Scalar, x: &[(u64, Scalar)]) {
    for (i, e) in x {
        let d = c * e;
        match v.get_mut(i) {
            Some(s) => {
                *s -= &d;
                if s.is_zero() {
                    v.remove(i);
                }
            }
            None => {
                v.insert(*i, -d);
            }
        }
    }
}

struct Row {
    vec: Vec<(u64, Scalar)>,
    combo: Vec<(u64, Scalar)>,
}

/// Row echelon form over sparse vectors, keyed by leading index.
///
/// Each stored row has leading coefficient 1. Optionally tracks, for every
/// row, which combination of inserted vectors produced it.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<u64, Row>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Vector, combo: &mut Vector) {
        let mut cursor = 0u64;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let row = &self.rows[&k];
            axpy(v, &c, &row.vec);
            axpy(combo, &c, &row.combo);
            cursor = k + 1;
        }
    }

    /// Reduces `v` against the stored rows; the remainder is zero iff `v` is in the span.
    pub fn remainder(&self, v: &[(u64, Scalar)]) -> Vec<(u64, Scalar)> {
        let mut w: Vector = v.iter().cloned().collect();
        let mut combo = Vector::new();
        self.reduce(&mut w, &mut combo);
        w.into_iter().collect()
    }

    pub fn contains(&self, v: &[(u64, Scalar)]) -> bool {
        self.remainder(v).is_empty()
    }

    /// Inserts `v` tagged with `tag`; returns the reduced new row, or `None` if dependent.
    pub fn insert(&mut self, v: &[(u64, Scalar)], tag: Option<u64>) -> Option<Vec<(u64, Scalar)>> {
        let mut w: Vector = v.iter().cloned().collect();
        let mut combo = Vector::new();
        if let Some(t) = tag {
            combo.insert(t, Scalar::one());
        }
        self.reduce(&mut w, &mut combo);
        let (&p, lead) = w.iter().next()?;
        let inv = lead.inv().unwrap();
        let vec: Vec<(u64, Scalar)> = w.iter().map(|(i, c)| (*i, c * &inv)).collect();
        let combo: Vec<(u64, Scalar)> = combo.iter().map(|(i, c)| (*i, c * &inv)).collect();
        self.rows.insert(
            p,
            Row {
                vec: vec.clone(),
                combo,
            },
        );
        Some(vec)
    }
}

/// Exact rank of a linear map.
pub fn rank(f: &LinMap) -> usize {
    let mut e = Echelon::new();
    for j in 0..f.domain().total() {
        e.insert(f.col(j), None);
    }
    e.rank()
}

/// The inverse of a square invertible map.
pub fn invert(f: &LinMap) -> Result<LinMap> {
    let n = f.domain().total();
    if n != f.codomain().total() {
        return Err(Error::NotInvertible(format!(
            "{} → {} is not square",
            f.domain(),
            f.codomain()
        )));
    }
    let mut e = Echelon::new();
    for j in 0..n {
        if e.insert(f.col(j), Some(j)).is_none() {
            return Err(Error::NotInvertible(format!(
                "{} → {} is singular: column {j} ({}) depends on earlier columns",
                f.domain(),
                f.codomain(),
                f.domain().labels_of(j).join("⊗")
            )));
        }
    }
    // back substitution, highest pivot first; finished rows are unit vectors
    let mut done: BTreeMap<u64, Vec<(u64, Scalar)>> = BTreeMap::new();
    for (&p, row) in e.rows.iter().rev() {
        let mut combo: Vector = row.combo.iter().cloned().collect();
        for (q, c) in row.vec.iter().skip(1) {
            axpy(&mut combo, c, &done[q]);
        }
        done.insert(p, combo.into_iter().collect());
    }
    let codomain = f.domain().clone();
    LinMap::try_from_fn(f.codomain().clone(), codomain.clone(), |p| {
        Ok(SparseTensor::new(codomain.clone(), done[&p].clone()).unwrap())
    })
}

/// `f⁻¹ ∘ target` for square invertible `f`.
pub fn solve(f: &LinMap, target: &LinMap) -> Result<LinMap> {
    let inv = invert(f)?;
    compose(target, &inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Shape, Space};

    #[test]
    fn solve_identity() {
        let s = Shape::of(&Space::numbered("V", 4));
        let id = LinMap::identity(s.clone());
        let g = LinMap::from_fn(s.clone(), s.clone(), |j| {
            SparseTensor::basis_flat(s.clone(), (j + 1) % 4)
        });
        assert_eq!(solve(&id, &g).unwrap(), g);
    }

    #[test]
    fn solve_scaled_identity() {
        let s = Shape::of(&Space::numbered("V", 4));
        let id = LinMap::identity(s);
        let two = id.scale(&Scalar::from_i64(2));
        assert_eq!(solve(&two, &id).unwrap(), id.scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn singular_is_an_error() {
        let s = Shape::of(&Space::numbered("V", 3));
        let f = LinMap::from_fn(s.clone(), s.clone(), |j| {
            SparseTensor::basis_flat(s.clone(), j.min(1))
        });
        assert!(matches!(invert(&f), Err(Error::NotInvertible(_))));
        assert_eq!(rank(&f), 2);
    }

    #[test]
    fn inverse_of_dense_matrix() {
        let s = Shape::of(&Space::numbered("V", 3));
        let m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]];
        let f = LinMap::from_entries(
            s.clone(),
            s.clone(),
            (0..3).flat_map(|i| (0..3).map(move |j| (i as u64, j as u64, Scalar::from_i64(m[i][j])))),
        )
        .unwrap();
        let inv = invert(&f).unwrap();
        assert!(compose(&f, &inv).unwrap().is_identity());
        assert!(compose(&inv, &f).unwrap().is_identity());
    }
}
