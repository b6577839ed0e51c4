use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::cross::drinfeld_double;
use crate::hopf::{dual_hopf, verify_hopf, HopfData};
use crate::linmap::LinMap;
use crate::qt::{QTElement, Role};
use crate::scalar::{Field, Scalar};
use crate::space::{Shape, Space};
use crate::tensor::SparseTensor;

/// A named catalog algebra with a note on where its structure constants come from.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub hopf: HopfData,
    pub notes: String,
}

impl CatalogEntry {
    /// Verifies the axioms before accepting the entry.
    pub fn new(hopf: HopfData, notes: impl Into<String>) -> Result<CatalogEntry> {
        let r = verify_hopf(&hopf);
        if let Some(c) = r.failures().first() {
            return Err(Error::Axiom(format!(
                "{}: {} ({})",
                hopf.name,
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        Ok(CatalogEntry {
            name: hopf.name.clone(),
            hopf,
            notes: notes.into(),
        })
    }
}

fn require_odd(field: Field, what: &str) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedField(format!("{what} needs characteristic ≠ 2")));
    }
    Ok(())
}

/// Sweedler's 4-dimensional Hopf algebra on the basis (1, g, x, gx):
/// g² = 1, x² = 0, xg = −gx, Δg = g⊗g, Δx = x⊗1 + g⊗x.
pub fn sweedler4(field: Field) -> Result<HopfData> {
    require_odd(field, "sweedler4")?;
    let space = Space::new("H4", vec!["1".into(), "g".into(), "x".into(), "gx".into()])?;
    // basis element i is g^(i&1) x^(i>>1)
    let h = Shape::of(&space);
    let hh = Shape::power(&space, 2);
    let one = field.one();
    let neg = field.int(-1);
    let mut m = Vec::new();
    for i in 0..4u64 {
        for j in 0..4u64 {
            let (a, b) = (i & 1, i >> 1);
            let (c, d) = (j & 1, j >> 1);
            if b + d >= 2 {
                continue;
            }
            let k = ((a + c) % 2) | ((b + d) << 1);
            let sign = if b * c == 1 { neg.clone() } else { one.clone() };
            m.push((k, i * 4 + j, sign));
        }
    }
    let m = LinMap::from_entries(hh.clone(), h.clone(), m)?;
    let unit = LinMap::vector(&SparseTensor::basis(h.clone(), &[0]));
    let cm = LinMap::from_entries(
        h.clone(),
        hh,
        [
            (0, 0, one.clone()),
            (5, 1, one.clone()),
            (2 * 4, 2, one.clone()),
            (4 + 2, 2, one.clone()),
            (3 * 4 + 1, 3, one.clone()),
            (3, 3, one.clone()),
        ],
    )?;
    let counit = LinMap::functional(&space, &[one.clone(), one.clone(), field.zero(), field.zero()]);
    let s = LinMap::from_entries(
        h.clone(),
        h,
        [(0, 0, one.clone()), (1, 1, one.clone()), (3, 2, neg), (2, 3, one)],
    )?;
    HopfData::new("H4", field, space, m, unit, cm, counit, Some(s))
}

/// The group algebra of the cyclic group of order 2 on the basis (1, g).
pub fn group_algebra_c2(field: Field) -> Result<HopfData> {
    require_odd(field, "c2")?;
    let space = Space::new("kC2", vec!["1".into(), "g".into()])?;
    let h = Shape::of(&space);
    let hh = Shape::power(&space, 2);
    let one = field.one();
    let m = LinMap::from_entries(
        hh.clone(),
        h.clone(),
        (0..4u64).map(|ij| ((ij >> 1) ^ (ij & 1), ij, one.clone())),
    )?;
    let unit = LinMap::vector(&SparseTensor::basis(h.clone(), &[0]));
    let cm = LinMap::from_entries(h.clone(), hh, [(0, 0, one.clone()), (3, 1, one.clone())])?;
    let counit = LinMap::functional(&space, &[one.clone(), one]);
    let s = LinMap::identity(h);
    HopfData::new("kC2", field, space, m, unit, cm, counit, Some(s))
}

/// ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) for an algebra with basis elements `1` and `g`.
pub fn half_sign_element(h: &HopfData) -> SparseTensor {
    let half = h.field.frac(1, 2);
    let mhalf = h.field.frac(-1, 2);
    SparseTensor::from_labels(
        h.shape2(),
        &[
            (&["1", "1"], half.clone()),
            (&["1", "g"], half.clone()),
            (&["g", "1"], half),
            (&["g", "g"], mhalf),
        ],
    )
    .expect("algebra has 1 and g")
}

/// The one-parameter family of R-matrices of H4 with Δx = x⊗1 + g⊗x:
/// R_a = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (a/2)(x⊗x − x⊗gx + gx⊗x + gx⊗gx).
pub fn sweedler_r(h: &HopfData, a: &Scalar) -> SparseTensor {
    let base = half_sign_element(h);
    let half = &h.field.frac(1, 2) * a;
    let mhalf = -&half;
    let nil = SparseTensor::from_labels(
        h.shape2(),
        &[
            (&["x", "x"], half.clone()),
            (&["x", "gx"], mhalf),
            (&["gx", "x"], half.clone()),
            (&["gx", "gx"], half),
        ],
    )
    .expect("H4 labels");
    base.add(&nil).unwrap()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
enum FieldDoc {
    Name(String),
    Prime { p: u64 },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
struct HopfDoc {
    dim: usize,
    basis: Vec<String>,
    field: FieldDoc,
    m: Vec<(u64, u64, u64, String)>,
    unit: Vec<String>,
    cm: Vec<(u64, u64, u64, String)>,
    counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<(u64, u64, String)>>,
}

/// Serializes structure constants in the catalog JSON schema, entries sorted by index.
pub fn dump_json(h: &HopfData) -> String {
    let n = h.dim() as u64;
    let field = match h.field {
        Field::Rational => FieldDoc::Name("Q".into()),
        Field::Prime(p) => FieldDoc::Prime { p },
    };
    let mut m: Vec<(u64, u64, u64, String)> = h
        .m
        .entries()
        .into_iter()
        .map(|(k, ij, c)| (ij / n, ij % n, k, c.canonical()))
        .collect();
    m.sort();
    let mut cm: Vec<(u64, u64, u64, String)> = h
        .cm
        .entries()
        .into_iter()
        .map(|(jk, i, c)| (i, jk / n, jk % n, c.canonical()))
        .collect();
    cm.sort();
    let unit = (0..n).map(|k| h.unit.get(k, 0).canonical()).collect();
    let counit = (0..n).map(|k| h.counit.get(0, k).canonical()).collect();
    let antipode = h.antipode.as_ref().map(|s| {
        let mut v: Vec<(u64, u64, String)> = s
            .entries()
            .into_iter()
            .map(|(j, i, c)| (i, j, c.canonical()))
            .collect();
        v.sort();
        v
    });
    let doc = HopfDoc {
        dim: h.dim(),
        basis: h.space.labels().to_vec(),
        field,
        m,
        unit,
        cm,
        counit,
        antipode,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Parses a catalog JSON document and verifies the Hopf axioms.
pub fn from_json_str(text: &str, name: &str) -> Result<HopfData> {
    let doc: HopfDoc = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    let field = match &doc.field {
        FieldDoc::Name(s) if s == "Q" => Field::Rational,
        FieldDoc::Name(s) => return Err(schema(format!("unknown field {s:?}"))),
        FieldDoc::Prime { p } => Field::prime(*p).map_err(|e| schema(e.to_string()))?,
    };
    let n = doc.dim;
    if n == 0 || n > 4096 {
        return Err(schema(format!("dim {n} out of range 1..=4096")));
    }
    if doc.basis.len() != n {
        return Err(schema(format!("basis has {} labels, dim is {n}", doc.basis.len())));
    }
    let space = Space::new(name, doc.basis.clone())?;
    let h = Shape::of(&space);
    let hh = Shape::power(&space, 2);
    let nn = n as u64;
    let idx = |i: u64, what: &str| -> Result<u64> {
        if i >= nn {
            Err(schema(format!("{what}: index {i} out of range for dim {n}")))
        } else {
            Ok(i)
        }
    };
    let mut seen = BTreeSet::new();
    let mut m = Vec::with_capacity(doc.m.len());
    for (i, j, k, c) in &doc.m {
        let key = (idx(*i, "m")?, idx(*j, "m")?, idx(*k, "m")?);
        if !seen.insert(key) {
            return Err(schema(format!("m: duplicate entry {key:?}")));
        }
        m.push((*k, i * nn + j, Scalar::parse(c, field)?));
    }
    seen.clear();
    let mut cm = Vec::with_capacity(doc.cm.len());
    for (i, j, k, c) in &doc.cm {
        let key = (idx(*i, "cm")?, idx(*j, "cm")?, idx(*k, "cm")?);
        if !seen.insert(key) {
            return Err(schema(format!("cm: duplicate entry {key:?}")));
        }
        cm.push((j * nn + k, *i, Scalar::parse(c, field)?));
    }
    let vec_of = |v: &[String], what: &str| -> Result<Vec<Scalar>> {
        if v.len() != n {
            return Err(schema(format!("{what} has {} coefficients, dim is {n}", v.len())));
        }
        v.iter().map(|c| Scalar::parse(c, field)).collect()
    };
    let unit_v = vec_of(&doc.unit, "unit")?;
    let counit_v = vec_of(&doc.counit, "counit")?;
    let unit = LinMap::vector(&SparseTensor::new(
        h.clone(),
        unit_v.into_iter().enumerate().map(|(k, c)| (k as u64, c)).collect(),
    )?);
    let counit = LinMap::functional(&space, &counit_v);
    let antipode = match &doc.antipode {
        None => None,
        Some(es) => {
            let mut seen2 = BTreeSet::new();
            let mut v = Vec::with_capacity(es.len());
            for (i, j, c) in es {
                let key = (idx(*i, "antipode")?, idx(*j, "antipode")?);
                if !seen2.insert(key) {
                    return Err(schema(format!("antipode: duplicate entry {key:?}")));
                }
                v.push((*j, *i, Scalar::parse(c, field)?));
            }
            Some(LinMap::from_entries(h.clone(), h.clone(), v)?)
        }
    };
    let hopf = HopfData::new(
        name,
        field,
        space,
        LinMap::from_entries(hh.clone(), h.clone(), m)?,
        unit,
        LinMap::from_entries(h, hh, cm)?,
        counit,
        antipode,
    )?;
    let r = verify_hopf(&hopf);
    if let Some(c) = r.failures().first() {
        return Err(Error::Axiom(format!(
            "{}: {}",
            c.name,
            c.witness.clone().unwrap_or_default()
        )));
    }
    Ok(hopf)
}

/// Reads a catalog JSON file; the algebra is named after the file stem.
pub fn load_json(path: &Path) -> Result<HopfData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("loaded")
        .to_string();
    from_json_str(&text, &name)
}

/// A catalog algebra together with its default quasitriangular element, if it has one.
#[derive(Clone, Debug)]
pub struct Named {
    pub hopf: Arc<HopfData>,
    pub r: Option<QTElement>,
}

/// Resolves `sweedler4`, `c2`, `dual:<name>` and `double:<name>`.
///
/// Defaults: R_0 on H4, the sign element on kC2, the canonical element on a double,
/// nothing on a dual.
pub fn resolve(name: &str, field: Field) -> Result<Named> {
    if let Some(inner) = name.strip_prefix("dual:") {
        let base = resolve(inner, field)?;
        let hopf = Arc::new(dual_hopf(&base.hopf)?);
        return Ok(Named { hopf, r: None });
    }
    if let Some(inner) = name.strip_prefix("double:") {
        let base = resolve(inner, field)?;
        let (_, b) = drinfeld_double(&base.hopf)?;
        return Ok(Named {
            hopf: b.left.clone(),
            r: Some(b),
        });
    }
    let hopf = Arc::new(match name {
        "sweedler4" => sweedler4(field)?,
        "c2" => group_algebra_c2(field)?,
        _ => {
            return Err(Error::Missing(format!(
                "unknown algebra {name:?}; expected sweedler4, c2, dual:<name> or double:<name>"
            )))
        }
    });
    let r = QTElement::new(Role::R, hopf.clone(), hopf.clone(), half_sign_element(&hopf))?;
    Ok(Named { hopf, r: Some(r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweedler_relations() {
        let h = sweedler4(Field::Rational).unwrap();
        let x = h.element("x");
        let g = h.element("g");
        assert_eq!(h.mul(&x, &g), h.element("gx").neg());
        assert_eq!(h.mul(&g, &g), h.one());
        assert!(h.mul(&x, &x).is_zero());
        assert!(verify_hopf(&h).all_passed());
    }

    #[test]
    fn char_two_refused() {
        assert!(matches!(sweedler4(Field::Prime(2)), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn prime_field_sweedler_passes() {
        let h = sweedler4(Field::prime(5).unwrap()).unwrap();
        assert!(verify_hopf(&h).all_passed());
    }

    #[test]
    fn resolves_nested_names() {
        let d = resolve("double:sweedler4", Field::Rational).unwrap();
        assert_eq!(d.hopf.dim(), 16);
        assert!(d.r.is_some());
        let s = resolve("dual:c2", Field::Rational).unwrap();
        assert_eq!(s.hopf.dim(), 2);
        assert!(s.r.is_none());
        assert!(matches!(resolve("nosuch", Field::Rational), Err(Error::Missing(_))));
    }
}
