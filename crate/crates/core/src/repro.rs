//! Exact reproductions of the published values around the double of Sweedler's algebra:
//! pairings of the canonical element, the coactions of the braided double of D(H4), and
//! the map ξ of the braided double construction.

use std::sync::Arc;

use crate::catalog::{group_algebra_c2, half_sign_element, sweedler4};
use crate::cross::{drinfeld_double, double_bicrossproduct, AssembledBialgebra, CrossStructure, Crossings};
use crate::error::Result;
use crate::factor::{cofactorise, factorise, left_coaction_closed_form, phi_psi_prime, BraidedDouble};
use crate::hopf::HopfData;
use crate::linmap::{compose, LinMap};
use crate::qt::{is_triangular, QTElement, Role};
use crate::report::Report;
use crate::scalar::{Field, Scalar};
use crate::solve::invert;
use crate::space::Shape;
use crate::tensor::SparseTensor;

/// Values of the functional x⊗f on a double A⊗H with A = H*: e_a⊗h ↦ e_a(x)·f(h).
pub fn evaluation_functional(h: &HopfData, x: &SparseTensor, f: &[Scalar]) -> Vec<Scalar> {
    let n = h.dim();
    let mut out = vec![Scalar::zero(); n * n];
    for (a, c) in x.entries() {
        for (j, v) in f.iter().enumerate() {
            out[*a as usize * n + j] = c * v;
        }
    }
    out
}

/// The dual basis functional e_label on H.
pub fn dual_basis_functional(h: &HopfData, label: &str) -> Vec<Scalar> {
    let i = h.space.index_of(label).expect("label in basis");
    (0..h.dim()).map(|j| if j == i { Scalar::one() } else { Scalar::zero() }).collect()
}

/// H4 and its Drinfeld double with canonical element, over Q.
pub fn sweedler_double() -> Result<(Arc<HopfData>, AssembledBialgebra, QTElement)> {
    let h = Arc::new(sweedler4(Field::Rational)?);
    let (d, b) = drinfeld_double(&h)?;
    Ok((h, d, b))
}

/// ⟨[b]⁻¹, (x⊗ε)⊗(ε⊗e_x)⟩ = 0 and ⟨[b]₂₁, (x⊗ε)⊗(ε⊗e_x)⟩ = 1 for D(H4), so [b] is not triangular.
pub fn canonical_element_pairings() -> Result<Report> {
    let (h, d, b) = sweedler_double()?;
    let mut rep = Report::new();
    let x_eps = evaluation_functional(&h, &h.element("x"), &h.counit_values());
    let eps_ex = evaluation_functional(&h, &h.one(), &dual_basis_functional(&h, "x"));
    let fs = [x_eps, eps_ex];
    let inv = b.inverse.pair(&fs);
    rep.number("⟨[b]⁻¹, (x⊗ε)⊗(ε⊗e_x)⟩", &inv, Some(&Scalar::zero()), "inverse of the canonical element");
    let flipped = b.flip().pair(&fs);
    rep.number("⟨[b]₂₁, (x⊗ε)⊗(ε⊗e_x)⟩", &flipped, Some(&Scalar::one()), "flipped canonical element");
    rep.record(
        "[b]₂₁ ≠ [b]⁻¹",
        (inv == flipped).then(|| "the two pairings agree".to_string()),
    );
    rep.record(
        "D(H4) with [b] is not triangular",
        is_triangular(&d.hopf, &b).then(|| "[b]₂₁[b] = 1⊗1".to_string()),
    );
    Ok(rep)
}

/// The braided double of A = H = D(H4) with P = Q = R = [b] and U = V = 1⊗1.
pub fn braided_double_of_sweedler_double() -> Result<BraidedDouble> {
    let (_, d, b) = sweedler_double()?;
    let dd = Arc::new(d.hopf);
    let mk = |role| QTElement::with_inverse(role, dd.clone(), dd.clone(), b.value.clone(), b.inverse.clone());
    BraidedDouble::new(
        mk(Role::P)?,
        mk(Role::Q)?,
        mk(Role::R)?,
        QTElement::unit(Role::U, dd.clone(), dd.clone()),
        QTElement::unit(Role::V, dd.clone(), dd.clone()),
    )
}

/// Coaction values of the braided cofactorisation of the braided double of D(H4):
/// ⟨φ(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩ against 2, and the coefficient of 1⊗(e_1⊗1) in the
/// (x⊗id)-component of ψ(e_x⊗g) against 1, each beside the value for the trivial coaction.
pub fn braided_double_coactions(bd: &BraidedDouble) -> Result<Report> {
    let h4 = Arc::new(sweedler4(Field::Rational)?);
    let mut rep = Report::new();
    let f = bd.cofactorise()?;
    rep.extend("cofactorisation: ", f.report.clone());
    let a = &bd.a_braided.data;
    let h = &bd.h_braided.data;

    let v = a.element("e_gx⊗1");
    let fs = [
        evaluation_functional(&h4, &h4.element("x"), &h4.counit_values()),
        evaluation_functional(&h4, &h4.element("gx"), &dual_basis_functional(&h4, "x")),
    ];
    let phi_v = f.alpha_or_phi.apply(&v)?;
    let trivial = h.one().outer(&v);
    let got = phi_v.pair(&fs);
    rep.number("⟨φ(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩", &got, Some(&Scalar::from_i64(2)), "cofactorisation of the braided double");
    rep.number(
        "⟨1⊗(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩",
        &trivial.pair(&fs),
        Some(&Scalar::zero()),
        "trivial left coaction",
    );
    rep.record(
        "φ is not the trivial coaction",
        (phi_v == trivial).then(|| "φ(e_gx⊗1) = 1⊗(e_gx⊗1)".to_string()),
    );
    let (phi1, _) = phi_psi_prime(&bd.r)?;
    let untwisted = phi1.apply(&v)?.reshape(trivial.shape().clone())?;
    rep.number("⟨φ′(e_gx⊗1), (x⊗ε)⊗(gx⊗e_x)⟩", &untwisted.pair(&fs), None, "coaction of the weak R-matrix double");
    let closed = left_coaction_closed_form(&bd.r, &bd.u)?;
    let closed = closed.reshape(f.alpha_or_phi.domain().clone(), f.alpha_or_phi.codomain().clone())?;
    rep.record(
        "φ agrees with its closed form through φ′, R and U",
        closed.first_difference(&f.alpha_or_phi).map(|(i, j)| format!("differ at column {j}, row {i}")),
    );

    let w = h.element("e_x⊗g");
    let psi_w = f.beta_or_psi.apply(&w)?;
    let trivial = w.outer(&a.one());
    let component = |t: &SparseTensor| x_component(&h4, t);
    let got = component(&psi_w)?;
    let unit_coeff = |t: &SparseTensor| t.get(0);
    rep.number(
        "coefficient of 1⊗(e_1⊗1) in (x⊗id)ψ(e_x⊗g)",
        &unit_coeff(&got),
        Some(&Scalar::one()),
        "cofactorisation of the braided double",
    );
    rep.number(
        "coefficient of 1⊗(e_1⊗1) in (x⊗id)(e_x⊗g⊗1)",
        &unit_coeff(&component(&trivial)?),
        Some(&Scalar::zero()),
        "trivial right coaction",
    );
    rep.record(
        "ψ is not the trivial coaction",
        (psi_w == trivial).then(|| "ψ(e_x⊗g) = (e_x⊗g)⊗1".to_string()),
    );
    Ok(rep)
}

/// Applies x to the dual leg of the first factor of an element of D(H4)⊗D(H4), leaving H4⊗D(H4).
fn x_component(h4: &HopfData, t: &SparseTensor) -> Result<SparseTensor> {
    let n = h4.dim() as u64;
    let nd = n * n;
    let x = h4.element("x");
    let dspace = t.shape().space(1).clone();
    let mut entries = Vec::new();
    for (f, c) in t.entries() {
        let (first, second) = (f / nd, f % nd);
        let (a, hh) = (first / n, first % n);
        let xa = x.get(a);
        if !xa.is_zero() {
            entries.push((hh * nd + second, c * &xa));
        }
    }
    SparseTensor::new(Shape::new(vec![h4.space.clone(), dspace]), entries)
}

/// R_B = R14 P13 Q24 R̄32 for the braided double of D(H4) is not triangular.
pub fn strict_braiding_of_double(bd: &BraidedDouble) -> Report {
    let mut rep = Report::new();
    rep.record(
        "R_B₂₁·R_B ≠ 1⊗1",
        is_triangular(&bd.d, &bd.rd).then(|| "R_B is triangular".to_string()),
    );
    rep
}

/// ξ = id when V = R, on A = H = H4 with P = Q = ½(1⊗1+1⊗g+g⊗1−g⊗g), R = V = 1⊗1, and on
/// A = H = kC2 with R = V equal to that element.
pub fn xi_is_identity_when_v_equals_r() -> Result<Report> {
    let mut rep = Report::new();
    let h4 = Arc::new(sweedler4(Field::Rational)?);
    let c2 = Arc::new(group_algebra_c2(Field::Rational)?);
    for (label, h, rv) in [
        ("H4, R = V = 1⊗1", &h4, h4.one().outer(&h4.one())),
        ("kC2, R = V = ½(1⊗1+1⊗g+g⊗1−g⊗g)", &c2, half_sign_element(&c2)),
    ] {
        let half = half_sign_element(h);
        let p = QTElement::new(Role::P, h.clone(), h.clone(), half.clone())?;
        let q = QTElement::new(Role::Q, h.clone(), h.clone(), half)?;
        let r = QTElement::new(Role::R, h.clone(), h.clone(), rv.clone())?;
        let v = QTElement::new(Role::V, h.clone(), h.clone(), rv)?;
        let u = QTElement::unit(Role::U, h.clone(), h.clone());
        let bd = BraidedDouble::new(p, q, r, u, v)?;
        let (xi, xib) = bd.xi_explicit()?;
        rep.record(format!("{label}: ξ = id"), (!xi.is_identity()).then(|| format!("ξ = {xi}")));
        rep.record(format!("{label}: ξ̄ = id"), (!xib.is_identity()).then(|| format!("ξ̄ = {xib}")));
        let proj = bd.xi_by_projection()?.reshape(xi.domain().clone(), xi.codomain().clone())?;
        rep.record(
            format!("{label}: (π_A⊗π_H)Δ = ξ"),
            proj.first_difference(&xi).map(|(i, j)| format!("differ at column {j}, row {i}")),
        );
    }
    Ok(rep)
}

/// ξ is bijective with inverse ξ̄ and equals (π_A⊗π_H)∘Δ of the braided group of the double.
pub fn xi_bijective_and_projection(bd: &BraidedDouble) -> Result<Report> {
    let mut rep = Report::new();
    let (xi, xib) = bd.xi_explicit()?;
    rep.record("ξ is bijective", invert(&xi).err().map(|e| e.to_string()));
    rep.record(
        "ξ̄∘ξ = id",
        (!compose(&xi, &xib)?.is_identity()).then(|| "ξ̄∘ξ ≠ id".to_string()),
    );
    rep.record(
        "ξ∘ξ̄ = id",
        (!compose(&xib, &xi)?.is_identity()).then(|| "ξ∘ξ̄ ≠ id".to_string()),
    );
    let proj = bd.xi_by_projection()?.reshape(xi.domain().clone(), xi.codomain().clone())?;
    rep.record(
        "(π_A⊗π_H)Δ = ξ",
        proj.first_difference(&xi).map(|(i, j)| format!("differ at column {j}, row {i}")),
    );
    Ok(rep)
}

/// Factorises D(H4) through its two legs and cofactorises H4⊗H4 through its projections.
pub fn factorisation_round_trip() -> Result<Report> {
    let (h, d, _) = sweedler_double()?;
    let mut rep = Report::new();
    let x = &d.hopf;
    let ja = LinMap::from_fn(d.a.shape(), x.shape(), |i| d.pure(&d.a.basis(i as usize), &d.h.one()));
    let jh = LinMap::from_fn(d.h.shape(), x.shape(), |j| d.pure(&d.a.one(), &d.h.basis(j as usize)));
    let f = factorise(x, &d.a, &d.h, &ja, &jh)?;
    rep.extend("factorise D(H4): ", f.report.clone());
    let same = |a: &LinMap, b: &LinMap| -> Option<String> {
        let b = b.reshape(a.domain().clone(), a.codomain().clone()).ok()?;
        a.first_difference(&b).map(|(i, j)| format!("differ at column {j}, row {i}"))
    };
    rep.record("factorise D(H4): product reassembled", same(&x.m, &f.assembled.hopf.m));
    rep.record("factorise D(H4): coproduct reassembled", same(&x.cm, &f.assembled.hopf.cm));
    let sx = x.antipode_map()?;
    rep.record("factorise D(H4): antipode reassembled", same(sx, f.assembled.hopf.antipode_map()?));

    let t = double_bicrossproduct(&h, &h, CrossStructure::trivial(&h, &h))?;
    let (pa, ph) = crate::factor::projections(&t);
    let g = cofactorise(&t.hopf, &h, &h, &pa, &ph, &Crossings::Plain)?;
    rep.extend("cofactorise H4⊗H4: ", g.report.clone());
    rep.record(
        "cofactorise H4⊗H4: φ and ψ are trivial",
        (!(g.assembled.structure.trivial_phi && g.assembled.structure.trivial_psi))
            .then(|| "a coaction is not trivial".to_string()),
    );
    Ok(rep)
}
