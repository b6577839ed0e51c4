//! Factorisation and cofactorisation of a bialgebra through A⊗H, and the braided double
//! built from a weak R-matrix together with its explicit ξ.

use std::sync::Arc;

use crate::cross::{
    carrier_space, double_bicrossproduct_with, pipeline, weak_r_double, AssembledBialgebra, CrossStructure, Crossings,
};
use crate::error::{Error, Result};
use crate::hopf::{bialgebra_morphism_witness, HopfData, Legs};
use crate::linmap::{chain, compose, tensor, LinMap};
use crate::qt::{adjoint_action, compose_rd, transmute, BraidedHopfData, Crossing, QTElement};
use crate::report::Report;
use crate::solve::invert;
use crate::space::{Shape, Space};
use crate::tensor::{Accum, SparseTensor};

/// Everything extracted from a (co)factorisation, with the checks that were run.
#[derive(Clone, Debug)]
pub struct FactorisationResult {
    /// H⊗A → A⊗H for factorisation, A⊗H → H⊗A for cofactorisation.
    pub zeta: LinMap,
    /// α: H⊗A → A, or φ: A → H⊗A.
    pub alpha_or_phi: LinMap,
    /// β: H⊗A → H, or ψ: H → H⊗A.
    pub beta_or_psi: LinMap,
    pub assembled: AssembledBialgebra,
    /// A⊗H → X for factorisation, X → A⊗H for cofactorisation.
    pub xi: LinMap,
    pub xi_inverse: LinMap,
    pub report: Report,
}

fn shape_of(spaces: &[&HopfData]) -> Shape {
    Shape::new(spaces.iter().map(|h| h.space.clone()).collect())
}

fn map_diff(lhs: &LinMap, rhs: &LinMap) -> Option<String> {
    if lhs.domain().total() != rhs.domain().total() || lhs.codomain().total() != rhs.codomain().total() {
        return Some(format!(
            "shapes {} → {} and {} → {}",
            lhs.domain(),
            lhs.codomain(),
            rhs.domain(),
            rhs.codomain()
        ));
    }
    let rhs = rhs.reshape(lhs.domain().clone(), lhs.codomain().clone()).ok()?;
    lhs.first_difference(&rhs).map(|(i, j)| {
        format!(
            "differ on {} at {}",
            lhs.domain().labels_of(j).join("⊗"),
            lhs.codomain().labels_of(i).join("⊗")
        )
    })
}

fn morphism(f: &LinMap, src: &HopfData, dst: &HopfData, name: &str) -> Result<()> {
    match bialgebra_morphism_witness(f, src, dst) {
        Some(w) => Err(Error::Morphism(format!("{name}: {w}"))),
        None => Ok(()),
    }
}

/// Checks that ξ: `src → dst` preserves products, units, coproducts and counits.
fn intertwining(rep: &mut Report, xi: &LinMap, src: &HopfData, dst: &HopfData) {
    let xx = tensor(xi, xi);
    let sm = src.m.reshape(xx.domain().clone(), src.shape()).expect("square");
    let left = compose(&sm, xi).expect("shapes");
    let right = compose(&xx, &dst.m.reshape(xx.codomain().clone(), dst.shape()).expect("square")).expect("shapes");
    rep.record("ξ∘m = m∘(ξ⊗ξ)", map_diff(&left, &right));
    let left = compose(&src.cm.reshape(src.shape(), xx.domain().clone()).expect("square"), &xx).expect("shapes");
    let right = compose(xi, &dst.cm.reshape(dst.shape(), xx.codomain().clone()).expect("square")).expect("shapes");
    rep.record("(ξ⊗ξ)∘Δ = Δ∘ξ", map_diff(&left, &right));
    rep.record(
        "ξ(1) = 1",
        (xi.apply(&src.one()).expect("shape") != dst.one()).then(|| "ξ(1) ≠ 1".to_string()),
    );
    let left = compose(xi, &dst.counit).expect("shapes");
    rep.record("ε∘ξ = ε", map_diff(&left, &src.counit));
}

/// (id⊗ε_H): A⊗H → A and (ε_A⊗id): A⊗H → H on a carrier space of dimension dim A · dim H.
pub fn projections_on(carrier: &Arc<Space>, a: &HopfData, h: &HopfData) -> Result<(LinMap, LinMap)> {
    let nh = h.dim() as u64;
    if carrier.dim() != a.dim() * h.dim() {
        return Err(Error::Dimension {
            left: carrier.name().to_string(),
            right: format!("{}⊗{}", a.space.name(), h.space.name()),
        });
    }
    let c = Shape::of(carrier);
    let pa = LinMap::from_fn(c.clone(), a.shape(), |f| a.basis((f / nh) as usize).scale(&h.counit.get(0, f % nh)));
    let ph = LinMap::from_fn(c, h.shape(), |f| h.basis((f % nh) as usize).scale(&a.counit.get(0, f / nh)));
    Ok((pa, ph))
}

/// π_A(a⊗h) = ε(h)a and π_H(a⊗h) = ε(a)h.
pub fn projections(d: &AssembledBialgebra) -> (LinMap, LinMap) {
    projections_on(&d.hopf.space, &d.a, &d.h).expect("assembled on A⊗H")
}

/// Factorisation through injections j_A, j_H into X: ξ = m_X(j_A⊗j_H),
/// ζ = ξ̄ m_X (j_H⊗j_A), α = (id⊗ε)ζ, β = (ε⊗id)ζ, reassembled as A_α⋈_β H.
pub fn factorise(
    x: &HopfData,
    a: &Arc<HopfData>,
    h: &Arc<HopfData>,
    j_a: &LinMap,
    j_h: &LinMap,
) -> Result<FactorisationResult> {
    morphism(j_a, a, x, "j_A")?;
    morphism(j_h, h, x, "j_H")?;
    let xm = x.m.reshape(Shape::power(&x.space, 2), x.shape())?;
    let xi = compose(&tensor(j_a, j_h), &xm)?;
    let xi_inverse = invert(&xi).map_err(|e| Error::NotInvertible(format!("not factorisable: {e}")))?;
    let zeta = chain(&[&tensor(j_h, j_a), &xm, &xi_inverse])?;
    let ah = shape_of(&[a, h]);
    let alpha = compose(&zeta, &tensor(&LinMap::identity(a.shape()), &h.counit))?.reshape(zeta.domain().clone(), a.shape())?;
    let beta = compose(&zeta, &tensor(&a.counit, &LinMap::identity(h.shape())))?.reshape(zeta.domain().clone(), h.shape())?;

    let mut report = Report::new();
    report.pass("j_A is a bialgebra map");
    report.pass("j_H is a bialgebra map");
    report.pass("ξ is bijective");
    factorisation_identities(&mut report, a, h, &zeta);

    let antipode = match &x.antipode {
        Some(s) => Some(
            chain(&[&xi, s, &xi_inverse])?.reshape(ah.clone(), ah.clone())?,
        ),
        None => None,
    };
    let name = format!("{}⋈{}", a.name, h.name);
    let cs = CrossStructure::actions(a, h, alpha.clone(), beta.clone())?;
    let assembled = double_bicrossproduct_with(a, h, cs, &Crossings::Plain, antipode.map(|s| reshape_to(&s, &name, a, h)), &name)?;
    let xi_c = xi.reshape(assembled.hopf.shape(), x.shape())?;
    let xi_inv_c = xi_inverse.reshape(x.shape(), assembled.hopf.shape())?;
    intertwining(&mut report, &xi_c, &assembled.hopf, x);
    report.extend("assembled: ", assembled.report.clone());
    Ok(FactorisationResult {
        zeta,
        alpha_or_phi: alpha,
        beta_or_psi: beta,
        assembled,
        xi: xi_c,
        xi_inverse: xi_inv_c,
        report,
    })
}

fn reshape_to(s: &LinMap, name: &str, a: &HopfData, h: &HopfData) -> LinMap {
    let c = Shape::of(&carrier_space(name, a, h));
    s.reshape(c.clone(), c).expect("carrier size")
}

/// The identities ζ satisfies in a factorisation:
/// ζ(m_H⊗id) = (id⊗m_H)(ζ⊗id)(id⊗ζ), ζ(id⊗m_A) = (m_A⊗id)(id⊗ζ)(ζ⊗id),
/// ζ(η⊗id) = id⊗η, ζ(id⊗η) = η⊗id, and ζ is a counital coalgebra map.
fn factorisation_identities(rep: &mut Report, a: &HopfData, h: &HopfData, zeta: &LinMap) {
    let hha = shape_of(&[h, h, a]);
    let haa = shape_of(&[h, a, a]);
    let ah = shape_of(&[a, h]);
    let run = |start: &Shape, cod: &Shape, steps: &[(usize, &LinMap)]| {
        pipeline(start.clone(), cod.clone(), start.clone(), steps).expect("shapes")
    };
    let lhs = run(&hha, &ah, &[(0, &h.m), (0, zeta)]);
    let rhs = run(&hha, &ah, &[(1, zeta), (0, zeta), (1, &h.m)]);
    rep.record("ζ(m_H⊗id) = (id⊗m_H)(ζ⊗id)(id⊗ζ)", map_diff(&lhs, &rhs));
    let lhs = run(&haa, &ah, &[(1, &a.m), (0, zeta)]);
    let rhs = run(&haa, &ah, &[(0, zeta), (1, zeta), (0, &a.m)]);
    rep.record("ζ(id⊗m_A) = (m_A⊗id)(id⊗ζ)(ζ⊗id)", map_diff(&lhs, &rhs));

    let mut w = None;
    for i in 0..a.dim() {
        let got = zeta.apply(&h.one().outer(&a.basis(i))).expect("shape");
        if got != a.basis(i).outer(&h.one()) {
            w = Some(format!("ζ(1⊗{}) ≠ {}⊗1", a.label(i as u64), a.label(i as u64)));
            break;
        }
    }
    rep.record("ζ(η⊗id) = id⊗η", w);
    let mut w = None;
    for j in 0..h.dim() {
        let got = zeta.apply(&h.basis(j).outer(&a.one())).expect("shape");
        if got != a.one().outer(&h.basis(j)) {
            w = Some(format!("ζ({}⊗1) ≠ 1⊗{}", h.label(j as u64), h.label(j as u64)));
            break;
        }
    }
    rep.record("ζ(id⊗η) = η⊗id", w);

    // tensor coalgebras: Δ(h⊗a) = h1⊗a1⊗h2⊗a2
    let sw_ha = LinMap::swap(&h.space, &a.space);
    let sw_ah = LinMap::swap(&a.space, &h.space);
    let ha = shape_of(&[h, a]);
    let ahah = shape_of(&[a, h, a, h]);
    let lhs = run(&ha, &ahah, &[(0, zeta), (0, &a.cm), (2, &h.cm), (1, &sw_ah)]);
    let rhs = run(&ha, &ahah, &[(0, &h.cm), (2, &a.cm), (1, &sw_ha), (0, zeta), (2, zeta)]);
    rep.record("ζ is a coalgebra map", map_diff(&lhs, &rhs));
    let eps_ah = tensor(&a.counit, &h.counit);
    let eps_ha = tensor(&h.counit, &a.counit);
    let lhs = compose(zeta, &eps_ah).expect("shape");
    rep.record("(ε⊗ε)ζ = ε⊗ε", map_diff(&lhs, &eps_ha));
}

/// The product of the tensor algebra X⊗Y with `cross: Y⊗X → X⊗Y` between the middle legs.
fn crossed_product(x: &HopfData, y: &HopfData, cross: &LinMap) -> Result<LinMap> {
    let xyxy = shape_of(&[x, y, x, y]);
    pipeline(xyxy.clone(), shape_of(&[x, y]), xyxy, &[(1, cross), (0, &x.m), (1, &y.m)])
}

/// Cofactorisation through projections p_A, p_H out of X: ξ = (p_A⊗p_H)Δ_X,
/// ζ = (p_H⊗p_A)Δ_X ξ̄, φ = ζ(−⊗1), ψ = ζ(1⊗−), reassembled as A^φ⋈^ψ H.
///
/// With braided crossings, X, A and H are braided and the crossings are those of the ambient category.
pub fn cofactorise(
    x: &HopfData,
    a: &Arc<HopfData>,
    h: &Arc<HopfData>,
    p_a: &LinMap,
    p_h: &LinMap,
    crossings: &Crossings,
) -> Result<FactorisationResult> {
    morphism(p_a, x, a, "p_A")?;
    morphism(p_h, x, h, "p_H")?;
    let ah = shape_of(&[a, h]);
    let xx = Shape::power(&x.space, 2);
    let xcm = x.cm.reshape(x.shape(), xx.clone())?;
    let xi = compose(&xcm, &tensor(p_a, p_h))?;
    let xi_inverse = invert(&xi).map_err(|e| Error::NotInvertible(format!("not cofactorisable: {e}")))?;
    let zeta = chain(&[&xi_inverse, &xcm, &tensor(p_h, p_a)])?;
    let phi = LinMap::try_from_fn(a.shape(), shape_of(&[h, a]), |i| zeta.apply(&a.basis(i as usize).outer(&h.one())))?;
    let psi = LinMap::try_from_fn(h.shape(), shape_of(&[h, a]), |j| zeta.apply(&a.one().outer(&h.basis(j as usize))))?;

    let mut report = Report::new();
    report.pass("p_A is a bialgebra map");
    report.pass("p_H is a bialgebra map");
    report.pass("ξ is bijective");
    cofactorisation_identities(&mut report, a, h, &zeta, crossings)?;
    coaction_checks(&mut report, a, h, &phi, &psi);

    let name = format!("{}⋈{}", a.name, h.name);
    let antipode = match &x.antipode {
        Some(s) => Some(reshape_to(&chain(&[&xi_inverse, s, &xi])?, &name, a, h)),
        None => None,
    };
    let cs = CrossStructure::coactions(a, h, phi.clone(), psi.clone())?;
    let assembled = double_bicrossproduct_with(a, h, cs, crossings, antipode, &name)?;
    let xi_c = xi.reshape(x.shape(), assembled.hopf.shape())?;
    let xi_inv_c = xi_inverse.reshape(assembled.hopf.shape(), x.shape())?;
    intertwining(&mut report, &xi_c, x, &assembled.hopf);
    report.extend("assembled: ", assembled.report.clone());
    let _ = ah;
    Ok(FactorisationResult {
        zeta,
        alpha_or_phi: phi,
        beta_or_psi: psi,
        assembled,
        xi: xi_c,
        xi_inverse: xi_inv_c,
        report,
    })
}

/// Identities dual to those of a factorisation:
/// (Δ_H⊗id)ζ = (id⊗ζ)(ζ⊗id)(id⊗Δ_H), (id⊗Δ_A)ζ = (ζ⊗id)(id⊗ζ)(Δ_A⊗id),
/// (ε_H⊗id)ζ = id⊗ε_H, (id⊗ε_A)ζ = ε_A⊗id, and ζ is a unital algebra map between the
/// tensor product algebras A⊗H and H⊗A.
fn cofactorisation_identities(
    rep: &mut Report,
    a: &HopfData,
    h: &HopfData,
    zeta: &LinMap,
    crossings: &Crossings,
) -> Result<()> {
    let ah = shape_of(&[a, h]);
    let run = |cod: Shape, steps: &[(usize, &LinMap)]| pipeline(ah.clone(), cod, ah.clone(), steps).expect("shapes");
    let lhs = run(shape_of(&[h, h, a]), &[(0, zeta), (0, &h.cm)]);
    let rhs = run(shape_of(&[h, h, a]), &[(1, &h.cm), (0, zeta), (1, zeta)]);
    rep.record("(Δ_H⊗id)ζ = (id⊗ζ)(ζ⊗id)(id⊗Δ_H)", map_diff(&lhs, &rhs));
    let lhs = run(shape_of(&[h, a, a]), &[(0, zeta), (1, &a.cm)]);
    let rhs = run(shape_of(&[h, a, a]), &[(0, &a.cm), (1, zeta), (0, zeta)]);
    rep.record("(id⊗Δ_A)ζ = (ζ⊗id)(id⊗ζ)(Δ_A⊗id)", map_diff(&lhs, &rhs));
    let lhs = run(a.shape(), &[(0, zeta), (0, &h.counit)]);
    let rhs = run(a.shape(), &[(1, &h.counit)]);
    rep.record("(ε_H⊗id)ζ = id⊗ε_H", map_diff(&lhs, &rhs));
    let lhs = run(h.shape(), &[(0, zeta), (1, &a.counit)]);
    let rhs = run(h.shape(), &[(0, &a.counit)]);
    rep.record("(id⊗ε_A)ζ = ε_A⊗id", map_diff(&lhs, &rhs));

    let (c_ha, c_ah) = match crossings {
        Crossings::Plain => (LinMap::swap(&h.space, &a.space), LinMap::swap(&a.space, &h.space)),
        Crossings::Braided { h_over_a, a_over_h } => (h_over_a.clone(), a_over_h.clone()),
    };
    let m_ah = crossed_product(a, h, &c_ha)?;
    let m_ha = crossed_product(h, a, &c_ah)?;
    let z2 = tensor(zeta, zeta);
    let lhs = compose(&m_ah, zeta)?;
    let rhs = compose(&z2, &m_ha)?;
    rep.record("ζ is an algebra map", map_diff(&lhs, &rhs));
    rep.record(
        "ζ(1⊗1) = 1⊗1",
        (zeta.apply(&a.one().outer(&h.one()))? != h.one().outer(&a.one())).then(|| "ζ(1⊗1) ≠ 1⊗1".to_string()),
    );
    Ok(())
}

fn coaction_checks(rep: &mut Report, a: &HopfData, h: &HopfData, phi: &LinMap, psi: &LinMap) {
    let hha = shape_of(&[h, h, a]);
    let lhs = pipeline(a.shape(), hha.clone(), a.shape(), &[(0, phi), (0, &h.cm)]).expect("shapes");
    let rhs = pipeline(a.shape(), hha, a.shape(), &[(0, phi), (1, phi)]).expect("shapes");
    rep.record("φ is coassociative", map_diff(&lhs, &rhs));
    let lhs = pipeline(a.shape(), a.shape(), a.shape(), &[(0, phi), (0, &h.counit)]).expect("shapes");
    rep.record("φ is counital", map_diff(&lhs, &LinMap::identity(a.shape())));
    let haa = shape_of(&[h, a, a]);
    let lhs = pipeline(h.shape(), haa.clone(), h.shape(), &[(0, psi), (1, &a.cm)]).expect("shapes");
    let rhs = pipeline(h.shape(), haa, h.shape(), &[(0, psi), (0, psi)]).expect("shapes");
    rep.record("ψ is coassociative", map_diff(&lhs, &rhs));
    let lhs = pipeline(h.shape(), h.shape(), h.shape(), &[(0, psi), (1, &a.counit)]).expect("shapes");
    rep.record("ψ is counital", map_diff(&lhs, &LinMap::identity(h.shape())));
}

/// φ′(a) = Σ R″R̄″ ⊗ R′aR̄′ and ψ′(h) = Σ R″hR̄″ ⊗ R′R̄′ for a weak R-matrix R on A⊗H.
pub fn phi_psi_prime(r: &QTElement) -> Result<(LinMap, LinMap)> {
    let a = &r.left;
    let h = &r.right;
    let ha = shape_of(&[h, a]);
    let rt = r.terms();
    let rb = r.inverse_terms();
    let sandwich = |x: Option<usize>, y: Option<usize>| -> SparseTensor {
        let mut acc = Accum::new();
        let na = a.dim() as u64;
        for (i, k, c) in &rt {
            for (p, q, d) in &rb {
                let mut left = a.basis(*i as usize);
                if let Some(x) = x {
                    left = a.mul(&left, &a.basis(x));
                }
                let left = a.mul(&left, &a.basis(*p as usize));
                let mut right = h.basis(*k as usize);
                if let Some(y) = y {
                    right = h.mul(&right, &h.basis(y));
                }
                let right = h.mul(&right, &h.basis(*q as usize));
                let cd = c * d;
                for (u, e) in right.entries() {
                    for (v, g) in left.entries() {
                        acc.add(u * na + v, &(&cd * e) * g);
                    }
                }
            }
        }
        acc.finish(ha.clone())
    };
    let phi = LinMap::from_fn(a.shape(), ha.clone(), |i| sandwich(Some(i as usize), None));
    let psi = LinMap::from_fn(h.shape(), ha.clone(), |j| sandwich(None, Some(j as usize)));
    Ok((phi, psi))
}

/// φ(a) = Σ φ′(a)_H·S(R″U″) ⊗ (R′U′)▷φ′(a)_A, ▷ the adjoint action of A: the left coaction
/// of the braided cofactorisation written through φ′, R and U.
pub fn left_coaction_closed_form(r: &QTElement, u: &QTElement) -> Result<LinMap> {
    let a = &r.left;
    let h = &r.right;
    let (phi1, _) = phi_psi_prime(r)?;
    let legs = Legs::new(vec![a, h]);
    let ru = legs.mul(&r.value, &u.value);
    let sh = h.antipode_map()?;
    let ad = adjoint_action(a)?;
    let na = a.dim() as u64;
    let nh = h.dim() as u64;
    let terms: Vec<(u64, SparseTensor, crate::scalar::Scalar)> = ru
        .entries()
        .iter()
        .map(|(f, c)| (f / nh, sh.column(f % nh), c.clone()))
        .collect();
    let ha = shape_of(&[h, a]);
    Ok(LinMap::from_fn(a.shape(), ha.clone(), |i| {
        let mut acc = Accum::new();
        for (f, c) in phi1.col(i) {
            let (hp, ap) = (f / na, f % na);
            for (x, sy, d) in &terms {
                let left = h.mul(&h.basis(hp as usize), sy);
                let cd = c * d;
                for (q, e) in ad.col(x * na + ap) {
                    let ce = &cd * e;
                    for (p, g) in left.entries() {
                        acc.add(p * na + q, &ce * g);
                    }
                }
            }
        }
        acc.finish(ha.clone())
    }))
}

/// ξ(a⊗h) = Σ a·S(X′) ⊗ X″▷h with X = R̄V, and ξ̄(a⊗h) = Σ a·S(Y′) ⊗ Y″▷h with Y = V̄R,
/// ▷ the adjoint action of H, as maps on `carrier` = A⊗H.
pub fn xi_explicit(carrier: &Arc<Space>, r: &QTElement, v: &QTElement) -> Result<(LinMap, LinMap)> {
    let a = &r.left;
    let h = &r.right;
    if carrier.dim() != a.dim() * h.dim() {
        return Err(Error::Dimension {
            left: carrier.name().to_string(),
            right: format!("{}⊗{}", a.space.name(), h.space.name()),
        });
    }
    if v.left.space != a.space || v.right.space != h.space {
        return Err(Error::Dimension {
            left: format!("V on {}⊗{}", v.left.space.name(), v.right.space.name()),
            right: format!("{}⊗{}", a.space.name(), h.space.name()),
        });
    }
    let legs = Legs::new(vec![a, h]);
    let x = legs.mul(&r.inverse, &v.value);
    let y = legs.mul(&v.inverse, &r.value);
    let sa = a.antipode_map()?;
    let ad = adjoint_action(h)?;
    let nh = h.dim() as u64;
    let na = a.dim() as u64;
    let c = Shape::of(carrier);
    let build = |z: &SparseTensor| -> Result<LinMap> {
        // S(Z′) ⊗ Z″ with Z′ on the left
        let terms: Vec<(SparseTensor, u64, crate::scalar::Scalar)> = z
            .entries()
            .iter()
            .map(|(f, c)| (sa.column(f / nh), f % nh, c.clone()))
            .collect();
        LinMap::try_from_fn(c.clone(), c.clone(), |j| {
            let (ai, hj) = (j / nh, j % nh);
            let mut acc = Accum::new();
            for (sz, z2, coef) in &terms {
                let left = a.mul(&a.basis(ai as usize), sz);
                if left.is_zero() {
                    continue;
                }
                for (q, e) in ad.col(z2 * nh + hj) {
                    let ce = coef * e;
                    for (p, d) in left.entries() {
                        acc.add(p * nh + q, &ce * d);
                    }
                }
            }
            let _ = na;
            Ok(acc.finish(c.clone()))
        })
    };
    Ok((build(&x)?, build(&y)?))
}

/// A double D = A⋈^R H built from a weak R-matrix, its R-matrix R_D, the braided group D̲ and
/// the transmutations A̲ = B(D, π_A, A) and H̲ = B(D, π_H, H).
#[derive(Clone, Debug)]
pub struct BraidedDouble {
    pub p: QTElement,
    pub q: QTElement,
    pub r: QTElement,
    pub u: QTElement,
    pub v: QTElement,
    pub double: AssembledBialgebra,
    pub d: Arc<HopfData>,
    pub rd: QTElement,
    pub d_braided: BraidedHopfData,
    pub a_braided: BraidedHopfData,
    pub h_braided: BraidedHopfData,
    pub pi_a: LinMap,
    pub pi_h: LinMap,
}

impl BraidedDouble {
    /// `p` is quasitriangular on A, `q` on H; `r` is a weak R-matrix and `u`, `v` central weak
    /// R-matrices on A⊗H.
    pub fn new(p: QTElement, q: QTElement, r: QTElement, u: QTElement, v: QTElement) -> Result<BraidedDouble> {
        let double = weak_r_double(&r)?;
        let d = Arc::new(double.hopf.clone());
        let rd = compose_rd(&d, &p, &q, &r, &u, &v)?;
        let d_braided = transmute(&d, &LinMap::identity(d.shape()), &d, &rd)?;
        let (pi_a, pi_h) = projections(&double);
        let a_braided = transmute(&d, &pi_a, &r.left, &rd)?;
        let h_braided = transmute(&d, &pi_h, &r.right, &rd)?;
        Ok(BraidedDouble {
            p,
            q,
            r,
            u,
            v,
            double,
            d,
            rd,
            d_braided,
            a_braided,
            h_braided,
            pi_a,
            pi_h,
        })
    }

    /// c_{H̲,A̲} and c_{A̲,H̲} induced by R_D.
    pub fn crossings(&self) -> Result<Crossings> {
        let am = &self.a_braided.module;
        let hm = &self.h_braided.module;
        Ok(Crossings::Braided {
            h_over_a: Crossing::new(&self.rd, hm, am)?.materialize(),
            a_over_h: Crossing::new(&self.rd, am, hm)?.materialize(),
        })
    }

    /// (π_A̲⊗π_H̲)∘Δ_D̲.
    pub fn xi_by_projection(&self) -> Result<LinMap> {
        let cm = &self.d_braided.data.cm;
        compose(cm, &tensor(&self.pi_a, &self.pi_h))
    }

    pub fn xi_explicit(&self) -> Result<(LinMap, LinMap)> {
        xi_explicit(&self.d.space, &self.r, &self.v)
    }

    /// Cofactorises D̲ through π_A̲ and π_H̲ in the braided category of D-modules.
    pub fn cofactorise(&self) -> Result<FactorisationResult> {
        let a = Arc::new(self.a_braided.data.clone());
        let h = Arc::new(self.h_braided.data.clone());
        cofactorise(&self.d_braided.data, &a, &h, &self.pi_a, &self.pi_h, &self.crossings()?)
    }
}
