//! Classification: name a validated system after its catalog family.
//!
//! The strategy is uniform: coarse invariants (dimension, root count, the
//! classified base family, fiber shapes) narrow the catalog down to a short
//! list of candidate tags, and every answer is then *certified* by an exact
//! isomorphism search against the standard model of the candidate. The first
//! certified candidate in canonical order is returned, which resolves the
//! small-rank coincidences (`C_2 ≅ B_2`, `D_3 ≅ A_3`, `C(2) ≅ A(1,0)`,
//! `D(2,1;1) ≅ D(2,1)`, `A_3^(2) ≅ D_3^(2)`) towards their canonical names.

use crate::affine::AffinePresentation;
use crate::builders::{build_affine, build_finite_ann, CatalogSystem};
use crate::catalog::{
    ann_base_with_markers, ann_nonquotient_system, finite_system, AffineFamily, FiniteFamily,
    TypeTag,
};
use crate::error::{Error, Result};
use crate::finite::{AxiomReport, FiniteRootSystem};
use crate::iso::{iso_affine, isomorphic};
use crate::linalg::{Mat, Vector};
use crate::scalar::{rat_mod, Scalar};

/// Classify either kind of catalog system.
pub fn classify<S: Scalar>(sys: &CatalogSystem<S>) -> Result<TypeTag<S>> {
    match sys {
        CatalogSystem::Finite(r) => classify_finite(r),
        CatalogSystem::Affine(p) => classify_affine(p),
    }
}

fn violation_summary<S: Scalar>(report: &AxiomReport<S>) -> String {
    report
        .violations
        .first()
        .map(|v| v.detail.clone())
        .unwrap_or_else(|| "unspecified violation".to_string())
}

/// Classify an irreducible finite system. Inputs whose form is degenerate are
/// routed to the finite `Ã(n,n)` detection; all other inputs must satisfy at
/// least the weak axioms.
pub fn classify_finite<S: Scalar>(r: &FiniteRootSystem<S>) -> Result<TypeTag<S>> {
    if r.is_empty() {
        return Err(Error::Unclassifiable(
            "the empty set spans no root system".to_string(),
        ));
    }
    let rank = Mat::from_rows(r.roots())?.rank();
    let rs = if rank == r.space().dim() {
        r.clone()
    } else {
        FiniteRootSystem::spanning(r.space(), r.roots())?
    };
    if !rs.space().is_nondegenerate() {
        return classify_degenerate(&rs);
    }
    let report = rs.check_axioms()?;
    if !report.is_weak_grs {
        return Err(Error::Unclassifiable(format!(
            "the weak axioms fail: {}",
            violation_summary(&report)
        )));
    }
    if !report.is_irreducible {
        return Err(Error::Unclassifiable(
            "the system is reducible; classify its components instead".to_string(),
        ));
    }
    for cand in finite_candidates(&rs) {
        let model = finite_system(&cand)?;
        if isomorphic(&rs, &model).is_some() {
            return Ok(TypeTag::Finite(cand));
        }
    }
    Err(Error::Unclassifiable(format!(
        "no family of rank {} with {} roots matches",
        rs.space().dim(),
        rs.len()
    )))
}

/// A finite system with a degenerate form can only be a finite `Ã(n,n)`
/// model: rank `2n + 1` with a one-dimensional radical.
fn classify_degenerate<S: Scalar>(rs: &FiniteRootSystem<S>) -> Result<TypeTag<S>> {
    let d = rs.space().dim();
    if d >= 3 && d % 2 == 1 {
        let n = ((d - 1) / 2) as u32;
        let expected = 2 * (n as usize + 1) * (2 * n as usize + 1);
        if rs.len() == expected {
            let model = ann_nonquotient_system::<S>(n)?;
            if isomorphic(rs, &model).is_some() {
                return Ok(TypeTag::AnnFinite(n));
            }
        }
    }
    Err(Error::Unclassifiable(
        "the form is degenerate but the system is not a finite Ã(n,n)".to_string(),
    ))
}

fn lex_positive<S: Scalar>(v: &Vector<S>) -> bool {
    for c in &v.0 {
        if c.is_positive() {
            return true;
        }
        if c.is_negative() {
            return false;
        }
    }
    false
}

/// `D(2,1;λ)` candidates: the three non-isotropic pair norms of the model are
/// proportional to `(−(1+λ), 1, λ)`, so each way of reading the proportion
/// off the input norms proposes a parameter.
fn d21_candidates<S: Scalar>(rs: &FiniteRootSystem<S>) -> Vec<FiniteFamily<S>> {
    if rs.space().dim() != 3 || rs.len() != 14 {
        return Vec::new();
    }
    let mut norms: Vec<S> = Vec::new();
    for r in rs.roots() {
        if !lex_positive(r) {
            continue;
        }
        let nrm = rs.norm(r);
        if !nrm.is_zero() {
            norms.push(nrm);
        }
    }
    if norms.len() != 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..3 {
        let s = norms[i].clone();
        let rest: Vec<S> = (0..3)
            .filter(|j| *j != i)
            .map(|j| norms[j].clone())
            .collect();
        for (x, y) in [
            (rest[0].clone(), rest[1].clone()),
            (rest[1].clone(), rest[0].clone()),
        ] {
            let lam = x / s.clone();
            if y / s.clone() == -S::one() - lam.clone() {
                if let Ok(f) = FiniteFamily::d21(lam) {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

/// All catalog families whose standard model has the right dimension and
/// root count, in canonical order.
fn finite_candidates<S: Scalar>(rs: &FiniteRootSystem<S>) -> Vec<FiniteFamily<S>> {
    let d = rs.space().dim() as u32;
    let c = rs.len() as u32;
    let mut out: Vec<FiniteFamily<S>> = Vec::new();
    {
        let mut push = |f: FiniteFamily<S>| {
            if f.validate().is_ok() && f.dim() == d && f.count() == c && !out.contains(&f) {
                out.push(f);
            }
        };
        push(FiniteFamily::A(d));
        push(FiniteFamily::B(d));
        push(FiniteFamily::C(d));
        push(FiniteFamily::D(d));
        push(FiniteFamily::E6);
        push(FiniteFamily::E7);
        push(FiniteFamily::E8);
        push(FiniteFamily::F4);
        push(FiniteFamily::G2);
        push(FiniteFamily::B0(d));
        for n in 0..d {
            let m = d - 1 - n;
            if m >= n {
                push(FiniteFamily::ASuper(m, n));
            }
        }
        if d % 2 == 0 {
            push(FiniteFamily::ASuper(d / 2, d / 2));
        }
        for n in 1..d {
            push(FiniteFamily::BSuper(d - n, n));
        }
        push(FiniteFamily::CSuper(d));
        for n in 1..d.saturating_sub(1) {
            push(FiniteFamily::DSuper(d - n, n));
        }
    }
    out.extend(d21_candidates(rs));
    {
        let mut push = |f: FiniteFamily<S>| {
            if f.validate().is_ok() && f.dim() == d && f.count() == c && !out.contains(&f) {
                out.push(f);
            }
        };
        push(FiniteFamily::G3);
        push(FiniteFamily::F4Super);
        for n in 1..=d / 2 {
            push(FiniteFamily::CWeak(d - n, n));
        }
        for n in 1..=d / 2 {
            push(FiniteFamily::BCWeak(d - n, n));
        }
    }
    out
}

/// Classify an irreducible affine presentation.
pub fn classify_affine<S: Scalar>(p: &AffinePresentation<S>) -> Result<TypeTag<S>> {
    let report = p.validate_agrs()?;
    if report.is_agrs != Some(true) {
        return Err(Error::Unclassifiable(format!(
            "not a valid affine system: {}",
            violation_summary(&report)
        )));
    }
    if !report.is_irreducible {
        return Err(Error::Unclassifiable(
            "the system is reducible; decompose it first".to_string(),
        ));
    }
    if p.is_finite() {
        return classify_finite_presentation(p);
    }
    let base_tag = classify_finite(p.base())?;
    let base_fam = match base_tag {
        TypeTag::Finite(f) => f,
        other => {
            return Err(Error::Unclassifiable(format!(
                "the base classifies as {} which supports no affine extension",
                tag_name(&other)
            )))
        }
    };
    match base_fam {
        FiniteFamily::ASuper(m, n) if m == n => classify_ann_quotient(p, n),
        FiniteFamily::CWeak(1, 1) => classify_peculiar(p),
        _ => {
            for fam in affine_candidates(&base_fam) {
                if iso_affine(p, &build_affine(&fam)?).is_some() {
                    return Ok(TypeTag::Affine(fam));
                }
            }
            Err(Error::Unclassifiable(format!(
                "no affine family over a {base_fam} base matches"
            )))
        }
    }
}

fn tag_name<S: Scalar>(tag: &TypeTag<S>) -> String {
    match tag {
        TypeTag::Finite(f) => f.to_string(),
        TypeTag::AnnFinite(n) => format!("Ã({n},{n})"),
        TypeTag::Affine(a) => a.to_string(),
    }
}

/// A valid presentation with finitely many roots is a finite `Ã(n,n)`.
fn classify_finite_presentation<S: Scalar>(p: &AffinePresentation<S>) -> Result<TypeTag<S>> {
    let d = p.base().space().dim();
    if d >= 2 && d % 2 == 0 {
        let n = (d / 2) as u32;
        if iso_affine(p, &build_finite_ann(n)?).is_some() {
            return Ok(TypeTag::AnnFinite(n));
        }
    }
    Err(Error::Unclassifiable(
        "the roots are finite in number but do not form a finite Ã(n,n)".to_string(),
    ))
}

/// The affine families with the given base and twist order, canonical names
/// first. A base may admit several twisted affinizations — `B(0,n)` has three
/// of order 2 — or none at all.
pub fn affinizations<S: Scalar>(base: &FiniteFamily<S>, twist: u32) -> Vec<AffineFamily<S>> {
    affine_candidates(base)
        .into_iter()
        .filter(|f| f.twist() == twist)
        .collect()
}

/// The unique affine family with the given base and twist order, or an error
/// naming every variant when the pair does not determine one.
pub fn affinization<S: Scalar>(base: &FiniteFamily<S>, twist: u32) -> Result<AffineFamily<S>> {
    let found = affinizations(base, twist);
    match found.len() {
        0 => Err(Error::UnsupportedTag(format!(
            "{base} has no twist-{twist} affinization"
        ))),
        1 => Ok(found.into_iter().next().unwrap()),
        _ => {
            let names: Vec<String> = found.iter().map(|f| f.to_string()).collect();
            Err(Error::UnsupportedTag(format!(
                "base {base} with twist {twist} is ambiguous: write one of {} by name",
                names.join(", ")
            )))
        }
    }
}

/// The affine families whose standard presentation sits over the given base,
/// canonical names first.
fn affine_candidates<S: Scalar>(base: &FiniteFamily<S>) -> Vec<AffineFamily<S>> {
    let mut raw: Vec<Result<AffineFamily<S>>> = vec![AffineFamily::untwisted(base.clone())];
    match base {
        FiniteFamily::B(n) => raw.push(Ok(AffineFamily::DTw2 { n: n + 1 })),
        FiniteFamily::C(n) => raw.push(AffineFamily::a_tw2(2 * n - 1)),
        FiniteFamily::F4 => raw.push(Ok(AffineFamily::E6Tw2)),
        FiniteFamily::G2 => raw.push(Ok(AffineFamily::D4Tw3)),
        FiniteFamily::B0(n) => {
            raw.push(Ok(AffineFamily::CSuperTw2 { n: n + 1 }));
            raw.push(AffineFamily::a_tw2(2 * n));
            raw.push(AffineFamily::a_super_tw(0, 2 * n - 1, 2));
            raw.push(AffineFamily::a_super_tw(0, 2 * n, 4));
        }
        FiniteFamily::BSuper(m, n) => raw.push(Ok(AffineFamily::DSuperTw2 { m: m + 1, n: *n })),
        FiniteFamily::CWeak(m, n) => {
            raw.push(AffineFamily::a_super_tw(2 * m - 1, 2 * n - 1, 2))
        }
        FiniteFamily::BCWeak(m, n) => {
            raw.push(AffineFamily::a_super_tw(2 * m, 2 * n - 1, 2));
            raw.push(AffineFamily::a_super_tw(2 * n, 2 * m - 1, 2));
            raw.push(AffineFamily::a_super_tw(2 * m, 2 * n, 4));
        }
        _ => {}
    }
    let mut out = Vec::new();
    for fam in raw.into_iter().flatten() {
        if !out.contains(&fam) {
            out.push(fam);
        }
    }
    out
}

/// Classification over an `A(n,n)` quotient base (`n ≥ 2`): recover the
/// parameter `q` of `Ã(n,n)^(1)_q` from the marker residues.
///
/// The matched isotropic classes `π(ε_l − δ_l)` sum to zero in the base,
/// while their lifts sum to the direction `Σ(ε_l − δ_l) ≡ −qδ` that the
/// quotient construction glues. A section functional is linear, so the sum
/// of the marker residues is `−q` up to the integer ambiguity of each
/// residue — and it is unchanged by re-sectioning (the functional shift is
/// applied to classes summing to zero). Negating δ or transporting the
/// markers along a different base isomorphism at most negates the sum, so
/// `q ≡ ±Σ (mod 1)`; both signs fold to the same canonical parameter, which
/// is then certified against the built quotient (`q ≡ 0` being the plain
/// untwisted `A(n,n)^(1)`).
fn classify_ann_quotient<S: Scalar>(p: &AffinePresentation<S>, n: u32) -> Result<TypeTag<S>> {
    let (canon_base, markers) = ann_base_with_markers::<S>(n)?;
    let psi = isomorphic(&canon_base, p.base()).ok_or_else(|| {
        Error::Unclassifiable("the base does not match the A(n,n) quotient model".to_string())
    })?;
    let pn = p.normalize_delta()?.presentation;
    let mut inv = S::zero();
    for mk in &markers {
        let img = psi.apply(mk);
        let f = pn.fiber_of(&img).ok_or_else(|| {
            Error::Unclassifiable("a marker image is not a class of the base".to_string())
        })?;
        inv = inv + f.residues[0].clone();
    }
    let fam = AffineFamily::ann_q(n, rat_mod(&inv, &S::one()))?;
    if iso_affine(p, &build_affine(&fam)?).is_some() {
        return Ok(TypeTag::Affine(fam));
    }
    Err(Error::Unclassifiable(
        "the quotient parameter over the A(n,n) base does not certify".to_string(),
    ))
}

/// Classification over the weak `C(1,1)` base: the infinite systems here are
/// the peculiar `C(1,1)^q`. After normalization, `q` is the circular gap
/// between the two cosets of an isotropic fiber relative to the
/// non-isotropic step — or the step ratio itself when the isotropic fiber
/// has collapsed into a single half-step coset (`q = 1/2`).
fn classify_peculiar<S: Scalar>(p: &AffinePresentation<S>) -> Result<TypeTag<S>> {
    let pn = p.normalize_delta()?.presentation;
    let k_n = pn
        .fibers()
        .iter()
        .find(|f| !pn.base().is_isotropic(&f.class))
        .map(|f| f.step.clone())
        .ok_or_else(|| {
            Error::Unclassifiable("no non-isotropic class over the C(1,1) base".to_string())
        })?;
    if k_n.is_zero() {
        return Err(Error::Unclassifiable(
            "a non-isotropic fiber is finite".to_string(),
        ));
    }
    let mut cands: Vec<S> = Vec::new();
    for f in pn.fibers() {
        if !pn.base().is_isotropic(&f.class) {
            continue;
        }
        let q = match f.residues.len() {
            1 => f.step.clone() / k_n.clone(),
            2 => (f.residues[1].clone() - f.residues[0].clone()) / k_n.clone(),
            _ => continue,
        };
        if !cands.contains(&q) {
            cands.push(q);
        }
    }
    for q in cands {
        let fam = match AffineFamily::peculiar(q) {
            Ok(f) => f,
            Err(_) => continue,
        };
        if iso_affine(p, &build_affine(&fam)?).is_some() {
            return Ok(TypeTag::Affine(fam));
        }
    }
    Err(Error::Unclassifiable(
        "no peculiar parameter over the C(1,1) base certifies".to_string(),
    ))
}

/// Are two quotient parameters equivalent, i.e. `q ± q′ ∈ Z`?
pub fn quotient_iso<S: Scalar>(q1: &S, q2: &S) -> bool {
    (q1.clone() - q2.clone()).is_integer() || (q1.clone() + q2.clone()).is_integer()
}

/// Two finite systems are similar when their irreducible components can be
/// matched bijectively by isomorphisms.
pub fn similar<S: Scalar>(a: &FiniteRootSystem<S>, b: &FiniteRootSystem<S>) -> Result<bool> {
    let ca = a.decompose()?;
    let cb = b.decompose()?;
    if ca.len() != cb.len() {
        return Ok(false);
    }
    let mut used = vec![false; cb.len()];
    Ok(match_components(&ca, &cb, &mut used, 0))
}

fn match_components<S: Scalar>(
    ca: &[FiniteRootSystem<S>],
    cb: &[FiniteRootSystem<S>],
    used: &mut [bool],
    i: usize,
) -> bool {
    if i == ca.len() {
        return true;
    }
    for j in 0..cb.len() {
        if used[j] || ca[i].len() != cb[j].len() {
            continue;
        }
        if isomorphic(&ca[i], &cb[j]).is_some() {
            used[j] = true;
            if match_components(ca, cb, used, i + 1) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Similarity for affine presentations: affine components must match affine
/// components and finite ones finite ones.
pub fn similar_affine<S: Scalar>(
    a: &AffinePresentation<S>,
    b: &AffinePresentation<S>,
) -> Result<bool> {
    let (aa, af) = a.decompose()?;
    let (ba, bf) = b.decompose()?;
    if aa.len() != ba.len() || af.len() != bf.len() {
        return Ok(false);
    }
    let mut used = vec![false; ba.len()];
    if !match_affine_components(&aa, &ba, &mut used, 0) {
        return Ok(false);
    }
    let mut used = vec![false; bf.len()];
    Ok(match_components(&af, &bf, &mut used, 0))
}

fn match_affine_components<S: Scalar>(
    ca: &[AffinePresentation<S>],
    cb: &[AffinePresentation<S>],
    used: &mut [bool],
    i: usize,
) -> bool {
    if i == ca.len() {
        return true;
    }
    for j in 0..cb.len() {
        if used[j] || ca[i].base().len() != cb[j].base().len() {
            continue;
        }
        if iso_affine(&ca[i], &cb[j]).is_some() {
            used[j] = true;
            if match_affine_components(ca, cb, used, i + 1) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}
