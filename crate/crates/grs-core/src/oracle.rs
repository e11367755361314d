//! Deliberately naive brute-force verifiers.
//!
//! Everything here re-derives its answer by direct enumeration, with none of
//! the fiber symbolics or linear algebra shortcuts of the main paths, so the
//! two routes check each other.  The oracles are slow by design and bounded
//! by small size limits.

use crate::affine::AffinePresentation;
use crate::analysis::ParityFunction;
use crate::error::{Error, Result};
use crate::finite::{AxiomId, AxiomReport, FiniteRootSystem, Violation};
use crate::linalg::{FormSpace, Mat, Vector};
use crate::scalar::Scalar;

pub use crate::iso::brute_iso;

/// `brute_parity` enumerates all `2^|R|` maps up to this many roots.
pub const BRUTE_PARITY_MAX_ROOTS: usize = 16;

/// Outcome of an enumeration oracle: what was checked, what had to be skipped
/// (window edges), and every mismatch found.
#[derive(Clone, Debug)]
pub struct OracleReport<S> {
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<OracleMismatch<S>>,
}

#[derive(Clone, Debug)]
pub struct OracleMismatch<S> {
    pub witness: Vec<Vector<S>>,
    pub detail: String,
}

impl<S: Scalar> OracleReport<S> {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

// ———————————————————————————— axiom enumeration ————————————————————————————

/// Re-check every axiom instance of an explicit root set by enumeration.
///
/// When the space carries exactly one radical direction and it is the last
/// basis vector, the set is treated as a window of an affine system: the last
/// coordinate is the δ offset, the window bound is the largest |offset|
/// present, reflection images that would leave the window are skipped (and
/// returned in the second component), the degenerate form is not flagged, and
/// `is_agrs` reports whether no fatal violation was found.  Otherwise the set
/// is checked as a plain finite system and `is_agrs` is `None`.
pub fn brute_axioms<S: Scalar>(
    space: &FormSpace<S>,
    roots: &[Vector<S>],
) -> Result<(AxiomReport<S>, usize)> {
    if roots.is_empty() {
        return Err(Error::InvalidInput("empty root set".to_string()));
    }
    let dim = space.dim();
    for r in roots {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "root {} does not live in a {dim}-dimensional space",
                r.render()
            )));
        }
    }
    let window = window_mode(space, roots);
    let contains = |v: &Vector<S>| roots.contains(v);
    let mut violations: Vec<Violation<S>> = Vec::new();
    let mut skipped = 0usize;

    let zero = Vector::zero(dim);
    if contains(&zero) {
        violations.push(Violation::new(
            AxiomId::ZeroRoot,
            vec![zero],
            "0 is listed as a root".to_string(),
        ));
    }
    let rank = Mat::from_rows(roots)?.rank();
    if rank < dim {
        violations.push(Violation::new(
            AxiomId::SpanDeficient,
            vec![],
            format!("roots span a {rank}-dimensional subspace of a {dim}-dimensional space"),
        ));
    }
    match &window {
        None => {
            if !space.is_nondegenerate() {
                violations.push(Violation::new(
                    AxiomId::DegenerateForm,
                    space.radical_basis(),
                    "the bilinear form is degenerate".to_string(),
                ));
            }
        }
        Some(_) => {
            for r in roots {
                if r.0[..dim - 1].iter().all(|c| c.is_zero()) {
                    violations.push(Violation::new(
                        AxiomId::RootInRadical,
                        vec![r.clone()],
                        format!("{} lies in the radical of the form", r.render()),
                    ));
                }
            }
        }
    }
    for alpha in roots {
        if !contains(&alpha.neg()) {
            violations.push(Violation::new(
                AxiomId::NotSymmetric,
                vec![alpha.clone()],
                format!("-{} is not a root", alpha.render()),
            ));
        }
    }
    // Axiom (1): integrality and even-reflection closure.
    for alpha in roots {
        let aa = space.norm(alpha);
        if aa.is_zero() {
            continue;
        }
        for beta in roots {
            let c = S::from_int(2) * space.form(alpha, beta) / aa.clone();
            if !c.is_integer() {
                violations.push(Violation::new(
                    AxiomId::Integrality,
                    vec![alpha.clone(), beta.clone()],
                    format!(
                        "2(α,β)/(α,α) = {} is not an integer for α = {}, β = {}",
                        c.format_rat(),
                        alpha.render(),
                        beta.render()
                    ),
                ));
                continue;
            }
            let image = beta.sub(&alpha.scale(&c));
            if let Some(bound) = &window {
                if image.0[dim - 1].abs() > *bound {
                    skipped += 1;
                    continue;
                }
            }
            if !contains(&image) {
                violations.push(Violation::new(
                    AxiomId::EvenClosure,
                    vec![alpha.clone(), beta.clone(), image.clone()],
                    format!(
                        "r_α(β) = {} is not a root for α = {}, β = {}",
                        image.render(),
                        alpha.render(),
                        beta.render()
                    ),
                ));
            }
        }
    }
    // Axiom (2)/(2′): isotropic roots.
    for alpha in roots {
        if !space.norm(alpha).is_zero() || alpha.is_zero() {
            continue;
        }
        for beta in roots {
            if space.form(alpha, beta).is_zero() {
                continue;
            }
            let plus = beta.add(alpha);
            let minus = beta.sub(alpha);
            if let Some(bound) = &window {
                if plus.0[dim - 1].abs() > *bound || minus.0[dim - 1].abs() > *bound {
                    skipped += 1;
                    continue;
                }
            }
            match (contains(&plus), contains(&minus)) {
                (false, false) => violations.push(Violation::new(
                    AxiomId::OddNeither,
                    vec![alpha.clone(), beta.clone()],
                    format!(
                        "neither β+α nor β−α is a root for isotropic α = {}, β = {}",
                        alpha.render(),
                        beta.render()
                    ),
                )),
                (true, true) => violations.push(Violation::new(
                    AxiomId::OddBoth,
                    vec![alpha.clone(), beta.clone()],
                    format!(
                        "both β±α are roots for isotropic α = {}, β = {}",
                        alpha.render(),
                        beta.render()
                    ),
                )),
                _ => {}
            }
        }
    }
    // Informational: isotropic roots, proportional pairs, reducibility.
    if let Some(iso) = roots.iter().find(|r| space.norm(r).is_zero() && !r.is_zero()) {
        violations.push(Violation::new(
            AxiomId::IsotropicPresent,
            vec![iso.clone()],
            format!("{} is an isotropic root", iso.render()),
        ));
    }
    for (i, alpha) in roots.iter().enumerate() {
        if alpha.is_zero() {
            continue;
        }
        for beta in roots.iter().skip(i + 1) {
            if let Some(c) = alpha.proportion_to(beta) {
                if c != S::one() && c != -S::one() {
                    violations.push(Violation::new(
                        AxiomId::NotReduced,
                        vec![alpha.clone(), beta.clone()],
                        format!("{} = {} · {}", beta.render(), c.format_rat(), alpha.render()),
                    ));
                }
            }
        }
    }
    let components = orthogonality_components(space, roots);
    if components > 1 {
        violations.push(Violation::new(
            AxiomId::Reducible,
            vec![],
            format!("the nonorthogonality graph has {components} components"),
        ));
    }

    let bad0 = violations.iter().any(|v| {
        matches!(
            v.axiom,
            AxiomId::ZeroRoot
                | AxiomId::SpanDeficient
                | AxiomId::DegenerateForm
                | AxiomId::RootInRadical
        )
    });
    let bad_weak = bad0
        || violations.iter().any(|v| {
            matches!(
                v.axiom,
                AxiomId::Integrality
                    | AxiomId::EvenClosure
                    | AxiomId::OddNeither
                    | AxiomId::NotSymmetric
            )
        });
    let has_odd_both = violations.iter().any(|v| v.axiom == AxiomId::OddBoth);
    let has_iso = violations.iter().any(|v| v.axiom == AxiomId::IsotropicPresent);
    let not_reduced = violations.iter().any(|v| v.axiom == AxiomId::NotReduced);
    let is_weak_grs = !bad_weak;
    let is_grs = is_weak_grs && !has_odd_both;
    let report = AxiomReport {
        is_rs: is_grs && !has_iso,
        is_grs,
        is_weak_grs,
        is_reduced: !not_reduced,
        is_irreducible: components == 1,
        is_agrs: window.as_ref().map(|_| !bad_weak),
        violations,
    };
    Ok((report, skipped))
}

/// Window mode: exactly one radical direction, and it is the last basis
/// vector. Returns the window bound (largest |δ offset| among the roots).
fn window_mode<S: Scalar>(space: &FormSpace<S>, roots: &[Vector<S>]) -> Option<S> {
    let radical = space.radical_basis();
    if radical.len() != 1 {
        return None;
    }
    let dim = space.dim();
    let delta = &radical[0];
    if delta.0[dim - 1].is_zero() || delta.0[..dim - 1].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let mut bound = S::zero();
    for r in roots {
        if r.0[dim - 1].abs() > bound {
            bound = r.0[dim - 1].abs();
        }
    }
    Some(bound)
}

/// Connected components of the nonorthogonality graph, by naive flood fill.
fn orthogonality_components<S: Scalar>(space: &FormSpace<S>, roots: &[Vector<S>]) -> usize {
    let n = roots.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if comp[j] == usize::MAX && !space.form(&roots[i], &roots[j]).is_zero() {
                    comp[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    count
}

// ———————————————————————————— parity enumeration ————————————————————————————

/// Ground truth for `parity_functions`: try all `2^|R|` maps and keep those
/// satisfying every additive triple and isotropic condition.
pub fn brute_parity<S: Scalar>(rs: &FiniteRootSystem<S>) -> Result<Vec<ParityFunction<S>>> {
    let roots = rs.roots();
    let n = roots.len();
    if n > BRUTE_PARITY_MAX_ROOTS {
        return Err(Error::Domain(format!(
            "brute parity enumerates 2^|R| maps; |R| = {n} exceeds {BRUTE_PARITY_MAX_ROOTS}"
        )));
    }
    let iso: Vec<bool> = roots.iter().map(|r| rs.is_isotropic(r)).collect();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            if let Some(k) = rs.index_of(&roots[i].add(&roots[j])) {
                triples.push((i, j, k));
            }
        }
    }
    let mut out = Vec::new();
    'maps: for mask in 0u64..(1u64 << n) {
        let f = |i: usize| (mask >> i) & 1 == 1;
        for i in 0..n {
            if iso[i] && !f(i) {
                continue 'maps;
            }
        }
        for &(i, j, k) in &triples {
            if f(i) ^ f(j) ^ f(k) {
                continue 'maps;
            }
        }
        out.push(ParityFunction::from_entries(
            roots.iter().enumerate().map(|(i, r)| (r.clone(), f(i))).collect(),
        ));
    }
    Ok(out)
}

// ———————————————————————————— translation law ————————————————————————————

/// Check the double-reflection translation law on actual roots.
///
/// For base classes `α, β` with `(α,β) ≠ 0`, two lifts `α′, α″ = α′ + kδ` and
/// a lift `β′`, the composite `(r_{α″} r_{α′})^m` must translate: it sends
/// `β′` to `β′ + t·m·(α″−α′)` where `t = 2(α,β)/(α,α)` for non-isotropic `α`,
/// and `t = ∓1` for isotropic `α` according to which of `β ± α` is a class.
/// The left side is computed by repeated honest reflections with symbolic
/// membership tests; the right side is the closed form.
pub fn brute_translation<S: Scalar>(
    p: &AffinePresentation<S>,
    alpha: &Vector<S>,
    beta: &Vector<S>,
    m_max: u32,
) -> Result<OracleReport<S>> {
    let base = p.base();
    let pairing = base.space().form(alpha, beta);
    if pairing.is_zero() {
        return Err(Error::NotApplicable(
            "the translation law needs (α,β) ≠ 0".to_string(),
        ));
    }
    let norm = base.space().norm(alpha);
    let t = if norm.is_zero() {
        let plus = base.contains(&beta.add(alpha));
        let minus = base.contains(&beta.sub(alpha));
        if base.contains(&beta.add(&alpha.scale(&S::from_int(2))))
            || base.contains(&beta.sub(&alpha.scale(&S::from_int(2))))
        {
            return Err(Error::NotApplicable(
                "the isotropic law needs β ± 2α to avoid cl(R)".to_string(),
            ));
        }
        match (plus, minus) {
            (true, false) => -S::one(),
            (false, true) => S::one(),
            _ => {
                return Err(Error::NotApplicable(
                    "the isotropic law needs exactly one of β ± α in cl(R)".to_string(),
                ))
            }
        }
    } else {
        S::from_int(2) * pairing / norm
    };

    let fiber_a = p
        .fiber_of(alpha)
        .ok_or_else(|| Error::InvalidInput("α is not a class of the presentation".to_string()))?;
    let fiber_b = p
        .fiber_of(beta)
        .ok_or_else(|| Error::InvalidInput("β is not a class of the presentation".to_string()))?;
    if fiber_a.step.is_zero() {
        return Err(Error::NotApplicable(
            "the class of α has finitely many lifts; no translation to observe".to_string(),
        ));
    }
    let a1 = p.total_root(alpha, &fiber_a.residues[0]);
    let a2 = p.total_root(alpha, &(fiber_a.residues[0].clone() + fiber_a.step.clone()));
    let b0 = p.total_root(beta, &fiber_b.residues[0]);
    let shift = a2.sub(&a1);

    let total = p.total_space();
    let mut report = OracleReport { checked: 0, skipped: 0, mismatches: Vec::new() };
    let mut actual = b0.clone();
    for m in 0..=i64::from(m_max) {
        let expected = b0.add(&shift.scale(&(t.clone() * S::from_int(m))));
        report.checked += 1;
        if actual != expected {
            report.mismatches.push(OracleMismatch {
                witness: vec![a1.clone(), a2.clone(), actual.clone(), expected.clone()],
                detail: format!(
                    "(r_α″ r_α′)^{m}(β′) = {} but the closed form gives {}",
                    actual.render(),
                    expected.render()
                ),
            });
            break;
        }
        if !p.contains(&actual) {
            report.mismatches.push(OracleMismatch {
                witness: vec![actual.clone()],
                detail: format!("iterate {} left the root system", actual.render()),
            });
            break;
        }
        match reflect_total(p, &total, &a1, &actual).and_then(|x| reflect_total(p, &total, &a2, &x)) {
            Ok(next) => actual = next,
            Err(detail) => {
                report.mismatches.push(OracleMismatch { witness: vec![actual.clone()], detail });
                break;
            }
        }
    }
    Ok(report)
}

/// One honest reflection in the total space, with symbolic membership tests.
fn reflect_total<S: Scalar>(
    p: &AffinePresentation<S>,
    total: &FormSpace<S>,
    alpha: &Vector<S>,
    x: &Vector<S>,
) -> std::result::Result<Vector<S>, String> {
    let aa = total.norm(alpha);
    if !aa.is_zero() {
        let c = S::from_int(2) * total.form(alpha, x) / aa;
        return Ok(x.sub(&alpha.scale(&c)));
    }
    if *x == *alpha {
        return Ok(x.neg());
    }
    if *x == alpha.neg() {
        return Ok(alpha.clone());
    }
    if total.form(alpha, x).is_zero() {
        return Ok(x.clone());
    }
    let plus = x.add(alpha);
    let minus = x.sub(alpha);
    match (p.contains(&plus), p.contains(&minus)) {
        (true, false) => Ok(plus),
        (false, true) => Ok(minus),
        (true, true) => Err(format!(
            "both {} ± {} are roots; the odd reflection is ambiguous",
            x.render(),
            alpha.render()
        )),
        (false, false) => Err(format!(
            "neither {} ± {} is a root; the odd reflection is undefined",
            x.render(),
            alpha.render()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Fiber;
    use crate::analysis::parity_functions;
    use crate::builders::build_affine;
    use crate::catalog::{finite_system, AffineFamily, FiniteFamily};
    use crate::Rat;

    type Fam = FiniteFamily<Rat>;
    type Aff = AffineFamily<Rat>;

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn brute_axioms_agrees_with_validate_on_a2_window() {
        let p = build_affine(&Aff::Untwisted(Fam::A(2))).unwrap();
        let window = p.window(&rat(3)).unwrap();
        let (report, skipped) = brute_axioms(window.space(), window.roots()).unwrap();
        assert_eq!(report.is_agrs, Some(true), "{:#?}", report.violations);
        assert!(report.is_irreducible);
        assert!(report.is_reduced);
        assert!(skipped > 0, "edge reflections must be skipped, not flagged");
        assert!(p.validate_agrs().unwrap().is_agrs == Some(true));
    }

    #[test]
    fn brute_axioms_detects_planted_step_violation() {
        // cl = A_2 with k ≡ 1 everywhere except step 2 on one class pair ±γ:
        // reflections carry offset 1 roots onto ±γ + δ, which the step-2
        // fiber misses.
        let base = finite_system(&Fam::A(2)).unwrap();
        let gamma = base.roots()[0].clone();
        let fibers: Vec<Fiber<Rat>> = base
            .roots()
            .iter()
            .map(|r| {
                let step = if *r == gamma || *r == gamma.neg() { rat(2) } else { rat(1) };
                Fiber::new(r.clone(), step, vec![rat(0)]).unwrap()
            })
            .collect();
        let p = AffinePresentation::new(base.space().clone(), "d".to_string(), fibers).unwrap();
        let report = p.validate_agrs().unwrap();
        assert_eq!(report.is_agrs, Some(false));

        let window = p.window(&rat(3)).unwrap();
        let (brute, _) = brute_axioms(window.space(), window.roots()).unwrap();
        assert_eq!(brute.is_agrs, Some(false));
        assert!(brute.violations.iter().any(|v| v.axiom == AxiomId::EvenClosure));
    }

    #[test]
    fn brute_axioms_reports_double_candidate_on_weak_c11() {
        let rs = finite_system(&Fam::CWeak(1, 1)).unwrap();
        let (report, skipped) = brute_axioms(rs.space(), rs.roots()).unwrap();
        assert_eq!(skipped, 0);
        assert!(report.is_weak_grs);
        assert!(!report.is_grs);
        assert!(report.violations.iter().any(|v| v.axiom == AxiomId::OddBoth));
    }

    #[test]
    fn brute_parity_matches_solver_on_pinned_systems() {
        for fam in [Fam::A(1), Fam::ASuper(1, 0), Fam::B0(1), Fam::B0(2)] {
            let rs = finite_system(&fam).unwrap();
            let brute = brute_parity(&rs).unwrap();
            let solved = parity_functions(&rs).unwrap();
            assert_eq!(brute.len(), solved.len(), "{fam}");
            for f in &brute {
                assert!(solved.contains(f), "{fam}");
            }
        }
        let a1 = finite_system(&Fam::A(1)).unwrap();
        assert_eq!(brute_parity(&a1).unwrap().len(), 4);
        let b01 = finite_system(&Fam::B0(1)).unwrap();
        assert_eq!(brute_parity(&b01).unwrap().len(), 2);
        let a10 = finite_system(&Fam::ASuper(1, 0)).unwrap();
        assert_eq!(brute_parity(&a10).unwrap().len(), 1);
    }

    #[test]
    fn translation_law_holds_on_a1_affine() {
        // α = β: t = 2.
        let p = build_affine(&Aff::Untwisted(Fam::A(1))).unwrap();
        let alpha = p.base().roots()[1].clone();
        let report = brute_translation(&p, &alpha, &alpha, 5).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert_eq!(report.checked, 6);
    }

    #[test]
    fn translation_law_holds_for_isotropic_alpha() {
        // A(1,0)^(1) has isotropic classes; pick β with β − α a class so the
        // t = +1 law applies.
        let p = build_affine(&Aff::Untwisted(Fam::ASuper(1, 0))).unwrap();
        let base = p.base();
        let mut found = false;
        'outer: for alpha in base.roots() {
            if !base.is_isotropic(alpha) {
                continue;
            }
            for beta in base.roots() {
                if base.space().form(alpha, beta) == rat(0) {
                    continue;
                }
                let plus = base.contains(&beta.add(alpha));
                let minus = base.contains(&beta.sub(alpha));
                if !(plus ^ minus) || !minus {
                    continue;
                }
                let report = brute_translation(&p, alpha, beta, 4).unwrap();
                assert!(report.passed(), "{:?}", report.mismatches);
                found = true;
                break 'outer;
            }
        }
        assert!(found, "no admissible isotropic pair in A(1,0)");
    }

    #[test]
    fn translation_rejects_inadmissible_pairs() {
        // C(1,1)^q: for isotropic α both β ± α are classes, so t is undefined.
        let p = build_affine(&Aff::PeculiarQ { q: Rat::from_ratio(1, 2) }).unwrap();
        let base = p.base();
        let alpha = base
            .roots()
            .iter()
            .find(|r| base.is_isotropic(r))
            .cloned()
            .unwrap();
        let beta = base
            .roots()
            .iter()
            .find(|b| base.space().form(&alpha, b) != rat(0) && base.is_isotropic(b))
            .cloned()
            .unwrap();
        let err = brute_translation(&p, &alpha, &beta, 3).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)), "{err}");
    }
}
