//! Finite root systems with a symmetric bilinear form: axiom checking,
//! reflections, Weyl orbits, reflective generation, decomposition into
//! irreducible components and translation coefficients.
//!
//! The axioms checked here, for a finite set `R` in a space `V` with a
//! symmetric bilinear form:
//!
//! * **(0)** `0 ∉ R`, `R` spans `V`, and the form is nondegenerate;
//! * **(1)** for every `α ∈ R` with `(α,α) ≠ 0` and every `β ∈ R` the number
//!   `c = 2(α,β)/(α,α)` is an integer and `β − cα ∈ R`;
//! * **(2)** for every isotropic `α ∈ R` and every `β ∈ R` with `(α,β) ≠ 0`,
//!   exactly one of `β + α`, `β − α` lies in `R`;
//! * **(2′)** the weak variant: `R = −R` and *at least* one of `β ± α` lies
//!   in `R`.
//!
//! A set satisfying (0), (1), (2) is a *generalized root system*; with (2′)
//! in place of (2) it is a *weak* generalized root system; with no isotropic
//! roots at all it is an ordinary root system (possibly non-reduced).

use crate::error::{Error, Result};
use crate::linalg::{span_subspace, FormSpace, Mat, Vector};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Which axiom or structural property a [`Violation`] witnesses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomId {
    /// `0 ∈ R`.
    ZeroRoot,
    /// The roots do not span the space.
    SpanDeficient,
    /// The form is degenerate (for finite systems; degenerate data belongs to
    /// affine presentations).
    DegenerateForm,
    /// `2(α,β)/(α,α)` is not an integer.
    Integrality,
    /// An even reflection image `β − cα` escapes the root set.
    EvenClosure,
    /// Isotropic `α` with `(α,β) ≠ 0` but neither `β+α` nor `β−α` in `R`.
    OddNeither,
    /// Isotropic `α` with `(α,β) ≠ 0` and both `β±α` in `R` (allowed only in
    /// weak systems).
    OddBoth,
    /// `R ≠ −R`.
    NotSymmetric,
    /// An isotropic root exists. Informational: it explains `is_rs = false`
    /// for systems that are otherwise perfectly valid.
    IsotropicPresent,
    /// Two roots are proportional with ratio other than `±1`. Informational:
    /// it explains `is_reduced = false`.
    NotReduced,
    /// The nonorthogonality graph is disconnected. Informational: it explains
    /// `is_irreducible = false`.
    Reducible,
    // ——— affine presentations (produced by affine validation) ———
    /// The radical of the total form is not exactly the line through δ.
    RadicalNotLine,
    /// Some root lies in the radical.
    RootInRadical,
    /// δ is not in the span of the roots.
    DeltaNotSpanned,
    /// `fiber(−α) ≠ −fiber(α)`.
    FiberAsymmetric,
    /// An even reflection fails offset closure at the fiber level.
    OffsetNotClosed,
    /// An isotropic lift pair where neither candidate image is a root.
    OddOffsetNeither,
    /// An isotropic lift pair where both candidate images are roots.
    OddOffsetBoth,
}

/// A concrete witness for one failed (or informational) check.
#[derive(Clone, Debug)]
pub struct Violation<S> {
    pub axiom: AxiomId,
    /// The vectors involved (roots, candidate images, …).
    pub witness: Vec<Vector<S>>,
    pub detail: String,
}

impl<S: Scalar> Violation<S> {
    pub(crate) fn new(axiom: AxiomId, witness: Vec<Vector<S>>, detail: String) -> Self {
        Violation {
            axiom,
            witness,
            detail,
        }
    }
}

/// Result of validating a system. Every `false` flag is justified by at least
/// one entry in `violations` (some entries are purely informational, e.g.
/// [`AxiomId::IsotropicPresent`] explaining `is_rs = false`).
#[derive(Clone, Debug)]
pub struct AxiomReport<S> {
    /// Ordinary root system: valid, and no isotropic roots.
    pub is_rs: bool,
    /// Axioms (0), (1), (2).
    pub is_grs: bool,
    /// Axioms (0), (1), (2′).
    pub is_weak_grs: bool,
    /// No proportional pairs besides `±α`.
    pub is_reduced: bool,
    /// Nonorthogonality graph connected.
    pub is_irreducible: bool,
    /// Set by affine validation only: axioms (0′), (1), (2), (3), (4).
    pub is_agrs: Option<bool>,
    pub violations: Vec<Violation<S>>,
}

impl<S: Scalar> AxiomReport<S> {
    pub fn has(&self, axiom: AxiomId) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// The action of one reflection on the root set, as a permutation of the
/// sorted root indices.
#[derive(Clone, Debug)]
pub struct ReflectionPermutation<S> {
    /// The reflecting root.
    pub root: Vector<S>,
    /// `images[i]` is the index of the image of root `i`.
    pub images: Vec<usize>,
}

/// A finite set of roots in a [`FormSpace`], kept sorted and deduplicated so
/// that all enumerations are canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteRootSystem<S> {
    space: FormSpace<S>,
    roots: Vec<Vector<S>>,
}

impl<S: Scalar> FiniteRootSystem<S> {
    /// Wrap a root list living in `space`. The list is sorted and
    /// deduplicated; validity is *not* checked (use [`Self::check_axioms`]).
    pub fn new(space: FormSpace<S>, mut roots: Vec<Vector<S>>) -> Result<Self> {
        for r in &roots {
            if r.dim() != space.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "root {} does not live in a {}-dimensional space",
                    r.render(),
                    space.dim()
                )));
            }
        }
        roots.sort();
        roots.dedup();
        Ok(FiniteRootSystem { space, roots })
    }

    /// Restrict `roots` (given in `ambient` coordinates) to their span and
    /// re-express them there. This is how subsystems and components become
    /// root systems in their own right.
    pub fn spanning(ambient: &FormSpace<S>, roots: &[Vector<S>]) -> Result<Self> {
        let mut sorted = roots.to_vec();
        sorted.sort();
        sorted.dedup();
        let sub = span_subspace(ambient, &sorted, "b")?;
        let mut coords = Vec::with_capacity(sorted.len());
        for r in &sorted {
            let c = sub.coords(r).ok_or_else(|| {
                Error::InvalidInput("root escapes the span of the root set".to_string())
            })?;
            coords.push(c);
        }
        FiniteRootSystem::new(sub.space().clone(), coords)
    }

    pub fn space(&self) -> &FormSpace<S> {
        &self.space
    }

    /// The roots, sorted lexicographically.
    pub fn roots(&self) -> &[Vector<S>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &Vector<S>) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    pub fn index_of(&self, v: &Vector<S>) -> Option<usize> {
        self.roots.binary_search(v).ok()
    }

    pub fn norm(&self, v: &Vector<S>) -> S {
        self.space.norm(v)
    }

    pub fn is_isotropic(&self, v: &Vector<S>) -> bool {
        self.space.norm(v).is_zero()
    }

    /// Multiset of square norms, sorted.
    pub fn norms(&self) -> Vec<S> {
        let mut ns: Vec<S> = self.roots.iter().map(|r| self.space.norm(r)).collect();
        ns.sort();
        ns
    }

    /// Validate the system against axioms (0), (1), (2)/(2′) and report the
    /// derived flags. Errors only on empty input.
    pub fn check_axioms(&self) -> Result<AxiomReport<S>> {
        if self.roots.is_empty() {
            return Err(Error::InvalidInput("empty root set".to_string()));
        }
        let mut violations: Vec<Violation<S>> = Vec::new();
        let zero = Vector::zero(self.space.dim());
        if self.contains(&zero) {
            violations.push(Violation::new(
                AxiomId::ZeroRoot,
                vec![zero.clone()],
                "0 is listed as a root".to_string(),
            ));
        }
        let root_rows = Mat::from_rows(&self.roots)?;
        if root_rows.rank() < self.space.dim() {
            violations.push(Violation::new(
                AxiomId::SpanDeficient,
                vec![],
                format!(
                    "roots span a {}-dimensional subspace of a {}-dimensional space",
                    root_rows.rank(),
                    self.space.dim()
                ),
            ));
        }
        if !self.space.is_nondegenerate() {
            violations.push(Violation::new(
                AxiomId::DegenerateForm,
                self.space.radical_basis(),
                "the bilinear form is degenerate".to_string(),
            ));
        }
        for alpha in &self.roots {
            if !self.contains(&alpha.neg()) {
                violations.push(Violation::new(
                    AxiomId::NotSymmetric,
                    vec![alpha.clone()],
                    format!("-{} is not a root", alpha.render()),
                ));
            }
        }
        // axiom (1): even reflections
        for alpha in &self.roots {
            let aa = self.space.norm(alpha);
            if aa.is_zero() {
                continue;
            }
            for beta in &self.roots {
                let c = S::from_int(2) * self.space.form(alpha, beta) / aa.clone();
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
                if !self.contains(&image) {
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
        // axiom (2)/(2′): isotropic roots
        for alpha in &self.roots {
            if !self.space.norm(alpha).is_zero() || alpha.is_zero() {
                continue;
            }
            for beta in &self.roots {
                if self.space.form(alpha, beta).is_zero() {
                    continue;
                }
                let plus = self.contains(&beta.add(alpha));
                let minus = self.contains(&beta.sub(alpha));
                match (plus, minus) {
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
        // informational: isotropic roots, proportional pairs, reducibility
        if let Some(iso) = self.roots.iter().find(|r| self.space.norm(r).is_zero() && !r.is_zero()) {
            violations.push(Violation::new(
                AxiomId::IsotropicPresent,
                vec![iso.clone()],
                format!("{} is an isotropic root", iso.render()),
            ));
        }
        for (i, alpha) in self.roots.iter().enumerate() {
            if alpha.is_zero() {
                continue;
            }
            for beta in self.roots.iter().skip(i + 1) {
                if let Some(c) = alpha.proportion_to(beta) {
                    if c != S::one() && c != -S::one() {
                        violations.push(Violation::new(
                            AxiomId::NotReduced,
                            vec![alpha.clone(), beta.clone()],
                            format!(
                                "{} = {} · {}",
                                beta.render(),
                                c.format_rat(),
                                alpha.render()
                            ),
                        ));
                    }
                }
            }
        }
        let components = self.component_indices();
        if components.len() > 1 {
            violations.push(Violation::new(
                AxiomId::Reducible,
                vec![
                    self.roots[components[0][0]].clone(),
                    self.roots[components[1][0]].clone(),
                ],
                format!(
                    "the nonorthogonality graph has {} components",
                    components.len()
                ),
            ));
        }
        let bad0 = violations.iter().any(|v| {
            matches!(
                v.axiom,
                AxiomId::ZeroRoot | AxiomId::SpanDeficient | AxiomId::DegenerateForm
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
        Ok(AxiomReport {
            is_rs: is_grs && !has_iso,
            is_grs,
            is_weak_grs,
            is_reduced: !not_reduced,
            is_irreducible: components.len() == 1,
            is_agrs: None,
            violations,
        })
    }

    /// Reflection `r_α(β)`. For non-isotropic `α` this is the even reflection
    /// `β − (2(α,β)/(α,α))α`; for isotropic `α` it is `β` when `(α,β) = 0`,
    /// `∓α ↦ ±α`, and otherwise the unique root among `β ± α` (an error if
    /// both or neither are roots).
    pub fn reflect(&self, alpha: &Vector<S>, beta: &Vector<S>) -> Result<Vector<S>> {
        if !self.contains(alpha) || !self.contains(beta) {
            return Err(Error::InvalidInput(
                "reflect requires both vectors to be roots".to_string(),
            ));
        }
        let aa = self.space.norm(alpha);
        if !aa.is_zero() {
            let c = S::from_int(2) * self.space.form(alpha, beta) / aa;
            return Ok(beta.sub(&alpha.scale(&c)));
        }
        if beta == alpha {
            return Ok(alpha.neg());
        }
        if *beta == alpha.neg() {
            return Ok(alpha.clone());
        }
        if self.space.form(alpha, beta).is_zero() {
            return Ok(beta.clone());
        }
        let plus = self.contains(&beta.add(alpha));
        let minus = self.contains(&beta.sub(alpha));
        match (plus, minus) {
            (true, false) => Ok(beta.add(alpha)),
            (false, true) => Ok(beta.sub(alpha)),
            (true, true) => Err(Error::AmbiguousReflection {
                alpha: alpha.render(),
                beta: beta.render(),
            }),
            (false, false) => Err(Error::UndefinedReflection {
                alpha: alpha.render(),
                beta: beta.render(),
            }),
        }
    }

    /// The permutation of root indices induced by `r_γ`, when `r_γ` is
    /// defined at every root and maps the root set into itself.
    pub fn reflection_permutation(&self, gamma: &Vector<S>) -> Result<ReflectionPermutation<S>> {
        if !self.contains(gamma) {
            return Err(Error::InvalidInput(
                "reflection_permutation requires a root".to_string(),
            ));
        }
        let mut images = Vec::with_capacity(self.roots.len());
        for beta in &self.roots {
            let image = self.reflect(gamma, beta)?;
            let idx = self.index_of(&image).ok_or_else(|| {
                Error::Domain(format!(
                    "r_γ(β) = {} is not a root for γ = {}, β = {}",
                    image.render(),
                    gamma.render(),
                    beta.render()
                ))
            })?;
            images.push(idx);
        }
        Ok(ReflectionPermutation {
            root: gamma.clone(),
            images,
        })
    }

    /// Orbits of the group generated by all *everywhere-defined* reflections:
    /// every even reflection, and every isotropic reflection that is
    /// unambiguous at all roots. Each orbit is sorted; orbits are sorted by
    /// their first root.
    pub fn weyl_orbits(&self) -> Vec<Vec<Vector<S>>> {
        let n = self.roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for gamma in &self.roots {
            let Ok(perm) = self.reflection_permutation(gamma) else {
                continue;
            };
            for (i, &j) in perm.images.iter().enumerate() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut buckets: BTreeMap<usize, Vec<Vector<S>>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            buckets.entry(r).or_default().push(self.roots[i].clone());
        }
        buckets.into_values().collect()
    }

    /// Closure of `seed ⊆ R` under all reflections of the ambient system that
    /// are defined (unambiguous) where applied. Returns the sorted closure.
    pub fn generate(&self, seed: &[Vector<S>]) -> Result<Vec<Vector<S>>> {
        for s in seed {
            if !self.contains(s) {
                return Err(Error::InvalidInput(format!(
                    "seed vector {} is not a root",
                    s.render()
                )));
            }
        }
        let mut set: Vec<Vector<S>> = seed.to_vec();
        set.sort();
        set.dedup();
        loop {
            let mut added = Vec::new();
            for alpha in &set {
                for beta in &set {
                    let image = match self.reflect(alpha, beta) {
                        Ok(v) => v,
                        // skip reflections that are undefined in the ambient
                        Err(Error::AmbiguousReflection { .. })
                        | Err(Error::UndefinedReflection { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    if self.contains(&image)
                        && set.binary_search(&image).is_err()
                        && !added.contains(&image)
                    {
                        added.push(image);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            set.extend(added);
            set.sort();
            set.dedup();
        }
        Ok(set)
    }

    /// Indices of the connected components of the nonorthogonality graph,
    /// each sorted, ordered by smallest member.
    pub(crate) fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.roots.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && !self.space.form(&self.roots[i], &self.roots[j]).is_zero() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Decompose into irreducible components: each component of the
    /// nonorthogonality graph, re-expressed as a system spanning its own
    /// space. Ordered by the lexicographically smallest root of each
    /// component (in the original coordinates).
    pub fn decompose(&self) -> Result<Vec<FiniteRootSystem<S>>> {
        let comps = self.component_indices();
        let mut out = Vec::with_capacity(comps.len());
        for comp in comps {
            let roots: Vec<Vector<S>> = comp.iter().map(|&i| self.roots[i].clone()).collect();
            out.push(FiniteRootSystem::spanning(&self.space, &roots)?);
        }
        Ok(out)
    }

    /// Translation coefficient `t(α, β)` for roots with `(α,β) ≠ 0`:
    /// `2(α,β)/(α,α)` when `α` is non-isotropic; for isotropic `α` it is `−1`
    /// when `β+α ∈ R`, `+1` when `β−α ∈ R`, and undefined (`None`) when both
    /// or neither hold or when either of `β ± 2α` is a root.
    pub fn t_coeff(&self, alpha: &Vector<S>, beta: &Vector<S>) -> Result<Option<S>> {
        if !self.contains(alpha) || !self.contains(beta) {
            return Err(Error::InvalidInput(
                "t_coeff requires both vectors to be roots".to_string(),
            ));
        }
        if self.space.form(alpha, beta).is_zero() {
            return Err(Error::Domain(
                "t_coeff requires (α,β) ≠ 0".to_string(),
            ));
        }
        let aa = self.space.norm(alpha);
        if !aa.is_zero() {
            let c = S::from_int(2) * self.space.form(alpha, beta) / aa;
            if !c.is_integer() {
                return Err(Error::Domain(
                    "2(α,β)/(α,α) is not an integer".to_string(),
                ));
            }
            return Ok(Some(c));
        }
        let two_alpha = alpha.scale(&S::from_int(2));
        if self.contains(&beta.add(&two_alpha)) || self.contains(&beta.sub(&two_alpha)) {
            return Ok(None);
        }
        let plus = self.contains(&beta.add(alpha));
        let minus = self.contains(&beta.sub(alpha));
        match (plus, minus) {
            (true, false) => Ok(Some(-S::one())),
            (false, true) => Ok(Some(S::one())),
            _ => Ok(None),
        }
    }
}

/// Orthogonal direct sum: block-diagonal space, roots of each part padded
/// with zeros. Labels are prefixed `u1_`, `u2_`, … to stay distinct.
pub fn orthogonal_union<S: Scalar>(parts: &[&FiniteRootSystem<S>]) -> Result<FiniteRootSystem<S>> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty union".to_string()));
    }
    let total: usize = parts.iter().map(|p| p.space().dim()).sum();
    let mut gram = Mat::zero(total, total);
    let mut labels = Vec::with_capacity(total);
    let mut offset = 0;
    for (k, part) in parts.iter().enumerate() {
        let d = part.space().dim();
        for i in 0..d {
            for j in 0..d {
                gram.set(offset + i, offset + j, part.space().gram().at(i, j).clone());
            }
            labels.push(format!("u{}_{}", k + 1, part.space().labels()[i]));
        }
        offset += d;
    }
    let space = FormSpace::new(labels, gram)?;
    let mut roots = Vec::new();
    let mut shift = 0;
    for part in parts {
        let d = part.space().dim();
        for r in part.roots() {
            let mut v = Vector::zero(total);
            for i in 0..d {
                v.0[shift + i] = r.0[i].clone();
            }
            roots.push(v);
        }
        shift += d;
    }
    FiniteRootSystem::new(space, roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;
    type V = Vector<Q>;
    type Sys = FiniteRootSystem<Q>;

    fn vi(coords: &[i64]) -> V {
        V::from_ints(coords)
    }

    /// A(1,0) in the 2-dimensional spanning coordinates: basis b1 = ε1−ε2,
    /// b2 = ε2−δ1 of the standard (1|1)-signature realization.
    fn a10() -> Sys {
        let amb = FormSpace::<Q>::diagonal(&[1, 1, -1]);
        let roots = vec![
            vi(&[1, -1, 0]),
            vi(&[-1, 1, 0]),
            vi(&[1, 0, -1]),
            vi(&[-1, 0, 1]),
            vi(&[0, 1, -1]),
            vi(&[0, -1, 1]),
        ];
        Sys::spanning(&amb, &roots).unwrap()
    }

    fn a1() -> Sys {
        let sp = FormSpace::<Q>::diagonal(&[2]);
        Sys::new(sp, vec![vi(&[1]), vi(&[-1])]).unwrap()
    }

    #[test]
    fn a10_is_a_grs_with_isotropic_roots() {
        let s = a10();
        assert_eq!(s.space().dim(), 2);
        assert_eq!(s.len(), 6);
        let rep = s.check_axioms().unwrap();
        assert!(rep.is_grs);
        assert!(rep.is_weak_grs);
        assert!(!rep.is_rs);
        assert!(rep.is_reduced);
        assert!(rep.is_irreducible);
        assert!(rep.has(AxiomId::IsotropicPresent));
        // exactly four isotropic roots (the images of ±(ε_i − δ_1))
        let iso = s.roots().iter().filter(|r| s.is_isotropic(r)).count();
        assert_eq!(iso, 4);
    }

    #[test]
    fn odd_reflection_moves_between_root_subsets() {
        let s = a10();
        let iso = s
            .roots()
            .iter()
            .find(|r| s.is_isotropic(r))
            .cloned()
            .unwrap();
        for beta in s.roots() {
            if s.space().form(&iso, beta).is_zero() {
                continue;
            }
            let image = s.reflect(&iso, beta).unwrap();
            assert!(s.contains(&image));
        }
    }

    #[test]
    fn even_reflection_is_an_involution_preserving_the_form() {
        let s = a10();
        for alpha in s.roots() {
            if s.is_isotropic(alpha) {
                continue;
            }
            for beta in s.roots() {
                let once = s.reflect(alpha, beta).unwrap();
                assert!(s.contains(&once));
                let twice = s.reflect(alpha, &once).unwrap();
                assert_eq!(&twice, beta);
                assert_eq!(s.norm(&once), s.norm(beta));
            }
        }
    }

    #[test]
    fn zero_root_and_span_violations_are_reported() {
        let sp = FormSpace::<Q>::diagonal(&[2, 2]);
        let s = Sys::new(sp, vec![vi(&[0, 0]), vi(&[1, 0]), vi(&[-1, 0])]).unwrap();
        let rep = s.check_axioms().unwrap();
        assert!(rep.has(AxiomId::ZeroRoot));
        assert!(rep.has(AxiomId::SpanDeficient));
        assert!(!rep.is_weak_grs);
    }

    #[test]
    fn asymmetric_set_is_flagged() {
        let sp = FormSpace::<Q>::diagonal(&[2]);
        let s = Sys::new(sp, vec![vi(&[1])]).unwrap();
        let rep = s.check_axioms().unwrap();
        assert!(rep.has(AxiomId::NotSymmetric));
        // r_α(α) = −α escapes the set, so even closure fails too
        assert!(rep.has(AxiomId::EvenClosure));
        assert!(!rep.is_weak_grs);
    }

    #[test]
    fn empty_input_is_an_error() {
        let sp = FormSpace::<Q>::diagonal(&[2]);
        let s = Sys::new(sp, vec![]).unwrap();
        assert!(s.check_axioms().is_err());
    }

    #[test]
    fn weyl_orbits_of_a1_times_a1() {
        let u = orthogonal_union(&[&a1(), &a1()]).unwrap();
        let rep = u.check_axioms().unwrap();
        assert!(rep.is_grs);
        assert!(!rep.is_irreducible);
        assert_eq!(u.weyl_orbits().len(), 2);
        let comps = u.decompose().unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert!(c.check_axioms().unwrap().is_irreducible);
            assert_eq!(c.len(), 2);
        }
    }

    #[test]
    fn generate_recovers_whole_component_from_simple_roots() {
        let s = a10();
        // b1, b2 are the first two positive basis roots in spanning coords
        let seed = vec![vi(&[1, 0]), vi(&[0, 1])];
        let closure = s.generate(&seed).unwrap();
        assert_eq!(closure.len(), s.len());
    }

    #[test]
    fn t_coeff_matches_reflection_data() {
        let s = a10();
        let mut saw_iso = false;
        for alpha in s.roots() {
            for beta in s.roots() {
                if s.space().form(alpha, beta).is_zero() {
                    assert!(s.t_coeff(alpha, beta).is_err());
                    continue;
                }
                let t = s.t_coeff(alpha, beta).unwrap();
                if !s.is_isotropic(alpha) {
                    assert!(t.is_some());
                } else if let Some(t) = t {
                    saw_iso = true;
                    // t = ∓1 according to which of β ± α is a root
                    let shifted = beta.sub(&alpha.scale(&t));
                    assert!(s.contains(&shifted));
                }
            }
        }
        assert!(saw_iso);
    }

    #[test]
    fn non_reduced_pair_is_flagged_but_still_weak() {
        // BC(1,0)-style data: {±e, ±2e} with (e,e) = 1
        let sp = FormSpace::<Q>::diagonal(&[1]);
        let s = Sys::new(sp, vec![vi(&[1]), vi(&[-1]), vi(&[2]), vi(&[-2])]).unwrap();
        let rep = s.check_axioms().unwrap();
        assert!(rep.is_grs);
        assert!(!rep.is_reduced);
        assert!(rep.has(AxiomId::NotReduced));
    }
}
