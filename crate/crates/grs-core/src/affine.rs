//! Affine presentations: root systems with a one-dimensional radical
//! direction δ, presented by *fibers* over a finite base system.
//!
//! Every root of the presented (possibly infinite) system has the shape
//! `α + o·δ`, where `α` is a root of the finite base system (a *class*) and
//! the *offset* `o` ranges over the fiber attached to `α`: the set
//! `residues + step·Z` when `step > 0`, or exactly `residues` when
//! `step = 0`. A presentation with all steps zero is a finite system with a
//! degenerate form, written out explicitly.
//!
//! Validation checks, entirely symbolically (no truncation):
//!
//! * **(0′)** the radical of the total form is exactly the δ line, no root
//!   lies in it, and the roots span the total space (in particular δ itself
//!   is a difference of roots);
//! * **(1)** for every non-isotropic class `α`, every class `β` and all lifts
//!   `x ∈ fiber(α)`, `y ∈ fiber(β)`, the even reflection lands in the fiber
//!   of `β − cα`;
//! * **(2)** for every isotropic class `α` and class `β` with `(α,β) ≠ 0`,
//!   and all lifts `x, y`, exactly one of `y + x`, `y − x` is a root;
//! * the finiteness of the class set and the fiber shape `α + (subset of
//!   residues + step·Z)·δ` hold by construction of the data type.

use crate::error::{Error, Result};
use crate::finite::{AxiomId, AxiomReport, FiniteRootSystem, Violation};
use crate::linalg::{quotient_by, span_subspace, FormSpace, Mat, Vector};
use crate::scalar::{is_multiple_of, rat_gcd, rat_mod, Scalar};

/// The set of offsets over one base class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fiber<S> {
    /// The base root this fiber sits over.
    pub class: Vector<S>,
    /// Lattice step; `0` means the fiber is exactly the finite residue list.
    pub step: S,
    /// Sorted distinct residues, reduced into `[0, step)` when `step > 0`.
    pub residues: Vec<S>,
}

impl<S: Scalar> Fiber<S> {
    pub fn new(class: Vector<S>, step: S, residues: Vec<S>) -> Result<Self> {
        if step.is_negative() {
            return Err(Error::InvalidInput("fiber step must be ≥ 0".to_string()));
        }
        if residues.is_empty() {
            return Err(Error::InvalidInput(
                "fiber must have at least one residue".to_string(),
            ));
        }
        let mut res: Vec<S> = if step.is_zero() {
            residues
        } else {
            residues.iter().map(|r| rat_mod(r, &step)).collect()
        };
        res.sort();
        res.dedup();
        Ok(Fiber {
            class,
            step,
            residues: res,
        })
    }

    /// Convenience: single residue fiber from small integers.
    pub fn lattice(class: Vector<S>, step: i64, residue: (i64, i64)) -> Result<Self> {
        Fiber::new(
            class,
            S::from_int(step),
            vec![S::from_ratio(residue.0, residue.1)],
        )
    }

    /// Does offset `o` belong to the fiber?
    pub fn contains_offset(&self, o: &S) -> bool {
        if self.step.is_zero() {
            self.residues.contains(o)
        } else {
            self.residues
                .iter()
                .any(|r| ((o.clone() - r.clone()) / self.step.clone()).is_integer())
        }
    }

    /// The fiber of `−class` in a symmetric system: offsets negated.
    pub fn negated(&self) -> Result<Self> {
        Fiber::new(
            self.class.neg(),
            self.step.clone(),
            self.residues.iter().map(|r| -r.clone()).collect(),
        )
    }

    /// Shift all offsets by `s` (a re-sectioning move; the abstract root set
    /// is unchanged when applied consistently with a linear functional).
    pub fn shifted(&self, s: &S) -> Result<Self> {
        Fiber::new(
            self.class.clone(),
            self.step.clone(),
            self.residues.iter().map(|r| r.clone() + s.clone()).collect(),
        )
    }

    /// Rescale δ by `1/factor` (`factor > 0`): offsets multiply by `factor`.
    pub fn scaled(&self, factor: &S) -> Result<Self> {
        debug_assert!(factor.is_positive());
        Fiber::new(
            self.class.clone(),
            self.step.clone() * factor.clone(),
            self.residues
                .iter()
                .map(|r| r.clone() * factor.clone())
                .collect(),
        )
    }

    /// If the residues form a full arithmetic progression spanning the step
    /// (equal gaps `step/m`, including the wrap-around), merge them into a
    /// single residue with the smaller step. `{0, 1/2}` with step 1 collapses
    /// to step `1/2`; `{0, 1/3}` with step 1 does not collapse.
    pub fn collapsed(&self) -> Self {
        let m = self.residues.len();
        if self.step.is_zero() || m < 2 {
            return self.clone();
        }
        let gap = self.step.clone() / S::from_int(m as i64);
        for w in self.residues.windows(2) {
            if w[1].clone() - w[0].clone() != gap {
                return self.clone();
            }
        }
        // wrap-around gap: (r0 + step) − r_last must equal the common gap
        let wrap = self.residues[0].clone() + self.step.clone()
            - self.residues[m - 1].clone();
        if wrap != gap {
            return self.clone();
        }
        Fiber::new(self.class.clone(), gap, vec![self.residues[0].clone()])
            .expect("collapsed fiber is well formed")
    }

    /// Representative offsets that witness the affine directions of the
    /// fiber: all residues, plus one step-shifted offset when `step > 0`.
    pub fn offset_reps(&self) -> Vec<S> {
        let mut reps = self.residues.clone();
        if !self.step.is_zero() {
            reps.push(self.residues[0].clone() + self.step.clone());
        }
        reps
    }
}

/// Outcome of the exact "exactly one of `y ± x` is a root" decision for one
/// pair of residues; `None` means the condition holds for *all* lifts.
struct XorFailure<S> {
    /// Concrete offending lift offsets, when a small search finds them.
    lifts: Option<(S, S)>,
    /// `true` when both candidates are roots at the offending lifts.
    both: bool,
    detail: String,
}

/// A root system presented by fibers over a finite base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePresentation<S> {
    base: FiniteRootSystem<S>,
    delta_label: String,
    /// One fiber per base root, aligned with `base.roots()` order.
    fibers: Vec<Fiber<S>>,
}

impl<S: Scalar> AffinePresentation<S> {
    /// Build a presentation from the base space and one fiber per class. The
    /// base root set is exactly the set of fiber classes.
    pub fn new(space: FormSpace<S>, delta_label: String, mut fibers: Vec<Fiber<S>>) -> Result<Self> {
        if fibers.is_empty() {
            return Err(Error::InvalidInput("presentation has no fibers".to_string()));
        }
        fibers.sort_by(|a, b| a.class.cmp(&b.class));
        for w in fibers.windows(2) {
            if w[0].class == w[1].class {
                return Err(Error::InvalidInput(format!(
                    "duplicate fiber for class {}",
                    w[0].class.render()
                )));
            }
        }
        let classes: Vec<Vector<S>> = fibers.iter().map(|f| f.class.clone()).collect();
        let base = FiniteRootSystem::new(space, classes)?;
        debug_assert_eq!(base.len(), fibers.len());
        Ok(AffinePresentation {
            base,
            delta_label,
            fibers,
        })
    }

    /// The base (class) system: the image of the root set under the quotient
    /// by the radical.
    pub fn base(&self) -> &FiniteRootSystem<S> {
        &self.base
    }

    pub fn delta_label(&self) -> &str {
        &self.delta_label
    }

    pub fn fibers(&self) -> &[Fiber<S>] {
        &self.fibers
    }

    pub fn fiber_of(&self, class: &Vector<S>) -> Option<&Fiber<S>> {
        self.base.index_of(class).map(|i| &self.fibers[i])
    }

    /// Is the presented root set finite (all fibers finite)?
    pub fn is_finite(&self) -> bool {
        self.fibers.iter().all(|f| f.step.is_zero())
    }

    /// The total space: base coordinates extended by the δ coordinate, with
    /// the form extended by zero.
    pub fn total_space(&self) -> FormSpace<S> {
        let d = self.base.space().dim();
        let mut gram = Mat::zero(d + 1, d + 1);
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, self.base.space().gram().at(i, j).clone());
            }
        }
        let mut labels = self.base.space().labels().to_vec();
        labels.push(self.delta_label.clone());
        FormSpace::new(labels, gram).expect("total space data is well formed")
    }

    /// The explicit root `class + o·δ` in total-space coordinates.
    pub fn total_root(&self, class: &Vector<S>, offset: &S) -> Vector<S> {
        class.extended(offset.clone())
    }

    /// Split a total-space vector into `(base part, δ coefficient)`.
    pub fn split_root(&self, v: &Vector<S>) -> (Vector<S>, S) {
        let d = self.base.space().dim();
        (Vector(v.0[..d].to_vec()), v.0[d].clone())
    }

    /// Symbolic membership of an explicit total-space vector.
    pub fn contains(&self, v: &Vector<S>) -> bool {
        if v.dim() != self.base.space().dim() + 1 {
            return false;
        }
        let (cls, o) = self.split_root(v);
        self.fiber_of(&cls).is_some_and(|f| f.contains_offset(&o))
    }

    /// All roots with |δ coefficient| ≤ `bound`, as an explicit finite system
    /// in the total space (not restricted to its span).
    pub fn window(&self, bound: &S) -> Result<FiniteRootSystem<S>> {
        if bound.is_negative() {
            return Err(Error::InvalidInput("window bound must be ≥ 0".to_string()));
        }
        let mut roots = Vec::new();
        for f in &self.fibers {
            if f.step.is_zero() {
                for r in &f.residues {
                    if r.abs() <= *bound {
                        roots.push(self.total_root(&f.class, r));
                    }
                }
            } else {
                for r in &f.residues {
                    // offsets r + n·step within [−bound, bound]
                    let lo = ((-bound.clone() - r.clone()) / f.step.clone()).floor_val();
                    let hi = ((bound.clone() - r.clone()) / f.step.clone()).floor_val();
                    let (mut n, hi) = (lo, hi);
                    while n <= hi {
                        let o = r.clone() + n.clone() * f.step.clone();
                        if o.abs() <= *bound {
                            roots.push(self.total_root(&f.class, &o));
                        }
                        n = n + S::one();
                    }
                }
            }
        }
        FiniteRootSystem::new(self.total_space(), roots)
    }

    /// Flip the sign of δ: all offsets negate.
    pub fn negated_delta(&self) -> Self {
        let fibers = self
            .fibers
            .iter()
            .map(|f| {
                Fiber::new(
                    f.class.clone(),
                    f.step.clone(),
                    f.residues.iter().map(|r| -r.clone()).collect(),
                )
                .expect("negated fiber is well formed")
            })
            .collect();
        AffinePresentation::new(
            self.base.space().clone(),
            self.delta_label.clone(),
            fibers,
        )
        .expect("negated presentation is well formed")
    }

    /// Replace δ by `δ/factor` for `factor > 0`: offsets multiply by factor.
    pub fn scaled_delta(&self, factor: &S) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::InvalidInput("scale factor must be > 0".to_string()));
        }
        let fibers = self
            .fibers
            .iter()
            .map(|f| f.scaled(factor))
            .collect::<Result<Vec<_>>>()?;
        AffinePresentation::new(
            self.base.space().clone(),
            self.delta_label.clone(),
            fibers,
        )
    }

    /// Apply a re-sectioning shift: fiber of class `α` moves by `σ(α)`, where
    /// `σ` is the linear functional with the given values on the space basis.
    /// The abstract root set is unchanged.
    pub fn resectioned(&self, sigma: &Vector<S>) -> Result<Self> {
        if sigma.dim() != self.base.space().dim() {
            return Err(Error::DimensionMismatch(
                "σ must be a functional on the base space".to_string(),
            ));
        }
        let fibers = self
            .fibers
            .iter()
            .map(|f| {
                let mut shift = S::zero();
                for i in 0..sigma.dim() {
                    shift = shift + sigma.0[i].clone() * f.class.0[i].clone();
                }
                f.shifted(&shift)
            })
            .collect::<Result<Vec<_>>>()?;
        AffinePresentation::new(
            self.base.space().clone(),
            self.delta_label.clone(),
            fibers,
        )
    }

    /// Validate the affine axioms symbolically and report flags. The
    /// `is_agrs` field of the returned report is always `Some`.
    pub fn validate_agrs(&self) -> Result<AxiomReport<S>> {
        let base_report = self.base.check_axioms()?;
        // class-level proportionality does not make the lifted roots
        // proportional; the coset check below re-derives reducedness
        let mut violations: Vec<Violation<S>> = base_report
            .violations
            .iter()
            .filter(|v| v.axiom != AxiomId::NotReduced)
            .cloned()
            .collect();

        // (0′): a fiber over the zero class lifts to roots of the form kδ,
        // which lie in the kernel of the total form
        for f in &self.fibers {
            if f.class.is_zero() {
                let offset = if f.residues[0].is_zero() && !f.step.is_zero() {
                    f.step.clone()
                } else {
                    f.residues[0].clone()
                };
                violations.push(Violation {
                    axiom: AxiomId::RootInRadical,
                    witness: vec![self.total_root(&f.class, &offset)],
                    detail: format!(
                        "the fiber over 0 lifts to multiples of {} in the radical",
                        self.delta_label
                    ),
                });
            }
        }

        // fiber symmetry: fiber(−α) = −fiber(α)
        for f in &self.fibers {
            match self.fiber_of(&f.class.neg()) {
                Some(g) => {
                    if *g != f.negated()? {
                        violations.push(Violation {
                            axiom: AxiomId::FiberAsymmetric,
                            witness: vec![f.class.clone(), g.class.clone()],
                            detail: format!(
                                "fiber over {} is not the negation of the fiber over {}",
                                g.class.render(),
                                f.class.render()
                            ),
                        });
                    }
                }
                None => {} // already reported as NotSymmetric by the base check
            }
        }

        // (0′): δ must lie in the span of the roots, i.e. the lifted rows
        // (class | offset) must have rank = rank(classes) + 1
        {
            let class_rows = Mat::from_rows(self.base.roots())?;
            let class_rank = class_rows.rank();
            let mut lifted: Vec<Vector<S>> = Vec::new();
            for f in &self.fibers {
                for o in f.offset_reps() {
                    lifted.push(f.class.extended(o));
                }
            }
            let lifted_rank = Mat::from_rows(&lifted)?.rank();
            if lifted_rank != class_rank + 1 {
                violations.push(Violation {
                    axiom: AxiomId::DeltaNotSpanned,
                    witness: vec![],
                    detail: "δ is not in the span of the root set".to_string(),
                });
            }
        }

        // (1): even reflections at the fiber level
        for (i, alpha) in self.base.roots().iter().enumerate() {
            let aa = self.base.space().norm(alpha);
            if aa.is_zero() {
                continue;
            }
            for (j, beta) in self.base.roots().iter().enumerate() {
                let c = S::from_int(2) * self.base.space().form(alpha, beta) / aa.clone();
                if !c.is_integer() || c.is_zero() {
                    // non-integral c is already reported by the base check;
                    // c = 0 moves nothing
                    continue;
                }
                let gamma = beta.sub(&alpha.scale(&c));
                let Some(target) = self.fiber_of(&gamma) else {
                    continue; // class-level failure, reported by the base check
                };
                for fail in self.even_offset_failures(&self.fibers[i], &self.fibers[j], &c, target)
                {
                    violations.push(fail);
                }
            }
        }

        // (2): isotropic classes, exactly-one at the lift level
        for (i, alpha) in self.base.roots().iter().enumerate() {
            if !self.base.space().norm(alpha).is_zero() || alpha.is_zero() {
                continue;
            }
            for (j, beta) in self.base.roots().iter().enumerate() {
                if self.base.space().form(alpha, beta).is_zero() {
                    continue;
                }
                let p_target = self.fiber_of(&beta.add(alpha));
                let q_target = self.fiber_of(&beta.sub(alpha));
                let (fa, fb) = (&self.fibers[i], &self.fibers[j]);
                for ra in &fa.residues {
                    for rb in &fb.residues {
                        if let Some(fail) = exactly_one_forall(
                            &fa.step, &fb.step, ra, rb, p_target, q_target,
                        ) {
                            let mut witness = vec![alpha.clone(), beta.clone()];
                            if let Some((x, y)) = &fail.lifts {
                                witness = vec![
                                    self.total_root(alpha, x),
                                    self.total_root(beta, y),
                                ];
                            }
                            violations.push(Violation {
                                axiom: if fail.both {
                                    AxiomId::OddOffsetBoth
                                } else {
                                    AxiomId::OddOffsetNeither
                                },
                                witness,
                                detail: fail.detail,
                            });
                        }
                    }
                }
            }
        }

        // reduced at the affine level: proportional classes whose offset
        // cosets actually meet after scaling
        let mut affine_reduced = true;
        for (i, alpha) in self.base.roots().iter().enumerate() {
            if alpha.is_zero() {
                continue;
            }
            for (j, beta) in self.base.roots().iter().enumerate() {
                if i == j {
                    continue;
                }
                let Some(cv) = alpha.proportion_to(beta) else {
                    continue;
                };
                if cv == S::one() || cv == -S::one() {
                    continue;
                }
                let (fa, fb) = (&self.fibers[i], &self.fibers[j]);
                // is c·(fiber α) ∩ fiber β nonempty?
                let g = rat_gcd(&(cv.clone() * fa.step.clone()), &fb.step);
                let mut meets = false;
                'outer: for ra in &fa.residues {
                    for rb in &fb.residues {
                        let d = rb.clone() - cv.clone() * ra.clone();
                        if is_multiple_of(&d, &g) {
                            meets = true;
                            break 'outer;
                        }
                    }
                }
                if meets && i < j {
                    affine_reduced = false;
                    violations.push(Violation {
                        axiom: AxiomId::NotReduced,
                        witness: vec![alpha.clone(), beta.clone()],
                        detail: format!(
                            "lifts of {} and {} are proportional with ratio {}",
                            alpha.render(),
                            beta.render(),
                            cv.format_rat()
                        ),
                    });
                }
            }
        }

        let agrs_ok = !violations.iter().any(|v| {
            matches!(
                v.axiom,
                AxiomId::ZeroRoot
                    | AxiomId::SpanDeficient
                    | AxiomId::DegenerateForm
                    | AxiomId::Integrality
                    | AxiomId::EvenClosure
                    | AxiomId::OddNeither
                    | AxiomId::NotSymmetric
                    | AxiomId::RadicalNotLine
                    | AxiomId::RootInRadical
                    | AxiomId::DeltaNotSpanned
                    | AxiomId::FiberAsymmetric
                    | AxiomId::OffsetNotClosed
                    | AxiomId::OddOffsetNeither
                    | AxiomId::OddOffsetBoth
            )
        });

        Ok(AxiomReport {
            is_rs: base_report.is_rs,
            is_grs: base_report.is_grs,
            is_weak_grs: base_report.is_weak_grs,
            is_reduced: affine_reduced,
            is_irreducible: base_report.is_irreducible,
            is_agrs: Some(agrs_ok),
            violations,
        })
    }

    /// Check that every even reflection lift lands in the target fiber.
    /// For α-lifts `x = r_a + s·k_a` and β-lifts `y = r_b + t·k_b`, the image
    /// offset is `y − c·x`, which ranges over `r_b − c·r_a + Z·gcd(k_b, |c|·k_a)`.
    fn even_offset_failures(
        &self,
        fa: &Fiber<S>,
        fb: &Fiber<S>,
        c: &S,
        target: &Fiber<S>,
    ) -> Vec<Violation<S>> {
        let mut out = Vec::new();
        let lattice = rat_gcd(&fb.step, &(c.abs() * fa.step.clone()));
        for ra in &fa.residues {
            for rb in &fb.residues {
                let d = rb.clone() - c.clone() * ra.clone();
                let mut bad_offset: Option<S> = None;
                if target.step.is_zero() {
                    if lattice.is_zero() {
                        if !target.contains_offset(&d) {
                            bad_offset = Some(d.clone());
                        }
                    } else {
                        // infinitely many image offsets cannot all lie in a
                        // finite fiber; walk the lattice to the first escape
                        let mut m = S::zero();
                        loop {
                            let v = d.clone() + m.clone() * lattice.clone();
                            if !target.contains_offset(&v) {
                                bad_offset = Some(v);
                                break;
                            }
                            m = m + S::one();
                        }
                    }
                } else {
                    // membership in the target is periodic modulo its step,
                    // so scanning one cycle of the image lattice is exhaustive
                    if lattice.is_zero() {
                        if !target.contains_offset(&d) {
                            bad_offset = Some(d.clone());
                        }
                    } else {
                        let count = (target.step.clone() / rat_gcd(&lattice, &target.step))
                            .to_i64()
                            .expect("cycle length is a positive integer");
                        for m in 0..count {
                            let v = d.clone() + S::from_int(m) * lattice.clone();
                            if !target.contains_offset(&v) {
                                bad_offset = Some(v);
                                break;
                            }
                        }
                    }
                }
                if let Some(v) = bad_offset {
                    out.push(Violation {
                        axiom: AxiomId::OffsetNotClosed,
                        witness: vec![
                            self.total_root(&fa.class, ra),
                            self.total_root(&fb.class, rb),
                            target.class.extended(v.clone()),
                        ],
                        detail: format!(
                            "even reflection by lifts of {} sends a lift of {} to offset {} over {}, which is not a root",
                            fa.class.render(),
                            fb.class.render(),
                            v.format_rat(),
                            target.class.render()
                        ),
                    });
                }
            }
        }
        out
    }

    /// Canonical rescaling of δ: collapse fibers, divide by the gcd of the
    /// nonzero steps (making the steps integers with gcd 1), reduce residues,
    /// and fix the sign of δ by choosing the lexicographically smaller of the
    /// presentation and its δ-negation. Errors on finite presentations.
    pub fn normalize_delta(&self) -> Result<Normalization<S>> {
        let collapsed: Vec<Fiber<S>> = self.fibers.iter().map(Fiber::collapsed).collect();
        let mut g = S::zero();
        for f in &collapsed {
            if !f.step.is_zero() {
                g = rat_gcd(&g, &f.step);
            }
        }
        if g.is_zero() {
            return Err(Error::NotApplicable(
                "the presentation is finite: no affine direction to normalize".to_string(),
            ));
        }
        let factor = S::one() / g.clone();
        let rescaled = AffinePresentation::new(
            self.base.space().clone(),
            self.delta_label.clone(),
            collapsed,
        )?
        .scaled_delta(&factor)?;
        let negated = rescaled.negated_delta();
        let (presentation, flipped) = if fiber_list_key(&negated.fibers) < fiber_list_key(&rescaled.fibers)
        {
            (negated, true)
        } else {
            (rescaled, false)
        };
        Ok(Normalization {
            presentation,
            scale: g,
            negated: flipped,
        })
    }

    /// The step function after normalization: one nonnegative integer per
    /// base class, with gcd 1 over the whole system. Not applicable to finite
    /// presentations or to systems over the weak 2-dimensional base whose
    /// isotropic fibers are unions of two cosets (those are handled by the
    /// classification directly).
    pub fn k_function(&self) -> Result<KFunction<S>> {
        let norm = self.normalize_delta()?;
        // fibers with several residues modulo the step have no single
        // step-coset shape; the step function is defined only without them
        if norm
            .presentation
            .fibers
            .iter()
            .any(|f| f.residues.len() > 1)
        {
            return Err(Error::NotApplicable(
                "some fiber is a union of several cosets; no step function".to_string(),
            ));
        }
        let entries = norm
            .presentation
            .fibers
            .iter()
            .map(|f| (f.class.clone(), f.step.clone()))
            .collect();
        Ok(KFunction { entries })
    }

    /// Keep only the classes in `keep` (closed under negation), re-spanning
    /// the base. Fibers carry over unchanged.
    pub fn restrict_to_classes(&self, keep: &[Vector<S>]) -> Result<Self> {
        let mut wanted: Vec<Vector<S>> = Vec::new();
        for k in keep {
            if self.base.index_of(k).is_none() {
                return Err(Error::InvalidInput(format!(
                    "{} is not a class of the presentation",
                    k.render()
                )));
            }
            wanted.push(k.clone());
            wanted.push(k.neg());
        }
        wanted.sort();
        wanted.dedup();
        let sub = span_subspace(self.base.space(), &wanted, "b")?;
        let mut fibers = Vec::new();
        for w in &wanted {
            let f = self.fiber_of(w).expect("membership checked above");
            let cls = sub
                .coords(w)
                .expect("kept class lies in the span of the kept classes");
            fibers.push(Fiber::new(cls, f.step.clone(), f.residues.clone())?);
        }
        AffinePresentation::new(sub.space().clone(), self.delta_label.clone(), fibers)
    }

    /// Decompose a valid (possibly reducible) presentation: each component of
    /// the base nonorthogonality graph either still spans an affine direction
    /// (δ lies in the span of its lifted roots) and is returned as a
    /// presentation, or it is a finite root system and is returned as such.
    /// At least one component keeps the affine direction whenever the
    /// presentation is valid.
    pub fn decompose(&self) -> Result<(Vec<AffinePresentation<S>>, Vec<FiniteRootSystem<S>>)> {
        let mut affine_parts = Vec::new();
        let mut finite_parts = Vec::new();
        for comp in self.decompose_components()? {
            match comp.part {
                ComponentPart::Affine(p) => affine_parts.push(p),
                ComponentPart::Finite(r) => finite_parts.push(r),
            }
        }
        Ok((affine_parts, finite_parts))
    }

    /// Like [`decompose`](Self::decompose), but each component also carries
    /// its fibers in the coordinates of the *original* base, so callers can
    /// check that the components partition the input root-for-root.
    pub fn decompose_components(&self) -> Result<Vec<DecomposedComponent<S>>> {
        let class_groups: Vec<Vec<Vector<S>>> = self
            .base
            .component_indices()
            .into_iter()
            .map(|ix| ix.iter().map(|&i| self.base.roots()[i].clone()).collect())
            .collect();
        let mut out = Vec::new();
        for group in &class_groups {
            let embedded: Vec<Fiber<S>> = group
                .iter()
                .map(|cls| self.fiber_of(cls).expect("class of the presentation").clone())
                .collect();
            // does δ survive in the span of this component's lifts?
            let class_rank = Mat::from_rows(group)?.rank();
            let mut lifted = Vec::new();
            for f in &embedded {
                for o in f.offset_reps() {
                    lifted.push(f.class.extended(o));
                }
            }
            let lifted_rank = Mat::from_rows(&lifted)?.rank();
            let part = if lifted_rank == class_rank + 1 {
                ComponentPart::Affine(self.restrict_to_classes(group)?)
            } else {
                ComponentPart::Finite(FiniteRootSystem::spanning(self.base.space(), group)?)
            };
            out.push(DecomposedComponent { embedded, part });
        }
        Ok(out)
    }

    /// Present an explicit finite root set whose form has a one-dimensional
    /// radical as a fiber presentation (all steps zero). The δ direction is
    /// the radical generator scaled so its first nonzero coordinate is 1.
    pub fn from_explicit(space: &FormSpace<S>, roots: &[Vector<S>]) -> Result<Self> {
        let radical = space.radical_basis();
        if radical.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "expected a 1-dimensional radical, found dimension {}",
                radical.len()
            )));
        }
        let first_nonzero = radical[0]
            .0
            .iter()
            .position(|c| !c.is_zero())
            .expect("radical basis vector is nonzero");
        let delta = radical[0].scale(&(S::one() / radical[0].0[first_nonzero].clone()));
        let q = quotient_by(space, &[delta.clone()])?;
        let mut by_class: std::collections::BTreeMap<Vector<S>, Vec<S>> =
            std::collections::BTreeMap::new();
        for r in roots {
            if r.dim() != space.dim() {
                return Err(Error::DimensionMismatch(
                    "root does not live in the given space".to_string(),
                ));
            }
            let cls = q.apply(r);
            let rep = q.section(&cls);
            let residue_vec = r.sub(&rep);
            // residue_vec = o · delta
            let o = residue_vec.0[first_nonzero].clone();
            if residue_vec != delta.scale(&o) {
                return Err(Error::InvalidInput(
                    "root is not congruent to its class representative modulo δ".to_string(),
                ));
            }
            by_class.entry(cls).or_default().push(o);
        }
        let fibers = by_class
            .into_iter()
            .map(|(cls, offsets)| Fiber::new(cls, S::zero(), offsets))
            .collect::<Result<Vec<_>>>()?;
        AffinePresentation::new(q.target().clone(), "delta".to_string(), fibers)
    }
}

/// One connected component of a decomposition, in both views: re-spanned on
/// its own coordinates (for classification) and as the original fibers it
/// came from (for reassembly checks).
#[derive(Clone, Debug)]
pub struct DecomposedComponent<S> {
    /// The component's fibers in the coordinates of the original base.
    pub embedded: Vec<Fiber<S>>,
    pub part: ComponentPart<S>,
}

#[derive(Clone, Debug)]
pub enum ComponentPart<S> {
    Affine(AffinePresentation<S>),
    Finite(FiniteRootSystem<S>),
}

/// Free-function form of [`AffinePresentation::decompose`].
pub fn decompose_agrs<S: Scalar>(
    p: &AffinePresentation<S>,
) -> Result<(Vec<AffinePresentation<S>>, Vec<FiniteRootSystem<S>>)> {
    p.decompose()
}

/// Result of [`AffinePresentation::normalize_delta`].
#[derive(Clone, Debug)]
pub struct Normalization<S> {
    pub presentation: AffinePresentation<S>,
    /// The new δ is `scale · old δ` (before any sign flip), so old offsets
    /// were divided by `scale`.
    pub scale: S,
    /// Whether the sign of δ was flipped for canonicity.
    pub negated: bool,
}

/// The normalized step function `k`: class ↦ step. See
/// [`AffinePresentation::k_function`].
#[derive(Clone, Debug)]
pub struct KFunction<S> {
    /// `(class, step)` pairs aligned with the sorted base roots.
    pub entries: Vec<(Vector<S>, S)>,
}

impl<S: Scalar> KFunction<S> {
    pub fn get(&self, class: &Vector<S>) -> Option<&S> {
        self.entries
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, k)| k)
    }
}

fn fiber_list_key<S: Scalar>(fibers: &[Fiber<S>]) -> Vec<(Vector<S>, S, Vec<S>)> {
    fibers
        .iter()
        .map(|f| (f.class.clone(), f.step.clone(), f.residues.clone()))
        .collect()
}

/// Decide whether, for all `s, t ∈ Z`, exactly one of the two candidate
/// offsets `c_p + s·k_a + t·k_b` (membership in `p_target`) and
/// `c_q − s·k_a + t·k_b` (membership in `q_target`) is a root. `c_p, c_q` are
/// built from one residue of each fiber: `c_p = r_b + r_a`, `c_q = r_b − r_a`.
///
/// The decision is exact. Fibers with positive step make membership periodic
/// in `(s, t)`, so a product of one period in each variable is exhaustive;
/// fibers with step 0 are finite, and a finite target on an infinite lift
/// lattice forces a violation unless that target is never required.
fn exactly_one_forall<S: Scalar>(
    k_a: &S,
    k_b: &S,
    r_a: &S,
    r_b: &S,
    p_target: Option<&Fiber<S>>,
    q_target: Option<&Fiber<S>>,
) -> Option<XorFailure<S>> {
    let c_p = r_b.clone() + r_a.clone();
    let c_q = r_b.clone() - r_a.clone();
    let memb = |target: Option<&Fiber<S>>, val: &S| -> bool {
        target.is_some_and(|f| f.contains_offset(val))
    };
    let fail = |s: i64, t: i64, both: bool, detail: String| -> XorFailure<S> {
        XorFailure {
            lifts: Some((
                r_a.clone() + S::from_int(s) * k_a.clone(),
                r_b.clone() + S::from_int(t) * k_b.clone(),
            )),
            both,
            detail,
        }
    };

    // single lift pair
    if k_a.is_zero() && k_b.is_zero() {
        let p = memb(p_target, &c_p);
        let q = memb(q_target, &c_q);
        if p == q {
            return Some(fail(
                0,
                0,
                p,
                if p {
                    "both y+x and y−x are roots".to_string()
                } else {
                    "neither y+x nor y−x is a root".to_string()
                },
            ));
        }
        return None;
    }

    let p_finite = p_target.map(|f| f.step.is_zero()).unwrap_or(true);
    let q_finite = q_target.map(|f| f.step.is_zero()).unwrap_or(true);

    if p_finite || q_finite {
        let g = rat_gcd(k_a, k_b);
        debug_assert!(g.is_positive());
        if p_finite && q_finite {
            // infinitely many lift pairs, finitely many roots available
            return Some(search_xor_failure(
                k_a, k_b, r_a, r_b, p_target, q_target,
                "both candidate fibers are finite while the lifts are infinite",
            ));
        }
        // exactly one side finite; call it F and the other O
        let (f_target, o_target, f_const, o_const) = if p_finite {
            (p_target, q_target, c_p.clone(), c_q.clone())
        } else {
            (q_target, p_target, c_q.clone(), c_p.clone())
        };
        let w_nonempty = f_target.is_some_and(|f| {
            f.residues
                .iter()
                .any(|r| is_multiple_of(&(r.clone() - f_const.clone()), &g))
        });
        if w_nonempty {
            // the finite side is hit somewhere; periodicity of the other side
            // then forces either a both-roots or a neither-root lift pair
            return Some(search_xor_failure(
                k_a, k_b, r_a, r_b, p_target, q_target,
                "a finite fiber meets the lift lattice, which is incompatible with exactly-one",
            ));
        }
        // the finite side is never a root: the other side must always be one
        let Some(of) = o_target else {
            return Some(search_xor_failure(
                k_a, k_b, r_a, r_b, p_target, q_target,
                "neither candidate class provides roots on the lift lattice",
            ));
        };
        let count = (of.step.clone() / rat_gcd(&g, &of.step))
            .to_i64()
            .expect("cycle length is a positive integer");
        for m in 0..count {
            let val = o_const.clone() + S::from_int(m) * g.clone();
            if !of.contains_offset(&val) {
                return Some(search_xor_failure(
                    k_a, k_b, r_a, r_b, p_target, q_target,
                    "the infinite candidate fiber misses part of the lift lattice",
                ));
            }
        }
        return None;
    }

    // both targets periodic (or missing, i.e. constantly false): enumerate
    // one full period in each of s and t
    let period = |target: Option<&Fiber<S>>, k: &S| -> i64 {
        match target {
            None => 1,
            Some(f) => {
                if k.is_zero() {
                    1
                } else {
                    (f.step.clone() / rat_gcd(k, &f.step))
                        .to_i64()
                        .expect("period is a positive integer")
                }
            }
        }
    };
    let ls = lcm_i64(period(p_target, k_a), period(q_target, k_a));
    let lt = lcm_i64(period(p_target, k_b), period(q_target, k_b));
    for s in 0..ls {
        for t in 0..lt {
            let sv = S::from_int(s);
            let tv = S::from_int(t);
            let pv = c_p.clone() + sv.clone() * k_a.clone() + tv.clone() * k_b.clone();
            let qv = c_q.clone() - sv * k_a.clone() + tv * k_b.clone();
            let p = memb(p_target, &pv);
            let q = memb(q_target, &qv);
            if p == q {
                return Some(fail(
                    s,
                    t,
                    p,
                    if p {
                        "both y+x and y−x are roots at these lifts".to_string()
                    } else {
                        "neither y+x nor y−x is a root at these lifts".to_string()
                    },
                ));
            }
        }
    }
    None
}

/// Best-effort concrete counterexample for a decision that is already known
/// to fail: scan small lift pairs. The verdict does not depend on this; it
/// only enriches the violation report.
fn search_xor_failure<S: Scalar>(
    k_a: &S,
    k_b: &S,
    r_a: &S,
    r_b: &S,
    p_target: Option<&Fiber<S>>,
    q_target: Option<&Fiber<S>>,
    reason: &str,
) -> XorFailure<S> {
    let memb = |target: Option<&Fiber<S>>, val: &S| -> bool {
        target.is_some_and(|f| f.contains_offset(val))
    };
    for radius in [1i64, 2, 4, 8, 16, 32, 64] {
        for s in -radius..=radius {
            for t in -radius..=radius {
                let x = r_a.clone() + S::from_int(s) * k_a.clone();
                let y = r_b.clone() + S::from_int(t) * k_b.clone();
                let p = memb(p_target, &(y.clone() + x.clone()));
                let q = memb(q_target, &(y.clone() - x.clone()));
                if p == q {
                    return XorFailure {
                        lifts: Some((x, y)),
                        both: p,
                        detail: format!(
                            "{reason}: offending lifts at offsets ({}, {})",
                            Scalar::format_rat(&(r_a.clone() + S::from_int(s) * k_a.clone())),
                            Scalar::format_rat(&(r_b.clone() + S::from_int(t) * k_b.clone()))
                        ),
                    };
                }
            }
        }
    }
    XorFailure {
        lifts: None,
        both: false,
        detail: reason.to_string(),
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            let r = x % y;
            x = y;
            y = r;
        }
        x.abs()
    };
    (a / gcd(a, b)) * b
}

/// Orthogonal union of affine presentations sharing one δ: block-diagonal
/// base, concatenated fibers.
pub fn orthogonal_union_affine<S: Scalar>(
    parts: &[&AffinePresentation<S>],
) -> Result<AffinePresentation<S>> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty union".to_string()));
    }
    let total: usize = parts.iter().map(|p| p.base().space().dim()).sum();
    let mut gram = Mat::zero(total, total);
    let mut labels = Vec::with_capacity(total);
    let mut offset = 0;
    for (k, part) in parts.iter().enumerate() {
        let d = part.base().space().dim();
        for i in 0..d {
            for j in 0..d {
                gram.set(
                    offset + i,
                    offset + j,
                    part.base().space().gram().at(i, j).clone(),
                );
            }
            labels.push(format!("u{}_{}", k + 1, part.base().space().labels()[i]));
        }
        offset += d;
    }
    let space = FormSpace::new(labels, gram)?;
    let mut fibers = Vec::new();
    let mut shift = 0;
    for part in parts {
        let d = part.base().space().dim();
        for f in part.fibers() {
            let mut cls = Vector::zero(total);
            for i in 0..d {
                cls.0[shift + i] = f.class.0[i].clone();
            }
            fibers.push(Fiber::new(cls, f.step.clone(), f.residues.clone())?);
        }
        shift += d;
    }
    AffinePresentation::new(space, "delta".to_string(), fibers)
}
