//! Parity functions, subsystem verdicts, and the Lie-structure dictionary.
//!
//! A parity function on a root system assigns `0̄`/`1̄` to every root so that
//! parities add along root sums (`f(α) + f(β) = f(α+β)` whenever all three are
//! roots) and every isotropic root is odd.  The solution set is an affine
//! subspace of `GF(2)^R`; [`parity_space`] computes it exactly and
//! [`parity_functions`] enumerates it when it is small enough.
//!
//! [`is_subsystem`] answers whether a subset of roots forms a root system of
//! its own inside an ambient system, and classifies it when it does.
//! [`correspondence`] maps a classified tag to the contragredient Lie
//! (super)algebra it describes.

use crate::affine::AffinePresentation;
use crate::catalog::{AffineFamily, FiniteFamily, TypeTag};
use crate::classify::{classify_affine, classify_finite};
use crate::error::{Error, Result};
use crate::finite::{AxiomId, FiniteRootSystem, Violation};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Solution spaces with more than this many free bits are not enumerated.
pub const PARITY_ENUMERATION_CAP: usize = 20;

// ——————————————————————————— parity functions ———————————————————————————

/// A `GF(2)` grading of a concrete root set: `true` means odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityFunction<S> {
    entries: Vec<(Vector<S>, bool)>,
}

impl<S: Scalar> ParityFunction<S> {
    /// Assemble a function from explicit `(root, parity)` pairs.
    pub fn from_entries(entries: Vec<(Vector<S>, bool)>) -> Self {
        ParityFunction { entries }
    }

    /// The `(root, parity)` pairs, in the root order of the source system.
    pub fn entries(&self) -> &[(Vector<S>, bool)] {
        &self.entries
    }

    /// The parity of `v`, or `None` if `v` is not a root of the source system.
    pub fn get(&self, v: &Vector<S>) -> Option<bool> {
        self.entries.iter().find(|(r, _)| r == v).map(|(_, p)| *p)
    }

    /// How many roots are odd.
    pub fn odd_count(&self) -> usize {
        self.entries.iter().filter(|(_, p)| *p).count()
    }
}

/// The affine space of all parity functions of one system: a particular
/// solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct ParitySpace<S> {
    roots: Vec<Vector<S>>,
    particular: Vec<bool>,
    basis: Vec<Vec<bool>>,
}

impl<S: Scalar> ParitySpace<S> {
    /// Dimension of the solution space (number of free bits).
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Total number of parity functions.
    pub fn count(&self) -> Option<u64> {
        u64::try_from(self.dimension())
            .ok()
            .and_then(|d| 1u64.checked_shl(u32::try_from(d).ok()?))
    }

    /// One concrete parity function (free bits set to even).
    pub fn particular(&self) -> ParityFunction<S> {
        self.assemble(&self.particular)
    }

    /// The homogeneous solutions, as parity vectors aligned with the roots.
    pub fn basis(&self) -> &[Vec<bool>] {
        &self.basis
    }

    /// Every parity function, or `None` when the space has more than
    /// [`PARITY_ENUMERATION_CAP`] free bits.
    pub fn enumerate(&self) -> Option<Vec<ParityFunction<S>>> {
        let dim = self.basis.len();
        if dim > PARITY_ENUMERATION_CAP {
            return None;
        }
        let mut out = Vec::with_capacity(1 << dim);
        for mask in 0u64..(1u64 << dim) {
            let mut values = self.particular.clone();
            for (b, row) in self.basis.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    for (v, add) in values.iter_mut().zip(row) {
                        *v ^= add;
                    }
                }
            }
            out.push(self.assemble(&values));
        }
        out.sort_by_key(|f| f.entries.iter().map(|(_, p)| *p).collect::<Vec<_>>());
        Some(out)
    }

    fn assemble(&self, values: &[bool]) -> ParityFunction<S> {
        ParityFunction {
            entries: self.roots.iter().cloned().zip(values.iter().copied()).collect(),
        }
    }
}

/// Solve for all parity functions of `rs`.
///
/// Constraints: `f(α) + f(β) + f(α+β) = 0` for every unordered pair (including
/// `α = β`) whose sum is again a root, and `f(α) = 1` for isotropic `α`.
/// `f(−α) = f(α)` is **not** imposed; on `A_1` the parities of `α` and `−α`
/// are genuinely independent.  Returns `None` when the constraints are
/// inconsistent (no parity function exists).
pub fn parity_space<S: Scalar>(rs: &FiniteRootSystem<S>) -> Result<Option<ParitySpace<S>>> {
    let roots = rs.roots().to_vec();
    let n = roots.len();
    let mut sys = Gf2System::new(n);
    for i in 0..n {
        for j in i..n {
            let sum = roots[i].add(&roots[j]);
            if let Some(k) = rs.index_of(&sum) {
                sys.add_equation(&[i, j, k], false);
            }
        }
        if rs.is_isotropic(&roots[i]) {
            sys.add_equation(&[i], true);
        }
    }
    Ok(sys
        .solve()
        .map(|(particular, basis)| ParitySpace { roots, particular, basis }))
}

/// Enumerate every parity function of `rs`.
///
/// Returns the empty list when no parity function exists, and an error when
/// the solution space is too large to enumerate (see
/// [`PARITY_ENUMERATION_CAP`]).
pub fn parity_functions<S: Scalar>(rs: &FiniteRootSystem<S>) -> Result<Vec<ParityFunction<S>>> {
    match parity_space(rs)? {
        None => Ok(Vec::new()),
        Some(space) => space.enumerate().ok_or_else(|| {
            Error::Domain(format!(
                "the parity solution space has dimension {}; enumeration stops at {}",
                space.dimension(),
                PARITY_ENUMERATION_CAP
            ))
        }),
    }
}

/// Does `f` satisfy every parity constraint of `rs`?
///
/// Checks the same equations [`parity_space`] solves; `f` must be defined on
/// exactly the roots of `rs`.
pub fn is_parity_function<S: Scalar>(
    rs: &FiniteRootSystem<S>,
    f: &ParityFunction<S>,
) -> Result<bool> {
    if f.entries.len() != rs.len() {
        return Err(Error::InvalidInput(
            "the parity function is not defined on exactly the roots of the system".to_string(),
        ));
    }
    let value = |v: &Vector<S>| -> Result<bool> {
        f.get(v).ok_or_else(|| {
            Error::InvalidInput(format!("{} has no assigned parity", v.render()))
        })
    };
    let roots = rs.roots();
    for (i, a) in roots.iter().enumerate() {
        if rs.is_isotropic(a) && !value(a)? {
            return Ok(false);
        }
        for b in &roots[i..] {
            let sum = a.add(b);
            if rs.contains(&sum) && (value(a)? ^ value(b)? ^ value(&sum)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The canonical parity: `α` is odd iff `(α,α) = 0` or `2α` is a root.
///
/// This is always a parity function, and it is the grading under which the
/// system is the root system of a Lie superalgebra whenever there is one.
pub fn default_parity<S: Scalar>(rs: &FiniteRootSystem<S>) -> ParityFunction<S> {
    let two = S::from_int(2);
    let entries = rs
        .roots()
        .iter()
        .map(|r| {
            let odd = rs.is_isotropic(r) || rs.contains(&r.scale(&two));
            (r.clone(), odd)
        })
        .collect();
    ParityFunction { entries }
}

/// The canonical parity on a window of an affine presentation.
///
/// The doubling test is answered by the full infinite system, not the window,
/// so roots near the window boundary still get their true parity.  On
/// `A(0,2n)^(4)` this is how `δ_i` comes out even while `δ_i + δ` is odd: the
/// double `2δ_i + 2kδ` is a root exactly when `k` is odd.
pub fn default_parity_affine<S: Scalar>(
    p: &AffinePresentation<S>,
    bound: &S,
) -> Result<ParityFunction<S>> {
    let window = p.window(bound)?;
    let two = S::from_int(2);
    let entries = window
        .roots()
        .iter()
        .map(|r| {
            let odd = window.is_isotropic(r) || p.contains(&r.scale(&two));
            (r.clone(), odd)
        })
        .collect();
    Ok(ParityFunction { entries })
}

/// A window radius large enough for parity analysis: twice the sum of the
/// largest fiber step and the largest absolute residue, so that doubling an
/// interior root stays inside the window.
pub fn parity_window_bound<S: Scalar>(p: &AffinePresentation<S>) -> S {
    let mut max_step = S::zero();
    let mut max_residue = S::zero();
    for f in p.fibers() {
        if f.step > max_step {
            max_step = f.step.clone();
        }
        for r in &f.residues {
            if r.abs() > max_residue {
                max_residue = r.abs();
            }
        }
    }
    S::from_int(2) * (max_step + max_residue)
}

// ———————————————————————————— GF(2) elimination ————————————————————————————

/// A linear system over `GF(2)`, rows packed into `u64` words plus an
/// augmented right-hand bit.
struct Gf2System {
    cols: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    fn new(cols: usize) -> Self {
        Gf2System { cols, rows: Vec::new() }
    }

    fn words(&self) -> usize {
        self.cols.div_ceil(64)
    }

    /// Add the equation `Σ x_v = rhs`; repeated indices cancel in pairs.
    fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words()];
        for &v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs));
    }

    /// Reduced row echelon form.  Returns `None` when inconsistent, otherwise
    /// a particular solution (free variables zero) and a nullspace basis with
    /// one vector per free variable.
    fn solve(&self) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
        let bit = |row: &[u64], c: usize| (row[c / 64] >> (c % 64)) & 1 == 1;
        let mut mat = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..self.cols {
            let rank = pivots.len();
            let Some(r) = (rank..mat.len()).find(|&r| bit(&mat[r].0, col)) else {
                continue;
            };
            mat.swap(rank, r);
            let (pivot_row, pivot_rhs) = mat[rank].clone();
            for (i, (row, rhs)) in mat.iter_mut().enumerate() {
                if i != rank && bit(row, col) {
                    for (w, pw) in row.iter_mut().zip(&pivot_row) {
                        *w ^= pw;
                    }
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push(col);
        }
        if mat[pivots.len()..]
            .iter()
            .any(|(row, rhs)| *rhs && row.iter().all(|w| *w == 0))
        {
            return None;
        }
        let mut particular = vec![false; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = mat[i].1;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                if bit(&mat[i].0, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        Some((particular, basis))
    }
}

// ———————————————————————————— subsystem checks ————————————————————————————

/// What a subset of roots turned out to be.
#[derive(Clone, Debug)]
pub enum SubsystemVerdict<S> {
    /// The subset is an irreducible system of this type.
    Classified(TypeTag<S>),
    /// The subset is a valid but reducible system with these components.
    Components(Vec<TypeTag<S>>),
    /// The subset is not a root system; here is why.
    NotASystem(Vec<Violation<S>>),
}

impl<S: Scalar> std::fmt::Display for SubsystemVerdict<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubsystemVerdict::Classified(tag) => write!(f, "{tag}"),
            SubsystemVerdict::Components(tags) => {
                let names: Vec<String> = tags.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", names.join(" ⊕ "))
            }
            SubsystemVerdict::NotASystem(_) => write!(f, "not a system"),
        }
    }
}

/// Is `subset` itself a root system inside the finite system `ambient`?
///
/// Every vector must be a root of `ambient`.  The subset is re-examined with
/// the restriction of the form to its own span; note that parities are *not*
/// preserved by this restriction (`δ_i` is odd in `B(0,n)` but even in its
/// `B_n` subsystem, where `2δ_i` is missing).
pub fn is_subsystem<S: Scalar>(
    subset: &[Vector<S>],
    ambient: &FiniteRootSystem<S>,
) -> Result<(bool, SubsystemVerdict<S>)> {
    for v in subset {
        if !ambient.contains(v) {
            return Err(Error::InvalidInput(format!(
                "{} is not a root of the ambient system",
                v.render()
            )));
        }
    }
    subsystem_verdict(ambient.space(), subset)
}

/// Is `subset` (total-space vectors) a root system inside an affine ambient?
pub fn is_subsystem_affine<S: Scalar>(
    subset: &[Vector<S>],
    ambient: &AffinePresentation<S>,
) -> Result<(bool, SubsystemVerdict<S>)> {
    for v in subset {
        if !ambient.contains(v) {
            return Err(Error::InvalidInput(format!(
                "{} is not a root of the ambient presentation",
                v.render()
            )));
        }
    }
    subsystem_verdict(&ambient.total_space(), subset)
}

fn subsystem_verdict<S: Scalar>(
    ambient: &crate::linalg::FormSpace<S>,
    subset: &[Vector<S>],
) -> Result<(bool, SubsystemVerdict<S>)> {
    if subset.is_empty() {
        return Err(Error::InvalidInput(
            "a subsystem needs at least one root".to_string(),
        ));
    }
    let spanned = FiniteRootSystem::spanning(ambient, subset)?;
    let radical = spanned.space().radical_basis().len();
    if radical == 0 {
        let report = spanned.check_axioms()?;
        if !report.is_weak_grs {
            return Ok((false, SubsystemVerdict::NotASystem(report.violations)));
        }
        if report.is_irreducible {
            return Ok((true, SubsystemVerdict::Classified(classify_finite(&spanned)?)));
        }
        let tags = spanned
            .decompose()?
            .iter()
            .map(classify_finite)
            .collect::<Result<Vec<_>>>()?;
        return Ok((true, SubsystemVerdict::Components(tags)));
    }
    if radical == 1 {
        // One isotropic direction in the span: the subset can only be a
        // system in the affine (or finite Ã) sense.
        let p = AffinePresentation::from_explicit(spanned.space(), spanned.roots())?;
        let report = p.validate_agrs()?;
        if report.is_agrs != Some(true) {
            return Ok((false, SubsystemVerdict::NotASystem(report.violations)));
        }
        if report.is_irreducible {
            return Ok((true, SubsystemVerdict::Classified(classify_affine(&p)?)));
        }
        let (affine, finite) = p.decompose()?;
        let mut tags = Vec::new();
        for comp in &affine {
            tags.push(classify_affine(comp)?);
        }
        for comp in &finite {
            tags.push(classify_finite(comp)?);
        }
        return Ok((true, SubsystemVerdict::Components(tags)));
    }
    Ok((
        false,
        SubsystemVerdict::NotASystem(vec![Violation {
            axiom: AxiomId::DegenerateForm,
            witness: Vec::new(),
            detail: format!(
                "the restricted form has a {radical}-dimensional radical; a system allows at most one isotropic direction"
            ),
        }]),
    ))
}

// ——————————————————————— Lie-structure correspondence ———————————————————————

/// A classified type together with the contragredient Lie (super)algebra whose
/// real roots it describes.
#[derive(Clone, Debug)]
pub struct Correspondence<S> {
    pub tag: TypeTag<S>,
    /// The Lie structure this system belongs to, or what replaces it.
    pub lie_structure: String,
    /// Which regime of the dictionary the tag falls in.
    pub notes: String,
}

/// The five affine families whose systems contain no isotropic roots yet
/// belong to superalgebras: `B(0,n)^(1)`, `C(n+1)^(2)`, `A_{2n}^(2)`,
/// `A(0,2n−1)^(2)` and `A(0,2n)^(4)`.
fn affine_super_without_isotropic<S: Scalar>(fam: &AffineFamily<S>) -> bool {
    match fam {
        AffineFamily::Untwisted(FiniteFamily::B0(_)) => true,
        AffineFamily::CSuperTw2 { .. } => true,
        AffineFamily::ATw2 { n } => n % 2 == 0,
        AffineFamily::ASuperTw { m, .. } => *m == 0,
        _ => false,
    }
}

/// Does this affine family contain isotropic roots?
fn affine_has_isotropic<S: Scalar>(fam: &AffineFamily<S>) -> bool {
    match fam {
        AffineFamily::Untwisted(f) => f.has_isotropic(),
        AffineFamily::ATw2 { .. }
        | AffineFamily::DTw2 { .. }
        | AffineFamily::E6Tw2
        | AffineFamily::D4Tw3
        | AffineFamily::CSuperTw2 { .. } => false,
        // Twisted A(m,n) types sit over B(0,k) when one side is trivial, and
        // over the weak C/BC systems (isotropic classes) otherwise.
        AffineFamily::ASuperTw { m, n, .. } => *m != 0 && *n != 0,
        AffineFamily::DSuperTw2 { .. } => true,
        AffineFamily::AnnQ { .. } | AffineFamily::PeculiarQ { .. } => true,
    }
}

fn finite_lie_structure<S: Scalar>(fam: &FiniteFamily<S>) -> String {
    match fam {
        FiniteFamily::A(n) => format!("the simple Lie algebra sl({})", n + 1),
        FiniteFamily::B(n) => format!("the simple Lie algebra so({})", 2 * n + 1),
        FiniteFamily::C(n) => format!("the simple Lie algebra sp({})", 2 * n),
        FiniteFamily::D(n) => format!("the simple Lie algebra so({})", 2 * n),
        FiniteFamily::E6 | FiniteFamily::E7 | FiniteFamily::E8 | FiniteFamily::F4 | FiniteFamily::G2 => {
            format!("the exceptional simple Lie algebra {fam}")
        }
        FiniteFamily::B0(n) => {
            format!("the basic classical Lie superalgebra osp(1|{})", 2 * n)
        }
        FiniteFamily::ASuper(m, n) if m == n => {
            format!("the basic classical Lie superalgebra psl({}|{})", n + 1, n + 1)
        }
        FiniteFamily::ASuper(m, n) => {
            format!("the basic classical Lie superalgebra sl({}|{})", m + 1, n + 1)
        }
        FiniteFamily::BSuper(m, n) => {
            format!("the basic classical Lie superalgebra osp({}|{})", 2 * m + 1, 2 * n)
        }
        FiniteFamily::CSuper(n) => {
            format!("the basic classical Lie superalgebra osp(2|{})", 2 * n - 2)
        }
        FiniteFamily::DSuper(m, n) => {
            format!("the basic classical Lie superalgebra osp({}|{})", 2 * m, 2 * n)
        }
        FiniteFamily::D21(_) => {
            format!("the exceptional basic classical Lie superalgebra {fam}")
        }
        FiniteFamily::G3 => "the exceptional basic classical Lie superalgebra G(3)".to_string(),
        FiniteFamily::F4Super => {
            "the exceptional basic classical Lie superalgebra F(4)".to_string()
        }
        FiniteFamily::CWeak(1, 1) => "the Lie superalgebra psl(2|2)".to_string(),
        FiniteFamily::CWeak(..) | FiniteFamily::BCWeak(..) => {
            "no Lie superalgebra (a weak system only)".to_string()
        }
    }
}

/// The Lie structure behind a classified tag.
///
/// The dictionary: Euclidean systems belong to simple Lie algebras (plus
/// `osp(1|2n)` for `B(0,n)`); generalized root systems with isotropic roots
/// belong to the basic classical Lie superalgebras; affine systems belong to
/// symmetrizable affine Kac–Moody superalgebras, with two exceptional
/// regimes over `A(n,n)`: the finite `Ã(n,n)` is the root system of
/// `gl(n+1|n+1)`, and the infinite systems whose classes form `A(n,n)` are
/// quotients of `gl(n+1|n+1)^(1)` (rational quotients of `gl(2|2)^(1)` when
/// `n = 1`).
pub fn correspondence<S: Scalar>(tag: &TypeTag<S>) -> Result<Correspondence<S>> {
    match tag {
        TypeTag::Finite(fam) => {
            fam.validate()?;
            let lie_structure = finite_lie_structure(fam);
            let notes = if fam.is_grs() && !fam.has_isotropic() {
                "finite, nondegenerate form, no isotropic roots".to_string()
            } else if fam.is_grs() {
                "finite, nondegenerate form, isotropic roots present".to_string()
            } else {
                "weak system: the isotropic reflection axiom holds only in its weak form"
                    .to_string()
            };
            Ok(Correspondence { tag: tag.clone(), lie_structure, notes })
        }
        TypeTag::AnnFinite(n) => {
            if *n < 2 {
                return Err(Error::UnsupportedTag(
                    "Ã(n,n) requires n ≥ 2".to_string(),
                ));
            }
            Ok(Correspondence {
                tag: tag.clone(),
                lie_structure: format!("the Lie superalgebra gl({}|{})", n + 1, n + 1),
                notes: "finite with a one-dimensional form kernel".to_string(),
            })
        }
        TypeTag::Affine(fam) => {
            fam.validate()?;
            let (lie_structure, notes) = match fam {
                AffineFamily::Untwisted(FiniteFamily::ASuper(m, n)) if m == n => (
                    format!("an infinite quotient of gl({}|{})^(1)", n + 1, n + 1),
                    "infinite; the classes form A(n,n)".to_string(),
                ),
                AffineFamily::AnnQ { n, .. } => (
                    format!("an infinite quotient of gl({}|{})^(1)", n + 1, n + 1),
                    "infinite; the classes form A(n,n)".to_string(),
                ),
                AffineFamily::PeculiarQ { .. } => (
                    "a rational quotient of gl(2|2)^(1)".to_string(),
                    "infinite; the classes form A(1,1)".to_string(),
                ),
                _ if affine_super_without_isotropic(fam) => (
                    format!("the symmetrizable affine Kac–Moody superalgebra {fam}"),
                    "one of the five affine superalgebras containing no isotropic roots: \
                     B(0,n)^(1), C(n+1)^(2), A_{2n}^(2), A(0,2n−1)^(2), A(0,2n)^(4)"
                        .to_string(),
                ),
                _ if !affine_has_isotropic(fam) => (
                    format!("the affine Kac–Moody algebra {fam}"),
                    "infinite, one-dimensional form kernel, no isotropic roots".to_string(),
                ),
                _ => (
                    format!("the symmetrizable affine Kac–Moody superalgebra {fam}"),
                    "infinite, one-dimensional form kernel, isotropic roots present".to_string(),
                ),
            };
            Ok(Correspondence { tag: tag.clone(), lie_structure, notes })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_affine;
    use crate::catalog::finite_system;
    use crate::Rat;

    type Fam = FiniteFamily<Rat>;
    type Aff = AffineFamily<Rat>;

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn vec_of(space_dim: usize, coords: &[i64]) -> Vector<Rat> {
        assert_eq!(coords.len(), space_dim);
        Vector(coords.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn parity_counts_match_pinned_values() {
        // A_1 has no constraints at all: ±α are independent, 4 functions.
        let a1 = finite_system(&Fam::A(1)).unwrap();
        assert_eq!(parity_functions(&a1).unwrap().len(), 4);

        // A(m,n): the isotropic roots are forced odd, and every even root is
        // a sum of two isotropic ones, hence forced even. Exactly one
        // function.
        for fam in [Fam::ASuper(1, 0), Fam::ASuper(2, 1)] {
            let rs = finite_system(&fam).unwrap();
            let fns = parity_functions(&rs).unwrap();
            assert_eq!(fns.len(), 1, "{fam}");
            assert_eq!(fns[0], default_parity(&rs));
        }

        // B(0,n): the n parities f(δ_i) are independent bits — any choice
        // extends to a lattice homomorphism, with f(δ_i ± δ_j) the XOR and
        // f(2δ_i) = 0̄ forced. Hence 2^n functions; the canonical one and the
        // trivial one are the two that are constant on Weyl orbits.
        for n in [1u32, 2, 3] {
            let b0n = finite_system(&Fam::B0(n)).unwrap();
            assert_eq!(parity_functions(&b0n).unwrap().len(), 1 << n, "B(0,{n})");
        }
    }

    #[test]
    fn default_parity_is_always_a_solution() {
        let samples: Vec<Fam> = vec![
            Fam::A(2),
            Fam::B(2),
            Fam::G2,
            Fam::B0(2),
            Fam::ASuper(2, 1),
            Fam::BSuper(1, 1),
            Fam::CSuper(3),
            Fam::DSuper(2, 1),
            Fam::CWeak(1, 1),
        ];
        for fam in samples {
            let rs = finite_system(&fam).unwrap();
            let dflt = default_parity(&rs);
            assert!(
                is_parity_function(&rs, &dflt).unwrap(),
                "default parity of {fam} violates a constraint"
            );
            let all = parity_functions(&rs).unwrap();
            assert!(all.contains(&dflt), "default parity of {fam} not enumerated");
        }
    }

    #[test]
    fn parity_is_not_invariant_under_subsystem_restriction() {
        // δ_i is odd in B(0,2) (2δ_i is a root) but even in the B_2 subsystem
        // {±δ_i, ±δ_1±δ_2}, which drops the doubled roots.
        let ambient = finite_system(&Fam::B0(2)).unwrap();
        let d1 = vec_of(2, &[1, 0]);
        let subset: Vec<Vector<Rat>> = vec![
            vec_of(2, &[1, 0]),
            vec_of(2, &[-1, 0]),
            vec_of(2, &[0, 1]),
            vec_of(2, &[0, -1]),
            vec_of(2, &[1, 1]),
            vec_of(2, &[-1, -1]),
            vec_of(2, &[1, -1]),
            vec_of(2, &[-1, 1]),
        ];
        assert_eq!(default_parity(&ambient).get(&d1), Some(true));

        let (ok, verdict) = is_subsystem(&subset, &ambient).unwrap();
        assert!(ok);
        match verdict {
            SubsystemVerdict::Classified(TypeTag::Finite(Fam::B(2))) => {}
            other => panic!("expected B_2, got {other}"),
        }
        let sub = FiniteRootSystem::spanning(ambient.space(), &subset).unwrap();
        assert_eq!(default_parity(&sub).get(&d1), Some(false));
    }

    #[test]
    fn reflected_b2_is_not_a_subsystem_of_b21() {
        // In B(2,1) reflect the even subsystem B_2 = {±ε_i, ±ε_1±ε_2} through
        // the isotropic root ε_2 − δ_1. The image {±ε_1, ±δ_1, ±ε_1±δ_1}
        // contains the isotropic pair ε_1 − δ_1, ε_1 + δ_1 with neither sum
        // candidate (2ε_1 or 2δ_1) present, so it is not a system.
        let ambient = finite_system(&Fam::BSuper(2, 1)).unwrap();
        let alpha = vec_of(3, &[0, 1, -1]); // ε_2 − δ_1, isotropic
        assert!(ambient.is_isotropic(&alpha));
        let b2: Vec<Vector<Rat>> = vec![
            vec_of(3, &[1, 0, 0]),
            vec_of(3, &[-1, 0, 0]),
            vec_of(3, &[0, 1, 0]),
            vec_of(3, &[0, -1, 0]),
            vec_of(3, &[1, 1, 0]),
            vec_of(3, &[-1, -1, 0]),
            vec_of(3, &[1, -1, 0]),
            vec_of(3, &[-1, 1, 0]),
        ];
        let image: Vec<Vector<Rat>> = b2
            .iter()
            .map(|b| ambient.reflect(&alpha, b).unwrap())
            .collect();
        let expected: Vec<Vector<Rat>> = vec![
            vec_of(3, &[1, 0, 0]),
            vec_of(3, &[-1, 0, 0]),
            vec_of(3, &[0, 0, 1]),
            vec_of(3, &[0, 0, -1]),
            vec_of(3, &[1, 0, 1]),
            vec_of(3, &[-1, 0, -1]),
            vec_of(3, &[1, 0, -1]),
            vec_of(3, &[-1, 0, 1]),
        ];
        for e in &expected {
            assert!(image.contains(e), "missing {}", e.render());
        }
        let (ok, verdict) = is_subsystem(&image, &ambient).unwrap();
        assert!(!ok);
        match verdict {
            SubsystemVerdict::NotASystem(violations) => {
                assert!(violations.iter().any(|v| v.axiom == AxiomId::OddNeither));
            }
            other => panic!("expected a violation report, got {other}"),
        }
        assert_eq!(
            is_subsystem(&image, &ambient).unwrap().1.to_string(),
            "not a system"
        );
    }

    #[test]
    fn whole_system_is_a_subsystem_of_itself() {
        let rs = finite_system(&Fam::DSuper(2, 1)).unwrap();
        let (ok, verdict) = is_subsystem(&rs.roots().to_vec(), &rs).unwrap();
        assert!(ok);
        match verdict {
            SubsystemVerdict::Classified(TypeTag::Finite(Fam::DSuper(2, 1))) => {}
            other => panic!("expected D(2,1), got {other}"),
        }
    }

    #[test]
    fn affine_window_default_parity_matches_contains_rule() {
        // A(0,2)^(4): δ_1 is even (2δ_1 is not a root) but δ_1 + δ is odd
        // (2δ_1 + 2δ is a root, offset 2 ≡ 2 mod 4).
        let p = build_affine(&Aff::ASuperTw { m: 0, n: 2, twist: 4 }).unwrap();
        let bound = parity_window_bound(&p);
        let dflt = default_parity_affine(&p, &bound).unwrap();
        let window = p.window(&bound).unwrap();
        assert!(is_parity_function(&window, &dflt).unwrap());

        let dim = p.base().space().dim() + 1;
        let d1 = {
            let mut c = vec![0i64; dim];
            c[0] = 1;
            vec_of(dim, &c)
        };
        let d1_plus_delta = {
            let mut c = vec![0i64; dim];
            c[0] = 1;
            c[dim - 1] = 1;
            vec_of(dim, &c)
        };
        assert_eq!(dflt.get(&d1), Some(false));
        assert_eq!(dflt.get(&d1_plus_delta), Some(true));
    }

    #[test]
    fn correspondence_names_match_pinned_examples() {
        let gl33 = correspondence(&TypeTag::<Rat>::AnnFinite(2)).unwrap();
        assert!(gl33.lie_structure.contains("gl(3|3)"));

        let peculiar = correspondence(&TypeTag::Affine(Aff::PeculiarQ {
            q: Rat::from_ratio(1, 3),
        }))
        .unwrap();
        assert_eq!(peculiar.lie_structure, "a rational quotient of gl(2|2)^(1)");

        let a2n2 = correspondence(&TypeTag::Affine(Aff::ATw2 { n: 4 })).unwrap();
        assert!(a2n2.notes.contains("no isotropic roots"));
        assert!(a2n2.lie_structure.contains("superalgebra"));

        let a2n1_2 = correspondence(&TypeTag::Affine(Aff::ATw2 { n: 5 })).unwrap();
        assert!(a2n1_2.lie_structure.contains("Kac–Moody algebra"));

        let psl22 = correspondence(&TypeTag::Finite(Fam::CWeak(1, 1))).unwrap();
        assert!(psl22.lie_structure.contains("psl(2|2)"));

        let weak = correspondence(&TypeTag::Finite(Fam::BCWeak(2, 1))).unwrap();
        assert!(weak.lie_structure.contains("no Lie superalgebra"));

        let annq = correspondence(&TypeTag::Affine(Aff::AnnQ {
            n: 2,
            q: Rat::from_ratio(1, 3),
        }))
        .unwrap();
        assert!(annq.lie_structure.contains("quotient of gl(3|3)^(1)"));
    }
}
