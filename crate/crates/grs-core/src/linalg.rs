//! Exact linear algebra over an ordered field: vectors, matrices, spaces
//! carrying a symmetric bilinear form, subspaces and quotient maps.
//!
//! All elimination is plain Gaussian elimination with exact rational
//! arithmetic; pivots are chosen deterministically (first nonzero column,
//! smallest row index), so every derived basis is reproducible.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A coordinate vector. Ordering is lexicographic on coordinates, which gives
/// all root enumerations in the crate a canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vector<S>(pub Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn at(&self, i: usize) -> &S {
        &self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Append one coordinate (used to lift base vectors into a total space).
    pub fn extended(&self, last: S) -> Self {
        let mut v = self.0.clone();
        v.push(last);
        Vector(v)
    }

    /// If `other == c · self` for a scalar `c`, return `c`. `self` must be
    /// nonzero.
    pub fn proportion_to(&self, other: &Self) -> Option<S> {
        debug_assert_eq!(self.dim(), other.dim());
        let i0 = self.0.iter().position(|c| !c.is_zero())?;
        let c = other.0[i0].clone() / self.0[i0].clone();
        if &self.scale(&c) == other {
            Some(c)
        } else {
            None
        }
    }

    /// Human-readable form `(a, b, …)` with exact rational entries.
    pub fn render(&self) -> String {
        let coords: Vec<String> = self.0.iter().map(|c| c.format_rat()).collect();
        format!("({})", coords.join(", "))
    }
}

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vector<S>]) -> Result<Self> {
        let cols = rows.first().map(Vector::dim).unwrap_or(0);
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch(
                "matrix rows have unequal lengths".to_string(),
            ));
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.0.iter().cloned()).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_vec(&self, i: usize) -> Vector<S> {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col_vec(&self, j: usize) -> Vector<S> {
        Vector((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Vector<S> {
        debug_assert_eq!(v.dim(), self.cols);
        Vector(
            (0..self.rows)
                .map(|i| {
                    let mut acc = S::zero();
                    for j in 0..self.cols {
                        acc = acc + self.at(i, j).clone() * v.0[j].clone();
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Mat<S>) -> Mat<S> {
        debug_assert_eq!(self.cols, other.rows);
        let mut out: Mat<S> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self.at(i, k).clone() * other.at(k, j).clone();
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + add);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat<S> {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Deterministic pivoting: columns are processed left to right and the
    /// pivot is the not-yet-used row of smallest index with a nonzero entry.
    pub fn rref(&self) -> (Mat<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            // swap pivot row into place
            if pr != next_row {
                for j in 0..m.cols {
                    let a = m.at(next_row, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(next_row, j, b);
                    m.set(pr, j, a);
                }
            }
            // scale pivot row to make the pivot 1
            let p = m.at(next_row, col).clone();
            for j in 0..m.cols {
                let v = m.at(next_row, j).clone() / p.clone();
                m.set(next_row, j, v);
            }
            // eliminate the column everywhere else
            for r in 0..m.rows {
                if r == next_row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for j in 0..m.cols {
                    let v = m.at(r, j).clone() - f.clone() * m.at(next_row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Deterministic basis of the right nullspace `{x : self · x = 0}`, one
    /// vector per free column in ascending column order.
    pub fn nullspace(&self) -> Vec<Vector<S>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = Vector::zero(self.cols);
            v.0[free] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v.0[pc] = -r.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self · x = b`, or `None` if inconsistent. Free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &Vector<S>) -> Option<Vector<S>> {
        debug_assert_eq!(b.dim(), self.rows);
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b.0[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the augmented column: inconsistent
        }
        let mut x = Vector::zero(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x.0[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat<S>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.at(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// A finite-dimensional vector space with labelled basis vectors and a
/// symmetric bilinear form given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormSpace<S> {
    basis_labels: Vec<String>,
    gram: Mat<S>,
}

impl<S: Scalar> FormSpace<S> {
    pub fn new(basis_labels: Vec<String>, gram: Mat<S>) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::InvalidInput("Gram matrix is not square".to_string()));
        }
        if gram.rows() != basis_labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis labels vs {}×{} Gram matrix",
                basis_labels.len(),
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix is not symmetric".to_string()));
        }
        Ok(FormSpace { basis_labels, gram })
    }

    /// Space with standard labels `x1, …, xn` and a diagonal form.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut gram = Mat::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            gram.set(i, i, S::from_int(e));
        }
        FormSpace {
            basis_labels: (1..=n).map(|i| format!("x{i}")).collect(),
            gram,
        }
    }

    /// Same space with new labels (used by catalogue constructors).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch(
                "label count differs from dimension".to_string(),
            ));
        }
        self.basis_labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn gram(&self) -> &Mat<S> {
        &self.gram
    }

    /// The bilinear form `(x, y)`.
    pub fn form(&self, x: &Vector<S>, y: &Vector<S>) -> S {
        debug_assert_eq!(x.dim(), self.dim());
        debug_assert_eq!(y.dim(), self.dim());
        let gy = self.gram.mul_vec(y);
        let mut acc = S::zero();
        for i in 0..self.dim() {
            acc = acc + x.0[i].clone() * gy.0[i].clone();
        }
        acc
    }

    /// The square norm `(x, x)`.
    pub fn norm(&self, x: &Vector<S>) -> S {
        self.form(x, x)
    }

    /// Deterministic basis of the radical `{x : (x, ·) = 0}`.
    pub fn radical_basis(&self) -> Vec<Vector<S>> {
        self.gram.nullspace()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }
}

/// A subspace of an ambient [`FormSpace`] with its own coordinates: the basis
/// is the first maximal independent subset of the generators (in the order
/// given) and the form is restricted.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    space: FormSpace<S>,
    /// Basis vectors in ambient coordinates.
    basis: Vec<Vector<S>>,
    /// Ambient-dim × sub-dim matrix whose columns are the basis vectors.
    basis_cols: Mat<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn space(&self) -> &FormSpace<S> {
        &self.space
    }

    pub fn basis(&self) -> &[Vector<S>] {
        &self.basis
    }

    /// Subspace coordinates of an ambient vector, when it lies in the span.
    pub fn coords(&self, ambient: &Vector<S>) -> Option<Vector<S>> {
        self.basis_cols.solve(ambient)
    }

    /// Ambient coordinates of a subspace vector.
    pub fn embed(&self, sub: &Vector<S>) -> Vector<S> {
        self.basis_cols.mul_vec(sub)
    }
}

/// Span of `generators` inside `ambient` as a [`Subspace`]. Basis labels are
/// `prefix1, prefix2, …`.
pub fn span_subspace<S: Scalar>(
    ambient: &FormSpace<S>,
    generators: &[Vector<S>],
    prefix: &str,
) -> Result<Subspace<S>> {
    for g in generators {
        if g.dim() != ambient.dim() {
            return Err(Error::DimensionMismatch(
                "generator does not live in the ambient space".to_string(),
            ));
        }
    }
    let mut basis: Vec<Vector<S>> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let mut rows = basis.clone();
        rows.push(g.clone());
        let m = Mat::from_rows(&rows)?;
        if m.rank() == rows.len() {
            basis.push(g.clone());
        }
    }
    let k = basis.len();
    let mut gram = Mat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, ambient.form(&basis[i], &basis[j]));
        }
    }
    let labels = (1..=k).map(|i| format!("{prefix}{i}")).collect();
    let space = FormSpace::new(labels, gram)?;
    let basis_cols = Mat::from_rows(&basis)?.transpose();
    Ok(Subspace {
        space,
        basis,
        basis_cols,
    })
}

/// Linear projection `source → target` whose kernel is a prescribed subspace
/// of the radical; the target carries the induced form, which is well defined
/// exactly because the kernel pairs to zero with everything.
///
/// `section` maps target coordinates back to canonical representatives: the
/// complement coordinates are a subset of the source basis vectors, chosen
/// greedily in ascending index order.
#[derive(Clone, Debug)]
pub struct QuotientMap<S> {
    source: FormSpace<S>,
    target: FormSpace<S>,
    /// target-dim × source-dim projection matrix.
    matrix: Mat<S>,
    /// source-dim × target-dim section matrix.
    section_mat: Mat<S>,
    kernel: Vec<Vector<S>>,
}

impl<S: Scalar> QuotientMap<S> {
    pub fn source(&self) -> &FormSpace<S> {
        &self.source
    }

    pub fn target(&self) -> &FormSpace<S> {
        &self.target
    }

    pub fn kernel(&self) -> &[Vector<S>] {
        &self.kernel
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        self.matrix.mul_vec(v)
    }

    /// Canonical representative of a target vector.
    pub fn section(&self, w: &Vector<S>) -> Vector<S> {
        self.section_mat.mul_vec(w)
    }
}

/// Quotient of `space` by the span of `kernel`, which must consist of radical
/// vectors (otherwise the form would not descend).
pub fn quotient_by<S: Scalar>(space: &FormSpace<S>, kernel: &[Vector<S>]) -> Result<QuotientMap<S>> {
    let dim = space.dim();
    let zero = Vector::zero(dim);
    for k in kernel {
        if k.dim() != dim {
            return Err(Error::DimensionMismatch(
                "kernel vector does not live in the space".to_string(),
            ));
        }
        if space.gram().mul_vec(k) != zero {
            return Err(Error::InvalidInput(format!(
                "kernel vector {} is not in the radical, so the form does not descend",
                k.render()
            )));
        }
    }
    // independent subset of the kernel, in the given order
    let mut ker: Vec<Vector<S>> = Vec::new();
    for k in kernel {
        if k.is_zero() {
            continue;
        }
        let mut rows = ker.clone();
        rows.push(k.clone());
        if Mat::from_rows(&rows)?.rank() == rows.len() {
            ker.push(k.clone());
        }
    }
    let r = ker.len();
    // complement coordinates: standard basis vectors that extend the kernel
    // to a basis of the whole space, greedily in ascending index order
    let mut chosen: Vec<usize> = Vec::new();
    {
        let mut rows = ker.clone();
        for i in 0..dim {
            let mut e = Vector::zero(dim);
            e.0[i] = S::one();
            rows.push(e.clone());
            if Mat::from_rows(&rows)?.rank() == rows.len() {
                chosen.push(i);
            } else {
                rows.pop();
            }
        }
    }
    let d_target = chosen.len();
    debug_assert_eq!(r + d_target, dim);
    // change-of-basis: columns are kernel vectors then chosen basis vectors
    let mut basis_cols = Mat::zero(dim, dim);
    for (j, k) in ker.iter().enumerate() {
        for i in 0..dim {
            basis_cols.set(i, j, k.0[i].clone());
        }
    }
    for (j, &c) in chosen.iter().enumerate() {
        basis_cols.set(c, r + j, S::one());
    }
    let inv = basis_cols
        .inverse()
        .expect("kernel plus complement forms a basis");
    // projection: the coefficients along the chosen complement vectors
    let mut matrix = Mat::zero(d_target, dim);
    for i in 0..d_target {
        for j in 0..dim {
            matrix.set(i, j, inv.at(r + i, j).clone());
        }
    }
    let mut section_mat = Mat::zero(dim, d_target);
    for (j, &c) in chosen.iter().enumerate() {
        section_mat.set(c, j, S::one());
    }
    let labels: Vec<String> = chosen.iter().map(|&c| space.labels()[c].clone()).collect();
    let mut gram = Mat::zero(d_target, d_target);
    for a in 0..d_target {
        for b in 0..d_target {
            gram.set(a, b, space.gram().at(chosen[a], chosen[b]).clone());
        }
    }
    let target = FormSpace::new(labels, gram)?;
    Ok(QuotientMap {
        source: space.clone(),
        target,
        matrix,
        section_mat,
        kernel: ker,
    })
}

/// Quotient of `space` by its whole radical.
pub fn build_quotient_map<S: Scalar>(space: &FormSpace<S>) -> Result<QuotientMap<S>> {
    let radical = space.radical_basis();
    quotient_by(space, &radical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type V = Vector<Q>;

    fn vi(coords: &[i64]) -> V {
        V::from_ints(coords)
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = Mat::<Q>::from_rows(&[vi(&[1, 2, 3]), vi(&[2, 4, 6]), vi(&[1, 0, 1])]).unwrap();
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::<Q>::from_rows(&[vi(&[2, 1]), vi(&[1, 1])]).unwrap();
        let x = m.solve(&vi(&[3, 2])).unwrap();
        assert_eq!(x, vi(&[1, 1]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));
        // inconsistent system
        let s = Mat::<Q>::from_rows(&[vi(&[1, 1]), vi(&[1, 1])]).unwrap();
        assert!(s.solve(&vi(&[1, 2])).is_none());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn form_space_basics() {
        let sp = FormSpace::<Q>::diagonal(&[1, -1]);
        let e1 = vi(&[1, 0]);
        let d1 = vi(&[0, 1]);
        assert_eq!(sp.norm(&e1), Q::from_int(1));
        assert_eq!(sp.norm(&d1), Q::from_int(-1));
        assert_eq!(sp.norm(&e1.add(&d1)), Q::from_int(0));
        assert!(sp.is_nondegenerate());
        assert!(sp.radical_basis().is_empty());
    }

    #[test]
    fn degenerate_space_has_radical() {
        // form (x, y) on a 3-dim space killing the last coordinate
        let sp = FormSpace::<Q>::diagonal(&[1, 1, 0]);
        let rad = sp.radical_basis();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], vi(&[0, 0, 1]));
        assert!(!sp.is_nondegenerate());
    }

    #[test]
    fn subspace_coordinates() {
        let amb = FormSpace::<Q>::diagonal(&[1, 1, 1]);
        let gens = [vi(&[1, -1, 0]), vi(&[0, 1, -1]), vi(&[1, 0, -1])];
        let sub = span_subspace(&amb, &gens, "b").unwrap();
        assert_eq!(sub.space().dim(), 2);
        let c = sub.coords(&vi(&[1, 0, -1])).unwrap();
        assert_eq!(sub.embed(&c), vi(&[1, 0, -1]));
        assert!(sub.coords(&vi(&[1, 1, 1])).is_none());
        // restricted form agrees with the ambient form
        let x = vi(&[1, -1, 0]);
        let y = vi(&[0, 1, -1]);
        let cx = sub.coords(&x).unwrap();
        let cy = sub.coords(&y).unwrap();
        assert_eq!(sub.space().form(&cx, &cy), amb.form(&x, &y));
    }

    #[test]
    fn quotient_by_radical_vector() {
        // 3-dim space, radical spanned by the last basis vector
        let sp = FormSpace::<Q>::diagonal(&[1, -1, 0]);
        let k = vi(&[0, 0, 1]);
        let q = quotient_by(&sp, &[k.clone()]).unwrap();
        assert_eq!(q.target().dim(), 2);
        assert!(q.apply(&k).is_zero());
        let v = vi(&[2, 3, 5]);
        // section ∘ apply differs from the identity by a kernel vector
        let w = q.section(&q.apply(&v));
        let diff = v.sub(&w);
        assert!(diff.proportion_to(&k).is_some() || k.proportion_to(&diff).is_some());
        // induced form agrees
        let a = vi(&[1, 2, 3]);
        let b = vi(&[0, 1, -4]);
        assert_eq!(
            q.target().form(&q.apply(&a), &q.apply(&b)),
            sp.form(&a, &b)
        );
    }

    #[test]
    fn quotient_rejects_non_radical_kernel() {
        let sp = FormSpace::<Q>::diagonal(&[1, -1, 0]);
        assert!(quotient_by(&sp, &[vi(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn quotient_by_skew_radical_line() {
        // radical is 2-dim; quotient by a skew line inside it
        let sp = FormSpace::<Q>::diagonal(&[1, 0, 0]);
        let k = vi(&[0, 1, 2]);
        let q = quotient_by(&sp, &[k.clone()]).unwrap();
        assert_eq!(q.target().dim(), 2);
        assert!(q.apply(&k).is_zero());
        // the induced space still has a 1-dim radical (image of the rest)
        assert_eq!(q.target().radical_basis().len(), 1);
    }
}
