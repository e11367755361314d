//! The catalog: named families of finite and affine root systems, their
//! standard models, and the type tags returned by classification.
//!
//! Finite families come in three groups:
//!
//! * the classical and exceptional reduced systems `A_n, …, G_2` (no
//!   isotropic roots);
//! * the "super" families `A(m,n), B(m,n), B(0,n), C(n), D(m,n), D(2,1;λ),
//!   G(3), F(4)` (generalized root systems with isotropic roots);
//! * the weak families `C(m,n)` and `BC(m,n)` (symmetric sets satisfying the
//!   weak isotropic axiom only).
//!
//! Standard models use orthogonal coordinates: `(ε_i, ε_j) = δ_ij`,
//! `(δ_i, δ_j) = −δ_ij`, `(ε_i, δ_j) = 0`. The `A` families are spanned
//! inside their ambient coordinates; `A(n,n)` is additionally divided by the
//! radical line spanned by `Σ(ε_i − δ_i)`.

use crate::error::{Error, Result};
use crate::finite::FiniteRootSystem;
use crate::linalg::{quotient_by, span_subspace, FormSpace, Mat, Vector};
use crate::scalar::Scalar;

/// A finite family tag. Scalar-parameterized only through `D(2,1;λ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FiniteFamily<S> {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    /// `B(0,n)`
    B0(u32),
    /// `A(m,n)`; `A(n,n)` is the quotient model
    ASuper(u32, u32),
    /// `B(m,n)` with `m ≥ 1`
    BSuper(u32, u32),
    /// `C(n)`, `n ≥ 2`
    CSuper(u32),
    /// `D(m,n)` with `m ≥ 2`
    DSuper(u32, u32),
    /// `D(2,1;λ)`, `λ ∉ {0, −1}`, canonicalized along its parameter orbit
    D21(S),
    G3,
    F4Super,
    /// weak `C(m,n)`
    CWeak(u32, u32),
    /// weak `BC(m,n)`
    BCWeak(u32, u32),
}

/// An affine family tag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AffineFamily<S> {
    /// `X^(1)`: every fiber is `Z`
    Untwisted(FiniteFamily<S>),
    /// `A_n^(2)`, `n ≥ 2`
    ATw2 { n: u32 },
    /// `D_n^(2)`, `n ≥ 3`
    DTw2 { n: u32 },
    /// `E_6^(2)`
    E6Tw2,
    /// `D_4^(3)`
    D4Tw3,
    /// `C(n)^(2)`, `n ≥ 2`
    CSuperTw2 { n: u32 },
    /// `A(m,n)^(2)` and `A(m,n)^(4)`
    ASuperTw { m: u32, n: u32, twist: u32 },
    /// `D(m,n)^(2)`, `m ≥ 2`
    DSuperTw2 { m: u32, n: u32 },
    /// `Ã(n,n)^(1)_q`: the quotient of the untwisted affinization of the
    /// non-quotient `A(n,n)` model by the line through `qδ + Σ(ε_i − δ_i)`
    AnnQ { n: u32, q: S },
    /// the peculiar family `C(1,1)^q`, `q ∈ (0, 1/2]`
    PeculiarQ { q: S },
}

/// The answer type of classification.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TypeTag<S> {
    Finite(FiniteFamily<S>),
    /// `Ã(n,n)`: the finite non-quotient model of `A(n,n)`, whose form has a
    /// one-dimensional radical
    AnnFinite(u32),
    Affine(AffineFamily<S>),
}

impl<S: Scalar> std::fmt::Display for FiniteFamily<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiniteFamily::A(n) => write!(f, "A_{n}"),
            FiniteFamily::B(n) => write!(f, "B_{n}"),
            FiniteFamily::C(n) => write!(f, "C_{n}"),
            FiniteFamily::D(n) => write!(f, "D_{n}"),
            FiniteFamily::E6 => write!(f, "E_6"),
            FiniteFamily::E7 => write!(f, "E_7"),
            FiniteFamily::E8 => write!(f, "E_8"),
            FiniteFamily::F4 => write!(f, "F_4"),
            FiniteFamily::G2 => write!(f, "G_2"),
            FiniteFamily::B0(n) => write!(f, "B(0,{n})"),
            FiniteFamily::ASuper(m, n) => write!(f, "A({m},{n})"),
            FiniteFamily::BSuper(m, n) => write!(f, "B({m},{n})"),
            FiniteFamily::CSuper(n) => write!(f, "C({n})"),
            FiniteFamily::DSuper(m, n) => write!(f, "D({m},{n})"),
            FiniteFamily::D21(l) => write!(f, "D(2,1;{})", l.format_rat()),
            FiniteFamily::G3 => write!(f, "G(3)"),
            FiniteFamily::F4Super => write!(f, "F(4)"),
            FiniteFamily::CWeak(m, n) => write!(f, "C({m},{n})"),
            FiniteFamily::BCWeak(m, n) => write!(f, "BC({m},{n})"),
        }
    }
}

impl<S: Scalar> std::fmt::Display for AffineFamily<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AffineFamily::Untwisted(b) => write!(f, "{b}^(1)"),
            AffineFamily::ATw2 { n } => write!(f, "A_{n}^(2)"),
            AffineFamily::DTw2 { n } => write!(f, "D_{n}^(2)"),
            AffineFamily::E6Tw2 => write!(f, "E_6^(2)"),
            AffineFamily::D4Tw3 => write!(f, "D_4^(3)"),
            AffineFamily::CSuperTw2 { n } => write!(f, "C({n})^(2)"),
            AffineFamily::ASuperTw { m, n, twist } => write!(f, "A({m},{n})^({twist})"),
            AffineFamily::DSuperTw2 { m, n } => write!(f, "D({m},{n})^(2)"),
            AffineFamily::AnnQ { n, q } => {
                write!(f, "A~({n},{n})^(1)_{{{}}}", q.format_rat())
            }
            AffineFamily::PeculiarQ { q } => write!(f, "C(1,1)^{{{}}}", q.format_rat()),
        }
    }
}

impl<S: Scalar> std::fmt::Display for TypeTag<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeTag::Finite(t) => write!(f, "{t}"),
            TypeTag::AnnFinite(n) => write!(f, "A~({n},{n})"),
            TypeTag::Affine(t) => write!(f, "{t}"),
        }
    }
}

impl<S: Scalar> FiniteFamily<S> {
    /// Canonical `A(m,n)` tag: `A(m,n) ≅ A(n,m)`, and the `A(1,1)` quotient
    /// coincides with the weak `C(1,1)`.
    pub fn a_super(m: u32, n: u32) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::UnsupportedTag(
                "A(0,0) does not span a space with a nondegenerate form".to_string(),
            ));
        }
        let (m, n) = if m >= n { (m, n) } else { (n, m) };
        if (m, n) == (1, 1) {
            return Ok(FiniteFamily::CWeak(1, 1));
        }
        Ok(FiniteFamily::ASuper(m, n))
    }

    /// Canonical weak `C(m,n)` tag: `C(m,n) ≅ C(n,m)`.
    pub fn c_weak(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::UnsupportedTag(
                "weak C(m,n) requires m, n ≥ 1".to_string(),
            ));
        }
        let (m, n) = if m >= n { (m, n) } else { (n, m) };
        Ok(FiniteFamily::CWeak(m, n))
    }

    /// Canonical weak `BC(m,n)` tag: `BC(m,n) ≅ BC(n,m)`.
    pub fn bc_weak(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::UnsupportedTag(
                "weak BC(m,n) requires m, n ≥ 1".to_string(),
            ));
        }
        let (m, n) = if m >= n { (m, n) } else { (n, m) };
        Ok(FiniteFamily::BCWeak(m, n))
    }

    /// Canonical `D(2,1;λ)` tag: λ is replaced by the smallest positive
    /// member of its parameter orbit under `λ ↦ 1/λ` and `λ ↦ −1−λ`.
    pub fn d21(lambda: S) -> Result<Self> {
        if lambda.is_zero() || lambda == -S::one() {
            return Err(Error::UnsupportedTag(
                "D(2,1;λ) requires λ ∉ {0, −1}".to_string(),
            ));
        }
        Ok(FiniteFamily::D21(d21_canonical_parameter(&lambda)))
    }

    /// Does the family contain isotropic roots?
    pub fn has_isotropic(&self) -> bool {
        !matches!(
            self,
            FiniteFamily::A(_)
                | FiniteFamily::B(_)
                | FiniteFamily::C(_)
                | FiniteFamily::D(_)
                | FiniteFamily::E6
                | FiniteFamily::E7
                | FiniteFamily::E8
                | FiniteFamily::F4
                | FiniteFamily::G2
                | FiniteFamily::B0(_)
        )
    }

    /// Is the standard model reduced (no root is a multiple of another except
    /// by ±1)?
    pub fn reduced(&self) -> bool {
        !matches!(
            self,
            FiniteFamily::B0(_)
                | FiniteFamily::BSuper(_, _)
                | FiniteFamily::G3
                | FiniteFamily::BCWeak(_, _)
        )
    }

    /// Is the family a generalized root system (as opposed to merely weak)?
    pub fn is_grs(&self) -> bool {
        !matches!(self, FiniteFamily::CWeak(_, _) | FiniteFamily::BCWeak(_, _))
    }

    /// Dimension of the standard model's space.
    pub fn dim(&self) -> u32 {
        match self {
            FiniteFamily::A(n) => *n,
            FiniteFamily::B(n) | FiniteFamily::C(n) | FiniteFamily::D(n) => *n,
            FiniteFamily::E6 => 6,
            FiniteFamily::E7 => 7,
            FiniteFamily::E8 => 8,
            FiniteFamily::F4 => 4,
            FiniteFamily::G2 => 2,
            FiniteFamily::B0(n) => *n,
            FiniteFamily::ASuper(m, n) => {
                if m == n {
                    2 * n
                } else {
                    m + n + 1
                }
            }
            FiniteFamily::BSuper(m, n) => m + n,
            FiniteFamily::CSuper(n) => *n,
            FiniteFamily::DSuper(m, n) => m + n,
            FiniteFamily::D21(_) => 3,
            FiniteFamily::G3 => 3,
            FiniteFamily::F4Super => 4,
            FiniteFamily::CWeak(m, n) => m + n,
            FiniteFamily::BCWeak(m, n) => m + n,
        }
    }

    /// Number of roots of the standard model.
    pub fn count(&self) -> u32 {
        match self {
            FiniteFamily::A(n) => n * (n + 1),
            FiniteFamily::B(n) | FiniteFamily::C(n) => 2 * n * n,
            FiniteFamily::D(n) => 2 * n * (n - 1),
            FiniteFamily::E6 => 72,
            FiniteFamily::E7 => 126,
            FiniteFamily::E8 => 240,
            FiniteFamily::F4 => 48,
            FiniteFamily::G2 => 12,
            FiniteFamily::B0(n) => 2 * n * n + 2 * n,
            FiniteFamily::ASuper(m, n) => {
                if m == n {
                    2 * (n + 1) * (2 * n + 1)
                } else {
                    m * (m + 1) + n * (n + 1) + 2 * (m + 1) * (n + 1)
                }
            }
            FiniteFamily::BSuper(m, n) => 2 * (m + n) * (m + n) + 2 * n,
            FiniteFamily::CSuper(n) => 2 * n * n - 2,
            FiniteFamily::DSuper(m, n) => 2 * (m + n) * (m + n) - 2 * m,
            FiniteFamily::D21(_) => 14,
            FiniteFamily::G3 => 28,
            FiniteFamily::F4Super => 36,
            FiniteFamily::CWeak(m, n) => 2 * (m + n) * (m + n),
            FiniteFamily::BCWeak(m, n) => 2 * (m + n) * (m + n) + 2 * (m + n),
        }
    }

    /// Validate the numeric constraints of the tag.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedTag(msg));
        match self {
            FiniteFamily::A(n) if *n < 1 => bad("A_n requires n ≥ 1".to_string()),
            FiniteFamily::B(n) if *n < 2 => bad("B_n requires n ≥ 2".to_string()),
            FiniteFamily::C(n) if *n < 2 => bad("C_n requires n ≥ 2".to_string()),
            FiniteFamily::D(n) if *n < 3 => bad("D_n requires n ≥ 3".to_string()),
            FiniteFamily::B0(n) if *n < 1 => bad("B(0,n) requires n ≥ 1".to_string()),
            FiniteFamily::ASuper(m, n) if *m == 0 && *n == 0 => {
                bad("A(0,0) is not supported".to_string())
            }
            FiniteFamily::ASuper(m, n) if *m == 1 && *n == 1 => {
                bad("the A(1,1) quotient is the weak C(1,1); use that tag".to_string())
            }
            FiniteFamily::ASuper(m, n) if m < n => {
                bad("A(m,n) tags are canonicalized with m ≥ n".to_string())
            }
            FiniteFamily::BSuper(m, n) if *m < 1 || *n < 1 => {
                bad("B(m,n) requires m, n ≥ 1 (use B(0,n) for m = 0)".to_string())
            }
            FiniteFamily::CSuper(n) if *n < 2 => bad("C(n) requires n ≥ 2".to_string()),
            FiniteFamily::DSuper(m, n) if *m < 2 || *n < 1 => {
                bad("D(m,n) requires m ≥ 2 and n ≥ 1".to_string())
            }
            FiniteFamily::D21(l) if l.is_zero() || *l == -S::one() => {
                bad("D(2,1;λ) requires λ ∉ {0, −1}".to_string())
            }
            FiniteFamily::CWeak(m, n) if *m < 1 || *n < 1 || m < n => {
                bad("weak C(m,n) requires m ≥ n ≥ 1".to_string())
            }
            FiniteFamily::BCWeak(m, n) if *m < 1 || *n < 1 || m < n => {
                bad("weak BC(m,n) requires m ≥ n ≥ 1".to_string())
            }
            _ => Ok(()),
        }
    }
}

impl<S: Scalar> AffineFamily<S> {
    /// Canonical untwisted tag. The weak families have no untwisted
    /// affinization: with every fiber equal to `Z`, both of `y ± x` are
    /// roots whenever both class-level candidates are, violating the
    /// exactly-one axiom.
    pub fn untwisted(f: FiniteFamily<S>) -> Result<Self> {
        f.validate()?;
        if !f.is_grs() {
            return Err(Error::UnsupportedTag(format!(
                "{f} is a weak family and has no untwisted affinization"
            )));
        }
        Ok(AffineFamily::Untwisted(f))
    }

    /// Canonical `A_n^(2)` tag; `A_3^(2)` coincides with `D_3^(2)` (their
    /// bases `C_2 ≅ B_2` match short-to-short, so the step patterns agree).
    pub fn a_tw2(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedTag("A_n^(2) requires n ≥ 2".to_string()));
        }
        if n == 3 {
            Ok(AffineFamily::DTw2 { n: 3 })
        } else {
            Ok(AffineFamily::ATw2 { n })
        }
    }

    /// Canonical `A(m,n)^(twist)` tag.
    ///
    /// * twist 2, both indices odd: sorted `m ≥ n`; `A(1,1)^(2)` is the
    ///   peculiar `C(1,1)^{1/2}`.
    /// * twist 2, mixed parity: the even index is written first;
    ///   `A(0,1)^(2)` coincides with `C(2)^(2)`.
    /// * twist 4: both indices even, sorted `m ≤ n` (the family is written
    ///   `A(0,2n)^(4)` when one index vanishes).
    pub fn a_super_tw(m: u32, n: u32, twist: u32) -> Result<Self> {
        match twist {
            2 => match (m % 2, n % 2) {
                (1, 1) => {
                    let (m, n) = if m >= n { (m, n) } else { (n, m) };
                    if (m, n) == (1, 1) {
                        Ok(AffineFamily::PeculiarQ {
                            q: S::from_ratio(1, 2),
                        })
                    } else {
                        Ok(AffineFamily::ASuperTw { m, n, twist: 2 })
                    }
                }
                (0, 1) | (1, 0) => {
                    let (e, o) = if m % 2 == 0 { (m, n) } else { (n, m) };
                    if (e, o) == (0, 1) {
                        Ok(AffineFamily::CSuperTw2 { n: 2 })
                    } else {
                        Ok(AffineFamily::ASuperTw {
                            m: e,
                            n: o,
                            twist: 2,
                        })
                    }
                }
                _ => Err(Error::UnsupportedTag(
                    "A(m,n)^(2) requires at least one odd index".to_string(),
                )),
            },
            4 => {
                if m % 2 != 0 || n % 2 != 0 || (m == 0 && n == 0) {
                    return Err(Error::UnsupportedTag(
                        "A(m,n)^(4) requires even indices, not both zero".to_string(),
                    ));
                }
                let (m, n) = if m <= n { (m, n) } else { (n, m) };
                Ok(AffineFamily::ASuperTw { m, n, twist: 4 })
            }
            t => Err(Error::UnsupportedTag(format!(
                "A(m,n)^({t}) is not an affine family"
            ))),
        }
    }

    /// Canonical `Ã(n,n)^(1)_q` tag: `q` is reduced modulo 1 and folded into
    /// `(0, 1/2]` (negating δ identifies `q` with `1 − q`). `q ≡ 0` gives the
    /// plain untwisted `A(n,n)^(1)` for `n ≥ 2` and is invalid for `n = 1`;
    /// the `n = 1` quotients are the peculiar systems.
    pub fn ann_q(n: u32, q: S) -> Result<Self> {
        if n < 1 {
            return Err(Error::UnsupportedTag(
                "Ã(n,n)^(1)_q requires n ≥ 1".to_string(),
            ));
        }
        let f = crate::scalar::rat_mod(&q, &S::one());
        if f.is_zero() {
            if n == 1 {
                return Err(Error::UnsupportedTag(
                    "Ã(1,1)^(1)_q requires a non-integral q".to_string(),
                ));
            }
            return Ok(AffineFamily::Untwisted(FiniteFamily::ASuper(n, n)));
        }
        let folded = if f > S::from_ratio(1, 2) {
            S::one() - f
        } else {
            f
        };
        if n == 1 {
            Ok(AffineFamily::PeculiarQ { q: folded })
        } else {
            Ok(AffineFamily::AnnQ { n, q: folded })
        }
    }

    /// Canonical peculiar tag `C(1,1)^q`, `q` folded into `(0, 1/2]`.
    pub fn peculiar(q: S) -> Result<Self> {
        let f = crate::scalar::rat_mod(&q, &S::one());
        if f.is_zero() {
            return Err(Error::UnsupportedTag(
                "C(1,1)^q requires a non-integral q".to_string(),
            ));
        }
        let folded = if f > S::from_ratio(1, 2) {
            S::one() - f
        } else {
            f
        };
        Ok(AffineFamily::PeculiarQ { q: folded })
    }

    /// Validate the numeric constraints of an already-canonical tag.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedTag(msg));
        match self {
            AffineFamily::Untwisted(f) => {
                f.validate()?;
                if !f.is_grs() {
                    return bad(format!("{f} has no untwisted affinization"));
                }
                Ok(())
            }
            AffineFamily::ATw2 { n } if *n < 2 => bad("A_n^(2) requires n ≥ 2".to_string()),
            AffineFamily::ATw2 { n } if *n == 3 => {
                bad("A_3^(2) is written canonically as D_3^(2)".to_string())
            }
            AffineFamily::DTw2 { n } if *n < 3 => bad("D_n^(2) requires n ≥ 3".to_string()),
            AffineFamily::CSuperTw2 { n } if *n < 2 => {
                bad("C(n)^(2) requires n ≥ 2".to_string())
            }
            AffineFamily::ASuperTw { m, n, twist } => {
                let canonical = AffineFamily::<S>::a_super_tw(*m, *n, *twist)?;
                if canonical != *self {
                    return bad(format!(
                        "A({m},{n})^({twist}) is written canonically as {canonical}"
                    ));
                }
                Ok(())
            }
            AffineFamily::DSuperTw2 { m, n } if *m < 2 || *n < 1 => {
                bad("D(m,n)^(2) requires m ≥ 2 and n ≥ 1".to_string())
            }
            AffineFamily::AnnQ { n, q } => {
                if *n < 2 {
                    return bad(
                        "Ã(1,1)^(1)_q tags are canonicalized to peculiar C(1,1)^q".to_string(),
                    );
                }
                if !q.is_positive() || *q > S::from_ratio(1, 2) {
                    return bad("Ã(n,n)^(1)_q requires q ∈ (0, 1/2]".to_string());
                }
                Ok(())
            }
            AffineFamily::PeculiarQ { q } => {
                if !q.is_positive() || *q > S::from_ratio(1, 2) {
                    return bad("C(1,1)^q requires q ∈ (0, 1/2]".to_string());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The order of the twist in the superscript of the tag. Quotient
    /// families carry the label `(1)`.
    pub fn twist(&self) -> u32 {
        match self {
            AffineFamily::Untwisted(_)
            | AffineFamily::AnnQ { .. }
            | AffineFamily::PeculiarQ { .. } => 1,
            AffineFamily::ATw2 { .. }
            | AffineFamily::DTw2 { .. }
            | AffineFamily::E6Tw2
            | AffineFamily::CSuperTw2 { .. }
            | AffineFamily::DSuperTw2 { .. } => 2,
            AffineFamily::D4Tw3 => 3,
            AffineFamily::ASuperTw { twist, .. } => *twist,
        }
    }

    /// Is the presented affine system reduced?
    pub fn reduced(&self) -> bool {
        match self {
            AffineFamily::Untwisted(f) => f.reduced(),
            AffineFamily::ATw2 { .. }
            | AffineFamily::DTw2 { .. }
            | AffineFamily::E6Tw2
            | AffineFamily::D4Tw3
            | AffineFamily::AnnQ { .. }
            | AffineFamily::PeculiarQ { .. } => true,
            AffineFamily::CSuperTw2 { .. } | AffineFamily::DSuperTw2 { .. } => false,
            AffineFamily::ASuperTw { m, n, twist } => {
                *twist == 2 && *m % 2 == 1 && *n % 2 == 1
            }
        }
    }
}

/// The smallest positive member of the `D(2,1;λ)` parameter orbit
/// `{λ, 1/λ, −1−λ, −1/(1+λ), −λ/(1+λ), −(1+λ)/λ}`.
pub fn d21_canonical_parameter<S: Scalar>(lambda: &S) -> S {
    let one = S::one();
    let l = lambda.clone();
    let orbit = vec![
        l.clone(),
        one.clone() / l.clone(),
        -one.clone() - l.clone(),
        -one.clone() / (one.clone() + l.clone()),
        -l.clone() / (one.clone() + l.clone()),
        -(one.clone() + l.clone()) / l.clone(),
    ];
    orbit
        .into_iter()
        .filter(|x| x.is_positive())
        .min()
        .expect("every parameter orbit off {0, −1} contains a positive member")
}

// ---------------------------------------------------------------------------
// canonical tag enumeration
// ---------------------------------------------------------------------------

/// Every canonical finite tag with numeric parameters at most `max`.
///
/// Aliases are skipped so that classification round-trips on the list:
/// `C_2 ≅ B_2`, `D_3 ≅ A_3`, `C(2) ≅ A(1,0)` and `D(2,1;1) ≅ D(2,1)` appear
/// only under their canonical names. `D(2,1;λ)` is sampled at the canonical
/// parameters `λ ∈ {1/2, 1/3}` (the orbits of `2` and `3`).
pub fn all_finite_tags<S: Scalar>(max: u32) -> Vec<FiniteFamily<S>> {
    let mut out: Vec<FiniteFamily<S>> = Vec::new();
    for n in 1..=max {
        out.push(FiniteFamily::A(n));
    }
    for n in 2..=max {
        out.push(FiniteFamily::B(n));
    }
    for n in 3..=max {
        out.push(FiniteFamily::C(n));
    }
    for n in 4..=max {
        out.push(FiniteFamily::D(n));
    }
    out.extend([
        FiniteFamily::E6,
        FiniteFamily::E7,
        FiniteFamily::E8,
        FiniteFamily::F4,
        FiniteFamily::G2,
    ]);
    for n in 1..=max {
        out.push(FiniteFamily::B0(n));
    }
    for m in 1..=max {
        for n in 0..m {
            out.push(FiniteFamily::ASuper(m, n));
        }
    }
    for n in 2..=max {
        out.push(FiniteFamily::ASuper(n, n));
    }
    for m in 1..=max {
        for n in 1..=max {
            out.push(FiniteFamily::BSuper(m, n));
        }
    }
    for n in 3..=max {
        out.push(FiniteFamily::CSuper(n));
    }
    for m in 2..=max {
        for n in 1..=max {
            out.push(FiniteFamily::DSuper(m, n));
        }
    }
    out.extend([
        FiniteFamily::D21(S::from_ratio(1, 2)),
        FiniteFamily::D21(S::from_ratio(1, 3)),
        FiniteFamily::G3,
        FiniteFamily::F4Super,
    ]);
    for m in 1..=max {
        for n in 1..=m {
            out.push(FiniteFamily::CWeak(m, n));
        }
    }
    for m in 1..=max {
        for n in 1..=m {
            out.push(FiniteFamily::BCWeak(m, n));
        }
    }
    out
}

/// Every canonical affine tag with numeric parameters at most `max`.
///
/// Untwisted tags range over the generalized-root-system entries of
/// [`all_finite_tags`] (the weak families have no untwisted affinization).
/// Twisted aliases are skipped (`A_3^(2) = D_3^(2)`, `A(1,1)^(2) =
/// C(1,1)^{1/2}`, `A(0,1)^(2) = C(2)^(2)`). The rational families are sampled
/// at `q ∈ {1/3, 1/2}` for the `Ã(n,n)^(1)_q` quotients and `q ∈ {1/4, 1/3,
/// 1/2}` for the peculiar `C(1,1)^q`.
pub fn all_affine_tags<S: Scalar>(max: u32) -> Vec<AffineFamily<S>> {
    let mut out: Vec<AffineFamily<S>> = Vec::new();
    for f in all_finite_tags::<S>(max) {
        if f.is_grs() {
            out.push(AffineFamily::Untwisted(f));
        }
    }
    for n in 2..=max {
        if n != 3 {
            out.push(AffineFamily::ATw2 { n });
        }
    }
    for n in 3..=max {
        out.push(AffineFamily::DTw2 { n });
    }
    out.extend([AffineFamily::E6Tw2, AffineFamily::D4Tw3]);
    for n in 2..=max {
        out.push(AffineFamily::CSuperTw2 { n });
    }
    // twist 2, both odd, m ≥ n; (1,1) is the peculiar C(1,1)^{1/2}
    for m in (1..=max).filter(|m| m % 2 == 1) {
        for n in (1..=m).filter(|n| n % 2 == 1) {
            if (m, n) != (1, 1) {
                out.push(AffineFamily::ASuperTw { m, n, twist: 2 });
            }
        }
    }
    // twist 2, even first; (0,1) is C(2)^(2)
    for m in (0..=max).filter(|m| m % 2 == 0) {
        for n in (1..=max).filter(|n| n % 2 == 1) {
            if (m, n) != (0, 1) {
                out.push(AffineFamily::ASuperTw { m, n, twist: 2 });
            }
        }
    }
    // twist 4, both even, m ≤ n, not both zero
    for m in (0..=max).filter(|m| m % 2 == 0) {
        for n in (m..=max).filter(|n| n % 2 == 0) {
            if (m, n) != (0, 0) {
                out.push(AffineFamily::ASuperTw { m, n, twist: 4 });
            }
        }
    }
    for m in 2..=max {
        for n in 1..=max {
            out.push(AffineFamily::DSuperTw2 { m, n });
        }
    }
    for n in 2..=max {
        for q in [S::from_ratio(1, 3), S::from_ratio(1, 2)] {
            out.push(AffineFamily::AnnQ { n, q });
        }
    }
    for q in [
        S::from_ratio(1, 4),
        S::from_ratio(1, 3),
        S::from_ratio(1, 2),
    ] {
        out.push(AffineFamily::PeculiarQ { q });
    }
    out
}

// ---------------------------------------------------------------------------
// standard finite models
// ---------------------------------------------------------------------------

fn eps_delta_space<S: Scalar>(m: usize, n: usize) -> FormSpace<S> {
    let mut labels = Vec::with_capacity(m + n);
    let mut diag = Vec::with_capacity(m + n);
    for i in 0..m {
        labels.push(format!("eps{}", i + 1));
        diag.push(1i64);
    }
    for j in 0..n {
        labels.push(format!("del{}", j + 1));
        diag.push(-1i64);
    }
    FormSpace::diagonal(&diag)
        .with_labels(labels)
        .expect("label count matches the diagonal length")
}

fn unit<S: Scalar>(dim: usize, i: usize) -> Vector<S> {
    let mut v = Vector::zero(dim);
    v.0[i] = S::one();
    v
}

/// `±e_i ± e_j` over the index range `[lo, lo+k)` in a `dim`-dimensional space.
fn pm_pairs<S: Scalar>(dim: usize, lo: usize, k: usize) -> Vec<Vector<S>> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = Vector::zero(dim);
                v.0[lo + i] = S::from_int(si);
                v.0[lo + j] = S::from_int(sj);
                out.push(v);
            }
        }
    }
    out
}

/// `±e_i` (scaled by `c`) over `[lo, lo+k)`.
fn pm_units<S: Scalar>(dim: usize, lo: usize, k: usize, c: i64) -> Vec<Vector<S>> {
    let mut out = Vec::new();
    for i in 0..k {
        for s in [c, -c] {
            let mut v = Vector::zero(dim);
            v.0[lo + i] = S::from_int(s);
            out.push(v);
        }
    }
    out
}

/// `±e_i ± d_j` for `i ∈ [0,m)`, `j ∈ [m, m+n)`.
fn pm_mixed<S: Scalar>(dim: usize, m: usize, n: usize) -> Vec<Vector<S>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = Vector::zero(dim);
                v.0[i] = S::from_int(si);
                v.0[m + j] = S::from_int(sj);
                out.push(v);
            }
        }
    }
    out
}

pub(crate) fn a_family_roots<S: Scalar>(m: usize, n: usize) -> (FormSpace<S>, Vec<Vector<S>>) {
    // roots ε_i − ε_j, δ_i − δ_j, ±(ε_i − δ_j) over m+1 ε's and n+1 δ's
    let dim = m + n + 2;
    let sp = eps_delta_space::<S>(m + 1, n + 1);
    let mut roots = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            if i != j {
                roots.push(unit::<S>(dim, i).sub(&unit(dim, j)));
            }
        }
    }
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                roots.push(unit::<S>(dim, m + 1 + i).sub(&unit(dim, m + 1 + j)));
            }
        }
    }
    for i in 0..=m {
        for j in 0..=n {
            let v = unit::<S>(dim, i).sub(&unit(dim, m + 1 + j));
            roots.push(v.neg());
            roots.push(v);
        }
    }
    (sp, roots)
}

/// The non-quotient `A(n,n)` model: roots of `a_family_roots(n,n)` restricted
/// to their span, where the form has the radical line `Σ(ε_i − δ_i)`.
pub fn ann_nonquotient_system<S: Scalar>(n: u32) -> Result<FiniteRootSystem<S>> {
    if n < 1 {
        return Err(Error::UnsupportedTag("Ã(n,n) requires n ≥ 1".to_string()));
    }
    let n = n as usize;
    let (sp, roots) = a_family_roots::<S>(n, n);
    FiniteRootSystem::spanning(&sp, &roots)
}

/// The quotient `A(n,n)` model together with the images of the marker
/// classes `ε_l − δ_l` (used by the affine quotient classification).
pub fn ann_base_with_markers<S: Scalar>(
    n: u32,
) -> Result<(FiniteRootSystem<S>, Vec<Vector<S>>)> {
    if n < 1 {
        return Err(Error::UnsupportedTag("A(n,n) requires n ≥ 1".to_string()));
    }
    let n = n as usize;
    let (sp, amb_roots) = a_family_roots::<S>(n, n);
    let sub = span_subspace(&sp, &amb_roots, "b")?;
    let inner_roots: Vec<Vector<S>> = amb_roots
        .iter()
        .map(|r| sub.coords(r).expect("roots generate the subspace"))
        .collect();
    let radical = sub.space().radical_basis();
    debug_assert_eq!(radical.len(), 1);
    let q = quotient_by(sub.space(), &radical)?;
    let mut roots: Vec<Vector<S>> = inner_roots.iter().map(|r| q.apply(r)).collect();
    roots.sort();
    roots.dedup();
    let base = FiniteRootSystem::new(q.target().clone(), roots)?;
    let dim = 2 * n + 2;
    let mut markers = Vec::new();
    for l in 0..=n {
        let amb = unit::<S>(dim, l).sub(&unit(dim, n + 1 + l));
        let inner = sub
            .coords(&amb)
            .expect("ε_l − δ_l is a root of the non-quotient model");
        markers.push(q.apply(&inner));
    }
    Ok((base, markers))
}

/// Construct the standard model of a finite family.
pub fn finite_system<S: Scalar>(family: &FiniteFamily<S>) -> Result<FiniteRootSystem<S>> {
    family.validate()?;
    match family {
        FiniteFamily::A(n) => {
            let n = *n as usize;
            let dim = n + 1;
            let sp = eps_delta_space::<S>(dim, 0);
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        roots.push(unit::<S>(dim, i).sub(&unit(dim, j)));
                    }
                }
            }
            FiniteRootSystem::spanning(&sp, &roots)
        }
        FiniteFamily::B(n) => {
            let n = *n as usize;
            let sp = eps_delta_space::<S>(n, 0);
            let mut roots = pm_pairs::<S>(n, 0, n);
            roots.extend(pm_units::<S>(n, 0, n, 1));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::C(n) => {
            let n = *n as usize;
            let sp = eps_delta_space::<S>(n, 0);
            let mut roots = pm_pairs::<S>(n, 0, n);
            roots.extend(pm_units::<S>(n, 0, n, 2));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::D(n) => {
            let n = *n as usize;
            let sp = eps_delta_space::<S>(n, 0);
            FiniteRootSystem::new(sp, pm_pairs::<S>(n, 0, n))
        }
        FiniteFamily::E8 => e8_system(),
        FiniteFamily::E7 => {
            let e8 = e8_system::<S>()?;
            let wall = unit::<S>(8, 6).add(&unit(8, 7));
            let kept: Vec<Vector<S>> = e8
                .roots()
                .iter()
                .filter(|r| e8.space().form(r, &wall).is_zero())
                .cloned()
                .collect();
            FiniteRootSystem::spanning(e8.space(), &kept)
        }
        FiniteFamily::E6 => {
            let e8 = e8_system::<S>()?;
            let wall1 = unit::<S>(8, 6).add(&unit(8, 7));
            let wall2 = unit::<S>(8, 5).add(&unit(8, 7));
            let kept: Vec<Vector<S>> = e8
                .roots()
                .iter()
                .filter(|r| {
                    e8.space().form(r, &wall1).is_zero() && e8.space().form(r, &wall2).is_zero()
                })
                .cloned()
                .collect();
            FiniteRootSystem::spanning(e8.space(), &kept)
        }
        FiniteFamily::F4 => {
            let sp = eps_delta_space::<S>(4, 0);
            let mut roots = pm_pairs::<S>(4, 0, 4);
            roots.extend(pm_units::<S>(4, 0, 4, 1));
            let half = S::from_ratio(1, 2);
            for mask in 0..16u32 {
                let mut v = Vector::zero(4);
                for i in 0..4 {
                    let s = if mask & (1 << i) != 0 {
                        -half.clone()
                    } else {
                        half.clone()
                    };
                    v.0[i] = s;
                }
                roots.push(v);
            }
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::G2 => {
            let gram = Mat::from_rows(&[
                Vector::from_ints(&[2, -1]),
                Vector::from_ints(&[-1, 2]),
            ])?;
            let sp = FormSpace::new(vec!["e1".to_string(), "e2".to_string()], gram)?;
            let mut roots = Vec::new();
            for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)] {
                roots.push(Vector::from_ints(&[a, b]));
                roots.push(Vector::from_ints(&[-a, -b]));
            }
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::B0(n) => {
            let n = *n as usize;
            let sp = eps_delta_space::<S>(0, n);
            let mut roots = pm_pairs::<S>(n, 0, n);
            roots.extend(pm_units::<S>(n, 0, n, 1));
            roots.extend(pm_units::<S>(n, 0, n, 2));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::ASuper(m, n) => {
            if m == n {
                let (base, _) = ann_base_with_markers::<S>(*n)?;
                Ok(base)
            } else {
                let (sp, roots) = a_family_roots::<S>(*m as usize, *n as usize);
                FiniteRootSystem::spanning(&sp, &roots)
            }
        }
        FiniteFamily::BSuper(m, n) => {
            let (m, n) = (*m as usize, *n as usize);
            let dim = m + n;
            let sp = eps_delta_space::<S>(m, n);
            let mut roots = pm_pairs::<S>(dim, 0, m);
            roots.extend(pm_units::<S>(dim, 0, m, 1));
            roots.extend(pm_pairs::<S>(dim, m, n));
            roots.extend(pm_units::<S>(dim, m, n, 1));
            roots.extend(pm_units::<S>(dim, m, n, 2));
            roots.extend(pm_mixed::<S>(dim, m, n));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::CSuper(n) => {
            let n = *n as usize;
            let sp = eps_delta_space::<S>(1, n - 1);
            let mut roots = pm_mixed::<S>(n, 1, n - 1);
            roots.extend(pm_pairs::<S>(n, 1, n - 1));
            roots.extend(pm_units::<S>(n, 1, n - 1, 2));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::DSuper(m, n) => {
            let (m, n) = (*m as usize, *n as usize);
            let dim = m + n;
            let sp = eps_delta_space::<S>(m, n);
            let mut roots = pm_pairs::<S>(dim, 0, m);
            roots.extend(pm_pairs::<S>(dim, m, n));
            roots.extend(pm_units::<S>(dim, m, n, 2));
            roots.extend(pm_mixed::<S>(dim, m, n));
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::D21(l) => {
            let half = S::from_ratio(1, 2);
            let d1 = -(S::one() + l.clone()) * half.clone();
            let d2 = half.clone();
            let d3 = l.clone() * half;
            let mut gram = Mat::zero(3, 3);
            gram.set(0, 0, d1);
            gram.set(1, 1, d2);
            gram.set(2, 2, d3);
            let sp = FormSpace::new(
                vec!["e1".to_string(), "e2".to_string(), "e3".to_string()],
                gram,
            )?;
            let mut roots = pm_units::<S>(3, 0, 3, 2);
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    for s3 in [1i64, -1] {
                        roots.push(Vector::from_ints(&[s1, s2, s3]));
                    }
                }
            }
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::G3 => {
            let gram = Mat::from_rows(&[
                Vector::from_ints(&[2, -1, 0]),
                Vector::from_ints(&[-1, 2, 0]),
                Vector::from_ints(&[0, 0, -2]),
            ])?;
            let sp = FormSpace::new(
                vec!["e1".to_string(), "e2".to_string(), "d".to_string()],
                gram,
            )?;
            let mut roots = Vec::new();
            for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)] {
                roots.push(Vector::from_ints(&[a, b, 0]));
                roots.push(Vector::from_ints(&[-a, -b, 0]));
            }
            roots.push(Vector::from_ints(&[0, 0, 1]));
            roots.push(Vector::from_ints(&[0, 0, -1]));
            roots.push(Vector::from_ints(&[0, 0, 2]));
            roots.push(Vector::from_ints(&[0, 0, -2]));
            // ±d ± (short G_2 root); short roots are ±e1, ±e2, ±(e1+e2)
            for (a, b) in [(1, 0), (0, 1), (1, 1)] {
                for sa in [1i64, -1] {
                    for sd in [1i64, -1] {
                        roots.push(Vector::from_ints(&[sa * a, sa * b, sd]));
                    }
                }
            }
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::F4Super => {
            let mut gram = Mat::zero(4, 4);
            gram.set(0, 0, S::one());
            gram.set(1, 1, S::one());
            gram.set(2, 2, S::one());
            gram.set(3, 3, S::from_int(-3));
            let sp = FormSpace::new(
                vec![
                    "e1".to_string(),
                    "e2".to_string(),
                    "e3".to_string(),
                    "d".to_string(),
                ],
                gram,
            )?;
            let mut roots = pm_pairs::<S>(4, 0, 3);
            roots.extend(pm_units::<S>(4, 0, 3, 1));
            roots.push(unit::<S>(4, 3));
            roots.push(unit::<S>(4, 3).neg());
            let half = S::from_ratio(1, 2);
            for mask in 0..16u32 {
                let mut v = Vector::zero(4);
                for i in 0..4 {
                    v.0[i] = if mask & (1 << i) != 0 {
                        -half.clone()
                    } else {
                        half.clone()
                    };
                }
                roots.push(v);
            }
            FiniteRootSystem::new(sp, roots)
        }
        FiniteFamily::CWeak(m, n) => c_weak_model(*m as usize, *n as usize),
        FiniteFamily::BCWeak(m, n) => bc_weak_model(*m as usize, *n as usize),
    }
}

/// The weak `C(m,n)` model over `eps/del` coordinates, for any `m, n ≥ 1`
/// (tags canonicalize to `m ≥ n`, but twisted affine builders need both
/// orientations).
pub(crate) fn c_weak_model<S: Scalar>(m: usize, n: usize) -> Result<FiniteRootSystem<S>> {
    let dim = m + n;
    let sp = eps_delta_space::<S>(m, n);
    let mut roots = pm_pairs::<S>(dim, 0, m);
    roots.extend(pm_units::<S>(dim, 0, m, 2));
    roots.extend(pm_pairs::<S>(dim, m, n));
    roots.extend(pm_units::<S>(dim, m, n, 2));
    roots.extend(pm_mixed::<S>(dim, m, n));
    FiniteRootSystem::new(sp, roots)
}

/// The weak `BC(m,n)` model over `eps/del` coordinates, for any `m, n ≥ 1`.
pub(crate) fn bc_weak_model<S: Scalar>(m: usize, n: usize) -> Result<FiniteRootSystem<S>> {
    let dim = m + n;
    let sp = eps_delta_space::<S>(m, n);
    let mut roots = pm_pairs::<S>(dim, 0, m);
    roots.extend(pm_units::<S>(dim, 0, m, 1));
    roots.extend(pm_units::<S>(dim, 0, m, 2));
    roots.extend(pm_pairs::<S>(dim, m, n));
    roots.extend(pm_units::<S>(dim, m, n, 1));
    roots.extend(pm_units::<S>(dim, m, n, 2));
    roots.extend(pm_mixed::<S>(dim, m, n));
    FiniteRootSystem::new(sp, roots)
}

fn e8_system<S: Scalar>() -> Result<FiniteRootSystem<S>> {
    let sp = eps_delta_space::<S>(8, 0);
    let mut roots = pm_pairs::<S>(8, 0, 8);
    let half = S::from_ratio(1, 2);
    for mask in 0..256u32 {
        if (mask.count_ones() % 2) != 0 {
            continue;
        }
        let mut v = Vector::zero(8);
        for i in 0..8 {
            v.0[i] = if mask & (1 << i) != 0 {
                -half.clone()
            } else {
                half.clone()
            };
        }
        roots.push(v);
    }
    FiniteRootSystem::new(sp, roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn make(f: FiniteFamily<Rat>) -> FiniteRootSystem<Rat> {
        finite_system(&f).unwrap()
    }

    #[test]
    fn enumerated_tags_are_canonical_and_distinct() {
        let fin = all_finite_tags::<Rat>(4);
        for f in &fin {
            f.validate().unwrap_or_else(|e| panic!("{f}: {e}"));
        }
        let mut seen = std::collections::HashSet::new();
        assert!(fin.iter().all(|f| seen.insert(format!("{f}"))));
        let aff = all_affine_tags::<Rat>(4);
        for a in &aff {
            a.validate().unwrap_or_else(|e| panic!("{a}: {e}"));
        }
        let mut seen = std::collections::HashSet::new();
        assert!(aff.iter().all(|a| seen.insert(format!("{a}"))));
        // spot sizes: the lists grow with the bound
        assert!(fin.len() > 40, "{}", fin.len());
        assert!(aff.len() > 60, "{}", aff.len());
    }

    #[test]
    fn classical_families_have_expected_counts() {
        for (fam, dim, count) in [
            (FiniteFamily::A(3), 3, 12),
            (FiniteFamily::B(2), 2, 8),
            (FiniteFamily::B(3), 3, 18),
            (FiniteFamily::C(3), 3, 18),
            (FiniteFamily::D(4), 4, 24),
            (FiniteFamily::F4, 4, 48),
            (FiniteFamily::G2, 2, 12),
            (FiniteFamily::E6, 6, 72),
            (FiniteFamily::E7, 7, 126),
            (FiniteFamily::E8, 8, 240),
        ] {
            let sys = make(fam.clone());
            assert_eq!(sys.space().dim() as u32, dim, "{fam}");
            assert_eq!(sys.len() as u32, count, "{fam}");
            assert_eq!(fam.dim(), dim, "{fam}");
            assert_eq!(fam.count(), count, "{fam}");
        }
    }

    #[test]
    fn super_families_match_their_count_formulas() {
        let fams = vec![
            FiniteFamily::B0(2),
            FiniteFamily::B0(3),
            FiniteFamily::ASuper(2, 1),
            FiniteFamily::ASuper(3, 0),
            FiniteFamily::ASuper(2, 2),
            FiniteFamily::BSuper(1, 1),
            FiniteFamily::BSuper(2, 1),
            FiniteFamily::BSuper(1, 2),
            FiniteFamily::CSuper(2),
            FiniteFamily::CSuper(3),
            FiniteFamily::DSuper(2, 1),
            FiniteFamily::DSuper(2, 2),
            FiniteFamily::D21(Rat::from_ratio(1, 2)),
            FiniteFamily::G3,
            FiniteFamily::F4Super,
            FiniteFamily::CWeak(1, 1),
            FiniteFamily::CWeak(2, 1),
            FiniteFamily::BCWeak(1, 1),
            FiniteFamily::BCWeak(2, 1),
        ];
        for fam in fams {
            let sys = make(fam.clone());
            assert_eq!(sys.space().dim() as u32, fam.dim(), "{fam}");
            assert_eq!(sys.len() as u32, fam.count(), "{fam}");
        }
    }

    #[test]
    fn grs_families_validate_as_grs() {
        let fams = vec![
            FiniteFamily::A(2),
            FiniteFamily::B(2),
            FiniteFamily::G2,
            FiniteFamily::B0(2),
            FiniteFamily::ASuper(2, 1),
            FiniteFamily::ASuper(2, 2),
            FiniteFamily::BSuper(1, 1),
            FiniteFamily::CSuper(2),
            FiniteFamily::DSuper(2, 1),
            FiniteFamily::D21(Rat::from_ratio(2, 3)),
            FiniteFamily::G3,
            FiniteFamily::F4Super,
        ];
        for fam in fams {
            let sys = make(fam.clone());
            let rep = sys.check_axioms().unwrap();
            assert!(rep.is_grs, "{fam}: {:?}", rep.violations);
            assert!(rep.is_irreducible, "{fam}");
            assert_eq!(
                rep.is_reduced,
                fam.reduced(),
                "{fam} reduced flag mismatch"
            );
            assert_eq!(
                sys.roots().iter().any(|r| sys.is_isotropic(r)),
                fam.has_isotropic(),
                "{fam} isotropy mismatch"
            );
        }
    }

    #[test]
    fn weak_families_are_weak_but_not_grs() {
        for fam in [
            FiniteFamily::CWeak(1, 1),
            FiniteFamily::CWeak(2, 1),
            FiniteFamily::BCWeak(1, 1),
            FiniteFamily::BCWeak(2, 2),
        ] {
            let sys = make(fam.clone());
            let rep = sys.check_axioms().unwrap();
            assert!(rep.is_weak_grs, "{fam}: {:?}", rep.violations);
            assert!(!rep.is_grs, "{fam}");
            assert!(rep.is_irreducible, "{fam}");
        }
    }

    #[test]
    fn exceptional_supers_are_valid_and_sized() {
        let d21 = make(FiniteFamily::D21(Rat::from_ratio(1, 3)));
        assert_eq!(d21.len(), 14);
        let dsuper21 = make(FiniteFamily::DSuper(2, 1));
        assert_eq!(dsuper21.len(), 14);
        // D(2,1;1) has the same gram diagonal shape as D(2,1) up to scale
        let rep = make(FiniteFamily::D21(Rat::from_int(1)))
            .check_axioms()
            .unwrap();
        assert!(rep.is_grs);
    }

    #[test]
    fn ann_nonquotient_has_radical_line_and_twelve_roots_for_n1() {
        let sys = ann_nonquotient_system::<Rat>(1).unwrap();
        assert_eq!(sys.len(), 12);
        assert_eq!(sys.space().dim(), 3);
        assert_eq!(sys.space().radical_basis().len(), 1);
        let rep = sys.check_axioms().unwrap();
        // degenerate form: not a GRS in the strict sense
        assert!(rep.has(crate::finite::AxiomId::DegenerateForm));
    }

    #[test]
    fn ann_quotient_base_counts() {
        let (b1, markers1) = ann_base_with_markers::<Rat>(1).unwrap();
        assert_eq!(b1.space().dim(), 2);
        assert_eq!(b1.len(), 8); // the weak C(1,1)
        assert_eq!(markers1.len(), 2);
        let (b2, markers2) = ann_base_with_markers::<Rat>(2).unwrap();
        assert_eq!(b2.space().dim(), 4);
        assert_eq!(b2.len(), 30); // 2(n+1)(2n+1) for n = 2
        assert_eq!(markers2.len(), 3);
        let rep = b2.check_axioms().unwrap();
        assert!(rep.is_grs, "{:?}", rep.violations);
    }

    #[test]
    fn canonical_constructors_normalize_their_arguments() {
        assert_eq!(
            FiniteFamily::<Rat>::a_super(1, 2).unwrap(),
            FiniteFamily::ASuper(2, 1)
        );
        assert_eq!(
            FiniteFamily::<Rat>::a_super(1, 1).unwrap(),
            FiniteFamily::CWeak(1, 1)
        );
        assert_eq!(
            FiniteFamily::<Rat>::bc_weak(1, 3).unwrap(),
            FiniteFamily::BCWeak(3, 1)
        );
        // the orbit of 2 under λ ↦ 1/λ, λ ↦ −1−λ contains 1/2
        assert_eq!(
            FiniteFamily::d21(Rat::from_int(2)).unwrap(),
            FiniteFamily::D21(Rat::from_ratio(1, 2))
        );
        assert!(FiniteFamily::d21(Rat::from_int(-1)).is_err());
        assert!(FiniteFamily::<Rat>::a_super(0, 0).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(FiniteFamily::<Rat>::A(2).to_string(), "A_2");
        assert_eq!(FiniteFamily::<Rat>::B0(3).to_string(), "B(0,3)");
        assert_eq!(
            FiniteFamily::D21(Rat::from_ratio(1, 2)).to_string(),
            "D(2,1;1/2)"
        );
        assert_eq!(
            TypeTag::<Rat>::AnnFinite(2).to_string(),
            "A~(2,2)"
        );
        assert_eq!(
            AffineFamily::Untwisted(FiniteFamily::<Rat>::B(3)).to_string(),
            "B_3^(1)"
        );
        assert_eq!(
            AffineFamily::<Rat>::ASuperTw {
                m: 4,
                n: 3,
                twist: 2
            }
            .to_string(),
            "A(4,3)^(2)"
        );
        assert_eq!(
            AffineFamily::AnnQ {
                n: 2,
                q: Rat::from_ratio(1, 3)
            }
            .to_string(),
            "A~(2,2)^(1)_{1/3}"
        );
        assert_eq!(
            AffineFamily::PeculiarQ {
                q: Rat::from_ratio(1, 3)
            }
            .to_string(),
            "C(1,1)^{1/3}"
        );
    }
}
