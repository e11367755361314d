//! Tag grammar for the `catalog` subcommand.
//!
//! A tag names a catalogued system either exactly as the library displays it
//! — `B(0,2)`, `A(2,1)`, `D(2,1;1/2)`, `G_2`, `A_4^(2)`, `C(1,1)^{1/2}`,
//! `A~(2,2)^(1)_{1/3}` — or as a bare family keyword (`A_super`, `BC_weak`,
//! …) whose parameters come in by flag. A finite name combined with
//! `--twist k` is read as an affinization: the name is first tried as a
//! display form of a twisted family (`A_4^(2)` is the family of that name,
//! not a twist of `A_4`), and otherwise as a base, in which case the pair
//! (base, twist) must determine the family uniquely.

use grs_core::catalog::{AffineFamily, FiniteFamily, TypeTag};
use grs_core::classify::affinization;
use grs_core::scalar::Scalar;
use grs_core::{Error, Rat, Result};

/// Parameters passed by flag rather than inside the tag name.
#[derive(Debug, Default, Clone)]
pub struct TagFlags {
    pub params: Option<Vec<u32>>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub q: Option<Rat>,
    pub lambda: Option<Rat>,
    pub twist: Option<u32>,
}

/// Parse a rational CLI argument such as `2`, `-1/3` or `0.5`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    <Rat as Scalar>::parse_rat(text.trim()).map_err(Error::Parse)
}

fn parse_u32(text: &str, ctx: &str) -> Result<u32> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("'{text}' in '{ctx}' is not a small nonnegative integer")))
}

fn parse_u32_list(text: &str, ctx: &str) -> Result<Vec<u32>> {
    text.split(',').map(|p| parse_u32(p, ctx)).collect()
}

/// The name with its affine decorations stripped.
struct NameParts {
    base: String,
    twist: Option<u32>,
    q: Option<Rat>,
}

fn split_name(name: &str) -> Result<NameParts> {
    let mut base = name.trim().replace('Ã', "A~");
    let mut twist = None;
    let mut q = None;
    if let Some(pos) = base.find("_{") {
        let inner = base[pos + 2..]
            .strip_suffix('}')
            .ok_or_else(|| Error::Parse(format!("unterminated `_{{…}}` in tag '{name}'")))?
            .to_string();
        q = Some(parse_rat(&inner)?);
        base.truncate(pos);
    }
    if let Some(pos) = base.find("^(") {
        let inner = base[pos + 2..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated `^(…)` in tag '{name}'")))?
            .to_string();
        twist = Some(parse_u32(&inner, name)?);
        base.truncate(pos);
    } else if let Some(pos) = base.find("^{") {
        if q.is_some() {
            return Err(Error::Parse(format!(
                "tag '{name}' carries two quotient parameters"
            )));
        }
        let inner = base[pos + 2..]
            .strip_suffix('}')
            .ok_or_else(|| Error::Parse(format!("unterminated `^{{…}}` in tag '{name}'")))?
            .to_string();
        q = Some(parse_rat(&inner)?);
        base.truncate(pos);
    }
    Ok(NameParts { base, twist, q })
}

/// Syntactic shape of the un-decorated base name.
enum Shape {
    /// `X_n` — a classical letter with a subscript.
    Classical(String, u32),
    /// `X(a,b,…)`, with the optional `;λ` of `D(2,1;λ)`.
    Paren(String, Vec<u32>, Option<Rat>),
    /// `A~(n,n)` — the base of the quotient families.
    Ann(u32),
}

fn one_param(flags: &TagFlags, ctx: &str) -> Result<u32> {
    match (&flags.params, flags.m, flags.n) {
        (Some(ps), None, None) if ps.len() == 1 => Ok(ps[0]),
        (Some(_), None, None) => Err(Error::InvalidInput(format!(
            "'{ctx}' takes one numeric parameter"
        ))),
        (None, None, Some(n)) => Ok(n),
        (None, None, None) => Err(Error::InvalidInput(format!(
            "'{ctx}' needs a parameter: pass --n or --params"
        ))),
        _ => Err(Error::InvalidInput(format!(
            "'{ctx}' takes one numeric parameter; use --n or --params, not --m"
        ))),
    }
}

fn two_params(flags: &TagFlags, ctx: &str) -> Result<(u32, u32)> {
    match (&flags.params, flags.m, flags.n) {
        (Some(ps), None, None) if ps.len() == 2 => Ok((ps[0], ps[1])),
        (Some(_), None, None) => Err(Error::InvalidInput(format!(
            "'{ctx}' takes two numeric parameters"
        ))),
        (None, Some(m), Some(n)) => Ok((m, n)),
        (None, _, _) => Err(Error::InvalidInput(format!(
            "'{ctx}' needs two parameters: pass --m and --n, or --params m,n"
        ))),
        _ => Err(Error::InvalidInput(format!(
            "'{ctx}' takes parameters either as --params or as --m/--n, not both"
        ))),
    }
}

/// Parse the base name; the boolean reports whether the numeric parameter
/// flags were consumed (keyword forms) or must be absent (explicit forms).
fn parse_base(base: &str, flags: &TagFlags) -> Result<(Shape, bool)> {
    let b = base.trim();
    match b.to_ascii_lowercase().as_str() {
        "a" | "b" | "c" | "d" | "e" | "f" | "g" => {
            let letter = b.to_ascii_uppercase();
            return Ok((Shape::Classical(letter, one_param(flags, b)?), true));
        }
        "a_super" => {
            let (m, n) = two_params(flags, b)?;
            return Ok((Shape::Paren("A".into(), vec![m, n], None), true));
        }
        "b_super" => {
            let (m, n) = two_params(flags, b)?;
            return Ok((Shape::Paren("B".into(), vec![m, n], None), true));
        }
        "b0" | "b_0" => {
            let n = one_param(flags, b)?;
            return Ok((Shape::Paren("B".into(), vec![0, n], None), true));
        }
        "c_super" => {
            let n = one_param(flags, b)?;
            return Ok((Shape::Paren("C".into(), vec![n], None), true));
        }
        "d_super" => {
            let (m, n) = two_params(flags, b)?;
            return Ok((Shape::Paren("D".into(), vec![m, n], None), true));
        }
        "c_weak" => {
            let (m, n) = two_params(flags, b)?;
            return Ok((Shape::Paren("C".into(), vec![m, n], None), true));
        }
        "bc_weak" | "bc" => {
            let (m, n) = two_params(flags, b)?;
            return Ok((Shape::Paren("BC".into(), vec![m, n], None), true));
        }
        "a_tilde" => {
            let n = one_param(flags, b)?;
            return Ok((Shape::Ann(n), true));
        }
        "d21" | "d_21" => return Ok((Shape::Paren("D".into(), vec![2, 1], None), false)),
        "g3" | "g_3" => return Ok((Shape::Paren("G".into(), vec![3], None), false)),
        "f4_super" | "f_4_super" => {
            return Ok((Shape::Paren("F".into(), vec![4], None), false))
        }
        _ => {}
    }
    if let Some(open) = b.find('(') {
        let inner = b[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("expected ')' at the end of '{b}'")))?;
        let letter = &b[..open];
        if letter == "A~" {
            let ps = parse_u32_list(inner, b)?;
            if ps.len() != 2 || ps[0] != ps[1] {
                return Err(Error::Parse(format!(
                    "'{b}': the quotient base is written A~(n,n) with equal entries"
                )));
            }
            return Ok((Shape::Ann(ps[0]), false));
        }
        if !matches!(letter, "A" | "B" | "C" | "D" | "E" | "F" | "G" | "BC") {
            return Err(Error::UnsupportedTag(format!(
                "'{letter}' is not a family letter"
            )));
        }
        if let Some((left, lam)) = inner.split_once(';') {
            let ps = parse_u32_list(left, b)?;
            if letter != "D" || ps != [2, 1] {
                return Err(Error::Parse(format!(
                    "'{b}': a parameter after ';' belongs to D(2,1;λ) only"
                )));
            }
            return Ok((Shape::Paren("D".into(), ps, Some(parse_rat(lam)?)), false));
        }
        return Ok((Shape::Paren(letter.into(), parse_u32_list(inner, b)?, None), false));
    }
    let (letter, digits) = match b.split_once('_') {
        Some((l, d)) => (l, d),
        None => match b.find(|c: char| c.is_ascii_digit()) {
            Some(pos) => (&b[..pos], &b[pos..]),
            None => ("", ""),
        },
    };
    if matches!(letter, "A" | "B" | "C" | "D" | "E" | "F" | "G")
        && !digits.is_empty()
        && digits.chars().all(|c| c.is_ascii_digit())
    {
        return Ok((Shape::Classical(letter.into(), parse_u32(digits, b)?), false));
    }
    Err(Error::UnsupportedTag(format!("unrecognized tag name '{b}'")))
}

/// The finite family a base shape denotes on its own.
fn finite_family(shape: &Shape, name: &str) -> Result<FiniteFamily<Rat>> {
    let fam = match shape {
        Shape::Classical(letter, n) => match (letter.as_str(), *n) {
            ("A", n) => FiniteFamily::A(n),
            ("B", n) => FiniteFamily::B(n),
            ("C", n) => FiniteFamily::C(n),
            ("D", n) => FiniteFamily::D(n),
            ("E", 6) => FiniteFamily::E6,
            ("E", 7) => FiniteFamily::E7,
            ("E", 8) => FiniteFamily::E8,
            ("F", 4) => FiniteFamily::F4,
            ("G", 2) => FiniteFamily::G2,
            _ => {
                return Err(Error::UnsupportedTag(format!(
                    "'{name}' is not a finite family"
                )))
            }
        },
        Shape::Paren(letter, args, lam) => match (letter.as_str(), args.as_slice(), lam) {
            ("D", [2, 1], Some(l)) => FiniteFamily::d21(l.clone())?,
            ("A", [m, n], None) => FiniteFamily::a_super(*m, *n)?,
            ("B", [0, n], None) => FiniteFamily::B0(*n),
            ("B", [m, n], None) => FiniteFamily::BSuper(*m, *n),
            ("C", [n], None) => FiniteFamily::CSuper(*n),
            ("C", [m, n], None) => FiniteFamily::c_weak(*m, *n)?,
            ("D", [m, n], None) => FiniteFamily::DSuper(*m, *n),
            ("G", [3], None) => FiniteFamily::G3,
            ("F", [4], None) => FiniteFamily::F4Super,
            ("BC", [m, n], None) => FiniteFamily::bc_weak(*m, *n)?,
            _ => {
                return Err(Error::UnsupportedTag(format!(
                    "'{name}' is not a finite family"
                )))
            }
        },
        Shape::Ann(_) => unreachable!("quotient bases are handled by the caller"),
    };
    fam.validate()?;
    Ok(fam)
}

/// The affine family a decorated name denotes directly, if the (shape, twist)
/// pair is itself a display form — as opposed to a base to be affinized.
fn kac_label(shape: &Shape, twist: u32) -> Option<Result<AffineFamily<Rat>>> {
    match (shape, twist) {
        (Shape::Classical(l, n), 2) if l == "A" => Some(AffineFamily::a_tw2(*n)),
        (Shape::Classical(l, 4), 3) if l == "D" => Some(Ok(AffineFamily::D4Tw3)),
        (Shape::Classical(l, n), 2) if l == "D" => Some(Ok(AffineFamily::DTw2 { n: *n })),
        (Shape::Classical(l, 6), 2) if l == "E" => Some(Ok(AffineFamily::E6Tw2)),
        (Shape::Paren(l, args, None), 2) if l == "C" && args.len() == 1 => {
            Some(Ok(AffineFamily::CSuperTw2 { n: args[0] }))
        }
        (Shape::Paren(l, args, None), t @ (2 | 4)) if l == "A" && args.len() == 2 => {
            Some(AffineFamily::a_super_tw(args[0], args[1], t))
        }
        (Shape::Paren(l, args, None), 2) if l == "D" && args.len() == 2 => {
            Some(Ok(AffineFamily::DSuperTw2 {
                m: args[0],
                n: args[1],
            }))
        }
        _ => None,
    }
}

fn merge_twist(from_name: Option<u32>, from_flag: Option<u32>) -> Result<Option<u32>> {
    match (from_name, from_flag) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidInput(format!(
            "the name carries twist {a} but --twist {b} was given"
        ))),
        (a, b) => Ok(a.or(b)),
    }
}

fn merge_q(from_name: Option<Rat>, from_flag: Option<Rat>) -> Result<Option<Rat>> {
    match (from_name, from_flag) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidInput(
            "the name carries a quotient parameter but a different --q was given".to_string(),
        )),
        (a, b) => Ok(a.or(b)),
    }
}

/// Resolve a tag name plus flags to a catalogue type.
pub fn resolve(name: &str, flags: &TagFlags) -> Result<TypeTag<Rat>> {
    let parts = split_name(name)?;
    let twist = merge_twist(parts.twist, flags.twist)?;
    let q = merge_q(parts.q, flags.q.clone())?;
    let (mut shape, used_param_flags) = parse_base(&parts.base, flags)?;
    if !used_param_flags
        && (flags.params.is_some() || flags.m.is_some() || flags.n.is_some())
    {
        return Err(Error::InvalidInput(format!(
            "'{}' already carries its parameters; drop --params/--m/--n",
            parts.base
        )));
    }

    if let Some(lam) = &flags.lambda {
        match &mut shape {
            Shape::Paren(l, args, slot @ None) if l.as_str() == "D" && args.as_slice() == [2, 1] => {
                *slot = Some(lam.clone());
            }
            Shape::Paren(_, _, Some(_)) => {
                return Err(Error::InvalidInput(
                    "the name already carries λ; drop --lambda".to_string(),
                ))
            }
            _ => {
                return Err(Error::InvalidInput(
                    "--lambda applies only to D(2,1;λ)".to_string(),
                ))
            }
        }
    }

    if let Shape::Ann(n) = shape {
        if matches!(twist, Some(t) if t != 1) {
            return Err(Error::UnsupportedTag(format!(
                "A~({n},{n}) admits only the label ^(1)"
            )));
        }
        return match q {
            Some(qv) => Ok(TypeTag::Affine(AffineFamily::ann_q(n, qv)?)),
            None if twist == Some(1) => Ok(TypeTag::Affine(AffineFamily::ann_q(
                n,
                Rat::from_integer(0.into()),
            )?)),
            None => Ok(TypeTag::AnnFinite(n)),
        };
    }

    if let Some(qv) = q {
        if matches!(twist, Some(t) if t != 1) {
            return Err(Error::UnsupportedTag(
                "a quotient parameter goes with the label ^(1)".to_string(),
            ));
        }
        let fam = finite_family(&shape, &parts.base)?;
        return match fam {
            FiniteFamily::ASuper(a, b) if a == b => {
                Ok(TypeTag::Affine(AffineFamily::ann_q(a, qv)?))
            }
            FiniteFamily::CWeak(1, 1) => Ok(TypeTag::Affine(AffineFamily::peculiar(qv)?)),
            other => Err(Error::UnsupportedTag(format!(
                "--q does not apply to {other}: only A(n,n)^(1) and C(1,1) take a quotient parameter"
            ))),
        };
    }

    match twist {
        None => Ok(TypeTag::Finite(finite_family(&shape, &parts.base)?)),
        Some(1) => Ok(TypeTag::Affine(AffineFamily::untwisted(finite_family(
            &shape,
            &parts.base,
        )?)?)),
        Some(t) => {
            if let Some(direct) = kac_label(&shape, t) {
                let fam = direct?;
                fam.validate()?;
                return Ok(TypeTag::Affine(fam));
            }
            let base = finite_family(&shape, &parts.base)?;
            Ok(TypeTag::Affine(affinization(&base, t)?))
        }
    }
}
