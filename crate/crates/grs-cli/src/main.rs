//! `grs` — construct, validate, classify and decompose generalized root
//! systems with exact rational arithmetic.
//!
//! Every command is a thin shell over the library: it reads JSON documents
//! (see `grs catalog` for the format; pass `-` to read a document from
//! stdin), calls one library operation and renders the result.
//!
//! Exit codes, stable across releases:
//!   0 — success, or a positive verdict (valid / isomorphic / a subsystem);
//!   1 — a negative verdict (axioms violated, not isomorphic, not a
//!       subsystem, unclassifiable, odd reflection undefined);
//!   2 — the request could not be carried out (unparsable document or tag,
//!       unknown file, out-of-range index, inapplicable operation).

mod render;
mod tag;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grs_core::analysis;
use grs_core::builders::build_affine;
use grs_core::catalog::{ann_nonquotient_system, finite_system, TypeTag};
use grs_core::classify;
use grs_core::doc::{self, Metadata, ParsedSystem, SystemDocument};
use grs_core::finite::FiniteRootSystem;
use grs_core::iso::{brute_iso, iso_affine, isomorphic};
use grs_core::linalg::Vector;
use grs_core::oracle;
use grs_core::scalar::Scalar;
use grs_core::{Error, Rat};
use render::Format;

#[derive(Parser)]
#[command(
    name = "grs",
    version,
    about = "Exact-arithmetic toolkit for generalized root systems",
    propagate_version = true
)]
struct Cli {
    /// Report format for analysis commands (documents are always JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the document of a catalogued system to stdout.
    ///
    /// The tag is either a full display name — "B(0,2)", "A_4^(2)",
    /// "D(2,1;1/2)", "A~(2,2)^(1)_{1/3}", "C(1,1)^{1/2}" — or a family
    /// keyword ("A_super", "B0", "C_weak", …) with parameter flags. A finite
    /// name plus --twist k names the twist-k affinization of that base and
    /// must determine it uniquely.
    Catalog {
        /// Tag name or family keyword.
        name: String,
        /// Comma-separated numeric parameters, e.g. --params 2,1.
        #[arg(long)]
        params: Option<String>,
        /// First numeric parameter of a two-parameter family.
        #[arg(long)]
        m: Option<u32>,
        /// Second (or only) numeric parameter.
        #[arg(long)]
        n: Option<u32>,
        /// Quotient parameter (an exact rational, e.g. 1/3).
        #[arg(long)]
        q: Option<String>,
        /// The parameter λ of D(2,1;λ).
        #[arg(long)]
        lambda: Option<String>,
        /// Twist order: 1 for the untwisted affinization, ≥ 2 for twisted.
        #[arg(long)]
        twist: Option<u32>,
    },
    /// Check the axioms of the system in FILE and report violations.
    Verify {
        file: PathBuf,
    },
    /// Name the system in FILE and print the structure it corresponds to.
    Classify {
        file: PathBuf,
    },
    /// Split the system in FILE into irreducible components, one document per
    /// component.
    Decompose {
        file: PathBuf,
        /// Directory the component documents are written into.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Reflect root BETA in root ALPHA (indices into the sorted root list).
    Reflect {
        file: PathBuf,
        /// Index of the reflecting root α.
        #[arg(long)]
        alpha: usize,
        /// Index of the reflected root β.
        #[arg(long)]
        beta: usize,
    },
    /// Partition the roots into orbits of the everywhere-defined reflections
    /// (every even reflection, odd ones where unambiguous at all roots).
    Orbits {
        file: PathBuf,
    },
    /// Describe the parity functions of the system in FILE.
    Parity {
        file: PathBuf,
    },
    /// Decide whether the systems in two documents are isomorphic.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Materialize the window |offset| ≤ N of an affine presentation as a
    /// finite document on the total space.
    Window {
        file: PathBuf,
        /// Window bound N ≥ 0.
        #[arg(long)]
        n: u32,
    },
    /// Decide whether the listed roots form a subsystem, and of which type.
    Subsystem {
        file: PathBuf,
        /// Comma-separated root indices into the sorted root list.
        #[arg(long)]
        roots: String,
    },
    /// Brute-force verifiers used to cross-check the main algorithms.
    #[command(hide = true)]
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Re-derive the axiom report by direct enumeration (affine documents are
    /// checked on a window).
    Axioms {
        file: PathBuf,
        /// Window bound for affine documents (default 4).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Enumerate all parity functions by trying every odd/even assignment.
    Parity {
        file: PathBuf,
    },
    /// Decide isomorphism by permutation search instead of invariants.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Check the translation law for a pair of base classes by iterating
    /// actual reflections.
    Translation {
        file: PathBuf,
        /// Index of the class α in the sorted base root list.
        #[arg(long)]
        alpha: usize,
        /// Index of the class β in the sorted base root list.
        #[arg(long)]
        beta: usize,
        /// Number of double reflections to iterate.
        #[arg(long, default_value_t = 5)]
        m_max: u32,
    },
}

/// A command failure: message to stderr, process exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

/// Library errors on inputs map to exit code 2 (the request was malformed).
fn input_error(e: Error) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn main() -> ExitCode {
    // dying quietly on a closed pipe (`grs … | head`) is the expected
    // behavior for a line-oriented tool
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Catalog {
            name,
            params,
            m,
            n,
            q,
            lambda,
            twist,
        } => cmd_catalog(name, params, *m, *n, q, lambda, *twist),
        Command::Verify { file } => cmd_verify(fmt, file),
        Command::Classify { file } => cmd_classify(fmt, file),
        Command::Decompose { file, out_dir } => cmd_decompose(fmt, file, out_dir),
        Command::Reflect { file, alpha, beta } => cmd_reflect(fmt, file, *alpha, *beta),
        Command::Orbits { file } => cmd_orbits(fmt, file),
        Command::Parity { file } => cmd_parity(fmt, file),
        Command::Iso { file_a, file_b } => cmd_iso(fmt, file_a, file_b),
        Command::Window { file, n } => cmd_window(file, *n),
        Command::Subsystem { file, roots } => cmd_subsystem(fmt, file, roots),
        Command::Oracle { cmd } => match cmd {
            OracleCmd::Axioms { file, bound } => cmd_oracle_axioms(fmt, file, *bound),
            OracleCmd::Parity { file } => cmd_oracle_parity(fmt, file),
            OracleCmd::Iso { file_a, file_b } => cmd_oracle_iso(fmt, file_a, file_b),
            OracleCmd::Translation {
                file,
                alpha,
                beta,
                m_max,
            } => cmd_oracle_translation(fmt, file, *alpha, *beta, *m_max),
        },
    }
}

fn load(path: &Path) -> Result<ParsedSystem<Rat>, Failure> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| io_error(path, e))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| io_error(path, e))?
    };
    let document = doc::parse(&text).map_err(input_error)?;
    document.to_system::<Rat>().map_err(input_error)
}

fn finite_only(system: ParsedSystem<Rat>, what: &str) -> Result<FiniteRootSystem<Rat>, Failure> {
    match system {
        ParsedSystem::Finite(rs) => Ok(rs),
        ParsedSystem::Affine(_) => Err(Failure {
            code: 2,
            message: format!("{what} operates on finite documents; take a `window` first"),
        }),
    }
}

fn root_at<'a>(
    roots: &'a [Vector<Rat>],
    index: usize,
    what: &str,
) -> Result<&'a Vector<Rat>, Failure> {
    roots.get(index).ok_or_else(|| Failure {
        code: 2,
        message: format!(
            "{what} index {index} is out of range: the system has {} roots",
            roots.len()
        ),
    })
}

fn document_for(tag: &TypeTag<Rat>) -> grs_core::Result<SystemDocument> {
    let meta = Some(Metadata {
        tag: Some(tag.to_string()),
        notes: None,
    });
    Ok(match tag {
        TypeTag::Finite(f) => SystemDocument::from_finite(&finite_system(f)?, meta),
        TypeTag::AnnFinite(n) => SystemDocument::from_finite(&ann_nonquotient_system::<Rat>(*n)?, meta),
        TypeTag::Affine(a) => SystemDocument::from_affine(&build_affine(a)?, meta),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_catalog(
    name: &str,
    params: &Option<String>,
    m: Option<u32>,
    n: Option<u32>,
    q: &Option<String>,
    lambda: &Option<String>,
    twist: Option<u32>,
) -> CmdResult {
    let parse_list = |text: &str| -> Result<Vec<u32>, Failure> {
        text.split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Failure {
                    code: 2,
                    message: format!("--params entry '{p}' is not a small nonnegative integer"),
                })
            })
            .collect()
    };
    let flags = tag::TagFlags {
        params: match params {
            Some(s) => Some(parse_list(s)?),
            None => None,
        },
        m,
        n,
        q: match q {
            Some(s) => Some(tag::parse_rat(s).map_err(input_error)?),
            None => None,
        },
        lambda: match lambda {
            Some(s) => Some(tag::parse_rat(s).map_err(input_error)?),
            None => None,
        },
        twist,
    };
    let t = tag::resolve(name, &flags).map_err(input_error)?;
    let document = document_for(&t).map_err(input_error)?;
    print!("{}", doc::serialize(&document));
    Ok(0)
}

fn cmd_verify(fmt: Format, file: &Path) -> CmdResult {
    match load(file)? {
        ParsedSystem::Finite(rs) => {
            let report = rs.check_axioms().map_err(input_error)?;
            render::print_axiom_report(fmt, &report, None);
            Ok(u8::from(!report.is_weak_grs))
        }
        ParsedSystem::Affine(p) => {
            let report = p.validate_agrs().map_err(input_error)?;
            render::print_axiom_report(fmt, &report, None);
            Ok(u8::from(report.is_agrs != Some(true)))
        }
    }
}

fn cmd_classify(fmt: Format, file: &Path) -> CmdResult {
    let tag = match load(file)? {
        ParsedSystem::Finite(rs) => classify::classify_finite(&rs),
        ParsedSystem::Affine(p) => classify::classify_affine(&p),
    }
    .map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let corr = analysis::correspondence(&tag).map_err(input_error)?;
    render::print_classification(fmt, &corr);
    Ok(0)
}

fn cmd_decompose(fmt: Format, file: &Path, out_dir: &Path) -> CmdResult {
    fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
    let mut entries: Vec<render::ComponentEntry> = Vec::new();
    let mut write_doc = |index: usize,
                         kind: &'static str,
                         tag: Option<String>,
                         roots: usize,
                         document: &SystemDocument|
     -> Result<(), Failure> {
        let path = out_dir.join(format!("component_{index:02}.json"));
        fs::write(&path, doc::serialize(document)).map_err(|e| io_error(&path, e))?;
        entries.push(render::ComponentEntry {
            path: path.display().to_string(),
            kind,
            tag,
            roots,
        });
        Ok(())
    };
    match load(file)? {
        ParsedSystem::Finite(rs) => {
            let components = rs.decompose().map_err(input_error)?;
            for (i, c) in components.iter().enumerate() {
                let tag = classify::classify_finite(c).ok().map(|t| t.to_string());
                let meta = tag.clone().map(|t| Metadata {
                    tag: Some(t),
                    notes: None,
                });
                let document = SystemDocument::from_finite(c, meta);
                write_doc(i, "finite", tag, c.roots().len(), &document)?;
            }
        }
        ParsedSystem::Affine(p) => {
            let (affine, finite) = p.decompose().map_err(input_error)?;
            let mut index = 0;
            for c in &affine {
                let tag = classify::classify_affine(c).ok().map(|t| t.to_string());
                let meta = tag.clone().map(|t| Metadata {
                    tag: Some(t),
                    notes: None,
                });
                let document = SystemDocument::from_affine(c, meta);
                write_doc(index, "affine", tag, c.fibers().len(), &document)?;
                index += 1;
            }
            for c in &finite {
                let tag = classify::classify_finite(c).ok().map(|t| t.to_string());
                let meta = tag.clone().map(|t| Metadata {
                    tag: Some(t),
                    notes: None,
                });
                let document = SystemDocument::from_finite(c, meta);
                write_doc(index, "finite", tag, c.roots().len(), &document)?;
                index += 1;
            }
        }
    }
    render::print_components(fmt, &entries);
    Ok(0)
}

fn cmd_reflect(fmt: Format, file: &Path, alpha: usize, beta: usize) -> CmdResult {
    let rs = finite_only(load(file)?, "reflect")?;
    let roots = rs.roots();
    let a = root_at(roots, alpha, "--alpha")?.clone();
    let b = root_at(roots, beta, "--beta")?.clone();
    match rs.reflect(&a, &b) {
        Ok(image) => {
            render::print_root(fmt, &image);
            Ok(0)
        }
        Err(
            e @ (Error::AmbiguousReflection { .. } | Error::UndefinedReflection { .. }),
        ) => Err(Failure {
            code: 1,
            message: e.to_string(),
        }),
        Err(e) => Err(input_error(e)),
    }
}

fn cmd_orbits(fmt: Format, file: &Path) -> CmdResult {
    let rs = finite_only(load(file)?, "orbits")?;
    render::print_orbits(fmt, &rs.weyl_orbits());
    Ok(0)
}

/// Cap on the number of parity functions listed exhaustively.
const PARITY_LIST_CAP: u64 = 32;

fn parity_summary_finite(
    rs: &FiniteRootSystem<Rat>,
    window_note: Option<String>,
) -> Result<render::ParitySummary, Failure> {
    let space = analysis::parity_space(rs).map_err(input_error)?;
    let total_roots = rs.roots().len();
    Ok(match space {
        None => render::ParitySummary {
            consistent: false,
            dimension: None,
            count: None,
            default: None,
            all: None,
            window_note,
            total_roots,
        },
        Some(sp) => {
            let count = sp.count();
            let all = match count {
                Some(c) if c <= PARITY_LIST_CAP => sp.enumerate(),
                _ => None,
            };
            render::ParitySummary {
                consistent: true,
                dimension: Some(sp.dimension()),
                count,
                default: Some(analysis::default_parity(rs)),
                all,
                window_note,
                total_roots,
            }
        }
    })
}

fn cmd_parity(fmt: Format, file: &Path) -> CmdResult {
    let summary = match load(file)? {
        ParsedSystem::Finite(rs) => parity_summary_finite(&rs, None)?,
        ParsedSystem::Affine(p) => {
            let bound = analysis::parity_window_bound(&p);
            let window = p.window(&bound).map_err(input_error)?;
            let note = format!(
                "affine presentation: reporting on the window |offset| ≤ {}",
                bound.format_rat()
            );
            let mut summary = parity_summary_finite(&window, Some(note))?;
            if summary.consistent {
                let default = analysis::default_parity_affine(&p, &bound).map_err(input_error)?;
                summary.default = Some(default);
            }
            summary
        }
    };
    render::print_parity(fmt, &summary);
    Ok(u8::from(!summary.consistent))
}

fn cmd_iso(fmt: Format, file_a: &Path, file_b: &Path) -> CmdResult {
    let a = load(file_a)?;
    let b = load(file_b)?;
    let witness = match (&a, &b) {
        (ParsedSystem::Finite(x), ParsedSystem::Finite(y)) => isomorphic(x, y),
        (ParsedSystem::Affine(x), ParsedSystem::Affine(y)) => iso_affine(x, y),
        _ => {
            render::print_iso(fmt, None);
            return Ok(1);
        }
    };
    render::print_iso(fmt, witness.as_ref());
    Ok(u8::from(witness.is_none()))
}

fn cmd_window(file: &Path, n: u32) -> CmdResult {
    match load(file)? {
        ParsedSystem::Finite(_) => Err(Failure {
            code: 2,
            message: "window operates on affine documents".to_string(),
        }),
        ParsedSystem::Affine(p) => {
            let bound = Rat::from_integer(n.into());
            let window = p.window(&bound).map_err(input_error)?;
            let meta = Some(Metadata {
                tag: None,
                notes: Some(format!("window |offset| ≤ {n}")),
            });
            print!("{}", doc::serialize(&SystemDocument::from_finite(&window, meta)));
            Ok(0)
        }
    }
}

fn cmd_subsystem(fmt: Format, file: &Path, roots_arg: &str) -> CmdResult {
    let rs = finite_only(load(file)?, "subsystem")?;
    let all = rs.roots();
    let mut subset = Vec::new();
    for part in roots_arg.split(',') {
        let index: usize = part.trim().parse().map_err(|_| Failure {
            code: 2,
            message: format!("--roots entry '{part}' is not an index"),
        })?;
        subset.push(root_at(all, index, "--roots")?.clone());
    }
    let (is_subsystem, verdict) = analysis::is_subsystem(&subset, &rs).map_err(input_error)?;
    render::print_subsystem(fmt, is_subsystem, &verdict);
    Ok(u8::from(!is_subsystem))
}

fn cmd_oracle_axioms(fmt: Format, file: &Path, bound: Option<u32>) -> CmdResult {
    match load(file)? {
        ParsedSystem::Finite(rs) => {
            let (report, skipped) =
                oracle::brute_axioms(rs.space(), rs.roots()).map_err(input_error)?;
            render::print_axiom_report(fmt, &report, Some(skipped));
            Ok(u8::from(!report.is_weak_grs))
        }
        ParsedSystem::Affine(p) => {
            let bound = Rat::from_integer(bound.unwrap_or(4).into());
            let window = p.window(&bound).map_err(input_error)?;
            let (report, skipped) =
                oracle::brute_axioms(window.space(), window.roots()).map_err(input_error)?;
            render::print_axiom_report(fmt, &report, Some(skipped));
            Ok(u8::from(report.is_agrs != Some(true)))
        }
    }
}

fn cmd_oracle_parity(fmt: Format, file: &Path) -> CmdResult {
    let rs = finite_only(load(file)?, "oracle parity")?;
    let functions = oracle::brute_parity(&rs).map_err(input_error)?;
    let consistent = !functions.is_empty();
    let summary = render::ParitySummary {
        consistent,
        dimension: None,
        count: Some(functions.len() as u64),
        default: None,
        all: Some(functions),
        window_note: None,
        total_roots: rs.roots().len(),
    };
    render::print_parity(fmt, &summary);
    Ok(u8::from(!consistent))
}

fn cmd_oracle_iso(fmt: Format, file_a: &Path, file_b: &Path) -> CmdResult {
    let a = finite_only(load(file_a)?, "oracle iso")?;
    let b = finite_only(load(file_b)?, "oracle iso")?;
    let witness = brute_iso(&a, &b);
    render::print_iso(fmt, witness.as_ref());
    Ok(u8::from(witness.is_none()))
}

fn cmd_oracle_translation(
    fmt: Format,
    file: &Path,
    alpha: usize,
    beta: usize,
    m_max: u32,
) -> CmdResult {
    let p = match load(file)? {
        ParsedSystem::Affine(p) => p,
        ParsedSystem::Finite(_) => {
            return Err(Failure {
                code: 2,
                message: "oracle translation operates on affine documents".to_string(),
            })
        }
    };
    let base_roots = p.base().roots().to_vec();
    let a = root_at(&base_roots, alpha, "--alpha")?;
    let b = root_at(&base_roots, beta, "--beta")?;
    let report = oracle::brute_translation(&p, a, b, m_max).map_err(input_error)?;
    let passed = report.mismatches.is_empty();
    render::print_oracle_report(fmt, &report);
    Ok(u8::from(!passed))
}
