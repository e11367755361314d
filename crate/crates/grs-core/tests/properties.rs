//! Law-style properties on randomized inputs: reflection involutions and
//! form invariance, axiom-flag implications, agreement between the symbolic
//! affine validator and the brute-force window oracle, normalization
//! idempotence, decomposition partitions, and document round-trips.

use proptest::prelude::*;
use proptest::sample::Index;

use grs_core::affine::AffinePresentation;
use grs_core::analysis::{default_parity, is_parity_function};
use grs_core::builders::build_affine;
use grs_core::catalog::{all_affine_tags, all_finite_tags, finite_system};
use grs_core::classify::classify_finite;
use grs_core::doc::{self, SystemDocument};
use grs_core::finite::{orthogonal_union, FiniteRootSystem};
use grs_core::iso::isomorphic;
use grs_core::linalg::Vector;
use grs_core::oracle::brute_axioms;
use grs_core::scalar::Scalar;
use grs_core::Rat;
use num_traits::Zero;

type Q = Rat;

fn qi(n: i64) -> Q {
    <Q as Scalar>::from_int(n)
}

fn pick_finite(ix: &Index) -> FiniteRootSystem<Q> {
    let tags = all_finite_tags::<Q>(3);
    finite_system(&tags[ix.index(tags.len())]).unwrap()
}

fn pick_affine(ix: &Index) -> AffinePresentation<Q> {
    let tags = all_affine_tags::<Q>(2);
    build_affine(&tags[ix.index(tags.len())]).unwrap()
}

/// Drop one ± pair of roots, keeping `R = −R`; the result may or may not
/// still satisfy the axioms, which is the point.
fn drop_pair(rs: &FiniteRootSystem<Q>, ix: &Index) -> FiniteRootSystem<Q> {
    let victim = rs.roots()[ix.index(rs.roots().len())].clone();
    let kept: Vec<Vector<Q>> = rs
        .roots()
        .iter()
        .filter(|r| **r != victim && **r != victim.neg())
        .cloned()
        .collect();
    FiniteRootSystem::new(rs.space().clone(), kept).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_preserving_the_form(
        tag_ix: Index,
        a_ix: Index,
        b_ix: Index,
    ) {
        let rs = pick_finite(&tag_ix);
        let alpha = rs.roots()[a_ix.index(rs.roots().len())].clone();
        let beta = rs.roots()[b_ix.index(rs.roots().len())].clone();

        if let Ok(perm) = rs.reflection_permutation(&alpha) {
            // applying the permutation twice is the identity
            for (i, &j) in perm.images.iter().enumerate() {
                prop_assert_eq!(perm.images[j], i);
            }
        }
        if !rs.space().norm(&alpha).is_zero() {
            let rb = rs.reflect(&alpha, &beta).unwrap();
            let ra = rs.reflect(&alpha, &alpha).unwrap();
            prop_assert_eq!(
                rs.space().form(&ra, &rb),
                rs.space().form(&alpha, &beta)
            );
            prop_assert_eq!(rs.reflect(&alpha, &rb).unwrap(), beta);
        }
    }

    #[test]
    fn axiom_flags_are_monotone_even_on_mutated_sets(tag_ix: Index, drop_ix: Index) {
        let rs = pick_finite(&tag_ix);
        for candidate in [rs.clone(), drop_pair(&rs, &drop_ix)] {
            if candidate.roots().is_empty() {
                continue;
            }
            let rep = candidate.check_axioms().unwrap();
            if rep.is_rs {
                prop_assert!(rep.is_grs);
            }
            if rep.is_grs {
                prop_assert!(rep.is_weak_grs);
            }
        }
    }

    #[test]
    fn brute_axioms_agrees_with_the_symbolic_checker(tag_ix: Index, drop_ix: Index) {
        let rs = pick_finite(&tag_ix);
        if rs.roots().len() > 20 {
            return Ok(());
        }
        for candidate in [rs.clone(), drop_pair(&rs, &drop_ix)] {
            if candidate.roots().is_empty() {
                continue;
            }
            let symbolic = candidate.check_axioms().unwrap();
            let (brute, skipped) = brute_axioms(candidate.space(), candidate.roots()).unwrap();
            prop_assert_eq!(skipped, 0);
            prop_assert_eq!(brute.is_rs, symbolic.is_rs);
            prop_assert_eq!(brute.is_grs, symbolic.is_grs);
            prop_assert_eq!(brute.is_weak_grs, symbolic.is_weak_grs);
        }
    }

    #[test]
    fn default_parity_solves_the_parity_constraints(tag_ix: Index) {
        let rs = pick_finite(&tag_ix);
        let par = default_parity(&rs);
        prop_assert!(is_parity_function(&rs, &par).unwrap());
    }

    #[test]
    fn every_system_is_isomorphic_to_itself(tag_ix: Index) {
        let rs = pick_finite(&tag_ix);
        if rs.roots().len() > 24 {
            return Ok(());
        }
        let witness = isomorphic(&rs, &rs);
        prop_assert!(witness.is_some());
        prop_assert!(witness.unwrap().verify(&rs, &rs));
    }

    #[test]
    fn unions_decompose_back_into_their_parts(a_ix: Index, b_ix: Index) {
        let a = pick_finite(&a_ix);
        let b = pick_finite(&b_ix);
        let union = orthogonal_union(&[&a, &b]).unwrap();
        let components = union.decompose().unwrap();
        prop_assert_eq!(components.len(), 2);

        let mut part_sizes = vec![a.roots().len(), b.roots().len()];
        part_sizes.sort();
        let mut comp_sizes: Vec<usize> =
            components.iter().map(|c| c.roots().len()).collect();
        comp_sizes.sort();
        prop_assert_eq!(part_sizes, comp_sizes);

        let mut part_tags: Vec<String> = [&a, &b]
            .iter()
            .map(|p| classify_finite(p).unwrap().to_string())
            .collect();
        part_tags.sort();
        let mut comp_tags: Vec<String> = components
            .iter()
            .map(|c| classify_finite(c).unwrap().to_string())
            .collect();
        comp_tags.sort();
        prop_assert_eq!(part_tags, comp_tags);
    }

    #[test]
    fn finite_documents_round_trip_canonically(tag_ix: Index) {
        let rs = pick_finite(&tag_ix);
        let text = doc::serialize(&SystemDocument::from_finite(&rs, None));
        let reparsed = doc::parse(&text).unwrap();
        prop_assert_eq!(doc::serialize(&reparsed), text.clone());

        let system = reparsed.to_system::<Q>().unwrap();
        let back = match system {
            doc::ParsedSystem::Finite(f) => f,
            doc::ParsedSystem::Affine(_) => unreachable!("finite document"),
        };
        prop_assert_eq!(
            doc::serialize(&SystemDocument::from_finite(&back, None)),
            text
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn affine_documents_round_trip_canonically(tag_ix: Index) {
        let p = pick_affine(&tag_ix);
        let text = doc::serialize(&SystemDocument::from_affine(&p, None));
        let reparsed = doc::parse(&text).unwrap();
        prop_assert_eq!(doc::serialize(&reparsed), text.clone());

        let system = reparsed.to_system::<Q>().unwrap();
        let back = match system {
            doc::ParsedSystem::Affine(a) => a,
            doc::ParsedSystem::Finite(_) => unreachable!("affine document"),
        };
        prop_assert_eq!(doc::serialize(&SystemDocument::from_affine(&back, None)), text);
    }

    #[test]
    fn normalization_is_idempotent(tag_ix: Index) {
        let p = pick_affine(&tag_ix);
        let first = p.normalize_delta().unwrap();
        let second = first.presentation.normalize_delta().unwrap();
        prop_assert_eq!(&second.scale, &qi(1));
        prop_assert!(!second.negated);
        prop_assert_eq!(second.presentation.fibers(), first.presentation.fibers());
    }

    #[test]
    fn catalog_fibers_are_symmetric(tag_ix: Index) {
        let p = pick_affine(&tag_ix);
        for fiber in p.fibers() {
            let mirror = p
                .fibers()
                .iter()
                .find(|f| f.class == fiber.class.neg())
                .expect("every class comes with its negative");
            prop_assert_eq!(&mirror.step, &fiber.step);
            let mut negated: Vec<Q> = fiber
                .residues
                .iter()
                .map(|r| {
                    if fiber.step.is_zero() {
                        -r.clone()
                    } else {
                        grs_core::scalar::rat_mod(&-r.clone(), &fiber.step)
                    }
                })
                .collect();
            negated.sort();
            prop_assert_eq!(negated, mirror.residues.clone());
        }
    }

    #[test]
    fn validator_verdict_matches_the_brute_forced_window(tag_ix: Index, shift_ix: Index) {
        let p = pick_affine(&tag_ix);

        // mutate half the time: displace one fiber's residue off-lattice
        let candidates = {
            let mut list = vec![p.clone()];
            let fibers = p.fibers().to_vec();
            let k = shift_ix.index(fibers.len());
            let mut mutated = fibers.clone();
            let mut shifted = mutated[k].residues[0].clone() + qi(1) / qi(2);
            if !mutated[k].step.is_zero() {
                shifted = grs_core::scalar::rat_mod(&shifted, &mutated[k].step);
            }
            mutated[k].residues[0] = shifted;
            mutated[k].residues.sort();
            mutated[k].residues.dedup();
            if let Ok(q) = AffinePresentation::new(
                p.base().space().clone(),
                p.delta_label().to_string(),
                mutated,
            ) {
                list.push(q);
            }
            list
        };

        for candidate in candidates {
            let symbolic = candidate.validate_agrs().unwrap().is_agrs;
            let bound = candidate
                .fibers()
                .iter()
                .flat_map(|f| {
                    f.residues
                        .iter()
                        .map(|r| {
                            let mag = if *r < qi(0) { -r.clone() } else { r.clone() };
                            qi(2) * f.step.clone() + mag
                        })
                        .collect::<Vec<Q>>()
                })
                .max()
                .unwrap();
            let window = candidate.window(&bound).unwrap();
            if window.roots().len() > 60 {
                continue;
            }
            let (brute, _skipped) = brute_axioms(window.space(), window.roots()).unwrap();
            prop_assert_eq!(brute.is_agrs, symbolic);
        }
    }
}
