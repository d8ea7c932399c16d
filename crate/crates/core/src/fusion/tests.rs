use proptest::prelude::*;

use super::enumerate::injective_maps;
use super::*;
use crate::group::{automorphism_group, automorphisms, auts_of_subgroup, parse_group, parse_perm, semidirect_product};

fn grp(gens: &str, degree: usize) -> Arc<Group> {
    parse_group(gens, degree).unwrap()
}

fn sub(g: &Arc<Group>, gens: &str) -> Subgroup {
    let perms = crate::group::parse_generators(gens, g.degree()).unwrap();
    g.subgroup_from_perms(&perms).unwrap()
}

fn s4() -> Arc<Group> {
    grp("(1 2 3 4); (1 2)", 4)
}

/// Test corpus of groups of order ≤ 100.
fn corpus() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("Z/6", grp("(1 2 3 4 5 6)", 6)),
        ("Z/8", grp("(1 2 3 4 5 6 7 8)", 8)),
        ("D8", grp("(1 2 3 4); (1 3)", 4)),
        ("D10", grp("(1 2 3 4 5); (2 5)(3 4)", 5)),
        ("D12", grp("(1 2 3 4 5 6); (2 6)(3 5)", 6)),
        ("S3", grp("(1 2 3); (1 2)", 3)),
        ("S4", s4()),
        ("A4", grp("(1 2 3); (1 2)(3 4)", 4)),
        ("Q8", grp("(1 2 3 4)(5 6 7 8); (1 5 3 7)(2 8 4 6)", 8)),
        ("Z/2xS3", grp("(1 2); (3 4 5); (3 4)", 5)),
    ]
}

#[test]
fn sigma3_at_three() {
    let g = grp("(1 2 3); (1 2)", 3);
    let s = g.sylow(3).unwrap();
    let f = fusion_of_group(&g, &s, 3).unwrap();
    assert_eq!(f.automorphisms(&s).unwrap().len(), 2);
}

#[test]
fn group_fusion_of_a_p_group_is_inner() {
    let g = grp("(1 2 3 4); (1 3)", 4);
    let f = fusion_of_group(&g, &g.whole(), 2).unwrap();
    let inner = inner_fusion(&g.whole(), 2).unwrap();
    assert_eq!(f, inner);
    for (i, p) in f.subgroups().iter().enumerate() {
        for (j, q) in f.subgroups().iter().enumerate() {
            let expected: BTreeSet<Vec<Elem>> = g
                .transporter(p, q)
                .unwrap()
                .iter()
                .map(|&x| p.elements().iter().map(|&y| g.conj(x, y)).collect())
                .collect();
            assert_eq!(f.hom_images(i, j), &expected);
        }
    }
}

#[test]
fn normal_klein_four_in_s4() {
    let g = s4();
    let s = g.sylow(2).unwrap();
    let f = fusion_of_group(&g, &s, 2).unwrap();
    let v4 = sub(&g, "(1 2)(3 4); (1 3)(2 4)");
    assert_eq!(f.automorphisms(&v4).unwrap().len(), 6);
}

#[test]
fn abelian_fusion_examples() {
    let z3 = grp("(1 2 3)", 3);
    let aut = automorphisms(&z3).unwrap();
    let fa = fusion_abelian(&aut, &z3, 3).unwrap();
    assert_eq!(fa.hom_images(fa.top(), fa.top()).len(), 2);

    let id = vec![GroupHom::identity(&z3.whole())];
    assert_eq!(fusion_abelian(&id, &z3, 3).unwrap(), inner_fusion(&z3.whole(), 3).unwrap());

    let v4 = grp("(1 2)(3 4); (1 3)(2 4)", 4);
    let a = automorphism_group(&v4).unwrap();
    let c3 = a.subgroups().unwrap().into_iter().find(|w| w.order() == 3).unwrap();
    let f = fusion_abelian(&auts_of_subgroup(&v4, &c3), &v4, 2).unwrap();
    assert_eq!(f.hom_images(f.top(), f.top()).len(), 3);

    assert!(matches!(fusion_abelian(&automorphisms(&v4).unwrap(), &v4, 2), Err(Error::PrimeDividesOrder { .. })));
    let s3 = grp("(1 2 3); (1 2)", 3);
    assert_eq!(fusion_abelian(&[], &s3, 3).unwrap_err(), Error::NotAbelian);
}

/// `F_S(W ⋉ S)` computed inside the semidirect product and transported back.
fn semidirect_fusion(w: &[GroupHom], s: &Arc<Group>, p: u32) -> FusionSystem {
    let sd = semidirect_product(w, s).unwrap();
    let copy = sd.normal_subgroup();
    let f = fusion_of_group(&sd.group, &copy, p).unwrap();
    let back: Vec<Elem> = copy
        .elements()
        .iter()
        .map(|&x| sd.embedding.iter().position(|&e| e == x).unwrap() as Elem)
        .collect();
    let iso = GroupHom::new(copy.clone(), s.whole(), back).unwrap();
    f.transport(&iso).unwrap()
}

#[test]
fn abelian_fusion_matches_semidirect_product() {
    for (gens, degree, p) in [("(1 2 3)", 3, 3), ("(1 2)(3 4); (1 3)(2 4)", 4, 2), ("(1 2 3 4)", 4, 2), ("(1 2 3 4 5)", 5, 5)] {
        let s = grp(gens, degree);
        let a = automorphism_group(&s).unwrap();
        for w in a.subgroups().unwrap() {
            if w.order() % p as usize == 0 {
                continue;
            }
            let auts = auts_of_subgroup(&s, &w);
            assert_eq!(fusion_abelian(&auts, &s, p).unwrap(), semidirect_fusion(&auts, &s, p));
        }
    }
}

#[test]
fn group_fusion_systems_satisfy_the_axioms() {
    for (name, g) in corpus() {
        for p in [2, 3, 5] {
            let s = g.sylow(p).unwrap();
            let f = fusion_of_group(&g, &s, p).unwrap();
            let check = f.is_fusion_system();
            assert!(check.valid, "{name} at {p}: {:?}", check.violations);
        }
    }
}

#[test]
fn malformed_systems_are_reported() {
    let g = s4();
    let s = g.sylow(2).unwrap();
    let f = fusion_of_group(&g, &s, 2).unwrap();

    let mut missing = f.clone();
    let i = f.index_of(&sub(&g, "(1 2)(3 4); (1 3)(2 4)")).unwrap();
    let conj = f.hom_images(i, i).iter().next().unwrap().clone();
    missing.remove_morphism(i, i, &conj);
    let check = missing.is_fusion_system();
    assert!(!check.valid);
    assert!(check.violations.iter().any(|v| v.kind == ViolationKind::MissingConjugation
        || v.kind == ViolationKind::MissingIdentity));

    let mut non_injective = f.clone();
    let top = f.top();
    non_injective.insert_morphism(i, top, vec![0; 4]);
    let check = non_injective.is_fusion_system();
    assert!(!check.valid);
    assert!(check.violations.iter().any(|v| v.kind == ViolationKind::NotInjective));
    assert!(matches!(non_injective.is_saturated(), Err(Error::MalformedFusionSystem(_))));
}

#[test]
fn transposition_class_in_dihedral_sylow() {
    let g = s4();
    let d8 = sub(&g, "(1 2 3 4); (1 3)");
    let f = fusion_of_group(&g, &d8, 2).unwrap();
    let t13 = sub(&g, "(1 3)");
    let t24 = sub(&g, "(2 4)");
    let i = f.index_of(&t13).unwrap();
    let class: Vec<Subgroup> = f.f_conjugates(i).into_iter().map(|j| f.subgroups()[j].clone()).collect();
    assert_eq!(class, vec![t24.clone(), t13.clone()].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    for t in [&t13, &t24] {
        assert!(f.is_fully_normalized(t).unwrap());
        assert_eq!(d8.normalizer_of(t).order(), 4);
    }
    let whole = f.s().clone();
    assert!(f.is_fully_normalized(&whole).unwrap() && f.is_fully_centralized(&whole).unwrap());
}

#[test]
fn inner_fusion_classes_are_conjugacy_classes() {
    let g = grp("(1 2 3 4); (1 3)", 4);
    let f = inner_fusion(&g.whole(), 2).unwrap();
    for class in f.f_conjugacy_classes() {
        let h = &f.subgroups()[class[0]];
        assert_eq!(class.len(), h.conjugacy_class_in(&g.whole()).len());
    }
}

#[test]
fn sylow_fusion_is_saturated() {
    for (name, g) in corpus() {
        for p in [2, 3, 5] {
            if g.order() % p as usize != 0 {
                continue;
            }
            let s = g.sylow(p).unwrap();
            let report = fusion_of_group(&g, &s, p).unwrap().is_saturated().unwrap();
            assert!(report.saturated, "{name} at {p}: {report:?}");
        }
    }
}

#[test]
fn normal_klein_four_is_not_saturated() {
    let g = s4();
    let v4 = sub(&g, "(1 2)(3 4); (1 3)(2 4)");
    let report = fusion_of_group(&g, &v4, 2).unwrap().is_saturated().unwrap();
    assert!(!report.saturated);
    let at_v4: Vec<&AxiomIFailure> = report.axiom_i_failures.iter().filter(|f| f.aut_f_order == 6).collect();
    assert_eq!(at_v4.len(), 1);
    assert_eq!(at_v4[0].aut_s_order, 1);
}

#[test]
fn abelian_criteria_agree_on_a_direct_factor() {
    // Z/3 as the second factor of S3 × Z/3, which is not Sylow
    let g = grp("(1 2 3); (1 2); (4 5 6)", 6);
    let z3 = sub(&g, "(4 5 6)");
    let f = fusion_of_group(&g, &z3, 3).unwrap();
    assert_eq!(f.is_saturated().unwrap().saturated, f.is_saturated_abelian().unwrap());
}

#[test]
fn inner_fusion_is_saturated() {
    for (_, g) in corpus() {
        for p in [2, 3] {
            let s = g.sylow(p).unwrap();
            assert!(inner_fusion(&s, p).unwrap().is_saturated().unwrap().saturated);
        }
    }
}

#[test]
fn abelian_saturation_examples() {
    let g = grp("(1 2 3); (1 2)", 3);
    let f = fusion_of_group(&g, &g.sylow(3).unwrap(), 3).unwrap();
    assert!(f.is_saturated_abelian().unwrap());
    let z4 = grp("(1 2 3 4)", 4);
    let inner = inner_fusion(&z4.whole(), 2).unwrap();
    assert!(inner.is_saturated_abelian().unwrap());
    let with_inversion = FusionSystem::generated_by(2, &z4.whole(), &automorphisms(&z4).unwrap()).unwrap();
    assert!(!with_inversion.is_saturated_abelian().unwrap());
    assert!(!with_inversion.is_saturated().unwrap().saturated);
}

#[test]
fn centric_subgroups_of_dihedral_sylow() {
    let g = s4();
    let d8 = sub(&g, "(1 2 3 4); (1 3)");
    let f = fusion_of_group(&g, &d8, 2).unwrap();
    let centric = f.centric_subgroups();
    let expected: BTreeSet<Subgroup> = [
        sub(&g, "(1 2 3 4)"),
        sub(&g, "(1 2)(3 4); (1 3)(2 4)"),
        sub(&g, "(1 3); (2 4)"),
        d8.clone(),
    ]
    .into_iter()
    .collect();
    assert_eq!(centric.into_iter().collect::<BTreeSet<_>>(), expected);
}

#[test]
fn abelian_centric_is_only_s() {
    let v4 = grp("(1 2)(3 4); (1 3)(2 4)", 4);
    let f = inner_fusion(&v4.whole(), 2).unwrap();
    assert_eq!(f.centric_subgroups(), vec![v4.whole()]);
}

#[test]
fn centrics_closed_under_conjugacy_and_overgroups() {
    for (_, g) in corpus() {
        for p in [2, 3] {
            let f = fusion_of_group(&g, &g.sylow(p).unwrap(), p).unwrap();
            let centric: BTreeSet<usize> =
                f.centric_subgroups().iter().map(|h| f.index_of(h).unwrap()).collect();
            for &i in &centric {
                assert!(f.f_conjugates(i).iter().all(|j| centric.contains(j)));
                for (k, h) in f.subgroups().iter().enumerate() {
                    if f.subgroups()[i].is_subgroup_of(h) {
                        assert!(centric.contains(&k));
                    }
                }
            }
        }
    }
}

#[test]
fn fully_normalized_implies_fully_centralized() {
    for (_, g) in corpus() {
        for p in [2, 3] {
            let f = fusion_of_group(&g, &g.sylow(p).unwrap(), p).unwrap();
            for h in f.subgroups() {
                if f.is_fully_normalized(h).unwrap() {
                    assert!(f.is_fully_centralized(h).unwrap());
                }
            }
        }
    }
}

#[test]
fn f_conjugates_are_isomorphic() {
    let g = s4();
    let f = fusion_of_group(&g, &g.sylow(2).unwrap(), 2).unwrap();
    for class in f.f_conjugacy_classes() {
        let first = &f.subgroups()[class[0]];
        for &j in &class {
            let other = &f.subgroups()[j];
            assert_eq!(first.order(), other.order());
            assert_eq!(first.is_abelian(), other.is_abelian());
            assert_eq!(first.center().order(), other.center().order());
        }
    }
}

#[test]
fn classification_counts() {
    // counts from the two independent enumerations
    for (gens, degree, p, count) in [
        ("(1 2)", 2, 2, 1),
        ("(1 2 3)", 3, 3, 2),
        ("(1 2 3 4)", 4, 2, 1),
        ("(1 2)(3 4); (1 3)(2 4)", 4, 2, 2),
    ] {
        let s = grp(gens, degree);
        let c = enumerate_saturated_fusion_systems(&s, p).unwrap();
        assert!(c.agree, "{gens}");
        assert_eq!(c.systems.len(), count, "{gens}");
        assert_eq!(c.brute_force_count, count);
    }
}

#[test]
fn classification_up_to_isomorphism() {
    let z5 = grp("(1 2 3 4 5)", 5);
    let c = enumerate_saturated_fusion_systems(&z5, 5).unwrap();
    assert!(c.agree);
    assert_eq!(c.systems.len(), 3);
    assert_eq!(c.up_to_isomorphism, 3);
}

#[test]
fn classification_bounds() {
    let z9 = grp("(1 2 3 4 5 6 7 8 9)", 9);
    assert!(matches!(enumerate_saturated_fusion_systems(&z9, 3), Err(Error::SearchBound(_))));
    let s3 = grp("(1 2 3); (1 2)", 3);
    assert_eq!(enumerate_saturated_fusion_systems(&s3, 3).unwrap_err(), Error::NotAbelian);
}

#[test]
fn json_lists_generator_images() {
    let g = grp("(1 2 3); (1 2)", 3);
    let f = fusion_of_group(&g, &g.sylow(3).unwrap(), 3).unwrap();
    let v = f.to_json();
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 2);
    let top = v["morphisms"].as_array().unwrap().iter().find(|m| m["domain"] == 1 && m["codomain"] == 1).unwrap();
    assert_eq!(top["maps"], serde_json::json!([["(1 2 3)"], ["(1 3 2)"]]));
    let _ = parse_perm("(1 2)", 3).unwrap();
}

fn abelian_groups() -> Vec<(Arc<Group>, u32)> {
    vec![
        (grp("(1 2)(3 4); (1 3)(2 4)", 4), 2),
        (grp("(1 2 3 4)", 4), 2),
        (grp("(1 2 3)", 3), 3),
        (grp("(1 2); (3 4 5 6)", 6), 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn abelian_saturation_criteria_agree(which in 0usize..4, picks in proptest::collection::vec(any::<u16>(), 0..3)) {
        let (s, p) = abelian_groups().swap_remove(which);
        let whole = s.whole();
        let subs = whole.subgroups().unwrap();
        let mut maps = Vec::new();
        for pick in picks {
            let h = &subs[pick as usize % subs.len()];
            let all = injective_maps(&whole, h);
            let images = all[(pick as usize / subs.len()) % all.len()].clone();
            let codomain = whole.clone();
            maps.push(GroupHom::new(h.clone(), codomain, images).unwrap());
        }
        let f = FusionSystem::generated_by(p, &whole, &maps).unwrap();
        prop_assert!(f.is_fusion_system().valid);
        prop_assert_eq!(f.is_saturated().unwrap().saturated, f.is_saturated_abelian().unwrap());
    }
}
