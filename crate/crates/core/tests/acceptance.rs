//! Acceptance criteria. Each test prints one PASS/FAIL line with its
//! measured runtime against a pinned limit.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusionkit::burnside::{
    characteristic_idempotent, is_f_stable, verify_classical_frobenius, verify_diag_commute,
    verify_frobenius_reciprocity, BasisPair, BurnsideElement, ExplicitBiset, LocalCoeff, DEFAULT_PRECISION,
};
use fusionkit::fusion::{enumerate_saturated_fusion_systems, fusion_of_group, inner_fusion, FusionSystem};
use fusionkit::group::{
    automorphisms, generated_automorphisms, group_cohomology, parse_group, semidirect_product, Elem, GModule, Group,
    GroupHom, Subgroup,
};
use fusionkit::linking::{linking_of_group, obstruction_vanishing};
use fusionkit::steenrod::{
    full_cohomology, molien_series, theta_tilde, verify_coh_properties, AlgebraPresentation, FpMatrix, InvariantRing,
    MatrixGroup,
};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// Exact comparisons only: every check below is an equality of integers,
/// rationals or finite-field vectors.
const TOLERANCE: &str = "exact";

/// Runs one criterion, prints its verdict and fails the test on a violated
/// check or an exceeded runtime limit.
fn criterion(number: u32, title: &str, limit: Duration, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (verdict, detail) = match &outcome {
        Ok(detail) if elapsed <= limit => ("PASS", detail.clone()),
        Ok(detail) => ("FAIL", format!("{detail}; runtime limit exceeded")),
        Err(detail) => ("FAIL", detail.clone()),
    };
    println!(
        "{verdict} criterion {number} ({title}): {detail} [tolerance {TOLERANCE}, {:.2} s, limit {} s]",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert_eq!(verdict, "PASS", "criterion {number}: {detail}");
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn grp(gens: &str, degree: usize) -> Arc<Group> {
    parse_group(gens, degree).unwrap()
}

fn prime_divisors(n: usize) -> Vec<u32> {
    (2..=n as u32).filter(|&p| n.is_multiple_of(p as usize) && (2..p).all(|q| p % q != 0)).collect()
}

/// Groups of order at most eight, one per isomorphism type.
fn groups_up_to_eight() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("1", grp("", 1)),
        ("Z/2", grp("(1 2)", 2)),
        ("Z/3", grp("(1 2 3)", 3)),
        ("Z/4", grp("(1 2 3 4)", 4)),
        ("V4", grp("(1 2)(3 4); (1 3)(2 4)", 4)),
        ("Z/5", grp("(1 2 3 4 5)", 5)),
        ("Z/6", grp("(1 2 3 4 5 6)", 6)),
        ("S3", grp("(1 2 3); (1 2)", 3)),
        ("Z/7", grp("(1 2 3 4 5 6 7)", 7)),
        ("Z/8", grp("(1 2 3 4 5 6 7 8)", 8)),
        ("Z/4xZ/2", grp("(1 2 3 4); (5 6)", 6)),
        ("(Z/2)^3", grp("(1 2); (3 4); (5 6)", 6)),
        ("D8", grp("(1 2 3 4); (1 3)", 4)),
        ("Q8", grp("(1 2 3 4)(5 6 7 8); (1 5 3 7)(2 8 4 6)", 8)),
    ]
}

/// Injective homomorphisms from `p` to the whole of `t`, by trying every
/// assignment of generator images.
fn injective_homs(p: &Subgroup, t: &Arc<Group>) -> Vec<GroupHom> {
    let gens = p.generators();
    let target = t.whole();
    let n = t.order();
    let mut out: Vec<GroupHom> = Vec::new();
    let mut seen = BTreeSet::new();
    for code in 0..n.pow(gens.len() as u32) {
        let images: Vec<Elem> = (0..gens.len()).map(|k| ((code / n.pow(k as u32)) % n) as Elem).collect();
        let Ok(hom) = GroupHom::from_generator_images(p.clone(), target.clone(), &gens, &images) else {
            continue;
        };
        if hom.is_injective() && seen.insert(hom.images().to_vec()) {
            out.push(hom);
        }
    }
    out
}

/// Subgroups of `Aut(S)` generated by at most two automorphisms whose
/// orders satisfy `keep`, each returned as its full element list.
fn aut_subgroups(s: &Arc<Group>, keep: impl Fn(usize) -> bool) -> Vec<Vec<GroupHom>> {
    let all = automorphisms(s).unwrap();
    let order_of = |a: &GroupHom| generated_automorphisms(s, std::slice::from_ref(a)).unwrap().len();
    let gens: Vec<GroupHom> = all.into_iter().filter(|a| keep(order_of(a))).collect();
    let mut found: Vec<Vec<GroupHom>> = Vec::new();
    let mut keys = BTreeSet::new();
    let mut consider = |list: &[GroupHom]| {
        let w = generated_automorphisms(s, list).unwrap();
        let key: BTreeSet<Vec<Elem>> = w.iter().map(|a| a.images().to_vec()).collect();
        if keys.insert(key) {
            found.push(w);
        }
    };
    consider(&[]);
    for i in 0..gens.len() {
        consider(&gens[i..=i]);
        for j in i + 1..gens.len() {
            consider(&[gens[i].clone(), gens[j].clone()]);
        }
    }
    found
}

/// `F_S(W ⋉ S)` computed in the semidirect product and carried back to `S`.
fn semidirect_fusion(w: &[GroupHom], s: &Arc<Group>, p: u32) -> FusionSystem {
    let sd = semidirect_product(w, s).unwrap();
    let copy = sd.normal_subgroup();
    let f = fusion_of_group(&sd.group, &copy, p).unwrap();
    let back: Vec<Elem> = copy
        .elements()
        .iter()
        .map(|&x| sd.embedding.iter().position(|&e| e == x).unwrap() as Elem)
        .collect();
    f.transport(&GroupHom::new(copy, s.whole(), back).unwrap()).unwrap()
}

#[test]
fn criterion_01_sylow_fusion_is_saturated() {
    criterion(1, "Sylow fusion systems are saturated", Duration::from_secs(60), || {
        let corpus = vec![
            ("Z/6", grp("(1 2 3 4 5 6)", 6)),
            ("Z/8", grp("(1 2 3 4 5 6 7 8)", 8)),
            ("Z/12", grp("(1 2 3 4 5 6 7 8 9 10 11 12)", 12)),
            ("D8", grp("(1 2 3 4); (1 3)", 4)),
            ("D10", grp("(1 2 3 4 5); (2 5)(3 4)", 5)),
            ("D12", grp("(1 2 3 4 5 6); (2 6)(3 5)", 6)),
            ("D16", grp("(1 2 3 4 5 6 7 8); (2 8)(3 7)(4 6)", 8)),
            ("S3", grp("(1 2 3); (1 2)", 3)),
            ("S4", grp("(1 2 3 4); (1 2)", 4)),
            ("A4", grp("(1 2 3); (1 2)(3 4)", 4)),
            ("Q8", grp("(1 2 3 4)(5 6 7 8); (1 5 3 7)(2 8 4 6)", 8)),
            ("Z/2xS3", grp("(1 2); (3 4 5); (3 4)", 5)),
        ];
        let mut checked = 0;
        for (name, g) in &corpus {
            ensure(g.order() <= 100, || format!("{name} exceeds order 100"))?;
            for p in prime_divisors(g.order()) {
                let s = g.sylow(p).unwrap();
                let report = fusion_of_group(g, &s, p).unwrap().is_saturated().unwrap();
                ensure(report.saturated, || format!("{name} at p={p} not saturated: {report:?}"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} (group, prime) pairs over {} groups saturated", corpus.len()))
    });
}

#[test]
fn criterion_02_non_saturation_witness() {
    criterion(2, "normal four-group in S4 fails axiom I", Duration::from_secs(1), || {
        let g = grp("(1 2 3 4); (1 2)", 4);
        let v = g.subgroup_from_perms(&fusionkit::group::parse_generators("(1 2)(3 4); (1 3)(2 4)", 4).unwrap()).unwrap();
        let report = fusion_of_group(&g, &v, 2).unwrap().is_saturated().unwrap();
        ensure(!report.saturated, || "reported saturated".into())?;
        ensure(report.axiom_i_failures.len() == 1, || format!("axiom I failures: {:?}", report.axiom_i_failures))?;
        let f = &report.axiom_i_failures[0];
        ensure(f.aut_s_order == 1 && f.aut_f_order == 6, || format!("got Aut_S={} Aut_F={}", f.aut_s_order, f.aut_f_order))?;
        Ok(format!("axiom I fails at V4 with |Aut_S| = {} and |Aut_F| = {}", f.aut_s_order, f.aut_f_order))
    });
}

#[test]
fn criterion_03_abelian_classification() {
    criterion(3, "saturated systems over small abelian groups", Duration::from_secs(300), || {
        let cases = [
            ("Z/2", grp("(1 2)", 2), 2, 1),
            ("Z/3", grp("(1 2 3)", 3), 3, 2),
            ("Z/4", grp("(1 2 3 4)", 4), 2, 2),
            ("(Z/2)^2", grp("(1 2)(3 4); (1 3)(2 4)", 4), 2, 4),
        ];
        let mut found = Vec::new();
        let mut mismatches = Vec::new();
        for (name, s, p, stated) in cases {
            let c = enumerate_saturated_fusion_systems(&s, p).unwrap();
            ensure(c.agree, || format!("{name}: enumerations disagree"))?;
            let computed: BTreeSet<_> = c.systems.iter().map(|f| f.key().to_vec()).collect();
            let realized: BTreeSet<_> = aut_subgroups(&s, |o| o % p as usize != 0)
                .iter()
                .map(|w| semidirect_fusion(w, &s, p).key().to_vec())
                .collect();
            ensure(computed == realized, || {
                format!("{name}: {} enumerated systems vs {} realized by W <= Aut(S)", computed.len(), realized.len())
            })?;
            found.push(format!("{name}={}", computed.len()));
            if computed.len() != stated {
                mismatches.push(format!("{name} expected {stated} got {}", computed.len()));
            }
        }
        let summary = found.join(", ");
        ensure(mismatches.is_empty(), || {
            format!("categories equal the W <= Aut(S), p ∤ |W| set ({summary}) but counts differ from 1, 2, 2, 4: {}", mismatches.join("; "))
        })?;
        Ok(format!("counts {summary}, categories equal exactly"))
    });
}

#[test]
fn criterion_04_linking_axioms() {
    criterion(4, "centric linking systems satisfy A, B, C", Duration::from_secs(30), || {
        let cases = [
            ("S4", grp("(1 2 3 4); (1 2)", 4), 2, 8),
            ("S3", grp("(1 2 3); (1 2)", 3), 3, 3),
            ("A4", grp("(1 2 3); (1 2)(3 4)", 4), 2, 4),
        ];
        let mut sets = 0;
        for (name, g, p, s_order) in cases {
            let s = g.sylow(p).unwrap();
            ensure(s.order() == s_order, || format!("{name}: Sylow order {}", s.order()))?;
            let l = linking_of_group(&g, &s, p).unwrap();
            for (axiom, report) in [("A", l.verify_axiom_a()), ("B", l.verify_axiom_b()), ("C", l.verify_axiom_c())] {
                ensure(report.holds && report.checked > 0, || format!("{name}: axiom {axiom} {report:?}"))?;
            }
            let objects = l.objects();
            let f = l.fusion();
            for (a, pa) in objects.iter().enumerate() {
                let z = pa.center().order();
                let i = f.index_of(pa).unwrap();
                for (b, pb) in objects.iter().enumerate() {
                    let j = f.index_of(pb).unwrap();
                    let mut fibers: std::collections::BTreeMap<Vec<Elem>, usize> = Default::default();
                    for &m in l.morphisms(a, b) {
                        *fibers.entry(l.pi(a, m)).or_default() += 1;
                    }
                    let images: BTreeSet<Vec<Elem>> = fibers.keys().cloned().collect();
                    ensure(&images == f.hom_images(i, j), || format!("{name}: π not onto Hom_F({a}, {b})"))?;
                    ensure(fibers.values().all(|&c| c == z), || format!("{name}: fiber size differs from |Z(P)| = {z}"))?;
                    sets += 1;
                }
            }
        }
        Ok(format!("axioms hold; {sets} morphism sets have fibers of size |Z(P)|"))
    });
}

#[test]
fn criterion_05_obstruction_vanishing() {
    criterion(5, "H^2(W; S) vanishes for coprime actions", Duration::from_secs(10), || {
        let abelian = [
            ("Z/2", grp("(1 2)", 2), vec![2]),
            ("Z/3", grp("(1 2 3)", 3), vec![3]),
            ("Z/4", grp("(1 2 3 4)", 4), vec![4]),
            ("V4", grp("(1 2)(3 4); (1 3)(2 4)", 4), vec![2, 2]),
            ("Z/5", grp("(1 2 3 4 5)", 5), vec![5]),
            ("Z/6", grp("(1 2 3 4 5 6)", 6), vec![6]),
            ("Z/7", grp("(1 2 3 4 5 6 7)", 7), vec![7]),
            ("Z/8", grp("(1 2 3 4 5 6 7 8)", 8), vec![8]),
            ("Z/4xZ/2", grp("(1 2 3 4); (5 6)", 6), vec![4, 2]),
            ("(Z/2)^3", grp("(1 2); (3 4); (5 6)", 6), vec![2, 2, 2]),
            ("Z/9", grp("(1 2 3 4 5 6 7 8 9)", 9), vec![9]),
            ("(Z/3)^2", grp("(1 2 3); (4 5 6)", 6), vec![3, 3]),
        ];
        let mut pairs = 0;
        for (name, s, _) in &abelian {
            let n = s.order();
            for w in aut_subgroups(s, |o| o <= 6 && o.gcd(&n) == 1) {
                if w.len() > 6 || w.len().gcd(&n) != 1 {
                    continue;
                }
                let h2 = group_cohomology(&GModule::from_automorphisms(&w, s).unwrap(), 2).unwrap();
                ensure(h2.is_trivial(), || format!("H^2(W; {name}) = {:?} for |W| = {}", h2.0, w.len()))?;
                if prime_divisors(n).len() == 1 {
                    let r = obstruction_vanishing(&w, s, prime_divisors(n)[0]).unwrap();
                    ensure(r.vanishes, || format!("obstruction for {name} with |W| = {}", w.len()))?;
                }
                pairs += 1;
            }
        }
        let small = groups_up_to_eight().into_iter().filter(|(_, g)| g.order() > 1 && g.order() <= 6);
        for (wname, w) in small {
            for (name, s, carrier) in &abelian {
                if w.order().gcd(&s.order()) != 1 {
                    continue;
                }
                let h2 = group_cohomology(&GModule::trivial(w.clone(), carrier.clone()).unwrap(), 2).unwrap();
                ensure(h2.is_trivial(), || format!("H^2({wname}; {name}) trivial action = {:?}", h2.0))?;
                pairs += 1;
            }
        }
        let control = group_cohomology(&GModule::trivial(grp("(1 2)", 2), vec![2]).unwrap(), 2).unwrap();
        ensure(control.0 == vec![2], || format!("control H^2(Z/2; Z/2) = {:?}", control.0))?;
        Ok(format!("{pairs} coprime pairs vanish; control H^2(Z/2; Z/2) = Z/2"))
    });
}

#[test]
fn criterion_06_burnside_oracle() {
    criterion(6, "composition matches balanced products", Duration::from_secs(120), || {
        let s3 = grp("(1 2 3); (1 2)", 3);
        let groups = [
            grp("(1 2)", 2),
            grp("(1 2 3)", 3),
            grp("(1 2 3 4)", 4),
            grp("(1 2)(3 4); (1 3)(2 4)", 4),
            s3.sylow(3).unwrap().to_group(),
        ];
        let basis = |s: &Arc<Group>, t: &Arc<Group>| -> Vec<BurnsideElement> {
            let mut seen: BTreeSet<BasisPair> = BTreeSet::new();
            let mut out = Vec::new();
            for p in s.subgroups().unwrap() {
                for phi in injective_homs(&p, t) {
                    let x = BurnsideElement::basis(&p, phi.images(), t, 2).unwrap();
                    let key = x.terms().keys().next().unwrap().clone();
                    if seen.insert(key) {
                        out.push(x);
                    }
                }
            }
            out
        };
        let mut products = 0;
        for s in &groups {
            for t in &groups {
                let xs = basis(s, t);
                for u in &groups {
                    let ys = basis(t, u);
                    for x in &xs {
                        let bx = ExplicitBiset::from_element(x).unwrap();
                        for y in &ys {
                            let oracle = ExplicitBiset::from_element(y)
                                .unwrap()
                                .balanced_product(&bx)
                                .unwrap()
                                .decompose(2)
                                .unwrap();
                            let composed = y.compose(x).unwrap();
                            ensure(composed == oracle, || format!("mismatch: {:?} ∘ {:?}", y.terms(), x.terms()))?;
                            ensure(composed.terms().values().all(|c| c.as_exact().is_some_and(|q| q.is_integer())), || {
                                "non-integer coefficient".into()
                            })?;
                            products += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{products} basis products agree with the explicit biset oracle"))
    });
}

/// A named fusion system with the automorphisms of `S` in `F` when `S` is
/// abelian, as image tuples in the indexing of `S` as a group.
type IdempotentCase = (String, FusionSystem, Option<Vec<Vec<Elem>>>);

/// Fusion systems for the idempotent and reciprocity criteria.
fn idempotent_cases() -> Vec<IdempotentCase> {
    let mut cases = Vec::new();
    for (name, s) in groups_up_to_eight() {
        let primes = prime_divisors(s.order());
        if primes.len() != 1 {
            continue;
        }
        let whole = s.whole();
        let f = inner_fusion(&whole, primes[0]).unwrap();
        let auts = s.is_abelian().then(|| vec![whole.elements().to_vec()]);
        cases.push((format!("inner {name}"), f, auts));
    }
    for (name, g, p) in [("S3", grp("(1 2 3); (1 2)", 3), 3), ("A4", grp("(1 2 3); (1 2)(3 4)", 4), 2)] {
        let s = g.sylow(p).unwrap();
        let f = fusion_of_group(&g, &s, p).unwrap();
        // Automorphisms of S induced by N_G(S), in the indexing of S as a group.
        let n = g.normalizer(&s).unwrap();
        let auts: BTreeSet<Vec<Elem>> = n
            .elements()
            .iter()
            .map(|&x| s.elements().iter().map(|&y| s.position(g.conj(x, y)).unwrap() as Elem).collect())
            .collect();
        cases.push((format!("{name} at {p}"), f, Some(auts.into_iter().collect())));
    }
    cases
}

#[test]
fn criterion_07_characteristic_idempotent() {
    criterion(7, "characteristic idempotents", Duration::from_secs(60), || {
        let mut done = Vec::new();
        for (name, f, auts) in idempotent_cases() {
            let p = f.prime();
            let ci = characteristic_idempotent(&f, DEFAULT_PRECISION).unwrap();
            let w = &ci.omega;
            ensure(ci.exact && w.is_exact(), || format!("{name}: not exact"))?;
            ensure(w.compose(w).unwrap() == *w, || format!("{name}: ω∘ω ≠ ω"))?;
            ensure(w.augmentation() == LocalCoeff::one(), || format!("{name}: ε(ω) ≠ 1"))?;
            let right = is_f_stable(w, &f).unwrap();
            ensure(right.stable && right.support_in_f, || format!("{name}: right stability {right:?}"))?;
            let left = is_f_stable(&w.transpose(), &f).unwrap();
            ensure(left.stable, || format!("{name}: left stability {left:?}"))?;
            for c in w.terms().values() {
                let q = c.as_exact().unwrap();
                ensure(q.denom().to_u64().is_some_and(|d| d % p as u64 != 0), || format!("{name}: {q} not p-local"))?;
            }
            if let Some(auts) = auts {
                let sg = w.source().clone();
                let mut formula = BurnsideElement::zero(&sg, &sg, p);
                for a in &auts {
                    formula = formula.add(&BurnsideElement::basis(&sg.whole(), a, &sg, p).unwrap()).unwrap();
                }
                let inv = num_rational::BigRational::new(One::one(), (auts.len() as i64).into());
                formula = formula.scale(&LocalCoeff::Exact(inv)).unwrap();
                ensure(*w == formula, || format!("{name}: ω differs from the averaging formula"))?;
            }
            done.push(name);
        }
        Ok(format!("{} systems: {}", done.len(), done.join(", ")))
    });
}

#[test]
fn criterion_08_frobenius_reciprocity() {
    criterion(8, "Frobenius relations", Duration::from_secs(300), || {
        let groups = groups_up_to_eight();
        let mut classical = 0;
        for (name, s) in &groups {
            let prime = prime_divisors(s.order()).first().copied().unwrap_or(2);
            for p in s.subgroups().unwrap() {
                ensure(verify_classical_frobenius(&p, prime).unwrap(), || format!("classical fails in {name} at |P| = {}", p.order()))?;
                classical += 1;
            }
        }
        let mut diag = 0;
        for (a_name, a) in &groups {
            for (b_name, b) in &groups {
                if a.order() > b.order() || b.order() % a.order() != 0 {
                    continue;
                }
                for phi in injective_homs(&a.whole(), b) {
                    ensure(verify_diag_commute(&phi, 2).unwrap(), || format!("diagonal fails for {a_name} → {b_name}"))?;
                    diag += 1;
                }
            }
        }
        let mut omegas = 0;
        for (name, f, _) in idempotent_cases() {
            let w = characteristic_idempotent(&f, DEFAULT_PRECISION).unwrap().omega;
            let r = verify_frobenius_reciprocity(&w).unwrap();
            ensure(r.reciprocity && r.after_omega, || format!("reciprocity fails for {name}: {r:?}"))?;
            omegas += 1;
        }
        Ok(format!("{classical} transfer relations, {diag} injective maps, {omegas} idempotents"))
    });
}

fn matrix_group(p: u32, n: usize, gens: &[&[&[i64]]]) -> MatrixGroup {
    let gens = gens
        .iter()
        .map(|rows| FpMatrix::new(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
        .collect();
    MatrixGroup::generate(p, n, gens).unwrap()
}

#[test]
fn criterion_09_cohomology_splitting() {
    criterion(9, "averaging splitting of invariants", Duration::from_secs(120), || {
        const D: u32 = 12;
        let z3 = matrix_group(2, 2, &[&[&[0, 1], &[1, 1]]]);
        let cases = [
            ("(2, 2, Z/3)", z3.clone()),
            ("(3, 1, Z/2)", matrix_group(3, 1, &[&[&[-1]]])),
            ("(2, 2, 1)", MatrixGroup::trivial(2, 2).unwrap()),
        ];
        for (name, w) in &cases {
            let r = verify_coh_properties(w, D).unwrap();
            for (label, check) in [("I", &r.coh_i), ("II", &r.coh_ii), ("III", &r.coh_iii), ("IV", &r.coh_iv)] {
                ensure(check.holds && check.checked > 0, || format!("{name}: Coh{label} {check:?}"))?;
            }
            ensure(r.passed && r.max_degree == D && r.invariant_dimensions.len() == D as usize + 1, || {
                format!("{name}: report covers degrees 0..{}", r.max_degree)
            })?;
            let molien: Vec<usize> = molien_series(w, D).unwrap().into_iter().map(|c| c as usize).collect();
            ensure(molien == r.invariant_dimensions, || format!("{name}: Molien {molien:?} vs {:?}", r.invariant_dimensions))?;
        }
        let ring = InvariantRing::new(&z3, 6).unwrap();
        let dims = ring.dimensions();
        let molien = molien_series(&z3, 6).unwrap();
        ensure(dims == [1, 0, 1, 2, 1, 2, 3], || format!("(2, 2, Z/3) dimensions {dims:?}"))?;
        ensure(molien == [1, 0, 1, 2, 1, 2, 3], || format!("(2, 2, Z/3) Molien {molien:?}"))?;
        Ok(format!("CohI-IV hold through degree {D} for 3 actions; (2, 2, Z/3) dimensions {dims:?}"))
    });
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_10_theta_tilde() {
    criterion(10, "theta tilde of H*(B(Z/3)^n)", Duration::from_secs(30), || {
        const D: u32 = 12;
        for n in 1..=2usize {
            let alg = AlgebraPresentation::new(3, n).unwrap();
            let theta = theta_tilde(alg, &full_cohomology(alg, D)).unwrap();
            let dims: Vec<u64> = theta.iter().map(|b| b.len() as u64).collect();
            let expected: Vec<u64> = (0..=D as u64)
                .map(|d| if d % 2 == 0 { binomial(d / 2 + n as u64 - 1, n as u64 - 1) } else { 0 })
                .collect();
            ensure(dims == expected, || format!("n = {n}: {dims:?} vs {expected:?}"))?;
            for (d, basis) in theta.iter().enumerate() {
                ensure(basis.iter().all(|e| e.terms().keys().all(|m| m.exterior == 0)), || {
                    format!("n = {n}: exterior class in degree {d}")
                })?;
            }
        }
        Ok(format!("Hilbert series of F_3[x_1..x_n] with |x| = 2 for n = 1, 2 through degree {D}"))
    });
}
