//! One function per subcommand.

use std::sync::Arc;

use serde_json::{json, Value};

use fusionkit::burnside::{
    characteristic_idempotent, idempotent_uniqueness, is_f_stable, verify_classical_frobenius, verify_diag_commute,
    verify_frobenius_reciprocity, LocalCoeff,
};
use fusionkit::fusion::{enumerate_saturated_fusion_systems, fusion_abelian, fusion_of_group, FusionSystem};
use fusionkit::group::{generated_automorphisms, group_cohomology, parse_generators, Elem, GModule, Group, GroupFile, GroupHom, Subgroup};
use fusionkit::linking::{linking_of_group, verify_plfg as plfg};
use fusionkit::steenrod::{
    finite_generation_witness, molien_series, theta_tilde, verify_coh_properties, InvariantRing, MatrixGroup,
};

use crate::config::RunConfig;
use crate::{CliError, Outcome};

/// Largest Sylow subgroup for which every injective map `P → S` is enumerated.
const DIAG_ENUMERATION_LIMIT: usize = 16;

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

struct Loaded {
    file: GroupFile,
    group: Arc<Group>,
}

fn load_group(cfg: &RunConfig) -> Result<Loaded, CliError> {
    let file = GroupFile::parse(&read(cfg.group_path()?)?)?;
    let group = file.group(cfg.order_bound)?;
    Ok(Loaded { file, group })
}

fn names(g: &Group, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&x| g.element(x).to_string()).collect()
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!({ "order": h.order(), "generators": names(h.group(), &h.generators()) })
}

/// `--subgroup` by name or generator list, else a Sylow subgroup.
fn chosen_subgroup(cfg: &RunConfig, loaded: &Loaded, p: u32) -> Result<Subgroup, CliError> {
    match &cfg.subgroup {
        None => Ok(loaded.group.sylow(p)?),
        Some(choice) => {
            let perms = match loaded.file.subgroups.get(choice.trim()) {
                Some(perms) => perms.clone(),
                None => parse_generators(choice, loaded.file.degree)?,
            };
            Ok(loaded.group.subgroup_from_perms(&perms)?)
        }
    }
}

fn group_fusion(cfg: &RunConfig) -> Result<(Loaded, FusionSystem), CliError> {
    let p = cfg.prime()?;
    let loaded = load_group(cfg)?;
    let s = chosen_subgroup(cfg, &loaded, p)?;
    let f = fusion_of_group(&loaded.group, &s, p)?;
    Ok((loaded, f))
}

pub fn fusion(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, f) = group_fusion(cfg)?;
    let check = f.is_fusion_system();
    let report = json!({ "fusion_system": f.to_json(), "axioms": check });
    Ok(Outcome { report, ok: check.valid })
}

pub fn saturate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, f) = group_fusion(cfg)?;
    let report = f.is_saturated()?;
    Ok(Outcome { ok: report.saturated, report: json!({ "s_order": f.s().order(), "saturation": report }) })
}

pub fn centrics(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, f) = group_fusion(cfg)?;
    let list: Vec<Value> = f.centric_subgroups().iter().map(subgroup_json).collect();
    Ok(Outcome { report: json!({ "count": list.len(), "centric_subgroups": list }), ok: true })
}

pub fn linking(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.prime()?;
    let loaded = load_group(cfg)?;
    let s = chosen_subgroup(cfg, &loaded, p)?;
    let l = linking_of_group(&loaded.group, &s, p)?;
    let (a, b, c) = (l.verify_axiom_a(), l.verify_axiom_b(), l.verify_axiom_c());
    let ok = a.holds && b.holds && c.holds;
    let report = json!({ "linking_system": l.to_json(), "axiom_a": a, "axiom_b": b, "axiom_c": c });
    Ok(Outcome { report, ok })
}

pub fn verify_plfg(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.prime()?;
    let loaded = load_group(cfg)?;
    let report = plfg(&loaded.group, p)?;
    Ok(Outcome { ok: report.passed, report: serde_json::to_value(&report).expect("report serializes") })
}

pub fn classify_abelian(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.prime()?;
    let loaded = load_group(cfg)?;
    let c = enumerate_saturated_fusion_systems(&loaded.group, p)?;
    let systems: Vec<Value> = c.systems.iter().map(FusionSystem::to_json).collect();
    let report = json!({ "count": c.systems.len(), "classification": c, "systems": systems });
    Ok(Outcome { report, ok: c.agree })
}

/// Automorphisms of `s` generated by the lines of the `--W` file, each
/// listing images of the group file's generators separated by `;`.
fn automorphism_file(cfg: &RunConfig, loaded: &Loaded) -> Result<Vec<GroupHom>, CliError> {
    let s = &loaded.group;
    let whole = s.whole();
    let gens: Vec<Elem> = loaded
        .file
        .generators
        .iter()
        .map(|g| s.index_of(g).expect("generator lies in the group"))
        .collect();
    let mut auts = Vec::new();
    if let Some(path) = &cfg.w {
        for (lineno, raw) in read(path)?.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let images = parse_generators(line, loaded.file.degree)?;
            if images.len() != gens.len() {
                return Err(CliError::Input(format!(
                    "line {}: {} images for {} generators",
                    lineno + 1,
                    images.len(),
                    gens.len()
                )));
            }
            let images = images
                .iter()
                .map(|x| s.index_of(x).ok_or_else(|| CliError::Input(format!("line {}: {x} is not in the group", lineno + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            auts.push(GroupHom::from_generator_images(whole.clone(), whole.clone(), &gens, &images)?);
        }
    }
    Ok(generated_automorphisms(s, &auts)?)
}

pub fn cohomology(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let loaded = load_group(cfg)?;
    let w = automorphism_file(cfg, &loaded)?;
    let module = GModule::from_automorphisms(&w, &loaded.group)?;
    let degrees = (0..=3)
        .map(|k| Ok(json!({ "degree": k, "invariants": group_cohomology(&module, k)?.0 })))
        .collect::<Result<Vec<_>, CliError>>()?;
    let h2 = group_cohomology(&module, 2)?;
    let report = json!({
        "module_order": loaded.group.order(),
        "w_order": w.len(),
        "cohomology": degrees,
        "h2_vanishes": h2.is_trivial(),
    });
    Ok(Outcome { report, ok: true })
}

fn coeff_is_one(c: &LocalCoeff) -> bool {
    c.sub(&LocalCoeff::one()).is_ok_and(|d| d.is_zero())
}

pub fn idempotent(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.prime()?;
    let f = if cfg.w.is_some() {
        let loaded = load_group(cfg)?;
        let w = automorphism_file(cfg, &loaded)?;
        fusion_abelian(&w, &loaded.group, p)?
    } else {
        group_fusion(cfg)?.1
    };
    let result = characteristic_idempotent(&f, cfg.precision)?;
    let omega = &result.omega;
    let stability = is_f_stable(omega, &f)?;
    let idempotent = omega.compose(omega)?.sub(omega)?.is_zero();
    let augmentation = omega.augmentation();
    let augmentation_one = coeff_is_one(&augmentation);
    let uniqueness = if result.exact { Some(idempotent_uniqueness(&f, omega)?) } else { None };
    let ok = stability.stable && idempotent && augmentation_one;
    let report = json!({
        "sylow_order": f.s().order(),
        "omega": omega.to_json()?,
        "exact": result.exact,
        "iterations": result.iterations,
        "precision": result.precision,
        "augmentation": augmentation.to_string(),
        "idempotent": idempotent,
        "stability": stability,
        "uniqueness": uniqueness,
    });
    Ok(Outcome { report, ok })
}

/// Injective homomorphisms `P → T`, by trying generator images of matching order.
fn injective_homs(p: &Subgroup, t: &Arc<Group>) -> Vec<GroupHom> {
    let g = p.group();
    let gens = p.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| (0..t.order() as Elem).filter(|&y| t.element_order(y) == g.element_order(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Ok(phi) = GroupHom::from_generator_images(p.clone(), t.whole(), &gens, &images) {
            if phi.is_injective() {
                out.push(phi);
            }
        }
        let Some(k) = (0..choice.len()).rev().find(|&k| choice[k] + 1 < candidates[k].len()) else { break };
        choice[k] += 1;
        for c in choice.iter_mut().skip(k + 1) {
            *c = 0;
        }
    }
    out
}

pub fn frobenius_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, f) = group_fusion(cfg)?;
    let p = f.prime();
    let s = f.s().to_group();
    let subgroups = s.subgroups()?;
    let mut classical_failures = Vec::new();
    for h in &subgroups {
        if !verify_classical_frobenius(h, p)? {
            classical_failures.push(subgroup_json(h));
        }
    }
    let enumerate_diag = s.order() <= DIAG_ENUMERATION_LIMIT;
    let (mut diag_checked, mut diag_failures) = (0usize, Vec::new());
    if enumerate_diag {
        for h in &subgroups {
            for phi in injective_homs(h, &s) {
                diag_checked += 1;
                if !verify_diag_commute(&phi, p)? {
                    diag_failures.push(json!({ "domain": subgroup_json(h), "images": names(&s, &phi.generator_images().iter().map(|x| x.1).collect::<Vec<_>>()) }));
                }
            }
        }
    }
    let omega = characteristic_idempotent(&f, cfg.precision)?.omega;
    let reciprocity = verify_frobenius_reciprocity(&omega)?;
    let ok = classical_failures.is_empty() && diag_failures.is_empty() && reciprocity.reciprocity && reciprocity.after_omega;
    let report = json!({
        "sylow_order": s.order(),
        "classical": { "checked": subgroups.len(), "failures": classical_failures },
        "diag_commute": { "enumerated": enumerate_diag, "checked": diag_checked, "failures": diag_failures },
        "reciprocity": reciprocity,
    });
    Ok(Outcome { report, ok })
}

fn matrix_group(cfg: &RunConfig) -> Result<MatrixGroup, CliError> {
    let p = cfg.prime()?;
    let g = MatrixGroup::parse(p, &read(cfg.w_path()?)?)?;
    if let Some(n) = cfg.rank {
        if n != g.rank() {
            return Err(CliError::Input(format!("--rank {n} but the matrices are {}×{}", g.rank(), g.rank())));
        }
    }
    Ok(g)
}

pub fn invariants(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g = matrix_group(cfg)?;
    let ring = InvariantRing::new(&g, cfg.max_degree)?;
    let molien = molien_series(&g, cfg.max_degree)?;
    let dims: Vec<u64> = ring.dimensions().iter().map(|&d| d as u64).collect();
    let theta = theta_tilde(ring.algebra(), ring.bases())?;
    let generation = finite_generation_witness(&g, cfg.max_degree)?;
    let report = json!({
        "invariant_ring": ring.to_json(),
        "molien": molien,
        "molien_agrees": molien == dims,
        "theta_dimensions": theta.iter().map(Vec::len).collect::<Vec<_>>(),
        "generation": generation.to_json(),
    });
    Ok(Outcome { report, ok: molien == dims })
}

pub fn coh_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g = matrix_group(cfg)?;
    let report = verify_coh_properties(&g, cfg.max_degree)?;
    Ok(Outcome { ok: report.passed, report: serde_json::to_value(&report).expect("report serializes") })
}
