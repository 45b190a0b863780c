//! Unit, counit and adjoint transpose of `G -| F`, with checkers for the
//! universal property, both triangle identities and `F . G = Id`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fincat::{check_functor, FinCat, FinFunctor, NatTransSet};
use crate::g_functor::{g_morphism, g_object};
use crate::galois::{f_object, forget_models};
use crate::institution::{
    check_inst_comorphism, compose_inst_comorphisms, identity_inst_comorphism, InstComorphism, Institution,
};
use crate::pi_institution::{
    check_pi_comorphism, closed_sets, compare_pi_institutions, compose_pi_comorphisms, identity_pi_comorphism,
    PiComorphism, PiInstitution, DEFAULT_CAP,
};
use crate::report::ValidationReport;
use crate::subset::{preimage, Universe};

/// Bounds for exhaustive sweeps and brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum universe size for subset enumeration.
    pub cap: usize,
    /// Maximum number of candidates enumerated in one search.
    pub search_bound: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            cap: DEFAULT_CAP,
            search_bound: 1 << 20,
        }
    }
}

/// `eta_J = <Id, Id> : J -> F(G(J))`.
pub fn unit(j: &PiInstitution) -> PiComorphism {
    identity_pi_comorphism(j)
}

/// The unit is a valid pi-comorphism and `C_S = C^{G(J)}_S` on every subset.
pub fn check_unit(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    let fgj = f_object(&g_object(j, cap)?)?;
    let mut r = check_pi_comorphism(&unit(j), j, &fgj, cap)?;
    r.merge(compare_pi_institutions(j, &fgj, cap)?);
    Ok(r)
}

/// The transpose `h^ : G(J) -> I` of `h : J -> F(I)`, with
/// `beta_S(m) = alpha_S^-1(m*)`.
pub fn transpose(h: &PiComorphism, j: &PiInstitution, inst: &Institution, cap: usize) -> Result<InstComorphism> {
    let fi = f_object(inst)?;
    let report = check_pi_comorphism(h, j, &fi, cap)?;
    if !report.is_clean() {
        return Err(Error::InvalidComorphism(report));
    }
    let mut beta = NatTransSet::default();
    let mut bad = ValidationReport::new();
    for o in &j.sig.objects {
        let po = h.phi.object(o).ok_or_else(|| Error::UnknownSignature(o.clone()))?;
        let u = j.sentences(o)?;
        let u2 = inst.sentences(po)?;
        let mods = inst.model_set(po)?;
        let sat = inst.matrix(po)?;
        let alpha = h
            .alpha
            .index_map(o, u, u2)
            .ok_or_else(|| Error::UnknownSignature(o.clone()))?;
        let closed = closed_sets(j, o, cap)?;
        let mut comp = BTreeMap::new();
        for m in 0..mods.len() {
            // The theory of a single model is its satisfaction row.
            let pre = preimage(&alpha, sat.row(m));
            if !closed.contains(&pre) {
                bad.push(
                    "beta-well-defined",
                    [o.as_str(), mods.name(m)],
                    format!("alpha^-1(m*) = {} is not closed", u.key(&pre)),
                );
            }
            comp.insert(mods.name(m).to_owned(), u.key(&pre));
        }
        beta.components.insert(o.clone(), comp);
    }
    if !bad.is_clean() {
        return Err(Error::InvalidComorphism(bad));
    }
    Ok(InstComorphism {
        phi: h.phi.clone(),
        alpha: h.alpha.clone(),
        beta,
    })
}

/// `eps_I : G(F(I)) -> I`, the transpose of the identity of `F(I)`.
pub fn counit(inst: &Institution, cap: usize) -> Result<InstComorphism> {
    let fi = f_object(inst)?;
    transpose(&identity_pi_comorphism(&fi), &fi, inst, cap)
}

/// Odometer over `choices[0] x choices[1] x ...`, yielding index vectors.
fn odometer(sizes: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if sizes.contains(&0) {
        None
    } else {
        Some(vec![0usize; sizes.len()])
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut i = 0;
        while let Some(cur) = current.as_mut() {
            if i == sizes.len() {
                current = None;
                break;
            }
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

fn bounded_product(sizes: &[usize], bound: u128) -> Result<u128> {
    let mut total: u128 = 1;
    for &s in sizes {
        total = total.saturating_mul(s as u128);
    }
    if total > bound {
        return Err(Error::SearchSpaceTooLarge { size: total, bound });
    }
    Ok(total)
}

/// All functions between two universes, as name maps.
fn all_functions(dom: &Universe, cod: &Universe, bound: u128) -> Result<Vec<BTreeMap<String, String>>> {
    bounded_product(&vec![cod.len(); dom.len()], bound)?;
    Ok(odometer(vec![cod.len(); dom.len()])
        .map(|digits| {
            dom.names()
                .iter()
                .zip(digits)
                .map(|(e, d)| (e.clone(), cod.name(d).to_owned()))
                .collect()
        })
        .collect())
}

/// Universal property of the transpose of `h : J -> F(I)`:
/// the triangle `F(h^) . eta_J = h` and uniqueness of `beta` by brute force.
pub fn check_universal_property(
    h: &PiComorphism,
    j: &PiInstitution,
    inst: &Institution,
    limits: &SearchLimits,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let gj = g_object(j, limits.cap)?;
    let transposed = match transpose(h, j, inst, limits.cap) {
        Ok(t) => Some(t),
        Err(Error::InvalidComorphism(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(t) = &transposed {
        let back = compose_pi_comorphisms(&unit(j), &forget_models(t))?;
        if &back != h {
            r.push("triangle", Vec::<String>::new(), "F(h^) . eta_J differs from h");
        }
    }

    // Candidate beta components per signature, filtered by compatibility.
    let mut per_sig: Vec<(String, Vec<BTreeMap<String, String>>)> = Vec::new();
    for o in &j.sig.objects {
        let Some(po) = h.phi.object(o) else {
            r.push("no-transpose", [o.as_str()], format!("phi does not map {o}"));
            return Ok(r);
        };
        let mods = inst.model_set(po)?;
        let theories = gj.model_set(o)?;
        let u = j.sentences(o)?;
        let u2 = inst.sentences(po)?;
        let Some(alpha) = h.alpha.index_map(o, u, u2) else {
            r.push(
                "no-transpose",
                [o.as_str()],
                format!("alpha at {o} is not a total function"),
            );
            return Ok(r);
        };
        let sat = inst.matrix(po)?;
        let gsat = gj.matrix(o)?;
        let mut survivors = Vec::new();
        for cand in all_functions(mods, theories, limits.search_bound)? {
            let ok = (0..mods.len()).all(|m| {
                let t = theories.index_of(&cand[mods.name(m)]).expect("theory id");
                (0..u.len()).all(|phi| sat.holds(m, alpha[phi]) == gsat.holds(t, phi))
            });
            if ok {
                survivors.push(cand);
            }
        }
        per_sig.push((o.clone(), survivors));
    }
    let sizes: Vec<usize> = per_sig.iter().map(|(_, s)| s.len()).collect();
    bounded_product(&sizes, limits.search_bound)?;
    let mut valid = Vec::new();
    for digits in odometer(sizes) {
        let beta = NatTransSet {
            components: per_sig
                .iter()
                .zip(&digits)
                .map(|((o, cands), &d)| (o.clone(), cands[d].clone()))
                .collect(),
        };
        let cand = InstComorphism {
            phi: h.phi.clone(),
            alpha: h.alpha.clone(),
            beta,
        };
        if check_inst_comorphism(&cand, &gj, inst).is_clean() {
            valid.push(cand);
        }
    }
    match (valid.len(), &transposed) {
        (0, _) => r.push(
            "no-transpose",
            Vec::<String>::new(),
            "no beta makes <phi, alpha, beta> a comorphism G(J) -> I",
        ),
        (1, Some(t)) if &valid[0] == t => {}
        (1, _) => r.push(
            "transpose-mismatch",
            Vec::<String>::new(),
            "the unique valid beta differs from alpha^-1[m*]",
        ),
        (n, _) => r.push(
            "non-unique",
            [n.to_string()],
            format!("{n} distinct beta families are valid"),
        ),
    }
    Ok(r)
}

/// `F(G(J)) = J` componentwise and extensionally.
pub fn check_fg_identity(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    let fgj = f_object(&g_object(j, cap)?)?;
    compare_pi_institutions(j, &fgj, cap)
}

/// `F(eps_I) . eta_{F(I)} = Id_{F(I)}`.
pub fn check_triangle_f(inst: &Institution, cap: usize) -> Result<ValidationReport> {
    let fi = f_object(inst)?;
    let eps = counit(inst, cap)?;
    let composite = compose_pi_comorphisms(&unit(&fi), &forget_models(&eps))?;
    let mut r = ValidationReport::new();
    if composite != identity_pi_comorphism(&fi) {
        r.push(
            "triangle-f",
            Vec::<String>::new(),
            "F(eps_I) . eta_F(I) is not the identity",
        );
    }
    Ok(r)
}

/// `eps_{G(J)} . G(eta_J) = Id_{G(J)}`.
pub fn check_triangle_g(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    let gj = g_object(j, cap)?;
    let fgj = f_object(&gj)?;
    let g_eta = g_morphism(&unit(j), j, &fgj, cap)?;
    let eps = counit(&gj, cap)?;
    let composite = compose_inst_comorphisms(&g_eta, &eps)?;
    let mut r = ValidationReport::new();
    let id = identity_inst_comorphism(&gj);
    if composite != id {
        for (o, comp) in &composite.beta.components {
            if id.beta.components.get(o) != Some(comp) {
                r.push(
                    "triangle-g",
                    [o.as_str()],
                    "beta component of eps_G(J) . G(eta_J) is not the identity",
                );
            }
        }
        if composite.phi != id.phi || composite.alpha != id.alpha {
            r.push(
                "triangle-g",
                Vec::<String>::new(),
                "phi or alpha of eps_G(J) . G(eta_J) is not the identity",
            );
        }
    }
    Ok(r)
}

/// The counit is a valid comorphism and both triangle identities hold at `I`
/// and at `F(I)`.
pub fn check_counit(inst: &Institution, cap: usize) -> Result<ValidationReport> {
    let fi = f_object(inst)?;
    let gfi = g_object(&fi, cap)?;
    let eps = counit(inst, cap)?;
    let mut r = check_inst_comorphism(&eps, &gfi, inst);
    r.merge(check_triangle_f(inst, cap)?);
    r.merge(check_triangle_g(&fi, cap)?);
    Ok(r)
}

/// Every functor between two finite categories, by brute force.
pub fn enumerate_functors(source: &FinCat, target: &FinCat, bound: u128) -> Result<Vec<FinFunctor>> {
    let objs: Vec<&String> = source.objects.iter().collect();
    let tobjs: Vec<&String> = target.objects.iter().collect();
    bounded_product(&vec![tobjs.len(); objs.len()], bound)?;
    let mut out = Vec::new();
    for digits in odometer(vec![tobjs.len(); objs.len()]) {
        let objects: BTreeMap<String, String> = objs
            .iter()
            .zip(&digits)
            .map(|(o, &d)| ((*o).clone(), tobjs[d].clone()))
            .collect();
        let mut choices: Vec<(&String, Vec<&String>)> = Vec::new();
        for (f, a) in &source.morphisms {
            let cands = target
                .morphisms
                .iter()
                .filter(|(_, ta)| ta.src == objects[&a.src] && ta.dst == objects[&a.dst])
                .map(|(g, _)| g)
                .collect();
            choices.push((f, cands));
        }
        let sizes: Vec<usize> = choices.iter().map(|(_, c)| c.len()).collect();
        bounded_product(&sizes, bound)?;
        for mdigits in odometer(sizes) {
            let functor = FinFunctor {
                objects: objects.clone(),
                morphisms: choices
                    .iter()
                    .zip(&mdigits)
                    .map(|((f, c), &d)| ((*f).clone(), c[d].clone()))
                    .collect(),
            };
            if check_functor(&functor, source, target).is_clean() {
                out.push(functor);
            }
        }
    }
    Ok(out)
}

/// All families of component functions `S(o) -> T(phi o)`.
fn all_families(
    objects: &[&String],
    source: &dyn Fn(&str) -> Result<Universe>,
    target: &dyn Fn(&str) -> Result<Universe>,
    bound: u128,
) -> Result<Vec<NatTransSet>> {
    let mut per: Vec<(&String, Vec<BTreeMap<String, String>>)> = Vec::new();
    for o in objects {
        per.push((o, all_functions(&source(o)?, &target(o)?, bound)?));
    }
    let sizes: Vec<usize> = per.iter().map(|(_, f)| f.len()).collect();
    bounded_product(&sizes, bound)?;
    Ok(odometer(sizes)
        .map(|digits| NatTransSet {
            components: per
                .iter()
                .zip(&digits)
                .map(|((o, fs), &d)| ((*o).clone(), fs[d].clone()))
                .collect(),
        })
        .collect())
}

/// Number of valid pi-comorphisms `src -> dst`.
pub fn count_pi_comorphisms(src: &PiInstitution, dst: &PiInstitution, limits: &SearchLimits) -> Result<u128> {
    let objects: Vec<&String> = src.sig.objects.iter().collect();
    let mut count = 0;
    for phi in enumerate_functors(&src.sig, &dst.sig, limits.search_bound)? {
        let families = all_families(
            &objects,
            &|o| Ok(src.sentences(o)?.clone()),
            &|o| Ok(dst.sentences(&phi.objects[o])?.clone()),
            limits.search_bound,
        )?;
        for alpha in families {
            let g = PiComorphism {
                phi: phi.clone(),
                alpha,
            };
            if check_pi_comorphism(&g, src, dst, limits.cap)?.is_clean() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Number of valid institution comorphisms `src -> dst`.
pub fn count_inst_comorphisms(src: &Institution, dst: &Institution, limits: &SearchLimits) -> Result<u128> {
    let objects: Vec<&String> = src.sig.objects.iter().collect();
    let mut count = 0;
    for phi in enumerate_functors(&src.sig, &dst.sig, limits.search_bound)? {
        let alphas = all_families(
            &objects,
            &|o| Ok(src.sentences(o)?.clone()),
            &|o| Ok(dst.sentences(&phi.objects[o])?.clone()),
            limits.search_bound,
        )?;
        let betas = all_families(
            &objects,
            &|o| Ok(dst.model_set(&phi.objects[o])?.clone()),
            &|o| Ok(src.model_set(o)?.clone()),
            limits.search_bound,
        )?;
        bounded_product(&[alphas.len(), betas.len()], limits.search_bound)?;
        for alpha in &alphas {
            for beta in &betas {
                let f = InstComorphism {
                    phi: phi.clone(),
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                };
                if check_inst_comorphism(&f, src, dst).is_clean() {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn odometer_counts() {
        assert_eq!(odometer(vec![2, 3]).count(), 6);
        assert_eq!(odometer(vec![]).count(), 1);
        assert_eq!(odometer(vec![2, 0]).count(), 0);
    }

    #[test]
    fn unit_of_twoval_closure() {
        let j = f_object(&fixtures::twoval()).unwrap();
        assert!(check_unit(&j, DEFAULT_CAP).unwrap().is_pass());
        assert!(check_unit(&fixtures::identity_closure(&["x", "y"]), DEFAULT_CAP)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn counit_of_twoval_is_theory_map() {
        let eps = counit(&fixtures::twoval(), DEFAULT_CAP).unwrap();
        let beta = &eps.beta.components["S0"];
        assert_eq!(beta["m1"], r#"["a"]"#);
        assert_eq!(beta["m2"], r#"["a","b"]"#);
        assert!(check_counit(&fixtures::twoval(), DEFAULT_CAP).unwrap().is_pass());
    }

    #[test]
    fn counit_of_closed_theory_institution_is_identity() {
        let j = f_object(&fixtures::twoval()).unwrap();
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        assert_eq!(counit(&g, DEFAULT_CAP).unwrap(), identity_inst_comorphism(&g));
    }

    #[test]
    fn universal_property_for_identity() {
        let i = fixtures::twoval();
        let fi = f_object(&i).unwrap();
        let h = identity_pi_comorphism(&fi);
        let r = check_universal_property(&h, &fi, &i, &SearchLimits::default()).unwrap();
        assert!(r.is_pass(), "{r}");
    }

    #[test]
    fn universal_property_into_trivial_institution() {
        let j = fixtures::identity_closure(&["x"]);
        let i = fixtures::single_model(&["x"]);
        let h = identity_pi_comorphism(&j);
        assert!(check_universal_property(&h, &j, &i, &SearchLimits::default())
            .unwrap()
            .is_pass());
    }

    #[test]
    fn swapped_alpha_has_no_transpose() {
        // alpha^-1 of m1's theory {a} is {b}, which is not closed in F(I).
        let i = fixtures::twoval();
        let j = f_object(&i).unwrap();
        let mut h = identity_pi_comorphism(&j);
        let comp = h.alpha.components.get_mut("S0").unwrap();
        comp.insert("a".into(), "b".into());
        comp.insert("b".into(), "a".into());
        assert!(matches!(
            transpose(&h, &j, &i, DEFAULT_CAP),
            Err(Error::InvalidComorphism(_))
        ));
        let r = check_universal_property(&h, &j, &i, &SearchLimits::default()).unwrap();
        assert!(r.has_law("no-transpose"), "{r}");
    }

    #[test]
    fn search_bound_is_enforced() {
        let i = fixtures::twoval();
        let fi = f_object(&i).unwrap();
        let h = identity_pi_comorphism(&fi);
        let limits = SearchLimits {
            cap: DEFAULT_CAP,
            search_bound: 2,
        };
        assert!(matches!(
            check_universal_property(&h, &fi, &i, &limits),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn hom_sets_match_at_desk_scale() {
        let i = fixtures::twoval();
        let j = f_object(&i).unwrap();
        let gj = g_object(&j, DEFAULT_CAP).unwrap();
        let limits = SearchLimits::default();
        let pi = count_pi_comorphisms(&j, &f_object(&i).unwrap(), &limits).unwrap();
        let inst = count_inst_comorphisms(&gj, &i, &limits).unwrap();
        assert!(pi > 0);
        assert_eq!(pi, inst);
    }
}
