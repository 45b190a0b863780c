//! The functor `G` from pi-institutions to institutions. Models of `G(J)` at
//! a signature are the closed theories of `J` there, ordered by inclusion;
//! a theory satisfies a sentence iff it contains it.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fincat::{MorId, NatTransSet, SetFunctor, Variance};
use crate::institution::{InstComorphism, Institution, SatMatrix};
use crate::pi_institution::{check_pi_comorphism, closed_sets, PiComorphism, PiInstitution};
use crate::report::ValidationReport;
use crate::subset::{preimage, Subset, Universe};

/// Closed theories at every signature, keyed by signature.
fn all_closed_sets(j: &PiInstitution, cap: usize) -> Result<BTreeMap<String, Vec<Subset>>> {
    j.sig
        .objects
        .iter()
        .map(|o| Ok((o.clone(), closed_sets(j, o, cap)?)))
        .collect()
}

/// `G(J)`. Model ids are the canonical renderings of the closed theories.
pub fn g_object(j: &PiInstitution, cap: usize) -> Result<Institution> {
    let closed = all_closed_sets(j, cap)?;
    let mut models = SetFunctor::default();
    let mut sat = BTreeMap::new();
    let mut model_order = BTreeMap::new();
    for (o, sets) in &closed {
        let u = j.sentences(o)?;
        models
            .objects
            .insert(o.clone(), Universe::new(sets.iter().map(|t| u.key(t)))?);
        sat.insert(o.clone(), SatMatrix::from_rows(u.len(), sets.clone()));
        let mut order = BTreeSet::new();
        for a in sets {
            for b in sets {
                if a != b && a.is_subset(b) {
                    order.insert((u.key(a), u.key(b)));
                }
            }
        }
        model_order.insert(o.clone(), order);
    }

    let mut report = ValidationReport::new();
    for (f, arrow) in &j.sig.morphisms {
        let Some(map) = j.sen.index_map(&j.sig, f, Variance::Covariant) else {
            report.push(
                "sentence-map",
                [f.as_str()],
                format!("sentence map of {f} is not a total function"),
            );
            continue;
        };
        let u1 = j.sentences(&arrow.src)?;
        let u2 = j.sentences(&arrow.dst)?;
        let mut reduct = BTreeMap::new();
        for t in &closed[&arrow.dst] {
            let pre = preimage(&map, t);
            if !closed[&arrow.src].contains(&pre) {
                report.push(
                    "preimage-closed",
                    [f.as_str(), &u2.key(t)],
                    format!("preimage {} is not closed", u1.key(&pre)),
                );
            }
            reduct.insert(u2.key(t), u1.key(&pre));
        }
        models.morphisms.insert(f.clone(), reduct);
    }
    if !report.is_clean() {
        return Err(Error::InvalidPiInstitution(report));
    }
    Ok(Institution {
        sig: j.sig.clone(),
        sen: j.sen.clone(),
        models,
        model_order,
        sat,
    })
}

/// Checks that `Sen(f)^-1(T)` is closed for every closed theory `T` at the
/// target of `f`.
pub fn check_preimage_closed(j: &PiInstitution, f: &MorId, cap: usize) -> Result<ValidationReport> {
    let arrow = j.sig.arrow(f).ok_or_else(|| Error::UnknownMorphism(f.clone()))?;
    let mut r = ValidationReport::new();
    let Some(map) = j.sen.index_map(&j.sig, f, Variance::Covariant) else {
        r.push(
            "sentence-map",
            [f.as_str()],
            format!("sentence map of {f} is not a total function"),
        );
        return Ok(r);
    };
    let u1 = j.sentences(&arrow.src)?;
    let u2 = j.sentences(&arrow.dst)?;
    for t in closed_sets(j, &arrow.dst, cap)? {
        let pre = preimage(&map, &t);
        let c = j.close(&arrow.src, &pre)?;
        if let Some(escape) = c.difference(&pre).next() {
            r.push(
                "preimage-closed",
                [f.as_str(), &u2.key(&t), u1.name(escape)],
                format!(
                    "C({}) contains {} outside the preimage of {}",
                    u1.key(&pre),
                    u1.name(escape),
                    u2.key(&t)
                ),
            );
        }
    }
    Ok(r)
}

/// `G(h) = <phi, alpha, beta>` with `beta_S(m) = alpha_S^-1(m)`.
pub fn g_morphism(h: &PiComorphism, src: &PiInstitution, dst: &PiInstitution, cap: usize) -> Result<InstComorphism> {
    let report = check_pi_comorphism(h, src, dst, cap)?;
    if !report.is_clean() {
        return Err(Error::InvalidComorphism(report));
    }
    let mut beta = NatTransSet::default();
    let mut bad = ValidationReport::new();
    for o in &src.sig.objects {
        let po = h.phi.object(o).ok_or_else(|| Error::UnknownSignature(o.clone()))?;
        let u = src.sentences(o)?;
        let u2 = dst.sentences(po)?;
        let alpha = h
            .alpha
            .index_map(o, u, u2)
            .ok_or_else(|| Error::UnknownSignature(o.clone()))?;
        let own = closed_sets(src, o, cap)?;
        let mut comp = BTreeMap::new();
        for m in closed_sets(dst, po, cap)? {
            let pre = preimage(&alpha, &m);
            if !own.contains(&pre) {
                bad.push(
                    "beta-well-defined",
                    [o.as_str(), &u2.key(&m)],
                    format!("alpha^-1 = {} is not closed", u.key(&pre)),
                );
            }
            comp.insert(u2.key(&m), u.key(&pre));
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::galois::{f_object, models_star};
    use crate::institution::{check_inst_comorphism, identity_inst_comorphism, validate_institution};
    use crate::pi_institution::{identity_pi_comorphism, DEFAULT_CAP};

    #[test]
    fn g_of_f_twoval() {
        let j = f_object(&fixtures::twoval()).unwrap();
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        assert_eq!(g.model_set("S0").unwrap().names(), [r#"["a"]"#, r#"["a","b"]"#]);
        assert!(!g.satisfies("S0", r#"["a"]"#, "b").unwrap());
        assert!(g.satisfies("S0", r#"["a","b"]"#, "b").unwrap());
        assert!(validate_institution(&g).is_pass());
        assert!(g.model_order["S0"].contains(&(r#"["a"]"#.into(), r#"["a","b"]"#.into())));
    }

    #[test]
    fn g_of_discrete_closure() {
        let j = fixtures::identity_closure(&["x"]);
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        assert_eq!(g.model_set("S0").unwrap().names(), ["[]", r#"["x"]"#]);
        assert!(!g.satisfies("S0", "[]", "x").unwrap());
    }

    #[test]
    fn g_of_f_rename_reducts_are_preimages() {
        let j = f_object(&fixtures::rename()).unwrap();
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        assert!(validate_institution(&g).is_pass());
        let u2 = j.sentences("S2").unwrap();
        for t in closed_sets(&j, "S2", DEFAULT_CAP).unwrap() {
            let expected = if t.contains(u2.index_of("q").unwrap()) {
                r#"["p"]"#
            } else {
                "[]"
            };
            assert_eq!(g.reduct("h", &u2.key(&t)).unwrap(), expected);
        }
        assert!(check_preimage_closed(&j, &"h".to_string(), DEFAULT_CAP)
            .unwrap()
            .is_pass());
        assert!(check_preimage_closed(&j, &"id_S2".to_string(), DEFAULT_CAP)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn closed_theory_is_its_own_theory() {
        let j = f_object(&fixtures::rename()).unwrap();
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        for o in ["S1", "S2"] {
            let u = g.sentences(o).unwrap().clone();
            for m in g.model_set(o).unwrap().names() {
                let theory = models_star(&g, o, &[m]).unwrap();
                let expected: Vec<String> = serde_json::from_str(m).unwrap();
                assert_eq!(theory, expected);
                assert!(u.subset(&theory).is_ok());
            }
        }
    }

    #[test]
    fn incoherent_j_is_rejected() {
        let j = fixtures::incoherent_rename();
        let r = check_preimage_closed(&j, &"h".to_string(), DEFAULT_CAP).unwrap();
        assert!(!r.is_clean());
        assert!(matches!(g_object(&j, DEFAULT_CAP), Err(Error::InvalidPiInstitution(_))));
    }

    #[test]
    fn g_preserves_identities() {
        let j = f_object(&fixtures::rename()).unwrap();
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        let gid = g_morphism(&identity_pi_comorphism(&j), &j, &j, DEFAULT_CAP).unwrap();
        assert_eq!(gid, identity_inst_comorphism(&g));
        assert!(check_inst_comorphism(&gid, &g, &g).is_pass());
    }
}
