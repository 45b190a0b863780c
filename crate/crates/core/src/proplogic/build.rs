use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::matrix::LogicPresentation;
use super::translation::{check_logic_morphism_with, translate_formula, SigTranslation};
use super::{LogicError, LogicResult};
use crate::error::Error;
use crate::fincat::{check_functor, FinCat, FinFunctor, NatTransSet, SetFunctor};
use crate::institution::Institution;
use crate::pi_institution::{Closure, PiComorphism, PiInstitution};
use crate::subset::Universe;

/// Object name of the single signature of a matrix institution.
pub const MATRIX_SIGNATURE: &str = "S0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLogic {
    pub name: String,
    pub logic: LogicPresentation,
}

/// A declared logic morphism `src -> dst`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicArrow {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub translation: SigTranslation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Strict,
    Flexible,
}

/// One-signature institution: formulas up to the depth cap, all valuations
/// as models, satisfaction as designation.
pub fn build_matrix_institution(l: &LogicPresentation) -> LogicResult<Institution> {
    l.validate()?;
    let universe = l.universe()?;
    let mut inst = Institution::new(FinCat::discrete([MATRIX_SIGNATURE]));
    inst.set_sentences(MATRIX_SIGNATURE, universe.iter().map(|f| f.to_string()))?;
    inst.set_models(MATRIX_SIGNATURE, l.valuations().iter().map(|v| l.valuation_id(v)))?;
    inst.sat
        .insert(MATRIX_SIGNATURE.to_owned(), l.designation_matrix(&universe)?);
    inst.fill_identities();
    Ok(inst)
}

/// Pi-institution over the category freely generated by `arrows`, with
/// matrix consequence as closure. Paths are named by joining arrow ids
/// with `;`.
pub fn build_logics_pi_institution(
    kind: MorphismKind,
    logics: &[NamedLogic],
    arrows: &[LogicArrow],
    cap: usize,
) -> LogicResult<PiInstitution> {
    let mut by_name: BTreeMap<&str, &LogicPresentation> = BTreeMap::new();
    for nl in logics {
        nl.logic.validate()?;
        if by_name.insert(&nl.name, &nl.logic).is_some() {
            return Err(Error::DuplicateId(nl.name.clone()).into());
        }
    }
    let mut sig = FinCat::default();
    let mut sen = SetFunctor::default();
    let mut closure = BTreeMap::new();
    let mut index: BTreeMap<&str, HashMap<String, usize>> = BTreeMap::new();
    for nl in logics {
        sig.add_object(&nl.name);
        let universe = nl.logic.universe()?;
        let names: Vec<String> = universe.iter().map(|f| f.to_string()).collect();
        index.insert(
            &nl.name,
            names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect(),
        );
        sen.objects.insert(nl.name.clone(), Universe::new(names)?);
        closure.insert(
            nl.name.clone(),
            Closure::Logic {
                logic: Box::new(nl.logic.clone()),
                sat: nl.logic.designation_matrix(&universe)?,
            },
        );
    }

    // Sentence maps of the generators, as index vectors.
    let mut generator_maps: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for a in arrows {
        if a.id.contains(';') || sig.morphisms.contains_key(&a.id) || generator_maps.contains_key(a.id.as_str()) {
            return Err(LogicError::InvalidTranslation(format!(
                "arrow id {} is reserved or repeated",
                a.id
            )));
        }
        let src = *by_name
            .get(a.src.as_str())
            .ok_or_else(|| Error::UnknownSignature(a.src.clone()))?;
        let dst = *by_name
            .get(a.dst.as_str())
            .ok_or_else(|| Error::UnknownSignature(a.dst.clone()))?;
        if kind == MorphismKind::Strict && !a.translation.is_strict() {
            return Err(LogicError::InvalidTranslation(format!(
                "{} is flexible in a strict fragment",
                a.id
            )));
        }
        let report = check_logic_morphism_with(&a.translation, src, dst, cap)?;
        if !report.is_clean() {
            return Err(LogicError::InvalidLogicMorphism {
                id: a.id.clone(),
                report,
            });
        }
        let target = &index[a.dst.as_str()];
        let mut map = Vec::new();
        for f in src.universe()? {
            let t = translate_formula(&a.translation, &f)?.to_string();
            let i = *target.get(&t).ok_or_else(|| {
                LogicError::InvalidTranslation(format!("{} sends {f} to {t}, outside the target universe", a.id))
            })?;
            map.push(i);
        }
        generator_maps.insert(&a.id, map);
    }

    // Composition closure: every nonempty path of generators.
    struct Path {
        id: String,
        src: String,
        dst: String,
        visited: Vec<String>,
        map: Vec<usize>,
    }
    let mut paths: Vec<Path> = arrows
        .iter()
        .map(|a| Path {
            id: a.id.clone(),
            src: a.src.clone(),
            dst: a.dst.clone(),
            visited: vec![a.src.clone(), a.dst.clone()],
            map: generator_maps[a.id.as_str()].clone(),
        })
        .collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &p in &frontier {
            let end = paths[p].dst.clone();
            for a in arrows.iter().filter(|a| a.src == end) {
                if paths[p].visited.contains(&a.dst) {
                    return Err(LogicError::ExplosionGuard {
                        count: u128::MAX,
                        bound: super::DEFAULT_FORMULA_BOUND,
                    });
                }
                let step = &generator_maps[a.id.as_str()];
                let mut visited = paths[p].visited.clone();
                visited.push(a.dst.clone());
                let path = Path {
                    id: format!("{};{}", paths[p].id, a.id),
                    src: paths[p].src.clone(),
                    dst: a.dst.clone(),
                    visited,
                    map: paths[p].map.iter().map(|&i| step[i]).collect(),
                };
                next.push(paths.len());
                paths.push(path);
                if paths.len() as u128 > super::DEFAULT_FORMULA_BOUND {
                    return Err(LogicError::ExplosionGuard {
                        count: paths.len() as u128,
                        bound: super::DEFAULT_FORMULA_BOUND,
                    });
                }
            }
        }
        frontier = next;
    }

    for p in &paths {
        sig.add_morphism(&p.id, &p.src, &p.dst)?;
        let su = &sen.objects[&p.src];
        let du = &sen.objects[&p.dst];
        let map = p
            .map
            .iter()
            .enumerate()
            .map(|(i, &k)| (su.name(i).to_owned(), du.name(k).to_owned()))
            .collect();
        sen.morphisms.insert(p.id.clone(), map);
    }
    for p in &paths {
        for q in paths.iter().filter(|q| q.src == p.dst) {
            sig.set_composite(&p.id, &q.id, &format!("{};{}", p.id, q.id));
        }
    }
    sen.fill_identities(&sig);
    Ok(PiInstitution { sig, sen, closure })
}

/// `<embedding, identities>` from a strict fragment into a flexible one.
/// The embedding may list only objects and generators; identities and
/// composites are filled in.
pub fn build_plus_comorphism(
    js: &PiInstitution,
    jf: &PiInstitution,
    embedding: &FinFunctor,
) -> LogicResult<PiComorphism> {
    let mut phi = embedding.clone();
    phi.complete(&js.sig, &jf.sig);
    let report = check_functor(&phi, &js.sig, &jf.sig);
    if !report.is_clean() {
        return Err(LogicError::NotASubcategory(report.to_string()));
    }
    let mut seen = BTreeMap::new();
    for (o, t) in &phi.objects {
        if let Some(other) = seen.insert(t, o) {
            return Err(LogicError::NotASubcategory(format!("{other} and {o} both go to {t}")));
        }
    }
    let mut seen = BTreeMap::new();
    for (f, t) in &phi.morphisms {
        if let Some(other) = seen.insert(t, f) {
            return Err(LogicError::NotASubcategory(format!("{other} and {f} both go to {t}")));
        }
    }
    for (o, t) in &phi.objects {
        if js.sentences(o)? != jf.sentences(t)? {
            return Err(LogicError::NotASubcategory(format!("sentences of {o} and {t} differ")));
        }
    }
    for (f, t) in &phi.morphisms {
        if js.sen.morphisms.get(f) != jf.sen.morphisms.get(t) {
            return Err(LogicError::NotASubcategory(format!(
                "translations along {f} and {t} differ"
            )));
        }
    }
    let alpha = NatTransSet {
        components: js
            .sen
            .objects
            .iter()
            .map(|(o, u)| (o.clone(), u.names().iter().map(|s| (s.clone(), s.clone())).collect()))
            .collect(),
    };
    Ok(PiComorphism { phi, alpha })
}
