//! The sentence/model Galois connection of an institution, the functor `F`
//! from institutions to pi-institutions, and the Lemma-1 inclusions for
//! comorphisms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::institution::{
    check_inst_comorphism, validate_institution, InstComorphism, Institution, ModelId, SatMatrix, SentId,
};
use crate::pi_institution::{Closure, PiComorphism, PiInstitution};
use crate::report::ValidationReport;
use crate::subset::{all_subsets, ensure_within_cap, image, Subset, Universe};

/// An antitone pair between sentence subsets and model subsets.
pub trait Polarity {
    fn sentence_count(&self) -> usize;
    fn model_count(&self) -> usize;
    fn sentences_star(&self, gamma: &Subset) -> Subset;
    fn models_star(&self, models: &Subset) -> Subset;
}

impl Polarity for SatMatrix {
    fn sentence_count(&self) -> usize {
        self.sentences()
    }

    fn model_count(&self) -> usize {
        self.models()
    }

    fn sentences_star(&self, gamma: &Subset) -> Subset {
        SatMatrix::sentences_star(self, gamma)
    }

    fn models_star(&self, models: &Subset) -> Subset {
        SatMatrix::models_star(self, models)
    }
}

/// Models of `signature` satisfying every sentence in `gamma`.
pub fn sentences_star<S: AsRef<str>>(inst: &Institution, signature: &str, gamma: &[S]) -> Result<Vec<ModelId>> {
    let u = inst.sentences(signature)?;
    let g = u.subset(gamma).map_err(|sentence| Error::SentenceOutOfUniverse {
        signature: signature.to_owned(),
        sentence,
    })?;
    let stars = inst.matrix(signature)?.sentences_star(&g);
    Ok(inst.model_set(signature)?.names_of(&stars))
}

/// Sentences of `signature` satisfied by every model in `models`.
pub fn models_star<S: AsRef<str>>(inst: &Institution, signature: &str, models: &[S]) -> Result<Vec<SentId>> {
    let u = inst.model_set(signature)?;
    let m = u.subset(models).map_err(|model| Error::ModelOutOfUniverse {
        signature: signature.to_owned(),
        model,
    })?;
    let stars = inst.matrix(signature)?.models_star(&m);
    Ok(inst.sentences(signature)?.names_of(&stars))
}

/// `F(I)`: same signatures and sentences, closure `G -> G**`.
pub fn f_object(inst: &Institution) -> Result<PiInstitution> {
    let report = validate_institution(inst);
    if !report.is_clean() {
        return Err(Error::InvalidInstitution(report));
    }
    let closure: BTreeMap<_, _> = inst
        .sat
        .iter()
        .filter(|(o, _)| inst.sig.objects.contains(*o))
        .map(|(o, m)| (o.clone(), Closure::Semantic(m.clone())))
        .collect();
    Ok(PiInstitution {
        sig: inst.sig.clone(),
        sen: inst.sen.clone(),
        closure,
    })
}

/// `F(f) = <phi, alpha>`; `f` must be a valid comorphism `src -> dst`.
pub fn f_morphism(f: &InstComorphism, src: &Institution, dst: &Institution) -> Result<PiComorphism> {
    let report = check_inst_comorphism(f, src, dst);
    if !report.is_clean() {
        return Err(Error::InvalidComorphism(report));
    }
    Ok(forget_models(f))
}

/// Drops the model component without checking anything.
pub fn forget_models(f: &InstComorphism) -> PiComorphism {
    PiComorphism {
        phi: f.phi.clone(),
        alpha: f.alpha.clone(),
    }
}

/// Galois-connection laws of one signature of `inst`.
pub fn check_galois_laws(inst: &Institution, signature: &str, cap: usize) -> Result<ValidationReport> {
    check_polarity(
        inst.matrix(signature)?,
        signature,
        inst.sentences(signature)?,
        inst.model_set(signature)?,
        cap,
    )
}

/// Antitonicity, extensivity of both round trips and `X* = X***` on both
/// sides, by exhaustive subset enumeration.
pub fn check_polarity(
    p: &dyn Polarity,
    signature: &str,
    sentences: &Universe,
    models: &Universe,
    cap: usize,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let n = p.sentence_count();
    let m = p.model_count();
    ensure_within_cap(signature, n, cap)?;
    ensure_within_cap(signature, m, cap)?;

    for gamma in all_subsets(n) {
        let star = p.sentences_star(&gamma);
        let star2 = p.models_star(&star);
        if !gamma.is_subset(&star2) {
            r.push(
                "sentence-extensive",
                [signature, &sentences.key(&gamma)],
                format!("G** = {} does not contain G", sentences.key(&star2)),
            );
        }
        let star3 = p.sentences_star(&star2);
        if star3 != star {
            r.push(
                "triple-star",
                [signature, &sentences.key(&gamma)],
                format!("G* = {} but G*** = {}", models.key(&star), models.key(&star3)),
            );
        }
        for x in 0..n {
            if gamma.contains(x) {
                continue;
            }
            let mut delta = gamma.clone();
            delta.insert(x);
            if !p.sentences_star(&delta).is_subset(&star) {
                r.push(
                    "sentence-antitone",
                    [signature, &sentences.key(&gamma), &sentences.key(&delta)],
                    "larger sentence set has more models",
                );
            }
        }
    }

    for ms in all_subsets(m) {
        let star = p.models_star(&ms);
        let star2 = p.sentences_star(&star);
        if !ms.is_subset(&star2) {
            r.push(
                "model-extensive",
                [signature, &models.key(&ms)],
                format!("M** = {} does not contain M", models.key(&star2)),
            );
        }
        let star3 = p.models_star(&star2);
        if star3 != star {
            r.push(
                "model-triple-star",
                [signature, &models.key(&ms)],
                format!("M* = {} but M*** = {}", sentences.key(&star), sentences.key(&star3)),
            );
        }
        for x in 0..m {
            if ms.contains(x) {
                continue;
            }
            let mut bigger = ms.clone();
            bigger.insert(x);
            if !p.models_star(&bigger).is_subset(&star) {
                r.push(
                    "model-antitone",
                    [signature, &models.key(&ms), &models.key(&bigger)],
                    "larger model set has a larger theory",
                );
            }
        }
    }
    Ok(r)
}

/// Both Lemma-1 inclusions for every signature:
/// `beta[(alpha[G])*] <= G*` and `alpha[(beta[M])*] <= M*`.
pub fn check_lemma1(f: &InstComorphism, src: &Institution, dst: &Institution, cap: usize) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    for o in &src.sig.objects {
        let po = f.phi.object(o).ok_or_else(|| Error::UnknownSignature(o.clone()))?;
        let sents = src.sentences(o)?;
        let mods = src.model_set(o)?;
        let sents2 = dst.sentences(po)?;
        let mods2 = dst.model_set(po)?;
        let (Some(alpha), Some(beta)) = (f.alpha.index_map(o, sents, sents2), f.beta.index_map(o, mods2, mods)) else {
            r.push(
                "component-missing",
                [o.as_str()],
                format!("alpha or beta at {o} is not a total function"),
            );
            continue;
        };
        let sat = src.matrix(o)?;
        let sat2 = dst.matrix(po)?;
        ensure_within_cap(o, sents.len(), cap)?;
        ensure_within_cap(po, mods2.len(), cap)?;

        for gamma in all_subsets(sents.len()) {
            let lhs = image(
                &beta,
                &sat2.sentences_star(&image(&alpha, &gamma, sents2.len())),
                mods.len(),
            );
            let rhs = sat.sentences_star(&gamma);
            for m in lhs.difference(&rhs) {
                r.push(
                    "lemma1-models",
                    [o.as_str(), &sents.key(&gamma), mods.name(m)],
                    format!("{} is in beta[(alpha[G])*] but not in G*", mods.name(m)),
                );
            }
        }
        for ms in all_subsets(mods2.len()) {
            let lhs = image(&alpha, &sat.models_star(&image(&beta, &ms, mods.len())), sents2.len());
            let rhs = sat2.models_star(&ms);
            for s in lhs.difference(&rhs) {
                r.push(
                    "lemma1-sentences",
                    [o.as_str(), &mods2.key(&ms), sents2.name(s)],
                    format!("{} is in alpha[(beta[M])*] but not in M*", sents2.name(s)),
                );
            }
        }
    }
    Ok(r)
}
