//! Institutions over finite signature categories, their comorphisms and
//! morphisms, and the checkers for the satisfaction and compatibility laws.
//!
//! `Mod` is represented as a contravariant [`SetFunctor`]: the model sets
//! together with reduct functions, plus an optional partial order per
//! signature. Satisfaction is an explicit boolean matrix per signature.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fincat::{
    check_category, check_functor, check_naturality, check_set_functor, FinCat, FinFunctor, NatTransSet, ObjId,
    SetFunctor, Variance,
};
use crate::report::ValidationReport;
use crate::subset::{Subset, Universe};

pub type ModelId = String;
pub type SentId = String;

/// Satisfaction relation of one signature: one row per model, one column per
/// sentence, both in universe order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatMatrix {
    sentences: usize,
    rows: Vec<Subset>,
}

impl SatMatrix {
    pub fn new(models: usize, sentences: usize) -> Self {
        SatMatrix {
            sentences,
            rows: vec![Subset::with_capacity(sentences); models],
        }
    }

    pub fn from_rows(sentences: usize, rows: Vec<Subset>) -> Self {
        SatMatrix { sentences, rows }
    }

    pub fn models(&self) -> usize {
        self.rows.len()
    }

    pub fn sentences(&self) -> usize {
        self.sentences
    }

    pub fn holds(&self, model: usize, sentence: usize) -> bool {
        self.rows[model].contains(sentence)
    }

    pub fn set(&mut self, model: usize, sentence: usize, value: bool) {
        self.rows[model].set(sentence, value);
    }

    /// The theory of a single model.
    pub fn row(&self, model: usize) -> &Subset {
        &self.rows[model]
    }

    /// Models satisfying every sentence of `gamma`.
    pub fn sentences_star(&self, gamma: &Subset) -> Subset {
        let mut out = Subset::with_capacity(self.rows.len());
        for (m, row) in self.rows.iter().enumerate() {
            if gamma.is_subset(row) {
                out.insert(m);
            }
        }
        out
    }

    /// Sentences satisfied by every model of `models`.
    pub fn models_star(&self, models: &Subset) -> Subset {
        let mut out = Subset::with_capacity(self.sentences);
        out.insert_range(..);
        for m in models.ones() {
            out.intersect_with(&self.rows[m]);
        }
        out
    }

    /// Semantic closure `gamma**`.
    pub fn closure(&self, gamma: &Subset) -> Subset {
        self.models_star(&self.sentences_star(gamma))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Institution {
    pub sig: FinCat,
    pub sen: SetFunctor,
    /// Contravariant: `models.morphisms[h]` is the reduct along `h`.
    pub models: SetFunctor,
    /// Strict order pairs `(below, above)`; absent means discrete.
    pub model_order: BTreeMap<ObjId, BTreeSet<(ModelId, ModelId)>>,
    pub sat: BTreeMap<ObjId, SatMatrix>,
}

impl Institution {
    /// Empty institution over `sig`; fill in with the `set_*` methods.
    pub fn new(sig: FinCat) -> Self {
        Institution {
            sig,
            ..Default::default()
        }
    }

    pub fn set_sentences<I, S>(&mut self, o: &str, names: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.sen.objects.insert(o.to_owned(), Universe::new(names)?);
        Ok(())
    }

    pub fn set_models<I, S>(&mut self, o: &str, names: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.models.objects.insert(o.to_owned(), Universe::new(names)?);
        Ok(())
    }

    pub fn set_sen_map<'a>(&mut self, f: &str, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) {
        self.sen.morphisms.insert(
            f.to_owned(),
            pairs.into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect(),
        );
    }

    pub fn set_reduct<'a>(&mut self, f: &str, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) {
        self.models.morphisms.insert(
            f.to_owned(),
            pairs.into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect(),
        );
    }

    /// Replaces the satisfaction relation at `o` by the listed (model, sentence) pairs.
    pub fn set_sat<'a>(&mut self, o: &str, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<()> {
        let sents = self.sentences(o)?.clone();
        let mods = self.model_set(o)?.clone();
        let mut m = SatMatrix::new(mods.len(), sents.len());
        for (model, sentence) in pairs {
            let mi = mods.index_of(model).ok_or_else(|| Error::ModelOutOfUniverse {
                signature: o.to_owned(),
                model: model.to_owned(),
            })?;
            let si = sents.index_of(sentence).ok_or_else(|| Error::SentenceOutOfUniverse {
                signature: o.to_owned(),
                sentence: sentence.to_owned(),
            })?;
            m.set(mi, si, true);
        }
        self.sat.insert(o.to_owned(), m);
        Ok(())
    }

    /// Adds identity sentence maps and identity reducts where missing.
    pub fn fill_identities(&mut self) {
        self.sen.fill_identities(&self.sig);
        self.models.fill_identities(&self.sig);
    }

    pub fn sentences(&self, o: &str) -> Result<&Universe> {
        self.sen
            .objects
            .get(o)
            .ok_or_else(|| Error::UnknownSignature(o.to_owned()))
    }

    pub fn model_set(&self, o: &str) -> Result<&Universe> {
        self.models
            .objects
            .get(o)
            .ok_or_else(|| Error::UnknownSignature(o.to_owned()))
    }

    pub fn matrix(&self, o: &str) -> Result<&SatMatrix> {
        self.sat.get(o).ok_or_else(|| Error::UnknownSignature(o.to_owned()))
    }

    pub fn satisfies(&self, o: &str, model: &str, sentence: &str) -> Result<bool> {
        let mi = self
            .model_set(o)?
            .index_of(model)
            .ok_or_else(|| Error::ModelOutOfUniverse {
                signature: o.to_owned(),
                model: model.to_owned(),
            })?;
        let si = self
            .sentences(o)?
            .index_of(sentence)
            .ok_or_else(|| Error::SentenceOutOfUniverse {
                signature: o.to_owned(),
                sentence: sentence.to_owned(),
            })?;
        Ok(self.matrix(o)?.holds(mi, si))
    }

    pub fn set_satisfaction(&mut self, o: &str, model: &str, sentence: &str, value: bool) -> Result<()> {
        let mi = self
            .model_set(o)?
            .index_of(model)
            .ok_or_else(|| Error::ModelOutOfUniverse {
                signature: o.to_owned(),
                model: model.to_owned(),
            })?;
        let si = self
            .sentences(o)?
            .index_of(sentence)
            .ok_or_else(|| Error::SentenceOutOfUniverse {
                signature: o.to_owned(),
                sentence: sentence.to_owned(),
            })?;
        self.sat
            .get_mut(o)
            .ok_or_else(|| Error::UnknownSignature(o.to_owned()))?
            .set(mi, si, value);
        Ok(())
    }

    pub fn reduct(&self, f: &str, model: &str) -> Option<&ModelId> {
        self.models.apply(f, model)
    }
}

fn check_sat_shape(inst: &Institution, r: &mut ValidationReport) {
    for o in &inst.sig.objects {
        let (Some(s), Some(m)) = (inst.sen.objects.get(o), inst.models.objects.get(o)) else {
            continue;
        };
        match inst.sat.get(o) {
            None => r.push("sat-shape", [o.as_str()], format!("no satisfaction relation at {o}")),
            Some(mat) if mat.models() != m.len() || mat.sentences() != s.len() => r.push(
                "sat-shape",
                [o.as_str()],
                format!(
                    "satisfaction at {o} is {}x{}, expected {}x{}",
                    mat.models(),
                    mat.sentences(),
                    m.len(),
                    s.len()
                ),
            ),
            Some(_) => {}
        }
    }
}

fn check_model_order(inst: &Institution, r: &mut ValidationReport) {
    for (o, pairs) in &inst.model_order {
        let Some(u) = inst.models.objects.get(o) else {
            r.push(
                "model-order",
                [o.as_str()],
                format!("order declared for unknown signature {o}"),
            );
            continue;
        };
        for (a, b) in pairs {
            if !u.contains(a) || !u.contains(b) {
                r.push(
                    "model-order",
                    [o.as_str(), a.as_str(), b.as_str()],
                    "order relates unknown models",
                );
            } else if a == b {
                r.push(
                    "model-order",
                    [o.as_str(), a.as_str(), b.as_str()],
                    "strict order pair is reflexive",
                );
            } else if pairs.contains(&(b.clone(), a.clone())) && a < b {
                r.push(
                    "model-order",
                    [o.as_str(), a.as_str(), b.as_str()],
                    "order is not antisymmetric",
                );
            }
            for (b2, c) in pairs.range((b.clone(), String::new())..) {
                if b2 != b {
                    break;
                }
                if c != a && !pairs.contains(&(a.clone(), c.clone())) {
                    r.push(
                        "model-order",
                        [o.as_str(), a.as_str(), b.as_str(), c.as_str()],
                        "order is not transitive",
                    );
                }
            }
        }
    }
    let le = |o: &str, a: &str, b: &str| {
        a == b
            || inst
                .model_order
                .get(o)
                .is_some_and(|p| p.contains(&(a.to_owned(), b.to_owned())))
    };
    for (f, arrow) in &inst.sig.morphisms {
        let Some(pairs) = inst.model_order.get(&arrow.dst) else {
            continue;
        };
        for (a, b) in pairs {
            if let (Some(ra), Some(rb)) = (inst.reduct(f, a), inst.reduct(f, b)) {
                if !le(&arrow.src, ra, rb) {
                    r.push(
                        "reduct-monotone",
                        [f.as_str(), a.as_str(), b.as_str()],
                        format!("reduct along {f} does not preserve {a} <= {b}"),
                    );
                }
            }
        }
    }
}

/// `sat'(M', Sen(h)(phi)) <=> sat(Mod(h)(M'), phi)` for every arrow `h`.
pub fn check_satisfaction_condition(inst: &Institution) -> ValidationReport {
    let mut r = ValidationReport::new();
    for (h, arrow) in &inst.sig.morphisms {
        let (Some(sen_map), Some(red)) = (
            inst.sen.index_map(&inst.sig, h, Variance::Covariant),
            inst.models.index_map(&inst.sig, h, Variance::Contravariant),
        ) else {
            continue;
        };
        let (Some(sat_src), Some(sat_dst)) = (inst.sat.get(&arrow.src), inst.sat.get(&arrow.dst)) else {
            continue;
        };
        if sat_dst.models() != red.len() || sat_src.sentences() != sen_map.len() {
            continue;
        }
        let sents = &inst.sen.objects[&arrow.src];
        let mods = &inst.models.objects[&arrow.dst];
        for (m2, &m1) in red.iter().enumerate() {
            for (phi, &phi2) in sen_map.iter().enumerate() {
                let lhs = sat_dst.holds(m2, phi2);
                let rhs = sat_src.holds(m1, phi);
                if lhs != rhs {
                    r.push(
                        "satisfaction",
                        [h.as_str(), mods.name(m2), sents.name(phi)],
                        format!(
                            "{} |= {h}({}) is {lhs} but its reduct satisfies {} is {rhs}",
                            mods.name(m2),
                            sents.name(phi),
                            sents.name(phi)
                        ),
                    );
                }
            }
        }
    }
    r
}

/// All structural checks plus the satisfaction condition.
pub fn validate_institution(inst: &Institution) -> ValidationReport {
    let mut r = check_category(&inst.sig);
    r.merge(check_set_functor(&inst.sen, &inst.sig, Variance::Covariant));
    r.merge(check_set_functor(&inst.models, &inst.sig, Variance::Contravariant));
    check_sat_shape(inst, &mut r);
    check_model_order(inst, &mut r);
    r.merge(check_satisfaction_condition(inst));
    r
}

/// Comorphism `<phi, alpha, beta>`: sentences forward, models backward.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstComorphism {
    pub phi: FinFunctor,
    /// `alpha_S : Sen(S) -> Sen'(phi S)`
    pub alpha: NatTransSet,
    /// `beta_S : Mod'(phi S) -> Mod(S)`
    pub beta: NatTransSet,
}

/// Morphism `<Phi, alpha, beta>`: sentences backward, models forward.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstMorphism {
    pub phi: FinFunctor,
    /// `alpha_S : Sen'(Phi S) -> Sen(S)`
    pub alpha: NatTransSet,
    /// `beta_S : Mod(S) -> Mod'(Phi S)`
    pub beta: NatTransSet,
}

fn index_component(n: &NatTransSet, o: &str, dom: Option<&Universe>, cod: Option<&Universe>) -> Option<Vec<usize>> {
    n.index_map(o, dom?, cod?)
}

pub fn check_inst_comorphism(f: &InstComorphism, src: &Institution, dst: &Institution) -> ValidationReport {
    let mut r = check_functor(&f.phi, &src.sig, &dst.sig);
    r.merge(check_naturality(
        &f.alpha,
        &src.sig,
        src.sen.view(),
        dst.sen.along(&f.phi),
        Variance::Covariant,
    ));
    r.merge(check_naturality(
        &f.beta,
        &src.sig,
        dst.models.along(&f.phi),
        src.models.view(),
        Variance::Contravariant,
    ));
    for o in &src.sig.objects {
        let Some(po) = f.phi.object(o) else { continue };
        let alpha = index_component(&f.alpha, o, src.sen.set(o), dst.sen.set(po));
        let beta = index_component(&f.beta, o, dst.models.set(po), src.models.set(o));
        let (Some(alpha), Some(beta), Some(sat), Some(sat2)) = (alpha, beta, src.sat.get(o), dst.sat.get(po)) else {
            continue;
        };
        let sents = &src.sen.objects[o];
        let mods2 = &dst.models.objects[po];
        for (m2, &m) in beta.iter().enumerate() {
            for (phi, &phi2) in alpha.iter().enumerate() {
                let lhs = sat2.holds(m2, phi2);
                let rhs = sat.holds(m, phi);
                if lhs != rhs {
                    r.push(
                        "compatibility",
                        [o.as_str(), mods2.name(m2), sents.name(phi)],
                        format!(
                            "{} |= alpha({}) is {lhs} but beta({}) |= {} is {rhs}",
                            mods2.name(m2),
                            sents.name(phi),
                            mods2.name(m2),
                            sents.name(phi)
                        ),
                    );
                }
            }
        }
    }
    r
}

pub fn check_inst_morphism(h: &InstMorphism, src: &Institution, dst: &Institution) -> ValidationReport {
    let mut r = check_functor(&h.phi, &src.sig, &dst.sig);
    r.merge(check_naturality(
        &h.alpha,
        &src.sig,
        dst.sen.along(&h.phi),
        src.sen.view(),
        Variance::Covariant,
    ));
    r.merge(check_naturality(
        &h.beta,
        &src.sig,
        src.models.view(),
        dst.models.along(&h.phi),
        Variance::Contravariant,
    ));
    for o in &src.sig.objects {
        let Some(po) = h.phi.object(o) else { continue };
        let alpha = index_component(&h.alpha, o, dst.sen.set(po), src.sen.set(o));
        let beta = index_component(&h.beta, o, src.models.set(o), dst.models.set(po));
        let (Some(alpha), Some(beta), Some(sat), Some(sat2)) = (alpha, beta, src.sat.get(o), dst.sat.get(po)) else {
            continue;
        };
        let mods = &src.models.objects[o];
        let sents2 = &dst.sen.objects[po];
        for (m, &m2) in beta.iter().enumerate() {
            for (phi2, &phi) in alpha.iter().enumerate() {
                let lhs = sat.holds(m, phi);
                let rhs = sat2.holds(m2, phi2);
                if lhs != rhs {
                    r.push(
                        "compatibility",
                        [o.as_str(), mods.name(m), sents2.name(phi2)],
                        format!(
                            "{} |= alpha({}) is {lhs} but beta({}) |= {} is {rhs}",
                            mods.name(m),
                            sents2.name(phi2),
                            mods.name(m),
                            sents2.name(phi2)
                        ),
                    );
                }
            }
        }
    }
    r
}

pub fn identity_inst_comorphism(inst: &Institution) -> InstComorphism {
    InstComorphism {
        phi: FinFunctor::identity(&inst.sig),
        alpha: NatTransSet::identity(&inst.sen),
        beta: NatTransSet::identity(&inst.models),
    }
}

pub fn identity_inst_morphism(inst: &Institution) -> InstMorphism {
    InstMorphism {
        phi: FinFunctor::identity(&inst.sig),
        alpha: NatTransSet::identity(&inst.sen),
        beta: NatTransSet::identity(&inst.models),
    }
}

/// `first` then `second` as maps: `x -> second(first(x))`.
pub(crate) fn then_map(
    first: &BTreeMap<String, String>,
    second: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, String>> {
    first
        .iter()
        .map(|(k, v)| {
            second
                .get(v)
                .map(|w| (k.clone(), w.clone()))
                .ok_or_else(|| Error::DomainMismatch(format!("{v} is outside the domain of the next component")))
        })
        .collect()
}

/// Composite of forward components: `(a' . a)_S = a'_{phi S} . a_S`.
pub(crate) fn compose_forward(phi: &FinFunctor, first: &NatTransSet, second: &NatTransSet) -> Result<NatTransSet> {
    let mut components = BTreeMap::new();
    for (o, comp) in &first.components {
        let po = phi
            .object(o)
            .ok_or_else(|| Error::DomainMismatch(format!("object {o} is not mapped by the first functor")))?;
        let next = second
            .component(po)
            .ok_or_else(|| Error::DomainMismatch(format!("no component at {po} in the second comorphism")))?;
        components.insert(o.clone(), then_map(comp, next)?);
    }
    Ok(NatTransSet { components })
}

/// Composite of backward components: `(b' . b)_S = b_S . b'_{phi S}`.
pub(crate) fn compose_backward(phi: &FinFunctor, first: &NatTransSet, second: &NatTransSet) -> Result<NatTransSet> {
    let mut components = BTreeMap::new();
    for (o, comp) in &first.components {
        let po = phi
            .object(o)
            .ok_or_else(|| Error::DomainMismatch(format!("object {o} is not mapped by the first functor")))?;
        let prev = second
            .component(po)
            .ok_or_else(|| Error::DomainMismatch(format!("no component at {po} in the second comorphism")))?;
        components.insert(o.clone(), then_map(prev, comp)?);
    }
    Ok(NatTransSet { components })
}

/// `second . first`, for `first: I -> I'` and `second: I' -> I''`.
pub fn compose_inst_comorphisms(first: &InstComorphism, second: &InstComorphism) -> Result<InstComorphism> {
    Ok(InstComorphism {
        phi: first.phi.then(&second.phi)?,
        alpha: compose_forward(&first.phi, &first.alpha, &second.alpha)?,
        beta: compose_backward(&first.phi, &first.beta, &second.beta)?,
    })
}
