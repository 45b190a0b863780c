use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::formula::{Formula, PropSignature};
use super::matrix::{eval_formula, LogicPresentation};
use super::{LogicError, LogicResult};
use crate::pi_institution::DEFAULT_CAP;
use crate::report::ValidationReport;
use crate::subset::{all_subsets, canonical_cmp, ensure_within_cap, render_key, Subset};

/// The `i`-th argument marker of a flexible image, counted from 1.
pub fn marker(i: usize) -> String {
    format!("x{i}")
}

/// A signature morphism: connectives go to connectives of the same arity
/// (strict) or to derived connectives written over markers `x1..xn`
/// (flexible).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "mapping", rename_all = "lowercase")]
pub enum SigTranslation {
    Strict(BTreeMap<String, String>),
    Flexible(BTreeMap<String, Formula>),
}

impl SigTranslation {
    pub fn identity(sig: &PropSignature) -> Self {
        SigTranslation::Strict(sig.connectives.keys().map(|c| (c.clone(), c.clone())).collect())
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, SigTranslation::Strict(_))
    }

    /// The derived connective `c` is sent to, over markers.
    pub fn image(&self, c: &str, arity: usize) -> Option<Formula> {
        match self {
            SigTranslation::Strict(m) => m
                .get(c)
                .map(|d| Formula::Conn(d.clone(), (1..=arity).map(|i| Formula::Var(marker(i))).collect())),
            SigTranslation::Flexible(m) => m.get(c).cloned(),
        }
    }

    /// The same morphism read as a flexible one.
    pub fn as_flexible(&self, src: &PropSignature) -> SigTranslation {
        match self {
            SigTranslation::Flexible(_) => self.clone(),
            SigTranslation::Strict(_) => SigTranslation::Flexible(
                src.connectives
                    .iter()
                    .filter_map(|(c, &n)| self.image(c, n).map(|f| (c.clone(), f)))
                    .collect(),
            ),
        }
    }

    /// Maximum depth of an image formula.
    pub fn growth(&self, src: &PropSignature) -> usize {
        src.connectives
            .iter()
            .filter_map(|(c, &n)| self.image(c, n))
            .map(|f| f.depth())
            .max()
            .unwrap_or(0)
    }

    /// Every source connective has an image over the target signature that
    /// uses only its own markers.
    pub fn validate(&self, src: &PropSignature, dst: &PropSignature) -> LogicResult<()> {
        for (c, &n) in &src.connectives {
            let img = self.image(c, n).ok_or_else(|| LogicError::MissingMapping(c.clone()))?;
            let markers: Vec<String> = (1..=n).map(marker).collect();
            img.check(dst, &markers)
                .map_err(|e| LogicError::InvalidTranslation(format!("image of {c}: {e}")))?;
        }
        Ok(())
    }
}

/// The induced translation of formulas.
pub fn translate_formula(t: &SigTranslation, f: &Formula) -> LogicResult<Formula> {
    match f {
        Formula::Var(_) => Ok(f.clone()),
        Formula::Conn(c, args) => {
            let img = t
                .image(c, args.len())
                .ok_or_else(|| LogicError::MissingMapping(c.clone()))?;
            let mut subst = BTreeMap::new();
            for (i, a) in args.iter().enumerate() {
                subst.insert(marker(i + 1), translate_formula(t, a)?);
            }
            Ok(img.substitute(&subst))
        }
    }
}

pub fn check_logic_morphism(
    t: &SigTranslation,
    l: &LogicPresentation,
    l2: &LogicPresentation,
) -> LogicResult<ValidationReport> {
    check_logic_morphism_with(t, l, l2, DEFAULT_CAP)
}

/// `G |- psi` implies `t[G] |-' t(psi)` for every `G + {psi}` within the
/// source universe.
pub fn check_logic_morphism_with(
    t: &SigTranslation,
    l: &LogicPresentation,
    l2: &LogicPresentation,
    cap: usize,
) -> LogicResult<ValidationReport> {
    t.validate(&l.signature, &l2.signature)?;
    if let Some(x) = l.variables.iter().find(|x| !l2.variables.contains(x)) {
        return Err(LogicError::InvalidTranslation(format!(
            "variable {x} is not a target variable"
        )));
    }
    let required = l.depth_cap * t.growth(&l.signature).max(1);
    if l2.depth_cap < required {
        return Err(LogicError::DepthOverflow {
            required,
            available: l2.depth_cap,
        });
    }
    let universe = l.universe()?;
    ensure_within_cap("source logic", universe.len(), cap)?;

    // Designation sets: the valuations under which each formula is designated.
    let src_vals = l.valuations();
    let dst_vals = l2.valuations();
    let mut d_src = Vec::new();
    let mut d_dst = Vec::new();
    for f in &universe {
        let tf = translate_formula(t, f)?;
        let mut a = Subset::with_capacity(src_vals.len());
        for (i, v) in src_vals.iter().enumerate() {
            a.set(i, l.matrix.is_designated(eval_formula(&l.matrix, v, f)?));
        }
        let mut b = Subset::with_capacity(dst_vals.len());
        for (i, v) in dst_vals.iter().enumerate() {
            b.set(i, l2.matrix.is_designated(eval_formula(&l2.matrix, v, &tf)?));
        }
        d_src.push(a);
        d_dst.push(b);
    }

    let mut subsets: Vec<Subset> = all_subsets(universe.len()).collect();
    subsets.sort_by(canonical_cmp);
    let rendered: Vec<String> = universe.iter().map(|f| f.to_string()).collect();
    let mut r = ValidationReport::new();
    for gamma in subsets {
        let mut models = Subset::with_capacity(src_vals.len());
        models.insert_range(..);
        let mut models2 = Subset::with_capacity(dst_vals.len());
        models2.insert_range(..);
        for g in gamma.ones() {
            models.intersect_with(&d_src[g]);
            models2.intersect_with(&d_dst[g]);
        }
        for psi in 0..universe.len() {
            if models.is_subset(&d_src[psi]) && !models2.is_subset(&d_dst[psi]) {
                let key = render_key(gamma.ones().map(|i| rendered[i].as_str()));
                r.push(
                    "logic-morphism",
                    [key.as_str(), rendered[psi].as_str()],
                    format!("{key} entails {} but the translations do not", rendered[psi]),
                );
            }
        }
    }
    Ok(r)
}
