//! Pi-institutions: a sentence functor with one closure operator per
//! signature, plus checkers for the closure laws, coherence and
//! pi-comorphism compatibility.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{check_functor, check_naturality, FinCat, FinFunctor, NatTransSet, ObjId, SetFunctor, Variance};
use crate::institution::{compose_forward, SatMatrix};
use crate::proplogic::LogicPresentation;
use crate::report::ValidationReport;
use crate::subset::{all_subsets, canonical_cmp, ensure_within_cap, image, to_mask, Subset, Universe};

/// Default bound on sentences per signature for exhaustive subset sweeps.
pub const DEFAULT_CAP: usize = 16;

pub type ClosureFn = Arc<dyn Fn(&Subset) -> Subset + Send + Sync>;

/// One closure operator on the subsets of a finite sentence universe.
#[derive(Clone)]
pub enum Closure {
    /// Explicit table, indexed by subset mask.
    Table(Vec<Subset>),
    /// `G -> G**` through a satisfaction matrix.
    Semantic(SatMatrix),
    /// Matrix consequence of a logic presentation; `sat` has one row per valuation.
    Logic {
        logic: Box<LogicPresentation>,
        sat: SatMatrix,
    },
    /// Arbitrary callable, mostly for test doubles.
    Oracle(ClosureFn),
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Closure::Table(t) => f.debug_tuple("Table").field(&t.len()).finish(),
            Closure::Semantic(m) => f.debug_tuple("Semantic").field(m).finish(),
            Closure::Logic { sat, .. } => f.debug_struct("Logic").field("sat", sat).finish_non_exhaustive(),
            Closure::Oracle(_) => f.write_str("Oracle(..)"),
        }
    }
}

impl Closure {
    pub fn apply(&self, gamma: &Subset) -> Subset {
        match self {
            Closure::Table(t) => t[to_mask(gamma) as usize].clone(),
            Closure::Semantic(m) | Closure::Logic { sat: m, .. } => m.closure(gamma),
            Closure::Oracle(f) => f(gamma),
        }
    }

    /// Tabulates `f` over every subset of an `n`-element universe.
    pub fn tabulate(n: usize, f: impl Fn(&Subset) -> Subset) -> Self {
        Closure::Table(all_subsets(n).map(|s| f(&s)).collect())
    }

    pub fn oracle(f: impl Fn(&Subset) -> Subset + Send + Sync + 'static) -> Self {
        Closure::Oracle(Arc::new(f))
    }

    /// The discrete closure `C(G) = G`.
    pub fn identity() -> Self {
        Closure::oracle(|s| s.clone())
    }

    /// The indiscrete closure `C(G) = universe`.
    pub fn indiscrete(n: usize) -> Self {
        Closure::oracle(move |_| {
            let mut s = Subset::with_capacity(n);
            s.insert_range(..);
            s
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct PiInstitution {
    pub sig: FinCat,
    pub sen: SetFunctor,
    pub closure: BTreeMap<ObjId, Closure>,
}

impl PiInstitution {
    pub fn sentences(&self, o: &str) -> Result<&Universe> {
        self.sen
            .objects
            .get(o)
            .ok_or_else(|| Error::UnknownSignature(o.to_owned()))
    }

    pub fn operator(&self, o: &str) -> Result<&Closure> {
        self.closure.get(o).ok_or_else(|| Error::UnknownSignature(o.to_owned()))
    }

    /// Closure of an index subset, resized to the universe.
    pub fn close(&self, o: &str, gamma: &Subset) -> Result<Subset> {
        let n = self.sentences(o)?.len();
        let mut out = self.operator(o)?.apply(gamma);
        out.grow(n);
        Ok(out)
    }

    /// Replaces every closure by an explicit table. Fails above `cap`.
    pub fn tabulated(&self, cap: usize) -> Result<PiInstitution> {
        let mut closure = BTreeMap::new();
        for (o, c) in &self.closure {
            let n = self.sentences(o)?.len();
            ensure_within_cap(o, n, cap)?;
            let table = match c {
                Closure::Table(t) => Closure::Table(t.clone()),
                c => Closure::tabulate(n, |s| {
                    let mut out = c.apply(s);
                    out.grow(n);
                    out
                }),
            };
            closure.insert(o.clone(), table);
        }
        Ok(PiInstitution {
            sig: self.sig.clone(),
            sen: self.sen.clone(),
            closure,
        })
    }
}

/// `C_S(G)` by sentence names, in universe order.
pub fn closure_of<S: AsRef<str>>(j: &PiInstitution, signature: &str, gamma: &[S]) -> Result<Vec<String>> {
    let u = j.sentences(signature)?;
    let g = u.subset(gamma).map_err(|sentence| Error::SentenceOutOfUniverse {
        signature: signature.to_owned(),
        sentence,
    })?;
    Ok(u.names_of(&j.close(signature, &g)?))
}

/// Every closure image at `signature`, deduplicated and canonically sorted.
pub fn closed_sets(j: &PiInstitution, signature: &str, cap: usize) -> Result<Vec<Subset>> {
    let n = j.sentences(signature)?.len();
    ensure_within_cap(signature, n, cap)?;
    let mut out = Vec::new();
    for s in all_subsets(n) {
        out.push(j.close(signature, &s)?);
    }
    out.sort_by(canonical_cmp);
    out.dedup();
    Ok(out)
}

/// Supplies subsets to sweep when a universe is above the enumeration cap.
pub trait SubsetSampler {
    fn sample(&self, signature: &str, universe: &Universe) -> Vec<Subset>;
}

/// Samples every subset with at most `.0` elements.
#[derive(Debug, Clone, Copy)]
pub struct SmallSubsets(pub usize);

impl SubsetSampler for SmallSubsets {
    fn sample(&self, _signature: &str, universe: &Universe) -> Vec<Subset> {
        let n = universe.len();
        let mut out = vec![universe.empty()];
        let mut frontier = vec![(universe.empty(), 0usize)];
        for _ in 0..self.0 {
            let mut next = Vec::new();
            for (s, start) in &frontier {
                for i in *start..n {
                    let mut t = s.clone();
                    t.insert(i);
                    out.push(t.clone());
                    next.push((t, i + 1));
                }
            }
            frontier = next;
        }
        out
    }
}

/// Subsets to sweep at one signature: all of them within cap, else a sample.
fn sweep(
    signature: &str,
    u: &Universe,
    cap: usize,
    sampler: Option<&dyn SubsetSampler>,
    report: &mut ValidationReport,
) -> Result<Vec<Subset>> {
    match ensure_within_cap(signature, u.len(), cap) {
        Ok(()) => Ok(all_subsets(u.len()).collect()),
        Err(e) => match sampler {
            Some(s) => {
                report.mark_sampled();
                Ok(s.sample(signature, u))
            }
            None => Err(e),
        },
    }
}

fn out_of_universe(s: &Subset, n: usize) -> bool {
    s.ones().any(|i| i >= n)
}

pub fn check_closure_laws(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    check_closure_laws_with(j, cap, None)
}

/// Extensivity, monotonicity and idempotence of every `C_S`.
///
/// Monotonicity is swept over covering pairs `G <= G + {x}`, which implies it
/// for all pairs by transitivity of inclusion.
pub fn check_closure_laws_with(
    j: &PiInstitution,
    cap: usize,
    sampler: Option<&dyn SubsetSampler>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    for o in &j.sig.objects {
        let u = j.sentences(o)?;
        let op = j.operator(o)?;
        let n = u.len();
        let close = |s: &Subset| {
            let mut c = op.apply(s);
            c.grow(n);
            c
        };
        for gamma in sweep(o, u, cap, sampler, &mut r)? {
            let c = close(&gamma);
            if out_of_universe(&c, n) {
                r.push(
                    "closure-codomain",
                    [o.as_str(), &u.key(&gamma)],
                    "closure leaves the sentence universe",
                );
                continue;
            }
            if !gamma.is_subset(&c) {
                r.push(
                    "extensivity",
                    [o.as_str(), &u.key(&gamma)],
                    format!("C({}) = {} does not contain its argument", u.key(&gamma), u.key(&c)),
                );
            }
            let cc = close(&c);
            if cc != c {
                r.push(
                    "idempotence",
                    [o.as_str(), &u.key(&gamma)],
                    format!(
                        "C(C({})) = {} differs from C({}) = {}",
                        u.key(&gamma),
                        u.key(&cc),
                        u.key(&gamma),
                        u.key(&c)
                    ),
                );
            }
            for x in 0..n {
                if gamma.contains(x) {
                    continue;
                }
                let mut delta = gamma.clone();
                delta.insert(x);
                let cd = close(&delta);
                if !c.is_subset(&cd) {
                    r.push(
                        "monotonicity",
                        [o.as_str(), &u.key(&gamma), &u.key(&delta)],
                        format!(
                            "C({}) = {} is not contained in C({}) = {}",
                            u.key(&gamma),
                            u.key(&c),
                            u.key(&delta),
                            u.key(&cd)
                        ),
                    );
                }
            }
        }
    }
    Ok(r)
}

pub fn check_coherence(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    check_coherence_with(j, cap, None)
}

/// `Sen(f)(C_1(G)) <= C_2(Sen(f)(G))` for every arrow `f` and every `G`.
///
/// Identity arrows whose sentence map is the identity are skipped: there the
/// inclusion is an equality.
pub fn check_coherence_with(
    j: &PiInstitution,
    cap: usize,
    sampler: Option<&dyn SubsetSampler>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    for (f, arrow) in &j.sig.morphisms {
        let Some(map) = j.sen.index_map(&j.sig, f, Variance::Covariant) else {
            r.push(
                "sentence-map",
                [f.as_str()],
                format!("sentence map of {f} is not a total function"),
            );
            continue;
        };
        if j.sig.is_identity(f) && map.iter().enumerate().all(|(i, &k)| i == k) {
            continue;
        }
        let u1 = j.sentences(&arrow.src)?;
        let u2 = j.sentences(&arrow.dst)?;
        for gamma in sweep(&arrow.src, u1, cap, sampler, &mut r)? {
            let lhs = image(&map, &j.close(&arrow.src, &gamma)?, u2.len());
            let rhs = j.close(&arrow.dst, &image(&map, &gamma, u2.len()))?;
            if !lhs.is_subset(&rhs) {
                let escaped: Vec<String> = lhs.difference(&rhs).map(|i| u2.name(i).to_owned()).collect();
                r.push(
                    "coherence",
                    [f.as_str(), &u1.key(&gamma)],
                    format!(
                        "{f} sends C({}) outside C({f}[G]): {}",
                        u1.key(&gamma),
                        escaped.join(", ")
                    ),
                );
            }
        }
    }
    Ok(r)
}

/// Structural checks plus closure laws and coherence.
pub fn validate_pi_institution(j: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    validate_pi_institution_with(j, cap, None)
}

pub fn validate_pi_institution_with(
    j: &PiInstitution,
    cap: usize,
    sampler: Option<&dyn SubsetSampler>,
) -> Result<ValidationReport> {
    let mut r = crate::fincat::check_category(&j.sig);
    r.merge(crate::fincat::check_set_functor(&j.sen, &j.sig, Variance::Covariant));
    for o in &j.sig.objects {
        if !j.closure.contains_key(o) {
            r.push("closure-missing", [o.as_str()], format!("no closure operator at {o}"));
        }
    }
    if !r.is_clean() {
        return Ok(r);
    }
    r.merge(check_closure_laws_with(j, cap, sampler)?);
    r.merge(check_coherence_with(j, cap, sampler)?);
    Ok(r)
}

/// Comorphism `<phi, alpha>` of pi-institutions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PiComorphism {
    pub phi: FinFunctor,
    /// `alpha_S : Sen(S) -> Sen'(phi S)`
    pub alpha: NatTransSet,
}

pub fn identity_pi_comorphism(j: &PiInstitution) -> PiComorphism {
    PiComorphism {
        phi: FinFunctor::identity(&j.sig),
        alpha: NatTransSet::identity(&j.sen),
    }
}

/// `phi in C(G) => alpha(phi) in C'(alpha[G])` for all `S`, `G`, `phi`.
pub fn check_pi_comorphism(
    g: &PiComorphism,
    src: &PiInstitution,
    dst: &PiInstitution,
    cap: usize,
) -> Result<ValidationReport> {
    let mut r = check_functor(&g.phi, &src.sig, &dst.sig);
    r.merge(check_naturality(
        &g.alpha,
        &src.sig,
        src.sen.view(),
        dst.sen.along(&g.phi),
        Variance::Covariant,
    ));
    for o in &src.sig.objects {
        let Some(po) = g.phi.object(o) else { continue };
        let (Some(u), Some(u2)) = (src.sen.set(o), dst.sen.set(po)) else {
            continue;
        };
        let Some(alpha) = g.alpha.index_map(o, u, u2) else {
            continue;
        };
        ensure_within_cap(o, u.len(), cap)?;
        for gamma in all_subsets(u.len()) {
            let c = src.close(o, &gamma)?;
            let target = dst.close(po, &image(&alpha, &gamma, u2.len()))?;
            for phi in c.ones() {
                if !target.contains(alpha[phi]) {
                    r.push(
                        "compatibility",
                        [o.as_str(), &u.key(&gamma), u.name(phi)],
                        format!(
                            "{} is in C({}) but alpha({}) = {} is not in C'(alpha[G])",
                            u.name(phi),
                            u.key(&gamma),
                            u.name(phi),
                            u2.name(alpha[phi])
                        ),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// `second . first` as the first two components of comorphism composition.
pub fn compose_pi_comorphisms(first: &PiComorphism, second: &PiComorphism) -> Result<PiComorphism> {
    Ok(PiComorphism {
        phi: first.phi.then(&second.phi)?,
        alpha: compose_forward(&first.phi, &first.alpha, &second.alpha)?,
    })
}

/// Extensional comparison of two pi-institutions: same signature category,
/// same sentence functor, and identical closures on every subset.
pub fn compare_pi_institutions(a: &PiInstitution, b: &PiInstitution, cap: usize) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    if a.sig != b.sig {
        r.push(
            "signature-category",
            Vec::<String>::new(),
            "signature categories differ",
        );
    }
    if a.sen != b.sen {
        r.push("sentence-functor", Vec::<String>::new(), "sentence functors differ");
    }
    if !r.is_clean() {
        return Ok(r);
    }
    for o in &a.sig.objects {
        let u = a.sentences(o)?;
        ensure_within_cap(o, u.len(), cap)?;
        for gamma in all_subsets(u.len()) {
            let ca = a.close(o, &gamma)?;
            let cb = b.close(o, &gamma)?;
            if ca != cb {
                r.push(
                    "closure-equality",
                    [o.as_str(), &u.key(&gamma)],
                    format!("closures differ: {} vs {}", u.key(&ca), u.key(&cb)),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::galois::f_object;

    fn table_closure(u: &Universe, entries: &[(&[&str], &[&str])]) -> Closure {
        let n = u.len();
        let mut t: Vec<Subset> = all_subsets(n).collect();
        for (k, v) in entries {
            t[to_mask(&u.subset(*k).unwrap()) as usize] = u.subset(*v).unwrap();
        }
        Closure::Table(t)
    }

    #[test]
    fn twoval_closures() {
        let j = f_object(&fixtures::twoval()).unwrap();
        assert_eq!(closure_of::<&str>(&j, "S0", &[]).unwrap(), vec!["a"]);
        assert_eq!(closure_of(&j, "S0", &["b"]).unwrap(), vec!["a", "b"]);
        assert!(matches!(closure_of(&j, "S9", &["a"]), Err(Error::UnknownSignature(_))));
        assert!(matches!(
            closure_of(&j, "S0", &["z"]),
            Err(Error::SentenceOutOfUniverse { .. })
        ));
    }

    #[test]
    fn closure_is_idempotent_on_every_fixture_subset() {
        for j in [
            f_object(&fixtures::twoval()).unwrap(),
            f_object(&fixtures::rename()).unwrap(),
        ] {
            for o in &j.sig.objects {
                let n = j.sentences(o).unwrap().len();
                for g in all_subsets(n) {
                    let c = j.close(o, &g).unwrap();
                    assert_eq!(j.close(o, &c).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn closed_sets_of_twoval_discrete_and_indiscrete() {
        let j = f_object(&fixtures::twoval()).unwrap();
        let u = j.sentences("S0").unwrap().clone();
        let keys: Vec<String> = closed_sets(&j, "S0", DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|s| u.key(s))
            .collect();
        assert_eq!(keys, vec![r#"["a"]"#, r#"["a","b"]"#]);

        let d = fixtures::identity_closure(&["x", "y"]);
        assert_eq!(closed_sets(&d, "S0", DEFAULT_CAP).unwrap().len(), 4);

        let mut ind = d.clone();
        ind.closure.insert("S0".into(), Closure::indiscrete(2));
        let sets = closed_sets(&ind, "S0", DEFAULT_CAP).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].count_ones(..), 2);
    }

    #[test]
    fn closed_sets_respects_cap() {
        let names: Vec<String> = (0..5).map(|i| format!("s{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let j = fixtures::identity_closure(&refs);
        assert!(matches!(closed_sets(&j, "S0", 4), Err(Error::UniverseTooLarge { .. })));
    }

    #[test]
    fn law_violations() {
        let mut j = fixtures::identity_closure(&["a", "b"]);
        let u = j.sentences("S0").unwrap().clone();
        j.closure.insert("S0".into(), table_closure(&u, &[(&["a"], &[])]));
        let r = check_closure_laws(&j, DEFAULT_CAP).unwrap();
        assert_eq!(r.find("extensivity").unwrap().witness, vec!["S0", r#"["a"]"#]);

        j.closure.insert(
            "S0".into(),
            table_closure(&u, &[(&["a"], &["a", "b"]), (&["a", "b"], &["a"])]),
        );
        let r = check_closure_laws(&j, DEFAULT_CAP).unwrap();
        let v = r.find("monotonicity").unwrap();
        assert_eq!(v.witness, vec!["S0", r#"["a"]"#, r#"["a","b"]"#]);
    }

    #[test]
    fn sampled_sweeps_report_sampled() {
        let names: Vec<String> = (0..20).map(|i| format!("s{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let j = fixtures::identity_closure(&refs);
        assert!(check_closure_laws(&j, DEFAULT_CAP).is_err());
        let r = check_closure_laws_with(&j, DEFAULT_CAP, Some(&SmallSubsets(2))).unwrap();
        assert_eq!(r.status, crate::report::Status::Sampled);
        assert_eq!(SmallSubsets(2).sample("S0", &Universe::of(["a", "b", "c"])).len(), 7);
    }

    #[test]
    fn coherence_of_rename_and_its_failure() {
        let j = f_object(&fixtures::rename()).unwrap();
        assert!(check_coherence(&j, DEFAULT_CAP).unwrap().is_pass());
        assert!(check_coherence(&fixtures::identity_closure(&["x"]), DEFAULT_CAP)
            .unwrap()
            .is_pass());

        let bad = fixtures::incoherent_rename();
        let r = check_coherence(&bad, DEFAULT_CAP).unwrap();
        assert_eq!(r.find("coherence").unwrap().witness, vec!["h", "[]"]);
    }

    #[test]
    fn pi_comorphism_identity_and_collapse() {
        let j = f_object(&fixtures::twoval()).unwrap();
        let id = identity_pi_comorphism(&j);
        assert!(check_pi_comorphism(&id, &j, &j, DEFAULT_CAP).unwrap().is_pass());
        assert_eq!(compose_pi_comorphisms(&id, &id).unwrap(), id);

        // Collapse a and b onto a in a discrete target on {a, b}.
        let target = fixtures::identity_closure(&["a", "b"]);
        let mut g = id.clone();
        let comp = g.alpha.components.get_mut("S0").unwrap();
        comp.insert("b".into(), "a".into());
        let r = check_pi_comorphism(&g, &j, &target, DEFAULT_CAP).unwrap();
        let v = r.find("compatibility").unwrap();
        assert_eq!(v.witness, vec!["S0", "[]", "a"]);
    }

    #[test]
    fn tabulated_matches_semantic() {
        let j = f_object(&fixtures::rename()).unwrap();
        let t = j.tabulated(DEFAULT_CAP).unwrap();
        assert!(compare_pi_institutions(&j, &t, DEFAULT_CAP).unwrap().is_pass());
    }
}
