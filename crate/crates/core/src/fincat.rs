//! Finitely presented categories, functors, set-valued functors and natural
//! transformations, with exhaustive law checkers.
//!
//! Composition is stored as an explicit table in diagrammatic order:
//! `compose[(f, g)]` is "f then g" and is defined exactly when `dst(f) = src(g)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::subset::Universe;

pub type ObjId = String;
pub type MorId = String;
pub type ElemId = String;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: ObjId,
    pub dst: ObjId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinCat {
    pub objects: BTreeSet<ObjId>,
    pub morphisms: BTreeMap<MorId, Arrow>,
    pub identity: BTreeMap<ObjId, MorId>,
    pub compose: BTreeMap<(MorId, MorId), MorId>,
}

/// Name given to the identity of `object` by the builders.
pub fn identity_name(object: &str) -> MorId {
    format!("id_{object}")
}

impl FinCat {
    /// Discrete category: the given objects with their identities only.
    pub fn discrete<I, S>(objects: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut c = FinCat::default();
        for o in objects {
            c.add_object(o);
        }
        c
    }

    /// Adds an object together with an identity named `id_<object>`.
    pub fn add_object(&mut self, object: impl Into<String>) -> MorId {
        let o = object.into();
        let id = identity_name(&o);
        self.objects.insert(o.clone());
        self.morphisms.insert(
            id.clone(),
            Arrow {
                src: o.clone(),
                dst: o.clone(),
            },
        );
        self.identity.insert(o, id.clone());
        self.compose.insert((id.clone(), id.clone()), id.clone());
        id
    }

    /// Adds a non-identity arrow and its composites with identities.
    pub fn add_morphism(&mut self, id: &str, src: &str, dst: &str) -> Result<()> {
        if self.morphisms.contains_key(id) {
            return Err(Error::DuplicateId(id.to_owned()));
        }
        let id_src = self
            .identity
            .get(src)
            .cloned()
            .ok_or_else(|| Error::UnknownSignature(src.to_owned()))?;
        let id_dst = self
            .identity
            .get(dst)
            .cloned()
            .ok_or_else(|| Error::UnknownSignature(dst.to_owned()))?;
        self.morphisms.insert(
            id.to_owned(),
            Arrow {
                src: src.to_owned(),
                dst: dst.to_owned(),
            },
        );
        self.compose.insert((id_src, id.to_owned()), id.to_owned());
        self.compose.insert((id.to_owned(), id_dst), id.to_owned());
        Ok(())
    }

    pub fn set_composite(&mut self, first: &str, second: &str, result: &str) {
        self.compose
            .insert((first.to_owned(), second.to_owned()), result.to_owned());
    }

    /// The chain `S0 -> S1 -> ... -> S{n-1}` as a poset category, with
    /// arrows `e{i}{j}` for `i < j`.
    pub fn chain(n: usize) -> Self {
        let mut c = FinCat::default();
        for i in 0..n {
            c.add_object(format!("S{i}"));
        }
        for i in 0..n {
            for j in i + 1..n {
                c.add_morphism(&chain_arrow(i, j), &format!("S{i}"), &format!("S{j}"))
                    .expect("fresh chain arrow");
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    c.set_composite(&chain_arrow(i, j), &chain_arrow(j, k), &chain_arrow(i, k));
                }
            }
        }
        c
    }

    pub fn arrow(&self, f: &str) -> Option<&Arrow> {
        self.morphisms.get(f)
    }

    pub fn src(&self, f: &str) -> Option<&ObjId> {
        self.morphisms.get(f).map(|a| &a.src)
    }

    pub fn dst(&self, f: &str) -> Option<&ObjId> {
        self.morphisms.get(f).map(|a| &a.dst)
    }

    pub fn identity_of(&self, o: &str) -> Option<&MorId> {
        self.identity.get(o)
    }

    pub fn is_identity(&self, f: &str) -> bool {
        self.morphisms
            .get(f)
            .is_some_and(|a| self.identity.get(&a.src).is_some_and(|id| id == f))
    }

    /// Composable pairs `(f, g)` with `dst(f) = src(g)`, in id order.
    pub fn composable_pairs(&self) -> Vec<(&MorId, &MorId)> {
        let mut out = Vec::new();
        for (f, af) in &self.morphisms {
            for (g, ag) in &self.morphisms {
                if af.dst == ag.src {
                    out.push((f, g));
                }
            }
        }
        out
    }
}

/// Id of the chain arrow `S{i} -> S{j}` built by [`FinCat::chain`].
pub fn chain_arrow(i: usize, j: usize) -> MorId {
    format!("e{i}{j}")
}

/// Looks up the composite "f then g".
pub fn compose_mor(c: &FinCat, f: &str, g: &str) -> Result<MorId> {
    let af = c.arrow(f).ok_or_else(|| Error::UnknownMorphism(f.to_owned()))?;
    let ag = c.arrow(g).ok_or_else(|| Error::UnknownMorphism(g.to_owned()))?;
    if af.dst != ag.src {
        return Err(Error::NotComposable {
            first: f.to_owned(),
            second: g.to_owned(),
        });
    }
    c.compose
        .get(&(f.to_owned(), g.to_owned()))
        .cloned()
        .ok_or_else(|| Error::MissingComposite {
            first: f.to_owned(),
            second: g.to_owned(),
        })
}

/// Checks identities, table totality, unit laws and associativity.
pub fn check_category(c: &FinCat) -> ValidationReport {
    let mut r = ValidationReport::new();

    for (f, a) in &c.morphisms {
        for end in [&a.src, &a.dst] {
            if !c.objects.contains(end) {
                r.push(
                    "morphism-endpoint",
                    [f.as_str(), end.as_str()],
                    format!("{f} has unknown endpoint {end}"),
                );
            }
        }
    }
    for o in &c.objects {
        match c.identity.get(o) {
            None => r.push("identity-missing", [o.as_str()], format!("object {o} has no identity")),
            Some(id) => match c.arrow(id) {
                None => r.push(
                    "identity-unknown",
                    [o.as_str(), id.as_str()],
                    format!("identity {id} is not a morphism"),
                ),
                Some(a) if a.src != *o || a.dst != *o => r.push(
                    "identity-endpoints",
                    [o.as_str(), id.as_str()],
                    format!("identity {id} is {} -> {}, expected {o} -> {o}", a.src, a.dst),
                ),
                Some(_) => {}
            },
        }
    }
    for o in c.identity.keys() {
        if !c.objects.contains(o) {
            r.push(
                "identity-unknown",
                [o.as_str()],
                format!("identity declared for unknown object {o}"),
            );
        }
    }

    for ((f, g), h) in &c.compose {
        match (c.arrow(f), c.arrow(g)) {
            (Some(af), Some(ag)) if af.dst == ag.src => match c.arrow(h) {
                None => r.push(
                    "compose-unknown",
                    [f.as_str(), g.as_str(), h.as_str()],
                    format!("{f};{g} = {h} is not a morphism"),
                ),
                Some(ah) if ah.src != af.src || ah.dst != ag.dst => r.push(
                    "compose-endpoints",
                    [f.as_str(), g.as_str(), h.as_str()],
                    format!(
                        "{f};{g} = {h} is {} -> {}, expected {} -> {}",
                        ah.src, ah.dst, af.src, ag.dst
                    ),
                ),
                Some(_) => {}
            },
            _ => r.push(
                "compose-extraneous",
                [f.as_str(), g.as_str()],
                format!("table defines {f};{g} on a non-composable pair"),
            ),
        }
    }
    for (f, g) in c.composable_pairs() {
        if !c.compose.contains_key(&(f.clone(), g.clone())) {
            r.push(
                "compose-missing",
                [f.as_str(), g.as_str()],
                format!("composite {f};{g} is missing"),
            );
        }
    }

    let comp = |f: &MorId, g: &MorId| c.compose.get(&(f.clone(), g.clone()));
    for (f, a) in &c.morphisms {
        if let Some(id) = c.identity.get(&a.src) {
            if let Some(h) = comp(id, f) {
                if h != f {
                    r.push("left-identity", [f.as_str()], format!("{id};{f} = {h}, expected {f}"));
                }
            }
        }
        if let Some(id) = c.identity.get(&a.dst) {
            if let Some(h) = comp(f, id) {
                if h != f {
                    r.push("right-identity", [f.as_str()], format!("{f};{id} = {h}, expected {f}"));
                }
            }
        }
    }

    for (f, g) in c.composable_pairs() {
        let Some(fg) = comp(f, g) else { continue };
        let gd = &c.morphisms[g].dst;
        for (h, ah) in &c.morphisms {
            if &ah.src != gd {
                continue;
            }
            let Some(gh) = comp(g, h) else { continue };
            if let (Some(left), Some(right)) = (comp(fg, h), comp(f, gh)) {
                if left != right {
                    r.push(
                        "associativity",
                        [f.as_str(), g.as_str(), h.as_str()],
                        format!("({f};{g});{h} = {left} but {f};({g};{h}) = {right}"),
                    );
                }
            }
        }
    }
    r
}

/// Functor between finite categories, given by its object and morphism maps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinFunctor {
    pub objects: BTreeMap<ObjId, ObjId>,
    pub morphisms: BTreeMap<MorId, MorId>,
}

impl FinFunctor {
    pub fn identity(c: &FinCat) -> Self {
        FinFunctor {
            objects: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            morphisms: c.morphisms.keys().map(|f| (f.clone(), f.clone())).collect(),
        }
    }

    /// Sends every object to `target` and every morphism to its identity.
    pub fn constant(source: &FinCat, target: &FinCat, object: &str) -> Result<Self> {
        let id = target
            .identity_of(object)
            .ok_or_else(|| Error::UnknownSignature(object.to_owned()))?;
        Ok(FinFunctor {
            objects: source.objects.iter().map(|o| (o.clone(), object.to_owned())).collect(),
            morphisms: source.morphisms.keys().map(|f| (f.clone(), id.clone())).collect(),
        })
    }

    pub fn object(&self, o: &str) -> Option<&ObjId> {
        self.objects.get(o)
    }

    pub fn morphism(&self, f: &str) -> Option<&MorId> {
        self.morphisms.get(f)
    }

    /// Composite functor: `self` first, then `next`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        let objects = self
            .objects
            .iter()
            .map(|(k, v)| {
                next.objects.get(v).map(|w| (k.clone(), w.clone())).ok_or_else(|| {
                    Error::DomainMismatch(format!("object {v} is not in the domain of the second functor"))
                })
            })
            .collect::<Result<_>>()?;
        let morphisms = self
            .morphisms
            .iter()
            .map(|(k, v)| {
                next.morphisms.get(v).map(|w| (k.clone(), w.clone())).ok_or_else(|| {
                    Error::DomainMismatch(format!("morphism {v} is not in the domain of the second functor"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(FinFunctor { objects, morphisms })
    }

    /// Fills identities, then composites `f;g` whose factors are mapped, until
    /// nothing changes.
    pub fn complete(&mut self, source: &FinCat, target: &FinCat) {
        self.fill_identities(source, target);
        loop {
            let mut added = false;
            for ((f, g), h) in &source.compose {
                if self.morphisms.contains_key(h) {
                    continue;
                }
                if let (Some(pf), Some(pg)) = (self.morphisms.get(f), self.morphisms.get(g)) {
                    if let Ok(ph) = compose_mor(target, pf, pg) {
                        self.morphisms.insert(h.clone(), ph);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
    }

    /// Maps any unmapped identity of `source` to the identity of the image object.
    pub fn fill_identities(&mut self, source: &FinCat, target: &FinCat) {
        for (o, id) in &source.identity {
            if self.morphisms.contains_key(id) {
                continue;
            }
            if let Some(tid) = self.objects.get(o).and_then(|t| target.identity.get(t)) {
                self.morphisms.insert(id.clone(), tid.clone());
            }
        }
    }
}

pub fn check_functor(functor: &FinFunctor, source: &FinCat, target: &FinCat) -> ValidationReport {
    let mut r = ValidationReport::new();
    for o in &source.objects {
        match functor.objects.get(o) {
            None => r.push("object-map", [o.as_str()], format!("object {o} is not mapped")),
            Some(t) if !target.objects.contains(t) => r.push(
                "object-map",
                [o.as_str(), t.as_str()],
                format!("{o} maps to unknown object {t}"),
            ),
            Some(_) => {}
        }
    }
    for o in functor.objects.keys() {
        if !source.objects.contains(o) {
            r.push(
                "object-map",
                [o.as_str()],
                format!("mapping for unknown source object {o}"),
            );
        }
    }
    for f in functor.morphisms.keys() {
        if !source.morphisms.contains_key(f) {
            r.push(
                "morphism-map",
                [f.as_str()],
                format!("mapping for unknown source morphism {f}"),
            );
        }
    }
    for (f, a) in &source.morphisms {
        let Some(tf) = functor.morphisms.get(f) else {
            r.push("morphism-map", [f.as_str()], format!("morphism {f} is not mapped"));
            continue;
        };
        let Some(ta) = target.arrow(tf) else {
            r.push(
                "morphism-map",
                [f.as_str(), tf.as_str()],
                format!("{f} maps to unknown morphism {tf}"),
            );
            continue;
        };
        if functor.objects.get(&a.src) != Some(&ta.src) {
            r.push(
                "src-preservation",
                [f.as_str(), tf.as_str()],
                format!("src of F({f}) = {} is not F({})", ta.src, a.src),
            );
        }
        if functor.objects.get(&a.dst) != Some(&ta.dst) {
            r.push(
                "dst-preservation",
                [f.as_str(), tf.as_str()],
                format!("dst of F({f}) = {} is not F({})", ta.dst, a.dst),
            );
        }
    }
    for (o, id) in &source.identity {
        let image = functor.morphisms.get(id);
        let expected = functor.objects.get(o).and_then(|t| target.identity.get(t));
        if let (Some(image), Some(expected)) = (image, expected) {
            if image != expected {
                r.push(
                    "identity-preservation",
                    [id.as_str()],
                    format!("F({id}) = {image}, expected {expected}"),
                );
            }
        }
    }
    for ((f, g), fg) in &source.compose {
        let (Some(tf), Some(tg), Some(tfg)) = (
            functor.morphisms.get(f),
            functor.morphisms.get(g),
            functor.morphisms.get(fg),
        ) else {
            continue;
        };
        match target.compose.get(&(tf.clone(), tg.clone())) {
            Some(t) if t == tfg => {}
            Some(t) => r.push(
                "composition-preservation",
                [f.as_str(), g.as_str()],
                format!("F({f};{g}) = {tfg} but F({f});F({g}) = {t}"),
            ),
            None => r.push(
                "composition-preservation",
                [f.as_str(), g.as_str()],
                format!("F({f});F({g}) is undefined in the target"),
            ),
        }
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    /// Maps go from the set at the target of an arrow to the set at its source.
    Contravariant,
}

/// Set-valued functor (covariant or contravariant) on a finite category.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFunctor {
    pub objects: BTreeMap<ObjId, Universe>,
    pub morphisms: BTreeMap<MorId, BTreeMap<ElemId, ElemId>>,
}

impl SetFunctor {
    pub fn set(&self, o: &str) -> Option<&Universe> {
        self.objects.get(o)
    }

    pub fn apply(&self, f: &str, e: &str) -> Option<&ElemId> {
        self.morphisms.get(f)?.get(e)
    }

    /// Adds identity functions for every identity of `c` that has no map yet.
    pub fn fill_identities(&mut self, c: &FinCat) {
        for (o, id) in &c.identity {
            if self.morphisms.contains_key(id) {
                continue;
            }
            if let Some(u) = self.objects.get(o) {
                let map = u.names().iter().map(|e| (e.clone(), e.clone())).collect();
                self.morphisms.insert(id.clone(), map);
            }
        }
    }

    pub fn view(&self) -> FunctorView<'_> {
        FunctorView {
            functor: self,
            along: None,
        }
    }

    pub fn along<'a>(&'a self, phi: &'a FinFunctor) -> FunctorView<'a> {
        FunctorView {
            functor: self,
            along: Some(phi),
        }
    }

    /// The action of `f` as a map between element indices, if well formed.
    pub fn index_map(&self, c: &FinCat, f: &str, variance: Variance) -> Option<Vec<usize>> {
        self.view().index_map(c.arrow(f)?, f, variance)
    }
}

/// A set functor, optionally precomposed with a functor `along` into its
/// category. Lets naturality checks treat `Sen' . phi` like any functor.
#[derive(Debug, Clone, Copy)]
pub struct FunctorView<'a> {
    pub functor: &'a SetFunctor,
    pub along: Option<&'a FinFunctor>,
}

impl<'a> FunctorView<'a> {
    pub fn set(&self, o: &str) -> Option<&'a Universe> {
        match self.along {
            None => self.functor.objects.get(o),
            Some(phi) => self.functor.objects.get(phi.objects.get(o)?),
        }
    }

    pub fn map(&self, f: &str) -> Option<&'a BTreeMap<ElemId, ElemId>> {
        match self.along {
            None => self.functor.morphisms.get(f),
            Some(phi) => self.functor.morphisms.get(phi.morphisms.get(f)?),
        }
    }

    /// Index map for the arrow `f` (with endpoints `arrow` in the base category).
    pub fn index_map(&self, arrow: &Arrow, f: &str, variance: Variance) -> Option<Vec<usize>> {
        let (from, to) = match variance {
            Variance::Covariant => (&arrow.src, &arrow.dst),
            Variance::Contravariant => (&arrow.dst, &arrow.src),
        };
        let dom = self.set(from)?;
        let cod = self.set(to)?;
        let map = self.map(f)?;
        dom.names()
            .iter()
            .map(|e| map.get(e).and_then(|t| cod.index_of(t)))
            .collect()
    }
}

pub fn check_set_functor(s: &SetFunctor, c: &FinCat, variance: Variance) -> ValidationReport {
    let mut r = ValidationReport::new();
    for o in &c.objects {
        if !s.objects.contains_key(o) {
            r.push("missing-set", [o.as_str()], format!("no set assigned to {o}"));
        }
    }
    let mut well_formed = BTreeMap::new();
    for (f, a) in &c.morphisms {
        let Some(map) = s.morphisms.get(f) else {
            r.push("missing-map", [f.as_str()], format!("no function assigned to {f}"));
            continue;
        };
        let (from, to) = match variance {
            Variance::Covariant => (&a.src, &a.dst),
            Variance::Contravariant => (&a.dst, &a.src),
        };
        let (Some(dom), Some(cod)) = (s.objects.get(from), s.objects.get(to)) else {
            continue;
        };
        let before = r.violations.len();
        for e in dom.names() {
            match map.get(e) {
                None => r.push("domain", [f.as_str(), e.as_str()], format!("{f} is undefined on {e}")),
                Some(t) if !cod.contains(t) => r.push(
                    "codomain",
                    [f.as_str(), e.as_str()],
                    format!("{f} sends {e} to {t}, outside the set at {to}"),
                ),
                Some(_) => {}
            }
        }
        for e in map.keys() {
            if !dom.contains(e) {
                r.push(
                    "domain",
                    [f.as_str(), e.as_str()],
                    format!("{f} is defined on {e}, outside the set at {from}"),
                );
            }
        }
        if r.violations.len() == before {
            well_formed.insert(f.clone(), s.index_map(c, f, variance).expect("checked map"));
        }
    }
    for (o, id) in &c.identity {
        let (Some(map), Some(u)) = (well_formed.get(id), s.objects.get(o)) else {
            continue;
        };
        for (i, &j) in map.iter().enumerate() {
            if i != j {
                r.push(
                    "identity",
                    [id.as_str(), u.name(i)],
                    format!("{id} moves {} to {}", u.name(i), u.name(j)),
                );
            }
        }
    }
    let law = match variance {
        Variance::Covariant => "composition",
        Variance::Contravariant => "contravariance",
    };
    for ((f, g), fg) in &c.compose {
        let (Some(mf), Some(mg), Some(mfg)) = (well_formed.get(f), well_formed.get(g), well_formed.get(fg)) else {
            continue;
        };
        // Covariant: S(f;g) = S(g) . S(f). Contravariant: S(f;g) = S(f) . S(g).
        let (first, second, dom_obj) = match variance {
            Variance::Covariant => (mf, mg, &c.morphisms[f].src),
            Variance::Contravariant => (mg, mf, &c.morphisms[g].dst),
        };
        if first.len() != mfg.len() {
            continue;
        }
        let u = &s.objects[dom_obj];
        for (i, &mid) in first.iter().enumerate() {
            if second.get(mid) != Some(&mfg[i]) {
                r.push(
                    law,
                    [f.as_str(), g.as_str(), u.name(i)],
                    format!("action of {f};{g} on {} disagrees with the composite action", u.name(i)),
                );
            }
        }
    }
    r
}

/// Family of component functions indexed by objects.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransSet {
    pub components: BTreeMap<ObjId, BTreeMap<ElemId, ElemId>>,
}

impl NatTransSet {
    /// Identity components on every set of `s`.
    pub fn identity(s: &SetFunctor) -> Self {
        NatTransSet {
            components: s
                .objects
                .iter()
                .map(|(o, u)| (o.clone(), u.names().iter().map(|e| (e.clone(), e.clone())).collect()))
                .collect(),
        }
    }

    pub fn component(&self, o: &str) -> Option<&BTreeMap<ElemId, ElemId>> {
        self.components.get(o)
    }

    pub fn apply(&self, o: &str, e: &str) -> Option<&ElemId> {
        self.components.get(o)?.get(e)
    }

    pub fn index_map(&self, o: &str, dom: &Universe, cod: &Universe) -> Option<Vec<usize>> {
        let comp = self.components.get(o)?;
        dom.names()
            .iter()
            .map(|e| comp.get(e).and_then(|t| cod.index_of(t)))
            .collect()
    }
}

/// Checks that every component is a total function between the right sets
/// and that every naturality square commutes elementwise.
pub fn check_naturality(
    n: &NatTransSet,
    c: &FinCat,
    source: FunctorView<'_>,
    target: FunctorView<'_>,
    variance: Variance,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    let mut comps: BTreeMap<&ObjId, Vec<usize>> = BTreeMap::new();
    for o in &c.objects {
        let (Some(dom), Some(cod)) = (source.set(o), target.set(o)) else {
            r.push(
                "component-missing",
                [o.as_str()],
                format!("source or target set at {o} is undefined"),
            );
            continue;
        };
        let Some(comp) = n.components.get(o) else {
            r.push("component-missing", [o.as_str()], format!("no component at {o}"));
            continue;
        };
        let before = r.violations.len();
        for e in dom.names() {
            match comp.get(e) {
                None => r.push(
                    "component-domain",
                    [o.as_str(), e.as_str()],
                    format!("component at {o} is undefined on {e}"),
                ),
                Some(t) if !cod.contains(t) => r.push(
                    "component-codomain",
                    [o.as_str(), e.as_str()],
                    format!("component at {o} sends {e} to {t}, outside its codomain"),
                ),
                Some(_) => {}
            }
        }
        for e in comp.keys() {
            if !dom.contains(e) {
                r.push(
                    "component-domain",
                    [o.as_str(), e.as_str()],
                    format!("component at {o} is defined on foreign element {e}"),
                );
            }
        }
        if r.violations.len() == before {
            comps.insert(o, n.index_map(o, dom, cod).expect("checked component"));
        }
    }
    for (f, a) in &c.morphisms {
        let (Some(sf), Some(tf)) = (source.index_map(a, f, variance), target.index_map(a, f, variance)) else {
            r.push(
                "functor-map",
                [f.as_str()],
                format!("source or target action of {f} is not a well-formed function"),
            );
            continue;
        };
        let (from, to) = match variance {
            Variance::Covariant => (&a.src, &a.dst),
            Variance::Contravariant => (&a.dst, &a.src),
        };
        let (Some(c_from), Some(c_to)) = (comps.get(from), comps.get(to)) else {
            continue;
        };
        let dom = source.set(from).expect("resolved above");
        for (x, &sx) in sf.iter().enumerate() {
            if tf[c_from[x]] != c_to[sx] {
                r.push(
                    "naturality",
                    [f.as_str(), dom.name(x)],
                    format!("square for {f} does not commute at {}", dom.name(x)),
                );
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rename_cat() -> FinCat {
        let mut c = FinCat::discrete(["S1", "S2"]);
        c.add_morphism("h", "S1", "S2").unwrap();
        c
    }

    fn rename_sen() -> SetFunctor {
        let mut s = SetFunctor::default();
        s.objects.insert("S1".into(), Universe::of(["p"]));
        s.objects.insert("S2".into(), Universe::of(["q", "r"]));
        s.morphisms
            .insert("h".into(), [("p".to_string(), "q".to_string())].into());
        s.fill_identities(&rename_cat());
        s
    }

    #[test]
    fn one_object_category_is_lawful() {
        assert!(check_category(&FinCat::discrete(["S0"])).is_pass());
    }

    #[test]
    fn rename_category_is_lawful() {
        let c = rename_cat();
        assert_eq!(c.morphisms.len(), 3);
        assert!(check_category(&c).is_pass());
    }

    #[test]
    fn remapped_left_identity_is_reported() {
        let mut c = rename_cat();
        c.set_composite("id_S1", "h", "id_S2");
        let r = check_category(&c);
        let v = r.find("left-identity").expect("left-identity violation");
        assert_eq!(v.witness, vec!["h"]);
    }

    #[test]
    fn missing_and_extraneous_composites() {
        let mut c = rename_cat();
        c.compose.remove(&("h".into(), "id_S2".into()));
        c.set_composite("h", "h", "h");
        let r = check_category(&c);
        assert!(r.has_law("compose-missing"));
        assert!(r.has_law("compose-extraneous"));
    }

    #[test]
    fn associativity_failure_detected() {
        // Two parallel arrows through a middle object with a skewed table.
        let mut c = FinCat::discrete(["A", "B", "C", "D"]);
        c.add_morphism("f", "A", "B").unwrap();
        c.add_morphism("g", "B", "C").unwrap();
        c.add_morphism("h", "C", "D").unwrap();
        c.add_morphism("fg", "A", "C").unwrap();
        c.add_morphism("gh", "B", "D").unwrap();
        c.add_morphism("k1", "A", "D").unwrap();
        c.add_morphism("k2", "A", "D").unwrap();
        c.set_composite("f", "g", "fg");
        c.set_composite("g", "h", "gh");
        c.set_composite("fg", "h", "k1");
        c.set_composite("f", "gh", "k2");
        let r = check_category(&c);
        let v = r.find("associativity").unwrap();
        assert_eq!(v.witness, vec!["f", "g", "h"]);
        assert!(check_category(&FinCat::chain(4)).is_pass());
    }

    #[test]
    fn compose_mor_cases() {
        let c = rename_cat();
        assert_eq!(compose_mor(&c, "id_S1", "h").unwrap(), "h");
        assert_eq!(compose_mor(&c, "h", "id_S2").unwrap(), "h");
        assert!(matches!(compose_mor(&c, "h", "h"), Err(Error::NotComposable { .. })));
        assert!(matches!(compose_mor(&c, "x", "h"), Err(Error::UnknownMorphism(_))));
    }

    #[test]
    fn identity_and_constant_functors() {
        let c = rename_cat();
        assert!(check_functor(&FinFunctor::identity(&c), &c, &c).is_pass());
        let one = FinCat::discrete(["*"]);
        let k = FinFunctor::constant(&c, &one, "*").unwrap();
        assert!(check_functor(&k, &c, &one).is_pass());
    }

    #[test]
    fn src_mismatch_reported() {
        let c = rename_cat();
        let mut f = FinFunctor::identity(&c);
        f.morphisms.insert("h".into(), "id_S2".into());
        let r = check_functor(&f, &c, &c);
        assert!(r.has_law("src-preservation"));
    }

    #[test]
    fn functor_composition_stays_lawful() {
        let c = FinCat::chain(3);
        let two = FinCat::chain(2);
        // Collapse S1 and S2 of the chain onto S1 of the two-chain.
        let mut f = FinFunctor::default();
        for (o, t) in [("S0", "S0"), ("S1", "S1"), ("S2", "S1")] {
            f.objects.insert(o.into(), t.into());
        }
        for (m, t) in [
            ("id_S0", "id_S0"),
            ("id_S1", "id_S1"),
            ("id_S2", "id_S1"),
            ("e01", "e01"),
            ("e02", "e01"),
            ("e12", "id_S1"),
        ] {
            f.morphisms.insert(m.into(), t.into());
        }
        let one = FinCat::discrete(["*"]);
        let g = FinFunctor::constant(&two, &one, "*").unwrap();
        assert!(check_functor(&f, &c, &two).is_pass());
        assert!(check_functor(&g, &two, &one).is_pass());
        assert!(check_functor(&f.then(&g).unwrap(), &c, &one).is_pass());
    }

    #[test]
    fn rename_sentence_functor_is_lawful() {
        assert!(check_set_functor(&rename_sen(), &rename_cat(), Variance::Covariant).is_pass());
    }

    #[test]
    fn codomain_escape_reported() {
        let mut s = rename_sen();
        s.morphisms.get_mut("h").unwrap().insert("p".into(), "z".into());
        let r = check_set_functor(&s, &rename_cat(), Variance::Covariant);
        assert_eq!(r.find("codomain").unwrap().witness, vec!["h", "p"]);
    }

    #[test]
    fn naturality_identity_and_failure() {
        let c = rename_cat();
        let s = rename_sen();
        let id = NatTransSet::identity(&s);
        assert!(check_naturality(&id, &c, s.view(), s.view(), Variance::Covariant).is_pass());

        // Swapping q and r at S2 breaks the square for h at p.
        let mut swapped = id.clone();
        let c2 = swapped.components.get_mut("S2").unwrap();
        c2.insert("q".into(), "r".into());
        c2.insert("r".into(), "q".into());
        let r = check_naturality(&swapped, &c, s.view(), s.view(), Variance::Covariant);
        assert_eq!(r.find("naturality").unwrap().witness, vec!["h", "p"]);
    }
}
