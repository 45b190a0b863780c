//! JSON documents: loading with cross-reference validation, and writers
//! that produce the same shapes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use instkit::fincat::identity_name;
use instkit::proplogic::{LogicArrow, LogicPresentation, MorphismKind, NamedLogic, SigTranslation};
use instkit::subset::{all_subsets, canonical_cmp};
use instkit::{
    Closure, FinCat, FinFunctor, InstComorphism, InstMorphism, Institution, NatTransSet, PiComorphism, PiInstitution,
    SatMatrix, Universe,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {context} refers to unknown {id}")]
    DanglingReference { path: String, context: String, id: String },

    #[error("{path}: {message}")]
    Shape { path: String, message: String },
}

type DocResult<T> = Result<T, DocError>;

/// A logic fragment: logics, declared translations and the kind of
/// morphisms allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Fragment {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub morphism_kind: MorphismKind,
    pub logics: Vec<NamedLogic>,
    #[serde(default)]
    pub arrows: Vec<LogicArrow>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Institution(Institution),
    PiInstitution(PiInstitution),
    InstComorphism(InstComorphism),
    InstMorphism(InstMorphism),
    PiComorphism(PiComorphism),
    Logic(LogicPresentation),
    Translation(SigTranslation),
    Fragment(Fragment),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Institution(_) => "institution",
            Document::PiInstitution(_) => "pi-institution",
            Document::InstComorphism(_) => "inst-comorphism",
            Document::InstMorphism(_) => "inst-morphism",
            Document::PiComorphism(_) => "pi-comorphism",
            Document::Logic(_) => "logic",
            Document::Translation(_) => "translation",
            Document::Fragment(_) => "logic-fragment",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

type NameMap = BTreeMap<String, String>;
type Pairs = Vec<[String; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InstitutionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub sen: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub sen_map: BTreeMap<String, NameMap>,
    #[serde(rename = "mod")]
    pub models: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub reduct: BTreeMap<String, NameMap>,
    pub sat: BTreeMap<String, Pairs>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub order: BTreeMap<String, Pairs>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixLogicDoc {
    All(Box<LogicPresentation>),
    PerSignature(BTreeMap<String, LogicPresentation>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ClosureDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, BTreeMap<String, Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_logic: Option<MatrixLogicDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PiDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(default)]
    pub sen: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub sen_map: BTreeMap<String, NameMap>,
    pub closure: ClosureDoc,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub objects: NameMap,
    #[serde(default)]
    pub morphisms: NameMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub phi: FunctorDoc,
    pub alpha: BTreeMap<String, NameMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BTreeMap<String, NameMap>>,
}

struct Ctx<'a> {
    path: &'a str,
}

impl Ctx<'_> {
    fn dangling(&self, context: impl Into<String>, id: &str) -> DocError {
        DocError::DanglingReference {
            path: self.path.to_owned(),
            context: context.into(),
            id: id.to_owned(),
        }
    }

    fn shape(&self, message: impl Into<String>) -> DocError {
        DocError::Shape {
            path: self.path.to_owned(),
            message: message.into(),
        }
    }

    fn parse<T: serde::de::DeserializeOwned>(&self, text: &str) -> DocResult<T> {
        serde_json::from_str(text).map_err(|e| DocError::Parse {
            path: self.path.to_owned(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

fn build_category(
    ctx: &Ctx,
    objects: &[String],
    morphisms: &[MorphismDoc],
    compose: &[[String; 3]],
) -> DocResult<FinCat> {
    let mut c = FinCat::default();
    for o in objects {
        if c.objects.contains(o) {
            return Err(ctx.shape(format!("object {o} is listed twice")));
        }
        c.add_object(o);
    }
    for (i, m) in morphisms.iter().enumerate() {
        for end in [&m.src, &m.dst] {
            if !c.objects.contains(end) {
                return Err(ctx.dangling(format!("morphisms[{i}]"), end));
            }
        }
        if m.src == m.dst && m.id == identity_name(&m.src) {
            continue;
        }
        c.add_morphism(&m.id, &m.src, &m.dst)
            .map_err(|_| ctx.shape(format!("morphism {} is listed twice", m.id)))?;
    }
    for (i, [f, g, h]) in compose.iter().enumerate() {
        for id in [f, g, h] {
            if !c.morphisms.contains_key(id) {
                return Err(ctx.dangling(format!("compose[{i}]"), id));
            }
        }
        c.set_composite(f, g, h);
    }
    // A missing composite is filled when exactly one arrow could be it.
    let pairs: Vec<(String, String)> = c
        .composable_pairs()
        .into_iter()
        .filter(|(f, g)| !c.compose.contains_key(&((*f).clone(), (*g).clone())))
        .map(|(f, g)| (f.clone(), g.clone()))
        .collect();
    for (f, g) in pairs {
        let (src, dst) = (c.morphisms[&f].src.clone(), c.morphisms[&g].dst.clone());
        let candidates: Vec<&String> = c
            .morphisms
            .iter()
            .filter(|(_, a)| a.src == src && a.dst == dst)
            .map(|(id, _)| id)
            .collect();
        if let [only] = candidates[..] {
            let only = only.clone();
            c.set_composite(&f, &g, &only);
        }
    }
    Ok(c)
}

fn universes(
    ctx: &Ctx,
    c: &FinCat,
    field: &str,
    sets: &BTreeMap<String, Vec<String>>,
) -> DocResult<BTreeMap<String, Universe>> {
    let mut out = BTreeMap::new();
    for (o, names) in sets {
        if !c.objects.contains(o) {
            return Err(ctx.dangling(field, o));
        }
        let u = Universe::new(names.iter().cloned()).map_err(|e| ctx.shape(format!("{field}.{o}: {e}")))?;
        out.insert(o.clone(), u);
    }
    Ok(out)
}

/// Checks a name map along `f` and returns it; `forward` selects
/// `Sen(src) -> Sen(dst)` versus `Mod(dst) -> Mod(src)`.
fn arrow_map(
    ctx: &Ctx,
    c: &FinCat,
    field: &str,
    f: &str,
    map: &NameMap,
    sets: &BTreeMap<String, Universe>,
    forward: bool,
) -> DocResult<NameMap> {
    let arrow = c.arrow(f).ok_or_else(|| ctx.dangling(field, f))?;
    let (dom, cod) = if forward {
        (&arrow.src, &arrow.dst)
    } else {
        (&arrow.dst, &arrow.src)
    };
    let (Some(du), Some(cu)) = (sets.get(dom), sets.get(cod)) else {
        return Err(ctx.shape(format!("{field}.{f}: endpoints have no sets")));
    };
    for (a, b) in map {
        if !du.contains(a) {
            return Err(ctx.dangling(format!("{field}.{f}"), a));
        }
        if !cu.contains(b) {
            return Err(ctx.dangling(format!("{field}.{f}"), b));
        }
    }
    Ok(map.clone())
}

fn require_all(ctx: &Ctx, c: &FinCat, field: &str, sets: &BTreeMap<String, Universe>) -> DocResult<()> {
    match c.objects.iter().find(|o| !sets.contains_key(*o)) {
        Some(o) => Err(ctx.shape(format!("{field} has no entry for {o}"))),
        None => Ok(()),
    }
}

fn institution_from_doc(ctx: &Ctx, d: InstitutionDoc) -> DocResult<Institution> {
    let c = build_category(ctx, &d.objects, &d.morphisms, &d.compose)?;
    let sen = universes(ctx, &c, "sen", &d.sen)?;
    let mods = universes(ctx, &c, "mod", &d.models)?;
    require_all(ctx, &c, "sen", &sen)?;
    require_all(ctx, &c, "mod", &mods)?;
    let mut inst = Institution::new(c.clone());
    for (f, map) in &d.sen_map {
        let m = arrow_map(ctx, &c, "senMap", f, map, &sen, true)?;
        inst.sen.morphisms.insert(f.clone(), m);
    }
    for (f, map) in &d.reduct {
        let m = arrow_map(ctx, &c, "reduct", f, map, &mods, false)?;
        inst.models.morphisms.insert(f.clone(), m);
    }
    for o in &c.objects {
        let (su, mu) = (&sen[o], &mods[o]);
        let mut mat = SatMatrix::new(mu.len(), su.len());
        for [m, s] in d.sat.get(o).map(Vec::as_slice).unwrap_or(&[]) {
            let mi = mu.index_of(m).ok_or_else(|| ctx.dangling(format!("sat.{o}"), m))?;
            let si = su.index_of(s).ok_or_else(|| ctx.dangling(format!("sat.{o}"), s))?;
            mat.set(mi, si, true);
        }
        inst.sat.insert(o.clone(), mat);
    }
    for o in d.sat.keys() {
        if !c.objects.contains(o) {
            return Err(ctx.dangling("sat", o));
        }
    }
    for (o, pairs) in &d.order {
        let mu = mods.get(o).ok_or_else(|| ctx.dangling("order", o))?;
        let mut set = std::collections::BTreeSet::new();
        for [a, b] in pairs {
            for m in [a, b] {
                if !mu.contains(m) {
                    return Err(ctx.dangling(format!("order.{o}"), m));
                }
            }
            set.insert((a.clone(), b.clone()));
        }
        inst.model_order.insert(o.clone(), set);
    }
    inst.sen.objects = sen;
    inst.models.objects = mods;
    inst.fill_identities();
    Ok(inst)
}

fn subset_key(ctx: &Ctx, o: &str, u: &Universe, key: &str) -> DocResult<instkit::Subset> {
    let names: Vec<String> = serde_json::from_str(key)
        .map_err(|_| ctx.shape(format!("closure.table.{o}: key {key} is not a JSON array of names")))?;
    u.subset(&names)
        .map_err(|id| ctx.dangling(format!("closure.table.{o}"), &id))
}

fn pi_from_doc(ctx: &Ctx, d: PiDoc) -> DocResult<PiInstitution> {
    let c = build_category(ctx, &d.objects, &d.morphisms, &d.compose)?;
    let mut sen = universes(ctx, &c, "sen", &d.sen)?;
    let mut logics: BTreeMap<String, LogicPresentation> = BTreeMap::new();
    match d.closure.matrix_logic {
        Some(MatrixLogicDoc::All(l)) => {
            for o in &c.objects {
                logics.insert(o.clone(), (*l).clone());
            }
        }
        Some(MatrixLogicDoc::PerSignature(m)) => {
            for (o, l) in m {
                if !c.objects.contains(&o) {
                    return Err(ctx.dangling("closure.matrixLogic", &o));
                }
                logics.insert(o, l);
            }
        }
        None => {}
    }
    let tables = d.closure.table.unwrap_or_default();
    let mut closure = BTreeMap::new();
    for (o, l) in &logics {
        if tables.contains_key(o) {
            return Err(ctx.shape(format!("{o} has both a table and a matrix logic")));
        }
        l.validate()
            .map_err(|e| ctx.shape(format!("closure.matrixLogic.{o}: {e}")))?;
        let universe = l
            .universe()
            .map_err(|e| ctx.shape(format!("closure.matrixLogic.{o}: {e}")))?;
        let names: Vec<String> = universe.iter().map(|f| f.to_string()).collect();
        match sen.get(o) {
            Some(u) if u.names() != names.as_slice() => {
                return Err(ctx.shape(format!("sen.{o} differs from the formulas of its matrix logic")))
            }
            Some(_) => {}
            None => {
                sen.insert(o.clone(), Universe::new(names).map_err(|e| ctx.shape(e.to_string()))?);
            }
        }
        let sat = l.designation_matrix(&universe).map_err(|e| ctx.shape(e.to_string()))?;
        closure.insert(
            o.clone(),
            Closure::Logic {
                logic: Box::new(l.clone()),
                sat,
            },
        );
    }
    require_all(ctx, &c, "sen", &sen)?;
    for (o, table) in &tables {
        let u = sen.get(o).ok_or_else(|| ctx.dangling("closure.table", o))?;
        if u.len() >= 63 {
            return Err(ctx.shape(format!("closure.table.{o}: universe too large to tabulate")));
        }
        let mut rows: Vec<Option<instkit::Subset>> = vec![None; 1 << u.len()];
        for (key, image) in table {
            let k = subset_key(ctx, o, u, key)?;
            let img = u
                .subset(image)
                .map_err(|id| ctx.dangling(format!("closure.table.{o}.{key}"), &id))?;
            rows[instkit::subset::to_mask(&k) as usize] = Some(img);
        }
        let rows: Vec<instkit::Subset> = rows
            .into_iter()
            .enumerate()
            .map(|(mask, r)| {
                r.ok_or_else(|| {
                    let s = instkit::subset::from_mask(u.len(), mask as u64);
                    ctx.shape(format!("closure.table.{o} has no entry for {}", u.key(&s)))
                })
            })
            .collect::<DocResult<_>>()?;
        closure.insert(o.clone(), Closure::Table(rows));
    }
    if let Some(o) = c.objects.iter().find(|o| !closure.contains_key(*o)) {
        return Err(ctx.shape(format!("closure has no entry for {o}")));
    }
    let mut j = PiInstitution {
        sig: c.clone(),
        ..Default::default()
    };
    for (f, map) in &d.sen_map {
        let m = arrow_map(ctx, &c, "senMap", f, map, &sen, true)?;
        j.sen.morphisms.insert(f.clone(), m);
    }
    j.sen.objects = sen;
    j.sen.fill_identities(&j.sig);
    j.closure = closure;
    Ok(j)
}

fn nat(map: BTreeMap<String, NameMap>) -> NatTransSet {
    NatTransSet { components: map }
}

fn functor(d: FunctorDoc) -> FinFunctor {
    FinFunctor {
        objects: d.objects,
        morphisms: d.morphisms,
    }
}

fn infer_kind(ctx: &Ctx, v: &Value) -> DocResult<&'static str> {
    let Some(obj) = v.as_object() else {
        return Err(ctx.shape("a document must be a JSON object"));
    };
    let explicit = obj.get("kind").and_then(Value::as_str);
    let kinds = [
        "institution",
        "pi-institution",
        "inst-comorphism",
        "inst-morphism",
        "pi-comorphism",
        "logic",
        "translation",
        "logic-fragment",
    ];
    if let Some(k) = explicit.and_then(|k| kinds.iter().find(|x| **x == k)) {
        return Ok(k);
    }
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("closure") {
        "pi-institution"
    } else if has("sat") || has("mod") {
        "institution"
    } else if has("beta") {
        "inst-comorphism"
    } else if has("alpha") {
        "pi-comorphism"
    } else if has("logics") {
        "logic-fragment"
    } else if has("matrix") {
        "logic"
    } else if has("mapping") {
        "translation"
    } else {
        return Err(ctx.shape("cannot tell the document kind"));
    })
}

/// Parses and cross-checks a document from text; `path` is used in errors.
pub fn parse_document(path: &str, text: &str) -> DocResult<Document> {
    let ctx = Ctx { path };
    let value: Value = ctx.parse(text)?;
    Ok(match infer_kind(&ctx, &value)? {
        "institution" => Document::Institution(institution_from_doc(&ctx, ctx.parse(text)?)?),
        "pi-institution" => Document::PiInstitution(pi_from_doc(&ctx, ctx.parse(text)?)?),
        kind @ ("inst-comorphism" | "inst-morphism") => {
            let d: ComorphismDoc = ctx.parse(text)?;
            let beta = d.beta.ok_or_else(|| ctx.shape(format!("an {kind} needs beta")))?;
            if kind == "inst-morphism" {
                Document::InstMorphism(InstMorphism {
                    phi: functor(d.phi),
                    alpha: nat(d.alpha),
                    beta: nat(beta),
                })
            } else {
                Document::InstComorphism(InstComorphism {
                    phi: functor(d.phi),
                    alpha: nat(d.alpha),
                    beta: nat(beta),
                })
            }
        }
        "pi-comorphism" => {
            let d: ComorphismDoc = ctx.parse(text)?;
            if d.beta.is_some() {
                return Err(ctx.shape("a pi-comorphism has no beta"));
            }
            Document::PiComorphism(PiComorphism {
                phi: functor(d.phi),
                alpha: nat(d.alpha),
            })
        }
        "logic" => {
            let l: LogicPresentation = ctx.parse(text)?;
            l.validate().map_err(|e| ctx.shape(e.to_string()))?;
            Document::Logic(l)
        }
        "translation" => Document::Translation(ctx.parse(text)?),
        _ => Document::Fragment(ctx.parse(text)?),
    })
}

pub fn load_document(path: &Path) -> DocResult<Document> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| DocError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_document(&shown, &text)
}

macro_rules! loader {
    ($name:ident, $variant:ident, $ty:ty, $what:expr) => {
        pub fn $name(path: &Path) -> DocResult<$ty> {
            match load_document(path)? {
                Document::$variant(x) => Ok(x),
                other => Err(DocError::Shape {
                    path: path.display().to_string(),
                    message: format!("expected {}, found {}", $what, other.kind()),
                }),
            }
        }
    };
}

loader!(load_institution, Institution, Institution, "an institution");
loader!(load_pi, PiInstitution, PiInstitution, "a pi-institution");
loader!(
    load_inst_comorphism,
    InstComorphism,
    InstComorphism,
    "an inst-comorphism"
);
loader!(load_inst_morphism, InstMorphism, InstMorphism, "an inst-morphism");
loader!(load_pi_comorphism, PiComorphism, PiComorphism, "a pi-comorphism");
loader!(load_logic, Logic, LogicPresentation, "a logic");
loader!(load_translation, Translation, SigTranslation, "a translation");
loader!(load_fragment, Fragment, Fragment, "a logic fragment");

fn category_doc(c: &FinCat) -> (Vec<String>, Vec<MorphismDoc>, Vec<[String; 3]>) {
    let objects = c.objects.iter().cloned().collect();
    let morphisms = c
        .morphisms
        .iter()
        .filter(|(f, _)| !c.is_identity(f))
        .map(|(f, a)| MorphismDoc {
            id: f.clone(),
            src: a.src.clone(),
            dst: a.dst.clone(),
        })
        .collect();
    let compose = c
        .compose
        .iter()
        .filter(|((f, g), _)| !c.is_identity(f) && !c.is_identity(g))
        .map(|((f, g), h)| [f.clone(), g.clone(), h.clone()])
        .collect();
    (objects, morphisms, compose)
}

fn non_identity_maps(c: &FinCat, maps: &BTreeMap<String, NameMap>) -> BTreeMap<String, NameMap> {
    maps.iter()
        .filter(|(f, _)| !c.is_identity(f))
        .map(|(f, m)| (f.clone(), m.clone()))
        .collect()
}

pub fn institution_doc(inst: &Institution) -> InstitutionDoc {
    let (objects, morphisms, compose) = category_doc(&inst.sig);
    let sets = |s: &instkit::SetFunctor| -> BTreeMap<String, Vec<String>> {
        s.objects.iter().map(|(o, u)| (o.clone(), u.names().to_vec())).collect()
    };
    let mut sat = BTreeMap::new();
    for (o, mat) in &inst.sat {
        let (Ok(su), Ok(mu)) = (inst.sentences(o), inst.model_set(o)) else {
            continue;
        };
        let mut pairs = Vec::new();
        for m in 0..mat.models() {
            for s in mat.row(m).ones() {
                pairs.push([mu.name(m).to_owned(), su.name(s).to_owned()]);
            }
        }
        sat.insert(o.clone(), pairs);
    }
    InstitutionDoc {
        kind: Some("institution".into()),
        objects,
        morphisms,
        compose,
        sen: sets(&inst.sen),
        sen_map: non_identity_maps(&inst.sig, &inst.sen.morphisms),
        models: sets(&inst.models),
        reduct: non_identity_maps(&inst.sig, &inst.models.morphisms),
        sat,
        order: inst
            .model_order
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(o, s)| (o.clone(), s.iter().map(|(a, b)| [a.clone(), b.clone()]).collect()))
            .collect(),
    }
}

/// Pi-institution document; matrix-logic closures are kept, all others are
/// tabulated, which fails above `cap`.
pub fn pi_doc(j: &PiInstitution, cap: usize) -> instkit::Result<PiDoc> {
    let (objects, morphisms, compose) = category_doc(&j.sig);
    let mut tables = BTreeMap::new();
    let mut logics = BTreeMap::new();
    for (o, c) in &j.closure {
        if let Closure::Logic { logic, .. } = c {
            logics.insert(o.clone(), (**logic).clone());
            continue;
        }
        let u = j.sentences(o)?;
        instkit::subset::ensure_within_cap(o, u.len(), cap)?;
        let mut subsets: Vec<instkit::Subset> = all_subsets(u.len()).collect();
        subsets.sort_by(canonical_cmp);
        let mut table = BTreeMap::new();
        for s in subsets {
            table.insert(u.key(&s), u.names_of(&j.close(o, &s)?));
        }
        tables.insert(o.clone(), table);
    }
    Ok(PiDoc {
        kind: Some("pi-institution".into()),
        objects,
        morphisms,
        compose,
        sen: j
            .sen
            .objects
            .iter()
            .map(|(o, u)| (o.clone(), u.names().to_vec()))
            .collect(),
        sen_map: non_identity_maps(&j.sig, &j.sen.morphisms),
        closure: ClosureDoc {
            table: (!tables.is_empty()).then_some(tables),
            matrix_logic: (!logics.is_empty()).then_some(MatrixLogicDoc::PerSignature(logics)),
        },
    })
}

fn functor_doc(f: &FinFunctor) -> FunctorDoc {
    FunctorDoc {
        objects: f.objects.clone(),
        morphisms: f.morphisms.clone(),
    }
}

pub fn inst_comorphism_doc(f: &InstComorphism) -> ComorphismDoc {
    ComorphismDoc {
        kind: Some("inst-comorphism".into()),
        phi: functor_doc(&f.phi),
        alpha: f.alpha.components.clone(),
        beta: Some(f.beta.components.clone()),
    }
}

pub fn inst_morphism_doc(f: &InstMorphism) -> ComorphismDoc {
    ComorphismDoc {
        kind: Some("inst-morphism".into()),
        phi: functor_doc(&f.phi),
        alpha: f.alpha.components.clone(),
        beta: Some(f.beta.components.clone()),
    }
}

pub fn pi_comorphism_doc(f: &PiComorphism) -> ComorphismDoc {
    ComorphismDoc {
        kind: Some("pi-comorphism".into()),
        phi: functor_doc(&f.phi),
        alpha: f.alpha.components.clone(),
        beta: None,
    }
}

pub fn fragment_doc(kind: MorphismKind, logics: Vec<NamedLogic>, arrows: Vec<LogicArrow>) -> Fragment {
    Fragment {
        kind: Some("logic-fragment".into()),
        morphism_kind: kind,
        logics,
        arrows,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use instkit::fixtures;

    fn round_trip_inst(inst: &Institution) -> Institution {
        let text = to_json(&institution_doc(inst));
        match parse_document("mem", &text).unwrap() {
            Document::Institution(i) => i,
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn institutions_round_trip() {
        for inst in [fixtures::twoval(), fixtures::rename(), fixtures::cpl1_institution()] {
            assert_eq!(round_trip_inst(&inst), inst);
        }
        for inst in instkit::generate::institutions(5, 10) {
            assert_eq!(round_trip_inst(&inst), inst);
        }
    }

    #[test]
    fn pi_institutions_round_trip_extensionally() {
        let cap = instkit::DEFAULT_CAP;
        for j in [instkit::f_object(&fixtures::rename()).unwrap(), fixtures::j_s()] {
            let text = to_json(&pi_doc(&j, cap).unwrap());
            let Document::PiInstitution(back) = parse_document("mem", &text).unwrap() else {
                panic!("wrong kind");
            };
            assert!(instkit::compare_pi_institutions(&j, &back, cap).unwrap().is_pass());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_document("e", ""), Err(DocError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_document("e", "{\n  \"objects\": [,]\n}"),
            Err(DocError::Parse { line: 2, .. })
        ));
        let text = r#"{"objects":["S0"],"sen":{"S0":["a"]},"mod":{"S0":["m"]},"sat":{"S0":[["x","a"]]}}"#;
        match parse_document("d", text) {
            Err(DocError::DanglingReference { path, context, id }) => {
                assert_eq!((path.as_str(), context.as_str(), id.as_str()), ("d", "sat.S0", "x"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"objects":["S0"],"morphisms":[{"id":"f","src":"S0","dst":"S9"}],"sen":{},"mod":{},"sat":{}}"#;
        assert!(matches!(
            parse_document("d", text),
            Err(DocError::DanglingReference { .. })
        ));
    }

    #[test]
    fn partial_tables_are_rejected() {
        let text = r#"{"objects":["S0"],"sen":{"S0":["a"]},"closure":{"table":{"S0":{"[]":[]}}}}"#;
        assert!(matches!(parse_document("d", text), Err(DocError::Shape { .. })));
    }

    #[test]
    fn composites_are_inferred_when_unique() {
        let text = r#"{"objects":["A","B","C"],
            "morphisms":[{"id":"f","src":"A","dst":"B"},{"id":"g","src":"B","dst":"C"},{"id":"h","src":"A","dst":"C"}],
            "sen":{"A":["a"],"B":["b"],"C":["c"]},
            "senMap":{"f":{"a":"b"},"g":{"b":"c"},"h":{"a":"c"}},
            "closure":{"table":{"A":{"[]":[],"[\"a\"]":["a"]},"B":{"[]":[],"[\"b\"]":["b"]},"C":{"[]":[],"[\"c\"]":["c"]}}}}"#;
        let Document::PiInstitution(j) = parse_document("d", text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(j.sig.compose[&("f".to_string(), "g".to_string())], "h");
        assert!(instkit::validate_pi_institution(&j, 16).unwrap().is_pass());
    }
}
