//! Small named institutions, pi-institutions and logics used by tests,
//! benches and the CLI.

use std::collections::BTreeMap;

use crate::fincat::{FinCat, FinFunctor};
use crate::galois::f_object;
use crate::institution::Institution;
use crate::pi_institution::{Closure, PiInstitution, DEFAULT_CAP};
use crate::proplogic::{
    build_logics_pi_institution, build_matrix_institution, parse_loose, LogicArrow, LogicPresentation, MorphismKind,
    NamedLogic, SigTranslation,
};
use crate::subset::Universe;

/// One signature, sentences `a, b`; `m1 |= a`, `m2 |= a, b`.
pub fn twoval() -> Institution {
    let mut i = Institution::new(FinCat::discrete(["S0"]));
    i.set_sentences("S0", ["a", "b"]).expect("distinct");
    i.set_models("S0", ["m1", "m2"]).expect("distinct");
    i.set_sat("S0", [("m1", "a"), ("m2", "a"), ("m2", "b")])
        .expect("known ids");
    i.fill_identities();
    i
}

/// `h : S1 -> S2` renaming `p` to `q`; models are valuations, reducts
/// forget `r`.
pub fn rename() -> Institution {
    let mut c = FinCat::discrete(["S1", "S2"]);
    c.add_morphism("h", "S1", "S2").expect("fresh arrow");
    let mut i = Institution::new(c);
    i.set_sentences("S1", ["p"]).expect("distinct");
    i.set_sentences("S2", ["q", "r"]).expect("distinct");
    i.set_models("S1", ["v{p=T}", "v{p=F}"]).expect("distinct");
    i.set_models("S2", ["v{q=F,r=F}", "v{q=F,r=T}", "v{q=T,r=F}", "v{q=T,r=T}"])
        .expect("distinct");
    i.set_sen_map("h", [("p", "q")]);
    i.set_reduct(
        "h",
        [
            ("v{q=F,r=F}", "v{p=F}"),
            ("v{q=F,r=T}", "v{p=F}"),
            ("v{q=T,r=F}", "v{p=T}"),
            ("v{q=T,r=T}", "v{p=T}"),
        ],
    );
    i.set_sat("S1", [("v{p=T}", "p")]).expect("known ids");
    i.set_sat(
        "S2",
        [
            ("v{q=F,r=T}", "r"),
            ("v{q=T,r=F}", "q"),
            ("v{q=T,r=T}", "q"),
            ("v{q=T,r=T}", "r"),
        ],
    )
    .expect("known ids");
    i.fill_identities();
    i
}

/// Classical logic over `{p}` with `not, and`, depth at most 1.
pub fn cpl1() -> LogicPresentation {
    LogicPresentation::boolean(&[("not", "not"), ("and", "and")], &["p"], 1).expect("valid presentation")
}

/// Three-valued Lukasiewicz logic over `{p}` with `not, imp`, depth at most 1.
pub fn luk3() -> LogicPresentation {
    LogicPresentation::lukasiewicz3(&[("not", "not"), ("imp", "imp")], &["p"], 1).expect("valid presentation")
}

pub fn cpl1_institution() -> Institution {
    build_matrix_institution(&cpl1()).expect("small logic")
}

pub fn luk3_institution() -> Institution {
    build_matrix_institution(&luk3()).expect("small logic")
}

/// One signature `S0` over `names` with `C(G) = G`.
pub fn identity_closure(names: &[&str]) -> PiInstitution {
    let sig = FinCat::discrete(["S0"]);
    let mut j = PiInstitution {
        sig,
        ..Default::default()
    };
    j.sen.objects.insert("S0".into(), Universe::of(names.iter().copied()));
    j.sen.fill_identities(&j.sig);
    j.closure.insert("S0".into(), Closure::identity());
    j
}

/// One signature, one model satisfying every sentence.
pub fn single_model(names: &[&str]) -> Institution {
    let mut i = Institution::new(FinCat::discrete(["S0"]));
    i.set_sentences("S0", names.iter().copied()).expect("distinct");
    i.set_models("S0", ["m"]).expect("distinct");
    i.set_sat("S0", names.iter().map(|n| ("m", *n))).expect("known ids");
    i.fill_identities();
    i
}

/// `F(rename)` with `C_S1` indiscrete and `C_S2` the identity: `h` sends
/// `C_S1({}) = {p}` to `{q}`, which is not below `C_S2({}) = {}`.
pub fn incoherent_rename() -> PiInstitution {
    let mut j = f_object(&rename()).expect("rename is valid");
    j.closure.insert("S1".into(), Closure::indiscrete(1));
    j.closure.insert("S2".into(), Closure::identity());
    j
}

fn named(name: &str, logic: LogicPresentation) -> NamedLogic {
    NamedLogic {
        name: name.into(),
        logic,
    }
}

/// `L1` over `not, and` and `L2` over `neg, conj`, both Boolean on `{p}`
/// at depth 1.
pub fn renaming_logics() -> Vec<NamedLogic> {
    vec![
        named("L1", cpl1()),
        named(
            "L2",
            LogicPresentation::boolean(&[("neg", "not"), ("conj", "and")], &["p"], 1).expect("valid presentation"),
        ),
    ]
}

/// Strict renaming `r : L1 -> L2`.
pub fn renaming_arrow() -> LogicArrow {
    LogicArrow {
        id: "r".into(),
        src: "L1".into(),
        dst: "L2".into(),
        translation: SigTranslation::Strict(BTreeMap::from([
            ("not".to_owned(), "neg".to_owned()),
            ("and".to_owned(), "conj".to_owned()),
        ])),
    }
}

/// Strict fragment: the two renaming logics and the renaming.
pub fn j_s() -> PiInstitution {
    build_logics_pi_institution(
        MorphismKind::Strict,
        &renaming_logics(),
        &[renaming_arrow()],
        DEFAULT_CAP,
    )
    .expect("lawful fragment")
}

/// Flexible fragment on the same logics, the renaming read as flexible.
pub fn j_f() -> PiInstitution {
    let mut a = renaming_arrow();
    a.translation = a.translation.as_flexible(&cpl1().signature);
    build_logics_pi_institution(MorphismKind::Flexible, &renaming_logics(), &[a], DEFAULT_CAP).expect("lawful fragment")
}

/// Embedding of `j_s` into `j_f` on objects and generators.
pub fn plus_embedding() -> FinFunctor {
    FinFunctor {
        objects: BTreeMap::from([("L1".into(), "L1".into()), ("L2".into(), "L2".into())]),
        morphisms: BTreeMap::from([("r".into(), "r".into())]),
    }
}

/// Boolean `{or, not}` over `vars` at the given depth.
pub fn or_not(vars: &[&str], depth_cap: usize) -> LogicPresentation {
    LogicPresentation::boolean(&[("not", "not"), ("or", "or")], vars, depth_cap).expect("valid presentation")
}

/// Boolean `{and, not}` over `vars` at the given depth.
pub fn and_not(vars: &[&str], depth_cap: usize) -> LogicPresentation {
    LogicPresentation::boolean(&[("not", "not"), ("and", "and")], vars, depth_cap).expect("valid presentation")
}

/// `and(x1,x2) -> not(or(not(x1),not(x2)))`, `not -> not`.
pub fn de_morgan() -> SigTranslation {
    SigTranslation::Flexible(BTreeMap::from([
        ("not".to_owned(), parse_loose("not(x1)").expect("well formed")),
        (
            "and".to_owned(),
            parse_loose("not(or(not(x1),not(x2)))").expect("well formed"),
        ),
    ]))
}

/// Strict `and -> or`, `not -> not`: not a logic morphism.
pub fn and_to_or() -> SigTranslation {
    SigTranslation::Strict(BTreeMap::from([
        ("not".to_owned(), "not".to_owned()),
        ("and".to_owned(), "or".to_owned()),
    ]))
}

/// `{and, not}` at depth 1 and `{or, not}` at depth 3 on `{p}`, joined by
/// the De Morgan translation.
pub fn de_morgan_fragment() -> PiInstitution {
    let logics = [named("LA", and_not(&["p"], 1)), named("LO", or_not(&["p"], 3))];
    let arrow = LogicArrow {
        id: "dm".into(),
        src: "LA".into(),
        dst: "LO".into(),
        translation: de_morgan(),
    };
    build_logics_pi_institution(MorphismKind::Flexible, &logics, &[arrow], DEFAULT_CAP).expect("lawful fragment")
}
