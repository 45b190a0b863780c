mod oracle;

use std::collections::BTreeSet;

use instkit::fixtures;
use instkit::generate;
use instkit::proplogic::{build_matrix_institution, check_logic_morphism, enumerate_formulas, LogicPresentation};
use instkit::{closure_of, f_object, g_object, Institution, DEFAULT_CAP};
use oracle::Family;

fn check_matrix_closure(l: &LogicPresentation, family: Family) {
    let inst = build_matrix_institution(l).unwrap();
    let j = f_object(&inst).unwrap();
    let universe: Vec<String> = inst.sentences("S0").unwrap().names().to_vec();
    let vars: Vec<&str> = l.variables.iter().map(String::as_str).collect();
    let subsets = oracle::power_set(&universe);
    assert_eq!(subsets.len(), 1 << universe.len());
    for gamma in subsets {
        let g: Vec<&str> = gamma.iter().map(String::as_str).collect();
        let got: BTreeSet<String> = closure_of(&j, "S0", &g).unwrap().into_iter().collect();
        assert_eq!(
            got,
            oracle::consequence_closure(family, &vars, &universe, &gamma),
            "at {gamma:?}"
        );
    }
}

#[test]
fn cpl1_closure_matches_oracle() {
    check_matrix_closure(&fixtures::cpl1(), Family::Boolean);
    assert!(oracle::consequence_closure(
        Family::Boolean,
        &["p"],
        &["p".into(), "and(p,p)".into(), "not(p)".into()],
        &BTreeSet::new()
    )
    .is_empty());
}

#[test]
fn luk3_closure_matches_oracle() {
    check_matrix_closure(&fixtures::luk3(), Family::Lukasiewicz3);
}

#[test]
fn wider_logics_match_oracle() {
    check_matrix_closure(&fixtures::and_not(&["p", "q"], 1), Family::Boolean);
    let l = LogicPresentation::lukasiewicz3(&[("imp", "imp"), ("or", "or")], &["p", "q"], 1).unwrap();
    // 2 + 4 + 4 = 10 formulas
    check_matrix_closure(&l, Family::Lukasiewicz3);
}

#[test]
fn lukasiewicz_spot_values() {
    // v(p) = 1/2
    assert_eq!(oracle::eval(Family::Lukasiewicz3, "not(p)", &["p"], &[1]), 1);
    assert_eq!(oracle::eval(Family::Lukasiewicz3, "imp(p,p)", &["p"], &[1]), 2);
    let all: Vec<String> = vec!["q".into()];
    let gamma: BTreeSet<String> = ["p".to_string(), "imp(p,q)".to_string()].into();
    assert_eq!(
        oracle::consequence_closure(Family::Lukasiewicz3, &["p", "q"], &all, &gamma).len(),
        1
    );
}

#[test]
fn enumeration_matches_naive_generation() {
    for (conns, vars, depth) in [
        (vec![("not", 1), ("and", 2)], vec!["p"], 1),
        (vec![("not", 1), ("and", 2)], vec!["p"], 2),
        (vec![("not", 1), ("and", 2)], vec!["p", "q"], 2),
        (vec![("not", 1), ("or", 2)], vec!["p"], 3),
    ] {
        let l =
            LogicPresentation::boolean(&conns.iter().map(|(c, _)| (*c, *c)).collect::<Vec<_>>(), &vars, depth).unwrap();
        let got: Vec<String> = enumerate_formulas(&l.signature, &l.variables, depth)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        let want = oracle::formulas(&conns, &vars, depth);
        assert_eq!(got.len(), want.len());
        assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), want);
    }
}

fn sat_pairs(inst: &Institution, o: &str) -> (Vec<String>, Vec<String>, BTreeSet<(String, String)>) {
    let models = inst.model_set(o).unwrap().names().to_vec();
    let sentences = inst.sentences(o).unwrap().names().to_vec();
    let mut sat = BTreeSet::new();
    for m in &models {
        for s in &sentences {
            if inst.satisfies(o, m, s).unwrap() {
                sat.insert((m.clone(), s.clone()));
            }
        }
    }
    (models, sentences, sat)
}

#[test]
fn semantic_closure_matches_oracle() {
    let mut corpus = vec![fixtures::twoval(), fixtures::rename(), fixtures::cpl1_institution()];
    corpus.extend(generate::institutions(1, 40));
    for inst in corpus {
        let j = f_object(&inst).unwrap();
        for o in &inst.sig.objects {
            let (models, sentences, sat) = sat_pairs(&inst, o);
            for gamma in oracle::power_set(&sentences) {
                let g: Vec<&str> = gamma.iter().map(String::as_str).collect();
                let got: BTreeSet<String> = closure_of(&j, o, &g).unwrap().into_iter().collect();
                assert_eq!(got, oracle::semantic_closure(&models, &sentences, &sat, &gamma));
            }
        }
    }
}

#[test]
fn g_models_are_exactly_the_closed_sets() {
    for j in generate::pi_institutions(2, 20, DEFAULT_CAP) {
        let g = g_object(&j, DEFAULT_CAP).unwrap();
        for o in &j.sig.objects {
            let sentences = j.sentences(o).unwrap().names().to_vec();
            let mut closed = BTreeSet::new();
            for gamma in oracle::power_set(&sentences) {
                let g: Vec<&str> = gamma.iter().map(String::as_str).collect();
                let c: BTreeSet<String> = closure_of(&j, o, &g).unwrap().into_iter().collect();
                if c == gamma {
                    closed.insert(gamma);
                }
            }
            let models = g.model_set(o).unwrap().names();
            assert_eq!(models.len(), closed.len());
            for m in models {
                let members: BTreeSet<String> = sentences
                    .iter()
                    .filter(|s| g.satisfies(o, m, s).unwrap())
                    .cloned()
                    .collect();
                assert!(closed.contains(&members));
            }
        }
    }
}

/// `G |- psi  =>  t[G] |-' t(psi)` swept by the oracle, with the translation
/// evaluated directly in the target family.
fn oracle_morphism_holds(
    universe: &[String],
    vars: &[&str],
    translated_eval: impl Fn(&str, &[usize]) -> usize,
) -> Option<(BTreeSet<String>, String)> {
    let vals = oracle::valuations(Family::Boolean, vars.len());
    let mut subsets = oracle::power_set(universe);
    subsets.sort_by_key(|s| s.len());
    for gamma in subsets {
        let closure = oracle::consequence_closure(Family::Boolean, vars, universe, &gamma);
        for psi in universe {
            if !closure.contains(psi) {
                continue;
            }
            let ok = vals
                .iter()
                .all(|v| !gamma.iter().all(|g| translated_eval(g, v) == 1) || translated_eval(psi, v) == 1);
            if !ok {
                return Some((gamma, psi.clone()));
            }
        }
    }
    None
}

fn swap_and_or(text: &str) -> String {
    text.replace("and(", "or(")
}

#[test]
fn logic_morphism_verdicts_match_oracle() {
    let src = fixtures::and_not(&["p", "q"], 1);
    let universe: Vec<String> = src.universe().unwrap().iter().map(|f| f.to_string()).collect();
    let vars = ["p", "q"];

    // not(or(not(x),not(y))) and and(x,y) agree on every Boolean valuation,
    // so a De Morgan image evaluates like its source formula.
    let dm = oracle_morphism_holds(&universe, &vars, |f, v| oracle::eval(Family::Boolean, f, &vars, v));
    assert!(dm.is_none());
    let lib = check_logic_morphism(&fixtures::de_morgan(), &src, &fixtures::or_not(&vars, 3)).unwrap();
    assert!(lib.is_pass());

    let swap = oracle_morphism_holds(&universe, &vars, |f, v| {
        oracle::eval(Family::Boolean, &swap_and_or(f), &vars, v)
    });
    let (gamma, psi) = swap.expect("the swap is not a morphism");
    assert_eq!(gamma, BTreeSet::from(["and(p,q)".to_string()]));
    assert_eq!(psi, "p");
    let lib = check_logic_morphism(&fixtures::and_to_or(), &src, &fixtures::or_not(&vars, 1)).unwrap();
    assert_eq!(lib.violations[0].witness, [r#"["and(p,q)"]"#, "p"]);
}
