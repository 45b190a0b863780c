//! Seeded random institutions, comorphisms and lawful pi-institutions over
//! chain categories, small enough for exhaustive checking.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{chain_arrow, FinCat, FinFunctor, NatTransSet};
use crate::galois::f_object;
use crate::institution::{check_inst_comorphism, InstComorphism, Institution, SatMatrix};
use crate::pi_institution::PiInstitution;
use crate::subset::{preimage, Subset, Universe};

/// Size limits for generated data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub max_signatures: usize,
    pub max_sentences: usize,
    pub max_models: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_signatures: 3,
            max_sentences: 4,
            max_models: 4,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_row(rng: &mut impl Rng, n: usize) -> Subset {
    let mut s = Subset::with_capacity(n);
    for i in 0..n {
        s.set(i, rng.gen_bool(0.5));
    }
    s
}

/// Rows in order of first appearance, then random extras up to `max`.
fn with_extras(rng: &mut impl Rng, mut rows: Vec<Subset>, n: usize, max: usize) -> Vec<Subset> {
    let mut distinct: Vec<Subset> = Vec::new();
    for r in rows.drain(..) {
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    let target = rng.gen_range(distinct.len().max(1)..=max.max(distinct.len()));
    while distinct.len() < target {
        distinct.push(random_row(rng, n));
    }
    distinct
}

fn first_with_row(rows: &[Subset], row: &Subset) -> usize {
    rows.iter().position(|r| r == row).expect("required row present")
}

/// Index maps of the consecutive arrows of a chain, composed into every
/// arrow `e{i}{j}`.
fn chain_maps(steps: &[Vec<usize>], i: usize, j: usize) -> Vec<usize> {
    let mut map: Vec<usize> = (0..steps.get(i).map_or(0, Vec::len)).collect();
    for step in &steps[i..j] {
        map = map.iter().map(|&k| step[k]).collect();
    }
    map
}

/// Assembles an institution over `chain(n)` from sentence counts, the
/// sentence maps of consecutive arrows, and model rows; reducts pick the
/// first model with the pulled-back row.
fn assemble(
    prefix: &str,
    sentence_names: Vec<Vec<String>>,
    steps: &[Vec<usize>],
    rows: Vec<Vec<Subset>>,
) -> Institution {
    let n = sentence_names.len();
    let mut inst = Institution::new(FinCat::chain(n));
    for (i, names) in sentence_names.iter().enumerate() {
        let o = format!("S{i}");
        inst.set_sentences(&o, names.clone()).expect("distinct names");
        inst.set_models(&o, (0..rows[i].len()).map(|k| format!("{prefix}{i}_{k}")))
            .expect("distinct names");
        inst.sat.insert(o, SatMatrix::from_rows(names.len(), rows[i].clone()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let f = chain_arrow(i, j);
            let map = chain_maps(steps, i, j);
            let su = &sentence_names[i];
            let du = &sentence_names[j];
            inst.sen.morphisms.insert(
                f.clone(),
                map.iter()
                    .enumerate()
                    .map(|(a, &b)| (su[a].clone(), du[b].clone()))
                    .collect(),
            );
            let reduct = rows[j]
                .iter()
                .enumerate()
                .map(|(m, row)| {
                    let k = first_with_row(&rows[i], &preimage(&map, row));
                    (format!("{prefix}{j}_{m}"), format!("{prefix}{i}_{k}"))
                })
                .collect();
            inst.models.morphisms.insert(f, reduct);
        }
    }
    inst.fill_identities();
    inst
}

/// A random institution over a chain of at most `max_signatures` objects.
pub fn random_institution(rng: &mut impl Rng, cfg: &GenConfig) -> Institution {
    let n = rng.gen_range(1..=cfg.max_signatures);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=cfg.max_sentences)).collect();
    let steps: Vec<Vec<usize>> = (0..n.saturating_sub(1))
        .map(|i| (0..sizes[i]).map(|_| rng.gen_range(0..sizes[i + 1])).collect())
        .collect();
    let mut rows: Vec<Vec<Subset>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let required: Vec<Subset> = if i + 1 < n {
            rows[i + 1].iter().map(|r| preimage(&steps[i], r)).collect()
        } else {
            Vec::new()
        };
        rows[i] = with_extras(rng, required, sizes[i], cfg.max_models);
    }
    let names = sizes
        .iter()
        .enumerate()
        .map(|(i, &k)| (0..k).map(|j| format!("s{i}_{j}")).collect())
        .collect();
    assemble("m", names, &steps, rows)
}

/// A random valid comorphism `src -> dst`, returned with both ends.
/// `src` sits over a sub-chain of `dst`'s chain, shifted by an offset.
pub fn random_comorphism(rng: &mut impl Rng, cfg: &GenConfig) -> (InstComorphism, Institution, Institution) {
    loop {
        if let Some(found) = try_comorphism(rng, cfg) {
            return found;
        }
    }
}

fn try_comorphism(rng: &mut impl Rng, cfg: &GenConfig) -> Option<(InstComorphism, Institution, Institution)> {
    let dst = random_institution(rng, cfg);
    let n2 = dst.sig.objects.len();
    let n = rng.gen_range(1..=n2);
    let off = rng.gen_range(0..=n2 - n);
    let dst_obj = |i: usize| format!("S{}", i + off);
    let dst_sen: Vec<&Universe> = (0..n)
        .map(|i| dst.sentences(&dst_obj(i)).expect("chain object"))
        .collect();
    let dst_step = |i: usize| {
        dst.sen
            .index_map(
                &dst.sig,
                &chain_arrow(i + off, i + off + 1),
                crate::fincat::Variance::Covariant,
            )
            .expect("total")
    };

    // Sentences and alpha, forward along the chain so that alpha is natural.
    let mut sizes = Vec::new();
    let mut alpha: Vec<Vec<usize>> = Vec::new();
    let mut steps: Vec<Vec<usize>> = Vec::new();
    let k0 = rng.gen_range(1..=cfg.max_sentences);
    sizes.push(k0);
    alpha.push((0..k0).map(|_| rng.gen_range(0..dst_sen[0].len())).collect());
    for i in 0..n.saturating_sub(1) {
        let step2 = dst_step(i);
        let mut targets: Vec<usize> = Vec::new();
        let mut step = Vec::new();
        for &a in &alpha[i] {
            let t = step2[a];
            let pos = targets.iter().position(|&x| x == t).unwrap_or_else(|| {
                targets.push(t);
                targets.len() - 1
            });
            step.push(pos);
        }
        let k = rng.gen_range(targets.len().max(1)..=cfg.max_sentences.max(targets.len()));
        while targets.len() < k {
            targets.push(rng.gen_range(0..dst_sen[i + 1].len()));
        }
        sizes.push(k);
        alpha.push(targets);
        steps.push(step);
    }

    // Models, backward: pulled-back rows of dst models and of later reducts.
    let mut rows: Vec<Vec<Subset>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mat = dst.matrix(&dst_obj(i)).expect("chain object");
        let mut required: Vec<Subset> = (0..mat.models()).map(|m| preimage(&alpha[i], mat.row(m))).collect();
        if i + 1 < n {
            required.extend(rows[i + 1].iter().map(|r| preimage(&steps[i], r)));
        }
        let distinct = with_extras(rng, required, sizes[i], 0);
        if distinct.len() > cfg.max_models {
            return None;
        }
        rows[i] = with_extras(rng, distinct, sizes[i], cfg.max_models);
    }
    let names: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &k)| (0..k).map(|j| format!("t{i}_{j}")).collect())
        .collect();
    let src = assemble("n", names, &steps, rows.clone());

    let mut phi = FinFunctor::default();
    for i in 0..n {
        phi.objects.insert(format!("S{i}"), dst_obj(i));
        for j in i + 1..n {
            phi.morphisms.insert(chain_arrow(i, j), chain_arrow(i + off, j + off));
        }
    }
    phi.fill_identities(&src.sig, &dst.sig);
    let mut alpha_t = NatTransSet::default();
    let mut beta = NatTransSet::default();
    for i in 0..n {
        let o = format!("S{i}");
        let su = src.sentences(&o).expect("object");
        alpha_t.components.insert(
            o.clone(),
            alpha[i]
                .iter()
                .enumerate()
                .map(|(a, &b)| (su.name(a).to_owned(), dst_sen[i].name(b).to_owned()))
                .collect(),
        );
        let dm = dst.model_set(&dst_obj(i)).expect("object");
        let sm = src.model_set(&o).expect("object");
        let mat = dst.matrix(&dst_obj(i)).expect("object");
        let comp: BTreeMap<String, String> = (0..mat.models())
            .map(|m| {
                let k = first_with_row(&rows[i], &preimage(&alpha[i], mat.row(m)));
                (dm.name(m).to_owned(), sm.name(k).to_owned())
            })
            .collect();
        beta.components.insert(o, comp);
    }
    let f = InstComorphism {
        phi,
        alpha: alpha_t,
        beta,
    };
    if !check_inst_comorphism(&f, &src, &dst).is_clean() {
        return None;
    }
    Some((f, src, dst))
}

/// `F` of a random institution, with closures tabulated.
pub fn random_pi_institution(rng: &mut impl Rng, cfg: &GenConfig, cap: usize) -> PiInstitution {
    let inst = random_institution(rng, cfg);
    f_object(&inst)
        .and_then(|j| j.tabulated(cap))
        .expect("generated institutions are valid and small")
}

pub fn institutions(seed: u64, count: usize) -> Vec<Institution> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_institution(&mut r, &GenConfig::default()))
        .collect()
}

pub fn comorphisms(seed: u64, count: usize) -> Vec<(InstComorphism, Institution, Institution)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_comorphism(&mut r, &GenConfig::default()))
        .collect()
}

pub fn pi_institutions(seed: u64, count: usize, cap: usize) -> Vec<PiInstitution> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_pi_institution(&mut r, &GenConfig::default(), cap))
        .collect()
}
