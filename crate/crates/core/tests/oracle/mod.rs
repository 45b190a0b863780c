//! Brute-force reference implementations, independent of the library: they
//! work on rendered formula text and on plain (model, sentence) pairs.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Truth-value families with hard-coded tables. Values are 0..n, the top
/// value is the only designated one.
#[derive(Clone, Copy)]
pub enum Family {
    Boolean,
    Lukasiewicz3,
}

impl Family {
    pub fn size(self) -> usize {
        match self {
            Family::Boolean => 2,
            Family::Lukasiewicz3 => 3,
        }
    }

    fn top(self) -> usize {
        self.size() - 1
    }

    fn op(self, name: &str, args: &[usize]) -> usize {
        let top = self.top();
        match (self, name, args) {
            (_, "not", [x]) => top - x,
            (_, "and", [x, y]) => *x.min(y),
            (_, "or", [x, y]) => *x.max(y),
            (Family::Boolean, "imp", [x, y]) => {
                if *x == 0 || *y == 1 {
                    1
                } else {
                    0
                }
            }
            (Family::Lukasiewicz3, "imp", [x, y]) => (top + y).saturating_sub(*x).min(top),
            _ => panic!("oracle has no table for {name}/{}", args.len()),
        }
    }
}

/// Evaluates prefix text such as `and(p,not(q))`; `vars[i]` has value `v[i]`.
pub fn eval(family: Family, text: &str, vars: &[&str], v: &[usize]) -> usize {
    fn go(family: Family, s: &[u8], pos: &mut usize, vars: &[&str], v: &[usize]) -> usize {
        let start = *pos;
        while *pos < s.len() && s[*pos].is_ascii_alphanumeric() {
            *pos += 1;
        }
        let name = std::str::from_utf8(&s[start..*pos]).unwrap();
        if *pos < s.len() && s[*pos] == b'(' {
            *pos += 1;
            let mut args = Vec::new();
            loop {
                args.push(go(family, s, pos, vars, v));
                let c = s[*pos];
                *pos += 1;
                if c == b')' {
                    break;
                }
            }
            family.op(name, &args)
        } else {
            v[vars.iter().position(|x| *x == name).expect("known variable")]
        }
    }
    let mut pos = 0;
    go(family, text.as_bytes(), &mut pos, vars, v)
}

pub fn valuations(family: Family, nvars: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..family.size()).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `{ phi in universe : gamma |- phi }` by matrix consequence.
pub fn consequence_closure(
    family: Family,
    vars: &[&str],
    universe: &[String],
    gamma: &BTreeSet<String>,
) -> BTreeSet<String> {
    let top = family.top();
    let vals = valuations(family, vars.len());
    universe
        .iter()
        .filter(|phi| {
            vals.iter().all(|v| {
                let premises = gamma.iter().all(|g| eval(family, g, vars, v) == top);
                !premises || eval(family, phi, vars, v) == top
            })
        })
        .cloned()
        .collect()
}

/// `G**` from an explicit satisfaction relation.
pub fn semantic_closure(
    models: &[String],
    sentences: &[String],
    sat: &BTreeSet<(String, String)>,
    gamma: &BTreeSet<String>,
) -> BTreeSet<String> {
    let star: Vec<&String> = models
        .iter()
        .filter(|m| gamma.iter().all(|g| sat.contains(&((*m).clone(), g.clone()))))
        .collect();
    sentences
        .iter()
        .filter(|s| star.iter().all(|m| sat.contains(&((*m).clone(), (*s).clone()))))
        .cloned()
        .collect()
}

/// Every subset of `items`.
pub fn power_set(items: &[String]) -> Vec<BTreeSet<String>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect()
}

/// All formulas up to `depth` as text, by naive recursion.
pub fn formulas(connectives: &[(&str, usize)], vars: &[&str], depth: usize) -> BTreeSet<String> {
    if depth == 0 {
        return vars.iter().map(|v| v.to_string()).collect();
    }
    let below: Vec<String> = formulas(connectives, vars, depth - 1).into_iter().collect();
    let mut out: BTreeSet<String> = below.iter().cloned().collect();
    for &(c, n) in connectives {
        let mut tuples: Vec<Vec<&String>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    below.iter().map(move |f| {
                        let mut u = t.clone();
                        u.push(f);
                        u
                    })
                })
                .collect();
        }
        for t in tuples {
            let args: Vec<&str> = t.iter().map(|s| s.as_str()).collect();
            out.insert(format!("{c}({})", args.join(",")));
        }
    }
    out
}
