use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LogicError, LogicResult};

/// Default bound for `enumerate_formulas`.
pub const DEFAULT_FORMULA_BOUND: u128 = 4096;

/// A ranked set of connectives.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropSignature {
    pub connectives: BTreeMap<String, usize>,
}

impl PropSignature {
    pub fn new<'a>(connectives: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        PropSignature {
            connectives: connectives.into_iter().map(|(c, n)| (c.to_owned(), n)).collect(),
        }
    }

    pub fn arity(&self, c: &str) -> Option<usize> {
        self.connectives.get(c).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Conn(String, Vec<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_owned())
    }

    pub fn conn(name: &str, args: Vec<Formula>) -> Self {
        Formula::Conn(name.to_owned(), args)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Conn(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::Var(v) => {
                    if !out.contains(&v.as_str()) {
                        out.push(v);
                    }
                }
                Formula::Conn(_, args) => args.iter().for_each(|a| walk(a, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, s: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Conn(c, args) => Formula::Conn(c.clone(), args.iter().map(|a| a.substitute(s)).collect()),
        }
    }

    /// Checks arities and symbols against a signature and variable set.
    pub fn check(&self, sig: &PropSignature, vars: &[String]) -> LogicResult<()> {
        match self {
            Formula::Var(v) if vars.contains(v) => Ok(()),
            Formula::Var(v) => Err(LogicError::UnknownSymbol(v.clone())),
            Formula::Conn(c, args) => {
                let expected = sig.arity(c).ok_or_else(|| LogicError::UnknownSymbol(c.clone()))?;
                if expected != args.len() {
                    return Err(LogicError::ArityMismatch {
                        symbol: c.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig, vars))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Conn(c, args) => {
                write!(f, "{c}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_loose(&text).map_err(serde::de::Error::custom)
    }
}

/// Canonical prefix text: `name(arg1,...,argn)`, variables bare.
pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> LogicError {
        LogicError::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn ident(&mut self) -> LogicResult<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || b"_'".contains(&self.text[self.pos]))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a symbol"));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn formula(&mut self) -> LogicResult<Formula> {
        let name = self.ident()?;
        if self.peek() != Some(b'(') {
            return Ok(Formula::Var(name));
        }
        self.pos += 1;
        let mut args = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(Formula::Conn(name, args));
        }
        loop {
            args.push(self.formula()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(Formula::Conn(name, args));
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }
}

/// Parses prefix text without a signature: applications become
/// connectives, bare names become variables.
pub fn parse_loose(text: &str) -> LogicResult<Formula> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let f = p.formula()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

fn resolve(f: Formula, sig: &PropSignature, vars: &[String]) -> LogicResult<Formula> {
    match f {
        Formula::Var(v) if vars.contains(&v) => Ok(Formula::Var(v)),
        Formula::Var(v) => match sig.arity(&v) {
            Some(0) => Ok(Formula::Conn(v, Vec::new())),
            Some(expected) => Err(LogicError::ArityMismatch {
                symbol: v,
                expected,
                found: 0,
            }),
            None => Err(LogicError::UnknownSymbol(v)),
        },
        Formula::Conn(c, args) => {
            let expected = sig.arity(&c).ok_or_else(|| LogicError::UnknownSymbol(c.clone()))?;
            if expected != args.len() {
                return Err(LogicError::ArityMismatch {
                    symbol: c,
                    expected,
                    found: args.len(),
                });
            }
            let args = args
                .into_iter()
                .map(|a| resolve(a, sig, vars))
                .collect::<LogicResult<_>>()?;
            Ok(Formula::Conn(c, args))
        }
    }
}

/// Parses prefix text over `sig` with variables drawn from `vars`.
/// A bare nullary connective is accepted as well as `c()`.
pub fn parse_formula(text: &str, sig: &PropSignature, vars: &[String]) -> LogicResult<Formula> {
    resolve(parse_loose(text)?, sig, vars)
}

/// Number of formulas of depth at most `depth` over `nvars` variables.
pub fn count_formulas(sig: &PropSignature, nvars: usize, depth: usize) -> u128 {
    // upto[k] = formulas of depth <= k
    let mut upto: Vec<u128> = vec![nvars as u128];
    for d in 1..=depth {
        let below = upto[d - 1];
        let below2 = if d >= 2 { upto[d - 2] } else { 0 };
        let mut exact: u128 = 0;
        for &n in sig.connectives.values() {
            exact = exact.saturating_add(match n {
                0 if d == 1 => 1,
                0 => 0,
                n => pow(below, n).saturating_sub(pow(below2, n)),
            });
        }
        upto.push(below.saturating_add(exact));
    }
    upto[depth]
}

fn pow(b: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(b))
}

pub fn enumerate_formulas(sig: &PropSignature, vars: &[String], depth_cap: usize) -> LogicResult<Vec<Formula>> {
    enumerate_formulas_bounded(sig, vars, depth_cap, DEFAULT_FORMULA_BOUND)
}

/// Every formula of depth at most `depth_cap`, ordered by depth and then by
/// rendered text.
pub fn enumerate_formulas_bounded(
    sig: &PropSignature,
    vars: &[String],
    depth_cap: usize,
    bound: u128,
) -> LogicResult<Vec<Formula>> {
    let mut distinct: Vec<&String> = vars.iter().collect();
    distinct.sort();
    distinct.dedup();
    let count = count_formulas(sig, distinct.len(), depth_cap);
    if count > bound {
        return Err(LogicError::ExplosionGuard { count, bound });
    }
    let mut all: Vec<Formula> = distinct.into_iter().map(|v| Formula::Var(v.clone())).collect();
    let mut level_start = 0;
    for d in 1..=depth_cap {
        let below = all.clone();
        let mut level = Vec::new();
        for (c, &n) in &sig.connectives {
            if n == 0 {
                if d == 1 {
                    level.push(Formula::Conn(c.clone(), Vec::new()));
                }
                continue;
            }
            let mut digits = vec![0usize; n];
            'tuples: loop {
                if digits.iter().any(|&i| i >= level_start) {
                    level.push(Formula::Conn(
                        c.clone(),
                        digits.iter().map(|&i| below[i].clone()).collect(),
                    ));
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break 'tuples;
                    }
                    digits[k] += 1;
                    if digits[k] < below.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
        let mut keyed: Vec<(String, Formula)> = level.into_iter().map(|f| (f.to_string(), f)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        level_start = all.len();
        all.extend(keyed.into_iter().map(|(_, f)| f));
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cpl_sig() -> PropSignature {
        PropSignature::new([("not", 1), ("and", 2)])
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_atoms_and_applications() {
        let sig = cpl_sig();
        let x = vars(&["p"]);
        assert_eq!(parse_formula("p", &sig, &x).unwrap(), Formula::var("p"));
        assert_eq!(
            parse_formula("and(p,not(p))", &sig, &x).unwrap(),
            Formula::conn(
                "and",
                vec![Formula::var("p"), Formula::conn("not", vec![Formula::var("p")])]
            )
        );
        assert_eq!(
            parse_formula(" and ( p , p ) ", &sig, &x).unwrap().to_string(),
            "and(p,p)"
        );
    }

    #[test]
    fn parse_errors() {
        let sig = cpl_sig();
        let x = vars(&["p"]);
        assert_eq!(
            parse_formula("and(p)", &sig, &x),
            Err(LogicError::ArityMismatch {
                symbol: "and".into(),
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_formula("or(p,p)", &sig, &x),
            Err(LogicError::UnknownSymbol("or".into()))
        );
        assert_eq!(parse_formula("q", &sig, &x), Err(LogicError::UnknownSymbol("q".into())));
        assert!(matches!(
            parse_formula("and(p,", &sig, &x),
            Err(LogicError::SyntaxError { position: 6, .. })
        ));
        assert!(matches!(
            parse_formula("p)", &sig, &x),
            Err(LogicError::SyntaxError { position: 1, .. })
        ));
        assert!(matches!(
            parse_formula("", &sig, &x),
            Err(LogicError::SyntaxError { .. })
        ));
    }

    #[test]
    fn nullary_connectives() {
        let sig = PropSignature::new([("top", 0), ("not", 1)]);
        let x = vars(&["p"]);
        let top = parse_formula("top", &sig, &x).unwrap();
        assert_eq!(top.to_string(), "top()");
        assert_eq!(top.depth(), 1);
        assert_eq!(parse_formula("top()", &sig, &x).unwrap(), top);
    }

    #[test]
    fn cpl1_enumeration() {
        let got: Vec<String> = enumerate_formulas(&cpl_sig(), &vars(&["p"]), 1)
            .unwrap()
            .iter()
            .map(render_formula)
            .collect();
        assert_eq!(got, ["p", "and(p,p)", "not(p)"]);
        let atoms = enumerate_formulas(&cpl_sig(), &vars(&["q", "p"]), 0).unwrap();
        assert_eq!(atoms, [Formula::var("p"), Formula::var("q")]);
    }

    #[test]
    fn depth_two_count_matches_formula() {
        // depth exactly 2 over {p}: not(.) of the two depth-1 formulas, plus
        // and(.,.) pairs over three formulas minus the single all-atom pair.
        let all = enumerate_formulas(&cpl_sig(), &vars(&["p"]), 2).unwrap();
        assert_eq!(all.len(), 3 + 2 + (9 - 1));
        assert_eq!(count_formulas(&cpl_sig(), 1, 2), all.len() as u128);
        assert_eq!(all, enumerate_formulas(&cpl_sig(), &vars(&["p"]), 2).unwrap());
    }

    #[test]
    fn explosion_guard() {
        let r = enumerate_formulas(&cpl_sig(), &vars(&["p", "q"]), 3);
        assert!(matches!(r, Err(LogicError::ExplosionGuard { .. })));
    }

    #[test]
    fn rendering_is_injective_on_a_sample() {
        let all = enumerate_formulas(&cpl_sig(), &vars(&["p", "q", "r"]), 2).unwrap();
        let sample: Vec<&Formula> = all.iter().take(100).collect();
        assert_eq!(sample.len(), 100);
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i + 1..] {
                assert_ne!(a.to_string(), b.to_string());
            }
        }
    }
}
