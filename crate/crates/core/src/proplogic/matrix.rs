use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::formula::{enumerate_formulas, parse_formula, Formula, PropSignature};
use super::{LogicError, LogicResult};
use crate::institution::SatMatrix;
use crate::subset::Subset;

/// Assignment of value indices to variable names.
pub type Valuation = BTreeMap<String, usize>;

/// A truth table, indexed by the argument tuple read as a base-`|values|`
/// number with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Op {
    arity: usize,
    table: Vec<usize>,
}

/// A finite algebra of truth values with a designated subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct LogicMatrix {
    values: Vec<String>,
    designated: Vec<bool>,
    ops: BTreeMap<String, Op>,
}

/// JSON shape: each connective is a list of rows `[arg1, ..., argn, result]`.
#[derive(Serialize, Deserialize)]
struct RawMatrix {
    values: Vec<String>,
    designated: Vec<String>,
    interp: BTreeMap<String, Vec<Vec<String>>>,
}

impl TryFrom<RawMatrix> for LogicMatrix {
    type Error = String;

    fn try_from(raw: RawMatrix) -> Result<Self, String> {
        let mut m = LogicMatrix::new(&raw.values, &raw.designated)?;
        let index = |v: &str| m.value_index(v).ok_or_else(|| format!("unknown value {v}"));
        let mut ops = BTreeMap::new();
        for (c, rows) in &raw.interp {
            let Some(first) = rows.first() else {
                return Err(format!("{c} has no rows"));
            };
            let arity = first
                .len()
                .checked_sub(1)
                .ok_or_else(|| format!("{c} has an empty row"))?;
            let size = m.values.len().pow(arity as u32);
            let mut table = vec![None; size];
            for row in rows {
                if row.len() != arity + 1 {
                    return Err(format!("{c} mixes row lengths"));
                }
                let mut k = 0;
                for v in &row[..arity] {
                    k = k * m.values.len() + index(v)?;
                }
                if table[k].replace(index(&row[arity])?).is_some() {
                    return Err(format!("{c} lists the same arguments twice"));
                }
            }
            let table = table
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| format!("{c} is not total"))?;
            ops.insert(c.clone(), Op { arity, table });
        }
        m.ops = ops;
        Ok(m)
    }
}

impl From<LogicMatrix> for RawMatrix {
    fn from(m: LogicMatrix) -> Self {
        let n = m.values.len();
        let interp = m
            .ops
            .iter()
            .map(|(c, op)| {
                let rows = op
                    .table
                    .iter()
                    .enumerate()
                    .map(|(k, &out)| {
                        let mut args = vec![String::new(); op.arity];
                        let mut rest = k;
                        for slot in args.iter_mut().rev() {
                            *slot = m.values[rest % n].clone();
                            rest /= n;
                        }
                        args.push(m.values[out].clone());
                        args
                    })
                    .collect();
                (c.clone(), rows)
            })
            .collect();
        RawMatrix {
            designated: m
                .values
                .iter()
                .zip(&m.designated)
                .filter(|(_, &d)| d)
                .map(|(v, _)| v.clone())
                .collect(),
            values: m.values,
            interp,
        }
    }
}

impl LogicMatrix {
    /// A matrix with no connectives yet.
    pub fn new<S: AsRef<str>>(values: &[S], designated: &[S]) -> Result<Self, String> {
        let values: Vec<String> = values.iter().map(|v| v.as_ref().to_owned()).collect();
        if values.is_empty() {
            return Err("a matrix needs at least one value".into());
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(format!("duplicate value {v}"));
            }
        }
        let mut flags = vec![false; values.len()];
        for d in designated {
            let i = values
                .iter()
                .position(|v| v == d.as_ref())
                .ok_or_else(|| format!("designated value {} is not a value", d.as_ref()))?;
            flags[i] = true;
        }
        Ok(LogicMatrix {
            values,
            designated: flags,
            ops: BTreeMap::new(),
        })
    }

    /// Adds connective `name` by tabulating `f` over all argument tuples.
    pub fn with_op(mut self, name: &str, arity: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let n = self.values.len();
        let mut table = Vec::with_capacity(n.pow(arity as u32));
        let mut args = vec![0usize; arity];
        for k in 0..n.pow(arity as u32) {
            let mut rest = k;
            for slot in args.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            table.push(f(&args));
        }
        self.ops.insert(name.to_owned(), Op { arity, table });
        self
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn value_index(&self, v: &str) -> Option<usize> {
        self.values.iter().position(|x| x == v)
    }

    pub fn is_designated(&self, v: usize) -> bool {
        self.designated[v]
    }

    /// Connectives interpreted by the matrix, with arities.
    pub fn signature(&self) -> PropSignature {
        PropSignature {
            connectives: self.ops.iter().map(|(c, op)| (c.clone(), op.arity)).collect(),
        }
    }

    /// `interp(c)(args)`, or `None` for an unknown connective or bad arguments.
    pub fn apply(&self, c: &str, args: &[usize]) -> Option<usize> {
        let op = self.ops.get(c)?;
        if op.arity != args.len() || args.iter().any(|&a| a >= self.values.len()) {
            return None;
        }
        let k = args.iter().fold(0, |k, &a| k * self.values.len() + a);
        Some(op.table[k])
    }

    fn standard(family: Family, op: &str) -> Option<(usize, OpFn)> {
        let f: (usize, OpFn) = match (family, op) {
            (Family::Boolean, "not") => (1, |a| 1 - a[0]),
            (Family::Boolean, "imp") => (2, |a| (1 - a[0]).max(a[1])),
            (Family::Boolean, "iff") => (2, |a| usize::from(a[0] == a[1])),
            (Family::Boolean, "top") => (0, |_| 1),
            (Family::Lukasiewicz3, "not") => (1, |a| 2 - a[0]),
            (Family::Lukasiewicz3, "imp") => (2, |a| (2 - a[0] + a[1]).min(2)),
            (Family::Lukasiewicz3, "top") => (0, |_| 2),
            (_, "and") => (2, |a| a[0].min(a[1])),
            (_, "or") => (2, |a| a[0].max(a[1])),
            (_, "bot") => (0, |_| 0),
            _ => return None,
        };
        Some(f)
    }
}

type OpFn = fn(&[usize]) -> usize;

#[derive(Clone, Copy)]
enum Family {
    Boolean,
    Lukasiewicz3,
}

/// A logic: signature, matrix semantics, variables and a depth truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LogicPresentation {
    pub signature: PropSignature,
    pub matrix: LogicMatrix,
    pub variables: Vec<String>,
    pub depth_cap: usize,
}

impl LogicPresentation {
    pub fn new(
        signature: PropSignature,
        matrix: LogicMatrix,
        variables: Vec<String>,
        depth_cap: usize,
    ) -> LogicResult<Self> {
        let l = LogicPresentation {
            signature,
            matrix,
            variables,
            depth_cap,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> LogicResult<()> {
        let bad = |m: String| Err(LogicError::InvalidPresentation(m));
        if self.matrix.signature() != self.signature {
            return bad("the matrix must interpret exactly the signature's connectives".into());
        }
        for (i, v) in self.variables.iter().enumerate() {
            if self.variables[..i].contains(v) {
                return bad(format!("duplicate variable {v}"));
            }
            if self.signature.connectives.contains_key(v) {
                return bad(format!("{v} is both a variable and a connective"));
            }
            if !v.bytes().all(|b| b.is_ascii_alphanumeric() || b"_'".contains(&b)) || v.is_empty() {
                return bad(format!("variable name {v:?} is not a bare symbol"));
            }
        }
        Ok(())
    }

    fn from_family(
        family: Family,
        values: &[&str],
        designated: &[&str],
        connectives: &[(&str, &str)],
        variables: &[&str],
        depth_cap: usize,
    ) -> LogicResult<Self> {
        let mut m = LogicMatrix::new(values, designated).map_err(LogicError::InvalidPresentation)?;
        let mut sig = PropSignature::default();
        for &(name, op) in connectives {
            let (arity, f) = LogicMatrix::standard(family, op)
                .ok_or_else(|| LogicError::InvalidPresentation(format!("no standard connective {op}")))?;
            m = m.with_op(name, arity, f);
            sig.connectives.insert(name.to_owned(), arity);
        }
        LogicPresentation::new(sig, m, variables.iter().map(|v| v.to_string()).collect(), depth_cap)
    }

    /// Two-valued logic; `connectives` pairs a name with one of
    /// `not, and, or, imp, iff, top, bot`.
    pub fn boolean(connectives: &[(&str, &str)], variables: &[&str], depth_cap: usize) -> LogicResult<Self> {
        Self::from_family(Family::Boolean, &["F", "T"], &["T"], connectives, variables, depth_cap)
    }

    /// Three-valued Lukasiewicz logic on `0, 1/2, 1` with `1` designated;
    /// `connectives` pairs a name with one of `not, imp, and, or, top, bot`.
    pub fn lukasiewicz3(connectives: &[(&str, &str)], variables: &[&str], depth_cap: usize) -> LogicResult<Self> {
        Self::from_family(
            Family::Lukasiewicz3,
            &["0", "1/2", "1"],
            &["1"],
            connectives,
            variables,
            depth_cap,
        )
    }

    pub fn parse(&self, text: &str) -> LogicResult<Formula> {
        parse_formula(text, &self.signature, &self.variables)
    }

    /// The truncated sentence universe.
    pub fn universe(&self) -> LogicResult<Vec<Formula>> {
        enumerate_formulas(&self.signature, &self.variables, self.depth_cap)
    }

    /// Every valuation, in lexicographic order of value indices.
    pub fn valuations(&self) -> Vec<Valuation> {
        let n = self.matrix.values.len();
        let k = self.variables.len();
        (0..n.pow(k as u32))
            .map(|mut code| {
                let mut v = Valuation::new();
                for var in self.variables.iter().rev() {
                    v.insert(var.clone(), code % n);
                    code /= n;
                }
                v
            })
            .collect()
    }

    /// Model id such as `v{p=T,q=F}`.
    pub fn valuation_id(&self, v: &Valuation) -> String {
        let parts: Vec<String> = self
            .variables
            .iter()
            .map(|x| format!("{x}={}", v.get(x).map_or("?", |&i| self.matrix.values[i].as_str())))
            .collect();
        format!("v{{{}}}", parts.join(","))
    }

    /// One row per valuation: the formulas it designates.
    pub fn designation_matrix(&self, formulas: &[Formula]) -> LogicResult<SatMatrix> {
        let mut rows = Vec::new();
        for v in self.valuations() {
            let mut row = Subset::with_capacity(formulas.len());
            for (i, f) in formulas.iter().enumerate() {
                if self.matrix.is_designated(eval_formula(&self.matrix, &v, f)?) {
                    row.insert(i);
                }
            }
            rows.push(row);
        }
        Ok(SatMatrix::from_rows(formulas.len(), rows))
    }
}

/// Homomorphic extension of `v` to `f`.
pub fn eval_formula(m: &LogicMatrix, v: &Valuation, f: &Formula) -> LogicResult<usize> {
    match f {
        Formula::Var(x) => v
            .get(x)
            .copied()
            .ok_or_else(|| LogicError::UnassignedVariable(x.clone())),
        Formula::Conn(c, args) => {
            let vals = args
                .iter()
                .map(|a| eval_formula(m, v, a))
                .collect::<LogicResult<Vec<_>>>()?;
            m.apply(c, &vals).ok_or_else(|| match m.ops.get(c) {
                None => LogicError::UnknownSymbol(c.clone()),
                Some(op) => LogicError::ArityMismatch {
                    symbol: c.clone(),
                    expected: op.arity,
                    found: vals.len(),
                },
            })
        }
    }
}

/// `gamma |- psi`: every valuation designating all of `gamma` designates `psi`.
pub fn matrix_consequence(l: &LogicPresentation, gamma: &[Formula], psi: &Formula) -> LogicResult<bool> {
    for v in l.valuations() {
        let mut premises = true;
        for g in gamma {
            if !l.matrix.is_designated(eval_formula(&l.matrix, &v, g)?) {
                premises = false;
                break;
            }
        }
        if premises && !l.matrix.is_designated(eval_formula(&l.matrix, &v, psi)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
