//! Finite universes of named elements and bitset subsets over them.
//!
//! Every subset is a [`Subset`] indexed by position in a [`Universe`]. The
//! canonical rendering of a subset lists its members in universe order, as a
//! JSON array string such as `["a","b"]`; closure tables and closed-theory
//! model ids use that rendering.

use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Subset = FixedBitSet;

/// Ordered set of distinct element names.
#[derive(Debug, Clone, Default)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut u = Universe::default();
        for n in names {
            let n = n.into();
            if u.index.contains_key(&n) {
                return Err(Error::DuplicateId(n));
            }
            u.index.insert(n.clone(), u.names.len());
            u.names.push(n);
        }
        Ok(u)
    }

    /// Panics on duplicate names. Intended for literal fixtures.
    pub fn of<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(names).expect("duplicate element name")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn empty(&self) -> Subset {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full(&self) -> Subset {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    /// Builds a subset from names; the unknown name is returned on failure.
    pub fn subset<I, S>(&self, names: I) -> std::result::Result<Subset, String>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty();
        for n in names {
            let n = n.as_ref();
            match self.index_of(n) {
                Some(i) => s.insert(i),
                None => return Err(n.to_owned()),
            }
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &Subset) -> Vec<String> {
        s.ones().map(|i| self.names[i].clone()).collect()
    }

    /// Canonical text form, e.g. `["a","b"]`.
    pub fn key(&self, s: &Subset) -> String {
        render_key(s.ones().map(|i| self.names[i].as_str()))
    }
}

impl Serialize for Universe {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.names.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Universe {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(deserializer)?;
        Universe::new(names).map_err(serde::de::Error::custom)
    }
}

/// Renders names as a compact JSON string array.
pub fn render_key<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::from("[");
    for (i, n) in names.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('"');
        for c in n.chars() {
            match c {
                '"' => out.push_str("\\\""),
                '\\' => out.push_str("\\\\"),
                c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                c => out.push(c),
            }
        }
        out.push('"');
    }
    out.push(']');
    out
}

pub fn from_mask(len: usize, mask: u64) -> Subset {
    let mut s = FixedBitSet::with_capacity(len);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        s.insert(i);
        m &= m - 1;
    }
    s
}

pub fn to_mask(s: &Subset) -> u64 {
    s.ones().fold(0u64, |acc, i| acc | (1u64 << i))
}

/// All `2^len` subsets in mask order. Callers enforce the enumeration cap.
pub fn all_subsets(len: usize) -> impl Iterator<Item = Subset> {
    assert!(len < 64, "subset enumeration over {len} elements");
    (0..(1u64 << len)).map(move |m| from_mask(len, m))
}

pub fn ensure_within_cap(signature: &str, size: usize, cap: usize) -> Result<()> {
    if size > cap || size >= 64 {
        Err(Error::UniverseTooLarge {
            signature: signature.to_owned(),
            size,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Orders subsets by cardinality, then lexicographically by member indices.
pub fn canonical_cmp(a: &Subset, b: &Subset) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

/// Image of `s` under an index map into a universe of size `target_len`.
pub fn image(map: &[usize], s: &Subset, target_len: usize) -> Subset {
    let mut out = FixedBitSet::with_capacity(target_len);
    for i in s.ones() {
        out.insert(map[i]);
    }
    out
}

/// Preimage of `s` under an index map.
pub fn preimage(map: &[usize], s: &Subset) -> Subset {
    let mut out = FixedBitSet::with_capacity(map.len());
    for (i, &j) in map.iter().enumerate() {
        if s.contains(j) {
            out.insert(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_follows_universe_order() {
        let u = Universe::of(["b", "a", "c"]);
        let s = u.subset(["c", "b"]).unwrap();
        assert_eq!(u.key(&s), r#"["b","c"]"#);
        assert_eq!(u.key(&u.empty()), "[]");
    }

    #[test]
    fn key_escapes_quotes() {
        let u = Universe::of([r#"a"b"#]);
        let key = u.key(&u.full());
        let back: Vec<String> = serde_json::from_str(&key).unwrap();
        assert_eq!(back, vec![r#"a"b"#.to_string()]);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(Universe::new(["a", "a"]), Err(Error::DuplicateId("a".into())));
    }

    #[test]
    fn masks_round_trip() {
        for m in 0..32u64 {
            assert_eq!(to_mask(&from_mask(5, m)), m);
        }
        assert_eq!(all_subsets(3).count(), 8);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v: Vec<Subset> = all_subsets(2).collect();
        v.sort_by(canonical_cmp);
        let masks: Vec<u64> = v.iter().map(to_mask).collect();
        assert_eq!(masks, vec![0, 1, 2, 3]);
    }

    #[test]
    fn image_and_preimage() {
        let map = [1, 1, 0];
        let s = from_mask(3, 0b011);
        assert_eq!(to_mask(&image(&map, &s, 2)), 0b10);
        assert_eq!(to_mask(&preimage(&map, &from_mask(2, 0b10))), 0b011);
    }
}
