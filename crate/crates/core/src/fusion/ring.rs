//! Finite fusion rings loaded from JSON and validated on load.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("ring file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("ring has no labels")]
    Empty,
    #[error("label {0:?} is listed twice")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("triple ({0}, {1}, {2}) is given twice")]
    DuplicateTriple(String, String, String),
    #[error("dual is not an involution fixing the unit at {0:?}")]
    Dual(String),
    #[error("unit law fails: N[{unit}, {a}]^{b} = {got}, expected {want}")]
    Unit { unit: String, a: String, b: String, got: u32, want: u32 },
    #[error("commutativity fails: N[{a}, {b}]^{c} = {ab} but N[{b}, {a}]^{c} = {ba}")]
    Commutativity { a: String, b: String, c: String, ab: u32, ba: u32 },
    #[error("associativity fails at (a, b, c, d) = ({a}, {b}, {c}, {d}): sum_e N[a,b]^e N[e,c]^d = {lhs}, sum_f N[b,c]^f N[a,f]^d = {rhs}")]
    Associativity { a: String, b: String, c: String, d: String, lhs: u64, rhs: u64 },
    #[error("rigidity fails: N[{a}, {dual}]^1 = {got}, expected 1")]
    Rigidity { a: String, dual: String, got: u32 },
}

#[derive(Deserialize, Serialize)]
struct RingFile {
    name: String,
    labels: Vec<String>,
    unit: String,
    dual: BTreeMap<String, String>,
    #[serde(rename = "N")]
    n: Vec<(String, String, String, u32)>,
}

/// Multiset of labels with multiplicities.
pub type Multiset<T> = BTreeMap<T, u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    pub name: String,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    /// n[(a * len + b) * len + c] = N_{ab}^c
    n: Vec<u32>,
}

const SHIPPED: [(&str, &str); 7] = [
    ("z2", include_str!("../../rings/z2.json")),
    ("z3", include_str!("../../rings/z3.json")),
    ("z4", include_str!("../../rings/z4.json")),
    ("z5", include_str!("../../rings/z5.json")),
    ("z6", include_str!("../../rings/z6.json")),
    ("ising", include_str!("../../rings/ising.json")),
    ("fibonacci", include_str!("../../rings/fibonacci.json")),
];

impl FusionRing {
    /// Parses and validates a ring file.
    pub fn from_json(text: &str) -> Result<Self, RingError> {
        let file: RingFile = serde_json::from_str(text)?;
        if file.labels.is_empty() {
            return Err(RingError::Empty);
        }
        let mut index = HashMap::new();
        for (i, l) in file.labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(RingError::DuplicateLabel(l.clone()));
            }
        }
        let find = |l: &str| index.get(l).copied().ok_or_else(|| RingError::UnknownLabel(l.to_string()));
        let len = file.labels.len();
        let unit = find(&file.unit)?;
        let mut dual = vec![usize::MAX; len];
        for (a, b) in &file.dual {
            dual[find(a)?] = find(b)?;
        }
        let mut n = vec![0; len * len * len];
        let mut seen = vec![false; len * len * len];
        for (a, b, c, m) in &file.n {
            let at = (find(a)? * len + find(b)?) * len + find(c)?;
            if seen[at] {
                return Err(RingError::DuplicateTriple(a.clone(), b.clone(), c.clone()));
            }
            seen[at] = true;
            n[at] = *m;
        }
        let ring = FusionRing { name: file.name, labels: file.labels, unit, dual, n };
        ring.validate()?;
        Ok(ring)
    }

    /// One of the rings shipped with the crate: z2..z6, ising, fibonacci.
    pub fn shipped(name: &str) -> Option<Self> {
        let key = name.to_ascii_lowercase();
        SHIPPED.iter().find(|(n, _)| *n == key).map(|(_, text)| Self::from_json(text).expect("shipped ring is valid"))
    }

    pub fn shipped_names() -> Vec<&'static str> {
        SHIPPED.iter().map(|(n, _)| *n).collect()
    }

    /// Serialized form accepted by [`FusionRing::from_json`].
    pub fn to_json(&self) -> String {
        let labels = &self.labels;
        let mut entries = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                for c in 0..self.len() {
                    let m = self.n(a, b, c);
                    if m > 0 {
                        entries.push((labels[a].clone(), labels[b].clone(), labels[c].clone(), m));
                    }
                }
            }
        }
        let file = RingFile {
            name: self.name.clone(),
            labels: labels.clone(),
            unit: labels[self.unit].clone(),
            dual: (0..self.len()).map(|a| (labels[a].clone(), labels[self.dual[a]].clone())).collect(),
            n: entries,
        };
        serde_json::to_string_pretty(&file).expect("ring serializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize, RingError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        let len = self.len();
        self.n[(a * len + b) * len + c]
    }

    /// a x b as a multiset of labels.
    pub fn fuse(&self, a: usize, b: usize) -> Multiset<usize> {
        (0..self.len()).filter_map(|c| Some((c, self.n(a, b, c) as u64)).filter(|(_, m)| *m > 0)).collect()
    }

    /// Product of a multiset with a label.
    pub fn fuse_multiset(&self, xs: &Multiset<usize>, b: usize) -> Multiset<usize> {
        let mut out = Multiset::new();
        for (&a, &m) in xs {
            for (c, n) in self.fuse(a, b) {
                *out.entry(c).or_insert(0) += m * n;
            }
        }
        out
    }

    /// Left-to-right product of a list of labels.
    pub fn fuse_all(&self, xs: &[usize]) -> Multiset<usize> {
        let mut acc = Multiset::from([(self.unit, 1)]);
        for &x in xs {
            acc = self.fuse_multiset(&acc, x);
        }
        acc
    }

    pub fn validate(&self) -> Result<(), RingError> {
        let len = self.len();
        let l = |i: usize| self.labels[i].clone();
        for a in 0..len {
            let d = self.dual[a];
            if d == usize::MAX || self.dual[d] != a || (a == self.unit && d != a) {
                return Err(RingError::Dual(l(a)));
            }
        }
        for a in 0..len {
            for b in 0..len {
                let want = u32::from(a == b);
                for (x, y) in [(self.unit, a), (a, self.unit)] {
                    let got = self.n(x, y, b);
                    if got != want {
                        return Err(RingError::Unit { unit: l(self.unit), a: l(a), b: l(b), got, want });
                    }
                }
            }
        }
        for a in 0..len {
            for b in 0..len {
                for c in 0..len {
                    let (ab, ba) = (self.n(a, b, c), self.n(b, a, c));
                    if ab != ba {
                        return Err(RingError::Commutativity { a: l(a), b: l(b), c: l(c), ab, ba });
                    }
                }
            }
        }
        for a in 0..len {
            let got = self.n(a, self.dual[a], self.unit);
            if got != 1 {
                return Err(RingError::Rigidity { a: l(a), dual: l(self.dual[a]), got });
            }
        }
        for a in 0..len {
            for b in 0..len {
                for c in 0..len {
                    for d in 0..len {
                        let lhs: u64 = (0..len).map(|e| self.n(a, b, e) as u64 * self.n(e, c, d) as u64).sum();
                        let rhs: u64 = (0..len).map(|f| self.n(b, c, f) as u64 * self.n(a, f, d) as u64).sum();
                        if lhs != rhs {
                            return Err(RingError::Associativity { a: l(a), b: l(b), c: l(c), d: l(d), lhs, rhs });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rings_validate() {
        for name in FusionRing::shipped_names() {
            let r = FusionRing::shipped(name).unwrap();
            assert!(r.validate().is_ok(), "{name}");
        }
    }

    #[test]
    fn ising_sigma_squared() {
        let r = FusionRing::shipped("ising").unwrap();
        let s = r.index("sigma").unwrap();
        let want = Multiset::from([(r.index("1").unwrap(), 1), (r.index("epsilon").unwrap(), 1)]);
        assert_eq!(r.fuse(s, s), want);
    }

    #[test]
    fn z2_generator_squares_to_unit() {
        let r = FusionRing::shipped("z2").unwrap();
        let j = r.index("j").unwrap();
        assert_eq!(r.fuse(j, j), Multiset::from([(r.unit, 1)]));
    }

    #[test]
    fn unit_is_neutral() {
        let r = FusionRing::shipped("fibonacci").unwrap();
        for a in 0..r.len() {
            assert_eq!(r.fuse(r.unit, a), Multiset::from([(a, 1)]));
        }
    }

    #[test]
    fn json_round_trip() {
        for name in FusionRing::shipped_names() {
            let r = FusionRing::shipped(name).unwrap();
            assert_eq!(FusionRing::from_json(&r.to_json()).unwrap(), r);
        }
    }

    #[test]
    fn unknown_label_rejected() {
        let text = r#"{"name":"x","labels":["1"],"unit":"1","dual":{"1":"1"},"N":[["1","1","q",1]]}"#;
        assert!(matches!(FusionRing::from_json(text), Err(RingError::UnknownLabel(l)) if l == "q"));
    }
}
