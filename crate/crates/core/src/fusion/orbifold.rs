//! Fusion of untwisted V^{(x)k}-modules M_1 (x) ... (x) M_k with irreducible
//! sigma-twisted modules T_sigma(N_1, ..., N_s), at the level of labels.
//!
//! Conventions. The cycles of sigma are taken in canonical order (descending
//! length, then smallest element) and N_i sits on the i-th cycle. The
//! conjugator mu maps the i-th cycle onto the i-th block of sigma_kappa,
//! smallest element first, so mu sigma mu^{-1} = sigma_kappa and
//! T_sigma(N) = T_{sigma_kappa}(N)^mu. For a module W, W^mu acts with u^j
//! through slot mu(j), so (M_1 (x) ... (x) M_k)^mu carries M_{mu(j)} in slot j.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::ring::{FusionRing, Multiset};
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("expected {want} module labels, got {got}")]
    ModuleCount { want: usize, got: usize },
    #[error("twisted label has {got} entries but the permutation has {want} cycles")]
    CycleCount { want: usize, got: usize },
    #[error("permutation acts on {got} points, expected {want}")]
    Degree { want: usize, got: usize },
    #[error("label index {0} out of range")]
    Label(usize),
}

/// A partition k_1 >= ... >= k_s >= 1.
pub type Partition = Vec<usize>;

/// sigma_kappa = (1 .. k_1)(k_1+1 .. k_1+k_2)... as a permutation.
pub fn sigma_kappa(kappa: &[usize]) -> Permutation {
    let k: usize = kappa.iter().sum();
    let mut image = vec![0; k];
    let mut start = 0;
    for &len in kappa {
        for j in 0..len {
            image[start + j] = start + (j + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(image)
}

/// (kappa, mu) with mu sigma mu^{-1} = sigma_kappa; mu sends the i-th
/// canonical cycle (c, sigma c, sigma^2 c, ...) with c its smallest element
/// to (b_i, b_i + 1, ...) where b_i starts the i-th block.
pub fn cycle_normal_form(sigma: &Permutation) -> (Partition, Permutation) {
    let cycles = sigma.cycles();
    let mut image = vec![0; sigma.k()];
    let mut start = 0;
    for c in &cycles {
        for (j, &p) in c.iter().enumerate() {
            image[p] = start + j;
        }
        start += c.len();
    }
    (cycles.iter().map(Vec::len).collect(), Permutation::from_images(image))
}

/// Irreducible sigma-twisted module T_sigma(N_1, ..., N_s).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistedLabel {
    pub sigma: Permutation,
    pub labels: Vec<usize>,
}

/// Irreducible untwisted module (M_1 (x) ... (x) M_k)^mu; `mu = None` is the
/// identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UntwistedLabel {
    pub labels: Vec<usize>,
    pub mu: Option<Permutation>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbifoldLabel {
    Untwisted(UntwistedLabel),
    Twisted(TwistedLabel),
}

impl TwistedLabel {
    pub fn new(sigma: Permutation, labels: Vec<usize>) -> Result<Self, FusionError> {
        let want = sigma.cycles().len();
        if labels.len() != want {
            return Err(FusionError::CycleCount { want, got: labels.len() });
        }
        Ok(TwistedLabel { sigma, labels })
    }

    pub fn display(&self, ring: &FusionRing) -> String {
        let names: Vec<&str> = self.labels.iter().map(|&i| ring.labels[i].as_str()).collect();
        format!("T{}({})", self.sigma, names.join(","))
    }
}

impl UntwistedLabel {
    pub fn plain(labels: Vec<usize>) -> Self {
        UntwistedLabel { labels, mu: None }
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    /// The label carried by each slot.
    pub fn slots(&self) -> Vec<usize> {
        match &self.mu {
            None => self.labels.clone(),
            Some(mu) => (0..self.k()).map(|j| self.labels[mu.apply(j)]).collect(),
        }
    }

    pub fn display(&self, ring: &FusionRing) -> String {
        let names: Vec<&str> = self.labels.iter().map(|&i| ring.labels[i].as_str()).collect();
        match &self.mu {
            None => format!("({})", names.join(",")),
            Some(mu) => format!("({})^{mu}", names.join(",")),
        }
    }
}

impl fmt::Debug for TwistedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{:?}", self.sigma, self.labels)
    }
}

impl fmt::Debug for UntwistedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mu {
            None => write!(f, "{:?}", self.labels),
            Some(mu) => write!(f, "{:?}^{mu}", self.labels),
        }
    }
}

impl fmt::Debug for OrbifoldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbifoldLabel::Untwisted(u) => write!(f, "{u:?}"),
            OrbifoldLabel::Twisted(t) => write!(f, "{t:?}"),
        }
    }
}

/// One entry of a fusion result, in label names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedTerm {
    pub label: String,
    pub multiplicity: u64,
}

pub fn named(ring: &FusionRing, xs: &Multiset<TwistedLabel>) -> Vec<NamedTerm> {
    xs.iter().map(|(t, &m)| NamedTerm { label: t.display(ring), multiplicity: m }).collect()
}

fn check_inputs(ring: &FusionRing, m: &UntwistedLabel, t: &TwistedLabel) -> Result<(), FusionError> {
    let k = t.sigma.k();
    if m.k() != k {
        return Err(FusionError::ModuleCount { want: k, got: m.k() });
    }
    if let Some(mu) = &m.mu {
        if mu.k() != k {
            return Err(FusionError::Degree { want: k, got: mu.k() });
        }
    }
    let cycles = t.sigma.cycles().len();
    if t.labels.len() != cycles {
        return Err(FusionError::CycleCount { want: cycles, got: t.labels.len() });
    }
    if let Some(&bad) = m.labels.iter().chain(t.labels.iter()).find(|&&i| i >= ring.len()) {
        return Err(FusionError::Label(bad));
    }
    Ok(())
}

/// Cartesian product of per-entry multisets, multiplicities multiplied.
fn product(factors: &[Multiset<usize>]) -> Multiset<Vec<usize>> {
    let mut acc = Multiset::from([(Vec::new(), 1)]);
    for f in factors {
        let mut next = Multiset::new();
        for (prefix, m) in &acc {
            for (&c, &n) in f {
                let mut v = prefix.clone();
                v.push(c);
                *next.entry(v).or_insert(0) += m * n;
            }
        }
        acc = next;
    }
    acc
}

/// Direct evaluation: for each cycle, the product of the labels in its slots
/// (the block product M^{[k_i]} after relabeling to sigma_kappa) fused with
/// that cycle's N_i.
pub fn orbifold_fuse(ring: &FusionRing, m: &UntwistedLabel, t: &TwistedLabel) -> Result<Multiset<TwistedLabel>, FusionError> {
    check_inputs(ring, m, t)?;
    let slots = m.slots();
    let factors: Vec<Multiset<usize>> = t
        .sigma
        .cycles()
        .iter()
        .zip(&t.labels)
        .map(|(c, &n)| {
            let block: Vec<usize> = c.iter().map(|&p| slots[p]).collect();
            let mut acc = ring.fuse_all(&block);
            acc = ring.fuse_multiset(&acc, n);
            acc
        })
        .collect();
    Ok(product(&factors).into_iter().map(|(labels, mult)| (TwistedLabel { sigma: t.sigma.clone(), labels }, mult)).collect())
}

/// (V (x) .. (x) M (x) .. (x) V) x T_sigma(N) with M in slot `slot`: pass to
/// sigma_kappa through mu, factor T_{sigma_kappa} into its cycles, rotate the
/// slot to the head of its block, and apply the single-cycle rule
/// (M (x) V^{(x)(k_i - 1)}) x T_{sigma_i}(N_i) = T_{sigma_i}(M x N_i).
fn single_slot(ring: &FusionRing, label: usize, slot: usize, t: &TwistedLabel) -> Multiset<TwistedLabel> {
    let (kappa, mu) = cycle_normal_form(&t.sigma);
    let target = mu.apply(slot);
    let mut start = 0;
    let mut block = 0;
    while target >= start + kappa[block] {
        start += kappa[block];
        block += 1;
    }
    // Rotating within the block is conjugation by a power of sigma_i, which
    // fixes T_{sigma_i}(N_i) up to isomorphism.
    let rotated = target - start;
    debug_assert!(rotated < kappa[block]);
    ring.fuse(label, t.labels[block])
        .into_iter()
        .map(|(c, mult)| {
            let mut labels = t.labels.clone();
            labels[block] = c;
            (TwistedLabel { sigma: t.sigma.clone(), labels }, mult)
        })
        .collect()
}

/// Oracle: M_1 (x) ... (x) M_k is the fusion product of its single-slot
/// factors, which are applied to T one at a time.
pub fn iterate_fuse(ring: &FusionRing, m: &UntwistedLabel, t: &TwistedLabel) -> Result<Multiset<TwistedLabel>, FusionError> {
    check_inputs(ring, m, t)?;
    let mut acc = Multiset::from([(t.clone(), 1)]);
    for (slot, &label) in m.slots().iter().enumerate() {
        let mut next = Multiset::new();
        for (x, mult) in &acc {
            for (y, n) in single_slot(ring, label, slot, x) {
                *next.entry(y).or_insert(0) += mult * n;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// All irreducible sigma-twisted labels: every s-tuple of ring labels.
pub fn classify_twisted(ring: &FusionRing, sigma: &Permutation) -> Vec<TwistedLabel> {
    let s = sigma.cycles().len();
    tuples(ring.len(), s).into_iter().map(|labels| TwistedLabel { sigma: sigma.clone(), labels }).collect()
}

/// Every tuple in {0..n}^len in lexicographic order.
pub fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (0..n).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

/// T_sigma(N)^nu is a nu^{-1} sigma nu-twisted module whose cycle nu^{-1}(c)
/// carries the label of c.
pub fn conjugate_twisted(t: &TwistedLabel, nu: &Permutation) -> TwistedLabel {
    let inv = nu.inverse();
    let sigma = inv.conjugate(&t.sigma);
    let old = t.sigma.cycles();
    let labels = sigma
        .cycles()
        .iter()
        .map(|c| {
            let head = nu.apply(c[0]);
            let i = old.iter().position(|o| o.contains(&head)).expect("conjugate cycles correspond");
            t.labels[i]
        })
        .collect();
    TwistedLabel { sigma, labels }
}

/// W^nu for W = (M)^mu is (M)^{mu nu}.
pub fn conjugate_untwisted(m: &UntwistedLabel, nu: &Permutation) -> UntwistedLabel {
    let mu = match &m.mu {
        None => nu.clone(),
        Some(mu) => mu.compose(nu),
    };
    UntwistedLabel { labels: m.labels.clone(), mu: if mu.is_identity() { None } else { Some(mu) } }
}

pub fn conjugate_label(l: &OrbifoldLabel, nu: &Permutation) -> OrbifoldLabel {
    match l {
        OrbifoldLabel::Untwisted(u) => OrbifoldLabel::Untwisted(conjugate_untwisted(u, nu)),
        OrbifoldLabel::Twisted(t) => OrbifoldLabel::Twisted(conjugate_twisted(t, nu)),
    }
}
