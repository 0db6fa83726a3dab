//! Brute-force certification of orbifold fusion over whole tables.

use super::orbifold::{
    classify_twisted, conjugate_twisted, conjugate_untwisted, iterate_fuse, orbifold_fuse, tuples, TwistedLabel, UntwistedLabel,
};
use super::ring::{FusionRing, Multiset};
use crate::exec::Execution;
use crate::perm::{all_permutations, Permutation};
use crate::report::CheckResult;

fn conjugate_all(xs: &Multiset<TwistedLabel>, nu: &Permutation) -> Multiset<TwistedLabel> {
    let mut out = Multiset::new();
    for (t, &m) in xs {
        *out.entry(conjugate_twisted(t, nu)).or_insert(0) += m;
    }
    out
}

/// For every sigma in S_k, every module tuple and every twisted label:
/// direct fusion equals the single-slot iteration, fusion commutes with
/// conjugation by every nu in S_k, and the unit laws hold.
pub fn verify_fusion_table(ring: &FusionRing, k: usize, exec: Execution) -> Vec<CheckResult> {
    let perms = all_permutations(k);
    let modules = tuples(ring.len(), k);
    let jobs = exec.map(&perms, |sigma| {
        let window = format!("{} k={k} sigma={sigma}", ring.name);
        let mut iterate = CheckResult::new("orbifold_fuse == iterated single-slot fusion", window.clone());
        let mut equivariance = CheckResult::new("conjugation equivariance", window.clone());
        let mut unit = CheckResult::new("unit laws", window);
        for t in classify_twisted(ring, sigma) {
            let vac = UntwistedLabel::plain(vec![ring.unit; k]);
            let direct = orbifold_fuse(ring, &vac, &t).expect("shapes match");
            unit.compare(|| format!("V x {}", t.display(ring)), &direct, &Multiset::from([(t.clone(), 1)]));
            for m in &modules {
                let m = UntwistedLabel::plain(m.clone());
                let direct = orbifold_fuse(ring, &m, &t).expect("shapes match");
                let oracle = iterate_fuse(ring, &m, &t).expect("shapes match");
                iterate.compare(|| format!("{} x {}", m.display(ring), t.display(ring)), &direct, &oracle);
                for nu in &perms {
                    let lhs = conjugate_all(&direct, nu);
                    let rhs = orbifold_fuse(ring, &conjugate_untwisted(&m, nu), &conjugate_twisted(&t, nu)).expect("shapes match");
                    equivariance.compare(|| format!("({} x {})^{nu}", m.display(ring), t.display(ring)), &lhs, &rhs);
                }
            }
        }
        // M x V = M at label level: the identity twist with unit labels
        if sigma.is_identity() {
            let t = TwistedLabel { sigma: sigma.clone(), labels: vec![ring.unit; k] };
            for m in &modules {
                let out = orbifold_fuse(ring, &UntwistedLabel::plain(m.clone()), &t).expect("shapes match");
                let want = Multiset::from([(TwistedLabel { sigma: sigma.clone(), labels: m.clone() }, 1)]);
                unit.compare(|| format!("{m:?} x V"), &out, &want);
            }
        }
        [iterate, equivariance, unit]
    });
    let mut merged = [
        CheckResult::new("orbifold_fuse == iterated single-slot fusion", format!("{} k={k}, all sigma", ring.name)),
        CheckResult::new("conjugation equivariance", format!("{} k={k}, all sigma and nu", ring.name)),
        CheckResult::new("unit laws", format!("{} k={k}, all sigma", ring.name)),
    ];
    for job in jobs {
        for (acc, c) in merged.iter_mut().zip(job) {
            acc.merge(c);
        }
    }
    merged.into_iter().map(CheckResult::finish).collect()
}
