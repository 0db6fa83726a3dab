//! Normal-ordered vertex operators and Fock intertwiners.
//!
//! For w = alpha(-n_1)...alpha(-n_r) e^lambda and a source module M(1, mu):
//!
//! Y(w, z) = : prod_i d^{(n_i - 1)} alpha(z) E^-(z) E^+(z) : e^lambda z^{lambda mu}
//!
//! with E^-(z) = exp(lambda sum_{n>0} alpha(-n) z^n / n),
//! E^+(z) = exp(-lambda sum_{n>0} alpha(n) z^{-n} / n), and alpha(0) acting on
//! the source. For lambda = 0 this is the vertex operator of M(1) on M(1, mu).

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::fock::{monomial_degree, partitions, GradedVector, Parts};
use crate::exact::{big, binom_i, rat, Rational, Scalar, Q};
use crate::field::{Field, Grading};

type Series = BTreeMap<i64, GradedVector>;

fn add_into(s: &mut Series, power: i64, v: &GradedVector, c: &Scalar) {
    if v.is_zero() || c.is_zero() {
        return;
    }
    let entry = s.entry(power).or_insert_with(|| GradedVector::zero(v.charge()));
    entry.add_scaled(v, c);
    if entry.is_zero() {
        s.remove(&power);
    }
}

type Key = (Parts, Q, Q, Parts, Q);

const SHARDS: usize = 32;

fn cache() -> &'static Vec<Mutex<HashMap<Key, GradedVector>>> {
    static CACHE: OnceLock<Vec<Mutex<HashMap<Key, GradedVector>>>> = OnceLock::new();
    CACHE.get_or_init(|| (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect())
}

fn shard(key: &Key) -> usize {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    key.hash(&mut h);
    (h.finish() as usize) % SHARDS
}

fn e_minus_cache() -> &'static Mutex<HashMap<(Q, u32), GradedVector>> {
    static CACHE: OnceLock<Mutex<HashMap<(Q, u32), GradedVector>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficient of z^d in E^-(z) as a polynomial in the creation modes.
fn e_minus(lambda: Q, d: u32) -> GradedVector {
    if let Some(v) = e_minus_cache().lock().unwrap().get(&(lambda, d)) {
        return v.clone();
    }
    let mut out = GradedVector::zero(Q::zero());
    for p in partitions(d) {
        // prod_n (lambda/n)^{m_n} / m_n!
        let mut c = Rational::one();
        let lam = big(lambda);
        let mut i = 0;
        while i < p.len() {
            let n = p[i];
            let mut m = 0;
            while i < p.len() && p[i] == n {
                m += 1;
                i += 1;
                c = c * &lam / rat(n as i64 * m, 1);
            }
        }
        out.add_term(p, &Scalar::from_rational(c));
    }
    e_minus_cache().lock().unwrap().insert((lambda, d), out.clone());
    out
}

/// `C(-m-1, n-1)`: coefficient of alpha(m) z^{-m-n} in d^{(n-1)} alpha(z).
fn mode_coeff(m: i64, n: u32) -> Scalar {
    Scalar::from_rational(binom_i(-m - 1, (n - 1) as u64))
}

/// Coefficient of z^s in Y(alpha(-w_parts) e^lambda, z) applied to the
/// monomial `u_parts` of M(1, mu).
pub fn eval_monomial(w_parts: &[u32], lambda: Q, s: Q, u_parts: &[u32], mu: Q) -> GradedVector {
    let target = lambda + mu;
    let p = s - lambda * mu;
    if !p.is_integer() {
        return GradedVector::zero(target);
    }
    let key: Key = (w_parts.to_vec(), lambda, s, u_parts.to_vec(), mu);
    let sh = shard(&key);
    if let Some(v) = cache()[sh].lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = eval_uncached(w_parts, lambda, p.to_integer(), u_parts, mu).with_charge(target);
    cache()[sh].lock().unwrap().insert(key, v.clone());
    v
}

fn eval_uncached(w_parts: &[u32], lambda: Q, p: i64, u_parts: &[u32], mu: Q) -> GradedVector {
    let zero = GradedVector::zero(Q::zero());
    // E^+(z) u: substitute x_n -> x_n - lambda z^{-n}.
    let mut base: Series = BTreeMap::new();
    base.insert(0, GradedVector::hw(Q::zero()));
    for &n in u_parts {
        let mut next: Series = BTreeMap::new();
        for (pow, v) in &base {
            add_into(&mut next, *pow, &v.alpha(-(n as i64)), &Scalar::one());
            if !lambda.is_zero() {
                add_into(&mut next, *pow - n as i64, v, &Scalar::from_q(-lambda));
            }
        }
        base = next;
    }
    let r = w_parts.len();
    let mut total = zero.clone();
    for mask in 0u32..(1 << r) {
        // Annihilation parts (indices not in mask) act on the source side.
        let mut ann = base.clone();
        for (i, &n) in w_parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let mut next: Series = BTreeMap::new();
            for (pow, v) in &ann {
                // alpha(0) -> mu
                add_into(&mut next, *pow - n as i64, v, &(mode_coeff(0, n) * Scalar::from_q(mu)));
                for m in 1..=v.max_part() as i64 {
                    let c = mode_coeff(m, n);
                    if c.is_zero() {
                        continue;
                    }
                    add_into(&mut next, *pow - m - n as i64, &v.alpha(m), &c);
                }
            }
            ann = next;
            if ann.is_empty() {
                break;
            }
        }
        if ann.is_empty() {
            continue;
        }
        let min_pow = *ann.keys().next().unwrap();
        let depth = p - min_pow;
        if depth < 0 {
            continue;
        }
        // Creation parts: power series in z with nonnegative exponents.
        let mut cre: Vec<GradedVector> = (0..=depth as u32)
            .map(|d| if lambda.is_zero() { if d == 0 { GradedVector::hw(Q::zero()) } else { zero.clone() } } else { e_minus(lambda, d) })
            .collect();
        for (i, &n) in w_parts.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let mut next = vec![zero.clone(); cre.len()];
            for (d, v) in cre.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                // alpha(-m) z^{m-n}, m >= n
                for m in n as i64.. {
                    let pw = d as i64 + m - n as i64;
                    if pw > depth {
                        break;
                    }
                    let c = mode_coeff(-m, n);
                    next[pw as usize].add_scaled(&v.alpha(-m), &c);
                }
            }
            cre = next;
        }
        for (pow, a) in &ann {
            let d = p - pow;
            if d < 0 || d > depth {
                continue;
            }
            let c = &cre[d as usize];
            if c.is_zero() {
                continue;
            }
            total.add_scaled(&c.poly_mul(a), &Scalar::one());
        }
    }
    total
}

/// `Y(w, z)` for `w` in M(1, lambda), acting on M(1, mu). Homogeneous `w`.
#[derive(Clone)]
pub struct FockField {
    w: GradedVector,
    source: Q,
    weight: Q,
}

impl FockField {
    pub fn new(w: GradedVector, source: Q) -> Self {
        let weight = match w.weight() {
            Some(wt) => wt,
            None => {
                assert!(w.is_zero(), "field of a non-homogeneous vector");
                monomial_degree(w.charge(), &[])
            }
        };
        FockField { w, source, weight }
    }

    pub fn arc(w: GradedVector, source: Q) -> Arc<dyn Field> {
        Arc::new(Self::new(w, source))
    }

    pub fn vector(&self) -> &GradedVector {
        &self.w
    }
}

impl Field for FockField {
    fn grading(&self) -> Grading {
        Grading { scale: 1, weight: self.weight, source: self.source, target: self.w.charge() + self.source }
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        let mut out = GradedVector::zero(self.w.charge() + self.source);
        for (wp, c) in self.w.terms() {
            out.add_scaled(&eval_monomial(wp, self.w.charge(), s, parts, self.source), c);
        }
        out
    }
}

/// Vertex operator of `v` in M(1) on M(1, lambda).
pub fn vertex_operator(v: &GradedVector, lambda: Q) -> FockField {
    assert!(v.charge().is_zero(), "vertex_operator needs a vector of M(1)");
    FockField::new(v.clone(), lambda)
}

/// The Fock intertwiner of type (M(1,lambda+mu); M(1,lambda) M(1,mu)) at `w`,
/// normalized so the highest-weight matrix coefficient is exactly z^{lambda mu}.
pub fn fock_intertwiner(lambda: Q, mu: Q, w: &GradedVector) -> FockField {
    assert_eq!(w.charge(), lambda, "w must lie in M(1, lambda)");
    FockField::new(w.clone(), mu)
}

/// `v_n u` for v in M(1), u in M(1, lambda): the coefficient of z^{-n-1}.
pub fn mode(v: &GradedVector, n: i64, u: &GradedVector) -> GradedVector {
    let mut out = GradedVector::zero(u.charge());
    for (_, comp) in v.homogeneous_components() {
        out.add_scaled(&vertex_operator(&comp, u.charge()).apply(Q::from_integer(-n - 1), u), &Scalar::one());
    }
    out
}

/// `1 + max{n >= 0 : v_n u != 0}`, or 0 if no nonnegative mode acts.
pub fn singular_order(v: &GradedVector, u: &GradedVector) -> i64 {
    let (Some(wv), Some(du)) = (v.max_degree(), u.max_degree()) else { return 0 };
    let ground = monomial_degree(u.charge(), &[]);
    // v_n u has weight wt v - n - 1 + wt u >= ground.
    let top = (wv + du - ground - Q::one()).floor().to_integer();
    (0..=top.max(-1)).rev().find(|&n| !mode(v, n, u).is_zero()).map_or(0, |n| n + 1)
}
