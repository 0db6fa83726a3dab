//! Truncated multivariate Puiseux series with generic coefficients.
//!
//! Entries are keyed by one exponent per variable. Each variable carries an
//! optional cutoff: coefficients at exponents above it are not trusted and are
//! never stored. `None` means the series is exact in that variable.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::binomial::{binom, binom_q, sign, PowerSeries};
use super::exponent::Exponent;
use super::scalar::{big, Scalar, Q};

/// Coefficient spaces usable inside a [`PuiseuxSeries`].
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, s: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self * s
    }
}

#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries<C: Coeff> {
    vars: Vec<String>,
    denom: i64,
    cutoff: Vec<Option<Exponent>>,
    entries: BTreeMap<Vec<Exponent>, C>,
}

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn new(vars: &[&str], denom: i64) -> Self {
        PuiseuxSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            denom,
            cutoff: vec![None; vars.len()],
            entries: BTreeMap::new(),
        }
    }

    pub fn with_cutoff(mut self, var: &str, c: Exponent) -> Self {
        let i = self.index(var);
        self.cutoff[i] = Some(c);
        self.entries.retain(|e, _| e[i] <= c);
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn cutoff(&self, var: &str) -> Option<Exponent> {
        self.cutoff[self.index(var)]
    }

    pub fn index(&self, var: &str) -> usize {
        self.vars.iter().position(|v| v == var).unwrap_or_else(|| panic!("series has no variable {var}"))
    }

    pub fn entries(&self) -> &BTreeMap<Vec<Exponent>, C> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn trusted(&self, exps: &[Exponent]) -> bool {
        exps.iter().zip(&self.cutoff).all(|(e, c)| c.is_none_or(|c| *e <= c))
    }

    /// Adds `c * prod var_i^{exps_i}`; terms beyond a cutoff are dropped.
    pub fn add_term(&mut self, exps: Vec<Exponent>, c: C) {
        assert_eq!(exps.len(), self.vars.len());
        for e in &exps {
            assert!(e.fits(self.denom), "exponent {e} outside (1/{})Z", self.denom);
        }
        if !self.trusted(&exps) || c.is_zero() {
            return;
        }
        match self.entries.get_mut(&exps) {
            Some(old) => {
                old.add_assign(&c);
                if old.is_zero() {
                    self.entries.remove(&exps);
                }
            }
            None => {
                self.entries.insert(exps, c);
            }
        }
    }

    pub fn coeff(&self, exps: &[Exponent]) -> Option<&C> {
        self.entries.get(exps)
    }

    pub fn lowest(&self, var: &str) -> Option<Exponent> {
        let i = self.index(var);
        self.entries.keys().map(|e| e[i]).min()
    }

    pub fn truncate(&self, var: &str, c: Exponent) -> Self {
        let i = self.index(var);
        let mut out = self.clone();
        out.cutoff[i] = Some(self.cutoff[i].map_or(c, |old| old.min(c)));
        out.entries.retain(|e, _| e[i] <= c);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        out.denom = num_integer::lcm(self.denom, other.denom);
        for (i, c) in out.cutoff.iter_mut().enumerate() {
            *c = match (*c, other.cutoff[i]) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        out.entries.retain(|e, _| e.iter().zip(&other.cutoff).all(|(x, c)| c.is_none_or(|c| *x <= c)));
        for (e, c) in &other.entries {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|(e, c)| (e.clone(), c.scaled(s))).collect();
        out.entries.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Coefficient of `var^{-1}`, as a series in the remaining variables.
    pub fn residue(&self, var: &str) -> PuiseuxSeries<C> {
        let i = self.index(var);
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut cutoff = self.cutoff.clone();
        cutoff.remove(i);
        let mut out = PuiseuxSeries { vars, denom: self.denom, cutoff, entries: BTreeMap::new() };
        for (e, c) in &self.entries {
            if e[i] == Exponent::int(-1) {
                let mut rest = e.clone();
                rest.remove(i);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Multiplies by a scalar series over the same variables. The cutoff in
    /// each variable is `min(cA + lowB, cB + lowA)`.
    pub fn mul_scalar_series(&self, s: &PuiseuxSeries<Scalar>) -> Self {
        assert_eq!(self.vars, s.vars);
        let mut out = PuiseuxSeries::<C>::new(&[], num_integer::lcm(self.denom, s.denom));
        out.vars = self.vars.clone();
        out.cutoff = (0..self.vars.len())
            .map(|i| {
                let low_a = self.entries.keys().map(|e| e[i]).min();
                let low_b = s.entries.keys().map(|e| e[i]).min();
                let ca = self.cutoff[i].zip(low_b).map(|(c, l)| c + l);
                let cb = s.cutoff[i].zip(low_a).map(|(c, l)| c + l);
                match (ca, cb) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                }
            })
            .collect();
        for (ea, ca) in &self.entries {
            for (eb, cb) in &s.entries {
                let e: Vec<Exponent> = ea.iter().zip(eb).map(|(a, b)| *a + *b).collect();
                out.add_term(e, ca.scaled(cb));
            }
        }
        out
    }
}

impl PuiseuxSeries<Scalar> {
    pub fn monomial(vars: &[&str], exps: &[Q], c: Scalar) -> Self {
        let denom = exps.iter().fold(1i64, |acc, e| num_integer::lcm(acc, *e.denom()));
        let mut s = PuiseuxSeries::new(vars, denom);
        s.add_term(exps.iter().map(|&e| Exponent(e)).collect(), c);
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_scalar_series(other)
    }

    /// Nonnegative integer power.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = PuiseuxSeries::monomial(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &vec![Q::zero(); self.vars.len()],
            Scalar::one(),
        );
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `(z1 - z2)^alpha` expanded in nonnegative integer powers of `z2`:
/// `sum_j C(alpha, j) (-1)^j z1^{alpha-j} z2^j`, for `j <= cutoff`.
pub fn expand_binomial(alpha: Q, z1: &str, z2: &str, cutoff: i64) -> PuiseuxSeries<Scalar> {
    let mut s = PuiseuxSeries::new(&[z1, z2], *alpha.denom()).with_cutoff(z2, Exponent::int(cutoff));
    let a = big(alpha);
    for j in 0..=cutoff.max(-1) {
        let c = binom(&a, j as u64) * sign(j);
        s.add_term(vec![Exponent(alpha - Q::from_integer(j)), Exponent::int(j)], Scalar::from_rational(c));
    }
    s
}

/// `(z1 + z2)^alpha` expanded in nonnegative integer powers of `z2`.
pub fn expand_sum_power(alpha: Q, z1: &str, z2: &str, cutoff: i64) -> PuiseuxSeries<Scalar> {
    let mut s = PuiseuxSeries::new(&[z1, z2], *alpha.denom()).with_cutoff(z2, Exponent::int(cutoff));
    for j in 0..=cutoff.max(-1) {
        s.add_term(
            vec![Exponent(alpha - Q::from_integer(j)), Exponent::int(j)],
            Scalar::from_rational(binom_q(alpha, j as u64)),
        );
    }
    s
}

/// Replaces every `x1^{m/k}` of a univariate series by the expansion of
/// `(x + z)^{m/k}` in nonnegative powers of `z`, keeping `z^j` for `j <= z_cutoff`.
pub fn substitute_root<C: Coeff>(series: &PuiseuxSeries<C>, k: i64, x: &str, z: &str, z_cutoff: i64) -> PuiseuxSeries<C> {
    assert_eq!(series.vars().len(), 1, "substitute_root expects a univariate series");
    assert!(k % series.denom() == 0, "series denominator {} does not divide {k}", series.denom());
    let mut out = PuiseuxSeries::<C>::new(&[x, z], k).with_cutoff(z, Exponent::int(z_cutoff));
    // Trust in x1 maps to trust in x at z^0; deeper z-orders lose j.
    if let Some(c) = series.cutoff[0] {
        out.cutoff[0] = Some(c);
    }
    for (e, c) in series.entries() {
        let a = e[0].value();
        for j in 0..=z_cutoff {
            let b = binom_q(a, j as u64);
            if b.is_zero() {
                continue;
            }
            out.add_term(vec![Exponent(a - Q::from_integer(j)), Exponent::int(j)], c.scaled(&Scalar::from_rational(b)));
        }
    }
    out
}

/// `x1^{-1} delta((x+z)/x1) ((x+z)/x1)^{offset}`: the sum over `n in offset + Z`,
/// `n` in `[lo, hi]`, of `(x+z)^n x1^{-n-1}`, truncated at `z^{z_cutoff}`.
pub fn delta_series(offset: Q, lo: i64, hi: i64, z_cutoff: i64) -> PuiseuxSeries<Scalar> {
    let mut s = PuiseuxSeries::new(&["x1", "x", "z"], *offset.denom()).with_cutoff("z", Exponent::int(z_cutoff));
    for m in lo..=hi {
        let n = offset + Q::from_integer(m);
        for j in 0..=z_cutoff {
            s.add_term(
                vec![Exponent(-n - Q::one()), Exponent(n - Q::from_integer(j)), Exponent::int(j)],
                Scalar::from_rational(binom_q(n, j as u64)),
            );
        }
    }
    s
}

/// Substitutes `var := replacement` for a variable appearing with
/// nonnegative integer exponents only. The replacement must live on the
/// remaining variables (it is given over the same variable list and must not
/// involve `var`).
pub fn substitute_var(series: &PuiseuxSeries<Scalar>, var: &str, replacement: &PuiseuxSeries<Scalar>) -> PuiseuxSeries<Scalar> {
    let i = series.index(var);
    assert!(replacement.entries().keys().all(|e| e[i].value().is_zero()));
    let mut out = PuiseuxSeries::<Scalar>::new(&[], num_integer::lcm(series.denom, replacement.denom));
    out.vars = series.vars.clone();
    out.cutoff = series.cutoff.clone();
    out.cutoff[i] = None;
    for (j, c) in replacement.cutoff.iter().enumerate() {
        if c.is_some() {
            out.cutoff[j] = match (out.cutoff[j], *c) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }
    let max_pow = series.entries().keys().map(|e| e[i].to_integer().expect("integer exponent")).max().unwrap_or(0);
    let mut powers = vec![PuiseuxSeries::monomial(
        &series.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        &vec![Q::zero(); series.vars.len()],
        Scalar::one(),
    )];
    for _ in 0..max_pow {
        let next = powers.last().unwrap().mul(replacement);
        powers.push(next);
    }
    for (e, c) in series.entries() {
        let p = e[i].to_integer().unwrap();
        assert!(p >= 0, "substitute_var needs nonnegative exponents");
        let mut rest = e.clone();
        rest[i] = Exponent::int(0);
        for (f, d) in powers[p as usize].entries() {
            let ex: Vec<Exponent> = rest.iter().zip(f).map(|(a, b)| *a + *b).collect();
            out.add_term(ex, c * d);
        }
    }
    out
}

/// Univariate `(1 + t)` style expansions are handled by [`PowerSeries`];
/// this converts such a series into a one-variable Puiseux series.
pub fn from_power_series(p: &PowerSeries, var: &str) -> PuiseuxSeries<Scalar> {
    let mut s = PuiseuxSeries::new(&[var], 1).with_cutoff(var, Exponent::int(p.len() as i64 - 1));
    for (j, c) in p.coeffs.iter().enumerate() {
        s.add_term(vec![Exponent::int(j as i64)], Scalar::from_rational(c.clone()));
    }
    s
}

impl<C: Coeff + fmt::Debug> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for (v, x) in self.vars.iter().zip(e) {
                if !x.value().is_zero() {
                    write!(f, "*{v}^{x}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{q, rat};

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    #[test]
    fn binomial_examples() {
        let s = expand_binomial(q(1, 1), "z1", "z2", 5);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&[e(1, 1), e(0, 1)]), Some(&Scalar::one()));
        assert_eq!(s.coeff(&[e(0, 1), e(1, 1)]), Some(&Scalar::from_int(-1)));
        let h = expand_binomial(q(1, 2), "z1", "z2", 2);
        assert_eq!(h.coeff(&[e(1, 2), e(0, 1)]), Some(&Scalar::one()));
        assert_eq!(h.coeff(&[e(-1, 2), e(1, 1)]), Some(&Scalar::from_rational(rat(-1, 2))));
        assert_eq!(h.coeff(&[e(-3, 2), e(2, 1)]), Some(&Scalar::from_rational(rat(-1, 8))));
    }

    #[test]
    fn binomial_convention_is_asymmetric() {
        // (z1 - z2)^{1/2} in powers of z2 versus (-z2 + z1)^{1/2} in powers of z1.
        let a = expand_binomial(q(1, 2), "z1", "z2", 4);
        let mut b = PuiseuxSeries::new(&["z1", "z2"], 2).with_cutoff("z1", Exponent::int(4));
        let minus_one_half = Scalar::root_of_unity(4, 1); // (-1)^{1/2} = e^{pi i/2}
        for j in 0..=4 {
            b.add_term(
                vec![Exponent::int(j), Exponent(q(1, 2) - q(j, 1))],
                minus_one_half.clone() * Scalar::from_rational(binom_q(q(1, 2), j as u64) * sign(j)),
            );
        }
        assert!(a.entries().iter().any(|(k, v)| b.coeff(k) != Some(v)));
    }

    #[test]
    fn residues() {
        let mut s = PuiseuxSeries::new(&["z"], 2);
        s.add_term(vec![e(-1, 1)], Scalar::one());
        s.add_term(vec![e(0, 1)], Scalar::from_int(3));
        assert_eq!(s.residue("z").coeff(&[]), Some(&Scalar::one()));
        let mut t = PuiseuxSeries::new(&["z"], 2);
        t.add_term(vec![e(-1, 2)], Scalar::one());
        assert!(t.residue("z").is_empty());
    }

    #[test]
    fn substitute_root_examples() {
        let x1 = PuiseuxSeries::monomial(&["x1"], &[q(1, 1)], Scalar::one());
        let s = substitute_root(&x1, 1, "x", "z", 4);
        assert_eq!(s.len(), 2);
        let h = PuiseuxSeries::monomial(&["x1"], &[q(1, 2)], Scalar::one());
        let t = substitute_root(&h, 2, "x", "z", 2);
        assert_eq!(t.coeff(&[e(-1, 2), e(1, 1)]), Some(&Scalar::from_rational(rat(1, 2))));
        assert_eq!(t.coeff(&[e(-3, 2), e(2, 1)]), Some(&Scalar::from_rational(rat(-1, 8))));
    }

    #[test]
    fn delta_substitution_property() {
        // Res_{x1} x1^{-1} delta((x+z)/x1) ((x+z)/x1)^{1/3} g(x1) for g = x1^{a}, a in 1/3 + Z.
        for a in [q(1, 3), q(-5, 3), q(7, 3)] {
            let d = delta_series(q(1, 3), -4, 4, 6);
            let mut g = PuiseuxSeries::new(&["x1", "x", "z"], 3);
            g.add_term(vec![Exponent(a), Exponent::int(0), Exponent::int(0)], Scalar::one());
            let lhs = g.mul(&d).residue("x1");
            let g1 = PuiseuxSeries::monomial(&["x1"], &[a], Scalar::one());
            let rhs = substitute_root(&g1, 3, "x", "z", 6);
            assert_eq!(lhs.entries(), rhs.entries());
        }
    }

    #[test]
    fn change_of_variable_pins_convention() {
        // (z1^k - x)^{n/k} = sum_j C(n/k, j) (-1)^j z1^{n-kj} x^j, then
        // x = z1^k - (z1 - z0)^k gives (z1 - z0)^n exactly.
        let cut = 12;
        for (n, k) in [(3i64, 3i64), (2, 3), (-1, 2), (5, 2)] {
            let mut lhs = PuiseuxSeries::new(&["z1", "z0", "x"], 1);
            for j in 0..=cut {
                lhs.add_term(
                    vec![Exponent::int(n - k * j), Exponent::int(0), Exponent::int(j)],
                    Scalar::from_rational(binom_q(q(n, k), j as u64) * sign(j)),
                );
            }
            let mut x = PuiseuxSeries::new(&["z1", "z0", "x"], 1).with_cutoff("z0", Exponent::int(cut));
            for i in 1..=k {
                // z1^k - (z1 - z0)^k = - sum_{i>=1} C(k,i) (-z0)^i z1^{k-i}
                x.add_term(
                    vec![Exponent::int(k - i), Exponent::int(i), Exponent::int(0)],
                    Scalar::from_rational(-binom_q(q(k, 1), i as u64) * sign(i)),
                );
            }
            let sub = substitute_var(&lhs, "x", &x);
            let mut rhs = PuiseuxSeries::new(&["z1", "z0", "x"], 1).with_cutoff("z0", Exponent::int(cut));
            for j in 0..=cut {
                rhs.add_term(
                    vec![Exponent::int(n - j), Exponent::int(j), Exponent::int(0)],
                    Scalar::from_rational(binom_q(q(n, 1), j as u64) * sign(j)),
                );
            }
            assert_eq!(sub.entries(), rhs.entries(), "n={n} k={k}");
        }
    }

    #[test]
    fn nested_substitution_agrees_with_direct() {
        // g(x1) = x1^{m/k}. Path one: x1^{1/k} -> (x+z)^{1/k}.
        // Path two: x1^{1/k} = x^{1/k} + z0, then z0 = (x+z)^{1/k} - x^{1/k}.
        let k = 3;
        let cut = 8;
        for m in [1i64, 2, 4, -1] {
            let g = PuiseuxSeries::monomial(&["x1"], &[q(m, k)], Scalar::one());
            let direct = substitute_root(&g, k, "x", "z", cut);
            // z0 = x^{1/k} ((1 + z/x)^{1/k} - 1), in nonnegative powers of z.
            let mut z0 = PuiseuxSeries::new(&["x", "z"], k).with_cutoff("z", Exponent::int(cut));
            for j in 1..=cut {
                z0.add_term(vec![Exponent(q(1, k) - q(j, 1)), Exponent::int(j)], Scalar::from_rational(binom_q(q(1, k), j as u64)));
            }
            // (x^{1/k} + z0)^m = x^{m/k} (1 + x^{-1/k} z0)^m
            let mut u = PuiseuxSeries::new(&["x", "z"], k);
            u.add_term(vec![Exponent(q(-1, k)), Exponent::int(0)], Scalar::one());
            let t = u.mul(&z0);
            let mut acc = PuiseuxSeries::new(&["x", "z"], k).with_cutoff("z", Exponent::int(cut));
            let mut tp = PuiseuxSeries::monomial(&["x", "z"], &[q(0, 1), q(0, 1)], Scalar::one());
            for j in 0..=cut {
                acc = acc.add(&tp.scale(&Scalar::from_rational(binom_q(q(m, 1), j as u64))));
                tp = tp.mul(&t);
            }
            let mut lead = PuiseuxSeries::new(&["x", "z"], k);
            lead.add_term(vec![Exponent(q(m, k)), Exponent::int(0)], Scalar::one());
            let nested = acc.mul(&lead);
            assert_eq!(nested.entries(), direct.entries(), "m={m}");
        }
    }

    #[test]
    fn product_cutoff_rule() {
        let a = expand_binomial(q(1, 2), "z1", "z2", 3);
        let b = expand_binomial(q(-1, 2), "z1", "z2", 5);
        let p = a.mul(&b);
        assert_eq!(p.cutoff("z2"), Some(Exponent::int(3)));
        // (z1 - z2)^{1/2} (z1 - z2)^{-1/2} = 1
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&[e(0, 1), e(0, 1)]), Some(&Scalar::one()));
    }

    #[test]
    fn power_series_bridge() {
        let g = PowerSeries::new(vec![rat(1, 1), rat(2, 1)], 4);
        let s = from_power_series(&g, "t");
        assert_eq!(s.len(), 2);
    }
}
