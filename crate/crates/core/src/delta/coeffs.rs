//! The coefficients a_n determined by
//! exp(sum_n -a_n x^{n+1} d/dx) x = (1/k)(1 + x)^k - 1/k.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{binom_i, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCoefficients {
    pub k: u32,
    /// a[0] is a_1.
    pub a: Vec<Rational>,
}

impl DeltaCoefficients {
    pub fn get(&self, n: usize) -> Rational {
        if n == 0 || n > self.a.len() {
            Rational::zero()
        } else {
            self.a[n - 1].clone()
        }
    }
}

/// Coefficients (index = power of x) of exp(D) x through x^{order}, where
/// D = sum_n -a_n x^{n+1} d/dx.
pub fn flow_of_x(a: &[Rational], order: usize) -> Vec<Rational> {
    let mut term = vec![Rational::zero(); order + 1];
    if order >= 1 {
        term[1] = Rational::from_integer(BigInt::from(1));
    }
    let mut total = term.clone();
    for j in 1..=order {
        let mut next = vec![Rational::zero(); order + 1];
        for (p, c) in term.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // D x^p = sum_n -a_n p x^{p+n}
            for (i, an) in a.iter().enumerate() {
                let n = i + 1;
                if p + n > order {
                    break;
                }
                next[p + n] -= an * c * Rational::from_integer(BigInt::from(p));
            }
        }
        let jj = Rational::from_integer(BigInt::from(j));
        term = next.into_iter().map(|c| c / &jj).collect();
        if term.iter().all(|c| c.is_zero()) {
            break;
        }
        for (t, c) in total.iter_mut().zip(&term) {
            *t += c;
        }
    }
    total
}

fn target(k: u32, p: usize) -> Rational {
    // (1/k) C(k, p)
    binom_i(k as i64, p as u64) / Rational::from_integer(BigInt::from(k))
}

/// Order-by-order coefficient matching: the x^{n+1} coefficient of exp(D) x
/// is -a_n plus a polynomial in a_1..a_{n-1}.
pub fn solve_an(k: u32, count: usize) -> DeltaCoefficients {
    assert!(k >= 1, "k must be positive");
    let mut a: Vec<Rational> = Vec::with_capacity(count);
    for n in 1..=count {
        a.push(Rational::zero());
        let got = flow_of_x(&a, n + 1);
        a[n - 1] = &got[n + 1] - target(k, n + 1);
    }
    DeltaCoefficients { k, a }
}

/// Whether the defining identity holds through x^{order}.
pub fn satisfies_definition(k: u32, a: &[Rational], order: usize) -> bool {
    let got = flow_of_x(a, order);
    (1..=order).all(|p| got[p] == target(k, p))
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<DeltaCoefficients>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DeltaCoefficients>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached a_1..a_count for k, extending the stored list when needed.
pub fn coefficients(k: u32, count: usize) -> Arc<DeltaCoefficients> {
    if let Some(c) = cache().lock().unwrap().get(&k) {
        if c.a.len() >= count {
            return c.clone();
        }
    }
    let c = Arc::new(solve_an(k, count.max(8)));
    cache().lock().unwrap().insert(k, c.clone());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_coefficients() {
        assert!(solve_an(1, 6).a.iter().all(|a| a.is_zero()));
        for k in 1..=6u32 {
            assert_eq!(solve_an(k, 1).a[0], rat(-(k as i64 - 1), 2));
        }
        let a = solve_an(2, 4).a;
        assert!(satisfies_definition(2, &a, 5));
    }

    #[test]
    fn uniqueness_under_perturbation() {
        for k in 2..=4u32 {
            let a = solve_an(k, 6).a;
            for n in 1..=6 {
                let mut b = a.clone();
                b[n - 1] += rat(1, 7);
                assert!(!satisfies_definition(k, &b, n + 1), "k={k} n={n}");
                assert!(satisfies_definition(k, &b, n), "lower orders unaffected");
            }
        }
    }
}
