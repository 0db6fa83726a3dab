//! Permutations of {1, ..., k} in cycle notation.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("unbalanced parentheses at position {0}")]
    Parenthesis(usize),
    #[error("invalid point '{token}' at position {pos}")]
    Token { token: String, pos: usize },
    #[error("point {point} out of range 1..={k}")]
    Range { point: usize, k: usize },
    #[error("point {0} repeated")]
    Repeated(usize),
}

/// A bijection of {1..k}; stored 0-indexed, displayed 1-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { image: (0..k).collect() }
    }

    /// From a 0-indexed image array. Panics if it is not a bijection.
    pub fn from_images(image: Vec<usize>) -> Self {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            assert!(i < image.len() && !seen[i], "not a permutation: {image:?}");
            seen[i] = true;
        }
        Permutation { image }
    }

    /// The cycle (1 2 ... k).
    pub fn long_cycle(k: usize) -> Self {
        Permutation { image: (0..k).map(|i| (i + 1) % k).collect() }
    }

    /// Parses "(1 2 3)(4 5)"; commas are accepted as separators.
    pub fn parse(s: &str, k: usize) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..k).collect();
        let mut used = vec![false; k];
        let mut cycle: Option<Vec<usize>> = None;
        let mut token = String::new();
        let mut token_start = 0;
        let flush = |token: &mut String, start: usize, cycle: &mut Option<Vec<usize>>, used: &mut Vec<bool>| -> Result<(), PermError> {
            if token.is_empty() {
                return Ok(());
            }
            let p: usize = token.parse().map_err(|_| PermError::Token { token: token.clone(), pos: start })?;
            if p == 0 || p > k {
                return Err(PermError::Range { point: p, k });
            }
            if used[p - 1] {
                return Err(PermError::Repeated(p));
            }
            used[p - 1] = true;
            cycle.as_mut().ok_or(PermError::Parenthesis(start))?.push(p - 1);
            token.clear();
            Ok(())
        };
        for (pos, ch) in s.char_indices() {
            match ch {
                '(' => {
                    if cycle.is_some() {
                        return Err(PermError::Parenthesis(pos));
                    }
                    cycle = Some(Vec::new());
                }
                ')' => {
                    flush(&mut token, token_start, &mut cycle, &mut used)?;
                    let c = cycle.take().ok_or(PermError::Parenthesis(pos))?;
                    for (i, &p) in c.iter().enumerate() {
                        image[p] = c[(i + 1) % c.len()];
                    }
                }
                c if c.is_ascii_digit() => {
                    if token.is_empty() {
                        token_start = pos;
                    }
                    token.push(c);
                }
                c if c.is_whitespace() || c == ',' => flush(&mut token, token_start, &mut cycle, &mut used)?,
                _ => return Err(PermError::Token { token: ch.to_string(), pos }),
            }
        }
        if cycle.is_some() {
            return Err(PermError::Parenthesis(s.len()));
        }
        if !token.is_empty() {
            return Err(PermError::Token { token, pos: token_start });
        }
        Ok(Permutation { image })
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    /// 0-indexed image of a 0-indexed point.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.k(), other.k());
        Permutation { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.k()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// self * p * self^{-1}
    pub fn conjugate(&self, p: &Permutation) -> Permutation {
        self.compose(p).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles, fixed points included, each starting at its smallest element,
    /// ordered by descending length and then by smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for start in 0..self.k() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.image[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.image[i];
            }
            out.push(c);
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        out
    }

    /// Cycle type as a descending partition of k.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycles().iter().map(|c| c.len()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every permutation of {1..k}, in lexicographic order of image arrays.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation { image: prefix.clone() });
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1 3)", 3).unwrap();
        assert_eq!(p.images(), &[2, 1, 0]);
        assert_eq!(p.to_string(), "(1 3)");
        let p = Permutation::parse(" ( 1  2 3 )( 4,5) ", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse("", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse("(1 2", 3), Err(PermError::Parenthesis(4)));
        assert_eq!(Permutation::parse("(1 4)", 3), Err(PermError::Range { point: 4, k: 3 }));
        assert_eq!(Permutation::parse("(1 2)(2 3)", 3), Err(PermError::Repeated(2)));
        assert!(matches!(Permutation::parse("(1 x)", 3), Err(PermError::Token { .. })));
    }

    #[test]
    fn cycle_order() {
        let p = Permutation::parse("(4 5)(2 3 6)", 6).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 5], vec![3, 4], vec![0]]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(all_permutations(3).len(), 6);
    }
}
