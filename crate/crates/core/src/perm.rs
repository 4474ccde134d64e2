//! Permutations on `{0, .., d-1}` in cycle notation.

use std::fmt;

use crate::error::{GroupError, Result};

/// A bijection on `0..degree`. Products compose left to right:
/// `(p * q)(i) = q(p(i))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation of the given degree from disjoint-or-not cycles,
    /// applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(degree);
        for cycle in cycles {
            if cycle.iter().any(|&x| x >= degree) {
                return Err(GroupError::InvalidPermutation(format!(
                    "cycle {cycle:?} leaves the point set 0..{degree}"
                )));
            }
            let mut seen = cycle.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != cycle.len() {
                return Err(GroupError::InvalidPermutation(format!(
                    "cycle {cycle:?} repeats a point"
                )));
            }
            let mut c = Self::identity(degree);
            for (k, &x) in cycle.iter().enumerate() {
                c.images[x] = cycle[(k + 1) % cycle.len()];
            }
            p = p.compose(&c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Extends to a larger point set by fixing the new points.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len()..degree.max(self.images.len()));
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Parses one permutation written as a product of cycles, e.g. `(0 1)(2 3 4)`.
/// Returns the cycles; the degree is fixed later.
fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| GroupError::Parse(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = &open[..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| GroupError::Parse(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses a generator list such as `[(0 1),(0 1 2)]`. All permutations are
/// placed on the smallest common point set.
pub fn parse_permutation_list(text: &str) -> Result<Vec<Permutation>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| GroupError::Parse(format!("expected [..] around {text:?}")))?;
    let mut parsed = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parsed.push(parse_cycles(&inner[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner[start..].trim().is_empty() {
        parsed.push(parse_cycles(&inner[start..])?);
    }
    let degree = parsed
        .iter()
        .flatten()
        .flatten()
        .map(|&x| x + 1)
        .max()
        .unwrap_or(1);
    parsed
        .iter()
        .map(|cycles| Permutation::from_cycles(degree, cycles))
        .collect()
}
