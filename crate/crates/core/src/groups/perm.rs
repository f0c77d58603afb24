use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, degree−1}`, stored as its image list: `self[i]` is
/// the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `"(0 1)(2 3 4)"`; `"()"` or an empty string is
    /// the identity. Points are separated by whitespace or commas.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPermutation(format!("{text:?}: {why}"));
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &body_start[..close];
            rest = body_start[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| bad("point is not an integer"))?;
                if p >= degree {
                    return Err(bad("point out of range"));
                }
                if touched[p] {
                    return Err(bad("point repeated"));
                }
                touched[p] = true;
                cycle.push(p);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::parse_cycles(5, "(0 1)(2 4 3)").unwrap();
        assert_eq!(p.images(), &[1, 0, 4, 2, 3]);
        assert_eq!(p.to_string(), "(0 1)(2 4 3)");
        assert_eq!(Perm::parse_cycles(5, &p.to_string()).unwrap(), p);
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Perm::parse_cycles(3, "").unwrap().is_identity());
        assert_eq!(Perm::parse_cycles(3, "(0,2)").unwrap().images(), &[2, 1, 0]);
    }

    #[test]
    fn malformed_cycles_rejected() {
        assert!(Perm::parse_cycles(3, "(0 3)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
        assert!(Perm::parse_cycles(3, "0 1").is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::parse_cycles(3, "(0 1)").unwrap();
        let b = Perm::parse_cycles(3, "(1 2)").unwrap();
        // (a∘b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }
}
