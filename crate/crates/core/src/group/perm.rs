use std::fmt;

use super::GroupError;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// Build from 1-based cycles. Panics on repeated points; use
    /// [`Perm::parse_cycles`] for untrusted input.
    pub fn from_cycles(cycles: &[Vec<usize>]) -> Self {
        Self::try_from_cycles(cycles).expect("valid cycles")
    }

    fn try_from_cycles(cycles: &[Vec<usize>]) -> Result<Self, String> {
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 {
                    return Err("points are 1-based".into());
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(format!("point {p} appears twice"));
                }
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Perm(images))
    }

    /// Parse cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str) -> Result<Self, GroupError> {
        let err = |why: &str| GroupError::MalformedPerm(text.to_string(), why.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err("empty permutation"));
        }
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let points = inner[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| err("points must be positive integers"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = inner[close + 1..].trim_start();
        }
        Self::try_from_cycles(&cycles).map_err(|why| err(&why))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.0.clone();
        images.extend(self.0.len()..degree);
        Perm(images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.0[p];
            }
            out.push(cycle);
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
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse_cycles("(3 1)").unwrap().to_string(), "(1 3)");
        assert!(Perm::parse_cycles("()").unwrap().is_identity());
        assert!(Perm::parse_cycles("(1 1)").is_err());
        assert!(Perm::parse_cycles("(0 1)").is_err());
        assert!(Perm::parse_cycles("1 2").is_err());
        assert!(Perm::parse_cycles("(a b)").is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::parse_cycles("(1 2)").unwrap().extended(3);
        let b = Perm::parse_cycles("(1 2 3)").unwrap();
        // (1 2)(1 2 3): 1 -> 2 -> 1, 2 -> 3, 3 -> 1 -> 2
        assert_eq!(a.compose(&b).to_string(), "(2 3)");
        assert_eq!(b.compose(&a).to_string(), "(1 3)");
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![1, 0, 2]).is_some());
        assert!(Perm::from_images(vec![1, 1, 2]).is_none());
        assert!(Perm::from_images(vec![3, 0, 1]).is_none());
    }
}
