use std::fmt;

use crate::compositions::GroundSet;
use crate::error::{invalid, Result};

/// A permutation of `{0, …, n-1}` stored by its image list.
///
/// Composition follows function composition: `(g.compose(h))(x) = g(h(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Validates that `images` is a bijection of `{0, …, n-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(invalid(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(invalid(format!("point {x} out of range")));
                }
                if std::mem::replace(&mut moved[x], true) {
                    return Err(invalid(format!("point {x} appears in two cycles")));
                }
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Image of a subset given as a bitmask.
    #[inline]
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << self.0[i];
            m &= m - 1;
        }
        out
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// All cycles, including fixed points, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// `(−1)^{n − #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.degree() - self.cycles().len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        use num_integer::Integer;
        self.cycles()
            .iter()
            .fold(1usize, |acc, c| acc.lcm(&c.len()))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of a labeled ground set, written in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    ground: GroundSet,
    perm: Perm,
}

impl Permutation {
    pub fn new(ground: &GroundSet, perm: Perm) -> Result<Self> {
        if perm.degree() != ground.len() {
            return Err(invalid(format!(
                "permutation on {} points used on a {}-element ground set",
                perm.degree(),
                ground.len()
            )));
        }
        Ok(Permutation {
            ground: ground.clone(),
            perm,
        })
    }

    pub fn identity(ground: &GroundSet) -> Self {
        Permutation {
            ground: ground.clone(),
            perm: Perm::identity(ground.len()),
        }
    }

    /// Parses cycle notation such as `"(a c)(b d)"`, `"(a,c)"`, or `"(abc)"`
    /// when every label is a single character; `"()"` is the identity.
    pub fn parse(ground: &GroundSet, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| invalid(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| invalid(format!("unbalanced parentheses in {s:?}")))?;
            let inner = body[..close].trim();
            rest = body[close + 1..].trim_start();
            if inner.is_empty() {
                continue;
            }
            let tokens: Vec<String> = if inner.contains(|c: char| c.is_whitespace() || c == ',') {
                inner
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect()
            } else if ground.index(inner).is_ok() {
                vec![inner.to_string()]
            } else if ground.compact() {
                inner.chars().map(|c| c.to_string()).collect()
            } else {
                return Err(invalid(format!("cannot split cycle {inner:?} into labels")));
            };
            let cycle = tokens
                .iter()
                .map(|t| ground.index(t))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        let perm =
            Perm::from_cycles(ground.len(), &cycles).map_err(|e| invalid(format!("{s:?}: {e}")))?;
        Ok(Permutation {
            ground: ground.clone(),
            perm,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn apply_label(&self, label: &str) -> Result<&str> {
        let i = self.ground.index(label)?;
        Ok(self.ground.label(self.perm.apply(i)))
    }

    /// `self ∘ other`, both on the same ground set.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.ground, other.ground, "ground sets differ");
        Permutation {
            ground: self.ground.clone(),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            ground: self.ground.clone(),
            perm: self.perm.inverse(),
        }
    }

    pub fn sign(&self) -> i64 {
        self.perm.sign()
    }
}

/// Formats an index permutation in cycle notation over `ground`.
pub(crate) fn fmt_cycles(ground: &GroundSet, perm: &Perm) -> String {
    let cs: Vec<_> = perm.cycles().into_iter().filter(|c| c.len() > 1).collect();
    if cs.is_empty() {
        return "()".to_string();
    }
    cs.iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|&i| ground.label(i)).collect();
            format!("({})", labels.join(" "))
        })
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_cycles(&self.ground, &self.perm))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> GroundSet {
        GroundSet::new(["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let g = abcd();
        let p = Permutation::parse(&g, "(a c)(b d)").unwrap();
        assert_eq!(p.to_string(), "(a c)(b d)");
        assert_eq!(Permutation::parse(&g, "(ac)(bd)").unwrap(), p);
        assert_eq!(Permutation::parse(&g, "(a,c) (b,d)").unwrap(), p);
        assert_eq!(
            Permutation::parse(&g, "()").unwrap(),
            Permutation::identity(&g)
        );
        assert_eq!(
            Permutation::parse(&g, "").unwrap(),
            Permutation::identity(&g)
        );
        assert_eq!(
            Permutation::parse(&g, "(c a b)").unwrap().to_string(),
            "(a b c)"
        );
    }

    #[test]
    fn parse_errors() {
        let g = abcd();
        assert!(Permutation::parse(&g, "(a c)(a d)").is_err());
        assert!(Permutation::parse(&g, "(a x)").is_err());
        assert!(Permutation::parse(&g, "(a c").is_err());
        assert!(Permutation::parse(&g, "a c").is_err());
        let long = GroundSet::new(["v1", "v2"]).unwrap();
        assert!(Permutation::parse(&long, "(v1v2)").is_err());
        assert_eq!(
            Permutation::parse(&long, "(v1 v2)").unwrap().to_string(),
            "(v1 v2)"
        );
    }

    #[test]
    fn composition_is_function_composition() {
        let g = abcd();
        let p = Permutation::parse(&g, "(a b)").unwrap();
        let q = Permutation::parse(&g, "(b c)").unwrap();
        // (p∘q)(b) = p(c) = c; (p∘q)(a) = p(a) = b.
        let pq = p.compose(&q);
        assert_eq!(pq.apply_label("b").unwrap(), "c");
        assert_eq!(pq.apply_label("a").unwrap(), "b");
        assert_eq!(pq.compose(&pq.inverse()), Permutation::identity(&g));
    }

    #[test]
    fn sign_and_order() {
        let g = abcd();
        let p = Permutation::parse(&g, "(a b c d)").unwrap();
        assert_eq!(p.sign(), -1);
        assert_eq!(p.perm().order(), 4);
        let q = Permutation::parse(&g, "(a b)(c d)").unwrap();
        assert_eq!(q.sign(), 1);
        assert_eq!(q.perm().order(), 2);
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert_eq!(Perm::identity(3).apply_mask(0b101), 0b101);
        let r = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(r.apply_mask(0b011), 0b110);
    }
}
