use crate::error::{Error, Result};

use super::{Algebra, Element};

/// Permutations of `{0, .., degree-1}` as image arrays, acting on the right:
/// `i^(ab) = (i^a)^b`.
#[derive(Clone, Debug)]
pub struct PermAlgebra {
    degree: usize,
}

impl PermAlgebra {
    pub fn new(degree: usize) -> Self {
        assert!((1..=256).contains(&degree), "permutation degree must be in 1..=256");
        PermAlgebra { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// From 1-based cycles, e.g. `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(&self, cycles: &[Vec<usize>]) -> Result<Element> {
        let mut img: Vec<u8> = (0..self.degree).map(|i| i as u8).collect();
        let mut seen = vec![false; self.degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > self.degree {
                    return Err(Error::Parse(format!("point {a} outside 1..={}", self.degree)));
                }
                if std::mem::replace(&mut seen[a - 1], true) {
                    return Err(Error::Parse(format!("point {a} repeated")));
                }
                let b = cycle[(i + 1) % cycle.len()];
                if b == 0 || b > self.degree {
                    return Err(Error::Parse(format!("point {b} outside 1..={}", self.degree)));
                }
                img[a - 1] = (b - 1) as u8;
            }
        }
        Ok(img)
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        self.from_cycles(&parse_cycles(text)?)
    }

    pub fn from_images(&self, images: &[usize]) -> Result<Element> {
        if images.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, got: images.len() });
        }
        let mut seen = vec![false; self.degree];
        for &i in images {
            if i >= self.degree || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse("images do not form a bijection".into()));
            }
        }
        Ok(images.iter().map(|&i| i as u8).collect())
    }
}

/// Cycle notation with 1-based points: `(1,2,3)(4,5)`; `()` is the identity.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = open[..close].trim();
        if !body.is_empty() {
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl Algebra for PermAlgebra {
    fn width(&self) -> usize {
        self.degree
    }

    fn identity(&self) -> Element {
        (0..self.degree).map(|i| i as u8).collect()
    }

    fn mul_into(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        for (o, &i) in out.iter_mut().zip(a) {
            *o = b[i as usize];
        }
    }

    fn inverse(&self, a: &[u8]) -> Element {
        let mut out = vec![0; self.degree];
        for (i, &j) in a.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        out
    }

    fn describe(&self) -> String {
        format!("perm {}", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_products() {
        let s = PermAlgebra::new(3);
        let a = s.parse("(1,2)").unwrap();
        let b = s.parse("(1,2,3)").unwrap();
        // right action: 1 -> 2 -> 3
        assert_eq!(s.mul(&a, &b), s.parse("(1,3)").unwrap());
        assert_eq!(s.mul(&b, &s.inverse(&b)), s.identity());
        assert_eq!(s.parse("()").unwrap(), s.identity());
        assert!(s.parse("(1,1)").is_err());
        assert!(s.parse("(1,4)").is_err());
        assert!(s.parse("1,2").is_err());
    }
}
