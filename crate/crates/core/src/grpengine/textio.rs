use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{shared_field, FieldElement};

use super::{GroupHandle, MatrixAlgebra, PermAlgebra};

/// Reads generators from text. The first line names the algebra, either
/// `perm <degree>` or `mat <n> <p> <k>` for `n x n` matrices over
/// `GF(p^k)`; every further line is one generator, a permutation in cycle
/// notation or a matrix as `;`-separated rows of field digits (the integer
/// encoding of field elements, `0..q`). Blank lines and `#` comments are
/// skipped.
pub fn read_generators(text: &str, projective: bool) -> Result<GroupHandle> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty generator file".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad number {s:?} in header")));
    match words.as_slice() {
        ["perm", d] => {
            if projective {
                return Err(Error::InvalidArgument("permutation groups have no projective form".into()));
            }
            let alg = PermAlgebra::new(num(d)? as usize);
            let gens = lines.map(|l| alg.parse(l)).collect::<Result<Vec<_>>>()?;
            Ok(GroupHandle::new(Arc::new(alg), gens))
        }
        ["mat", n, p, k] => {
            let (n, p, k) = (num(n)? as usize, num(p)?, num(k)? as u32);
            let q = p.checked_pow(k).ok_or(Error::TooLarge(p))?;
            let alg = MatrixAlgebra::new(shared_field(q)?, n, projective)?;
            let mut gens = Vec::new();
            for l in lines {
                let rows = l
                    .split(';')
                    .map(|r| {
                        r.split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|x| !x.is_empty())
                            .map(|x| match x.parse::<u64>() {
                                Ok(v) if v < q => Ok(FieldElement(v as u32)),
                                _ => Err(Error::Parse(format!("bad field digit {x:?} for GF({q})"))),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = alg.from_rows(&rows)?;
                if !alg.is_invertible(&m) {
                    return Err(Error::InvalidArgument(format!("singular matrix {l:?}")));
                }
                gens.push(m);
            }
            Ok(GroupHandle::new(Arc::new(alg), gens))
        }
        _ => Err(Error::Parse(format!("header must be `perm <degree>` or `mat <n> <p> <k>`, got {header:?}"))),
    }
}
