//! Classical groups as matrix groups: invariant forms, generators, spinor
//! norm and Dickson invariant, and factored order formulas.
//!
//! Matrices act on row vectors. A quadratic form is stored as an upper
//! triangular coefficient matrix `A` with `Q(x) = x A x^T`; its polar form is
//! `b(x, y) = Q(x + y) - Q(x) - Q(y) = x (A + A^T) y^T`. Over odd `q` the
//! hyperbolic plane is `Q(x1, x2) = 2 x1 x2`, i.e. Gram matrix `[[0,1],[1,0]]`
//! with `Q(x) = x G x^T`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{shared_field, FieldElement, FiniteField};
use crate::grpengine::{enumerate, Element, GroupHandle, MatrixAlgebra, DEFAULT_BUDGET};
use crate::numth::{
    factored_power_minus_one, factored_power_plus_one, factorize, gcd, prime_power_decomposition,
    valuation_power_minus_one, FactoredInteger,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GL,
    SL,
    PSL,
    Sp,
    PSp,
    SOodd,
    OmegaOdd,
    POmegaOdd,
    SOeven,
    OmegaEven,
    POmegaEven,
    GOeven,
    /// Kernel of the spinor norm in `GO^±(2m, q)`, `q` odd.
    Keven,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::GL,
        Family::SL,
        Family::PSL,
        Family::Sp,
        Family::PSp,
        Family::SOodd,
        Family::OmegaOdd,
        Family::POmegaOdd,
        Family::SOeven,
        Family::OmegaEven,
        Family::POmegaEven,
        Family::GOeven,
        Family::Keven,
    ];

    pub fn is_even_orthogonal(self) -> bool {
        matches!(self, Family::SOeven | Family::OmegaEven | Family::POmegaEven | Family::GOeven | Family::Keven)
    }

    pub fn is_odd_orthogonal(self) -> bool {
        matches!(self, Family::SOodd | Family::OmegaOdd | Family::POmegaOdd)
    }

    pub fn is_orthogonal(self) -> bool {
        self.is_even_orthogonal() || self.is_odd_orthogonal()
    }

    pub fn is_projective(self) -> bool {
        matches!(self, Family::PSL | Family::PSp | Family::POmegaOdd | Family::POmegaEven)
    }

    fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::Sp => "Sp",
            Family::PSp => "PSp",
            Family::SOodd | Family::SOeven => "SO",
            Family::OmegaOdd | Family::OmegaEven => "Omega",
            Family::POmegaOdd | Family::POmegaEven => "POmega",
            Family::GOeven => "GO",
            Family::Keven => "K",
        }
    }
}

/// A classical group: family, natural dimension `n` of the matrices, field
/// size `q`, and for even-dimensional orthogonal groups the Witt type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
    pub sign: Option<i8>,
}

impl ClassicalSpec {
    pub fn new(family: Family, n: usize, q: u64, sign: Option<i8>) -> Result<Self> {
        let spec = ClassicalSpec { family, n, q, sign };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gl(n: usize, q: u64) -> Result<Self> {
        Self::new(Family::GL, n, q, None)
    }

    pub fn sp(n: usize, q: u64) -> Result<Self> {
        Self::new(Family::Sp, n, q, None)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidSpec(format!("{self}: {why}")));
        let Some((p, _)) = prime_power_decomposition(self.q) else {
            return bad("q is not a prime power");
        };
        if self.family.is_even_orthogonal() != self.sign.is_some() {
            return bad("a sign is given exactly for even-dimensional orthogonal groups");
        }
        if let Some(s) = self.sign {
            if s != 1 && s != -1 {
                return bad("sign must be +1 or -1");
            }
        }
        let n = self.n;
        match self.family {
            Family::GL | Family::SL | Family::PSL if n == 0 => bad("dimension must be positive"),
            Family::Sp | Family::PSp if n == 0 || n % 2 == 1 => bad("symplectic dimension must be even and positive"),
            f if f.is_odd_orthogonal() && (n < 3 || n.is_multiple_of(2)) => bad("dimension must be odd and at least 3"),
            f if f.is_odd_orthogonal() && p == 2 => bad("odd-dimensional orthogonal groups need odd q"),
            f if f.is_even_orthogonal() && (n == 0 || n % 2 == 1) => bad("dimension must be even and positive"),
            Family::Keven if p == 2 => bad("the spinor kernel is defined here for odd q only"),
            _ => Ok(()),
        }
    }

    /// Half the dimension for symplectic and orthogonal groups (`n = 2m` or
    /// `2m + 1`); `n` itself for linear groups.
    pub fn m(&self) -> usize {
        match self.family {
            Family::GL | Family::SL | Family::PSL => self.n,
            _ => self.n / 2,
        }
    }

    pub fn characteristic(&self) -> u64 {
        prime_power_decomposition(self.q).map(|(p, _)| p).unwrap_or(0)
    }

    /// `Err(NotSimpleRange)` when the group is valid but its projective
    /// version is not a nonabelian simple group.
    pub fn simple_range(&self) -> Result<()> {
        let (n, q, m) = (self.n, self.q, self.m());
        let simple = match self.family {
            Family::GL | Family::SL | Family::PSL => n >= 2 && !(n == 2 && q <= 3),
            Family::Sp | Family::PSp => !(m == 1 && q <= 3) && !(m == 2 && q == 2),
            Family::SOodd | Family::OmegaOdd | Family::POmegaOdd => m >= 2 || q >= 5,
            _ => m >= 3 || (m == 2 && self.sign == Some(-1)),
        };
        if simple {
            Ok(())
        } else {
            Err(Error::NotSimpleRange(format!("{self} does not give a nonabelian simple group")))
        }
    }

    /// The orthogonal form type of this group, if orthogonal.
    pub fn form_type(&self) -> Option<FormType> {
        if self.family.is_odd_orthogonal() {
            Some(FormType::Odd)
        } else {
            self.sign.map(|s| if s > 0 { FormType::Plus } else { FormType::Minus })
        }
    }
}

impl fmt::Display for ClassicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Some(s) => write!(f, "{}{}({},{})", self.family.name(), if s > 0 { "+" } else { "-" }, self.n, self.q),
            None => write!(f, "{}({},{})", self.family.name(), self.n, self.q),
        }
    }
}

/// Parses `gl3:2`, `psl2:7`, `sp4:3`, `psp4:5`, `so5:3`, `omega7:3`,
/// `pomega5:3`, `go4:3+`, `so6:5-`, `omega8:3+`, `pomega8:2+`, `k4:5+`.
impl FromStr for ClassicalSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse classical group {s:?}"));
        let s = s.trim().to_ascii_lowercase();
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (name, dim) = head.split_at(split);
        let n: usize = dim.parse().map_err(|_| bad())?;
        let (qtext, sign) = match tail.strip_suffix('+') {
            Some(t) => (t, Some(1)),
            None => match tail.strip_suffix('-') {
                Some(t) => (t, Some(-1)),
                None => (tail, None),
            },
        };
        let q: u64 = qtext.parse().map_err(|_| bad())?;
        let odd = n % 2 == 1;
        let family = match (name, odd) {
            ("gl", _) => Family::GL,
            ("sl", _) => Family::SL,
            ("psl" | "l", _) => Family::PSL,
            ("sp", _) => Family::Sp,
            ("psp" | "s", _) => Family::PSp,
            ("so", true) => Family::SOodd,
            ("so", false) => Family::SOeven,
            ("omega", true) => Family::OmegaOdd,
            ("omega", false) => Family::OmegaEven,
            ("pomega" | "o", true) => Family::POmegaOdd,
            ("pomega" | "o", false) => Family::POmegaEven,
            ("go", false) => Family::GOeven,
            ("k", false) => Family::Keven,
            _ => return Err(bad()),
        };
        ClassicalSpec::new(family, n, q, sign)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormType {
    Plus,
    Minus,
    Odd,
}

/// A nondegenerate quadratic form on `GF(q)^dim`.
#[derive(Clone, Debug)]
pub struct QuadraticFormSpec {
    pub dim: usize,
    pub q: u64,
    pub kind: FormType,
    field: Arc<FiniteField>,
    /// Upper triangular, `Q(x) = x A x^T`.
    coef: Vec<FieldElement>,
    /// `A + A^T`.
    polar: Vec<FieldElement>,
}

impl QuadraticFormSpec {
    /// From an upper triangular coefficient matrix (row-major).
    pub fn from_coefficients(field: Arc<FiniteField>, dim: usize, coef: Vec<FieldElement>, kind: FormType) -> Self {
        assert_eq!(coef.len(), dim * dim);
        let mut polar = vec![field.zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                polar[i * dim + j] = field.add(coef[i * dim + j], coef[j * dim + i]);
            }
        }
        QuadraticFormSpec { dim, q: field.order() as u64, kind, field, coef, polar }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coef
    }

    pub fn polar_matrix(&self) -> &[FieldElement] {
        &self.polar
    }

    /// Over odd `q`, the symmetric `G` with `Q(x) = x G x^T`; over even `q`,
    /// the polar matrix.
    pub fn gram(&self) -> Vec<FieldElement> {
        let f = &self.field;
        if f.p() == 2 {
            return self.polar.clone();
        }
        let half = f.inv(f.from_int(2)).unwrap();
        let n = self.dim;
        let mut g = vec![f.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = if i == j { self.coef[i * n + i] } else { f.mul(half, self.polar[i * n + j]) };
            }
        }
        g
    }

    pub fn value(&self, x: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let n = self.dim;
        let mut acc = f.zero();
        for i in 0..n {
            if x[i] == f.zero() {
                continue;
            }
            for j in i..n {
                let c = self.coef[i * n + j];
                if c != f.zero() && x[j] != f.zero() {
                    acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
                }
            }
        }
        acc
    }

    /// The form `c Q`; same isometry group, spinor norms scaled by `c`.
    pub fn scaled(&self, c: FieldElement) -> Self {
        let coef = self.coef.iter().map(|&a| self.field.mul(c, a)).collect();
        Self::from_coefficients(self.field.clone(), self.dim, coef, self.kind)
    }

    pub fn polar_value(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        bilinear(&self.field, &self.polar, self.dim, x, y)
    }

    /// The reflection `x -> x - b(x, v) / Q(v) v`, as a matrix.
    pub fn reflection(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        let qv = self.value(v);
        let qinv = f.inv(qv).map_err(|_| Error::InvalidArgument("reflection in a singular vector".into()))?;
        let n = self.dim;
        let mut m = identity(f, n);
        for i in 0..n {
            let e = unit(f, n, i);
            let c = f.mul(self.polar_value(&e, v), qinv);
            for j in 0..n {
                m[i * n + j] = f.sub(m[i * n + j], f.mul(c, v[j]));
            }
        }
        Ok(m)
    }
}

fn bilinear(f: &FiniteField, m: &[FieldElement], n: usize, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let mut acc = f.zero();
    for i in 0..n {
        if x[i] == f.zero() {
            continue;
        }
        for j in 0..n {
            acc = f.add(acc, f.mul(x[i], f.mul(m[i * n + j], y[j])));
        }
    }
    acc
}

fn identity(f: &FiniteField, n: usize) -> Vec<FieldElement> {
    let mut m = vec![f.zero(); n * n];
    for i in 0..n {
        m[i * n + i] = f.one();
    }
    m
}

fn unit(f: &FiniteField, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

fn mat_mul(f: &FiniteField, n: usize, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![f.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == f.zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = f.add(out[i * n + j], f.mul(x, b[k * n + j]));
            }
        }
    }
    out
}

fn transpose(n: usize, a: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = a.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}

/// Indices of a maximal independent set of rows, and the determinant (zero
/// unless all rows are independent).
fn row_basis(f: &FiniteField, rows: usize, cols: usize, a: &[FieldElement]) -> (Vec<usize>, FieldElement) {
    let mut reduced: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut basis = Vec::new();
    for r in 0..rows {
        let mut v = a[r * cols..(r + 1) * cols].to_vec();
        for (pivot, b) in &reduced {
            let c = v[*pivot];
            if c != f.zero() {
                for j in 0..cols {
                    v[j] = f.sub(v[j], f.mul(c, b[j]));
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&x| x != f.zero()) {
            let inv = f.inv(v[pivot]).unwrap();
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            reduced.push((pivot, v));
            basis.push(r);
        }
    }
    let det = if rows == cols && basis.len() == rows { determinant(f, rows, a) } else { f.zero() };
    (basis, det)
}

fn determinant(f: &FiniteField, n: usize, a: &[FieldElement]) -> FieldElement {
    let mut m = a.to_vec();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r * n + col] != f.zero()) else {
            return f.zero();
        };
        if piv != col {
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
            }
            det = f.neg(det);
        }
        let p = m[col * n + col];
        det = f.mul(det, p);
        let pinv = f.inv(p).unwrap();
        for i in col + 1..n {
            let c = f.mul(m[i * n + col], pinv);
            if c != f.zero() {
                for j in col..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(c, m[col * n + j]));
                }
            }
        }
    }
    det
}

/// Least `(b, c)` in element order with `x^2 + b x + c` irreducible.
fn anisotropic_plane(f: &FiniteField) -> (FieldElement, FieldElement) {
    for b in f.elements() {
        for c in f.elements() {
            let has_root = f.elements().any(|t| f.add(f.add(f.mul(t, t), f.mul(b, t)), c) == f.zero());
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// The canonical form of the given orthogonal type: hyperbolic planes, then
/// the anisotropic plane for minus type, then `<1>` in odd dimension.
pub fn standard_form(kind: FormType, dim: usize, q: u64) -> Result<QuadraticFormSpec> {
    let f = shared_field(q)?;
    let ok = match kind {
        FormType::Odd => dim % 2 == 1 && f.p() != 2,
        FormType::Plus | FormType::Minus => dim.is_multiple_of(2) && dim >= 2,
    };
    if !ok {
        return Err(Error::InvalidSpec(format!("no {kind:?} form of dimension {dim} over GF({q})")));
    }
    let hyp = if f.p() == 2 { f.one() } else { f.from_int(2) };
    let mut coef = vec![f.zero(); dim * dim];
    let planes = dim / 2;
    for i in 0..planes {
        let (a, b) = (2 * i, 2 * i + 1);
        if kind == FormType::Minus && i == planes - 1 {
            let (pb, pc) = anisotropic_plane(&f);
            coef[a * dim + a] = f.one();
            coef[a * dim + b] = pb;
            coef[b * dim + b] = pc;
        } else {
            coef[a * dim + b] = hyp;
        }
    }
    if kind == FormType::Odd {
        coef[dim * dim - 1] = f.one();
    }
    Ok(QuadraticFormSpec::from_coefficients(f, dim, coef, kind))
}

/// The standard alternating form: `J` with blocks `[[0,1],[-1,0]]`.
pub fn symplectic_form(f: &FiniteField, n: usize) -> Vec<FieldElement> {
    let mut j = vec![f.zero(); n * n];
    for i in 0..n / 2 {
        j[2 * i * n + 2 * i + 1] = f.one();
        j[(2 * i + 1) * n + 2 * i] = f.neg(f.one());
    }
    j
}

/// The form preserved by a classical group.
#[derive(Clone, Debug)]
pub enum InvariantForm {
    None,
    Alternating(Vec<FieldElement>),
    Quadratic(QuadraticFormSpec),
}

fn entries(m: &[u8]) -> Vec<FieldElement> {
    m.iter().map(|&x| FieldElement(x as u32)).collect()
}

fn check_dim(m: &[u8], dim: usize) -> Result<()> {
    if m.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, got: m.len() });
    }
    Ok(())
}

/// Is `m` (row-major entries) an isometry of the quadratic form?
pub fn preserves_form(m: &[u8], form: &QuadraticFormSpec) -> Result<bool> {
    check_dim(m, form.dim)?;
    let f = &form.field;
    let n = form.dim;
    let a = entries(m);
    let lhs = mat_mul(f, n, &mat_mul(f, n, &a, &form.polar), &transpose(n, &a));
    if lhs != form.polar {
        return Ok(false);
    }
    Ok((0..n).all(|i| form.value(&a[i * n..(i + 1) * n]) == form.coef[i * n + i]))
}

/// Does `m` preserve the alternating form `j`?
pub fn preserves_alternating(m: &[u8], f: &FiniteField, j: &[FieldElement]) -> Result<bool> {
    let n = (j.len() as f64).sqrt() as usize;
    check_dim(m, n)?;
    let a = entries(m);
    Ok(mat_mul(f, n, &mat_mul(f, n, &a, j), &transpose(n, &a)) == j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Trivial,
    Nonsquare,
}

impl SquareClass {
    pub fn of(f: &FiniteField, x: FieldElement) -> Self {
        if f.is_square(x) {
            SquareClass::Trivial
        } else {
            SquareClass::Nonsquare
        }
    }

    pub fn times(self, other: Self) -> Self {
        if self == other {
            SquareClass::Trivial
        } else {
            SquareClass::Nonsquare
        }
    }
}

/// Spinor norm over odd `q`: the square class of `Q(v_1)...Q(v_k)` for any
/// factorization into reflections `r_{v_1}...r_{v_k}`.
///
/// Computed without factoring, from the discriminant of the Wall form on
/// `V' = im(1 - m)`: for `u = x(1 - m)` and `w` in `V'`, `[u, w] = x G w^T`.
/// A reflection contributes `Q(v)/2`, hence the extra `2^dim V'`.
pub fn spinor_norm(m: &[u8], form: &QuadraticFormSpec) -> Result<SquareClass> {
    let f = &form.field;
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !preserves_form(m, form)? {
        return Err(Error::NotIsometry);
    }
    let n = form.dim;
    let a = entries(m);
    let mut d = identity(f, n);
    for (x, y) in d.iter_mut().zip(&a) {
        *x = f.sub(*x, *y);
    }
    let (basis, _) = row_basis(f, n, n, &d);
    let k = basis.len();
    let g = form.gram();
    let mut w = vec![f.zero(); k * k];
    for (r, &i) in basis.iter().enumerate() {
        for (c, &j) in basis.iter().enumerate() {
            w[r * k + c] = bilinear(f, &g, n, &unit(f, n, i), &d[j * n..(j + 1) * n]);
        }
    }
    let theta = f.mul(determinant(f, k, &w), f.pow(f.from_int(2), k as u64));
    Ok(SquareClass::of(f, theta))
}

/// `rank(m - 1) mod 2`, the Dickson invariant over even `q`.
pub fn dickson_invariant(m: &[u8], form: &QuadraticFormSpec) -> Result<u8> {
    if !preserves_form(m, form)? {
        return Err(Error::NotIsometry);
    }
    let f = &form.field;
    let n = form.dim;
    let mut d = entries(m);
    for i in 0..n {
        d[i * n + i] = f.sub(d[i * n + i], f.one());
    }
    Ok((row_basis(f, n, n, &d).0.len() % 2) as u8)
}

/// Membership of an isometry in `Omega`: determinant one and trivial spinor
/// norm over odd `q`, Dickson invariant zero over even `q`.
pub fn omega_membership(m: &[u8], form: &QuadraticFormSpec) -> Result<bool> {
    let f = &form.field;
    if f.p() == 2 {
        return Ok(dickson_invariant(m, form)? == 0);
    }
    let sn = spinor_norm(m, form)?;
    Ok(sn == SquareClass::Trivial && determinant(f, form.dim, &entries(m)) == f.one())
}

/// Determinant of a matrix given as row-major entry bytes.
pub fn matrix_det(m: &[u8], f: &FiniteField) -> FieldElement {
    let n = (m.len() as f64).sqrt() as usize;
    determinant(f, n, &entries(m))
}

fn qpow(q: u64, e: u64) -> FactoredInteger {
    let (p, k) = prime_power_decomposition(q).expect("validated prime power");
    FactoredInteger::prime_power(p, k * e as u32)
}

fn div_small(x: &FactoredInteger, d: u64) -> FactoredInteger {
    x.checked_div(&FactoredInteger::from_u64(d)).expect("order formula divisibility")
}

/// `|G| = q^q_exp * prod (q^k - 1) * prod (q^k + 1) * mul / div`.
struct OrderTerms {
    q_exp: u64,
    minus: Vec<u64>,
    plus: Vec<u64>,
    mul: u64,
    div: u64,
}

fn order_terms(spec: &ClassicalSpec) -> Result<OrderTerms> {
    spec.validate()?;
    let (n, q, m) = (spec.n as u64, spec.q, spec.m() as u64);
    let odd_q = q % 2 == 1;
    let t = |q_exp: u64, minus: Vec<u64>, plus: Vec<u64>, mul: u64, div: u64| OrderTerms { q_exp, minus, plus, mul, div };
    let sp = |div: u64| t(m * m, (1..=m).map(|i| 2 * i).collect(), vec![], 1, div);
    let go_even = |div: u64| {
        let mut minus: Vec<u64> = (1..m).map(|i| 2 * i).collect();
        let mut plus = vec![];
        if spec.sign.unwrap() > 0 {
            minus.push(m);
        } else {
            plus.push(m);
        }
        t(m * (m - 1), minus, plus, 2, div)
    };
    let out = match spec.family {
        Family::GL => t(n * (n - 1) / 2, (1..=n).collect(), vec![], 1, 1),
        Family::SL => t(n * (n - 1) / 2, (2..=n).collect(), vec![], 1, 1),
        Family::PSL => t(n * (n - 1) / 2, (2..=n).collect(), vec![], 1, gcd(n, q - 1)),
        Family::Sp | Family::SOodd => sp(1),
        Family::PSp => sp(gcd(2, q - 1)),
        Family::OmegaOdd | Family::POmegaOdd => sp(2),
        Family::GOeven => go_even(1),
        Family::SOeven | Family::Keven if odd_q => go_even(2),
        Family::SOeven => go_even(1),
        Family::Keven => unreachable!("validated"),
        Family::OmegaEven | Family::POmegaEven => {
            let eps = spec.sign.unwrap();
            let mut div = if odd_q { 4 } else { 2 };
            if spec.family == Family::POmegaEven && minus_one_in_omega(q, m, eps) {
                div *= 2;
            }
            go_even(div)
        }
    };
    Ok(out)
}

/// Group order from the classical product formulas, kept factored.
pub fn order_factored(spec: &ClassicalSpec) -> Result<FactoredInteger> {
    let t = order_terms(spec)?;
    let q = spec.q;
    let mut order = qpow(q, t.q_exp).mul(&FactoredInteger::from_u64(t.mul));
    for &k in &t.minus {
        order = order.mul(&factored_power_minus_one(q, k as u32));
    }
    for &k in &t.plus {
        order = order.mul(&factored_power_plus_one(q, k as u32));
    }
    Ok(div_small(&order, t.div))
}

/// `v_p(|G|)`, exact for every size of group.
pub fn order_valuation(spec: &ClassicalSpec, p: u64) -> Result<u32> {
    let t = order_terms(spec)?;
    let q = spec.q;
    let small = |x: u64| factorize(x).multiplicity(p);
    let mut v = small(t.mul);
    if q.is_multiple_of(p) {
        let (_, k) = prime_power_decomposition(q).expect("validated prime power");
        v += k * t.q_exp as u32;
    } else {
        for &k in &t.minus {
            v += valuation_power_minus_one(p, q, k);
        }
        for &k in &t.plus {
            v += valuation_power_minus_one(p, q, 2 * k) - valuation_power_minus_one(p, q, k);
        }
    }
    Ok(v - small(t.div))
}

/// Whether `-1` lies in `Omega^eps(2m, q)`: `q` odd and `q^m = eps mod 4`.
pub fn minus_one_in_omega(q: u64, m: u64, eps: i8) -> bool {
    if q.is_multiple_of(2) {
        return false;
    }
    let qm = if q % 4 == 1 || m.is_multiple_of(2) { 1 } else { 3 };
    qm == if eps > 0 { 1 } else { 3 }
}

/// Generators of a classical group together with the form they preserve.
#[derive(Clone, Debug)]
pub struct StandardGroup {
    pub spec: ClassicalSpec,
    pub handle: GroupHandle,
    pub form: InvariantForm,
    /// Whether the generated order was checked against `order_factored` by
    /// enumeration (only done within the element budget).
    pub verified: bool,
    /// Set when the group is valid but not in the simple range.
    pub warning: Option<Error>,
}

fn to_bytes(alg: &MatrixAlgebra, m: &[FieldElement]) -> Element {
    let mut out: Element = m.iter().map(|x| x.0 as u8).collect();
    if alg.is_projective() {
        alg.normalize(&mut out);
    }
    out
}

/// `1 + c E_ij`.
fn elementary(f: &FiniteField, n: usize, i: usize, j: usize, c: FieldElement) -> Vec<FieldElement> {
    let mut m = identity(f, n);
    m[i * n + j] = c;
    m
}

/// A basis `1, w, .., w^(k-1)` of `GF(q)` over the prime field.
fn field_basis(f: &FiniteField) -> Vec<FieldElement> {
    let w = f.primitive_element();
    (0..f.k()).map(|i| f.pow(w, i as u64)).collect()
}

/// `x -> x + c J(x, v) v`.
fn symplectic_transvection(f: &FiniteField, j: &[FieldElement], v: &[FieldElement], c: FieldElement) -> Vec<FieldElement> {
    let n = v.len();
    let mut m = identity(f, n);
    for i in 0..n {
        let t = f.mul(c, bilinear(f, j, n, &unit(f, n, i), v));
        for k in 0..n {
            m[i * n + k] = f.add(m[i * n + k], f.mul(t, v[k]));
        }
    }
    m
}

fn linear_generators(f: &FiniteField, spec: &ClassicalSpec) -> Vec<Vec<FieldElement>> {
    let n = spec.n;
    let mut gens = Vec::new();
    for c in field_basis(f) {
        for i in 0..n.saturating_sub(1) {
            gens.push(elementary(f, n, i, i + 1, c));
            gens.push(elementary(f, n, i + 1, i, c));
        }
    }
    if spec.family == Family::GL {
        let mut d = identity(f, n);
        d[0] = f.primitive_element();
        gens.push(d);
    }
    gens
}

fn symplectic_generators(f: &FiniteField, n: usize) -> Vec<Vec<FieldElement>> {
    let j = symplectic_form(f, n);
    let mut vectors: Vec<Vec<FieldElement>> = (0..n).map(|i| unit(f, n, i)).collect();
    for i in 0..n / 2 - 1 {
        for other in [2 * i + 2, 2 * i + 3] {
            let mut v = unit(f, n, 2 * i);
            v[other] = f.one();
            vectors.push(v);
        }
    }
    let mut gens = Vec::new();
    for c in field_basis(f) {
        for v in &vectors {
            gens.push(symplectic_transvection(f, &j, v, c));
        }
    }
    gens
}

/// Anisotropic vectors `e_i`, `e_i + c e_j` and `e_i + e_j + c e_k`, in a
/// fixed pseudo-random order.
fn reflection_candidates(form: &QuadraticFormSpec) -> Vec<Vec<FieldElement>> {
    let f = &form.field;
    let n = form.dim;
    let mut out = Vec::new();
    for i in 0..n {
        out.push(unit(f, n, i));
        for j in i + 1..n {
            for c in f.elements().skip(1) {
                let mut v = unit(f, n, i);
                v[j] = c;
                out.push(v.clone());
                // e_i + e_j + c e_k links the hyperbolic planes
                v[j] = f.one();
                for k in j + 1..n {
                    let mut w = v.clone();
                    w[k] = c;
                    out.push(w);
                }
            }
        }
    }
    out.retain(|v| form.value(v) != f.zero());
    let mut rng = ChaCha8Rng::seed_from_u64(0x6578_706f);
    out.shuffle(&mut rng);
    out
}

/// Generators built from the first `k` candidate reflections: products of
/// two reflections whose `Q`-values share a square class (these lie in
/// `Omega`), plus the extra reflections the family needs.
fn orthogonal_generators(
    form: &QuadraticFormSpec,
    family: Family,
    candidates: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    let f = &form.field;
    let n = form.dim;
    let class = |v: &Vec<FieldElement>| SquareClass::of(f, form.value(v));
    let v0 = candidates.iter().find(|v| class(v) == SquareClass::Trivial);
    let v1 = candidates.iter().find(|v| class(v) == SquareClass::Nonsquare);
    let refl = |v: &Vec<FieldElement>| form.reflection(v).expect("anisotropic");
    let mut gens = Vec::new();
    for anchor in [v0, v1].into_iter().flatten() {
        let ra = refl(anchor);
        for v in candidates.iter().filter(|v| class(v) == class(anchor) && *v != anchor) {
            gens.push(mat_mul(f, n, &ra, &refl(v)));
        }
    }
    let odd_q = f.p() != 2;
    match family {
        Family::SOodd | Family::SOeven if odd_q => {
            if let (Some(a), Some(b)) = (v0, v1) {
                gens.push(mat_mul(f, n, &refl(a), &refl(b)));
            }
        }
        Family::SOeven | Family::Keven => gens.extend(v0.map(refl)),
        Family::GOeven => {
            gens.extend(v0.map(refl));
            gens.extend(v1.map(refl));
        }
        _ => {}
    }
    gens
}

fn linear_counterpart(family: Family) -> Family {
    match family {
        Family::PSL => Family::SL,
        Family::PSp => Family::Sp,
        Family::POmegaOdd => Family::OmegaOdd,
        Family::POmegaEven => Family::OmegaEven,
        f => f,
    }
}

/// Matrix generators for the group, the form it preserves, and (within the
/// element budget) a check that they generate a group of the right order.
///
/// Linear and symplectic groups use elementary and symplectic transvections
/// over a basis of the field. Orthogonal groups use products of reflections;
/// the number of candidate reflections is doubled until enumeration reaches
/// `order_factored`. Projective families use the projective matrix algebra.
pub fn standard_generators(spec: &ClassicalSpec) -> Result<StandardGroup> {
    standard_generators_with_budget(spec, DEFAULT_BUDGET)
}

pub fn standard_generators_with_budget(spec: &ClassicalSpec, budget: usize) -> Result<StandardGroup> {
    spec.validate()?;
    let f = shared_field(spec.q)?;
    let n = spec.n;
    let alg = MatrixAlgebra::new(f.clone(), n, spec.family.is_projective())?;
    let target = order_factored(spec)?.to_u64().filter(|&o| o as u128 <= budget as u128);
    let handle_of = |gens: &[Vec<FieldElement>]| {
        let elems = gens.iter().map(|g| to_bytes(&alg, g)).collect();
        GroupHandle::new(Arc::new(alg.clone()), elems)
    };
    let reaches = |h: &GroupHandle, order: u64| -> Result<bool> {
        Ok(enumerate(h, order as usize)?.order() as u64 == order)
    };

    let (gens, form, verified) = match spec.family {
        Family::GL | Family::SL | Family::PSL => {
            let gens = linear_generators(&f, spec);
            let ok = match target {
                Some(t) => reaches(&handle_of(&gens), t)?,
                None => false,
            };
            (gens, InvariantForm::None, ok)
        }
        Family::Sp | Family::PSp => {
            let gens = symplectic_generators(&f, n);
            let ok = match target {
                Some(t) => reaches(&handle_of(&gens), t)?,
                None => false,
            };
            (gens, InvariantForm::Alternating(symplectic_form(&f, n)), ok)
        }
        _ => {
            let form = standard_form(spec.form_type().unwrap(), n, spec.q)?;
            let cands = reflection_candidates(&form);
            let family = linear_counterpart(spec.family);
            match target {
                None => (orthogonal_generators(&form, family, &cands), InvariantForm::Quadratic(form), false),
                Some(t) => {
                    let mut k = 4.min(cands.len());
                    loop {
                        let gens = orthogonal_generators(&form, family, &cands[..k]);
                        if reaches(&handle_of(&gens), t)? {
                            break (gens, InvariantForm::Quadratic(form), true);
                        }
                        if k == cands.len() {
                            return Err(Error::InvalidSpec(format!("{spec}: reflections failed to generate")));
                        }
                        k = (2 * k).min(cands.len());
                    }
                }
            }
        }
    };
    if target.is_some() && !verified {
        return Err(Error::InvalidSpec(format!("{spec}: generators failed to reach the group order")));
    }
    Ok(StandardGroup {
        spec: *spec,
        handle: handle_of(&gens),
        form,
        verified,
        warning: spec.simple_range().err(),
    })
}
