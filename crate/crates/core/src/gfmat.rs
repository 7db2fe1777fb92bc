//! Small finite fields and matrix groups over them.
//!
//! Only used to manufacture permutation representations: a matrix group
//! acting on the nonzero vectors (or the projective points) of its natural
//! module becomes a permutation group.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest permutation degree produced by the vector actions.
pub const ACTION_DEGREE_CAP: usize = 100_000;

/// Largest field size supported.
pub const FIELD_SIZE_CAP: u64 = 1 << 16;

/// GF(p^k) given by an explicit monic irreducible modulus.
///
/// Elements are encoded as integers `c0 + c1*p + ... + c_{k-1}*p^(k-1)`,
/// where `c_i` is the coefficient of `x^i` in the polynomial basis.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    // discrete logarithm tables relative to a fixed primitive element
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Make the field GF(p^k) from a monic modulus given low-order coefficient first.
pub fn field_make(p: u64, k: u32, modulus: &[u64]) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || modulus.len() != k as usize + 1 {
        return Err(Error::InvalidField(format!("modulus {modulus:?} does not have degree {k}")));
    }
    let q = (p as u128).pow(k);
    if q > FIELD_SIZE_CAP as u128 {
        return Err(Error::InvalidField(format!("field size {q} exceeds {FIELD_SIZE_CAP}")));
    }
    let modulus: Vec<u32> = modulus.iter().map(|&c| (c % p) as u32).collect();
    if *modulus.last().unwrap() != 1 {
        return Err(Error::InvalidField("modulus must be monic".into()));
    }
    let p32 = p as u32;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=(k / 2) {
        let count = p32.pow(d);
        for code in 0..count {
            let mut f: Vec<u32> = (0..d).map(|i| (code / p32.pow(i)) % p32).collect();
            f.push(1);
            if poly_rem(&modulus, &f, p32).is_empty() {
                return Err(Error::ReducibleModulus(p));
            }
        }
    }
    let mut field = FieldSpec { p: p32, k, q: q as u32, modulus, exp: Vec::new(), log: Vec::new() };
    field.build_log_tables();
    Ok(field)
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        (0..self.k).map(|i| (a / self.p.pow(i)) % self.p).collect()
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; 2 * self.k as usize];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.encode(&r)
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        for g in 2..q.max(3) {
            let g = if q == 2 { 1 } else { g };
            let mut x = 1;
            let mut ok = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[i as usize] = x;
                log[x as usize] = i;
                x = self.mul_slow(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn zero(&self) -> GfElem {
        GfElem(0)
    }

    pub fn one(&self) -> GfElem {
        GfElem(1)
    }

    /// The element with integer encoding `code` (reduced into range).
    pub fn elem(&self, code: u64) -> GfElem {
        GfElem((code % self.q as u64) as u32)
    }

    /// The primitive element used for the logarithm tables.
    pub fn primitive(&self) -> GfElem {
        GfElem(if self.q == 2 { 1 } else { self.exp[1] })
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        if self.k == 1 {
            return GfElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0, 1);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        GfElem(out)
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        let (mut x, mut out, mut scale) = (a.0, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        GfElem(out)
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == 0 || b.0 == 0 {
            return GfElem(0);
        }
        let order = self.q - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        GfElem(self.exp[l as usize])
    }

    pub fn inv(&self, a: GfElem) -> Option<GfElem> {
        if a.0 == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = (order - self.log[a.0 as usize]) % order;
        Some(GfElem(self.exp[l as usize]))
    }

    pub fn pow(&self, a: GfElem, e: u64) -> GfElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return GfElem(0);
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        GfElem(self.exp[l as usize])
    }
}

/// A field element, encoded as described on [`FieldSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem(pub u32);

/// Square matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    n: usize,
    entries: Vec<GfElem>,
}

impl Matrix {
    /// Build from integer-encoded rows.
    pub fn from_rows(field: Arc<FieldSpec>, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("{n} rows must each have {n} entries")));
        }
        let q = field.size() as u64;
        if let Some(bad) = rows.iter().flatten().find(|&&c| c >= q) {
            return Err(Error::InvalidField(format!("entry {bad} is not below q = {q}")));
        }
        let entries = rows.iter().flatten().map(|&c| field.elem(c)).collect();
        Ok(Matrix { field, n, entries })
    }

    pub fn identity(field: Arc<FieldSpec>, n: usize) -> Self {
        let mut entries = vec![GfElem(0); n * n];
        for i in 0..n {
            entries[i * n + i] = GfElem(1);
        }
        Matrix { field, n, entries }
    }

    pub fn scalar(field: Arc<FieldSpec>, n: usize, c: GfElem) -> Self {
        let mut m = Self::identity(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> GfElem {
        self.entries[i * self.n + j]
    }

    pub fn determinant(&self) -> GfElem {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col].0 != 0) else {
                return f.zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor.0 == 0 {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], t);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Matrix::identity(self.field.clone(), n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col].0 != 0).ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                b.swap(piv * n + j, col * n + j);
            }
            let inv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], inv);
                b[col * n + j] = f.mul(b[col * n + j], inv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].0 == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let ta = f.mul(factor, a[col * n + j]);
                    let tb = f.mul(factor, b[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], ta);
                    b[r * n + j] = f.sub(b[r * n + j], tb);
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), n, entries: b })
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[GfElem]) -> Vec<GfElem> {
        let f = &self.field;
        (0..self.n).map(|i| (0..self.n).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))).collect()
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::DimensionMismatch("matrices over different fields".into()));
    }
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", a.n, a.n, b.n, b.n)));
    }
    let f = &a.field;
    let n = a.n;
    let mut entries = vec![GfElem(0); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if x.0 == 0 {
                continue;
            }
            for j in 0..n {
                let t = f.mul(x, b.get(k, j));
                entries[i * n + j] = f.add(entries[i * n + j], t);
            }
        }
    }
    Ok(Matrix { field: a.field.clone(), n, entries })
}

fn check_generators(gens: &[Matrix]) -> Result<(Arc<FieldSpec>, usize)> {
    let first = gens.first().ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    let (field, n) = (first.field.clone(), first.n);
    for g in gens {
        if g.field != field || g.n != n {
            return Err(Error::DimensionMismatch("generators differ in field or dimension".into()));
        }
        if g.determinant().0 == 0 {
            return Err(Error::SingularMatrix);
        }
    }
    Ok((field, n))
}

fn vector_of(code: u64, q: u64, n: usize) -> Vec<GfElem> {
    let mut c = code;
    (0..n)
        .map(|_| {
            let x = (c % q) as u32;
            c /= q;
            GfElem(x)
        })
        .collect()
}

fn code_of(v: &[GfElem], q: u64) -> u64 {
    v.iter().rev().fold(0, |acc, x| acc * q + x.0 as u64)
}

/// Permutations of the `q^n - 1` nonzero vectors induced by `v -> M v`.
///
/// Vector `v` is point `sum v_i q^i - 1` (least-significant coordinate
/// first), so composing matrices corresponds to composing the functions.
pub fn vector_action_to_perm(gens: &[Matrix]) -> Result<Vec<Permutation>> {
    let (field, n) = check_generators(gens)?;
    let q = field.size() as u64;
    let degree = q.checked_pow(n as u32).map(|x| x - 1).unwrap_or(u64::MAX);
    if degree > ACTION_DEGREE_CAP as u64 {
        return Err(Error::DegreeTooLarge(degree as usize, ACTION_DEGREE_CAP));
    }
    let degree = degree as usize;
    gens.iter()
        .map(|m| {
            let images =
                (0..degree).map(|pt| code_of(&m.apply(&vector_of(pt as u64 + 1, q, n)), q) as u32 - 1).collect();
            Permutation::from_images(images)
        })
        .collect()
}

fn normalize(field: &FieldSpec, v: &mut [GfElem]) {
    if let Some(lead) = v.iter().find(|x| x.0 != 0).copied() {
        let inv = field.inv(lead).unwrap();
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
}

/// Permutations of the projective points (1-spaces) induced by `v -> M v`.
///
/// Points are nonzero vectors whose lowest-index nonzero coordinate is 1,
/// numbered in the same lexicographic order as [`vector_action_to_perm`].
pub fn projective_action_to_perm(gens: &[Matrix]) -> Result<Vec<Permutation>> {
    let (field, n) = check_generators(gens)?;
    let q = field.size() as u64;
    let total = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > ACTION_DEGREE_CAP as u64 + 1 {
        return Err(Error::DegreeTooLarge(((total - 1) / (q - 1)) as usize, ACTION_DEGREE_CAP));
    }
    let mut points = Vec::new();
    let mut index = std::collections::HashMap::new();
    for code in 1..total {
        let v = vector_of(code, q, n);
        if v.iter().find(|x| x.0 != 0).map(|x| x.0) == Some(1) {
            index.insert(code, points.len() as u32);
            points.push(v);
        }
    }
    gens.iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let mut w = m.apply(v);
                    normalize(&field, &mut w);
                    index[&code_of(&w, q)]
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32, m: &[u64]) -> Arc<FieldSpec> {
        Arc::new(field_make(p, k, m).unwrap())
    }

    fn brute_has_root(p: u64, m: &[u64]) -> bool {
        (0..p).any(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn field_make_examples() {
        assert_eq!(gf(2, 1, &[0, 1]).size(), 2);
        assert!(!brute_has_root(3, &[2, 2, 1]));
        assert_eq!(gf(3, 2, &[2, 2, 1]).size(), 9);
        assert!(!brute_has_root(2, &[1, 1, 1]));
        assert_eq!(gf(2, 2, &[1, 1, 1]).size(), 4);
    }

    #[test]
    fn field_make_errors() {
        assert_eq!(field_make(4, 1, &[0, 1]).unwrap_err(), Error::NotPrime(4));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(field_make(2, 2, &[1, 0, 1]).unwrap_err(), Error::ReducibleModulus(2));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert_eq!(field_make(2, 4, &[1, 0, 1, 0, 1]).unwrap_err(), Error::ReducibleModulus(2));
        assert!(field_make(3, 2, &[1, 1]).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in [gf(2, 2, &[1, 1, 1]), gf(3, 2, &[2, 2, 1]), gf(2, 3, &[1, 1, 0, 1]), gf(7, 1, &[0, 1])] {
            let q = f.size();
            for a in 0..q {
                let a = GfElem(a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a.0 != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in 0..q {
                    let b = GfElem(b);
                    assert_eq!(f.mul(a, b), GfElem(f.mul_slow(a.0, b.0)));
                    for c in 0..q {
                        let c = GfElem(c);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn mat_mul_identity_and_inverse() {
        let f = gf(5, 1, &[0, 1]);
        let a = Matrix::from_rows(f.clone(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let i = Matrix::identity(f.clone(), 2);
        assert_eq!(mat_mul(&i, &a).unwrap(), a);
        assert_eq!(mat_mul(&a, &a.inverse().unwrap()).unwrap(), i);
        let b = Matrix::identity(f, 3);
        assert!(matches!(mat_mul(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn diagonal_with_signs_squares_to_scalar() {
        let f = gf(3, 2, &[2, 2, 1]);
        let g = f.primitive();
        let ng = f.neg(g);
        let mut rows = vec![vec![0u64; 4]; 4];
        for (i, d) in [g, g, ng, ng].iter().enumerate() {
            rows[i][i] = d.0 as u64;
        }
        let x = Matrix::from_rows(f.clone(), &rows).unwrap();
        let sq = mat_mul(&x, &x).unwrap();
        assert_eq!(sq, Matrix::scalar(f.clone(), 4, f.mul(g, g)));
    }

    #[test]
    fn sl25_vector_action() {
        let f = gf(5, 1, &[0, 1]);
        let a = Matrix::from_rows(f.clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(f.clone(), &[vec![0, 1], vec![4, 0]]).unwrap();
        let perms = vector_action_to_perm(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(perms.len(), 2);
        assert!(perms.iter().all(|p| p.degree() == 24));
        // point of e1 = (1, 0) is 0; a fixes e1, b sends e1 to (0, 4) = code 20
        assert_eq!(perms[0].image(0), 0);
        assert_eq!(perms[1].image(0), 19);
        let id = vector_action_to_perm(&[Matrix::identity(f, 2)]).unwrap();
        assert!(id[0].is_identity());
    }

    #[test]
    fn scalar_action_is_fixed_point_free() {
        let f = gf(2, 2, &[1, 1, 1]);
        let w = Matrix::scalar(f.clone(), 3, f.primitive());
        let p = &vector_action_to_perm(&[w]).unwrap()[0];
        assert_eq!(p.degree(), 63);
        assert!((0..63).all(|i| p.image(i) != i));
    }

    #[test]
    fn degree_cap() {
        let f = gf(2, 1, &[0, 1]);
        let big = Matrix::identity(f, 17);
        assert!(matches!(vector_action_to_perm(&[big]), Err(Error::DegreeTooLarge(..))));
    }

    #[test]
    fn vector_action_is_homomorphism() {
        let f = gf(3, 2, &[2, 2, 1]);
        let a = Matrix::from_rows(f.clone(), &[vec![1, 3], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(f.clone(), &[vec![0, 1], vec![2, 0]]).unwrap();
        let ab = mat_mul(&a, &b).unwrap();
        let p = vector_action_to_perm(&[a, b, ab]).unwrap();
        // apply b first, then a
        for x in 0..p[0].degree() {
            assert_eq!(p[2].image(x), p[0].image(p[1].image(x)));
        }
    }
}
