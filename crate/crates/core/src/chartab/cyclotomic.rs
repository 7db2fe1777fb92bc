use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    let f = Arc::new(num);
    cache.lock().unwrap().insert(n, f.clone());
    f
}

fn poly_div_exact(a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let mut q = vec![0i64; a.len() - dm];
    for i in (0..q.len()).rev() {
        let c = r[i + dm];
        q[i] = c;
        for (j, &mj) in m.iter().enumerate() {
            r[i + j] -= c * mj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

/// An element of the cyclotomic field `Q(ζ_e)`, stored as `Σ c_k ζ_e^k` over
/// the power basis `k < φ(e)`.
///
/// Rational values always have conductor 1, and a conductor `2m` with `m`
/// odd is rewritten over `ζ_m`. Values of different conductors are compared
/// and combined in the field of the least common multiple.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: BTreeMap<u32, BigRational>,
}

fn reduce(n: u32, coeffs: &mut BTreeMap<u32, BigRational>) {
    let f = cyclotomic_polynomial(n);
    let deg = (f.len() - 1) as u32;
    while let Some((&k, _)) = coeffs.last_key_value() {
        if k < deg {
            break;
        }
        let c = coeffs.remove(&k).unwrap();
        let shift = k - deg;
        for (j, &fj) in f[..deg as usize].iter().enumerate() {
            if fj == 0 {
                continue;
            }
            let key = shift + j as u32;
            let e = coeffs.entry(key).or_insert_with(BigRational::zero);
            *e -= &c * BigRational::from_integer(BigInt::from(fj));
            if e.is_zero() {
                coeffs.remove(&key);
            }
        }
    }
}

impl Cyclotomic {
    /// `Σ c_k ζ_n^k` for arbitrary exponents (taken mod `n`).
    pub fn from_terms<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        assert!(n >= 1);
        let mut coeffs: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let key = (k % n as u64) as u32;
            let e = coeffs.entry(key).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                coeffs.remove(&key);
            }
        }
        reduce(n, &mut coeffs);
        Cyclotomic { conductor: n, coeffs }.normalized()
    }

    /// `Σ c_k ζ_n^k` with integer coefficients.
    pub fn from_int_terms<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, i64)>,
    {
        Self::from_terms(n, terms.into_iter().map(|(k, c)| (k, BigRational::from_integer(BigInt::from(c)))))
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: u64) -> Self {
        Self::from_int_terms(n, [(k, 1)])
    }

    /// `(-1 + √5)/2`.
    pub fn b5() -> Self {
        Self::from_int_terms(5, [(1, 1), (4, 1)])
    }

    /// `(-1 + √-7)/2`.
    pub fn b7() -> Self {
        Self::from_int_terms(7, [(1, 1), (2, 1), (4, 1)])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Nonzero coefficients over the power basis of `Q(ζ_conductor)`.
    pub fn coefficients(&self) -> &BTreeMap<u32, BigRational> {
        &self.coeffs
    }

    fn normalized(mut self) -> Self {
        if self.coeffs.keys().all(|&k| k == 0) {
            self.conductor = 1;
            return self;
        }
        let n = self.conductor;
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2}
            let m = n / 2;
            let h = (m as u64).div_ceil(2);
            let terms: Vec<(u64, BigRational)> = std::mem::take(&mut self.coeffs)
                .into_iter()
                .map(|(k, c)| {
                    let c = if k % 2 == 1 { -c } else { c };
                    (k as u64 * h, c)
                })
                .collect();
            return Self::from_terms(m, terms);
        }
        self
    }

    /// Coefficient map over `Q(ζ_m)`, for `m` a multiple of the conductor.
    pub fn lifted(&self, m: u32) -> BTreeMap<u32, BigRational> {
        assert!(m.is_multiple_of(self.conductor), "{m} is not a multiple of {}", self.conductor);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let step = m / self.conductor;
        let mut out = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            out.insert(k * step, c.clone());
        }
        reduce(m, &mut out);
        out
    }

    /// Dense coefficient vector of length `φ(m)` over `Q(ζ_m)`.
    pub fn dense(&self, m: u32) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); totient(m) as usize];
        for (k, c) in self.lifted(m) {
            v[k as usize] = c;
        }
        v
    }

    fn common(&self, other: &Self) -> (u32, BTreeMap<u32, BigRational>, BTreeMap<u32, BigRational>) {
        let m = self.conductor.lcm(&other.conductor);
        (m, self.lifted(m), other.lifted(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (m, mut a, b) = self.common(other);
        for (k, c) in b {
            let e = a.entry(k).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                a.remove(&k);
            }
        }
        Cyclotomic { conductor: m, coeffs: a }.normalized()
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (m, a, b) = self.common(other);
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (&i, x) in &a {
            for (&j, y) in &b {
                terms.push((i as u64 + j as u64, x * y));
            }
        }
        Self::from_terms(m, terms)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|(&k, x)| (k, x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Complex conjugate, `ζ ↦ ζ^-1`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as u64;
        Self::from_terms(self.conductor, self.coeffs.iter().map(|(&k, c)| ((n - k as u64) % n, c.clone())))
    }

    /// The Galois automorphism `ζ_m ↦ ζ_m^k` of any `Q(ζ_m)` containing the
    /// value, with `k` coprime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor as u64;
        assert!(k.gcd(&n) == 1, "{k} is not a unit mod {n}");
        Self::from_terms(self.conductor, self.coeffs.iter().map(|(&j, c)| (j as u64 * k % n, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|i| i.to_i64())
    }

    /// Integral coefficients: an algebraic integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Floating-point approximation `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&k, c) in &self.coeffs {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Lexicographic comparison of the coefficient vectors in `Q(ζ_m)`.
    pub fn cmp_in(&self, other: &Self, m: u32) -> std::cmp::Ordering {
        self.dense(m).cmp(&other.dense(m))
    }

    fn render_raw(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&format!("z({})^{k}", self.conductor));
            }
        }
        out
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Integers and rationals plainly, `b5`, `b7` and their conjugates by name,
/// anything else as `a0 + a1*z(e)^1 + ...`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, b, gen, name) in [(5, Self::b5(), 2, "b5"), (7, Self::b7(), 3, "b7")] {
            if !self.conductor.is_multiple_of(p) {
                continue;
            }
            for (val, label) in [(b.clone(), name.to_string()), (b.galois(gen), format!("{name}*"))] {
                if *self == val {
                    return write!(f, "{label}");
                }
                if *self == val.neg() {
                    return write!(f, "-{label}");
                }
            }
        }
        write!(f, "{}", self.render_raw())
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(self, rhs)
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::sub(self, rhs)
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(self, rhs)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

/// Elements of `Z[x]/(x^e - 1)` with exact integer coefficients: a fast
/// accumulator for sums of products of character values, converted to a
/// [`Cyclotomic`] once at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    e: u32,
    v: Vec<i128>,
}

impl RootSum {
    pub fn zero(e: u32) -> Self {
        RootSum { e, v: vec![0; e as usize] }
    }

    pub fn modulus(&self) -> u32 {
        self.e
    }

    /// Integral values only; `None` if a coefficient is not an integer or the
    /// conductor does not divide `e`.
    pub fn from_cyclotomic(x: &Cyclotomic, e: u32) -> Option<Self> {
        if !e.is_multiple_of(x.conductor) {
            return None;
        }
        let step = e / x.conductor;
        let mut out = Self::zero(e);
        for (&k, c) in &x.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.v[(k * step) as usize] = c.to_integer().to_i128()?;
        }
        Some(out)
    }

    pub fn add_assign(&mut self, other: &RootSum) {
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            *a += b;
        }
    }

    /// `self += c * a * b`, optionally conjugating `b`.
    pub fn add_product(&mut self, c: i128, a: &RootSum, b: &RootSum, conj_b: bool) {
        let e = self.e as usize;
        for (i, &x) in a.v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.v.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let j = if conj_b { (e - j) % e } else { j };
                self.v[(i + j) % e] += c * x * y;
            }
        }
    }

    pub fn add_scaled(&mut self, c: i128, a: &RootSum) {
        for (x, y) in self.v.iter_mut().zip(&a.v) {
            *x += c * y;
        }
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::from_terms(
            self.e,
            self.v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k as u64, BigRational::from_integer(BigInt::from(c)))),
        )
    }
}
