//! Exact arithmetic in the rationals, prime fields and small extension fields.
//!
//! Finite-field elements are stored as integer codes: the coefficient vector
//! `(c_0, ..., c_{t-1})` of a residue polynomial is packed as `sum c_i p^i`.
//! Prime-field elements are therefore just their residue in `[0, p)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest field order for which full operation tables are precomputed.
const TABLE_LIMIT: u32 = 256;

/// Description of a computation field. Characteristic 0 means the rationals.
///
/// `modulus` lists the coefficients of the defining polynomial from the
/// constant term up to the leading 1, so it has `degree + 1` entries; it is
/// empty for prime fields and for the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u64,
    pub degree: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, degree: 1, modulus: Vec::new() }
    }

    pub fn prime(p: u64) -> Self {
        FieldSpec { characteristic: p, degree: 1, modulus: Vec::new() }
    }

    /// `F_{p^t}` with the default modulus: the monic irreducible polynomial
    /// of degree `t` whose lower coefficients, read from `x^{t-1}` down to the
    /// constant term, are lexicographically least.
    pub fn extension(p: u64, t: u32) -> Result<Self> {
        if t == 1 {
            return Ok(Self::prime(p));
        }
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        let p32 = small_prime(p)?;
        let modulus = default_modulus(p32, t)?;
        Ok(FieldSpec { characteristic: p, degree: t, modulus })
    }

    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Self {
        let degree = modulus.len().saturating_sub(1).max(1) as u32;
        FieldSpec { characteristic: p, degree, modulus }
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        if self.characteristic == 0 {
            None
        } else {
            self.characteristic.checked_pow(self.degree)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.degree) {
            (0, _) => write!(f, "q0"),
            (p, 1) => write!(f, "gf{}", p),
            (p, t) => write!(f, "gf{}^{}", p, t),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q0`, `gf<p>` and `gf<p>^<t>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q0" {
            return Ok(Self::rationals());
        }
        let rest = s
            .strip_prefix("gf")
            .ok_or_else(|| Error::Parse(format!("unknown field `{}`", s)))?;
        let (p, t) = match rest.split_once('^') {
            Some((p, t)) => (p, t),
            None => (rest, "1"),
        };
        let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad characteristic in `{}`", s)))?;
        let t: u32 = t.parse().map_err(|_| Error::Parse(format!("bad degree in `{}`", s)))?;
        if t == 0 {
            return Err(Error::Parse(format!("degree must be positive in `{}`", s)));
        }
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        Self::extension(p, t)
    }
}

/// An element of some field. Canonical by construction: fractions are
/// reduced with positive denominator, finite codes are fully reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ffe {
    Rational(BigRational),
    Finite(u32),
}

/// Arithmetic in a finite field `F_{p^t}` on packed integer codes.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    fn new(p: u32, degree: u32, modulus: Vec<u32>) -> Result<Self> {
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidField(format!("order {}^{} too large", p, degree)))?
            as u32;
        let mut field = FiniteField { p, degree, order, modulus, tables: None };
        if degree > 1 && order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let q = self.order as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q as u32 {
            neg[a as usize] = self.neg_slow(a);
            for b in 0..q as u32 {
                add[a as usize * q + b as usize] = self.add_slow(a, b);
                let m = self.mul_slow(a, b);
                mul[a as usize * q + b as usize] = m;
                if m == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Tables { add, mul, neg, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficients `c_0..c_{t-1}` of the residue polynomial behind `code`.
    pub fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a as u64 + b as u64;
            let p = self.p as u64;
            return if s >= p { (s - p) as u32 } else { s as u32 };
        }
        match &self.tables {
            Some(t) => t.add[a as usize * self.order as usize + b as usize],
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        match &self.tables {
            Some(t) => t.mul[a as usize * self.order as usize + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.degree == 1 {
            return Some(mod_inverse(a as u64, self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => Some(t.inv[a as usize]),
            None => Some(self.pow(a, self.order as u64 - 2)),
        }
    }

    /// Image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let t = self.degree as usize;
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * t - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        reduce_poly(&mut prod, &self.modulus, p);
        let d: Vec<u32> = prod[..t].iter().map(|&c| c as u32).collect();
        self.from_digits(&d)
    }
}

/// Reduce `poly` (low-to-high) in place modulo the monic `modulus`.
fn reduce_poly(poly: &mut [u64], modulus: &[u32], p: u64) {
    let t = modulus.len() - 1;
    for k in (t..poly.len()).rev() {
        let c = poly[k] % p;
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = k - t + i;
            poly[idx] = (poly[idx] + (p - c) * m as u64) % p;
        }
    }
}

/// A computation field. Cheap to clone; immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Inner>);

#[derive(Debug)]
struct Inner {
    spec: FieldSpec,
    finite: Option<FiniteField>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for FieldCtx {}

/// Build a field context, validating the characteristic and modulus.
pub fn make_field(spec: FieldSpec) -> Result<FieldCtx> {
    FieldCtx::new(spec)
}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        if spec.characteristic == 0 {
            if spec.degree != 1 || !spec.modulus.is_empty() {
                return Err(Error::InvalidField("rationals take no modulus".to_string()));
            }
            return Ok(FieldCtx(Arc::new(Inner { spec, finite: None })));
        }
        if !is_prime(spec.characteristic) {
            return Err(Error::CompositeCharacteristic(spec.characteristic));
        }
        let p = small_prime(spec.characteristic)?;
        let finite = if spec.degree == 1 {
            if !spec.modulus.is_empty() {
                return Err(Error::InvalidField("prime field takes no modulus".to_string()));
            }
            FiniteField::new(p, 1, Vec::new())?
        } else {
            if spec.modulus.len() != spec.degree as usize + 1
                || spec.modulus.last() != Some(&1)
                || spec.modulus.iter().any(|&c| c >= p)
                || !is_irreducible(&spec.modulus, p)
            {
                return Err(Error::ReducibleModulus(spec.degree));
            }
            FiniteField::new(p, spec.degree, spec.modulus.clone())?
        };
        Ok(FieldCtx(Arc::new(Inner { spec, finite: Some(finite) })))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn rationals() -> Self {
        Self::new(FieldSpec::rationals()).expect("rationals")
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn name(&self) -> String {
        self.0.spec.to_string()
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.0.finite.is_none()
    }

    pub fn finite(&self) -> Option<&FiniteField> {
        self.0.finite.as_ref()
    }

    pub fn order(&self) -> Option<u32> {
        self.0.finite.as_ref().map(|f| f.order)
    }

    pub fn zero(&self) -> Ffe {
        match self.finite() {
            Some(_) => Ffe::Finite(0),
            None => Ffe::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Ffe {
        match self.finite() {
            Some(_) => Ffe::Finite(1),
            None => Ffe::Rational(BigRational::one()),
        }
    }

    /// `n ↦ n·1`.
    pub fn embed(&self, n: i64) -> Ffe {
        match self.finite() {
            Some(f) => Ffe::Finite(f.from_int(n)),
            None => Ffe::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn embed_big(&self, n: &BigInt) -> Ffe {
        match self.finite() {
            Some(f) => {
                let r = n.mod_floor(&BigInt::from(f.p));
                Ffe::Finite(r.to_u32().expect("residue fits"))
            }
            None => Ffe::Rational(BigRational::from_integer(n.clone())),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Ffe> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.embed(num), &self.embed(den))
    }

    pub fn contains(&self, x: &Ffe) -> bool {
        match (self.finite(), x) {
            (Some(f), Ffe::Finite(c)) => *c < f.order,
            (None, Ffe::Rational(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, x: &Ffe) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.name()))
        }
    }

    pub fn is_zero(&self, x: &Ffe) -> bool {
        match x {
            Ffe::Finite(c) => *c == 0,
            Ffe::Rational(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Ffe, b: &Ffe) -> Ffe {
        match (self.finite(), a, b) {
            (Some(f), Ffe::Finite(x), Ffe::Finite(y)) => Ffe::Finite(f.add(*x, *y)),
            (None, Ffe::Rational(x), Ffe::Rational(y)) => Ffe::Rational(x + y),
            _ => panic!("{}", Error::FieldMismatch(self.name())),
        }
    }

    pub fn sub(&self, a: &Ffe, b: &Ffe) -> Ffe {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Ffe) -> Ffe {
        match (self.finite(), a) {
            (Some(f), Ffe::Finite(x)) => Ffe::Finite(f.neg(*x)),
            (None, Ffe::Rational(x)) => Ffe::Rational(-x),
            _ => panic!("{}", Error::FieldMismatch(self.name())),
        }
    }

    pub fn mul(&self, a: &Ffe, b: &Ffe) -> Ffe {
        match (self.finite(), a, b) {
            (Some(f), Ffe::Finite(x), Ffe::Finite(y)) => Ffe::Finite(f.mul(*x, *y)),
            (None, Ffe::Rational(x), Ffe::Rational(y)) => Ffe::Rational(x * y),
            _ => panic!("{}", Error::FieldMismatch(self.name())),
        }
    }

    pub fn inv(&self, a: &Ffe) -> Result<Ffe> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self.finite(), a) {
            (Some(f), Ffe::Finite(x)) => Ffe::Finite(f.inv(*x).expect("nonzero")),
            (None, Ffe::Rational(x)) => Ffe::Rational(x.recip()),
            _ => unreachable!(),
        })
    }

    pub fn div(&self, a: &Ffe, b: &Ffe) -> Result<Ffe> {
        self.check(a)?;
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Ffe, exp: u64) -> Ffe {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements in code order, `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<Ffe>> {
        self.finite().map(|f| (0..f.order).map(Ffe::Finite).collect())
    }

    /// Canonical element string: decimal code for finite fields
    /// (`c_0 + c_1 p + ...`), `n` or `n/d` for rationals.
    pub fn format(&self, x: &Ffe) -> String {
        match x {
            Ffe::Finite(c) => c.to_string(),
            Ffe::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Ffe> {
        let s = s.trim();
        match self.finite() {
            Some(f) => {
                let c: u32 = s.parse().map_err(|_| Error::Parse(format!("bad element `{}`", s)))?;
                if c >= f.order {
                    return Err(Error::FieldMismatch(self.name()));
                }
                Ok(Ffe::Finite(c))
            }
            None => {
                let bad = || Error::Parse(format!("bad rational `{}`", s));
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Ffe::Rational(BigRational::new(n, d)))
            }
        }
    }

    /// Integer value of a rational element that happens to be integral.
    pub fn as_integer(&self, x: &Ffe) -> Option<BigInt> {
        match x {
            Ffe::Rational(r) if r.denom().is_one() => Some(r.numer().clone()),
            Ffe::Rational(_) => None,
            Ffe::Finite(c) => Some(BigInt::from(*c)),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn small_prime(p: u64) -> Result<u32> {
    if p >= 1 << 31 {
        return Err(Error::InvalidField(format!("characteristic {} too large", p)));
    }
    Ok(p as u32)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i64) as u64
}

/// Remainder of `a` divided by monic `b` over F_p, both low-to-high.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().unwrap() % p;
        if lead != 0 {
            let base = r.len() - db;
            for i in 0..db {
                r[base + i] = (r[base + i] + (p - lead) * b[i] as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Irreducibility of a monic polynomial over F_p by trial division with
/// every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, t: u32) -> Result<Vec<u32>> {
    let count = (p as u64)
        .checked_pow(t)
        .ok_or_else(|| Error::InvalidField(format!("gf{}^{} too large", p, t)))?;
    for code in 0..count {
        let mut m = Vec::with_capacity(t as usize + 1);
        let mut c = code;
        for _ in 0..t {
            m.push((c % p as u64) as u32);
            c /= p as u64;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    Err(Error::ReducibleModulus(t))
}
