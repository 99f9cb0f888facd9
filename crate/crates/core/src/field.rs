//! Exact scalars over the three supported field families.
//!
//! * `q`: the rationals, as reduced big-integer fractions.
//! * `qw`: the cyclotomic field Q(w) = Q[x]/(x^2 + x + 1), holding a primitive cube root of
//!   unity `w`. Elements are `a + b*w` with rational `a`, `b`, and `w^2 = -1 - w`.
//! * `fp:<p>`: residues modulo a prime `p <= 2^31`.
//!
//! A [`Scalar`] carries its field tag. Binary operations on scalars from different fields fail
//! with [`Error::MixedField`] through the `checked_*` methods; the operator impls (`&a + &b`,
//! ...) panic instead, and are meant for code that has already validated a common context.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rational,
    Cyclotomic,
    Prime(Prime),
}

impl FieldCtx {
    pub fn prime(p: u64) -> Result<FieldCtx> {
        Prime::new(p).map(FieldCtx::Prime)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rational | FieldCtx::Cyclotomic => 0,
            FieldCtx::Prime(p) => p.get(),
        }
    }

    /// Whether the integer `k` is nonzero in this field.
    pub fn is_unit_integer(&self, k: u64) -> bool {
        match self.characteristic() {
            0 => k != 0,
            p => !k.is_multiple_of(p),
        }
    }
}

/// Field names: `q`, `qw`, `fp:<p>`.
impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rational => f.write_str("q"),
            FieldCtx::Cyclotomic => f.write_str("qw"),
            FieldCtx::Prime(p) => write!(f, "fp:{}", p.get()),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldCtx> {
        match s.trim() {
            "q" => Ok(FieldCtx::Rational),
            "qw" => Ok(FieldCtx::Cyclotomic),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::ScalarParse {
                        text: other.to_string(),
                        reason: "field spec must be q, qw or fp:<prime>",
                    })?;
                FieldCtx::prime(p)
            }
        }
    }
}

/// `a + b*w` with `w^2 = -1 - w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    a: BigRational,
    b: BigRational,
}

impl Cyclotomic {
    pub fn new(a: BigRational, b: BigRational) -> Cyclotomic {
        Cyclotomic { a, b }
    }

    pub fn re(&self) -> &BigRational {
        &self.a
    }

    pub fn w_coeff(&self) -> &BigRational {
        &self.b
    }

    fn add(&self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a + &o.a, &self.b + &o.b)
    }

    fn sub(&self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a - &o.a, &self.b - &o.b)
    }

    fn mul(&self, o: &Cyclotomic) -> Cyclotomic {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2 = (ac - bd) + (ad + bc - bd)w
        let bd = &self.b * &o.b;
        Cyclotomic::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }

    fn neg(&self) -> Cyclotomic {
        Cyclotomic::new(-&self.a, -&self.b)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Cyclotomic> {
        // conj(a + bw) = a + bw^2 = (a - b) - bw, and the product is the norm a^2 - ab + b^2.
        let norm = &self.a * &self.a - &self.a * &self.b + &self.b * &self.b;
        if norm.is_zero() {
            return None;
        }
        Some(Cyclotomic::new(
            (&self.a - &self.b) / &norm,
            -&self.b / &norm,
        ))
    }
}

/// Residue class modulo a prime, always in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    p: Prime,
}

impl Residue {
    pub fn new(value: u64, p: Prime) -> Residue {
        Residue {
            value: value % p.get(),
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }
}

/// `base^exp mod p`, for `p <= 2^31`.
pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
    Prime(Residue),
}

fn rational_from_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn mixed(l: &Scalar, r: &Scalar) -> Error {
    Error::MixedField {
        left: l.ctx().to_string(),
        right: r.ctx().to_string(),
    }
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Scalar::Rational(_) => FieldCtx::Rational,
            Scalar::Cyclotomic(_) => FieldCtx::Cyclotomic,
            Scalar::Prime(r) => FieldCtx::Prime(r.p),
        }
    }

    pub fn from_int(ctx: FieldCtx, v: i64) -> Scalar {
        match ctx {
            FieldCtx::Rational => Scalar::Rational(rational_from_i64(v)),
            FieldCtx::Cyclotomic => {
                Scalar::Cyclotomic(Cyclotomic::new(rational_from_i64(v), BigRational::zero()))
            }
            FieldCtx::Prime(p) => {
                let m = p.get() as i64;
                Scalar::Prime(Residue::new(v.rem_euclid(m) as u64, p))
            }
        }
    }

    pub fn zero(ctx: FieldCtx) -> Scalar {
        Scalar::from_int(ctx, 0)
    }

    pub fn one(ctx: FieldCtx) -> Scalar {
        Scalar::from_int(ctx, 1)
    }

    /// The primitive cube root of unity `w` of the cyclotomic field.
    pub fn omega() -> Scalar {
        Scalar::Cyclotomic(Cyclotomic::new(BigRational::zero(), BigRational::one()))
    }

    /// Embeds a rational number; fails in characteristic `p` when `p` divides the denominator.
    pub fn from_rational(ctx: FieldCtx, q: &BigRational) -> Result<Scalar> {
        match ctx {
            FieldCtx::Rational => Ok(Scalar::Rational(q.clone())),
            FieldCtx::Cyclotomic => Ok(Scalar::Cyclotomic(Cyclotomic::new(
                q.clone(),
                BigRational::zero(),
            ))),
            FieldCtx::Prime(p) => {
                let m = BigInt::from(p.get());
                let num = q.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let den_inv = pow_mod(den, p.get() - 2, p.get());
                Ok(Scalar::Prime(Residue::new(num * den_inv, p)))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
            Scalar::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Cyclotomic(c) => c.a.is_one() && c.b.is_zero(),
            Scalar::Prime(r) => r.value == 1,
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Ok(Scalar::Cyclotomic(x.add(y))),
            (Scalar::Prime(x), Scalar::Prime(y)) if x.p == y.p => {
                Ok(Scalar::Prime(Residue::new(x.value + y.value, x.p)))
            }
            _ => Err(mixed(self, o)),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x - y)),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Ok(Scalar::Cyclotomic(x.sub(y))),
            (Scalar::Prime(x), Scalar::Prime(y)) if x.p == y.p => Ok(Scalar::Prime(Residue::new(
                x.value + x.p.get() - y.value,
                x.p,
            ))),
            _ => Err(mixed(self, o)),
        }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Ok(Scalar::Cyclotomic(x.mul(y))),
            (Scalar::Prime(x), Scalar::Prime(y)) if x.p == y.p => {
                Ok(Scalar::Prime(Residue::new(x.value * y.value, x.p)))
            }
            _ => Err(mixed(self, o)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.neg()),
            Scalar::Prime(x) => Scalar::Prime(Residue::new(x.p.get() - x.value, x.p)),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.inv().ok_or(Error::DivisionByZero)?),
            Scalar::Prime(x) => Scalar::Prime(Residue::new(
                pow_mod(x.value, x.p.get() - 2, x.p.get()),
                x.p,
            )),
        })
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        if self.ctx() != o.ctx() {
            return Err(mixed(self, o));
        }
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = Scalar::one(self.ctx());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Parses the text form of a scalar in `ctx`.
    ///
    /// Rationals: `p/q` or `p`. Cyclotomic: sums of terms `c`, `c*w`, `c*w^2`, `w`, `w^2`
    /// (e.g. `-1/2+1/2*w`, `-1-1*w`, `w^2`). Prime fields: a residue `k` with `0 <= k < p`.
    pub fn parse(text: &str, ctx: FieldCtx) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason| Error::ScalarParse {
            text: text.to_string(),
            reason,
        };
        if s.is_empty() {
            return Err(err("empty"));
        }
        match ctx {
            FieldCtx::Rational => parse_rational(&s)
                .map(Scalar::Rational)
                .ok_or_else(|| err("expected p or p/q")),
            FieldCtx::Prime(p) => {
                let k: u64 = s.parse().map_err(|_| err("expected a residue"))?;
                if k >= p.get() {
                    return Err(err("residue out of range"));
                }
                Ok(Scalar::Prime(Residue::new(k, p)))
            }
            FieldCtx::Cyclotomic => {
                let mut a = BigRational::zero();
                let mut b = BigRational::zero();
                for term in split_terms(&s) {
                    let (coeff, power) =
                        parse_cyclotomic_term(term).ok_or_else(|| err("bad term"))?;
                    match power {
                        0 => a += coeff,
                        1 => b += coeff,
                        _ => {
                            // c*w^2 = -c - c*w
                            a -= &coeff;
                            b -= coeff;
                        }
                    }
                }
                Ok(Scalar::Cyclotomic(Cyclotomic::new(a, b)))
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Splits `s` before each `+`/`-` that starts a new term.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'*' | b'^') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_cyclotomic_term(term: &str) -> Option<(BigRational, u8)> {
    let (sign, body) = match term.as_bytes().first()? {
        b'-' => (-1, &term[1..]),
        b'+' => (1, &term[1..]),
        _ => (1, term),
    };
    let (coeff, power) = if let Some(c) = body.strip_suffix("w^2") {
        (c, 2)
    } else if let Some(c) = body.strip_suffix('w') {
        (c, 1)
    } else {
        (body, 0)
    };
    let coeff = if power > 0 {
        match coeff.strip_suffix('*') {
            Some(c) => c,
            None if coeff.is_empty() => "1",
            None => return None,
        }
    } else {
        coeff
    };
    if coeff.starts_with(['+', '-']) {
        return None;
    }
    let q = parse_rational(coeff)?;
    Some((if sign < 0 { -q } else { q }, power))
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `p/q` or `p`; `a+b*w` / `a-b*w` (just `a` when `b = 0`); residue `k`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt_rational(q, f),
            Scalar::Cyclotomic(c) => {
                fmt_rational(&c.a, f)?;
                if !c.b.is_zero() {
                    f.write_str(if c.b.is_negative() { "-" } else { "+" })?;
                    fmt_rational(&c.b.abs(), f)?;
                    f.write_str("*w")?;
                }
                Ok(())
            }
            Scalar::Prime(r) => write!(f, "{}", r.value),
        }
    }
}

fn variant_rank(s: &Scalar) -> u8 {
    match s {
        Scalar::Rational(_) => 0,
        Scalar::Cyclotomic(_) => 1,
        Scalar::Prime(_) => 2,
    }
}

/// Rationals by value, cyclotomics lexicographically on `(a, b)`, residues by value.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                x.a.cmp(&y.a).then_with(|| x.b.cmp(&y.b))
            }
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                x.p.cmp(&y.p).then_with(|| x.value.cmp(&y.value))
            }
            _ => variant_rank(self).cmp(&variant_rank(other)),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// All `x` with `x^3 = 1` in `ctx`: `[1]`, or `[1, a, a^2]` for a primitive cube root `a`.
///
/// In the cyclotomic field `a = w`. In `F_p` (`p = 1 mod 3`) `a` is the smaller of the two
/// primitive roots, so `F_7` gives `[1, 2, 4]`.
pub fn cube_roots_of_unity(ctx: FieldCtx) -> Vec<Scalar> {
    let one = Scalar::one(ctx);
    match ctx {
        FieldCtx::Rational => vec![one],
        FieldCtx::Cyclotomic => {
            let w = Scalar::omega();
            let w2 = w.square();
            vec![one, w, w2]
        }
        FieldCtx::Prime(p) => {
            let m = p.get();
            if m == 3 || (m - 1) % 3 != 0 {
                return vec![one];
            }
            // x^((p-1)/3) is a cube root of unity; the first residue for which it is not 1
            // yields a primitive one.
            let e = (m - 1) / 3;
            let r = (2..m)
                .map(|x| pow_mod(x, e, m))
                .find(|&r| r != 1)
                .expect("F_p* is cyclic of order divisible by 3");
            let r2 = r * r % m;
            let a = r.min(r2);
            vec![
                one,
                Scalar::Prime(Residue::new(a, p)),
                Scalar::Prime(Residue::new(a * a % m, p)),
            ]
        }
    }
}

/// Parses a list of scalar strings.
pub fn parse_scalars<S: AsRef<str>>(items: &[S], ctx: FieldCtx) -> Result<Vec<Scalar>> {
    items
        .iter()
        .map(|s| Scalar::parse(s.as_ref(), ctx))
        .collect()
}

/// Renders a scalar slice like `(1, 0+1*w, -1-1*w)`.
pub fn format_tuple(items: &[Scalar]) -> String {
    let parts: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}
